//! Partition-scheme calculi: basic relations, converse and composition tables.
//!
//! A calculus here is a finite set of jointly exhaustive, pairwise disjoint
//! binary relations that is closed under converse and contains the identity
//! relation. Two calculi are shipped: Allen's interval algebra (13 basic
//! relations over intervals) and RCC-8 (8 basic relations over regions).
//! Their composition tables are embedded as data files and validated on
//! first access; coarser languages (the three-relation interval fragment,
//! the seven-relation fragment, RCC-5) are views over these two, expressed
//! as named relation sets in [`rels`].
//!
//! Relation sets are bit masks over the basic relations of one calculus,
//! which keeps the solvers' inner loops branch-free.

use std::fmt;
use std::sync::OnceLock;

/// Identifies one of the two shipped calculi.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CalcId {
    Ia13,
    Rcc8,
}

impl CalcId {
    /// The calculus instance this id names.
    pub fn get(self) -> &'static Calculus {
        match self {
            CalcId::Ia13 => Calculus::ia13(),
            CalcId::Rcc8 => Calculus::rcc8(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CalcId::Ia13 => "ia13",
            CalcId::Rcc8 => "rcc8",
        }
    }
}

/// A set of basic relations of one calculus (an edge label).
///
/// The empty set denotes an inconsistent edge; the full set is the
/// "unconstrained" label.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelSet {
    calc: CalcId,
    bits: u16,
}

impl RelSet {
    pub const fn new(calc: CalcId, bits: u16) -> RelSet {
        RelSet { calc, bits }
    }

    pub fn calc(self) -> CalcId {
        self.calc
    }

    pub fn bits(self) -> u16 {
        self.bits
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn len(self) -> u32 {
        self.bits.count_ones()
    }

    /// True when the label is a single basic relation.
    pub fn is_basic(self) -> bool {
        self.bits.count_ones() == 1
    }

    pub fn contains(self, basic: u8) -> bool {
        self.bits & (1 << basic) != 0
    }

    pub fn is_subset(self, other: RelSet) -> bool {
        debug_assert_eq!(self.calc, other.calc);
        self.bits & !other.bits == 0
    }

    pub fn intersect(self, other: RelSet) -> RelSet {
        assert_eq!(self.calc, other.calc, "intersect across calculi");
        RelSet { calc: self.calc, bits: self.bits & other.bits }
    }

    pub fn union(self, other: RelSet) -> RelSet {
        assert_eq!(self.calc, other.calc, "union across calculi");
        RelSet { calc: self.calc, bits: self.bits | other.bits }
    }

    pub fn minus(self, other: RelSet) -> RelSet {
        assert_eq!(self.calc, other.calc, "difference across calculi");
        RelSet { calc: self.calc, bits: self.bits & !other.bits }
    }

    /// Iterates the indices of the basic relations in the set, ascending.
    pub fn iter_basics(self) -> impl Iterator<Item = u8> {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let b = rest.trailing_zeros() as u8;
                rest &= rest - 1;
                Some(b)
            }
        })
    }

    /// The single basic relation of an atomic label.
    ///
    /// Panics if the label is not atomic; callers check `is_basic` first.
    pub fn the_basic(self) -> u8 {
        assert_eq!(self.bits.count_ones(), 1, "label is not atomic");
        self.bits.trailing_zeros() as u8
    }
}

impl fmt::Display for RelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let calc = self.calc.get();
        write!(f, "{{")?;
        let mut first = true;
        for b in self.iter_basics() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{}", calc.basic_name(b))?;
            first = false;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for RelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.calc.name(), self)
    }
}

/// A partition-scheme calculus with its converse and composition tables.
pub struct Calculus {
    id: CalcId,
    basics: Vec<&'static str>,
    converse: Vec<u8>,
    /// Flattened basics x basics -> bit mask.
    comp: Vec<u16>,
    /// Set-level composition cache, `(2^b)^2` entries; only built for RCC-8
    /// where set composition sits on the closure hot path.
    comp_sets: Option<Vec<u16>>,
    identity: u8,
    /// For RCC-8: the indices of DC, EC, PO, TPP, NTPP in that order, the
    /// fixed sequence the greedy order solver minimizes over.
    diamond: Option<[u8; 5]>,
    full_bits: u16,
}

impl Calculus {
    /// Allen's interval algebra, basic relations
    /// `p m o s f d e d- f- s- o- m- p-` in that order (converse of index
    /// `i` is index `12-i`).
    pub fn ia13() -> &'static Calculus {
        static IA: OnceLock<Calculus> = OnceLock::new();
        IA.get_or_init(|| {
            Calculus::from_tables(
                CalcId::Ia13,
                &[
                    "p", "m", "o", "s", "f", "d", "e", "d-", "f-", "s-", "o-", "m-", "p-",
                ],
                "e",
                include_str!("../data/ia13.conv"),
                include_str!("../data/ia13.comp"),
                None,
                false,
            )
        })
    }

    /// RCC-8, basic relations `DC EC PO TPP NTPP TPP- NTPP- EQ`.
    pub fn rcc8() -> &'static Calculus {
        static RCC8: OnceLock<Calculus> = OnceLock::new();
        RCC8.get_or_init(|| {
            Calculus::from_tables(
                CalcId::Rcc8,
                &["DC", "EC", "PO", "TPP", "NTPP", "TPP-", "NTPP-", "EQ"],
                "EQ",
                include_str!("../data/rcc8.conv"),
                include_str!("../data/rcc8.comp"),
                Some(["DC", "EC", "PO", "TPP", "NTPP"]),
                true,
            )
        })
    }

    fn from_tables(
        id: CalcId,
        basics: &[&'static str],
        identity: &str,
        conv_text: &str,
        comp_text: &str,
        diamond: Option<[&str; 5]>,
        cache_set_comp: bool,
    ) -> Calculus {
        let b = basics.len();
        assert!(b <= 16, "relation sets are 16-bit masks");
        let index = |name: &str| -> u8 {
            basics
                .iter()
                .position(|&s| s == name)
                .unwrap_or_else(|| panic!("{}: unknown basic relation {:?}", id.name(), name))
                as u8
        };

        let mut converse = vec![u8::MAX; b];
        for line in conv_text.lines().filter(|l| !l.trim().is_empty()) {
            let (lhs, rhs) = line
                .split_once("->")
                .unwrap_or_else(|| panic!("{}: bad converse line {:?}", id.name(), line));
            converse[index(lhs.trim()) as usize] = index(rhs.trim());
        }
        assert!(converse.iter().all(|&c| c != u8::MAX), "converse table incomplete");

        let mut comp = vec![u16::MAX; b * b];
        for line in comp_text.lines().filter(|l| !l.trim().is_empty()) {
            let (lhs, rhs) = line
                .split_once("->")
                .unwrap_or_else(|| panic!("{}: bad composition line {:?}", id.name(), line));
            let mut args = lhs.split_whitespace();
            let (r, s) = match (args.next(), args.next(), args.next()) {
                (Some(r), Some(s), None) => (index(r), index(s)),
                _ => panic!("{}: bad composition lhs {:?}", id.name(), lhs),
            };
            let mut bits = 0u16;
            for t in rhs.trim().split('|').filter(|t| !t.is_empty()) {
                bits |= 1 << index(t.trim());
            }
            comp[r as usize * b + s as usize] = bits;
        }
        assert!(comp.iter().all(|&m| m != u16::MAX), "composition table incomplete");

        let mut calc = Calculus {
            id,
            basics: basics.to_vec(),
            converse,
            comp,
            comp_sets: None,
            identity: index(identity),
            diamond: diamond.map(|d| d.map(index)),
            full_bits: ((1u32 << b) - 1) as u16,
        };
        calc.check_coherence().unwrap_or_else(|e| panic!("{}: {}", id.name(), e));
        if calc.diamond.is_some() {
            calc.check_diamond_laws()
                .unwrap_or_else(|e| panic!("{}: {}", id.name(), e));
        }
        if cache_set_comp {
            let n = (calc.full_bits as usize) + 1;
            let mut table = vec![0u16; n * n];
            for rb in 0..n {
                for sb in 0..n {
                    table[rb * n + sb] =
                        calc.compose_bits_slow(rb as u16, sb as u16);
                }
            }
            calc.comp_sets = Some(table);
        }
        calc
    }

    pub fn id(&self) -> CalcId {
        self.id
    }

    pub fn num_basics(&self) -> u8 {
        self.basics.len() as u8
    }

    pub fn identity(&self) -> u8 {
        self.identity
    }

    pub fn basic_name(&self, basic: u8) -> &'static str {
        self.basics[basic as usize]
    }

    pub fn basic_by_name(&self, name: &str) -> Option<u8> {
        self.basics.iter().position(|&s| s == name).map(|i| i as u8)
    }

    pub fn basic(&self, basic: u8) -> RelSet {
        debug_assert!((basic as usize) < self.basics.len());
        RelSet { calc: self.id, bits: 1 << basic }
    }

    pub fn full(&self) -> RelSet {
        RelSet { calc: self.id, bits: self.full_bits }
    }

    pub fn empty(&self) -> RelSet {
        RelSet { calc: self.id, bits: 0 }
    }

    pub fn identity_set(&self) -> RelSet {
        self.basic(self.identity)
    }

    pub fn converse_basic(&self, basic: u8) -> u8 {
        self.converse[basic as usize]
    }

    pub fn compose_basics(&self, r: u8, s: u8) -> RelSet {
        RelSet {
            calc: self.id,
            bits: self.comp[r as usize * self.basics.len() + s as usize],
        }
    }

    /// `{ converse(b) | b in r }`.
    pub fn converse_set(&self, r: RelSet) -> RelSet {
        assert_eq!(r.calc, self.id, "relation set from another calculus");
        let mut bits = 0u16;
        for b in r.iter_basics() {
            bits |= 1 << self.converse[b as usize];
        }
        RelSet { calc: self.id, bits }
    }

    /// Union of `composition(b, b')` over `b in r`, `b' in s`; empty if
    /// either argument is empty.
    pub fn compose_sets(&self, r: RelSet, s: RelSet) -> RelSet {
        assert_eq!(r.calc, self.id, "relation set from another calculus");
        assert_eq!(s.calc, self.id, "relation set from another calculus");
        let bits = match &self.comp_sets {
            Some(table) => table[r.bits as usize * (self.full_bits as usize + 1) + s.bits as usize],
            None => self.compose_bits_slow(r.bits, s.bits),
        };
        RelSet { calc: self.id, bits }
    }

    fn compose_bits_slow(&self, rbits: u16, sbits: u16) -> u16 {
        let b = self.basics.len();
        let mut out = 0u16;
        let mut r = rbits;
        while r != 0 {
            let rb = r.trailing_zeros() as usize;
            r &= r - 1;
            let row = rb * b;
            let mut s = sbits;
            while s != 0 {
                let sb = s.trailing_zeros() as usize;
                s &= s - 1;
                out |= self.comp[row + sb];
            }
        }
        out
    }

    /// The DC < EC < PO < TPP < NTPP sequence, if this calculus has one.
    pub fn diamond_sequence(&self) -> Option<&[u8; 5]> {
        self.diamond.as_ref()
    }

    /// Earliest basic of `r` under the DC < EC < PO < TPP < NTPP ordering.
    /// `None` when `r` contains none of the five.
    pub fn diamond_min(&self, r: RelSet) -> Option<u8> {
        assert_eq!(r.calc, self.id);
        self.diamond?.iter().copied().find(|&d| r.contains(d))
    }

    /// Checks the partition-scheme coherence laws over the whole table:
    /// converse is an involution fixing the identity, composition satisfies
    /// the identity laws, converse distributes over composition reversed,
    /// every entry is nonempty, and the cycle law
    /// `t in comp(r,s) <=> r in comp(t, conv(s)) <=> s in comp(conv(r), t)`
    /// holds on all basic triples. The cycle law is what lets local
    /// 3-consistency be computed by plain closure steps.
    pub fn check_coherence(&self) -> Result<(), String> {
        let b = self.basics.len() as u8;
        for r in 0..b {
            let rc = self.converse_basic(r);
            if self.converse_basic(rc) != r {
                return Err(format!("converse not an involution at {}", self.basic_name(r)));
            }
            if self.compose_basics(self.identity, r) != self.basic(r)
                || self.compose_basics(r, self.identity) != self.basic(r)
            {
                return Err(format!("identity law fails at {}", self.basic_name(r)));
            }
        }
        if self.converse_basic(self.identity) != self.identity {
            return Err("identity is not self-converse".into());
        }
        for r in 0..b {
            for s in 0..b {
                if self.compose_basics(r, s).is_empty() {
                    return Err(format!(
                        "empty composition entry at ({},{})",
                        self.basic_name(r),
                        self.basic_name(s)
                    ));
                }
                let lhs = self.converse_set(self.compose_basics(r, s));
                let rhs = self.compose_basics(self.converse_basic(s), self.converse_basic(r));
                if lhs != rhs {
                    return Err(format!(
                        "converse-of-composition fails at ({},{})",
                        self.basic_name(r),
                        self.basic_name(s)
                    ));
                }
                for t in 0..b {
                    let a = self.compose_basics(r, s).contains(t);
                    let c1 = self.compose_basics(t, self.converse_basic(s)).contains(r);
                    let c2 = self.compose_basics(self.converse_basic(r), t).contains(s);
                    if a != c1 || a != c2 {
                        return Err(format!(
                            "cycle law fails at ({},{},{})",
                            self.basic_name(r),
                            self.basic_name(s),
                            self.basic_name(t)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks the two monotonicity properties of the composition table under
    /// the DC < EC < PO < TPP < NTPP sequence, restricted to those five
    /// relations (the order-restricted setting in which they are used):
    ///
    /// 1. for i in 2..=5 and any j, the allowed set for `x ? z` given
    ///    `x d_i y` and `y d_j z` is a subset of the one given `x d_{i-1} y`
    ///    and `y d_j z`;
    /// 2. for fixed i and j < j', every relation allowed under j' is either
    ///    allowed under j too, or strictly later than everything allowed
    ///    under j.
    ///
    /// These are what make the greedy earliest-relation choice of the order
    /// solver safe.
    pub fn check_diamond_laws(&self) -> Result<(), String> {
        let d = self.diamond.ok_or("calculus has no diamond sequence")?;
        let d5: u16 = d.iter().map(|&b| 1u16 << b).sum();
        let restricted = |i: usize, j: usize| -> u16 { self.compose_basics(d[i], d[j]).bits & d5 };
        let rank = |basic: u8| d.iter().position(|&x| x == basic).unwrap();
        for i in 1..5 {
            for j in 0..5 {
                if restricted(i, j) & !restricted(i - 1, j) != 0 {
                    return Err(format!("diamond monotonicity (1) fails at i={} j={}", i + 1, j + 1));
                }
            }
        }
        for i in 0..5 {
            for j in 0..5 {
                for jp in j + 1..5 {
                    let cj = restricted(i, j);
                    let cjp = restricted(i, jp);
                    let mut rest = cjp & !cj;
                    while rest != 0 {
                        let k = rest.trailing_zeros() as u8;
                        rest &= rest - 1;
                        let kr = rank(k);
                        let mut old = cj;
                        while old != 0 {
                            let kp = old.trailing_zeros() as u8;
                            old &= old - 1;
                            if rank(kp) >= kr {
                                return Err(format!(
                                    "diamond monotonicity (2) fails at i={} j={} j'={}",
                                    i + 1,
                                    j + 1,
                                    jp + 1
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Calculus")
            .field("id", &self.id)
            .field("basics", &self.basics)
            .finish()
    }
}

/// Named relation sets: basic relations and the macro relations built from
/// them. Macro languages are views over the two base calculi, not separate
/// tables; composing macro labels goes through ordinary set composition.
pub mod rels {
    use super::{CalcId, RelSet};

    /// Interval algebra. Bit positions follow the basics order
    /// `p m o s f d e d- f- s- o- m- p-`.
    pub mod ia {
        use super::*;

        const fn r(bits: u16) -> RelSet {
            RelSet::new(CalcId::Ia13, bits)
        }

        pub const P: RelSet = r(1 << 0);
        pub const M: RelSet = r(1 << 1);
        pub const O: RelSet = r(1 << 2);
        pub const S: RelSet = r(1 << 3);
        pub const F: RelSet = r(1 << 4);
        pub const D: RelSet = r(1 << 5);
        pub const E: RelSet = r(1 << 6);
        pub const DI: RelSet = r(1 << 7);
        pub const FI: RelSet = r(1 << 8);
        pub const SI: RelSet = r(1 << 9);
        pub const OI: RelSet = r(1 << 10);
        pub const MI: RelSet = r(1 << 11);
        pub const PI: RelSet = r(1 << 12);

        pub const FULL: RelSet = r((1 << 13) - 1);

        /// "Intersects": every basic relation under which the two intervals
        /// share at least one point, i.e. everything except p and p-.
        pub const CAP: RelSet = r(((1 << 13) - 1) & !(1 << 0) & !(1 << 12));

        /// The three-relation fragment {p, cap, p-} ranges over unions of
        /// these three blocks.
        pub const A3_BLOCKS: [RelSet; 3] = [P, CAP, PI];

        /// alpha = {m, o}: x ends inside y having started before it.
        pub const ALPHA: RelSet = r((1 << 1) | (1 << 2));
        pub const ALPHA_I: RelSet = r((1 << 11) | (1 << 10));

        /// sub = {s, f, d}: x is contained in y.
        pub const SUB: RelSet = r((1 << 3) | (1 << 4) | (1 << 5));
        pub const SUB_I: RelSet = r((1 << 9) | (1 << 8) | (1 << 7));
    }

    /// RCC-8. Bit positions follow `DC EC PO TPP NTPP TPP- NTPP- EQ`.
    pub mod rcc8 {
        use super::*;

        const fn r(bits: u16) -> RelSet {
            RelSet::new(CalcId::Rcc8, bits)
        }

        pub const DC: RelSet = r(1 << 0);
        pub const EC: RelSet = r(1 << 1);
        pub const PO: RelSet = r(1 << 2);
        pub const TPP: RelSet = r(1 << 3);
        pub const NTPP: RelSet = r(1 << 4);
        pub const TPP_I: RelSet = r(1 << 5);
        pub const NTPP_I: RelSet = r(1 << 6);
        pub const EQ: RelSet = r(1 << 7);

        pub const FULL: RelSet = r((1 << 8) - 1);

        /// Proper part (RCC-5 macro).
        pub const PP: RelSet = r((1 << 3) | (1 << 4));
        pub const PP_I: RelSet = r((1 << 5) | (1 << 6));
        /// Discrete-from (RCC-5 macro).
        pub const DR: RelSet = r((1 << 0) | (1 << 1));

        /// The five relations compatible with "x comes no later than y" in
        /// an ordered construction: DC, EC, PO, TPP, NTPP.
        pub const D5: RelSet = r(0b0001_1111);
        /// Dropped from f(x,y) when x precedes y: {TPP-, NTPP-, EQ}.
        pub const LATER: RelSet = r((1 << 5) | (1 << 6) | (1 << 7));
        /// Dropped from f(x,y) when y precedes x: {TPP, NTPP, EQ}.
        pub const EARLIER: RelSet = r((1 << 3) | (1 << 4) | (1 << 7));
    }
}

#[cfg(test)]
mod tests {
    use super::rels::{ia, rcc8};
    use super::*;

    #[test]
    fn tables_load_and_validate() {
        // from_tables panics on any coherence failure, so loading is the test
        let a = Calculus::ia13();
        let r = Calculus::rcc8();
        assert_eq!(a.num_basics(), 13);
        assert_eq!(r.num_basics(), 8);
        assert_eq!(a.basic_name(a.identity()), "e");
        assert_eq!(r.basic_name(r.identity()), "EQ");
    }

    #[test]
    fn coherence_reports_ok() {
        assert_eq!(Calculus::ia13().check_coherence(), Ok(()));
        assert_eq!(Calculus::rcc8().check_coherence(), Ok(()));
        assert_eq!(Calculus::rcc8().check_diamond_laws(), Ok(()));
    }

    #[test]
    fn converse_examples() {
        let a = Calculus::ia13();
        assert_eq!(a.converse_set(ia::M), ia::MI);
        assert_eq!(a.converse_set(ia::E), ia::E);
        let r = Calculus::rcc8();
        assert_eq!(r.converse_set(rcc8::TPP.union(rcc8::DC)), rcc8::TPP_I.union(rcc8::DC));
    }

    #[test]
    fn composition_examples() {
        let a = Calculus::ia13();
        assert_eq!(a.compose_sets(ia::P, ia::P), ia::P);
        let r = Calculus::rcc8();
        assert_eq!(r.compose_sets(rcc8::NTPP, rcc8::NTPP), rcc8::NTPP);
        assert_eq!(r.compose_sets(rcc8::EQ, rcc8::PO), rcc8::PO);
    }

    #[test]
    fn composition_of_empty_is_empty() {
        let r = Calculus::rcc8();
        assert!(r.compose_sets(r.empty(), rcc8::FULL).is_empty());
        assert!(r.compose_sets(rcc8::FULL, r.empty()).is_empty());
    }

    #[test]
    fn macro_relations_partition_as_expected() {
        assert_eq!(ia::CAP.len(), 11);
        assert!(!ia::CAP.contains(ia::P.the_basic()));
        assert!(!ia::CAP.contains(ia::PI.the_basic()));
        assert_eq!(ia::P.union(ia::CAP).union(ia::PI), ia::FULL);
        assert_eq!(ia::ALPHA, ia::M.union(ia::O));
        assert_eq!(ia::SUB, ia::S.union(ia::F).union(ia::D));
        let a = Calculus::ia13();
        assert_eq!(a.converse_set(ia::ALPHA), ia::ALPHA_I);
        assert_eq!(a.converse_set(ia::SUB), ia::SUB_I);
        assert_eq!(a.converse_set(ia::CAP), ia::CAP);
        let r = Calculus::rcc8();
        assert_eq!(r.converse_set(rcc8::PP), rcc8::PP_I);
        assert_eq!(r.converse_set(rcc8::DR), rcc8::DR);
        assert_eq!(rcc8::D5.union(rcc8::LATER), rcc8::FULL);
    }

    #[test]
    fn diamond_min_takes_earliest() {
        let r = Calculus::rcc8();
        assert_eq!(r.diamond_min(rcc8::FULL), Some(rcc8::DC.the_basic()));
        assert_eq!(r.diamond_min(rcc8::NTPP.union(rcc8::PO)), Some(rcc8::PO.the_basic()));
        assert_eq!(r.diamond_min(rcc8::EQ), None);
    }

    #[test]
    fn set_composition_matches_slow_path() {
        let r = Calculus::rcc8();
        for rb in 0..=255u16 {
            for sb in [0u16, 1, 37, 129, 255] {
                let fast = r.compose_sets(RelSet::new(CalcId::Rcc8, rb), RelSet::new(CalcId::Rcc8, sb));
                assert_eq!(fast.bits(), r.compose_bits_slow(rb, sb));
            }
        }
    }
}
