//! Brute-force decision procedures used to cross-check the fast solvers.
//!
//! The oracles deliberately share no search code with the solvers under
//! test. `oracle_ia` enumerates canonical weak orders of interval
//! endpoints and decodes basic relations straight from endpoint
//! comparisons; `oracle_rcc8` backtracks over atomic refinements on raw
//! bit-mask matrices with its own local closure. Both are exponential and
//! guarded by an explicit [`OracleBudget`].

use std::collections::BTreeSet;

use crate::calculus::{rels, CalcId, Calculus};
use crate::ia::SandwichInput;
use crate::qcn::Qcn;

/// Caps on oracle work. The oracles refuse instances over `max_vars`
/// variables and abort after `max_refinements` candidate placements or
/// refinements, so a stray test cannot spin forever.
#[derive(Debug, Clone, Copy)]
pub struct OracleBudget {
    pub max_vars: usize,
    pub max_refinements: u64,
}

impl OracleBudget {
    /// Default budget for interval networks (endpoint orders grow fast).
    /// `QCR_ORACLE_MAX_VARS` / `QCR_ORACLE_MAX_REFINEMENTS` override the
    /// limits when set.
    pub fn ia_default() -> OracleBudget {
        OracleBudget { max_vars: 7, max_refinements: 10_000_000_000 }.with_env()
    }

    /// Default budget for RCC-8 networks.
    pub fn rcc8_default() -> OracleBudget {
        OracleBudget { max_vars: 6, max_refinements: 10_000_000_000 }.with_env()
    }

    fn with_env(mut self) -> OracleBudget {
        if let Some(v) = read_env("QCR_ORACLE_MAX_VARS") {
            self.max_vars = v as usize;
        }
        if let Some(v) = read_env("QCR_ORACLE_MAX_REFINEMENTS") {
            self.max_refinements = v;
        }
        self
    }
}

fn read_env(key: &str) -> Option<u64> {
    std::env::var(key).ok()?.trim().parse().ok()
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {vars} variables but the oracle budget allows {max}")]
    TooManyVars { vars: usize, max: usize },
    #[error("oracle budget of {max} candidate refinements exhausted")]
    BudgetExceeded { max: u64 },
    #[error("oracle for {expected} given a {got} network")]
    WrongCalculus { expected: &'static str, got: &'static str },
}

// ---------------------------------------------------------------------------
// Interval endpoint semantics
// ---------------------------------------------------------------------------

/// Decodes the basic interval relation of `[sx, ex]` against `[sy, ey]`
/// from endpoint positions (any totally ordered values; here level indices).
/// Requires `sx < ex` and `sy < ey`.
///
/// This is the ground-truth definition of the thirteen relations; the
/// composition table shipped with the calculus is checked against it in the
/// tests below.
pub(crate) fn ia_atom_from_points(sx: i32, ex: i32, sy: i32, ey: i32) -> u8 {
    debug_assert!(sx < ex && sy < ey);
    let ia = Calculus::ia13();
    let name = if ex < sy {
        "p"
    } else if ex == sy {
        "m"
    } else if ey < sx {
        "p-"
    } else if ey == sx {
        "m-"
    } else if sx < sy {
        // x starts first and the intervals share a point
        if ex < ey {
            "o"
        } else if ex == ey {
            "f-"
        } else {
            "d-"
        }
    } else if sx == sy {
        if ex < ey {
            "s"
        } else if ex == ey {
            "e"
        } else {
            "s-"
        }
    } else {
        // y starts first
        if ex < ey {
            "d"
        } else if ex == ey {
            "f"
        } else {
            "o-"
        }
    };
    ia.basic_by_name(name).unwrap()
}

const LT: u8 = 1;
const EQ: u8 = 2;
const GT: u8 = 4;

/// Per-atom comparison signature: the required outcome of comparing
/// (sx,sy), (sx,ey), (ex,sy), (ex,ey), each exactly one of LT/EQ/GT.
fn atom_signatures() -> &'static [[u8; 4]; 13] {
    use std::sync::OnceLock;
    static SIGS: OnceLock<[[u8; 4]; 13]> = OnceLock::new();
    SIGS.get_or_init(|| {
        let cmp = |a: i32, b: i32| -> u8 {
            match a.cmp(&b) {
                std::cmp::Ordering::Less => LT,
                std::cmp::Ordering::Equal => EQ,
                std::cmp::Ordering::Greater => GT,
            }
        };
        let mut sigs = [[0u8; 4]; 13];
        let mut seen = [false; 13];
        // small grid is enough to realize every basic relation once
        for sx in 0..4 {
            for ex in sx + 1..4 {
                for sy in 0..4 {
                    for ey in sy + 1..4 {
                        let a = ia_atom_from_points(sx, ex, sy, ey) as usize;
                        let sig = [cmp(sx, sy), cmp(sx, ey), cmp(ex, sy), cmp(ex, ey)];
                        if seen[a] {
                            assert_eq!(sigs[a], sig, "atom signature not unique");
                        }
                        sigs[a] = sig;
                        seen[a] = true;
                    }
                }
            }
        }
        assert!(seen.iter().all(|&s| s), "some basic relation never realized");
        sigs
    })
}

// ---------------------------------------------------------------------------
// Interval oracle: canonical weak orders over endpoints
// ---------------------------------------------------------------------------

/// Endpoint ids: start of variable v is 2v, end is 2v+1.
struct EndpointSearch<'a> {
    q: &'a Qcn,
    n: usize,
    /// level index per endpoint, -1 while unplaced
    level_of: Vec<i32>,
    placed: usize,
    /// index of the open (most recent) level, -1 before the first
    last_level: i32,
    /// largest endpoint id in the open level, for canonical generation
    last_max_id: i32,
    nodes: u64,
    max_nodes: u64,
    /// set when the node budget ran out
    exhausted: bool,
    /// when present, every complete placement's atom matrix is collected
    /// instead of stopping at the first one
    collect: Option<BTreeSet<Vec<u8>>>,
}

impl<'a> EndpointSearch<'a> {
    fn new(q: &'a Qcn, max_nodes: u64, collect: bool) -> EndpointSearch<'a> {
        let n = q.num_vars();
        EndpointSearch {
            q,
            n,
            level_of: vec![-1; 2 * n],
            placed: 0,
            last_level: -1,
            last_max_id: -1,
            nodes: 0,
            max_nodes,
            exhausted: false,
            collect: collect.then(BTreeSet::new),
        }
    }

    /// Possible comparison outcomes for endpoints `a` vs `b` given the
    /// current partial placement. Levels only ever grow at the open end,
    /// so anything placed before the open level is final.
    fn cmp_mask(&self, a: usize, b: usize) -> u8 {
        let la = self.level_of[a];
        let lb = self.level_of[b];
        match (la >= 0, lb >= 0) {
            (true, true) => {
                if la < lb {
                    LT
                } else if la == lb {
                    EQ
                } else {
                    GT
                }
            }
            (true, false) => {
                // b still to be placed, at the open level or later
                if la < self.last_level || (b as i32) < self.last_max_id {
                    LT
                } else {
                    LT | EQ
                }
            }
            (false, true) => {
                if lb < self.last_level || (a as i32) < self.last_max_id {
                    GT
                } else {
                    GT | EQ
                }
            }
            (false, false) => LT | EQ | GT,
        }
    }

    /// True when every pair still admits some basic relation of its label.
    fn pairs_feasible(&self) -> bool {
        let sigs = atom_signatures();
        for x in 0..self.n {
            let (sx, ex) = (2 * x, 2 * x + 1);
            for y in x + 1..self.n {
                let (sy, ey) = (2 * y, 2 * y + 1);
                let masks = [
                    self.cmp_mask(sx, sy),
                    self.cmp_mask(sx, ey),
                    self.cmp_mask(ex, sy),
                    self.cmp_mask(ex, ey),
                ];
                let label = self.q.label(x, y);
                let ok = label.iter_basics().any(|a| {
                    let sig = &sigs[a as usize];
                    (0..4).all(|i| sig[i] & masks[i] != 0)
                });
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    fn atom_matrix(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.n * (self.n - 1) / 2);
        for x in 0..self.n {
            for y in x + 1..self.n {
                out.push(ia_atom_from_points(
                    self.level_of[2 * x],
                    self.level_of[2 * x + 1],
                    self.level_of[2 * y],
                    self.level_of[2 * y + 1],
                ));
            }
        }
        out
    }

    /// Depth-first enumeration. Returns true as soon as a complete
    /// placement is found (unless collecting all of them).
    fn run(&mut self) -> bool {
        if self.placed == 2 * self.n {
            if self.collect.is_some() {
                let atoms = self.atom_matrix();
                self.collect.as_mut().unwrap().insert(atoms);
                return false;
            }
            return true;
        }
        // move 1: join the open level, ids ascending past the current max
        if self.last_level >= 0 {
            for p in (self.last_max_id.max(0) as usize + 1)..2 * self.n {
                if self.level_of[p] >= 0 {
                    continue;
                }
                if p % 2 == 1 && self.level_of[p - 1] >= self.last_level {
                    // an end may not share a level with its own start
                    continue;
                }
                if p % 2 == 1 && self.level_of[p - 1] < 0 {
                    continue;
                }
                if self.place(p, false) {
                    return true;
                }
                if self.exhausted {
                    return false;
                }
            }
        }
        // move 2: open a new level
        for p in 0..2 * self.n {
            if self.level_of[p] >= 0 {
                continue;
            }
            if p % 2 == 1 && self.level_of[p - 1] < 0 {
                continue;
            }
            if self.place(p, true) {
                return true;
            }
            if self.exhausted {
                return false;
            }
        }
        false
    }

    fn place(&mut self, p: usize, new_level: bool) -> bool {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.exhausted = true;
            return false;
        }
        let (save_level, save_max) = (self.last_level, self.last_max_id);
        if new_level {
            self.last_level += 1;
        }
        self.level_of[p] = self.last_level;
        self.last_max_id = p as i32;
        self.placed += 1;

        let hit = self.pairs_feasible() && self.run();

        self.placed -= 1;
        self.level_of[p] = -1;
        self.last_level = save_level;
        self.last_max_id = save_max;
        hit
    }
}

/// Decides satisfiability of an interval algebra network by exhaustive
/// search over canonical endpoint orders.
pub fn oracle_ia(q: &Qcn, budget: &OracleBudget) -> Result<bool, OracleError> {
    check_calc(q, CalcId::Ia13)?;
    check_vars(q, budget)?;
    if q.has_empty_edge() {
        return Ok(false);
    }
    let mut search = EndpointSearch::new(q, budget.max_refinements, false);
    let sat = search.run();
    if search.exhausted {
        return Err(OracleError::BudgetExceeded { max: budget.max_refinements });
    }
    Ok(sat)
}

/// Enumerates every atomic scenario of an interval network: the set of
/// basic-relation matrices (upper triangle, pair-major) realized by some
/// endpoint placement. Two networks are equivalent exactly when these sets
/// agree, which is what the redundancy tests check.
pub fn ia_scenarios(q: &Qcn, budget: &OracleBudget) -> Result<BTreeSet<Vec<u8>>, OracleError> {
    check_calc(q, CalcId::Ia13)?;
    check_vars(q, budget)?;
    if q.has_empty_edge() {
        return Ok(BTreeSet::new());
    }
    let mut search = EndpointSearch::new(q, budget.max_refinements, true);
    search.run();
    if search.exhausted {
        return Err(OracleError::BudgetExceeded { max: budget.max_refinements });
    }
    Ok(search.collect.unwrap())
}

/// Decides the interval graph sandwich problem by brute force: is there an
/// interval graph whose edges include all of `forced` and avoid everything
/// outside `optional`? Works directly from the definition: an edge means
/// the two intervals share a point. Independent of the solver's encoding.
pub fn oracle_igsp(input: &SandwichInput, budget: &OracleBudget) -> Result<bool, OracleError> {
    let q = igsp_as_network(input);
    oracle_ia(&q, budget)
}

/// The direct network reading of a sandwich instance: forced edges must
/// intersect, forbidden pairs must not, optional pairs are unconstrained.
fn igsp_as_network(input: &SandwichInput) -> Qcn {
    let n = input.num_vertices();
    let vars: Vec<String> = (0..n).map(|i| format!("v{}", i)).collect();
    let mut q = Qcn::new(Calculus::ia13(), &vars).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if input.forced().contains(&(u, v)) {
                q.set_label(u, v, rels::ia::CAP);
            } else if !input.optional().contains(&(u, v)) {
                q.set_label(u, v, rels::ia::P.union(rels::ia::PI));
            }
        }
    }
    q
}

// ---------------------------------------------------------------------------
// RCC-8 oracle: backtracking atomic refinement on raw matrices
// ---------------------------------------------------------------------------

/// A network as a plain bit-mask matrix, the oracle's own representation.
struct RawNet {
    n: usize,
    m: Vec<u16>,
}

impl RawNet {
    fn from_qcn(q: &Qcn) -> RawNet {
        let n = q.num_vars();
        let mut m = vec![0u16; n * n];
        for x in 0..n {
            for y in 0..n {
                m[x * n + y] = q.label(x, y).bits();
            }
        }
        RawNet { n, m }
    }

    fn get(&self, x: usize, y: usize) -> u16 {
        self.m[x * self.n + y]
    }

    fn set(&mut self, calc: &Calculus, x: usize, y: usize, bits: u16) {
        self.m[x * self.n + y] = bits;
        let mut conv = 0u16;
        let mut rest = bits;
        while rest != 0 {
            let b = rest.trailing_zeros() as u8;
            rest &= rest - 1;
            conv |= 1 << calc.converse_basic(b);
        }
        self.m[y * self.n + x] = conv;
    }

    fn compose(calc: &Calculus, a: u16, b: u16) -> u16 {
        let mut out = 0u16;
        let mut ra = a;
        while ra != 0 {
            let x = ra.trailing_zeros() as u8;
            ra &= ra - 1;
            let mut rb = b;
            while rb != 0 {
                let y = rb.trailing_zeros() as u8;
                rb &= rb - 1;
                out |= calc.compose_basics(x, y).bits();
            }
        }
        out
    }

    /// Worklist closure seeded with the given pairs; false on an empty label.
    fn close(&mut self, calc: &Calculus, seed: &[(usize, usize)]) -> bool {
        let n = self.n;
        let mut queue: Vec<(usize, usize)> = seed.to_vec();
        while let Some((x, y)) = queue.pop() {
            let rxy = self.get(x, y);
            if rxy == 0 {
                return false;
            }
            for z in 0..n {
                if z == x || z == y {
                    continue;
                }
                let xz = self.get(x, z);
                let nxz = xz & Self::compose(calc, rxy, self.get(y, z));
                if nxz != xz {
                    self.set(calc, x, z, nxz);
                    if nxz == 0 {
                        return false;
                    }
                    queue.push((x, z));
                }
                let zy = self.get(z, y);
                let nzy = zy & Self::compose(calc, self.get(z, x), rxy);
                if nzy != zy {
                    self.set(calc, z, y, nzy);
                    if nzy == 0 {
                        return false;
                    }
                    queue.push((z, y));
                }
            }
        }
        true
    }

    fn all_pairs(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for x in 0..self.n {
            for y in x + 1..self.n {
                v.push((x, y));
            }
        }
        v
    }
}

struct Rcc8Search<'a> {
    calc: &'static Calculus,
    pairs: Vec<(usize, usize)>,
    tried: u64,
    max_tried: u64,
    exhausted: bool,
    collect: Option<&'a mut BTreeSet<Vec<u8>>>,
}

impl<'a> Rcc8Search<'a> {
    /// Refines pair `k` and onward to atoms; true when a consistent atomic
    /// completion exists (short-circuits unless collecting).
    fn refine(&mut self, net: &RawNet, k: usize) -> bool {
        if k == self.pairs.len() {
            if let Some(set) = &mut self.collect {
                let atoms = self
                    .pairs
                    .iter()
                    .map(|&(x, y)| net.get(x, y).trailing_zeros() as u8)
                    .collect();
                set.insert(atoms);
                return false;
            }
            return true;
        }
        let (x, y) = self.pairs[k];
        let label = net.get(x, y);
        let mut rest = label;
        while rest != 0 {
            let b = rest.trailing_zeros() as u8;
            rest &= rest - 1;
            self.tried += 1;
            if self.tried > self.max_tried {
                self.exhausted = true;
                return false;
            }
            if label.count_ones() == 1 {
                // already atomic and closed; no copy or re-closure needed
                if self.refine(net, k + 1) {
                    return true;
                }
            } else {
                let mut next = RawNet { n: net.n, m: net.m.clone() };
                next.set(self.calc, x, y, 1 << b);
                if next.close(self.calc, &[(x, y)]) && self.refine(&next, k + 1) {
                    return true;
                }
            }
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

fn rcc8_search(
    q: &Qcn,
    budget: &OracleBudget,
    collect: Option<&mut BTreeSet<Vec<u8>>>,
) -> Result<bool, OracleError> {
    check_calc(q, CalcId::Rcc8)?;
    check_vars(q, budget)?;
    // the full atomic refinement space must fit the budget up front
    let mut product: u128 = 1;
    for x in 0..q.num_vars() {
        for y in x + 1..q.num_vars() {
            product = product.saturating_mul(q.label(x, y).len() as u128);
        }
    }
    if product > budget.max_refinements as u128 {
        return Err(OracleError::BudgetExceeded { max: budget.max_refinements });
    }
    let mut net = RawNet::from_qcn(q);
    let pairs = net.all_pairs();
    if !net.close(q.calc(), &pairs) {
        return Ok(false);
    }
    let mut search = Rcc8Search {
        calc: q.calc(),
        pairs,
        tried: 0,
        max_tried: budget.max_refinements,
        exhausted: false,
        collect,
    };
    let sat = search.refine(&net, 0);
    if search.exhausted {
        return Err(OracleError::BudgetExceeded { max: budget.max_refinements });
    }
    Ok(sat)
}

/// Decides satisfiability of an RCC-8 network by backtracking over atomic
/// refinements with closure-based pruning. A closed atomic RCC-8 network
/// is satisfiable, so reaching one decides the instance.
pub fn oracle_rcc8(q: &Qcn, budget: &OracleBudget) -> Result<bool, OracleError> {
    rcc8_search(q, budget, None)
}

/// Enumerates every consistent atomic refinement of an RCC-8 network as a
/// vector of basic-relation indices over the upper-triangle pairs.
pub fn rcc8_scenarios(q: &Qcn, budget: &OracleBudget) -> Result<BTreeSet<Vec<u8>>, OracleError> {
    let mut set = BTreeSet::new();
    rcc8_search(q, budget, Some(&mut set))?;
    Ok(set)
}

fn check_calc(q: &Qcn, want: CalcId) -> Result<(), OracleError> {
    if q.calc().id() != want {
        return Err(OracleError::WrongCalculus {
            expected: want.name(),
            got: q.calc().id().name(),
        });
    }
    Ok(())
}

fn check_vars(q: &Qcn, budget: &OracleBudget) -> Result<(), OracleError> {
    if q.num_vars() > budget.max_vars {
        return Err(OracleError::TooManyVars { vars: q.num_vars(), max: budget.max_vars });
    }
    Ok(())
}
