//! Exact solver for RCC-8 networks built on ordered partitions.
//!
//! The route to satisfiability: any satisfying scenario induces a partial
//! order on the variables through its TPP/NTPP/EQ relations, so some total
//! preorder of the variables (an ordered partition: a sequence of blocks
//! of mutually equal variables) is compatible with a solution. Restricting
//! the network under an assumed order makes it solvable greedily in
//! polynomial time, always preferring the earliest relation of the fixed
//! sequence DC < EC < PO < TPP < NTPP. The solver therefore enumerates
//! ordered partitions bottom-up over variable subsets, keeping for each
//! subset only orders that are minimal with respect to their
//! *inconsistency paths*: transitivity chains that start in the ordered
//! part, leave into the unordered remainder, and already rule out every
//! relation some solved pair still allows. Orders with equal inconsistency
//! paths constrain the future identically, and an order whose paths form a
//! strict subset of another's is never worse.

use std::collections::HashMap;
use std::fmt;

use crate::calculus::{rels::rcc8 as rels, CalcId, Calculus, RelSet};
use crate::qcn::Qcn;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("variable {0} appears in more than one block")]
    DuplicateVariable(usize),
    #[error("variable {0} is out of range for {1} variables")]
    OutOfRange(usize, usize),
    #[error("ordered partitions may not contain empty blocks")]
    EmptyBlock,
}

/// An ordered partition of a subset of the variables `0..n`: a sequence of
/// disjoint nonempty blocks. Variables inside one block are equal under
/// the order; a variable in an earlier block comes before one in a later
/// block; variables outside every block are unordered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
    /// block index per variable, `NONE` while unplaced
    block_of: Vec<u16>,
}

const NONE: u16 = u16::MAX;

impl OrderedPartition {
    pub fn empty(n: usize) -> OrderedPartition {
        OrderedPartition { n, blocks: Vec::new(), block_of: vec![NONE; n] }
    }

    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<OrderedPartition, OrderError> {
        let mut p = OrderedPartition::empty(n);
        for b in blocks {
            p = p.then(&b)?;
        }
        Ok(p)
    }

    /// Extends the order with one more block at the end.
    pub fn then(&self, block: &[usize]) -> Result<OrderedPartition, OrderError> {
        if block.is_empty() {
            return Err(OrderError::EmptyBlock);
        }
        let mut next = self.clone();
        let idx = next.blocks.len() as u16;
        let mut sorted: Vec<usize> = block.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != block.len() {
            // some variable occurred twice within the block itself
            let dup = block
                .iter()
                .find(|v| block.iter().filter(|w| w == v).count() > 1)
                .copied()
                .unwrap();
            return Err(OrderError::DuplicateVariable(dup));
        }
        for &v in &sorted {
            if v >= self.n {
                return Err(OrderError::OutOfRange(v, self.n));
            }
            if next.block_of[v] != NONE {
                return Err(OrderError::DuplicateVariable(v));
            }
            next.block_of[v] = idx;
        }
        next.blocks.push(sorted);
        Ok(next)
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn contains(&self, v: usize) -> bool {
        self.block_of[v] != NONE
    }

    pub fn block_of(&self, v: usize) -> Option<usize> {
        (self.block_of[v] != NONE).then(|| self.block_of[v] as usize)
    }

    pub fn support_mask(&self) -> u64 {
        let mut m = 0u64;
        for b in &self.blocks {
            for &v in b {
                m |= 1 << v;
            }
        }
        m
    }

    pub fn support_size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Support variables in order position: block by block, ascending ids
    /// inside each block.
    pub fn sequence(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().flatten().copied()
    }

    /// Lexicographic key on the block sequence, the deterministic
    /// tie-breaker whenever one representative must be chosen.
    fn lex_key(&self) -> &[Vec<usize>] {
        &self.blocks
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first_block = true;
        for b in &self.blocks {
            if !first_block {
                write!(f, " < ")?;
            }
            first_block = false;
            write!(f, "{{")?;
            for (i, v) in b.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", v)?;
            }
            write!(f, "}}")?;
        }
        if first_block {
            write!(f, "(empty order)")?;
        }
        Ok(())
    }
}

/// How the order relates two variables, for restriction purposes.
enum Rel {
    Before,
    After,
    Same,
    /// at least one side is outside the order
    Open,
}

fn order_rel(t: &OrderedPartition, x: usize, y: usize) -> Rel {
    match (t.block_of(x), t.block_of(y)) {
        (Some(bx), Some(by)) => {
            if bx < by {
                Rel::Before
            } else if bx > by {
                Rel::After
            } else {
                Rel::Same
            }
        }
        (Some(_), None) => Rel::Before,
        (None, Some(_)) => Rel::After,
        (None, None) => Rel::Open,
    }
}

/// Applies a partial order to a network: ordered pairs lose the relations
/// that contradict the order, equal pairs keep at most EQ, pairs with an
/// unordered side keep their label. Support variables count as ordered
/// before everything outside the order.
pub fn restrict_circ(f: &Qcn, t: &OrderedPartition) -> Qcn {
    restrict(f, t, false)
}

/// Like [`restrict_circ`], but pairs entirely outside the order are reset
/// to the full relation: the restricted network deliberately forgets what
/// the original instance says about the unordered remainder, which is what
/// makes it tractable.
pub fn restrict_odot(f: &Qcn, t: &OrderedPartition) -> Qcn {
    restrict(f, t, true)
}

fn restrict(f: &Qcn, t: &OrderedPartition, forget_outside: bool) -> Qcn {
    assert_eq!(f.num_vars(), t.num_vars(), "order over a different variable set");
    let mut g = f.clone();
    let n = f.num_vars();
    for x in 0..n {
        for y in x + 1..n {
            let label = f.label(x, y);
            let new = match order_rel(t, x, y) {
                Rel::Before => label.minus(rels::LATER),
                Rel::After => label.minus(rels::EARLIER),
                Rel::Same => label.intersect(rels::EQ),
                Rel::Open => {
                    if forget_outside {
                        f.calc().full()
                    } else {
                        label
                    }
                }
            };
            g.set_label(x, y, new);
        }
    }
    g
}

// ---------------------------------------------------------------------------
// Reduced local consistency
// ---------------------------------------------------------------------------

/// Empties every off-diagonal label: the canonical shape of a network that
/// turned out to be unsatisfiable under its order.
fn collapse(g: &mut Qcn) {
    let n = g.num_vars();
    let empty = g.calc().empty();
    for x in 0..n {
        for y in x + 1..n {
            g.set_label(x, y, empty);
        }
    }
}

/// Removes every relation that cannot participate in a solution of some
/// subnetwork of `k` variables, until a fixpoint. For `k = 3` this
/// coincides with algebraic closure, because the composition tables
/// satisfy the cycle law: a basic relation survives a triangle exactly
/// when it lies in the composition of the other two labels. The solver
/// uses the closure-based fast path there. Larger `k` fall back to the
/// definitional subset enumeration. A network found inconsistent comes
/// back with every label emptied.
pub fn rlc_k(g: &Qcn, k: usize) -> Qcn {
    let mut out = g.clone();
    if k == 3 {
        if !out.algebraic_closure() {
            collapse(&mut out);
        }
        return out;
    }
    rlc_k_generic_inner(&mut out, k);
    out
}

/// Reference implementation straight from the definition, any `k`. Kept
/// public so the closure-based fast path can be validated against it.
pub fn rlc_k_generic(g: &Qcn, k: usize) -> Qcn {
    let mut out = g.clone();
    rlc_k_generic_inner(&mut out, k);
    out
}

fn rlc_k_generic_inner(g: &mut Qcn, k: usize) {
    let n = g.num_vars();
    let m = k.min(n);
    if m < 2 {
        return;
    }
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    let mut current = Vec::new();
    combinations(n, m, 0, &mut current, &mut subsets);
    loop {
        let mut changed = false;
        'subsets: for s in &subsets {
            for ix in 0..s.len() {
                for iy in ix + 1..s.len() {
                    let (x, y) = (s[ix], s[iy]);
                    let label = g.label(x, y);
                    let mut kept = g.calc().empty();
                    for r in label.iter_basics() {
                        if small_instance_sat(g, s, x, y, r) {
                            kept = kept.union(g.calc().basic(r));
                        }
                    }
                    if kept != label {
                        g.set_label(x, y, kept);
                        changed = true;
                        if kept.is_empty() {
                            break 'subsets;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    if g.has_empty_edge() {
        collapse(g);
    }
}

fn combinations(n: usize, m: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == m {
        out.push(cur.clone());
        return;
    }
    for v in start..n {
        cur.push(v);
        combinations(n, m, v + 1, cur, out);
        cur.pop();
    }
}

/// Satisfiability of the instance over subset `s` with the pair (x, y)
/// pinned to the basic relation `r`: exhaustive atomic refinement with a
/// final check that every triangle lies inside the composition table.
fn small_instance_sat(g: &Qcn, s: &[usize], x: usize, y: usize, r: u8) -> bool {
    let calc = g.calc();
    let m = s.len();
    let mut labels = vec![calc.empty(); m * m];
    for i in 0..m {
        for j in 0..m {
            labels[i * m + j] = g.label(s[i], s[j]);
        }
    }
    let xi = s.iter().position(|&v| v == x).unwrap();
    let yi = s.iter().position(|&v| v == y).unwrap();
    labels[xi * m + yi] = calc.basic(r);
    labels[yi * m + xi] = calc.basic(calc.converse_basic(r));

    let pairs: Vec<(usize, usize)> =
        (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let mut pick = vec![0u8; pairs.len()];
    assign(calc, &labels, m, &pairs, 0, &mut pick)
}

fn assign(
    calc: &Calculus,
    labels: &[RelSet],
    m: usize,
    pairs: &[(usize, usize)],
    k: usize,
    pick: &mut Vec<u8>,
) -> bool {
    if k == pairs.len() {
        let atom = |i: usize, j: usize| -> u8 {
            if i == j {
                return calc.identity();
            }
            let idx = pairs.iter().position(|&p| p == (i.min(j), i.max(j))).unwrap();
            let a = pick[idx];
            if i < j {
                a
            } else {
                calc.converse_basic(a)
            }
        };
        for i in 0..m {
            for j in 0..m {
                for l in 0..m {
                    if !calc.compose_basics(atom(i, l), atom(l, j)).contains(atom(i, j)) {
                        return false;
                    }
                }
            }
        }
        return true;
    }
    let (i, j) = pairs[k];
    for b in labels[i * m + j].iter_basics() {
        pick[k] = b;
        if assign(calc, labels, m, pairs, k + 1, pick) {
            return true;
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Solving under an assumed order
// ---------------------------------------------------------------------------

/// An ordered partition together with the network solved under it.
#[derive(Debug, Clone)]
pub struct SolvedOrderState {
    pub order: OrderedPartition,
    /// the solved network over all variables; atomic on strictly ordered
    /// support pairs unless `no_instance`
    pub net: Qcn,
    /// set when the order admits no solution; `net` is collapsed then
    pub no_instance: bool,
}

/// Solves the network under an assumed ordered partition: restrict, close,
/// then fix every strictly ordered support pair to the earliest relation
/// of DC < EC < PO < TPP < NTPP that consistency allows, re-closing after
/// each choice. The result is pointwise minimal under that sequence among
/// all networks satisfying the restricted instance.
pub fn solve_under_order(f: &Qcn, order: &OrderedPartition) -> SolvedOrderState {
    let mut g = restrict_odot(f, order);
    if !g.algebraic_closure() {
        collapse(&mut g);
        return SolvedOrderState { order: order.clone(), net: g, no_instance: true };
    }
    let seq: Vec<usize> = order.sequence().collect();
    for i in 0..seq.len() {
        let xi = seq[i];
        for j in (0..i).rev() {
            let xj = seq[j];
            if order.block_of(xj) == order.block_of(xi) {
                // equal variables: the label is already forced toward EQ
                continue;
            }
            let cur = g.label(xj, xi);
            if cur.is_basic() {
                continue;
            }
            let min = g
                .calc()
                .diamond_min(cur)
                .expect("strictly ordered pair lost its ordered relations");
            g.set_label(xj, xi, g.calc().basic(min));
            let key = (xj.min(xi), xj.max(xi));
            if !g.closure_from(vec![key]) {
                collapse(&mut g);
                return SolvedOrderState { order: order.clone(), net: g, no_instance: true };
            }
        }
    }
    SolvedOrderState { order: order.clone(), net: g, no_instance: false }
}

// ---------------------------------------------------------------------------
// Inconsistency paths
// ---------------------------------------------------------------------------

/// A set of variable pairs (head, tail), both outside the order's support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpSet {
    n: usize,
    bits: Vec<u64>,
}

impl IpSet {
    pub fn new(n: usize) -> IpSet {
        IpSet { n, bits: vec![0; (n * n + 63) / 64] }
    }

    pub fn insert(&mut self, head: usize, tail: usize) {
        let i = head * self.n + tail;
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, head: usize, tail: usize) -> bool {
        let i = head * self.n + tail;
        self.bits[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &IpSet) -> bool {
        assert_eq!(self.n, other.n);
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn iter_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n * n).filter_map(move |i| {
            if self.bits[i / 64] & (1 << (i % 64)) != 0 {
                Some((i / n, i % n))
            } else {
                None
            }
        })
    }
}

/// Computes all inconsistency paths of a solved order: pairs (h, t) of
/// outside variables such that some transitivity chain (ascending through
/// the support, stepping to t, then walking outside variables to h, with
/// every step assumed forward-ordered) leaves no relation in common with
/// what the solved network still allows between the chain's support start
/// and h. Chains whose accumulated relation set empties out impose nothing
/// and are ignored.
pub fn inconsistency_paths(f: &Qcn, state: &SolvedOrderState) -> IpSet {
    let n = f.num_vars();
    let mut ips = IpSet::new(n);
    if state.no_instance {
        return ips;
    }
    let order = &state.order;
    let g = &state.net;
    let calc = f.calc();
    let seq: Vec<usize> = order.sequence().collect();
    let outside: Vec<usize> = (0..n).filter(|&v| !order.contains(v)).collect();
    if seq.is_empty() || outside.is_empty() {
        return ips;
    }
    // every chain step uses the original label under a forward order
    let edge = |u: usize, v: usize| f.label(u, v).minus(rels::LATER);

    for (a, &x1) in seq.iter().enumerate() {
        // relations reachable from x1 through strictly ascending support
        // chains, per chain endpoint
        let mut b: Vec<RelSet> = vec![calc.empty(); n];
        for (bi, &v) in seq.iter().enumerate().skip(a + 1) {
            if order.block_of(v) == order.block_of(x1) {
                continue;
            }
            let mut acc = edge(x1, v);
            for &u in &seq[a + 1..bi] {
                if order.block_of(u) == order.block_of(x1)
                    || order.block_of(u) == order.block_of(v)
                {
                    continue;
                }
                if !b[u].is_empty() {
                    acc = acc.union(calc.compose_sets(b[u], edge(u, v)));
                }
            }
            b[v] = acc;
        }
        for &t in &outside {
            // seed: x1 ... xk, then the step into t
            let mut reach: Vec<RelSet> = vec![calc.empty(); n];
            let mut seed = edge(x1, t);
            for &xk in &seq[a + 1..] {
                if !b[xk].is_empty() {
                    seed = seed.union(calc.compose_sets(b[xk], edge(xk, t)));
                }
            }
            reach[t] = seed;
            // walk the outside variables to a fixpoint
            loop {
                let mut changed = false;
                for &u in &outside {
                    if reach[u].is_empty() {
                        continue;
                    }
                    for &v in &outside {
                        if v == u {
                            continue;
                        }
                        let step = calc.compose_sets(reach[u], edge(u, v));
                        let merged = reach[v].union(step);
                        if merged != reach[v] {
                            reach[v] = merged;
                            changed = true;
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            for &h in &outside {
                if !reach[h].is_empty() && g.label(x1, h).intersect(reach[h]).is_empty() {
                    ips.insert(h, t);
                }
            }
        }
    }
    ips
}

// ---------------------------------------------------------------------------
// Comparing and pruning orders
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderComparison {
    /// identical inconsistency paths: the orders are interchangeable
    Equivalent,
    /// the first order's paths are a strict subset: it is strictly better
    Less,
    Greater,
    Incomparable,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CompareError {
    #[error("orders cover different variable sets")]
    SupportMismatch,
}

/// Compares two solved orders over the same support by their
/// inconsistency paths.
pub fn compare_orders(
    f: &Qcn,
    a: &SolvedOrderState,
    b: &SolvedOrderState,
) -> Result<OrderComparison, CompareError> {
    if a.order.support_mask() != b.order.support_mask() {
        return Err(CompareError::SupportMismatch);
    }
    let ia = inconsistency_paths(f, a);
    let ib = inconsistency_paths(f, b);
    Ok(if ia == ib {
        OrderComparison::Equivalent
    } else if ia.is_subset(&ib) {
        OrderComparison::Less
    } else if ib.is_subset(&ia) {
        OrderComparison::Greater
    } else {
        OrderComparison::Incomparable
    })
}

/// How aggressively [`prune_min`] thins a set of candidate orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PruneMode {
    /// keep one representative per equivalence class and drop classes
    /// whose paths strictly contain another's
    Full,
    /// only merge equivalent orders; never drop a class
    Safe,
}

/// Reduces a set of solved orders over a common support: unsolvable orders
/// go away, equivalent orders collapse to the lexicographically least
/// block sequence, and in [`PruneMode::Full`] dominated orders (paths a
/// strict superset of a survivor's) are dropped. Output is sorted by block
/// sequence, so the result is deterministic regardless of input order.
pub fn prune_min(
    states: Vec<SolvedOrderState>,
    f: &Qcn,
    mode: PruneMode,
) -> Vec<SolvedOrderState> {
    debug_assert!(states
        .iter()
        .all(|s| s.net.num_vars() == f.num_vars() && s.net.calc().id() == f.calc().id()));
    let mut rated: Vec<(IpSet, SolvedOrderState)> = states
        .into_iter()
        .filter(|s| !s.no_instance)
        .map(|s| (inconsistency_paths(f, &s), s))
        .collect();
    rated.sort_by(|a, b| a.1.order.lex_key().cmp(b.1.order.lex_key()));
    // first occurrence per class is the lex-least representative
    let mut reps: Vec<(IpSet, SolvedOrderState)> = Vec::new();
    for (ips, s) in rated {
        if !reps.iter().any(|(r, _)| *r == ips) {
            reps.push((ips, s));
        }
    }
    let keep: Vec<bool> = match mode {
        PruneMode::Safe => vec![true; reps.len()],
        PruneMode::Full => (0..reps.len())
            .map(|i| {
                !reps
                    .iter()
                    .enumerate()
                    .any(|(j, (ips, _))| j != i && ips.is_subset(&reps[i].0))
            })
            .collect(),
    };
    reps.into_iter()
        .zip(keep)
        .filter_map(|((_, s), k)| k.then_some(s))
        .collect()
}

// ---------------------------------------------------------------------------
// The subset recurrence
// ---------------------------------------------------------------------------

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum Rcc8Error {
    #[error("solver expects an RCC-8 network, got {0}")]
    WrongCalculus(&'static str),
    #[error("{n} variables exceed the supported maximum of {max}")]
    TooManyVariables { n: usize, max: usize },
    #[error("label between {x} and {y} contains bits outside the calculus")]
    MalformedLabel { x: String, y: String },
}

/// Sizes of the memo table per subset cardinality, for reporting.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CardinalityRow {
    pub card: usize,
    pub subsets: u64,
    pub max_states: u64,
    pub total_states: u64,
}

#[derive(Debug, Clone, Default)]
pub struct Rcc8Stats {
    pub rows: Vec<CardinalityRow>,
}

#[derive(Debug, Clone)]
pub struct Rcc8Outcome {
    pub satisfiable: bool,
    /// an atomic scenario refining the input, present when satisfiable
    pub certificate: Option<Qcn>,
    pub stats: Rcc8Stats,
}

const MAX_VARS: usize = 16;

/// Decides satisfiability of an RCC-8 network by dynamic programming over
/// variable subsets, keeping per subset a pruned set of solved ordered
/// partitions. Satisfiable instances come with an atomic certificate that
/// is validated before it is returned.
pub fn solve_rcc8(f: &Qcn, mode: PruneMode) -> Result<Rcc8Outcome, Rcc8Error> {
    if f.calc().id() != CalcId::Rcc8 {
        return Err(Rcc8Error::WrongCalculus(f.calc().id().name()));
    }
    let n = f.num_vars();
    if n > MAX_VARS {
        return Err(Rcc8Error::TooManyVariables { n, max: MAX_VARS });
    }
    for x in 0..n {
        for y in x + 1..n {
            if !f.label(x, y).is_subset(f.calc().full()) {
                return Err(Rcc8Error::MalformedLabel {
                    x: f.var_name(x).to_string(),
                    y: f.var_name(y).to_string(),
                });
            }
        }
    }

    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut memo: HashMap<u64, Vec<SolvedOrderState>> = HashMap::new();
    memo.insert(0, vec![solve_under_order(f, &OrderedPartition::empty(n))]);
    let mut stats = Rcc8Stats::default();
    stats.rows.push(CardinalityRow { card: 0, subsets: 1, max_states: 1, total_states: 1 });

    for card in 1..=n {
        let mut row = CardinalityRow { card, subsets: 0, max_states: 0, total_states: 0 };
        for s in 1..=full {
            if s.count_ones() as usize != card {
                continue;
            }
            let mut candidates: Vec<SolvedOrderState> = Vec::new();
            // every proper subset of s may carry the orders we extend
            let mut sub = (s - 1) & s;
            loop {
                if let Some(states) = memo.get(&sub) {
                    let block: Vec<usize> =
                        (0..n).filter(|&v| s & !sub & (1 << v) != 0).collect();
                    for t in states {
                        let order = t.order.then(&block).expect("disjoint by construction");
                        candidates.push(solve_under_order(f, &order));
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & s;
            }
            let kept = prune_min(candidates, f, mode);
            row.subsets += 1;
            row.max_states = row.max_states.max(kept.len() as u64);
            row.total_states += kept.len() as u64;
            memo.insert(s, kept);
        }
        stats.rows.push(row);
    }

    let final_states = memo.remove(&full).unwrap_or_default();
    let satisfiable = !final_states.is_empty();
    let certificate = if satisfiable {
        Some(
            extract_certificate(f, &final_states[0])
                .expect("surviving complete order must certify"),
        )
    } else {
        None
    };
    Ok(Rcc8Outcome { satisfiable, certificate, stats })
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CertificateError {
    #[error("the order does not certify a solution: {0}")]
    NotAYesOrder(&'static str),
}

/// Reads the atomic scenario out of a solved order with full support and
/// re-validates it: every label atomic, refining the input, and closed
/// under composition.
pub fn extract_certificate(f: &Qcn, state: &SolvedOrderState) -> Result<Qcn, CertificateError> {
    if state.no_instance {
        return Err(CertificateError::NotAYesOrder("order was marked unsolvable"));
    }
    if state.order.support_mask().count_ones() as usize != f.num_vars() {
        return Err(CertificateError::NotAYesOrder("order does not cover all variables"));
    }
    let g = &state.net;
    let n = f.num_vars();
    for x in 0..n {
        for y in x + 1..n {
            if !g.label(x, y).is_basic() {
                return Err(CertificateError::NotAYesOrder("scenario is not atomic"));
            }
            if !g.label(x, y).is_subset(f.label(x, y)) {
                return Err(CertificateError::NotAYesOrder("scenario does not refine the input"));
            }
        }
    }
    if !g.is_closed() {
        return Err(CertificateError::NotAYesOrder("scenario violates composition"));
    }
    Ok(g.clone())
}
