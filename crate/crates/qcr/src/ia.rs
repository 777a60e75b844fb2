//! Exact solver for the three-relation interval fragment.
//!
//! Labels here are unions of the blocks {p}, {cap}, {p-}: an interval is
//! entirely before another, shares at least one point with it, or is
//! entirely after it. Satisfiability of such networks (equivalently, the
//! interval graph sandwich problem) is NP-hard, but a solution can always
//! be normalized to a strict total order of the `2n` interval endpoints.
//! The solver constructs endpoint orders left to right, one endpoint at a
//! time, and memoizes on the *set* of placed endpoints: two consistent
//! prefixes over the same endpoint set fix the same open-interval
//! intersections and constrain the future identically, so one
//! representative per set suffices. That caps the search at `O*(4^n)`
//! states instead of `(2n)!` orders.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::calculus::{rels::ia as ia_rels, CalcId, RelSet};
use crate::oracle::ia_atom_from_points;
use crate::qcn::Qcn;

/// An interval endpoint. Variable `v` owns endpoints `2v` (start) and
/// `2v + 1` (end), so a u64 mask covers networks up to 32 variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EndpointId(u32);

impl EndpointId {
    pub fn start_of(var: usize) -> EndpointId {
        EndpointId(2 * var as u32)
    }

    pub fn end_of(var: usize) -> EndpointId {
        EndpointId(2 * var as u32 + 1)
    }

    pub fn var(self) -> usize {
        (self.0 / 2) as usize
    }

    pub fn is_start(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn raw(self) -> u32 {
        self.0
    }
}

/// What a partial endpoint order has fixed about a variable pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum PairRel {
    Undecided = 0,
    /// x ends before y starts
    Before = 1,
    /// x starts after y ends
    After = 2,
    /// the intervals share at least one point
    Intersects = 3,
}

impl PairRel {
    fn flip(self) -> PairRel {
        match self {
            PairRel::Before => PairRel::After,
            PairRel::After => PairRel::Before,
            other => other,
        }
    }

    /// True when the fixed relation is permitted by the given label.
    /// Labels are block unions, so single-bit probes are enough.
    fn allowed_by(self, label: RelSet) -> bool {
        match self {
            PairRel::Undecided => true,
            PairRel::Before => !label.intersect(ia_rels::P).is_empty(),
            PairRel::After => !label.intersect(ia_rels::PI).is_empty(),
            PairRel::Intersects => !label.intersect(ia_rels::CAP).is_empty(),
        }
    }
}

/// A search state: the set of placed endpoints plus the pair relations the
/// placement order has fixed so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndpointState {
    placed: u64,
    /// one entry per unordered pair (x < y), oriented x-to-y
    sigma: Vec<u8>,
    num_vars: usize,
}

impl EndpointState {
    pub fn initial(num_vars: usize) -> EndpointState {
        EndpointState {
            placed: 0,
            sigma: vec![0; num_vars * num_vars.saturating_sub(1) / 2],
            num_vars,
        }
    }

    pub fn placed_mask(&self) -> u64 {
        self.placed
    }

    pub fn is_placed(&self, e: EndpointId) -> bool {
        self.placed & (1 << e.raw()) != 0
    }

    fn pair_index(&self, x: usize, y: usize) -> usize {
        debug_assert!(x < y && y < self.num_vars);
        x * (2 * self.num_vars - x - 1) / 2 + (y - x - 1)
    }

    /// The relation fixed for (x, y), oriented from x to y.
    pub fn sigma(&self, x: usize, y: usize) -> PairRel {
        if x == y {
            return PairRel::Undecided;
        }
        let (a, b) = (x.min(y), x.max(y));
        let v = match self.sigma[self.pair_index(a, b)] {
            0 => PairRel::Undecided,
            1 => PairRel::Before,
            2 => PairRel::After,
            _ => PairRel::Intersects,
        };
        if x < y {
            v
        } else {
            v.flip()
        }
    }

    fn write(&mut self, x: usize, y: usize, rel: PairRel) -> Result<bool, Conflict> {
        let old = self.sigma(x, y);
        if old == rel {
            // routine re-derivation of an already fixed relation
            return Ok(false);
        }
        if old != PairRel::Undecided {
            return Err(Conflict::Overwrite { x, y, old, new: rel });
        }
        let (a, b) = (x.min(y), x.max(y));
        let stored = if x < y { rel } else { rel.flip() };
        let idx = self.pair_index(a, b);
        self.sigma[idx] = stored as u8;
        Ok(true)
    }

    fn var_started(&self, v: usize) -> bool {
        self.is_placed(EndpointId::start_of(v))
    }

    fn var_closed(&self, v: usize) -> bool {
        self.is_placed(EndpointId::end_of(v))
    }

    fn var_open(&self, v: usize) -> bool {
        self.var_started(v) && !self.var_closed(v)
    }
}

/// Why a placement was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conflict {
    /// an interval's end cannot be ordered before its start
    EndBeforeStart { var: usize },
    /// the placement re-fixed an already decided pair differently
    Overwrite { x: usize, y: usize, old: PairRel, new: PairRel },
}

/// Places endpoint `x` next in the order and derives every pair relation
/// that placement fixes. Placing a start after some interval closed fixes
/// "after"; placing an end while another start is still unplaced fixes
/// "before"; anything placed while another interval is open fixes an
/// intersection. Returns the extended state and the pairs newly decided.
pub fn extend_sigma(
    state: &EndpointState,
    x: EndpointId,
) -> Result<(EndpointState, Vec<(usize, usize)>), Conflict> {
    assert!(!state.is_placed(x), "endpoint placed twice");
    let v = x.var();
    if !x.is_start() && !state.var_started(v) {
        return Err(Conflict::EndBeforeStart { var: v });
    }
    let mut next = state.clone();
    next.placed |= 1 << x.raw();
    let mut written = Vec::new();
    let mut put = |next: &mut EndpointState, a: usize, b: usize, rel: PairRel| {
        match next.write(a, b, rel) {
            Ok(true) => {
                written.push((a.min(b), a.max(b)));
                Ok(())
            }
            Ok(false) => Ok(()),
            Err(c) => Err(c),
        }
    };
    if x.is_start() {
        for y in 0..state.num_vars {
            if y != v && next.var_closed(y) {
                put(&mut next, y, v, PairRel::Before)?;
            }
        }
    } else {
        for y in 0..state.num_vars {
            if y != v && !next.var_started(y) {
                put(&mut next, v, y, PairRel::Before)?;
            }
        }
    }
    for y in 0..state.num_vars {
        if y != v && next.var_open(y) {
            put(&mut next, v, y, PairRel::Intersects)?;
        }
    }
    Ok((next, written))
}

/// True when every pair relation fixed by the state is permitted by the
/// network's label for that pair.
pub fn state_consistent(q: &Qcn, state: &EndpointState) -> bool {
    let n = q.num_vars();
    for x in 0..n {
        for y in x + 1..n {
            if !state.sigma(x, y).allowed_by(q.label(x, y)) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum A3Error {
    #[error("solver expects an interval algebra network, got {0}")]
    WrongCalculus(&'static str),
    #[error("{n} variables exceed the supported maximum of {max}")]
    TooManyVariables { n: usize, max: usize },
    #[error("label {label} between {x} and {y} is not a union of p, cap, p-")]
    MalformedLabel { x: String, y: String, label: String },
}

/// True when the label is a union of the blocks {p}, {cap}, {p-}; the
/// eleven "share a point" relations must be present all together or not at
/// all.
pub fn is_a3_label(label: RelSet) -> bool {
    let cap = label.intersect(ia_rels::CAP);
    cap.is_empty() || cap == ia_rels::CAP
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// states pushed onto the queue, the quantity bounded by 4^n
    pub enqueued: u64,
    pub dequeued: u64,
}

/// A realized endpoint order: per variable, the positions of its start and
/// end among `0..2n`. Reading position `i` as the rational number `i`
/// gives concrete intervals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalModel {
    pub endpoints: Vec<(u32, u32)>,
}

impl IntervalModel {
    pub fn num_vars(&self) -> usize {
        self.endpoints.len()
    }

    /// Basic interval relation realized between two variables.
    pub fn atom(&self, x: usize, y: usize) -> u8 {
        let (sx, ex) = self.endpoints[x];
        let (sy, ey) = self.endpoints[y];
        ia_atom_from_points(sx as i32, ex as i32, sy as i32, ey as i32)
    }

    /// True when the intervals of x and y share at least one point.
    pub fn intersects(&self, x: usize, y: usize) -> bool {
        let (sx, ex) = self.endpoints[x];
        let (sy, ey) = self.endpoints[y];
        !(ex < sy || ey < sx)
    }
}

#[derive(Debug, Clone)]
pub struct A3Outcome {
    pub satisfiable: bool,
    pub model: Option<IntervalModel>,
    pub stats: SearchStats,
}

/// Decides satisfiability of a three-fragment network by breadth-first
/// construction of endpoint orders, memoized per placed-endpoint set.
/// Satisfiable instances come back with a realized model, re-checked
/// against the labels endpoint by endpoint before it is returned.
pub fn solve_a3(q: &Qcn) -> Result<A3Outcome, A3Error> {
    if q.calc().id() != CalcId::Ia13 {
        return Err(A3Error::WrongCalculus(q.calc().id().name()));
    }
    let n = q.num_vars();
    if n > 32 {
        return Err(A3Error::TooManyVariables { n, max: 32 });
    }
    for x in 0..n {
        for y in x + 1..n {
            if !is_a3_label(q.label(x, y)) {
                return Err(A3Error::MalformedLabel {
                    x: q.var_name(x).to_string(),
                    y: q.var_name(y).to_string(),
                    label: q.label(x, y).to_string(),
                });
            }
        }
    }
    let mut stats = SearchStats::default();
    // a pair with an empty label can never be decided consistently, and the
    // identity diagonal only empties when a caller zeroed it explicitly
    if q.has_empty_edge() {
        return Ok(A3Outcome { satisfiable: false, model: None, stats });
    }

    let goal: u64 = if n == 32 { u64::MAX } else { (1u64 << (2 * n)) - 1 };
    // mask -> (predecessor mask, endpoint moved to reach it)
    let mut visited: HashMap<u64, (u64, u32)> = HashMap::new();
    let mut queue: VecDeque<EndpointState> = VecDeque::new();
    visited.insert(0, (0, u32::MAX));
    queue.push_back(EndpointState::initial(n));
    stats.enqueued = 1;

    while let Some(state) = queue.pop_front() {
        stats.dequeued += 1;
        if state.placed == goal {
            let model = reconstruct_model(n, goal, &visited);
            verify_model(q, &model);
            return Ok(A3Outcome { satisfiable: true, model: Some(model), stats });
        }
        for raw in 0..(2 * n) as u32 {
            let x = EndpointId(raw);
            if state.is_placed(x) {
                continue;
            }
            let Ok((next, written)) = extend_sigma(&state, x) else {
                continue;
            };
            if visited.contains_key(&next.placed) {
                continue;
            }
            let ok = written
                .iter()
                .all(|&(a, b)| next.sigma(a, b).allowed_by(q.label(a, b)));
            if !ok {
                continue;
            }
            debug_assert!(state_consistent(q, &next));
            visited.insert(next.placed, (state.placed, raw));
            queue.push_back(next);
            stats.enqueued += 1;
        }
    }
    Ok(A3Outcome { satisfiable: false, model: None, stats })
}

fn reconstruct_model(n: usize, goal: u64, visited: &HashMap<u64, (u64, u32)>) -> IntervalModel {
    let mut order = Vec::with_capacity(2 * n);
    let mut mask = goal;
    while mask != 0 {
        let &(prev, moved) = visited.get(&mask).expect("broken predecessor chain");
        order.push(moved);
        mask = prev;
    }
    order.reverse();
    let mut pos = vec![0u32; 2 * n];
    for (i, &raw) in order.iter().enumerate() {
        pos[raw as usize] = i as u32;
    }
    IntervalModel {
        endpoints: (0..n).map(|v| (pos[2 * v], pos[2 * v + 1])).collect(),
    }
}

/// Double-checks a claimed model against the network using nothing but the
/// endpoint semantics of the thirteen basic relations.
fn verify_model(q: &Qcn, model: &IntervalModel) {
    for x in 0..q.num_vars() {
        let (s, e) = model.endpoints[x];
        assert!(s < e, "degenerate interval for {}", q.var_name(x));
        for y in x + 1..q.num_vars() {
            let atom = model.atom(x, y);
            assert!(
                q.label(x, y).contains(atom),
                "model realizes {} between {} and {}, label is {}",
                q.calc().basic_name(atom),
                q.var_name(x),
                q.var_name(y),
                q.label(x, y)
            );
        }
    }
}

// ---------------------------------------------------------------------------
// Interval graph sandwich
// ---------------------------------------------------------------------------

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SandwichError {
    #[error("edge ({0}, {1}) appears in both the forced and the optional set")]
    OverlappingEdgeSets(usize, usize),
    #[error("edge ({u}, {v}) is invalid for {n} vertices")]
    InvalidEdge { u: usize, v: usize, n: usize },
}

/// An interval graph sandwich instance: vertices `0..n`, a set of edges
/// every solution must contain, and a disjoint set of edges a solution may
/// contain. Everything else is forbidden.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SandwichInput {
    n: usize,
    forced: BTreeSet<(usize, usize)>,
    optional: BTreeSet<(usize, usize)>,
}

impl SandwichInput {
    pub fn new(
        n: usize,
        forced: impl IntoIterator<Item = (usize, usize)>,
        optional: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<SandwichInput, SandwichError> {
        let norm = |set: &mut BTreeSet<(usize, usize)>,
                    it: &mut dyn Iterator<Item = (usize, usize)>|
         -> Result<(), SandwichError> {
            for (u, v) in it {
                if u == v || u >= n || v >= n {
                    return Err(SandwichError::InvalidEdge { u, v, n });
                }
                set.insert((u.min(v), u.max(v)));
            }
            Ok(())
        };
        let mut f = BTreeSet::new();
        let mut o = BTreeSet::new();
        norm(&mut f, &mut forced.into_iter())?;
        norm(&mut o, &mut optional.into_iter())?;
        if let Some(&(u, v)) = f.intersection(&o).next() {
            return Err(SandwichError::OverlappingEdgeSets(u, v));
        }
        Ok(SandwichInput { n, forced: f, optional: o })
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn forced(&self) -> &BTreeSet<(usize, usize)> {
        &self.forced
    }

    pub fn optional(&self) -> &BTreeSet<(usize, usize)> {
        &self.optional
    }
}

/// Encodes a sandwich instance as a three-fragment network: forced edges
/// must intersect, optional edges are unconstrained, and absent edges must
/// keep the intervals apart.
pub fn encode_igsp(input: &SandwichInput) -> Qcn {
    let vars: Vec<String> = (0..input.n).map(|i| format!("v{}", i)).collect();
    let mut q = Qcn::new(crate::calculus::Calculus::ia13(), &vars).unwrap();
    for u in 0..input.n {
        for v in u + 1..input.n {
            if input.forced.contains(&(u, v)) {
                q.set_label(u, v, ia_rels::CAP);
            } else if !input.optional.contains(&(u, v)) {
                q.set_label(u, v, ia_rels::P.union(ia_rels::PI));
            }
        }
    }
    q
}

#[derive(Debug, Clone)]
pub struct IgspOutcome {
    pub satisfiable: bool,
    /// the edge set of the realized interval graph, when satisfiable
    pub realized_edges: Option<BTreeSet<(usize, usize)>>,
    pub model: Option<IntervalModel>,
    pub stats: SearchStats,
}

/// Solves the sandwich instance through the network encoding and reads the
/// realized edge set off the model.
pub fn solve_igsp(input: &SandwichInput) -> Result<IgspOutcome, A3Error> {
    let q = encode_igsp(input);
    let out = solve_a3(&q)?;
    let realized = out.model.as_ref().map(|m| {
        let mut edges = BTreeSet::new();
        for u in 0..input.n {
            for v in u + 1..input.n {
                if m.intersects(u, v) {
                    edges.insert((u, v));
                }
            }
        }
        assert!(
            edges.is_superset(&input.forced),
            "realized graph dropped a forced edge"
        );
        assert!(
            edges.difference(&input.forced).all(|e| input.optional.contains(e)),
            "realized graph contains a forbidden edge"
        );
        edges
    });
    Ok(IgspOutcome {
        satisfiable: out.satisfiable,
        realized_edges: realized,
        model: out.model,
        stats: out.stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::Calculus;
    use crate::oracle::{oracle_ia, oracle_igsp, OracleBudget};
    use proptest::prelude::*;

    fn a3_net(n: usize, labels: &[(usize, usize, RelSet)]) -> Qcn {
        let vars: Vec<String> = (0..n).map(|i| format!("x{}", i)).collect();
        let mut q = Qcn::new(Calculus::ia13(), &vars).unwrap();
        for &(x, y, r) in labels {
            q.set_label(x, y, r);
        }
        q
    }

    const GAP: RelSet = RelSet::new(CalcId::Ia13, 0b1_0000_0000_0001);

    #[test]
    fn extend_sigma_fixes_intersection_of_open_intervals() {
        let s0 = EndpointState::initial(2);
        let (s1, w1) = extend_sigma(&s0, EndpointId::start_of(0)).unwrap();
        assert!(w1.is_empty());
        let (s2, w2) = extend_sigma(&s1, EndpointId::start_of(1)).unwrap();
        assert_eq!(w2, vec![(0, 1)]);
        assert_eq!(s2.sigma(0, 1), PairRel::Intersects);
        assert_eq!(s2.sigma(1, 0), PairRel::Intersects);
    }

    #[test]
    fn extend_sigma_fixes_precedence_of_closed_intervals() {
        let s0 = EndpointState::initial(2);
        let (s1, _) = extend_sigma(&s0, EndpointId::start_of(0)).unwrap();
        // closing interval 0 while interval 1 has not started fixes 0 p 1
        let (s2, w2) = extend_sigma(&s1, EndpointId::end_of(0)).unwrap();
        assert_eq!(w2, vec![(0, 1)]);
        assert_eq!(s2.sigma(0, 1), PairRel::Before);
        assert_eq!(s2.sigma(1, 0), PairRel::After);
        // the start of 1 re-derives the same relation without conflict
        let (s3, w3) = extend_sigma(&s2, EndpointId::start_of(1)).unwrap();
        assert!(w3.is_empty());
        assert_eq!(s3.sigma(0, 1), PairRel::Before);
    }

    #[test]
    fn extend_sigma_rejects_end_before_start() {
        let s0 = EndpointState::initial(2);
        assert_eq!(
            extend_sigma(&s0, EndpointId::end_of(1)),
            Err(Conflict::EndBeforeStart { var: 1 })
        );
    }

    #[test]
    fn state_consistent_respects_labels() {
        let q = a3_net(2, &[(0, 1, ia_rels::P)]);
        let s0 = EndpointState::initial(2);
        let (s1, _) = extend_sigma(&s0, EndpointId::start_of(0)).unwrap();
        let (s2, _) = extend_sigma(&s1, EndpointId::start_of(1)).unwrap();
        // both intervals open fixes an intersection, which p forbids
        assert!(!state_consistent(&q, &s2));
        let (t2, _) = extend_sigma(&s1, EndpointId::end_of(0)).unwrap();
        assert!(state_consistent(&q, &t2));
    }

    #[test]
    fn solve_a3_two_variables() {
        let sat = solve_a3(&a3_net(2, &[(0, 1, ia_rels::P)])).unwrap();
        assert!(sat.satisfiable);
        let m = sat.model.unwrap();
        assert!(m.endpoints[0].1 < m.endpoints[1].0);

        let unsat = solve_a3(&a3_net(2, &[(0, 1, Calculus::ia13().empty())])).unwrap();
        assert!(!unsat.satisfiable);
        assert!(unsat.model.is_none());
    }

    #[test]
    fn solve_a3_precedence_chain() {
        let unsat = a3_net(3, &[(0, 1, ia_rels::P), (1, 2, ia_rels::P), (0, 2, ia_rels::CAP)]);
        assert!(!solve_a3(&unsat).unwrap().satisfiable);
        let sat = a3_net(3, &[(0, 1, ia_rels::CAP), (1, 2, ia_rels::CAP), (0, 2, ia_rels::P)]);
        assert!(solve_a3(&sat).unwrap().satisfiable);
    }

    #[test]
    fn solve_a3_rejects_malformed_labels() {
        // s alone is not a block union: it implies intersection but omits
        // the other ten intersecting relations
        let q = a3_net(2, &[(0, 1, ia_rels::S)]);
        match solve_a3(&q) {
            Err(A3Error::MalformedLabel { .. }) => {}
            other => panic!("expected MalformedLabel, got {:?}", other),
        }
    }

    #[test]
    fn enqueued_states_stay_within_bound() {
        let q = a3_net(4, &[]);
        let out = solve_a3(&q).unwrap();
        assert!(out.satisfiable);
        assert!(out.stats.enqueued <= 4u64.pow(4));
    }

    #[test]
    fn four_cycle_sandwich() {
        let cycle = [(0, 1), (1, 2), (2, 3), (0, 3)];
        // no optional edges: C4 itself would have to be an interval graph
        let hard = SandwichInput::new(4, cycle, []).unwrap();
        let out = solve_igsp(&hard).unwrap();
        assert!(!out.satisfiable);
        // allowing one chord makes it chordal and solvable
        let easy = SandwichInput::new(4, cycle, [(0, 2)]).unwrap();
        let out = solve_igsp(&easy).unwrap();
        assert!(out.satisfiable);
        let realized = out.realized_edges.unwrap();
        assert!(realized.contains(&(0, 2)), "the chord is forced in any solution");
    }

    #[test]
    fn sandwich_input_validation() {
        assert_eq!(
            SandwichInput::new(3, [(0, 1)], [(1, 0)]),
            Err(SandwichError::OverlappingEdgeSets(0, 1))
        );
        assert_eq!(
            SandwichInput::new(3, [(0, 3)], []),
            Err(SandwichError::InvalidEdge { u: 0, v: 3, n: 3 })
        );
        assert_eq!(
            SandwichInput::new(3, [(1, 1)], []),
            Err(SandwichError::InvalidEdge { u: 1, v: 1, n: 3 })
        );
    }

    fn a3_label(code: u8) -> RelSet {
        let mut r = Calculus::ia13().empty();
        if code & 1 != 0 {
            r = r.union(ia_rels::P);
        }
        if code & 2 != 0 {
            r = r.union(ia_rels::CAP);
        }
        if code & 4 != 0 {
            r = r.union(ia_rels::PI);
        }
        r
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn solver_agrees_with_oracle(codes in proptest::collection::vec(0u8..8, 6)) {
            // all 4-variable networks over the three-fragment labels
            let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            let labels: Vec<(usize, usize, RelSet)> = pairs
                .iter()
                .zip(&codes)
                .map(|(&(x, y), &c)| (x, y, a3_label(c)))
                .collect();
            let q = a3_net(4, &labels);
            let fast = solve_a3(&q).unwrap().satisfiable;
            let slow = oracle_ia(&q, &OracleBudget::ia_default()).unwrap();
            prop_assert_eq!(fast, slow);
        }

        #[test]
        fn sandwich_agrees_with_oracle(trits in proptest::collection::vec(0u8..3, 6)) {
            let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            let mut forced = Vec::new();
            let mut optional = Vec::new();
            for (&(u, v), &t) in pairs.iter().zip(&trits) {
                match t {
                    0 => forced.push((u, v)),
                    1 => optional.push((u, v)),
                    _ => {}
                }
            }
            let input = SandwichInput::new(4, forced, optional).unwrap();
            let fast = solve_igsp(&input).unwrap().satisfiable;
            let slow = oracle_igsp(&input, &OracleBudget::ia_default()).unwrap();
            prop_assert_eq!(fast, slow);
        }
    }

    #[test]
    fn gap_label_means_disjoint() {
        assert_eq!(GAP, ia_rels::P.union(ia_rels::PI));
    }
}
