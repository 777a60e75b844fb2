//! Qualitative constraint networks: variables, edge labels, closure.
//!
//! A network stores one relation set per ordered pair of variables, kept
//! converse-symmetric (`labels[y][x] = converse(labels[x][y])`) so solvers
//! can read either direction without fixing an orientation per edge.

use std::collections::HashMap;

use crate::calculus::{Calculus, RelSet};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum QcnError {
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("duplicate variable {0:?}")]
    DuplicateVariable(String),
}

/// A qualitative constraint network over a fixed calculus.
#[derive(Clone)]
pub struct Qcn {
    calc: &'static Calculus,
    names: Vec<String>,
    index: HashMap<String, usize>,
    /// Flattened n x n matrix; diagonal holds the identity relation.
    labels: Vec<RelSet>,
    /// Set when some input constraint was the empty relation. Such a
    /// network is trivially unsatisfiable, but we keep it representable so
    /// callers can still print and report it.
    saw_empty_label: bool,
}

impl Qcn {
    /// Creates the unconstrained network over the given variables.
    pub fn new<S: AsRef<str>>(calc: &'static Calculus, vars: &[S]) -> Result<Qcn, QcnError> {
        let mut names = Vec::with_capacity(vars.len());
        let mut index = HashMap::with_capacity(vars.len());
        for v in vars {
            let v = v.as_ref();
            if index.insert(v.to_string(), names.len()).is_some() {
                return Err(QcnError::DuplicateVariable(v.to_string()));
            }
            names.push(v.to_string());
        }
        let n = names.len();
        let mut labels = vec![calc.full(); n * n];
        for i in 0..n {
            labels[i * n + i] = calc.identity_set();
        }
        Ok(Qcn { calc, names, index, labels, saw_empty_label: false })
    }

    pub fn calc(&self) -> &'static Calculus {
        self.calc
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn var_names(&self) -> &[String] {
        &self.names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn label(&self, x: usize, y: usize) -> RelSet {
        self.labels[x * self.names.len() + y]
    }

    /// Sets `label(x, y)` and mirrors the converse onto `(y, x)`.
    pub fn set_label(&mut self, x: usize, y: usize, r: RelSet) {
        assert_eq!(r.calc(), self.calc.id(), "label from another calculus");
        let n = self.names.len();
        if r.is_empty() {
            self.saw_empty_label = true;
        }
        if x == y {
            // A reflexive constraint can only keep or drop the identity.
            self.labels[x * n + x] = r.intersect(self.calc.identity_set());
            return;
        }
        self.labels[x * n + y] = r;
        self.labels[y * n + x] = self.calc.converse_set(r);
    }

    /// Intersects `label(x, y)` with `r` (the usual way constraints
    /// accumulate when a pair is mentioned twice).
    pub fn refine_label(&mut self, x: usize, y: usize, r: RelSet) {
        let cur = self.label(x, y);
        self.set_label(x, y, cur.intersect(r));
    }

    /// True when some constraint given to the builder was empty.
    pub fn saw_empty_label(&self) -> bool {
        self.saw_empty_label
    }

    /// True when some edge label is the empty set.
    pub fn has_empty_edge(&self) -> bool {
        self.labels.iter().any(|l| l.is_empty())
    }

    /// Runs path consistency (algebraic closure): repeatedly refines
    /// `label(x, z)` by `comp(label(x, y), label(y, z))` until a fixpoint.
    /// Returns `false` when some label became empty, i.e. the network is
    /// certainly unsatisfiable.
    ///
    /// Plain worklist implementation; each pair that shrinks reschedules
    /// the pairs it can influence.
    pub fn algebraic_closure(&mut self) -> bool {
        let n = self.names.len();
        let mut queue: Vec<(usize, usize)> = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in x + 1..n {
                queue.push((x, y));
            }
        }
        self.closure_from(queue)
    }

    /// Closure restarted from a set of changed pairs. Used by the solvers
    /// when a single label was refined and the rest of the network is
    /// already closed.
    pub fn closure_from(&mut self, seed: Vec<(usize, usize)>) -> bool {
        let n = self.names.len();
        let mut queue = seed;
        let mut queued = vec![false; n * n];
        for &(x, y) in &queue {
            queued[x * n + y] = true;
        }
        while let Some((x, y)) = queue.pop() {
            queued[x * n + y] = false;
            let rxy = self.label(x, y);
            if rxy.is_empty() {
                return false;
            }
            for z in 0..n {
                if z == x || z == y {
                    continue;
                }
                // x,y changed: tighten (x,z) through y and (z,y) through x.
                let xz = self.label(x, z);
                let new_xz = xz.intersect(self.calc.compose_sets(rxy, self.label(y, z)));
                if new_xz != xz {
                    if new_xz.is_empty() {
                        self.set_label(x, z, new_xz);
                        return false;
                    }
                    self.set_label(x, z, new_xz);
                    let key = if x < z { (x, z) } else { (z, x) };
                    if !queued[key.0 * n + key.1] {
                        queued[key.0 * n + key.1] = true;
                        queue.push(key);
                    }
                }
                let zy = self.label(z, y);
                let new_zy = zy.intersect(self.calc.compose_sets(self.label(z, x), rxy));
                if new_zy != zy {
                    if new_zy.is_empty() {
                        self.set_label(z, y, new_zy);
                        return false;
                    }
                    self.set_label(z, y, new_zy);
                    let key = if z < y { (z, y) } else { (y, z) };
                    if !queued[key.0 * n + key.1] {
                        queued[key.0 * n + key.1] = true;
                        queue.push(key);
                    }
                }
            }
        }
        true
    }

    /// True when every triangle satisfies
    /// `label(x,z) subset-of comp(label(x,y), label(y,z))`.
    pub fn is_closed(&self) -> bool {
        let n = self.names.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let c = self.calc.compose_sets(self.label(x, y), self.label(y, z));
                    if !self.label(x, z).is_subset(c) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// True when every label of `self` is a subset of the corresponding
    /// label of `other` (same variables, same order).
    pub fn refines(&self, other: &Qcn) -> bool {
        assert_eq!(self.names, other.names, "refines across different networks");
        self.labels
            .iter()
            .zip(other.labels.iter())
            .all(|(a, b)| a.is_subset(*b))
    }
}

impl std::fmt::Debug for Qcn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Qcn[{}] over {:?}", self.calc.id().name(), self.names)?;
        let n = self.names.len();
        for x in 0..n {
            for y in x + 1..n {
                writeln!(f, "  {} {} {}", self.names[x], self.label(x, y), self.names[y])?;
            }
        }
        Ok(())
    }
}

/// One parsed constraint: `x {R1,R2} y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub x: String,
    pub y: String,
    pub label: RelSet,
}

/// Builds a network from explicit variables and constraints. Mentioning a
/// pair twice intersects the labels. Empty labels are recorded (see
/// [`Qcn::saw_empty_label`]) rather than rejected: the network is still a
/// value, just an unsatisfiable one.
pub fn build_qcn<S: AsRef<str>>(
    calc: &'static Calculus,
    vars: &[S],
    constraints: &[Constraint],
) -> Result<Qcn, QcnError> {
    let mut q = Qcn::new(calc, vars)?;
    for c in constraints {
        let x = q
            .var_index(&c.x)
            .ok_or_else(|| QcnError::UnknownVariable(c.x.clone()))?;
        let y = q
            .var_index(&c.y)
            .ok_or_else(|| QcnError::UnknownVariable(c.y.clone()))?;
        q.refine_label(x, y, c.label);
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::rels::{ia, rcc8};
    use crate::calculus::CalcId;
    use proptest::prelude::*;

    fn rcc8_net(labels: &[(usize, usize, RelSet)], n: usize) -> Qcn {
        let vars: Vec<String> = (0..n).map(|i| format!("x{}", i)).collect();
        let mut q = Qcn::new(Calculus::rcc8(), &vars).unwrap();
        for &(x, y, r) in labels {
            q.set_label(x, y, r);
        }
        q
    }

    #[test]
    fn new_network_is_unconstrained() {
        let q = Qcn::new(Calculus::ia13(), &["a", "b"]).unwrap();
        assert_eq!(q.label(0, 1), ia::FULL);
        assert_eq!(q.label(0, 0), ia::E);
    }

    #[test]
    fn set_label_mirrors_converse() {
        let mut q = Qcn::new(Calculus::ia13(), &["a", "b"]).unwrap();
        q.set_label(0, 1, ia::M.union(ia::P));
        assert_eq!(q.label(1, 0), ia::MI.union(ia::PI));
    }

    #[test]
    fn duplicate_variable_is_rejected() {
        let err = Qcn::new(Calculus::rcc8(), &["a", "b", "a"]).unwrap_err();
        assert_eq!(err, QcnError::DuplicateVariable("a".into()));
    }

    #[test]
    fn build_qcn_flags_unknown_variable() {
        let c = Constraint { x: "a".into(), y: "zz".into(), label: rcc8::PO };
        let err = build_qcn(Calculus::rcc8(), &["a", "b"], &[c]).unwrap_err();
        assert_eq!(err, QcnError::UnknownVariable("zz".into()));
    }

    #[test]
    fn build_qcn_keeps_empty_labels_but_flags_them() {
        let c = Constraint {
            x: "a".into(),
            y: "b".into(),
            label: Calculus::rcc8().empty(),
        };
        let q = build_qcn(Calculus::rcc8(), &["a", "b"], &[c]).unwrap();
        assert!(q.saw_empty_label());
        assert!(q.has_empty_edge());
        assert!(!q.clone().algebraic_closure());
    }

    #[test]
    fn closure_detects_cyclic_containment() {
        // x inside y inside z inside x is impossible
        let q = rcc8_net(
            &[(0, 1, rcc8::NTPP), (1, 2, rcc8::NTPP), (2, 0, rcc8::NTPP)],
            3,
        );
        assert!(!q.clone().algebraic_closure());
    }

    #[test]
    fn closure_refines_composition_chain() {
        let mut q = rcc8_net(&[(0, 1, rcc8::NTPP), (1, 2, rcc8::NTPP)], 3);
        assert!(q.algebraic_closure());
        assert_eq!(q.label(0, 2), rcc8::NTPP);
    }

    #[test]
    fn ia_meets_chain_forces_precedence() {
        let mut q = Qcn::new(Calculus::ia13(), &["a", "b", "c"]).unwrap();
        q.set_label(0, 1, ia::M);
        q.set_label(1, 2, ia::M);
        assert!(q.algebraic_closure());
        assert_eq!(q.label(0, 2), ia::P);
    }

    // strategy: arbitrary small rcc8 network
    fn arb_rcc8_qcn(n: usize) -> impl Strategy<Value = Qcn> {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
        let m = pairs.len();
        proptest::collection::vec(1u16..=255, m).prop_map(move |bits| {
            let labels: Vec<(usize, usize, RelSet)> = pairs
                .iter()
                .zip(bits)
                .map(|(&(x, y), b)| (x, y, RelSet::new(CalcId::Rcc8, b)))
                .collect();
            rcc8_net(&labels, n)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn closure_is_monotone_and_idempotent(q in arb_rcc8_qcn(4)) {
            let mut closed = q.clone();
            let ok = closed.algebraic_closure();
            if ok {
                prop_assert!(closed.refines(&q), "closure only removes basics");
                prop_assert!(closed.is_closed());
                let mut again = closed.clone();
                prop_assert!(again.algebraic_closure());
                for x in 0..4 {
                    for y in 0..4 {
                        prop_assert_eq!(again.label(x, y), closed.label(x, y));
                    }
                }
            }
        }

        #[test]
        fn closure_seeded_matches_full_closure(q in arb_rcc8_qcn(4), xi in 0usize..4, yi in 0usize..4, bits in 1u16..=255) {
            prop_assume!(xi != yi);
            let mut base = q.clone();
            prop_assume!(base.algebraic_closure());
            // refine one edge, then close incrementally vs from scratch
            let r = base.label(xi, yi).intersect(RelSet::new(CalcId::Rcc8, bits));
            let mut inc = base.clone();
            inc.set_label(xi, yi, r);
            let key = if xi < yi { (xi, yi) } else { (yi, xi) };
            let ok_inc = inc.closure_from(vec![key]);
            let mut full = base.clone();
            full.set_label(xi, yi, r);
            let ok_full = full.algebraic_closure();
            prop_assert_eq!(ok_inc, ok_full);
            if ok_inc {
                for x in 0..4 {
                    for y in 0..4 {
                        prop_assert_eq!(inc.label(x, y), full.label(x, y));
                    }
                }
            }
        }
    }
}
