//! Non-redundancy of single-relation networks.
//!
//! A constraint is non-redundant when dropping it genuinely widens the
//! solution space: some scenario of the weakened network violates it. A
//! network where every constraint is non-redundant is called prime. For a
//! network using a single relation everywhere, the largest prime network
//! on n variables has a known shape: a handful of relations support a
//! complete graph, most support exactly a balanced complete bipartite
//! graph, meets supports a hub of 2n-4 constraints, and equality only a
//! spanning tree. This module evaluates those counts, generates the
//! witness networks, and checks non-redundancy of individual constraints
//! through the exhaustive oracles.

use crate::calculus::{rels, CalcId, RelSet};
use crate::oracle::{oracle_ia, oracle_rcc8, OracleBudget, OracleError};
use crate::qcn::Qcn;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum NrdError {
    #[error("pair ({x}, {y}) carries no constraint")]
    ConstraintNotPresent { x: String, y: String },
    #[error("no classification known for relation {0}")]
    UnclassifiedRelation(String),
    #[error("non-redundancy is classified for n >= 3, got {0}")]
    TooFewVariables(usize),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Whether a classified count is the true maximum or only a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Exact,
    LowerBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NrdValue {
    pub count: u64,
    pub kind: BoundKind,
}

/// The shape of the largest known prime network for a relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// every unordered pair constrained: n(n-1)/2
    Complete,
    /// balanced complete bipartite: ceil(n/2) * floor(n/2)
    Bipartite,
    /// a source meeting n-2 middles meeting a sink: 2n-4
    Hub,
    /// a spanning star: n-1
    Star,
}

/// Classification of a relation by the shape of its maximal prime
/// network. Converse relations classify identically. Returns None for
/// relations outside the classified families.
pub fn classify(rel: RelSet) -> Option<(Shape, BoundKind)> {
    use BoundKind::*;
    use Shape::*;
    let conv = rel.calc().get().converse_set(rel);
    let matches = |r: RelSet| rel == r || conv == r;
    match rel.calc() {
        CalcId::Ia13 => {
            use rels::ia::*;
            if matches(E) {
                Some((Star, Exact))
            } else if matches(M) {
                Some((Hub, Exact))
            } else if matches(P) || matches(S) || matches(F) || matches(D) || matches(SUB) {
                Some((Bipartite, Exact))
            } else if matches(O) || matches(ALPHA) || matches(CAP) {
                Some((Bipartite, LowerBound))
            } else {
                None
            }
        }
        CalcId::Rcc8 => {
            use rels::rcc8::*;
            if matches(EQ) {
                Some((Star, Exact))
            } else if matches(DC) || matches(EC) || matches(PO) || matches(DR) {
                Some((Complete, Exact))
            } else if matches(NTPP) || matches(PP) {
                Some((Bipartite, Exact))
            } else if matches(TPP) {
                Some((Bipartite, LowerBound))
            } else {
                None
            }
        }
    }
}

/// The classified maximum number of non-redundant constraints among
/// n-variable networks using only the given relation.
pub fn nrd_value(rel: RelSet, n: usize) -> Result<NrdValue, NrdError> {
    if n < 3 {
        return Err(NrdError::TooFewVariables(n));
    }
    let (shape, kind) =
        classify(rel).ok_or_else(|| NrdError::UnclassifiedRelation(rel.to_string()))?;
    let n = n as u64;
    let count = match shape {
        Shape::Complete => n * (n - 1) / 2,
        Shape::Bipartite => (n / 2) * n.div_ceil(2),
        Shape::Hub => 2 * n - 4,
        Shape::Star => n - 1,
    };
    Ok(NrdValue { count, kind })
}

/// Builds the witness network attaining [`nrd_value`]: a network of the
/// classified shape with every constrained pair labeled `rel`. All of its
/// constraints are non-redundant, which the oracle-backed
/// [`is_nonredundant`] can confirm for small n.
pub fn generate_max_prime(rel: RelSet, n: usize) -> Result<Qcn, NrdError> {
    if n < 3 {
        return Err(NrdError::TooFewVariables(n));
    }
    let (shape, _) =
        classify(rel).ok_or_else(|| NrdError::UnclassifiedRelation(rel.to_string()))?;
    let calc = rel.calc().get();
    let q = match shape {
        Shape::Complete => {
            let names: Vec<String> = (1..=n).map(|i| format!("x{}", i)).collect();
            let mut q = Qcn::new(calc, &names).unwrap();
            for i in 0..n {
                for j in i + 1..n {
                    q.set_label(i, j, rel);
                }
            }
            q
        }
        Shape::Bipartite => {
            let left = n.div_ceil(2);
            let names: Vec<String> = (1..=left)
                .map(|i| format!("x{}", i))
                .chain((1..=n - left).map(|j| format!("y{}", j)))
                .collect();
            let mut q = Qcn::new(calc, &names).unwrap();
            for i in 0..left {
                for j in left..n {
                    q.set_label(i, j, rel);
                }
            }
            q
        }
        Shape::Hub => {
            let names: Vec<String> = std::iter::once("s".to_string())
                .chain((1..=n - 2).map(|i| format!("x{}", i)))
                .chain(std::iter::once("t".to_string()))
                .collect();
            let mut q = Qcn::new(calc, &names).unwrap();
            for i in 1..=n - 2 {
                q.set_label(0, i, rel);
                q.set_label(i, n - 1, rel);
            }
            q
        }
        Shape::Star => {
            let names: Vec<String> = (1..=n).map(|i| format!("x{}", i)).collect();
            let mut q = Qcn::new(calc, &names).unwrap();
            for i in 1..n {
                q.set_label(0, i, rel);
            }
            q
        }
    };
    Ok(q)
}

fn sat(q: &Qcn, budget: &OracleBudget) -> Result<bool, OracleError> {
    match q.calc().id() {
        CalcId::Ia13 => oracle_ia(q, budget),
        CalcId::Rcc8 => oracle_rcc8(q, budget),
    }
}

/// Decides whether the constraint on (x, y) is non-redundant: whether the
/// network with that label lifted admits a scenario violating it. The
/// check replaces the label by the complement of the original and asks
/// the exhaustive oracle for satisfiability.
pub fn is_nonredundant(q: &Qcn, x: usize, y: usize, budget: &OracleBudget) -> Result<bool, NrdError> {
    let label = q.label(x, y);
    if x == y || label == q.calc().full() {
        return Err(NrdError::ConstraintNotPresent {
            x: q.var_name(x).to_string(),
            y: q.var_name(y).to_string(),
        });
    }
    let mut probe = q.clone();
    probe.set_label(x, y, q.calc().full().minus(label));
    Ok(sat(&probe, budget)?)
}

/// All constrained pairs, in lexicographic order.
fn constrained_pairs(q: &Qcn) -> Vec<(usize, usize)> {
    let n = q.num_vars();
    let full = q.calc().full();
    (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .filter(|&(x, y)| q.label(x, y) != full)
        .collect()
}

/// The redundant constraints of a network, in lexicographic pair order.
/// An empty answer means the network is prime.
pub fn redundant_constraints(
    q: &Qcn,
    budget: &OracleBudget,
) -> Result<Vec<(usize, usize)>, NrdError> {
    let mut out = Vec::new();
    for (x, y) in constrained_pairs(q) {
        if !is_nonredundant(q, x, y, budget)? {
            out.push((x, y));
        }
    }
    Ok(out)
}

/// Greedily removes redundant constraints until the network is prime,
/// rescanning from the lexicographically first pair after every removal.
/// Removing a redundant constraint leaves the solution set unchanged, so
/// the result has exactly the scenarios of the input.
pub fn prime(q: &Qcn, budget: &OracleBudget) -> Result<Qcn, NrdError> {
    let mut cur = q.clone();
    let full = cur.calc().full();
    'scan: loop {
        for (x, y) in constrained_pairs(&cur) {
            if !is_nonredundant(&cur, x, y, budget)? {
                cur.set_label(x, y, full);
                continue 'scan;
            }
        }
        return Ok(cur);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::rels::{ia, rcc8};
    use crate::calculus::Calculus;
    use crate::oracle::{ia_scenarios, rcc8_scenarios};

    fn budget(calc: CalcId) -> OracleBudget {
        match calc {
            CalcId::Ia13 => OracleBudget::ia_default(),
            CalcId::Rcc8 => OracleBudget::rcc8_default(),
        }
    }

    #[test]
    fn classified_counts() {
        assert_eq!(nrd_value(rcc8::DC, 5), Ok(NrdValue { count: 10, kind: BoundKind::Exact }));
        assert_eq!(nrd_value(rcc8::DR, 6), Ok(NrdValue { count: 15, kind: BoundKind::Exact }));
        assert_eq!(
            nrd_value(rcc8::TPP, 5),
            Ok(NrdValue { count: 6, kind: BoundKind::LowerBound })
        );
        assert_eq!(nrd_value(rcc8::NTPP, 6), Ok(NrdValue { count: 9, kind: BoundKind::Exact }));
        assert_eq!(nrd_value(rcc8::EQ, 7), Ok(NrdValue { count: 6, kind: BoundKind::Exact }));
        assert_eq!(nrd_value(ia::M, 6), Ok(NrdValue { count: 8, kind: BoundKind::Exact }));
        assert_eq!(nrd_value(ia::E, 5), Ok(NrdValue { count: 4, kind: BoundKind::Exact }));
        assert_eq!(nrd_value(ia::P, 5), Ok(NrdValue { count: 6, kind: BoundKind::Exact }));
        assert_eq!(
            nrd_value(ia::CAP, 4),
            Ok(NrdValue { count: 4, kind: BoundKind::LowerBound })
        );
        assert_eq!(
            nrd_value(ia::ALPHA, 7),
            Ok(NrdValue { count: 12, kind: BoundKind::LowerBound })
        );
    }

    #[test]
    fn converses_classify_identically() {
        for rel in [ia::P, ia::S, ia::F, ia::D, ia::O, ia::M, ia::ALPHA, ia::SUB] {
            let conv = Calculus::ia13().converse_set(rel);
            assert_eq!(nrd_value(rel, 6), nrd_value(conv, 6), "{}", rel);
        }
        for rel in [rcc8::TPP, rcc8::NTPP, rcc8::PP] {
            let conv = Calculus::rcc8().converse_set(rel);
            assert_eq!(nrd_value(rel, 6), nrd_value(conv, 6), "{}", rel);
        }
    }

    #[test]
    fn unclassified_and_degenerate() {
        let odd = rcc8::DC.union(rcc8::TPP);
        assert!(matches!(nrd_value(odd, 5), Err(NrdError::UnclassifiedRelation(_))));
        assert!(matches!(nrd_value(rcc8::DC, 2), Err(NrdError::TooFewVariables(2))));
        assert!(matches!(
            generate_max_prime(rcc8::DC, 1),
            Err(NrdError::TooFewVariables(1))
        ));
    }

    #[test]
    fn generated_shapes_have_classified_size() {
        for (rel, n) in [
            (rcc8::PO, 4),
            (rcc8::NTPP, 5),
            (rcc8::EQ, 6),
            (ia::M, 5),
            (ia::P, 6),
            (ia::E, 4),
        ] {
            let q = generate_max_prime(rel, n).unwrap();
            let want = nrd_value(rel, n).unwrap().count;
            assert_eq!(constrained_pairs(&q).len() as u64, want, "{} n={}", rel, n);
        }
    }

    #[test]
    fn transitive_chain_has_one_redundant_edge() {
        let calc = Calculus::ia13();
        let mut q = Qcn::new(calc, &["x", "y", "z"]).unwrap();
        q.set_label(0, 1, ia::P);
        q.set_label(1, 2, ia::P);
        q.set_label(0, 2, ia::P);
        let b = budget(CalcId::Ia13);
        // precedence composes, so the long edge adds nothing
        assert_eq!(is_nonredundant(&q, 0, 2, &b), Ok(false));
        assert_eq!(is_nonredundant(&q, 0, 1, &b), Ok(true));
        assert_eq!(redundant_constraints(&q, &b), Ok(vec![(0, 2)]));

        let p = prime(&q, &b).unwrap();
        assert_eq!(constrained_pairs(&p), vec![(0, 1), (1, 2)]);
        assert_eq!(
            ia_scenarios(&q, &b).unwrap(),
            ia_scenarios(&p, &b).unwrap(),
            "removal must preserve the scenario set"
        );
    }

    #[test]
    fn missing_constraint_is_an_error() {
        let q = Qcn::new(Calculus::rcc8(), &["a", "b"]).unwrap();
        assert!(matches!(
            is_nonredundant(&q, 0, 1, &budget(CalcId::Rcc8)),
            Err(NrdError::ConstraintNotPresent { .. })
        ));
    }

    #[test]
    fn witnesses_are_satisfiable_and_prime() {
        // the small-n version of the full certification sweep
        let rels_ia = [ia::P, ia::PI, ia::S, ia::D, ia::SUB, ia::O, ia::ALPHA, ia::CAP, ia::M, ia::E];
        let rels_rcc8 = [
            rcc8::DC,
            rcc8::EC,
            rcc8::PO,
            rcc8::DR,
            rcc8::TPP,
            rcc8::TPP_I,
            rcc8::NTPP,
            rcc8::PP,
            rcc8::EQ,
        ];
        for rel in rels_ia.iter().chain(&rels_rcc8) {
            let b = budget(rel.calc());
            let q = generate_max_prime(*rel, 4).unwrap();
            assert_eq!(sat(&q, &b), Ok(true), "witness for {} not satisfiable", rel);
            assert_eq!(redundant_constraints(&q, &b), Ok(vec![]), "witness for {} not prime", rel);
        }
    }

    #[test]
    fn prime_preserves_rcc8_scenarios() {
        use proptest::prelude::*;
        use proptest::test_runner::{Config, TestRunner};
        let mut runner = TestRunner::new(Config { cases: 48, ..Config::default() });
        let strat = proptest::collection::vec(1u16..=255, 3);
        runner
            .run(&strat, |bits| {
                let mut q = Qcn::new(Calculus::rcc8(), &["a", "b", "c"]).unwrap();
                let pairs = [(0, 1), (0, 2), (1, 2)];
                for (&(x, y), &b) in pairs.iter().zip(&bits) {
                    q.set_label(x, y, RelSet::new(CalcId::Rcc8, b));
                }
                let b = budget(CalcId::Rcc8);
                if !sat(&q, &b).unwrap() {
                    // primality is only meaningful for satisfiable networks
                    return Ok(());
                }
                let p = prime(&q, &b).unwrap();
                prop_assert_eq!(
                    rcc8_scenarios(&q, &b).unwrap(),
                    rcc8_scenarios(&p, &b).unwrap()
                );
                Ok(())
            })
            .unwrap();
    }
}
