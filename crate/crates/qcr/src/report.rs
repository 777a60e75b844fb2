//! Machine-readable run summaries: the JSON shape printed by the command
//! line tool and small CSV helpers for batch runs.

use serde::Serialize;

use crate::calculus::RelSet;
use crate::ia::IntervalModel;
use crate::qcn::Qcn;
use crate::rcc8::CardinalityRow;

#[derive(Debug, Clone, Serialize)]
pub struct VarInterval {
    pub var: String,
    pub lo: u32,
    pub hi: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeRelation {
    pub x: String,
    pub y: String,
    pub relation: String,
}

/// The result of one solve, in a shape that serializes cleanly.
#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub calculus: String,
    pub satisfiable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<Vec<VarInterval>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<EdgeRelation>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub realized_edges: Option<Vec<(usize, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enqueued: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dequeued: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<Vec<CardinalityRow>>,
}

impl SolveReport {
    pub fn new(calculus: &str, satisfiable: bool) -> SolveReport {
        SolveReport {
            calculus: calculus.to_string(),
            satisfiable,
            mode: None,
            model: None,
            certificate: None,
            realized_edges: None,
            enqueued: None,
            dequeued: None,
            stats: None,
        }
    }

    pub fn with_model(mut self, q: &Qcn, model: &IntervalModel) -> SolveReport {
        self.model = Some(
            model
                .endpoints
                .iter()
                .enumerate()
                .map(|(i, &(lo, hi))| VarInterval { var: q.var_name(i).to_string(), lo, hi })
                .collect(),
        );
        self
    }

    pub fn with_certificate(mut self, cert: &Qcn) -> SolveReport {
        self.certificate = Some(edge_relations(cert));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Every off-diagonal pair of an atomic network as named relations.
pub fn edge_relations(q: &Qcn) -> Vec<EdgeRelation> {
    let mut out = Vec::new();
    for x in 0..q.num_vars() {
        for y in x + 1..q.num_vars() {
            out.push(EdgeRelation {
                x: q.var_name(x).to_string(),
                y: q.var_name(y).to_string(),
                relation: relation_string(q.label(x, y)),
            });
        }
    }
    out
}

fn relation_string(rel: RelSet) -> String {
    let calc = rel.calc().get();
    let names: Vec<&str> = rel.iter_basics().map(|b| calc.basic_name(b)).collect();
    names.join(",")
}

/// The per-cardinality table as CSV, header included.
pub fn stats_csv(rows: &[CardinalityRow]) -> String {
    let mut out = String::from("card,subsets,max_states,total_states\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.card, r.subsets, r.max_states, r.total_states
        ));
    }
    out
}

/// One line of a batch run.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub calculus: String,
    pub seed: u64,
    pub n: usize,
    pub density: f64,
    pub satisfiable: bool,
    pub millis: u128,
    /// states enqueued for the interval solver, orders kept for RCC-8
    pub work: u64,
}

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("calculus,seed,n,density,satisfiable,millis,work\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.calculus, r.seed, r.n, r.density, r.satisfiable, r.millis, r.work
        ));
    }
    out
}
