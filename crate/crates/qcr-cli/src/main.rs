//! Command line front end for the qualitative constraint reasoning
//! library: solving network and sandwich files, non-redundancy queries,
//! instance generation and small batch benchmarks.
//!
//! Exit codes: 0 satisfiable (or plain success), 1 unsatisfiable (or a
//! non-prime network for `nrd check`), 2 usage or input errors, 3 when a
//! search exceeded its budget.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use qcr::calculus::CalcId;
use qcr::gen::{gen_random, GenSpec, LabelDist, LabelSpace};
use qcr::ia::{is_a3_label, solve_a3, solve_igsp};
use qcr::io::{
    emit_interval_model, emit_qcn, parse_igsp, parse_qcn, parse_relation, Dialect, ParsedQcn,
};
use qcr::oracle::{oracle_ia, oracle_igsp, oracle_rcc8, OracleBudget, OracleError};
use qcr::rcc8::{solve_rcc8, PruneMode, Rcc8Error};
use qcr::redundancy::{generate_max_prime, nrd_value, prime, redundant_constraints, BoundKind};
use qcr::report::{bench_csv, edge_relations, stats_csv, BenchRow, SolveReport};
use qcr::Qcn;

const EXIT_SAT: u8 = 0;
const EXIT_UNSAT: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "qcr", version, about = "Qualitative constraint reasoning toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// the exact dynamic programming solvers
    Dp,
    /// the exhaustive reference oracles
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Prune {
    Full,
    Safe,
}

impl From<Prune> for PruneMode {
    fn from(p: Prune) -> PruneMode {
        match p {
            Prune::Full => PruneMode::Full,
            Prune::Safe => PruneMode::Safe,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DialectArg {
    Ia3,
    Ia13,
    Rcc8,
}

impl From<DialectArg> for Dialect {
    fn from(d: DialectArg) -> Dialect {
        match d {
            DialectArg::Ia3 => Dialect::Ia3,
            DialectArg::Ia13 => Dialect::Ia13,
            DialectArg::Rcc8 => Dialect::Rcc8,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide satisfiability of a network file
    Solve {
        file: PathBuf,
        /// solver to use; defaults to dp for ia3 and rcc8, oracle for ia13
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        /// pruning strength of the RCC-8 solver
        #[arg(long, value_enum, default_value = "full")]
        prune: Prune,
        /// print an atomic certificate when satisfiable (RCC-8 dp mode)
        #[arg(long)]
        certificate: bool,
        /// print search statistics
        #[arg(long)]
        stats: bool,
        /// print one JSON object instead of text
        #[arg(long)]
        json: bool,
    },
    /// Decide an interval graph sandwich instance file
    Igsp {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long)]
        json: bool,
    },
    /// Non-redundancy: classified values, witnesses, checking, priming
    #[command(subcommand)]
    Nrd(NrdCmd),
    /// Generate a seeded random network file on stdout
    Gen {
        #[arg(value_enum)]
        calculus: DialectArg,
        #[arg(long)]
        n: usize,
        /// probability that a pair is constrained
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// draw single basic relations instead of arbitrary labels
        #[arg(long)]
        atomic: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Solve a batch of seeded instances and print timing CSV
    Bench {
        #[arg(value_enum)]
        calculus: DialectArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// seeds 0..count are run
        #[arg(long, default_value_t = 5)]
        seeds: u64,
        #[arg(long, value_enum, default_value = "full")]
        prune: Prune,
    },
}

#[derive(Subcommand)]
enum NrdCmd {
    /// The classified maximum number of non-redundant constraints
    Value {
        #[arg(value_enum)]
        calculus: DialectArg,
        /// relation name, e.g. p, m, cap, DC, TPP-, PP
        relation: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print the maximal prime witness network for a relation
    Generate {
        #[arg(value_enum)]
        calculus: DialectArg,
        relation: String,
        #[arg(long)]
        n: usize,
    },
    /// List redundant constraints of a network (exit 1 if any)
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Remove redundant constraints and print the prime network
    Prime { file: PathBuf },
}

fn main() -> ExitCode {
    // Die quietly like any filter when the reader closes the pipe early,
    // instead of panicking on the failed write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Solve { file, mode, prune, certificate, stats, json } => {
            cmd_solve(&file, mode, prune.into(), certificate, stats, json)
        }
        Cmd::Igsp { file, mode, json } => cmd_igsp(&file, mode, json),
        Cmd::Nrd(sub) => match sub {
            NrdCmd::Value { calculus, relation, n, json } => {
                cmd_nrd_value(calculus.into(), &relation, n, json)
            }
            NrdCmd::Generate { calculus, relation, n } => {
                cmd_nrd_generate(calculus.into(), &relation, n)
            }
            NrdCmd::Check { file, json } => cmd_nrd_check(&file, json),
            NrdCmd::Prime { file } => cmd_nrd_prime(&file),
        },
        Cmd::Gen { calculus, n, density, atomic, seed } => {
            cmd_gen(calculus, n, density, atomic, seed)
        }
        Cmd::Bench { calculus, n, density, seeds, prune } => {
            cmd_bench(calculus, n, density, seeds, prune.into())
        }
    };
    ExitCode::from(code)
}

fn fail(code: u8, msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {}", msg);
    code
}

fn oracle_exit(e: OracleError) -> u8 {
    match e {
        OracleError::TooManyVars { .. } | OracleError::BudgetExceeded { .. } => {
            fail(EXIT_BUDGET, e)
        }
        OracleError::WrongCalculus { .. } => fail(EXIT_USAGE, e),
    }
}

fn read_network(path: &Path) -> Result<ParsedQcn, u8> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_USAGE, format!("{}: {}", path.display(), e)))?;
    parse_qcn(&text).map_err(|e| fail(EXIT_USAGE, e))
}

fn budget_for(calc: CalcId) -> OracleBudget {
    match calc {
        CalcId::Ia13 => OracleBudget::ia_default(),
        CalcId::Rcc8 => OracleBudget::rcc8_default(),
    }
}

fn sat_exit(satisfiable: bool) -> u8 {
    if satisfiable {
        EXIT_SAT
    } else {
        EXIT_UNSAT
    }
}

fn cmd_solve(
    path: &Path,
    mode: Option<Mode>,
    prune: PruneMode,
    certificate: bool,
    stats: bool,
    json: bool,
) -> u8 {
    let parsed = match read_network(path) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let q = &parsed.qcn;
    let mode = mode.unwrap_or(match parsed.dialect {
        Dialect::Ia3 | Dialect::Rcc8 => Mode::Dp,
        Dialect::Ia13 => Mode::Oracle,
    });
    if mode == Mode::Oracle && (certificate || stats) {
        return fail(EXIT_USAGE, "certificates and statistics require dp mode");
    }
    match (parsed.dialect.calc().id(), mode) {
        (CalcId::Ia13, Mode::Dp) => {
            let bad = (0..q.num_vars())
                .flat_map(|x| (x + 1..q.num_vars()).map(move |y| (x, y)))
                .find(|&(x, y)| !is_a3_label(q.label(x, y)));
            if let Some((x, y)) = bad {
                return fail(
                    EXIT_USAGE,
                    format!(
                        "dp mode needs three-fragment labels (p, cap, p-); pair ({}, {}) has {}",
                        q.var_name(x),
                        q.var_name(y),
                        q.label(x, y)
                    ),
                );
            }
            let out = match solve_a3(q) {
                Ok(o) => o,
                Err(e) => return fail(EXIT_BUDGET, e),
            };
            if json {
                let mut r = SolveReport::new(parsed.dialect.name(), out.satisfiable);
                r.mode = Some("dp".into());
                if let Some(m) = &out.model {
                    r = r.with_model(q, m);
                }
                if stats {
                    r.enqueued = Some(out.stats.enqueued);
                    r.dequeued = Some(out.stats.dequeued);
                }
                println!("{}", r.to_json());
            } else {
                println!("{}", if out.satisfiable { "SAT" } else { "UNSAT" });
                if let Some(m) = &out.model {
                    print!("{}", emit_interval_model(q, m));
                }
                if stats {
                    println!("enqueued={} dequeued={}", out.stats.enqueued, out.stats.dequeued);
                }
            }
            sat_exit(out.satisfiable)
        }
        (CalcId::Ia13, Mode::Oracle) => {
            match oracle_ia(q, &budget_for(CalcId::Ia13)) {
                Ok(sat) => {
                    report_plain(parsed.dialect.name(), sat, json);
                    sat_exit(sat)
                }
                Err(e) => oracle_exit(e),
            }
        }
        (CalcId::Rcc8, Mode::Dp) => {
            let out = match solve_rcc8(q, prune) {
                Ok(o) => o,
                Err(e @ Rcc8Error::TooManyVariables { .. }) => return fail(EXIT_BUDGET, e),
                Err(e) => return fail(EXIT_USAGE, e),
            };
            if json {
                let mut r = SolveReport::new(parsed.dialect.name(), out.satisfiable);
                r.mode = Some("dp".into());
                if certificate {
                    if let Some(c) = &out.certificate {
                        r = r.with_certificate(c);
                    }
                }
                if stats {
                    r.stats = Some(out.stats.rows.clone());
                }
                println!("{}", r.to_json());
            } else {
                println!("{}", if out.satisfiable { "SAT" } else { "UNSAT" });
                if certificate {
                    if let Some(c) = &out.certificate {
                        for e in edge_relations(c) {
                            println!("CERT {} {{{}}} {}", e.x, e.relation, e.y);
                        }
                    }
                }
                if stats {
                    print!("{}", stats_csv(&out.stats.rows));
                }
            }
            sat_exit(out.satisfiable)
        }
        (CalcId::Rcc8, Mode::Oracle) => {
            match oracle_rcc8(q, &budget_for(CalcId::Rcc8)) {
                Ok(sat) => {
                    report_plain(parsed.dialect.name(), sat, json);
                    sat_exit(sat)
                }
                Err(e) => oracle_exit(e),
            }
        }
    }
}

fn report_plain(calculus: &str, sat: bool, json: bool) {
    if json {
        let mut r = SolveReport::new(calculus, sat);
        r.mode = Some("oracle".into());
        println!("{}", r.to_json());
    } else {
        println!("{}", if sat { "SAT" } else { "UNSAT" });
    }
}

fn cmd_igsp(path: &Path, mode: Option<Mode>, json: bool) -> u8 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_USAGE, format!("{}: {}", path.display(), e)),
    };
    let input = match parse_igsp(&text) {
        Ok(i) => i,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    match mode.unwrap_or(Mode::Dp) {
        Mode::Dp => {
            let out = match solve_igsp(&input) {
                Ok(o) => o,
                Err(e) => return fail(EXIT_BUDGET, e),
            };
            let vars: Vec<String> =
                (0..input.num_vertices()).map(|i| format!("v{}", i)).collect();
            let q = Qcn::new(qcr::calculus::Calculus::ia13(), &vars).unwrap();
            if json {
                let mut r = SolveReport::new("igsp", out.satisfiable);
                r.mode = Some("dp".into());
                r.realized_edges =
                    out.realized_edges.as_ref().map(|s| s.iter().copied().collect());
                if let Some(m) = &out.model {
                    r = r.with_model(&q, m);
                }
                println!("{}", r.to_json());
            } else {
                println!("{}", if out.satisfiable { "SAT" } else { "UNSAT" });
                if let Some(edges) = &out.realized_edges {
                    for &(u, v) in edges {
                        println!("E {} {}", u, v);
                    }
                }
                if let Some(m) = &out.model {
                    print!("{}", emit_interval_model(&q, m));
                }
            }
            sat_exit(out.satisfiable)
        }
        Mode::Oracle => match oracle_igsp(&input, &budget_for(CalcId::Ia13)) {
            Ok(sat) => {
                report_plain("igsp", sat, json);
                sat_exit(sat)
            }
            Err(e) => oracle_exit(e),
        },
    }
}

fn resolve_relation(dialect: Dialect, name: &str) -> Result<qcr::RelSet, u8> {
    parse_relation(dialect, name).ok_or_else(|| {
        fail(
            EXIT_USAGE,
            format!("unknown relation '{}' for calculus {}", name, dialect.name()),
        )
    })
}

fn cmd_nrd_value(dialect: Dialect, relation: &str, n: usize, json: bool) -> u8 {
    let rel = match resolve_relation(dialect, relation) {
        Ok(r) => r,
        Err(code) => return code,
    };
    match nrd_value(rel, n) {
        Ok(v) => {
            let kind = match v.kind {
                BoundKind::Exact => "exact",
                BoundKind::LowerBound => "lower-bound",
            };
            if json {
                println!(
                    "{{\"relation\": \"{}\", \"n\": {}, \"count\": {}, \"kind\": \"{}\"}}",
                    relation, n, v.count, kind
                );
            } else {
                println!("{} ({})", v.count, kind);
            }
            EXIT_SAT
        }
        Err(e) => fail(EXIT_USAGE, e),
    }
}

fn cmd_nrd_generate(dialect: Dialect, relation: &str, n: usize) -> u8 {
    let rel = match resolve_relation(dialect, relation) {
        Ok(r) => r,
        Err(code) => return code,
    };
    match generate_max_prime(rel, n) {
        Ok(q) => {
            // the witness uses basic labels only, so the plain dialect fits
            let d = match dialect {
                Dialect::Ia3 => Dialect::Ia3,
                Dialect::Ia13 => Dialect::Ia13,
                Dialect::Rcc8 => Dialect::Rcc8,
            };
            print!("{}", emit_qcn(&q, d));
            EXIT_SAT
        }
        Err(e) => fail(EXIT_USAGE, e),
    }
}

fn cmd_nrd_check(path: &Path, json: bool) -> u8 {
    let parsed = match read_network(path) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let budget = budget_for(parsed.qcn.calc().id());
    match redundant_constraints(&parsed.qcn, &budget) {
        Ok(redundant) => {
            if json {
                let pairs: Vec<String> = redundant
                    .iter()
                    .map(|&(x, y)| {
                        format!(
                            "[\"{}\", \"{}\"]",
                            parsed.qcn.var_name(x),
                            parsed.qcn.var_name(y)
                        )
                    })
                    .collect();
                println!(
                    "{{\"prime\": {}, \"redundant\": [{}]}}",
                    redundant.is_empty(),
                    pairs.join(", ")
                );
            } else if redundant.is_empty() {
                println!("prime");
            } else {
                for &(x, y) in &redundant {
                    println!(
                        "redundant {} {}",
                        parsed.qcn.var_name(x),
                        parsed.qcn.var_name(y)
                    );
                }
            }
            if redundant.is_empty() {
                EXIT_SAT
            } else {
                EXIT_UNSAT
            }
        }
        Err(qcr::redundancy::NrdError::Oracle(e)) => oracle_exit(e),
        Err(e) => fail(EXIT_USAGE, e),
    }
}

fn cmd_nrd_prime(path: &Path) -> u8 {
    let parsed = match read_network(path) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let budget = budget_for(parsed.qcn.calc().id());
    match prime(&parsed.qcn, &budget) {
        Ok(p) => {
            print!("{}", emit_qcn(&p, parsed.dialect));
            EXIT_SAT
        }
        Err(qcr::redundancy::NrdError::Oracle(e)) => oracle_exit(e),
        Err(e) => fail(EXIT_USAGE, e),
    }
}

fn cmd_gen(calculus: DialectArg, n: usize, density: f64, atomic: bool, seed: u64) -> u8 {
    if !(0.0..=1.0).contains(&density) {
        return fail(EXIT_USAGE, format!("density must be in [0, 1], got {}", density));
    }
    let space = match calculus {
        DialectArg::Ia3 => LabelSpace::A3,
        DialectArg::Ia13 => LabelSpace::Ia13,
        DialectArg::Rcc8 => LabelSpace::Rcc8,
    };
    let spec = GenSpec {
        space,
        num_vars: n,
        density,
        dist: if atomic { LabelDist::Atomic } else { LabelDist::UniformNonEmpty },
    };
    let q = gen_random(&spec, seed);
    print!("{}", emit_qcn(&q, Dialect::from(calculus)));
    EXIT_SAT
}

fn cmd_bench(calculus: DialectArg, n: usize, density: f64, seeds: u64, prune: PruneMode) -> u8 {
    if !(0.0..=1.0).contains(&density) {
        return fail(EXIT_USAGE, format!("density must be in [0, 1], got {}", density));
    }
    let mut rows = Vec::new();
    for seed in 0..seeds {
        match calculus {
            DialectArg::Ia3 => {
                let spec = GenSpec {
                    space: LabelSpace::A3,
                    num_vars: n,
                    density,
                    dist: LabelDist::UniformNonEmpty,
                };
                let q = gen_random(&spec, seed);
                let start = Instant::now();
                let out = match solve_a3(&q) {
                    Ok(o) => o,
                    Err(e) => return fail(EXIT_BUDGET, e),
                };
                rows.push(BenchRow {
                    calculus: "ia3".into(),
                    seed,
                    n,
                    density,
                    satisfiable: out.satisfiable,
                    millis: start.elapsed().as_millis(),
                    work: out.stats.enqueued,
                });
            }
            DialectArg::Rcc8 => {
                let spec = GenSpec {
                    space: LabelSpace::Rcc8,
                    num_vars: n,
                    density,
                    dist: LabelDist::UniformNonEmpty,
                };
                let q = gen_random(&spec, seed);
                let start = Instant::now();
                let out = match solve_rcc8(&q, prune) {
                    Ok(o) => o,
                    Err(e @ Rcc8Error::TooManyVariables { .. }) => return fail(EXIT_BUDGET, e),
                    Err(e) => return fail(EXIT_USAGE, e),
                };
                rows.push(BenchRow {
                    calculus: "rcc8".into(),
                    seed,
                    n,
                    density,
                    satisfiable: out.satisfiable,
                    millis: start.elapsed().as_millis(),
                    work: out.stats.rows.iter().map(|r| r.total_states).sum(),
                });
            }
            DialectArg::Ia13 => {
                return fail(
                    EXIT_USAGE,
                    "bench supports the ia3 fragment and rcc8; full ia13 has no dp solver",
                );
            }
        }
    }
    print!("{}", bench_csv(&rows));
    EXIT_SAT
}
