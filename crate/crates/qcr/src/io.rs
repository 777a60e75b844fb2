//! Text formats: constraint network files, sandwich instance files, and
//! the model lines the command line tool prints.
//!
//! A network file looks like
//!
//! ```text
//! # any line may carry a trailing comment
//! calculus rcc8
//! vars a b c
//! a {DC,EC} b
//! b {PP} c
//! ```
//!
//! The calculus line picks the dialect: `ia13` and `rcc8` accept their
//! basic relation names plus a few macro names, `ia3` is the three-relation
//! fragment of the interval algebra and accepts only `p`, `cap` and `p-`.
//! Pairs not mentioned are unconstrained. Mentioning a pair twice is an
//! error rather than an intersection, since it is usually a typo.

use std::collections::HashSet;

use crate::calculus::{rels, Calculus, RelSet};
use crate::ia::{is_a3_label, IntervalModel, SandwichInput};
use crate::qcn::Qcn;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dialect {
    Ia3,
    Ia13,
    Rcc8,
}

impl Dialect {
    pub fn name(self) -> &'static str {
        match self {
            Dialect::Ia3 => "ia3",
            Dialect::Ia13 => "ia13",
            Dialect::Rcc8 => "rcc8",
        }
    }

    pub fn from_name(name: &str) -> Option<Dialect> {
        match name {
            "ia3" => Some(Dialect::Ia3),
            "ia13" => Some(Dialect::Ia13),
            "rcc8" => Some(Dialect::Rcc8),
            _ => None,
        }
    }

    pub fn calc(self) -> &'static Calculus {
        match self {
            Dialect::Ia3 | Dialect::Ia13 => Calculus::ia13(),
            Dialect::Rcc8 => Calculus::rcc8(),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    ParseError { line: usize, msg: String },
    #[error("line {line}: unknown calculus '{token}'")]
    UnknownCalculus { line: usize, token: String },
    #[error("line {line}: unknown relation '{token}'")]
    UnknownRelation { line: usize, token: String },
    #[error("line {line}: unknown variable '{token}'")]
    UnknownVariable { line: usize, token: String },
}

fn perr(line: usize, msg: impl Into<String>) -> IoError {
    IoError::ParseError { line, msg: msg.into() }
}

#[derive(Debug, Clone)]
pub struct ParsedQcn {
    pub qcn: Qcn,
    pub dialect: Dialect,
}

fn macro_token(dialect: Dialect, token: &str) -> Option<RelSet> {
    match dialect {
        Dialect::Ia3 => None,
        Dialect::Ia13 => match token {
            "cap" => Some(rels::ia::CAP),
            "alpha" => Some(rels::ia::ALPHA),
            "alpha-" => Some(rels::ia::ALPHA_I),
            "sub" => Some(rels::ia::SUB),
            "sub-" => Some(rels::ia::SUB_I),
            _ => None,
        },
        Dialect::Rcc8 => match token {
            "PP" => Some(rels::rcc8::PP),
            "PP-" => Some(rels::rcc8::PP_I),
            "DR" => Some(rels::rcc8::DR),
            _ => None,
        },
    }
}

fn relation_token(dialect: Dialect, token: &str, line: usize) -> Result<RelSet, IoError> {
    if dialect == Dialect::Ia3 {
        return match token {
            "p" => Ok(rels::ia::P),
            "cap" => Ok(rels::ia::CAP),
            "p-" => Ok(rels::ia::PI),
            _ => Err(IoError::UnknownRelation { line, token: token.to_string() }),
        };
    }
    let calc = dialect.calc();
    if let Some(b) = calc.basic_by_name(token) {
        return Ok(calc.basic(b));
    }
    macro_token(dialect, token)
        .ok_or_else(|| IoError::UnknownRelation { line, token: token.to_string() })
}

/// Resolves a single relation token of a dialect: a basic relation name
/// or one of the macro names. None when the token is not recognized.
pub fn parse_relation(dialect: Dialect, token: &str) -> Option<RelSet> {
    relation_token(dialect, token, 0).ok()
}

fn parse_label(dialect: Dialect, inner: &str, line: usize) -> Result<RelSet, IoError> {
    let mut rel = dialect.calc().empty();
    let inner = inner.trim();
    if inner.is_empty() {
        return Ok(rel);
    }
    for token in inner.split(',') {
        let token = token.trim();
        if token.is_empty() {
            return Err(perr(line, "empty relation token"));
        }
        rel = rel.union(relation_token(dialect, token, line)?);
    }
    Ok(rel)
}

fn valid_var_name(name: &str) -> bool {
    !name.is_empty()
        && name != "calculus"
        && name != "vars"
        && !name.contains(['{', '}', '#', ','])
}

/// Parses a constraint network file.
pub fn parse_qcn(text: &str) -> Result<ParsedQcn, IoError> {
    let mut dialect: Option<Dialect> = None;
    let mut qcn: Option<Qcn> = None;
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut fields = content.split_whitespace();
        let head = fields.next().unwrap();
        match head {
            "calculus" => {
                if dialect.is_some() {
                    return Err(perr(line, "calculus declared twice"));
                }
                let token = fields
                    .next()
                    .ok_or_else(|| perr(line, "expected 'calculus <name>'"))?;
                if fields.next().is_some() {
                    return Err(perr(line, "trailing tokens after calculus name"));
                }
                dialect = Some(Dialect::from_name(token).ok_or_else(|| {
                    IoError::UnknownCalculus { line, token: token.to_string() }
                })?);
            }
            "vars" => {
                let d = dialect
                    .ok_or_else(|| perr(line, "calculus must be declared before vars"))?;
                if qcn.is_some() {
                    return Err(perr(line, "vars declared twice"));
                }
                let names: Vec<&str> = fields.collect();
                for name in &names {
                    if !valid_var_name(name) {
                        return Err(perr(line, format!("invalid variable name '{}'", name)));
                    }
                }
                qcn = Some(Qcn::new(d.calc(), &names).map_err(|e| perr(line, e.to_string()))?);
            }
            _ => {
                let d = dialect
                    .ok_or_else(|| perr(line, "calculus must be declared before constraints"))?;
                let q = qcn
                    .as_mut()
                    .ok_or_else(|| perr(line, "vars must be declared before constraints"))?;
                let open = content
                    .find('{')
                    .ok_or_else(|| perr(line, "expected 'x {R,...} y'"))?;
                let close = content
                    .rfind('}')
                    .filter(|&c| c > open)
                    .ok_or_else(|| perr(line, "expected 'x {R,...} y'"))?;
                let lhs = content[..open].trim();
                let rhs = content[close + 1..].trim();
                if lhs.is_empty()
                    || rhs.is_empty()
                    || lhs.split_whitespace().count() != 1
                    || rhs.split_whitespace().count() != 1
                {
                    return Err(perr(line, "expected 'x {R,...} y'"));
                }
                let x = q.var_index(lhs).ok_or_else(|| IoError::UnknownVariable {
                    line,
                    token: lhs.to_string(),
                })?;
                let y = q.var_index(rhs).ok_or_else(|| IoError::UnknownVariable {
                    line,
                    token: rhs.to_string(),
                })?;
                if x == y {
                    return Err(perr(line, "constraint relates a variable to itself"));
                }
                if !seen.insert((x.min(y), x.max(y))) {
                    return Err(perr(line, format!("pair ({}, {}) constrained twice", lhs, rhs)));
                }
                let rel = parse_label(d, &content[open + 1..close], line)?;
                q.set_label(x, y, rel);
            }
        }
    }

    let dialect = dialect.ok_or_else(|| perr(last_line, "missing calculus line"))?;
    let qcn = qcn.ok_or_else(|| perr(last_line, "missing vars line"))?;
    Ok(ParsedQcn { qcn, dialect })
}

/// Writes a network back into file syntax. The dialect must match the
/// network's calculus; emitting an interval network as `ia3` additionally
/// requires every label to be a union of the three fragment relations.
pub fn emit_qcn(q: &Qcn, dialect: Dialect) -> String {
    assert_eq!(q.calc().id(), dialect.calc().id(), "dialect does not fit the network");
    let mut out = format!("calculus {}\n", dialect.name());
    out.push_str("vars");
    for name in q.var_names() {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    let full = q.calc().full();
    for x in 0..q.num_vars() {
        for y in x + 1..q.num_vars() {
            let label = q.label(x, y);
            if label == full {
                continue;
            }
            let tokens: Vec<&str> = match dialect {
                Dialect::Ia3 => {
                    assert!(is_a3_label(label), "label {} is outside the fragment", label);
                    let mut t = Vec::new();
                    if rels::ia::P.is_subset(label) {
                        t.push("p");
                    }
                    if rels::ia::CAP.is_subset(label) {
                        t.push("cap");
                    }
                    if rels::ia::PI.is_subset(label) {
                        t.push("p-");
                    }
                    t
                }
                _ => label.iter_basics().map(|b| q.calc().basic_name(b)).collect(),
            };
            out.push_str(&format!(
                "{} {{{}}} {}\n",
                q.var_name(x),
                tokens.join(","),
                q.var_name(y)
            ));
        }
    }
    out
}

/// Parses a sandwich instance file: a vertex count on the first line, then
/// `E1 u v` forced edges and `E2 u v` optional edges, zero-based.
pub fn parse_igsp(text: &str) -> Result<SandwichInput, IoError> {
    let mut n: Option<usize> = None;
    let mut forced: Vec<(usize, usize)> = Vec::new();
    let mut optional: Vec<(usize, usize)> = Vec::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        match n {
            None => {
                if fields.len() != 1 {
                    return Err(perr(line, "expected the vertex count on the first line"));
                }
                n = Some(
                    fields[0]
                        .parse()
                        .map_err(|_| perr(line, format!("bad vertex count '{}'", fields[0])))?,
                );
            }
            Some(n) => {
                if fields.len() != 3 {
                    return Err(perr(line, "expected 'E1 u v' or 'E2 u v'"));
                }
                let u: usize = fields[1]
                    .parse()
                    .map_err(|_| perr(line, format!("bad vertex '{}'", fields[1])))?;
                let v: usize = fields[2]
                    .parse()
                    .map_err(|_| perr(line, format!("bad vertex '{}'", fields[2])))?;
                if u == v || u >= n || v >= n {
                    return Err(perr(line, format!("edge ({}, {}) is invalid for {} vertices", u, v, n)));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(perr(line, format!("edge ({}, {}) listed twice", u, v)));
                }
                match fields[0] {
                    "E1" => forced.push((u, v)),
                    "E2" => optional.push((u, v)),
                    tag => return Err(perr(line, format!("unknown edge set '{}'", tag))),
                }
            }
        }
    }

    let n = n.ok_or_else(|| perr(last_line, "missing vertex count"))?;
    SandwichInput::new(n, forced, optional).map_err(|e| perr(last_line, e.to_string()))
}

pub fn emit_igsp(input: &SandwichInput) -> String {
    let mut out = format!("{}\n", input.num_vertices());
    for &(u, v) in input.forced() {
        out.push_str(&format!("E1 {} {}\n", u, v));
    }
    for &(u, v) in input.optional() {
        out.push_str(&format!("E2 {} {}\n", u, v));
    }
    out
}

/// One `MODEL` line per variable: name, start position, end position.
pub fn emit_interval_model(q: &Qcn, model: &IntervalModel) -> String {
    let mut out = String::new();
    for (i, &(lo, hi)) in model.endpoints.iter().enumerate() {
        out.push_str(&format!("MODEL {} {} {}\n", q.var_name(i), lo, hi));
    }
    out
}
