//! Text formats. Vertices are 1-indexed in files and 0-indexed in memory.
//!
//! ```text
//! p tsp01 <n> <m>            instance: m weight-1 edges follow
//! e <u> <v>
//!
//! p tspw <n> <m>             weighting: m edges with rational weights
//! e <u> <v> <num> <den>
//!
//! t <n>                      tour: n vertex ids, one per line
//! <v>
//! ```
//!
//! Lines starting with `c` are comments and blank lines are ignored.

use std::fmt::Write as _;

use thiserror::Error;

use super::{HamiltonCycle, Instance01, InstanceError, Weighting};
use crate::graph::{edge, Graph};
use crate::Rational;

/// Largest vertex count accepted by the default parsers.
pub const DEFAULT_SIZE_CAP: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("missing or malformed header: expected `{expected}`")]
    MalformedHeader { expected: &'static str },
    #[error("line {line}: malformed record `{content}`")]
    MalformedLine { line: usize, content: String },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("header declares {declared} records, found {found}")]
    CountMismatch { declared: usize, found: usize },
    #[error("n = {n} exceeds the size cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("line {line}: invalid weight ({reason})")]
    BadWeight { line: usize, reason: String },
    #[error(transparent)]
    Invalid(#[from] InstanceError),
}

struct Records<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Records<'a> {
    fn new(text: &'a str) -> Self {
        Records {
            lines: text.lines().enumerate(),
        }
    }
}

impl<'a> Iterator for Records<'a> {
    type Item = (usize, Vec<&'a str>);

    fn next(&mut self) -> Option<Self::Item> {
        for (i, line) in self.lines.by_ref() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            return Some((i + 1, line.split_ascii_whitespace().collect()));
        }
        None
    }
}

fn malformed(line: usize, fields: &[&str]) -> ParseError {
    ParseError::MalformedLine {
        line,
        content: fields.join(" "),
    }
}

fn header(
    records: &mut Records<'_>,
    kinds: &[&str],
    expected: &'static str,
    cap: usize,
) -> Result<(usize, usize), ParseError> {
    let bad = || ParseError::MalformedHeader { expected };
    let (_, fields) = records.next().ok_or_else(bad)?;
    if fields.len() != 4 || fields[0] != "p" || !kinds.contains(&fields[1]) {
        return Err(bad());
    }
    let n: usize = fields[2].parse().map_err(|_| bad())?;
    let m: usize = fields[3].parse().map_err(|_| bad())?;
    if n > cap {
        return Err(ParseError::TooLarge { n, cap });
    }
    Ok((n, m))
}

fn vertex(line: usize, field: &str, n: usize, fields: &[&str]) -> Result<usize, ParseError> {
    let v: usize = field.parse().map_err(|_| malformed(line, fields))?;
    if v == 0 || v > n {
        return Err(ParseError::VertexOutOfRange { line, vertex: v, n });
    }
    Ok(v - 1)
}

/// Reads an edge list; `with_weight` selects the `e u v num den` record form.
fn edge_records(
    records: Records<'_>,
    n: usize,
    m: usize,
    with_weight: bool,
) -> Result<Vec<(usize, usize, Option<Rational>)>, ParseError> {
    let arity = if with_weight { 5 } else { 3 };
    let mut seen = Graph::new(n);
    let mut out = Vec::with_capacity(m);
    for (line, fields) in records {
        if fields.len() != arity || fields[0] != "e" {
            return Err(malformed(line, &fields));
        }
        let u = vertex(line, fields[1], n, &fields)?;
        let v = vertex(line, fields[2], n, &fields)?;
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u + 1 });
        }
        if !seen.add_edge(u, v) {
            let (a, b) = edge(u, v);
            return Err(ParseError::DuplicateEdge { line, u: a + 1, v: b + 1 });
        }
        let w = if with_weight {
            let num: i128 = fields[3].parse().map_err(|_| malformed(line, &fields))?;
            let den: i128 = fields[4].parse().map_err(|_| malformed(line, &fields))?;
            if den == 0 {
                return Err(ParseError::BadWeight {
                    line,
                    reason: "zero denominator".into(),
                });
            }
            Some(Rational::new(num, den))
        } else {
            None
        };
        out.push((u, v, w));
    }
    if out.len() != m {
        return Err(ParseError::CountMismatch {
            declared: m,
            found: out.len(),
        });
    }
    Ok(out)
}

pub fn parse_instance(text: &str) -> Result<Instance01, ParseError> {
    parse_instance_with_cap(text, DEFAULT_SIZE_CAP)
}

pub fn parse_instance_with_cap(text: &str, cap: usize) -> Result<Instance01, ParseError> {
    let mut records = Records::new(text);
    let (n, m) = header(&mut records, &["tsp01"], "p tsp01 <n> <m>", cap)?;
    if n < 3 {
        return Err(InstanceError::TooFewVertices(n).into());
    }
    let edges = edge_records(records, n, m, false)?;
    Ok(Instance01::new(n, edges.into_iter().map(|(u, v, _)| (u, v)))?)
}

pub fn serialize_instance(inst: &Instance01) -> String {
    let mut out = format!("p tsp01 {} {}\n", inst.vertex_count(), inst.one_edge_count());
    for (u, v) in inst.one_edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// Simple graph in the instance edge-list format (`p tsp01` or `p edge`
/// header). Unlike instances, graphs may have fewer than 3 vertices.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut records = Records::new(text);
    let (n, m) = header(&mut records, &["tsp01", "edge"], "p edge <n> <m>", DEFAULT_SIZE_CAP)?;
    let edges = edge_records(records, n, m, false)?;
    Ok(Graph::from_edges(n, edges.into_iter().map(|(u, v, _)| (u, v))))
}

pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// Weighting file; pairs not listed weigh 0.
pub fn parse_weighting(text: &str) -> Result<Weighting, ParseError> {
    let mut records = Records::new(text);
    let (n, m) = header(&mut records, &["tspw"], "p tspw <n> <m>", DEFAULT_SIZE_CAP)?;
    if n < 3 {
        return Err(InstanceError::TooFewVertices(n).into());
    }
    let entries = edge_records(records, n, m, true)?;
    let mut table = std::collections::HashMap::with_capacity(entries.len());
    for (u, v, w) in entries {
        table.insert(edge(u, v), w.unwrap());
    }
    let zero = Rational::from_integer(0);
    Ok(Weighting::from_fn(n, |u, v| {
        table.get(&(u, v)).copied().unwrap_or(zero)
    })?)
}

/// Lists every nonzero pair as `e u v num den` in lowest terms.
pub fn serialize_weighting(w: &Weighting) -> String {
    let n = w.vertex_count();
    let mut body = String::new();
    let mut m = 0;
    for u in 0..n {
        for v in u + 1..n {
            let x = w.weight(u, v);
            if *x.numer() != 0 {
                m += 1;
                writeln!(body, "e {} {} {} {}", u + 1, v + 1, x.numer(), x.denom()).unwrap();
            }
        }
    }
    format!("p tspw {n} {m}\n{body}")
}

pub fn parse_tour(text: &str) -> Result<HamiltonCycle, ParseError> {
    let mut records = Records::new(text);
    let expected = "t <n>";
    let (_, fields) = records
        .next()
        .ok_or(ParseError::MalformedHeader { expected })?;
    if fields.len() != 2 || fields[0] != "t" {
        return Err(ParseError::MalformedHeader { expected });
    }
    let n: usize = fields[1]
        .parse()
        .map_err(|_| ParseError::MalformedHeader { expected })?;
    if n > DEFAULT_SIZE_CAP {
        return Err(ParseError::TooLarge { n, cap: DEFAULT_SIZE_CAP });
    }
    let mut order = Vec::with_capacity(n);
    for (line, fields) in records {
        if fields.len() != 1 {
            return Err(malformed(line, &fields));
        }
        order.push(vertex(line, fields[0], n, &fields)?);
    }
    if order.len() != n {
        return Err(ParseError::CountMismatch {
            declared: n,
            found: order.len(),
        });
    }
    Ok(HamiltonCycle::new(order)?)
}

pub fn serialize_tour(h: &HamiltonCycle) -> String {
    let mut out = format!("t {}\n", h.len());
    for &v in h.order() {
        writeln!(out, "{}", v + 1).unwrap();
    }
    out
}
