//! Text formats: hypergraph documents, voltage assignment files, and the
//! whitespace-separated matrix format.
//!
//! Hypergraph documents round-trip losslessly, including declaration order:
//!
//! ```text
//! # comment
//! uniform 3
//! vertices 1 2 3 4
//! edge 1 2 3
//! sign - edge 2 3 4     # signed documents prefix edges with `sign +|-`
//! ```
//!
//! Voltage files start with `k <fold>`, then one line per non-identity
//! incidence: `<edge-index> <vertex-id> : <i1> ... <ik>` giving the 1-indexed
//! image of the vertex-to-edge voltage. Unlisted incidences are identity.

use std::fmt;

use num_bigint::BigInt;

use crate::hypergraph::{Hypergraph, SignedHypergraph};
use crate::matrix::IntMatrix;
use crate::perm::Perm;
use crate::voltage::VoltageAssignment;

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A parsed hypergraph document, optionally edge-signed.
#[derive(Debug, Clone)]
pub struct HypergraphDocument {
    pub hypergraph: Hypergraph,
    pub signs: Option<Vec<i8>>,
}

impl HypergraphDocument {
    pub fn signed(&self) -> Option<SignedHypergraph> {
        self.signs
            .as_ref()
            .map(|s| SignedHypergraph::new(self.hypergraph.clone(), s.clone()))
    }
}

fn logical_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

pub fn parse_hypergraph(text: &str) -> Result<HypergraphDocument, ParseError> {
    let mut m: Option<(usize, usize)> = None; // (value, line)
    let mut declared: Option<Vec<String>> = None;
    let mut auto_order: Vec<String> = Vec::new();
    let mut edges: Vec<(Vec<String>, usize)> = Vec::new();
    let mut signs: Vec<i8> = Vec::new();
    let mut any_signed = false;
    let mut last_line = 0;

    for (line_no, line) in logical_lines(text) {
        last_line = line_no;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let (sign, rest) = if tokens[0] == "sign" {
            if tokens.len() < 3 || tokens[2] != "edge" {
                return Err(ParseError::new(line_no, "expected `sign <+|-> edge <ids...>`"));
            }
            let s = match tokens[1] {
                "+" => 1i8,
                "-" => -1i8,
                other => {
                    return Err(ParseError::new(line_no, format!("bad sign `{other}`")))
                }
            };
            any_signed = true;
            (s, &tokens[2..])
        } else {
            (1i8, &tokens[..])
        };

        match rest[0] {
            "uniform" => {
                if m.is_some() {
                    return Err(ParseError::new(line_no, "duplicate `uniform` directive"));
                }
                let value: usize = rest
                    .get(1)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| ParseError::new(line_no, "expected `uniform <m>`"))?;
                if value < 2 {
                    return Err(ParseError::new(line_no, "uniformity must be at least 2"));
                }
                m = Some((value, line_no));
            }
            "vertices" => {
                if declared.is_some() {
                    return Err(ParseError::new(line_no, "duplicate `vertices` directive"));
                }
                if !edges.is_empty() {
                    return Err(ParseError::new(
                        line_no,
                        "`vertices` must come before the first edge",
                    ));
                }
                let ids: Vec<String> = rest[1..].iter().map(|s| s.to_string()).collect();
                for (i, id) in ids.iter().enumerate() {
                    if ids[..i].contains(id) {
                        return Err(ParseError::new(line_no, format!("duplicate vertex `{id}`")));
                    }
                }
                declared = Some(ids);
            }
            "edge" => {
                let Some((uniformity, _)) = m else {
                    return Err(ParseError::new(line_no, "`uniform` must come before edges"));
                };
                let ids: Vec<String> = rest[1..].iter().map(|s| s.to_string()).collect();
                if ids.len() != uniformity {
                    return Err(ParseError::new(
                        line_no,
                        format!("edge has {} vertices, expected {uniformity}", ids.len()),
                    ));
                }
                for (i, id) in ids.iter().enumerate() {
                    if ids[..i].contains(id) {
                        return Err(ParseError::new(
                            line_no,
                            format!("edge repeats vertex `{id}`"),
                        ));
                    }
                }
                if let Some(declared) = &declared {
                    for id in &ids {
                        if !declared.contains(id) {
                            return Err(ParseError::new(
                                line_no,
                                format!("undeclared vertex `{id}`"),
                            ));
                        }
                    }
                } else {
                    for id in &ids {
                        if !auto_order.contains(id) {
                            auto_order.push(id.clone());
                        }
                    }
                }
                let mut as_set: Vec<&String> = ids.iter().collect();
                as_set.sort();
                for (prev, _) in &edges {
                    let mut prev_set: Vec<&String> = prev.iter().collect();
                    prev_set.sort();
                    if prev_set == as_set {
                        return Err(ParseError::new(line_no, "duplicate edge"));
                    }
                }
                edges.push((ids, line_no));
                signs.push(sign);
            }
            other => {
                return Err(ParseError::new(line_no, format!("unknown directive `{other}`")));
            }
        }
    }

    let Some((uniformity, _)) = m else {
        return Err(ParseError::new(last_line, "missing `uniform` directive"));
    };
    let vertices = declared.unwrap_or(auto_order);
    let hypergraph = Hypergraph::new(
        uniformity,
        vertices,
        edges.iter().map(|(ids, _)| ids.clone()).collect(),
    )
    .map_err(|e| ParseError::new(last_line, e.to_string()))?;
    Ok(HypergraphDocument {
        hypergraph,
        signs: any_signed.then_some(signs),
    })
}

pub fn serialize_hypergraph(h: &Hypergraph) -> String {
    let mut out = String::new();
    out.push_str(&format!("uniform {}\n", h.uniformity()));
    out.push_str(&format!("vertices {}\n", h.vertex_ids().join(" ")));
    for edge in h.edges() {
        let ids: Vec<&str> = edge.iter().map(|&v| h.vertex_id(v)).collect();
        out.push_str(&format!("edge {}\n", ids.join(" ")));
    }
    out
}

pub fn serialize_signed_hypergraph(sh: &SignedHypergraph) -> String {
    let h = sh.base();
    let mut out = String::new();
    out.push_str(&format!("uniform {}\n", h.uniformity()));
    out.push_str(&format!("vertices {}\n", h.vertex_ids().join(" ")));
    for (e, edge) in h.edges().iter().enumerate() {
        let ids: Vec<&str> = edge.iter().map(|&v| h.vertex_id(v)).collect();
        let sign = if sh.sign(e) >= 0 { '+' } else { '-' };
        out.push_str(&format!("sign {sign} edge {}\n", ids.join(" ")));
    }
    out
}

pub fn parse_voltage(text: &str, h: &Hypergraph) -> Result<VoltageAssignment, ParseError> {
    let mut lines = logical_lines(text);
    let Some((header_line, header)) = lines.next() else {
        return Err(ParseError::new(1, "missing `k <fold>` header"));
    };
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 2 || tokens[0] != "k" {
        return Err(ParseError::new(header_line, "expected `k <fold>` header"));
    }
    let k: usize = tokens[1]
        .parse()
        .ok()
        .filter(|&k| k >= 1)
        .ok_or_else(|| ParseError::new(header_line, "fold must be a positive integer"))?;

    let mut entries: Vec<((usize, usize), Perm)> = Vec::new();
    for (line_no, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 3 + k || tokens[2] != ":" {
            return Err(ParseError::new(
                line_no,
                format!("expected `<edge-index> <vertex-id> : <{k} image values>`"),
            ));
        }
        let edge_no: usize = tokens[0]
            .parse()
            .ok()
            .filter(|&e| e >= 1)
            .ok_or_else(|| ParseError::new(line_no, "edge index must be a positive integer"))?;
        if edge_no > h.edge_count() {
            return Err(ParseError::new(
                line_no,
                format!("edge index {edge_no} out of range (document has {} edges)", h.edge_count()),
            ));
        }
        let e = edge_no - 1;
        let vertex_id = tokens[1];
        let Some(v) = h.vertex_index(vertex_id) else {
            return Err(ParseError::new(line_no, format!("unknown vertex `{vertex_id}`")));
        };
        if !h.has_incidence(e, v) {
            return Err(ParseError::new(
                line_no,
                format!("vertex `{vertex_id}` is not in edge {edge_no}"),
            ));
        }
        let mut image = Vec::with_capacity(k);
        for t in &tokens[3..] {
            let value: usize = t
                .parse()
                .map_err(|_| ParseError::new(line_no, format!("bad image value `{t}`")))?;
            image.push(value);
        }
        let perm = Perm::from_one_based(&image)
            .map_err(|e| ParseError::new(line_no, format!("not a bijection: {e}")))?;
        if entries.iter().any(|((pe, pv), _)| (*pe, *pv) == (e, v)) {
            return Err(ParseError::new(
                line_no,
                format!("duplicate voltage for edge {edge_no}, vertex `{vertex_id}`"),
            ));
        }
        entries.push(((e, v), perm));
    }
    VoltageAssignment::new(h, k, entries)
        .map_err(|e| ParseError::new(0, e.to_string()))
}

pub fn serialize_voltage(phi: &VoltageAssignment) -> String {
    let mut out = format!("k {}\n", phi.fold());
    for (&(e, v), perm) in phi.non_identity_entries() {
        let image: Vec<String> = perm
            .one_based_image()
            .iter()
            .map(|i| i.to_string())
            .collect();
        out.push_str(&format!("{} {} : {}\n", e + 1, v + 1, image.join(" ")));
    }
    out
}

/// Matrix text format: first line `rows cols`, then row-major entries,
/// whitespace-separated (line breaks are not significant).
pub fn parse_matrix(text: &str) -> Result<IntMatrix, ParseError> {
    let mut tokens: Vec<(usize, &str)> = Vec::new();
    for (line_no, line) in logical_lines(text) {
        for t in line.split_whitespace() {
            tokens.push((line_no, t));
        }
    }
    if tokens.len() < 2 {
        return Err(ParseError::new(1, "expected `rows cols` header"));
    }
    let rows: usize = tokens[0]
        .1
        .parse()
        .map_err(|_| ParseError::new(tokens[0].0, "bad row count"))?;
    let cols: usize = tokens[1]
        .1
        .parse()
        .map_err(|_| ParseError::new(tokens[1].0, "bad column count"))?;
    let expected = rows * cols;
    let entries = &tokens[2..];
    if entries.len() != expected {
        let line = entries.last().or(tokens.last()).map_or(1, |(l, _)| *l);
        return Err(ParseError::new(
            line,
            format!("expected {expected} entries, got {}", entries.len()),
        ));
    }
    let mut m = IntMatrix::zero(rows, cols);
    for (idx, (line_no, t)) in entries.iter().enumerate() {
        let value: BigInt = t
            .parse()
            .map_err(|_| ParseError::new(*line_no, format!("bad integer `{t}`")))?;
        m[(idx / cols, idx % cols)] = value;
    }
    Ok(m)
}

pub fn serialize_matrix(m: &IntMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
