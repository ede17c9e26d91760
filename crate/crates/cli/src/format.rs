//! Text formats for hypergraphs and designs.
//!
//! ```text
//! hypergraph n=5 r=2
//! 0 1
//! 1 4 x3   # multiplicity 3
//!
//! design n=7 q=3 r=2 lambda=1
//! 0 1 3
//! ```

use std::fmt;

use blockdesign::set::MAX_SET;
use blockdesign::{MultiRGraph, RGraph, Vertex, VertexSet};

/// A parse failure at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypergraphFile {
    pub n: usize,
    pub r: usize,
    /// Edges with multiplicities, in file order.
    pub edges: Vec<(VertexSet, u64)>,
}

impl HypergraphFile {
    pub fn from_graph(h: &RGraph) -> Self {
        HypergraphFile { n: h.n(), r: h.r(), edges: h.edges().map(|e| (*e, 1)).collect() }
    }

    pub fn from_multi(m: &MultiRGraph) -> Self {
        HypergraphFile { n: m.n(), r: m.r(), edges: m.entries().map(|(e, k)| (*e, k)).collect() }
    }

    pub fn is_simple(&self) -> bool {
        self.edges.iter().all(|&(_, k)| k == 1)
    }

    /// The simple graph; fails if some edge has multiplicity above 1.
    pub fn to_graph(&self) -> Result<RGraph, String> {
        if let Some((e, k)) = self.edges.iter().find(|&&(_, k)| k != 1) {
            return Err(format!("edge {e} has multiplicity {k}; a simple hypergraph is required"));
        }
        RGraph::from_edges(self.n, self.r, self.edges.iter().map(|&(e, _)| e)).map_err(|e| e.to_string())
    }

    pub fn to_multi(&self) -> Result<MultiRGraph, String> {
        let mut m = MultiRGraph::new(self.n, self.r);
        for &(e, k) in &self.edges {
            m.add(e, k).map_err(|err| err.to_string())?;
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignFile {
    pub n: usize,
    pub q: usize,
    pub r: usize,
    pub lambda: u64,
    /// Blocks in file order.
    pub blocks: Vec<VertexSet>,
}

impl DesignFile {
    /// A design with its blocks in lexicographic order.
    pub fn canonical(n: usize, q: usize, r: usize, lambda: u64, mut blocks: Vec<VertexSet>) -> Self {
        blocks.sort_unstable();
        DesignFile { n, q, r, lambda, blocks }
    }
}

fn set_line(e: &VertexSet) -> String {
    e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn write_hypergraph(h: &HypergraphFile) -> String {
    let mut out = format!("hypergraph n={} r={}\n", h.n, h.r);
    for (e, k) in &h.edges {
        out.push_str(&set_line(e));
        if *k != 1 {
            out.push_str(&format!(" x{k}"));
        }
        out.push('\n');
    }
    out
}

pub fn write_design(d: &DesignFile) -> String {
    let mut out = format!("design n={} q={} r={} lambda={}\n", d.n, d.q, d.r, d.lambda);
    for b in &d.blocks {
        out.push_str(&set_line(b));
        out.push('\n');
    }
    out
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

/// Non-empty lines with comments removed, as tokens with their columns.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<Token<'_>>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (j, c) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(j),
                (true, Some(s)) => {
                    tokens.push(Token { text: &body[s..j], column: body[..s].chars().count() + 1 });
                    start = None;
                }
                _ => {}
            }
        }
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

/// Parses `kind key=value ...` and returns the values of `keys` in order.
fn header(line: usize, tokens: &[Token], kind: &str, keys: &[&str]) -> Result<Vec<u64>, ParseError> {
    if tokens[0].text != kind {
        return Err(err(line, tokens[0].column, format!("expected header starting with '{kind}'")));
    }
    let mut values: Vec<Option<u64>> = vec![None; keys.len()];
    for t in &tokens[1..] {
        let (key, value) = t
            .text
            .split_once('=')
            .ok_or_else(|| err(line, t.column, format!("expected key=value, found '{}'", t.text)))?;
        let slot = keys
            .iter()
            .position(|k| *k == key)
            .ok_or_else(|| err(line, t.column, format!("unknown header key '{key}'")))?;
        if values[slot].is_some() {
            return Err(err(line, t.column, format!("header key '{key}' repeated")));
        }
        let v = value
            .parse::<u64>()
            .map_err(|_| err(line, t.column + key.len() + 1, format!("'{value}' is not a nonnegative integer")))?;
        values[slot] = Some(v);
    }
    keys.iter()
        .zip(values)
        .map(|(k, v)| v.ok_or_else(|| err(line, tokens.last().map_or(1, |t| t.column), format!("header lacks '{k}'"))))
        .collect()
}

/// Reads a sorted vertex list of length `size` with vertices below `n`.
fn vertex_set(line: usize, tokens: &[Token], size: usize, n: usize) -> Result<VertexSet, ParseError> {
    if tokens.len() != size {
        let col = tokens.get(size).or(tokens.last()).map_or(1, |t| t.column);
        return Err(err(line, col, format!("expected {size} vertices, found {}", tokens.len())));
    }
    let mut vs: Vec<Vertex> = Vec::with_capacity(size);
    for t in tokens {
        let x: usize = t.text.parse().map_err(|_| err(line, t.column, format!("'{}' is not a vertex index", t.text)))?;
        if x >= n {
            return Err(err(line, t.column, format!("vertex {x} out of range for n={n}")));
        }
        if vs.last().is_some_and(|&p| p as usize >= x) {
            return Err(err(line, t.column, "vertices must be strictly increasing"));
        }
        vs.push(x as Vertex);
    }
    Ok(VertexSet::new(&vs).expect("sorted distinct vertices within capacity"))
}

fn check_sizes(line: usize, n: u64, set_size: u64) -> Result<(), ParseError> {
    if n > Vertex::MAX as u64 + 1 {
        return Err(err(line, 1, format!("n={n} exceeds {}", Vertex::MAX as u64 + 1)));
    }
    if set_size as usize > MAX_SET {
        return Err(err(line, 1, format!("set size {set_size} exceeds {MAX_SET}")));
    }
    Ok(())
}

pub fn parse_hypergraph(text: &str) -> Result<HypergraphFile, ParseError> {
    let mut it = lines(text);
    let (hl, ht) = it.next().ok_or_else(|| err(1, 1, "empty file: expected 'hypergraph n=<n> r=<r>'"))?;
    let v = header(hl, &ht, "hypergraph", &["n", "r"])?;
    check_sizes(hl, v[0], v[1])?;
    let (n, r) = (v[0] as usize, v[1] as usize);
    if r == 0 {
        return Err(err(hl, 1, "r must be at least 1"));
    }
    let mut edges = Vec::new();
    let mut seen = std::collections::HashMap::new();
    for (line, tokens) in it {
        let (verts, mult) = match tokens.last() {
            Some(t) if t.text.starts_with('x') => {
                let k: u64 = t.text[1..]
                    .parse()
                    .ok()
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| err(line, t.column, format!("bad multiplicity '{}'", t.text)))?;
                (&tokens[..tokens.len() - 1], k)
            }
            _ => (&tokens[..], 1),
        };
        let e = vertex_set(line, verts, r, n)?;
        if let Some(prev) = seen.insert(e, line) {
            return Err(err(line, verts[0].column, format!("edge {e} already listed on line {prev}")));
        }
        edges.push((e, mult));
    }
    Ok(HypergraphFile { n, r, edges })
}

pub fn parse_design(text: &str) -> Result<DesignFile, ParseError> {
    let mut it = lines(text);
    let (hl, ht) = it.next().ok_or_else(|| err(1, 1, "empty file: expected 'design n=<n> q=<q> r=<r> lambda=<l>'"))?;
    let v = header(hl, &ht, "design", &["n", "q", "r", "lambda"])?;
    check_sizes(hl, v[0], v[1])?;
    let (n, q, r, lambda) = (v[0] as usize, v[1] as usize, v[2] as usize, v[3]);
    if r == 0 || q <= r || lambda == 0 {
        return Err(err(hl, 1, format!("need q > r >= 1 and lambda >= 1, got q={q} r={r} lambda={lambda}")));
    }
    let mut blocks = Vec::new();
    for (line, tokens) in it {
        blocks.push(vertex_set(line, &tokens, q, n)?);
    }
    Ok(DesignFile { n, q, r, lambda, blocks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_multigraph_with_comments() {
        let h = parse_hypergraph("# header next\nhypergraph r=2 n=4\n0 1\n\n2 3 x2 # doubled\n").unwrap();
        assert_eq!(h.n, 4);
        assert_eq!(h.edges, vec![(VertexSet::of(&[0, 1]), 1), (VertexSet::of(&[2, 3]), 2)]);
        assert_eq!(write_hypergraph(&h), "hypergraph n=4 r=2\n0 1\n2 3 x2\n");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_hypergraph("hypergraph n=4 r=2\n0 1\n1  7\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 4));
        let e = parse_hypergraph("hypergraph n=4 r=2\n2 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse_design("design n=7 q=3 r=2\n").unwrap_err();
        assert!(e.message.contains("lambda"));
        let e = parse_design("design n=7 q=3 r=2 lambda=1\n0 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_hypergraph("hypergraph n=4 r=2\n0 1\n0 1\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(parse_hypergraph("").is_err());
    }
}
