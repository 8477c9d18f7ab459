//! Text file formats and JSON shapes.
//!
//! Graph files: a header line `n m`, then `m` lines `u v`. Function files:
//! one line of `n` image ids. In both, `#` starts a comment and blank lines
//! are ignored.

use std::fmt;

use functigraph_core::perm::{group_order, Permutation};
use functigraph_core::{FixingResult, Graph, PermGroup, ResolvingResult, VertexFunction};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based; 0 when the problem is not tied to a line (e.g. missing edges).
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

/// Non-empty content lines with comments stripped, tagged with line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

fn numbers(line: usize, body: &str) -> Result<Vec<usize>, ParseError> {
    body.split_whitespace()
        .map(|tok| tok.parse::<usize>().map_err(|_| err(line, format!("`{tok}` is not a vertex id"))))
        .collect()
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| err(0, "empty graph file"))?;
    let (n, m) = match numbers(hline, header)?[..] {
        [n, m] => (n, m),
        _ => return Err(err(hline, "header must be `n m`")),
    };
    let mut edges = Vec::with_capacity(m);
    let mut last_line = hline;
    for (line, body) in lines {
        let (u, v) = match numbers(line, body)?[..] {
            [u, v] => (u, v),
            _ => return Err(err(line, "edge lines must be `u v`")),
        };
        if u >= n || v >= n {
            return Err(err(line, format!("vertex out of range for n = {n}")));
        }
        if u == v {
            return Err(err(line, format!("loop at vertex {u}")));
        }
        edges.push((u, v));
        last_line = line;
    }
    if edges.len() != m {
        return Err(err(last_line, format!("header declares {m} edges, found {}", edges.len())));
    }
    let g = Graph::new(n, &edges).map_err(|e| err(0, e.to_string()))?;
    if g.size() != m {
        return Err(err(0, "duplicate edges"));
    }
    Ok(g)
}

/// Edges are emitted sorted, so this is the canonical form of a parsed file.
pub fn serialize_graph(g: &Graph) -> String {
    g.to_string()
}

/// Parses a function on `n` points; with `n = None` the length of the line
/// decides `n`.
pub fn parse_function(text: &str, n: Option<usize>) -> Result<VertexFunction, ParseError> {
    let mut lines = content_lines(text);
    let (line, body) = lines.next().ok_or_else(|| err(0, "empty function"))?;
    if let Some((extra, _)) = lines.next() {
        return Err(err(extra, "a function is a single line of images"));
    }
    let images = numbers(line, body)?;
    let n = n.unwrap_or(images.len());
    if images.len() != n {
        return Err(err(line, format!("expected {n} images, found {}", images.len())));
    }
    VertexFunction::new(n, images).map_err(|e| err(line, e.to_string()))
}

pub fn serialize_function(f: &VertexFunction) -> String {
    format!("{f}\n")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixingJson {
    pub fix: usize,
    pub witness: Vec<usize>,
    pub aut_order: u128,
    pub lower_bound: usize,
}

impl FixingJson {
    pub fn new(g: &Graph, r: &FixingResult) -> functigraph_core::Result<FixingJson> {
        Ok(FixingJson {
            fix: r.fix,
            witness: r.witness.clone(),
            aut_order: group_order(g)?,
            lower_bound: r.lower_bound_used,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolvingJson {
    pub beta: usize,
    pub witness: Vec<usize>,
}

impl From<&ResolvingResult> for ResolvingJson {
    fn from(r: &ResolvingResult) -> Self {
        ResolvingJson { beta: r.beta, witness: r.witness.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctionJson {
    pub n: usize,
    pub images: Vec<usize>,
}

impl From<&VertexFunction> for FunctionJson {
    fn from(f: &VertexFunction) -> Self {
        FunctionJson { n: f.n(), images: f.images().to_vec() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphJson {
    pub n: usize,
    pub m: usize,
    pub edges: Vec<(usize, usize)>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson { n: g.order(), m: g.size(), edges: g.edges().to_vec() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupJson {
    pub order: u128,
    pub generators: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<Vec<usize>>>,
}

fn images(perms: &[Permutation]) -> Vec<Vec<usize>> {
    perms.iter().map(|p| p.images().to_vec()).collect()
}

impl GroupJson {
    pub fn new(group: &PermGroup, with_elements: bool) -> GroupJson {
        GroupJson {
            order: group.order() as u128,
            generators: images(group.generators()),
            elements: with_elements.then(|| images(group.elements())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let g = parse_graph("# a path\n3 2\n0 1 # first\n\n2 1\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(serialize_graph(&g), "3 2\n0 1\n1 2\n");
    }

    #[test]
    fn reports_line_numbers() {
        assert_eq!(parse_graph("3 2\n0 1\n0 x\n").unwrap_err().line, 3);
        assert_eq!(parse_graph("3 1\n0 3\n").unwrap_err().line, 2);
        assert_eq!(parse_graph("3 1\n1 1\n").unwrap_err().line, 2);
        assert_eq!(parse_graph("\n3\n").unwrap_err().line, 2);
        assert_eq!(parse_graph("3 2\n0 1\n").unwrap_err().line, 2);
        assert_eq!(parse_graph("# nothing\n").unwrap_err().line, 0);
        assert!(parse_graph("3 2\n0 1\n1 0\n").is_err());
    }

    #[test]
    fn functions() {
        let f = parse_function("0 0 2 # g\n", None).unwrap();
        assert_eq!(f.images(), &[0, 0, 2]);
        assert_eq!(serialize_function(&f), "0 0 2\n");
        assert_eq!(parse_function("0 3 1", Some(3)).unwrap_err().line, 1);
        assert!(parse_function("0 1", Some(3)).is_err());
        assert_eq!(parse_function("0 1\n1 0\n", None).unwrap_err().line, 2);
    }

    #[test]
    fn json_shapes() {
        let g = functigraph_core::graph::family("complete:3").unwrap();
        let r = functigraph_core::fixing_number(&g).unwrap();
        let json = serde_json::to_string(&FixingJson::new(&g, &r).unwrap()).unwrap();
        assert_eq!(json, r#"{"fix":2,"witness":[0,1],"aut_order":6,"lower_bound":2}"#);
        let f = VertexFunction::constant(3, 1).unwrap();
        assert_eq!(serde_json::to_string(&FunctionJson::from(&f)).unwrap(), r#"{"n":3,"images":[1,1,1]}"#);
    }
}
