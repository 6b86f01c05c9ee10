//! Text and JSON formats for graphs and partitions.
//!
//! Edge-list format: optional `#` comment lines, then a header line
//! `n <count>`, then one `i j` pair per line. The writer emits a canonical
//! form (sorted edges, no comments) so write -> parse -> write is bit-exact.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;

pub fn parse_edgelist(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let mut fields = line.split_whitespace();
        if n.is_none() {
            let tag = fields.next().unwrap();
            let count = fields.next();
            if tag != "n" || count.is_none() || fields.next().is_some() {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected header \"n <count>\", got \"{line}\""),
                });
            }
            n = Some(parse_field(count.unwrap(), lineno)?);
        } else {
            let (a, b) = (fields.next(), fields.next());
            if a.is_none() || b.is_none() || fields.next().is_some() {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected edge \"i j\", got \"{line}\""),
                });
            }
            edges.push((parse_field(a.unwrap(), lineno)?, parse_field(b.unwrap(), lineno)?));
        }
    }
    match n {
        Some(n) => Graph::new(n, &edges),
        None => Err(Error::Parse { line: 1, msg: "missing header \"n <count>\"".into() }),
    }
}

fn parse_field(s: &str, line: usize) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse { line, msg: format!("invalid integer \"{s}\"") })
}

pub fn write_edgelist(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (i, j) in g.edges() {
        out.push_str(&format!("{i} {j}\n"));
    }
    out
}

#[derive(Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

pub fn parse_graph_json(text: &str) -> Result<Graph> {
    let raw: GraphJson = serde_json::from_str(text).map_err(json_err)?;
    Graph::new(raw.n, &raw.edges)
}

pub fn write_graph_json(g: &Graph) -> String {
    let edges: Vec<[usize; 2]> = g.edges().iter().map(|&(i, j)| [i, j]).collect();
    format!("{}\n", serde_json::json!({ "n": g.n(), "edges": edges }))
}

#[derive(Deserialize)]
struct PartitionJson {
    blocks: Vec<Vec<usize>>,
}

/// Partition JSON `{"blocks": [[...], ...]}`; blocks must disjointly cover
/// `0..n-1` where `n` is the total element count.
pub fn parse_partition_json(text: &str) -> Result<Partition> {
    let raw: PartitionJson = serde_json::from_str(text).map_err(json_err)?;
    Partition::from_blocks(&raw.blocks)
}

pub fn write_partition_json(p: &Partition) -> String {
    format!("{}\n", serde_json::json!({ "blocks": p.blocks() }))
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse { line: e.line(), msg: e.to_string() }
}
