//! Readers for the two supported input formats.
//!
//! * Hyperedge list: one hyperedge per line, labels separated by commas
//!   and/or whitespace, `#` comment lines, blank lines ignored.
//! * Simplex format: an `nverts` integer stream giving each hyperedge's size,
//!   a `simplices` stream of 1-based node ids, and optional labels (line k
//!   names node k + 1).

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Drop exact-duplicate hyperedges (first occurrence wins).
    pub dedupe_edges: bool,
}

/// Hypergraph parsed from a hyperedge list plus cleanup counters.
#[derive(Debug, Clone)]
pub struct EdgeListParse {
    pub hypergraph: Hypergraph,
    /// Labels repeated within a single line (each repeat counted once).
    pub duplicate_labels: usize,
    /// Hyperedges removed by `dedupe_edges`.
    pub duplicate_edges_removed: usize,
}

pub fn parse_hyperedge_list(text: &str, options: ParseOptions) -> Result<EdgeListParse> {
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut duplicate_labels = 0;

    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut edge: Vec<usize> = Vec::new();
        for token in trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let id = *ids.entry(token).or_insert_with(|| {
                labels.push(token.to_string());
                labels.len() - 1
            });
            if edge.contains(&id) {
                duplicate_labels += 1;
            } else {
                edge.push(id);
            }
        }
        if edge.is_empty() {
            return Err(Error::parse(lineno + 1, "line contains only separators"));
        }
        edges.push(edge);
    }
    if edges.is_empty() {
        return Err(Error::parse_global("input contains no hyperedges"));
    }
    let mut hypergraph = Hypergraph::new(labels, edges)?;
    let mut duplicate_edges_removed = 0;
    if options.dedupe_edges {
        (hypergraph, duplicate_edges_removed) = hypergraph.dedupe_edges();
    }
    Ok(EdgeListParse {
        hypergraph,
        duplicate_labels,
        duplicate_edges_removed,
    })
}

fn parse_integers(text: &str, what: &str) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        for token in line.split_whitespace() {
            let v = token.parse::<i64>().map_err(|_| {
                Error::parse(lineno + 1, format!("{what}: {token:?} is not an integer"))
            })?;
            out.push(v);
        }
    }
    Ok(out)
}

/// Reads the simplex format. Without labels, node k is labelled by its
/// 1-based id. Node count is the larger of the maximum id and the label
/// count; unreferenced ids are kept as isolated nodes.
pub fn parse_simplex_format(
    nverts: &str,
    simplices: &str,
    labels: Option<&str>,
    options: ParseOptions,
) -> Result<Hypergraph> {
    let sizes = parse_integers(nverts, "nverts")?;
    let ids = parse_integers(simplices, "simplices")?;
    if sizes.is_empty() {
        return Err(Error::parse_global("nverts lists no hyperedges"));
    }
    if let Some(pos) = sizes.iter().position(|&s| s <= 0) {
        return Err(Error::parse_global(format!(
            "nverts entry {} is {}, hyperedges need at least one node",
            pos + 1,
            sizes[pos]
        )));
    }
    let total: i64 = sizes.iter().sum();
    if total != ids.len() as i64 {
        return Err(Error::parse_global(format!(
            "nverts sums to {total} but simplices holds {} ids",
            ids.len()
        )));
    }
    if let Some(pos) = ids.iter().position(|&v| v <= 0) {
        return Err(Error::parse_global(format!(
            "simplices entry {} is {}, ids are 1-based",
            pos + 1,
            ids[pos]
        )));
    }
    let max_id = *ids.iter().max().expect("nonempty") as usize;

    let mut edges = Vec::with_capacity(sizes.len());
    let mut cursor = 0;
    for &s in &sizes {
        let mut edge: Vec<usize> = ids[cursor..cursor + s as usize]
            .iter()
            .map(|&v| v as usize - 1)
            .collect();
        cursor += s as usize;
        edge.sort_unstable();
        edge.dedup();
        edges.push(edge);
    }

    let node_labels: Vec<String> = match labels {
        Some(text) => {
            let list: Vec<String> = text.lines().map(|l| l.trim().to_string()).collect();
            // Trailing blank lines are not labels.
            let keep = list.iter().rposition(|l| !l.is_empty()).map_or(0, |p| p + 1);
            let mut list = list;
            list.truncate(keep);
            if list.len() < max_id {
                return Err(Error::parse_global(format!(
                    "labels name {} nodes but simplices reference node {max_id}",
                    list.len()
                )));
            }
            list
        }
        None => (1..=max_id).map(|i| i.to_string()).collect(),
    };
    let mut h = Hypergraph::new(node_labels, edges).map_err(|e| match e {
        Error::InvalidArgument(m) => Error::parse_global(m),
        other => other,
    })?;
    if options.dedupe_edges {
        h = h.dedupe_edges().0;
    }
    Ok(h)
}
