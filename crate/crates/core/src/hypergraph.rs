//! Hypergraph data model, synthetic generators and summary statistics.

use std::collections::{HashMap, HashSet};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bipartite::BipartiteGraph;
use crate::error::{Error, Result};

/// A hypergraph over `n_v` labelled nodes.
///
/// Hyperedges are stored as strictly increasing node-id lists. Duplicate
/// hyperedges are allowed (multi-set semantics).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    node_labels: Vec<String>,
    hyperedges: Vec<Vec<usize>>,
    edge_labels: Option<Vec<String>>,
}

impl Hypergraph {
    /// Builds a hypergraph, sorting each hyperedge and validating the
    /// model invariants.
    pub fn new(node_labels: Vec<String>, hyperedges: Vec<Vec<usize>>) -> Result<Self> {
        let n_v = node_labels.len();
        let mut seen = HashSet::with_capacity(n_v);
        for label in &node_labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::invalid(format!("duplicate node label {label:?}")));
            }
        }
        let mut edges = hyperedges;
        for (e, edge) in edges.iter_mut().enumerate() {
            if edge.is_empty() {
                return Err(Error::invalid(format!("hyperedge {e} is empty")));
            }
            edge.sort_unstable();
            if edge.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("hyperedge {e} repeats a node")));
            }
            if let Some(&last) = edge.last() {
                if last >= n_v {
                    return Err(Error::invalid(format!(
                        "hyperedge {e} references node {last} but only {n_v} nodes exist"
                    )));
                }
            }
        }
        Ok(Self {
            node_labels,
            hyperedges: edges,
            edge_labels: None,
        })
    }

    /// Builds a hypergraph with numeric labels `"0"`, `"1"`, ...
    pub fn from_edges(n_v: usize, hyperedges: Vec<Vec<usize>>) -> Result<Self> {
        Self::new((0..n_v).map(|i| i.to_string()).collect(), hyperedges)
    }

    /// Attaches hyperedge labels (one per hyperedge).
    pub fn with_edge_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.hyperedges.len() {
            return Err(Error::Dimension {
                expected: self.hyperedges.len(),
                got: labels.len(),
            });
        }
        self.edge_labels = Some(labels);
        Ok(self)
    }

    pub fn num_nodes(&self) -> usize {
        self.node_labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.hyperedges.len()
    }

    pub fn node_labels(&self) -> &[String] {
        &self.node_labels
    }

    pub fn node_label(&self, v: usize) -> &str {
        &self.node_labels[v]
    }

    pub fn hyperedges(&self) -> &[Vec<usize>] {
        &self.hyperedges
    }

    pub fn edge(&self, e: usize) -> &[usize] {
        &self.hyperedges[e]
    }

    pub fn edge_labels(&self) -> Option<&[String]> {
        self.edge_labels.as_deref()
    }

    /// Label of hyperedge `e`, falling back to its index.
    pub fn edge_label(&self, e: usize) -> String {
        match &self.edge_labels {
            Some(labels) => labels[e].clone(),
            None => e.to_string(),
        }
    }

    /// Node degrees d(v): number of hyperedges containing v.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_nodes()];
        for edge in &self.hyperedges {
            for &v in edge {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Σ_e |e|, the number of node–hyperedge incidences.
    pub fn num_incidences(&self) -> usize {
        self.hyperedges.iter().map(Vec::len).sum()
    }

    /// Incidence bipartite graph, nodes before hyperedges.
    pub fn bipartite(&self) -> BipartiteGraph {
        BipartiteGraph::from_hypergraph(self)
    }

    /// Removes exact-duplicate hyperedges, keeping first occurrences.
    /// Returns the new hypergraph and the number of hyperedges removed.
    pub fn dedupe_edges(&self) -> (Hypergraph, usize) {
        let mut seen: HashSet<&[usize]> = HashSet::with_capacity(self.num_edges());
        let mut keep = Vec::with_capacity(self.num_edges());
        for (e, edge) in self.hyperedges.iter().enumerate() {
            if seen.insert(edge.as_slice()) {
                keep.push(e);
            }
        }
        let removed = self.num_edges() - keep.len();
        (self.select_edges(&keep), removed)
    }

    fn select_edges(&self, keep: &[usize]) -> Hypergraph {
        Hypergraph {
            node_labels: self.node_labels.clone(),
            hyperedges: keep.iter().map(|&e| self.hyperedges[e].clone()).collect(),
            edge_labels: self
                .edge_labels
                .as_ref()
                .map(|labels| keep.iter().map(|&e| labels[e].clone()).collect()),
        }
    }

    /// Relabels node ids by `node_perm` (old id → new id) and reorders
    /// hyperedges by `edge_perm` (old index → new index).
    pub fn permuted(&self, node_perm: &[usize], edge_perm: &[usize]) -> Result<Hypergraph> {
        check_permutation(node_perm, self.num_nodes())?;
        check_permutation(edge_perm, self.num_edges())?;
        let mut labels = vec![String::new(); self.num_nodes()];
        for (old, &new) in node_perm.iter().enumerate() {
            labels[new] = self.node_labels[old].clone();
        }
        let mut edges = vec![Vec::new(); self.num_edges()];
        for (old, &new) in edge_perm.iter().enumerate() {
            edges[new] = self.hyperedges[old].iter().map(|&v| node_perm[v]).collect();
        }
        let mut h = Hypergraph::new(labels, edges)?;
        if let Some(el) = &self.edge_labels {
            let mut out = vec![String::new(); el.len()];
            for (old, &new) in edge_perm.iter().enumerate() {
                out[new] = el[old].clone();
            }
            h.edge_labels = Some(out);
        }
        Ok(h)
    }

    /// Serializes to the hyperedge-list text format, one hyperedge per line.
    ///
    /// Labels containing whitespace, commas or a leading `#` cannot be
    /// represented and are rejected.
    pub fn to_edge_list(&self) -> Result<String> {
        for label in &self.node_labels {
            if label.is_empty()
                || label.starts_with('#')
                || label.chars().any(|c| c == ',' || c.is_whitespace())
            {
                return Err(Error::invalid(format!(
                    "label {label:?} cannot be written in edge-list format"
                )));
            }
        }
        let mut out = String::new();
        for edge in &self.hyperedges {
            let line: Vec<&str> = edge.iter().map(|&v| self.node_labels[v].as_str()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        Ok(out)
    }

    /// Sub-hypergraph induced by the largest connected component of the
    /// incidence graph. Ties go to the component holding the smallest node
    /// id. Node and hyperedge ids are re-densified in ascending order.
    pub fn largest_component(&self) -> Hypergraph {
        let b = self.bipartite();
        let (labels, count) = b.components();
        if count <= 1 {
            return self.clone();
        }
        let mut size = vec![0usize; count];
        let mut min_node = vec![usize::MAX; count];
        for (i, &c) in labels.iter().enumerate() {
            size[c] += 1;
            if i < self.num_nodes() {
                min_node[c] = min_node[c].min(i);
            }
        }
        let best = (0..count)
            .max_by(|&a, &c| size[a].cmp(&size[c]).then(min_node[c].cmp(&min_node[a])))
            .expect("at least one component");

        let mut remap = vec![usize::MAX; self.num_nodes()];
        let mut node_labels = Vec::new();
        for v in 0..self.num_nodes() {
            if labels[v] == best {
                remap[v] = node_labels.len();
                node_labels.push(self.node_labels[v].clone());
            }
        }
        let n_v = self.num_nodes();
        let keep: Vec<usize> = (0..self.num_edges())
            .filter(|&e| labels[n_v + e] == best)
            .collect();
        Hypergraph {
            node_labels,
            hyperedges: keep
                .iter()
                .map(|&e| self.hyperedges[e].iter().map(|&v| remap[v]).collect())
                .collect(),
            edge_labels: self
                .edge_labels
                .as_ref()
                .map(|el| keep.iter().map(|&e| el[e].clone()).collect()),
        }
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: perm.len(),
        });
    }
    let mut hit = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut hit[p], true) {
            return Err(Error::invalid("not a permutation"));
        }
    }
    Ok(())
}

/// Sunflower hypergraph: a hub (node 0, label `v1`) shared by one hyperedge
/// per entry of `sizes`, each padded with fresh leaves numbered in edge order.
pub fn generate_sunflower(sizes: &[usize]) -> Result<Hypergraph> {
    if let Some(&bad) = sizes.iter().find(|&&s| s < 2) {
        return Err(Error::invalid(format!(
            "sunflower petal size must be at least 2, got {bad}"
        )));
    }
    let mut next = 1;
    let mut edges = Vec::with_capacity(sizes.len());
    for &s in sizes {
        let mut edge = Vec::with_capacity(s);
        edge.push(0);
        edge.extend(next..next + s - 1);
        next += s - 1;
        edges.push(edge);
    }
    let labels = (1..=next).map(|i| format!("v{i}")).collect();
    Hypergraph::new(labels, edges)?.with_edge_labels((1..=sizes.len()).map(|i| format!("e{i}")).collect())
}

/// Random hypergraph whose incidence graph is connected.
///
/// Hyperedge sizes are drawn uniformly from `min_size..=max_size` (capped at
/// `n_v`). Nodes missed by every hyperedge, and components other than the
/// first, are stitched in by extra size-2 hyperedges, so the returned edge
/// count may exceed `n_e`. Deterministic for a given seed.
pub fn random_connected(
    n_v: usize,
    n_e: usize,
    min_size: usize,
    max_size: usize,
    seed: u64,
) -> Result<Hypergraph> {
    if n_v == 0 || n_e == 0 || min_size == 0 || min_size > max_size {
        return Err(Error::invalid(
            "random hypergraph needs n_v, n_e >= 1 and 1 <= min_size <= max_size",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hi = max_size.min(n_v);
    let lo = min_size.min(hi);
    let mut edges: Vec<Vec<usize>> = (0..n_e)
        .map(|_| {
            let k = rng.gen_range(lo..=hi);
            sample(&mut rng, n_v, k).into_vec()
        })
        .collect();

    // Union-find over nodes; stitch each foreign root to a node of the first component.
    let mut parent: Vec<usize> = (0..n_v).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    for edge in &edges {
        for w in edge.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let anchor_root = find(&mut parent, edges[0][0]);
    let mut roots: HashMap<usize, usize> = HashMap::new();
    for v in 0..n_v {
        let r = find(&mut parent, v);
        if r != anchor_root {
            roots.entry(r).or_insert(v);
        }
    }
    let mut reps: Vec<usize> = roots.into_values().collect();
    reps.sort_unstable();
    for v in reps {
        let target = edges[0][0];
        if n_v == 1 {
            break;
        }
        edges.push(vec![v.min(target), v.max(target)]);
    }
    Hypergraph::from_edges(n_v, edges)
}

/// Size statistics of a hypergraph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DatasetStats {
    pub num_nodes: usize,
    pub num_hyperedges: usize,
    pub avg_cardinality: f64,
    pub max_cardinality: usize,
}

pub fn stats(h: &Hypergraph) -> Result<DatasetStats> {
    if h.num_edges() == 0 {
        return Err(Error::invalid("hypergraph has no hyperedges"));
    }
    Ok(DatasetStats {
        num_nodes: h.num_nodes(),
        num_hyperedges: h.num_edges(),
        avg_cardinality: h.num_incidences() as f64 / h.num_edges() as f64,
        max_cardinality: h.hyperedges().iter().map(Vec::len).max().unwrap_or(0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn new_sorts_and_validates() {
        let h = Hypergraph::new(labels(&["a", "b", "c"]), vec![vec![2, 0]]).unwrap();
        assert_eq!(h.edge(0), &[0, 2]);
        assert!(Hypergraph::new(labels(&["a", "a"]), vec![vec![0]]).is_err());
        assert!(Hypergraph::new(labels(&["a"]), vec![vec![0, 0]]).is_err());
        assert!(Hypergraph::new(labels(&["a"]), vec![vec![1]]).is_err());
        assert!(Hypergraph::new(labels(&["a"]), vec![vec![]]).is_err());
    }

    #[test]
    fn sunflower_layout() {
        let h = generate_sunflower(&[2, 3, 4, 5, 6, 7]).unwrap();
        assert_eq!(h.num_nodes(), 22);
        assert_eq!(h.num_edges(), 6);
        assert_eq!(h.edge(0), &[0, 1]);
        assert_eq!(h.edge(1), &[0, 2, 3]);
        assert_eq!(h.edge(5), &[0, 16, 17, 18, 19, 20, 21]);
        assert_eq!(h.node_label(21), "v22");
        assert_eq!(h.edge_label(5), "e6");

        let h = generate_sunflower(&[2]).unwrap();
        assert_eq!(h.hyperedges(), &[vec![0, 1]]);
        let h = generate_sunflower(&[3, 3]).unwrap();
        assert_eq!(h.num_nodes(), 5);
        assert_eq!(h.hyperedges(), &[vec![0, 1, 2], vec![0, 3, 4]]);

        assert!(matches!(
            generate_sunflower(&[2, 1]),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn sunflower_stats() {
        let s = stats(&generate_sunflower(&[2, 3, 4, 5, 6, 7]).unwrap()).unwrap();
        assert_eq!(s.num_nodes, 22);
        assert_eq!(s.num_hyperedges, 6);
        assert_eq!(s.avg_cardinality, 4.5);
        assert_eq!(s.max_cardinality, 7);
    }

    #[test]
    fn stats_rejects_empty() {
        let h = Hypergraph::from_edges(3, vec![]).unwrap();
        assert!(matches!(stats(&h), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn largest_component_picks_bigger_part() {
        let h = Hypergraph::new(labels(&["a", "b", "c", "d", "e"]), vec![vec![0, 1], vec![2, 3, 4]]).unwrap();
        let lc = h.largest_component();
        assert_eq!(lc.node_labels(), &labels(&["c", "d", "e"])[..]);
        assert_eq!(lc.hyperedges(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn largest_component_drops_isolated_node() {
        let h = Hypergraph::new(labels(&["w", "u", "v"]), vec![vec![1, 2]]).unwrap();
        let lc = h.largest_component();
        assert_eq!(lc.node_labels(), &labels(&["u", "v"])[..]);
        assert_eq!(lc.hyperedges(), &[vec![0, 1]]);
    }

    #[test]
    fn largest_component_tie_prefers_smallest_node() {
        let h = Hypergraph::from_edges(4, vec![vec![2, 3], vec![0, 1]]).unwrap();
        let lc = h.largest_component();
        assert_eq!(lc.node_labels(), &labels(&["0", "1"])[..]);
        assert_eq!(lc.num_edges(), 1);
    }

    #[test]
    fn largest_component_of_connected_is_identity() {
        let h = generate_sunflower(&[2, 3]).unwrap();
        assert_eq!(h.largest_component(), h);
    }

    #[test]
    fn dedupe_keeps_first() {
        let h = Hypergraph::from_edges(3, vec![vec![0, 1], vec![1, 2], vec![1, 0]]).unwrap();
        let (d, removed) = h.dedupe_edges();
        assert_eq!(removed, 1);
        assert_eq!(d.hyperedges(), &[vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn random_connected_is_connected() {
        for seed in 0..50 {
            let h = random_connected(12, 5, 1, 4, seed).unwrap();
            assert!(h.bipartite().is_connected(), "seed {seed}");
            assert!(h.num_edges() >= 5);
        }
    }

    #[test]
    fn permutation_moves_labels_with_ids() {
        let h = generate_sunflower(&[2, 3]).unwrap();
        let p = h.permuted(&[3, 2, 1, 0], &[1, 0]).unwrap();
        assert_eq!(p.node_label(3), "v1");
        assert_eq!(p.edge(1), &[2, 3]);
        assert_eq!(p.edge_label(1), "e1");
        assert!(h.permuted(&[0, 0, 1, 2], &[0, 1]).is_err());
    }
}
