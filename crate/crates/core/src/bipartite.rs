//! Incidence bipartite graph of a hypergraph in compressed adjacency form.
//!
//! Vertex `v < n_v` is a hypergraph node, vertex `n_v + e` is hyperedge `e`.

use std::collections::VecDeque;

use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n_v: usize,
    n_e: usize,
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl BipartiteGraph {
    pub fn from_hypergraph(h: &Hypergraph) -> Self {
        let n_v = h.num_nodes();
        let n_e = h.num_edges();
        let n = n_v + n_e;

        let mut degree = vec![0usize; n];
        for (e, edge) in h.hyperedges().iter().enumerate() {
            degree[n_v + e] = edge.len();
            for &v in edge {
                degree[v] += 1;
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0; offsets[n]];
        // Hyperedges are visited in ascending order and are themselves sorted,
        // so every adjacency list comes out sorted.
        for (e, edge) in h.hyperedges().iter().enumerate() {
            for &v in edge {
                targets[cursor[v]] = n_v + e;
                cursor[v] += 1;
                targets[cursor[n_v + e]] = v;
                cursor[n_v + e] += 1;
            }
        }
        Self {
            n_v,
            n_e,
            offsets,
            targets,
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.n_v
    }

    pub fn num_edges(&self) -> usize {
        self.n_e
    }

    /// Total vertex count `n_v + n_e`.
    pub fn len(&self) -> usize {
        self.n_v + self.n_e
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of undirected bipartite edges (node–hyperedge incidences).
    pub fn num_links(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    #[inline]
    pub fn degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    /// Adjacency lists, one per vertex.
    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        (0..self.len()).map(|i| self.neighbors(i).to_vec()).collect()
    }

    /// True iff breadth-first search from vertex 0 reaches every vertex.
    pub fn is_connected(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut reached = 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for &j in self.neighbors(i) {
                if !seen[j] {
                    seen[j] = true;
                    reached += 1;
                    queue.push_back(j);
                }
            }
        }
        reached == n
    }

    /// Connected-component label per vertex (labels in order of first vertex)
    /// and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.len();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s);
            while let Some(i) = queue.pop_front() {
                for &j in self.neighbors(i) {
                    if label[j] == usize::MAX {
                        label[j] = count;
                        queue.push_back(j);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }
}
