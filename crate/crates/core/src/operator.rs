//! The two-steps tensor of an incidence bipartite graph.
//!
//! The tensor has `a[i][j][k] = 1` exactly when `i ~ j ~ k` is a walk of
//! length two. It is applied implicitly through two sparse traversals:
//!
//! ```text
//! m = M x                 m_j = sum_{k ~ j} x_k
//! y = M (x .* m)          y_i = sum_{j ~ i} x_j m_j
//! ```
//!
//! which costs O(links) per application instead of O(sum_j deg(j)^2) for the
//! materialized tensor. A dense materialization is kept for small graphs as
//! an independent oracle.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::bipartite::BipartiteGraph;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Vertex count above which `apply` splits output indices across threads.
const PARALLEL_THRESHOLD: usize = 1 << 14;

/// Largest dimension accepted by [`materialize_dense`].
pub const DENSE_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy)]
pub struct TwoStepsOperator<'g> {
    graph: &'g BipartiteGraph,
}

impl<'g> TwoStepsOperator<'g> {
    pub fn new(graph: &'g BipartiteGraph) -> Self {
        Self { graph }
    }

    pub fn graph(&self) -> &'g BipartiteGraph {
        self.graph
    }

    pub fn dim(&self) -> usize {
        self.graph.len()
    }

    /// Computes `(A x^2)_i = sum_{j,k} a_ijk x_j x_k`.
    pub fn apply<T: Scalar>(&self, x: &[T]) -> Result<Vec<T>> {
        let n = self.dim();
        let mut scratch = vec![T::zero(); n];
        let mut out = vec![T::zero(); n];
        self.apply_into(x, &mut scratch, &mut out)?;
        Ok(out)
    }

    /// Allocation-free form of [`apply`](Self::apply). `scratch` receives
    /// `x .* (M x)`.
    ///
    /// Every output entry is reduced in ascending neighbor order regardless
    /// of threading, so results are bit-identical across runs.
    pub fn apply_into<T: Scalar>(&self, x: &[T], scratch: &mut [T], out: &mut [T]) -> Result<()> {
        let n = self.dim();
        for len in [x.len(), scratch.len(), out.len()] {
            if len != n {
                return Err(Error::Dimension { expected: n, got: len });
            }
        }
        let g = self.graph;
        let weighted_sum = |i: usize| -> T {
            g.neighbors(i).iter().fold(T::zero(), |acc, &j| acc + x[j])
        };
        if n >= PARALLEL_THRESHOLD {
            scratch
                .par_iter_mut()
                .enumerate()
                .for_each(|(j, s)| *s = x[j] * weighted_sum(j));
            let s: &[T] = scratch;
            out.par_iter_mut().enumerate().for_each(|(i, o)| {
                *o = g.neighbors(i).iter().fold(T::zero(), |acc, &j| acc + s[j]);
            });
        } else {
            for j in 0..n {
                scratch[j] = x[j] * weighted_sum(j);
            }
            for i in 0..n {
                out[i] = g.neighbors(i).iter().fold(T::zero(), |acc, &j| acc + scratch[j]);
            }
        }
        Ok(())
    }

    /// Number of two-steps walks starting at each vertex:
    /// `sum_{j ~ i} deg(j)`, exact in integers.
    pub fn walk_counts(&self) -> Vec<u64> {
        let g = self.graph;
        (0..g.len())
            .map(|i| g.neighbors(i).iter().map(|&j| g.degree(j) as u64).sum())
            .collect()
    }
}

/// Fully materialized 0/1 tensor, index `(i * n + j) * n + k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseTensor {
    n: usize,
    entries: Vec<u8>,
}

impl DenseTensor {
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u8 {
        self.entries[(i * self.n + j) * self.n + k]
    }

    pub fn nonzeros(&self) -> Vec<(usize, usize, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.get(i, j, k) != 0 {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    /// Literal triple-loop evaluation of `sum_{j,k} a_ijk x_j x_k`.
    pub fn apply<T: Scalar>(&self, x: &[T]) -> Result<Vec<T>> {
        let n = self.n;
        if x.len() != n {
            return Err(Error::Dimension { expected: n, got: x.len() });
        }
        let mut y = vec![T::zero(); n];
        for (i, yi) in y.iter_mut().enumerate() {
            let mut acc = T::zero();
            for j in 0..n {
                for k in 0..n {
                    if self.get(i, j, k) != 0 {
                        acc = acc + x[j] * x[k];
                    }
                }
            }
            *yi = acc;
        }
        Ok(y)
    }
}

/// Materializes the two-steps tensor. Refuses graphs with more than
/// [`DENSE_LIMIT`] vertices.
pub fn materialize_dense(b: &BipartiteGraph) -> Result<DenseTensor> {
    let n = b.len();
    if n > DENSE_LIMIT {
        return Err(Error::TooLarge {
            what: "dense tensor dimension",
            size: n as u128,
            limit: DENSE_LIMIT as u128,
        });
    }
    let mut entries = vec![0u8; n * n * n];
    for i in 0..n {
        for &j in b.neighbors(i) {
            for &k in b.neighbors(j) {
                entries[(i * n + j) * n + k] = 1;
            }
        }
    }
    Ok(DenseTensor { n, entries })
}

/// Free-function form of [`DenseTensor::apply`].
pub fn dense_apply<T: Scalar>(t: &DenseTensor, x: &[T]) -> Result<Vec<T>> {
    t.apply(x)
}

/// Sparse representative matrix: `m_ij` counts the occurrences of `j` in the
/// two non-root positions of the walks `i ~ a ~ b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentativeMatrix {
    rows: Vec<Vec<(usize, u64)>>,
}

impl RepresentativeMatrix {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Nonzeros of row `i`, sorted by column.
    pub fn row(&self, i: usize) -> &[(usize, u64)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.rows[i]
            .binary_search_by_key(&j, |&(c, _)| c)
            .map_or(0, |p| self.rows[i][p].1)
    }

    pub fn has_positive_diagonal(&self) -> bool {
        (0..self.dim()).all(|i| self.get(i, i) > 0)
    }

    /// Strong connectivity of the directed graph of nonzeros, checked by a
    /// forward and a reverse breadth-first search from vertex 0.
    pub fn is_irreducible(&self) -> bool {
        let n = self.dim();
        if n == 0 {
            return false;
        }
        // A 1x1 matrix is irreducible only when its entry is nonzero.
        if n == 1 {
            return self.get(0, 0) > 0;
        }
        let mut reverse: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, _) in row {
                reverse[j].push(i);
            }
        }
        let forward: Vec<Vec<usize>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&(j, _)| j).collect())
            .collect();
        let reach = |adj: &[Vec<usize>]| -> bool {
            let mut seen = vec![false; n];
            seen[0] = true;
            let mut count = 1;
            let mut queue = VecDeque::from([0usize]);
            while let Some(i) = queue.pop_front() {
                for &j in &adj[i] {
                    if !seen[j] {
                        seen[j] = true;
                        count += 1;
                        queue.push_back(j);
                    }
                }
            }
            count == n
        };
        reach(&forward) && reach(&reverse)
    }
}

pub fn representative_matrix(b: &BipartiteGraph) -> RepresentativeMatrix {
    let n = b.len();
    let mut acc = vec![0u64; n];
    let mut touched = Vec::new();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        for &j in b.neighbors(i) {
            for &k in b.neighbors(j) {
                for c in [j, k] {
                    if acc[c] == 0 {
                        touched.push(c);
                    }
                    acc[c] += 1;
                }
            }
        }
        touched.sort_unstable();
        rows.push(touched.iter().map(|&c| (c, acc[c])).collect());
        for &c in &touched {
            acc[c] = 0;
        }
        touched.clear();
    }
    RepresentativeMatrix { rows }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PrimitivityReport {
    pub weakly_irreducible: bool,
    pub positive_diagonal: bool,
    pub weakly_primitive: bool,
}

/// Weak irreducibility and primitivity of the two-steps tensor.
///
/// Works on the sparsity pattern of the representative matrix without
/// building it: `m_ij > 0` iff `j ~ i` or `j` is reachable from `i` in two
/// steps, and `m_ii = deg(i)`. Each vertex is expanded
/// as a walk midpoint at most once, keeping the cost linear in the links.
pub fn check_weak_primitivity(b: &BipartiteGraph) -> PrimitivityReport {
    let n = b.len();
    if n == 0 {
        return PrimitivityReport {
            weakly_irreducible: false,
            positive_diagonal: false,
            weakly_primitive: false,
        };
    }
    let reach_all = || -> bool {
        let mut seen = vec![false; n];
        let mut expanded = vec![false; n];
        seen[0] = true;
        let mut count = 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for &j in b.neighbors(i) {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    queue.push_back(j);
                }
                if !std::mem::replace(&mut expanded[j], true) {
                    for &k in b.neighbors(j) {
                        if !seen[k] {
                            seen[k] = true;
                            count += 1;
                            queue.push_back(k);
                        }
                    }
                }
            }
        }
        count == n
    };
    if n == 1 {
        let positive = b.degree(0) > 0;
        return PrimitivityReport {
            weakly_irreducible: positive,
            positive_diagonal: positive,
            weakly_primitive: positive,
        };
    }
    // The pattern is symmetric, so forward reachability of every vertex
    // already implies strong connectivity.
    let weakly_irreducible = reach_all();
    let positive_diagonal = (0..n).all(|i| b.degree(i) > 0);
    PrimitivityReport {
        weakly_irreducible,
        positive_diagonal,
        weakly_primitive: weakly_irreducible && positive_diagonal,
    }
}
