//! Expansion-tree capacities.
//!
//! The linear capacity `L_t = A L_{t-1}` counts walks of length `t`; its
//! normalized limit is ordinary eigenvector centrality, but only on
//! non-bipartite graphs, where the power sequence does not oscillate. The
//! incidence graph of a hypergraph is always bipartite, which is why the
//! two-steps recursion
//!
//! ```text
//! C_0(i) = 1,    C_t(i) = sqrt( sum_{i ~ j ~ k} C_{t-1}(j) C_{t-1}(k) )
//! ```
//!
//! is used instead. `C_t` is exactly the unnormalized power iterate of the
//! two-steps tensor from the all-ones vector, so `C_t / |C_t|` converges to
//! the centrality vector.
//!
//! Capacities are computed by the vectorized recursion. The literal tree is
//! only built for small depths, as an oracle.

use crate::bipartite::BipartiteGraph;
use crate::error::{Error, Result};
use crate::operator::TwoStepsOperator;
use crate::scalar::{max_abs_diff, normalize2, Scalar};
use crate::solver::{htec_bipartite, SolverConfig};

/// Node budget for [`enumerate_expansion_tree`].
pub const TREE_NODE_LIMIT: u128 = 1_000_000;
/// Deepest tree [`enumerate_expansion_tree`] will build.
pub const TREE_DEPTH_LIMIT: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct CapacityVector<T> {
    pub depth: usize,
    pub values: Vec<T>,
}

impl<T: Scalar> CapacityVector<T> {
    /// `values / |values|_2`.
    pub fn normalized(&self) -> Vec<T> {
        let mut u = self.values.clone();
        normalize2(&mut u);
        u
    }
}

/// Geometric capacities `C_0 ..= C_t`.
pub fn geometric_capacity_sequence<T: Scalar>(b: &BipartiteGraph, t: usize) -> Vec<CapacityVector<T>> {
    let n = b.len();
    let op = TwoStepsOperator::new(b);
    let mut out = Vec::with_capacity(t + 1);
    let mut cur = vec![T::one(); n];
    let mut scratch = vec![T::zero(); n];
    let mut next = vec![T::zero(); n];
    out.push(CapacityVector { depth: 0, values: cur.clone() });
    for depth in 1..=t {
        op.apply_into(&cur, &mut scratch, &mut next)
            .expect("dimensions fixed by construction");
        for (c, &v) in cur.iter_mut().zip(&next) {
            *c = v.sqrt();
        }
        out.push(CapacityVector { depth, values: cur.clone() });
    }
    out
}

/// Geometric capacity `C_t`.
pub fn geometric_capacity<T: Scalar>(b: &BipartiteGraph, t: usize) -> CapacityVector<T> {
    geometric_capacity_sequence(b, t).pop().expect("sequence holds C_0")
}

/// Linear capacity `L_t` of a simple graph given as symmetric adjacency lists.
pub fn linear_capacity<T: Scalar>(adjacency: &[Vec<usize>], t: usize) -> Result<CapacityVector<T>> {
    let n = adjacency.len();
    for (i, row) in adjacency.iter().enumerate() {
        for &j in row {
            if j >= n {
                return Err(Error::invalid(format!("vertex {i} lists neighbor {j} >= {n}")));
            }
            if !adjacency[j].contains(&i) {
                return Err(Error::invalid(format!("adjacency not symmetric at ({i}, {j})")));
            }
        }
    }
    let mut cur = vec![T::one(); n];
    for _ in 0..t {
        cur = adjacency
            .iter()
            .map(|row| row.iter().fold(T::zero(), |acc, &j| acc + cur[j]))
            .collect();
    }
    Ok(CapacityVector { depth: t, values: cur })
}

/// A two-steps expansion tree: for every walk `root ~ j ~ k` the root holds
/// the pair of subtrees rooted at `j` and `k`, one level shallower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionTree {
    pub root: usize,
    pub depth: usize,
    pub children: Vec<(ExpansionTree, ExpansionTree)>,
}

impl ExpansionTree {
    pub fn node_count(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(|(l, r)| l.node_count() + r.node_count())
            .sum::<usize>()
    }
}

/// Tree sizes per (vertex, depth) without building anything, saturating.
fn tree_sizes(b: &BipartiteGraph, t: usize) -> Vec<u128> {
    let n = b.len();
    let mut size = vec![1u128; n];
    for _ in 0..t {
        size = (0..n)
            .map(|i| {
                let mut total: u128 = 1;
                for &j in b.neighbors(i) {
                    for &k in b.neighbors(j) {
                        total = total.saturating_add(size[j].saturating_add(size[k]));
                    }
                }
                total
            })
            .collect();
    }
    size
}

/// Builds the depth-`t` expansion tree literally, children ordered by
/// `(j, k)` ascending.
pub fn enumerate_expansion_tree(b: &BipartiteGraph, root: usize, t: usize) -> Result<ExpansionTree> {
    if root >= b.len() {
        return Err(Error::invalid(format!("root {root} out of range")));
    }
    if t > TREE_DEPTH_LIMIT {
        return Err(Error::TooLarge {
            what: "expansion tree depth",
            size: t as u128,
            limit: TREE_DEPTH_LIMIT as u128,
        });
    }
    let size = tree_sizes(b, t)[root];
    if size > TREE_NODE_LIMIT {
        return Err(Error::TooLarge {
            what: "expansion tree node count",
            size,
            limit: TREE_NODE_LIMIT,
        });
    }
    Ok(build_tree(b, root, t))
}

fn build_tree(b: &BipartiteGraph, root: usize, depth: usize) -> ExpansionTree {
    let mut children = Vec::new();
    if depth > 0 {
        for &j in b.neighbors(root) {
            for &k in b.neighbors(j) {
                children.push((build_tree(b, j, depth - 1), build_tree(b, k, depth - 1)));
            }
        }
    }
    ExpansionTree { root, depth, children }
}

/// Structural capacity of a literal tree: leaves are 1, an internal node is
/// the square root of the sum of child-pair products.
pub fn tree_capacity<T: Scalar>(tree: &ExpansionTree) -> T {
    if tree.depth == 0 {
        return T::one();
    }
    tree.children
        .iter()
        .map(|(l, r)| tree_capacity::<T>(l) * tree_capacity::<T>(r))
        .fold(T::zero(), |a, v| a + v)
        .sqrt()
}

/// `|C_t / |C_t|_2 - x|_inf` for `t = 0 ..= t_max`, with `x` the converged
/// centrality vector.
///
/// The recursion is homogeneous of degree one, so `C_t / |C_t|` is tracked
/// by renormalizing after every step; raw capacities grow like
/// `rho^(t/2)` and would overflow on dense inputs.
pub fn capacity_convergence<T: Scalar>(
    b: &BipartiteGraph,
    t_max: usize,
    cfg: &SolverConfig<T>,
) -> Result<Vec<T>> {
    if t_max == 0 {
        return Err(Error::invalid("t_max must be at least 1"));
    }
    let x = htec_bipartite(b, cfg)?.vector();
    let n = b.len();
    let op = TwoStepsOperator::new(b);
    let mut u = vec![T::one(); n];
    normalize2(&mut u);
    let mut scratch = vec![T::zero(); n];
    let mut next = vec![T::zero(); n];
    let mut gaps = Vec::with_capacity(t_max + 1);
    gaps.push(max_abs_diff(&u, &x));
    for _ in 0..t_max {
        op.apply_into(&u, &mut scratch, &mut next)?;
        for (c, &v) in u.iter_mut().zip(&next) {
            *c = v.sqrt();
        }
        normalize2(&mut u);
        gaps.push(max_abs_diff(&u, &x));
    }
    Ok(gaps)
}
