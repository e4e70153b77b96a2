//! Node–edge baseline centralities used for comparison.
//!
//! All three alternate between a node vector `x` and an edge vector `y`
//! through the `n_v x n_e` incidence matrix `B`, renormalizing to unit
//! Euclidean norm after every half step:
//!
//! | model  | node update                  | edge update                       |
//! |--------|------------------------------|-----------------------------------|
//! | Linear | `x = B y`                    | `y = B^T x`                       |
//! | Max    | `x = (B y^[p])^[1/p]`        | `y = B^T x`                       |
//! | LogExp | `x = B y`                    | `y = exp(B^T log x)` (optionally divided by `|e|` in the exponent) |
//!
//! Linear is the leading singular pair of `B`, i.e. eigenvector centrality
//! of the clique expansion `B B^T` and of the line graph `B^T B`. The Max
//! p-mean approaches the best incident edge score as `p` grows. LogExp
//! scores an edge by the product (or geometric mean) of its members, so a
//! single weak member drags the whole edge down.

use serde::{Deserialize, Serialize};

use crate::bipartite::BipartiteGraph;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::scalar::{normalize2, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum LogExpMode {
    /// `y_e ∝ (prod_{v in e} x_v)^(1/|e|)`.
    #[default]
    Geometric,
    /// `y_e ∝ prod_{v in e} x_v`.
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MappingModel<T> {
    Linear,
    Max { p: T },
    LogExp { mode: LogExpMode },
}

impl<T: Scalar> MappingModel<T> {
    pub fn max_default() -> Self {
        MappingModel::Max { p: T::of(10.0) }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MappingModel::Linear => "linear",
            MappingModel::Max { .. } => "max",
            MappingModel::LogExp { .. } => "logexp",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaselineConfig<T> {
    /// Relative infinity-norm change of both vectors at which to stop.
    pub tol: T,
    pub max_iter: usize,
}

impl<T: Scalar> Default for BaselineConfig<T> {
    fn default() -> Self {
        Self {
            tol: T::of(1e-8),
            max_iter: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineResult<T> {
    pub model: MappingModel<T>,
    pub x_nodes: Vec<T>,
    pub y_edges: Vec<T>,
    pub iterations: usize,
    pub converged: bool,
}

/// `out_v = sum_{e ∋ v} f(y_e)` using the bipartite adjacency.
fn node_sums<T: Scalar>(b: &BipartiteGraph, y: &[T], f: impl Fn(T) -> T) -> Vec<T> {
    let n_v = b.num_nodes();
    (0..n_v)
        .map(|v| {
            b.neighbors(v)
                .iter()
                .fold(T::zero(), |acc, &e| acc + f(y[e - n_v]))
        })
        .collect()
}

/// `out_e = sum_{v ∈ e} f(x_v)`.
fn edge_sums<T: Scalar>(b: &BipartiteGraph, x: &[T], f: impl Fn(T) -> T) -> Vec<T> {
    let n_v = b.num_nodes();
    (0..b.num_edges())
        .map(|e| b.neighbors(n_v + e).iter().fold(T::zero(), |acc, &v| acc + f(x[v])))
        .collect()
}

/// Scaled p-mean over incident edges: `m (sum (y_e / m)^p)^(1/p)` with `m`
/// the largest incident score, which cannot overflow or underflow to zero.
fn node_pmeans<T: Scalar>(b: &BipartiteGraph, y: &[T], p: T) -> Vec<T> {
    let n_v = b.num_nodes();
    (0..n_v)
        .map(|v| {
            let nb = b.neighbors(v);
            let m = nb.iter().map(|&e| y[e - n_v]).fold(T::zero(), T::max);
            if m <= T::zero() {
                return T::zero();
            }
            let s = nb.iter().fold(T::zero(), |acc, &e| acc + (y[e - n_v] / m).powf(p));
            m * s.powf(p.recip())
        })
        .collect()
}

fn relative_change<T: Scalar>(new: &[T], old: &[T]) -> T {
    let scale = new.iter().fold(T::zero(), |a, &v| a.max(v.abs()));
    let diff = new
        .iter()
        .zip(old)
        .fold(T::zero(), |a, (&u, &v)| a.max((u - v).abs()));
    if scale > T::zero() {
        diff / scale
    } else {
        diff
    }
}

/// Runs a baseline model to convergence.
pub fn th_centrality<T: Scalar>(
    h: &Hypergraph,
    model: MappingModel<T>,
    cfg: &BaselineConfig<T>,
) -> Result<BaselineResult<T>> {
    if !(cfg.tol > T::zero()) {
        return Err(Error::invalid("tol must be positive"));
    }
    if cfg.max_iter == 0 {
        return Err(Error::invalid("max_iter must be at least 1"));
    }
    if let MappingModel::Max { p } = model {
        if !(p > T::one()) || !p.is_finite() {
            return Err(Error::invalid(format!("Max model needs finite p > 1, got {p}")));
        }
    }
    let b = h.bipartite();
    let (_, components) = b.components();
    if components != 1 {
        return Err(Error::NotConnected { components });
    }
    let n_v = b.num_nodes();
    let n_e = b.num_edges();
    let mut x = vec![T::one(); n_v];
    let mut y = vec![T::one(); n_e];
    normalize2(&mut x);
    normalize2(&mut y);
    let sizes: Vec<T> = (0..n_e).map(|e| T::of_usize(b.degree(n_v + e))).collect();

    let mut change = T::infinity();
    for k in 1..=cfg.max_iter {
        let mut xn = match model {
            MappingModel::Max { p } => node_pmeans(&b, &y, p),
            _ => node_sums(&b, &y, |v| v),
        };
        normalize2(&mut xn);
        let mut yn = match model {
            MappingModel::LogExp { mode } => {
                let mut logs = edge_sums(&b, &xn, |v| v.ln());
                if mode == LogExpMode::Geometric {
                    for (l, &s) in logs.iter_mut().zip(&sizes) {
                        *l = *l / s;
                    }
                }
                let top = logs.iter().fold(T::neg_infinity(), |a, &v| a.max(v));
                logs.into_iter().map(|l| (l - top).exp()).collect()
            }
            _ => edge_sums(&b, &xn, |v| v),
        };
        normalize2(&mut yn);

        if xn.iter().chain(&yn).any(|v| !v.is_finite() || !(*v > T::zero())) {
            return Err(Error::NoConvergence {
                iterations: k,
                lower: f64::NAN,
                upper: f64::NAN,
                change: f64::NAN,
            });
        }
        change = relative_change(&xn, &x).max(relative_change(&yn, &y));
        x = xn;
        y = yn;
        if change <= cfg.tol {
            return Ok(BaselineResult {
                model,
                x_nodes: x,
                y_edges: y,
                iterations: k,
                converged: true,
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: cfg.max_iter,
        lower: f64::NAN,
        upper: f64::NAN,
        change: change.as_f64(),
    })
}

/// Residuals certifying a Linear result as the leading singular pair of `B`:
/// `|B B^T x - s x|_inf` and `|B^T B y - s' y|_inf` with `s`, `s'` the
/// Rayleigh quotients.
pub fn linear_fixed_point_check<T: Scalar>(h: &Hypergraph, result: &BaselineResult<T>) -> Result<(T, T)> {
    if result.model != MappingModel::Linear {
        return Err(Error::invalid(format!(
            "fixed-point check applies to the linear model, not {}",
            result.model.name()
        )));
    }
    let b = h.bipartite();
    let (x, y) = (&result.x_nodes, &result.y_edges);
    if x.len() != b.num_nodes() || y.len() != b.num_edges() {
        return Err(Error::Dimension {
            expected: b.num_nodes() + b.num_edges(),
            got: x.len() + y.len(),
        });
    }
    let id = |v: T| v;
    let bbt_x = node_sums(&b, &edge_sums(&b, x, id), id);
    let btb_y = edge_sums(&b, &node_sums(&b, y, id), id);
    let rayleigh_residual = |v: &[T], av: &[T]| -> T {
        let num = v.iter().zip(av).fold(T::zero(), |a, (&p, &q)| a + p * q);
        let den = v.iter().fold(T::zero(), |a, &p| a + p * p);
        let s = num / den;
        v.iter()
            .zip(av)
            .fold(T::zero(), |a, (&p, &q)| a.max((q - s * p).abs()))
    };
    Ok((rayleigh_residual(x, &bbt_x), rayleigh_residual(y, &btb_y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::generate_sunflower;

    fn models() -> Vec<MappingModel<f64>> {
        vec![
            MappingModel::Linear,
            MappingModel::max_default(),
            MappingModel::LogExp { mode: LogExpMode::Geometric },
        ]
    }

    #[test]
    fn single_edge_uniform() {
        let h = Hypergraph::from_edges(2, vec![vec![0, 1]]).unwrap();
        let s = 1.0 / 2f64.sqrt();
        for m in models().into_iter().chain([MappingModel::LogExp { mode: LogExpMode::Product }]) {
            let r = th_centrality(&h, m, &BaselineConfig::default()).unwrap();
            assert!((r.x_nodes[0] - s).abs() < 1e-15 && (r.x_nodes[1] - s).abs() < 1e-15);
            assert!((r.y_edges[0] - 1.0).abs() < 1e-15);
            assert!(r.converged);
        }
    }

    #[test]
    fn sunflower_hub_first() {
        let h = generate_sunflower(&[2, 3, 4, 5, 6, 7]).unwrap();
        for m in models() {
            let r = th_centrality(&h, m, &BaselineConfig::default()).unwrap();
            let best = (0..r.x_nodes.len())
                .max_by(|&a, &b| r.x_nodes[a].partial_cmp(&r.x_nodes[b]).unwrap())
                .unwrap();
            assert_eq!(best, 0, "{}", m.name());
            assert!(r.x_nodes.iter().chain(&r.y_edges).all(|&v| v > 0.0));
        }
    }

    #[test]
    fn linear_certified() {
        let h = generate_sunflower(&[2, 3, 4, 5, 6, 7]).unwrap();
        let cfg = BaselineConfig { tol: 1e-12, max_iter: 5000 };
        let r = th_centrality(&h, MappingModel::Linear, &cfg).unwrap();
        let (rn, re) = linear_fixed_point_check(&h, &r).unwrap();
        assert!(rn <= 1e-8 && re <= 1e-8, "{rn} {re}");

        let mut bad = r.clone();
        bad.x_nodes[3] += 0.1;
        normalize2(&mut bad.x_nodes);
        assert!(linear_fixed_point_check(&h, &bad).unwrap().0 > 1e-3);

        let max = th_centrality(&h, MappingModel::<f64>::max_default(), &BaselineConfig::default()).unwrap();
        assert!(matches!(linear_fixed_point_check(&h, &max), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn exact_single_edge_residuals() {
        let h = Hypergraph::from_edges(2, vec![vec![0, 1]]).unwrap();
        let r = th_centrality(&h, MappingModel::<f64>::Linear, &BaselineConfig::default()).unwrap();
        let (a, b) = linear_fixed_point_check(&h, &r).unwrap();
        assert!(a <= 1e-15 && b <= 1e-15);
    }

    #[test]
    fn rejects_bad_inputs() {
        let h = Hypergraph::from_edges(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(matches!(
            th_centrality(&h, MappingModel::<f64>::Linear, &BaselineConfig::default()),
            Err(Error::NotConnected { .. })
        ));
        let h = generate_sunflower(&[2, 3]).unwrap();
        assert!(th_centrality(&h, MappingModel::Max { p: 1.0f64 }, &BaselineConfig::default()).is_err());
        let cfg = BaselineConfig { tol: 1e-14, max_iter: 2 };
        assert!(matches!(
            th_centrality(&h, MappingModel::<f64>::Linear, &cfg),
            Err(Error::NoConvergence { iterations: 2, .. })
        ));
    }

    #[test]
    fn pmean_is_scaled() {
        let h = Hypergraph::from_edges(2, vec![vec![0, 1], vec![1]]).unwrap();
        let b = h.bipartite();
        let y = [1e-300, 2e-300];
        let m = node_pmeans(&b, &y, 200.0);
        assert!(m[0] > 0.0 && m[1] >= 2e-300);
    }
}
