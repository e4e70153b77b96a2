//! Power iteration for the Perron eigenpair of the two-steps tensor.
//!
//! Each step maps `x` to `sqrt(A x^2)` and rescales to unit Euclidean norm.
//! The ratios `(A x^2)_i / x_i^2` at the current iterate bracket the
//! spectral radius from below and above; iteration stops when the relative
//! width of that bracket drops to `tol`.

use crate::bipartite::BipartiteGraph;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::operator::TwoStepsOperator;
use crate::scalar::{norm2, normalize2, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig<T> {
    /// Relative bound gap `(upper - lower) / lower` at which to stop.
    pub tol: T,
    pub max_iter: usize,
    /// Record the per-iteration `(lower, upper)` bounds.
    pub record_trace: bool,
    /// Record every normalized iterate (memory grows with `n * iterations`).
    pub record_iterates: bool,
    /// Positive start vector; the uniform vector when `None`.
    pub start: Option<Vec<T>>,
}

impl<T: Scalar> Default for SolverConfig<T> {
    fn default() -> Self {
        Self {
            tol: T::of(1e-10),
            max_iter: 1000,
            record_trace: false,
            record_iterates: false,
            start: None,
        }
    }
}

impl<T: Scalar> SolverConfig<T> {
    pub fn with_tol(mut self, tol: T) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn with_trace(mut self) -> Self {
        self.record_trace = true;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.tol > T::zero()) {
            return Err(Error::invalid(format!("tol must be positive, got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(Error::invalid("max_iter must be at least 1"));
        }
        Ok(())
    }
}

/// Converged eigenpair split into node and hyperedge scores.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityResult<T> {
    /// Midpoint of the final bounds.
    pub rho: T,
    pub lower: T,
    pub upper: T,
    pub x_nodes: Vec<T>,
    pub x_edges: Vec<T>,
    /// Number of tensor applications.
    pub iterations: usize,
    pub residual_inf: T,
    pub trace: Option<Vec<(T, T)>>,
    /// Normalized iterates `x^(0), x^(1), ...` when requested.
    pub iterates: Option<Vec<Vec<T>>>,
}

impl<T: Scalar> CentralityResult<T> {
    /// Node scores followed by hyperedge scores.
    pub fn vector(&self) -> Vec<T> {
        let mut v = self.x_nodes.clone();
        v.extend_from_slice(&self.x_edges);
        v
    }
}

/// Hypergraph two-steps eigenvector centrality.
pub fn htec<T: Scalar>(h: &Hypergraph, cfg: &SolverConfig<T>) -> Result<CentralityResult<T>> {
    htec_bipartite(&h.bipartite(), cfg)
}

/// [`htec`] on a prebuilt incidence graph.
pub fn htec_bipartite<T: Scalar>(
    b: &BipartiteGraph,
    cfg: &SolverConfig<T>,
) -> Result<CentralityResult<T>> {
    cfg.validate()?;
    let (_, components) = b.components();
    if components != 1 {
        return Err(Error::NotConnected { components });
    }
    let n = b.len();
    let op = TwoStepsOperator::new(b);

    let mut x = match &cfg.start {
        Some(s) => {
            if s.len() != n {
                return Err(Error::Dimension { expected: n, got: s.len() });
            }
            if s.iter().any(|&v| !(v > T::zero()) || !v.is_finite()) {
                return Err(Error::invalid("start vector must be finite and positive"));
            }
            s.clone()
        }
        None => vec![T::one(); n],
    };
    normalize2(&mut x);

    let mut y = vec![T::zero(); n];
    let mut scratch = vec![T::zero(); n];
    let mut trace = cfg.record_trace.then(Vec::new);
    let mut iterates = cfg.record_iterates.then(|| vec![x.clone()]);
    let (mut lower, mut upper) = (T::zero(), T::infinity());

    for k in 1..=cfg.max_iter {
        op.apply_into(&x, &mut scratch, &mut y)?;
        (lower, upper) = collatz_bounds(&x, &y);
        if let Some(t) = trace.as_mut() {
            t.push((lower, upper));
        }
        if !(lower > T::zero()) || !upper.is_finite() {
            return Err(Error::NoConvergence {
                iterations: k,
                lower: lower.as_f64(),
                upper: upper.as_f64(),
                change: f64::NAN,
            });
        }
        let gap = (upper - lower) / lower;
        if gap <= cfg.tol {
            let rho = (lower + upper) / T::of(2.0);
            let residual_inf = residual_from(&x, &y, rho);
            let x_edges = x.split_off(b.num_nodes());
            return Ok(CentralityResult {
                rho,
                lower,
                upper,
                x_nodes: x,
                x_edges,
                iterations: k,
                residual_inf,
                trace,
                iterates,
            });
        }
        for (xi, &yi) in x.iter_mut().zip(&y) {
            *xi = yi.sqrt();
        }
        normalize2(&mut x);
        if let Some(it) = iterates.as_mut() {
            it.push(x.clone());
        }
    }
    Err(Error::NoConvergence {
        iterations: cfg.max_iter,
        lower: lower.as_f64(),
        upper: upper.as_f64(),
        change: ((upper - lower) / lower).as_f64(),
    })
}

/// Min and max of `y_i / x_i^2`.
fn collatz_bounds<T: Scalar>(x: &[T], y: &[T]) -> (T, T) {
    x.iter()
        .zip(y)
        .map(|(&xi, &yi)| yi / (xi * xi))
        .fold((T::infinity(), T::neg_infinity()), |(lo, hi), r| {
            (lo.min(r), hi.max(r))
        })
}

fn residual_from<T: Scalar>(x: &[T], y: &[T], rho: T) -> T {
    x.iter()
        .zip(y)
        .map(|(&xi, &yi)| (yi - rho * xi * xi).abs())
        .fold(T::zero(), T::max)
}

/// `max_i |(A x^2)_i - rho x_i^2|` for a positive unit vector `x`.
pub fn residual_inf<T: Scalar>(op: &TwoStepsOperator<'_>, x: &[T], rho: T) -> Result<T> {
    if let Some(i) = x.iter().position(|&v| !(v > T::zero())) {
        return Err(Error::invalid(format!("entry {i} is not positive")));
    }
    let nrm = norm2(x);
    let slack = T::of(1e-12).max(T::epsilon() * T::of_usize(x.len().max(1)) * T::of(4.0));
    if (nrm - T::one()).abs() > slack {
        return Err(Error::invalid(format!("vector norm {nrm} is not 1")));
    }
    let y = op.apply(x)?;
    Ok(residual_from(x, &y, rho))
}

/// Walk count from the first iteration next to its closed form: for a node
/// `v`, `sum_{e ∋ v} |e|`; for a hyperedge `e`, `sum_{v ∈ e} d(v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityRow {
    pub walk_value: u64,
    pub structural_value: u64,
}

/// Per bipartite vertex, the value of `A 1^2` next to its structural form.
/// The two columns must agree exactly.
pub fn first_iteration_identities(h: &Hypergraph) -> Result<Vec<IdentityRow>> {
    let b = h.bipartite();
    let walks = TwoStepsOperator::new(&b).apply(&vec![1.0f64; b.len()])?;
    let deg = h.degrees();
    let mut node_side = vec![0u64; h.num_nodes()];
    let mut edge_side = Vec::with_capacity(h.num_edges());
    for edge in h.hyperedges() {
        for &v in edge {
            node_side[v] += edge.len() as u64;
        }
        edge_side.push(edge.iter().map(|&v| deg[v] as u64).sum::<u64>());
    }
    Ok(walks
        .iter()
        .zip(node_side.into_iter().chain(edge_side))
        .map(|(&w, s)| IdentityRow {
            walk_value: w as u64,
            structural_value: s,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::generate_sunflower;

    #[test]
    fn single_edge_exact() {
        let h = Hypergraph::from_edges(2, vec![vec![0, 1]]).unwrap();
        let r = htec::<f64>(&h, &SolverConfig::default()).unwrap();
        assert!((r.rho - 2.0).abs() < 1e-12);
        let s = 1.0 / 3f64.sqrt();
        for v in r.vector() {
            assert!((v - s).abs() < 1e-10);
        }
        assert_eq!(r.iterations, 1);
    }

    #[test]
    fn disconnected_rejected() {
        let h = Hypergraph::from_edges(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(matches!(
            htec::<f64>(&h, &SolverConfig::default()),
            Err(Error::NotConnected { components: 2 })
        ));
    }

    #[test]
    fn no_convergence_carries_bounds() {
        let h = generate_sunflower(&[2, 3, 4, 5, 6, 7]).unwrap();
        let cfg = SolverConfig::<f64>::default().with_max_iter(3);
        match htec(&h, &cfg) {
            Err(Error::NoConvergence { iterations, lower, upper, .. }) => {
                assert_eq!(iterations, 3);
                assert!(lower < upper);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_config() {
        let h = Hypergraph::from_edges(2, vec![vec![0, 1]]).unwrap();
        assert!(htec(&h, &SolverConfig::<f64>::default().with_tol(0.0)).is_err());
        assert!(htec(&h, &SolverConfig::<f64>::default().with_max_iter(0)).is_err());
        let cfg = SolverConfig {
            start: Some(vec![1.0, -1.0, 1.0]),
            ..SolverConfig::<f64>::default()
        };
        assert!(matches!(htec(&h, &cfg), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn residual_checks() {
        let h = Hypergraph::from_edges(2, vec![vec![0, 1]]).unwrap();
        let b = h.bipartite();
        let op = TwoStepsOperator::new(&b);
        let s = 1.0 / 3f64.sqrt();
        assert!(residual_inf(&op, &[s, s, s], 2.0).unwrap() <= 1e-15);
        assert!(residual_inf(&op, &[s, 0.0, s], 2.0).is_err());
        assert!(residual_inf(&op, &[1.0, 1.0, 1.0], 2.0).is_err());
    }

    #[test]
    fn residual_detects_perturbation() {
        let h = generate_sunflower(&[2, 3, 4, 5, 6, 7]).unwrap();
        let b = h.bipartite();
        let r = htec::<f64>(&h, &SolverConfig::default()).unwrap();
        let op = TwoStepsOperator::new(&b);
        let mut x = r.vector();
        assert!(residual_inf(&op, &x, r.rho).unwrap() <= 1e-8);
        x[0] += 0.1;
        normalize2(&mut x);
        assert!(residual_inf(&op, &x, r.rho).unwrap() > 1e-3);
    }

    #[test]
    fn sunflower_identities() {
        let h = generate_sunflower(&[2, 3, 4, 5, 6, 7]).unwrap();
        let rows = first_iteration_identities(&h).unwrap();
        assert_eq!(rows[0], IdentityRow { walk_value: 27, structural_value: 27 });
        assert_eq!(rows[22], IdentityRow { walk_value: 7, structural_value: 7 });
        assert_eq!(rows[21], IdentityRow { walk_value: 7, structural_value: 7 });
        assert!(rows.iter().all(|r| r.walk_value == r.structural_value));
    }

    #[test]
    fn f32_runs() {
        let h = generate_sunflower(&[2, 3, 4]).unwrap();
        let cfg = SolverConfig::<f32>::default().with_tol(1e-5);
        let r = htec(&h, &cfg).unwrap();
        assert!(r.x_nodes[0] > r.x_nodes[1]);
    }
}
