//! Two-steps tensor eigenvector centrality for hypergraphs.
//!
//! A hypergraph is turned into its incidence bipartite graph (nodes first,
//! then hyperedges). The third-order tensor with `a[i][j][k] = 1` for every
//! walk `i ~ j ~ k` is nonnegative and weakly primitive on connected inputs,
//! so its positive eigenvector `A x^2 = rho x^[2]` is unique; its node and
//! hyperedge parts are the centralities. The crate also carries the
//! expansion-tree capacities that converge to that vector, three baseline
//! node–edge centralities, and rank-correlation tools for comparing them.
//!
//! Numeric code is generic over [`Scalar`] (`f32`, `f64`); the `*F64`
//! aliases below fix the common case.

pub mod analysis;
pub mod baselines;
pub mod bipartite;
pub mod capacity;
mod error;
pub mod hypergraph;
pub mod operator;
pub mod parse;
pub mod report;
mod scalar;
pub mod solver;

pub use analysis::{
    kendall_tau, scatter_export, spearman_rho, top_labels, topk_curve, CorrelationCurve,
    ScoreTable, TopkMode,
};
pub use baselines::{
    linear_fixed_point_check, th_centrality, BaselineConfig, BaselineResult, LogExpMode,
    MappingModel,
};
pub use bipartite::BipartiteGraph;
pub use capacity::{
    capacity_convergence, enumerate_expansion_tree, geometric_capacity, linear_capacity,
    tree_capacity, CapacityVector, ExpansionTree,
};
pub use error::{Error, Result};
pub use hypergraph::{generate_sunflower, random_connected, stats, DatasetStats, Hypergraph};
pub use operator::{
    check_weak_primitivity, dense_apply, materialize_dense, representative_matrix, DenseTensor,
    PrimitivityReport, RepresentativeMatrix, TwoStepsOperator,
};
pub use parse::{parse_hyperedge_list, parse_simplex_format, EdgeListParse, ParseOptions};
pub use report::{join_results, ResultFile, ScoreEntry, Side};
pub use scalar::Scalar;
pub use solver::{
    first_iteration_identities, htec, htec_bipartite, residual_inf, CentralityResult,
    IdentityRow, SolverConfig,
};

pub type SolverConfigF64 = SolverConfig<f64>;
pub type CentralityResultF64 = CentralityResult<f64>;
pub type CapacityVectorF64 = CapacityVector<f64>;
pub type BaselineConfigF64 = BaselineConfig<f64>;
pub type BaselineResultF64 = BaselineResult<f64>;
pub type MappingModelF64 = MappingModel<f64>;
pub type CorrelationCurveF64 = CorrelationCurve<f64>;
pub type ScoreTableF64 = ScoreTable<f64>;

pub type SolverConfigF32 = SolverConfig<f32>;
pub type CentralityResultF32 = CentralityResult<f32>;
