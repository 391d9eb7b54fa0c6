//! Spectral centralities for uniform hypergraphs.
//!
//! Hypergraphs with undirected, cyclic and directed hyperedges are stored as
//! sparse adjacency tensors that keep one entry per symmetry orbit
//! ([`OrbitTensor`]); walk-based k-step tensors are applied implicitly
//! ([`KStepOperator`]). On top of these sit strong-connectivity checks,
//! shifted power iteration for H-eigenvector centralities, and rank
//! comparison utilities.
//!
//! ```
//! use hyperhec::{hec, Hyperedge, Hypergraph, NodeId, OrbitTensor, SolverConfig};
//!
//! let mut h = Hypergraph::with_nodes(3);
//! let e = Hyperedge::undirected(&[NodeId(0), NodeId(1), NodeId(2)], 1.0).unwrap();
//! h.add_hyperedge(e).unwrap();
//! let t = OrbitTensor::from_hypergraph(&h).unwrap();
//! let r = hec(&t, &SolverConfig::default()).unwrap();
//! assert!((r.lambda - 2.0).abs() < 1e-9);
//! ```

mod perm;

pub mod connectivity;
pub mod hypergraph;
pub mod io;
pub mod kstep;
pub mod oracle;
pub mod ranking;
pub mod sparse;
pub mod spectral;
pub mod synth;
pub mod tensor;

pub use connectivity::{
    b_uniform_core, directed_dependency_tensor, directed_is_strongly_connected, induced_matrix, is_strongly_connected,
    scc, HyperAdjacency, InducedMatrix, SccReport,
};
pub use hypergraph::{
    EdgeKind, Hyperedge, Hypergraph, HypergraphError, KindBreakdown, KindTag, NodeId, NodeRegistry, Orientation,
    ProjectionGraph,
};
pub use kstep::KStepOperator;
pub use oracle::{dense_apply, dense_hec, DenseTensor, OracleError};
pub use ranking::{spearman, topk_curve, RankComparison, Ranking, RankingError};
pub use sparse::SparseMatrix;
pub use spectral::{
    ec_f_hypergraph, ec_projection, eigenvector_centrality, hec, hec_directed, kstep_centrality, CentralityResult,
    SolverConfig, SpectralError, StartVector,
};
pub use tensor::{OrbitTensor, SymmetryClass, TensorError, DEFAULT_MATERIALIZE_LIMIT};
