//! Centrality solvers.
//!
//! Every solver finds the Perron-like pair `(lambda, c)` of
//! `F(c) = lambda c^[d]` for a nonnegative, degree-`d` homogeneous map `F`
//! (a tensor apply on a transposed adjacency tensor, or a matrix product for
//! the pairwise baselines) by shifted power iteration:
//!
//! ```text
//! y  = F(x) + shift * x^[d]
//! x' = normalize_L1(y^[1/d])
//! ```
//!
//! The Collatz-Wielandt bracket `[min_i y_i / x_i^d, max_i y_i / x_i^d]`
//! encloses `lambda + shift`; iteration stops once it is narrower than
//! `tol`. The shift leaves the eigenvector unchanged but removes the
//! oscillation of imprimitive (periodic) inputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::connectivity::{directed_is_strongly_connected, is_strongly_connected, scc_of};
use crate::hypergraph::{EdgeKind, Hypergraph, HypergraphError, ProjectionGraph};
use crate::kstep::KStepOperator;
use crate::sparse::SparseMatrix;
use crate::tensor::{OrbitTensor, TensorError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("cannot compute a centrality on an empty node set")]
    Empty,
    #[error("the (transposed) hypergraph is not strongly connected")]
    NotStronglyConnected,
    #[error("power iteration did not converge after {iterations} iterations (bracket width {residual:e})")]
    NotConverged {
        iterations: usize,
        residual: f64,
        partial: Box<CentralityResult>,
    },
    #[error("hypergraph is not tail-uniform: {0}")]
    NotTailUniform(HypergraphError),
    #[error("every hyperedge must be directed with exactly one tail node")]
    NotFHypergraph,
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum StartVector {
    /// `1/N` everywhere.
    Uniform,
    /// Strictly positive pseudo-random start from the given seed.
    Random(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub tol: f64,
    pub max_iter: usize,
    pub shift: f64,
    pub start: StartVector,
    /// Refuse inputs whose transposed hypergraph is not strongly connected.
    pub check_connectivity: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 10_000,
            shift: 1.0,
            start: StartVector::Uniform,
            check_connectivity: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SpectralError> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(SpectralError::InvalidConfig(format!("tol = {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(SpectralError::InvalidConfig("max_iter = 0".into()));
        }
        if !(self.shift >= 0.0 && self.shift.is_finite()) {
            return Err(SpectralError::InvalidConfig(format!("shift = {}", self.shift)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralityResult {
    /// L1-normalized scores.
    pub scores: Vec<f64>,
    /// Eigenvalue estimate with the shift removed.
    pub lambda: f64,
    pub iterations: usize,
    /// Width of the final eigenvalue bracket.
    pub residual: f64,
    pub converged: bool,
}

fn start_vector(n: usize, start: StartVector) -> Vec<f64> {
    match start {
        StartVector::Uniform => vec![1.0 / n as f64; n],
        StartVector::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
            let s: f64 = x.iter().sum();
            x.iter_mut().for_each(|v| *v /= s);
            x
        }
    }
}

#[inline]
fn root(y: f64, degree: usize) -> f64 {
    match degree {
        1 => y,
        2 => y.sqrt(),
        d => y.powf(1.0 / d as f64),
    }
}

/// Generic shifted power iteration on a degree-`degree` map.
pub(crate) fn power_iteration(
    n: usize,
    degree: usize,
    cfg: &SolverConfig,
    mut contract: impl FnMut(&[f64], &mut [f64]),
) -> Result<CentralityResult, SpectralError> {
    cfg.validate()?;
    if n == 0 {
        return Err(SpectralError::Empty);
    }
    let d = degree as i32;
    let mut x = start_vector(n, cfg.start);
    let mut y = vec![0.0; n];
    let mut lambda = f64::NAN;
    let mut width = f64::INFINITY;
    for it in 1..=cfg.max_iter {
        contract(&x, &mut y);
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for (yi, &xi) in y.iter_mut().zip(&x) {
            let xd = xi.powi(d);
            *yi += cfg.shift * xd;
            let r = *yi / xd;
            lo = lo.min(r);
            hi = hi.max(r);
        }
        width = hi - lo;
        lambda = 0.5 * (lo + hi) - cfg.shift;
        if width < cfg.tol {
            return Ok(CentralityResult {
                scores: x,
                lambda,
                iterations: it,
                residual: width,
                converged: true,
            });
        }
        let mut total = 0.0;
        for (xi, &yi) in x.iter_mut().zip(&y) {
            *xi = root(yi, degree);
            total += *xi;
        }
        x.iter_mut().for_each(|v| *v /= total);
    }
    Err(SpectralError::NotConverged {
        iterations: cfg.max_iter,
        residual: width,
        partial: Box::new(CentralityResult {
            scores: x,
            lambda,
            iterations: cfg.max_iter,
            residual: width,
            converged: false,
        }),
    })
}

/// `||F(c) - lambda c^[d]||_inf / ||c^[d]||_inf` for a precomputed `F(c)`.
pub fn eigen_residual(fc: &[f64], c: &[f64], lambda: f64, degree: usize) -> f64 {
    let d = degree as i32;
    let num = fc
        .iter()
        .zip(c)
        .map(|(f, x)| (f - lambda * x.powi(d)).abs())
        .fold(0.0, f64::max);
    let den = c.iter().map(|x| x.powi(d).abs()).fold(0.0, f64::max);
    num / den
}

/// H-eigenvector centrality of a uniform hypergraph's adjacency tensor:
/// the Perron pair of `lambda c^[m-1] = T^t c^(m-1)`.
pub fn hec(t: &OrbitTensor, cfg: &SolverConfig) -> Result<CentralityResult, SpectralError> {
    cfg.validate()?;
    if cfg.check_connectivity && !is_strongly_connected(t) {
        return Err(SpectralError::NotStronglyConnected);
    }
    let tt = t.transpose();
    power_iteration(t.dim(), t.order() - 1, cfg, |x, y| tt.apply_into(x, y))
}

/// Directed H-eigenvector centrality of a tail-uniform directed hypergraph:
///
/// ```text
/// lambda c_j^{m_T} = sum over edges e with j in head(e) of w_e * prod_{i in tail(e)} c_i
/// ```
///
/// evaluated straight from the edge list. The orbit-tensor route (split the
/// heads, build the adjacency tensor and call [`hec`]) yields the same
/// scores with `lambda` multiplied by `m_T!`.
pub fn hec_directed(h: &Hypergraph, cfg: &SolverConfig) -> Result<CentralityResult, SpectralError> {
    cfg.validate()?;
    let tails = h.tail_uniformity().map_err(SpectralError::NotTailUniform)?;
    if cfg.check_connectivity && !directed_is_strongly_connected(h)? {
        return Err(SpectralError::NotStronglyConnected);
    }
    let edges: Vec<(Vec<usize>, Vec<usize>, f64)> = h
        .edges()
        .iter()
        .map(|e| match e.kind() {
            EdgeKind::Directed { tail, head } => (
                tail.iter().map(|n| n.index()).collect(),
                head.iter().map(|n| n.index()).collect(),
                e.weight(),
            ),
            _ => unreachable!("tail_uniformity accepted only directed edges"),
        })
        .collect();
    power_iteration(h.node_count(), tails, cfg, |x, y| {
        y.iter_mut().for_each(|v| *v = 0.0);
        for (tail, head, w) in &edges {
            let p = w * tail.iter().map(|&i| x[i]).product::<f64>();
            for &j in head {
                y[j] += p;
            }
        }
    })
}

/// Weighted digraph of an F-hypergraph: one arc `tail -> j` per head node
/// `j`, carrying the edge weight.
pub fn f_hypergraph_digraph(h: &Hypergraph) -> Result<SparseMatrix, SpectralError> {
    let mut arcs = Vec::new();
    if h.edge_count() == 0 {
        return Err(SpectralError::NotFHypergraph);
    }
    for e in h.edges() {
        match e.kind() {
            EdgeKind::Directed { tail, head } if tail.len() == 1 => {
                arcs.extend(head.iter().map(|j| (tail[0].index(), j.index(), e.weight())));
            }
            _ => return Err(SpectralError::NotFHypergraph),
        }
    }
    Ok(SparseMatrix::from_triplets(h.node_count(), arcs))
}

/// Centrality of an F-hypergraph: `lambda c_j = sum_{i -> {j, ..}} w c_i`,
/// i.e. eigenvector centrality of [`f_hypergraph_digraph`]. Head sizes may
/// differ between edges.
pub fn ec_f_hypergraph(h: &Hypergraph, cfg: &SolverConfig) -> Result<CentralityResult, SpectralError> {
    eigenvector_centrality(&f_hypergraph_digraph(h)?, cfg)
}

/// Eigenvector centrality of a projected graph.
pub fn ec_projection(g: &ProjectionGraph, cfg: &SolverConfig) -> Result<CentralityResult, SpectralError> {
    eigenvector_centrality(&g.adjacency, cfg)
}

/// Perron eigenvector of `A^T`: `lambda c_j = sum_i a_ij c_i`.
pub fn eigenvector_centrality(a: &SparseMatrix, cfg: &SolverConfig) -> Result<CentralityResult, SpectralError> {
    cfg.validate()?;
    if cfg.check_connectivity && !scc_of(a).is_strongly_connected {
        return Err(SpectralError::NotStronglyConnected);
    }
    power_iteration(a.dim(), 1, cfg, |x, y| a.tmul_vec_into(x, y))
}

/// k-step eigenvector centrality, degree `k - 1`, contracting the
/// transposed k-step tensor implicitly.
pub fn kstep_centrality(op: &KStepOperator, cfg: &SolverConfig) -> Result<CentralityResult, SpectralError> {
    cfg.validate()?;
    if cfg.check_connectivity && !is_strongly_connected(op) {
        return Err(SpectralError::NotStronglyConnected);
    }
    let mut scratch = vec![0.0; op.dim()];
    power_iteration(op.dim(), op.k() - 1, cfg, |x, y| op.apply_into(x, y, &mut scratch))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{Hyperedge, NodeId, Orientation};
    use approx::assert_abs_diff_eq;

    fn ids(v: &[usize]) -> Vec<NodeId> {
        v.iter().copied().map(NodeId).collect()
    }

    fn assert_uniform(r: &CentralityResult) {
        let n = r.scores.len() as f64;
        for &s in &r.scores {
            assert_abs_diff_eq!(s, 1.0 / n, epsilon = 1e-10);
        }
    }

    #[test]
    fn single_undirected_edge() {
        let mut h = Hypergraph::with_nodes(3);
        h.add_hyperedge(Hyperedge::undirected(&ids(&[0, 1, 2]), 1.0).unwrap())
            .unwrap();
        let r = hec(&OrbitTensor::from_hypergraph(&h).unwrap(), &SolverConfig::default()).unwrap();
        assert!(r.converged);
        assert_uniform(&r);
        assert_abs_diff_eq!(r.lambda, 2.0, epsilon = 1e-10);
    }

    #[test]
    fn single_cyclic_edge() {
        let mut h = Hypergraph::with_nodes(3);
        h.add_hyperedge(Hyperedge::cyclic(&ids(&[0, 1, 2]), Orientation::Even, 1.0).unwrap())
            .unwrap();
        let r = hec(&OrbitTensor::from_hypergraph(&h).unwrap(), &SolverConfig::default()).unwrap();
        assert_uniform(&r);
        assert_abs_diff_eq!(r.lambda, 1.0, epsilon = 1e-10);
    }

    fn b_triangle() -> Hypergraph {
        let mut h = Hypergraph::with_nodes(3);
        for (t, hd) in [([0, 1], 2), ([1, 2], 0), ([2, 0], 1)] {
            h.add_hyperedge(Hyperedge::directed(&ids(&t), &ids(&[hd]), 1.0).unwrap())
                .unwrap();
        }
        h
    }

    #[test]
    fn b_triangle_both_conventions() {
        let h = b_triangle();
        let r = hec_directed(&h, &SolverConfig::default()).unwrap();
        assert_uniform(&r);
        assert_abs_diff_eq!(r.lambda, 1.0, epsilon = 1e-10);

        let t = OrbitTensor::from_hypergraph(&h).unwrap();
        let r2 = hec(&t, &SolverConfig::default()).unwrap();
        assert_uniform(&r2);
        assert_abs_diff_eq!(r2.lambda, 2.0, epsilon = 1e-10);
    }

    #[test]
    fn f_cycle() {
        let mut h = Hypergraph::with_nodes(3);
        for (t, hd) in [(0, [1, 2]), (1, [2, 0]), (2, [0, 1])] {
            h.add_hyperedge(Hyperedge::directed(&ids(&[t]), &ids(&hd), 1.0).unwrap())
                .unwrap();
        }
        let r = ec_f_hypergraph(&h, &SolverConfig::default()).unwrap();
        assert_uniform(&r);
        assert_abs_diff_eq!(r.lambda, 2.0, epsilon = 1e-10);
    }

    #[test]
    fn f_hypergraph_mixed_head_sizes_accepted() {
        let mut h = Hypergraph::with_nodes(4);
        h.add_hyperedge(Hyperedge::directed(&ids(&[0]), &ids(&[1, 2]), 1.0).unwrap())
            .unwrap();
        h.add_hyperedge(Hyperedge::directed(&ids(&[1]), &ids(&[0, 2, 3]), 1.0).unwrap())
            .unwrap();
        h.add_hyperedge(Hyperedge::directed(&ids(&[3]), &ids(&[0]), 1.0).unwrap())
            .unwrap();
        h.add_hyperedge(Hyperedge::directed(&ids(&[2]), &ids(&[3]), 1.0).unwrap())
            .unwrap();
        let a = f_hypergraph_digraph(&h).unwrap();
        assert_eq!(a.get(1, 3), 1.0);
        assert_eq!(a.get(0, 1), 1.0);
        assert!(ec_f_hypergraph(&h, &SolverConfig::default()).is_ok());

        let mut b = Hypergraph::with_nodes(3);
        b.add_hyperedge(Hyperedge::directed(&ids(&[0, 1]), &ids(&[2]), 1.0).unwrap())
            .unwrap();
        assert_eq!(
            ec_f_hypergraph(&b, &SolverConfig::default()),
            Err(SpectralError::NotFHypergraph)
        );
    }

    #[test]
    fn projection_baselines() {
        let tri = ProjectionGraph {
            adjacency: SparseMatrix::from_triplets(
                3,
                [
                    (0, 1, 1.0),
                    (1, 0, 1.0),
                    (1, 2, 1.0),
                    (2, 1, 1.0),
                    (0, 2, 1.0),
                    (2, 0, 1.0),
                ],
            ),
        };
        let r = ec_projection(&tri, &SolverConfig::default()).unwrap();
        assert_uniform(&r);
        assert_abs_diff_eq!(r.lambda, 2.0, epsilon = 1e-10);

        let cyc = ProjectionGraph {
            adjacency: SparseMatrix::from_triplets(3, [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)]),
        };
        let r = ec_projection(&cyc, &SolverConfig::default()).unwrap();
        assert_uniform(&r);
        assert_abs_diff_eq!(r.lambda, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn weighted_three_node_digraph_matches_characteristic_polynomial() {
        // A = [[0,2,0],[0,0,3],[1,1,0]]; det(lambda I - A) = lambda^3 - 3 lambda - 6.
        let a = SparseMatrix::from_triplets(3, [(0, 1, 2.0), (1, 2, 3.0), (2, 0, 1.0), (2, 1, 1.0)]);
        let r = eigenvector_centrality(&a, &SolverConfig::default()).unwrap();
        // Real root of lambda^3 - 3 lambda - 6 by bisection.
        let (mut lo, mut hi) = (1.0f64, 4.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid.powi(3) - 3.0 * mid - 6.0 > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        assert_abs_diff_eq!(r.lambda, lo, epsilon = 1e-9);
        // Left eigenvector: c A = lambda c.
        let ca = a.tmul_vec(&r.scores);
        for (x, c) in ca.iter().zip(&r.scores) {
            assert_abs_diff_eq!(*x, lo * c, epsilon = 1e-9);
        }
    }

    #[test]
    fn kstep_three_cycle() {
        let a = SparseMatrix::from_triplets(3, [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)]);
        let r = kstep_centrality(&KStepOperator::new(a, 3).unwrap(), &SolverConfig::default()).unwrap();
        assert_uniform(&r);
        assert_abs_diff_eq!(r.lambda, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn disconnected_input_refused() {
        let mut h = Hypergraph::with_nodes(3);
        h.add_hyperedge(Hyperedge::directed(&ids(&[0, 1]), &ids(&[2]), 1.0).unwrap())
            .unwrap();
        let t = OrbitTensor::from_hypergraph(&h).unwrap();
        assert_eq!(
            hec(&t, &SolverConfig::default()),
            Err(SpectralError::NotStronglyConnected)
        );
        assert_eq!(
            hec_directed(&h, &SolverConfig::default()),
            Err(SpectralError::NotStronglyConnected)
        );
    }

    #[test]
    fn non_convergence_reports_partial_result() {
        let mut h = Hypergraph::with_nodes(4);
        h.add_hyperedge(Hyperedge::undirected(&ids(&[0, 1, 2]), 1.0).unwrap())
            .unwrap();
        h.add_hyperedge(Hyperedge::undirected(&ids(&[1, 2, 3]), 3.0).unwrap())
            .unwrap();
        let cfg = SolverConfig {
            max_iter: 2,
            ..Default::default()
        };
        match hec(&OrbitTensor::from_hypergraph(&h).unwrap(), &cfg) {
            Err(SpectralError::NotConverged {
                iterations, partial, ..
            }) => {
                assert_eq!(iterations, 2);
                assert!(!partial.converged);
                assert_abs_diff_eq!(partial.scores.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
            }
            other => panic!("expected NotConverged, got {other:?}"),
        }
    }

    #[test]
    fn config_validation() {
        let bad = SolverConfig {
            tol: 0.0,
            ..Default::default()
        };
        assert!(matches!(bad.validate(), Err(SpectralError::InvalidConfig(_))));
        let bad = SolverConfig {
            shift: -1.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
