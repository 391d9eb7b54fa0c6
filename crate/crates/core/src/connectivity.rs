//! Induced pairwise matrices, strongly connected components, and extraction
//! of the strongly connected tail-uniform core of a directed hypergraph.
//!
//! A tensor `T` induces the matrix `M_ij = sum_{j3..jm} T[i, j, j3, .., jm]`;
//! the hypergraph counts as strongly connected when the digraph with an arc
//! `i -> j` for every `M_ij > 0` is. Centrality requires this of the
//! *transposed* tensor, which is what [`is_strongly_connected`] checks.

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::hypergraph::{EdgeKind, Hypergraph, HypergraphError, NodeId};
use crate::kstep::KStepOperator;
use crate::perm::factorial;
use crate::sparse::SparseMatrix;
use crate::tensor::{OrbitTensor, SymmetryClass};

/// Nonnegative `N x N` matrix obtained by summing a tensor over all but its
/// first two indices.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedMatrix(pub SparseMatrix);

impl InducedMatrix {
    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0.get(i, j)
    }

    pub fn transpose(&self) -> Self {
        InducedMatrix(self.0.transpose())
    }
}

/// Anything that can be transposed and reduced to an induced matrix.
pub trait HyperAdjacency: Sized {
    fn node_count(&self) -> usize;
    fn transposed(&self) -> Self;
    fn induced_matrix(&self) -> InducedMatrix;
}

impl HyperAdjacency for OrbitTensor {
    fn node_count(&self) -> usize {
        self.dim()
    }

    fn transposed(&self) -> Self {
        self.transpose()
    }

    /// Exact orbit-wise sums; no component enumeration.
    fn induced_matrix(&self) -> InducedMatrix {
        let m = self.order();
        let mut arcs = Vec::new();
        match self.class() {
            SymmetryClass::FullSymmetric => {
                let mult = factorial(m - 2);
                for (t, w) in self.entries() {
                    for &i in t {
                        for &j in t.iter().filter(|&&j| j != i) {
                            arcs.push((i, j, w * mult));
                        }
                    }
                }
            }
            class @ (SymmetryClass::CyclicEven | SymmetryClass::CyclicOdd) => {
                let odd = class == SymmetryClass::CyclicOdd;
                for (t, w) in self.entries() {
                    if m <= 3 {
                        // Small orbits are plain directed cycles through the
                        // (possibly reflected) stored tuple.
                        let mut cyc = t.clone();
                        if odd {
                            cyc.swap(0, 1);
                        }
                        if m == 2 {
                            arcs.push((cyc[0], cyc[1], *w));
                        } else {
                            for p in 0..3 {
                                arcs.push((cyc[p], cyc[(p + 1) % 3], *w));
                            }
                        }
                    } else {
                        let mult = factorial(m - 2) / 2.0;
                        for &i in t {
                            for &j in t.iter().filter(|&&j| j != i) {
                                arcs.push((i, j, w * mult));
                            }
                        }
                    }
                }
            }
            SymmetryClass::Directed { tails, heads_first } => {
                let lead = if heads_first { m - tails } else { tails };
                let trail = m - lead;
                for (t, w) in self.entries() {
                    if lead >= 2 {
                        let mult = factorial(lead - 2) * factorial(trail);
                        for &i in &t[..lead] {
                            for &j in t[..lead].iter().filter(|&&j| j != i) {
                                arcs.push((i, j, w * mult));
                            }
                        }
                    } else {
                        let mult = factorial(trail - 1);
                        for &j in &t[1..] {
                            arcs.push((t[0], j, w * mult));
                        }
                    }
                }
            }
            SymmetryClass::OrderedKStep => {
                for (t, w) in self.entries() {
                    arcs.push((t[0], t[1], *w));
                }
            }
        }
        InducedMatrix(SparseMatrix::from_triplets(self.dim(), arcs))
    }
}

impl HyperAdjacency for KStepOperator {
    fn node_count(&self) -> usize {
        self.dim()
    }

    fn transposed(&self) -> Self {
        self.transpose()
    }

    /// `M_ij = a_ij * (A^(k-2) 1)_j`: the arc weight times the total weight of
    /// the walks of length `k - 2` leaving `j`.
    fn induced_matrix(&self) -> InducedMatrix {
        let a = self.adjacency();
        let mut reach = vec![1.0; a.dim()];
        for _ in 2..self.k() {
            reach = a.mul_vec(&reach);
        }
        InducedMatrix(SparseMatrix::from_triplets(
            a.dim(),
            a.iter().map(|(i, j, w)| (i, j, w * reach[j])),
        ))
    }
}

/// Strongly connected components of the digraph `i -> j` iff `M_ij > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccReport {
    /// Each component sorted; components ordered by smallest member.
    pub components: Vec<Vec<usize>>,
    /// Index into `components` of the largest component (ties go to the
    /// smaller minimum node id). `None` only for the empty graph.
    pub largest: Option<usize>,
    pub is_strongly_connected: bool,
}

pub fn scc(m: &InducedMatrix) -> SccReport {
    scc_of(&m.0)
}

pub(crate) fn scc_of(a: &SparseMatrix) -> SccReport {
    let n = a.dim();
    let mut g = DiGraph::<(), ()>::with_capacity(n, a.nnz());
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for (i, j, _) in a.iter() {
        g.add_edge(nodes[i], nodes[j], ());
    }
    let mut components: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|v| v.index()).collect();
            c.sort_unstable();
            c
        })
        .collect();
    components.sort_by_key(|c| c[0]);
    // first maximum wins, and components are ordered by minimum id
    let largest = components
        .iter()
        .enumerate()
        .fold(None::<(usize, usize)>, |best, (k, c)| match best {
            Some((_, len)) if len >= c.len() => best,
            _ => Some((k, c.len())),
        })
        .map(|(k, _)| k);
    let is_strongly_connected = components.len() == 1;
    SccReport {
        components,
        largest,
        is_strongly_connected,
    }
}

pub fn induced_matrix<T: HyperAdjacency>(t: &T) -> InducedMatrix {
    t.induced_matrix()
}

/// Strong connectivity of the transposed tensor, the condition under which
/// the Perron-like H-eigenvector exists and is unique.
pub fn is_strongly_connected<T: HyperAdjacency>(t: &T) -> bool {
    scc(&t.transposed().induced_matrix()).is_strongly_connected
}

/// Transposed tensor of the head-split form of a tail-uniform directed
/// hypergraph: each head node depends on the tails of its edges. This is the
/// operator solved by [`crate::spectral::hec_directed`].
pub fn directed_dependency_tensor(h: &Hypergraph) -> Result<OrbitTensor, HypergraphError> {
    h.tail_uniformity()?;
    let b = h.split_heads()?;
    let t = OrbitTensor::from_hypergraph(&b).map_err(|e| match e {
        crate::tensor::TensorError::Hypergraph(he) => he,
        other => unreachable!("split tail-uniform hypergraph is uniform: {other}"),
    })?;
    Ok(t.transpose())
}

/// Strong connectivity of a tail-uniform directed hypergraph in the sense
/// used by the directed centrality solver.
pub fn directed_is_strongly_connected(h: &Hypergraph) -> Result<bool, HypergraphError> {
    let t = directed_dependency_tensor(h)?;
    Ok(scc(&t.induced_matrix()).is_strongly_connected)
}

/// Largest strongly connected sub-hypergraph whose edges all have
/// `tails` tail nodes.
///
/// Repeats until stable: drop edges with a different tail size, compute the
/// SCCs of the transposed dependency graph, keep the largest component
/// (ties to the smallest node id) and the edges lying inside it. Node ids
/// are compacted in the result; an empty hypergraph means no such core.
pub fn b_uniform_core(h: &Hypergraph, tails: usize) -> Result<Hypergraph, HypergraphError> {
    if !h.is_all_directed() {
        return Err(HypergraphError::NotDirected);
    }
    let empty = || Hypergraph::new(Default::default());
    let mut cur = h.filter_edges(|e| matches!(e.kind(), EdgeKind::Directed { tail, .. } if tail.len() == tails));
    loop {
        if cur.edge_count() == 0 {
            return Ok(empty());
        }
        let m = directed_dependency_tensor(&cur)?.induced_matrix();
        let report = scc(&m);
        let keep = &report.components[report.largest.expect("nonempty graph")];
        if keep.len() < 2 {
            return Ok(empty());
        }
        if keep.len() == cur.node_count() {
            return Ok(cur);
        }
        let keep: Vec<NodeId> = keep.iter().copied().map(NodeId).collect();
        cur = cur.induced_subhypergraph(&keep);
    }
}
