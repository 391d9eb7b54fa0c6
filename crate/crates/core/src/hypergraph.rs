//! Node registry, typed hyperedges and the hypergraph container.
//!
//! A [`Hypergraph`] holds three kinds of hyperedges: plain undirected node
//! sets, cyclic (orientation-carrying) tuples, and directed tail/head pairs.
//! Identical edges are merged on insertion by summing their weights, so the
//! adjacency tensor built from a hypergraph is always single valued.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::perm::{anchor_even_orbit, has_duplicates, swap_first_two};
use crate::sparse::SparseMatrix;

/// Dense node index into a [`NodeRegistry`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HypergraphError {
    #[error("node {0} appears more than once in a hyperedge")]
    RepeatedNode(String),
    #[error("hyperedge block is empty or too small")]
    EmptyBlock,
    #[error("hyperedge weight must be positive and finite, got {0}")]
    NonPositiveWeight(f64),
    #[error("unknown node id {0}")]
    UnknownNode(usize),
    #[error("hypergraph has no hyperedges")]
    Empty,
    #[error("hypergraph is not uniform: found edge sizes {0} and {1}")]
    NonUniform(usize, usize),
    #[error("hypergraph contains non-directed hyperedges (or none at all)")]
    NotDirected,
    #[error("directed hyperedges have differing tail sizes {0} and {1}")]
    NonTailUniform(usize, usize),
}

/// Bijective label <-> id mapping. Ids are handed out densely in
/// first-appearance order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NodeRegistry {
    labels: Vec<String>,
    ids: HashMap<String, NodeId>,
}

impl NodeRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry with labels `"0"`, `"1"`, ... `"n-1"`.
    pub fn with_size(n: usize) -> Self {
        let mut reg = Self::new();
        for i in 0..n {
            reg.intern(&i.to_string());
        }
        reg
    }

    pub fn intern(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.ids.get(label) {
            return id;
        }
        let id = NodeId(self.labels.len());
        self.labels.push(label.to_owned());
        self.ids.insert(label.to_owned(), id);
        id
    }

    pub fn get(&self, label: &str) -> Option<NodeId> {
        self.ids.get(label).copied()
    }

    pub fn label(&self, id: NodeId) -> &str {
        &self.labels[id.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn contains(&self, id: NodeId) -> bool {
        id.0 < self.labels.len()
    }
}

/// Which parity class of permutations of a cyclic tuple carries the weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Even,
    Odd,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Even => Orientation::Odd,
            Orientation::Odd => Orientation::Even,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    /// Sorted node set.
    Undirected(Vec<NodeId>),
    /// Node tuple stored as the lexicographically smallest member of its
    /// even-permutation orbit; `orientation` says whether the weight sits on
    /// the even or the odd permutations of that tuple.
    Cyclic {
        nodes: Vec<NodeId>,
        orientation: Orientation,
    },
    /// Sorted tail and head sets. Contributions flow from tail to head.
    Directed { tail: Vec<NodeId>, head: Vec<NodeId> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KindTag {
    Undirected,
    Cyclic,
    Directed,
}

impl fmt::Display for KindTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KindTag::Undirected => "undirected",
            KindTag::Cyclic => "cyclic",
            KindTag::Directed => "directed",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hyperedge {
    kind: EdgeKind,
    weight: f64,
}

fn check_weight(w: f64) -> Result<(), HypergraphError> {
    if w.is_finite() && w > 0.0 {
        Ok(())
    } else {
        Err(HypergraphError::NonPositiveWeight(w))
    }
}

fn check_distinct(nodes: &[NodeId]) -> Result<(), HypergraphError> {
    let raw: Vec<usize> = nodes.iter().map(|n| n.0).collect();
    match has_duplicates(&raw) {
        Some(dup) => Err(HypergraphError::RepeatedNode(dup.to_string())),
        None => Ok(()),
    }
}

fn sorted(nodes: &[NodeId]) -> Vec<NodeId> {
    let mut v = nodes.to_vec();
    v.sort_unstable();
    v
}

impl Hyperedge {
    pub fn undirected(nodes: &[NodeId], weight: f64) -> Result<Self, HypergraphError> {
        check_weight(weight)?;
        if nodes.len() < 2 {
            return Err(HypergraphError::EmptyBlock);
        }
        check_distinct(nodes)?;
        Ok(Self {
            kind: EdgeKind::Undirected(sorted(nodes)),
            weight,
        })
    }

    pub fn cyclic(nodes: &[NodeId], orientation: Orientation, weight: f64) -> Result<Self, HypergraphError> {
        check_weight(weight)?;
        if nodes.len() < 2 {
            return Err(HypergraphError::EmptyBlock);
        }
        check_distinct(nodes)?;
        let raw: Vec<usize> = nodes.iter().map(|n| n.0).collect();
        let nodes = anchor_even_orbit(&raw).into_iter().map(NodeId).collect();
        Ok(Self {
            kind: EdgeKind::Cyclic { nodes, orientation },
            weight,
        })
    }

    pub fn directed(tail: &[NodeId], head: &[NodeId], weight: f64) -> Result<Self, HypergraphError> {
        check_weight(weight)?;
        if tail.is_empty() || head.is_empty() {
            return Err(HypergraphError::EmptyBlock);
        }
        let all: Vec<NodeId> = tail.iter().chain(head).copied().collect();
        check_distinct(&all)?;
        Ok(Self {
            kind: EdgeKind::Directed {
                tail: sorted(tail),
                head: sorted(head),
            },
            weight,
        })
    }

    pub fn kind(&self) -> &EdgeKind {
        &self.kind
    }

    pub fn tag(&self) -> KindTag {
        match self.kind {
            EdgeKind::Undirected(_) => KindTag::Undirected,
            EdgeKind::Cyclic { .. } => KindTag::Cyclic,
            EdgeKind::Directed { .. } => KindTag::Directed,
        }
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// Total number of nodes (tail plus head for directed edges).
    pub fn size(&self) -> usize {
        match &self.kind {
            EdgeKind::Undirected(v) => v.len(),
            EdgeKind::Cyclic { nodes, .. } => nodes.len(),
            EdgeKind::Directed { tail, head } => tail.len() + head.len(),
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        let (a, b): (&[NodeId], &[NodeId]) = match &self.kind {
            EdgeKind::Undirected(v) => (v, &[]),
            EdgeKind::Cyclic { nodes, .. } => (nodes, &[]),
            EdgeKind::Directed { tail, head } => (tail, head),
        };
        a.iter().chain(b).copied()
    }

    /// Key under which two edges count as the same edge: cyclic edges are
    /// keyed by the orbit that actually carries their weight.
    fn merge_key(&self) -> EdgeKind {
        match &self.kind {
            EdgeKind::Cyclic {
                nodes,
                orientation: Orientation::Odd,
            } => {
                let raw: Vec<usize> = nodes.iter().map(|n| n.0).collect();
                let support = anchor_even_orbit(&swap_first_two(&raw));
                EdgeKind::Cyclic {
                    nodes: support.into_iter().map(NodeId).collect(),
                    orientation: Orientation::Even,
                }
            }
            other => other.clone(),
        }
    }

    fn remapped(&self, map: impl Fn(NodeId) -> NodeId) -> Self {
        let remap = |v: &[NodeId]| v.iter().map(|&n| map(n)).collect::<Vec<_>>();
        let rebuilt = match &self.kind {
            EdgeKind::Undirected(v) => Hyperedge::undirected(&remap(v), self.weight),
            EdgeKind::Cyclic { nodes, orientation } => Hyperedge::cyclic(&remap(nodes), *orientation, self.weight),
            EdgeKind::Directed { tail, head } => Hyperedge::directed(&remap(tail), &remap(head), self.weight),
        };
        rebuilt.expect("relabeling preserves edge invariants")
    }
}

/// Per-kind edge counts, as reported by `info`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KindBreakdown {
    pub undirected: usize,
    pub cyclic: usize,
    pub directed: usize,
}

#[derive(Debug, Clone, Default)]
pub struct Hypergraph {
    nodes: NodeRegistry,
    edges: Vec<Hyperedge>,
    lookup: HashMap<EdgeKind, usize>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.edges == other.edges
    }
}

impl Hypergraph {
    pub fn new(nodes: NodeRegistry) -> Self {
        Self {
            nodes,
            edges: Vec::new(),
            lookup: HashMap::new(),
        }
    }

    pub fn with_nodes(n: usize) -> Self {
        Self::new(NodeRegistry::with_size(n))
    }

    pub fn nodes(&self) -> &NodeRegistry {
        &self.nodes
    }

    pub fn nodes_mut(&mut self) -> &mut NodeRegistry {
        &mut self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Appends `edge`, or adds its weight to an identical stored edge.
    pub fn add_hyperedge(&mut self, edge: Hyperedge) -> Result<(), HypergraphError> {
        if let Some(bad) = edge.nodes().find(|&n| !self.nodes.contains(n)) {
            return Err(HypergraphError::UnknownNode(bad.0));
        }
        let key = edge.merge_key();
        match self.lookup.get(&key) {
            Some(&i) => self.edges[i].weight += edge.weight,
            None => {
                self.lookup.insert(key, self.edges.len());
                self.edges.push(edge);
            }
        }
        Ok(())
    }

    pub fn kind_breakdown(&self) -> KindBreakdown {
        let mut b = KindBreakdown::default();
        for e in &self.edges {
            match e.tag() {
                KindTag::Undirected => b.undirected += 1,
                KindTag::Cyclic => b.cyclic += 1,
                KindTag::Directed => b.directed += 1,
            }
        }
        b
    }

    /// The common edge size `m`, if every edge has the same size.
    pub fn uniformity(&self) -> Result<usize, HypergraphError> {
        let first = self.edges.first().ok_or(HypergraphError::Empty)?.size();
        match self.edges.iter().map(Hyperedge::size).find(|&s| s != first) {
            Some(other) => Err(HypergraphError::NonUniform(first, other)),
            None => Ok(first),
        }
    }

    /// The common tail cardinality of an all-directed hypergraph.
    pub fn tail_uniformity(&self) -> Result<usize, HypergraphError> {
        let mut tails = self.edges.iter().map(|e| match &e.kind {
            EdgeKind::Directed { tail, .. } => Ok(tail.len()),
            _ => Err(HypergraphError::NotDirected),
        });
        let first = tails.next().ok_or(HypergraphError::NotDirected)??;
        for t in tails {
            let t = t?;
            if t != first {
                return Err(HypergraphError::NonTailUniform(first, t));
            }
        }
        Ok(first)
    }

    pub fn is_all_directed(&self) -> bool {
        !self.edges.is_empty() && self.edges.iter().all(|e| e.tag() == KindTag::Directed)
    }

    /// Clique expansion for undirected/cyclic edges, tail x head arcs for
    /// directed ones. Each edge contributes its weight once per arc.
    pub fn project(&self) -> ProjectionGraph {
        let mut arcs = Vec::new();
        for e in &self.edges {
            let w = e.weight;
            match &e.kind {
                EdgeKind::Undirected(v) | EdgeKind::Cyclic { nodes: v, .. } => {
                    for (a, &i) in v.iter().enumerate() {
                        for &j in &v[a + 1..] {
                            arcs.push((i.0, j.0, w));
                            arcs.push((j.0, i.0, w));
                        }
                    }
                }
                EdgeKind::Directed { tail, head } => {
                    for &i in tail {
                        for &j in head {
                            arcs.push((i.0, j.0, w));
                        }
                    }
                }
            }
        }
        ProjectionGraph {
            adjacency: SparseMatrix::from_triplets(self.node_count(), arcs),
        }
    }

    /// Replaces every directed edge `(T, {h1..hk})` by the single-head edges
    /// `(T, {h1})`, ..., `(T, {hk})` with the same weight.
    pub fn split_heads(&self) -> Result<Hypergraph, HypergraphError> {
        let mut out = Hypergraph::new(self.nodes.clone());
        for e in &self.edges {
            match &e.kind {
                EdgeKind::Directed { tail, head } => {
                    for &h in head {
                        out.add_hyperedge(Hyperedge::directed(tail, &[h], e.weight)?)?;
                    }
                }
                _ => return Err(HypergraphError::NotDirected),
            }
        }
        Ok(out)
    }

    /// Sends node `i` to `perm[i]`; labels travel with their nodes.
    pub fn relabel(&self, perm: &[usize]) -> Hypergraph {
        assert_eq!(perm.len(), self.node_count(), "permutation length");
        let mut labels = vec![String::new(); perm.len()];
        for (old, &new) in perm.iter().enumerate() {
            labels[new] = self.nodes.labels[old].clone();
        }
        let mut reg = NodeRegistry::new();
        for l in &labels {
            reg.intern(l);
        }
        let mut out = Hypergraph::new(reg);
        for e in &self.edges {
            out.add_hyperedge(e.remapped(|n| NodeId(perm[n.0])))
                .expect("relabeled edge is valid");
        }
        out
    }

    /// Keeps the listed nodes (in their current relative order) and every
    /// edge lying entirely inside them; ids are compacted.
    pub fn induced_subhypergraph(&self, keep: &[NodeId]) -> Hypergraph {
        let mut map = vec![None; self.node_count()];
        let mut kept: Vec<NodeId> = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        let mut reg = NodeRegistry::new();
        for &n in &kept {
            map[n.0] = Some(reg.intern(self.nodes.label(n)));
        }
        let mut out = Hypergraph::new(reg);
        for e in &self.edges {
            if e.nodes().all(|n| map[n.0].is_some()) {
                out.add_hyperedge(e.remapped(|n| map[n.0].unwrap()))
                    .expect("subgraph edge is valid");
            }
        }
        out
    }

    /// Same nodes, only the edges accepted by `keep`.
    pub fn filter_edges(&self, keep: impl Fn(&Hyperedge) -> bool) -> Hypergraph {
        let mut out = Hypergraph::new(self.nodes.clone());
        for e in self.edges.iter().filter(|e| keep(e)) {
            out.add_hyperedge(e.clone()).expect("edge already validated");
        }
        out
    }
}

/// Weighted pairwise graph obtained from [`Hypergraph::project`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionGraph {
    pub adjacency: SparseMatrix,
}

impl ProjectionGraph {
    pub fn node_count(&self) -> usize {
        self.adjacency.dim()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.adjacency.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[usize]) -> Vec<NodeId> {
        v.iter().copied().map(NodeId).collect()
    }

    #[test]
    fn duplicate_undirected_edges_merge() {
        let mut h = Hypergraph::with_nodes(4);
        h.add_hyperedge(Hyperedge::undirected(&ids(&[1, 2, 3]), 1.0).unwrap())
            .unwrap();
        h.add_hyperedge(Hyperedge::undirected(&ids(&[3, 1, 2]), 1.0).unwrap())
            .unwrap();
        assert_eq!(h.edge_count(), 1);
        assert_eq!(h.edges()[0].weight(), 2.0);
    }

    #[test]
    fn overlapping_tail_and_head_rejected() {
        let err = Hyperedge::directed(&ids(&[1]), &ids(&[1, 2]), 1.0).unwrap_err();
        assert!(matches!(err, HypergraphError::RepeatedNode(_)));
        assert_eq!(
            Hyperedge::directed(&[], &ids(&[1]), 1.0).unwrap_err(),
            HypergraphError::EmptyBlock
        );
        assert_eq!(
            Hyperedge::undirected(&ids(&[1, 2]), 0.0).unwrap_err(),
            HypergraphError::NonPositiveWeight(0.0)
        );
    }

    #[test]
    fn cyclic_edge_stored_as_is() {
        let mut h = Hypergraph::with_nodes(4);
        h.add_hyperedge(Hyperedge::cyclic(&ids(&[1, 2, 3]), Orientation::Even, 0.5).unwrap())
            .unwrap();
        assert_eq!(
            h.edges()[0].kind(),
            &EdgeKind::Cyclic {
                nodes: ids(&[1, 2, 3]),
                orientation: Orientation::Even
            }
        );
        assert_eq!(h.edges()[0].weight(), 0.5);
    }

    #[test]
    fn cyclic_rotations_merge_but_reflections_do_not() {
        let mut h = Hypergraph::with_nodes(3);
        let e = |t: &[usize], o| Hyperedge::cyclic(&ids(t), o, 1.0).unwrap();
        h.add_hyperedge(e(&[0, 1, 2], Orientation::Even)).unwrap();
        h.add_hyperedge(e(&[1, 2, 0], Orientation::Even)).unwrap();
        assert_eq!(h.edge_count(), 1);
        h.add_hyperedge(e(&[0, 2, 1], Orientation::Even)).unwrap();
        assert_eq!(h.edge_count(), 2);
        // odd orientation of (0,2,1) is the even orbit of (0,1,2)
        h.add_hyperedge(e(&[0, 2, 1], Orientation::Odd)).unwrap();
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.edges()[0].weight(), 3.0);
    }

    #[test]
    fn unknown_node_rejected() {
        let mut h = Hypergraph::with_nodes(2);
        let err = h
            .add_hyperedge(Hyperedge::undirected(&ids(&[0, 5]), 1.0).unwrap())
            .unwrap_err();
        assert_eq!(err, HypergraphError::UnknownNode(5));
    }

    #[test]
    fn uniformity_cases() {
        let mut h = Hypergraph::with_nodes(5);
        h.add_hyperedge(Hyperedge::undirected(&ids(&[1, 2, 3]), 1.0).unwrap())
            .unwrap();
        h.add_hyperedge(Hyperedge::undirected(&ids(&[2, 3, 4]), 1.0).unwrap())
            .unwrap();
        assert_eq!(h.uniformity(), Ok(3));
        h.add_hyperedge(Hyperedge::undirected(&ids(&[1, 2, 3, 4]), 1.0).unwrap())
            .unwrap();
        assert_eq!(h.uniformity(), Err(HypergraphError::NonUniform(3, 4)));

        let mut d = Hypergraph::with_nodes(6);
        d.add_hyperedge(Hyperedge::directed(&ids(&[1, 2]), &ids(&[3]), 1.0).unwrap())
            .unwrap();
        d.add_hyperedge(Hyperedge::directed(&ids(&[3, 4]), &ids(&[5]), 1.0).unwrap())
            .unwrap();
        assert_eq!(d.uniformity(), Ok(3));
        assert_eq!(Hypergraph::with_nodes(1).uniformity(), Err(HypergraphError::Empty));
    }

    #[test]
    fn tail_uniformity_cases() {
        let mut h = Hypergraph::with_nodes(5);
        h.add_hyperedge(Hyperedge::directed(&ids(&[1, 2]), &ids(&[3]), 1.0).unwrap())
            .unwrap();
        h.add_hyperedge(Hyperedge::directed(&ids(&[2, 3]), &ids(&[1, 4]), 1.0).unwrap())
            .unwrap();
        assert_eq!(h.tail_uniformity(), Ok(2));

        let mut g = Hypergraph::with_nodes(4);
        g.add_hyperedge(Hyperedge::directed(&ids(&[1]), &ids(&[2]), 1.0).unwrap())
            .unwrap();
        g.add_hyperedge(Hyperedge::directed(&ids(&[1, 2]), &ids(&[3]), 1.0).unwrap())
            .unwrap();
        assert_eq!(g.tail_uniformity(), Err(HypergraphError::NonTailUniform(1, 2)));

        assert_eq!(
            Hypergraph::with_nodes(3).tail_uniformity(),
            Err(HypergraphError::NotDirected)
        );
    }

    #[test]
    fn projection_examples() {
        let mut h = Hypergraph::with_nodes(5);
        h.add_hyperedge(Hyperedge::undirected(&ids(&[1, 2, 3]), 1.0).unwrap())
            .unwrap();
        let p = h.project();
        assert_eq!(p.arcs().count(), 6);
        assert!(p.arcs().all(|(_, _, w)| w == 1.0));

        h.add_hyperedge(Hyperedge::undirected(&ids(&[1, 2, 4]), 1.0).unwrap())
            .unwrap();
        let p = h.project();
        assert_eq!(p.adjacency.get(1, 2), 2.0);
        assert_eq!(p.adjacency.get(2, 1), 2.0);
        assert_eq!(p.adjacency.get(1, 3), 1.0);

        let mut d = Hypergraph::with_nodes(4);
        d.add_hyperedge(Hyperedge::directed(&ids(&[1, 2]), &ids(&[3]), 1.0).unwrap())
            .unwrap();
        let arcs: Vec<_> = d.project().arcs().collect();
        assert_eq!(arcs, vec![(1, 3, 1.0), (2, 3, 1.0)]);
    }

    #[test]
    fn split_heads_produces_b_edges() {
        let mut d = Hypergraph::with_nodes(5);
        d.add_hyperedge(Hyperedge::directed(&ids(&[0, 1]), &ids(&[2, 3]), 2.0).unwrap())
            .unwrap();
        d.add_hyperedge(Hyperedge::directed(&ids(&[0, 1]), &ids(&[2]), 1.0).unwrap())
            .unwrap();
        let b = d.split_heads().unwrap();
        assert_eq!(b.edge_count(), 2);
        assert_eq!(b.edges()[0].weight(), 3.0);
        assert_eq!(b.uniformity(), Ok(3));
    }

    #[test]
    fn induced_subhypergraph_compacts_ids() {
        let mut reg = NodeRegistry::new();
        for l in ["a", "b", "c", "d"] {
            reg.intern(l);
        }
        let mut h = Hypergraph::new(reg);
        h.add_hyperedge(Hyperedge::directed(&ids(&[1, 2]), &ids(&[3]), 1.0).unwrap())
            .unwrap();
        h.add_hyperedge(Hyperedge::directed(&ids(&[0, 1]), &ids(&[3]), 1.0).unwrap())
            .unwrap();
        let s = h.induced_subhypergraph(&ids(&[3, 1, 2]));
        assert_eq!(s.nodes().labels(), &["b", "c", "d"]);
        assert_eq!(s.edge_count(), 1);
    }
}
