//! Seeded random instances.
//!
//! Every generator lays down a ring backbone first, so the outputs are
//! strongly connected in the sense checked by the solvers, then sprinkles
//! extra random edges on top.

use std::collections::HashSet;
use std::ops::Range;

use rand::distributions::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::hypergraph::{Hyperedge, Hypergraph, NodeId, NodeRegistry, Orientation};
use crate::sparse::SparseMatrix;

/// Generator behind [`seeded_rng`].
pub type SynthRng = ChaCha8Rng;

/// Deterministic generator used throughout; same seed, same instance.
pub fn seeded_rng(seed: u64) -> SynthRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeShape {
    Undirected,
    /// Cyclic edges; ring edges follow the listed order, extra edges get a
    /// random orientation.
    Cyclic,
    /// Directed edges with `tails` tail nodes and `m - tails` head nodes.
    Directed {
        tails: usize,
    },
}

fn ids(v: impl IntoIterator<Item = usize>) -> Vec<NodeId> {
    v.into_iter().map(NodeId).collect()
}

fn weight<R: Rng + ?Sized>(rng: &mut R, w: &Range<f64>) -> f64 {
    if w.start == w.end {
        w.start
    } else {
        rng.gen_range(w.clone())
    }
}

/// `ring` edges keep the listed orientation so the backbone stays a
/// directed cycle; other cyclic edges get a random one.
fn make_edge<R: Rng + ?Sized>(rng: &mut R, shape: EdgeShape, nodes: &[usize], w: f64, ring: bool) -> Hyperedge {
    let v = ids(nodes.iter().copied());
    match shape {
        EdgeShape::Undirected => Hyperedge::undirected(&v, w),
        EdgeShape::Cyclic => {
            let o = if ring || rng.gen_bool(0.5) {
                Orientation::Even
            } else {
                Orientation::Odd
            };
            Hyperedge::cyclic(&v, o, w)
        }
        EdgeShape::Directed { tails } => Hyperedge::directed(&v[..tails], &v[tails..], w),
    }
    .expect("generated edge is valid")
}

/// `m`-uniform hypergraph on `n >= m` nodes: the `n` ring windows
/// `(i, i+1, .., i+m-1) mod n` plus `extra` random edges.
pub fn random_uniform_hypergraph<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    m: usize,
    shape: EdgeShape,
    extra: usize,
    weights: Range<f64>,
) -> Hypergraph {
    assert!(m >= 2 && n >= m, "need n >= m >= 2");
    if let EdgeShape::Directed { tails } = shape {
        assert!(tails >= 1 && tails < m, "need 1 <= tails < m");
    }
    let mut h = Hypergraph::with_nodes(n);
    for i in 0..n {
        let window: Vec<usize> = (0..m).map(|o| (i + o) % n).collect();
        let w = weight(rng, &weights);
        h.add_hyperedge(make_edge(rng, shape, &window, w, true)).unwrap();
    }
    for _ in 0..extra {
        let nodes = rand::seq::index::sample(rng, n, m).into_vec();
        let w = weight(rng, &weights);
        h.add_hyperedge(make_edge(rng, shape, &nodes, w, false)).unwrap();
    }
    h
}

/// Weighted digraph without self-loops: the ring `i -> i+1` plus `extra`
/// random arcs.
pub fn random_digraph<R: Rng + ?Sized>(rng: &mut R, n: usize, extra: usize, weights: Range<f64>) -> SparseMatrix {
    assert!(n >= 2);
    let mut arcs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, weight(rng, &weights))).collect();
    for _ in 0..extra {
        let p = rand::seq::index::sample(rng, n, 2);
        arcs.push((p.index(0), p.index(1), weight(rng, &weights)));
    }
    SparseMatrix::from_triplets(n, arcs)
}

/// Symmetric version of [`random_digraph`].
pub fn random_undirected_graph<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    extra: usize,
    weights: Range<f64>,
) -> SparseMatrix {
    let a = random_digraph(rng, n, extra, weights);
    SparseMatrix::from_triplets(n, a.iter().flat_map(|(i, j, w)| [(i, j, w), (j, i, w)]))
}

/// Directed hypergraph whose edges all have one tail node; head sizes are
/// drawn from `1..=max_head`.
pub fn random_f_hypergraph<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    extra: usize,
    max_head: usize,
    weights: Range<f64>,
) -> Hypergraph {
    assert!(n >= 2 && max_head >= 1);
    let mut h = Hypergraph::with_nodes(n);
    let add = |h: &mut Hypergraph, rng: &mut R, tail: usize, head: Vec<usize>| {
        let w = weight(rng, &weights);
        h.add_hyperedge(Hyperedge::directed(&[NodeId(tail)], &ids(head), w).unwrap())
            .unwrap();
    };
    for i in 0..n {
        add(&mut h, rng, i, vec![(i + 1) % n]);
    }
    for _ in 0..extra {
        let size = rng.gen_range(1..=max_head.min(n - 1));
        let picked = rand::seq::index::sample(rng, n, size + 1).into_vec();
        add(&mut h, rng, picked[0], picked[1..].to_vec());
    }
    h
}

/// Directed hypergraph containing a known strongly connected core of
/// `core` nodes whose edges all have `tails` tail nodes.
///
/// The remaining `fringe` nodes only ever receive from lower-numbered nodes
/// (so each is its own component), and `noise` edges with a different tail
/// size are scattered everywhere. Node ids are shuffled; the returned labels
/// are those of the planted core.
pub fn planted_core_hypergraph<R: Rng + ?Sized>(
    rng: &mut R,
    core: usize,
    fringe: usize,
    tails: usize,
    noise: usize,
) -> (Hypergraph, Vec<String>) {
    assert!(tails >= 1 && core > tails);
    let n = core + fringe;
    let mut h = Hypergraph::new(NodeRegistry::new());
    for i in 0..n {
        h.nodes_mut().intern(&format!("v{i}"));
    }
    let add = |h: &mut Hypergraph, t: Vec<usize>, hd: Vec<usize>, w: f64| {
        h.add_hyperedge(Hyperedge::directed(&ids(t), &ids(hd), w).unwrap())
            .unwrap();
    };
    for i in 0..core {
        let t: Vec<usize> = (0..tails).map(|o| (i + o) % core).collect();
        add(&mut h, t, vec![(i + tails) % core], rng.gen_range(0.5..2.0));
    }
    for _ in 0..core {
        let p = rand::seq::index::sample(rng, core, tails + 1).into_vec();
        add(&mut h, p[..tails].to_vec(), vec![p[tails]], rng.gen_range(0.5..2.0));
    }
    for j in core..n {
        for _ in 0..rng.gen_range(1..=2) {
            let t = rand::seq::index::sample(rng, j, tails).into_vec();
            add(&mut h, t, vec![j], rng.gen_range(0.5..2.0));
        }
    }
    let other = if tails > 1 && rng.gen_bool(0.5) {
        tails - 1
    } else {
        tails + 1
    };
    if n > other {
        for _ in 0..noise {
            let p = rand::seq::index::sample(rng, n, other + 1).into_vec();
            add(&mut h, p[..other].to_vec(), vec![p[other]], rng.gen_range(0.5..2.0));
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let core_labels = (0..core).map(|i| format!("v{i}")).collect();
    (h.relabel(&perm), core_labels)
}

/// Reaction-like directed hypergraph on species `S0..S{n-1}`: every
/// reaction has two reactants and one or two products, all weights 1.
///
/// The backbone `S_i + S_{i+1} -> S_{i+2}` keeps it strongly connected;
/// `extra` further reactions pick reactants with Zipf-like popularity so
/// that a few species take part in many reactions.
pub fn reaction_network<R: Rng + ?Sized>(rng: &mut R, n: usize, extra: usize) -> Hypergraph {
    assert!(n >= 4);
    let mut reg = NodeRegistry::new();
    for i in 0..n {
        reg.intern(&format!("S{i}"));
    }
    let mut h = Hypergraph::new(reg);
    let mut seen = HashSet::new();
    let mut add = |h: &mut Hypergraph, mut t: Vec<usize>, mut hd: Vec<usize>| {
        t.sort_unstable();
        hd.sort_unstable();
        if seen.insert((t.clone(), hd.clone())) {
            h.add_hyperedge(Hyperedge::directed(&ids(t), &ids(hd), 1.0).unwrap())
                .unwrap();
        }
    };
    for i in 0..n {
        add(&mut h, vec![i, (i + 1) % n], vec![(i + 2) % n]);
    }
    let mut popularity: Vec<usize> = (0..n).collect();
    popularity.shuffle(rng);
    let zipf = WeightedIndex::new((0..n).map(|r| 1.0 / (r + 1) as f64)).unwrap();
    for _ in 0..extra {
        let a = popularity[zipf.sample(rng)];
        let b = loop {
            let b = popularity[zipf.sample(rng)];
            if b != a {
                break b;
            }
        };
        let products = rng.gen_range(1..=2);
        let mut head = Vec::with_capacity(products);
        while head.len() < products {
            let p = rng.gen_range(0..n);
            if p != a && p != b && !head.contains(&p) {
                head.push(p);
            }
        }
        add(&mut h, vec![a, b], head);
    }
    h
}
