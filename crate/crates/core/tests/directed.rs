use hyperhec::spectral::f_hypergraph_digraph;
use hyperhec::synth::{planted_core_hypergraph, random_f_hypergraph, random_uniform_hypergraph, seeded_rng, EdgeShape};
use hyperhec::{
    b_uniform_core, directed_is_strongly_connected, ec_f_hypergraph, eigenvector_centrality, hec, hec_directed,
    EdgeKind, Hyperedge, Hypergraph, NodeId, OrbitTensor, SolverConfig,
};
use proptest::prelude::*;

fn tight() -> SolverConfig {
    SolverConfig {
        tol: 1e-12,
        max_iter: 200_000,
        ..SolverConfig::default()
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Random tail-uniform hypergraph whose head sizes vary between edges.
fn mixed_heads(seed: u64, n: usize, tails: usize) -> Hypergraph {
    let mut rng = seeded_rng(seed);
    let mut h = random_uniform_hypergraph(&mut rng, n, tails + 1, EdgeShape::Directed { tails }, n, 0.5..2.0);
    let extra = random_uniform_hypergraph(&mut rng, n, tails + 2, EdgeShape::Directed { tails }, n / 2, 0.5..2.0);
    for e in extra.edges() {
        h.add_hyperedge(e.clone()).unwrap();
    }
    h
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn edge_list_and_tensor_routes_agree(seed in any::<u64>(), tails in 1usize..=3, n in 5usize..=9) {
        let h = mixed_heads(seed, n, tails);
        let direct = hec_directed(&h, &tight()).unwrap();
        let t = OrbitTensor::from_hypergraph(&h.split_heads().unwrap()).unwrap();
        let via_tensor = hec(&t, &tight()).unwrap();
        for (a, b) in direct.scores.iter().zip(&via_tensor.scores) {
            prop_assert!((a - b).abs() < 1e-9);
        }
        prop_assert!((via_tensor.lambda / direct.lambda - factorial(tails)).abs() < 1e-9 * factorial(tails));
    }

    #[test]
    fn f_hypergraph_is_a_digraph(seed in any::<u64>(), n in 3usize..=20) {
        let h = random_f_hypergraph(&mut seeded_rng(seed), n, 2 * n, 3, 0.5..2.0);
        let a = ec_f_hypergraph(&h, &tight()).unwrap();
        let b = eigenvector_centrality(&f_hypergraph_digraph(&h).unwrap(), &tight()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn core_is_a_strongly_connected_fixpoint(seed in any::<u64>(), core in 3usize..=8, fringe in 0usize..=8, tails in 1usize..=2) {
        let (h, planted) = planted_core_hypergraph(&mut seeded_rng(seed), core.max(tails + 1), fringe, tails, 6);
        let c = b_uniform_core(&h, tails).unwrap();
        prop_assert_eq!(c.tail_uniformity(), Ok(tails));
        prop_assert!(directed_is_strongly_connected(&c).unwrap());
        prop_assert_eq!(&b_uniform_core(&c, tails).unwrap(), &c);
        for label in &planted {
            prop_assert!(c.nodes().get(label).is_some(), "lost {}", label);
        }
    }
}

#[test]
fn dependency_direction() {
    // 0,1 -> 2 and 2 -> 0,1 with mixed tail sizes: only the first survives
    // with tails = 2, leaving no strongly connected core.
    let ids = |v: &[usize]| v.iter().copied().map(NodeId).collect::<Vec<_>>();
    let mut h = Hypergraph::with_nodes(3);
    h.add_hyperedge(Hyperedge::directed(&ids(&[0, 1]), &ids(&[2]), 1.0).unwrap())
        .unwrap();
    h.add_hyperedge(Hyperedge::directed(&ids(&[2]), &ids(&[0, 1]), 1.0).unwrap())
        .unwrap();
    assert_eq!(b_uniform_core(&h, 2).unwrap().node_count(), 0);
    assert!(hec_directed(&h, &tight()).is_err());
    let split = h.split_heads().unwrap();
    assert_eq!(split.edge_count(), 3);
    assert!(split
        .edges()
        .iter()
        .all(|e| matches!(e.kind(), EdgeKind::Directed { head, .. } if head.len() == 1)));
}
