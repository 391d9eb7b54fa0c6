//! Orbit-tensor structure checked against brute-force dense arrays.

use hyperhec::oracle::dense_apply;
use hyperhec::synth::{random_digraph, random_uniform_hypergraph, seeded_rng, EdgeShape};
use hyperhec::{KStepOperator, OrbitTensor, SymmetryClass};
use itertools::Itertools;
use proptest::prelude::*;

const LIMIT: usize = 10;

fn all_classes(m: usize) -> Vec<SymmetryClass> {
    let mut v = vec![
        SymmetryClass::FullSymmetric,
        SymmetryClass::CyclicEven,
        SymmetryClass::CyclicOdd,
        SymmetryClass::OrderedKStep,
    ];
    for tails in 1..m {
        for heads_first in [false, true] {
            v.push(SymmetryClass::Directed { tails, heads_first });
        }
    }
    v
}

/// Every single-orbit tensor with `N <= 6`, `m <= 4`: transposition is an
/// involution and agrees with the dense index permutation.
#[test]
fn transpose_laws_exhaustive() {
    let mut checked = 0;
    for m in 2..=4 {
        for n in m..=6 {
            for class in all_classes(m) {
                for t in (0..n).permutations(m) {
                    let x = OrbitTensor::new(m, n, class, [(t, 1.5)]).unwrap();
                    let xt = x.transpose();
                    assert_eq!(xt.transpose(), x);
                    let dense = x.materialize(LIMIT).unwrap();
                    let dense_t = xt.materialize(LIMIT).unwrap();
                    assert_eq!(dense_t, dense.reversed(), "{class} {:?}", x.entries());
                    if let SymmetryClass::Directed { tails, heads_first } = class {
                        let lead = if heads_first { m - tails } else { tails };
                        assert_eq!(dense_t, dense.block_swapped(lead));
                    }
                    checked += 1;
                }
            }
        }
    }
    assert_eq!(checked, 7140);
}

#[test]
fn cyclic_reversal_parity() {
    for m in 2..=4 {
        let t: Vec<usize> = (0..m).collect();
        let even = OrbitTensor::new(m, m, SymmetryClass::CyclicEven, [(t.clone(), 1.0)]).unwrap();
        let odd = OrbitTensor::new(m, m, SymmetryClass::CyclicOdd, [(t, 1.0)]).unwrap();
        let flips = m % 4 == 2 || m % 4 == 3;
        assert_eq!(even.transpose() == odd, flips, "m = {m}");
        assert_eq!(even.transpose() == even, !flips, "m = {m}");
    }
}

#[test]
fn orbits_partition_the_support() {
    for m in 2..=4 {
        for class in all_classes(m) {
            let entries = (0..5).permutations(m).map(|t| (t, 1.0));
            let x = OrbitTensor::new(m, 5, class, entries).unwrap();
            let total: usize = (0..x.entries().len()).map(|k| x.orbit(k).len()).sum();
            assert_eq!(x.materialize(LIMIT).unwrap().nonzero_count(), total);
        }
    }
}

fn shape_for(class_pick: usize, m: usize) -> EdgeShape {
    match class_pick % 3 {
        0 => EdgeShape::Undirected,
        1 => EdgeShape::Cyclic,
        _ => EdgeShape::Directed {
            tails: 1 + class_pick % (m - 1),
        },
    }
}

fn assert_close(a: &[f64], b: &[f64], tol: f64) {
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(b) {
        assert!((x - y).abs() <= tol * (1.0 + y.abs()), "{a:?} vs {b:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sparse_apply_matches_dense(
        seed in any::<u64>(),
        m in 2usize..=4,
        extra_n in 0usize..=4,
        pick in 0usize..6,
        extra in 0usize..12,
        c in prop::collection::vec(0.0f64..3.0, 8),
    ) {
        let n = m + extra_n;
        let h = random_uniform_hypergraph(&mut seeded_rng(seed), n, m, shape_for(pick, m), extra, 0.1..4.0);
        let t = OrbitTensor::from_hypergraph(&h).unwrap();
        let c = &c[..n];
        for x in [t.clone(), t.transpose()] {
            let dense = dense_apply(&x.materialize(LIMIT).unwrap(), c).unwrap();
            assert_close(&x.apply(c).unwrap(), &dense, 1e-12);
        }
    }

    #[test]
    fn kstep_apply_matches_walk_enumeration(
        seed in any::<u64>(),
        n in 2usize..=6,
        k in 2usize..=4,
        extra in 0usize..10,
        c in prop::collection::vec(0.0f64..3.0, 6),
    ) {
        let a = random_digraph(&mut seeded_rng(seed), n, extra, 0.2..3.0);
        let op = KStepOperator::new(a.clone(), k).unwrap();
        let c = &c[..n];
        let oracle = hyperhec::oracle::enumerate_walks(&a, k).unwrap();
        prop_assert_eq!(op.materialize(LIMIT).unwrap().max_abs_diff(&oracle), 0.0);
        let dense = dense_apply(&oracle.reversed(), c).unwrap();
        assert_close(&op.apply(c).unwrap(), &dense, 1e-12);
    }

    /// Relabeling nodes commutes with apply.
    #[test]
    fn apply_commutes_with_relabeling(
        seed in any::<u64>(),
        m in 2usize..=4,
        pick in 0usize..6,
        perm in Just((0..7).collect::<Vec<usize>>()).prop_shuffle(),
        c in prop::collection::vec(0.1f64..2.0, 7),
    ) {
        let h = random_uniform_hypergraph(&mut seeded_rng(seed), 7, m, shape_for(pick, m), 6, 0.5..2.0);
        let t = OrbitTensor::from_hypergraph(&h).unwrap();
        let tp = OrbitTensor::from_hypergraph(&h.relabel(&perm)).unwrap();
        // c'[perm[i]] = c[i]
        let mut cp = vec![0.0; 7];
        for i in 0..7 {
            cp[perm[i]] = c[i];
        }
        let x = t.apply(&c).unwrap();
        let xp = tp.apply(&cp).unwrap();
        for i in 0..7 {
            prop_assert!((xp[perm[i]] - x[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn induced_matrix_matches_dense_sum(
        seed in any::<u64>(),
        m in 2usize..=4,
        pick in 0usize..6,
        extra in 0usize..8,
    ) {
        use hyperhec::HyperAdjacency;
        let h = random_uniform_hypergraph(&mut seeded_rng(seed), 6, m, shape_for(pick, m), extra, 0.5..2.0);
        let t = OrbitTensor::from_hypergraph(&h).unwrap();
        for x in [t.clone(), t.transpose()] {
            let sparse = x.induced_matrix();
            let dense = x.materialize(LIMIT).unwrap().induced_matrix();
            for (i, row) in dense.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    prop_assert!((sparse.get(i, j) - v).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn components_match_materialization(
        seed in any::<u64>(),
        m in 2usize..=4,
        pick in 0usize..6,
    ) {
        let h = random_uniform_hypergraph(&mut seeded_rng(seed), 5, m, shape_for(pick, m), 5, 0.5..2.0);
        let t = OrbitTensor::from_hypergraph(&h).unwrap().transpose();
        let dense = t.materialize(LIMIT).unwrap();
        for idx in (0..m).map(|_| 0..5).multi_cartesian_product() {
            prop_assert_eq!(t.component(&idx).unwrap(), dense.get(&idx));
        }
    }
}
