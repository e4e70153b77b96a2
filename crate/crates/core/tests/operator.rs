mod common;

use htec::{
    check_weak_primitivity, dense_apply, materialize_dense, representative_matrix, TwoStepsOperator,
};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #[test]
    fn implicit_apply_matches_dense(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let h = common::random_connected(&mut rng, 8, 6, 4);
        let b = h.bipartite();
        let dense = materialize_dense(&b).unwrap();
        let x: Vec<f64> = (0..b.len()).map(|_| rng.gen_range(0.0..2.0)).collect();
        let fast = TwoStepsOperator::new(&b).apply(&x).unwrap();
        let slow = dense_apply(&dense, &x).unwrap();
        prop_assert!(common::max_abs_diff(&fast, &slow) <= 1e-12);
    }

    #[test]
    fn apply_is_homogeneous_of_degree_two(seed in any::<u64>(), c in 0.1f64..10.0) {
        let mut rng = common::rng(seed);
        let h = common::random_connected(&mut rng, 10, 8, 5);
        let b = h.bipartite();
        let op = TwoStepsOperator::new(&b);
        let x: Vec<f64> = (0..b.len()).map(|_| rng.gen_range(0.1..1.0)).collect();
        let cx: Vec<f64> = x.iter().map(|v| c * v).collect();
        let lhs = op.apply(&cx).unwrap();
        let rhs: Vec<f64> = op.apply(&x).unwrap().iter().map(|v| c * c * v).collect();
        for (l, r) in lhs.iter().zip(&rhs) {
            prop_assert!((l - r).abs() <= 1e-12 * r.abs().max(1.0));
        }
    }

    #[test]
    fn dense_tensor_invariant_under_walk_reversal(seed in any::<u64>()) {
        let h = common::random_connected(&mut common::rng(seed), 6, 5, 3);
        let b = h.bipartite();
        let t = materialize_dense(&b).unwrap();
        let nz = t.nonzeros();
        let walks: u64 = TwoStepsOperator::new(&b).walk_counts().iter().sum();
        prop_assert_eq!(nz.len() as u64, walks);
        for (i, j, k) in nz {
            prop_assert_eq!(t.get(k, j, i), 1);
        }
    }

    #[test]
    fn representative_row_sums_are_twice_walk_counts(seed in any::<u64>()) {
        let h = common::random_connected(&mut common::rng(seed), 10, 8, 5);
        let b = h.bipartite();
        let m = representative_matrix(&b);
        let walks = TwoStepsOperator::new(&b).walk_counts();
        for i in 0..b.len() {
            let row: u64 = m.row(i).iter().map(|&(_, c)| c).sum();
            prop_assert_eq!(row, 2 * walks[i]);
        }
    }

    #[test]
    fn implicit_primitivity_agrees_with_matrix(seed in any::<u64>()) {
        let h = common::random_any(&mut common::rng(seed), 8, 6, 3);
        let b = h.bipartite();
        let m = representative_matrix(&b);
        let report = check_weak_primitivity(&b);
        prop_assert_eq!(report.weakly_irreducible, m.is_irreducible());
        prop_assert_eq!(report.positive_diagonal, m.has_positive_diagonal());
        prop_assert_eq!(report.weakly_irreducible, b.is_connected());
    }
}

#[test]
fn walk_counts_equal_apply_on_ones() {
    let mut rng = common::rng(11);
    for _ in 0..30 {
        let h = common::random_connected(&mut rng, 12, 10, 6);
        let b = h.bipartite();
        let op = TwoStepsOperator::new(&b);
        let ones = op.apply(&vec![1.0f64; b.len()]).unwrap();
        let walks = op.walk_counts();
        assert!(ones.iter().zip(&walks).all(|(&a, &w)| a == w as f64));
    }
}

#[test]
fn dense_refuses_large_inputs() {
    let h = htec::Hypergraph::from_edges(70, vec![(0..70).collect()]).unwrap();
    assert!(matches!(
        materialize_dense(&h.bipartite()),
        Err(htec::Error::TooLarge { .. })
    ));
}
