mod common;

use htec::capacity::geometric_capacity_sequence;
use htec::{
    capacity_convergence, enumerate_expansion_tree, generate_sunflower, geometric_capacity, htec,
    linear_capacity, random_connected, tree_capacity, Error, Hypergraph, SolverConfig,
};
use proptest::prelude::*;

fn normalized(v: &[f64]) -> Vec<f64> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / n).collect()
}

fn check_iterates(h: &Hypergraph) {
    let cfg = SolverConfig {
        record_iterates: true,
        ..SolverConfig::default().with_tol(1e-14).with_max_iter(20_000)
    };
    let r = htec(h, &cfg).unwrap();
    let iterates = r.iterates.unwrap();
    let t_max = 20.min(iterates.len() - 1);
    let caps = geometric_capacity_sequence::<f64>(&h.bipartite(), t_max);
    for (t, c) in caps.iter().enumerate() {
        let scale = c.values.iter().map(|x| x * x).sum::<f64>().sqrt();
        let rebuilt: Vec<f64> = iterates[t].iter().map(|x| x * scale).collect();
        for (a, b) in c.values.iter().zip(&rebuilt) {
            assert!((a - b).abs() <= 1e-12 * a.max(1.0), "t={t}: {a} vs {b}");
        }
    }
}

#[test]
fn capacities_are_the_unnormalized_iterates() {
    check_iterates(&generate_sunflower(&[2, 3, 4, 5, 6, 7]).unwrap());
    for seed in 0..20 {
        check_iterates(&random_connected(12, 8, 1, 4, seed).unwrap());
    }
}

#[test]
fn normalized_capacity_reaches_the_centrality() {
    let cfg = SolverConfig::default().with_tol(1e-14).with_max_iter(20_000);
    let mut instances = vec![generate_sunflower(&[2, 3, 4, 5, 6, 7]).unwrap()];
    instances.extend((0..20).map(|s| random_connected(15, 12, 2, 5, 100 + s).unwrap()));
    for h in &instances {
        let gaps = capacity_convergence::<f64>(&h.bipartite(), 200, &cfg).unwrap();
        let best = gaps.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(best <= 1e-8, "best gap {best} on {h:?}");
    }
}

#[test]
fn odd_cycle_linear_capacity_converges_but_bipartite_oscillates() {
    let cycle: Vec<Vec<usize>> = (0..7).map(|i| vec![(i + 6) % 7, (i + 1) % 7]).collect();
    let l = linear_capacity::<f64>(&cycle, 200).unwrap().normalized();
    let uniform = 1.0 / 7f64.sqrt();
    assert!(l.iter().all(|v| (v - uniform).abs() <= 1e-6));

    // star K_{1,3}: normalized walk counts alternate between two vectors
    let star = vec![vec![1, 2, 3], vec![0], vec![0], vec![0]];
    let even = linear_capacity::<f64>(&star, 200).unwrap().normalized();
    let odd = linear_capacity::<f64>(&star, 201).unwrap().normalized();
    assert!(common::max_abs_diff(&even, &odd) > 0.1);
}

#[test]
fn geometric_capacity_grows() {
    let b = generate_sunflower(&[2, 3, 4]).unwrap().bipartite();
    let seq = geometric_capacity_sequence::<f64>(&b, 10);
    for w in seq.windows(2) {
        assert!(w[0].values.iter().zip(&w[1].values).all(|(a, b)| b >= a));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn literal_trees_agree_with_recursion(seed in any::<u64>()) {
        let h = common::random_connected(&mut common::rng(seed), 6, 4, 3);
        let b = h.bipartite();
        prop_assume!(b.len() <= 10);
        for t in 0..=3 {
            let fast = geometric_capacity::<f64>(&b, t);
            for root in 0..b.len() {
                match enumerate_expansion_tree(&b, root, t) {
                    Ok(tree) => {
                        let slow = tree_capacity::<f64>(&tree);
                        prop_assert!((slow - fast.values[root]).abs() <= 1e-12 * slow.max(1.0));
                    }
                    Err(Error::TooLarge { .. }) => {}
                    Err(e) => return Err(TestCaseError::fail(e.to_string())),
                }
            }
        }
    }

    #[test]
    fn capacity_is_scale_free(seed in any::<u64>()) {
        let h = common::random_connected(&mut common::rng(seed), 8, 6, 4);
        let b = h.bipartite();
        let c = geometric_capacity::<f64>(&b, 5);
        prop_assert!(common::max_abs_diff(&normalized(&c.values), &c.normalized()) <= 1e-15);
    }
}
