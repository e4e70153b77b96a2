//! Test-only generators and independent oracles.
#![allow(dead_code)]

use htec::Hypergraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random hypergraph with every node used, by rejection until its incidence
/// graph is connected. Sizes are drawn from `1..=max_size`.
pub fn random_connected(rng: &mut ChaCha8Rng, max_nodes: usize, max_edges: usize, max_size: usize) -> Hypergraph {
    loop {
        let h = random_any(rng, max_nodes, max_edges, max_size);
        if union_find_connected(&h) {
            return h;
        }
    }
}

/// Random hypergraph, possibly disconnected or with isolated nodes.
pub fn random_any(rng: &mut ChaCha8Rng, max_nodes: usize, max_edges: usize, max_size: usize) -> Hypergraph {
    let n_v = rng.gen_range(1..=max_nodes);
    let n_e = rng.gen_range(1..=max_edges);
    let edges = (0..n_e)
        .map(|_| {
            let k = rng.gen_range(1..=max_size.min(n_v));
            rand::seq::index::sample(rng, n_v, k).into_vec()
        })
        .collect();
    Hypergraph::from_edges(n_v, edges).unwrap()
}

/// Connectivity of nodes + hyperedges by union-find over incidences.
pub fn union_find_connected(h: &Hypergraph) -> bool {
    let n_v = h.num_nodes();
    let n = n_v + h.num_edges();
    if n == 0 {
        return false;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    for (e, edge) in h.hyperedges().iter().enumerate() {
        for &v in edge {
            let (a, b) = (find(&mut parent, v), find(&mut parent, n_v + e));
            parent[a] = b;
        }
    }
    let root = find(&mut parent, 0);
    (0..n).all(|i| find(&mut parent, i) == root)
}

/// Dense 0/1 incidence matrix, rows = nodes.
pub fn incidence(h: &Hypergraph) -> Vec<Vec<f64>> {
    let mut b = vec![vec![0.0; h.num_edges()]; h.num_nodes()];
    for (e, edge) in h.hyperedges().iter().enumerate() {
        for &v in edge {
            b[v][e] = 1.0;
        }
    }
    b
}

pub fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let m = b[0].len();
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| row.iter().zip(b).map(|(&x, brow)| x * brow[j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    (0..a[0].len())
        .map(|j| a.iter().map(|row| row[j]).collect())
        .collect()
}

/// Perron vector of a dense symmetric nonnegative matrix by plain power
/// iteration on `M + I` (the shift removes any sign-alternating mode).
pub fn perron_vector(m: &[Vec<f64>]) -> Vec<f64> {
    let n = m.len();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    for _ in 0..200_000 {
        let mut y: Vec<f64> = (0..n)
            .map(|i| x[i] + m[i].iter().zip(&x).map(|(a, b)| a * b).sum::<f64>())
            .collect();
        let nrm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        y.iter_mut().for_each(|v| *v /= nrm);
        let diff = y.iter().zip(&x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        x = y;
        if diff < 1e-15 {
            break;
        }
    }
    x
}

/// Kendall tau-b by enumerating every pair.
pub fn kendall_bruteforce(a: &[f64], b: &[f64]) -> Option<f64> {
    let n = a.len();
    let (mut c, mut d, mut ta, mut tb) = (0i64, 0i64, 0i64, 0i64);
    for i in 0..n {
        for j in i + 1..n {
            let da = a[i].partial_cmp(&a[j]).unwrap() as i64;
            let db = b[i].partial_cmp(&b[j]).unwrap() as i64;
            match (da, db) {
                (0, 0) => {}
                (0, _) => ta += 1,
                (_, 0) => tb += 1,
                _ if da == db => c += 1,
                _ => d += 1,
            }
        }
    }
    let den = (((c + d + ta) * (c + d + tb)) as f64).sqrt();
    (den > 0.0).then(|| (c - d) as f64 / den)
}

/// Spearman rho from quadratic mid-rank counting and textbook Pearson.
pub fn spearman_definitional(a: &[f64], b: &[f64]) -> Option<f64> {
    let rank = |v: &[f64]| -> Vec<f64> {
        v.iter()
            .map(|&x| {
                let less = v.iter().filter(|&&y| y < x).count() as f64;
                let eq = v.iter().filter(|&&y| y == x).count() as f64;
                less + (eq + 1.0) / 2.0
            })
            .collect()
    };
    let (ra, rb) = (rank(a), rank(b));
    let n = a.len() as f64;
    let ma = ra.iter().sum::<f64>() / n;
    let mb = rb.iter().sum::<f64>() / n;
    let cov: f64 = ra.iter().zip(&rb).map(|(x, y)| (x - ma) * (y - mb)).sum();
    let va: f64 = ra.iter().map(|x| (x - ma).powi(2)).sum();
    let vb: f64 = rb.iter().map(|y| (y - mb).powi(2)).sum();
    (va > 0.0 && vb > 0.0).then(|| cov / (va * vb).sqrt())
}

/// Random vector with values drawn from a small pool so ties are common.
pub fn tied_vector(rng: &mut ChaCha8Rng, n: usize, levels: u32) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0..levels) as f64).collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
