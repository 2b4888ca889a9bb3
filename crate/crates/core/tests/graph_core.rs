mod support;

use proptest::prelude::*;
use support::oracles::laplacian_double_sum;
use tvgc::eigen::{max_eigenvalue, smallest_eigenvectors};
use tvgc::{build_laplacian, quadratic_form, WeightedGraph};

fn random_graph() -> impl Strategy<Value = WeightedGraph> {
    (2usize..12).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n, 0.0..5.0f64), 0..3 * n).prop_map(move |raw| {
            let mut seen = std::collections::BTreeSet::new();
            let edges: Vec<_> = raw
                .into_iter()
                .filter(|&(i, j, _)| i != j && seen.insert((i.min(j), i.max(j))))
                .collect();
            WeightedGraph::new(n, edges).unwrap()
        })
    })
}

fn connected_graph() -> impl Strategy<Value = WeightedGraph> {
    // a spanning path plus random chords
    (3usize..10).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n, 0.1..3.0f64), 0..2 * n).prop_map(move |chords| {
            let mut seen = std::collections::BTreeSet::new();
            let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1, 1.0)).collect();
            edges.iter().for_each(|&(i, j, _)| {
                seen.insert((i, j));
            });
            edges.extend(
                chords
                    .into_iter()
                    .filter(|&(i, j, _)| i != j && seen.insert((i.min(j), i.max(j)))),
            );
            WeightedGraph::new(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn row_sums_vanish(g in random_graph()) {
        let l = build_laplacian(&g).to_dense();
        let scale = l.diagonal().max().max(1.0);
        for row in l.row_iter() {
            prop_assert!(row.sum().abs() <= 1e-10 * scale);
        }
        prop_assert_eq!(&l, &l.transpose());
    }

    #[test]
    fn quadratic_form_matches_double_sum(
        g in random_graph(),
        seed in any::<u64>(),
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let f: Vec<f64> = (0..g.n()).map(|_| rng.random_range(-3.0..3.0)).collect();
        let got = quadratic_form(&build_laplacian(&g), &f).unwrap();
        let want = laplacian_double_sum(&g.adjacency_dense(), &f);
        prop_assert!((got - want).abs() <= 1e-10 * want.abs().max(1.0));
        prop_assert!(got >= -1e-10 * f.iter().map(|v| v * v).sum::<f64>());
    }

    #[test]
    fn eigenpairs_are_accurate(g in connected_graph()) {
        let l = build_laplacian(&g);
        let m = l.n().min(4);
        let eig = smallest_eigenvectors(&l, m).unwrap();
        let dense = l.to_dense();
        let norm = dense.norm();
        prop_assert!(eig.values[0] >= -1e-10);
        prop_assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        for (a, (lam, v)) in eig.values.iter().zip(&eig.vectors).enumerate() {
            let lv = l.apply(v);
            let res: f64 = lv.iter().zip(v).map(|(x, y)| (x - lam * y).powi(2)).sum::<f64>().sqrt();
            prop_assert!(res <= 1e-8 * norm.max(1.0));
            for (b, w) in eig.vectors.iter().enumerate() {
                let d: f64 = v.iter().zip(w).map(|(x, y)| x * y).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                prop_assert!((d - want).abs() <= 1e-8);
            }
        }
        // null vector of a connected graph is constant
        let n = l.n() as f64;
        let corr: f64 = eig.vectors[0].iter().sum::<f64>().abs() / n.sqrt();
        prop_assert!(corr > 1.0 - 1e-8);
    }

    #[test]
    fn power_iteration_agrees_with_dense(g in connected_graph()) {
        let l = build_laplacian(&g);
        let dense = nalgebra::SymmetricEigen::new(l.to_dense()).eigenvalues.max();
        let est = max_eigenvalue(std::slice::from_ref(&l)).unwrap();
        prop_assert!(est.value <= dense * (1.0 + 1e-12));
        prop_assert!((est.value - dense).abs() <= 1e-6 * dense);
    }
}
