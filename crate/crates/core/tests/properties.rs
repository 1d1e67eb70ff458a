mod oracles;

use freshprince_core::classifiers::dtw::{dtw_distance, loo_accuracy};
use freshprince_core::classifiers::{
    argmax, fit_knn_dtw, fit_rotation_forest, loo_squared_error, predict_forest, RotationForestConfig,
};
use freshprince_core::dataset::{stratified_resample, TimeSeriesDataset};
use freshprince_core::evaluation::{average_ranks, holm_adjust, wilcoxon_signed_rank};
use freshprince_core::exec::Sequential;
use freshprince_core::features::{fit_pca, truncated_signature, FeatureMatrix};
use freshprince_core::linalg::Matrix;
use oracles::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn ridge_loo_matches_refitting() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let x = random_matrix(&mut rng, 12, 4);
        let y = random_matrix(&mut rng, 12, 2);
        for alpha in [1e-3, 1e-1, 1.0, 10.0, 1e3] {
            let fast = loo_squared_error(&x, &y, alpha);
            let slow = refit_loo(&x, &y, alpha);
            assert!((fast - slow).abs() <= 1e-8 * slow.max(1.0), "{fast} vs {slow}");
        }
    }
}

#[test]
fn ridge_loo_matches_refitting_when_wide() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let x = random_matrix(&mut rng, 6, 9);
    let y = random_matrix(&mut rng, 6, 1);
    for alpha in [1e-2, 1.0, 100.0] {
        let fast = loo_squared_error(&x, &y, alpha);
        let slow = refit_loo(&x, &y, alpha);
        assert!((fast - slow).abs() <= 1e-8 * slow.max(1.0), "{fast} vs {slow}");
    }
}

#[test]
fn dtw_matches_exhaustive_alignment() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let n = rng.gen_range(1..=6);
        let a: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let b: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        for k in 0..=10 {
            let w = k as f64 / 10.0;
            let radius = (w * n as f64 - 1e-9).ceil().max(0.0) as usize;
            let want = brute_dtw(&a, &b, radius, n - 1, n - 1);
            let got = dtw_distance(&a, &b, w).unwrap();
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }
    assert_eq!(dtw_distance(&[0.0, 0.0, 1.0], &[0.0, 1.0, 1.0], 1.0).unwrap(), 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn dtw_is_symmetric_monotone_and_zero_on_self(
        a in prop::collection::vec(-5.0f64..5.0, 20),
        b in prop::collection::vec(-5.0f64..5.0, 20),
    ) {
        let mut prev = f64::INFINITY;
        for k in 0..=20 {
            let w = k as f64 / 20.0;
            let d = dtw_distance(&a, &b, w).unwrap();
            prop_assert_eq!(d, dtw_distance(&b, &a, w).unwrap());
            prop_assert!(d <= prev);
            prop_assert_eq!(dtw_distance(&a, &a, w).unwrap(), 0.0);
            prev = d;
        }
    }

    #[test]
    fn pca_is_orthonormal_and_reconstruction_improves(seed in 0u64..10_000, n in 3usize..15, p in 1usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_matrix(&mut rng, n, p);
        let names = (0..p).map(|j| format!("f{j}")).collect();
        let rows: Vec<Vec<f64>> = (0..n).map(|i| x.row(i).to_vec()).collect();
        let fm = FeatureMatrix::new(names, &rows).unwrap();
        let max = (n - 1).min(p);
        let mut prev = f64::INFINITY;
        for k in 1..=max {
            let m = fit_pca(&fm, k).unwrap();
            let l = &m.loadings;
            for a in 0..k {
                for b in 0..k {
                    let d: f64 = (0..p).map(|j| l[(j, a)] * l[(j, b)]).sum();
                    let want = if a == b { 1.0 } else { 0.0 };
                    prop_assert!((d - want).abs() < 1e-8);
                }
            }
            let mut err = 0.0;
            for i in 0..n {
                let z = m.project(x.row(i));
                for j in 0..p {
                    let back = m.means[j] + (0..k).map(|c| l[(j, c)] * z[c]).sum::<f64>();
                    err += (x[(i, j)] - back).powi(2);
                }
            }
            prop_assert!(err <= prev + 1e-9);
            prev = err;
        }
    }

    #[test]
    fn resampling_preserves_counts(seed in 0u64..10_000, id in 0u64..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let classes = ["a", "b", "c"];
        let make = |rng: &mut ChaCha8Rng, n: usize, offset: usize| {
            let series: Vec<Vec<f64>> = (0..n).map(|i| vec![(offset + i) as f64, rng.gen(), rng.gen()]).collect();
            let labels: Vec<&str> = (0..n).map(|_| classes[rng.gen_range(0..3)]).collect();
            TimeSeriesDataset::new("r", series, &labels, classes.map(String::from)).unwrap()
        };
        let n_train = rng.gen_range(1..20);
        let n_test = rng.gen_range(1..20);
        let train = make(&mut rng, n_train, 0);
        let test = make(&mut rng, n_test, 1000);
        let pair = stratified_resample(&train, &test, id).unwrap();
        prop_assert_eq!(pair.train.class_counts(), train.class_counts());
        prop_assert_eq!(pair.test.class_counts(), test.class_counts());
        let mut before: Vec<u64> = train.iter_series().chain(test.iter_series()).map(|s| s[0] as u64).collect();
        let mut after: Vec<u64> = pair.train.iter_series().chain(pair.test.iter_series()).map(|s| s[0] as u64).collect();
        before.sort_unstable();
        after.sort_unstable();
        prop_assert_eq!(before, after);
        if id == 0 {
            prop_assert_eq!(&pair.train, &train);
            prop_assert_eq!(&pair.test, &test);
        }
        prop_assert_eq!(stratified_resample(&train, &test, id).unwrap(), pair);
    }

    #[test]
    fn holm_never_lowers_and_is_monotone(p in prop::collection::vec(0.0f64..=1.0, 1..20)) {
        let adj = holm_adjust(&p);
        let mut idx: Vec<usize> = (0..p.len()).collect();
        idx.sort_by(|&a, &b| p[a].total_cmp(&p[b]));
        for w in idx.windows(2) {
            prop_assert!(adj[w[0]] <= adj[w[1]]);
        }
        for (a, r) in adj.iter().zip(&p) {
            prop_assert!(a >= r && *a <= 1.0);
        }
    }

    #[test]
    fn rank_sums_per_dataset(table in prop::collection::vec(prop::collection::vec(0u8..5, 4), 1..10)) {
        let t: Vec<Vec<f64>> = table.iter().map(|r| r.iter().map(|&v| v as f64 / 4.0).collect()).collect();
        let ranks = average_ranks(&t).unwrap();
        let total: f64 = ranks.iter().sum();
        prop_assert!((total - 10.0).abs() < 1e-12);
    }

    #[test]
    fn argmax_survives_monotone_rescaling(p in prop::collection::vec(0.0f64..1.0, 1..8)) {
        let q: Vec<f64> = p.iter().map(|v| (3.0 * v).exp() + 1.0).collect();
        prop_assert_eq!(argmax(&p), argmax(&q));
    }
}

#[test]
fn exact_wilcoxon_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for case in 0..200 {
        let n = rng.gen_range(5..=12);
        let d: Vec<f64> = (0..n)
            .map(|_| {
                let v = if case % 2 == 0 { rng.gen_range(1..6) as f64 } else { rng.gen_range(0.01..3.0) };
                if rng.gen_bool(0.5) { v } else { -v }
            })
            .collect();
        let r = wilcoxon_signed_rank(&d, &vec![0.0; n]).unwrap();
        assert!(r.exact);
        assert_eq!(r.p_value, enumeration_p(&d), "{d:?}");
    }
}

#[test]
fn rotations_are_orthonormal() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let x = random_matrix(&mut rng, 30, 8);
    let y: Vec<usize> = (0..30).map(|i| i % 3).collect();
    let cfg = RotationForestConfig {
        n_trees: 20,
        ..Default::default()
    };
    let model = fit_rotation_forest(&x, &y, 3, &cfg, 9, &Sequential).unwrap();
    for m in model.members() {
        let r = m.rotation_matrix(model.kept_features());
        let rtr = r.transpose().matmul(&r);
        for i in 0..rtr.rows() {
            for j in 0..rtr.cols() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((rtr[(i, j)] - want).abs() < 1e-8);
            }
        }
    }
}

#[test]
fn member_rotation_then_tree_equals_single_member_forest() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let x = random_matrix(&mut rng, 25, 5);
    let y: Vec<usize> = (0..25).map(|i| usize::from(x[(i, 0)] + x[(i, 1)] > 0.0)).collect();
    let cfg = RotationForestConfig {
        n_trees: 4,
        ..Default::default()
    };
    let model = fit_rotation_forest(&x, &y, 2, &cfg, 2, &Sequential).unwrap();
    let test = random_matrix(&mut rng, 10, 5);
    let all = predict_forest(&model, &test).unwrap();
    let mut mean = vec![vec![0.0; 2]; 10];
    for m in model.members() {
        let rotated = m.rotate(&test);
        let p = m.tree.predict_proba(&rotated).unwrap();
        for (acc, row) in mean.iter_mut().zip(p) {
            for (a, v) in acc.iter_mut().zip(row) {
                *a += v / 4.0;
            }
        }
    }
    for (a, b) in all.iter().zip(&mean) {
        for (u, v) in a.iter().zip(b) {
            assert!((u - v).abs() < 1e-12);
        }
    }
}

#[test]
fn signature_satisfies_chen() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let d = rng.gen_range(1..=3);
        let depth = rng.gen_range(1..=4);
        let n1 = rng.gen_range(2..6);
        let n2 = rng.gen_range(2..6);
        let p = random_matrix(&mut rng, n1, d);
        let mut q = random_matrix(&mut rng, n2, d);
        for c in 0..d {
            let shift = p[(n1 - 1, c)] - q[(0, c)];
            for i in 0..n2 {
                q.row_mut(i)[c] += shift;
            }
        }
        let mut joined: Vec<Vec<f64>> = (0..n1).map(|i| p.row(i).to_vec()).collect();
        joined.extend((1..n2).map(|i| q.row(i).to_vec()));
        let whole = truncated_signature(&Matrix::from_rows(&joined), depth).unwrap();
        let sp = split_levels(&truncated_signature(&p, depth).unwrap(), d, depth);
        let sq = split_levels(&truncated_signature(&q, depth).unwrap(), d, depth);
        let chen: Vec<f64> = tensor_product(&sp, &sq).concat();
        for (a, b) in whole.iter().zip(&chen) {
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
    }
}

#[test]
fn knn_tuning_matches_explicit_loo() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let series: Vec<Vec<f64>> = (0..14)
        .map(|i| {
            let shift = rng.gen_range(0..4) as f64;
            (0..16)
                .map(|t| ((t as f64 - shift) * if i % 2 == 0 { 0.4 } else { 0.8 }).sin() + rng.gen_range(-0.2..0.2))
                .collect()
        })
        .collect();
    let labels: Vec<&str> = (0..14).map(|i| if i % 2 == 0 { "a" } else { "b" }).collect();
    let ds = TimeSeriesDataset::new("k", series, &labels, ["a", "b"].map(String::from)).unwrap();
    let model = fit_knn_dtw(&ds, &Sequential).unwrap();
    for (k, &acc) in model.tuning_accuracies().iter().enumerate() {
        let w = k as f64 / 100.0;
        // Per-case recomputation with the public distance.
        let mut hits = 0;
        for i in 0..ds.n_cases() {
            let mut best = (f64::INFINITY, usize::MAX);
            for j in 0..ds.n_cases() {
                if i == j {
                    continue;
                }
                let d = dtw_distance(ds.series(i), ds.series(j), w).unwrap();
                if d < best.0 {
                    best = (d, j);
                }
            }
            hits += usize::from(ds.label(best.1) == ds.label(i));
        }
        assert_eq!(acc, hits as f64 / 14.0, "window {w}");
        assert_eq!(acc, loo_accuracy(&ds, w, &Sequential).unwrap());
    }
    let best = model.tuning_accuracies().iter().cloned().fold(0.0, f64::max);
    let first = model.tuning_accuracies().iter().position(|&a| a == best).unwrap();
    assert_eq!(model.window(), first as f64 / 100.0);
    assert_eq!(fit_knn_dtw(&ds, &Sequential).unwrap(), model);
}
