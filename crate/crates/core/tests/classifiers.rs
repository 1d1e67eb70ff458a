use freshprince_core::classifiers::{
    argmax, fit_rotation_forest, fit_tree, predict_forest, ClassifierOptions, ClassifierSpec, RidgeRegression,
    RotationForestConfig, TrainedClassifier, RIDGE_ALPHAS,
};
use freshprince_core::dataset::TimeSeriesDataset;
use freshprince_core::evaluation::{compute_metrics, PredictionRecord};
use freshprince_core::exec::Sequential;
use freshprince_core::linalg::Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller keeps the test free of extra dependencies.
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    let v: f64 = rng.gen();
    (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
}

#[test]
fn forest_separates_gaussian_classes() {
    for seed in 0..5 {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + seed);
        let mut rows = Vec::new();
        let mut y = Vec::new();
        for i in 0..40 {
            let class = i % 2;
            let shift = if class == 0 { -1.5 } else { 1.5 };
            rows.push((0..10).map(|_| shift + gaussian(&mut rng)).collect::<Vec<f64>>());
            y.push(class);
        }
        let x = Matrix::from_rows(&rows);
        let model = fit_rotation_forest(&x, &y, 2, &RotationForestConfig::default(), seed, &Sequential).unwrap();
        assert_eq!(model.members().len(), 200);
        let p = predict_forest(&model, &x).unwrap();
        let acc = p.iter().zip(&y).filter(|(r, &t)| argmax(r) == t).count() as f64 / 40.0;
        assert!(acc >= 0.95, "seed {seed}: {acc}");
        for r in &p {
            assert!((r.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            assert!(r.iter().all(|v| (0.0..=1.0).contains(v)));
        }
    }
}

#[test]
fn forest_is_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let x = Matrix::from_vec(20, 4, (0..80).map(|_| rng.gen()).collect());
    let y: Vec<usize> = (0..20).map(|i| i % 3).collect();
    let cfg = RotationForestConfig {
        n_trees: 10,
        ..Default::default()
    };
    let a = fit_rotation_forest(&x, &y, 3, &cfg, 42, &Sequential).unwrap();
    let b = fit_rotation_forest(&x, &y, 3, &cfg, 42, &Sequential).unwrap();
    assert_eq!(a, b);
    let t = Matrix::from_vec(5, 4, (0..20).map(|_| rng.gen()).collect());
    assert_eq!(predict_forest(&a, &t).unwrap(), predict_forest(&b, &t).unwrap());
}

#[test]
fn tree_xor_in_two_dimensions() {
    let x = Matrix::from_rows(&[[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]]);
    let y = [0, 1, 1, 0];
    let t = fit_tree(&x, &y, 2).unwrap();
    assert_eq!(t.depth(), 2);
    let p = t.predict_proba(&x).unwrap();
    for (r, &want) in p.iter().zip(&y) {
        assert_eq!(argmax(r), want);
    }
}

#[test]
fn ridge_recovers_exact_linear_targets() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let n = 30;
    let x = Matrix::from_vec(n, 3, (0..n * 3).map(|_| rng.gen_range(-2.0..2.0)).collect());
    let w = [1.5, -0.7, 2.0];
    let target = |row: &[f64]| 0.3 + row.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>();
    let y = Matrix::from_vec(n, 1, (0..n).map(|i| target(x.row(i))).collect());
    let model = RidgeRegression::fit(&x, &y, &RIDGE_ALPHAS).unwrap();
    assert_eq!(model.alpha, 1e-3);
    for _ in 0..10 {
        let row: Vec<f64> = (0..3).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let got = model.predict_row(&row)[0];
        assert!((got - target(&row)).abs() < 1e-3, "{got}");
    }
}

#[test]
fn single_class_training_predicts_that_class() {
    let ds = TimeSeriesDataset::new(
        "one",
        (0..6).map(|i| (0..16).map(|t| (t * i) as f64 * 0.1).collect()).collect(),
        &["b"; 6],
        ["a", "b"].map(String::from),
    )
    .unwrap();
    let options = ClassifierOptions {
        forest: RotationForestConfig {
            n_trees: 3,
            ..Default::default()
        },
        ..Default::default()
    };
    for name in ["freshprince", "rotf", "ridgecv", "dtw1nn"] {
        let spec = ClassifierSpec::parse(name).unwrap();
        let m = TrainedClassifier::fit(spec, &ds, &options, 0, &Sequential).unwrap();
        for r in m.predict_proba(&ds, &Sequential).unwrap() {
            assert_eq!(r, vec![0.0, 1.0], "{name}");
        }
    }
}

fn record(t: usize, probs: &[f64]) -> PredictionRecord {
    PredictionRecord {
        true_label: t,
        predicted_label: argmax(probs),
        probabilities: probs.to_vec(),
        fit_time_ms: 0.0,
        predict_time_ms: 0.0,
    }
}

/// Area under the ROC curve by sweeping every threshold.
fn threshold_auc(scores: &[f64], positive: &[bool]) -> f64 {
    let mut thresholds: Vec<f64> = scores.to_vec();
    thresholds.push(f64::INFINITY);
    thresholds.sort_by(|a, b| b.total_cmp(a));
    thresholds.dedup();
    let pos = positive.iter().filter(|&&p| p).count() as f64;
    let neg = positive.len() as f64 - pos;
    let mut points = vec![(0.0, 0.0)];
    for t in thresholds {
        let tp = scores.iter().zip(positive).filter(|(s, &p)| **s >= t && p).count() as f64;
        let fp = scores.iter().zip(positive).filter(|(s, &p)| **s >= t && !p).count() as f64;
        points.push((fp / neg, tp / pos));
    }
    points.push((1.0, 1.0));
    points.windows(2).map(|w| (w[1].0 - w[0].0) * (w[1].1 + w[0].1) / 2.0).sum()
}

#[test]
fn auroc_agrees_with_threshold_sweep() {
    let recs: Vec<_> = [(1, 0.9), (1, 0.8), (0, 0.3), (0, 0.1)]
        .iter()
        .map(|&(t, p)| record(t, &[1.0 - p, p]))
        .collect();
    assert_eq!(compute_metrics(&recs, 2).unwrap().auroc, 1.0);

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let n = rng.gen_range(4..30);
        let recs: Vec<_> = (0..n)
            .map(|i| {
                let p = (rng.gen_range(0..5) as f64) / 4.0;
                record(i % 2, &[1.0 - p, p])
            })
            .collect();
        let scores: Vec<f64> = recs.iter().map(|r| r.probabilities[1]).collect();
        let pos: Vec<bool> = recs.iter().map(|r| r.true_label == 1).collect();
        let neg: Vec<bool> = pos.iter().map(|p| !p).collect();
        let neg_scores: Vec<f64> = recs.iter().map(|r| r.probabilities[0]).collect();
        let want = (threshold_auc(&scores, &pos) + threshold_auc(&neg_scores, &neg)) / 2.0;
        let got = compute_metrics(&recs, 2).unwrap().auroc;
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
    }
}

#[test]
fn balanced_truth_gives_equal_acc_and_balacc() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let recs: Vec<_> = (0..30)
        .map(|i| {
            let mut p = [rng.gen::<f64>(), rng.gen(), rng.gen()];
            let s: f64 = p.iter().sum();
            p.iter_mut().for_each(|v| *v /= s);
            record(i % 3, &p)
        })
        .collect();
    let m = compute_metrics(&recs, 3).unwrap();
    assert!((m.acc - m.balacc).abs() < 1e-12);
    for v in [m.acc, m.balacc, m.f1_macro, m.auroc] {
        assert!((0.0..=1.0).contains(&v));
    }
    assert!(m.nll >= 0.0);
}
