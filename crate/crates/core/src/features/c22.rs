//! A 22-feature bank covering the catch22 concept families (distribution
//! shape, linear and nonlinear autocorrelation, successive differences,
//! fluctuation analysis, spectral power, symbolic patterns) with
//! self-contained formulas. Values are not bit-compatible with catch22.

use alloc::vec;
use alloc::vec::Vec;

use super::spectral;
use crate::stats;
use crate::{Error, Result};

pub const C22_WIDTH: usize = 22;
pub const C22_MIN_LENGTH: usize = 12;

pub const C22_NAMES: [&str; C22_WIDTH] = [
    "hist_mode_5",
    "hist_mode_10",
    "acf_timescale",
    "acf_first_min",
    "acf_sumsq",
    "stretch_high",
    "stretch_dec",
    "entropy_bin10",
    "perm_entropy_3",
    "time_rev_asym",
    "c3_1",
    "spec_centroid",
    "low_freq_power",
    "outlier_time_pos",
    "outlier_time_neg",
    "above_mean_frac",
    "mean_abs_change",
    "cid_ce",
    "stat_av_5",
    "trend_slope",
    "iqr",
    "ami_lag1",
];

/// Computes the 22 features in [`C22_NAMES`] order. Histogram features
/// (`hist_mode_*`, `entropy_bin10`) use the z-scored series.
pub fn c22_bank(series: &[f64]) -> Result<[f64; C22_WIDTH]> {
    let n = series.len();
    if n < C22_MIN_LENGTH {
        return Err(Error::TooShort {
            needed: C22_MIN_LENGTH,
            got: n,
        });
    }
    let x = series;
    let mean = stats::mean(x);
    let std = stats::sample_std(x);
    let z: Vec<f64> = if std > 0.0 {
        x.iter().map(|v| (v - mean) / std).collect()
    } else {
        vec![0.0; n]
    };
    let diffs: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let acf = spectral::autocorrelation(x, n - 1);
    let sorted = stats::sorted(x);

    let mut out = [0.0; C22_WIDTH];
    out[0] = histogram_mode(&z, 5);
    out[1] = histogram_mode(&z, 10);
    match &acf {
        Some(acf) => {
            out[2] = acf_timescale(acf, n);
            out[3] = acf_first_min(acf, n);
            out[4] = acf[1..=10].iter().map(|r| r * r).sum();
        }
        None => {
            out[2] = f64::NAN;
            out[3] = f64::NAN;
            out[4] = f64::NAN;
        }
    }
    out[5] = longest_run(x.iter().map(|&v| v > mean)) as f64;
    out[6] = longest_run(diffs.iter().map(|&d| d < 0.0)) as f64;
    out[7] = binned_entropy(&z, 10);
    out[8] = permutation_entropy(x, 3) / libm::log(6.0);
    out[9] = {
        let sd = stats::sample_std(&diffs);
        if sd > 0.0 {
            stats::mean(&diffs.iter().map(|d| d * d * d).collect::<Vec<_>>()) / (sd * sd * sd)
        } else {
            0.0
        }
    };
    out[10] = c3(x, 1);
    let power = spectral::periodogram(x);
    let total: f64 = power.iter().sum();
    out[11] = if total > 0.0 {
        power
            .iter()
            .enumerate()
            .map(|(i, p)| (i + 1) as f64 / n as f64 * p)
            .sum::<f64>()
            / total
    } else {
        f64::NAN
    };
    out[12] = if total > 0.0 {
        let low = power.len().div_ceil(5);
        power[..low].iter().sum::<f64>() / total
    } else {
        f64::NAN
    };
    out[13] = outlier_timing(x, |v| v > mean + std);
    out[14] = outlier_timing(x, |v| v < mean - std);
    out[15] = x.iter().filter(|&&v| v > mean).count() as f64 / n as f64;
    out[16] = diffs.iter().map(|d| libm::fabs(*d)).sum::<f64>() / diffs.len() as f64;
    out[17] = libm::sqrt(diffs.iter().map(|d| d * d).sum());
    out[18] = if std > 0.0 {
        let seg_means: Vec<f64> = (0..5)
            .map(|i| stats::mean(&x[i * n / 5..(i + 1) * n / 5]))
            .collect();
        stats::sample_std(&seg_means) / std
    } else {
        0.0
    };
    out[19] = stats::linear_trend(x).0;
    out[20] = stats::quantile_sorted(&sorted, 0.75) - stats::quantile_sorted(&sorted, 0.25);
    out[21] = auto_mutual_information(x, 4);
    Ok(out)
}

/// Bin index of each value for `bins` equal-width bins spanning `[min, max]`.
/// A constant input lands entirely in bin 0.
pub(crate) fn bin_indices(x: &[f64], bins: usize) -> (Vec<usize>, f64, f64) {
    let lo = stats::min(x);
    let hi = stats::max(x);
    let width = (hi - lo) / bins as f64;
    let idx = x
        .iter()
        .map(|&v| {
            if width > 0.0 {
                (libm::floor((v - lo) / width) as usize).min(bins - 1)
            } else {
                0
            }
        })
        .collect();
    (idx, lo, width)
}

fn histogram_mode(x: &[f64], bins: usize) -> f64 {
    let (idx, lo, width) = bin_indices(x, bins);
    let mut counts = vec![0usize; bins];
    for i in idx {
        counts[i] += 1;
    }
    let mut best = 0;
    for (i, &c) in counts.iter().enumerate() {
        if c > counts[best] {
            best = i;
        }
    }
    lo + (best as f64 + 0.5) * width
}

/// Shannon entropy (natural log) of the equal-width histogram distribution.
pub(crate) fn binned_entropy(x: &[f64], bins: usize) -> f64 {
    let (idx, _, _) = bin_indices(x, bins);
    let mut counts = vec![0usize; bins];
    for i in idx {
        counts[i] += 1;
    }
    let n = x.len() as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * libm::log(p)
        })
        .sum::<f64>()
        + 0.0
}

fn acf_timescale(acf: &[f64], n: usize) -> f64 {
    let threshold = libm::exp(-1.0);
    acf.iter()
        .enumerate()
        .skip(1)
        .find(|(_, &r)| r < threshold)
        .map_or(n as f64, |(k, _)| k as f64)
}

fn acf_first_min(acf: &[f64], n: usize) -> f64 {
    for k in 1..acf.len() {
        let right_ok = k + 1 >= acf.len() || acf[k] <= acf[k + 1];
        if acf[k] < acf[k - 1] && right_ok {
            return k as f64;
        }
    }
    n as f64
}

pub(crate) fn longest_run(flags: impl Iterator<Item = bool>) -> usize {
    let mut best = 0;
    let mut cur = 0;
    for f in flags {
        if f {
            cur += 1;
            best = best.max(cur);
        } else {
            cur = 0;
        }
    }
    best
}

/// Permutation entropy (natural log, unnormalized) of ordinal patterns of
/// `order` consecutive values at lag 1. Ties rank by position.
pub(crate) fn permutation_entropy(x: &[f64], order: usize) -> f64 {
    if x.len() < order {
        return f64::NAN;
    }
    let mut counts = alloc::collections::BTreeMap::<u64, usize>::new();
    let mut perm: Vec<usize> = (0..order).collect();
    let windows = x.len() - order + 1;
    for w in x.windows(order) {
        for (i, p) in perm.iter_mut().enumerate() {
            *p = i;
        }
        perm.sort_by(|&a, &b| w[a].total_cmp(&w[b]).then(a.cmp(&b)));
        let code = perm.iter().fold(0u64, |acc, &p| acc * order as u64 + p as u64);
        *counts.entry(code).or_default() += 1;
    }
    counts
        .values()
        .map(|&c| {
            let p = c as f64 / windows as f64;
            -p * libm::log(p)
        })
        .sum::<f64>()
        + 0.0
}

/// Mean of `x_t · x_{t+lag} · x_{t+2·lag}`.
pub(crate) fn c3(x: &[f64], lag: usize) -> f64 {
    let m = x.len().saturating_sub(2 * lag);
    if m == 0 {
        return f64::NAN;
    }
    (0..m).map(|t| x[t] * x[t + lag] * x[t + 2 * lag]).sum::<f64>() / m as f64
}

fn outlier_timing(x: &[f64], pick: impl Fn(f64) -> bool) -> f64 {
    let n = x.len();
    let idx: Vec<f64> = x
        .iter()
        .enumerate()
        .filter(|(_, &v)| pick(v))
        .map(|(t, _)| t as f64 / (n - 1) as f64)
        .collect();
    if idx.is_empty() {
        0.5
    } else {
        stats::quantile_sorted(&idx, 0.5)
    }
}

/// Mutual information between `x_t` and `x_{t+1}` from a `bins × bins` joint
/// histogram over the value range.
fn auto_mutual_information(x: &[f64], bins: usize) -> f64 {
    let (idx, _, _) = bin_indices(x, bins);
    let pairs = idx.len() - 1;
    let mut joint = vec![0usize; bins * bins];
    for w in idx.windows(2) {
        joint[w[0] * bins + w[1]] += 1;
    }
    let mut px = vec![0.0; bins];
    let mut py = vec![0.0; bins];
    for i in 0..bins {
        for j in 0..bins {
            let p = joint[i * bins + j] as f64 / pairs as f64;
            px[i] += p;
            py[j] += p;
        }
    }
    let mut mi = 0.0;
    for i in 0..bins {
        for j in 0..bins {
            let c = joint[i * bins + j];
            if c > 0 {
                let p = c as f64 / pairs as f64;
                mi += p * libm::log(p / (px[i] * py[j]));
            }
        }
    }
    mi
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(name: &str) -> usize {
        C22_NAMES.iter().position(|&n| n == name).unwrap()
    }

    fn noise(n: usize, seed: u64) -> Vec<f64> {
        use rand::Rng;
        let mut rng = crate::rng::stream(seed, 0);
        (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
    }

    #[test]
    fn constant_series_degenerate_values() {
        let f = c22_bank(&[3.0; 40]).unwrap();
        assert_eq!(f[idx("entropy_bin10")], 0.0);
        assert_eq!(f[idx("stretch_dec")], 0.0);
        assert_eq!(f[idx("trend_slope")], 0.0);
        assert_eq!(f[idx("mean_abs_change")], 0.0);
    }

    #[test]
    fn ramp_hand_values() {
        let x: Vec<f64> = (0..100).map(|t| t as f64).collect();
        let f = c22_bank(&x).unwrap();
        assert_eq!(f[idx("stretch_high")], 50.0);
        assert_eq!(f[idx("above_mean_frac")], 0.5);
        assert!((f[idx("trend_slope")] - 1.0).abs() < 1e-12);
        assert_eq!(f[idx("stretch_dec")], 0.0);
        assert_eq!(f[idx("mean_abs_change")], 1.0);
        assert!((f[idx("cid_ce")] - libm::sqrt(99.0)).abs() < 1e-12);
        assert!((f[idx("iqr")] - 49.5).abs() < 1e-12);
    }

    #[test]
    fn z_features_ignore_affine_maps() {
        for seed in 0..20 {
            let x = noise(120, seed);
            let y: Vec<f64> = x.iter().map(|v| v * 10.0 + 7.0).collect();
            let fx = c22_bank(&x).unwrap();
            let fy = c22_bank(&y).unwrap();
            for name in ["hist_mode_5", "hist_mode_10", "entropy_bin10"] {
                let i = idx(name);
                assert!((fx[i] - fy[i]).abs() <= 1e-9, "{name}: {} vs {}", fx[i], fy[i]);
            }
        }
    }

    #[test]
    fn order_free_features_survive_reversal() {
        let x = noise(64, 3);
        let mut r = x.clone();
        r.reverse();
        let a = c22_bank(&x).unwrap();
        let b = c22_bank(&r).unwrap();
        for name in ["hist_mode_5", "hist_mode_10", "entropy_bin10", "above_mean_frac", "iqr"] {
            let i = idx(name);
            assert!((a[i] - b[i]).abs() < 1e-9, "{name}");
        }
    }

    #[test]
    fn permutation_entropy_of_monotone_series_is_zero() {
        let x: Vec<f64> = (0..30).map(|t| t as f64).collect();
        assert_eq!(c22_bank(&x).unwrap()[idx("perm_entropy_3")], 0.0);
    }

    #[test]
    fn too_short() {
        assert_eq!(
            c22_bank(&[1.0; 11]),
            Err(Error::TooShort { needed: 12, got: 11 })
        );
    }
}
