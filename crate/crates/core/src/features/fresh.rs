//! The comprehensive "Fresh" feature catalog: feature generators expanded over
//! fixed parameter grids, in a fixed order.
//!
//! | family | columns |
//! |---|---|
//! | moments | `mean variance std skewness kurtosis median minimum maximum` |
//! | quantiles | `quantile_q10 .. quantile_q90` |
//! | energy and change | `energy mean_abs_change mean_change` |
//! | counts | `count_above_mean count_below_mean mean_crossings` |
//! | extrema locations | `first_loc_max last_loc_max first_loc_min last_loc_min` |
//! | strikes | `longest_strike_above_mean longest_strike_below_mean` |
//! | autocorrelation | `acf_lag1 .. acf_lag10 agg_acf_mean agg_acf_var pacf_lag1 .. pacf_lag5` |
//! | Fourier | `fft_real_k fft_imag_k fft_abs_k` for `k = 0..=10` |
//! | spectrum moments | `spectral_centroid spectral_variance spectral_skew spectral_kurtosis` |
//! | entropy | `binned_entropy_10 perm_entropy_3 perm_entropy_4` |
//! | nonlinearity | `c3_lag1 .. c3_lag3 cid_ce time_rev_asym_lag1 .. time_rev_asym_lag3` |
//! | trend | `linear_trend_slope linear_trend_intercept linear_trend_rsquared` |
//! | mass and peaks | `index_mass_q25 index_mass_q50 index_mass_q75 peaks_support1 peaks_support3 peaks_support5` |
//! | tails | `ratio_beyond_1std ratio_beyond_2std ratio_beyond_3std` |
//!
//! Skewness and kurtosis are population moment ratios (kurtosis in excess
//! form). Fourier coefficients are of the raw series; bins above the Nyquist
//! index are reported as 0. Spectrum moments treat the normalised one-sided
//! periodogram as a distribution over frequency `k/n`, `k >= 1`; the kurtosis
//! there is not in excess form.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::c22::{binned_entropy, c3, longest_run, permutation_entropy};
use super::spectral;
use crate::stats;
use crate::{Error, Result};

pub const FRESH_FEATURE_COUNT: usize = 105;
pub const FRESH_MIN_LENGTH: usize = 12;

const QUANTILES: [usize; 9] = [10, 20, 30, 40, 50, 60, 70, 80, 90];
const ACF_LAGS: usize = 10;
const AGG_ACF_MAX_LAG: usize = 40;
const PACF_LAGS: usize = 5;
const FFT_COEFFS: usize = 11;

/// Column names of [`fresh_bank`], in output order.
pub fn fresh_feature_names() -> Vec<String> {
    let mut names: Vec<String> = [
        "mean", "variance", "std", "skewness", "kurtosis", "median", "minimum", "maximum",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    names.extend(QUANTILES.iter().map(|q| format!("quantile_q{q}")));
    for s in [
        "energy",
        "mean_abs_change",
        "mean_change",
        "count_above_mean",
        "count_below_mean",
        "mean_crossings",
        "first_loc_max",
        "last_loc_max",
        "first_loc_min",
        "last_loc_min",
        "longest_strike_above_mean",
        "longest_strike_below_mean",
    ] {
        names.push(s.into());
    }
    names.extend((1..=ACF_LAGS).map(|k| format!("acf_lag{k}")));
    names.push("agg_acf_mean".into());
    names.push("agg_acf_var".into());
    names.extend((1..=PACF_LAGS).map(|k| format!("pacf_lag{k}")));
    for part in ["real", "imag", "abs"] {
        names.extend((0..FFT_COEFFS).map(|k| format!("fft_{part}_{k}")));
    }
    for s in [
        "spectral_centroid",
        "spectral_variance",
        "spectral_skew",
        "spectral_kurtosis",
        "binned_entropy_10",
        "perm_entropy_3",
        "perm_entropy_4",
    ] {
        names.push(s.into());
    }
    names.extend((1..=3).map(|l| format!("c3_lag{l}")));
    names.push("cid_ce".into());
    names.extend((1..=3).map(|l| format!("time_rev_asym_lag{l}")));
    for s in [
        "linear_trend_slope",
        "linear_trend_intercept",
        "linear_trend_rsquared",
        "index_mass_q25",
        "index_mass_q50",
        "index_mass_q75",
        "peaks_support1",
        "peaks_support3",
        "peaks_support5",
        "ratio_beyond_1std",
        "ratio_beyond_2std",
        "ratio_beyond_3std",
    ] {
        names.push(s.into());
    }
    names
}

/// Computes the full Fresh catalog for one series.
pub fn fresh_bank(series: &[f64]) -> Result<[f64; FRESH_FEATURE_COUNT]> {
    let n = series.len();
    if n < FRESH_MIN_LENGTH {
        return Err(Error::TooShort {
            needed: FRESH_MIN_LENGTH,
            got: n,
        });
    }
    let x = series;
    let nf = n as f64;
    let mut out = Vec::with_capacity(FRESH_FEATURE_COUNT);

    let mean = stats::mean(x);
    let var = stats::sample_variance(x);
    let std = libm::sqrt(var);
    let (m2, m3, m4) = central_moments(x, mean);
    let sorted = stats::sorted(x);
    out.push(mean);
    out.push(var);
    out.push(std);
    out.push(if m2 > 0.0 { m3 / libm::pow(m2, 1.5) } else { f64::NAN });
    out.push(if m2 > 0.0 { m4 / (m2 * m2) - 3.0 } else { f64::NAN });
    out.push(stats::quantile_sorted(&sorted, 0.5));
    out.push(sorted[0]);
    out.push(sorted[n - 1]);
    for q in QUANTILES {
        out.push(stats::quantile_sorted(&sorted, q as f64 / 100.0));
    }

    let diffs: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    out.push(x.iter().map(|v| v * v).sum());
    out.push(diffs.iter().map(|d| libm::fabs(*d)).sum::<f64>() / diffs.len() as f64);
    out.push((x[n - 1] - x[0]) / (n - 1) as f64);
    out.push(x.iter().filter(|&&v| v > mean).count() as f64);
    out.push(x.iter().filter(|&&v| v < mean).count() as f64);
    out.push(x.windows(2).filter(|w| (w[0] > mean) != (w[1] > mean)).count() as f64);

    let (first_max, last_max, first_min, last_min) = extrema_positions(x);
    out.push(first_max as f64 / nf);
    out.push((last_max + 1) as f64 / nf);
    out.push(first_min as f64 / nf);
    out.push((last_min + 1) as f64 / nf);
    out.push(longest_run(x.iter().map(|&v| v > mean)) as f64);
    out.push(longest_run(x.iter().map(|&v| v < mean)) as f64);

    let agg_lag = AGG_ACF_MAX_LAG.min(n - 2);
    match spectral::autocorrelation(x, AGG_ACF_MAX_LAG.max(ACF_LAGS)) {
        Some(acf) => {
            out.extend_from_slice(&acf[1..=ACF_LAGS]);
            let agg = &acf[1..=agg_lag];
            out.push(stats::mean(agg));
            out.push(stats::sample_variance(agg));
            out.extend(partial_autocorrelation(&acf[..=PACF_LAGS]));
        }
        None => {
            out.extend(core::iter::repeat_n(f64::NAN, ACF_LAGS + 2 + PACF_LAGS));
        }
    }

    let spec = spectral::dft(x);
    let nyquist = n / 2;
    let coeff = |k: usize| if k <= nyquist { spec[k] } else { num_complex::Complex64::new(0.0, 0.0) };
    out.extend((0..FFT_COEFFS).map(|k| coeff(k).re));
    out.extend((0..FFT_COEFFS).map(|k| coeff(k).im));
    out.extend((0..FFT_COEFFS).map(|k| coeff(k).norm()));

    out.extend(spectral_moments(&spectral::periodogram(x), n));
    out.push(binned_entropy(x, 10));
    out.push(permutation_entropy(x, 3));
    out.push(permutation_entropy(x, 4));

    for lag in 1..=3 {
        out.push(c3(x, lag));
    }
    out.push(libm::sqrt(diffs.iter().map(|d| d * d).sum()));
    for lag in 1..=3 {
        out.push(time_reversal_asymmetry(x, lag));
    }

    let (slope, intercept, r2) = stats::linear_trend(x);
    out.push(slope);
    out.push(intercept);
    out.push(r2);

    let abs_total: f64 = x.iter().map(|v| libm::fabs(*v)).sum();
    for q in [0.25, 0.5, 0.75] {
        out.push(index_mass_quantile(x, abs_total, q));
    }
    for support in [1, 3, 5] {
        out.push(count_peaks(x, support) as f64);
    }
    for r in [1.0, 2.0, 3.0] {
        out.push(x.iter().filter(|&&v| libm::fabs(v - mean) > r * std).count() as f64 / nf);
    }

    debug_assert_eq!(out.len(), FRESH_FEATURE_COUNT);
    let mut arr = [0.0; FRESH_FEATURE_COUNT];
    arr.copy_from_slice(&out);
    Ok(arr)
}

fn central_moments(x: &[f64], mean: f64) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for v in x {
        let d = v - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    (m2 / n, m3 / n, m4 / n)
}

fn extrema_positions(x: &[f64]) -> (usize, usize, usize, usize) {
    let (mut first_max, mut last_max, mut first_min, mut last_min) = (0, 0, 0, 0);
    for (i, &v) in x.iter().enumerate() {
        if v > x[first_max] {
            first_max = i;
        }
        if v >= x[last_max] {
            last_max = i;
        }
        if v < x[first_min] {
            first_min = i;
        }
        if v <= x[last_min] {
            last_min = i;
        }
    }
    (first_max, last_max, first_min, last_min)
}

/// Durbin–Levinson recursion; `acf[0]` must be 1.
fn partial_autocorrelation(acf: &[f64]) -> Vec<f64> {
    let lags = acf.len() - 1;
    let mut out = Vec::with_capacity(lags);
    let mut phi: Vec<f64> = Vec::new();
    for k in 1..=lags {
        let num = acf[k] - (1..k).map(|j| phi[j - 1] * acf[k - j]).sum::<f64>();
        let den = 1.0 - (1..k).map(|j| phi[j - 1] * acf[j]).sum::<f64>();
        let pkk = num / den;
        let mut next: Vec<f64> = (1..k).map(|j| phi[j - 1] - pkk * phi[k - j - 1]).collect();
        next.push(pkk);
        phi = next;
        out.push(pkk);
    }
    out
}

fn spectral_moments(power: &[f64], n: usize) -> [f64; 4] {
    let total: f64 = power.iter().sum();
    if !(total > 0.0) {
        return [f64::NAN; 4];
    }
    let freq = |i: usize| (i + 1) as f64 / n as f64;
    let centroid: f64 = power.iter().enumerate().map(|(i, p)| freq(i) * p).sum::<f64>() / total;
    let moment = |k: i32| {
        power
            .iter()
            .enumerate()
            .map(|(i, p)| libm::pow(freq(i) - centroid, k as f64) * p)
            .sum::<f64>()
            / total
    };
    let variance = moment(2);
    let (skew, kurt) = if variance > 0.0 {
        (moment(3) / libm::pow(variance, 1.5), moment(4) / (variance * variance))
    } else {
        (f64::NAN, f64::NAN)
    };
    [centroid, variance, skew, kurt]
}

/// Mean of `x_{t+2l}² x_{t+l} - x_{t+l} x_t²`.
fn time_reversal_asymmetry(x: &[f64], lag: usize) -> f64 {
    let m = x.len().saturating_sub(2 * lag);
    if m == 0 {
        return f64::NAN;
    }
    (0..m)
        .map(|t| {
            let a = x[t];
            let b = x[t + lag];
            let c = x[t + 2 * lag];
            c * c * b - b * a * a
        })
        .sum::<f64>()
        / m as f64
}

/// Relative index `(i + 1) / n` of the first position where the cumulative
/// absolute mass reaches fraction `q`.
fn index_mass_quantile(x: &[f64], total: f64, q: f64) -> f64 {
    if !(total > 0.0) {
        return f64::NAN;
    }
    let mut acc = 0.0;
    for (i, v) in x.iter().enumerate() {
        acc += libm::fabs(*v);
        if acc / total >= q {
            return (i + 1) as f64 / x.len() as f64;
        }
    }
    1.0
}

/// Positions strictly greater than every neighbour within `support` on both
/// sides; positions without a full neighbourhood are not candidates.
fn count_peaks(x: &[f64], support: usize) -> usize {
    let n = x.len();
    if n < 2 * support + 1 {
        return 0;
    }
    (support..n - support)
        .filter(|&i| (1..=support).all(|d| x[i] > x[i - d] && x[i] > x[i + d]))
        .count()
}
