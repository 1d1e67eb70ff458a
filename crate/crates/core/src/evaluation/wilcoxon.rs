use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::stats::{average_ranks, normal_sf};
use crate::{Error, Result};

/// Largest number of non-zero differences handled by exact enumeration.
pub const EXACT_MAX_N: usize = 20;
pub const WILCOXON_MIN_N: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WilcoxonResult {
    /// `min(W+, W-)`.
    pub statistic: f64,
    pub w_plus: f64,
    pub w_minus: f64,
    /// Non-zero differences used.
    pub n: usize,
    pub p_value: f64,
    pub exact: bool,
}

/// Two-sided Wilcoxon signed-rank test of `x - y`.
///
/// Zero differences are dropped and tied magnitudes share average ranks. The
/// exact p-value is the share of the `2^n` sign assignments whose statistic
/// is at most the observed one; above [`EXACT_MAX_N`] the normal
/// approximation with tie-corrected variance and continuity correction is
/// used.
pub fn wilcoxon_signed_rank(x: &[f64], y: &[f64]) -> Result<WilcoxonResult> {
    if x.len() != y.len() {
        return Err(Error::ShapeMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    let d: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).filter(|v| *v != 0.0).collect();
    if d.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteInput);
    }
    let n = d.len();
    if n < WILCOXON_MIN_N {
        return Err(Error::InsufficientData {
            needed: WILCOXON_MIN_N,
            got: n,
        });
    }
    let magnitudes: Vec<f64> = d.iter().map(|v| v.abs()).collect();
    let ranks = average_ranks(&magnitudes);
    let w_plus: f64 = d.iter().zip(&ranks).filter(|(v, _)| **v > 0.0).map(|(_, r)| r).sum();
    let total = (n * (n + 1)) as f64 / 2.0;
    let w_minus = total - w_plus;
    let statistic = w_plus.min(w_minus);
    let (p_value, exact) = if n <= EXACT_MAX_N {
        (exact_p(&ranks, statistic), true)
    } else {
        (normal_p(&magnitudes, n, statistic), false)
    };
    Ok(WilcoxonResult {
        statistic,
        w_plus,
        w_minus,
        n,
        p_value,
        exact,
    })
}

/// Share of sign assignments with `min(W+, W-) <= statistic`, by dynamic
/// programming over doubled (hence integral) ranks.
fn exact_p(ranks: &[f64], statistic: f64) -> f64 {
    let doubled: Vec<usize> = ranks.iter().map(|r| libm::round(2.0 * r) as usize).collect();
    let total: usize = doubled.iter().sum();
    let mut counts = vec![0u64; total + 1];
    counts[0] = 1;
    let mut reach = 0;
    for &r in &doubled {
        for s in (0..=reach).rev() {
            if counts[s] > 0 {
                counts[s + r] += counts[s];
            }
        }
        reach += r;
    }
    let t = libm::round(2.0 * statistic) as usize;
    let hits: u64 = counts
        .iter()
        .enumerate()
        .filter(|&(s, _)| s.min(total - s) <= t)
        .map(|(_, c)| c)
        .sum();
    hits as f64 / libm::pow(2.0, ranks.len() as f64)
}

fn normal_p(magnitudes: &[f64], n: usize, statistic: f64) -> f64 {
    let nf = n as f64;
    let mean = nf * (nf + 1.0) / 4.0;
    let mut sorted = magnitudes.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let mut ties = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j + 1 < sorted.len() && sorted[j + 1] == sorted[i] {
            j += 1;
        }
        let t = (j - i + 1) as f64;
        ties += t * t * t - t;
        i = j + 1;
    }
    let var = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 24.0 - ties / 48.0;
    if !(var > 0.0) {
        return 1.0;
    }
    let z = ((mean - statistic).abs() - 0.5).max(0.0) / libm::sqrt(var);
    (2.0 * normal_sf(z)).min(1.0)
}

/// Holm step-down adjustment, returned in input order.
pub fn holm_adjust(p: &[f64]) -> Vec<f64> {
    let m = p.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| p[a].total_cmp(&p[b]).then(a.cmp(&b)));
    let mut out = vec![0.0; m];
    let mut running: f64 = 0.0;
    for (j, &i) in order.iter().enumerate() {
        let scaled = ((m - j) as f64 * p[i]).min(1.0);
        running = running.max(scaled);
        out[i] = running;
    }
    out
}
