//! Discrete Fourier transform (radix-2, Bluestein for other lengths),
//! periodogram and autocorrelation.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

use crate::stats;

/// In-place iterative radix-2 FFT. `buf.len()` must be a power of two.
fn fft_pow2(buf: &mut [Complex64], inverse: bool) {
    let n = buf.len();
    debug_assert!(n.is_power_of_two());
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            buf.swap(i, j);
        }
    }
    let sign = if inverse { 1.0 } else { -1.0 };
    let mut len = 2;
    while len <= n {
        let ang = sign * 2.0 * PI / len as f64;
        let half = len / 2;
        let twiddles: Vec<Complex64> = (0..half)
            .map(|k| Complex64::new(libm::cos(ang * k as f64), libm::sin(ang * k as f64)))
            .collect();
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let u = buf[start + k];
                let v = buf[start + k + half] * twiddles[k];
                buf[start + k] = u + v;
                buf[start + k + half] = u - v;
            }
        }
        len <<= 1;
    }
}

/// Unnormalized forward DFT `X_k = Σ x_t e^{-2πikt/n}` of any length.
pub fn dft(x: &[f64]) -> Vec<Complex64> {
    let n = x.len();
    if n == 0 {
        return Vec::new();
    }
    if n.is_power_of_two() {
        let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        fft_pow2(&mut buf, false);
        return buf;
    }
    // Bluestein: X_k = w_k Σ (x_t w_t) conj(w_{k-t}), w_k = e^{-iπk²/n}.
    let m = (2 * n - 1).next_power_of_two();
    let chirp: Vec<Complex64> = (0..n)
        .map(|k| {
            let k2 = ((k as u128 * k as u128) % (2 * n as u128)) as f64;
            let a = -PI * k2 / n as f64;
            Complex64::new(libm::cos(a), libm::sin(a))
        })
        .collect();
    let mut a = vec![Complex64::new(0.0, 0.0); m];
    for t in 0..n {
        a[t] = chirp[t] * x[t];
    }
    let mut b = vec![Complex64::new(0.0, 0.0); m];
    b[0] = chirp[0].conj();
    for k in 1..n {
        b[k] = chirp[k].conj();
        b[m - k] = chirp[k].conj();
    }
    fft_pow2(&mut a, false);
    fft_pow2(&mut b, false);
    for (u, v) in a.iter_mut().zip(&b) {
        *u *= v;
    }
    fft_pow2(&mut a, true);
    let scale = 1.0 / m as f64;
    (0..n).map(|k| chirp[k] * a[k] * scale).collect()
}

/// One-sided periodogram `|X_k|²` of the mean-removed series for
/// `k = 1..=n/2`; element `i` belongs to frequency `(i + 1) / n`.
pub fn periodogram(x: &[f64]) -> Vec<f64> {
    let m = stats::mean(x);
    let centered: Vec<f64> = x.iter().map(|v| v - m).collect();
    let spec = dft(&centered);
    (1..=x.len() / 2).map(|k| spec[k].norm_sqr()).collect()
}

/// Autocorrelation `ρ(0..=max_lag)` using the biased estimator
/// `Σ (x_t - m)(x_{t+k} - m) / Σ (x_t - m)²`. `None` for zero variance.
pub fn autocorrelation(x: &[f64], max_lag: usize) -> Option<Vec<f64>> {
    let n = x.len();
    let max_lag = max_lag.min(n.saturating_sub(1));
    let m = stats::mean(x);
    let size = (2 * n).next_power_of_two();
    let mut buf = vec![Complex64::new(0.0, 0.0); size];
    for (b, &v) in buf.iter_mut().zip(x) {
        b.re = v - m;
    }
    let denom: f64 = x.iter().map(|v| (v - m) * (v - m)).sum();
    if !(denom > 0.0) {
        return None;
    }
    fft_pow2(&mut buf, false);
    for b in buf.iter_mut() {
        *b = Complex64::new(b.norm_sqr(), 0.0);
    }
    fft_pow2(&mut buf, true);
    let scale = 1.0 / size as f64;
    let mut acf: Vec<f64> = (0..=max_lag).map(|k| buf[k].re * scale / denom).collect();
    acf[0] = 1.0;
    Some(acf)
}
