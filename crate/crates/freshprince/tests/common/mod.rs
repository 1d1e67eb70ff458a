#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use freshprince::tsfile::write_ts_path;
use freshprince_core::dataset::TimeSeriesDataset;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

/// Class "a" is a noisy sine with random phase; class "b" adds a Gaussian
/// bump of height `bump` at a random location.
pub fn sine_bump(name: &str, n: usize, length: usize, noise: f64, bump: f64, seed: u64) -> TimeSeriesDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, noise).unwrap();
    let lo = length as f64 * 0.1;
    let hi = length as f64 * 0.9;
    let mut series = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let class_b = i % 2 == 1;
        let phase = rng.gen_range(0.0..std::f64::consts::TAU);
        let centre = rng.gen_range(lo..hi);
        let s: Vec<f64> = (0..length)
            .map(|t| {
                let t = t as f64;
                let mut v = (std::f64::consts::TAU * t / 30.0 + phase).sin() + normal.sample(&mut rng);
                if class_b {
                    v += bump * (-((t - centre) / 4.0).powi(2) / 2.0).exp();
                }
                v
            })
            .collect();
        series.push(s);
        labels.push(if class_b { "b" } else { "a" });
    }
    TimeSeriesDataset::new(name, series, &labels, ["a", "b"].map(String::from)).unwrap()
}

/// Writes `<dir>/<name>/<name>_TRAIN.ts` and `_TEST.ts`.
pub fn write_split(dir: &Path, train: &TimeSeriesDataset, test: &TimeSeriesDataset) {
    let name = train.name();
    let sub = dir.join(name);
    std::fs::create_dir_all(&sub).unwrap();
    write_ts_path(&sub.join(format!("{name}_TRAIN.ts")), train).unwrap();
    write_ts_path(&sub.join(format!("{name}_TEST.ts")), test).unwrap();
}

/// A data directory of `k` small sine/bump problems named `toy0`, `toy1`, ...
pub fn toy_archive(dir: &Path, k: usize, length: usize) -> Vec<String> {
    (0..k)
        .map(|i| {
            let name = format!("toy{i}");
            let train = sine_bump(&name, 12, length, 0.1, 1.5, 10 + i as u64);
            let test = sine_bump(&name, 10, length, 0.1, 1.5, 1000 + i as u64);
            write_split(dir, &train, &test);
            name
        })
        .collect()
}

pub fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_freshprince"))
}

pub fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).env_remove("FRESHPRINCE_THREADS").output().unwrap()
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

pub fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}
