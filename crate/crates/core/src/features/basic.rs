use crate::stats;
use crate::{Error, Result};

pub const BASIC_WIDTH: usize = 7;
pub const BASIC_NAMES: [&str; BASIC_WIDTH] = ["mean", "median", "std", "min", "max", "q25", "q75"];

/// Mean, median, sample standard deviation, minimum, maximum and the 25% and
/// 75% quantiles, in that order.
pub fn basic_stats(series: &[f64]) -> Result<[f64; BASIC_WIDTH]> {
    if series.is_empty() {
        return Err(Error::EmptyInput);
    }
    let sorted = stats::sorted(series);
    Ok([
        stats::mean(series),
        stats::quantile_sorted(&sorted, 0.5),
        stats::sample_std(series),
        sorted[0],
        sorted[sorted.len() - 1],
        stats::quantile_sorted(&sorted, 0.25),
        stats::quantile_sorted(&sorted, 0.75),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_series() {
        assert_eq!(basic_stats(&[5.0; 4]).unwrap(), [5.0, 5.0, 0.0, 5.0, 5.0, 5.0, 5.0]);
    }

    #[test]
    fn one_to_five() {
        let got = basic_stats(&[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        let want = [3.0, 3.0, 1.58114, 1.0, 5.0, 2.0, 4.0];
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-5, "{g} vs {w}");
        }
    }

    #[test]
    fn single_value_has_zero_std() {
        assert_eq!(basic_stats(&[2.5]).unwrap()[2], 0.0);
    }

    #[test]
    fn empty_is_rejected() {
        assert_eq!(basic_stats(&[]), Err(Error::EmptyInput));
    }

    proptest::proptest! {
        #[test]
        fn order_free(mut xs in proptest::collection::vec(-1e3f64..1e3, 1..40)) {
            let a = basic_stats(&xs).unwrap();
            xs.reverse();
            let b = basic_stats(&xs).unwrap();
            for (x, y) in a.iter().zip(b) {
                proptest::prop_assert!((x - y).abs() <= 1e-9 * (1.0 + x.abs()));
            }
        }
    }
}
