//! Citation-age weighting and estimation of the decay constant from a
//! citation-age histogram.
//!
//! A citation made `t` years after publication contributes weight
//! `e^(-lambda * t)`. The default constant is 0.117, which makes the
//! weights at ages 0, 1, 2 round to 1.00, 0.89, 0.79.

use std::collections::BTreeMap;

use crate::corpus::CitationEvent;
use crate::error::{Error, Result};
use crate::stats;

/// Default decay constant.
pub const DEFAULT_LAMBDA: f64 = 0.117;

/// Positive decay constant for the citation-age weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayParams {
    lambda: f64,
}

impl DecayParams {
    pub fn new(lambda: f64) -> Result<Self> {
        if lambda > 0.0 && lambda.is_finite() {
            Ok(DecayParams { lambda })
        } else {
            Err(Error::NonPositiveLambda { value: lambda })
        }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

impl Default for DecayParams {
    fn default() -> Self {
        DecayParams {
            lambda: DEFAULT_LAMBDA,
        }
    }
}

/// Citation-age weight `e^(-lambda * interval)`. Equals 1 at interval 0 and
/// decreases strictly with the interval.
pub fn weight(interval_years: u32, params: DecayParams) -> f64 {
    (-params.lambda * f64::from(interval_years)).exp()
}

/// Histogram of citation counts by citation age in whole years.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AgeHistogram {
    counts: BTreeMap<u32, u64>,
}

impl AgeHistogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, age: u32) {
        *self.counts.entry(age).or_insert(0) += 1;
    }

    pub fn add_count(&mut self, age: u32, count: u64) {
        if count > 0 {
            *self.counts.entry(age).or_insert(0) += count;
        }
    }

    /// Builds the histogram of event ages. Negative intervals are clamped
    /// to age 0, matching the scoring clamp.
    pub fn from_events(events: &[CitationEvent]) -> Self {
        let mut hist = AgeHistogram::new();
        for event in events {
            hist.record(event.interval().max(0) as u32);
        }
        hist
    }

    pub fn counts(&self) -> &BTreeMap<u32, u64> {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Age with the largest count; the smallest such age on ties.
    pub fn peak_age(&self) -> Option<u32> {
        let max = self.counts.values().copied().max()?;
        self.counts
            .iter()
            .find(|(_, &c)| c == max)
            .map(|(&age, _)| age)
    }
}

/// Lower bound for the ages entering the fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StartAge {
    /// Start at the histogram's peak age (citations usually peak a couple
    /// of years after publication, then decay).
    Auto,
    /// Start at a fixed age.
    From(u32),
}

/// Result of a log-linear decay fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    /// Negated slope of ln(count) against age. Positive for decaying data;
    /// a non-positive value is returned as-is for the caller to inspect.
    pub lambda: f64,
    /// Coefficient of determination of the log-linear fit.
    pub r_squared: f64,
    /// First age actually included.
    pub start_age: u32,
    /// Number of (age, count) points entering the fit.
    pub points_used: usize,
}

/// Fits `count ~ A * e^(-lambda * age)` by least squares of ln(count) on
/// age, over ages >= the start age with positive counts. Zero-count ages
/// cannot enter the fit (their logarithm is undefined).
pub fn fit_lambda(hist: &AgeHistogram, start: StartAge) -> Result<DecayFit> {
    let points: Vec<(u32, f64)> = hist
        .counts()
        .iter()
        .map(|(&age, &count)| (age, count as f64))
        .collect();
    fit_lambda_real(&points, start)
}

/// Real-valued variant of [`fit_lambda`] for callers holding non-integer
/// counts. Points with non-positive or non-finite counts are skipped.
pub fn fit_lambda_real(counts: &[(u32, f64)], start: StartAge) -> Result<DecayFit> {
    let start_age = match start {
        StartAge::From(age) => age,
        StartAge::Auto => peak_of(counts).unwrap_or(0),
    };
    let points: Vec<(f64, f64)> = counts
        .iter()
        .filter(|(age, count)| *age >= start_age && *count > 0.0 && count.is_finite())
        .map(|(age, count)| (f64::from(*age), count.ln()))
        .collect();
    match stats::least_squares(&points) {
        Some(fit) => Ok(DecayFit {
            lambda: -fit.slope,
            r_squared: fit.r_squared,
            start_age,
            points_used: points.len(),
        }),
        None => Err(Error::InsufficientData {
            usable: points.len(),
        }),
    }
}

fn peak_of(counts: &[(u32, f64)]) -> Option<u32> {
    let mut best: Option<(u32, f64)> = None;
    for &(age, count) in counts {
        match best {
            Some((best_age, best_count)) => {
                if count > best_count || (count == best_count && age < best_age) {
                    best = Some((age, count));
                }
            }
            None => best = Some((age, count)),
        }
    }
    best.map(|(age, _)| age)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn round2(v: f64) -> f64 {
        (v * 100.0).round() / 100.0
    }

    #[test]
    fn weight_at_zero_is_one() {
        assert_eq!(weight(0, DecayParams::default()), 1.0);
    }

    #[test]
    fn default_weights_match_two_decimals() {
        let params = DecayParams::default();
        assert_eq!(round2(weight(0, params)), 1.00);
        assert_eq!(round2(weight(1, params)), 0.89);
        assert_eq!(round2(weight(2, params)), 0.79);
    }

    #[test]
    fn weight_strictly_decreases() {
        let params = DecayParams::default();
        for t in 0..50 {
            assert!(weight(t + 1, params) < weight(t, params));
        }
    }

    #[test]
    fn fit_recovers_lambda_from_rounded_counts() {
        let mut hist = AgeHistogram::new();
        for age in 0..=10u32 {
            let count = (1000.0 * (-0.117 * f64::from(age)).exp()).round() as u64;
            hist.add_count(age, count);
        }
        let fit = fit_lambda(&hist, StartAge::From(0)).unwrap();
        assert!(
            (fit.lambda - 0.117).abs() <= 0.002,
            "lambda = {}",
            fit.lambda
        );
        assert_eq!(fit.points_used, 11);
    }

    #[test]
    fn flat_histogram_fits_zero() {
        let mut hist = AgeHistogram::new();
        hist.add_count(0, 100);
        hist.add_count(1, 100);
        let fit = fit_lambda(&hist, StartAge::Auto).unwrap();
        assert_eq!(fit.lambda, 0.0);
        assert_eq!(fit.start_age, 0);
    }

    #[test]
    fn single_point_is_insufficient() {
        let mut hist = AgeHistogram::new();
        hist.add_count(3, 50);
        assert!(matches!(
            fit_lambda(&hist, StartAge::From(0)),
            Err(Error::InsufficientData { usable: 1 })
        ));
    }

    #[test]
    fn zero_counts_are_excluded() {
        // Ages 0..=4 but age 2 has count zero: four usable points.
        let counts = [(0, 8.0), (1, 4.0), (2, 0.0), (3, 1.0), (4, 0.5)];
        let fit = fit_lambda_real(&counts, StartAge::From(0)).unwrap();
        assert_eq!(fit.points_used, 4);
    }

    #[test]
    fn auto_start_uses_peak_age() {
        let mut hist = AgeHistogram::new();
        hist.add_count(0, 40);
        hist.add_count(1, 70);
        hist.add_count(2, 100);
        hist.add_count(3, 89);
        hist.add_count(4, 79);
        let fit = fit_lambda(&hist, StartAge::Auto).unwrap();
        assert_eq!(fit.start_age, 2);
        assert_eq!(fit.points_used, 3);
    }

    #[test]
    fn non_decreasing_data_yields_negative_lambda() {
        let counts = [(0, 1.0), (1, 2.0), (2, 4.0)];
        let fit = fit_lambda_real(&counts, StartAge::From(0)).unwrap();
        assert!(fit.lambda < 0.0);
    }

    proptest! {
        #[test]
        fn weight_is_multiplicative(
            a in 0u32..400,
            b in 0u32..400,
            lambda in 0.01f64..1.0,
        ) {
            let params = DecayParams::new(lambda).unwrap();
            let combined = weight(a + b, params);
            let product = weight(a, params) * weight(b, params);
            let scale = combined.abs().max(product.abs());
            prop_assert!((combined - product).abs() <= 1e-12 * scale.max(1e-300));
        }

        #[test]
        fn fit_recovers_lambda_on_noiseless_data(
            amplitude in 0.001f64..1e6,
            lambda in 0.01f64..1.0,
        ) {
            let counts: Vec<(u32, f64)> = (0..=20u32)
                .map(|age| (age, amplitude * (-lambda * f64::from(age)).exp()))
                .collect();
            let fit = fit_lambda_real(&counts, StartAge::From(0)).unwrap();
            prop_assert!((fit.lambda - lambda).abs() <= 1e-9, "fit {}", fit.lambda);
            prop_assert!((fit.r_squared - 1.0).abs() <= 1e-9);
        }

        #[test]
        fn fit_is_scale_invariant(
            scale in 0.001f64..1e6,
            lambda in 0.01f64..1.0,
        ) {
            let base: Vec<(u32, f64)> = (0..=15u32)
                .map(|age| (age, 100.0 * (-lambda * f64::from(age)).exp()))
                .collect();
            let scaled: Vec<(u32, f64)> =
                base.iter().map(|&(age, c)| (age, c * scale)).collect();
            let fit_base = fit_lambda_real(&base, StartAge::From(0)).unwrap();
            let fit_scaled = fit_lambda_real(&scaled, StartAge::From(0)).unwrap();
            prop_assert!((fit_base.lambda - fit_scaled.lambda).abs() <= 1e-9);
        }
    }
}
