//! Two-sample Kolmogorov-Smirnov test.

use serde::Serialize;

use crate::error::{Error, Result};

/// Significance level used to report rejections.
pub const ALPHA: f64 = 0.05;

const SERIES_TERMS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
}

impl KsResult {
    pub fn rejects(&self, alpha: f64) -> bool {
        self.p_value < alpha
    }
}

/// Largest gap between the two empirical CDFs.
pub fn ks_statistic(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut a = xs.to_vec();
    let mut b = ys.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let t = a[i].min(b[j]);
        while i < a.len() && a[i] <= t {
            i += 1;
        }
        while j < b.len() && b[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    Ok(d)
}

/// Survival function of the Kolmogorov distribution, `P(K > lambda)`.
pub fn kolmogorov_sf(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 1.18 {
        // The alternating series converges poorly here; use the Jacobi
        // theta form of the CDF instead.
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        let cdf: f64 = (1..=SERIES_TERMS)
            .map(|j| {
                let odd = (2 * j - 1) as f64;
                (-odd * odd * pi2 / (8.0 * lambda * lambda)).exp()
            })
            .sum::<f64>()
            * (2.0 * std::f64::consts::PI).sqrt()
            / lambda;
        return (1.0 - cdf).clamp(0.0, 1.0);
    }
    let sum: f64 = (1..=SERIES_TERMS)
        .map(|j| {
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            sign * (-2.0 * (j * j) as f64 * lambda * lambda).exp()
        })
        .sum();
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Two-sample KS test with the asymptotic p-value at effective size
/// `n*m/(n+m)`.
pub fn ks_two_sample(xs: &[f64], ys: &[f64]) -> Result<KsResult> {
    let statistic = ks_statistic(xs, ys)?;
    let (n, m) = (xs.len() as f64, ys.len() as f64);
    let effective = n * m / (n + m);
    Ok(KsResult {
        statistic,
        p_value: kolmogorov_sf(effective.sqrt() * statistic),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_samples() {
        let xs = [3.0, 1.0, 2.0, 2.0];
        let r = ks_two_sample(&xs, &xs).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn disjoint_supports() {
        let xs: Vec<f64> = (0..100).map(|i| i as f64 * 0.01).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x + 10.0).collect();
        let r = ks_two_sample(&xs, &ys).unwrap();
        assert_eq!(r.statistic, 1.0);
        assert!(r.rejects(ALPHA));
    }

    #[test]
    fn overlapping_quartets() {
        let d = ks_statistic(&[1.0, 2.0, 3.0, 4.0], &[3.0, 4.0, 5.0, 6.0]).unwrap();
        assert!((d - 0.5).abs() < 1e-15);
    }

    #[test]
    fn empty_sample_errors() {
        assert!(matches!(ks_two_sample(&[], &[1.0]), Err(Error::EmptySample)));
    }

    #[test]
    fn survival_function_reference_points() {
        // Reference values of the Kolmogorov distribution.
        assert!((kolmogorov_sf(1.0) - 0.26999967).abs() < 1e-7);
        assert!((kolmogorov_sf(1.3580986) - 0.05).abs() < 1e-6);
        assert!((kolmogorov_sf(0.5) - 0.96394524).abs() < 1e-7);
        // Both branches agree at the switch point.
        let lo = 1.18 - 1e-9;
        assert!((kolmogorov_sf(lo) - kolmogorov_sf(1.18)).abs() < 1e-8);
    }
}
