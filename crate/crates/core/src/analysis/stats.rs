use crate::bfs::GrowthResult;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

/// Moments of the layer index weighted by layer size.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatsSummary {
    pub mean: f64,
    pub mode: usize,
    pub variance: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
    pub total: u64,
}

/// Exact central moments: (mean, m2, m3, m4).
fn central_moments(layers: &[u64]) -> (BigRational, BigRational, BigRational, BigRational) {
    let total: BigInt = layers.iter().map(|&c| BigInt::from(c)).sum();
    let weighted: BigInt = layers.iter().enumerate().map(|(k, &c)| BigInt::from(c) * k).sum();
    let mean = BigRational::new(weighted, total.clone());
    let mut m = [BigRational::zero(), BigRational::zero(), BigRational::zero()];
    for (k, &c) in layers.iter().enumerate() {
        let d = BigRational::from_integer(BigInt::from(k)) - &mean;
        let w = BigRational::from_integer(BigInt::from(c));
        let d2 = &d * &d;
        m[0] += &w * &d2;
        m[1] += &w * &d2 * &d;
        m[2] += &w * &d2 * &d2;
    }
    let n = BigRational::from_integer(total);
    let [m2, m3, m4] = m.map(|x| x / &n);
    (mean, m2, m3, m4)
}

fn f(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Summary statistics of a growth vector. Moments are computed in exact rational
/// arithmetic, so a palindromic vector has skewness exactly 0.
pub fn describe(growth: &GrowthResult) -> Result<StatsSummary> {
    describe_layers(&growth.layer_sizes)
}

pub fn describe_layers(layers: &[u64]) -> Result<StatsSummary> {
    if layers.is_empty() || layers.iter().all(|&c| c == 0) {
        return Err(Error::EmptyGrowth);
    }
    let (mean, m2, m3, m4) = central_moments(layers);
    let max = *layers.iter().max().unwrap();
    let mode = layers.iter().position(|&c| c == max).unwrap();
    let (skewness, excess_kurtosis) = if m2.is_zero() {
        (f64::NAN, f64::NAN)
    } else {
        let skew = if m3.is_zero() { 0.0 } else { f(&m3) / f(&m2).powf(1.5) };
        let kurt = &m4 / (&m2 * &m2) - BigRational::from_integer(BigInt::from(3));
        (skew, f(&kurt))
    };
    Ok(StatsSummary { mean: f(&mean), mode, variance: f(&m2), skewness, excess_kurtosis, total: layers.iter().sum() })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistributionFit {
    pub location: f64,
    pub scale: f64,
    /// Max over layers of |pmf(k) - P(k - 1/2 < X <= k + 1/2)|.
    pub max_abs_error: f64,
}

fn normalized(layers: &[u64]) -> Result<(StatsSummary, Vec<f64>)> {
    let s = describe_layers(layers)?;
    if s.variance <= 0.0 {
        return Err(Error::Degenerate("zero variance".into()));
    }
    let total = s.total as f64;
    Ok((s, layers.iter().map(|&c| c as f64 / total).collect()))
}

fn max_error(pmf: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    pmf.iter().enumerate().map(|(k, &p)| (p - (cdf(k as f64 + 0.5) - cdf(k as f64 - 0.5))).abs()).fold(0.0, f64::max)
}

/// Moment-matched normal distribution.
pub fn gaussian_fit(growth: &GrowthResult) -> Result<DistributionFit> {
    let (s, pmf) = normalized(&growth.layer_sizes)?;
    let sigma = s.variance.sqrt();
    let normal = Normal::new(s.mean, sigma).map_err(|e| Error::Degenerate(e.to_string()))?;
    Ok(DistributionFit { location: s.mean, scale: sigma, max_abs_error: max_error(&pmf, |x| normal.cdf(x)) })
}

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Moment-matched Gumbel distribution. The maximum form is used for
/// right-skewed data and the minimum (mirrored) form for left-skewed data.
pub fn gumbel_fit(growth: &GrowthResult) -> Result<DistributionFit> {
    let (s, pmf) = normalized(&growth.layer_sizes)?;
    let beta = s.variance.sqrt() * 6f64.sqrt() / std::f64::consts::PI;
    if s.skewness >= 0.0 {
        let mu = s.mean - EULER_GAMMA * beta;
        let cdf = |x: f64| (-(-(x - mu) / beta).exp()).exp();
        Ok(DistributionFit { location: mu, scale: beta, max_abs_error: max_error(&pmf, cdf) })
    } else {
        let mu = s.mean + EULER_GAMMA * beta;
        let cdf = |x: f64| 1.0 - (-((x - mu) / beta).exp()).exp();
        Ok(DistributionFit { location: mu, scale: beta, max_abs_error: max_error(&pmf, cdf) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_half() {
        let s = describe_layers(&[1, 1]).unwrap();
        assert_eq!(s.mean, 0.5);
        assert_eq!(s.variance, 0.25);
        assert_eq!(s.skewness, 0.0);
        assert_eq!(s.excess_kurtosis, -2.0);
        assert_eq!(s.mode, 0);
        assert_eq!(s.total, 2);
    }

    #[test]
    fn palindromic_has_zero_skew() {
        let s = describe_layers(&[1, 4, 9, 15, 20, 22, 20, 15, 9, 4, 1]).unwrap();
        assert_eq!(s.skewness, 0.0);
        assert_eq!(s.mean, 5.0);
        assert_eq!(s.mode, 5);
    }

    #[test]
    fn mode_tie_takes_smallest() {
        assert_eq!(describe_layers(&[1, 3, 3, 1]).unwrap().mode, 1);
    }

    #[test]
    fn matches_float_moments() {
        let layers = [1u64, 2, 3, 5, 8, 13, 21, 30, 20, 4];
        let total: f64 = layers.iter().sum::<u64>() as f64;
        let mean: f64 = layers.iter().enumerate().map(|(k, &c)| k as f64 * c as f64).sum::<f64>() / total;
        let m = |p: i32| layers.iter().enumerate().map(|(k, &c)| (k as f64 - mean).powi(p) * c as f64).sum::<f64>() / total;
        let s = describe_layers(&layers).unwrap();
        assert!((s.mean - mean).abs() < 1e-12);
        assert!((s.variance - m(2)).abs() < 1e-12);
        assert!((s.skewness - m(3) / m(2).powf(1.5)).abs() < 1e-12);
        assert!((s.excess_kurtosis - (m(4) / (m(2) * m(2)) - 3.0)).abs() < 1e-12);
        assert!(s.skewness < 0.0);
    }

    #[test]
    fn degenerate_and_empty() {
        let single = GrowthResult::from_layers(vec![1], vec![], false);
        assert!(matches!(gaussian_fit(&single), Err(Error::Degenerate(_))));
        assert_eq!(describe_layers(&[]), Err(Error::EmptyGrowth));
    }

    #[test]
    fn binomial_is_nearly_gaussian() {
        // C(40, k): CLT oracle
        let layers: Vec<u64> = (0..=40).map(|k| crate::codec::binomial(40, k)).collect();
        let fit = gaussian_fit(&GrowthResult::from_layers(layers, vec![], false)).unwrap();
        assert!((fit.location - 20.0).abs() < 1e-12);
        assert!(fit.max_abs_error < 0.005);
    }

    #[test]
    fn gumbel_sign_follows_skew() {
        let right = GrowthResult::from_layers(vec![5, 30, 25, 15, 8, 4, 2, 1], vec![], false);
        let left = GrowthResult::from_layers(vec![1, 2, 4, 8, 15, 25, 30, 5], vec![], false);
        let a = gumbel_fit(&right).unwrap();
        let b = gumbel_fit(&left).unwrap();
        assert!((a.max_abs_error - b.max_abs_error).abs() < 1e-12);
        assert!(a.max_abs_error < gaussian_fit(&right).unwrap().max_abs_error);
    }
}
