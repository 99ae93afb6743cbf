//! Closed-form references: the Borel law and local-limit asymptotes.

use std::f64::consts::PI;

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::offspring::OffspringDistribution;

/// `Pr(|T| = s)` for the Poisson(1) Galton-Watson tree: `e^{-s} s^{s-1} / s!`,
/// evaluated in log space.
pub fn borel_pmf(s: u64) -> f64 {
    assert!(s >= 1, "tree sizes start at 1");
    let s = s as f64;
    (-s + (s - 1.0) * s.ln() - ln_gamma(s + 1.0)).exp()
}

/// `h / sqrt(2 pi sigma^2 s^3)`, the asymptote of `Pr(|T| = s)` on the lattice
/// `s = 1 mod h`.
pub fn llt_size_asymptote(dist: &OffspringDistribution, s: u64) -> Result<f64> {
    dist.require_size(s)?;
    let h = dist.span() as f64;
    let s = s as f64;
    Ok(h / (2.0 * PI * dist.variance() * s * s * s).sqrt())
}

/// `h / sqrt(2 pi sigma^2 s) * exp(-(m - s)^2 / (2 s sigma^2))`, the local
/// limit approximation of `Pr(S_s = m)` for `m = 0 mod h`.
pub fn llt_sum_asymptote(dist: &OffspringDistribution, s: u64, m: u64) -> Result<f64> {
    let h = dist.span() as u64;
    if !m.is_multiple_of(h) {
        return Err(Error::IncompatibleSize {
            n: m,
            span: dist.span(),
        });
    }
    if s == 0 {
        return Err(Error::InvalidParameter("need at least one summand".into()));
    }
    let var = dist.variance();
    let sf = s as f64;
    let dev = m as f64 - sf;
    Ok(h as f64 / (2.0 * PI * var * sf).sqrt() * (-dev * dev / (2.0 * sf * var)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn borel_small_values() {
        assert!((borel_pmf(1) - (-1.0f64).exp()).abs() < 1e-15);
        assert!((borel_pmf(2) - (-2.0f64).exp()).abs() < 1e-15);
        // 3 e^{-3} * 3 / 6 ... = 9 e^{-3} / 6
        assert!((borel_pmf(3) - 1.5 * (-3.0f64).exp()).abs() < 1e-15);
        let total: f64 = (1..200_000).map(borel_pmf).sum();
        // tail beyond s is about 2 / sqrt(2 pi s)
        assert!((1.0 - total) < 0.002 && total < 1.0);
    }

    #[test]
    fn borel_against_size_asymptote() {
        let p = OffspringDistribution::poisson();
        let s = 10_000;
        let ratio = borel_pmf(s) / llt_size_asymptote(&p, s).unwrap();
        assert!((ratio - 1.0).abs() <= 0.02, "{ratio}");
        assert!((llt_size_asymptote(&p, s).unwrap() - 3.989e-7).abs() < 1e-10);
    }

    #[test]
    fn size_asymptote_scaling_and_parity() {
        let p = OffspringDistribution::poisson();
        let g = OffspringDistribution::geometric();
        let s = 777;
        let a = llt_size_asymptote(&p, s).unwrap();
        let b = llt_size_asymptote(&g, s).unwrap();
        assert!((a / b - 2f64.sqrt()).abs() < 1e-12);
        let two = OffspringDistribution::two_point(2).unwrap();
        assert!(llt_size_asymptote(&two, 10).is_err());
        assert!(llt_size_asymptote(&two, 11).is_ok());
    }

    #[test]
    fn sum_asymptote() {
        let p = OffspringDistribution::poisson();
        let peak = llt_sum_asymptote(&p, 100, 100).unwrap();
        assert!((peak - 0.03989).abs() < 1e-5);
        assert_eq!(peak, 1.0 / (2.0 * PI * 100.0).sqrt());
        let far = llt_sum_asymptote(&p, 100, 200).unwrap();
        assert!(far < 1e-21 * peak);
        let two = OffspringDistribution::two_point(2).unwrap();
        assert!(llt_sum_asymptote(&two, 10, 9).is_err());
    }
}
