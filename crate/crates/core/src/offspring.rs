//! Critical offspring laws for Galton-Watson trees.
//!
//! Every [`OffspringDistribution`] has mean 1 and finite positive variance.
//! Builtins cover the classical simply generated families (Cayley, plane and
//! d-ary trees) plus a two-point law whose span exceeds one. Custom laws are
//! read from a `value probability` text file and validated, never tilted.

use std::fmt;
use std::path::Path;

use rand::RngCore;

use crate::error::{Error, Result};

const SUM_TOLERANCE: f64 = 1e-12;
const MEAN_TOLERANCE: f64 = 1e-9;
/// Tail mass below which Poisson and geometric pmfs stop being tabulated.
const TABULATION_TAIL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinKind {
    /// Poisson(1): Cayley trees.
    Poisson1,
    /// Geometric(1/2) on {0, 1, 2, ...}: uniform plane trees.
    GeometricHalf,
    /// Binomial(d, 1/d): d-ary trees.
    Binomial,
    /// Support {0, m} with P(m) = 1/m.
    TwoPoint,
}

#[derive(Debug, Clone, PartialEq)]
enum Law {
    Poisson1,
    GeometricHalf,
    Binomial,
    TwoPoint,
    Custom,
}

#[derive(Debug, Clone)]
pub struct OffspringDistribution {
    name: String,
    law: Law,
    /// Positive-probability support values with their probabilities, increasing.
    pmf: Vec<(u32, f64)>,
    mean: f64,
    variance: f64,
    span: u32,
    table: InversionTable,
}

/// Inversion sampler over a finite support, driven by one `u64` per draw.
///
/// Thresholds are built from tail sums so that small tail probabilities keep
/// full 64-bit resolution instead of rounding into `1.0`.
#[derive(Debug, Clone)]
struct InversionTable {
    values: Vec<u32>,
    /// `u < upper[i]` selects `values[i]`; the final value catches the rest.
    upper: Vec<u64>,
}

impl InversionTable {
    fn new(pmf: &[(u32, f64)]) -> Self {
        let mut tails = vec![0.0f64; pmf.len()];
        let mut acc = 0.0;
        for i in (0..pmf.len()).rev() {
            tails[i] = acc;
            acc += pmf[i].1;
        }
        let total = acc;
        let upper = tails
            .iter()
            .map(|&tail| {
                let scaled = (tail / total) * 18_446_744_073_709_551_616.0;
                if scaled >= 18_446_744_073_709_551_615.0 {
                    0
                } else {
                    u64::MAX - scaled as u64
                }
            })
            .collect();
        InversionTable {
            values: pmf.iter().map(|&(v, _)| v).collect(),
            upper,
        }
    }

    #[inline]
    fn draw<R: RngCore + ?Sized>(&self, rng: &mut R) -> u32 {
        let u = rng.next_u64();
        for (value, &upper) in self.values.iter().zip(&self.upper) {
            if u < upper {
                return *value;
            }
        }
        *self.values.last().expect("non-empty support")
    }
}

fn poisson1_pmf() -> Vec<(u32, f64)> {
    let mut pmf = Vec::new();
    let mut p = (-1.0f64).exp();
    let mut cum = 0.0;
    let mut k = 0u32;
    loop {
        pmf.push((k, p));
        cum += p;
        if 1.0 - cum < TABULATION_TAIL && k > 2 {
            break;
        }
        k += 1;
        p /= k as f64;
    }
    pmf
}

/// Poisson(1) masses up to 40; the remaining tail (< 1e-48) lies far below
/// the 2^-64 resolution of a single `u64` draw.
fn poisson1_sampling_pmf() -> Vec<(u32, f64)> {
    let mut p = (-1.0f64).exp();
    (0..=40u32)
        .map(|k| {
            if k > 0 {
                p /= k as f64;
            }
            (k, p)
        })
        .collect()
}

fn geometric_half_pmf() -> Vec<(u32, f64)> {
    let mut pmf = Vec::new();
    let mut p = 0.5f64;
    let mut k = 0u32;
    // tail beyond k is exactly p
    while p >= TABULATION_TAIL {
        pmf.push((k, p));
        k += 1;
        p *= 0.5;
    }
    pmf
}

fn binomial_pmf(d: u32) -> Vec<(u32, f64)> {
    let q = 1.0 / d as f64;
    let ln_q = q.ln();
    let ln_1q = (1.0 - q).ln();
    (0..=d)
        .map(|k| {
            let ln_choose = statrs::function::gamma::ln_gamma(d as f64 + 1.0)
                - statrs::function::gamma::ln_gamma(k as f64 + 1.0)
                - statrs::function::gamma::ln_gamma((d - k) as f64 + 1.0);
            let ln_p = ln_choose + k as f64 * ln_q + (d - k) as f64 * ln_1q;
            (k, ln_p.exp())
        })
        .collect()
}

fn normalize(pmf: &mut [(u32, f64)]) {
    let total: f64 = pmf.iter().map(|&(_, p)| p).sum();
    for entry in pmf.iter_mut() {
        entry.1 /= total;
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// gcd of the strictly positive support values carrying positive mass.
pub fn support_span(pmf: &[(u32, f64)]) -> u32 {
    pmf.iter()
        .filter(|&&(v, p)| v > 0 && p > 0.0)
        .fold(0, |g, &(v, _)| gcd(g, v))
}

fn moments(pmf: &[(u32, f64)]) -> (f64, f64) {
    let mean: f64 = pmf.iter().map(|&(v, p)| v as f64 * p).sum();
    let var: f64 = pmf
        .iter()
        .map(|&(v, p)| (v as f64 - mean).powi(2) * p)
        .sum();
    (mean, var)
}

impl OffspringDistribution {
    pub fn builtin(kind: BuiltinKind, param: Option<u32>) -> Result<Self> {
        let (name, law, mut pmf, mean, variance) = match kind {
            BuiltinKind::Poisson1 => (
                "poisson".to_string(),
                Law::Poisson1,
                poisson1_pmf(),
                1.0,
                1.0,
            ),
            BuiltinKind::GeometricHalf => (
                "geometric".to_string(),
                Law::GeometricHalf,
                geometric_half_pmf(),
                1.0,
                2.0,
            ),
            BuiltinKind::Binomial => {
                let d = param
                    .ok_or_else(|| Error::InvalidParameter("binomial needs the arity d".into()))?;
                if d < 2 {
                    return Err(Error::InvalidParameter(format!(
                        "binomial arity must be at least 2, got {d}"
                    )));
                }
                let variance = 1.0 - 1.0 / d as f64;
                (
                    format!("binomial:{d}"),
                    Law::Binomial,
                    binomial_pmf(d),
                    1.0,
                    variance,
                )
            }
            BuiltinKind::TwoPoint => {
                let m = param.ok_or_else(|| {
                    Error::InvalidParameter("two_point needs the upper support value m".into())
                })?;
                if m < 2 {
                    return Err(Error::InvalidParameter(format!(
                        "two_point needs m >= 2 (m = {m} is not critical with positive variance)"
                    )));
                }
                let top = 1.0 / m as f64;
                (
                    format!("two_point:{m}"),
                    Law::TwoPoint,
                    vec![(0, 1.0 - top), (m, top)],
                    1.0,
                    (m - 1) as f64,
                )
            }
        };
        normalize(&mut pmf);
        let span = support_span(&pmf);
        let dist = OffspringDistribution {
            name,
            law,
            table: match kind {
                // Sample from the untruncated law; the 1e-12 tabulation is for reporting.
                BuiltinKind::Poisson1 => InversionTable::new(&poisson1_sampling_pmf()),
                _ => InversionTable::new(&pmf),
            },
            pmf,
            mean,
            variance,
            span,
        };
        dist.check()?;
        Ok(dist)
    }

    pub fn poisson() -> Self {
        Self::builtin(BuiltinKind::Poisson1, None).expect("valid builtin")
    }

    pub fn geometric() -> Self {
        Self::builtin(BuiltinKind::GeometricHalf, None).expect("valid builtin")
    }

    pub fn binomial(d: u32) -> Result<Self> {
        Self::builtin(BuiltinKind::Binomial, Some(d))
    }

    pub fn two_point(m: u32) -> Result<Self> {
        Self::builtin(BuiltinKind::TwoPoint, Some(m))
    }

    /// Builds a law from explicit `(value, probability)` pairs.
    ///
    /// Values must be strictly increasing. The law must already be critical:
    /// mean 1 within 1e-9 and total mass 1 within 1e-12.
    pub fn custom(name: impl Into<String>, entries: Vec<(u32, f64)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidParameter("empty pmf".into()));
        }
        for w in entries.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidParameter(format!(
                    "pmf values must be strictly increasing ({} then {})",
                    w[0].0, w[1].0
                )));
            }
        }
        if let Some(&(v, p)) = entries.iter().find(|&&(_, p)| !(0.0..=1.0).contains(&p)) {
            return Err(Error::InvalidParameter(format!(
                "probability {p} for value {v} is outside [0, 1]"
            )));
        }
        let total: f64 = entries.iter().map(|&(_, p)| p).sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        let pmf: Vec<(u32, f64)> = entries.into_iter().filter(|&(_, p)| p > 0.0).collect();
        let (mean, variance) = moments(&pmf);
        let span = support_span(&pmf);
        let dist = OffspringDistribution {
            name: name.into(),
            law: Law::Custom,
            table: InversionTable::new(&pmf),
            pmf,
            mean,
            variance,
            span,
        };
        dist.check()?;
        Ok(dist)
    }

    /// Parses the `value probability` file format (`#` starts a comment).
    pub fn parse_pmf(text: &str) -> Result<Vec<(u32, f64)>> {
        let mut entries = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let (Some(v), Some(p), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(Error::Parse(format!(
                    "line {}: expected `value probability`",
                    lineno + 1
                )));
            };
            let value: u32 = v
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: value {v:?}: {e}", lineno + 1)))?;
            let prob: f64 = p.parse().map_err(|e| {
                Error::Parse(format!("line {}: probability {p:?}: {e}", lineno + 1))
            })?;
            entries.push((value, prob));
        }
        Ok(entries)
    }

    pub fn from_pmf_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let entries = Self::parse_pmf(&text)?;
        Self::custom(format!("custom:{}", path.display()), entries)
    }

    /// Parses the CLI notation: `poisson`, `geometric`, `binomial:D`,
    /// `two_point:M` or `custom:FILE`.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let (head, arg) = match spec.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (spec, None),
        };
        let int_arg = |what: &str| -> Result<u32> {
            let a = arg.ok_or_else(|| Error::InvalidParameter(format!("{what} needs `:N`")))?;
            a.parse()
                .map_err(|_| Error::InvalidParameter(format!("{what}: bad integer {a:?}")))
        };
        match head {
            "poisson" | "poisson1" => Ok(Self::poisson()),
            "geometric" | "geometric_half" => Ok(Self::geometric()),
            "binomial" | "binomial_d" => Self::binomial(int_arg("binomial")?),
            "two_point" => Self::two_point(int_arg("two_point")?),
            "custom" => {
                let path =
                    arg.ok_or_else(|| Error::InvalidParameter("custom needs `:FILE`".into()))?;
                Self::from_pmf_file(Path::new(path))
            }
            other => Err(Error::InvalidParameter(format!(
                "unknown offspring law {other:?}"
            ))),
        }
    }

    fn check(&self) -> Result<()> {
        if (self.mean - 1.0).abs() > MEAN_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "{}: mean {} is not 1 (only critical laws are supported)",
                self.name, self.mean
            )));
        }
        if !(self.variance > 0.0 && self.variance.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "{}: variance {} must be positive and finite",
                self.name, self.variance
            )));
        }
        if self.probability(0) <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "{}: P(0) must be positive",
                self.name
            )));
        }
        if self.probability(1) >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "{}: P(1) must be below 1",
                self.name
            )));
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// sigma^2.
    pub fn variance(&self) -> f64 {
        self.variance
    }

    pub fn span(&self) -> u32 {
        self.span
    }

    /// Tabulated pmf; for Poisson and geometric laws the tail below 1e-12
    /// is dropped and the rest renormalized.
    pub fn pmf(&self) -> &[(u32, f64)] {
        &self.pmf
    }

    pub fn probability(&self, value: u32) -> f64 {
        self.pmf
            .iter()
            .find(|&&(v, _)| v == value)
            .map_or(0.0, |&(_, p)| p)
    }

    /// Mean and variance recomputed from the tabulated pmf.
    pub fn tabulated_moments(&self) -> (f64, f64) {
        moments(&self.pmf)
    }

    pub fn is_builtin(&self) -> bool {
        self.law != Law::Custom
    }

    /// Whether a tree with `n` vertices has positive probability.
    pub fn admits_size(&self, n: u64) -> bool {
        n >= 1 && (n - 1).is_multiple_of(self.span as u64)
    }

    pub fn require_size(&self, n: u64) -> Result<()> {
        if self.admits_size(n) {
            Ok(())
        } else {
            Err(Error::IncompatibleSize { n, span: self.span })
        }
    }

    /// One exact draw of the offspring count.
    #[inline]
    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> u32 {
        match self.law {
            Law::GeometricHalf => {
                // failures before the first success of a fair coin
                let mut extra = 0u32;
                loop {
                    let bits = rng.next_u64();
                    if bits != 0 {
                        return extra + bits.trailing_zeros();
                    }
                    extra += 64;
                }
            }
            _ => self.table.draw(rng),
        }
    }
}

impl fmt::Display for OffspringDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (mean {}, variance {}, span {})",
            self.name, self.mean, self.variance, self.span
        )
    }
}

/// Free-function form of [`OffspringDistribution::sample`].
pub fn sample_offspring<R: RngCore + ?Sized>(dist: &OffspringDistribution, rng: &mut R) -> u32 {
    dist.sample(rng)
}
