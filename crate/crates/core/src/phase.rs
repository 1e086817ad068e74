//! Polynomial phases, bump amplitudes, and the checks that a phase/amplitude
//! pair is admissible (critical point at the origin, and no other critical
//! point inside the support).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector `k = (k_1, …, k_n)` of a monomial `x^k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// `self ≤ other` componentwise.
    pub fn dominated_by(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn monomial(&self, x: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(x)
            .map(|(&k, &xi)| xi.powi(k as i32))
            .product()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

/// A real polynomial in `n` variables stored as a sparse map from exponent
/// vectors to non-zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialPhase {
    dim: usize,
    terms: BTreeMap<MultiIndex, f64>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    k: Vec<u32>,
    c: f64,
}

#[derive(Serialize, Deserialize)]
struct PhaseJson {
    n: usize,
    terms: Vec<TermJson>,
}

impl Serialize for PolynomialPhase {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PhaseJson {
            n: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(k, &c)| TermJson { k: k.0.clone(), c })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolynomialPhase {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PhaseJson::deserialize(d)?;
        PolynomialPhase::from_terms(raw.n, raw.terms.into_iter().map(|t| (t.k, t.c)))
            .map_err(serde::de::Error::custom)
    }
}

impl PolynomialPhase {
    /// The zero polynomial in `dim` variables.
    pub fn zero(dim: usize) -> Self {
        PolynomialPhase {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a phase from `(exponents, coefficient)` pairs. Repeated
    /// exponents are summed and zero coefficients are dropped.
    pub fn from_terms<I, K>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (K, f64)>,
        K: Into<Vec<u32>>,
    {
        if dim == 0 {
            return Err(Error::invalid("phase dimension must be at least 1"));
        }
        let mut out = PolynomialPhase::zero(dim);
        for (k, c) in terms {
            let k = k.into();
            if k.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: k.len(),
                });
            }
            if !c.is_finite() {
                return Err(Error::invalid(format!("non-finite coefficient {c}")));
            }
            *out.terms.entry(MultiIndex(k)).or_insert(0.0) += c;
        }
        out.terms.retain(|_, c| *c != 0.0);
        Ok(out)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("phase serialization is infallible")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, f64)> {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    pub fn coefficient(&self, k: &MultiIndex) -> f64 {
        self.terms.get(k).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `f(0)`, the coefficient of the constant monomial.
    pub fn constant_term(&self) -> f64 {
        self.coefficient(&MultiIndex::zero(self.dim))
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(MultiIndex::degree).max().unwrap_or(0)
    }

    /// Largest exponent of any single variable.
    pub fn max_exponent(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|k| k.0.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// Keeps only the monomials for which `keep` returns true.
    pub fn filter_terms(&self, mut keep: impl FnMut(&MultiIndex) -> bool) -> Self {
        PolynomialPhase {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, &c)| (k.clone(), c))
                .collect(),
        }
    }

    pub fn eval(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: point.len(),
            });
        }
        Ok(self.eval_unchecked(point))
    }

    pub(crate) fn eval_unchecked(&self, point: &[f64]) -> f64 {
        self.terms.iter().map(|(k, &c)| c * k.monomial(point)).sum()
    }

    /// Exact partial derivative with respect to variable `axis`.
    pub fn partial_derivative(&self, axis: usize) -> Result<Self> {
        if axis >= self.dim {
            return Err(Error::AxisOutOfRange {
                axis,
                dim: self.dim,
            });
        }
        let mut out = PolynomialPhase::zero(self.dim);
        for (k, &c) in &self.terms {
            let e = k.0[axis];
            if e == 0 {
                continue;
            }
            let mut dk = k.clone();
            dk.0[axis] -= 1;
            let dc = c * e as f64;
            if dc != 0.0 {
                *out.terms.entry(dk).or_insert(0.0) += dc;
            }
        }
        out.terms.retain(|_, c| *c != 0.0);
        Ok(out)
    }

    pub fn gradient(&self) -> Vec<PolynomialPhase> {
        (0..self.dim)
            .map(|i| self.partial_derivative(i).expect("axis in range"))
            .collect()
    }

    /// True if some monomial has total degree one.
    pub fn has_linear_term(&self) -> bool {
        self.terms.keys().any(|k| k.degree() == 1)
    }

    /// Upper bound for `|∂f/∂x_axis|` on the cube `[-r, r]^n`.
    pub fn partial_bound(&self, axis: usize, r: f64) -> f64 {
        self.terms
            .iter()
            .filter(|(k, _)| k.0[axis] > 0)
            .map(|(k, &c)| c.abs() * k.0[axis] as f64 * r.powi(k.degree() as i32 - 1))
            .sum()
    }

    /// If every monomial involves at most one variable, returns the phase as
    /// `f(0) + Σ_i g_i(x_i)` with each `g_i` given as `(exponent, coefficient)`
    /// pairs.
    pub fn additive_split(&self) -> Option<Vec<Vec<(u32, f64)>>> {
        let mut parts = vec![Vec::new(); self.dim];
        for (k, &c) in &self.terms {
            let mut nonzero = k.0.iter().enumerate().filter(|(_, &e)| e > 0);
            match (nonzero.next(), nonzero.next()) {
                (None, _) => {}
                (Some((axis, &e)), None) => parts[axis].push((e, c)),
                _ => return None,
            }
        }
        Some(parts)
    }
}

impl fmt::Display for PolynomialPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = ["x", "y", "z"];
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            let mut mono = String::new();
            for (axis, &e) in k.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = names
                    .get(axis)
                    .map(|s| s.to_string())
                    .unwrap_or_else(|| format!("x{}", axis + 1));
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(&name);
                if e > 1 {
                    mono.push_str(&format!("^{e}"));
                }
            }
            let sign = if *c < 0.0 { "-" } else { "+" };
            if i == 0 {
                if *c < 0.0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (mono.is_empty(), a == 1.0) {
                (true, _) => write!(f, "{a}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{a}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// Order `s ≥ 2` of a one-variable critical point: `f'(0) = … = f^(s-1)(0) = 0`
/// and `f^(s)(0) ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalOrder {
    pub s: u32,
}

/// Reads the critical order of a one-variable phase from its exponents.
pub fn critical_order_1d(phase: &PolynomialPhase) -> Result<CriticalOrder> {
    if phase.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: phase.dim(),
        });
    }
    if phase.has_linear_term() {
        return Err(Error::NotCritical);
    }
    phase
        .terms()
        .map(|(k, _)| k.0[0])
        .filter(|&e| e >= 2)
        .min()
        .map(|s| CriticalOrder { s })
        .ok_or(Error::ConstantPhase)
}

/// Profile of the bump used as amplitude.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AmplitudeProfile {
    /// `φ(0) · exp(1 − 1/(1 − |x/R|²))` on the open ball of radius `R`.
    #[default]
    Radial,
    /// `φ(0) · Π_i exp(1 − 1/(1 − (x_i/R)²))` on the open cube `(−R, R)^n`.
    Product,
}

/// Smooth, non-negative, compactly supported amplitude normalized so that
/// its value at the origin is `phi0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeSpec {
    #[serde(skip, default = "one")]
    pub dim: usize,
    pub radius: f64,
    pub phi0: f64,
    #[serde(default)]
    pub profile: AmplitudeProfile,
}

fn one() -> usize {
    1
}

/// Inner exclusion radius of the isolated-critical-point check, relative to `R`.
pub const CRITICAL_EXCLUSION: f64 = 1e-3;

impl AmplitudeSpec {
    pub fn new(dim: usize, radius: f64, phi0: f64) -> Result<Self> {
        Self::with_profile(dim, radius, phi0, AmplitudeProfile::Radial)
    }

    pub fn with_profile(
        dim: usize,
        radius: f64,
        phi0: f64,
        profile: AmplitudeProfile,
    ) -> Result<Self> {
        let amp = AmplitudeSpec {
            dim,
            radius,
            phi0,
            profile,
        };
        amp.validate()?;
        Ok(amp)
    }

    /// Unit bump of radius 1 in `dim` variables.
    pub fn unit(dim: usize) -> Self {
        AmplitudeSpec {
            dim,
            radius: 1.0,
            phi0: 1.0,
            profile: AmplitudeProfile::Radial,
        }
    }

    pub fn from_json(text: &str, dim: usize) -> Result<Self> {
        let mut amp: AmplitudeSpec = serde_json::from_str(text)?;
        amp.dim = dim;
        amp.validate()?;
        Ok(amp)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::invalid("amplitude dimension must be at least 1"));
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(Error::invalid(format!(
                "radius must be positive, got {}",
                self.radius
            )));
        }
        if !(self.phi0 > 0.0 && self.phi0.is_finite()) {
            return Err(Error::invalid(format!(
                "phi0 must be positive, got {}",
                self.phi0
            )));
        }
        Ok(())
    }

    pub fn eval(&self, point: &[f64]) -> f64 {
        match self.profile {
            AmplitudeProfile::Radial => {
                let u: f64 = point.iter().map(|x| (x / self.radius).powi(2)).sum();
                self.phi0 * bump(u)
            }
            AmplitudeProfile::Product => {
                self.phi0
                    * point
                        .iter()
                        .map(|x| bump((x / self.radius).powi(2)))
                        .product::<f64>()
            }
        }
    }
}

/// `exp(1 − 1/(1 − u))` for `u < 1`, zero otherwise.
pub(crate) fn bump(u: f64) -> f64 {
    if u < 1.0 {
        (1.0 - 1.0 / (1.0 - u)).exp()
    } else {
        0.0
    }
}

/// Evaluates the amplitude at a point, checking its length.
pub fn eval_amplitude(amp: &AmplitudeSpec, point: &[f64]) -> Result<f64> {
    if point.len() != amp.dim {
        return Err(Error::DimensionMismatch {
            expected: amp.dim,
            got: point.len(),
        });
    }
    Ok(amp.eval(point))
}

/// Outcome of the isolated-critical-point check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CriticalPointReport {
    /// No zero of the gradient found on the sampled annulus.
    Pass { resolution: usize },
    /// A second critical point was located.
    Fail { point: Vec<f64>, gradient_norm: f64 },
}

impl CriticalPointReport {
    pub fn passed(&self) -> bool {
        matches!(self, CriticalPointReport::Pass { .. })
    }
}

/// Searches the support annulus `δ ≤ |x| ≤ R` for zeros of `∇f` by sampling
/// `|∇f|²` on a uniform grid and refining every discrete local minimum.
pub fn verify_isolated_critical_point(
    phase: &PolynomialPhase,
    amp: &AmplitudeSpec,
    resolution: usize,
) -> Result<CriticalPointReport> {
    let n = phase.dim();
    if n != amp.dim {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: amp.dim,
        });
    }
    if n > 3 {
        return Err(Error::invalid("critical point search supports n ≤ 3"));
    }
    if resolution < 4 {
        return Err(Error::invalid("resolution must be at least 4"));
    }
    let grad = phase.gradient();
    let r = amp.radius;
    let delta = CRITICAL_EXCLUSION * r;
    let g2 = |x: &[f64]| -> f64 { grad.iter().map(|g| g.eval_unchecked(x).powi(2)).sum() };
    let in_support = |x: &[f64]| -> bool {
        match amp.profile {
            AmplitudeProfile::Radial => x.iter().map(|v| v * v).sum::<f64>() <= r * r,
            AmplitudeProfile::Product => x.iter().all(|v| v.abs() <= r),
        }
    };

    let m = resolution + 1;
    let h = 2.0 * r / resolution as f64;
    let total = m.pow(n as u32);
    let coord = |idx: usize| -> Vec<f64> {
        let mut rest = idx;
        (0..n)
            .map(|_| {
                let i = rest % m;
                rest /= m;
                -r + i as f64 * h
            })
            .collect()
    };
    let values: Vec<f64> = (0..total).map(|idx| g2(&coord(idx))).collect();
    let scale = values
        .iter()
        .cloned()
        .fold(0.0_f64, f64::max)
        .sqrt()
        .max(1.0);
    let tol = 1e-8 * scale;

    let strides: Vec<usize> = (0..n).map(|a| m.pow(a as u32)).collect();
    for idx in 0..total {
        let v = values[idx];
        // discrete local minimum over the axis neighbours
        let mut is_min = true;
        let mut rest = idx;
        for &stride in &strides {
            let i = rest % m;
            rest /= m;
            if i > 0 && values[idx - stride] < v {
                is_min = false;
            }
            if i + 1 < m && values[idx + stride] < v {
                is_min = false;
            }
        }
        if !is_min {
            continue;
        }
        let start = coord(idx);
        let (x, gx) = refine_minimum(&g2, start, h, r);
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if gx.sqrt() <= tol && norm >= 2.0 * delta && in_support(&x) {
            return Ok(CriticalPointReport::Fail {
                point: x,
                gradient_norm: gx.sqrt(),
            });
        }
    }
    Ok(CriticalPointReport::Pass { resolution })
}

/// Pattern search on a shrinking stencil; stays inside the cube `[-r, r]^n`.
pub(crate) fn refine_minimum(
    g: &impl Fn(&[f64]) -> f64,
    mut x: Vec<f64>,
    mut h: f64,
    r: f64,
) -> (Vec<f64>, f64) {
    let n = x.len();
    let mut best = g(&x);
    for _ in 0..200 {
        let mut improved = false;
        for axis in 0..n {
            for dir in [-1.0, 1.0] {
                let mut y = x.clone();
                y[axis] = (y[axis] + dir * h).clamp(-r, r);
                let v = g(&y);
                if v < best {
                    best = v;
                    x = y;
                    improved = true;
                }
            }
        }
        if !improved {
            h *= 0.5;
            if h < 1e-15 * r.max(1.0) {
                break;
            }
        }
    }
    (x, best)
}
