//! Predicted oscillation index, dimensions, leading coefficients and
//! Minkowski contents of integral curves.
//!
//! The curve of `I(τ) ~ e^{iτ f(0)} a τ^β` is a spiral `r ≈ m φ^{-α}` with
//! `α = -β` and `m = |a| |f(0)|^{-β}`, which fixes the curve dimension
//! `d = 2/(1-β)` and the oscillatory dimension `d' = (3+β)/2` of the
//! reflected graphs.
//!
//! Example 3 style normal forms `x^p + y^q` are sometimes described with the
//! two dimension labels swapped; this module always uses `d` for the curve
//! and `d'` for the graphs.

use std::f64::consts::PI;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::newton::{self, DiagramInfo};
use crate::phase::{critical_order_1d, CriticalOrder, PolynomialPhase};
use crate::quadrature::{exp_sinh, tanh_sinh};
use crate::special::gamma;
use crate::{Complex64, Rational};

/// Which statement the prediction comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// Spiral regime with `β ∈ [-1, 0)`.
    Oscillatory,
    /// All dimensions equal one.
    Rectifiable,
}

/// Predicted Minkowski content of the curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Content {
    Value(f64),
    /// Log-corrected leading term; upper content infinite.
    Degenerate,
    Unknown,
}

impl Content {
    pub fn value(&self) -> Option<f64> {
        match self {
            Content::Value(v) => Some(*v),
            _ => None,
        }
    }
}

impl Serialize for Content {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Content::Value(v) => s.serialize_f64(*v),
            Content::Degenerate => s.serialize_str("degenerate"),
            Content::Unknown => s.serialize_str("unknown"),
        }
    }
}

fn rat_str<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn complex_opt<S: Serializer>(c: &Option<Complex64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match c {
        Some(c) => [c.re, c.im].serialize(s),
        None => s.serialize_str("unknown"),
    }
}

/// Predicted fractal data of the integral curve.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticPrediction {
    pub regime: Regime,
    #[serde(serialize_with = "rat_str")]
    pub beta: Rational,
    pub multiplicity: usize,
    #[serde(serialize_with = "rat_str")]
    pub curve_dim: Rational,
    #[serde(serialize_with = "rat_str")]
    pub osc_dim: Rational,
    /// Coefficient of `τ^β` in `I(τ) e^{-iτ f(0)}`, serialized as `[re, im]`.
    #[serde(serialize_with = "complex_opt")]
    pub leading_coeff: Option<Complex64>,
    pub content: Content,
    pub f0: Option<f64>,
    pub degenerate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl AsymptoticPrediction {
    pub fn curve_dim_f64(&self) -> f64 {
        to_f64(self.curve_dim)
    }

    pub fn osc_dim_f64(&self) -> f64 {
        to_f64(self.osc_dim)
    }

    pub fn beta_f64(&self) -> f64 {
        to_f64(self.beta)
    }
}

pub fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `d = 2/(1-β)`.
pub fn curve_dimension(beta: Rational) -> Rational {
    Rational::from_integer(2) / (Rational::one() - beta)
}

/// `d' = (β+3)/2`.
pub fn oscillatory_dimension(beta: Rational) -> Rational {
    (beta + Rational::from_integer(3)) / Rational::from_integer(2)
}

fn rectifiable(
    beta: Rational,
    multiplicity: usize,
    f0: Option<f64>,
    note: &str,
) -> AsymptoticPrediction {
    AsymptoticPrediction {
        regime: Regime::Rectifiable,
        beta,
        multiplicity,
        curve_dim: Rational::one(),
        osc_dim: Rational::one(),
        leading_coeff: None,
        content: Content::Unknown,
        f0,
        degenerate: false,
        note: Some(note.to_string()),
    }
}

fn oscillatory(beta: Rational, multiplicity: usize, f0: Option<f64>) -> AsymptoticPrediction {
    AsymptoticPrediction {
        regime: Regime::Oscillatory,
        beta,
        multiplicity,
        curve_dim: curve_dimension(beta),
        osc_dim: oscillatory_dimension(beta),
        leading_coeff: None,
        content: Content::Unknown,
        f0,
        degenerate: false,
        note: None,
    }
}

const ZERO_F0_NOTE: &str = "f(0) = 0: the curve does not wind and all dimensions equal 1";

/// One-variable prediction for a critical point of order `s`.
///
/// `f_second` is `f''(0)`; with `s = 2` it gives the leading coefficient
/// `φ(0) √(2π) |f''(0)|^{-1/2} e^{iπ sgn f''(0)/4}` and the content.
pub fn predict_1d(
    order: CriticalOrder,
    f0: f64,
    phi0: f64,
    f_second: Option<f64>,
) -> Result<AsymptoticPrediction> {
    let s = order.s;
    if s < 2 {
        return Err(Error::invalid(format!(
            "critical order must be at least 2, got {s}"
        )));
    }
    let beta = -Rational::new(1, s as i64);
    if f0 == 0.0 {
        return Ok(rectifiable(beta, 0, Some(f0), ZERO_F0_NOTE));
    }
    let mut p = oscillatory(beta, 0, Some(f0));
    if s == 2 {
        if let Some(f2) = f_second {
            if f2 == 0.0 {
                return Err(Error::invalid("f''(0) must be non-zero for s = 2"));
            }
            let c1 = Complex64::from_polar(
                phi0 * (2.0 * PI).sqrt() / f2.abs().sqrt(),
                f2.signum() * PI / 4.0,
            );
            p.leading_coeff = Some(c1);
            p.content = Content::Value(content_1d(s, c1.norm(), f0)?);
        }
    } else {
        p.note =
            Some("leading coefficient for s ≥ 3 is only available from a numerical fit".into());
    }
    Ok(p)
}

/// Content of the curve for a one-variable critical point of order `s`
/// whose leading coefficient has modulus `c1`.
pub fn content_1d(s: u32, c1: f64, f0: f64) -> Result<f64> {
    if s < 2 {
        return Err(Error::invalid("critical order must be at least 2"));
    }
    if f0 == 0.0 || !(c1 > 0.0) {
        return Err(Error::invalid(
            "content needs f(0) ≠ 0 and a non-zero coefficient",
        ));
    }
    let s = s as f64;
    Ok(
        c1.powf(2.0 * s / (s + 1.0))
            * PI
            * (PI / (s * f0.abs())).powf(-2.0 / (s + 1.0))
            * (s + 1.0)
            / (s - 1.0),
    )
}

/// Content of the curve from the leading coefficient `a_{0,β}`.
pub fn content_from_coefficient(beta: Rational, a0beta: Complex64, f0: f64) -> Result<f64> {
    if !(beta > -Rational::one() && beta < Rational::zero()) {
        return Err(Error::invalid(format!(
            "content formula needs β in (-1, 0), got {beta}"
        )));
    }
    if !(f0 > 0.0) {
        return Err(Error::invalid(format!(
            "content formula needs f(0) > 0, got {f0}"
        )));
    }
    let a = a0beta.norm();
    if a == 0.0 {
        return Err(Error::invalid("leading coefficient must be non-zero"));
    }
    let b = to_f64(beta);
    Ok((a / f0.powf(b)).powf(2.0 / (1.0 - b))
        * (-b).powf(2.0 * b / (1.0 - b))
        * PI.powf((1.0 + b) / (1.0 - b))
        * (1.0 - b)
        / (1.0 + b))
}

/// Two-variable prediction from the Newton diagram (adapted coordinates
/// assumed).
pub fn predict_2d(
    diagram: &DiagramInfo,
    f0: f64,
    a0beta: Option<Complex64>,
) -> Result<AsymptoticPrediction> {
    if diagram.dim != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: diagram.dim,
        });
    }
    let beta = diagram.remoteness;
    let k = diagram.multiplicity;
    if f0 == 0.0 {
        return Ok(rectifiable(beta, k, Some(f0), ZERO_F0_NOTE));
    }
    let minus_one = -Rational::one();
    if k == 0 || beta == minus_one {
        let mut p = oscillatory(beta, k, Some(f0));
        if beta == minus_one {
            p.note = Some("β = -1: the spiral is r ~ 1/φ, dimension 1 with infinite length".into());
            p.leading_coeff = a0beta;
        } else if let Some(a) = a0beta {
            p.leading_coeff = Some(a);
            p.content = Content::Value(content_from_coefficient(beta, a, f0.abs())?);
        }
        return Ok(p);
    }
    if beta > minus_one {
        let mut p = oscillatory(beta, k, Some(f0));
        p.degenerate = true;
        p.content = Content::Degenerate;
        p.note = Some("the leading term carries a log factor".into());
        return Ok(p);
    }
    Err(Error::OutOfScope(format!(
        "multiplicity {k} with remoteness {beta} ≤ -1"
    )))
}

/// Caller-supplied statement about the coefficients `a_{k,β}` for `n > 2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CoefficientHypothesis {
    /// `a_{0,β} ≠ 0` and `a_{k,β} = 0` for `k ≥ 1`; the value is optional.
    Leading(Option<Complex64>),
    /// `a_{L,β} ≠ 0` for the given `L ≥ 1`.
    LogPower(usize),
}

impl CoefficientHypothesis {
    /// `0` selects [`CoefficientHypothesis::Leading`], `L > 0` a log power.
    pub fn from_index(k: usize) -> Self {
        if k == 0 {
            CoefficientHypothesis::Leading(None)
        } else {
            CoefficientHypothesis::LogPower(k)
        }
    }
}

/// Prediction for `n > 2`. Nondegeneracy of the principal part and
/// remoteness of the polyhedron are the caller's responsibility, except that
/// `β < -1` is recognized as the rectifiable regime.
pub fn predict_nd(
    diagram: &DiagramInfo,
    f0: f64,
    hypothesis: Option<CoefficientHypothesis>,
) -> Result<AsymptoticPrediction> {
    if diagram.dim <= 2 {
        return Err(Error::invalid("predict_nd is for n > 2"));
    }
    let beta = diagram.remoteness;
    let k = diagram.multiplicity;
    if f0 == 0.0 {
        return Ok(rectifiable(beta, k, Some(f0), ZERO_F0_NOTE));
    }
    let minus_one = -Rational::one();
    if beta < minus_one {
        return Ok(rectifiable(
            beta,
            k,
            Some(f0),
            "β < -1: |I(τ)| decays faster than 1/τ and the curve is rectifiable",
        ));
    }
    if beta == minus_one {
        return Err(Error::OutOfScope(
            "polyhedron is not remote (β = -1)".into(),
        ));
    }
    let hypothesis = hypothesis.ok_or_else(|| {
        Error::invalid("n > 2 needs a coefficient hypothesis (which a_{k,β} is non-zero)")
    })?;
    let mut p = oscillatory(beta, k, Some(f0));
    match hypothesis {
        CoefficientHypothesis::Leading(a) => {
            if let Some(a) = a {
                p.leading_coeff = Some(a);
                p.content = Content::Value(content_from_coefficient(beta, a, f0.abs())?);
            }
        }
        CoefficientHypothesis::LogPower(l) => {
            if l == 0 || l >= diagram.dim {
                return Err(Error::invalid(format!(
                    "log power must be in 1..{}",
                    diagram.dim
                )));
            }
            p.degenerate = true;
            p.content = Content::Degenerate;
        }
    }
    Ok(p)
}

/// Singularity classes with known singular indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CausticFamily {
    A,
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CausticType {
    pub family: CausticFamily,
    pub k: u32,
    pub n: u32,
}

/// Prediction for a caustic type together with the `k → ∞` limit of the
/// curve dimension.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CausticPrediction {
    #[serde(serialize_with = "rat_str")]
    pub gamma: Rational,
    #[serde(serialize_with = "rat_str")]
    pub limit_curve_dim: Rational,
    pub prediction: AsymptoticPrediction,
}

pub fn caustic_prediction(c: CausticType) -> Result<CausticPrediction> {
    if c.n == 0 {
        return Err(Error::invalid("ambient dimension must be at least 1"));
    }
    let k = c.k as i64;
    let gamma = match c.family {
        CausticFamily::A if k >= 1 => Rational::new(k - 1, 2 * k + 2),
        CausticFamily::D if k >= 4 => Rational::new(k - 2, 2 * k - 2),
        _ => {
            return Err(Error::invalid(format!(
                "invalid caustic {:?}{}",
                c.family, c.k
            )))
        }
    };
    let half_n = Rational::new(c.n as i64, 2);
    let beta = gamma - half_n;
    let prediction = if beta < -Rational::one() {
        rectifiable(beta, 0, None, "β < -1: rectifiable regime")
    } else {
        oscillatory(beta, 0, None)
    };
    Ok(CausticPrediction {
        gamma,
        limit_curve_dim: Rational::new(4, 1 + c.n as i64),
        prediction,
    })
}

/// Components of the leading coefficient for `a x^p + b y^q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GreenblattParts {
    pub c0: f64,
    pub big_c0: f64,
    pub coefficient: Complex64,
}

/// Absolute/relative tolerance for the coefficient integrals.
pub const GREENBLATT_TOL: f64 = 1e-12;

/// `a_{0,β}` for `x^p + y^q` with amplitude value `phi00` at the origin.
pub fn greenblatt_coefficient(p: u32, q: u32, phi00: f64, beta: Rational) -> Result<Complex64> {
    let expected = -Rational::new(1, p as i64) - Rational::new(1, q as i64);
    if beta != expected {
        return Err(Error::invalid(format!(
            "remoteness of x^{p} + y^{q} is {expected}, got {beta}"
        )));
    }
    Ok(greenblatt_parts(p, q, 1.0, 1.0, phi00)?.coefficient)
}

/// Closed form for even `p, q`: `4 φ(0,0) e^{iπ(1/p+1/q)/2} Γ(1+1/p) Γ(1+1/q)`.
pub fn greenblatt_closed_form(p: u32, q: u32, phi00: f64) -> Result<Complex64> {
    if !p.is_multiple_of(2) || !q.is_multiple_of(2) {
        return Err(Error::invalid("closed form needs even p and q"));
    }
    let (pf, qf) = (p as f64, q as f64);
    let modulus = 4.0 * phi00 * gamma(1.0 + 1.0 / pf)? * gamma(1.0 + 1.0 / qf)?;
    Ok(Complex64::from_polar(
        modulus,
        0.5 * PI * (1.0 / pf + 1.0 / qf),
    ))
}

/// Leading coefficient for the face polynomial `S(x,y) = a x^p + b y^q`:
/// `c_0` and `C_0` integrate the positive and negative parts of
/// `S(±1, y)^β` over the real line.
pub fn greenblatt_parts(p: u32, q: u32, a: f64, b: f64, phi00: f64) -> Result<GreenblattParts> {
    if p < 2 || q < 2 || (p == 2 && q == 2) {
        return Err(Error::invalid(format!(
            "need p, q ≥ 2 and (p, q) ≠ (2, 2), got ({p}, {q})"
        )));
    }
    if a == 0.0 || b == 0.0 || !a.is_finite() || !b.is_finite() {
        return Err(Error::invalid(
            "face coefficients must be finite and non-zero",
        ));
    }
    let beta = -(1.0 / p as f64) - 1.0 / q as f64;
    let m = p as f64 / q as f64;
    let mut pos = 0.0;
    let mut neg = 0.0;
    for x in [1.0_f64, -1.0] {
        let s0 = a * x.powi(p as i32);
        let (ip, ineg) = signed_power_integrals(s0, b, q, beta)?;
        pos += ip;
        neg += ineg;
    }
    let c0 = phi00 / (m + 1.0) * pos;
    let big_c0 = phi00 / (m + 1.0) * neg;
    let pre = -beta * gamma(-beta)?;
    let coefficient = pre
        * (Complex64::from_polar(c0, -0.5 * PI * beta)
            + Complex64::from_polar(big_c0, 0.5 * PI * beta));
    Ok(GreenblattParts {
        c0,
        big_c0,
        coefficient,
    })
}

/// `∫_ℝ (g^+)^β dy` and `∫_ℝ (g^-)^β dy` for `g(y) = s0 + b y^q`.
fn signed_power_integrals(s0: f64, b: f64, q: u32, beta: f64) -> Result<(f64, f64)> {
    // real roots of s0 + b y^q
    let ratio = -s0 / b;
    let mut roots = Vec::new();
    if ratio > 0.0 {
        let r = ratio.powf(1.0 / q as f64);
        roots.push(r);
        if q.is_multiple_of(2) {
            roots.push(-r);
        }
    } else if ratio < 0.0 && q % 2 == 1 {
        roots.push(-(-ratio).powf(1.0 / q as f64));
    }
    roots.sort_by(f64::total_cmp);

    // g near a root y0, as a polynomial in the offset δ with the constant
    // term cancelled exactly
    let near_root = |y0: f64, d: f64| -> f64 {
        let mut acc = 0.0;
        let mut binom = 1.0;
        for j in 1..=q {
            binom *= (q - j + 1) as f64 / j as f64;
            acc += binom * y0.powi((q - j) as i32) * d.powi(j as i32);
        }
        b * acc
    };
    let g = |y: f64| s0 + b * y.powi(q as i32);
    let tol = GREENBLATT_TOL;

    let mut breaks = roots.clone();
    if breaks.is_empty() {
        breaks.push(0.0);
    }
    let mut pos = 0.0;
    let mut neg = 0.0;
    let anchored_at_root = !roots.is_empty();

    // tails: (-∞, first] and [last, ∞)
    for (anchor, dir) in [(breaks[0], -1.0), (*breaks.last().unwrap(), 1.0)] {
        let sign_probe = g(anchor + dir);
        let r = exp_sinh(tol, |d| {
            let v = if anchored_at_root {
                near_root(anchor, dir * d)
            } else {
                g(anchor + dir * d)
            };
            if v == 0.0 {
                0.0
            } else {
                v.abs().powf(beta)
            }
        })?;
        if sign_probe > 0.0 {
            pos += r.value;
        } else {
            neg += r.value;
        }
    }
    // finite pieces between consecutive roots
    for w in breaks.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let mid = 0.5 * (lo + hi);
        let sign_probe = g(mid);
        let r = tanh_sinh(hi - lo, tol, |l, rr| {
            let v = if l <= rr {
                near_root(lo, l)
            } else {
                near_root(hi, -rr)
            };
            if v == 0.0 {
                0.0
            } else {
                v.abs().powf(beta)
            }
        })?;
        if sign_probe > 0.0 {
            pos += r.value;
        } else {
            neg += r.value;
        }
    }
    Ok((pos, neg))
}

/// Options for the phase-level prediction.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PredictOptions {
    /// The caller asserts the coordinates are adapted.
    pub assume_adapted: bool,
    /// Coefficient hypothesis index for `n > 2`.
    pub coeff_hypothesis: Option<usize>,
    /// Leading coefficient supplied by the caller.
    pub leading_coeff: Option<Complex64>,
}

/// Prediction from a phase and the amplitude value at the origin.
pub fn predict_phase(
    phase: &PolynomialPhase,
    phi0: f64,
    opts: &PredictOptions,
) -> Result<AsymptoticPrediction> {
    let f0 = phase.constant_term();
    if phase.has_linear_term() {
        return Ok(rectifiable(
            Rational::zero(),
            0,
            Some(f0),
            "no critical point at the origin: the integral decays faster than any power",
        ));
    }
    match phase.dim() {
        1 => {
            let order = critical_order_1d(phase)?;
            let f2 =
                (order.s == 2).then(|| 2.0 * phase.coefficient(&crate::phase::MultiIndex(vec![2])));
            let mut p = predict_1d(order, f0, phi0, f2)?;
            if let (Some(a), Regime::Oscillatory) = (opts.leading_coeff, p.regime) {
                p.leading_coeff = Some(a);
                p.content = Content::Value(content_1d(order.s, a.norm(), f0)?);
            }
            Ok(p)
        }
        2 => {
            let info = newton::analyze(phase)?;
            let a0 = match opts.leading_coeff {
                Some(a) => Some(a),
                None => two_term_coefficient(phase, &info, phi0)?,
            };
            let mut p = predict_2d(&info, f0, a0)?;
            if !opts.assume_adapted {
                let note =
                    "coordinates assumed adapted; the remoteness is that of the given coordinates";
                p.note = Some(match p.note.take() {
                    Some(n) => format!("{n}; {note}"),
                    None => note.to_string(),
                });
            }
            Ok(p)
        }
        _ => {
            let info = newton::analyze(phase)?;
            let hyp = opts
                .coeff_hypothesis
                .map(|k| match CoefficientHypothesis::from_index(k) {
                    CoefficientHypothesis::Leading(_) => {
                        CoefficientHypothesis::Leading(opts.leading_coeff)
                    }
                    h => h,
                });
            predict_nd(&info, f0, hyp)
        }
    }
}

/// Leading coefficient when the principal part is `a x^p + b y^q`.
fn two_term_coefficient(
    phase: &PolynomialPhase,
    info: &DiagramInfo,
    phi0: f64,
) -> Result<Option<Complex64>> {
    if info.multiplicity != 0 || info.remoteness <= -Rational::one() {
        return Ok(None);
    }
    let pp = newton::principal_part(phase, &info.faces);
    let terms: Vec<_> = pp.terms().collect();
    if terms.len() != 2 {
        return Ok(None);
    }
    let (mut p, mut q, mut a, mut b) = (0, 0, 0.0, 0.0);
    for (k, c) in terms {
        match k.as_slice() {
            [e, 0] => {
                p = *e;
                a = c;
            }
            [0, e] => {
                q = *e;
                b = c;
            }
            _ => return Ok(None),
        }
    }
    if p < 2 || q < 2 {
        return Ok(None);
    }
    let parts = greenblatt_parts(p, q, a, b, phi0)?;
    Ok(Some(parts.coefficient))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn one_dimensional_dimensions() {
        let p2 = predict_1d(CriticalOrder { s: 2 }, 1.0, 1.0, None).unwrap();
        assert_eq!(p2.curve_dim, r(4, 3));
        assert_eq!(p2.osc_dim, r(5, 4));
        let p3 = predict_1d(CriticalOrder { s: 3 }, 1.0, 1.0, None).unwrap();
        assert_eq!(p3.curve_dim, r(3, 2));
        assert_eq!(p3.osc_dim, r(4, 3));
        assert_eq!(p3.content, Content::Unknown);
        assert!(predict_1d(CriticalOrder { s: 1 }, 1.0, 1.0, None).is_err());
        let flat = predict_1d(CriticalOrder { s: 2 }, 0.0, 1.0, None).unwrap();
        assert_eq!(flat.regime, Regime::Rectifiable);
        assert_eq!(flat.curve_dim, Rational::one());
    }

    #[test]
    fn example_one_content() {
        let p = predict_1d(CriticalOrder { s: 2 }, 1.0, 1.0, Some(2.0)).unwrap();
        let c = p.leading_coeff.unwrap();
        assert!((c.norm() - PI.sqrt()).abs() < 1e-14);
        assert!((c.arg() - PI / 4.0).abs() < 1e-14);
        let m = p.content.value().unwrap();
        assert!((m - 3.0 * 2f64.powf(2.0 / 3.0) * PI).abs() < 1e-12);
        // negative f0 uses |f0|
        let q = predict_1d(CriticalOrder { s: 2 }, -1.0, 1.0, Some(2.0)).unwrap();
        assert!((q.content.value().unwrap() - m).abs() < 1e-12);
    }

    #[test]
    fn two_dimensional_cases() {
        let f = PolynomialPhase::from_terms(
            2,
            [(vec![2, 0], 1.0), (vec![0, 3], 1.0), (vec![0, 0], 1.0)],
        )
        .unwrap();
        let info = newton::analyze(&f).unwrap();
        let p = predict_2d(&info, 1.0, None).unwrap();
        assert_eq!(p.beta, r(-5, 6));
        assert_eq!(p.curve_dim, r(12, 11));
        assert_eq!(p.osc_dim, r(13, 12));

        let g = PolynomialPhase::from_terms(
            2,
            [(vec![2, 0], 1.0), (vec![0, 2], 1.0), (vec![0, 0], 1.0)],
        )
        .unwrap();
        let info = newton::analyze(&g).unwrap();
        let p = predict_2d(&info, 1.0, None).unwrap();
        assert_eq!(p.curve_dim, Rational::one());
        assert_eq!(p.regime, Regime::Oscillatory);

        let h = PolynomialPhase::from_terms(2, [(vec![2, 2], 1.0), (vec![0, 0], 1.0)]).unwrap();
        let info = newton::analyze(&h).unwrap();
        let p = predict_2d(&info, 1.0, None).unwrap();
        assert!(p.degenerate);
        assert_eq!(p.content, Content::Degenerate);
        assert_eq!(p.curve_dim, r(4, 3));
    }

    #[test]
    fn higher_dimensional_cases() {
        let quad = PolynomialPhase::from_terms(
            3,
            [
                (vec![2, 0, 0], 1.0),
                (vec![0, 2, 0], 1.0),
                (vec![0, 0, 2], 1.0),
                (vec![0, 0, 0], 1.0),
            ],
        )
        .unwrap();
        let info = newton::analyze(&quad).unwrap();
        let p = predict_nd(&info, 1.0, None).unwrap();
        assert_eq!(p.regime, Regime::Rectifiable);
        assert_eq!(p.beta, r(-3, 2));

        let quart = PolynomialPhase::from_terms(
            3,
            [
                (vec![4, 0, 0], 1.0),
                (vec![0, 4, 0], 1.0),
                (vec![0, 0, 4], 1.0),
                (vec![0, 0, 0], 1.0),
            ],
        )
        .unwrap();
        let info = newton::analyze(&quart).unwrap();
        assert!(predict_nd(&info, 1.0, None).is_err());
        let p = predict_nd(&info, 1.0, Some(CoefficientHypothesis::Leading(None))).unwrap();
        assert_eq!(p.curve_dim, r(8, 7));
        assert!(!p.degenerate);
        let q = predict_nd(&info, 1.0, Some(CoefficientHypothesis::LogPower(1))).unwrap();
        assert_eq!(q.curve_dim, r(8, 7));
        assert!(q.degenerate);
    }

    #[test]
    fn caustics() {
        let a2 = caustic_prediction(CausticType {
            family: CausticFamily::A,
            k: 2,
            n: 1,
        })
        .unwrap();
        assert_eq!(a2.gamma, r(1, 6));
        assert_eq!(a2.prediction.beta, r(-1, 3));
        assert_eq!(a2.prediction.curve_dim, r(3, 2));
        let a1 = caustic_prediction(CausticType {
            family: CausticFamily::A,
            k: 1,
            n: 1,
        })
        .unwrap();
        assert_eq!(a1.prediction.curve_dim, r(4, 3));
        let d4 = caustic_prediction(CausticType {
            family: CausticFamily::D,
            k: 4,
            n: 2,
        })
        .unwrap();
        assert_eq!(d4.gamma, r(1, 3));
        assert_eq!(d4.prediction.beta, r(-2, 3));
        assert_eq!(d4.prediction.curve_dim, r(6, 5));
        assert_eq!(d4.limit_curve_dim, r(4, 3));
        assert!(caustic_prediction(CausticType {
            family: CausticFamily::D,
            k: 3,
            n: 2
        })
        .is_err());
        assert!(caustic_prediction(CausticType {
            family: CausticFamily::A,
            k: 0,
            n: 2
        })
        .is_err());
    }

    #[test]
    fn greenblatt_even_cases_match_closed_form() {
        for (p, q) in [(2, 4), (4, 4), (2, 6), (4, 6), (6, 6)] {
            let beta = -r(1, p as i64) - r(1, q as i64);
            let num = greenblatt_coefficient(p, q, 1.0, beta).unwrap();
            let exact = greenblatt_closed_form(p, q, 1.0).unwrap();
            assert!(
                (num - exact).norm() < 1e-9 * exact.norm(),
                "({p},{q}) {num} vs {exact}"
            );
        }
        let a = greenblatt_closed_form(2, 4, 1.0).unwrap();
        assert!((a.norm() - 3.2131).abs() < 1e-3);
        let parts = greenblatt_parts(4, 4, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(parts.big_c0, 0.0);
    }

    #[test]
    fn greenblatt_mixed_parity() {
        let parts = greenblatt_parts(2, 3, 1.0, 1.0, 1.0).unwrap();
        assert!(parts.big_c0 > 0.0);
        assert!(parts.c0 > 0.0);
        assert!(greenblatt_coefficient(2, 2, 1.0, r(-1, 1)).is_err());
        assert!(greenblatt_coefficient(2, 4, 1.0, r(-1, 2)).is_err());
    }

    #[test]
    fn eq6_and_eq7_agree() {
        let beta = r(-1, 2);
        let a = Complex64::new(PI.sqrt(), 0.0);
        let m7 = content_from_coefficient(beta, a, 1.0).unwrap();
        let m6 = content_1d(2, PI.sqrt(), 1.0).unwrap();
        assert!((m7 - m6).abs() < 1e-12 * m6);
        assert!((m6 - 3.0 * 2f64.powf(2.0 / 3.0) * PI).abs() < 1e-12);
        assert!(content_from_coefficient(r(-1, 1), a, 1.0).is_err());
    }

    #[test]
    fn phase_level_dispatch() {
        let f = PolynomialPhase::from_terms(1, [(vec![2], 1.0), (vec![0], 1.0)]).unwrap();
        let p = predict_phase(&f, 1.0, &PredictOptions::default()).unwrap();
        assert!((p.content.value().unwrap() - 3.0 * 2f64.powf(2.0 / 3.0) * PI).abs() < 1e-12);

        let g = PolynomialPhase::from_terms(
            2,
            [(vec![2, 0], 1.0), (vec![0, 4], 1.0), (vec![0, 0], 1.0)],
        )
        .unwrap();
        let p = predict_phase(&g, 1.0, &PredictOptions::default()).unwrap();
        let exact = greenblatt_closed_form(2, 4, 1.0).unwrap();
        assert!((p.leading_coeff.unwrap() - exact).norm() < 1e-9);
        assert!(matches!(p.content, Content::Value(_)));

        let h = PolynomialPhase::from_terms(1, [(vec![1], 1.0), (vec![0], 2.0)]).unwrap();
        let p = predict_phase(&h, 1.0, &PredictOptions::default()).unwrap();
        assert_eq!(p.regime, Regime::Rectifiable);
    }
}
