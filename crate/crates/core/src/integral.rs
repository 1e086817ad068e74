//! Numerical evaluation of `I(τ) = ∫ e^{iτ f(x)} φ(x) dx`, the curve
//! `(Re I, Im I)`, the reflected graphs `t ↦ I(1/t)`, and leading-term fits.
//!
//! Quadrature is composite Gauss–Legendre on panels whose width shrinks like
//! `1/τ`. When the phase is a sum of one-variable terms the exponential
//! factorizes along axes, so only per-axis exponentials are computed; with
//! the product amplitude the whole integral factorizes.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fractal::Polyline;
use crate::phase::{bump, AmplitudeProfile, AmplitudeSpec, PolynomialPhase};
use crate::quadrature::GaussRule;
use crate::{Complex64, Rational};

/// Discretization parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureConfig {
    pub points_per_wavelength: usize,
    /// Gauss nodes per panel.
    pub panel_order: usize,
    /// Panels per axis regardless of `τ`; resolves the amplitude.
    pub min_panels: usize,
    /// Per-axis panel cap.
    pub max_panels: usize,
    /// Cap on tensor nodes for phases that do not split along axes.
    pub max_nodes: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            points_per_wavelength: 6,
            panel_order: 12,
            min_panels: 32,
            max_panels: 2_000_000,
            max_nodes: 40_000_000,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.points_per_wavelength < 4 {
            return Err(Error::invalid("points_per_wavelength must be at least 4"));
        }
        if self.panel_order < 2 || self.min_panels < 1 || self.max_panels < self.min_panels {
            return Err(Error::invalid("inconsistent panel settings"));
        }
        Ok(())
    }

    fn doubled(&self) -> Self {
        QuadratureConfig {
            points_per_wavelength: 2 * self.points_per_wavelength,
            max_panels: 2 * self.max_panels,
            max_nodes: 4 * self.max_nodes,
            ..self.clone()
        }
    }
}

/// Composite Gauss nodes on `[-r, r]`.
#[derive(Clone, Debug)]
struct AxisGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl AxisGrid {
    fn new(r: f64, panels: usize, rule: &GaussRule) -> Self {
        let width = 2.0 * r / panels as f64;
        let mut nodes = Vec::with_capacity(panels * rule.len());
        let mut weights = Vec::with_capacity(panels * rule.len());
        for p in 0..panels {
            let c = -r + (p as f64 + 0.5) * width;
            for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                nodes.push(c + 0.5 * width * x);
                weights.push(0.5 * width * w);
            }
        }
        AxisGrid { nodes, weights }
    }
}

fn panels_for(cfg: &QuadratureConfig, tau: f64, gradient_bound: f64, r: f64) -> Result<usize> {
    let k = tau.abs() * gradient_bound;
    let need = if k > 0.0 {
        let width = cfg.panel_order as f64 * 2.0 * PI / (cfg.points_per_wavelength as f64 * k);
        (2.0 * r / width).ceil() as usize
    } else {
        0
    };
    let n = need.max(cfg.min_panels);
    if n > cfg.max_panels {
        return Err(Error::BudgetExceeded(format!(
            "τ = {tau} needs {n} panels per axis (cap {})",
            cfg.max_panels
        )));
    }
    Ok(n)
}

/// One factor `Σ_j c_j e^{iτ g(x_j)}` of a separable sum.
#[derive(Clone, Debug)]
struct AxisSum {
    coeff: Vec<f64>,
    g: Vec<f64>,
}

impl AxisSum {
    fn eval(&self, tau: f64) -> Complex64 {
        let (mut re, mut im) = (0.0, 0.0);
        for (c, g) in self.coeff.iter().zip(&self.g) {
            let (s, co) = (tau * g).sin_cos();
            re += c * co;
            im += c * s;
        }
        Complex64::new(re, im)
    }

    fn exponentials(&self, tau: f64) -> Vec<Complex64> {
        self.coeff
            .iter()
            .zip(&self.g)
            .map(|(c, g)| {
                let (s, co) = (tau * g).sin_cos();
                Complex64::new(c * co, c * s)
            })
            .collect()
    }
}

fn eval_axis_poly(terms: &[(u32, f64)], x: f64) -> f64 {
    terms.iter().map(|&(e, c)| c * x.powi(e as i32)).sum()
}

/// Precomputed nodes for every `τ` up to `tau_design`.
#[derive(Clone, Debug)]
enum Plan {
    /// Product amplitude and separable phase.
    Product {
        scale: f64,
        f0: f64,
        axes: Vec<AxisSum>,
    },
    /// Two variables, radial amplitude, separable phase: rows of amplitude
    /// values restricted to the disk.
    Radial2 {
        f0: f64,
        x: AxisSum,
        y: AxisSum,
        rows: Vec<(usize, Vec<f64>)>,
    },
    /// Any phase: amplitude-weighted nodes with phase values.
    General { coeff: Vec<f64>, f: Vec<f64> },
}

impl Plan {
    fn build(
        phase: &PolynomialPhase,
        amp: &AmplitudeSpec,
        tau_design: f64,
        cfg: &QuadratureConfig,
    ) -> Result<Plan> {
        cfg.validate()?;
        let n = phase.dim();
        if n != amp.dim {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: amp.dim,
            });
        }
        if n > 3 {
            return Err(Error::OutOfScope("integration is limited to n ≤ 3".into()));
        }
        let r = amp.radius;
        let rule = GaussRule::new(cfg.panel_order);
        let grids: Vec<AxisGrid> = (0..n)
            .map(|axis| {
                let panels = panels_for(cfg, tau_design, phase.partial_bound(axis, r), r)?;
                Ok(AxisGrid::new(r, panels, &rule))
            })
            .collect::<Result<_>>()?;
        let f0 = phase.constant_term();
        let product = n == 1 || amp.profile == AmplitudeProfile::Product;

        if let Some(parts) = phase.additive_split() {
            let axis_sum = |axis: usize, with_amp: bool| -> AxisSum {
                let grid = &grids[axis];
                AxisSum {
                    coeff: grid
                        .nodes
                        .iter()
                        .zip(&grid.weights)
                        .map(|(x, w)| {
                            if with_amp {
                                w * bump((x / r).powi(2))
                            } else {
                                *w
                            }
                        })
                        .collect(),
                    g: grid
                        .nodes
                        .iter()
                        .map(|&x| eval_axis_poly(&parts[axis], x))
                        .collect(),
                }
            };
            if product {
                return Ok(Plan::Product {
                    scale: amp.phi0,
                    f0,
                    axes: (0..n).map(|a| axis_sum(a, true)).collect(),
                });
            }
            if n == 2 {
                let x = axis_sum(0, false);
                let y = axis_sum(1, false);
                let ny = grids[1].nodes.len();
                if grids[0].nodes.len().saturating_mul(ny) > cfg.max_nodes {
                    return Err(Error::BudgetExceeded(format!(
                        "{}×{} nodes exceed max_nodes {}",
                        grids[0].nodes.len(),
                        ny,
                        cfg.max_nodes
                    )));
                }
                let rows = grids[0]
                    .nodes
                    .iter()
                    .map(|&xv| {
                        // the bump underflows to zero slightly inside the disk, so
                        // the row is bounded by where the amplitude is positive
                        let ys = &grids[1].nodes;
                        let lo = ys.partition_point(|&yv| yv < 0.0 && amp.eval(&[xv, yv]) == 0.0);
                        let hi = lo
                            + ys[lo..]
                                .partition_point(|&yv| yv <= 0.0 || amp.eval(&[xv, yv]) > 0.0);
                        let vals: Vec<f64> =
                            ys[lo..hi].iter().map(|&yv| amp.eval(&[xv, yv])).collect();
                        (lo, vals)
                    })
                    .collect();
                return Ok(Plan::Radial2 { f0, x, y, rows });
            }
        }

        let total: usize = grids.iter().map(|g| g.nodes.len()).product();
        if total > cfg.max_nodes {
            return Err(Error::BudgetExceeded(format!(
                "{total} tensor nodes exceed max_nodes {}",
                cfg.max_nodes
            )));
        }
        let mut coeff = Vec::new();
        let mut fvals = Vec::new();
        let mut point = vec![0.0; n];
        for idx in 0..total {
            let mut rest = idx;
            let mut w = 1.0;
            for (axis, g) in grids.iter().enumerate() {
                let i = rest % g.nodes.len();
                rest /= g.nodes.len();
                point[axis] = g.nodes[i];
                w *= g.weights[i];
            }
            let a = amp.eval(&point);
            if a > 0.0 {
                coeff.push(w * a);
                fvals.push(phase.eval_unchecked(&point));
            }
        }
        Ok(Plan::General { coeff, f: fvals })
    }

    fn eval(&self, tau: f64) -> Complex64 {
        match self {
            Plan::Product { scale, f0, axes } => {
                let mut v = Complex64::from_polar(*scale, tau * f0);
                for a in axes {
                    v *= a.eval(tau);
                }
                v
            }
            Plan::Radial2 { f0, x, y, rows } => {
                let ex = x.exponentials(tau);
                let ey = y.exponentials(tau);
                let mut acc = Complex64::new(0.0, 0.0);
                for ((lo, vals), exj) in rows.iter().zip(&ex) {
                    let (mut re, mut im) = (0.0, 0.0);
                    for (v, e) in vals.iter().zip(&ey[*lo..]) {
                        re += v * e.re;
                        im += v * e.im;
                    }
                    acc += exj * Complex64::new(re, im);
                }
                acc * Complex64::from_polar(1.0, tau * f0)
            }
            Plan::General { coeff, f } => {
                let (mut re, mut im) = (0.0, 0.0);
                for (c, fv) in coeff.iter().zip(f) {
                    let (s, co) = (tau * fv).sin_cos();
                    re += c * co;
                    im += c * s;
                }
                Complex64::new(re, im)
            }
        }
    }
}

/// `I(τ)` for one value of `τ`.
pub fn eval_integral(
    phase: &PolynomialPhase,
    amp: &AmplitudeSpec,
    tau: f64,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    if !tau.is_finite() {
        return Err(Error::invalid("τ must be finite"));
    }
    Ok(Plan::build(phase, amp, tau, cfg)?.eval(tau))
}

/// `I(τ)` with the difference to a run at doubled resolution.
pub fn eval_with_error(
    phase: &PolynomialPhase,
    amp: &AmplitudeSpec,
    tau: f64,
    cfg: &QuadratureConfig,
) -> Result<(Complex64, f64)> {
    let coarse = eval_integral(phase, amp, tau, cfg)?;
    let fine = eval_integral(phase, amp, tau, &cfg.doubled())?;
    Ok((fine, (fine - coarse).norm()))
}

/// Evaluates `I` at arbitrary `τ` values, sharing node sets between nearby
/// values. Output order matches input order.
pub fn eval_many(
    phase: &PolynomialPhase,
    amp: &AmplitudeSpec,
    taus: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Vec<Complex64>> {
    if taus.iter().any(|t| !t.is_finite()) {
        return Err(Error::invalid("τ must be finite"));
    }
    let mut order: Vec<usize> = (0..taus.len()).collect();
    order.sort_by(|&a, &b| taus[a].abs().total_cmp(&taus[b].abs()));
    // blocks of |τ| within a factor 1.15 share one plan
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match blocks.last_mut() {
            Some(b) if taus[i].abs() <= 1.15 * taus[b[0]].abs().max(1e-300) => b.push(i),
            _ => blocks.push(vec![i]),
        }
    }
    let results: Vec<Vec<(usize, Complex64)>> = blocks
        .par_iter()
        .map(|b| {
            let design = b.iter().map(|&i| taus[i].abs()).fold(0.0, f64::max);
            let plan = Plan::build(phase, amp, design, cfg)?;
            Ok(b.iter().map(|&i| (i, plan.eval(taus[i]))).collect())
        })
        .collect::<Result<_>>()?;
    let mut out = vec![Complex64::new(0.0, 0.0); taus.len()];
    for (i, v) in results.into_iter().flatten() {
        out[i] = v;
    }
    Ok(out)
}

/// `∫ φ`, the value of `I(0)`.
pub fn amplitude_integral(amp: &AmplitudeSpec, cfg: &QuadratureConfig) -> Result<f64> {
    let phase = PolynomialPhase::zero(amp.dim);
    Ok(eval_integral(&phase, amp, 0.0, cfg)?.re)
}

/// Sampled values of `I` on increasing `τ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegralSamples {
    pub taus: Vec<f64>,
    pub values: Vec<Complex64>,
    pub phase_id: String,
    pub amplitude_id: String,
}

impl IntegralSamples {
    pub fn len(&self) -> usize {
        self.taus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taus.is_empty()
    }
}

fn ids(phase: &PolynomialPhase, amp: &AmplitudeSpec) -> (String, String) {
    (
        phase.to_string(),
        format!("R={} phi0={} {:?}", amp.radius, amp.phi0, amp.profile),
    )
}

/// Geometric `τ` grid from `tau_min` to `tau_max` with `count` points.
pub fn geometric_grid(tau_min: f64, tau_max: f64, count: usize) -> Result<Vec<f64>> {
    if !(tau_min > 0.0 && tau_max > tau_min) || count < 2 {
        return Err(Error::invalid("need 0 < tau_min < tau_max and count ≥ 2"));
    }
    let ratio = (tau_max / tau_min).powf(1.0 / (count - 1) as f64);
    let mut taus: Vec<f64> = (0..count).map(|i| tau_min * ratio.powi(i as i32)).collect();
    taus[count - 1] = tau_max;
    Ok(taus)
}

/// `I` on a geometric grid.
pub fn sample_integral(
    phase: &PolynomialPhase,
    amp: &AmplitudeSpec,
    tau_min: f64,
    tau_max: f64,
    count: usize,
    cfg: &QuadratureConfig,
) -> Result<IntegralSamples> {
    let taus = geometric_grid(tau_min, tau_max, count)?;
    let values = eval_many(phase, amp, &taus, cfg)?;
    let (phase_id, amplitude_id) = ids(phase, amp);
    Ok(IntegralSamples {
        taus,
        values,
        phase_id,
        amplitude_id,
    })
}

/// Default bound on the winding `|f(0)| Δτ` between consecutive samples.
pub const DEFAULT_PHASE_STEP: f64 = PI / 32.0;

/// Inserts samples so that consecutive `τ` differ by at most
/// `max_phase_step / |f(0)|`. Without winding (`f(0) = 0`) the step is
/// taken relative to `τ` instead.
pub fn refine_samples(
    samples: &IntegralSamples,
    phase: &PolynomialPhase,
    amp: &AmplitudeSpec,
    cfg: &QuadratureConfig,
    max_phase_step: f64,
    max_points: usize,
) -> Result<IntegralSamples> {
    if samples.is_empty() {
        return Err(Error::invalid("no samples to refine"));
    }
    if !(max_phase_step > 0.0) {
        return Err(Error::invalid("phase step must be positive"));
    }
    let f0 = phase.constant_term().abs();
    let mut new_taus = Vec::new();
    let mut plan: Vec<(usize, usize)> = Vec::new(); // (segment, inserted count)
    let mut total = samples.len();
    for (i, w) in samples.taus.windows(2).enumerate() {
        let gap = w[1] - w[0];
        let step = if f0 > 0.0 {
            max_phase_step / f0
        } else {
            max_phase_step * w[0]
        };
        let k = (gap / step).ceil() as usize;
        if k > 1 {
            total += k - 1;
            plan.push((i, k));
            for j in 1..k {
                new_taus.push(w[0] + gap * j as f64 / k as f64);
            }
        }
    }
    if total > max_points {
        return Err(Error::BudgetExceeded(format!(
            "refinement needs {total} samples (cap {max_points})"
        )));
    }
    let new_vals = eval_many(phase, amp, &new_taus, cfg)?;
    let mut taus = Vec::with_capacity(total);
    let mut values = Vec::with_capacity(total);
    let mut cursor = 0;
    let mut plan_iter = plan.iter().peekable();
    for i in 0..samples.len() {
        taus.push(samples.taus[i]);
        values.push(samples.values[i]);
        if let Some(&&(seg, k)) = plan_iter.peek() {
            if seg == i {
                plan_iter.next();
                taus.extend_from_slice(&new_taus[cursor..cursor + k - 1]);
                values.extend_from_slice(&new_vals[cursor..cursor + k - 1]);
                cursor += k - 1;
            }
        }
    }
    Ok(IntegralSamples {
        taus,
        values,
        phase_id: samples.phase_id.clone(),
        amplitude_id: samples.amplitude_id.clone(),
    })
}

/// Samples on `[tau_min, tau_max]` resolving the winding: a coarse geometric
/// grid refined with [`refine_samples`].
pub fn sample_curve(
    phase: &PolynomialPhase,
    amp: &AmplitudeSpec,
    tau_min: f64,
    tau_max: f64,
    max_phase_step: f64,
    cfg: &QuadratureConfig,
    max_points: usize,
) -> Result<IntegralSamples> {
    let coarse = sample_integral(phase, amp, tau_min, tau_max, 64, cfg)?;
    refine_samples(&coarse, phase, amp, cfg, max_phase_step, max_points)
}

/// The curve `τ ↦ (Re I(τ), Im I(τ))`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePolyline {
    pub points: Vec<[f64; 2]>,
    pub taus: Vec<f64>,
}

impl CurvePolyline {
    pub fn to_polyline(&self) -> Polyline {
        Polyline::new(self.points.clone())
    }
}

pub fn curve_from_samples(samples: &IntegralSamples) -> Result<CurvePolyline> {
    if samples.is_empty() {
        return Err(Error::invalid("no samples"));
    }
    Ok(CurvePolyline {
        points: samples.values.iter().map(|v| [v.re, v.im]).collect(),
        taus: samples.taus.clone(),
    })
}

/// Which coordinate of `I` a reflected graph uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    Re,
    Im,
}

/// Graph of `t ↦ Re I(1/t)` or `Im I(1/t)`, ordered by increasing `t`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReflectedGraph {
    pub points: Vec<[f64; 2]>,
    pub component: Component,
}

impl ReflectedGraph {
    pub fn to_polyline(&self) -> Polyline {
        Polyline::new(self.points.clone())
    }
}

pub fn reflected_graph(samples: &IntegralSamples, component: Component) -> Result<ReflectedGraph> {
    if samples.is_empty() {
        return Err(Error::invalid("no samples"));
    }
    let mut points: Vec<[f64; 2]> = samples
        .taus
        .iter()
        .zip(&samples.values)
        .filter(|(t, _)| **t > 0.0)
        .map(|(t, v)| {
            let y = match component {
                Component::Re => v.re,
                Component::Im => v.im,
            };
            [1.0 / t, y]
        })
        .collect();
    points.sort_by(|a, b| a[0].total_cmp(&b[0]));
    Ok(ReflectedGraph { points, component })
}

/// Leading coefficient estimate from the top of the sampled range.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LeadingFit {
    pub coefficient: Complex64,
    /// `max |a_i − ā| / |ā|` over the window.
    pub residual: f64,
    pub tau_window: (f64, f64),
    pub used: usize,
}

/// Window and acceptance threshold for [`leading_term_fit`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FitOptions {
    /// Width of the fit window in decades, ending at the largest `τ`.
    pub decades: f64,
    pub threshold: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            decades: 1.0,
            threshold: 0.05,
        }
    }
}

/// Mean of `I(τ) e^{-iτ f0} τ^{-β} (log τ)^{-k}` over the top decade.
pub fn leading_term_fit(
    samples: &IntegralSamples,
    f0: f64,
    beta: Rational,
    k: u32,
) -> Result<LeadingFit> {
    leading_term_fit_with(
        samples,
        f0,
        crate::asymptotics::to_f64(beta),
        k,
        FitOptions::default(),
    )
}

pub fn leading_term_fit_with(
    samples: &IntegralSamples,
    f0: f64,
    beta: f64,
    k: u32,
    opts: FitOptions,
) -> Result<LeadingFit> {
    let tau_max = samples
        .taus
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    let tau_min = samples.taus.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(tau_max / tau_min >= 10f64.powf(opts.decades) * (1.0 - 1e-12)) {
        return Err(Error::invalid(format!(
            "samples must cover {} decade(s) of τ",
            opts.decades
        )));
    }
    let lo = tau_max / 10f64.powf(opts.decades);
    let a: Vec<Complex64> = samples
        .taus
        .iter()
        .zip(&samples.values)
        .filter(|(t, _)| **t >= lo * (1.0 - 1e-12))
        .map(|(&t, &v)| {
            let log = if k == 0 { 1.0 } else { t.ln().powi(k as i32) };
            v * Complex64::from_polar(1.0, -t * f0) * t.powf(-beta) / log
        })
        .collect();
    let mean = a.iter().sum::<Complex64>() / a.len() as f64;
    let residual = a.iter().map(|x| (x - mean).norm()).fold(0.0, f64::max) / mean.norm();
    if !(residual <= opts.threshold) {
        return Err(Error::ExpansionNotConfirmed {
            residual,
            coefficient: mean,
        });
    }
    Ok(LeadingFit {
        coefficient: mean,
        residual,
        tau_window: (lo, tau_max),
        used: a.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad_1d() -> (PolynomialPhase, AmplitudeSpec) {
        (
            PolynomialPhase::from_terms(1, [(vec![2], 1.0), (vec![0], 1.0)]).unwrap(),
            AmplitudeSpec::unit(1),
        )
    }

    #[test]
    fn tau_zero_gives_amplitude_integral() {
        let (f, amp) = quad_1d();
        let cfg = QuadratureConfig::default();
        let v = eval_integral(&f, &amp, 0.0, &cfg).unwrap();
        // ∫_{-1}^{1} exp(1 - 1/(1-x²)) dx by a fine trapezoid oracle
        let n = 200_000;
        let h = 2.0 / n as f64;
        let oracle: f64 = (1..n)
            .map(|i| bump((-1.0 + i as f64 * h).powi(2)))
            .sum::<f64>()
            * h;
        assert!((v.re - oracle).abs() < 1e-9);
        assert!(v.im.abs() < 1e-15);
        assert!((amplitude_integral(&amp, &cfg).unwrap() - oracle).abs() < 1e-9);
    }

    #[test]
    fn refinement_converges() {
        let (f, amp) = quad_1d();
        let (v, err) = eval_with_error(&f, &amp, 500.0, &QuadratureConfig::default()).unwrap();
        assert!(err <= 1e-7 * v.norm(), "err {err}");
    }

    #[test]
    fn conjugation_symmetry() {
        let (f, amp) = quad_1d();
        let cfg = QuadratureConfig::default();
        for tau in [3.0, 41.5, 170.0] {
            let a = eval_integral(&f, &amp, tau, &cfg).unwrap();
            let b = eval_integral(&f, &amp, -tau, &cfg).unwrap();
            assert!((a - b.conj()).norm() < 1e-12);
        }
    }

    #[test]
    fn stationary_phase_limit() {
        let (f, amp) = quad_1d();
        let cfg = QuadratureConfig::default();
        let target = Complex64::from_polar(PI.sqrt(), PI / 4.0);
        for tau in [200.0, 400.0, 800.0] {
            let v = eval_integral(&f, &amp, tau, &cfg).unwrap();
            let a = v * Complex64::from_polar(tau.sqrt(), -tau);
            assert!((a - target).norm() < 0.02 * target.norm(), "τ={tau}: {a}");
        }
    }

    #[test]
    fn radial_and_general_plans_agree() {
        let f = PolynomialPhase::from_terms(
            2,
            [(vec![2, 0], 1.0), (vec![0, 3], 1.0), (vec![0, 0], 1.0)],
        )
        .unwrap();
        let amp = AmplitudeSpec::unit(2);
        let cfg = QuadratureConfig::default();
        let radial = eval_integral(&f, &amp, 7.0, &cfg).unwrap();
        // perturb with a tiny mixed term so the general tensor plan is used
        let g = PolynomialPhase::from_terms(
            2,
            [
                (vec![2, 0], 1.0),
                (vec![0, 3], 1.0),
                (vec![0, 0], 1.0),
                (vec![1, 1], 1e-13),
            ],
        )
        .unwrap();
        let general = eval_integral(&g, &amp, 7.0, &cfg).unwrap();
        assert!((radial - general).norm() < 1e-10, "{radial} vs {general}");
    }

    #[test]
    fn grids_and_blocks() {
        let g = geometric_grid(10.0, 1000.0, 2).unwrap();
        assert_eq!(g, vec![10.0, 1000.0]);
        let g = geometric_grid(10.0, 1000.0, 60).unwrap();
        let r0 = g[1] / g[0];
        assert!(g.windows(2).all(|w| (w[1] / w[0] - r0).abs() < 1e-12));

        let (f, amp) = quad_1d();
        let cfg = QuadratureConfig::default();
        let taus = [50.0, 5.0, 51.0, 500.0];
        let many = eval_many(&f, &amp, &taus, &cfg).unwrap();
        for (t, v) in taus.iter().zip(&many) {
            let single = eval_integral(&f, &amp, *t, &cfg).unwrap();
            assert!((single - v).norm() < 1e-10);
        }
    }

    #[test]
    fn refinement_bounds_winding() {
        let (f, amp) = quad_1d();
        let cfg = QuadratureConfig::default();
        let s = sample_integral(&f, &amp, 10.0, 100.0, 8, &cfg).unwrap();
        let r = refine_samples(&s, &f, &amp, &cfg, PI / 8.0, 100_000).unwrap();
        assert!(r
            .taus
            .windows(2)
            .all(|w| w[1] > w[0] && w[1] - w[0] <= PI / 8.0 + 1e-12));
        assert!(refine_samples(&s, &f, &amp, &cfg, PI / 8.0, 10).is_err());
    }

    #[test]
    fn reflected_graph_is_ordered() {
        let (f, amp) = quad_1d();
        let cfg = QuadratureConfig::default();
        let s = sample_integral(&f, &amp, 10.0, 100.0, 20, &cfg).unwrap();
        let g = reflected_graph(&s, Component::Im).unwrap();
        assert!(g.points.windows(2).all(|w| w[0][0] < w[1][0]));
        assert!((g.points[0][0] - 0.01).abs() < 1e-15);
    }

    #[test]
    fn fit_detects_wrong_exponent() {
        let taus = geometric_grid(100.0, 1000.0, 40).unwrap();
        let a = Complex64::new(1.0, 2.0);
        let values = taus
            .iter()
            .map(|&t| a * t.powf(-0.5) * Complex64::from_polar(1.0, t))
            .collect();
        let s = IntegralSamples {
            taus,
            values,
            phase_id: String::new(),
            amplitude_id: String::new(),
        };
        let fit = leading_term_fit(&s, 1.0, Rational::new(-1, 2), 0).unwrap();
        assert!((fit.coefficient - a).norm() < 1e-12);
        assert!(matches!(
            leading_term_fit_with(&s, 1.0, -0.4, 0, FitOptions::default()),
            Err(Error::ExpansionNotConfirmed { .. })
        ));
    }
}
