//! Prediction against measurement for a single phase and amplitude.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::asymptotics::{predict_phase, AsymptoticPrediction, Content, PredictOptions, Regime};
use crate::error::{Error, Result};
use crate::fractal::{
    box_count, estimate_content_with, estimate_dimension, estimate_dimension_corrected,
    ContentEstimate, ContentVerdict, DimensionEstimate, EpsilonGrid, Polyline, ScalingModel,
    DEFAULT_OFFSETS,
};
use crate::integral::{
    curve_from_samples, leading_term_fit, reflected_graph, sample_curve, Component,
    IntegralSamples, LeadingFit, QuadratureConfig, DEFAULT_PHASE_STEP,
};
use crate::phase::{
    verify_isolated_critical_point, AmplitudeSpec, CriticalPointReport, PolynomialPhase,
};

/// Pipeline stage an error came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Validate,
    Predict,
    Integrate,
    Curve,
    Estimate,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::Validate => "validate",
            Stage::Predict => "predict",
            Stage::Integrate => "integrate",
            Stage::Curve => "curve",
            Stage::Estimate => "estimate",
        };
        f.write_str(s)
    }
}

#[derive(Debug, thiserror::Error)]
#[error("[{stage}] {source}")]
pub struct StageError {
    pub stage: Stage,
    #[source]
    pub source: Error,
}

impl StageError {
    pub fn exit_code(&self) -> i32 {
        self.source.exit_code()
    }
}

trait AtStage<T> {
    fn at(self, stage: Stage) -> std::result::Result<T, StageError>;
}

impl<T> AtStage<T> for Result<T> {
    fn at(self, stage: Stage) -> std::result::Result<T, StageError> {
        self.map_err(|source| StageError { stage, source })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ToleranceProfile {
    Strict,
    #[default]
    Desk,
}

impl ToleranceProfile {
    pub fn dim_tolerance(self) -> f64 {
        match self {
            ToleranceProfile::Strict => 0.03,
            ToleranceProfile::Desk => 0.05,
        }
    }
}

impl std::str::FromStr for ToleranceProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(ToleranceProfile::Strict),
            "desk" => Ok(ToleranceProfile::Desk),
            _ => Err(Error::invalid(format!(
                "unknown tolerance profile {s:?} (strict or desk)"
            ))),
        }
    }
}

/// Relative content tolerance for a nondegenerate prediction.
pub const CONTENT_TOLERANCE: f64 = 0.15;

/// Box scales per fit.
pub const DEFAULT_SCALES: usize = 16;

/// Largest and smallest scale relative to the extent of the measured set.
pub const EPS_MAX_FRACTION: f64 = 1.0 / 20.0;
pub const EPS_MIN_FRACTION: f64 = 1.0 / 4000.0;
/// Content fits use a window shifted one octave further down: the area model
/// is only asymptotic and degrades faster at coarse scales than box counts.
pub const CONTENT_EPS_MAX_FRACTION: f64 = 1.0 / 80.0;
pub const CONTENT_EPS_MIN_FRACTION: f64 = 1.0 / 8000.0;
/// Scales per content fit; each needs a sausage area.
pub const CONTENT_SCALES: usize = 12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    /// Defaults depend on the number of variables, see [`default_tau_range`].
    pub tau_min: Option<f64>,
    pub tau_max: Option<f64>,
    pub phase_step: f64,
    pub quadrature: QuadratureConfig,
    pub max_points: usize,
    pub offsets: usize,
    pub seed: u64,
    pub scales: usize,
    pub tolerance: ToleranceProfile,
    pub content_tolerance: f64,
    pub measure_content: bool,
    pub assume_adapted: bool,
    pub coeff_hypothesis: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            tau_min: None,
            tau_max: None,
            phase_step: DEFAULT_PHASE_STEP,
            quadrature: QuadratureConfig::default(),
            max_points: 2_000_000,
            offsets: DEFAULT_OFFSETS,
            seed: 1,
            scales: DEFAULT_SCALES,
            tolerance: ToleranceProfile::Desk,
            content_tolerance: CONTENT_TOLERANCE,
            measure_content: true,
            assume_adapted: false,
            coeff_hypothesis: None,
        }
    }
}

/// `τ` range used when the configuration leaves it open. Integrals in two
/// or more variables are far more expensive per sample.
pub fn default_tau_range(dim: usize) -> (f64, f64) {
    match dim {
        1 => (20.0, 2000.0),
        2 => (10.0, 300.0),
        _ => (20.0, 2000.0),
    }
}

/// Grid resolution of the isolated-critical-point search.
fn check_resolution(dim: usize) -> usize {
    match dim {
        1 => 2000,
        2 => 200,
        _ => 40,
    }
}

/// Radial distance between the last sample and the sample one winding
/// earlier. Scales below it resolve every winding, so the unresolved core
/// that carries the fractal scaling is gone.
pub fn winding_gap(samples: &IntegralSamples, f0: f64) -> Option<f64> {
    let n = samples.len();
    if f0 == 0.0 || n < 2 {
        return None;
    }
    let last = samples.taus[n - 1];
    let target = last - 2.0 * PI / f0.abs();
    if target < samples.taus[0] {
        return None;
    }
    let j = samples.taus.partition_point(|&t| t < target).clamp(1, n - 1);
    let (t0, t1) = (samples.taus[j - 1], samples.taus[j]);
    let (r0, r1) = (samples.values[j - 1].norm(), samples.values[j].norm());
    let r = r0 + (r1 - r0) * ((target - t0) / (t1 - t0)).clamp(0.0, 1.0);
    Some((r - samples.values[n - 1].norm()).abs())
}

/// Scales from `extent/20` down to `max(extent/4000, floor)`, widened
/// downwards when needed to span 1.5 decades.
pub fn measurement_grid(poly: &Polyline, floor: Option<f64>, scales: usize) -> Result<EpsilonGrid> {
    window_grid(poly, EPS_MAX_FRACTION, EPS_MIN_FRACTION, floor, scales)
}

/// As [`measurement_grid`] between `extent/80` and `extent/8000`.
pub fn content_grid(poly: &Polyline, floor: Option<f64>, scales: usize) -> Result<EpsilonGrid> {
    window_grid(
        poly,
        CONTENT_EPS_MAX_FRACTION,
        CONTENT_EPS_MIN_FRACTION,
        floor,
        scales,
    )
}

fn window_grid(
    poly: &Polyline,
    top: f64,
    bottom: f64,
    floor: Option<f64>,
    scales: usize,
) -> Result<EpsilonGrid> {
    let b = poly.bbox();
    let extent = (b[2] - b[0]).max(b[3] - b[1]);
    if !(extent > 0.0) {
        return Err(Error::invalid("measured set has zero extent"));
    }
    let hi = extent * top;
    let lo = (extent * bottom)
        .max(floor.unwrap_or(0.0))
        .min(hi * 10f64.powf(-1.5));
    EpsilonGrid::geometric(hi, lo, scales)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Measured {
    pub tau_range: (f64, f64),
    pub samples: usize,
    pub winding_gap: Option<f64>,
    pub curve: DimensionEstimate,
    /// Plain plateau estimate, for comparison.
    pub curve_plain: f64,
    pub reflected_re: DimensionEstimate,
    pub reflected_im: DimensionEstimate,
    pub content: Option<ContentEstimate>,
    pub leading: Option<LeadingFit>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Deltas {
    pub curve: f64,
    pub reflected_re: f64,
    pub reflected_im: f64,
    /// `(M̂ − M)/M` when a content value is predicted.
    pub content: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub phase: String,
    pub amplitude: AmplitudeSpec,
    pub predicted: AsymptoticPrediction,
    pub measured: Measured,
    pub deltas: Deltas,
    pub tolerance: ToleranceProfile,
    pub dim_tolerance: f64,
    pub content_tolerance: f64,
    /// `None` when the prediction leaves the content open or it was not measured.
    pub content_consistent: Option<bool>,
    /// Informational: the reflected graphs against the oscillatory dimension.
    pub reflected_within_tolerance: bool,
    pub pass: bool,
    pub notes: Vec<String>,
}

fn dimension(
    poly: &Polyline,
    grid: &EpsilonGrid,
    cfg: &VerifyConfig,
) -> Result<(DimensionEstimate, f64)> {
    let counts = box_count(poly, grid, cfg.offsets, cfg.seed)?;
    Ok((
        estimate_dimension_corrected(&counts)?,
        estimate_dimension(&counts)?.d_hat,
    ))
}

/// Phase validation, prediction, sampling, measurement and comparison.
pub fn verify(
    phase: &PolynomialPhase,
    amp: &AmplitudeSpec,
    cfg: &VerifyConfig,
) -> std::result::Result<VerificationReport, StageError> {
    verify_with_samples(phase, amp, cfg).map(|(r, _)| r)
}

/// As [`verify`], also returning the integral samples behind the report.
pub fn verify_with_samples(
    phase: &PolynomialPhase,
    amp: &AmplitudeSpec,
    cfg: &VerifyConfig,
) -> std::result::Result<(VerificationReport, IntegralSamples), StageError> {
    let mut notes = Vec::new();
    let n = phase.dim();
    if phase.degree() == 0 {
        return Err(Error::ConstantPhase).at(Stage::Validate);
    }
    if amp.dim != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: amp.dim,
        })
        .at(Stage::Validate);
    }
    amp.validate().at(Stage::Validate)?;
    cfg.quadrature.validate().at(Stage::Validate)?;
    if n <= 3 {
        if let CriticalPointReport::Fail { point, .. } =
            verify_isolated_critical_point(phase, amp, check_resolution(n)).at(Stage::Validate)?
        {
            return Err(Error::invalid(format!(
                "second critical point in the support near {point:?}"
            )))
            .at(Stage::Validate);
        }
    } else {
        notes.push("critical point search skipped for more than three variables".into());
    }

    let opts = PredictOptions {
        assume_adapted: cfg.assume_adapted,
        coeff_hypothesis: cfg.coeff_hypothesis,
        leading_coeff: None,
    };
    let mut predicted = predict_phase(phase, amp.phi0, &opts).at(Stage::Predict)?;

    let (dmin, dmax) = default_tau_range(n);
    let (tau_min, tau_max) = (cfg.tau_min.unwrap_or(dmin), cfg.tau_max.unwrap_or(dmax));
    let samples = sample_curve(
        phase,
        amp,
        tau_min,
        tau_max,
        cfg.phase_step,
        &cfg.quadrature,
        cfg.max_points,
    )
    .at(Stage::Integrate)?;

    let curve = curve_from_samples(&samples).at(Stage::Curve)?.to_polyline();
    let re = reflected_graph(&samples, Component::Re)
        .at(Stage::Curve)?
        .to_polyline()
        .normalized();
    let im = reflected_graph(&samples, Component::Im)
        .at(Stage::Curve)?
        .to_polyline()
        .normalized();

    let f0 = phase.constant_term();
    let gap = winding_gap(&samples, f0);
    let grid = measurement_grid(&curve, gap.map(|g| 2.0 * g), cfg.scales).at(Stage::Estimate)?;
    let (d_curve, curve_plain) = dimension(&curve, &grid, cfg).at(Stage::Estimate)?;
    let graph_grid = measurement_grid(&re, None, cfg.scales).at(Stage::Estimate)?;
    let (d_re, _) = dimension(&re, &graph_grid, cfg).at(Stage::Estimate)?;
    let (d_im, _) = dimension(&im, &graph_grid, cfg).at(Stage::Estimate)?;

    let leading = if predicted.regime == Regime::Oscillatory {
        match leading_term_fit(&samples, f0, predicted.beta, predicted.multiplicity as u32) {
            Ok(fit) => Some(fit),
            Err(e) => {
                notes.push(format!("leading-term fit: {e}"));
                None
            }
        }
    } else {
        None
    };
    if let (Content::Unknown, Some(fit), true) = (predicted.content, &leading, n <= 2) {
        let refit = PredictOptions {
            leading_coeff: Some(fit.coefficient),
            ..opts
        };
        if let Ok(p) = predict_phase(phase, amp.phi0, &refit) {
            if p.content.value().is_some() {
                notes.push("predicted content uses the fitted leading coefficient".into());
                predicted = p;
            }
        }
    }

    let d = predicted.curve_dim_f64();
    let d_osc = predicted.osc_dim_f64();
    let content = if cfg.measure_content && predicted.regime == Regime::Oscillatory && d > 1.0 {
        let cgrid =
            content_grid(&curve, gap.map(|g| 2.0 * g), CONTENT_SCALES).at(Stage::Estimate)?;
        Some(
            estimate_content_with(&curve, d, &cgrid, ScalingModel::TailCorrected)
                .at(Stage::Estimate)?,
        )
    } else {
        None
    };

    let content_delta = match (&content, predicted.content.value()) {
        (Some(c), Some(m)) => Some((c.m_hat - m) / m),
        _ => None,
    };
    let content_consistent = content.as_ref().and_then(|c| match predicted.content {
        Content::Value(_) => Some(
            c.verdict == ContentVerdict::Nondegenerate
                && content_delta.is_some_and(|r| r.abs() <= cfg.content_tolerance),
        ),
        Content::Degenerate => Some(c.verdict == ContentVerdict::DegenerateInfinity),
        Content::Unknown => None,
    });

    let tol = cfg.tolerance.dim_tolerance();
    let deltas = Deltas {
        curve: d_curve.d_hat - d,
        reflected_re: d_re.d_hat - d_osc,
        reflected_im: d_im.d_hat - d_osc,
        content: content_delta,
    };
    if d_curve.inconclusive {
        notes.push("curve dimension fit flagged inconclusive".into());
    }
    let reflected_within_tolerance =
        deltas.reflected_re.abs() <= tol && deltas.reflected_im.abs() <= tol;
    let pass = deltas.curve.abs() <= tol && content_consistent != Some(false);

    let report = VerificationReport {
        phase: phase.to_string(),
        amplitude: amp.clone(),
        predicted,
        measured: Measured {
            tau_range: (tau_min, tau_max),
            samples: samples.len(),
            winding_gap: gap,
            curve: d_curve,
            curve_plain,
            reflected_re: d_re,
            reflected_im: d_im,
            content,
            leading,
        },
        deltas,
        tolerance: cfg.tolerance,
        dim_tolerance: tol,
        content_tolerance: cfg.content_tolerance,
        content_consistent,
        reflected_within_tolerance,
        pass,
        notes,
    };
    Ok((report, samples))
}

/// `tau,re,im` table of the samples.
pub fn samples_csv(samples: &IntegralSamples) -> String {
    let mut out = String::from("tau,re,im\n");
    for (t, v) in samples.taus.iter().zip(&samples.values) {
        out.push_str(&format!("{t:e},{:e},{:e}\n", v.re, v.im));
    }
    out
}

/// The polyline as a single SVG path, `y` pointing up.
pub fn polyline_svg(poly: &Polyline, size: f64) -> String {
    let b = poly.bbox();
    let extent = (b[2] - b[0]).max(b[3] - b[1]).max(f64::MIN_POSITIVE);
    let margin = 0.02 * size;
    let scale = (size - 2.0 * margin) / extent;
    let mut d = String::new();
    for (i, p) in poly.points.iter().enumerate() {
        let x = margin + (p[0] - b[0]) * scale;
        let y = size - margin - (p[1] - b[1]) * scale;
        d.push_str(&format!("{}{x:.3},{y:.3}", if i == 0 { "M" } else { " L" }));
    }
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n\
         <path d=\"{d}\" fill=\"none\" stroke=\"black\" stroke-width=\"0.5\"/>\n</svg>\n"
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Complex64;

    #[test]
    fn tolerance_profiles() {
        assert_eq!(
            "strict"
                .parse::<ToleranceProfile>()
                .unwrap()
                .dim_tolerance(),
            0.03
        );
        assert_eq!(
            "desk".parse::<ToleranceProfile>().unwrap().dim_tolerance(),
            0.05
        );
        assert!("loose".parse::<ToleranceProfile>().is_err());
    }

    #[test]
    fn grid_keeps_one_and_a_half_decades() {
        let poly = Polyline::new(vec![[0.0, 0.0], [1.0, 0.0]]);
        let g = measurement_grid(&poly, Some(0.01), 16).unwrap();
        assert!((g.max() - 0.05).abs() < 1e-15);
        assert!((g.eps[g.len() - 1] - 0.05 * 10f64.powf(-1.5)).abs() < 1e-12);
        let g = measurement_grid(&poly, None, 16).unwrap();
        assert!((g.eps[g.len() - 1] - 1.0 / 4000.0).abs() < 1e-15);
    }

    #[test]
    fn gap_of_exact_spiral() {
        // I(τ) = e^{iτ}/τ: one winding back is τ − 2π
        let taus: Vec<f64> = (0..=4000).map(|i| 100.0 + i as f64 * 0.05).collect();
        let values = taus
            .iter()
            .map(|t| Complex64::from_polar(1.0 / t, *t))
            .collect();
        let s = IntegralSamples {
            taus,
            values,
            phase_id: String::new(),
            amplitude_id: String::new(),
        };
        let g = winding_gap(&s, 1.0).unwrap();
        let exact = 1.0 / (300.0 - 2.0 * PI) - 1.0 / 300.0;
        assert!((g - exact).abs() < 1e-3 * exact, "{g} {exact}");
        assert!(winding_gap(&s, 0.0).is_none());
    }

    #[test]
    fn svg_has_one_path() {
        let poly = Polyline::new(vec![[0.0, 0.0], [1.0, 1.0], [2.0, 0.0]]);
        let svg = polyline_svg(&poly, 400.0);
        assert_eq!(svg.matches("<path").count(), 1);
        assert_eq!(svg.matches(" L").count(), 2);
    }
}
