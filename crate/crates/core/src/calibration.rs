//! Synthetic zoo with known dimensions and contents, used to check the
//! estimators before trusting them on integral curves.

use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fractal::{
    box_count, content_from_areas_corrected, estimate_content, estimate_dimension,
    estimate_dimension_corrected, gen_astring, gen_chirp, gen_spiral, sausage_areas,
    ContentVerdict, EpsilonGrid, ScalingModel, DEFAULT_OFFSETS,
};

/// Dimension tolerance for the zoo.
pub const CALIBRATION_DIM_TOL: f64 = 0.03;
/// Relative content tolerance for spirals.
pub const CALIBRATION_CONTENT_TOL: f64 = 0.10;

/// Point budget for chirp graphs.
const CHIRP_MAX_POINTS: usize = 2_000_000;
/// Outer winding angle of calibration spirals.
const SPIRAL_PHI_MAX: f64 = 3000.0;

/// One synthetic set with its ground truth.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum ZooCase {
    /// Graph of `x^α log(1/x)^l sin(x^{−β})` on `[t_min, 1]`.
    Chirp {
        alpha: f64,
        beta: f64,
        l: u32,
        t_min: f64,
    },
    /// `r = m φ^{−α} (log φ)^l`.
    Spiral {
        alpha: f64,
        m: f64,
        l: u32,
        phi_min: f64,
    },
    /// `{k^{−a}}`.
    AString { a: f64 },
}

impl ZooCase {
    pub fn label(&self) -> String {
        match self {
            ZooCase::Chirp { alpha, beta, l, .. } => {
                format!("chirp α={} β={} l={l}", fmt(*alpha), fmt(*beta))
            }
            ZooCase::Spiral { alpha, m, l, .. } => {
                format!("spiral α={} m={} l={l}", fmt(*alpha), fmt(*m))
            }
            ZooCase::AString { a } => format!("a-string a={}", fmt(*a)),
        }
    }

    /// Known box dimension.
    pub fn dimension(&self) -> f64 {
        match *self {
            ZooCase::Chirp { alpha, beta, .. } => (2.0 - (alpha + 1.0) / (beta + 1.0)).max(1.0),
            ZooCase::Spiral { alpha, .. } => 2.0 / (1.0 + alpha),
            ZooCase::AString { a } => 1.0 / (1.0 + a),
        }
    }

    /// Known Minkowski content, where the family has a closed form.
    pub fn content(&self) -> Option<f64> {
        match *self {
            ZooCase::Spiral { alpha, m, l: 0, .. } if alpha < 1.0 => Some(spiral_content(alpha, m)),
            _ => None,
        }
    }

    /// Expected degeneracy verdict at the known dimension.
    pub fn verdict(&self) -> Option<ContentVerdict> {
        match *self {
            ZooCase::Chirp { l, .. } | ZooCase::Spiral { l, .. } => Some(if l == 0 {
                ContentVerdict::Nondegenerate
            } else {
                ContentVerdict::DegenerateInfinity
            }),
            ZooCase::AString { .. } => None,
        }
    }

    /// Scaling model the estimators use for this family. Spirals carry a
    /// rectifiable tail and an unresolved core at every finite scale.
    pub fn model(&self) -> ScalingModel {
        match self {
            ZooCase::Spiral { .. } => ScalingModel::TailCorrected,
            _ => ScalingModel::Plain,
        }
    }
}

fn fmt(x: f64) -> String {
    for q in 2..=6u32 {
        let p = x * q as f64;
        if (p - p.round()).abs() < 1e-9 && (x - x.round()).abs() > 1e-9 {
            return format!("{}/{q}", p.round());
        }
    }
    format!("{x}")
}

/// `m^d π (πα)^{−2α/(1+α)} (1+α)/(1−α)` with `d = 2/(1+α)`.
pub fn spiral_content(alpha: f64, m: f64) -> f64 {
    let d = 2.0 / (1.0 + alpha);
    m.powf(d) * PI * (PI * alpha).powf(-2.0 * alpha / (1.0 + alpha)) * (1.0 + alpha) / (1.0 - alpha)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    Dimension,
    Content,
    Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibrationRow {
    pub case: String,
    pub quantity: Quantity,
    pub expected: f64,
    pub measured: f64,
    /// Absolute for dimensions, relative for contents; zero for verdicts.
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_verdict: Option<ContentVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<ContentVerdict>,
    pub model: ScalingModel,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CalibrationConfig {
    pub eps_max: f64,
    pub eps_min: f64,
    pub scales: usize,
    pub offsets: usize,
    pub seed: u64,
    pub dim_tolerance: f64,
    pub content_tolerance: f64,
}

impl Default for CalibrationConfig {
    fn default() -> Self {
        CalibrationConfig {
            eps_max: 1e-2,
            eps_min: 1e-4,
            scales: 16,
            offsets: DEFAULT_OFFSETS,
            seed: 1,
            dim_tolerance: CALIBRATION_DIM_TOL,
            content_tolerance: CALIBRATION_CONTENT_TOL,
        }
    }
}

/// Dimension cases of the zoo.
pub fn dimension_cases() -> Vec<ZooCase> {
    let mut v = vec![
        ZooCase::Chirp {
            alpha: 0.5,
            beta: 1.0,
            l: 0,
            t_min: 1e-3,
        },
        ZooCase::Chirp {
            alpha: 1.0 / 3.0,
            beta: 1.0,
            l: 0,
            t_min: 1e-3,
        },
        ZooCase::Chirp {
            alpha: 0.5,
            beta: 2.0,
            l: 0,
            t_min: 5e-3,
        },
    ];
    for alpha in [1.0 / 3.0, 0.5, 2.0 / 3.0] {
        v.push(ZooCase::Spiral {
            alpha,
            m: 1.0,
            l: 0,
            phi_min: 2.0 * PI,
        });
    }
    for a in [0.5, 1.0, 2.0] {
        v.push(ZooCase::AString { a });
    }
    v
}

/// Degeneracy pairs: `l = 0` against `l = 1`.
pub fn degeneracy_cases() -> Vec<ZooCase> {
    // (log φ)^l must decrease along the spiral, which needs log φ > l/α
    let phi_min = E.powi(2) * 1.01;
    vec![
        ZooCase::Chirp {
            alpha: 0.5,
            beta: 1.0,
            l: 0,
            t_min: 1e-3,
        },
        ZooCase::Chirp {
            alpha: 0.5,
            beta: 1.0,
            l: 1,
            t_min: 1e-3,
        },
        ZooCase::Spiral {
            alpha: 0.5,
            m: 1.0,
            l: 0,
            phi_min,
        },
        ZooCase::Spiral {
            alpha: 0.5,
            m: 1.0,
            l: 1,
            phi_min,
        },
    ]
}

fn dimension_row(case: &ZooCase, measured: f64, cfg: &CalibrationConfig) -> CalibrationRow {
    let expected = case.dimension();
    CalibrationRow {
        case: case.label(),
        quantity: Quantity::Dimension,
        expected,
        measured,
        tolerance: cfg.dim_tolerance,
        expected_verdict: None,
        verdict: None,
        model: case.model(),
        pass: (measured - expected).abs() <= cfg.dim_tolerance,
    }
}

fn polyline(case: &ZooCase, cfg: &CalibrationConfig) -> Result<crate::fractal::Polyline> {
    match *case {
        ZooCase::Chirp {
            alpha,
            beta,
            l,
            t_min,
        } => gen_chirp(alpha, beta, l, t_min, CHIRP_MAX_POINTS),
        ZooCase::Spiral {
            alpha,
            m,
            l,
            phi_min,
        } => gen_spiral(alpha, m, l, phi_min, SPIRAL_PHI_MAX),
        ZooCase::AString { a } => gen_astring(a, cfg.eps_min),
    }
}

/// Dimension rows, plus a content row for spirals with a closed form.
pub fn calibrate_case(case: &ZooCase, cfg: &CalibrationConfig) -> Result<Vec<CalibrationRow>> {
    let grid = EpsilonGrid::geometric(cfg.eps_max, cfg.eps_min, cfg.scales)?;
    let poly = polyline(case, cfg)?;
    let counts = box_count(&poly, &grid, cfg.offsets, cfg.seed)?;
    let est = match case.model() {
        ScalingModel::Plain => estimate_dimension(&counts)?,
        ScalingModel::TailCorrected => estimate_dimension_corrected(&counts)?,
    };
    let mut rows = vec![dimension_row(case, est.d_hat, cfg)];
    if let Some(expected) = case.content() {
        let areas = sausage_areas(&poly, &grid)?;
        let c = content_from_areas_corrected(case.dimension(), &grid.eps, &areas)?;
        rows.push(CalibrationRow {
            case: case.label(),
            quantity: Quantity::Content,
            expected,
            measured: c.m_hat,
            tolerance: cfg.content_tolerance,
            expected_verdict: None,
            verdict: Some(c.verdict),
            model: ScalingModel::TailCorrected,
            pass: ((c.m_hat - expected) / expected).abs() <= cfg.content_tolerance,
        });
    }
    Ok(rows)
}

/// Content verdict at the known dimension; `measured` holds the fitted log
/// exponent.
pub fn calibrate_verdict(case: &ZooCase, cfg: &CalibrationConfig) -> Result<CalibrationRow> {
    let grid = EpsilonGrid::geometric(cfg.eps_max, cfg.eps_min, cfg.scales)?;
    let poly = polyline(case, cfg)?;
    let d = case.dimension();
    let c = match case.model() {
        ScalingModel::Plain => estimate_content(&poly, d, &grid)?,
        ScalingModel::TailCorrected => {
            content_from_areas_corrected(d, &grid.eps, &sausage_areas(&poly, &grid)?)?
        }
    };
    let expected_verdict = case.verdict();
    let expected = match *case {
        ZooCase::Chirp { l, .. } | ZooCase::Spiral { l, .. } => l as f64,
        ZooCase::AString { .. } => 0.0,
    };
    Ok(CalibrationRow {
        case: case.label(),
        quantity: Quantity::Verdict,
        expected,
        measured: c.log_exponent,
        tolerance: 0.0,
        expected_verdict,
        verdict: Some(c.verdict),
        model: c.model,
        pass: expected_verdict == Some(c.verdict),
    })
}

/// Runs the whole zoo: dimensions, spiral contents and degeneracy verdicts.
pub fn calibrate(cfg: &CalibrationConfig) -> Result<Vec<CalibrationRow>> {
    let mut rows = Vec::new();
    for case in dimension_cases() {
        rows.extend(calibrate_case(&case, cfg)?);
    }
    for case in degeneracy_cases() {
        rows.push(calibrate_verdict(&case, cfg)?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spiral_content_values() {
        assert!((spiral_content(0.5, 1.0) - 6.975).abs() < 1e-3);
        assert!((spiral_content(1.0 / 3.0, 1.0) - 6.140).abs() < 1e-3);
        assert!((spiral_content(2.0 / 3.0, 1.0) - 8.695).abs() < 1e-3);
        // homogeneity in m
        let d = 4.0 / 3.0;
        assert!((spiral_content(0.5, 2.0) - 2f64.powf(d) * spiral_content(0.5, 1.0)).abs() < 1e-12);
    }

    #[test]
    fn labels_use_fractions() {
        assert_eq!(ZooCase::AString { a: 0.5 }.label(), "a-string a=1/2");
        assert_eq!(
            ZooCase::Spiral {
                alpha: 2.0 / 3.0,
                m: 1.0,
                l: 0,
                phi_min: 7.0
            }
            .label(),
            "spiral α=2/3 m=1 l=0"
        );
    }

    #[test]
    fn astring_row() {
        let rows =
            calibrate_case(&ZooCase::AString { a: 1.0 }, &CalibrationConfig::default()).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].pass, "{:?}", rows[0]);
    }
}
