use serde::{Deserialize, Serialize};

use super::fit::{linear_fit, median, profile_minimum, relative_lstsq, ScalingModel};
use super::geometry::{EpsilonGrid, Polyline};
use super::sausage::sausage_areas;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContentVerdict {
    Nondegenerate,
    DegenerateInfinity,
    DegenerateZero,
    Inconclusive,
}

/// `|log exponent|` at or below which the content is called nondegenerate.
pub const NONDEGENERATE_SLOPE: f64 = 0.25;
/// `|log exponent|` at or above which the content is called degenerate.
pub const DEGENERATE_SLOPE: f64 = 0.5;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContentEstimate {
    pub d_used: f64,
    pub m_hat: f64,
    /// Fitted `l` in `|A_ε| / ε^{2−d} ~ log(1/ε)^l`.
    pub log_exponent: f64,
    pub verdict: ContentVerdict,
    pub model: ScalingModel,
    pub eps: Vec<f64>,
    pub ratios: Vec<f64>,
}

/// Verdict from the ratios `ρ(ε)` listed in decreasing `ε`.
pub fn content_from_ratios(d: f64, eps: &[f64], ratios: &[f64]) -> Result<ContentEstimate> {
    if eps.len() != ratios.len() || eps.len() < 3 {
        return Err(Error::invalid(
            "content estimate needs at least three ratios",
        ));
    }
    if eps.iter().any(|e| !(*e > 0.0 && *e < 1.0)) {
        return Err(Error::invalid("content estimate needs 0 < ε < 1"));
    }
    if ratios.iter().any(|r| !(*r > 0.0)) {
        return Err(Error::invalid("area ratios must be positive"));
    }
    let n = eps.len();
    let tail = (n / 3).max(1);
    let m_hat = median(&ratios[n - tail..]);
    let x: Vec<f64> = eps.iter().map(|e| (-e.ln()).ln()).collect();
    let y: Vec<f64> = ratios.iter().map(|r| r.ln()).collect();
    let slope = linear_fit(&x, &y)?.slope;
    // the trend of ρ over the finest scales has to agree with the fitted sign
    let late = linear_fit(&x[n / 2..], &y[n / 2..])
        .map(|f| f.slope)
        .unwrap_or(slope);
    let verdict = if slope.abs() <= NONDEGENERATE_SLOPE {
        ContentVerdict::Nondegenerate
    } else if slope >= DEGENERATE_SLOPE && late > 0.0 {
        ContentVerdict::DegenerateInfinity
    } else if slope <= -DEGENERATE_SLOPE && late < 0.0 {
        ContentVerdict::DegenerateZero
    } else {
        ContentVerdict::Inconclusive
    };
    Ok(ContentEstimate {
        d_used: d,
        m_hat,
        log_exponent: slope,
        verdict,
        model: ScalingModel::Plain,
        eps: eps.to_vec(),
        ratios: ratios.to_vec(),
    })
}

/// Content and log exponent from areas via
/// `|A_ε| ≈ M ε^{2−d} log(1/ε)^l + a ε + b`: `M` is fitted with `l = 0`, and
/// `l` is profiled over `[−3, 3]` with its own `(M, a, b)`.
pub fn content_from_areas_corrected(d: f64, eps: &[f64], areas: &[f64]) -> Result<ContentEstimate> {
    if eps.len() != areas.len() || eps.len() < 6 {
        return Err(Error::invalid(
            "corrected content fit needs at least six areas",
        ));
    }
    if eps.iter().any(|e| !(*e > 0.0 && *e < 1.0)) || areas.iter().any(|a| !(*a > 0.0)) {
        return Err(Error::invalid(
            "corrected content fit needs 0 < ε < 1 and positive areas",
        ));
    }
    let cols = |l: f64| -> Vec<Vec<f64>> {
        vec![
            eps.iter()
                .map(|e| e.powf(2.0 - d) * (-e.ln()).powf(l))
                .collect(),
            eps.to_vec(),
            vec![1.0; eps.len()],
        ]
    };
    let (coef, _) = relative_lstsq(&cols(0.0), areas);
    let (l, _) = profile_minimum(-3.0, 3.0, 0.01, |l| relative_lstsq(&cols(l), areas).1);
    let m_hat = coef[0];
    let verdict = if !(m_hat > 0.0) {
        ContentVerdict::Inconclusive
    } else if l.abs() <= NONDEGENERATE_SLOPE {
        ContentVerdict::Nondegenerate
    } else if l >= DEGENERATE_SLOPE {
        ContentVerdict::DegenerateInfinity
    } else if l <= -DEGENERATE_SLOPE {
        ContentVerdict::DegenerateZero
    } else {
        ContentVerdict::Inconclusive
    };
    Ok(ContentEstimate {
        d_used: d,
        m_hat,
        log_exponent: l,
        verdict,
        model: ScalingModel::TailCorrected,
        eps: eps.to_vec(),
        ratios: eps
            .iter()
            .zip(areas)
            .map(|(e, a)| a / e.powf(2.0 - d))
            .collect(),
    })
}

/// `d`-dimensional Minkowski content of a plane polyline from its sausage
/// areas over the grid.
pub fn estimate_content(poly: &Polyline, d: f64, grid: &EpsilonGrid) -> Result<ContentEstimate> {
    estimate_content_with(poly, d, grid, ScalingModel::Plain)
}

pub fn estimate_content_with(
    poly: &Polyline,
    d: f64,
    grid: &EpsilonGrid,
    model: ScalingModel,
) -> Result<ContentEstimate> {
    if !(0.0..=2.0).contains(&d) {
        return Err(Error::invalid("content dimension must lie in [0, 2]"));
    }
    let areas = sausage_areas(poly, grid)?;
    match model {
        ScalingModel::Plain => {
            let ratios: Vec<f64> = grid
                .eps
                .iter()
                .zip(&areas)
                .map(|(e, a)| a / e.powf(2.0 - d))
                .collect();
            content_from_ratios(d, &grid.eps, &ratios)
        }
        ScalingModel::TailCorrected => content_from_areas_corrected(d, &grid.eps, &areas),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_segment_content_is_two() {
        let seg = Polyline::new(vec![[0.0, 0.0], [1.0, 0.0]]);
        let grid = EpsilonGrid::geometric(1e-2, 1e-4, 10).unwrap();
        let c = estimate_content(&seg, 1.0, &grid).unwrap();
        assert!((c.m_hat - 2.0).abs() < 0.04, "{}", c.m_hat);
        assert_eq!(c.verdict, ContentVerdict::Nondegenerate);
    }

    #[test]
    fn corrected_fit_sees_through_tail_term() {
        let eps: Vec<f64> = (0..16).map(|i| 1e-2 * 0.75f64.powi(i)).collect();
        let d = 4.0 / 3.0;
        let areas: Vec<f64> = eps
            .iter()
            .map(|e| 7.0 * e.powf(2.0 - d) - 10.0 * e - 1e-4)
            .collect();
        let raw: Vec<f64> = eps
            .iter()
            .zip(&areas)
            .map(|(e, a)| a / e.powf(2.0 - d))
            .collect();
        assert_ne!(
            content_from_ratios(d, &eps, &raw).unwrap().verdict,
            ContentVerdict::Nondegenerate
        );
        let c = content_from_areas_corrected(d, &eps, &areas).unwrap();
        assert!((c.m_hat - 7.0).abs() < 1e-6);
        assert!(c.log_exponent.abs() < 1e-3);
        assert_eq!(c.verdict, ContentVerdict::Nondegenerate);
        let log_areas: Vec<f64> = eps
            .iter()
            .map(|e| 7.0 * e.powf(2.0 - d) * (-e.ln()) - 10.0 * e)
            .collect();
        let c = content_from_areas_corrected(d, &eps, &log_areas).unwrap();
        assert!((c.log_exponent - 1.0).abs() < 1e-3);
        assert_eq!(c.verdict, ContentVerdict::DegenerateInfinity);
    }

    #[test]
    fn synthetic_log_factors() {
        let eps: Vec<f64> = (0..12).map(|i| 1e-2 * 0.5f64.powi(i)).collect();
        let up: Vec<f64> = eps.iter().map(|e| 3.0 * (-e.ln()).powf(1.5)).collect();
        let c = content_from_ratios(1.2, &eps, &up).unwrap();
        assert!((c.log_exponent - 1.5).abs() < 1e-9);
        assert_eq!(c.verdict, ContentVerdict::DegenerateInfinity);
        let down: Vec<f64> = eps.iter().map(|e| 3.0 * (-e.ln()).powf(-1.0)).collect();
        assert_eq!(
            content_from_ratios(1.2, &eps, &down).unwrap().verdict,
            ContentVerdict::DegenerateZero
        );
        let mid: Vec<f64> = eps.iter().map(|e| (-e.ln()).powf(0.4)).collect();
        assert_eq!(
            content_from_ratios(1.2, &eps, &mid).unwrap().verdict,
            ContentVerdict::Inconclusive
        );
    }
}
