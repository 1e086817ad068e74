use serde::{Deserialize, Serialize};

use super::boxcount::BoxCount;
use crate::error::{Error, Result};

/// Ordinary least-squares line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub stderr: f64,
    pub r_squared: f64,
}

pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<LineFit> {
    let n = x.len();
    if n < 2 || y.len() != n {
        return Err(Error::invalid(
            "linear fit needs at least two paired values",
        ));
    }
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|v| (v - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::invalid("linear fit needs distinct abscissae"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - intercept - slope * a).powi(2))
        .sum();
    let stderr = if n > 2 {
        (sse / (nf - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    let r_squared = if syy > 0.0 {
        (1.0 - sse / syy).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Ok(LineFit {
        slope,
        intercept,
        stderr,
        r_squared,
    })
}

/// How a dimension was measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DimensionMethod {
    BoxCount,
    SausageSlope,
    BoxCountCorrected,
}

/// How finite-size effects are handled when fitting scaling laws.
///
/// `TailCorrected` is meant for spirals truncated at both ends. The start of
/// the spiral adds a rectifiable tail whose neighbourhood grows like `ε`
/// (the lower limit of `2ε ∫ f dφ`), and an unresolved core leaves a fixed
/// hole of area `πr²`. Both are fitted alongside the power law instead of
/// being left to bias the slope.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalingModel {
    #[default]
    Plain,
    TailCorrected,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionEstimate {
    pub d_hat: f64,
    pub stderr: f64,
    /// `(largest ε, smallest ε)` of the fit window.
    pub fit_window: (f64, f64),
    pub r_squared: f64,
    pub method: DimensionMethod,
    /// No plateau of local slopes was found; the fit uses every scale.
    pub inconclusive: bool,
}

/// Half-width of the band of local slopes accepted into a plateau.
pub const PLATEAU_TOLERANCE: f64 = 0.05;

/// Longest run of consecutive local slopes within `tol` of their median, as
/// an inclusive range of point indices. `None` when the run has fewer than
/// three slopes.
pub fn plateau_window(x: &[f64], y: &[f64], tol: f64) -> Option<(usize, usize)> {
    let slopes: Vec<f64> = x
        .windows(2)
        .zip(y.windows(2))
        .map(|(a, b)| (b[1] - b[0]) / (a[1] - a[0]))
        .collect();
    if slopes.is_empty() {
        return None;
    }
    let med = median(&slopes);
    let mut best: Option<(usize, usize)> = None;
    let mut start = None;
    for (i, s) in slopes.iter().enumerate() {
        if (s - med).abs() <= tol {
            let st = *start.get_or_insert(i);
            let len = i + 1 - st;
            if best.is_none_or(|(a, b)| len > b - a) {
                best = Some((st, i + 1));
            }
        } else {
            start = None;
        }
    }
    best.filter(|(a, b)| b - a >= 3)
}

pub fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        s[n / 2]
    } else {
        0.5 * (s[n / 2 - 1] + s[n / 2])
    }
}

/// Slope fit of `log y` against `log(1/ε)` over the automatically chosen
/// plateau.
pub(crate) fn scaling_fit(
    eps: &[f64],
    values: &[f64],
    sign: f64,
    offset: f64,
    method: DimensionMethod,
) -> Result<DimensionEstimate> {
    if eps.len() < 8 {
        return Err(Error::invalid("dimension fit needs at least 8 scales"));
    }
    if values.iter().any(|v| !(*v > 0.0)) {
        return Err(Error::invalid("scaling values must be positive"));
    }
    let x: Vec<f64> = eps.iter().map(|e| -e.ln()).collect();
    let y: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let (window, inconclusive) = match plateau_window(&x, &y, PLATEAU_TOLERANCE) {
        Some(w) => (w, false),
        None => ((0, x.len() - 1), true),
    };
    let fit = linear_fit(&x[window.0..=window.1], &y[window.0..=window.1])?;
    Ok(DimensionEstimate {
        d_hat: offset + sign * fit.slope,
        stderr: fit.stderr,
        fit_window: (eps[window.0], eps[window.1]),
        r_squared: fit.r_squared,
        method,
        inconclusive,
    })
}

/// Box dimension from counts `N(ε)`.
pub fn estimate_dimension(counts: &[BoxCount]) -> Result<DimensionEstimate> {
    let eps: Vec<f64> = counts.iter().map(|c| c.eps).collect();
    let n: Vec<f64> = counts.iter().map(|c| c.count).collect();
    scaling_fit(&eps, &n, 1.0, 0.0, DimensionMethod::BoxCount)
}

/// Least squares of `y` on the given columns with relative weights
/// `1/y`. Returns the coefficients and the weighted residual sum of squares.
/// Columns that are numerically dependent on earlier ones get coefficient 0.
pub(crate) fn relative_lstsq(cols: &[Vec<f64>], y: &[f64]) -> (Vec<f64>, f64) {
    let n = y.len();
    let k = cols.len();
    // scaled columns, orthogonalized by modified Gram–Schmidt
    let mut q: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut r = vec![vec![0.0; k]; k];
    let mut active = vec![false; k];
    for (j, col) in cols.iter().enumerate() {
        let mut v: Vec<f64> = (0..n).map(|i| col[i] / y[i]).collect();
        let norm0 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        for (i, qi) in q.iter().enumerate() {
            if qi.is_empty() {
                continue;
            }
            let dot: f64 = qi.iter().zip(&v).map(|(a, b)| a * b).sum();
            r[i][j] = dot;
            for (vv, qq) in v.iter_mut().zip(qi) {
                *vv -= dot * qq;
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-10 * norm0 && norm0 > 0.0 {
            r[j][j] = norm;
            v.iter_mut().for_each(|x| *x /= norm);
            active[j] = true;
            q.push(v);
        } else {
            q.push(Vec::new());
        }
    }
    // target is the all-ones vector after scaling
    let qt: Vec<f64> = q
        .iter()
        .map(|qi| if qi.is_empty() { 0.0 } else { qi.iter().sum() })
        .collect();
    let mut coef = vec![0.0; k];
    for j in (0..k).rev() {
        if !active[j] {
            continue;
        }
        let mut acc = qt[j];
        for l in j + 1..k {
            acc -= r[j][l] * coef[l];
        }
        coef[j] = acc / r[j][j];
    }
    let sse = (0..n)
        .map(|i| {
            let fit: f64 = cols.iter().zip(&coef).map(|(c, a)| a * c[i]).sum();
            (fit / y[i] - 1.0).powi(2)
        })
        .sum();
    (coef, sse)
}

/// Minimizer of `f` on `[lo, hi]`: a scan with spacing `step` followed by a
/// golden-section search around the best grid point.
pub(crate) fn profile_minimum(lo: f64, hi: f64, step: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let n = ((hi - lo) / step).ceil().max(1.0) as usize;
    let mut best = (lo, f(lo));
    for i in 1..=n {
        let p = (lo + i as f64 * step).min(hi);
        let v = f(p);
        if v < best.1 {
            best = (p, v);
        }
    }
    let (mut a, mut b) = ((best.0 - step).max(lo), (best.0 + step).min(hi));
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut c, mut d) = (b - g * (b - a), a + g * (b - a));
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > 1e-7 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    let p = 0.5 * (a + b);
    let v = f(p);
    if v < best.1 {
        (p, v)
    } else {
        best
    }
}

/// Box dimension from `N(ε) ≈ A ε^{−d} + B ε^{−1} + C ε^{−2}`, fitted over
/// every scale with `d ∈ [1, 2]` profiled out. `d = 1` is a legitimate
/// outcome (the power law merges with the rectifiable term). The estimate is
/// flagged inconclusive when `d` reaches 2, or when `d > 1` but the
/// power-law term carries under a tenth of the count at the finest scale.
pub fn estimate_dimension_corrected(counts: &[BoxCount]) -> Result<DimensionEstimate> {
    if counts.len() < 8 {
        return Err(Error::invalid("dimension fit needs at least 8 scales"));
    }
    if counts.iter().any(|c| !(c.count > 0.0)) {
        return Err(Error::invalid("scaling values must be positive"));
    }
    let eps: Vec<f64> = counts.iter().map(|c| c.eps).collect();
    let y: Vec<f64> = counts.iter().map(|c| c.count).collect();
    let cols = |d: f64| -> Vec<Vec<f64>> {
        vec![
            eps.iter().map(|e| e.powf(-d)).collect(),
            eps.iter().map(|e| 1.0 / e).collect(),
            eps.iter().map(|e| e.powi(-2)).collect(),
        ]
    };
    let sse = |d: f64| relative_lstsq(&cols(d), &y).1;
    let (lo, hi) = (1.0, 2.0);
    let (d, best) = profile_minimum(lo, hi, 0.005, sse);
    let (coef, _) = relative_lstsq(&cols(d), &y);
    let n = y.len() as f64;
    // curvature of the profile gives the standard error of d
    let h = 1e-3;
    let curv = (sse((d + h).min(hi)) - 2.0 * best + sse((d - h).max(lo))) / (h * h);
    let sigma2 = best / (n - 4.0).max(1.0);
    let stderr = if curv > 0.0 {
        (2.0 * sigma2 / curv).sqrt()
    } else {
        f64::INFINITY
    };
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let mean = ly.iter().sum::<f64>() / n;
    let sst: f64 = ly.iter().map(|v| (v - mean).powi(2)).sum();
    let c = cols(d);
    let ssr: f64 = (0..y.len())
        .map(|i| {
            let fit: f64 = c.iter().zip(&coef).map(|(col, a)| a * col[i]).sum();
            (ly[i] - fit.max(f64::MIN_POSITIVE).ln()).powi(2)
        })
        .sum();
    let last = y.len() - 1;
    let share = coef[0] * c[0][last] / y[last];
    Ok(DimensionEstimate {
        d_hat: d,
        stderr,
        fit_window: (eps[0], eps[last]),
        r_squared: if sst > 0.0 {
            (1.0 - ssr / sst).clamp(0.0, 1.0)
        } else {
            1.0
        },
        method: DimensionMethod::BoxCountCorrected,
        inconclusive: hi - d < 0.01 || (d - lo > 0.01 && share < 0.1),
    })
}

/// Box dimension under the given scaling model.
pub fn estimate_dimension_with(
    counts: &[BoxCount],
    model: ScalingModel,
) -> Result<DimensionEstimate> {
    match model {
        ScalingModel::Plain => estimate_dimension(counts),
        ScalingModel::TailCorrected => estimate_dimension_corrected(counts),
    }
}
