//! Synthetic sets with known box dimension and content.

use super::geometry::Polyline;
use super::spiral::RadiusSamples;
use crate::error::{Error, Result};

/// Phase step of `x^{−β}` between chirp samples, so `Δx ≤ x^{β+1}/(8β)`.
pub const CHIRP_PHASE_STEP: f64 = 1.0 / 8.0;

/// Angular step of the spiral polyline.
pub const SPIRAL_ANGLE_STEP: f64 = std::f64::consts::PI / 64.0;

/// Graph of `x^α log(1/x)^l sin(x^{−β})` on `[t_min, 1]`.
pub fn gen_chirp(alpha: f64, beta: f64, l: u32, t_min: f64, max_points: usize) -> Result<Polyline> {
    if !(alpha > 0.0 && beta >= alpha) {
        return Err(Error::invalid("chirp needs 0 < α ≤ β"));
    }
    if !(t_min > 0.0 && t_min < 1.0) {
        return Err(Error::invalid("chirp needs 0 < t_min < 1"));
    }
    let u_max = t_min.powf(-beta);
    let n = ((u_max - 1.0) / CHIRP_PHASE_STEP).ceil() as usize + 1;
    if n > max_points {
        return Err(Error::BudgetExceeded(format!(
            "chirp down to t = {t_min} needs {n} points, budget {max_points}"
        )));
    }
    let points = (0..n)
        .map(|i| {
            let u = (1.0 + i as f64 * CHIRP_PHASE_STEP).min(u_max);
            let t = u.powf(-1.0 / beta);
            [t, chirp_value(alpha, l, t, u)]
        })
        .collect();
    Ok(Polyline::new(points))
}

fn chirp_value(alpha: f64, l: u32, t: f64, u: f64) -> f64 {
    t.powf(alpha) * (-t.ln()).powi(l as i32) * u.sin()
}

/// Radius `m φ^{−α} log(φ)^l`.
pub fn spiral_radius(alpha: f64, m: f64, l: u32, phi: f64) -> f64 {
    m * phi.powf(-alpha) * phi.ln().powi(l as i32)
}

fn check_spiral(alpha: f64, m: f64, l: u32, phi_min: f64, phi_max: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0 && m > 0.0) {
        return Err(Error::invalid("spiral needs α ∈ (0, 1] and m > 0"));
    }
    if !(phi_min > std::f64::consts::E && phi_max > phi_min) {
        return Err(Error::invalid("spiral needs e < phi_min < phi_max"));
    }
    // the radius decreases only once log φ > l/α
    if l > 0 && phi_min.ln() <= l as f64 / alpha {
        return Err(Error::invalid(format!(
            "spiral with l = {l} is radially decreasing only for φ > e^{{l/α}} = {}",
            (l as f64 / alpha).exp()
        )));
    }
    Ok(())
}

/// Polar samples of the spiral for radial analysis.
pub fn spiral_samples(
    alpha: f64,
    m: f64,
    l: u32,
    phi_min: f64,
    phi_max: f64,
) -> Result<RadiusSamples> {
    check_spiral(alpha, m, l, phi_min, phi_max)?;
    RadiusSamples::from_fn(phi_min, phi_max, SPIRAL_ANGLE_STEP, |p| {
        spiral_radius(alpha, m, l, p)
    })
}

/// Spiral `r = m φ^{−α} log(φ)^l` for `φ ∈ [phi_min, phi_max]`.
pub fn gen_spiral(alpha: f64, m: f64, l: u32, phi_min: f64, phi_max: f64) -> Result<Polyline> {
    let s = spiral_samples(alpha, m, l, phi_min, phi_max)?;
    Ok(Polyline::new(
        s.phi
            .iter()
            .zip(&s.r)
            .map(|(p, r)| [r * p.cos(), r * p.sin()])
            .collect(),
    ))
}

/// Points `k^{−a}` on the x-axis. Once consecutive gaps drop below
/// `eps_min/4` the rest of `[0, K^{−a}]` is filled at that spacing, which is
/// indistinguishable at scales `≥ eps_min`.
pub fn gen_astring(a: f64, eps_min: f64) -> Result<Polyline> {
    if !(a > 0.0 && eps_min > 0.0) {
        return Err(Error::invalid("a-string needs a > 0 and eps_min > 0"));
    }
    let h = eps_min / 4.0;
    let mut points = Vec::new();
    let mut k = 1.0f64;
    loop {
        let x = k.powf(-a);
        points.push([x, 0.0]);
        if x - (k + 1.0).powf(-a) < h {
            break;
        }
        k += 1.0;
    }
    let last = points.last().unwrap()[0];
    let fill = (last / h).floor() as usize;
    points.extend((0..fill).rev().map(|i| [i as f64 * h, 0.0]));
    Ok(Polyline::point_set(points))
}
