use serde::{Deserialize, Serialize};

use super::geometry::EpsilonGrid;
use crate::error::{Error, Result};

/// Samples `r = f(φ)` of a spiral in polar coordinates, `φ` increasing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusSamples {
    pub phi: Vec<f64>,
    pub r: Vec<f64>,
}

impl RadiusSamples {
    pub fn new(phi: Vec<f64>, r: Vec<f64>) -> Result<Self> {
        if phi.len() != r.len() || phi.len() < 2 {
            return Err(Error::invalid(
                "radius samples need at least two (φ, r) pairs",
            ));
        }
        if phi.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::invalid("angles must be strictly increasing"));
        }
        if r.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
            return Err(Error::invalid("radii must be finite and non-negative"));
        }
        if r.windows(2).any(|w| w[1] > w[0] * (1.0 + 1e-12)) {
            return Err(Error::invalid("radius must be non-increasing in φ"));
        }
        Ok(RadiusSamples { phi, r })
    }

    pub fn from_fn(phi_min: f64, phi_max: f64, step: f64, f: impl Fn(f64) -> f64) -> Result<Self> {
        if !(phi_max > phi_min && step > 0.0) {
            return Err(Error::invalid("need phi_max > phi_min and a positive step"));
        }
        let n = ((phi_max - phi_min) / step).ceil() as usize;
        let phi: Vec<f64> = (0..=n)
            .map(|i| phi_min + (phi_max - phi_min) * i as f64 / n as f64)
            .collect();
        let r = phi.iter().map(|&p| f(p)).collect();
        Self::new(phi, r)
    }

    pub fn phi_min(&self) -> f64 {
        self.phi[0]
    }

    pub fn phi_max(&self) -> f64 {
        *self.phi.last().unwrap()
    }

    /// Linear interpolation; `None` outside the sampled range.
    pub fn radius(&self, phi: f64) -> Option<f64> {
        if phi < self.phi_min() || phi > self.phi_max() {
            return None;
        }
        let i = self
            .phi
            .partition_point(|p| *p <= phi)
            .clamp(1, self.phi.len() - 1);
        let (p0, p1) = (self.phi[i - 1], self.phi[i]);
        let t = (phi - p0) / (p1 - p0);
        Some(self.r[i - 1] + t * (self.r[i] - self.r[i - 1]))
    }

    /// Smallest sampled angle after which every winding gap
    /// `f(ψ) − f(ψ + 2π)` is at most `2ε`.
    pub fn phi2(&self, eps: f64) -> f64 {
        let two_pi = std::f64::consts::TAU;
        let last_bad = self
            .phi
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, p)| **p + two_pi <= self.phi_max())
            .find(|(i, p)| self.r[*i] - self.radius(**p + two_pi).unwrap() > 2.0 * eps)
            .map(|(i, _)| i);
        match last_bad {
            Some(i) => self.phi[(i + 1).min(self.phi.len() - 1)],
            None => self.phi_min(),
        }
    }

    /// `∫ f dφ` over `[a, b]` by the trapezoid rule on the samples.
    fn integral(&self, a: f64, b: f64) -> f64 {
        let mut total = 0.0;
        for (w, rw) in self.phi.windows(2).zip(self.r.windows(2)) {
            let lo = w[0].max(a);
            let hi = w[1].min(b);
            if hi > lo {
                let ra = self.radius(lo).unwrap_or(rw[0]);
                let rb = self.radius(hi).unwrap_or(rw[1]);
                total += 0.5 * (ra + rb) * (hi - lo);
            }
        }
        total
    }

    /// Area of the radial `ε`-neighbourhood: on each ray the union of the
    /// intervals `(r_k − ε, r_k + ε)` over the windings crossing it.
    pub fn radial_area(&self, eps: f64, rays: usize) -> f64 {
        let two_pi = std::f64::consts::TAU;
        let rays = rays.max(16);
        let dtheta = two_pi / rays as f64;
        let mut area = 0.0;
        let mut radii = Vec::new();
        for j in 0..rays {
            let theta = (j as f64 + 0.5) * dtheta;
            radii.clear();
            // first angle ≥ phi_min congruent to theta
            let k0 = ((self.phi_min() - theta) / two_pi).ceil();
            let mut phi = theta + k0 * two_pi;
            while phi <= self.phi_max() {
                radii.push(self.radius(phi).unwrap());
                phi += two_pi;
            }
            radii.sort_by(f64::total_cmp);
            let mut ray = 0.0;
            let mut cur: Option<(f64, f64)> = None;
            for &r in &radii {
                let (lo, hi) = ((r - eps).max(0.0), r + eps);
                cur = match cur {
                    Some((a, b)) if lo <= b => Some((a, b.max(hi))),
                    Some((a, b)) => {
                        ray += 0.5 * (b * b - a * a);
                        Some((lo, hi))
                    }
                    None => Some((lo, hi)),
                };
            }
            if let Some((a, b)) = cur {
                ray += 0.5 * (b * b - a * a);
            }
            area += ray * dtheta;
        }
        area
    }
}

/// Rays used for the radial neighbourhood area.
pub const DEFAULT_RAYS: usize = 2048;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpiralRadialReport {
    pub eps: Vec<f64>,
    pub phi2: Vec<f64>,
    pub nucleus_area: Vec<f64>,
    pub tail_area: Vec<f64>,
    pub radial_area: Vec<f64>,
}

/// Nucleus and tail decomposition of the radial neighbourhood for each `ε`.
/// The nucleus is bounded by the disk of radius `sup f + ε` over one winding
/// after `φ₂(ε)`; the tail is `2ε ∫ f dφ` from `φ₁` to `φ₂(ε)`.
pub fn spiral_radial_analysis(
    samples: &RadiusSamples,
    grid: &EpsilonGrid,
) -> Result<SpiralRadialReport> {
    let two_pi = std::f64::consts::TAU;
    let mut report = SpiralRadialReport {
        eps: grid.eps.clone(),
        phi2: Vec::new(),
        nucleus_area: Vec::new(),
        tail_area: Vec::new(),
        radial_area: Vec::new(),
    };
    for &eps in &grid.eps {
        let phi2 = samples.phi2(eps);
        let hi = (phi2 + two_pi).min(samples.phi_max());
        let sup = samples
            .phi
            .iter()
            .zip(&samples.r)
            .filter(|(p, _)| **p >= phi2 && **p <= hi)
            .map(|(_, r)| *r)
            .fold(samples.radius(phi2).unwrap(), f64::max);
        report.phi2.push(phi2);
        report
            .nucleus_area
            .push(std::f64::consts::PI * (sup + eps).powi(2));
        report
            .tail_area
            .push(2.0 * eps * samples.integral(samples.phi_min(), phi2));
        report
            .radial_area
            .push(samples.radial_area(eps, DEFAULT_RAYS));
    }
    Ok(report)
}
