//! Gauss–Legendre rules and double-exponential quadrature for integrands
//! with algebraic endpoint singularities.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// `n`-point rule, nodes found by Newton iteration on `P_n`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussRule { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫_a^b f` with the rule mapped to `[a, b]`.
    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(c + h * x))
            .sum::<f64>()
            * h
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Value and error estimate of an adaptive rule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
}

const MAX_LEVEL: usize = 10;

fn logistic(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Tanh-sinh rule for `∫_0^L g`. The integrand receives the distances to
/// both endpoints, each computed without cancellation, so singularities of
/// the form `δ^β` at either end are resolved.
pub fn tanh_sinh(length: f64, tol: f64, g: impl Fn(f64, f64) -> f64) -> Result<QuadResult> {
    if !(length > 0.0) {
        return Ok(QuadResult {
            value: 0.0,
            error: 0.0,
        });
    }
    let term = |t: f64| -> f64 {
        let z = PI * t.sinh();
        let left = length * logistic(z);
        let right = length * logistic(-z);
        if left == 0.0 || right == 0.0 {
            return 0.0;
        }
        let jac = length * logistic(z) * logistic(-z) * PI * t.cosh();
        let v = g(left, right) * jac;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    double_exponential(term, 6.0, tol)
}

/// Exp-sinh rule for `∫_0^∞ g(δ) dδ`; allows an algebraic singularity at 0
/// and algebraic decay at infinity.
pub fn exp_sinh(tol: f64, g: impl Fn(f64) -> f64) -> Result<QuadResult> {
    let term = |t: f64| -> f64 {
        let s = 0.5 * PI * t.sinh();
        if s > 700.0 {
            return 0.0;
        }
        let x = s.exp();
        if x == 0.0 {
            return 0.0;
        }
        let v = g(x) * x * 0.5 * PI * t.cosh();
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    double_exponential(term, 6.0, tol)
}

/// Trapezoidal sums of a transformed integrand with step halving.
fn double_exponential(term: impl Fn(f64) -> f64, tmax: f64, tol: f64) -> Result<QuadResult> {
    let mut h = 0.5;
    let mut sum = term(0.0);
    let mut k = 1;
    while k as f64 * h <= tmax {
        let t = k as f64 * h;
        sum += term(t) + term(-t);
        k += 1;
    }
    let mut prev = sum * h;
    for _ in 0..MAX_LEVEL {
        h *= 0.5;
        // add the odd points of the refined grid
        let mut k = 1;
        while k as f64 * h <= tmax {
            let t = k as f64 * h;
            sum += term(t) + term(-t);
            k += 2;
        }
        let cur = sum * h;
        let err = (cur - prev).abs();
        if err <= tol * cur.abs().max(1e-300) {
            return Ok(QuadResult {
                value: cur,
                error: err,
            });
        }
        prev = cur;
    }
    Err(Error::NotConverged(format!(
        "double-exponential quadrature did not reach relative tolerance {tol}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_rule_is_exact_for_polynomials() {
        for n in [1, 2, 5, 12, 20] {
            let rule = GaussRule::new(n);
            assert!((rule.weights.iter().sum::<f64>() - 2.0).abs() < 1e-14);
            for deg in 0..(2 * n) {
                let exact = if deg % 2 == 1 {
                    0.0
                } else {
                    2.0 / (deg as f64 + 1.0)
                };
                let got = rule.integrate(-1.0, 1.0, |x| x.powi(deg as i32));
                assert!((got - exact).abs() < 1e-13, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn gauss_rule_nodes_are_sorted() {
        let rule = GaussRule::new(9);
        assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(rule.nodes[4], 0.0);
    }

    #[test]
    fn tanh_sinh_handles_endpoint_singularities() {
        // ∫_0^1 x^{-1/2}(1-x)^{-2/3} = B(1/2, 1/3)
        let r = tanh_sinh(1.0, 1e-12, |l, r| l.powf(-0.5) * r.powf(-2.0 / 3.0)).unwrap();
        assert!((r.value - 4.206_546_315_976_363).abs() < 1e-9);
    }

    #[test]
    fn exp_sinh_handles_algebraic_tails() {
        // ∫_0^∞ (1+x^2)^{-3/4} dx = B(1/2, 1/4)/2
        let r = exp_sinh(1e-12, |x| (1.0 + x * x).powf(-0.75)).unwrap();
        let exact = 0.5 * crate::special::beta(0.5, 0.25).unwrap();
        assert!((r.value - exact).abs() < 1e-9 * exact);
    }
}
