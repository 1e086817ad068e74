//! Fractal geometry of curves defined by oscillatory integrals.
//!
//! For a polynomial phase `f` and a smooth compactly supported amplitude `φ`,
//! the integral `I(τ) = ∫ exp(iτ f(x)) φ(x) dx` traces a plane curve
//! `τ ↦ (Re I(τ), Im I(τ))` that spirals towards the origin as `τ → ∞`.
//! The box dimension and Minkowski content of that spiral are determined by
//! the critical point of `f`: its order in one variable, and the Newton
//! diagram remoteness and multiplicity in several variables.
//!
//! The crate has two halves that are meant to be played against each other:
//!
//! * prediction: [`phase`], [`newton`], [`special`] and [`asymptotics`] turn a
//!   phase into predicted dimensions and contents, exactly where possible;
//! * measurement: [`integral`] evaluates `I(τ)` numerically and builds the
//!   curve and reflected graphs, and [`fractal`] estimates box dimension and
//!   Minkowski content from geometry alone.
//!
//! [`report`] ties both halves into the verification pipeline used by the CLI.

// `!(x > 0.0)` rejects NaN along with non-positive values
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod asymptotics;
pub mod calibration;
pub mod error;
pub mod fractal;
pub mod integral;
pub mod newton;
pub mod phase;
pub mod quadrature;
pub mod report;
pub mod special;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Exact rational used for Newton-diagram quantities and predicted exponents.
pub type Rational = num_rational::Rational64;
