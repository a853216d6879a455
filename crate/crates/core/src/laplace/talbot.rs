//! Numerical inverse Laplace transform on a Talbot-type contour.
//!
//! The Bromwich line is deformed into the cotangent contour
//! `s(phi) = (N/t) (c0 + c1 phi cot(alpha phi) + i c2 phi)`, `phi in (-pi, pi)`,
//! which wraps around the negative real axis, and the contour integral is
//! discretized with the `N`-point midpoint rule. The coefficients are the
//! optimized values of Weideman and Trefethen (2007): the discretization error
//! decays like `e^{-1.36 N}` while the largest term only grows like `e^{0.17 N}`,
//! so roundoff stays near `1e-13` for the node counts used here. The classical
//! fixed Talbot contour amplifies roundoff by `e^{0.4 N}`, which already costs
//! eight digits at `N = 48`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const DEFAULT_NODES: usize = 32;

const C0: f64 = -0.6122;
const C1: f64 = 0.5017;
const C2: f64 = 0.2645;
const ALPHA: f64 = 0.6407;

/// A Laplace transform `w(s)`, analytic to the right of (and on) the contour
/// with singularities confined to the negative real axis, decaying like
/// `O(s^-p)` as `|s| -> inf`, and real for real `s`.
pub trait TransformFn {
    fn eval(&self, s: Complex64) -> Complex64;
}

impl<F: Fn(Complex64) -> Complex64> TransformFn for F {
    fn eval(&self, s: Complex64) -> Complex64 {
        self(s)
    }
}

/// Contour point and derivative at parameter `phi`, scaled by `N/t`.
fn contour(phi: f64, scale: f64) -> (Complex64, Complex64) {
    if phi == 0.0 {
        return (
            Complex64::new(scale * (C0 + C1 / ALPHA), 0.0),
            Complex64::new(0.0, scale * C2),
        );
    }
    let ap = ALPHA * phi;
    let (sin, cos) = ap.sin_cos();
    let cot = cos / sin;
    (
        scale * Complex64::new(C0 + C1 * phi * cot, C2 * phi),
        scale * Complex64::new(C1 * (cot - ap / (sin * sin)), C2),
    )
}

/// Approximates `w(t)` from its transform using `nodes` contour points.
///
/// Terms are accumulated in a fixed order, so results are bit-reproducible.
pub fn invert_laplace(fhat: &impl TransformFn, t: f64, nodes: usize) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidConfig(format!("inversion time t = {t} must be positive")));
    }
    if nodes < 2 {
        return Err(Error::InvalidConfig(format!(
            "need at least two contour nodes, got {nodes}"
        )));
    }
    let n = nodes as f64;
    let scale = n / t;
    let step = 2.0 * PI / n;
    let mut sum = 0.0;
    for k in 0..nodes {
        let phi = -PI + (k as f64 + 0.5) * step;
        let (s, ds) = contour(phi, scale);
        let value = fhat.eval(s);
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::InversionFailure { node: k, t });
        }
        // (1 / 2 pi i) * step * e^{st} F(s) s'(phi), real part
        sum += ((s * t).exp() * value * ds).im;
    }
    Ok(sum / n)
}
