use num_complex::Complex64;

use crate::error::{Error, Result};

/// Geometry and relaxation parameter of the two-subdomain problem: Neumann
/// subdomain `(0, a)`, Dirichlet subdomain `(-b, 0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolParams {
    a: f64,
    b: f64,
    theta: f64,
}

impl SymbolParams {
    pub fn new(a: f64, b: f64, theta: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0 && b.is_finite() && b > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "subdomain lengths must be positive, got a = {a}, b = {b}"
            )));
        }
        if !(theta > 0.0 && theta <= 1.0) {
            return Err(Error::InvalidConfig(format!("theta = {theta} is outside (0, 1]")));
        }
        Ok(Self { a, b, theta })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `1 - 2 theta`, the symbol in the symmetric case.
    pub fn q(&self) -> f64 {
        1.0 - 2.0 * self.theta
    }

    pub fn is_symmetric(&self) -> bool {
        self.a == self.b
    }

    /// `lim_{s -> 0+} G(s) = (a - b) / b`.
    pub fn g_at_zero(&self) -> f64 {
        (self.a - self.b) / self.b
    }
}

/// `e^w - 1` without cancellation for small `|w|`.
fn expm1(w: Complex64) -> Complex64 {
    let half_sin = (0.5 * w.im).sin();
    Complex64::new(
        w.re.exp_m1() * w.im.cos() - 2.0 * half_sin * half_sin,
        w.re.exp() * w.im.sin(),
    )
}

fn check_argument(s: Complex64) -> Result<()> {
    if !(s.re.is_finite() && s.im.is_finite()) || (s.im == 0.0 && s.re <= 0.0) {
        return Err(Error::Domain { re: s.re, im: s.im });
    }
    Ok(())
}

/// The contraction symbol
/// `G(s) = sinh((a-b) sqrt s) / (cosh(a sqrt s) sinh(b sqrt s))`.
///
/// With `z = sqrt(s)`, `Re z >= 0`, every hyperbolic factor is written as
/// `e^{c z}` times a bounded term and the growing exponentials cancel
/// analytically, leaving
/// `G = sign(a-b) 2 e^{-2 min(a,b) z} (1 - e^{-2|a-b| z}) / ((1 + e^{-2az}) (1 - e^{-2bz}))`.
/// This stays finite for `|s|` far beyond where `cosh` overflows and keeps full
/// relative accuracy as `s -> 0`.
///
/// `G` is even in `z`, hence meromorphic in `s` with poles on the negative real
/// axis only; arguments on that half-line are rejected.
pub fn symbol_g(s: Complex64, p: &SymbolParams) -> Result<Complex64> {
    check_argument(s)?;
    let diff = p.a - p.b;
    if diff == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let z = s.sqrt();
    let decay = (-2.0 * p.a.min(p.b) * z).exp();
    let num = -expm1(-2.0 * diff.abs() * z);
    let den = (1.0 + (-2.0 * p.a * z).exp()) * -expm1(-2.0 * p.b * z);
    Ok(diff.signum() * 2.0 * decay * num / den)
}

/// Per-iteration multiplier `1 - theta - theta tanh(a sqrt s) coth(b sqrt s)`,
/// evaluated as `(1 - 2 theta) - theta G(s)`.
pub fn iteration_symbol(s: Complex64, p: &SymbolParams) -> Result<Complex64> {
    Ok(p.q() - p.theta * symbol_g(s, p)?)
}
