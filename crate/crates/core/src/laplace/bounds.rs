use super::symbol::SymbolParams;
use crate::error::{Error, Result};

/// Complementary error function.
pub fn erfc_eval(x: f64) -> f64 {
    libm::erfc(x)
}

pub(crate) fn require_half(theta: f64) -> Result<()> {
    if (theta - 0.5).abs() > 1e-12 {
        return Err(Error::Hypothesis(format!(
            "the convergence bounds hold for theta = 1/2 only, got {theta}"
        )));
    }
    Ok(())
}

/// Linear contraction factor `(|b - a| / (2b))^k` for `theta = 1/2`.
/// It contracts iff `a < 3b`.
pub fn linear_bound(k: usize, p: &SymbolParams) -> Result<f64> {
    require_half(p.theta())?;
    Ok(((p.b() - p.a()).abs() / (2.0 * p.b())).powi(k as i32))
}

/// Parameters of the short-window superlinear estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundParams {
    a: f64,
    b: f64,
    horizon: f64,
    sigma: f64,
}

impl BoundParams {
    pub fn new(a: f64, b: f64, horizon: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && horizon > 0.0) || !(a.is_finite() && b.is_finite() && horizon.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "bound parameters must be positive, got a = {a}, b = {b}, T = {horizon}"
            )));
        }
        Ok(Self {
            a,
            b,
            horizon,
            sigma: horizon / (b * b),
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    /// `sigma = T / b^2`.
    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

/// Superlinear estimate of `||h^k|| / ||h^0||` on `(0, T)` for `theta = 1/2`.
///
/// For `b >= a`: `((b - a)/b)^k erfc(k a / (2 sqrt T))`.
///
/// For `b < a` the estimate only exists for even iteration counts `2j`:
/// `(sqrt 2 / (1 - e^{-(2j+1)/sigma}))^{2j} e^{-j^2/sigma}`. Odd `k` reuse the
/// value at `2 floor(k/2)` (see [`superlinear_uses_even_index`]). The prefactor
/// exceeds one for small `j`; the value is returned unclamped.
pub fn superlinear_bound(k: usize, bp: &BoundParams) -> f64 {
    if bp.b >= bp.a {
        let kf = k as f64;
        ((bp.b - bp.a) / bp.b).powi(k as i32) * erfc_eval(kf * bp.a / (2.0 * bp.horizon.sqrt()))
    } else {
        let j = (k / 2) as f64;
        let prefactor = std::f64::consts::SQRT_2 / -(-(2.0 * j + 1.0) / bp.sigma).exp_m1();
        prefactor.powf(2.0 * j) * (-j * j / bp.sigma).exp()
    }
}

/// True when [`superlinear_bound`] reports the even-index estimate for an odd
/// iteration (the `b < a` case).
pub fn superlinear_uses_even_index(k: usize, bp: &BoundParams) -> bool {
    bp.b < bp.a && k % 2 == 1
}
