use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::bounds::require_half;
use super::symbol::{symbol_g, SymbolParams};
use super::talbot::{invert_laplace, DEFAULT_NODES};
use crate::error::{Error, Result};
use crate::heat::TimeFn;

/// Kernels and continuous errors are not evaluated below this time; the
/// inversion is ill-conditioned there and the functions are negligible.
pub const SMALL_T_CUTOFF: f64 = 1e-6;

fn g_power(s: Complex64, k: usize, p: &SymbolParams) -> Complex64 {
    match symbol_g(s, p) {
        Ok(g) => g.powu(k as u32),
        // only reachable for arguments on the negative real axis, which the
        // contour never visits; surfaces as an inversion failure
        Err(_) => Complex64::new(f64::NAN, f64::NAN),
    }
}

/// `F_k(t)`, the inverse Laplace transform of `G(s)^k`.
pub fn kernel_f(k: usize, t: f64, p: &SymbolParams) -> Result<f64> {
    kernel_f_with_nodes(k, t, p, DEFAULT_NODES)
}

pub fn kernel_f_with_nodes(k: usize, t: f64, p: &SymbolParams, nodes: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::Hypothesis("kernel power must be at least 1".into()));
    }
    if p.is_symmetric() {
        return Err(Error::Hypothesis("G vanishes identically when a = b".into()));
    }
    if t < SMALL_T_CUTOFF {
        return Ok(0.0);
    }
    invert_laplace(&|s: Complex64| g_power(s, k, p), t, nodes)
}

/// Initial interface error `h^0` of the continuous model, with its transform.
#[derive(Clone)]
pub enum InitialError {
    /// `h^0(t) = t`, transform `1 / s^2`.
    Ramp,
    Custom {
        value: TimeFn,
        transform: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
    },
}

impl fmt::Debug for InitialError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialError::Ramp => f.write_str("Ramp"),
            InitialError::Custom { .. } => f.write_str("Custom"),
        }
    }
}

impl InitialError {
    pub fn value(&self, t: f64) -> f64 {
        match self {
            InitialError::Ramp => t,
            InitialError::Custom { value, .. } => value(t),
        }
    }

    pub fn transform(&self, s: Complex64) -> Complex64 {
        match self {
            InitialError::Ramp => 1.0 / (s * s),
            InitialError::Custom { transform, .. } => transform(s),
        }
    }
}

/// Continuous-model interface error `h^k(t)` for `theta = 1/2`, obtained by
/// inverting `(-1)^k 2^-k G(s)^k h0_hat(s)` at each requested time.
pub fn theoretical_error(h0: &InitialError, k: usize, p: &SymbolParams, times: &[f64]) -> Result<Vec<f64>> {
    require_half(p.theta())?;
    if k == 0 {
        return Ok(times.iter().map(|&t| h0.value(t)).collect());
    }
    if p.is_symmetric() {
        return Ok(vec![0.0; times.len()]);
    }
    let scale = (-0.5f64).powi(k as i32);
    times
        .iter()
        .map(|&t| {
            if t < SMALL_T_CUTOFF {
                return Ok(0.0);
            }
            invert_laplace(
                &|s: Complex64| scale * g_power(s, k, p) * h0.transform(s),
                t,
                DEFAULT_NODES,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Residue expansion of F_1 for simple poles: zeros of cosh(a z) at
    /// z = i (n + 1/2) pi / a and of sinh(b z) at z = i m pi / b, m >= 1.
    /// Only valid when the two pole families do not coincide (e.g. a=2, b=3).
    fn f1_residue_series(a: f64, b: f64, t: f64) -> f64 {
        let pi = std::f64::consts::PI;
        let mut sum = 0.0;
        for n in 0..4000 {
            let y = (n as f64 + 0.5) * pi / a;
            sum += 2.0 * y / (b * y).tan() / a * (-y * y * t).exp();
        }
        for m in 1..4000 {
            let y = m as f64 * pi / b;
            sum -= 2.0 * y * (a * y).tan() / b * (-y * y * t).exp();
        }
        sum
    }

    #[test]
    fn kernel_matches_residue_series() {
        let p = SymbolParams::new(2.0, 3.0, 0.5).unwrap();
        for &t in &[0.5, 1.0, 3.0, 10.0, 20.0] {
            let f = kernel_f(1, t, &p).unwrap();
            let oracle = f1_residue_series(2.0, 3.0, t);
            assert!(
                (f - oracle).abs() < 1e-9 * oracle.abs().max(1e-3),
                "t={t}: {f} vs {oracle}"
            );
        }
    }

    #[test]
    fn kernel_hypotheses() {
        let sym = SymbolParams::new(2.0, 2.0, 0.5).unwrap();
        assert!(matches!(kernel_f(1, 1.0, &sym), Err(Error::Hypothesis(_))));
        let p = SymbolParams::new(3.0, 2.0, 0.5).unwrap();
        assert!(matches!(kernel_f(0, 1.0, &p), Err(Error::Hypothesis(_))));
        assert_eq!(kernel_f(1, 1e-7, &p).unwrap(), 0.0);
    }

    #[test]
    fn theoretical_error_base_cases() {
        let times = [0.5, 1.0, 2.0];
        let p = SymbolParams::new(2.0, 3.0, 0.5).unwrap();
        assert_eq!(
            theoretical_error(&InitialError::Ramp, 0, &p, &times).unwrap(),
            times.to_vec()
        );
        let sym = SymbolParams::new(2.0, 2.0, 0.5).unwrap();
        assert_eq!(
            theoretical_error(&InitialError::Ramp, 3, &sym, &times).unwrap(),
            vec![0.0; 3]
        );
        let off = SymbolParams::new(2.0, 3.0, 0.3).unwrap();
        assert!(matches!(
            theoretical_error(&InitialError::Ramp, 1, &off, &times),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn ramp_error_grows_like_g0_for_large_t() {
        // h^1(t) ~ -(1/2) G(0) t for large t (final value theorem on the ramp)
        let p = SymbolParams::new(2.0, 3.0, 0.5).unwrap();
        let h = theoretical_error(&InitialError::Ramp, 1, &p, &[200.0]).unwrap()[0];
        let leading = -0.5 * p.g_at_zero() * 200.0;
        assert!((h - leading).abs() / leading < 0.05, "{h} vs {leading}");
    }

    #[test]
    fn custom_initial_error_matches_ramp() {
        let p = SymbolParams::new(3.0, 2.0, 0.5).unwrap();
        let custom = InitialError::Custom {
            value: Arc::new(|t| t),
            transform: Arc::new(|s| 1.0 / (s * s)),
        };
        let times = [0.3, 4.0];
        assert_eq!(
            theoretical_error(&custom, 2, &p, &times).unwrap(),
            theoretical_error(&InitialError::Ramp, 2, &p, &times).unwrap()
        );
    }
}
