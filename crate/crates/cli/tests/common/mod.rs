#![allow(dead_code)]

use std::sync::Arc;

use dnwr_core::heat::{Grid1D, InterfaceTrace, ProblemData, Source};
use nalgebra::{DMatrix, DVector};
use rand::Rng;

/// Random smooth data: trigonometric initial profile and source, affine boundary data.
pub fn random_data(rng: &mut impl Rng) -> ProblemData {
    let c: [f64; 9] = std::array::from_fn(|_| rng.random_range(-2.0..2.0));
    ProblemData::new(
        Source::General(Arc::new(move |x, t| c[0] * (c[1] * x + t).cos())),
        move |x| c[2] + c[3] * (2.0 * x).sin() + c[4] * x.cos(),
        move |t| c[5] + c[6] * t,
        move |t| c[7] + c[8] * t,
    )
}

pub fn random_trace(rng: &mut impl Rng, nt: usize, dt: f64) -> InterfaceTrace {
    InterfaceTrace::new(dt, (0..nt).map(|_| rng.random_range(-2.0..2.0)).collect())
}

pub enum Left<'a> {
    Value(&'a dyn Fn(usize, f64) -> f64),
    Flux(&'a InterfaceTrace),
}

/// Backward Euler with one dense LU solve per step over all nodes, boundary
/// rows included. The flux row uses a ghost node mirrored through `x_0`.
pub fn dense_oracle(grid: &Grid1D, data: &ProblemData, left: Left<'_>, right: &dyn Fn(usize, f64) -> f64) -> Vec<f64> {
    let m = grid.node_count();
    let (dx, dt) = (grid.dx(), grid.dt());
    let r = dt / (dx * dx);
    let mut a = DMatrix::<f64>::zeros(m, m);
    match left {
        Left::Value(_) => a[(0, 0)] = 1.0,
        Left::Flux(_) => {
            a[(0, 0)] = 1.0 + 2.0 * r;
            a[(0, 1)] = -2.0 * r;
        }
    }
    for i in 1..m - 1 {
        a[(i, i - 1)] = -r;
        a[(i, i)] = 1.0 + 2.0 * r;
        a[(i, i + 1)] = -r;
    }
    a[(m - 1, m - 1)] = 1.0;
    let lu = a.lu();

    let mut prev: Vec<f64> = (0..m).map(|i| (data.initial)(grid.x(i))).collect();
    let mut all = prev.clone();
    for n in 1..=grid.nt() {
        let t = grid.t(n);
        let mut b = DVector::<f64>::from_fn(m, |i, _| prev[i] + dt * data.source.eval(grid.x(i), t));
        b[0] = match &left {
            Left::Value(g) => g(n, t),
            Left::Flux(q) => b[0] - 2.0 * r * dx * q.at(n),
        };
        b[m - 1] = right(n, t);
        prev = lu.solve(&b).expect("oracle matrix is nonsingular").as_slice().to_vec();
        all.extend_from_slice(&prev);
    }
    all
}

/// `max |x - y| / max(1, max |y|)`.
pub fn relative_gap(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let scale = y.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    x.iter().zip(y).fold(0.0f64, |m, (a, b)| m.max((a - b).abs())) / scale
}

/// Composite Simpson rule on equispaced samples (even number of intervals).
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len() - 1;
    assert!(n.is_multiple_of(2) && n > 0);
    let inner: f64 = values[1..n]
        .iter()
        .enumerate()
        .map(|(i, v)| if i % 2 == 0 { 4.0 * v } else { 2.0 * v })
        .sum();
    h / 3.0 * (values[0] + inner + values[n])
}

/// `erfc(x) = 2/sqrt(pi) * int_x^inf e^{-u^2} du` by Simpson quadrature, x >= 0.
pub fn erfc_quadrature(x: f64) -> f64 {
    let n = 20_000;
    let h = 10.0 / n as f64;
    let values: Vec<f64> = (0..=n).map(|i| (-(x + i as f64 * h).powi(2)).exp()).collect();
    2.0 / std::f64::consts::PI.sqrt() * simpson(&values, h)
}
