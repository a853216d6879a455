#![allow(dead_code)]

use std::sync::Arc;

use dnwr_core::heat::{Grid1D, InterfaceTrace, ProblemData, Source};
use nalgebra::{DMatrix, DVector};

/// Smooth random-looking data from a handful of coefficients.
#[derive(Debug, Clone, Copy)]
pub struct DataCoeffs {
    pub u0: [f64; 3],
    pub f: [f64; 2],
    pub g: [f64; 4],
}

impl DataCoeffs {
    pub fn build(self, zero_source: bool) -> ProblemData {
        let [c0, c1, c2] = self.u0;
        let [d0, d1] = self.f;
        let [e0, e1, e2, e3] = self.g;
        let source = if zero_source {
            Source::Zero
        } else {
            Source::General(Arc::new(move |x, t| d0 * (x + d1 * t).sin()))
        };
        ProblemData::new(
            source,
            move |x| c0 + c1 * (2.0 * x).sin() + c2 * x.cos(),
            move |t| e0 + e1 * t,
            move |t| e2 + e3 * t,
        )
    }
}

/// `alpha * d1 + beta * d2`.
pub fn combine(alpha: f64, d1: &ProblemData, beta: f64, d2: &ProblemData) -> ProblemData {
    let (s1, s2) = (d1.source.clone(), d2.source.clone());
    let (i1, i2) = (d1.initial.clone(), d2.initial.clone());
    let (l1, l2) = (d1.boundary_left.clone(), d2.boundary_left.clone());
    let (r1, r2) = (d1.boundary_right.clone(), d2.boundary_right.clone());
    ProblemData::new(
        Source::General(Arc::new(move |x, t| alpha * s1.eval(x, t) + beta * s2.eval(x, t))),
        move |x| alpha * i1(x) + beta * i2(x),
        move |t| alpha * l1(t) + beta * l2(t),
        move |t| alpha * r1(t) + beta * r2(t),
    )
}

pub enum LeftCondition<'a> {
    Dirichlet(&'a dyn Fn(usize, f64) -> f64),
    Flux(&'a InterfaceTrace),
}

/// Backward Euler advanced with a dense LU solve per step over all nodes,
/// boundary rows included. Returns rows `0..=nt`.
pub fn dense_march(
    grid: &Grid1D,
    data: &ProblemData,
    left: LeftCondition<'_>,
    right: &dyn Fn(usize, f64) -> f64,
) -> Vec<Vec<f64>> {
    let m = grid.node_count();
    let dx = grid.dx();
    let dt = grid.dt();
    let r = dt / (dx * dx);
    let mut a = DMatrix::<f64>::zeros(m, m);
    match left {
        LeftCondition::Dirichlet(_) => a[(0, 0)] = 1.0,
        LeftCondition::Flux(_) => {
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

    let mut rows = vec![(0..m).map(|i| (data.initial)(grid.x(i))).collect::<Vec<_>>()];
    for n in 1..=grid.nt() {
        let t = grid.t(n);
        let prev = &rows[n - 1];
        let mut b = DVector::<f64>::zeros(m);
        for i in 1..m - 1 {
            b[i] = prev[i] + dt * data.source.eval(grid.x(i), t);
        }
        b[0] = match &left {
            LeftCondition::Dirichlet(g) => g(n, t),
            LeftCondition::Flux(q) => prev[0] + dt * data.source.eval(grid.x(0), t) - 2.0 * r * dx * q.at(n),
        };
        b[m - 1] = right(n, t);
        rows.push(lu.solve(&b).unwrap().as_slice().to_vec());
    }
    rows
}

pub fn max_diff(rows: &[Vec<f64>], values: &[f64]) -> f64 {
    rows.iter()
        .flatten()
        .zip(values)
        .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
}
