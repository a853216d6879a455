use dnwr_core::laplace::{
    kernel_f, kernel_f_with_nodes, linear_bound, superlinear_bound, theoretical_error, BoundParams, InitialError,
    SymbolParams,
};

fn params(a: f64, b: f64) -> SymbolParams {
    SymbolParams::new(a, b, 0.5).unwrap()
}

fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len() - 1;
    assert!(n.is_multiple_of(2));
    let inner: f64 = values[1..n]
        .iter()
        .enumerate()
        .map(|(i, v)| if i % 2 == 0 { 4.0 * v } else { 2.0 * v })
        .sum();
    h / 3.0 * (values[0] + inner + values[n])
}

fn kernel_samples(k: usize, t: f64, n: usize, p: &SymbolParams) -> Vec<f64> {
    (0..=n)
        .map(|i| kernel_f(k, t * i as f64 / n as f64, p).unwrap())
        .collect()
}

#[test]
fn second_kernel_is_self_convolution_of_the_first() {
    let p = params(3.0, 2.0);
    for t in [1.0, 5.0, 20.0] {
        let n = 800;
        let f1 = kernel_samples(1, t, n, &p);
        let products: Vec<f64> = (0..=n).map(|i| f1[i] * f1[n - i]).collect();
        let conv = simpson(&products, t / n as f64);
        let f2 = kernel_f(2, t, &p).unwrap();
        assert!((conv - f2).abs() <= 1e-4 * f2.abs(), "t = {t}: {conv} vs {f2}");
    }
}

#[test]
fn kernel_signs_follow_the_geometry() {
    let neumann_longer = params(3.0, 2.0);
    let dirichlet_longer = params(2.0, 3.0);
    for i in 1..=200 {
        let t = 0.1 * i as f64;
        for k in 1..=3 {
            assert!(kernel_f(k, t, &neumann_longer).unwrap() >= -1e-10, "k = {k}, t = {t}");
        }
        assert!(kernel_f(1, t, &dirichlet_longer).unwrap() <= 1e-10, "t = {t}");
        assert!(kernel_f(2, t, &dirichlet_longer).unwrap() >= -1e-10, "t = {t}");
    }
}

#[test]
fn kernel_mass_is_the_symbol_at_zero() {
    let p = params(2.0, 3.0);
    let horizon = 200.0;
    let f1 = kernel_samples(1, horizon, 4000, &p);
    let mass = simpson(&f1, horizon / 4000.0);
    assert!((mass - p.g_at_zero()).abs() < 1e-6, "{mass} vs {}", p.g_at_zero());
}

#[test]
fn node_count_does_not_matter() {
    for p in [params(3.0, 2.0), params(2.0, 3.0), params(1.0, 4.0)] {
        for k in 1..=3 {
            for t in [0.05, 0.5, 2.0, 11.5, 40.0] {
                let coarse = kernel_f_with_nodes(k, t, &p, 32).unwrap();
                let fine = kernel_f_with_nodes(k, t, &p, 48).unwrap();
                assert!((coarse - fine).abs() < 1e-8, "k = {k}, t = {t}: {coarse} vs {fine}");
            }
        }
    }
}

#[test]
fn bounds_dominate_the_continuous_error() {
    for (a, b) in [(2.0, 3.0), (1.0, 2.0), (3.0, 2.0)] {
        let p = params(a, b);
        let horizon = 2.0;
        let bp = BoundParams::new(a, b, horizon).unwrap();
        let times: Vec<f64> = (1..=100).map(|i| horizon * i as f64 / 100.0).collect();
        for k in 1..=5 {
            let hk = theoretical_error(&InitialError::Ramp, k, &p, &times).unwrap();
            let rel = hk.iter().fold(0.0f64, |m, v| m.max(v.abs())) / horizon;
            assert!(
                rel <= linear_bound(k, &p).unwrap() * (1.0 + 1e-9) + 1e-12,
                "a = {a}, b = {b}, k = {k}"
            );
            if b >= a || k % 2 == 0 {
                assert!(
                    rel <= superlinear_bound(k, &bp) * (1.0 + 1e-9) + 1e-12,
                    "a = {a}, b = {b}, k = {k}: {rel}"
                );
            }
        }
    }
}
