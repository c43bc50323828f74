use koenigs::specfun::{bessel_i, kummer_m, log_gamma, orthopoly, whittaker, OrthoFamily, Whittaker};
use proptest::prelude::*;

/// `C(n+α, j) = Γ(n+α+1)/(Γ(j+1)Γ(n+α−j+1))` as a finite product.
fn binom(top: f64, j: usize) -> f64 {
    (1..=j).map(|i| (top - j as f64 + i as f64) / i as f64).product()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Explicit sums and the sum of their absolute terms.
fn laguerre_sum(n: usize, alpha: f64, x: f64) -> (f64, f64) {
    let terms: Vec<f64> = (0..=n)
        .map(|k| (-1f64).powi(k as i32) * binom(n as f64 + alpha, n - k) * x.powi(k as i32) / factorial(k))
        .collect();
    (terms.iter().sum(), terms.iter().map(|t| t.abs()).sum())
}

fn jacobi_sum(n: usize, a: f64, b: f64, x: f64) -> (f64, f64) {
    let terms: Vec<f64> = (0..=n)
        .map(|s| {
            binom(n as f64 + a, n - s)
                * binom(n as f64 + b, s)
                * ((x - 1.0) / 2.0).powi(s as i32)
                * ((x + 1.0) / 2.0).powi((n - s) as i32)
        })
        .collect();
    (terms.iter().sum(), terms.iter().map(|t| t.abs()).sum())
}

fn hermite_sum(n: usize, x: f64) -> (f64, f64) {
    let terms: Vec<f64> = (0..=n / 2)
        .map(|m| {
            factorial(n) * (-1f64).powi(m as i32) * (2.0 * x).powi((n - 2 * m) as i32)
                / (factorial(m) * factorial(n - 2 * m))
        })
        .collect();
    (terms.iter().sum(), terms.iter().map(|t| t.abs()).sum())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn gamma_recurrence(z in 0.1f64..100.0) {
        let d = log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap() - z.ln();
        prop_assert!(d.abs() < 1e-12, "{d}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn kummer_derivative(a in -3.0f64..3.0, b in 0.5f64..5.0, z in 0.1f64..20.0) {
        let h = 1e-5;
        let m = |a: f64, b: f64, z: f64| kummer_m(a, b, z).unwrap().value;
        let lhs = (m(a, b, z + h) - m(a, b, z - h)) / (2.0 * h);
        let rhs = a / b * m(a + 1.0, b + 1.0, z);
        prop_assert!((lhs - rhs).abs() < 1e-6 * rhs.abs().max(m(a, b, z).abs()).max(1.0), "{lhs} {rhs}");
    }

    #[test]
    fn bessel_recurrence(nu in 1.0f64..20.0, z in 0.1f64..40.0) {
        let i = |n: f64| bessel_i(n, z).unwrap();
        let lhs = i(nu - 1.0) - i(nu + 1.0);
        let rhs = 2.0 * nu / z * i(nu);
        prop_assert!((lhs - rhs).abs() < 1e-10 * rhs.abs(), "{lhs} {rhs}");
    }

    #[test]
    fn whittaker_reduction(mu in 0.0f64..5.0, z in 0.05f64..30.0) {
        let w = whittaker(Whittaker::M, mu + 0.5, mu, z).unwrap();
        let exact = (-0.5 * z).exp() * z.powf(mu + 0.5);
        prop_assert!((w - exact).abs() < 1e-12 * exact, "{w} {exact}");
    }

    #[test]
    fn orthopoly_matches_expansion(n in 0usize..=6, p in -0.9f64..3.0, q in -0.9f64..3.0, x in -1.0f64..1.0) {
        let (l, ls) = laguerre_sum(n, p, 4.0 * (x + 1.0));
        let v = orthopoly(OrthoFamily::Laguerre { alpha: p }, n, 4.0 * (x + 1.0)).unwrap();
        prop_assert!((v - l).abs() < 1e-12 * ls.max(1.0), "laguerre {v} {l}");
        let (j, js) = jacobi_sum(n, p, q, x);
        let v = orthopoly(OrthoFamily::Jacobi { a: p, b: q }, n, x).unwrap();
        prop_assert!((v - j).abs() < 1e-12 * js.max(1.0), "jacobi {v} {j}");
        let (h, hs) = hermite_sum(n, 2.0 * x);
        let v = orthopoly(OrthoFamily::Hermite, n, 2.0 * x).unwrap();
        prop_assert!((v - h).abs() < 1e-12 * hs.max(1.0), "hermite {v} {h}");
    }
}
