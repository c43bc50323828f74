use koenigs::quantize::{condition_value, coulomb_asymptote, enumerate_spectrum, residual_tolerance, solve_level};
use koenigs::{QuantumNumbers, SolverSettings, Space, SpaceSpec};
use proptest::prelude::*;

fn settings() -> SolverSettings {
    SolverSettings::default()
}

fn lowest(spec: &SpaceSpec, qn: QuantumNumbers) -> Option<f64> {
    solve_level(spec, &qn, &settings()).unwrap().levels.first().map(|l| l.energy)
}

fn drawn_spec() -> impl Strategy<Value = SpaceSpec> {
    let c = (0.0f64..1.0, 0.0f64..1.0, 0.0f64..1.0, 0.5f64..2.0, 0.0f64..1.0, 0.0f64..1.0, 0.0f64..1.0);
    (0..3usize, c).prop_map(|(k, (a, b, g, d, w, k1, k2))| {
        SpaceSpec::new(match k {
            0 => Space::KI { alpha: a, beta: b, gamma: g, delta: d, omega: w + 0.2, kx: k1, ky: k2 },
            1 => Space::KII { alpha: a, beta: b, gamma: g, delta: d, omega: w + 0.2, kx: k1, ky_lin: k2 },
            _ => Space::KIII { alpha1: a, beta: b, gamma: g, delta: d, alpha2: w, k1, k2 },
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn levels_satisfy_condition(spec in drawn_spec()) {
        let s = settings();
        let sp = enumerate_spectrum(&spec, 2, &s).unwrap();
        for lv in &sp.levels {
            let v = condition_value(&spec, &lv.qn, lv.energy).unwrap();
            prop_assert!(v.abs() < residual_tolerance(&spec, lv.energy, &s), "{lv:?}");
            prop_assert!(lv.bracket.0 <= lv.energy && lv.energy <= lv.bracket.1);
        }
    }

    #[test]
    fn equal_n_levels_coincide(spec in drawn_spec(), n in 1u32..6) {
        if matches!(spec.space, Space::KII { .. }) {
            return Ok(());
        }
        let kind = spec.kind();
        let energies: Vec<Vec<f64>> = (0..n)
            .map(|nr| {
                let qn = QuantumNumbers::for_kind(kind, nr, n - 1 - nr);
                solve_level(&spec, &qn, &settings()).unwrap().levels.iter().map(|l| l.energy).collect()
            })
            .collect();
        for e in &energies[1..] {
            prop_assert_eq!(e.len(), energies[0].len());
            for (a, b) in e.iter().zip(&energies[0]) {
                prop_assert!((a - b).abs() <= 10.0 * settings().tol_abs);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn ki_energies_increase_with_n(alpha in 0.0f64..0.1, delta in 0.5f64..2.0, omega in 0.5f64..2.0, kx in 0.0f64..1.5, ky in 0.0f64..1.5) {
        let spec = SpaceSpec::new(Space::KI { alpha, beta: 0.0, gamma: 0.0, delta, omega, kx, ky });
        let e: Vec<f64> = (0..8u32)
            .filter_map(|nr| lowest(&spec, QuantumNumbers::KI { n_r: nr, n_phi: 0 }))
            .collect();
        prop_assert!(!e.is_empty());
        for w in e.windows(2) {
            prop_assert!(w[1] > w[0], "{e:?}");
        }
    }

    #[test]
    fn kiii_approaches_coulomb(alpha1 in 1e-3f64..0.1, beta in 1e-3f64..0.1, gamma in 1e-3f64..0.1, k1 in 0.0f64..0.2, k2 in 0.0f64..0.2) {
        let spec = SpaceSpec::new(Space::KIII { alpha1, beta, gamma, delta: 1.0, alpha2: 1.0, k1, k2 });
        let dev = |n: u32| {
            let e = lowest(&spec, QuantumNumbers::KIII { n_r: n - 1, n_phi: 0 }).unwrap();
            (e / coulomb_asymptote(&spec, n).unwrap() - 1.0).abs()
        };
        let (d100, d200) = (dev(100), dev(200));
        prop_assert!(d100 < 1e-2, "{d100}");
        prop_assert!(d200 < d100, "{d100} {d200}");
    }
}

#[test]
fn flat_limit_is_first_order() {
    let spec = |eps: f64| {
        SpaceSpec::new(Space::KI { alpha: eps, beta: eps, gamma: eps, delta: 1.0, omega: 1.0, kx: 0.5, ky: 0.5 })
    };
    for qn in [QuantumNumbers::KI { n_r: 0, n_phi: 0 }, QuantumNumbers::KI { n_r: 1, n_phi: 2 }] {
        let e0 = lowest(&spec(0.0), qn).unwrap();
        let d3 = (lowest(&spec(1e-3), qn).unwrap() - e0).abs();
        let d4 = (lowest(&spec(1e-4), qn).unwrap() - e0).abs();
        let ratio = d3 / d4;
        assert!((8.0..=12.0).contains(&ratio), "{ratio}");
        assert!(d3 <= 100.0 * 1e-3 * e0);
    }
}
