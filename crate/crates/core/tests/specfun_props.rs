use proptest::prelude::*;
use ramellin::specfun::{gamma, hurwitz_zeta, k_gamma, pk_gamma, riemann_zeta, sin_pi, zeta_derivative};
use std::f64::consts::PI;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn gamma_recurrence(x in 1e-3f64..50.0) {
        let lhs = gamma(x + 1.0).value;
        let rhs = x * gamma(x).value;
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs(), "x={x}: {lhs} vs {rhs}");
    }
}

proptest! {
    #[test]
    fn gamma_reflection(s in 1e-3f64..0.999) {
        let v = gamma(s).value * gamma(1.0 - s).value * sin_pi(s) / PI;
        prop_assert!((v - 1.0).abs() <= 1e-11, "s={s}: {v}");
    }

    #[test]
    fn hurwitz_ladder(c in 1.05f64..12.0, a in 0.05f64..20.0) {
        let d = hurwitz_zeta(c, a).value - hurwitz_zeta(c, a + 1.0).value;
        let want = a.powf(-c);
        prop_assert!((d - want).abs() <= 1e-11 * want, "c={c} a={a}: {d} vs {want}");
    }

    #[test]
    fn hurwitz_at_one_is_riemann(c in 1.05f64..40.0) {
        let h = hurwitz_zeta(c, 1.0).value;
        let z = riemann_zeta(c).value;
        prop_assert!((h - z).abs() <= 1e-12 * z);
    }

    #[test]
    fn pk_reduction_chain(s in 0.05f64..6.0, k in 0.2f64..4.0) {
        // p = k gives the k-gamma, p = k = 1 gives Γ
        let a = pk_gamma(s, k, k).value;
        let b = k_gamma(s, k).value;
        prop_assert!((a - b).abs() <= 1e-13 * b.abs());
        let g = gamma(s).value;
        prop_assert!((pk_gamma(s, 1.0, 1.0).value - g).abs() <= 1e-13 * g.abs());
    }
}

#[test]
fn gamma_recurrence_grid_over_reflection_range() {
    for i in 1..1000 {
        let s = i as f64 / 1000.0;
        let v = gamma(s).value * gamma(1.0 - s).value * sin_pi(s) / PI;
        assert!((v - 1.0).abs() <= 1e-11, "s={s}: {v}");
    }
}

#[test]
fn zeta_derivative_vs_central_difference() {
    let h = 1e-5;
    for s in [1.5, 2.0, 3.0, 6.0] {
        let fd = (riemann_zeta(s + h).value - riemann_zeta(s - h).value) / (2.0 * h);
        let d = zeta_derivative(s, 1).value;
        assert!((fd - d).abs() <= 1e-7, "s={s}: {d} vs {fd}");
    }
}
