//! Mellin transforms of oscillatory and algebraic kernels against closed forms.
use ramellin::mellin::{mellin_transform, QuadratureConfig};
use ramellin::series::{Parity, PhiSpec, SeriesKernel};
use ramellin::specfun::{gamma, riemann_zeta, sin_pi};

fn main() {
    let cfg = QuadratureConfig::default();
    let show = |name: &str, k: SeriesKernel, s: f64, want: f64| {
        let m = mellin_transform(&k, s, &cfg).unwrap();
        println!(
            "{name:<28} s={s:<5} {:.15}  want {:.15}  rel {:.1e}  est {:.1e}  evals {}",
            m.value,
            want,
            ((m.value - want) / want).abs(),
            m.abs_err_estimate,
            m.n_evals
        );
    };
    let sine = SeriesKernel::new(PhiSpec::Power { c: 1.0 }, Parity::Odd).unwrap();
    for s in [0.25, 0.5, 0.9] {
        show("∫ x^(s-1) sin x", sine, s, gamma(s).value * sin_pi(s / 2.0));
    }
    let beta = SeriesKernel::new(PhiSpec::Binomial { a: 2.0, v: 3.0 }, Parity::Full).unwrap();
    show("∫ x^(s-1) (1+2x)^-3", beta, 1.2, gamma(1.2).value * gamma(1.8).value / (2f64.powf(1.2) * 2.0));
    let zeta = SeriesKernel::new(PhiSpec::Zeta, Parity::Odd).unwrap();
    show("∫ x^(s-1) Σ sin(x/n²)·…", zeta, 0.25, riemann_zeta(1.5).value * gamma(0.25).value * sin_pi(0.125));
}
