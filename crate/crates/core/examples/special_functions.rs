//! Γ, ψ, ζ, Hurwitz ζ and the k-/(p,k)-gamma family at a few points.
use ramellin::specfun::{digamma, gamma, hurwitz_zeta, k_gamma, pk_gamma, riemann_zeta, zeta_derivative};

fn main() {
    for x in [0.5, 1.5, -2.5, 10.0] {
        let g = gamma(x);
        println!("Γ({x}) = {:.16} ± {:.1e}   ψ({x}) = {:.16}", g.value, g.abs_err, digamma(x).value);
    }
    for s in [2.0, 3.0, 0.5, -1.0] {
        println!("ζ({s}) = {:.16}", riemann_zeta(s).value);
    }
    println!("ζ'(3) = {:.16}", zeta_derivative(3.0, 1).value);
    println!("ζ(2, 2) = {:.16}  (= π²/6 − 1)", hurwitz_zeta(2.0, 2.0).value);
    println!("Γ_2(1.5) = {:.16}", k_gamma(1.5, 2.0).value);
    println!("Γ_(3,2)(0.8) = {:.16}", pk_gamma(0.8, 3.0, 2.0).value);
}
