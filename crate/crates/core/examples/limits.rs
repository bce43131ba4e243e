//! s → 0 behaviour of the split zeta integral and the Laurent expansion at the pole.
use ramellin::identities::{appendix_a1_limit, pole_expansion, zeta_cosine_transform, LIMIT_SAMPLES, PI_FOURTH_OVER_24};

fn main() {
    let rec = appendix_a1_limit(&LIMIT_SAMPLES).unwrap();
    for (i, s) in rec.s_values.iter().enumerate() {
        println!("s={s:<9} term1={:.10}  term2={:.12}", rec.term1_values[i], rec.term2_values[i]);
    }
    println!("term2 → {:.15}  (π⁴/24 = {PI_FOURTH_OVER_24:.15})", rec.term2_extrapolated);
    println!("term1 ~ s^-{:.4}", rec.term1_growth_exponent);

    let fit = pole_expansion(zeta_cosine_transform, 3, &[0.05, 0.1, 0.15, 0.2, 0.25]).unwrap();
    println!("Laurent coefficients [c₋₁, c₀, c₁]: {:?} (ill-conditioned: {})", fit.coeffs, fit.ill_conditioned);
}
