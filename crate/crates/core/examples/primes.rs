//! Prime log-sums: direct sieve vs Möbius inversion, and a divergent family.
use ramellin::primes::{a_n_formal, build_tables, divergence_diagnostic, prime_count, prime_log_sum_direct, prime_log_sum_mobius};

fn main() {
    let t = build_tables(1_000_000).unwrap();
    println!("π(10⁶) = {}", prime_count(&t, 1e6).unwrap());
    for s in [2.0, 3.0, 4.0] {
        let d = prime_log_sum_direct(&t, s, 1_000_000).unwrap();
        let m = prime_log_sum_mobius(s, 30).unwrap();
        println!(
            "Σ log p / p^{s}: direct {:.15} (tail ≤ {:.1e})  Möbius {:.15}  diff {:.1e}",
            d.value,
            d.tail_estimate,
            m.value,
            (d.value - m.value).abs()
        );
    }
    match a_n_formal(0, 30) {
        Ok(r) => println!("A_0 = {}", r.value),
        Err(e) => println!("A_0: {e}"),
    }
    let div = divergence_diagnostic(&t, 1, 1_000_000).unwrap();
    for (n, v) in &div.checkpoints {
        println!("Σ_(p ≤ {n}) p log p = {v:.6e}");
    }
}
