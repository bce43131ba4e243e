//! Sieves, prime counting and the prime log-sums Σ_p log p / p^s.
//!
//! The Möbius form used for s > 1 comes from inverting
//! -ζ'/ζ(s) = Σ_n Λ(n) n^(-s) = Σ_k Σ_p log p · p^(-ks):
//!
//! ```text
//! Σ_p log p / p^s = Σ_k μ(k)·(-ζ'/ζ)(ks)
//!                 = Σ_k μ(k)/(ks - 1) + f(s),   f(s) = -Σ_k μ(k){ζ'(ks)/ζ(ks) + 1/(ks - 1)}
//! ```
//!
//! Truncated at the same K the two μ(k)/(ks - 1) pieces cancel exactly, so the
//! truncation error is that of the ζ'/ζ series alone, ~ log 2 · 2^(-(K+1)s).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::specfun::{self, CompensatedSum, EvalFlags, EvalResult};
use crate::series::{zeta_resummed, Parity};

/// Largest table the sieve will build.
pub const MAX_LIMIT: u64 = 1_000_000_000;
/// Above this the primes come from a segmented sieve and μ is only tabulated
/// up to here.
pub const LINEAR_SIEVE_LIMIT: u64 = 10_000_000;
const SEGMENT: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PrimesError {
    #[error("limit {0} exceeds the resource guard of {MAX_LIMIT}")]
    ResourceGuard(u64),
    #[error("out of domain: {0}")]
    OutOfDomain(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NumberTheoryTables {
    pub limit_n: u64,
    pub primes: Vec<u64>,
    /// μ(k) at index k; index 0 is unused. Covers 1..=min(limit_n, LINEAR_SIEVE_LIMIT).
    pub mobius: Vec<i8>,
    /// (x, π(x)) at powers of ten and at limit_n.
    pub pi_checkpoints: Vec<(u64, u64)>,
}

/// Linear sieve: primes and μ up to n.
fn linear_sieve(n: usize) -> (Vec<u64>, Vec<i8>) {
    let mut mu = vec![0i8; n + 1];
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    if n >= 1 {
        mu[1] = 1;
    }
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            mu[i] = -1;
        }
        for &p in &primes {
            let p = p as usize;
            let ip = i * p;
            if ip > n {
                break;
            }
            composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    (primes, mu)
}

/// Primes in [lo, hi) using base primes up to √hi.
fn sieve_segment(lo: u64, hi: u64, base: &[u64]) -> Vec<u64> {
    let mut is_prime = vec![true; (hi - lo) as usize];
    for &p in base {
        if p * p >= hi {
            break;
        }
        let start = (p * p).max(lo.div_ceil(p) * p);
        let mut m = start;
        while m < hi {
            is_prime[(m - lo) as usize] = false;
            m += p;
        }
    }
    is_prime
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| lo + i as u64)
        .filter(|&x| x >= 2)
        .collect()
}

pub fn build_tables(limit_n: u64) -> Result<NumberTheoryTables, PrimesError> {
    if limit_n < 2 {
        return Err(PrimesError::OutOfDomain(format!("limit_n = {limit_n} < 2")));
    }
    if limit_n > MAX_LIMIT {
        return Err(PrimesError::ResourceGuard(limit_n));
    }
    let linear = limit_n.min(LINEAR_SIEVE_LIMIT);
    let (mut primes, mobius) = linear_sieve(linear as usize);
    if limit_n > linear {
        let root = (limit_n as f64).sqrt() as u64 + 1;
        let base: Vec<u64> = primes.iter().copied().take_while(|&p| p <= root).collect();
        let starts: Vec<u64> = (linear + 1..=limit_n).step_by(SEGMENT as usize).collect();
        let segments: Vec<Vec<u64>> = starts
            .par_iter()
            .map(|&lo| sieve_segment(lo, (lo + SEGMENT).min(limit_n + 1), &base))
            .collect();
        for seg in segments {
            primes.extend(seg);
        }
    }
    let mut pi_checkpoints = Vec::new();
    let mut x = 10u64;
    while x < limit_n {
        pi_checkpoints.push((x, primes.partition_point(|&p| p <= x) as u64));
        x *= 10;
    }
    pi_checkpoints.push((limit_n, primes.len() as u64));
    Ok(NumberTheoryTables {
        limit_n,
        primes,
        mobius,
        pi_checkpoints,
    })
}

/// μ(k) by trial division.
pub fn mobius(k: u64) -> i8 {
    if k == 0 {
        return 0;
    }
    let mut n = k;
    let mut sign = 1i8;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

impl NumberTheoryTables {
    pub fn mobius_at(&self, k: u64) -> i8 {
        if (k as usize) < self.mobius.len() {
            self.mobius[k as usize]
        } else {
            mobius(k)
        }
    }

    /// Σ_{k ≤ K} μ(k).
    pub fn mertens(&self, k: u64) -> i64 {
        (1..=k).map(|i| self.mobius_at(i) as i64).sum()
    }
}

pub fn prime_count(tables: &NumberTheoryTables, x: f64) -> Result<u64, PrimesError> {
    if !(x >= 0.0) || x > tables.limit_n as f64 {
        return Err(PrimesError::OutOfDomain(format!(
            "x = {x} outside [0, {}]",
            tables.limit_n
        )));
    }
    let x = x.floor() as u64;
    Ok(tables.primes.partition_point(|&p| p <= x) as u64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimeSumResult {
    pub value: f64,
    pub primes_used: u64,
    pub mobius_terms_used: u64,
    /// +∞ when `divergent`.
    pub tail_estimate: f64,
    pub divergent: bool,
    /// Ingredient of a formal (non-convergent) identity; never asserted.
    pub formal: bool,
    /// Partial sums at the reporting checkpoints, (up_to, value).
    pub checkpoints: Vec<(u64, f64)>,
    pub growth_exponent: Option<f64>,
    pub notes: String,
}

impl PrimeSumResult {
    fn new(value: f64) -> Self {
        PrimeSumResult {
            value,
            primes_used: 0,
            mobius_terms_used: 0,
            tail_estimate: 0.0,
            divergent: false,
            formal: false,
            checkpoints: Vec::new(),
            growth_exponent: None,
            notes: String::new(),
        }
    }

    fn mark_divergent(mut self) -> Self {
        self.divergent = true;
        self.tail_estimate = f64::INFINITY;
        self
    }
}

fn check_up_to(tables: &NumberTheoryTables, up_to: u64) -> Result<(), PrimesError> {
    if up_to > tables.limit_n {
        return Err(PrimesError::OutOfDomain(format!(
            "up_to = {up_to} exceeds the table limit {}",
            tables.limit_n
        )));
    }
    Ok(())
}

/// Checkpoints 10, 100, ... below `up_to`, then `up_to` itself.
fn decade_checkpoints(up_to: u64, from: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut c = from;
    while c < up_to {
        out.push(c);
        c *= 10;
    }
    out.push(up_to);
    out
}

/// Σ_{p ≤ up_to} term(p) with partial sums recorded at `marks`.
fn accumulate<F: Fn(u64) -> f64>(
    tables: &NumberTheoryTables,
    up_to: u64,
    marks: &[u64],
    term: F,
) -> (f64, u64, Vec<(u64, f64)>) {
    let mut acc = CompensatedSum::new();
    let mut used = 0u64;
    let mut out = Vec::with_capacity(marks.len());
    let mut next = 0;
    for &p in tables.primes.iter().take_while(|&&p| p <= up_to) {
        while next < marks.len() && p > marks[next] {
            out.push((marks[next], acc.value()));
            next += 1;
        }
        acc.add(term(p));
        used += 1;
    }
    while next < marks.len() {
        out.push((marks[next], acc.value()));
        next += 1;
    }
    (acc.value(), used, out)
}

/// Σ_{p ≤ up_to} log p / p^s. For s > 1 the tail is bounded by
/// ∫_N^∞ log t · t^(-s) dt = N^(1-s)(log N/(s-1) + 1/(s-1)²).
pub fn prime_log_sum_direct(
    tables: &NumberTheoryTables,
    s: f64,
    up_to: u64,
) -> Result<PrimeSumResult, PrimesError> {
    check_up_to(tables, up_to)?;
    let (value, used, _) = accumulate(tables, up_to, &[], |p| {
        let pf = p as f64;
        pf.ln() * pf.powf(-s)
    });
    let mut r = PrimeSumResult::new(value);
    r.primes_used = used;
    if s > 1.0 {
        let n = up_to.max(2) as f64;
        r.tail_estimate = n.powf(1.0 - s) * (n.ln() / (s - 1.0) + 1.0 / ((s - 1.0) * (s - 1.0)));
        Ok(r)
    } else {
        r.notes = format!("Σ_p log p / p^{s} diverges for s ≤ 1; partial sum only");
        Ok(r.mark_divergent())
    }
}

/// ζ'(x)/ζ(x) for x > 1.
fn zeta_log_derivative(x: f64) -> f64 {
    specfun::zeta_derivative(x, 1).value / specfun::riemann_zeta(x).value
}

/// f(s) = -Σ_{k ≤ K} μ(k){ζ'(ks)/ζ(ks) + 1/(ks - 1)}.
///
/// TRUNCATED is set when the last ζ'/ζ component still exceeds 1e-12; the
/// 1/(ks - 1) component does not decay on its own and is not part of that
/// test (it cancels against the explicit Möbius sum in the prime log-sum).
pub fn f_analytic(s: f64, k_max: u64) -> EvalResult {
    f_analytic_masked(s, k_max, mobius)
}

/// `f_analytic` with a caller-supplied μ, e.g. to mask terms.
pub fn f_analytic_masked<M: Fn(u64) -> i8>(s: f64, k_max: u64, mu: M) -> EvalResult {
    if !(s > 1.0) || k_max == 0 {
        return EvalResult::out_of_domain();
    }
    let mut acc = CompensatedSum::new();
    let mut last = 0.0;
    for k in 1..=k_max {
        let m = mu(k);
        if m == 0 {
            continue;
        }
        let ks = k as f64 * s;
        let ld = zeta_log_derivative(ks);
        acc.add(-(m as f64) * (ld + 1.0 / (ks - 1.0)));
        last = ld.abs();
    }
    let tail = 2f64.ln() * 2f64.powf(-((k_max + 1) as f64) * s) / (1.0 - 2f64.powf(-s));
    let flags = if last >= 1e-12 {
        EvalFlags::TRUNCATED
    } else {
        EvalFlags::empty()
    };
    EvalResult::new(acc.value(), tail + 1e-15 * acc.value().abs()).with_flags(flags)
}

/// Σ_{k ≤ K} μ(k)/(sk - 1) + f(s, K).
pub fn prime_log_sum_mobius(s: f64, k_max: u64) -> Result<PrimeSumResult, PrimesError> {
    if !(s > 1.0) {
        return Err(PrimesError::OutOfDomain(format!(
            "the Möbius formula needs s > 1, got s = {s}"
        )));
    }
    let f = f_analytic(s, k_max);
    let mut acc = CompensatedSum::new();
    let mut used = 0;
    for k in 1..=k_max {
        let m = mobius(k);
        if m != 0 {
            acc.add(m as f64 / (s * k as f64 - 1.0));
            used += 1;
        }
    }
    acc.add(f.value);
    let mut r = PrimeSumResult::new(acc.value());
    r.mobius_terms_used = used;
    r.tail_estimate = f.abs_err;
    Ok(r)
}

/// cₙ = ζ(4n + 2)(-1)ⁿ/(2n)!.
pub fn c_n(n: u32) -> EvalResult {
    let z = specfun::riemann_zeta(4.0 * n as f64 + 2.0);
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let fact = specfun::gamma(2.0 * n as f64 + 1.0);
    if fact.value.is_finite() {
        EvalResult::new(sign * z.value / fact.value, 0.0).with_rel_err(z.rel_err() + fact.rel_err() + f64::EPSILON)
    } else {
        let lv = z.value.ln() - specfun::log_gamma(2.0 * n as f64 + 1.0).value;
        EvalResult::new(sign * lv.exp(), 0.0).with_rel_err(1e-13)
    }
}

/// The Möbius part Σ_{k ≤ K} μ(k)/((1 - 2n)k - 1) of Aₙ, labelled formal:
/// the companion f(1 - 2n) is outside f's domain s > 1 and is not evaluated.
pub fn a_n_formal(n: u32, k_max: u64) -> Result<PrimeSumResult, PrimesError> {
    if n == 0 {
        return Err(PrimesError::OutOfDomain(
            "n = 0: the k = 1 denominator (1 - 2n)k - 1 vanishes".into(),
        ));
    }
    let s = 1.0 - 2.0 * n as f64;
    let mut acc = CompensatedSum::new();
    let mut used = 0;
    for k in 1..=k_max {
        let m = mobius(k);
        if m != 0 {
            acc.add(m as f64 / (s * k as f64 - 1.0));
            used += 1;
        }
    }
    let mut r = PrimeSumResult::new(acc.value()).mark_divergent();
    r.mobius_terms_used = used;
    r.formal = true;
    r.notes = format!(
        "FORMAL: f({s}) not evaluable (outside s > 1); value is the Möbius partial sum only"
    );
    Ok(r)
}

/// Σ_{p ≤ up_to} (log p / p)·K_even(p), K_even(y) = Σ_m cos(y/m²)/m², with
/// partial sums at 10², 10³, 10⁴, 10⁵ (those not beyond `up_to`).
pub fn theorem22_lhs(
    tables: &NumberTheoryTables,
    up_to: u64,
    m_terms: usize,
) -> Result<PrimeSumResult, PrimesError> {
    check_up_to(tables, up_to)?;
    let marks: Vec<u64> = [100u64, 1_000, 10_000, 100_000]
        .into_iter()
        .filter(|&c| c <= up_to)
        .collect();
    let (value, used, checkpoints) = accumulate(tables, up_to, &marks, |p| {
        let pf = p as f64;
        pf.ln() / pf * zeta_resummed(Parity::Even, pf, m_terms).value
    });
    let mut r = PrimeSumResult::new(value);
    r.primes_used = used;
    r.formal = true;
    r.tail_estimate = match checkpoints.as_slice() {
        [.., a, b] => (b.1 - a.1).abs(),
        _ => f64::NAN,
    };
    let trend: Vec<String> = checkpoints.iter().map(|(x, v)| format!("{x}:{v}")).collect();
    r.notes = format!("checkpoints [{}]", trend.join(", "));
    r.checkpoints = checkpoints;
    Ok(r)
}

/// Σ_{p ≤ N} log p · p^(2n-1) at decade checkpoints, with the fitted growth
/// exponent of the partial sums in N (≈ 2n).
pub fn divergence_diagnostic(
    tables: &NumberTheoryTables,
    n: u32,
    up_to: u64,
) -> Result<PrimeSumResult, PrimesError> {
    if n == 0 {
        return Err(PrimesError::OutOfDomain("n must be ≥ 1".into()));
    }
    check_up_to(tables, up_to)?;
    let e = 2.0 * n as f64 - 1.0;
    let marks = decade_checkpoints(up_to, 10);
    let (value, used, checkpoints) = accumulate(tables, up_to, &marks, |p| {
        let pf = p as f64;
        pf.ln() * pf.powf(e)
    });
    let mut r = PrimeSumResult::new(value).mark_divergent();
    r.primes_used = used;
    r.formal = true;
    r.growth_exponent = fit_slope(&checkpoints);
    r.notes = format!(
        "Σ_p log p·p^{e} grows without bound; fitted exponent {:?}",
        r.growth_exponent
    );
    r.checkpoints = checkpoints;
    Ok(r)
}

/// Least-squares slope of log(value) against log(x).
fn fit_slope(points: &[(u64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(_, v)| *v > 0.0)
        .map(|&(x, v)| ((x as f64).ln(), v.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Some(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tables() {
        let t = build_tables(10).unwrap();
        assert_eq!(t.primes, vec![2, 3, 5, 7]);
        assert_eq!(&t.mobius[1..], &[1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
        let t = build_tables(100).unwrap();
        assert_eq!(t.primes.len(), 25);
        assert_eq!(t.mobius_at(30), -1);
    }

    #[test]
    fn prime_counts() {
        let t = build_tables(1_000_000).unwrap();
        assert_eq!(prime_count(&t, 1.0).unwrap(), 0);
        assert_eq!(prime_count(&t, 2.0).unwrap(), 1);
        assert_eq!(prime_count(&t, 1e6).unwrap(), 78_498);
        assert!(prime_count(&t, 2e6).is_err());
    }

    #[test]
    fn segmented_matches_linear() {
        let t = build_tables(LINEAR_SIEVE_LIMIT + 3_000_000).unwrap();
        let (lin, _) = linear_sieve((LINEAR_SIEVE_LIMIT + 3_000_000) as usize);
        assert_eq!(t.primes, lin);
        assert_eq!(t.mobius.len() as u64, LINEAR_SIEVE_LIMIT + 1);
    }

    #[test]
    fn resource_guard() {
        assert!(matches!(build_tables(MAX_LIMIT + 1), Err(PrimesError::ResourceGuard(_))));
    }

    #[test]
    fn direct_sums() {
        let t = build_tables(1000).unwrap();
        let r = prime_log_sum_direct(&t, 2.0, 10).unwrap();
        assert!((r.value - 0.399_444_795_733_121_76).abs() < 1e-15);
        assert_eq!(r.primes_used, 4);
        let r = prime_log_sum_direct(&t, 1.0, 1000).unwrap();
        assert!(r.divergent && r.tail_estimate.is_infinite());
    }

    #[test]
    fn mobius_formula_k1() {
        let r = prime_log_sum_mobius(3.0, 1).unwrap();
        let f = f_analytic(3.0, 1).value;
        assert!((r.value - (0.5 + f)).abs() < 1e-15);
        assert!(prime_log_sum_mobius(1.0, 5).is_err());
    }

    #[test]
    fn f_analytic_masked_to_zero() {
        let r = f_analytic_masked(2.0, 30, |_| 0);
        assert_eq!(r.value, 0.0);
        assert!(f_analytic(1.0, 3).flags.contains(EvalFlags::OUT_OF_DOMAIN));
        assert!(!f_analytic(3.0, 30).flags.contains(EvalFlags::TRUNCATED));
    }

    #[test]
    fn mobius_formula_matches_all_primes() {
        // mpmath: Σ_p log p / p³ and Σ_p log p / p² over all primes
        let r = prime_log_sum_mobius(3.0, 30).unwrap();
        assert!((r.value - 0.150_757_555_543_950_42).abs() < 1e-14);
        let r = prime_log_sum_mobius(2.0, 40).unwrap();
        assert!((r.value - 0.493_091_109_368_764_46).abs() < 1e-13);
    }

    #[test]
    fn c_n_values() {
        assert!((c_n(0).value - 1.644_934_066_848_226_4).abs() < 1e-15);
        assert!((c_n(1).value + 0.508_671_530_992_224_57).abs() < 1e-15);
        // |c₅/c₄| = ζ(22)/ζ(18) · 8!/10! ≈ 1/90: factorial decay
        let ratio = c_n(5).value.abs() / c_n(4).value.abs();
        let zeta_ratio = 1.000_000_238_450_502_7 / 1.000_003_817_293_265;
        assert!((ratio - zeta_ratio / 90.0).abs() < 1e-15);
        for n in 0..10 {
            assert_eq!(c_n(n).value.is_sign_negative(), n % 2 == 1);
        }
    }

    #[test]
    fn a_n_formal_values() {
        assert!(a_n_formal(0, 10).is_err());
        let r = a_n_formal(1, 10).unwrap();
        assert!((r.value - 0.141_233_766_233_766_23).abs() < 1e-15);
        assert!(r.formal && r.divergent);
    }

    #[test]
    fn theorem22_small() {
        let t = build_tables(100_000).unwrap();
        let r = theorem22_lhs(&t, 10, 0).unwrap();
        assert!((r.value - 0.446_570_651_106_067_14).abs() < 1e-14);
        let r = theorem22_lhs(&t, 100_000, 0).unwrap();
        assert_eq!(r.checkpoints.len(), 4);
    }

    #[test]
    fn divergence_growth() {
        let t = build_tables(10_000).unwrap();
        let r = divergence_diagnostic(&t, 1, 10).unwrap();
        assert!((r.value - 26.350_691_832_681_915).abs() < 1e-12);
        let r = divergence_diagnostic(&t, 1, 10_000).unwrap();
        let at = |x: u64| r.checkpoints.iter().find(|c| c.0 == x).unwrap().1;
        assert!(at(10_000) > 10.0 * at(1_000));
        assert!((r.growth_exponent.unwrap() - 2.0).abs() < 0.2);
    }
}
