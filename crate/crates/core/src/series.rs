//! Alternating exponential-type series f(x) = Σ (-1)^n φ(n) x^n / n! and the
//! odd, even and scaled variants built from them.
//!
//! Each kernel is evaluated either by its Maclaurin series or by a closed
//! form. The Maclaurin path is exact in principle but its terms grow like
//! y^m/m! before they decay, so for y beyond a few units the partial sums
//! cancel catastrophically; the closed forms stay stable for every y.
//!
//! # Zeta kernels
//!
//! With φ(n) = ζ(2n + 2) the odd and even kernels are
//!
//! ```text
//! K_odd(y)  = Σ_n (-1)^n ζ(4n + 4) y^(2n+1) / (2n+1)!
//! K_even(y) = Σ_n (-1)^n ζ(4n + 2) y^(2n)   / (2n)!
//! ```
//!
//! Writing ζ(4n + 4) = Σ_m m^(-4n-4) and exchanging the two sums (the double
//! series converges absolutely for every y because Σ_n y^(2n+1)/(2n+1)! does)
//! gives the resummed forms
//!
//! ```text
//! K_odd(y)  = Σ_{m≥1} sin(y/m²) / m²
//! K_even(y) = Σ_{m≥1} cos(y/m²) / m²
//! ```
//!
//! The m-sum is taken directly up to M ≥ 2√y and the remainder m > M is
//! folded back into a short Taylor series in y with Hurwitz-zeta
//! coefficients, Σ_j (-1)^j y^(2j+1)/(2j+1)! ζ(4j + 4, M + 1), which
//! converges quickly because y/(M+1)² ≤ 1/4.

use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::specfun::{self, format_num, CompensatedSum, EvalFlags, EvalResult};

/// Ratio of the largest Maclaurin term to the result that trips the
/// cancellation guard.
pub const CANCELLATION_RATIO: f64 = 1e12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("invalid coefficient function: {0}")]
    InvalidPhi(String),
    #[error("invalid kernel: {0}")]
    InvalidKernel(String),
}

/// The coefficient function φ of the series, with its continuation to real
/// arguments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum PhiSpec {
    /// φ(t) = c^t.
    Power { c: f64 },
    /// φ(t) = a^t Γ(v + t)/Γ(v), the binomial series of (1 + a x)^(-v).
    Binomial { a: f64, v: f64 },
    /// φ(t) = ζ(2t + 2).
    Zeta,
    /// Only defined at odd integers: φ(2k+1)(-1)^k = (c)_{2k+1} ζ(c + 2k + 1, a).
    HurwitzOdd { c: f64, a: f64 },
}

impl PhiSpec {
    pub fn validate(&self) -> Result<(), SeriesError> {
        let bad = |msg: &str| Err(SeriesError::InvalidPhi(msg.to_string()));
        match *self {
            PhiSpec::Power { c } if !(c > 0.0 && c.is_finite()) => bad("Power needs c > 0"),
            PhiSpec::Binomial { a, v } if !(a > 0.0 && v > 0.0 && a.is_finite() && v.is_finite()) => {
                bad("Binomial needs a > 0 and v > 0")
            }
            PhiSpec::HurwitzOdd { c, a } if !(c > 1.0 && a > 1.0) => {
                bad("HurwitzOdd needs c > 1 and a > 1")
            }
            _ => Ok(()),
        }
    }

    /// The continuation φ(t).
    pub fn eval_at(&self, t: f64) -> EvalResult {
        if self.validate().is_err() || !t.is_finite() {
            return EvalResult::out_of_domain();
        }
        match *self {
            PhiSpec::Power { c } => EvalResult::new(c.powf(t), f64::EPSILON * c.powf(t) * (1.0 + (t * c.ln()).abs())),
            PhiSpec::Binomial { a, v } => {
                if v + t <= 0.0 && v + t == (v + t).floor() {
                    return EvalResult::out_of_domain();
                }
                if v + t <= 0.0 {
                    // Γ(v + t) continues through the reflection formula but the
                    // kernels never need it; keep the documented domain t > -v.
                    return EvalResult::out_of_domain();
                }
                if v + t < 150.0 && v < 150.0 {
                    let num = specfun::gamma(v + t);
                    let den = specfun::gamma(v);
                    EvalResult::new(num.value / den.value, 0.0)
                        .with_flags(num.flags | den.flags)
                        .scale(a.powf(t))
                        .with_rel_err(num.rel_err() + den.rel_err())
                } else {
                    let lv = t * a.ln() + specfun::log_gamma(v + t).value - specfun::log_gamma(v).value;
                    let val = lv.exp();
                    EvalResult::new(val, val * 8.0 * f64::EPSILON * lv.abs())
                }
            }
            PhiSpec::Zeta => {
                if t == -0.5 {
                    return EvalResult::out_of_domain();
                }
                specfun::riemann_zeta(2.0 * t + 2.0)
            }
            PhiSpec::HurwitzOdd { c, a } => {
                if t < 1.0 || t != t.floor() || (t as i64) % 2 == 0 {
                    return EvalResult::out_of_domain();
                }
                let m = t as u32;
                let sign = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
                specfun::pochhammer(c, m)
                    .mul(specfun::hurwitz_zeta(c + t, a))
                    .scale(sign)
            }
        }
    }
}

/// Which Maclaurin indices enter the kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Parity {
    /// Σ (-1)^n φ(n) y^n / n!
    Full,
    /// Σ (-1)^n φ(2n+1) y^(2n+1) / (2n+1)!
    Odd,
    /// Σ (-1)^n φ(2n) y^(2n) / (2n)!
    Even,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Full => "FULL",
            Parity::Odd => "ODD",
            Parity::Even => "EVEN",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Strategy {
    Maclaurin,
    ClosedForm,
    /// Closed form whenever one exists for the kernel, Maclaurin otherwise.
    Auto,
}

/// A concrete integrand g(x) = Σ_n (±) φ(m_n) y^(m_n) / m_n! with y = x^k / p.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesKernel {
    pub phi: PhiSpec,
    pub parity: Parity,
    pub scale_p: f64,
    pub exponent_k: f64,
    pub strategy: Strategy,
    pub max_terms: usize,
    pub term_tol: f64,
}

impl SeriesKernel {
    pub fn new(phi: PhiSpec, parity: Parity) -> Result<Self, SeriesError> {
        let kernel = SeriesKernel {
            phi,
            parity,
            scale_p: 1.0,
            exponent_k: 1.0,
            strategy: Strategy::Auto,
            max_terms: 200,
            term_tol: 1e-16,
        };
        kernel.validate()?;
        Ok(kernel)
    }

    /// Replace x by x^k / p.
    pub fn scaled(mut self, p: f64, k: f64) -> Result<Self, SeriesError> {
        self.scale_p = p;
        self.exponent_k = k;
        self.validate()?;
        Ok(self)
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn validate(&self) -> Result<(), SeriesError> {
        self.phi.validate()?;
        if !(self.scale_p > 0.0 && self.exponent_k > 0.0) {
            return Err(SeriesError::InvalidKernel("p and k must be positive".into()));
        }
        if self.parity == Parity::Full && (self.scale_p != 1.0 || self.exponent_k != 1.0) {
            return Err(SeriesError::InvalidKernel(
                "FULL parity is only defined with p = k = 1".into(),
            ));
        }
        if matches!(self.phi, PhiSpec::HurwitzOdd { .. }) && self.parity != Parity::Odd {
            return Err(SeriesError::InvalidKernel(
                "HurwitzOdd coefficients exist only for ODD parity".into(),
            ));
        }
        if self.max_terms == 0 || !(self.term_tol > 0.0) {
            return Err(SeriesError::InvalidKernel("max_terms and term_tol must be positive".into()));
        }
        Ok(())
    }

    /// The series variable y = x^k / p.
    pub fn reduced_variable(&self, x: f64) -> f64 {
        if self.exponent_k == 1.0 {
            x / self.scale_p
        } else {
            x.powf(self.exponent_k) / self.scale_p
        }
    }

    /// Exponent ℓ of the leading behaviour g(x) ~ C x^ℓ as x → 0.
    pub fn small_x_order(&self) -> f64 {
        match self.parity {
            Parity::Full | Parity::Even => 0.0,
            Parity::Odd => self.exponent_k,
        }
    }

    /// Coefficient C of the leading behaviour g(x) ~ C x^ℓ as x → 0.
    pub fn small_x_coefficient(&self) -> f64 {
        match self.parity {
            Parity::Full | Parity::Even => self.phi.eval_at(0.0).value,
            Parity::Odd => self.phi.eval_at(1.0).value / self.scale_p,
        }
    }

    pub fn has_closed_form(&self) -> bool {
        match self.phi {
            PhiSpec::Power { .. } | PhiSpec::Binomial { .. } => true,
            PhiSpec::Zeta => self.parity != Parity::Full,
            PhiSpec::HurwitzOdd { .. } => self.parity == Parity::Odd,
        }
    }
}

/// Sequential generator of r_m = φ(m) y^m / m!, with the factorial-type part
/// carried recursively so that no intermediate overflows.
struct RawTerms {
    phi: PhiSpec,
    y: f64,
    m: u32,
    factor: f64,
}

impl RawTerms {
    fn new(phi: PhiSpec, y: f64) -> Self {
        RawTerms {
            phi,
            y,
            m: 0,
            factor: 1.0,
        }
    }

    /// Move to the next index; returns the recursive factor for it.
    fn advance(&mut self) {
        self.m += 1;
        let m = self.m as f64;
        self.factor *= match self.phi {
            PhiSpec::Power { c } => c * self.y / m,
            PhiSpec::Binomial { a, v } => a * self.y * (v + m - 1.0) / m,
            PhiSpec::Zeta => self.y / m,
            PhiSpec::HurwitzOdd { c, .. } => self.y * (c + m - 1.0) / m,
        };
    }

    /// r_m at the current index.
    fn current(&self) -> f64 {
        if self.factor == 0.0 {
            return 0.0;
        }
        match self.phi {
            PhiSpec::Power { .. } | PhiSpec::Binomial { .. } => self.factor,
            PhiSpec::Zeta => specfun::riemann_zeta(2.0 * self.m as f64 + 2.0).value * self.factor,
            PhiSpec::HurwitzOdd { c, a } => {
                if self.m % 2 == 0 {
                    return f64::NAN;
                }
                let sign = if (self.m / 2) % 2 == 0 { 1.0 } else { -1.0 };
                sign * specfun::hurwitz_zeta(c + self.m as f64, a).value * self.factor
            }
        }
    }
}

/// The first `count` raw terms r_m = φ(m) y^m / m!, m = 0, 1, ...
pub fn raw_terms(phi: PhiSpec, y: f64, count: usize) -> Vec<f64> {
    let mut gen = RawTerms::new(phi, y);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        if i > 0 {
            gen.advance();
        }
        out.push(gen.current());
    }
    out
}

/// The first `count` signed terms of the kernel's Maclaurin series at x.
pub fn maclaurin_terms(kernel: &SeriesKernel, x: f64, count: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    let mut walker = TermWalker::new(kernel, kernel.reduced_variable(x));
    for _ in 0..count {
        out.push(walker.next_term());
    }
    out
}

struct TermWalker {
    gen: RawTerms,
    parity: Parity,
    n: usize,
    started: bool,
}

impl TermWalker {
    fn new(kernel: &SeriesKernel, y: f64) -> Self {
        TermWalker {
            gen: RawTerms::new(kernel.phi, y),
            parity: kernel.parity,
            n: 0,
            started: false,
        }
    }

    fn next_term(&mut self) -> f64 {
        let target = match self.parity {
            Parity::Full => self.n as u32,
            Parity::Odd => 2 * self.n as u32 + 1,
            Parity::Even => 2 * self.n as u32,
        };
        if !self.started {
            self.started = true;
        }
        while self.gen.m < target {
            self.gen.advance();
        }
        let sign = if self.n % 2 == 0 { 1.0 } else { -1.0 };
        self.n += 1;
        sign * self.gen.current()
    }
}

fn maclaurin(kernel: &SeriesKernel, y: f64) -> EvalResult {
    let mut walker = TermWalker::new(kernel, y);
    let mut acc = CompensatedSum::new();
    let mut max_term: f64 = 0.0;
    let mut abs_sum = 0.0;
    let mut small_run = 0;
    let mut last = 0.0;
    let mut flags = EvalFlags::empty();
    let mut finished = false;
    for _ in 0..kernel.max_terms {
        let term = walker.next_term();
        if !term.is_finite() {
            return EvalResult {
                value: f64::NAN,
                abs_err: f64::INFINITY,
                flags: EvalFlags::CANCELLATION | EvalFlags::TRUNCATED,
            };
        }
        acc.add(term);
        max_term = max_term.max(term.abs());
        abs_sum += term.abs();
        last = term.abs();
        if term.abs() < kernel.term_tol * (1.0 + acc.value().abs()) {
            small_run += 1;
            if small_run == 3 {
                finished = true;
                break;
            }
        } else {
            small_run = 0;
        }
    }
    let value = acc.value();
    if !finished {
        flags |= EvalFlags::TRUNCATED;
    }
    if max_term > 0.0 && (value == 0.0 || max_term / value.abs() > CANCELLATION_RATIO) {
        flags |= EvalFlags::CANCELLATION;
    }
    let abs_err = 2.0 * f64::EPSILON * abs_sum + if finished { 0.0 } else { last };
    EvalResult::new(value, abs_err).with_flags(flags)
}

/// Σ_{m≥1} sin(y/m²)/m² (Odd) or Σ_{m≥1} cos(y/m²)/m² (Even).
///
/// `min_direct` forces at least that many directly summed m-terms; the
/// remainder is resummed through Hurwitz zeta values either way.
pub fn zeta_resummed(parity: Parity, y: f64, min_direct: usize) -> EvalResult {
    if parity == Parity::Full || !(y >= 0.0) || !y.is_finite() {
        return EvalResult::out_of_domain();
    }
    let m_direct = min_direct.max((2.0 * y.sqrt()).ceil() as usize).max(4);
    let mut acc = CompensatedSum::new();
    for m in 1..=m_direct {
        let m2 = (m * m) as f64;
        let arg = y / m2;
        let trig = match parity {
            Parity::Odd => arg.sin(),
            _ => arg.cos(),
        };
        acc.add(trig / m2);
    }
    // m > M: Σ_j (-1)^j y^e/e! ζ(2e + 2, M + 1), e = 2j+1 (odd) or 2j (even)
    let shift = m_direct as f64 + 1.0;
    let mut e = match parity {
        Parity::Odd => 1u32,
        _ => 0u32,
    };
    let mut pw = if e == 1 { y } else { 1.0 };
    let mut sign = 1.0;
    let mut last = 0.0;
    for _ in 0..80 {
        let hz = specfun::hurwitz_zeta(2.0 * e as f64 + 2.0, shift).value;
        let term = sign * pw * hz;
        acc.add(term);
        last = term.abs();
        if last <= 1e-18 * acc.value().abs().max(1e-300) || pw == 0.0 {
            break;
        }
        pw *= y * y / (((e + 1) * (e + 2)) as f64);
        e += 2;
        sign = -sign;
    }
    let value = acc.value();
    let abs_err = last + 4.0 * f64::EPSILON * (m_direct as f64).sqrt() * value.abs().max(1e-3)
        + f64::EPSILON * y * 1.7;
    EvalResult::new(value, abs_err)
}

/// Closed-form evaluation of the kernel at x.
pub fn closed_form_kernel(kernel: &SeriesKernel, x: f64) -> EvalResult {
    if kernel.validate().is_err() || !(x >= 0.0) {
        return EvalResult::out_of_domain();
    }
    let y = kernel.reduced_variable(x);
    match (kernel.phi, kernel.parity) {
        (PhiSpec::Power { c }, parity) => {
            let arg = c * y;
            let (value, err) = match parity {
                Parity::Odd => (arg.sin(), f64::EPSILON * (1.0 + arg.abs())),
                Parity::Even => (arg.cos(), f64::EPSILON * (1.0 + arg.abs())),
                Parity::Full => {
                    let v = (-arg).exp();
                    (v, f64::EPSILON * v * (1.0 + arg))
                }
            };
            EvalResult::new(value, err)
        }
        (PhiSpec::Binomial { a, v }, parity) => {
            let ay = a * y;
            match parity {
                Parity::Full => {
                    let val = (-v * ay.ln_1p()).exp();
                    EvalResult::new(val, 4.0 * f64::EPSILON * val * (1.0 + v * ay.ln_1p()))
                }
                _ => {
                    // (1 + i a y)^(-v) on the principal branch
                    let modulus = (-0.5 * v * (ay * ay).ln_1p()).exp();
                    let angle = -v * ay.atan();
                    let value = match parity {
                        Parity::Odd => -modulus * angle.sin(),
                        _ => modulus * angle.cos(),
                    };
                    EvalResult::new(value, 4.0 * f64::EPSILON * modulus * (1.0 + v))
                }
            }
        }
        (PhiSpec::Zeta, parity) => zeta_resummed(parity, y, 0),
        (PhiSpec::HurwitzOdd { c, a }, Parity::Odd) => {
            if y >= a - 1.0 {
                return EvalResult::out_of_domain();
            }
            let lo = specfun::hurwitz_zeta(c, a - y);
            let hi = specfun::hurwitz_zeta(c, a + y);
            let value = 0.5 * (lo.value - hi.value);
            EvalResult::new(
                value,
                0.5 * (lo.abs_err + hi.abs_err) + f64::EPSILON * lo.value.abs(),
            )
            .with_flags(lo.flags | hi.flags)
        }
        _ => EvalResult::out_of_domain(),
    }
}

/// Evaluate the kernel at x with its configured strategy.
pub fn eval_kernel(kernel: &SeriesKernel, x: f64) -> EvalResult {
    if kernel.validate().is_err() || !(x >= 0.0) {
        return EvalResult::out_of_domain();
    }
    match kernel.strategy {
        Strategy::Maclaurin => maclaurin(kernel, kernel.reduced_variable(x)),
        Strategy::ClosedForm => closed_form_kernel(kernel, x),
        Strategy::Auto => {
            if kernel.has_closed_form() {
                let r = closed_form_kernel(kernel, x);
                if r.is_ok() {
                    return r;
                }
            }
            maclaurin(kernel, kernel.reduced_variable(x))
        }
    }
}

/// Element-wise AUTO evaluation, in input order.
pub fn kernel_table(kernel: &SeriesKernel, xs: &[f64]) -> Vec<(f64, EvalResult)> {
    let auto = kernel.with_strategy(Strategy::Auto);
    xs.iter().map(|&x| (x, eval_kernel(&auto, x))).collect()
}

/// Write a kernel table as CSV with columns `x,value,abs_err,flags`.
pub fn write_kernel_csv<W: Write>(rows: &[(f64, EvalResult)], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "value", "abs_err", "flags"])?;
    for (x, r) in rows {
        w.write_record([
            format_num(*x),
            format_num(r.value),
            format_num(r.abs_err),
            r.flags.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const ZETA2: f64 = 1.644_934_066_848_226_4;
    const ZETA4: f64 = 1.082_323_233_711_138_2;

    fn kernel(phi: PhiSpec, parity: Parity) -> SeriesKernel {
        SeriesKernel::new(phi, parity).unwrap()
    }

    #[test]
    fn sine_kernel_at_half_pi() {
        let k = kernel(PhiSpec::Power { c: 1.0 }, Parity::Odd).with_strategy(Strategy::Maclaurin);
        assert!((eval_kernel(&k, PI / 2.0).value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zeta_odd_small_x_slope() {
        let k = kernel(PhiSpec::Zeta, Parity::Odd);
        let x = 1e-4;
        for strategy in [Strategy::Maclaurin, Strategy::ClosedForm] {
            let v = eval_kernel(&k.with_strategy(strategy), x).value;
            assert!((v / x - ZETA4).abs() < 1e-8, "{strategy:?}");
        }
    }

    #[test]
    fn binomial_full_is_inverse_square() {
        let k = kernel(PhiSpec::Binomial { a: 1.0, v: 2.0 }, Parity::Full);
        assert!((eval_kernel(&k.with_strategy(Strategy::Maclaurin), 0.5).value - 1.0 / 2.25).abs() < 1e-14);
        // x = 1 is on the boundary of the series disc; only the closed form reaches it
        assert!((eval_kernel(&k, 1.0).value - 0.25).abs() < 1e-15);
        let mac = eval_kernel(&k.with_strategy(Strategy::Maclaurin), 1.0);
        assert!(mac.flags.contains(EvalFlags::TRUNCATED));
    }

    #[test]
    fn zeta_closed_form_at_zero() {
        let even = closed_form_kernel(&kernel(PhiSpec::Zeta, Parity::Even), 0.0);
        assert!((even.value - ZETA2).abs() < 1e-15);
        let odd = closed_form_kernel(&kernel(PhiSpec::Zeta, Parity::Odd), 0.0);
        assert_eq!(odd.value, 0.0);
    }

    #[test]
    fn zeta_closed_form_reference_values() {
        // mpmath nsum of Σ cos(x/m²)/m² and Σ sin(x/m²)/m²
        let even = kernel(PhiSpec::Zeta, Parity::Even);
        let odd = kernel(PhiSpec::Zeta, Parity::Odd);
        let cases = [
            (&even, 2.0, 0.194_758_736_308_348_2),
            (&even, 3.0, -0.419_806_914_064_032_4),
            (&even, 5.0, 0.736_415_550_082_774_9),
            (&even, 7.0, 1.063_949_869_627_459_5),
            (&even, 2.5, -0.208_808_467_215_306_6),
            (&even, 30.0, 0.292_461_085_919_135_9),
            (&odd, 1.0, 0.923_116_706_844_421_3),
            (&odd, 30.0, -0.622_467_111_414_987_2),
        ];
        for (k, x, want) in cases {
            let got = closed_form_kernel(k, x);
            assert!((got.value - want).abs() < 1e-13, "x={x} got {}", got.value);
            assert!(got.abs_err < 1e-12);
        }
    }

    #[test]
    fn binomial_dual_strategy() {
        let k = kernel(PhiSpec::Binomial { a: 2.0, v: 3.0 }, Parity::Odd);
        let mac = eval_kernel(&k.with_strategy(Strategy::Maclaurin), 0.1);
        let cf = closed_form_kernel(&k, 0.1);
        assert!((mac.value - cf.value).abs() < 1e-12);
    }

    #[test]
    fn hurwitz_kernel_sides_agree() {
        let k = kernel(PhiSpec::HurwitzOdd { c: 2.0, a: 3.0 }, Parity::Odd);
        let mac = eval_kernel(&k.with_strategy(Strategy::Maclaurin), 0.7);
        let cf = closed_form_kernel(&k, 0.7);
        assert!((mac.value - cf.value).abs() < 1e-12 * cf.value.abs());
        // beyond the margin the closed side is undefined
        assert!(closed_form_kernel(&k, 2.5).flags.contains(EvalFlags::OUT_OF_DOMAIN));
    }

    #[test]
    fn kernel_table_examples() {
        let sine = kernel(PhiSpec::Power { c: 1.0 }, Parity::Odd);
        for (_, r) in kernel_table(&sine, &[0.0, PI, 2.0 * PI]) {
            assert!(r.value.abs() <= 1e-12);
        }
        let rows = kernel_table(&kernel(PhiSpec::Zeta, Parity::Even), &[0.0]);
        assert!((rows[0].1.value - ZETA2).abs() < 1e-15);
        let bin = kernel(PhiSpec::Binomial { a: 1.0, v: 2.0 }, Parity::Full);
        let vals: Vec<f64> = kernel_table(&bin, &[0.0, 1.0, 3.0]).iter().map(|r| r.1.value).collect();
        for (got, want) in vals.iter().zip([1.0, 0.25, 0.0625]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn cancellation_guard_trips_at_thirty() {
        let k = kernel(PhiSpec::Zeta, Parity::Even);
        let mac = eval_kernel(&k.with_strategy(Strategy::Maclaurin), 30.0);
        assert!(mac.flags.contains(EvalFlags::CANCELLATION));
        let auto = eval_kernel(&k, 30.0);
        let cf = closed_form_kernel(&k, 30.0);
        assert!(!auto.flags.contains(EvalFlags::CANCELLATION));
        assert!((auto.value - cf.value).abs() <= 1e-10);
    }

    #[test]
    fn invalid_kernels_are_rejected() {
        assert!(SeriesKernel::new(PhiSpec::Power { c: -1.0 }, Parity::Odd).is_err());
        assert!(kernel(PhiSpec::Zeta, Parity::Full).scaled(2.0, 1.0).is_err());
        assert!(SeriesKernel::new(PhiSpec::HurwitzOdd { c: 2.0, a: 2.0 }, Parity::Even).is_err());
        let k = kernel(PhiSpec::Zeta, Parity::Odd);
        assert!(eval_kernel(&k, -1.0).flags.contains(EvalFlags::OUT_OF_DOMAIN));
    }

    #[test]
    fn phi_continuations() {
        let bin = PhiSpec::Binomial { a: 2.0, v: 3.0 };
        // a^t Γ(v+t)/Γ(v) at t = -0.5
        let want = 2f64.powf(-0.5) * 1.329_340_388_179_137 / 2.0;
        assert!((bin.eval_at(-0.5).value - want).abs() < 1e-14);
        assert!(bin.eval_at(-3.0).flags.contains(EvalFlags::OUT_OF_DOMAIN));
        assert!(PhiSpec::Zeta.eval_at(-0.5).flags.contains(EvalFlags::OUT_OF_DOMAIN));
        assert!((PhiSpec::Zeta.eval_at(0.0).value - ZETA2).abs() < 1e-15);
        let hz = PhiSpec::HurwitzOdd { c: 2.0, a: 2.0 };
        assert!(hz.eval_at(-0.3).flags.contains(EvalFlags::OUT_OF_DOMAIN));
        // φ(3)(-1)^1 = (2)_3 ζ(5, 2)
        let want = -24.0 * (1.036_927_755_143_369_9 - 1.0);
        assert!((hz.eval_at(3.0).value - want).abs() < 1e-13);
    }

    #[test]
    fn csv_layout() {
        let k = kernel(PhiSpec::Binomial { a: 1.0, v: 2.0 }, Parity::Full);
        let rows = kernel_table(&k, &[0.0, 1.0]);
        let mut buf = Vec::new();
        write_kernel_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("x,value,abs_err,flags"));
        assert!(lines.next().unwrap().starts_with("0,1,"));
        assert!(lines.next().unwrap().starts_with("1,0.25,"));
    }
}
