//! Analytic right-hand sides, the s → 0 limit analysis, and the verification
//! harness that compares them with quadrature / summation left-hand sides.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use indexmap::IndexMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::mellin::{self, MellinError, QuadratureConfig};
use crate::primes::{self, NumberTheoryTables};
use crate::series::{Parity, PhiSpec, SeriesKernel};
use crate::specfun::{self, EvalFlags, EvalResult};

pub const PI_CUBED_OVER_12: f64 = 2.583_856_390_024_985;
pub const PI_FOURTH_OVER_24: f64 = 4.058_712_126_416_768;
pub const DEFAULT_PRIMES_LIMIT: u64 = 1_000_000;
/// Sample points for the s → 0 analysis; small enough that the constant
/// term of the ζ' piece does not bias the fitted exponent.
pub const LIMIT_SAMPLES: [f64; 5] = [0.01, 0.005, 0.0025, 0.00125, 0.000625];

#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IdentityId {
    RMT_1_2,
    BINOMIAL_1_7,
    SIN_2_3,
    COS_2_4,
    SINE_MASTER_2_1,
    COSINE_MASTER_2_2,
    ZETA_SINE_2_5,
    ZETA_COSINE_2_6,
    COR22_I_2_8,
    COR22_II_2_9,
    HURWITZ_2_10,
    HURWITZ_TAYLOR_2_11,
    PK_SINE_2_16,
    K_SINE_2_17,
    PK_COS_2_19,
    K_COS_2_20,
    THEOREM_2_2_MOBIUS,
    THEOREM_2_2_FORMAL,
}

use IdentityId::*;

impl IdentityId {
    pub const ALL: [IdentityId; 18] = [
        RMT_1_2,
        BINOMIAL_1_7,
        SIN_2_3,
        COS_2_4,
        SINE_MASTER_2_1,
        COSINE_MASTER_2_2,
        ZETA_SINE_2_5,
        ZETA_COSINE_2_6,
        COR22_I_2_8,
        COR22_II_2_9,
        HURWITZ_2_10,
        HURWITZ_TAYLOR_2_11,
        PK_SINE_2_16,
        K_SINE_2_17,
        PK_COS_2_19,
        K_COS_2_20,
        THEOREM_2_2_MOBIUS,
        THEOREM_2_2_FORMAL,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            RMT_1_2 => "RMT_1_2",
            BINOMIAL_1_7 => "BINOMIAL_1_7",
            SIN_2_3 => "SIN_2_3",
            COS_2_4 => "COS_2_4",
            SINE_MASTER_2_1 => "SINE_MASTER_2_1",
            COSINE_MASTER_2_2 => "COSINE_MASTER_2_2",
            ZETA_SINE_2_5 => "ZETA_SINE_2_5",
            ZETA_COSINE_2_6 => "ZETA_COSINE_2_6",
            COR22_I_2_8 => "COR22_I_2_8",
            COR22_II_2_9 => "COR22_II_2_9",
            HURWITZ_2_10 => "HURWITZ_2_10",
            HURWITZ_TAYLOR_2_11 => "HURWITZ_TAYLOR_2_11",
            PK_SINE_2_16 => "PK_SINE_2_16",
            K_SINE_2_17 => "K_SINE_2_17",
            PK_COS_2_19 => "PK_COS_2_19",
            K_COS_2_20 => "K_COS_2_20",
            THEOREM_2_2_MOBIUS => "THEOREM_2_2_MOBIUS",
            THEOREM_2_2_FORMAL => "THEOREM_2_2_FORMAL",
        }
    }

    /// Parameters the identity accepts.
    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            RMT_1_2 | SINE_MASTER_2_1 | COSINE_MASTER_2_2 => &["s", "c", "a", "v"],
            BINOMIAL_1_7 => &["n", "a", "v"],
            SIN_2_3 | COS_2_4 => &["s", "a"],
            ZETA_SINE_2_5 | ZETA_COSINE_2_6 => &["s"],
            COR22_I_2_8 | COR22_II_2_9 => &[],
            HURWITZ_2_10 => &["s", "c", "a"],
            HURWITZ_TAYLOR_2_11 => &["c", "a", "t"],
            PK_SINE_2_16 | PK_COS_2_19 => &["s", "p", "k", "c", "a", "v"],
            K_SINE_2_17 | K_COS_2_20 => &["s", "k", "c", "a", "v"],
            THEOREM_2_2_MOBIUS => &["s", "n"],
            THEOREM_2_2_FORMAL => &["n"],
        }
    }

    /// A canonical parameter point, used to fill in parameters not given.
    pub fn default_params(&self) -> IndexMap<String, f64> {
        let pairs: &[(&str, f64)] = match self {
            RMT_1_2 => &[("s", 0.5), ("c", 1.0)],
            BINOMIAL_1_7 => &[("n", 1.5), ("a", 0.5), ("v", 4.0)],
            SIN_2_3 | COS_2_4 => &[("s", 0.5), ("a", 1.0)],
            SINE_MASTER_2_1 | COSINE_MASTER_2_2 => &[("s", 0.3), ("c", 1.5)],
            ZETA_SINE_2_5 | ZETA_COSINE_2_6 => &[("s", 0.25)],
            COR22_I_2_8 | COR22_II_2_9 => &[],
            HURWITZ_2_10 => &[("s", 0.5), ("c", 3.0), ("a", 2.0)],
            HURWITZ_TAYLOR_2_11 => &[("c", 2.0), ("a", 2.0), ("t", 0.5)],
            PK_SINE_2_16 | PK_COS_2_19 => &[("s", 0.8), ("p", 3.0), ("k", 2.0), ("c", 1.0)],
            K_SINE_2_17 | K_COS_2_20 => &[("s", 0.6), ("k", 2.0), ("c", 1.0)],
            THEOREM_2_2_MOBIUS => &[("s", 3.0), ("n", 30.0)],
            THEOREM_2_2_FORMAL => &[("n", 1.0)],
        };
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    /// Relative tolerance for PASS; `None` for identities that are never asserted.
    pub fn tolerance(&self) -> Option<f64> {
        match self {
            RMT_1_2 | BINOMIAL_1_7 | SIN_2_3 | COS_2_4 => Some(1e-7),
            PK_SINE_2_16 | K_SINE_2_17 | PK_COS_2_19 | K_COS_2_20 => Some(1e-7),
            SINE_MASTER_2_1 | COSINE_MASTER_2_2 => Some(1e-6),
            ZETA_SINE_2_5 | ZETA_COSINE_2_6 => Some(1e-5),
            COR22_I_2_8 => Some(1e-6),
            HURWITZ_TAYLOR_2_11 => Some(1e-9),
            THEOREM_2_2_MOBIUS => Some(1e-8),
            COR22_II_2_9 | HURWITZ_2_10 | THEOREM_2_2_FORMAL => None,
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| format!("unknown identity id '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    ReportOnly,
    Divergent,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::ReportOnly => "REPORT_ONLY",
            Status::Divergent => "DIVERGENT",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCase {
    pub id: IdentityId,
    pub params: IndexMap<String, f64>,
    pub cfg: QuadratureConfig,
    /// Run but never assert (suite-level exclusion).
    pub report_only: bool,
    pub tol: Option<f64>,
    pub primes_limit: u64,
}

impl IdentityCase {
    pub fn new(id: IdentityId, params: &[(&str, f64)]) -> Self {
        IdentityCase {
            id,
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            cfg: QuadratureConfig::default(),
            report_only: false,
            tol: None,
            primes_limit: DEFAULT_PRIMES_LIMIT,
        }
    }

    pub fn with_cfg(mut self, cfg: QuadratureConfig) -> Self {
        self.cfg = cfg;
        self
    }

    fn report_only(mut self) -> Self {
        self.report_only = true;
        self
    }

    fn get(&self, key: &str) -> Option<f64> {
        self.params.get(key).copied()
    }

    fn need(&self, key: &str) -> Result<f64, String> {
        self.get(key)
            .ok_or_else(|| format!("{} needs parameter '{key}'", self.id))
    }

    /// φ from the parameters: Binomial{a, v} when v is given, Power{c} otherwise.
    fn phi(&self) -> Result<PhiSpec, String> {
        let phi = match (self.get("v"), self.get("c")) {
            (Some(_), Some(_)) => return Err("give either c (Power) or a, v (Binomial), not both".into()),
            (Some(v), None) => PhiSpec::Binomial {
                a: self.get("a").unwrap_or(1.0),
                v,
            },
            (None, _) => {
                if self.get("a").is_some() {
                    return Err("parameter 'a' without 'v'; Power φ takes 'c'".into());
                }
                PhiSpec::Power {
                    c: self.get("c").unwrap_or(1.0),
                }
            }
        };
        phi.validate().map_err(|e| e.to_string())?;
        Ok(phi)
    }

    /// Configuration errors: unknown or missing parameters and points outside
    /// the identity's stated domain.
    pub fn validate(&self) -> Result<(), String> {
        let allowed = self.id.param_names();
        for key in self.params.keys() {
            if !allowed.contains(&key.as_str()) {
                return Err(format!("{} does not take parameter '{key}'", self.id));
            }
        }
        for (key, v) in &self.params {
            if !v.is_finite() {
                return Err(format!("parameter '{key}' must be finite"));
            }
        }
        let open_unit = |s: f64| {
            if s > 0.0 && s < 1.0 {
                Ok(())
            } else {
                Err(format!("{} needs 0 < s < 1, got {s}", self.id))
            }
        };
        match self.id {
            RMT_1_2 => {
                let s = self.need("s")?;
                let phi = self.phi()?;
                if !(s > 0.0) || !phi.eval_at(-s).is_ok() {
                    return Err(format!("φ(-s) undefined or s ≤ 0 at s = {s}"));
                }
            }
            BINOMIAL_1_7 => {
                let (n, a, v) = (self.need("n")?, self.need("a")?, self.need("v")?);
                if !(a > 0.0 && v > 0.0 && n > 0.0 && n < v) {
                    return Err(format!("needs a > 0 and 0 < n < v, got n={n}, a={a}, v={v}"));
                }
            }
            SIN_2_3 | COS_2_4 => {
                open_unit(self.need("s")?)?;
                if !(self.need("a")? > 0.0) {
                    return Err("needs a > 0".into());
                }
            }
            SINE_MASTER_2_1 | COSINE_MASTER_2_2 => {
                open_unit(self.need("s")?)?;
                self.phi()?;
            }
            ZETA_SINE_2_5 | ZETA_COSINE_2_6 => {
                let s = self.need("s")?;
                open_unit(s)?;
                if s == 0.5 {
                    return Err("s = 1/2 is excluded: ζ(2 - 2s) hits the pole of ζ at 1".into());
                }
            }
            COR22_I_2_8 | COR22_II_2_9 => {}
            HURWITZ_2_10 => {
                let (s, c, a) = (self.need("s")?, self.need("c")?, self.need("a")?);
                open_unit(s)?;
                if !(c > 1.0 + s && a > 1.0) {
                    return Err(format!("needs c > 1 + s and a > 1, got c={c}, a={a}"));
                }
            }
            HURWITZ_TAYLOR_2_11 => {
                let (c, a, t) = (self.need("c")?, self.need("a")?, self.need("t")?);
                if !(c > 1.0 && a > 1.0 && t >= 0.0 && t < a - 1.0) {
                    return Err(format!("needs c > 1, a > 1, 0 ≤ t < a - 1; got c={c}, a={a}, t={t}"));
                }
            }
            PK_SINE_2_16 | PK_COS_2_19 | K_SINE_2_17 | K_COS_2_20 => {
                let s = self.need("s")?;
                let k = self.need("k")?;
                let p = if matches!(self.id, K_SINE_2_17 | K_COS_2_20) { k } else { self.need("p")? };
                if !(s > 0.0 && p > 0.0 && k > 0.0) {
                    return Err("needs s, p, k > 0".into());
                }
                let phi = self.phi()?;
                if !phi.eval_at(-s / k).is_ok() {
                    return Err(format!("φ(-s/k) undefined at s/k = {}", s / k));
                }
            }
            THEOREM_2_2_MOBIUS => {
                let s = self.need("s")?;
                let n = self.need("n")?;
                if !(s > 1.0) || n < 1.0 || n != n.floor() {
                    return Err("needs s > 1 and a positive integer n (Möbius terms)".into());
                }
            }
            THEOREM_2_2_FORMAL => {
                let n = self.need("n")?;
                if n < 1.0 || n != n.floor() {
                    return Err("needs a positive integer n".into());
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub params: IndexMap<String, f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub status: Status,
    pub notes: String,
}

impl IdentityReport {
    fn new(case: &IdentityCase, lhs: f64, rhs: f64) -> Self {
        let abs_err = (lhs - rhs).abs();
        let rel_err = if rhs != 0.0 { abs_err / rhs.abs() } else { abs_err };
        IdentityReport {
            id: case.id,
            params: case.params.clone(),
            lhs,
            rhs,
            abs_err,
            rel_err,
            status: Status::Fail,
            notes: String::new(),
        }
    }

    fn failed(case: &IdentityCase, notes: String) -> Self {
        let mut r = IdentityReport::new(case, f64::NAN, f64::NAN);
        r.notes = notes;
        r
    }

    fn note(&mut self, text: impl AsRef<str>) {
        if !self.notes.is_empty() {
            self.notes.push_str("; ");
        }
        self.notes.push_str(text.as_ref());
    }
}

// ---------------------------------------------------------------------------
// Right-hand sides

/// Γ(s) sin(πs/2) and Γ(s) cos(πs/2), the first written as Γ(1+s)·sin(πs/2)/s
/// so that it stays accurate as s → 0.
fn gamma_trig(s: f64, parity: Parity) -> EvalResult {
    match parity {
        Parity::Odd => specfun::gamma(1.0 + s).scale(specfun::sin_pi(0.5 * s) / s),
        _ => specfun::gamma(s).scale(specfun::cos_pi(0.5 * s)),
    }
}

/// Γ(s)·φ(-s).
pub fn rhs_rmt(phi: &PhiSpec, s: f64) -> EvalResult {
    if !(s > 0.0) {
        return EvalResult::out_of_domain();
    }
    specfun::gamma(s).mul(phi.eval_at(-s))
}

/// φ(-s)·Γ(s)·sin(πs/2).
pub fn rhs_sine_master(phi: &PhiSpec, s: f64) -> EvalResult {
    if !(s > 0.0 && s < 1.0) {
        return EvalResult::out_of_domain();
    }
    gamma_trig(s, Parity::Odd).mul(phi.eval_at(-s))
}

/// φ(-s)·Γ(s)·cos(πs/2).
pub fn rhs_cosine_master(phi: &PhiSpec, s: f64) -> EvalResult {
    if !(s > 0.0 && s < 1.0) {
        return EvalResult::out_of_domain();
    }
    gamma_trig(s, Parity::Even).mul(phi.eval_at(-s))
}

/// φ(-s/k)·ₚΓₖ(s)·sin-or-cos(πs/(2k)).
pub fn rhs_pk(phi: &PhiSpec, s: f64, p: f64, k: f64, parity: Parity) -> EvalResult {
    if !(s > 0.0 && p > 0.0 && k > 0.0) || parity == Parity::Full {
        return EvalResult::out_of_domain();
    }
    let trig = match parity {
        Parity::Odd => specfun::sin_pi(0.5 * s / k),
        _ => specfun::cos_pi(0.5 * s / k),
    };
    specfun::pk_gamma(s, p, k).mul(phi.eval_at(-s / k)).scale(trig)
}

/// Magnitude Γ(s)Γ(c-s)ζ(c-s, a) sin(πs/2)/Γ(c), and the same value times
/// (-1)^(-s) = cos πs - i sin πs on the principal branch as (re, im).
pub fn rhs_hurwitz_2_10(s: f64, c: f64, a: f64) -> (EvalResult, (f64, f64)) {
    if !(s > 0.0 && s < 1.0 && c > 1.0 + s && a > 1.0) {
        return (EvalResult::out_of_domain(), (f64::NAN, f64::NAN));
    }
    let mag = gamma_trig(s, Parity::Odd)
        .mul(specfun::gamma(c - s))
        .mul(specfun::hurwitz_zeta(c - s, a))
        .scale(1.0 / specfun::gamma(c).value);
    let literal = (mag.value * specfun::cos_pi(s), -mag.value * specfun::sin_pi(s));
    (mag, literal)
}

/// Both sides of ½[ζ(c, a-t) - ζ(c, a+t)] = Σ_k (c)_{2k+1}/(2k+1)!·ζ(c+2k+1, a)·t^(2k+1).
///
/// `relaxed` only requires a > 0 and 0 ≤ t < a (every Hurwitz argument stays
/// positive) instead of a > 1, t < a - 1.
pub fn hurwitz_taylor_sides(c: f64, a: f64, t: f64, relaxed: bool) -> Result<(f64, f64), String> {
    let ok = if relaxed {
        c > 1.0 && a > 0.0 && t >= 0.0 && t < a
    } else {
        c > 1.0 && a > 1.0 && t >= 0.0 && t < a - 1.0
    };
    if !ok {
        return Err(format!("(c, a, t) = ({c}, {a}, {t}) outside the domain"));
    }
    // (c)_m t^m / m! carried recursively over all m, odd m summed
    let mut coef = 1.0;
    let mut acc = specfun::CompensatedSum::new();
    let mut m = 0u32;
    loop {
        m += 1;
        coef *= (c + m as f64 - 1.0) * t / m as f64;
        if m % 2 == 1 {
            let term = coef * specfun::hurwitz_zeta(c + m as f64, a).value;
            acc.add(term);
            if term.abs() < 1e-15 * acc.value().abs() || term == 0.0 || m > 4000 {
                break;
            }
        }
    }
    let rhs = 0.5 * (specfun::hurwitz_zeta(c, a - t).value - specfun::hurwitz_zeta(c, a + t).value);
    Ok((acc.value(), rhs))
}

pub fn hurwitz_taylor_check(c: f64, a: f64, t: f64) -> IdentityReport {
    let case = IdentityCase::new(HURWITZ_TAYLOR_2_11, &[("c", c), ("a", a), ("t", t)]);
    verify(&case)
}

// ---------------------------------------------------------------------------
// s → 0 analysis of the log-weighted even zeta transform

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitRecord {
    pub s_values: Vec<f64>,
    pub term2_values: Vec<f64>,
    pub term2_extrapolated: f64,
    pub term1_values: Vec<f64>,
    pub term1_growth_exponent: f64,
    /// term1(s)/term1(2s) for each s whose double is also sampled.
    pub term1_doubling_ratios: Vec<f64>,
    pub notes: String,
}

/// (π/2)·ζ(2-2s)·π·sin(πs/2)/(Γ(1-s)·sin πs), which tends to π⁴/24.
pub fn limit_term2(s: f64) -> f64 {
    0.5 * PI * specfun::riemann_zeta(2.0 - 2.0 * s).value * PI * specfun::sin_pi(0.5 * s)
        / (specfun::gamma(1.0 - s).value * specfun::sin_pi(s))
}

/// ζ'(2-2s)·π·cos(πs/2)/(Γ(1-s)·sin πs), which grows like ζ'(2)/s.
pub fn limit_term1(s: f64) -> f64 {
    specfun::zeta_derivative(2.0 - 2.0 * s, 1).value * PI * specfun::cos_pi(0.5 * s)
        / (specfun::gamma(1.0 - s).value * specfun::sin_pi(s))
}

/// Neville's algorithm: value at 0 of the interpolating polynomial.
fn extrapolate_to_zero(xs: &[f64], ys: &[f64]) -> f64 {
    let mut p = ys.to_vec();
    let n = xs.len();
    for level in 1..n {
        for i in 0..n - level {
            let (xi, xj) = (xs[i], xs[i + level]);
            p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
        }
    }
    p[0]
}

pub fn appendix_a1_limit(s_values: &[f64]) -> Result<LimitRecord, String> {
    if s_values.len() < 4 {
        return Err("need at least 4 sample points".into());
    }
    if s_values.iter().any(|&s| !(s > 0.0 && s <= 0.05)) {
        return Err("sample points must lie in (0, 0.05]".into());
    }
    let term2_values: Vec<f64> = s_values.iter().map(|&s| limit_term2(s)).collect();
    let term1_values: Vec<f64> = s_values.iter().map(|&s| limit_term1(s)).collect();
    let term2_extrapolated = extrapolate_to_zero(s_values, &term2_values);
    // slope of log|term1| against log(1/s)
    let pts: Vec<(f64, f64)> = s_values
        .iter()
        .zip(&term1_values)
        .map(|(&s, &t)| ((1.0 / s).ln(), t.abs().ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    let term1_doubling_ratios = s_values
        .iter()
        .filter_map(|&s| {
            s_values
                .iter()
                .position(|&d| (d - 2.0 * s).abs() < 1e-15 * s)
                .map(|_| limit_term1(s) / limit_term1(2.0 * s))
        })
        .collect();
    let notes = format!(
        "surviving term → {term2_extrapolated} (π⁴/24 = {PI_FOURTH_OVER_24}); \
         ζ' term grows like s^(-{slope:.4}), so it does not vanish and the limit decomposition diverges; \
         intermediate ζ(2-4s) read as ζ(2-2s); a π/2·ζ(2) step is inconsistent with the final π²/4·ζ(2), \
         the final form is used"
    );
    Ok(LimitRecord {
        s_values: s_values.to_vec(),
        term2_values,
        term2_extrapolated,
        term1_values,
        term1_growth_exponent: slope,
        term1_doubling_ratios,
        notes,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoleFit {
    /// [c₋₁, c₀, c₁, ...]
    pub coeffs: Vec<f64>,
    pub ill_conditioned: bool,
}

/// Laurent coefficients of f at a simple pole at 0: s·f(s) sampled at ±r for
/// each radius is interpolated by a polynomial whose leading coefficients
/// are c₋₁, c₀, c₁, ...
pub fn pole_expansion<F: Fn(f64) -> f64>(f: F, n_coeffs: usize, radii: &[f64]) -> Result<PoleFit, String> {
    let mut xs = Vec::new();
    for &r in radii {
        if !(r > 0.0) {
            return Err("radii must be positive".into());
        }
        if xs.iter().any(|&x: &f64| (x - r).abs() <= 1e-12 * r) {
            return Err("radii must be distinct".into());
        }
        xs.push(r);
        xs.push(-r);
    }
    let n = xs.len();
    if n_coeffs > n {
        return Err(format!("{n_coeffs} coefficients need at least {} radii", n_coeffs.div_ceil(2)));
    }
    let ys: Vec<f64> = xs.iter().map(|&x| x * f(x)).collect();
    // Vandermonde system in scaled variable u = x / r_max
    let scale = radii.iter().cloned().fold(0.0, f64::max);
    let mut m: Vec<Vec<f64>> = xs
        .iter()
        .zip(&ys)
        .map(|(&x, &y)| {
            let u = x / scale;
            let mut row: Vec<f64> = (0..n).map(|j| u.powi(j as i32)).collect();
            row.push(y);
            row
        })
        .collect();
    let mut min_pivot = f64::INFINITY;
    let mut max_pivot: f64 = 0.0;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        m.swap(col, piv);
        let pv = m[col][col];
        min_pivot = min_pivot.min(pv.abs());
        max_pivot = max_pivot.max(pv.abs());
        if pv == 0.0 {
            return Err("singular fit".into());
        }
        for i in 0..n {
            if i != col {
                let factor = m[i][col] / pv;
                if factor != 0.0 {
                    for j in col..=n {
                        m[i][j] -= factor * m[col][j];
                    }
                }
            }
        }
    }
    let coeffs: Vec<f64> = (0..n_coeffs)
        .map(|j| m[j][n] / m[j][j] / scale.powi(j as i32))
        .collect();
    Ok(PoleFit {
        coeffs,
        ill_conditioned: max_pivot / min_pivot > 1e10,
    })
}

/// ζ(2-2s)·Γ(s)·cos(πs/2), the even zeta transform continued to s near 0.
pub fn zeta_cosine_transform(s: f64) -> f64 {
    specfun::riemann_zeta(2.0 - 2.0 * s).value * specfun::gamma(s).value * specfun::cos_pi(0.5 * s)
}

// ---------------------------------------------------------------------------
// Verification

fn parity_of(id: IdentityId) -> Parity {
    match id {
        SIN_2_3 | SINE_MASTER_2_1 | ZETA_SINE_2_5 | PK_SINE_2_16 | K_SINE_2_17 => Parity::Odd,
        _ => Parity::Even,
    }
}

fn finish(mut r: IdentityReport, case: &IdentityCase, converged: bool) -> IdentityReport {
    if case.report_only || case.id.tolerance().is_none() {
        r.status = Status::ReportOnly;
        return r;
    }
    let tol = case.tol.or(case.id.tolerance()).unwrap();
    r.status = if converged && r.rel_err <= tol {
        Status::Pass
    } else {
        Status::Fail
    };
    if !converged {
        r.note("quadrature did not converge");
    }
    r
}

fn mellin_lhs(
    case: &IdentityCase,
    kernel: &SeriesKernel,
    s: f64,
    rhs: EvalResult,
) -> IdentityReport {
    if !rhs.is_ok() {
        return IdentityReport::failed(case, "right side out of domain".into());
    }
    match mellin::mellin_transform(kernel, s, &case.cfg) {
        Ok(m) => {
            let mut r = IdentityReport::new(case, m.value, rhs.value);
            r.note(format!(
                "quad_err={:e}; evals={}; tail_terms={}",
                m.abs_err_estimate, m.n_evals, m.tail_terms_used
            ));
            finish(r, case, m.converged)
        }
        Err(MellinError::OutOfDomain { diagnostic }) => {
            let mut r = IdentityReport::new(case, f64::NAN, rhs.value);
            r.status = Status::Divergent;
            r.note(format!("{diagnostic}; right side holds by analytic continuation"));
            r
        }
        Err(e) => IdentityReport::failed(case, e.to_string()),
    }
}

fn tables_for(limit: u64) -> Result<Arc<NumberTheoryTables>, String> {
    static CACHE: Mutex<Option<Arc<NumberTheoryTables>>> = Mutex::new(None);
    let mut guard = CACHE.lock().unwrap();
    if let Some(t) = guard.as_ref() {
        if t.limit_n == limit {
            return Ok(t.clone());
        }
    }
    let t = Arc::new(primes::build_tables(limit).map_err(|e| e.to_string())?);
    *guard = Some(t.clone());
    Ok(t)
}

/// Compute both sides of one identity instance. Domain problems become a
/// FAIL report with notes, never a panic.
pub fn verify(case: &IdentityCase) -> IdentityReport {
    if let Err(e) = case.validate() {
        return IdentityReport::failed(case, format!("configuration error: {e}"));
    }
    let p = |k: &str| case.get(k).unwrap();
    match case.id {
        RMT_1_2 | BINOMIAL_1_7 => {
            let (phi, s) = if case.id == BINOMIAL_1_7 {
                (PhiSpec::Binomial { a: p("a"), v: p("v") }, p("n"))
            } else {
                (case.phi().unwrap(), p("s"))
            };
            let kernel = SeriesKernel::new(phi, Parity::Full).unwrap();
            mellin_lhs(case, &kernel, s, rhs_rmt(&phi, s))
        }
        SIN_2_3 | COS_2_4 => {
            let phi = PhiSpec::Power { c: p("a") };
            let parity = parity_of(case.id);
            let kernel = SeriesKernel::new(phi, parity).unwrap();
            let rhs = match parity {
                Parity::Odd => rhs_sine_master(&phi, p("s")),
                _ => rhs_cosine_master(&phi, p("s")),
            };
            mellin_lhs(case, &kernel, p("s"), rhs)
        }
        SINE_MASTER_2_1 | COSINE_MASTER_2_2 => {
            let phi = case.phi().unwrap();
            let parity = parity_of(case.id);
            let kernel = SeriesKernel::new(phi, parity).unwrap();
            let rhs = match parity {
                Parity::Odd => rhs_sine_master(&phi, p("s")),
                _ => rhs_cosine_master(&phi, p("s")),
            };
            let mut r = mellin_lhs(case, &kernel, p("s"), rhs);
            if let PhiSpec::Power { c } = phi {
                // same transform through the unit-frequency kernel and c^(-s)
                let unit = SeriesKernel::new(PhiSpec::Power { c: 1.0 }, parity).unwrap();
                if let Ok(m) = mellin::mellin_transform(&unit, p("s"), &case.cfg) {
                    r.note(format!("direct trig transform: {}", m.value * c.powf(-p("s"))));
                }
            }
            r
        }
        ZETA_SINE_2_5 | ZETA_COSINE_2_6 => {
            let s = p("s");
            let parity = parity_of(case.id);
            let kernel = SeriesKernel::new(PhiSpec::Zeta, parity).unwrap();
            let rhs = match parity {
                Parity::Odd => rhs_sine_master(&PhiSpec::Zeta, s),
                _ => rhs_cosine_master(&PhiSpec::Zeta, s),
            };
            let mut r = mellin_lhs(case, &kernel, s, rhs);
            if let Ok(tw) = mellin::zeta_kernel_termwise(&kernel, s, 1000) {
                let delta = if r.lhs.is_finite() { (r.lhs - tw).abs() / tw.abs() } else { f64::NAN };
                r.note(format!("term-wise sum {tw} (rel diff {delta:e})"));
            }
            if case.report_only {
                r.note("s = 1/4 is excluded from asserted suites");
            }
            r
        }
        COR22_I_2_8 => {
            let kernel = SeriesKernel::new(PhiSpec::Zeta, Parity::Odd).unwrap();
            match mellin::mellin_transform_shifted(&kernel, 1.0, false, true, &case.cfg) {
                Ok(m) => {
                    let mut r = IdentityReport::new(case, m.value, PI_CUBED_OVER_12);
                    r.note(format!("quad_err={:e}", m.abs_err_estimate));
                    finish(r, case, m.converged)
                }
                Err(e) => IdentityReport::failed(case, e.to_string()),
            }
        }
        COR22_II_2_9 => {
            let kernel = SeriesKernel::new(PhiSpec::Zeta, Parity::Even).unwrap();
            let mut r = IdentityReport::new(case, f64::NAN, PI_FOURTH_OVER_24);
            match mellin::mellin_transform_shifted(&kernel, 1.0, true, true, &case.cfg) {
                Err(e) => r.note(format!("direct integral: {e}")),
                Ok(m) => r.note(format!("direct integral unexpectedly returned {}", m.value)),
            }
            let s_values = LIMIT_SAMPLES;
            if let Ok(lim) = appendix_a1_limit(&s_values) {
                r.note(format!(
                    "surviving term extrapolates to {} (|Δ| = {:e}); ζ' term growth exponent {:.4}",
                    lim.term2_extrapolated,
                    (lim.term2_extrapolated - PI_FOURTH_OVER_24).abs(),
                    lim.term1_growth_exponent
                ));
            }
            if let Ok(fit) = pole_expansion(zeta_cosine_transform, 3, &[1e-2, 5e-3, 2e-3]) {
                r.note(format!(
                    "Laurent coefficients at s = 0: c₋₁ = {}, c₀ = {}, c₁ = {}",
                    fit.coeffs[0], fit.coeffs[1], fit.coeffs[2]
                ));
            }
            r.status = Status::ReportOnly;
            r
        }
        HURWITZ_2_10 => {
            let (mag, literal) = rhs_hurwitz_2_10(p("s"), p("c"), p("a"));
            let mut r = IdentityReport::new(case, f64::NAN, mag.value);
            r.note(format!(
                "magnitude {}; literal (-1)^(-s) principal branch: ({}, {}) ; \
                 the kernel ½[ζ(c,a-x) - ζ(c,a+x)] is undefined for x ≥ a, so no integral side",
                mag.value, literal.0, literal.1
            ));
            r.status = Status::ReportOnly;
            r
        }
        HURWITZ_TAYLOR_2_11 => match hurwitz_taylor_sides(p("c"), p("a"), p("t"), false) {
            Ok((lhs, rhs)) => finish(IdentityReport::new(case, lhs, rhs), case, true),
            Err(e) => IdentityReport::failed(case, e),
        },
        PK_SINE_2_16 | PK_COS_2_19 | K_SINE_2_17 | K_COS_2_20 => {
            let k = p("k");
            let pp = if matches!(case.id, K_SINE_2_17 | K_COS_2_20) { k } else { p("p") };
            let phi = case.phi().unwrap();
            let parity = parity_of(case.id);
            let kernel = match SeriesKernel::new(phi, parity).and_then(|kr| kr.scaled(pp, k)) {
                Ok(kr) => kr,
                Err(e) => return IdentityReport::failed(case, e.to_string()),
            };
            mellin_lhs(case, &kernel, p("s"), rhs_pk(&phi, p("s"), pp, k, parity))
        }
        THEOREM_2_2_MOBIUS => {
            let s = p("s");
            let k_terms = p("n") as u64;
            let tables = match tables_for(case.primes_limit) {
                Ok(t) => t,
                Err(e) => return IdentityReport::failed(case, e),
            };
            let direct = primes::prime_log_sum_direct(&tables, s, case.primes_limit);
            let mobius = primes::prime_log_sum_mobius(s, k_terms);
            match (direct, mobius) {
                (Ok(d), Ok(m)) => {
                    let mut r = IdentityReport::new(case, d.value, m.value);
                    r.note(format!(
                        "direct over {} primes ≤ {}, tail ≤ {:e}; Möbius terms {}",
                        d.primes_used, case.primes_limit, d.tail_estimate, m.mobius_terms_used
                    ));
                    if case.report_only {
                        r.status = Status::ReportOnly;
                        return r;
                    }
                    // the truncated direct sum is short by at most its tail
                    let tol = case.tol.or(case.id.tolerance()).unwrap();
                    let allowed = tol * m.value.abs() + d.tail_estimate + m.tail_estimate;
                    r.status = if r.abs_err <= allowed { Status::Pass } else { Status::Fail };
                    r
                }
                (Err(e), _) | (_, Err(e)) => IdentityReport::failed(case, e.to_string()),
            }
        }
        THEOREM_2_2_FORMAL => {
            let n = p("n") as u32;
            let tables = match tables_for(case.primes_limit) {
                Ok(t) => t,
                Err(e) => return IdentityReport::failed(case, e),
            };
            let up_to = case.primes_limit.min(100_000);
            let mut r = IdentityReport::new(case, f64::NAN, f64::NAN);
            if let Ok(lhs) = primes::theorem22_lhs(&tables, up_to, 0) {
                r.lhs = lhs.value;
                r.note(format!("prime-side partial sums {}", lhs.notes));
            }
            let cs: Vec<String> = (0..=n).map(|i| format!("{:e}", primes::c_n(i).value)).collect();
            r.note(format!("c_0..c_{n} = [{}]", cs.join(", ")));
            for i in 0..=n {
                match primes::a_n_formal(i, 100) {
                    Ok(a) => r.note(format!("A_{i}: Möbius part (K=100) {} — {}", a.value, a.notes)),
                    Err(e) => r.note(format!("A_{i}: {e}")),
                }
            }
            if let Ok(d) = primes::divergence_diagnostic(&tables, n.max(1), up_to.min(10_000)) {
                r.note(format!(
                    "interchanged inner sum Σ_p log p·p^{} grows with exponent {:.3}",
                    2 * n.max(1) - 1,
                    d.growth_exponent.unwrap_or(f64::NAN)
                ));
            }
            r.note("FORMAL: the coefficient side needs f(1-2n) outside s > 1; not asserted");
            r.status = Status::Divergent;
            r
        }
    }
}

// ---------------------------------------------------------------------------
// Suites

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Basic,
    Master,
    Zeta,
    Hurwitz,
    Pk,
    Primes,
    All,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Basic,
        Suite::Master,
        Suite::Zeta,
        Suite::Hurwitz,
        Suite::Pk,
        Suite::Primes,
        Suite::All,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Basic => "basic",
            Suite::Master => "master",
            Suite::Zeta => "zeta",
            Suite::Hurwitz => "hurwitz",
            Suite::Pk => "pk",
            Suite::Primes => "primes",
            Suite::All => "all",
        }
    }

    /// The fixed case list, in report order.
    pub fn cases(&self) -> Vec<IdentityCase> {
        let c = IdentityCase::new;
        match self {
            Suite::Basic => vec![
                c(RMT_1_2, &[("s", 0.5), ("c", 1.0)]),
                c(RMT_1_2, &[("s", 0.3), ("c", 2.0)]),
                c(RMT_1_2, &[("s", 0.5), ("a", 2.0), ("v", 3.0)]),
                c(BINOMIAL_1_7, &[("n", 0.5), ("a", 1.0), ("v", 2.0)]),
                c(BINOMIAL_1_7, &[("n", 1.0), ("a", 2.0), ("v", 3.0)]),
                c(BINOMIAL_1_7, &[("n", 1.5), ("a", 0.5), ("v", 4.0)]),
                c(SIN_2_3, &[("s", 0.25), ("a", 1.0)]),
                c(SIN_2_3, &[("s", 0.5), ("a", 2.0)]),
                c(SIN_2_3, &[("s", 0.75), ("a", 1.0)]),
                c(COS_2_4, &[("s", 0.25), ("a", 2.0)]),
                c(COS_2_4, &[("s", 0.5), ("a", 1.0)]),
                c(COS_2_4, &[("s", 0.75), ("a", 2.0)]),
            ],
            Suite::Master => {
                let mut v = Vec::new();
                for id in [SINE_MASTER_2_1, COSINE_MASTER_2_2] {
                    for s in [0.3, 0.7] {
                        v.push(c(id, &[("s", s), ("c", 1.5)]));
                        v.push(c(id, &[("s", s), ("a", 2.0), ("v", 3.0)]));
                    }
                }
                v
            }
            Suite::Zeta => {
                let mut v = Vec::new();
                for id in [ZETA_SINE_2_5, ZETA_COSINE_2_6] {
                    v.push(c(id, &[("s", 0.1)]));
                    v.push(c(id, &[("s", 0.25)]).report_only());
                    v.push(c(id, &[("s", 0.4)]));
                }
                v.push(c(COR22_I_2_8, &[]));
                v.push(c(COR22_II_2_9, &[]));
                v
            }
            Suite::Hurwitz => vec![
                c(HURWITZ_TAYLOR_2_11, &[("c", 2.0), ("a", 2.0), ("t", 0.5)]),
                c(HURWITZ_TAYLOR_2_11, &[("c", 3.0), ("a", 2.0), ("t", 0.9)]),
                c(HURWITZ_TAYLOR_2_11, &[("c", 2.5), ("a", 3.0), ("t", 0.25)]),
                c(HURWITZ_2_10, &[("s", 0.5), ("c", 3.0), ("a", 2.0)]),
            ],
            Suite::Pk => vec![
                c(PK_SINE_2_16, &[("s", 0.8), ("p", 3.0), ("k", 2.0), ("c", 1.0)]),
                c(PK_SINE_2_16, &[("s", 0.5), ("p", 2.0), ("k", 1.5), ("a", 1.0), ("v", 2.0)]),
                c(K_SINE_2_17, &[("s", 0.6), ("k", 2.0), ("c", 1.0)]),
                c(PK_COS_2_19, &[("s", 0.8), ("p", 3.0), ("k", 2.0), ("c", 1.0)]),
                c(PK_COS_2_19, &[("s", 0.5), ("p", 2.0), ("k", 1.5), ("a", 1.0), ("v", 2.0)]),
                c(K_COS_2_20, &[("s", 0.6), ("k", 2.0), ("c", 1.0)]),
            ],
            Suite::Primes => vec![
                c(THEOREM_2_2_MOBIUS, &[("s", 3.0), ("n", 30.0)]),
                c(THEOREM_2_2_MOBIUS, &[("s", 2.0), ("n", 40.0)]),
                c(THEOREM_2_2_FORMAL, &[("n", 1.0)]),
            ],
            Suite::All => [
                Suite::Basic,
                Suite::Master,
                Suite::Zeta,
                Suite::Hurwitz,
                Suite::Pk,
                Suite::Primes,
            ]
            .iter()
            .flat_map(|s| s.cases())
            .collect(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .iter()
            .copied()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub report_only: usize,
    pub divergent: usize,
}

impl Summary {
    pub fn of(reports: &[IdentityReport]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::ReportOnly => s.report_only += 1,
                Status::Divergent => s.divergent += 1,
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<IdentityReport>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, cases: Vec<IdentityReport>) -> Self {
        let summary = Summary::of(&cases);
        SuiteReport {
            suite: suite.into(),
            cases,
            summary,
            generated_at: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// CSV with columns id, params, lhs, rhs, abs_err, rel_err, status, notes;
    /// params are written as `k=v` pairs joined by `;`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["id", "params", "lhs", "rhs", "abs_err", "rel_err", "status", "notes"])
            .unwrap();
        let num = |x: f64| if x.is_finite() { specfun::format_num(x) } else { String::new() };
        for r in &self.cases {
            let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            w.write_record([
                r.id.to_string(),
                params.join(";"),
                num(r.lhs),
                num(r.rhs),
                num(r.abs_err),
                num(r.rel_err),
                r.status.to_string(),
                r.notes.clone(),
            ])
            .unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}

/// Run every case of the suite; cases run concurrently, reports come back in
/// the fixed case order.
pub fn verify_suite(suite: Suite, cfg: &QuadratureConfig) -> Vec<IdentityReport> {
    let cases: Vec<IdentityCase> = suite.cases().into_iter().map(|c| c.with_cfg(*cfg)).collect();
    verify_cases(&cases)
}

pub fn verify_cases(cases: &[IdentityCase]) -> Vec<IdentityReport> {
    cases.par_iter().map(verify).collect()
}

/// True iff a report with these flags may count as a successful evaluation.
pub fn flags_ok(flags: EvalFlags) -> bool {
    !flags.intersects(EvalFlags::OUT_OF_DOMAIN | EvalFlags::TRUNCATED)
}
