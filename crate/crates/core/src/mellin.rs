//! Numerical Mellin transforms M(s) = ∫₀^∞ x^(s-1) g(x) dx of series kernels.
//!
//! The integral is split at `split_point`. The head [0, X] is done by
//! adaptive Gauss–Kronrod panels; the first panel [0, 1] is mapped by
//! x = u^q so that the x^(s-1+ℓ) endpoint behaviour becomes polynomial.
//! The tail [X, ∞) depends on the kernel:
//!
//! * sin/cos kernels: integrals between consecutive zeros of the phase,
//!   summed and accelerated by Wynn's epsilon algorithm;
//! * exponential and binomial kernels: unit panels in w = ln(x/X) until the
//!   remainder is negligible;
//! * zeta kernels: the resummed kernel Σ_m sin(y/m²)/m² is integrated term by
//!   term beyond X. Each m contributes a scaled incomplete sine integral
//!   J(y₀/m²) = ∫_{y₀/m²}^∞ u^(σ-1) sin u du, taken numerically for m ≤ M and
//!   through a Hurwitz-zeta series for m > M.
//!
//! The zeta kernels behave like √(π/8)·y^(-1/2) for large y (the m-sum turns
//! into a Fresnel-type integral), so their transforms only converge for
//! s/k < 1/2. Beyond that the closed forms hold by analytic continuation only
//! and the quadrature reports the divergence instead of a number.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::{closed_form_kernel, Parity, PhiSpec, SeriesKernel};
use crate::specfun::{self, CompensatedSum};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub split_point: f64,
    pub max_panel_depth: u32,
    pub tail_half_periods: usize,
    pub accel_order: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            split_point: 10.0,
            max_panel_depth: 30,
            tail_half_periods: 400,
            accel_order: 10,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<(), MellinError> {
        let bad = |m: &str| Err(MellinError::InvalidConfig(m.to_string()));
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return bad("tolerances must be positive");
        }
        if !(self.split_point > 0.0 && self.split_point.is_finite()) {
            return bad("split_point must be positive and finite");
        }
        if self.accel_order == 0 || self.accel_order > self.tail_half_periods / 4 {
            return bad("accel_order must be in 1..=tail_half_periods/4");
        }
        if self.max_panel_depth == 0 {
            return bad("max_panel_depth must be positive");
        }
        Ok(())
    }

    /// Both tolerances divided by `factor`.
    pub fn tightened(mut self, factor: f64) -> Self {
        self.abs_tol /= factor;
        self.rel_tol /= factor;
        self
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MellinEvaluation {
    pub s: f64,
    pub value: f64,
    pub abs_err_estimate: f64,
    pub n_evals: u64,
    pub tail_terms_used: u64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MellinError {
    #[error("integral is divergent: {diagnostic}")]
    OutOfDomain { diagnostic: String },
    #[error("unsupported kernel: {0}")]
    Unsupported(String),
    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),
}

fn out_of_domain(diagnostic: String) -> MellinError {
    MellinError::OutOfDomain { diagnostic }
}

// ---------------------------------------------------------------------------
// Gauss–Kronrod 15/31

const XGK: [f64; 16] = [
    0.998_002_298_693_397_060_285_172_840_152_271,
    0.987_992_518_020_485_428_489_565_718_586_613,
    0.967_739_075_679_139_134_257_347_978_784_337,
    0.937_273_392_400_705_904_307_758_947_710_209,
    0.897_264_532_344_081_900_882_509_656_454_496,
    0.848_206_583_410_427_216_200_648_320_774_217,
    0.790_418_501_442_465_932_967_649_294_817_947,
    0.724_417_731_360_170_047_416_186_054_613_938,
    0.650_996_741_297_416_970_533_735_895_313_275,
    0.570_972_172_608_538_847_537_226_737_253_911,
    0.485_081_863_640_239_680_693_655_740_232_351,
    0.394_151_347_077_563_369_897_207_370_981_045,
    0.299_180_007_153_168_812_166_780_024_266_389,
    0.201_194_093_997_434_522_300_628_303_394_596,
    0.101_142_066_918_717_499_027_074_231_447_392,
    0.0,
];

// Gauss weights for the odd-indexed Kronrod nodes, outermost first.
const WG: [f64; 8] = [
    0.030_753_241_996_117_268_354_628_393_577_204,
    0.070_366_047_488_108_124_709_267_416_450_667,
    0.107_159_220_467_171_935_011_869_546_685_869,
    0.139_570_677_926_154_314_447_804_794_511_028,
    0.166_269_205_816_993_933_553_200_860_481_209,
    0.186_161_000_015_562_211_026_800_561_866_423,
    0.198_431_485_327_111_576_456_118_326_443_839,
    0.202_578_241_925_561_272_880_620_199_967_519,
];

const WGK: [f64; 16] = [
    0.005_377_479_872_923_348_987_792_051_430_128,
    0.015_007_947_329_316_122_538_374_763_075_807,
    0.025_460_847_326_715_320_186_874_001_019_653,
    0.035_346_360_791_375_846_222_037_948_478_360,
    0.044_589_751_324_764_876_608_227_299_373_280,
    0.053_481_524_690_928_087_265_343_147_239_430,
    0.062_009_567_800_670_640_285_139_230_960_803,
    0.069_854_121_318_728_258_709_520_077_099_147,
    0.076_849_680_757_720_378_894_432_777_482_659,
    0.083_080_502_823_133_021_038_289_247_286_104,
    0.088_564_443_056_211_770_647_275_443_693_774,
    0.093_126_598_170_825_321_225_486_872_747_346,
    0.096_642_726_983_623_678_505_179_907_627_589,
    0.099_173_598_721_791_959_332_393_173_484_603,
    0.100_769_845_523_875_595_044_946_662_617_570,
    0.101_330_007_014_791_549_017_374_792_767_493,
];

/// QUADPACK error rescaling; the flag is set when the estimate sits on the
/// roundoff floor 50·ε·∫|f|, where bisecting further cannot help.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> (f64, bool) {
    let mut e = err.abs();
    if res_asc != 0.0 && e != 0.0 {
        e = res_asc * (200.0 * e / res_asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && floor >= e {
        return (floor, true);
    }
    (e, e == 0.0)
}

/// One G15/K31 panel: (value, error estimate, roundoff-limited).
fn gk31<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64, bool) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_g = fc * WG[7];
    let mut res_k = fc * WGK[15];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 15];
    let mut fv2 = [0.0; 15];
    for j in 0..15 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[15] * (fc - mean).abs();
    for j in 0..15 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let err = (res_k - res_g) * half;
    let h = half.abs();
    let (e, floor) = rescale_error(err, res_abs * h, res_asc * h);
    (res_k * half, e, floor)
}

#[derive(Debug, Clone, Copy, Default)]
struct Quad {
    value: f64,
    err: f64,
    evals: u64,
    ok: bool,
}

/// Globally adaptive bisection on [a, b]: always split the panel with the
/// largest error until the sum of errors meets `tol` or every remaining
/// error is pure roundoff.
fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, max_depth: u32) -> Quad {
    if a == b {
        return Quad {
            ok: true,
            ..Quad::default()
        };
    }
    let (v, e, fl) = gk31(f, a, b);
    let mut panels = vec![(a, b, v, e, 0u32, fl)];
    let mut evals = 31u64;
    let mut ok = true;
    loop {
        let total_err: f64 = panels.iter().map(|p| p.3).sum();
        if total_err <= tol || !total_err.is_finite() {
            ok &= total_err.is_finite();
            break;
        }
        let Some((idx, worst)) = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.5)
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, p)| (i, *p))
        else {
            break;
        };
        if worst.4 >= max_depth || panels.len() > 4000 {
            ok = false;
            break;
        }
        let mid = 0.5 * (worst.0 + worst.1);
        let (v1, e1, f1) = gk31(f, worst.0, mid);
        let (v2, e2, f2) = gk31(f, mid, worst.1);
        evals += 62;
        panels[idx] = (worst.0, mid, v1, e1, worst.4 + 1, f1);
        panels.push((mid, worst.1, v2, e2, worst.4 + 1, f2));
    }
    panels.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    for p in &panels {
        acc.add(p.2);
        err += p.3;
    }
    Quad {
        value: acc.value(),
        err,
        evals,
        ok,
    }
}

// ---------------------------------------------------------------------------
// Acceleration

/// Wynn's epsilon algorithm; returns the deepest even-column entry built from
/// the whole sequence.
pub fn wynn_epsilon(seq: &[f64]) -> f64 {
    match seq.len() {
        0 => return 0.0,
        1 | 2 => return *seq.last().unwrap(),
        _ => {}
    }
    let mut prev: Vec<f64> = vec![0.0; seq.len() + 1];
    let mut cur: Vec<f64> = seq.to_vec();
    let mut best = *seq.last().unwrap();
    let mut col = 0;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let diff = cur[i + 1] - cur[i];
            if diff == 0.0 {
                // the column has converged exactly
                return if col % 2 == 0 { cur[i + 1] } else { best };
            }
            next.push(prev[i + 1] + 1.0 / diff);
        }
        col += 1;
        if col % 2 == 0 {
            let v = *next.last().unwrap();
            if !v.is_finite() {
                break;
            }
            best = v;
        }
        prev = cur;
        cur = next;
    }
    best
}

// ---------------------------------------------------------------------------
// Tails

/// Result of a tail integral over [x_start, ∞).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailSum {
    pub value: f64,
    pub err: f64,
    pub terms: u64,
    pub evals: u64,
    pub converged: bool,
}

impl TailSum {
    fn zero() -> Self {
        TailSum {
            value: 0.0,
            err: 0.0,
            terms: 0,
            evals: 0,
            converged: true,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Weight {
    sigma: f64,
    log: bool,
}

impl Weight {
    fn at(&self, x: f64) -> f64 {
        let w = x.powf(self.sigma - 1.0);
        if self.log {
            w * x.ln()
        } else {
            w
        }
    }
}

/// ∫_{x0}^∞ x^(σ-1) [ln x] trig(c x^k / p) dx, summed over half-waves of the
/// phase and Wynn-accelerated.
#[allow(clippy::too_many_arguments)]
fn oscillatory_power_tail(
    c: f64,
    p: f64,
    k: f64,
    parity: Parity,
    weight: Weight,
    x0: f64,
    cfg: &QuadratureConfig,
    tol: f64,
) -> TailSum {
    if x0.is_infinite() {
        return TailSum::zero();
    }
    let phase_of = |x: f64| c * x.powf(k) / p;
    let x_of = |ph: f64| (ph * p / c).powf(1.0 / k);
    let offset = match parity {
        Parity::Odd => 0.0,
        _ => 0.5,
    };
    let trig = move |ph: f64| match parity {
        Parity::Odd => ph.sin(),
        _ => ph.cos(),
    };
    let f = |x: f64| weight.at(x) * trig(phase_of(x));
    // first zero strictly beyond x0
    let mut j = (phase_of(x0) / std::f64::consts::PI - offset).floor() + 1.0;
    let mut left = x0;
    let mut partial = CompensatedSum::new();
    let mut sums: Vec<f64> = Vec::new();
    let mut quad_err = 0.0;
    let mut evals = 0u64;
    let window = 2 * cfg.accel_order + 1;
    let mut estimates: Vec<f64> = Vec::new();
    let mut converged = false;
    let mut ok = true;
    for _ in 0..cfg.tail_half_periods {
        let right = x_of((j + offset) * std::f64::consts::PI);
        let q = adaptive(&f, left, right, tol * 1e-3, cfg.max_panel_depth);
        ok &= q.ok;
        evals += q.evals;
        quad_err += q.err;
        partial.add(q.value);
        sums.push(partial.value());
        let start = sums.len().saturating_sub(window);
        estimates.push(wynn_epsilon(&sums[start..]));
        let n = estimates.len();
        if n >= window {
            let d1 = (estimates[n - 1] - estimates[n - 2]).abs();
            let d2 = (estimates[n - 2] - estimates[n - 3]).abs();
            if d1.max(d2) <= tol {
                converged = true;
                break;
            }
        }
        left = right;
        j += 1.0;
    }
    let n = estimates.len();
    let value = estimates[n - 1];
    let accel_err = if n >= 3 {
        (estimates[n - 1] - estimates[n - 2])
            .abs()
            .max((estimates[n - 2] - estimates[n - 3]).abs())
    } else {
        f64::INFINITY
    };
    TailSum {
        value,
        err: accel_err + quad_err,
        terms: n as u64,
        evals,
        converged: converged && ok,
    }
}

/// ∫_{x0}^∞ f(x) dx for a non-oscillating, algebraically or exponentially
/// decaying integrand, on unit panels in w = ln(x / x0).
fn monotone_tail<F: Fn(f64) -> f64 + Sync>(f: &F, x0: f64, cfg: &QuadratureConfig, tol: f64) -> TailSum {
    if x0.is_infinite() {
        return TailSum::zero();
    }
    let g = |w: f64| {
        let x = x0 * w.exp();
        x * f(x)
    };
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    let mut evals = 0;
    let mut prev: Option<f64> = None;
    let mut ok = true;
    let mut converged = false;
    let mut w = 0.0;
    let mut terms = 0u64;
    while (x0 * (w + 1.0f64).exp()).is_finite() && terms < 2000 {
        let q = adaptive(&g, w, w + 1.0, tol * 1e-3, cfg.max_panel_depth);
        ok &= q.ok;
        evals += q.evals;
        err += q.err;
        acc.add(q.value);
        terms += 1;
        w += 1.0;
        if let Some(pv) = prev {
            let r = if pv != 0.0 { (q.value / pv).abs() } else { 0.0 };
            let remainder = if q.value == 0.0 {
                0.0
            } else if r < 1.0 {
                q.value.abs() * r / (1.0 - r)
            } else {
                f64::INFINITY
            };
            if terms >= 3 && remainder <= 0.1 * tol {
                err += remainder;
                converged = true;
                break;
            }
        }
        prev = Some(q.value);
    }
    TailSum {
        value: acc.value(),
        err,
        terms,
        evals,
        converged: converged && ok,
    }
}

/// Γ(σ) sin(πσ/2) for -1 < σ < 1 and Γ(σ) cos(πσ/2) for 0 < σ < 1: the
/// complete sine/cosine transforms of u^(σ-1).
fn trig_moment(parity: Parity, sigma: f64) -> f64 {
    match parity {
        Parity::Odd => {
            if sigma == 0.0 {
                std::f64::consts::FRAC_PI_2
            } else {
                // Γ(1+σ)·sin(πσ/2)/σ stays finite through σ = 0
                specfun::gamma(1.0 + sigma).value * (std::f64::consts::FRAC_PI_2 * sigma).sin() / sigma
            }
        }
        _ => specfun::gamma(sigma).value * specfun::cos_pi(0.5 * sigma),
    }
}

/// Tail of a zeta kernel: Σ_m m^(-2) ∫_X^∞ x^(σ-1) trig(X^k/(p m²)) dx.
fn zeta_kernel_tail(kernel: &SeriesKernel, sigma: f64, x0: f64, cfg: &QuadratureConfig, tol: f64) -> TailSum {
    if x0.is_infinite() {
        return TailSum::zero();
    }
    let k = kernel.exponent_k;
    let sp = sigma / k;
    let pref = kernel.scale_p.powf(sp) / k;
    let y0 = kernel.reduced_variable(x0);
    let m_direct = ((2.0 * y0.sqrt()).ceil() as usize).max(4);
    let weight = Weight { sigma: sp, log: false };
    let per_m: Vec<TailSum> = (1..=m_direct)
        .into_par_iter()
        .map(|m| {
            let m2 = (m * m) as f64;
            oscillatory_power_tail(1.0, 1.0, 1.0, kernel.parity, weight, y0 / m2, cfg, tol / (pref * m_direct as f64))
        })
        .collect();
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    let mut evals = 0;
    let mut terms = 0;
    let mut converged = true;
    for (i, t) in per_m.iter().enumerate() {
        let m = (i + 1) as f64;
        let w = m.powf(2.0 * sp - 2.0);
        acc.add(w * t.value);
        err += w * t.err;
        evals += t.evals;
        terms += t.terms;
        converged &= t.converged;
    }
    // m > M: J(y) = J(0) - ∫_0^y u^(σ'-1) trig(u) du, expanded in y.
    let shift = m_direct as f64 + 1.0;
    acc.add(trig_moment(kernel.parity, sp) * specfun::hurwitz_zeta(2.0 - 2.0 * sp, shift).value);
    let mut e = match kernel.parity {
        Parity::Odd => 1.0,
        _ => 0.0,
    };
    let mut fact = 1.0; // e!
    let mut sign = 1.0;
    let mut last = 0.0;
    for _ in 0..60 {
        let coef = y0.powf(e + sp) / (fact * (e + sp));
        let term = -sign * coef * specfun::hurwitz_zeta(2.0 * e + 2.0, shift).value;
        acc.add(term);
        last = term.abs();
        if last <= 1e-17 * acc.value().abs() {
            break;
        }
        fact *= (e + 1.0) * (e + 2.0);
        e += 2.0;
        sign = -sign;
    }
    TailSum {
        value: pref * acc.value(),
        err: pref * (err + last),
        terms,
        evals,
        converged,
    }
}

/// Exponent q of the first-panel substitution x = u^q. With g(x) = x^ℓ·h(x)
/// and h a series in x^step, the panel integrand is
/// u^(q(α+1)-1)·(h₀ + h₁u^(q·step) + …); among q = 1 and q = j/(α+1) pick the
/// one whose smallest non-integer exponent is largest (x = u² for s = 1/2 on
/// a sine kernel, for instance, makes every exponent an integer).
fn head_exponent(alpha: f64, step: f64) -> f64 {
    let score = |q: f64| {
        (0..4)
            .map(|i| q * (alpha + 1.0) - 1.0 + i as f64 * q * step)
            .filter(|e| (e - e.round()).abs() > 1e-9)
            .fold(f64::INFINITY, f64::min)
    };
    let mut best = (1.0, score(1.0));
    for j in 1..=3 {
        let q = j as f64 / (alpha + 1.0);
        // j = 1 is the one that removes an endpoint singularity; only it may be large
        if (j == 1 || q <= 4.0) && score(q) > best.1 {
            best = (q, score(q));
        }
    }
    best.0
}

/// Tail of the transform over [x_start, ∞) for kernels with a closed form.
///
/// sin/cos kernels are summed over half-waves of their phase and accelerated;
/// zeta kernels go through the per-m decomposition; the remaining kernels do
/// not oscillate at infinity and are integrated on logarithmic panels.
pub fn tail_oscillatory_sum(
    kernel: &SeriesKernel,
    s: f64,
    x_start: f64,
    cfg: &QuadratureConfig,
) -> Result<TailSum, MellinError> {
    cfg.validate()?;
    tail_weighted(kernel, Weight { sigma: s, log: false }, x_start, cfg, cfg.abs_tol * 0.5)
}

fn tail_weighted(
    kernel: &SeriesKernel,
    weight: Weight,
    x0: f64,
    cfg: &QuadratureConfig,
    tol: f64,
) -> Result<TailSum, MellinError> {
    check_infinity(kernel, weight)?;
    if x0.is_infinite() {
        return Ok(TailSum::zero());
    }
    if !(x0 > 0.0) {
        return Err(MellinError::InvalidConfig("tail must start at x > 0".into()));
    }
    Ok(match (kernel.phi, kernel.parity) {
        (PhiSpec::Power { c }, Parity::Odd | Parity::Even) => oscillatory_power_tail(
            c,
            kernel.scale_p,
            kernel.exponent_k,
            kernel.parity,
            weight,
            x0,
            cfg,
            tol,
        ),
        (PhiSpec::Zeta, _) => {
            if weight.log {
                return Err(MellinError::Unsupported(
                    "log-weighted transforms of zeta kernels".into(),
                ));
            }
            zeta_kernel_tail(kernel, weight.sigma, x0, cfg, tol)
        }
        _ => {
            let f = |x: f64| weight.at(x) * closed_form_kernel(kernel, x).value;
            monotone_tail(&f, x0, cfg, tol)
        }
    })
}

/// Reject transforms that diverge at infinity.
fn check_infinity(kernel: &SeriesKernel, weight: Weight) -> Result<(), MellinError> {
    let sigma = weight.sigma;
    let k = kernel.exponent_k;
    match (kernel.phi, kernel.parity) {
        (PhiSpec::HurwitzOdd { .. }, _) => Err(MellinError::Unsupported(
            "the Hurwitz kernel is only defined for x < a - 1, not on (0, ∞)".into(),
        )),
        (PhiSpec::Power { .. }, Parity::Full) => Ok(()),
        (PhiSpec::Power { .. }, _) if sigma >= k => Err(out_of_domain(format!(
            "integrand ~ x^({sigma} - 1)·trig(x^{k}) has non-decaying half-wave areas: \
             the tail diverges for s ≥ k"
        ))),
        (PhiSpec::Binomial { v, .. }, _) if sigma >= k * v => Err(out_of_domain(format!(
            "integrand ~ x^({sigma} - 1 - {}) at infinity: the tail diverges for s ≥ k·v",
            k * v
        ))),
        (PhiSpec::Zeta, Parity::Odd | Parity::Even) if sigma / k >= 0.5 => Err(out_of_domain(format!(
            "zeta kernel ~ √(π/8)·(x^k/p)^(-1/2) at infinity, so the integrand decays like \
             x^({sigma} - 1 - k/2): divergent for s/k ≥ 1/2 (s/k = {}); the closed form is only \
             its analytic continuation",
            sigma / k
        ))),
        (PhiSpec::Zeta, Parity::Full) => Err(MellinError::Unsupported(
            "the FULL zeta kernel has no closed form".into(),
        )),
        _ => Ok(()),
    }
}

// ---------------------------------------------------------------------------
// Transforms

/// M(s) = ∫₀^∞ x^(s-1) g(x) dx.
pub fn mellin_transform(kernel: &SeriesKernel, s: f64, cfg: &QuadratureConfig) -> Result<MellinEvaluation, MellinError> {
    mellin_transform_shifted(kernel, s, false, false, cfg)
}

/// ∫₀^∞ x^(s-1) [ln x] [1/x] g(x) dx.
///
/// Near 0 the integrand behaves like C·x^α [ln x] with α = s - 1 + ℓ (- 1 with
/// `inverse_x`), ℓ the kernel's leading order. By comparison with ∫ x^α dx the
/// integral diverges at 0 whenever α ≤ -1, with or without the logarithm; for
/// the even zeta kernel with both weights at s = 1 this is ∫ ζ(2)·ln x / x dx.
pub fn mellin_transform_shifted(
    kernel: &SeriesKernel,
    s: f64,
    log_weight: bool,
    inverse_x: bool,
    cfg: &QuadratureConfig,
) -> Result<MellinEvaluation, MellinError> {
    cfg.validate()?;
    kernel
        .validate()
        .map_err(|e| MellinError::Unsupported(e.to_string()))?;
    if !(s > 0.0 && s.is_finite()) {
        return Err(out_of_domain(format!("s = {s} is outside s > 0")));
    }
    let sigma = if inverse_x { s - 1.0 } else { s };
    let order = kernel.small_x_order();
    let alpha = sigma - 1.0 + order;
    let coef = kernel.small_x_coefficient();
    if alpha <= -1.0 {
        let log = if log_weight { "·ln x" } else { "" };
        return Err(out_of_domain(format!(
            "integrand ~ {coef}·x^({alpha}){log} as x → 0 and ∫₀ x^α{log} dx diverges for α ≤ -1"
        )));
    }
    let weight = Weight { sigma, log: log_weight };
    check_infinity(kernel, weight)?;

    let x_split = cfg.split_point;
    let g = |x: f64| closed_form_kernel(kernel, x).value;

    // first panel, x = u^q
    let q = if log_weight {
        (2.0 / (alpha + 1.0)).max(1.0)
    } else {
        let step = match kernel.parity {
            Parity::Full => kernel.exponent_k,
            _ => 2.0 * kernel.exponent_k,
        };
        head_exponent(alpha, step)
    };
    let first_end = x_split.min(1.0);
    let u_end = first_end.powf(1.0 / q);
    let head0 = move |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        let x = u.powf(q);
        let h = if x < 1e-150 || order == 0.0 {
            if x < 1e-150 {
                coef
            } else {
                g(x)
            }
        } else {
            g(x) / x.powf(order)
        };
        let l = if log_weight { q * u.ln() } else { 1.0 };
        q * u.powf(q * (sigma + order) - 1.0) * h * l
    };
    // remaining head panels, at most one half-wave of the dominant phase each
    let mut edges = vec![first_end];
    if x_split > 1.0 {
        let phase = |x: f64| match kernel.phi {
            PhiSpec::Power { c } => c * kernel.reduced_variable(x),
            PhiSpec::Zeta => kernel.reduced_variable(x),
            _ => 0.0,
        };
        let by_phase = ((phase(x_split) - phase(1.0)) / std::f64::consts::PI).ceil();
        let n = (x_split - 1.0).ceil().max(by_phase).clamp(1.0, 1e5) as usize;
        for i in 1..=n {
            edges.push(1.0 + (x_split - 1.0) * i as f64 / n as f64);
        }
    }
    let n_panels = edges.len();
    let panel_tol = 0.25 * cfg.abs_tol / n_panels as f64;
    let body = |x: f64| weight.at(x) * g(x);
    let mut head: Vec<Quad> = Vec::with_capacity(n_panels);
    head.push(adaptive(&head0, 0.0, u_end, panel_tol, cfg.max_panel_depth));
    let rest: Vec<Quad> = edges
        .par_windows(2)
        .map(|w| adaptive(&body, w[0], w[1], panel_tol, cfg.max_panel_depth))
        .collect();
    head.extend(rest);

    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    let mut evals = 0;
    let mut ok = true;
    for p in &head {
        acc.add(p.value);
        err += p.err;
        evals += p.evals;
        ok &= p.ok;
    }
    let tail = if x_split > 1.0 || first_end < x_split {
        tail_weighted(kernel, weight, x_split, cfg, 0.5 * cfg.abs_tol)?
    } else {
        tail_weighted(kernel, weight, first_end, cfg, 0.5 * cfg.abs_tol)?
    };
    acc.add(tail.value);
    err += tail.err;
    let value = acc.value();
    let converged = ok && tail.converged && err <= cfg.target(value) && value.is_finite();
    Ok(MellinEvaluation {
        s,
        value,
        abs_err_estimate: err,
        n_evals: evals + tail.evals,
        tail_terms_used: tail.terms,
        converged,
    })
}

/// Term-by-term transform of a zeta kernel, valid for 0 < s/k < 1/2:
///
/// ```text
/// ∫₀^∞ x^(s-1) Σ_m trig(x^k/(p m²))/m² dx = (p^σ/k)·Γ(σ)·trig(πσ/2)·Σ_m m^(2σ-2),  σ = s/k
/// ```
///
/// The m-sum is accumulated explicitly up to `direct_terms` and the
/// remainder is ζ(2 - 2σ, N + 1).
pub fn zeta_kernel_termwise(kernel: &SeriesKernel, s: f64, direct_terms: usize) -> Result<f64, MellinError> {
    if kernel.phi != PhiSpec::Zeta || kernel.parity == Parity::Full {
        return Err(MellinError::Unsupported("term-wise path needs an ODD/EVEN zeta kernel".into()));
    }
    let sp = s / kernel.exponent_k;
    if !(sp > 0.0 && sp < 0.5) {
        return Err(out_of_domain(format!(
            "term-wise sum Σ m^(2σ-2) needs 0 < σ < 1/2, got σ = {sp}"
        )));
    }
    let mut acc = CompensatedSum::new();
    for m in 1..=direct_terms {
        acc.add((m as f64).powf(2.0 * sp - 2.0));
    }
    acc.add(specfun::hurwitz_zeta(2.0 - 2.0 * sp, direct_terms as f64 + 1.0).value);
    Ok(kernel.scale_p.powf(sp) / kernel.exponent_k * trig_moment(kernel.parity, sp) * acc.value())
}
