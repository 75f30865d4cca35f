//! Floating-point cross-checks: complex gamma, evaluation of factored and
//! gamma-product expressions, partial-product sweeps, the log-Mellin integral
//! and the two-variable zeta `Z_f(w, s)`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::gamma_expr::{check_convergence, infinite_shifted_product, Convergence, GammaProduct};
use crate::laurent::LaurentPoly;
use crate::quadrature;
use crate::report::{relative_error, VerificationReport, Verdict};
use crate::zeta_expr::{rational_to_f64, FactoredRational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("pole: {0}")]
    Pole(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("quadrature did not converge: estimate {estimate}, error bound {error:e}")]
    Quadrature { estimate: Complex64, error: f64 },
    #[error("non-finite component in complex point")]
    NonFinite,
    #[error("invalid complex point `{0}` (expected \"re,im\" or \"re\")")]
    Parse(String),
}

/// A finite complex evaluation point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexPoint(Complex64);

impl ComplexPoint {
    pub fn new(re: f64, im: f64) -> Result<Self, NumericsError> {
        if re.is_finite() && im.is_finite() {
            Ok(ComplexPoint(Complex64::new(re, im)))
        } else {
            Err(NumericsError::NonFinite)
        }
    }

    pub fn value(self) -> Complex64 {
        self.0
    }
}

impl From<ComplexPoint> for Complex64 {
    fn from(p: ComplexPoint) -> Self {
        p.0
    }
}

impl FromStr for ComplexPoint {
    type Err = NumericsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<f64>().map_err(|_| NumericsError::Parse(s.to_string()));
        match s.split_once(',') {
            Some((re, im)) => ComplexPoint::new(parse(re)?, parse(im)?),
            None => ComplexPoint::new(parse(s)?, 0.0),
        }
    }
}

impl fmt::Display for ComplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.0.re, self.0.im)
    }
}

/// Default tolerances; every one can be overridden through `ABSZETA_TOL`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub gamma_recurrence: f64,
    pub normalize: f64,
    pub defining_relation: f64,
    pub factored_eval: f64,
    pub partial_product: f64,
    pub growth_exponent: f64,
    pub mellin: f64,
    pub finite_difference: f64,
    pub fd_step: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            gamma_recurrence: 1e-11,
            normalize: 1e-12,
            defining_relation: 1e-10,
            factored_eval: 1e-12,
            partial_product: 1e-3,
            growth_exponent: 0.1,
            mellin: 1e-8,
            finite_difference: 1e-6,
            fd_step: 1e-5,
        }
    }
}

impl Tolerances {
    pub const ENV_VAR: &'static str = "ABSZETA_TOL";

    /// Applies `key=value` pairs separated by commas. A bare number sets the
    /// Mellin integral tolerance.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self, String> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, raw) = item.split_once('=').unwrap_or(("mellin", item));
            let v: f64 = raw
                .trim()
                .parse()
                .map_err(|_| format!("invalid tolerance value `{raw}`"))?;
            if !(v.is_finite() && v > 0.0) {
                return Err(format!("tolerance `{key}` must be positive, got {v}"));
            }
            let slot = match key.trim() {
                "gamma_recurrence" => &mut self.gamma_recurrence,
                "normalize" => &mut self.normalize,
                "defining_relation" => &mut self.defining_relation,
                "factored_eval" => &mut self.factored_eval,
                "partial_product" => &mut self.partial_product,
                "growth_exponent" => &mut self.growth_exponent,
                "mellin" => &mut self.mellin,
                "finite_difference" => &mut self.finite_difference,
                "fd_step" => &mut self.fd_step,
                other => return Err(format!("unknown tolerance `{other}`")),
            };
            *slot = v;
        }
        Ok(self)
    }

    pub fn from_env() -> Result<Self, String> {
        match std::env::var(Self::ENV_VAR) {
            Ok(spec) => Tolerances::default().with_overrides(&spec),
            Err(_) => Ok(Tolerances::default()),
        }
    }
}

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

fn check_gamma_pole(z: Complex64) -> Result<(), NumericsError> {
    let nearest = z.re.round();
    if nearest <= 0.0 && (z - Complex64::new(nearest, 0.0)).norm() < 1e-12 {
        Err(NumericsError::Pole(format!("gamma at nonpositive integer {nearest}")))
    } else {
        Ok(())
    }
}

/// A logarithm of `Γ(z)`, branch unspecified (only `exp` of it is meaningful).
pub fn ln_gamma_complex(z: Complex64) -> Result<Complex64, NumericsError> {
    check_gamma_pole(z)?;
    Ok(ln_gamma_unchecked(z))
}

fn ln_gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Γ(z) Γ(1 - z) = π / sin(πz)
        let pi = std::f64::consts::PI;
        let s = (z * pi).sin();
        return Complex64::new(pi.ln(), 0.0) - s.ln() - ln_gamma_unchecked(Complex64::new(1.0, 0.0) - z);
    }
    let z = z - 1.0;
    let mut series = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Complex64::new(HALF_LN_TWO_PI, 0.0) + (z + 0.5) * t.ln() - t + series.ln()
}

/// `Γ(z)` by the Lanczos approximation, with reflection for `Re z < 1/2`.
pub fn gamma_complex(z: Complex64) -> Result<Complex64, NumericsError> {
    Ok(ln_gamma_complex(z)?.exp())
}

fn exponent_f64(e: &num_bigint::BigInt) -> f64 {
    e.to_f64().unwrap_or(f64::NAN)
}

/// Sum of `e · ln(s - β)` over the factors, plus `ln scalar`.
fn ln_factored(z: &FactoredRational, s: Complex64) -> Result<Complex64, NumericsError> {
    let mut acc = Complex64::new(rational_to_f64(z.scalar()).ln(), 0.0);
    for (b, e) in z.factors() {
        let d = s - rational_to_f64(b);
        if d.norm() < 1e-14 * (1.0 + s.norm()) {
            return Err(NumericsError::Pole(format!("factor (s-{b})^{e} vanishes at s = {s}")));
        }
        acc += d.ln() * exponent_f64(e);
    }
    Ok(acc)
}

/// Evaluates `scalar · ∏ (s - β)^e`.
pub fn eval_factored(z: &FactoredRational, s: Complex64) -> Result<Complex64, NumericsError> {
    let mut acc = Complex64::new(rational_to_f64(z.scalar()), 0.0);
    for (b, e) in z.factors() {
        let d = s - rational_to_f64(b);
        if d.norm() < 1e-14 * (1.0 + s.norm()) {
            if e.is_positive() {
                return Ok(Complex64::new(0.0, 0.0));
            }
            return Err(NumericsError::Pole(format!("factor (s-{b})^{e} has a pole at s = {s}")));
        }
        acc *= match e.to_i32() {
            Some(k) => d.powi(k),
            None => (d.ln() * exponent_f64(e)).exp(),
        };
    }
    Ok(acc)
}

/// Evaluates `scalar · ∏ Γ((s - β)/N)^ε · R(s)` through logarithms.
pub fn eval_gamma_product(g: &GammaProduct, s: Complex64) -> Result<Complex64, NumericsError> {
    let n = g.modulus() as f64;
    let mut acc = Complex64::new(rational_to_f64(g.scalar()).ln(), 0.0);
    for (b, e) in g.gamma_factors() {
        let arg = (s - rational_to_f64(b)) / n;
        let lg = ln_gamma_complex(arg)
            .map_err(|_| NumericsError::Pole(format!("Γ((s-{b})/{n}) at s = {s}")))?;
        acc += lg * exponent_f64(e);
    }
    acc += ln_factored(g.rational_part(), s)?;
    Ok(acc.exp())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepPoint {
    pub k: u64,
    pub value: Complex64,
    pub rel_err: Option<f64>,
}

/// Partial products `Z_N^K(s)` over a list of `K`, compared with the closed
/// form when `Z_N^∞` converges, or fitted for a growth exponent otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialProductSweep {
    pub points: Vec<SweepPoint>,
    pub closed_form: Option<Complex64>,
    pub growth_exponent: Option<f64>,
    pub predicted_exponent: Option<f64>,
    pub report: VerificationReport,
}

/// Least-squares slope of `ln|Z_N^K(s)|` against `ln K` over the points with `K ≥ 1`.
fn growth_slope(points: &[SweepPoint]) -> Option<f64> {
    let xy: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.k >= 1)
        .map(|p| ((p.k as f64).ln(), p.value.norm().ln()))
        .collect();
    if xy.len() < 2 {
        return None;
    }
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

pub fn partial_product_sweep(
    f: &LaurentPoly,
    modulus: u64,
    s: Complex64,
    k_list: &[u64],
    tolerances: &Tolerances,
) -> Result<PartialProductSweep, NumericsError> {
    if modulus == 0 {
        return Err(NumericsError::Precondition("modulus N must be positive".into()));
    }
    let mut ks = k_list.to_vec();
    ks.sort_unstable();
    ks.dedup();
    let Some(&k_max) = ks.last() else {
        return Err(NumericsError::Precondition("empty K list".into()));
    };
    let z = FactoredRational::zeta_of_poly(f);
    let roots: Vec<(f64, f64)> = z
        .factors()
        .map(|(b, e)| (rational_to_f64(b), exponent_f64(e)))
        .collect();

    let mut log_acc = Complex64::zero();
    let mut points = Vec::with_capacity(ks.len());
    let mut next = ks.iter().peekable();
    for k in 0..=k_max {
        let shift = (k * modulus) as f64;
        for &(b, e) in &roots {
            let d = s + shift - b;
            if d.norm() < 1e-14 * (1.0 + s.norm() + shift) {
                return Err(NumericsError::Pole(format!("factor s + {shift} - {b} vanishes")));
            }
            log_acc += d.ln() * e;
        }
        if next.peek() == Some(&&k) {
            next.next();
            points.push(SweepPoint { k, value: log_acc.exp(), rel_err: None });
        }
    }

    let params = |r: VerificationReport| {
        r.with_param("f", f)
            .with_param("N", modulus)
            .with_param("s", format!("{},{}", s.re, s.im))
            .with_param("K_max", k_max)
    };

    match check_convergence(f, modulus) {
        Convergence::Converges => {
            let closed = eval_gamma_product(
                &infinite_shifted_product(f, modulus).expect("convergent input"),
                s,
            )?;
            for p in &mut points {
                p.rel_err = Some(relative_error(p.value, closed));
            }
            let tail: Vec<f64> = points
                .iter()
                .filter(|p| p.k >= 64)
                .map(|p| p.rel_err.unwrap_or(f64::NAN))
                .collect();
            let tail = if tail.len() >= 2 {
                tail
            } else {
                points.iter().filter_map(|p| p.rel_err).collect()
            };
            let decreasing = tail.windows(2).all(|w| w[1] < w[0]);
            let last = points.last().expect("at least one point");
            let mut report = params(VerificationReport::numeric(
                format!("Z_{modulus}^K(s) -> gamma closed form"),
                last.value,
                closed,
                tolerances.partial_product,
            ))
            .with_param("monotone_error", decreasing);
            if !decreasing {
                report.verdict = Verdict::Fail;
            }
            Ok(PartialProductSweep {
                points,
                closed_form: Some(closed),
                growth_exponent: None,
                predicted_exponent: None,
                report,
            })
        }
        Convergence::Diverges { value_at_one, derivative_at_one } => {
            let measured = growth_slope(&points);
            // |Z_N^K| ~ K^{f'(1)/N} when f(1) = 0; no power law otherwise
            let predicted = value_at_one
                .is_zero()
                .then(|| exponent_f64(&derivative_at_one) / modulus as f64);
            let ok = match (measured, predicted) {
                (Some(m), Some(p)) => (m - p).abs() <= tolerances.growth_exponent * p.abs(),
                _ => false,
            };
            let fmt_opt = |v: Option<f64>| v.map_or("n/a".to_string(), |x| format!("{x:.6}"));
            let mut report = params(VerificationReport::symbolic(
                format!("Z_{modulus}^K(s) growth exponent"),
                fmt_opt(measured),
                fmt_opt(predicted),
                ok,
            ))
            .with_param("f(1)", &value_at_one)
            .with_param("f'(1)", &derivative_at_one);
            if let (Some(m), Some(p)) = (measured, predicted) {
                report.abs_err = Some((m - p).abs());
                report.rel_err = Some((m - p).abs() / p.abs().max(1e-300));
            }
            Ok(PartialProductSweep {
                points,
                closed_form: None,
                growth_exponent: measured,
                predicted_exponent: predicted,
                report,
            })
        }
    }
}

fn max_exponent_bound(f: &LaurentPoly, s: Complex64) -> Result<f64, NumericsError> {
    let Some(k_max) = f.max_exponent() else {
        return Ok(1.0);
    };
    if s.re > k_max as f64 {
        Ok(s.re - k_max as f64)
    } else {
        Err(NumericsError::Precondition(format!(
            "Re(s) = {} must exceed the top exponent {k_max}",
            s.re
        )))
    }
}

/// Truncation point `T` with `C e^{-δT} T^{p} / (δT) < 1e-14`.
fn tail_cutoff(abs_coeff_sum: f64, decay: f64, power: f64) -> f64 {
    let base = ((abs_coeff_sum / decay).max(1.0).ln() + 32.5) / decay;
    let mut t = base.max(1.0);
    for _ in 0..4 {
        t = base + power.max(0.0) * t.ln() / decay;
    }
    t.max(1.0)
}

fn abs_coeff_sum(f: &LaurentPoly) -> f64 {
    f.terms().map(|(_, c)| c.to_f64().unwrap_or(f64::INFINITY).abs()).sum()
}

/// `∫_1^∞ f(x) x^{-s-1} / log x dx`, computed as `∫_0^∞ f(e^t) e^{-st} / t dt`.
pub fn mellin_log_integral(f: &LaurentPoly, s: Complex64) -> Result<Complex64, NumericsError> {
    if !f.eval_at_one().is_zero() {
        return Err(NumericsError::Precondition("f(1) must vanish".into()));
    }
    let decay = max_exponent_bound(f, s)?;
    if f.is_zero() {
        return Ok(Complex64::zero());
    }
    let terms: Vec<(f64, f64)> = f
        .terms()
        .map(|(k, c)| (k as f64, c.to_f64().unwrap_or(f64::NAN)))
        .collect();
    let slope_at_zero = exponent_f64(&f.derivative_at_one());
    // Σ a(k) (e^{kt} - 1) = f(e^t) since f(1) = 0; expm1 keeps it accurate near 0
    let integrand = |t: f64| {
        if t == 0.0 {
            return Complex64::new(slope_at_zero, 0.0);
        }
        if t < 1.0 {
            let head: f64 = terms.iter().map(|&(k, a)| a * (k * t).exp_m1()).sum();
            (-s * t).exp() * (head / t)
        } else {
            terms.iter().map(|&(k, a)| ((k - s) * t).exp() * a).sum::<Complex64>() / t
        }
    };
    let upper = tail_cutoff(abs_coeff_sum(f), decay, 0.0);
    let r = quadrature::integrate(integrand, 0.0, upper, 1e-13, 1e-13, 4000);
    if !r.converged && r.error > 1e-10 {
        return Err(NumericsError::Quadrature { estimate: r.value, error: r.error });
    }
    Ok(r.value)
}

/// Compares `exp` of the log-Mellin integral with `ζ_f(s)`.
pub fn mellin_log_check(f: &LaurentPoly, s: Complex64, tol: f64) -> Result<VerificationReport, NumericsError> {
    let integral = mellin_log_integral(f, s)?;
    let zeta = eval_factored(&FactoredRational::zeta_of_poly(f), s)?;
    Ok(VerificationReport::numeric(
        "exp(int_1^inf f(x) x^(-s-1)/log x dx) = zeta_f(s)",
        integral.exp(),
        zeta,
        tol,
    )
    .with_param("f", f)
    .with_param("s", format!("{},{}", s.re, s.im))
    .with_param("integral", format!("{},{}", integral.re, integral.im)))
}

/// `Z_f(w, s) = Σ_k a(k) (s - k)^{-w}`, the termwise value of
/// `Γ(w)^{-1} ∫_1^∞ f(x) x^{-s-1} (log x)^{w-1} dx`.
pub fn two_variable_zeta(f: &LaurentPoly, w: Complex64, s: Complex64) -> Result<Complex64, NumericsError> {
    max_exponent_bound(f, s)?;
    Ok(f
        .terms()
        .map(|(k, a)| (-w * (s - k as f64).ln()).exp() * a.to_f64().unwrap_or(f64::NAN))
        .sum())
}

/// Direct quadrature of the defining integral of `Z_f(w, s)`; needs `Re w > 0`.
pub fn two_variable_zeta_quadrature(f: &LaurentPoly, w: Complex64, s: Complex64) -> Result<Complex64, NumericsError> {
    let decay = max_exponent_bound(f, s)?;
    if w.re <= 0.0 {
        return Err(NumericsError::Precondition("quadrature route needs Re(w) > 0".into()));
    }
    if f.is_zero() {
        return Ok(Complex64::zero());
    }
    let terms: Vec<(f64, f64)> = f
        .terms()
        .map(|(k, c)| (k as f64, c.to_f64().unwrap_or(f64::NAN)))
        .collect();
    let integrand = |t: f64| {
        if t == 0.0 {
            return Complex64::zero();
        }
        let body: Complex64 = terms.iter().map(|&(k, a)| ((k - s) * t).exp() * a).sum();
        body * ((w - 1.0) * t.ln()).exp()
    };
    let upper = tail_cutoff(abs_coeff_sum(f), decay, w.re - 1.0);
    let r = quadrature::integrate(integrand, 0.0, upper, 1e-13, 1e-12, 6000);
    if !r.converged && r.error > 1e-9 {
        return Err(NumericsError::Quadrature { estimate: r.value, error: r.error });
    }
    Ok(r.value / gamma_complex(w)?)
}

/// `exp(∂_w Z_f(w, s)|_{w=0})` by a central difference with step `h`.
pub fn zeta_from_two_variable(f: &LaurentPoly, s: Complex64, h: f64) -> Result<Complex64, NumericsError> {
    let plus = two_variable_zeta(f, Complex64::new(h, 0.0), s)?;
    let minus = two_variable_zeta(f, Complex64::new(-h, 0.0), s)?;
    Ok(((plus - minus) / (2.0 * h)).exp())
}

/// Checks `ζ_f(s) = exp(∂_w Z_f(w, s)|_{w=0})`.
pub fn two_variable_check(f: &LaurentPoly, s: Complex64, tolerances: &Tolerances) -> Result<VerificationReport, NumericsError> {
    let lhs = zeta_from_two_variable(f, s, tolerances.fd_step)?;
    let rhs = eval_factored(&FactoredRational::zeta_of_poly(f), s)?;
    Ok(VerificationReport::numeric(
        "exp(d/dw Z_f(w,s) at w=0) = zeta_f(s)",
        lhs,
        rhs,
        tolerances.finite_difference,
    )
    .with_param("f", f)
    .with_param("s", format!("{},{}", s.re, s.im))
    .with_param("h", tolerances.fd_step))
}

/// `Z(s)` evaluated as the literal product `∏_{k=0}^{K} Z(s + kN)`.
pub fn eval_product_termwise(z: &FactoredRational, modulus: u64, terms_k: u64, s: Complex64) -> Result<Complex64, NumericsError> {
    (0..=terms_k).try_fold(Complex64::new(1.0, 0.0), |acc, k| {
        Ok(acc * eval_factored(z, s + (k * modulus) as f64)?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{counting_gl, counting_gm_power, counting_sl, quartic};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn poly(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn gamma_values() {
        assert!((gamma_complex(c(1.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-14);
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!((gamma_complex(c(0.5, 0.0)).unwrap().re - sqrt_pi).abs() < 1e-13);
        assert!((gamma_complex(c(5.0, 0.0)).unwrap().re - 24.0).abs() < 1e-11);
        // Γ(-1/2) = -2√π
        assert!((gamma_complex(c(-0.5, 0.0)).unwrap() - c(-2.0 * sqrt_pi, 0.0)).norm() < 1e-13);
        // |Γ(i)|² = π / sinh π
        let g = gamma_complex(c(0.0, 1.0)).unwrap();
        let expected = std::f64::consts::PI / std::f64::consts::PI.sinh();
        assert!((g.norm_sqr() - expected).abs() / expected < 1e-13);
    }

    #[test]
    fn gamma_poles() {
        for z in [0.0, -1.0, -7.0] {
            assert!(matches!(gamma_complex(c(z, 0.0)), Err(NumericsError::Pole(_))));
        }
        assert!(gamma_complex(c(-1.0, 1e-6)).is_ok());
    }

    #[test]
    fn gamma_recurrence_on_grid() {
        let mut worst = 0.0f64;
        for i in 0..10 {
            for j in 0..10 {
                let z = c(-10.0 + 20.0 * (i as f64 + 0.37) / 10.0, -10.0 + 20.0 * (j as f64 + 0.61) / 10.0);
                let lhs = gamma_complex(z + 1.0).unwrap();
                let rhs = z * gamma_complex(z).unwrap();
                worst = worst.max(relative_error(rhs, lhs));
            }
        }
        assert!(worst <= 1e-11, "worst recurrence residual {worst:e}");
    }

    #[test]
    fn eval_examples() {
        let z = FactoredRational::from_int_factors(&[(2, 1), (4, -1)]);
        assert!((eval_factored(&z, c(6.0, 0.0)).unwrap() - c(2.0, 0.0)).norm() < 1e-15);
        let gl3 = FactoredRational::zeta_of_poly(&counting_gl(3).unwrap());
        assert!((eval_factored(&gl3, c(10.0, 0.0)).unwrap() - c(1.4, 0.0)).norm() < 1e-14);
        assert!(matches!(eval_factored(&z, c(4.0, 0.0)), Err(NumericsError::Pole(_))));
        assert_eq!(eval_factored(&z, c(2.0, 0.0)).unwrap(), c(0.0, 0.0));

        let g = infinite_shifted_product(&counting_gl(2).unwrap(), 2).unwrap();
        let raw = eval_gamma_product(&g, c(6.0, 0.0)).unwrap();
        assert!((raw - c(1.5, 0.0)).norm() < 1e-13, "{raw}");
        let normal = eval_gamma_product(&g.normalize(), c(6.0, 0.0)).unwrap();
        assert!((normal - c(1.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn normalize_preserves_value_n3() {
        let g = infinite_shifted_product(&counting_gl(2).unwrap(), 3).unwrap();
        let n = g.normalize();
        for s in [c(10.0, 3.0), c(7.3, -2.0), c(-1.7, 0.4)] {
            let a = eval_gamma_product(&g, s).unwrap();
            let b = eval_gamma_product(&n, s).unwrap();
            assert!(relative_error(b, a) < 1e-12, "s = {s}");
        }
    }

    #[test]
    fn factored_matches_termwise_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let z = FactoredRational::zeta_of_poly(&counting_gl(2).unwrap());
        for _ in 0..20 {
            let s = c(rng.gen_range(-8.0..8.0), rng.gen_range(0.3..6.0));
            let (n, k) = (rng.gen_range(1..=4u64), rng.gen_range(0..=12u64));
            let fac = eval_factored(&z.finite_shifted_product(n, k), s).unwrap();
            let term = eval_product_termwise(&z, n, k, s).unwrap();
            assert!(relative_error(fac, term) < 1e-12);
        }
    }

    #[test]
    fn defining_relation_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let corpus = [counting_gl(2).unwrap(), counting_gl(3).unwrap(), counting_gm_power(3).unwrap(), quartic(2, 9, 5, 6)];
        for f in &corpus {
            let zeta = FactoredRational::zeta_of_poly(f);
            for n in 1..=4u64 {
                let g = infinite_shifted_product(f, n).unwrap();
                for _ in 0..10 {
                    let s = c(rng.gen_range(2.0..12.0), rng.gen_range(0.5..5.0));
                    let lhs = eval_gamma_product(&g, s).unwrap() / eval_gamma_product(&g, s + n as f64).unwrap();
                    let rhs = eval_factored(&zeta, s).unwrap();
                    assert!(relative_error(lhs, rhs) < 1e-10, "f = {f}, N = {n}, s = {s}");
                }
            }
        }
    }

    #[test]
    fn sweep_convergent_gl2() {
        let f = counting_gl(2).unwrap();
        let ks: Vec<u64> = (0..=14).map(|m| 1u64 << m).chain([10_000]).collect();
        let sweep = partial_product_sweep(&f, 1, c(10.0, 3.0), &ks, &Tolerances::default()).unwrap();
        assert!(sweep.report.passed(), "{}", sweep.report);
        let at = sweep.points.iter().find(|p| p.k == 10_000).unwrap();
        assert!(at.rel_err.unwrap() < 1e-3);
        // closed form is (s-2)/(s-4)
        let expected = (c(10.0, 3.0) - 2.0) / (c(10.0, 3.0) - 4.0);
        assert!(relative_error(sweep.closed_form.unwrap(), expected) < 1e-12);
    }

    #[test]
    fn sweep_k_zero_is_z_itself() {
        let f = counting_gl(2).unwrap();
        let s = c(10.0, 3.0);
        let sweep = partial_product_sweep(&f, 2, s, &[0], &Tolerances::default()).unwrap();
        let z = eval_factored(&FactoredRational::zeta_of_poly(&f), s).unwrap();
        assert!(relative_error(sweep.points[0].value, z) < 1e-14);
        assert!(sweep.points[0].rel_err.unwrap().is_finite());
    }

    #[test]
    fn sweep_divergent_torus() {
        let f = counting_gm_power(1).unwrap();
        let ks: Vec<u64> = (6..=12).map(|m| 1u64 << m).collect();
        let sweep = partial_product_sweep(&f, 1, c(10.0, 0.0), &ks, &Tolerances::default()).unwrap();
        let slope = sweep.growth_exponent.unwrap();
        assert!((slope - 1.0).abs() < 0.1, "slope {slope}");
        assert!(sweep.report.passed());
        // Z_1^K(s) = (s + K)/(s - 1)
        let last = sweep.points.last().unwrap();
        assert!(relative_error(last.value, c((10.0 + 4096.0) / 9.0, 0.0)) < 1e-12);
    }

    #[test]
    fn sweep_rejects_poles() {
        let f = counting_gl(2).unwrap();
        assert!(matches!(
            partial_product_sweep(&f, 1, c(-3.0, 0.0), &[10], &Tolerances::default()),
            Err(NumericsError::Pole(_))
        ));
    }

    #[test]
    fn mellin_examples() {
        let v = mellin_log_integral(&poly("x^3 - x"), c(6.0, 0.0)).unwrap();
        assert!((v.re - (5.0f64 / 3.0).ln()).abs() < 1e-10, "{v}");
        assert!((v.re - 0.51082562).abs() < 1e-8);
        let v = mellin_log_integral(&poly("x - 1"), c(4.0, 0.0)).unwrap();
        assert!((v.re - 0.28768207).abs() < 1e-8);
        assert_eq!(mellin_log_integral(&LaurentPoly::zero(), c(1.0, 0.0)).unwrap(), Complex64::zero());
        assert!(mellin_log_check(&poly("x^3 - x"), c(6.0, 2.0), 1e-8).unwrap().passed());
    }

    #[test]
    fn mellin_preconditions() {
        assert!(matches!(mellin_log_integral(&LaurentPoly::one(), c(3.0, 0.0)), Err(NumericsError::Precondition(_))));
        assert!(matches!(mellin_log_integral(&poly("x^3 - x"), c(2.5, 0.0)), Err(NumericsError::Precondition(_))));
    }

    #[test]
    fn two_variable_examples() {
        let v = two_variable_zeta(&poly("x - 1"), c(1.0, 0.0), c(3.0, 0.0)).unwrap();
        assert!((v.re - 1.0 / 6.0).abs() < 1e-15);
        let q = two_variable_zeta_quadrature(&poly("x - 1"), c(1.0, 0.0), c(3.0, 0.0)).unwrap();
        assert!((q - v).norm() < 1e-10, "{q}");

        let f = counting_gl(2).unwrap();
        let w0 = two_variable_zeta(&f, Complex64::zero(), c(7.0, 1.0)).unwrap();
        assert!(w0.norm() < 1e-15);

        let z = zeta_from_two_variable(&poly("x^3 - x"), c(6.0, 0.0), 1e-5).unwrap();
        assert!((z.re - 5.0 / 3.0).abs() / (5.0 / 3.0) < 1e-6);
        assert!(matches!(two_variable_zeta(&f, c(1.0, 0.0), c(3.0, 0.0)), Err(NumericsError::Precondition(_))));
    }

    #[test]
    fn two_variable_termwise_matches_quadrature() {
        for (f, w, s) in [
            (counting_sl(2).unwrap(), c(1.0, 0.0), c(5.0, 0.0)),
            (counting_gl(2).unwrap(), c(2.0, 0.5), c(6.5, 1.0)),
            (LaurentPoly::one(), c(1.5, 0.0), c(2.0, -1.0)),
            (quartic(1, 4, 0, 2), c(0.5, 0.0), c(5.0, 0.0)),
        ] {
            let a = two_variable_zeta(&f, w, s).unwrap();
            let b = two_variable_zeta_quadrature(&f, w, s).unwrap();
            assert!(relative_error(b, a) < 1e-8, "f = {f}, w = {w}, s = {s}: {a} vs {b}");
        }
    }

    #[test]
    fn tolerance_overrides() {
        let t = Tolerances::default().with_overrides("mellin=1e-6, partial_product=2e-3").unwrap();
        assert_eq!(t.mellin, 1e-6);
        assert_eq!(t.partial_product, 2e-3);
        assert_eq!(Tolerances::default().with_overrides("1e-7").unwrap().mellin, 1e-7);
        assert!(Tolerances::default().with_overrides("bogus=1").is_err());
        assert!(Tolerances::default().with_overrides("mellin=-1").is_err());
    }

    #[test]
    fn complex_point_parsing() {
        assert_eq!("10,3".parse::<ComplexPoint>().unwrap().value(), c(10.0, 3.0));
        assert_eq!("6".parse::<ComplexPoint>().unwrap().value(), c(6.0, 0.0));
        assert!("a,b".parse::<ComplexPoint>().is_err());
        assert!(ComplexPoint::new(f64::NAN, 0.0).is_err());
    }
}
