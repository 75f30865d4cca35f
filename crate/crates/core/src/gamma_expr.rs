//! Gamma products `c · ∏_β Γ((s - β)/N)^{ε_β} · R(s)` representing the
//! infinite shifted product `Z_N^∞(s) = ∏_{k≥0} ζ_f(s + kN)`.
//!
//! For `ζ_f(s) = ∏ (s - k)^{-a(k)}` each factor `(s - k + jN)` equals
//! `N (j + (s - k)/N)`, and `∏_{j=0}^{K} (j + α) = Γ(α + K + 1) / Γ(α)`. The
//! `K`-dependent gammas cancel in the limit exactly when `f(1) = f'(1) = 0`,
//! leaving `∏_k Γ((s - k)/N)^{a(k)}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::catalog::{counting_gl, counting_sl, CatalogError};
use crate::laurent::{bigint_to_json, LaurentPoly};
use crate::report::VerificationReport;
use crate::zeta_expr::{format_rational, join_fraction, rational, rational_to_json, FactoredRational, RenderStyle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GammaError {
    #[error("infinite product diverges: f(1) = {value_at_one}, f'(1) = {derivative_at_one}")]
    Divergent {
        value_at_one: BigInt,
        derivative_at_one: BigInt,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// Convergence verdict for `Z_N^∞`. The criterion does not depend on `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Convergence {
    Converges,
    Diverges {
        value_at_one: BigInt,
        derivative_at_one: BigInt,
    },
}

impl Convergence {
    pub fn converges(&self) -> bool {
        matches!(self, Convergence::Converges)
    }
}

/// `Z_N^∞` converges iff `f(1) = 0` and `f'(1) = 0`.
pub fn check_convergence(f: &LaurentPoly, _modulus: u64) -> Convergence {
    let value_at_one = f.eval_at_one();
    let derivative_at_one = f.derivative_at_one();
    if value_at_one.is_zero() && derivative_at_one.is_zero() {
        Convergence::Converges
    } else {
        Convergence::Diverges {
            value_at_one,
            derivative_at_one,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct GammaProduct {
    modulus: u64,
    gamma: BTreeMap<BigRational, BigInt>,
    rational: FactoredRational,
    scalar: BigRational,
}

impl GammaProduct {
    pub fn new(modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        GammaProduct {
            modulus,
            gamma: BTreeMap::new(),
            rational: FactoredRational::one(),
            scalar: BigRational::one(),
        }
    }

    pub fn from_parts<I>(modulus: u64, gamma: I, rational: FactoredRational, scalar: BigRational) -> Self
    where
        I: IntoIterator<Item = (BigRational, BigInt)>,
    {
        assert!(scalar.is_positive(), "scalar must be positive");
        let mut g = GammaProduct::new(modulus);
        for (b, e) in gamma {
            g.add_gamma(b, e);
        }
        g.rational = rational;
        g.scalar = scalar;
        g
    }

    fn add_gamma(&mut self, root: BigRational, e: BigInt) {
        if e.is_zero() {
            return;
        }
        let entry = self.gamma.entry(root.clone()).or_insert_with(BigInt::zero);
        *entry += e;
        if entry.is_zero() {
            self.gamma.remove(&root);
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Gamma factors `(β, ε)` for `Γ((s - β)/N)^ε`, ascending in `β`.
    pub fn gamma_factors(&self) -> impl DoubleEndedIterator<Item = (&BigRational, &BigInt)> + '_ {
        self.gamma.iter()
    }

    pub fn rational_part(&self) -> &FactoredRational {
        &self.rational
    }

    pub fn scalar(&self) -> &BigRational {
        &self.scalar
    }

    pub fn has_gamma_factors(&self) -> bool {
        !self.gamma.is_empty()
    }

    /// `G(s + t)`.
    pub fn shift(&self, t: &BigRational) -> Self {
        GammaProduct {
            modulus: self.modulus,
            gamma: self.gamma.iter().map(|(b, e)| (b - t, e.clone())).collect(),
            rational: self.rational.shift(t),
            scalar: self.scalar.clone(),
        }
    }

    /// Moves every gamma factor onto the smallest root of its class mod `N`
    /// via `Γ(z + 1) = z Γ(z)`: for `β = β₀ + mN`,
    /// `Γ((s - β)/N) = Γ((s - β₀)/N) · N^m / ∏_{j=1}^{m} (s - β₀ - jN)`.
    pub fn normalize(&self) -> GammaProduct {
        let n = BigRational::from_integer(BigInt::from(self.modulus));
        let mut classes: BTreeMap<BigRational, Vec<(&BigRational, &BigInt)>> = BTreeMap::new();
        for (b, e) in &self.gamma {
            let residue = b - &n * (b / &n).floor();
            classes.entry(residue).or_default().push((b, e));
        }
        let mut out = GammaProduct {
            modulus: self.modulus,
            gamma: BTreeMap::new(),
            rational: self.rational.clone(),
            scalar: self.scalar.clone(),
        };
        for members in classes.values() {
            // BTreeMap iteration keeps each class ascending
            let base = members[0].0.clone();
            for &(b, e) in members {
                out.add_gamma(base.clone(), e.clone());
                let steps = ((b - &base) / &n)
                    .to_integer()
                    .to_u64()
                    .expect("class offset is a nonnegative integer");
                if steps == 0 {
                    continue;
                }
                let power = BigInt::from(steps) * e;
                out.scalar *= rational_pow(&n, &power);
                let mut root = base.clone();
                for _ in 0..steps {
                    root += &n;
                    out.rational.add_factor(root.clone(), -e);
                }
            }
        }
        out
    }

    /// The rational function represented, if no gamma factors survive
    /// normalization.
    pub fn extract_rational(&self) -> Option<FactoredRational> {
        let normal = self.normalize();
        if normal.has_gamma_factors() {
            return None;
        }
        let scalar = normal.rational.scalar() * &normal.scalar;
        Some(normal.rational.with_scalar(scalar))
    }

    pub fn render(&self, style: RenderStyle) -> String {
        match style {
            RenderStyle::Json => self.to_json().to_string(),
            RenderStyle::Plain => self.render_text(false),
            RenderStyle::Latex => self.render_text(true),
        }
    }

    fn gamma_string(&self, root: &BigRational, latex: bool) -> String {
        let inner = if root.is_zero() {
            "s".to_string()
        } else {
            let sign = if root.is_negative() { '+' } else { '-' };
            format!("s{sign}{}", format_rational(&root.abs(), latex))
        };
        let gamma = if latex { "\\Gamma" } else { "Γ" };
        match (self.modulus, latex) {
            (1, _) => format!("{gamma}({inner})"),
            (n, true) => format!("{gamma}(\\frac{{{inner}}}{{{n}}})"),
            (n, false) if root.is_zero() => format!("{gamma}({inner}/{n})"),
            (n, false) => format!("{gamma}(({inner})/{n})"),
        }
    }

    fn render_text(&self, latex: bool) -> String {
        let total_scalar = self.rational.scalar() * &self.scalar;
        let mut num = Vec::new();
        let mut den = Vec::new();
        if !total_scalar.numer().is_one() {
            num.push(total_scalar.numer().to_string());
        }
        if !total_scalar.denom().is_one() {
            den.push(total_scalar.denom().to_string());
        }
        for (b, e) in &self.gamma {
            let base = self.gamma_string(b, latex);
            let mag = e.abs();
            let s = match (mag.is_one(), latex) {
                (true, _) => base,
                (false, true) => format!("{base}^{{{mag}}}"),
                (false, false) => format!("{base}^{mag}"),
            };
            if e.is_positive() {
                num.push(s);
            } else {
                den.push(s);
            }
        }
        let (rn, rd) = self.rational.factor_strings(latex);
        num.extend(rn);
        den.extend(rd);
        join_fraction(&num, &den, latex)
    }

    /// `{"N": n, "gamma": [[num, den, eps], ...], "rational": {...}, "scalar": [num, den]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "N": self.modulus,
            "gamma": self
                .gamma
                .iter()
                .map(|(b, e)| json!([bigint_to_json(b.numer()), bigint_to_json(b.denom()), bigint_to_json(e)]))
                .collect::<Vec<_>>(),
            "rational": self.rational.to_json(),
            "scalar": rational_to_json(&self.scalar),
        })
    }
}

fn rational_pow(base: &BigRational, exponent: &BigInt) -> BigRational {
    let mag = exponent
        .abs()
        .to_usize()
        .expect("gamma normalization exponent fits in usize");
    let p = num_traits::pow(base.clone(), mag);
    if exponent.is_negative() {
        p.recip()
    } else {
        p
    }
}

impl fmt::Display for GammaProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(RenderStyle::Plain))
    }
}

impl fmt::Debug for GammaProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GammaProduct[N={}]({self})", self.modulus)
    }
}

/// Closed form of `∏_{k≥0} ζ_f(s + kN)`: `∏_k Γ((s - k)/N)^{a(k)}`.
pub fn infinite_shifted_product(f: &LaurentPoly, modulus: u64) -> Result<GammaProduct, GammaError> {
    if modulus == 0 {
        return Err(GammaError::Precondition("modulus N must be positive".into()));
    }
    match check_convergence(f, modulus) {
        Convergence::Converges => {}
        Convergence::Diverges {
            value_at_one,
            derivative_at_one,
        } => {
            return Err(GammaError::Divergent {
                value_at_one,
                derivative_at_one,
            })
        }
    }
    let mut g = GammaProduct::new(modulus);
    for (k, a) in f.terms() {
        g.add_gamma(rational(k), a.clone());
    }
    Ok(g)
}

/// Whether `N | (|a-b| + |c-d|)/2` or `N | (|a-b| - |c-d|)/2`. Defined on the
/// convergent family `a + b = c + d` only; half-integers never divide.
pub fn quartic_rationality_condition(a: i64, b: i64, c: i64, d: i64, modulus: u64) -> Result<bool, GammaError> {
    if a + b != c + d {
        return Err(GammaError::Precondition(format!(
            "quartic ({a},{b},{c},{d}) is outside the convergent family a+b = c+d"
        )));
    }
    if modulus == 0 {
        return Err(GammaError::Precondition("modulus N must be positive".into()));
    }
    let p = (a - b).abs();
    let q = (c - d).abs();
    let n = modulus as i64;
    let divides_half = |twice: i64| twice % 2 == 0 && (twice / 2) % n == 0;
    Ok(divides_half(p + q) || divides_half(p - q))
}

/// Checks `ζ_SL(r)(s) = ∏_{n≥1} ζ_GL(r)(s + n)` symbolically.
pub fn theorem1_check(r: u32) -> Result<VerificationReport, GammaError> {
    if r < 2 {
        return Err(GammaError::Precondition(format!(
            "rank r = {r}: the SL/GL telescoping identity needs r >= 2"
        )));
    }
    let g = infinite_shifted_product(&counting_gl(r)?, 1)?;
    let lhs = g
        .shift(&rational(1))
        .extract_rational()
        .ok_or_else(|| GammaError::Precondition("GL product with N = 1 left gamma factors".into()))?;
    let rhs = FactoredRational::zeta_of_poly(&counting_sl(r)?);
    let equal = lhs == rhs;
    Ok(VerificationReport::symbolic(
        format!("prod_(n>=1) zeta_GL({r})(s+n) = zeta_SL({r})(s)"),
        lhs.to_string(),
        rhs.to_string(),
        equal,
    )
    .with_param("r", r))
}
