//! Factored rational functions of `s` and the absolute zeta function
//! `ζ_f(s) = ∏_k (s - k)^{-a(k)}` of a counting polynomial.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::laurent::{bigint_from_json, bigint_to_json, LaurentPoly, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprJsonError {
    #[error("malformed expression JSON: {0}")]
    Malformed(&'static str),
    #[error("scalar must be a positive rational")]
    NonPositiveScalar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderStyle {
    Plain,
    Latex,
    Json,
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `scalar · ∏_β (s - β)^{e_β}` in canonical form: exact rational roots,
/// nonzero integer exponents, positive rational scalar.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FactoredRational {
    scalar: BigRational,
    factors: BTreeMap<BigRational, BigInt>,
}

impl Default for FactoredRational {
    fn default() -> Self {
        FactoredRational::one()
    }
}

impl FactoredRational {
    pub fn one() -> Self {
        FactoredRational {
            scalar: BigRational::one(),
            factors: BTreeMap::new(),
        }
    }

    /// Builds from `(root, exponent)` pairs; repeated roots accumulate.
    pub fn from_factors<I, R, E>(factors: I) -> Self
    where
        I: IntoIterator<Item = (R, E)>,
        R: Into<BigRational>,
        E: Into<BigInt>,
    {
        let mut z = FactoredRational::one();
        for (root, e) in factors {
            z.add_factor(root.into(), e.into());
        }
        z
    }

    /// Convenience for integer roots: `∏ (s - β)^e`.
    pub fn from_int_factors(factors: &[(i64, i64)]) -> Self {
        FactoredRational::from_factors(factors.iter().map(|&(b, e)| (rational(b), e)))
    }

    /// `c · Z` for a positive rational `c`.
    pub fn with_scalar(mut self, scalar: BigRational) -> Self {
        assert!(scalar.is_positive(), "scalar must be positive");
        self.scalar = scalar;
        self
    }

    pub(crate) fn add_factor(&mut self, root: BigRational, e: BigInt) {
        if e.is_zero() {
            return;
        }
        let entry = self.factors.entry(root.clone()).or_insert_with(BigInt::zero);
        *entry += e;
        if entry.is_zero() {
            self.factors.remove(&root);
        }
    }

    pub fn scalar(&self) -> &BigRational {
        &self.scalar
    }

    /// Nonzero-exponent factors in ascending root order.
    pub fn factors(&self) -> impl DoubleEndedIterator<Item = (&BigRational, &BigInt)> + '_ {
        self.factors.iter()
    }

    pub fn exponent(&self, root: &BigRational) -> BigInt {
        self.factors.get(root).cloned().unwrap_or_default()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty() && self.scalar.is_one()
    }

    /// Whether no linear factors are present (the expression is a constant).
    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    /// `Σ e_β`: numerator degree minus denominator degree.
    pub fn degree(&self) -> BigInt {
        self.factors.values().sum()
    }

    /// `ζ_f(s) = ∏_k (s - k)^{-a(k)}`.
    pub fn zeta_of_poly(f: &LaurentPoly) -> Self {
        FactoredRational::from_factors(f.terms().map(|(k, a)| (rational(k), -a)))
    }

    /// `Z(s + t)`: every root `β` becomes `β - t`.
    pub fn shift(&self, t: &BigRational) -> Self {
        FactoredRational {
            scalar: self.scalar.clone(),
            factors: self
                .factors
                .iter()
                .map(|(b, e)| (b - t, e.clone()))
                .collect(),
        }
    }

    pub fn shift_int(&self, t: i64) -> Self {
        self.shift(&rational(t))
    }

    pub fn multiply(&self, other: &FactoredRational) -> Self {
        let mut out = self.clone();
        out.scalar *= &other.scalar;
        for (b, e) in &other.factors {
            out.add_factor(b.clone(), e.clone());
        }
        out
    }

    pub fn inverse(&self) -> Self {
        FactoredRational {
            scalar: self.scalar.recip(),
            factors: self.factors.iter().map(|(b, e)| (b.clone(), -e)).collect(),
        }
    }

    /// `Z_N^K(s) = ∏_{k=0}^{K} Z(s + kN)`, telescoped in the factor map.
    pub fn finite_shifted_product(&self, modulus: u64, terms_k: u64) -> Self {
        let mut out = FactoredRational {
            scalar: num_traits::pow(self.scalar.clone(), (terms_k + 1) as usize),
            factors: BTreeMap::new(),
        };
        let step = BigRational::from_integer(BigInt::from(modulus));
        let mut offset = BigRational::zero();
        for _ in 0..=terms_k {
            for (b, e) in &self.factors {
                out.add_factor(b - &offset, e.clone());
            }
            offset += &step;
        }
        out
    }

    /// Whether `Z(D - s) = Z(s)^C` holds identically.
    pub fn satisfies(&self, fe: &FunctionalEquation) -> bool {
        let parity_even = self.degree().is_even();
        let sign_ok = match fe.sign {
            // Z(D - s) = scalar · (-1)^{Σe} · ∏ (s - (D - β))^{e}
            Sign::Plus => parity_even,
            Sign::Minus => parity_even && self.scalar.is_one(),
        };
        if !sign_ok {
            return false;
        }
        self.factors.iter().all(|(b, e)| {
            let mirror = self.exponent(&(&fe.center - b));
            match fe.sign {
                Sign::Plus => &mirror == e,
                Sign::Minus => mirror == -e,
            }
        })
    }

    /// All `(D, C)` with `Z(D - s) = Z(s)^C`, ascending in `D` with `C = +1`
    /// first. Candidate centers are pairwise root sums.
    pub fn detect_functional_equation(&self) -> FunctionalEquations {
        if self.factors.is_empty() {
            return FunctionalEquations {
                trivial: true,
                equations: Vec::new(),
            };
        }
        let roots: Vec<&BigRational> = self.factors.keys().collect();
        let mut centers: Vec<BigRational> = Vec::new();
        for (i, a) in roots.iter().enumerate() {
            for b in &roots[i..] {
                centers.push(*a + *b);
            }
        }
        centers.sort();
        centers.dedup();
        let equations = centers
            .into_iter()
            .flat_map(|center| {
                [Sign::Plus, Sign::Minus].map(|sign| FunctionalEquation {
                    center: center.clone(),
                    sign,
                })
            })
            .filter(|fe| self.satisfies(fe))
            .collect();
        FunctionalEquations {
            trivial: false,
            equations,
        }
    }

    pub fn render(&self, style: RenderStyle) -> String {
        match style {
            RenderStyle::Plain => self.render_text(false),
            RenderStyle::Latex => self.render_text(true),
            RenderStyle::Json => self.to_json().to_string(),
        }
    }

    /// Numerator and denominator factor strings, descending root order.
    pub(crate) fn factor_strings(&self, latex: bool) -> (Vec<String>, Vec<String>) {
        let mut num = Vec::new();
        let mut den = Vec::new();
        for (b, e) in self.factors.iter().rev() {
            let base = linear_factor(b, latex);
            let mag = e.abs();
            let s = if mag.is_one() {
                base
            } else if latex {
                format!("{base}^{{{mag}}}")
            } else {
                format!("{base}^{mag}")
            };
            if e.is_positive() {
                num.push(s);
            } else {
                den.push(s);
            }
        }
        (num, den)
    }

    fn render_text(&self, latex: bool) -> String {
        let (mut num, mut den) = self.factor_strings(latex);
        let sn = self.scalar.numer();
        let sd = self.scalar.denom();
        if !sn.is_one() {
            num.insert(0, sn.to_string());
        }
        if !sd.is_one() {
            den.insert(0, sd.to_string());
        }
        join_fraction(&num, &den, latex)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "scalar": [bigint_to_json(self.scalar.numer()), bigint_to_json(self.scalar.denom())],
            "factors": self
                .factors
                .iter()
                .map(|(b, e)| json!([bigint_to_json(b.numer()), bigint_to_json(b.denom()), bigint_to_json(e)]))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self, ExprJsonError> {
        let scalar = rational_from_json(value.get("scalar").ok_or(ExprJsonError::Malformed("missing scalar"))?)?;
        if !scalar.is_positive() {
            return Err(ExprJsonError::NonPositiveScalar);
        }
        let items = value
            .get("factors")
            .and_then(Value::as_array)
            .ok_or(ExprJsonError::Malformed("missing factors array"))?;
        let mut z = FactoredRational::one().with_scalar(scalar);
        for item in items {
            let triple = item
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or(ExprJsonError::Malformed("factor must be [num, den, exponent]"))?;
            let num = bigint_from_json(&triple[0]).ok_or(ExprJsonError::Malformed("root numerator"))?;
            let den = bigint_from_json(&triple[1]).ok_or(ExprJsonError::Malformed("root denominator"))?;
            if den.is_zero() {
                return Err(ExprJsonError::Malformed("zero denominator"));
            }
            let e = bigint_from_json(&triple[2]).ok_or(ExprJsonError::Malformed("exponent"))?;
            z.add_factor(BigRational::new(num, den), e);
        }
        Ok(z)
    }
}

pub(crate) fn rational_from_json(v: &Value) -> Result<BigRational, ExprJsonError> {
    let pair = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or(ExprJsonError::Malformed("rational must be [num, den]"))?;
    let n = bigint_from_json(&pair[0]).ok_or(ExprJsonError::Malformed("numerator"))?;
    let d = bigint_from_json(&pair[1]).ok_or(ExprJsonError::Malformed("denominator"))?;
    if d.is_zero() {
        return Err(ExprJsonError::Malformed("zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

pub(crate) fn rational_to_json(q: &BigRational) -> Value {
    json!([bigint_to_json(q.numer()), bigint_to_json(q.denom())])
}

/// `s`, `(s-3)`, `(s+1/2)`.
fn linear_factor(root: &BigRational, latex: bool) -> String {
    if root.is_zero() {
        return "s".to_string();
    }
    let sign = if root.is_negative() { '+' } else { '-' };
    format!("(s{sign}{})", format_rational(&root.abs(), latex))
}

pub(crate) fn format_rational(q: &BigRational, latex: bool) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else if latex {
        format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn join_fraction(num: &[String], den: &[String], latex: bool) -> String {
    let top = if num.is_empty() { "1".to_string() } else { num.concat() };
    if den.is_empty() {
        return top;
    }
    let bottom = den.concat();
    if latex {
        format!("\\frac{{{top}}}{{{bottom}}}")
    } else if den.len() == 1 {
        format!("{top}/{bottom}")
    } else {
        format!("{top}/({bottom})")
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(RenderStyle::Plain))
    }
}

impl fmt::Debug for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FactoredRational({self})")
    }
}

impl Mul for &FactoredRational {
    type Output = FactoredRational;
    fn mul(self, rhs: &FactoredRational) -> FactoredRational {
        self.multiply(rhs)
    }
}

impl Mul for FactoredRational {
    type Output = FactoredRational;
    fn mul(self, rhs: FactoredRational) -> FactoredRational {
        self.multiply(&rhs)
    }
}

/// `Z(D - s) = Z(s)^C`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctionalEquation {
    pub center: BigRational,
    pub sign: Sign,
}

impl FunctionalEquation {
    pub fn new(center: i64, sign: Sign) -> Self {
        FunctionalEquation {
            center: rational(center),
            sign,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "center": rational_to_json(&self.center), "sign": self.sign.as_i64() })
    }
}

impl fmt::Display for FunctionalEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = format_rational(&self.center, false);
        match self.sign {
            Sign::Plus => write!(f, "Z({d}-s) = Z(s)"),
            Sign::Minus => write!(f, "Z({d}-s) = Z(s)^-1"),
        }
    }
}

/// Result of functional-equation detection. A constant expression satisfies
/// every `(D, C)` compatible with its scalar; that case is flagged as
/// `trivial` instead of being enumerated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalEquations {
    pub trivial: bool,
    pub equations: Vec<FunctionalEquation>,
}

impl FunctionalEquations {
    pub fn contains(&self, fe: &FunctionalEquation) -> bool {
        self.equations.contains(fe)
    }
}

/// Numeric value of a rational for diagnostics.
pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
