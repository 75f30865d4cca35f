//! Exact Laurent polynomials in one variable with big-integer coefficients.
//!
//! A [`LaurentPoly`] is the counting function `f(x) = Σ a(k) x^k` behind an
//! absolute zeta function. Besides ring arithmetic this module carries the
//! predicates the convergence and rationality deciders reduce to: the two
//! moments at `x = 1`, reciprocal symmetry (absolute automorphy), exact
//! division by `1 - x^{-N}` and vanishing at primitive roots of unity.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;
use thiserror::Error;

/// Sign `C` in a symmetry `f(1/x) = C x^{-D} f(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Absolute automorphy descriptor: `f(1/x) = sign · x^{-degree} · f(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Automorphy {
    pub sign: Sign,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParsePolyError {
    #[error("empty polynomial expression")]
    Empty,
    #[error("unexpected token `{0}` in polynomial")]
    UnexpectedToken(String),
    #[error("invalid exponent `{0}`")]
    BadExponent(String),
    #[error("invalid coefficient `{0}`")]
    BadCoefficient(String),
    #[error("invalid JSON polynomial: {0}")]
    Json(String),
}

/// Laurent polynomial with exact integer coefficients. Zero coefficients are
/// never stored, so structural equality is polynomial equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, 1)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        LaurentPoly::monomial(1, 1)
    }

    pub fn monomial(exponent: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(exponent, coeff.into());
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = LaurentPoly::zero();
        for (k, c) in terms {
            p.add_term(k, c.into());
        }
        p
    }

    /// `1 - x^{-n}`.
    pub fn one_minus_x_neg(n: u64) -> Self {
        LaurentPoly::from_terms([(0, 1), (-(n as i64), -1)])
    }

    fn add_term(&mut self, exponent: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponent).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponent: i64) -> BigInt {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `x^k`.
    pub fn shift_exponents(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `f(1) = Σ a(k)`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// `f'(1) = Σ k·a(k)`.
    pub fn derivative_at_one(&self) -> BigInt {
        self.terms.iter().map(|(k, c)| c * BigInt::from(*k)).sum()
    }

    /// Evaluates at an integer point `q ≠ 0`. Terms with negative exponent
    /// must divide exactly, otherwise `None`.
    pub fn eval_integer(&self, q: &BigInt) -> Option<BigInt> {
        if q.is_zero() {
            return if self.min_exponent().is_some_and(|m| m < 0) {
                None
            } else {
                Some(self.coeff(0))
            };
        }
        let lo = self.min_exponent().unwrap_or(0).min(0);
        // q^{-lo} · f(q) is an ordinary polynomial value
        let shifted = self.shift_exponents(-lo);
        let mut acc = BigInt::zero();
        for (k, c) in shifted.terms.iter() {
            acc += c * num_traits::pow(q.clone(), *k as usize);
        }
        let denom = num_traits::pow(q.clone(), (-lo) as usize);
        let (quot, rem) = acc.div_rem(&denom);
        rem.is_zero().then_some(quot)
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(k, c)| x.powi(*k as i32) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    /// `f(1/x)`: every exponent negated.
    pub fn reciprocal_transform(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (-k, c.clone())).collect(),
        }
    }

    /// The unique `(C, D)` with `f(1/x) = C x^{-D} f(x)`, if any. Matching the
    /// extreme terms forces `D = min + max`, so only that candidate is tested.
    pub fn detect_automorphy(&self) -> Option<Automorphy> {
        let degree = self.min_exponent()? + self.max_exponent()?;
        let reflected = self.reciprocal_transform();
        let scaled = self.shift_exponents(-degree);
        if reflected == scaled {
            Some(Automorphy { sign: Sign::Plus, degree })
        } else if reflected == -scaled {
            Some(Automorphy { sign: Sign::Minus, degree })
        } else {
            None
        }
    }

    /// Automorphy of the formal quotient `f(x) / (1 - x^{-N})`.
    pub fn quotient_automorphy(&self, n: u64) -> Option<Automorphy> {
        self.detect_automorphy().map(|a| Automorphy {
            sign: a.sign.flip(),
            degree: a.degree + n as i64,
        })
    }

    /// Coefficient sums over the residue classes of the exponent mod `n`,
    /// indexed by residue in `0..n`.
    pub fn residue_class_sums(&self, n: u64) -> Vec<BigInt> {
        assert!(n >= 1, "modulus must be positive");
        let mut sums = vec![BigInt::zero(); n as usize];
        for (k, c) in &self.terms {
            sums[k.rem_euclid(n as i64) as usize] += c;
        }
        sums
    }

    /// The Laurent polynomial `q` with `q · (1 - x^{-N}) = f`, if it exists.
    pub fn divide_by_one_minus_x_neg(&self, n: u64) -> Option<LaurentPoly> {
        assert!(n >= 1, "modulus must be positive");
        if self.residue_class_sums(n).iter().any(|s| !s.is_zero()) {
            return None;
        }
        let (Some(lo), Some(hi)) = (self.min_exponent(), self.max_exponent()) else {
            return Some(LaurentPoly::zero());
        };
        // q_k = a(k) + q_{k+N}, filled from the top down
        let step = n as i64;
        let mut q: BTreeMap<i64, BigInt> = BTreeMap::new();
        for k in (lo..=hi).rev() {
            let above = q.get(&(k + step)).cloned().unwrap_or_default();
            let v = self.coeff(k) + above;
            if !v.is_zero() {
                q.insert(k, v);
            }
        }
        Some(LaurentPoly { terms: q })
    }

    /// Whether `Φ_N` divides `x^m f` for the smallest `m` making it a polynomial,
    /// i.e. whether `f` vanishes at a primitive `N`-th root of unity.
    pub fn vanishes_at_primitive_root(&self, n: u64) -> bool {
        let Some(lo) = self.min_exponent() else {
            return true;
        };
        let dense = DensePoly::from_laurent(&self.shift_exponents(-lo));
        let phi = DensePoly::from_laurent(&cyclotomic(n));
        dense.rem_monic(&phi).is_zero()
    }

    /// Canonical JSON form `[[k, a(k)], ...]`, descending in `k`. Coefficients
    /// that do not fit in `i64` are emitted as decimal strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .rev()
                .map(|(k, c)| Value::Array(vec![Value::from(*k), bigint_to_json(c)]))
                .collect(),
        )
    }

    pub fn from_json(value: &Value) -> Result<Self, ParsePolyError> {
        let err = |m: &str| ParsePolyError::Json(m.to_string());
        let items = value.as_array().ok_or_else(|| err("expected an array of terms"))?;
        let mut p = LaurentPoly::zero();
        for item in items {
            let pair = item.as_array().filter(|a| a.len() == 2).ok_or_else(|| err("term must be [k, a]"))?;
            let k = pair[0].as_i64().ok_or_else(|| err("exponent must be an integer"))?;
            let c = bigint_from_json(&pair[1]).ok_or_else(|| err("coefficient must be an integer"))?;
            p.add_term(k, c);
        }
        Ok(p)
    }
}

pub(crate) fn bigint_to_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(c.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// The `N`-th cyclotomic polynomial, by exact division of `x^N - 1` by `Φ_d`
/// for the proper divisors `d` of `N`. Results are memoized.
pub fn cyclotomic(n: u64) -> LaurentPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u64, LaurentPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cyclotomic cache poisoned").get(&n) {
        return p.clone();
    }
    let mut quotient = DensePoly::from_laurent(&LaurentPoly::from_terms([(n as i64, 1), (0, -1)]));
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let phi_d = DensePoly::from_laurent(&cyclotomic(d));
        let (q, r) = quotient.div_rem_monic(&phi_d);
        debug_assert!(r.is_zero());
        quotient = q;
    }
    let result = quotient.to_laurent();
    cache
        .lock()
        .expect("cyclotomic cache poisoned")
        .insert(n, result.clone());
    result
}

/// Ordinary polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug)]
struct DensePoly(Vec<BigInt>);

impl DensePoly {
    fn from_laurent(p: &LaurentPoly) -> Self {
        let hi = p.max_exponent().unwrap_or(0);
        debug_assert!(p.min_exponent().unwrap_or(0) >= 0);
        let mut v = vec![BigInt::zero(); (hi + 1) as usize];
        for (k, c) in p.terms() {
            v[k as usize] = c.clone();
        }
        let mut d = DensePoly(v);
        d.trim();
        d
    }

    fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.0.iter().enumerate().map(|(k, c)| (k as i64, c.clone())))
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn div_rem_monic(&self, divisor: &DensePoly) -> (DensePoly, DensePoly) {
        let dl = divisor.0.len();
        assert!(dl > 0 && divisor.0[dl - 1].is_one(), "divisor must be monic");
        let mut rem = self.0.clone();
        if rem.len() < dl {
            return (DensePoly(Vec::new()), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dl + 1];
        for i in (0..quot.len()).rev() {
            let lead = rem[i + dl - 1].clone();
            if lead.is_zero() {
                continue;
            }
            for (j, c) in divisor.0.iter().enumerate() {
                rem[i + j] -= &lead * c;
            }
            quot[i] = lead;
        }
        let mut q = DensePoly(quot);
        let mut r = DensePoly(rem);
        q.trim();
        r.trim();
        (q, r)
    }

    fn rem_monic(&self, divisor: &DensePoly) -> DensePoly {
        self.div_rem_monic(divisor).1
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let unit = mag.is_one();
            if *k == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !unit {
                write!(f, "{mag}")?;
            }
            if *k == 1 {
                f.write_str("x")?;
            } else {
                write!(f, "x^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = ParsePolyError;

    /// Accepts sums of signed monomials such as `x^4 - x^3 - 2x^-1 + 5`,
    /// `3*x^2` or `x^{-2}`. Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParsePolyError::Empty);
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            // a sign directly after `^` or `{` belongs to the exponent
            let exponent_sign = matches!(prev, Some('^') | Some('{'));
            if (ch == '+' || ch == '-') && !exponent_sign {
                if !current.is_empty() {
                    pieces.push((negative, std::mem::take(&mut current)));
                } else if prev.is_some() {
                    return Err(ParsePolyError::UnexpectedToken(ch.to_string()));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
            prev = Some(ch);
        }
        if current.is_empty() {
            return Err(ParsePolyError::UnexpectedToken(prev.map(String::from).unwrap_or_default()));
        }
        pieces.push((negative, current));

        let mut p = LaurentPoly::zero();
        for (neg, body) in pieces {
            let (k, c) = parse_monomial(&body)?;
            p.add_term(k, if neg { -c } else { c });
        }
        Ok(p)
    }
}

fn parse_monomial(body: &str) -> Result<(i64, BigInt), ParsePolyError> {
    let Some(pos) = body.find('x') else {
        let c = body
            .parse::<BigInt>()
            .map_err(|_| ParsePolyError::UnexpectedToken(body.to_string()))?;
        return Ok((0, c));
    };
    let (coeff_part, rest) = body.split_at(pos);
    let coeff_part = coeff_part.strip_suffix('*').unwrap_or(coeff_part);
    let coeff = if coeff_part.is_empty() {
        BigInt::one()
    } else {
        coeff_part
            .parse::<BigInt>()
            .map_err(|_| ParsePolyError::BadCoefficient(coeff_part.to_string()))?
    };
    let rest = &rest[1..];
    let exponent = if rest.is_empty() {
        1
    } else if let Some(e) = rest.strip_prefix('^') {
        let e = e
            .strip_prefix('{')
            .and_then(|e| e.strip_suffix('}'))
            .or_else(|| e.strip_prefix('(').and_then(|e| e.strip_suffix(')')))
            .unwrap_or(e);
        e.parse::<i64>().map_err(|_| ParsePolyError::BadExponent(e.to_string()))?
    } else {
        return Err(ParsePolyError::UnexpectedToken(rest.to_string()));
    };
    Ok((exponent, coeff))
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (i, a) in &self.terms {
            for (j, b) in &rhs.terms {
                out.add_term(i + j, a * b);
            }
        }
        out
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(p("x - 1") * p("x - 1"), p("x^2 - 2x + 1"));
        assert_eq!(p("x") * p("1 - x^-1"), p("x - 1"));
        let gl2 = p("x^4") * p("1 - x^-1") * p("1 - x^-2");
        assert_eq!(gl2, p("x^4 - x^3 - x^2 + x"));
        assert_eq!(p("x^3 + 2") - p("x^3 + 2"), LaurentPoly::zero());
    }

    #[test]
    fn moments() {
        let gl2 = p("x^4 - x^3 - x^2 + x");
        assert_eq!(gl2.eval_at_one(), BigInt::zero());
        assert_eq!(gl2.derivative_at_one(), BigInt::zero());
        let gm = p("x - 1");
        assert_eq!(gm.eval_at_one(), BigInt::zero());
        assert_eq!(gm.derivative_at_one(), BigInt::one());
        let sq = p("x^2 - 2x + 1");
        assert_eq!(sq.derivative_at_one(), BigInt::zero());
    }

    #[test]
    fn reciprocal() {
        assert_eq!(p("x^3 - x").reciprocal_transform(), p("x^-3 - x^-1"));
        assert_eq!(LaurentPoly::one().reciprocal_transform(), LaurentPoly::one());
        assert_eq!(
            p("x^5 + x^2 - x^4 - x^3").reciprocal_transform(),
            p("x^-5 + x^-2 - x^-4 - x^-3")
        );
    }

    /// Independent oracle: scan a wide range of centers and both signs.
    fn automorphy_brute_force(f: &LaurentPoly) -> Vec<Automorphy> {
        let refl = f.reciprocal_transform();
        let mut found = Vec::new();
        for degree in -60..=60 {
            for sign in [Sign::Plus, Sign::Minus] {
                let mut rhs = f.shift_exponents(-degree);
                if sign == Sign::Minus {
                    rhs = -rhs;
                }
                if rhs == refl {
                    found.push(Automorphy { sign, degree });
                }
            }
        }
        found
    }

    #[test]
    fn automorphy_examples() {
        // x^a + x^b - x^c - x^d with a + b = c + d
        let q = p("x^7 + x^2 - x^5 - x^4");
        assert_eq!(q.detect_automorphy(), Some(Automorphy { sign: Sign::Plus, degree: 9 }));
        let odd = p("x^3 - x");
        assert_eq!(automorphy_brute_force(&odd), vec![Automorphy { sign: Sign::Minus, degree: 4 }]);
        assert_eq!(odd.detect_automorphy(), Some(Automorphy { sign: Sign::Minus, degree: 4 }));
        // x^2 + x = x(x + 1) is palindromic
        let pal = p("x^2 + x");
        assert_eq!(automorphy_brute_force(&pal), vec![Automorphy { sign: Sign::Plus, degree: 3 }]);
        assert_eq!(pal.detect_automorphy(), Some(Automorphy { sign: Sign::Plus, degree: 3 }));
        let none = p("x^2 + 2x");
        assert!(automorphy_brute_force(&none).is_empty());
        assert_eq!(none.detect_automorphy(), None);
    }

    #[test]
    fn quotient_automorphy_examples() {
        let gl2 = p("x^4 - x^3 - x^2 + x");
        assert_eq!(gl2.quotient_automorphy(1), Some(Automorphy { sign: Sign::Minus, degree: 6 }));
        assert_eq!(gl2.quotient_automorphy(2), Some(Automorphy { sign: Sign::Minus, degree: 7 }));
        let q = p("x^6 + x^1 - x^3 - x^4");
        assert_eq!(q.quotient_automorphy(5), Some(Automorphy { sign: Sign::Minus, degree: 12 }));
        assert_eq!(p("x^2 + 2x").quotient_automorphy(3), None);
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1), p("x - 1"));
        assert_eq!(cyclotomic(2), p("x + 1"));
        assert_eq!(cyclotomic(12), p("x^4 - x^2 + 1"));
        assert_eq!(cyclotomic(9), p("x^6 + x^3 + 1"));
        // product over divisors recovers x^N - 1
        for n in 1..=30u64 {
            let prod = (1..=n)
                .filter(|d| n % d == 0)
                .fold(LaurentPoly::one(), |acc, d| &acc * &cyclotomic(d));
            assert_eq!(prod, LaurentPoly::from_terms([(n as i64, 1), (0, -1)]), "n = {n}");
        }
    }

    #[test]
    fn primitive_root_vanishing() {
        let gl2 = p("x^4 - x^3 - x^2 + x");
        assert!(gl2.vanishes_at_primitive_root(1));
        assert!(gl2.vanishes_at_primitive_root(2));
        assert!(!gl2.vanishes_at_primitive_root(3));
        for r in 1..6 {
            assert!(p("x - 1").pow(r).vanishes_at_primitive_root(1));
        }
        assert!(p("x^-3 + x^-1").vanishes_at_primitive_root(4));
        assert!(LaurentPoly::zero().vanishes_at_primitive_root(7));
    }

    #[test]
    fn division_examples() {
        let gl2 = p("x^4 - x^3 - x^2 + x");
        assert_eq!(gl2.divide_by_one_minus_x_neg(2), Some(p("x^4 - x^3")));
        for r in 1..8u32 {
            let gm = p("x - 1").pow(r);
            let expected = &LaurentPoly::x() * &p("x - 1").pow(r - 1);
            assert_eq!(gm.divide_by_one_minus_x_neg(1), Some(expected));
        }
        let sq = p("x - 1").pow(2);
        assert_eq!(
            sq.residue_class_sums(2),
            vec![BigInt::from(2), BigInt::from(-2)]
        );
        assert_eq!(sq.divide_by_one_minus_x_neg(2), None);
        assert_eq!(LaurentPoly::zero().divide_by_one_minus_x_neg(3), Some(LaurentPoly::zero()));
    }

    #[test]
    fn parse_and_display() {
        let f = p("x^4 - x^3 - x^2 + x");
        assert_eq!(f.to_string(), "x^4 - x^3 - x^2 + x");
        assert_eq!(p("-3x^-2 + 2*x + 7").to_string(), "2x + 7 - 3x^-2");
        assert_eq!(p("x^{-2}"), LaurentPoly::monomial(-2, 1));
        assert_eq!(p("-1").to_string(), "-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert!(matches!("x^4 + y".parse::<LaurentPoly>(), Err(ParsePolyError::UnexpectedToken(t)) if t == "y"));
        assert!(matches!("x^a".parse::<LaurentPoly>(), Err(ParsePolyError::BadExponent(_))));
        assert!(matches!("".parse::<LaurentPoly>(), Err(ParsePolyError::Empty)));
        assert!("x +".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn json_form() {
        let f = p("x^4 - x^3 - x^2 + x");
        assert_eq!(f.to_json().to_string(), "[[4,1],[3,-1],[2,-1],[1,1]]");
        let big = p("x - 1").pow(70);
        assert_eq!(LaurentPoly::from_json(&big.to_json()).unwrap(), big);
    }

    #[test]
    fn integer_evaluation() {
        let f = p("x^2 - 2 + x^-1");
        assert_eq!(f.eval_integer(&BigInt::from(1)), Some(BigInt::zero()));
        assert_eq!(f.eval_integer(&BigInt::from(2)), None);
        assert_eq!(p("x^3 - x").eval_integer(&BigInt::from(3)), Some(BigInt::from(24)));
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-5i64..=5, -9i64..=9), 0..6).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn division_round_trip(f in small_poly(), n in 1u64..=10) {
            let sums_vanish = f.residue_class_sums(n).iter().all(Zero::is_zero);
            match f.divide_by_one_minus_x_neg(n) {
                Some(q) => {
                    prop_assert!(sums_vanish);
                    prop_assert_eq!(&q * &LaurentPoly::one_minus_x_neg(n), f.clone());
                }
                None => prop_assert!(!sums_vanish),
            }
            // divisibility by 1 - x^{-N} is vanishing at every N-th root of unity
            let all_roots = (1..=n).filter(|d| n % d == 0).all(|d| f.vanishes_at_primitive_root(d));
            prop_assert_eq!(all_roots, sums_vanish);
        }

        #[test]
        fn divisible_multiples_divide(g in small_poly(), n in 1u64..=10) {
            let f = &g * &LaurentPoly::one_minus_x_neg(n);
            prop_assert_eq!(f.divide_by_one_minus_x_neg(n), Some(g));
        }

        #[test]
        fn quotient_automorphy_shifts(f in small_poly(), n in 1u64..=10) {
            if let Some(a) = f.detect_automorphy() {
                prop_assert_eq!(
                    f.quotient_automorphy(n),
                    Some(Automorphy { sign: a.sign.flip(), degree: a.degree + n as i64 })
                );
            }
        }

        #[test]
        fn primitive_root_matches_float_oracle(f in small_poly(), n in 1u64..=24) {
            let zeta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / n as f64);
            let residual = f.eval_complex(zeta).norm();
            prop_assert_eq!(f.vanishes_at_primitive_root(n), residual < 1e-9, "residual {}", residual);
        }

        #[test]
        fn display_parse_round_trip(f in small_poly()) {
            prop_assert_eq!(f.to_string().parse::<LaurentPoly>().unwrap(), f);
        }
    }
}
