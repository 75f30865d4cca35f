//! Named counting functions: `|GL(r, F_x)|`, `|SL(r, F_x)|`, `(x - 1)^r` for
//! the torus `G_m^r`, and the four-term family `x^a + x^b - x^c - x^d`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::laurent::{LaurentPoly, ParsePolyError};

/// Largest rank accepted by default; the degree of `GL(r)` is `r²`.
pub const DEFAULT_MAX_RANK: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("rank must be at least 1, got {0}")]
    RankTooSmall(u32),
    #[error("rank {rank} exceeds the configured maximum {max}")]
    RankTooLarge { rank: u32, max: u32 },
    #[error("unknown counting function `{0}`")]
    UnknownName(String),
    #[error("invalid parameter `{0}`")]
    BadParameter(String),
    #[error(transparent)]
    Poly(#[from] ParsePolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CountKind {
    Gl(u32),
    Sl(u32),
    GmPower(u32),
    Quartic(i64, i64, i64, i64),
}

impl fmt::Display for CountKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountKind::Gl(r) => write!(f, "gl:{r}"),
            CountKind::Sl(r) => write!(f, "sl:{r}"),
            CountKind::GmPower(r) => write!(f, "gm^{r}"),
            CountKind::Quartic(a, b, c, d) => write!(f, "quartic:{a},{b},{c},{d}"),
        }
    }
}

/// A catalog entry together with its expanded counting polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedCount {
    pub kind: CountKind,
    pub poly: LaurentPoly,
}

/// Constructors with a configurable rank cap.
#[derive(Clone, Copy, Debug)]
pub struct Catalog {
    pub max_rank: u32,
}

impl Default for Catalog {
    fn default() -> Self {
        Catalog { max_rank: DEFAULT_MAX_RANK }
    }
}

impl Catalog {
    pub fn with_max_rank(max_rank: u32) -> Self {
        Catalog { max_rank }
    }

    fn check_rank(&self, r: u32) -> Result<(), CatalogError> {
        if r < 1 {
            Err(CatalogError::RankTooSmall(r))
        } else if r > self.max_rank {
            Err(CatalogError::RankTooLarge { rank: r, max: self.max_rank })
        } else {
            Ok(())
        }
    }

    /// `x^{r²} (1 - x^{-1}) ⋯ (1 - x^{-r})`.
    pub fn counting_gl(&self, r: u32) -> Result<LaurentPoly, CatalogError> {
        self.check_rank(r)?;
        Ok(torsion_product(r * r, 1..=r))
    }

    /// `x^{r²-1} (1 - x^{-2}) ⋯ (1 - x^{-r})`; the constant 1 for `r = 1`.
    pub fn counting_sl(&self, r: u32) -> Result<LaurentPoly, CatalogError> {
        self.check_rank(r)?;
        Ok(torsion_product(r * r - 1, 2..=r))
    }

    /// `(x - 1)^r`.
    pub fn counting_gm_power(&self, r: u32) -> Result<LaurentPoly, CatalogError> {
        self.check_rank(r)?;
        Ok(LaurentPoly::from_terms([(1, 1), (0, -1)]).pow(r))
    }

    pub fn build(&self, kind: CountKind) -> Result<NamedCount, CatalogError> {
        let poly = match kind {
            CountKind::Gl(r) => self.counting_gl(r)?,
            CountKind::Sl(r) => self.counting_sl(r)?,
            CountKind::GmPower(r) => self.counting_gm_power(r)?,
            CountKind::Quartic(a, b, c, d) => quartic(a, b, c, d),
        };
        Ok(NamedCount { kind, poly })
    }
}

fn torsion_product(top: u32, factors: std::ops::RangeInclusive<u32>) -> LaurentPoly {
    factors.fold(LaurentPoly::monomial(top as i64, 1), |acc, i| {
        &acc * &LaurentPoly::one_minus_x_neg(i as u64)
    })
}

pub fn counting_gl(r: u32) -> Result<LaurentPoly, CatalogError> {
    Catalog::default().counting_gl(r)
}

pub fn counting_sl(r: u32) -> Result<LaurentPoly, CatalogError> {
    Catalog::default().counting_sl(r)
}

pub fn counting_gm_power(r: u32) -> Result<LaurentPoly, CatalogError> {
    Catalog::default().counting_gm_power(r)
}

/// `x^a + x^b - x^c - x^d`, coincident exponents merged.
pub fn quartic(a: i64, b: i64, c: i64, d: i64) -> LaurentPoly {
    LaurentPoly::from_terms([(a, 1), (b, 1), (c, -1), (d, -1)])
}

impl FromStr for CountKind {
    type Err = CatalogError;

    /// Parses `gl:r`, `sl:r`, `gm^r` and `quartic:a,b,c,d`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let rank = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| CatalogError::BadParameter(t.to_string()))
        };
        if let Some(r) = s.strip_prefix("gl:") {
            Ok(CountKind::Gl(rank(r)?))
        } else if let Some(r) = s.strip_prefix("sl:") {
            Ok(CountKind::Sl(rank(r)?))
        } else if let Some(r) = s.strip_prefix("gm^") {
            Ok(CountKind::GmPower(rank(r)?))
        } else if let Some(args) = s.strip_prefix("quartic:") {
            let vals = args
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i64>()
                        .map_err(|_| CatalogError::BadParameter(t.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            match vals[..] {
                [a, b, c, d] => Ok(CountKind::Quartic(a, b, c, d)),
                _ => Err(CatalogError::BadParameter(args.to_string())),
            }
        } else {
            Err(CatalogError::UnknownName(s.to_string()))
        }
    }
}

/// Resolves either a catalog name or a raw polynomial expression.
pub fn parse_count_spec(spec: &str) -> Result<(Option<CountKind>, LaurentPoly), CatalogError> {
    let looks_named = ["gl:", "sl:", "gm^", "quartic:"]
        .iter()
        .any(|p| spec.trim_start().starts_with(p));
    if looks_named {
        let kind: CountKind = spec.parse()?;
        let nc = Catalog::default().build(kind)?;
        Ok((Some(kind), nc.poly))
    } else {
        Ok((None, spec.parse()?))
    }
}
