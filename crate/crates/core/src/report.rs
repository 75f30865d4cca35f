//! Structured outcome of a symbolic or numeric check.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ReportValue {
    Complex { re: f64, im: f64 },
    Text(String),
}

impl From<Complex64> for ReportValue {
    fn from(z: Complex64) -> Self {
        ReportValue::Complex { re: z.re, im: z.im }
    }
}

impl From<String> for ReportValue {
    fn from(s: String) -> Self {
        ReportValue::Text(s)
    }
}

impl From<&str> for ReportValue {
    fn from(s: &str) -> Self {
        ReportValue::Text(s.to_string())
    }
}

impl fmt::Display for ReportValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReportValue::Complex { re, im } if *im == 0.0 => write!(f, "{re:.12e}"),
            ReportValue::Complex { re, im } => write!(f, "{re:.12e}{im:+.12e}i"),
            ReportValue::Text(s) => f.write_str(s),
        }
    }
}

/// `rel_err = |lhs - rhs| / max(|rhs|, 1e-300)`.
pub fn relative_error(lhs: Complex64, rhs: Complex64) -> f64 {
    (lhs - rhs).norm() / rhs.norm().max(1e-300)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub verdict: Verdict,
    pub lhs: ReportValue,
    pub rhs: ReportValue,
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
    pub params: BTreeMap<String, String>,
}

impl VerificationReport {
    /// Exact comparison of two rendered expressions.
    pub fn symbolic(claim: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>, equal: bool) -> Self {
        VerificationReport {
            claim: claim.into(),
            verdict: Verdict::from_bool(equal),
            lhs: ReportValue::Text(lhs.into()),
            rhs: ReportValue::Text(rhs.into()),
            abs_err: None,
            rel_err: None,
            params: BTreeMap::new(),
        }
    }

    /// Passes iff the relative error is at most `tol`.
    pub fn numeric(claim: impl Into<String>, lhs: Complex64, rhs: Complex64, tol: f64) -> Self {
        let abs_err = (lhs - rhs).norm();
        let rel_err = relative_error(lhs, rhs);
        let mut report = VerificationReport {
            claim: claim.into(),
            verdict: Verdict::from_bool(rel_err <= tol),
            lhs: lhs.into(),
            rhs: rhs.into(),
            abs_err: Some(abs_err),
            rel_err: Some(rel_err),
            params: BTreeMap::new(),
        };
        report.params.insert("tol".into(), format!("{tol:e}"));
        report
    }

    pub fn with_param(mut self, key: impl Into<String>, value: impl fmt::Display) -> Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// One JSON object per line.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        };
        write!(f, "{tag}  {}", self.claim)?;
        if let Some(e) = self.rel_err {
            write!(f, "  rel_err={e:.3e}")?;
        }
        if self.verdict == Verdict::Fail {
            write!(f, "\n      lhs: {}\n      rhs: {}", self.lhs, self.rhs)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_verdicts() {
        let r = VerificationReport::numeric("x", Complex64::new(1.0, 0.0), Complex64::new(1.0 + 1e-13, 0.0), 1e-12);
        assert!(r.passed());
        let r = VerificationReport::numeric("x", Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0), 1e-3);
        assert!(!r.passed());
        assert_eq!(r.rel_err, Some(0.5));
        // zero reference falls back to the 1e-300 floor
        let r = VerificationReport::numeric("x", Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), 1e-3);
        assert!(r.passed());
    }

    #[test]
    fn json_line_shape() {
        let r = VerificationReport::symbolic("claim", "(s-2)/(s-4)", "(s-2)/(s-4)", true).with_param("N", 1);
        assert_eq!(
            r.to_json_line(),
            r#"{"claim":"claim","verdict":"pass","lhs":"(s-2)/(s-4)","rhs":"(s-2)/(s-4)","abs_err":null,"rel_err":null,"params":{"N":"1"}}"#
        );
        let n = VerificationReport::numeric("n", Complex64::new(2.0, 1.0), Complex64::new(2.0, 1.0), 1e-9);
        assert!(n.to_json_line().contains(r#""lhs":{"re":2.0,"im":1.0}"#));
    }
}
