//! Fitting count sequences in q and grading how well a polynomial explains
//! them.
//!
//! A probe counts one query at several field orders, interpolates through
//! all but the largest few, and checks the rest. A `Consistent` verdict is
//! evidence only: when the number of fitted points does not exceed the
//! degree bound the data could be matched by many polynomials, and the
//! result says so through `underdetermined`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::make_field;
use crate::oracle::{count_restricted, CountQuery, MatrixClass, OracleOptions};
use crate::poly::{interpolate, QPolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Inconsistent,
    Insufficient,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Residual {
    pub q: u64,
    /// Value of the fitted polynomial.
    pub expected: BigRational,
    pub actual: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeResult {
    pub verdict: Verdict,
    #[serde(serialize_with = "ser_poly")]
    pub fitted: Option<QPolynomial>,
    pub samples: Vec<(u64, BigUint)>,
    pub residuals: Vec<Residual>,
    pub degree_bound: usize,
    /// Fewer fitted points than the degree bound plus one.
    pub underdetermined: bool,
    #[serde(serialize_with = "ser_poly")]
    pub even_fit: Option<QPolynomial>,
    #[serde(serialize_with = "ser_poly")]
    pub odd_fit: Option<QPolynomial>,
}

fn ser_poly<S: serde::Serializer>(p: &Option<QPolynomial>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_some(&p.to_string()),
        None => s.serialize_none(),
    }
}

/// A probe that stopped early, with the samples gathered before the failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeFailure {
    pub error: Error,
    pub samples: Vec<(u64, BigUint)>,
}

impl std::fmt::Display for ProbeFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} after {} sample(s)", self.error, self.samples.len())
    }
}

impl std::error::Error for ProbeFailure {}

impl From<Error> for ProbeFailure {
    fn from(error: Error) -> Self {
        ProbeFailure { error, samples: Vec::new() }
    }
}

/// The unique polynomial of degree below `points.len()` through the points.
pub fn interpolate_exact(points: &[(i64, BigInt)]) -> Result<QPolynomial> {
    interpolate(points)
}

/// Field orders used when none are given: odd only for character queries.
pub fn default_q_list(class: MatrixClass) -> Vec<u64> {
    match class {
        MatrixClass::SymmetricWithCharacter => vec![3, 5, 7, 9, 11],
        _ => vec![2, 3, 4, 5, 7, 8, 9],
    }
}

fn fit(samples: &[(u64, BigUint)]) -> Result<Option<QPolynomial>> {
    if samples.is_empty() {
        return Ok(None);
    }
    let points: Vec<(i64, BigInt)> = samples.iter().map(|(q, v)| (*q as i64, BigInt::from(v.clone()))).collect();
    interpolate(&points).map(Some)
}

/// Grades already computed samples; `holdout` largest q values are checked
/// against a fit through the others.
pub fn grade(mut samples: Vec<(u64, BigUint)>, holdout: usize, degree_bound: usize) -> Result<ProbeResult> {
    samples.sort_by_key(|s| s.0);
    if let Some(w) = samples.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::DuplicateAbscissa(w[0].0.to_string()));
    }
    let split = samples.len().saturating_sub(holdout);
    let fitted = fit(&samples[..split])?;
    let residuals: Vec<Residual> = match &fitted {
        Some(p) => samples[split..]
            .iter()
            .map(|(q, v)| Residual {
                q: *q,
                expected: p.eval_int(*q as i64),
                actual: v.clone(),
            })
            .collect(),
        None => Vec::new(),
    };
    let verdict = if split < 1 || residuals.is_empty() || samples.len() < 2 {
        Verdict::Insufficient
    } else if residuals
        .iter()
        .all(|r| r.expected == BigRational::from_integer(BigInt::from(r.actual.clone())))
    {
        Verdict::Consistent
    } else {
        Verdict::Inconsistent
    };
    let (even, odd): (Vec<_>, Vec<_>) = samples.iter().cloned().partition(|(q, _)| q % 2 == 0);
    let (even_fit, odd_fit) = if !even.is_empty() && !odd.is_empty() {
        (fit(&even)?, fit(&odd)?)
    } else {
        (None, None)
    };
    Ok(ProbeResult {
        verdict,
        fitted,
        underdetermined: split <= degree_bound,
        samples,
        residuals,
        degree_bound,
        even_fit,
        odd_fit,
    })
}

/// Counts `query` with the oracle at every q in `q_list` and grades the
/// sequence. The degree bound is the number of free cells of the support.
pub fn probe(
    query: &CountQuery,
    q_list: &[u64],
    holdout: usize,
    options: &OracleOptions,
) -> std::result::Result<ProbeResult, ProbeFailure> {
    let mut samples = Vec::with_capacity(q_list.len());
    for &q in q_list {
        let counted = make_field(q).and_then(|field| count_restricted(&field, query, options));
        match counted {
            Ok(c) => samples.push((q, c.value)),
            Err(error) => return Err(ProbeFailure { error, samples }),
        }
    }
    Ok(grade(samples, holdout, query.support.free_count())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::support::{Partition, SupportSet};

    fn pts(v: &[(i64, i64)]) -> Vec<(i64, BigInt)> {
        v.iter().map(|&(x, y)| (x, BigInt::from(y))).collect()
    }

    #[test]
    fn interpolation_examples() {
        assert_eq!(
            interpolate_exact(&pts(&[(2, 1), (3, 4), (5, 16)])).unwrap(),
            QPolynomial::from_ints(&[1, -2, 1])
        );
        assert_eq!(interpolate_exact(&pts(&[(2, 7), (3, 7)])).unwrap(), QPolynomial::from_ints(&[7]));
    }

    #[test]
    fn refit_is_identical() {
        let p = QPolynomial::from_ints(&[3, -1, 0, 2, 5]);
        let points: Vec<(i64, BigInt)> = (2..7).map(|q| (q, p.eval_int(q).to_integer())).collect();
        assert_eq!(interpolate_exact(&points).unwrap(), p);
    }

    #[test]
    fn probe_diagonal() {
        let query = CountQuery::general(SupportSet::diagonal_prefix(2, 2).unwrap(), Some(2));
        let res = probe(&query, &[2, 3, 5, 7], 1, &OracleOptions::default()).unwrap();
        assert_eq!(res.verdict, Verdict::Consistent);
        assert_eq!(res.fitted, Some(QPolynomial::from_ints(&[1, -2, 1])));
        assert_eq!(res.degree_bound, 2);
        assert!(!res.underdetermined);
    }

    #[test]
    fn probe_empty_count() {
        let s = SupportSet::straight(&Partition::new(vec![2, 1]).unwrap(), 2).unwrap();
        let query = CountQuery::general(s, Some(2));
        let res = probe(&query, &[2, 3, 5], 1, &OracleOptions::default()).unwrap();
        assert_eq!(res.verdict, Verdict::Consistent);
        assert_eq!(res.fitted, Some(QPolynomial::zero()));
    }

    #[test]
    fn grading_edge_cases() {
        let s = |v: &[(u64, u64)]| v.iter().map(|&(q, c)| (q, BigUint::from(c))).collect::<Vec<_>>();
        assert_eq!(grade(s(&[(2, 1)]), 1, 3).unwrap().verdict, Verdict::Insufficient);
        assert_eq!(grade(s(&[(2, 1), (3, 4)]), 0, 3).unwrap().verdict, Verdict::Insufficient);
        let bad = grade(s(&[(2, 1), (3, 2), (4, 4)]), 1, 3).unwrap();
        assert_eq!(bad.verdict, Verdict::Inconsistent);
        assert!(bad.underdetermined);
        assert!(bad.even_fit.is_some() && bad.odd_fit.is_some());
        assert_eq!(
            grade(s(&[(2, 1), (2, 1)]), 1, 3).unwrap_err(),
            Error::DuplicateAbscissa("2".into())
        );
    }

    #[test]
    fn budget_failure_keeps_samples() {
        let query = CountQuery::general(SupportSet::empty(3, 3).unwrap(), None);
        let opts = OracleOptions::default().with_budget(100);
        let err = probe(&query, &[2, 3], 1, &opts).unwrap_err();
        assert!(matches!(err.error, Error::BudgetExceeded { .. }));
        assert_eq!(err.samples.len(), 1);
    }
}
