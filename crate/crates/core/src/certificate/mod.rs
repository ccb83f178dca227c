//! Non-univalence certificates: rational vectors `v` with `v G(n) v^T < 0`
//! for the Grunsky matrix of `F_a`.
//!
//! Discovery runs in floating point (round the exact matrix, find its lowest
//! eigenvector, round that to small fractions). Verification never trusts
//! any of it: the series, table, matrix and quadratic form are rebuilt from
//! `(a, n, v)` in exact arithmetic.

pub mod cfrac;
pub mod factor;
pub mod jacobi;

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grunsky::{quadratic_form, required_depth, GrunskyError, GrunskyMatrix, GrunskyTable};
use crate::rational::{self, BigRational};
use crate::ratseries::f_a_series;

pub use cfrac::{best_convergent, rationalize};
pub use jacobi::{min_eigenpair, EigenPair, JacobiError};

pub const SCHEMA_VERSION: u32 = 1;
pub const GENERATOR: &str = "jacobi+cfrac";
/// First denominator bound tried when rounding an eigenvector.
pub const START_DENOMINATOR: u64 = 30;
/// Escalation stops once doubling would pass this.
pub const MAX_DENOMINATOR: u64 = 4096;

const BUNDLED_FIXTURE: &str = include_str!("../../fixtures/paper_v.json");

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("matrix entry ({0}, {1}) does not fit in a double")]
    FloatOverflow(usize, usize),
    #[error("no negative direction: smallest float eigenvalue is {eigenvalue:e}")]
    NoNegativeDirection { eigenvalue: f64 },
    #[error("no rationalized eigenvector certifies (last denominator bound {last_bound}, best value {best_value:?})")]
    VerificationFailed {
        last_bound: u64,
        best_value: Option<BigRational>,
    },
    #[error(transparent)]
    Grunsky(#[from] GrunskyError),
    #[error(transparent)]
    Jacobi(#[from] JacobiError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FloatMatrix {
    pub order: usize,
    pub entries: Vec<Vec<f64>>,
}

/// Nearest-double rounding of every entry. Entries whose magnitude
/// overflows `f64` are an error rather than `inf`.
pub fn float_project(matrix: &GrunskyMatrix) -> Result<FloatMatrix, CertificateError> {
    let mut entries = vec![vec![0.0; matrix.order]; matrix.order];
    for (j, row) in matrix.entries.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            match x.to_f64() {
                Some(f) if f.is_finite() => entries[j][k] = f,
                _ => return Err(CertificateError::FloatOverflow(j, k)),
            }
        }
    }
    Ok(FloatMatrix {
        order: matrix.order,
        entries,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactValue {
    pub numerator: String,
    pub denominator: String,
}

impl ExactValue {
    pub fn from_rational(r: &BigRational) -> Self {
        Self {
            numerator: r.numer().to_string(),
            denominator: r.denom().to_string(),
        }
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        let n = self.numerator.parse().ok()?;
        let d: num_bigint::BigInt = self.denominator.parse().ok()?;
        if !d.is_positive() {
            return None;
        }
        Some(BigRational::new(n, d))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(default = "default_schema")]
    pub schema_version: u32,
    #[serde(with = "rational::as_string")]
    pub a: BigRational,
    pub order: usize,
    #[serde(with = "rational::vec_as_strings")]
    pub vector: Vec<BigRational>,
    #[serde(with = "value_format", default)]
    pub value: Option<BigRational>,
    #[serde(default)]
    pub verified: bool,
    #[serde(default = "default_generator")]
    pub generator: String,
    /// Unix seconds; left empty unless a caller stamps it, so that output
    /// stays reproducible.
    #[serde(default)]
    pub timestamp: Option<u64>,
}

fn default_schema() -> u32 {
    SCHEMA_VERSION
}

fn default_generator() -> String {
    GENERATOR.to_string()
}

mod value_format {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(ExactValue::from_rational).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        match Option::<ExactValue>::deserialize(d)? {
            None => Ok(None),
            Some(v) => v
                .to_rational()
                .map(Some)
                .ok_or_else(|| serde::de::Error::custom("malformed exact value")),
        }
    }
}

impl Certificate {
    pub fn unverified(a: BigRational, vector: Vec<BigRational>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            a,
            order: vector.len(),
            vector,
            value: None,
            verified: false,
            generator: GENERATOR.to_string(),
            timestamp: None,
        }
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// The order-18 vector at `a = 5/7` shipped with the crate.
    pub fn bundled() -> Self {
        Self::from_json(BUNDLED_FIXTURE).expect("bundled fixture parses")
    }

    pub fn scaled(&self, factor: &BigRational) -> Self {
        let mut out = Self::unverified(
            self.a.clone(),
            self.vector.iter().map(|x| x * factor).collect(),
        );
        out.order = self.order;
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub valid: bool,
    /// Recomputed exact `v G(n) v^T`, when the inputs allowed computing it.
    pub value: Option<BigRational>,
    pub diagnostic: Option<String>,
}

/// Recomputes everything from `(a, order, vector)` and checks that the
/// quadratic form is negative and, if the certificate carries a value, that
/// it matches.
pub fn verify_certificate(cert: &Certificate) -> Verification {
    let fail = |value, why: String| Verification {
        valid: false,
        value,
        diagnostic: Some(why),
    };
    if cert.order == 0 {
        return fail(None, "order must be at least 1".into());
    }
    if cert.vector.len() != cert.order {
        return fail(
            None,
            format!(
                "vector has {} entries, order is {}",
                cert.vector.len(),
                cert.order
            ),
        );
    }
    let matrix = match GrunskyMatrix::for_f_a(&cert.a, cert.order) {
        Ok(m) => m,
        Err(e) => return fail(None, e.to_string()),
    };
    let value = match quadratic_form(&matrix, &cert.vector) {
        Ok(v) => v,
        Err(e) => return fail(None, e.to_string()),
    };
    if !value.is_negative() {
        return fail(
            Some(value.clone()),
            format!("quadratic form is {value}, not negative"),
        );
    }
    if let Some(claimed) = &cert.value {
        if claimed != &value {
            return fail(
                Some(value),
                "recomputed value differs from the stored one".into(),
            );
        }
    }
    Verification {
        valid: true,
        value: Some(value),
        diagnostic: None,
    }
}

#[derive(Debug, Clone)]
pub struct DiscoveryOptions {
    pub start_denominator: u64,
    pub max_denominator: u64,
    pub tolerance: f64,
    pub max_sweeps: usize,
}

impl Default for DiscoveryOptions {
    fn default() -> Self {
        Self {
            start_denominator: START_DENOMINATOR,
            max_denominator: MAX_DENOMINATOR,
            tolerance: jacobi::DEFAULT_TOLERANCE,
            max_sweeps: jacobi::DEFAULT_MAX_SWEEPS,
        }
    }
}

/// Float stage + exact check on an already-built matrix.
pub fn certify_matrix(
    matrix: &GrunskyMatrix,
    float: &FloatMatrix,
    options: &DiscoveryOptions,
) -> Result<(Vec<BigRational>, BigRational), CertificateError> {
    let pair = match min_eigenpair(&float.entries, options.tolerance, options.max_sweeps) {
        Ok(p) => p,
        // A slightly unconverged eigenvector is still worth rounding; the
        // exact check decides.
        Err(JacobiError::NoConvergence { best, .. }) => best,
        Err(e) => return Err(e.into()),
    };
    if pair.value >= 0.0 {
        return Err(CertificateError::NoNegativeDirection {
            eigenvalue: pair.value,
        });
    }
    let mut bound = options.start_denominator.max(1);
    let mut best_value: Option<BigRational> = None;
    let mut last_bound = bound;
    while bound <= options.max_denominator.max(options.start_denominator) {
        last_bound = bound;
        if let Some(v) = rationalize(&pair.vector, bound) {
            if v.iter().any(|x| !x.is_zero()) {
                let value = quadratic_form(matrix, &v)?;
                if value.is_negative() {
                    return Ok((v, value));
                }
                if best_value.as_ref().is_none_or(|b| &value < b) {
                    best_value = Some(value);
                }
            }
        }
        bound *= 2;
    }
    Err(CertificateError::VerificationFailed {
        last_bound,
        best_value,
    })
}

/// Looks for a certificate for `F_a` at order `n`, starting the
/// denominator bound at `max_denominator` and doubling up to
/// [`MAX_DENOMINATOR`].
pub fn find_certificate(
    a: &BigRational,
    order: usize,
    max_denominator: u64,
) -> Result<Certificate, CertificateError> {
    let options = DiscoveryOptions {
        start_denominator: max_denominator,
        ..DiscoveryOptions::default()
    };
    find_certificate_with(a, order, &options)
}

pub fn find_certificate_with(
    a: &BigRational,
    order: usize,
    options: &DiscoveryOptions,
) -> Result<Certificate, CertificateError> {
    if order == 0 {
        return Err(CertificateError::ZeroOrder);
    }
    let matrix = GrunskyMatrix::for_f_a(a, order)?;
    discover_on(a, &matrix, options)
}

fn discover_on(
    a: &BigRational,
    matrix: &GrunskyMatrix,
    options: &DiscoveryOptions,
) -> Result<Certificate, CertificateError> {
    let float = float_project(matrix)?;
    let (vector, value) = certify_matrix(matrix, &float, options)?;
    let mut cert = Certificate::unverified(a.clone(), vector);
    cert.value = Some(value);
    cert.verified = true;
    Ok(cert)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    #[serde(with = "rational::as_string")]
    pub a: BigRational,
    /// Smallest order with a verified certificate.
    pub order: Option<usize>,
    #[serde(skip)]
    pub certificate: Option<Certificate>,
    /// Why nothing was found at the last order tried, if nothing was.
    pub note: Option<String>,
}

/// For each `a`, the smallest order in `1..=max_order` at which discovery
/// produces a verified certificate. One Grunsky table of depth
/// `2 max_order` is shared by all orders of the same `a`; distinct `a` run
/// in parallel.
pub fn scan_upper_bound(a_values: &[BigRational], max_order: usize) -> Vec<ScanRow> {
    let options = DiscoveryOptions::default();
    a_values
        .par_iter()
        .map(|a| scan_one(a, max_order, &options))
        .collect()
}

fn scan_one(a: &BigRational, max_order: usize, options: &DiscoveryOptions) -> ScanRow {
    let mut row = ScanRow {
        a: a.clone(),
        order: None,
        certificate: None,
        note: None,
    };
    if max_order == 0 {
        row.note = Some("max order is 0".into());
        return row;
    }
    let depth = required_depth(max_order);
    let table = match GrunskyTable::new(&f_a_series(a, depth + 1), depth) {
        Ok(t) => t,
        Err(e) => {
            row.note = Some(e.to_string());
            return row;
        }
    };
    for n in 1..=max_order {
        let result = GrunskyMatrix::from_table(&table, n)
            .map_err(CertificateError::from)
            .and_then(|mut m| {
                m.a = Some(a.clone());
                discover_on(a, &m, options)
            });
        match result {
            Ok(cert) => {
                row.order = Some(n);
                row.certificate = Some(cert);
                row.note = None;
                return row;
            }
            Err(e) => row.note = Some(e.to_string()),
        }
    }
    row
}
