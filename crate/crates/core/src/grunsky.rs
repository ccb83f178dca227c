//! Grunsky coefficients, Grunsky matrices and an exact PSD test.
//!
//! For `f(z) = z + a_2 z^2 + ...` the Grunsky coefficients are defined by
//!
//! ```text
//! log((f(z) - f(w)) / (z - w)) = - sum_{j,k>=0} c_{j,k} z^j w^k
//! ```
//!
//! and the order-`n` Grunsky matrix has entries
//! `gamma_{j,k} = delta_{j,k}/j - sum_{m=1}^{n} m c_{m,j} c_{m,k}`.
//! `f` is univalent on the disk iff every Grunsky matrix is positive
//! semi-definite, so one negative quadratic form value is an exact proof of
//! non-univalence.
//!
//! Only real coefficients are supported; the Hermitian form then reduces to
//! a real symmetric one.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, BigRational};
use crate::ratseries::{f_a_series, PowerSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrunskyError {
    #[error("series is not normalized (need a_0 = 0, a_1 = 1)")]
    NotNormalized,
    #[error("table depth must be at least 1")]
    ZeroDepth,
    #[error("depth {depth} needs coefficients through z^{needed}, series has order {available}")]
    SeriesTooShort {
        depth: usize,
        needed: usize,
        available: usize,
    },
    #[error("Grunsky matrix of order {order} needs table depth {needed}, table has {depth}")]
    InsufficientDepth {
        order: usize,
        needed: usize,
        depth: usize,
    },
    #[error("matrix order must be at least 1")]
    ZeroOrder,
    #[error("vector has length {got}, matrix has order {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("matrix rows are ragged")]
    NotSquare,
}

/// Triangular table of `c_{j,k}` for `j + k <= depth`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrunskyTable {
    depth: usize,
    // columns[k][j] = c_{j,k}, j in 0..=depth-k
    columns: Vec<Vec<BigRational>>,
    source: PowerSeries,
}

impl GrunskyTable {
    /// Builds the table column by column in `k`.
    ///
    /// Column 0 holds the logarithmic coefficients, `-log(f(z)/z)`. Column 1
    /// is seeded by `c_{j,1} = -sum_{m=1}^{j} a_{m+1} c_{j-m,1} - a_{j+2}` and
    /// every later column follows from
    ///
    /// ```text
    /// c_{j,k} = sum_{l=1}^{k-1} (l/k) a_{k-l} c_{j+1,l}
    ///         - sum_{m=1}^{j} a_{m+1} c_{j-m,k} - a_{j+k+1}/k
    /// ```
    ///
    /// which only looks at earlier columns and at smaller `j` in the same
    /// column. Column `k` is needed for rows `j <= depth - k`, so every
    /// column is one shorter than the previous one.
    pub fn new(coefficients: &PowerSeries, depth: usize) -> Result<Self, GrunskyError> {
        if depth == 0 {
            return Err(GrunskyError::ZeroDepth);
        }
        let available = coefficients.order();
        if available < 1 || !coefficients.coeff(0).is_zero() || !coefficients.coeff(1).is_one() {
            return Err(GrunskyError::NotNormalized);
        }
        if available < depth + 1 {
            return Err(GrunskyError::SeriesTooShort {
                depth,
                needed: depth + 1,
                available,
            });
        }
        let source = coefficients.truncate(depth + 1);
        let a = |i: usize| source.coeff(i);

        let mut columns: Vec<Vec<BigRational>> = Vec::with_capacity(depth + 1);

        let log_coeffs = source
            .divide_by_z()
            .expect("normalized series vanishes at 0")
            .log1p_composed()
            .expect("f(z)/z is 1 at 0");
        columns.push((0..=depth).map(|j| -log_coeffs.coeff(j)).collect());

        for k in 1..=depth {
            let kk = BigRational::from_integer(BigInt::from(k));
            // (l/k) a_{k-l} for l in 1..k, hoisted out of the row loop.
            let weights: Vec<BigRational> = (1..k)
                .map(|l| a(k - l) * BigRational::from_integer(BigInt::from(l)) / &kk)
                .collect();
            let rows = depth - k;
            let mut column: Vec<BigRational> = Vec::with_capacity(rows + 1);
            for j in 0..=rows {
                let mut value = -(a(j + k + 1) / &kk);
                for (l, w) in (1..k).zip(&weights) {
                    if !w.is_zero() {
                        value += w * &columns[l][j + 1];
                    }
                }
                for m in 1..=j {
                    let am = a(m + 1);
                    if !am.is_zero() {
                        value -= am * &column[j - m];
                    }
                }
                column.push(value);
            }
            columns.push(column);
        }

        Ok(Self {
            depth,
            columns,
            source,
        })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// The coefficient series `f` the table was built from (through
    /// `z^(depth+1)`).
    pub fn source(&self) -> &PowerSeries {
        &self.source
    }

    /// `c_{j,k}`, or `None` outside `j + k <= depth`.
    pub fn get(&self, j: usize, k: usize) -> Option<&BigRational> {
        if j + k > self.depth {
            return None;
        }
        Some(&self.columns[k][j])
    }

    fn at(&self, j: usize, k: usize) -> &BigRational {
        &self.columns[k][j]
    }

    /// All stored `(j, k, c_{j,k})`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(k, col)| col.iter().enumerate().map(move |(j, c)| (j, k, c)))
    }
}

pub fn grunsky_table(
    coefficients: &PowerSeries,
    depth: usize,
) -> Result<GrunskyTable, GrunskyError> {
    GrunskyTable::new(coefficients, depth)
}

/// Table depth needed for the order-`n` matrix: `c_{m,j}` with `m, j <= n`.
pub fn required_depth(n: usize) -> usize {
    2 * n
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrunskyMatrix {
    /// Parameter of `F_a` when the matrix belongs to that family.
    #[serde(with = "rational::option_as_string", default)]
    pub a: Option<BigRational>,
    pub order: usize,
    #[serde(with = "rational::matrix_as_strings")]
    pub entries: Vec<Vec<BigRational>>,
}

impl GrunskyMatrix {
    pub fn from_table(table: &GrunskyTable, n: usize) -> Result<Self, GrunskyError> {
        if n == 0 {
            return Err(GrunskyError::ZeroOrder);
        }
        if table.depth() < required_depth(n) {
            return Err(GrunskyError::InsufficientDepth {
                order: n,
                needed: required_depth(n),
                depth: table.depth(),
            });
        }
        // sqrt-free form: column vectors u_j = (c_{m,j})_m, weights m.
        let mut entries = vec![vec![BigRational::zero(); n]; n];
        for j in 1..=n {
            for k in j..=n {
                let mut value = if j == k {
                    BigRational::new(BigInt::one(), BigInt::from(j))
                } else {
                    BigRational::zero()
                };
                for m in 1..=n {
                    let (x, y) = (table.at(m, j), table.at(m, k));
                    if !x.is_zero() && !y.is_zero() {
                        value -= x * y * BigRational::from_integer(BigInt::from(m));
                    }
                }
                entries[k - 1][j - 1] = value.clone();
                entries[j - 1][k - 1] = value;
            }
        }
        Ok(Self {
            a: None,
            order: n,
            entries,
        })
    }

    /// `G(n)` for `F_a`, building the coefficient series and table itself.
    pub fn for_f_a(a: &BigRational, n: usize) -> Result<Self, GrunskyError> {
        let depth = required_depth(n.max(1));
        let table = GrunskyTable::new(&f_a_series(a, depth + 1), depth)?;
        let mut m = Self::from_table(&table, n)?;
        m.a = Some(a.clone());
        Ok(m)
    }

    /// Builds a matrix from raw rows, checking shape and symmetry.
    pub fn from_rows(entries: Vec<Vec<BigRational>>) -> Result<Self, GrunskyError> {
        let order = entries.len();
        if order == 0 {
            return Err(GrunskyError::ZeroOrder);
        }
        if entries.iter().any(|row| row.len() != order) {
            return Err(GrunskyError::NotSquare);
        }
        let m = Self {
            a: None,
            order,
            entries,
        };
        m.check_symmetric()?;
        Ok(m)
    }

    pub fn entry(&self, j: usize, k: usize) -> &BigRational {
        &self.entries[j][k]
    }

    pub fn check_symmetric(&self) -> Result<(), GrunskyError> {
        if self.entries.len() != self.order || self.entries.iter().any(|r| r.len() != self.order) {
            return Err(GrunskyError::NotSquare);
        }
        for j in 0..self.order {
            for k in j + 1..self.order {
                if self.entries[j][k] != self.entries[k][j] {
                    return Err(GrunskyError::NotSymmetric(j, k));
                }
            }
        }
        Ok(())
    }
}

pub fn grunsky_matrix(table: &GrunskyTable, n: usize) -> Result<GrunskyMatrix, GrunskyError> {
    GrunskyMatrix::from_table(table, n)
}

/// Exact `t G t^T`.
pub fn quadratic_form(
    matrix: &GrunskyMatrix,
    t: &[BigRational],
) -> Result<BigRational, GrunskyError> {
    if t.len() != matrix.order {
        return Err(GrunskyError::DimensionMismatch {
            expected: matrix.order,
            got: t.len(),
        });
    }
    let mut total = BigRational::zero();
    for (j, tj) in t.iter().enumerate() {
        if tj.is_zero() {
            continue;
        }
        let row = &matrix.entries[j];
        let mut inner = BigRational::zero();
        for (k, tk) in t.iter().enumerate() {
            if !tk.is_zero() && !row[k].is_zero() {
                inner += &row[k] * tk;
            }
        }
        total += inner * tj;
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PsdVerdict {
    Psd,
    NotPsd,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsdReport {
    pub verdict: PsdVerdict,
    #[serde(with = "witness_vec", default)]
    pub witness: Option<Vec<BigRational>>,
    #[serde(with = "rational::option_as_string", default)]
    pub witness_value: Option<BigRational>,
}

mod witness_vec {
    use super::*;
    use crate::rational::RationalString;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<BigRational>>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|v| v.iter().cloned().map(RationalString).collect::<Vec<_>>())
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Option<Vec<BigRational>>, D::Error> {
        Ok(Option::<Vec<RationalString>>::deserialize(d)?
            .map(|v| v.into_iter().map(|r| r.0).collect()))
    }
}

impl PsdReport {
    pub fn is_psd(&self) -> bool {
        self.verdict == PsdVerdict::Psd
    }
}

/// Exact PSD test by symmetric Gaussian elimination.
///
/// The elimination is kept as a congruence `M' = E G E^T` with `E` unit
/// lower triangular, so every diagonal entry `M'_{ii}` is the quadratic form
/// of row `E_i`. A negative pivot hands back that row as the witness. A zero
/// pivot with a nonzero entry `M'_{pq}` gives the witness `s E_p + E_q`
/// whose value is `2 s M'_{pq} + M'_{qq}`; `s` is picked to make that `-1`.
/// A zero pivot with an all-zero row is skipped.
pub fn psd_check(matrix: &GrunskyMatrix) -> Result<PsdReport, GrunskyError> {
    matrix.check_symmetric()?;
    let n = matrix.order;
    let mut m = matrix.entries.clone();
    let mut e: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row = vec![BigRational::zero(); n];
            row[i] = BigRational::one();
            row
        })
        .collect();

    let not_psd = |witness: Vec<BigRational>| -> Result<PsdReport, GrunskyError> {
        let value = quadratic_form(matrix, &witness)?;
        debug_assert!(value.is_negative());
        Ok(PsdReport {
            verdict: PsdVerdict::NotPsd,
            witness: Some(witness),
            witness_value: Some(value),
        })
    };

    for p in 0..n {
        let pivot = m[p][p].clone();
        if pivot.is_negative() {
            return not_psd(e[p].clone());
        }
        if pivot.is_zero() {
            match (p + 1..n).find(|&q| !m[p][q].is_zero()) {
                None => continue,
                Some(q) => {
                    let two = BigRational::from_integer(2.into());
                    let s = -(&m[q][q] + BigRational::one()) / (two * &m[p][q]);
                    let witness: Vec<BigRational> =
                        e[p].iter().zip(&e[q]).map(|(x, y)| &s * x + y).collect();
                    return not_psd(witness);
                }
            }
        }
        for i in p + 1..n {
            if m[i][p].is_zero() {
                continue;
            }
            let factor = &m[i][p] / &pivot;
            for k in p..n {
                let delta = &factor * &m[p][k];
                m[i][k] -= delta;
            }
            let (head, tail) = e.split_at_mut(i);
            for (x, y) in tail[0].iter_mut().zip(&head[p]) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        // Keep the remaining block symmetric: mirror the updated rows.
        for i in p + 1..n {
            for k in i + 1..n {
                let v = m[i][k].clone();
                m[k][i] = v;
            }
            m[p][i] = BigRational::zero();
            m[i][p] = BigRational::zero();
        }
    }
    Ok(PsdReport {
        verdict: PsdVerdict::Psd,
        witness: None,
        witness_value: None,
    })
}

/// Whether `m j c_{m,j}^2 <= 1` for all `1 <= m, j <= n`, the squared form of
/// the necessary bound `|c_{m,j}| <= 1/sqrt(mj)`.
pub fn coefficient_bound_check(table: &GrunskyTable, n: usize) -> Result<bool, GrunskyError> {
    if table.depth() < required_depth(n) {
        return Err(GrunskyError::InsufficientDepth {
            order: n,
            needed: required_depth(n),
            depth: table.depth(),
        });
    }
    let one = BigRational::one();
    for m in 1..=n {
        for j in 1..=n {
            let c = table.at(m, j);
            let lhs = c * c * BigRational::from_integer(BigInt::from(m * j));
            if lhs > one {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
