//! Exact rational scalars and dense rational matrices.
//!
//! Everything downstream (coefficient matrices, exchange matrices, r-matrix
//! coefficients, Cartan subspaces) is built on [`Rational`] and [`QMatrix`].
//! Elimination is fraction-free (Bareiss) over the integers, followed by a
//! rational back-substitution pass.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary-precision rational; always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// A column vector of rationals.
pub type QVector = Vec<Rational>;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("linear system is inconsistent")]
    Infeasible,
}

/// Parses `"p"` or `"p/q"` (optional sign on `p`, `q != 0`).
pub fn parse_rational(text: &str) -> Result<Rational, LinAlgError> {
    let bad = || LinAlgError::Parse(text.to_string());
    let trimmed = text.trim();
    match trimmed.split_once('/') {
        None => trimmed
            .parse::<BigInt>()
            .map(Rational::from_integer)
            .map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, LinAlgError> {
        if entries.len() != rows * cols {
            return Err(LinAlgError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(QMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinAlgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(LinAlgError::Shape("ragged rows".into()));
        }
        Ok(QMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer matrix from row slices. Panics on ragged input.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * ncols);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), ncols, "ragged integer matrix");
            entries.extend(row.iter().map(|&v| int(v)));
        }
        QMatrix {
            rows: rows.len(),
            cols: ncols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> QVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &QMatrix) -> Result<QMatrix, LinAlgError> {
        if self.cols != rhs.rows {
            return Err(LinAlgError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<QVector, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::Shape(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    pub fn add(&self, rhs: &QMatrix) -> Result<QMatrix, LinAlgError> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &QMatrix) -> Result<QMatrix, LinAlgError> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(
        &self,
        rhs: &QMatrix,
        op: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<QMatrix, LinAlgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinAlgError::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| op(a, b))
                .collect(),
        })
    }

    /// Submatrix on the given row and column offsets, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Appends `extra_rows` zero rows and `extra_cols` zero columns.
    pub fn pad_zeros(&self, extra_rows: usize, extra_cols: usize) -> Self {
        let mut out = Self::zeros(self.rows + extra_rows, self.cols + extra_cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (i..self.cols).all(|j| self[(i, j)] == -self[(j, i)].clone()))
    }

    /// Rank over Q.
    pub fn rank(&self) -> usize {
        let mut work = integer_rows(self);
        bareiss_echelon(&mut work, self.cols).len()
    }

    /// Basis of the right kernel `{v : A v = 0}`.
    pub fn kernel(&self) -> Vec<QVector> {
        let zero = vec![Rational::zero(); self.rows];
        solve_affine(self, &zero)
            .expect("homogeneous systems are always consistent")
            .kernel
    }

    /// Reduced row echelon form with zero rows removed, plus pivot columns.
    pub fn row_reduce(&self) -> (QMatrix, Vec<usize>) {
        let mut work = integer_rows(self);
        let pivots = bareiss_echelon(&mut work, self.cols);
        let mut rows: Vec<Vec<Rational>> = work
            .into_iter()
            .take(pivots.len())
            .map(|r| r.into_iter().map(Rational::from_integer).collect())
            .collect();
        for (r, &c) in pivots.iter().enumerate().rev() {
            let lead = rows[r][c].clone();
            for v in rows[r].iter_mut() {
                *v /= &lead;
            }
            for above in 0..r {
                let factor = rows[above][c].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let delta = &factor * &rows[r][j];
                    rows[above][j] -= delta;
                }
            }
        }
        let out = QMatrix {
            rows: rows.len(),
            cols: self.cols,
            entries: rows.into_iter().flatten().collect(),
        };
        (out, pivots)
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Result<Rational, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let mut scale = Rational::one();
        let mut work = Vec::with_capacity(n);
        for i in 0..n {
            let (row, lcm) = integer_row(self.row(i));
            scale /= Rational::from_integer(lcm);
            work.push(row);
        }
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !work[r][k].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != k {
                work.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &work[k][k] * &work[i][j] - &work[i][k] * &work[k][j];
                    work[i][j] = exact_div(v, &prev);
                }
                work[i][k] = BigInt::zero();
            }
            prev = work[k][k].clone();
        }
        let det = Rational::from_integer(prev) * scale;
        Ok(if sign < 0 { -det } else { det })
    }

    /// Inverse of a nonsingular square matrix.
    pub fn inverse(&self) -> Option<QMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let e: QVector = (0..n)
                .map(|i| if i == j { Rational::one() } else { Rational::zero() })
                .collect();
            let sol = solve_affine(self, &e).ok()?;
            if !sol.kernel.is_empty() {
                return None;
            }
            cols.push(sol.particular);
        }
        let mut inv = Self::zeros(n, n);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                inv[(i, j)] = v;
            }
        }
        Some(inv)
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect();
        rows.serialize(serializer)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonScalar {
    Text(String),
    Integer(i64),
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<Vec<JsonScalar>>::deserialize(deserializer)?;
        let rows = raw
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|cell| match cell {
                        JsonScalar::Text(s) => parse_rational(&s),
                        JsonScalar::Integer(v) => Ok(int(v)),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        QMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Result of [`solve_affine`]: one solution plus a basis of the homogeneous kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: QVector,
    pub kernel: Vec<QVector>,
}

/// Solves `A x = b` exactly. Free variables are set to zero in the particular
/// solution; the kernel basis has one vector per free column.
pub fn solve_affine(a: &QMatrix, b: &[Rational]) -> Result<AffineSolution, LinAlgError> {
    if b.len() != a.rows {
        return Err(LinAlgError::Shape(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows
        )));
    }
    let n = a.cols;
    let mut augmented = a.pad_zeros(0, 1);
    for (i, v) in b.iter().enumerate() {
        augmented[(i, n)] = v.clone();
    }
    let mut work = integer_rows(&augmented);
    let pivots = bareiss_echelon(&mut work, n + 1);
    if pivots.last() == Some(&n) {
        return Err(LinAlgError::Infeasible);
    }

    // Rational back-substitution to reduced row echelon form.
    let mut rref: Vec<Vec<Rational>> = work
        .iter()
        .take(pivots.len())
        .map(|row| row.iter().cloned().map(Rational::from_integer).collect())
        .collect();
    for (r, &c) in pivots.iter().enumerate().rev() {
        let lead = rref[r][c].clone();
        for v in rref[r].iter_mut() {
            *v /= &lead;
        }
        for above in 0..r {
            let factor = rref[above][c].clone();
            if factor.is_zero() {
                continue;
            }
            for j in c..=n {
                let delta = &factor * &rref[r][j];
                rref[above][j] -= delta;
            }
        }
    }

    let mut particular = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = rref[r][n].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -rref[r][f].clone();
            }
            v
        })
        .collect();
    Ok(AffineSolution { particular, kernel })
}

/// Returns `(row * lcm(denominators), lcm)`.
fn integer_row(row: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints = row
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect();
    (ints, lcm)
}

fn integer_rows(m: &QMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows).map(|i| integer_row(m.row(i)).0).collect()
}

fn exact_div(value: BigInt, divisor: &BigInt) -> BigInt {
    let (q, r) = value.div_rem(divisor);
    debug_assert!(r.is_zero(), "Bareiss step was not exact");
    q
}

/// Fraction-free forward elimination in place; returns pivot columns.
/// Only the first `cols` columns are swept.
fn bareiss_echelon(work: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let nrows = work.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !work[i][c].is_zero()) else {
            continue;
        };
        work.swap(p, r);
        for i in r + 1..nrows {
            if work[i][c].is_zero() {
                // Keep the determinantal scaling uniform across rows.
                for j in c + 1..cols {
                    let v = &work[r][c] * &work[i][j];
                    work[i][j] = exact_div(v, &prev);
                }
                continue;
            }
            for j in c + 1..cols {
                let v = &work[r][c] * &work[i][j] - &work[i][c] * &work[r][j];
                work[i][j] = exact_div(v, &prev);
            }
            work[i][c] = BigInt::zero();
        }
        prev = work[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    // Strip content so later rational passes stay small.
    for row in work.iter_mut().take(r) {
        let g = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if !g.is_zero() && !g.is_one() {
            for v in row.iter_mut() {
                *v = &*v / &g;
            }
        }
        if row.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
            for v in row.iter_mut() {
                *v = -&*v;
            }
        }
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-4/6").unwrap(), rat(-2, 3));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
        assert_eq!(format_rational(&int(0)), "0");
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(QMatrix::identity(6).rank(), 6);
        assert_eq!(QMatrix::zeros(3, 5).rank(), 0);
    }

    #[test]
    fn rank_with_rational_entries() {
        let m = QMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3), int(1)],
            vec![int(3), int(2), int(6)],
            vec![int(0), int(1), int(0)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn solve_identity() {
        let b = vec![int(3), rat(-1, 2), int(0)];
        let sol = solve_affine(&QMatrix::identity(3), &b).unwrap();
        assert_eq!(sol.particular, b);
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn solve_zero_system() {
        let sol = solve_affine(&QMatrix::zeros(2, 3), &[int(0), int(0)]).unwrap();
        assert_eq!(sol.particular, vec![int(0); 3]);
        assert_eq!(sol.kernel.len(), 3);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = QMatrix::from_i64_rows(&[[1, 1], [2, 2]]);
        assert_eq!(
            solve_affine(&a, &[int(1), int(3)]),
            Err(LinAlgError::Infeasible)
        );
    }

    #[test]
    fn determinant_and_inverse() {
        let m = QMatrix::from_i64_rows(&[[2, 1, 0], [1, 3, 1], [0, 1, 4]]);
        assert_eq!(m.determinant().unwrap(), int(18));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), QMatrix::identity(3));
        let singular = QMatrix::from_i64_rows(&[[1, 2], [2, 4]]);
        assert_eq!(singular.determinant().unwrap(), int(0));
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn json_round_trip() {
        let m = QMatrix::from_rows(vec![vec![rat(-1, 3), int(2)], vec![int(0), rat(5, 7)]]).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, r#"[["-1/3","2"],["0","5/7"]]"#);
        let back: QMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}
