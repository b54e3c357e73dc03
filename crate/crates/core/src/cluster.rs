//! Seeds, matrix mutation, exchange relations and compatibility checks.
//!
//! Directions and matrix offsets are 0-based here. Column `j < n` of an
//! extended exchange matrix belongs to a cluster variable, columns `n..n+m`
//! to stable (frozen) variables.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{int, QMatrix, QVector, Rational};
use crate::laurent::{LaurentError, LaurentPoly, VarContext};
use num_traits::Zero;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClusterError {
    #[error("extended exchange matrix must have {rows} rows of length {cols}")]
    Shape { rows: usize, cols: usize },
    #[error("principal part is not skew-symmetrizable at ({0},{1})")]
    NotSkewSymmetrizable(usize, usize),
    #[error("direction {k} is out of range for {n} cluster variables")]
    DirectionOutOfRange { k: usize, n: usize },
    #[error("seed has {found} variables but the matrix has {expected} columns")]
    VariableCount { found: usize, expected: usize },
    #[error("cluster variable {0} is zero")]
    ZeroVariable(usize),
    #[error("exchange in direction {0} does not produce a Laurent polynomial")]
    IrregularExchange(usize),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("malformed seed: {0}")]
    Format(String),
}

/// Integer `n × (n+m)` matrix whose principal part is skew-symmetrizable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtExchangeMatrix {
    n: usize,
    m: usize,
    entries: Vec<Vec<i64>>,
}

impl ExtExchangeMatrix {
    /// Requires a skew-symmetric principal part.
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self, ClusterError> {
        let symmetrizer = vec![1; entries.len()];
        Self::with_symmetrizer(entries, &symmetrizer)
    }

    /// Requires `d_i b_ij = -d_j b_ji` for positive integers `d`.
    pub fn with_symmetrizer(entries: Vec<Vec<i64>>, d: &[i64]) -> Result<Self, ClusterError> {
        let n = entries.len();
        let cols = entries.first().map_or(n, Vec::len);
        if cols < n || entries.iter().any(|r| r.len() != cols) || d.len() != n {
            return Err(ClusterError::Shape { rows: n, cols });
        }
        for i in 0..n {
            for j in i..n {
                if d[i] <= 0 || d[i] * entries[i][j] != -d[j] * entries[j][i] {
                    return Err(ClusterError::NotSkewSymmetrizable(i, j));
                }
            }
        }
        Ok(ExtExchangeMatrix {
            n,
            m: cols - n,
            entries,
        })
    }

    pub fn from_qmatrix(q: &QMatrix) -> Result<Self, ClusterError> {
        let mut rows = Vec::with_capacity(q.rows());
        for i in 0..q.rows() {
            let row = q
                .row(i)
                .iter()
                .map(|v| {
                    if !v.denom().is_zero() && v.is_integer() {
                        i64::try_from(v.to_integer()).map_err(|_| ClusterError::Format("entry too large".into()))
                    } else {
                        Err(ClusterError::Format("non-integer entry".into()))
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        Self::new(rows)
    }

    /// Cluster size.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stable variables.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        QMatrix::from_i64_rows(&self.entries)
    }

    /// Drops the last `count` columns (stable variables).
    pub fn drop_last_columns(&self, count: usize) -> Result<Self, ClusterError> {
        if count > self.m {
            return Err(ClusterError::Shape {
                rows: self.n,
                cols: self.n + self.m - count,
            });
        }
        let keep = self.n + self.m - count;
        Ok(ExtExchangeMatrix {
            n: self.n,
            m: self.m - count,
            entries: self.entries.iter().map(|r| r[..keep].to_vec()).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.to_qmatrix().rank()
    }
}

/// Matrix mutation in cluster direction `k` (0-based).
pub fn mutate_matrix(b: &ExtExchangeMatrix, k: usize) -> Result<ExtExchangeMatrix, ClusterError> {
    if k >= b.n {
        return Err(ClusterError::DirectionOutOfRange { k, n: b.n });
    }
    let mut out = b.entries.clone();
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            if i == k || j == k {
                *entry = -b.entries[i][j];
            } else {
                let bik = b.entries[i][k];
                let bkj = b.entries[k][j];
                *entry = b.entries[i][j] + (bik.abs() * bkj + bik * bkj.abs()) / 2;
            }
        }
    }
    Ok(ExtExchangeMatrix {
        n: b.n,
        m: b.m,
        entries: out,
    })
}

/// Extended exchange matrix plus the images of all `n+m` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    pub matrix: ExtExchangeMatrix,
    pub variables: Vec<(String, LaurentPoly)>,
}

/// Outcome of an exchange relation `x_k x'_k = M₊ + M₋`.
#[derive(Clone, Debug)]
pub struct Exchange {
    pub numerator: LaurentPoly,
    pub denominator: LaurentPoly,
    /// Set when `numerator / denominator` is a Laurent polynomial.
    pub quotient: Option<LaurentPoly>,
}

impl Exchange {
    pub fn is_regular(&self) -> bool {
        self.quotient.is_some()
    }
}

impl Seed {
    pub fn new(matrix: ExtExchangeMatrix, variables: Vec<(String, LaurentPoly)>) -> Result<Self, ClusterError> {
        let expected = matrix.n + matrix.m;
        if variables.len() != expected {
            return Err(ClusterError::VariableCount {
                found: variables.len(),
                expected,
            });
        }
        if let Some((_, first)) = variables.first() {
            if variables.iter().any(|(_, p)| p.ctx() != first.ctx()) {
                return Err(ClusterError::Laurent(LaurentError::ContextMismatch));
            }
        }
        Ok(Seed { matrix, variables })
    }

    pub fn polys(&self) -> Vec<LaurentPoly> {
        self.variables.iter().map(|(_, p)| p.clone()).collect()
    }

    /// Mutates matrix and cluster in direction `k`; fails when the new
    /// variable is not a Laurent polynomial in the ambient coordinates.
    pub fn mutate(&self, k: usize) -> Result<Seed, ClusterError> {
        let exchange = exchange_variable(self, k)?;
        let quotient = exchange.quotient.ok_or(ClusterError::IrregularExchange(k))?;
        let mut variables = self.variables.clone();
        variables[k].1 = quotient;
        Ok(Seed {
            matrix: mutate_matrix(&self.matrix, k)?,
            variables,
        })
    }
}

/// Evaluates the exchange relation in direction `k` (0-based).
pub fn exchange_variable(seed: &Seed, k: usize) -> Result<Exchange, ClusterError> {
    let b = &seed.matrix;
    if k >= b.n {
        return Err(ClusterError::DirectionOutOfRange { k, n: b.n });
    }
    let xk = &seed.variables[k].1;
    if xk.is_zero() {
        return Err(ClusterError::ZeroVariable(k));
    }
    let ctx = xk.ctx();
    let mut plus = LaurentPoly::one(ctx);
    let mut minus = LaurentPoly::one(ctx);
    for (j, &bkj) in b.entries[k].iter().enumerate() {
        let factor = &seed.variables[j].1;
        if bkj > 0 {
            plus = &plus * &factor.pow(bkj as u32);
        } else if bkj < 0 {
            minus = &minus * &factor.pow((-bkj) as u32);
        }
    }
    let numerator = &plus + &minus;
    let quotient = match numerator.exact_divide(xk) {
        Ok(q) => Some(q),
        Err(LaurentError::NotDivisible) => None,
        Err(e) => return Err(e.into()),
    };
    Ok(Exchange {
        numerator,
        denominator: xk.clone(),
        quotient,
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompatibilityError {
    #[error("coefficient matrix has shape {rows}x{cols}, expected {expected}x{expected}")]
    Shape { rows: usize, cols: usize, expected: usize },
    #[error("coefficient matrix is not skew-symmetric")]
    NotSkew,
    #[error("B·Ω is not of the form (D 0) at ({i},{j})")]
    Violation { i: usize, j: usize, value: Rational },
}

/// Checks `B̃·Ω = (D 0)` with `D` diagonal and nonsingular, returning `D`.
pub fn check_compatibility(b: &ExtExchangeMatrix, omega: &QMatrix) -> Result<QMatrix, CompatibilityError> {
    let size = b.n + b.m;
    if omega.rows() != size || omega.cols() != size {
        return Err(CompatibilityError::Shape {
            rows: omega.rows(),
            cols: omega.cols(),
            expected: size,
        });
    }
    if !omega.is_skew_symmetric() {
        return Err(CompatibilityError::NotSkew);
    }
    let product = b.to_qmatrix().mul(omega).expect("shapes checked");
    let mut d = QMatrix::zeros(b.n, b.n);
    for i in 0..b.n {
        for j in 0..size {
            let v = &product[(i, j)];
            let ok = if i == j { !v.is_zero() } else { v.is_zero() };
            if !ok {
                return Err(CompatibilityError::Violation { i, j, value: v.clone() });
            }
        }
        d[(i, i)] = product[(i, i)].clone();
    }
    Ok(d)
}

/// Toric weights `η_i, ζ_i` for all `n+m` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightAssignment {
    pub eta: Vec<QVector>,
    pub zeta: Vec<QVector>,
}

impl WeightAssignment {
    pub fn from_i64(eta: &[Vec<i64>], zeta: &[Vec<i64>]) -> Self {
        let conv = |rows: &[Vec<i64>]| rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        WeightAssignment {
            eta: conv(eta),
            zeta: conv(zeta),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricReport {
    pub k_t: usize,
    pub eta_span: usize,
    pub zeta_span: usize,
    /// Mutable rows with `Σ_j b_ij η_j ≠ 0`.
    pub eta_failures: Vec<usize>,
    pub zeta_failures: Vec<usize>,
}

impl ToricReport {
    pub fn passed(&self) -> bool {
        self.eta_span == self.k_t
            && self.zeta_span == self.k_t
            && self.eta_failures.is_empty()
            && self.zeta_failures.is_empty()
    }
}

pub fn check_toric_weights(
    b: &ExtExchangeMatrix,
    w: &WeightAssignment,
    k_t: usize,
) -> Result<ToricReport, ClusterError> {
    let size = b.n + b.m;
    let dims_ok = |rows: &[QVector]| rows.len() == size && rows.iter().all(|r| r.len() == k_t);
    if !dims_ok(&w.eta) || !dims_ok(&w.zeta) {
        return Err(ClusterError::Shape { rows: size, cols: k_t });
    }
    let to_matrix = |rows: &[QVector]| QMatrix::from_rows(rows.to_vec()).expect("rectangular");
    let eta = to_matrix(&w.eta);
    let zeta = to_matrix(&w.zeta);
    let bq = b.to_qmatrix();
    let zero_rows = |m: &QMatrix| -> Vec<usize> {
        let prod = bq.mul(m).expect("shapes checked");
        (0..b.n)
            .filter(|&i| prod.row(i).iter().any(|v| !v.is_zero()))
            .collect()
    };
    Ok(ToricReport {
        k_t,
        eta_span: if size == 0 { 0 } else { eta.rank() },
        zeta_span: if size == 0 { 0 } else { zeta.rank() },
        eta_failures: zero_rows(&eta),
        zeta_failures: zero_rows(&zeta),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub rank: usize,
    pub n: usize,
    pub m: usize,
    pub expected_stable: usize,
}

impl RankReport {
    pub fn passed(&self) -> bool {
        self.rank == self.n && self.m == self.expected_stable
    }
}

pub fn check_full_rank_and_count(b: &ExtExchangeMatrix, expected_stable: usize) -> RankReport {
    RankReport {
        rank: b.rank(),
        n: b.n,
        m: b.m,
        expected_stable,
    }
}

#[derive(Serialize, Deserialize)]
struct SeedJson {
    n: usize,
    m: usize,
    #[serde(rename = "Btilde")]
    btilde: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    context: Option<Vec<String>>,
    variables: Vec<SeedVariableJson>,
}

#[derive(Serialize, Deserialize)]
struct SeedVariableJson {
    name: String,
    poly: serde_json::Value,
}

impl Seed {
    /// JSON form; the variable context is written out so reading it back is lossless.
    pub fn to_json(&self) -> serde_json::Value {
        let context = self
            .variables
            .first()
            .map(|(_, p)| p.ctx().names().to_vec());
        let doc = SeedJson {
            n: self.matrix.n,
            m: self.matrix.m,
            btilde: self.matrix.entries.clone(),
            context,
            variables: self
                .variables
                .iter()
                .map(|(name, p)| SeedVariableJson {
                    name: name.clone(),
                    poly: p.to_json(),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("seed JSON is always serializable")
    }

    /// Reads a seed. Without an explicit `context`, variables are ordered by
    /// first appearance.
    pub fn from_json(value: &serde_json::Value) -> Result<Seed, ClusterError> {
        let doc: SeedJson =
            serde_json::from_value(value.clone()).map_err(|e| ClusterError::Format(e.to_string()))?;
        let matrix = ExtExchangeMatrix::new(doc.btilde)?;
        if matrix.n != doc.n || matrix.m != doc.m {
            return Err(ClusterError::Format(format!(
                "declared {}x{} but Btilde is {}x{}",
                doc.n,
                doc.n + doc.m,
                matrix.n,
                matrix.n + matrix.m
            )));
        }
        let names = match doc.context {
            Some(names) => names,
            None => {
                let mut names: Vec<String> = Vec::new();
                for v in &doc.variables {
                    for term in v.poly.as_array().into_iter().flatten() {
                        if let Some(exps) = term.get("exps").and_then(|e| e.as_object()) {
                            for name in exps.keys() {
                                if !names.contains(name) {
                                    names.push(name.clone());
                                }
                            }
                        }
                    }
                }
                names
            }
        };
        let ctx = VarContext::new(&names)?;
        let variables = doc
            .variables
            .into_iter()
            .map(|v| Ok((v.name, LaurentPoly::from_json(&ctx, &v.poly)?)))
            .collect::<Result<Vec<_>, ClusterError>>()?;
        Seed::new(matrix, variables)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use proptest::prelude::*;

    fn b_cg() -> ExtExchangeMatrix {
        ExtExchangeMatrix::new(vec![
            vec![0, -1, -1, 1, 0, 0, 0, 0],
            vec![1, 0, -1, -1, 0, 0, 1, 0],
            vec![1, 1, 0, 0, 1, -1, -1, 0],
            vec![-1, 1, 0, 0, 1, 1, 0, -1],
            vec![0, 0, -1, -1, 0, 1, 0, 1],
            vec![0, 0, 1, -1, -1, 0, 0, 0],
        ])
        .unwrap()
    }

    #[test]
    fn two_by_two_mutation_flips_signs() {
        let b = ExtExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0]]).unwrap();
        let mu = mutate_matrix(&b, 0).unwrap();
        assert_eq!(mu.entries(), &[vec![0, -1], vec![1, 0]]);
    }

    #[test]
    fn stable_direction_is_rejected() {
        let b = ExtExchangeMatrix::new(vec![vec![0, 1]]).unwrap();
        assert_eq!(
            mutate_matrix(&b, 1),
            Err(ClusterError::DirectionOutOfRange { k: 1, n: 1 })
        );
    }

    #[test]
    fn non_skew_principal_part_is_rejected() {
        assert!(ExtExchangeMatrix::new(vec![vec![0, 1], vec![1, 0]]).is_err());
    }

    #[test]
    fn compatibility_of_one_by_two() {
        let b = ExtExchangeMatrix::new(vec![vec![0, 1]]).unwrap();
        let omega = QMatrix::from_i64_rows(&[[0, 5], [-5, 0]]);
        let d = check_compatibility(&b, &omega).unwrap();
        assert_eq!(d, QMatrix::from_i64_rows(&[[-5]]));
    }

    #[test]
    fn compatibility_reports_first_violation() {
        let b = ExtExchangeMatrix::new(vec![vec![0, 1, 1]]).unwrap();
        let omega = QMatrix::from_i64_rows(&[[0, 1, 0], [-1, 0, 2], [0, -2, 0]]);
        match check_compatibility(&b, &omega) {
            Err(CompatibilityError::Violation { i: 0, j: 1, value }) => assert_eq!(value, int(-2)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rank_and_count() {
        assert!(check_full_rank_and_count(&b_cg(), 2).passed());
        let zero = ExtExchangeMatrix::new(vec![vec![0; 4]; 2]).unwrap();
        let report = check_full_rank_and_count(&zero, 2);
        assert_eq!(report.rank, 0);
        assert!(!report.passed());
    }

    #[test]
    fn zero_weights_fail_span() {
        let w = WeightAssignment::from_i64(&vec![vec![0]; 8], &vec![vec![0]; 8]);
        let report = check_toric_weights(&b_cg(), &w, 1).unwrap();
        assert_eq!(report.eta_span, 0);
        assert!(!report.passed());
    }

    #[test]
    fn empty_row_exchange() {
        let ctx = VarContext::new(&["a", "b"]).unwrap();
        let a = LaurentPoly::var(&ctx, "a").unwrap();
        let b = LaurentPoly::var(&ctx, "b").unwrap();
        let m = ExtExchangeMatrix::new(vec![vec![0, 0]]).unwrap();
        let seed = Seed::new(m.clone(), vec![("a".into(), a.clone()), ("b".into(), b.clone())]).unwrap();
        let ex = exchange_variable(&seed, 0).unwrap();
        assert_eq!(ex.numerator, LaurentPoly::constant(&ctx, int(2)));
        assert_eq!(ex.quotient.unwrap(), LaurentPoly::constant(&ctx, int(2)).exact_divide(&a).unwrap());
        let sum = &a + &b;
        let seed = Seed::new(m, vec![("a".into(), sum), ("b".into(), b)]).unwrap();
        assert!(!exchange_variable(&seed, 0).unwrap().is_regular());
    }

    #[test]
    fn seed_json_round_trip_and_double_mutation() {
        let ctx = VarContext::new(&["p", "q", "s"]).unwrap();
        let v = |n: &str| LaurentPoly::var(&ctx, n).unwrap();
        let matrix = ExtExchangeMatrix::new(vec![vec![0, 1, -1], vec![-1, 0, 1]]).unwrap();
        let seed = Seed::new(
            matrix,
            vec![
                ("p".into(), v("p")),
                ("q".into(), v("q").scale(&rat(1, 2))),
                ("s".into(), v("s")),
            ],
        )
        .unwrap();
        let json = seed.to_json();
        assert_eq!(Seed::from_json(&json).unwrap(), seed);
        let twice = seed.mutate(0).unwrap().mutate(0).unwrap();
        assert_eq!(twice, seed);
        assert_eq!(twice.to_json(), json);
    }

    fn skew_matrix(n: usize, m: usize) -> impl Strategy<Value = ExtExchangeMatrix> {
        proptest::collection::vec(-3i64..=3, n * (n + m)).prop_map(move |raw| {
            let mut rows = vec![vec![0; n + m]; n];
            for i in 0..n {
                for j in 0..n + m {
                    if j >= n || i < j {
                        rows[i][j] = raw[i * (n + m) + j];
                    }
                }
            }
            for i in 0..n {
                for j in 0..i {
                    rows[i][j] = -rows[j][i];
                }
            }
            ExtExchangeMatrix::new(rows).unwrap()
        })
    }

    fn symmetrizable_matrix() -> impl Strategy<Value = (ExtExchangeMatrix, usize)> {
        (1usize..=6, 0usize..=4)
            .prop_flat_map(|(n, m)| {
                (
                    proptest::collection::vec(1i64..=3, n),
                    proptest::collection::vec(-2i64..=2, n * (n + m)),
                    proptest::collection::vec(-3i64..=3, n * m),
                    0..n,
                    Just((n, m)),
                )
            })
            .prop_map(|(d, raw, frozen, k, (n, m))| {
                // b_ij = c_ij d_j with c skew-symmetric gives d_i b_ij = -d_j b_ji.
                let mut rows = vec![vec![0; n + m]; n];
                for i in 0..n {
                    for j in i + 1..n {
                        let c = raw[i * (n + m) + j];
                        rows[i][j] = c * d[j];
                        rows[j][i] = -c * d[i];
                    }
                    for j in 0..m {
                        rows[i][n + j] = frozen[i * m + j];
                    }
                }
                (ExtExchangeMatrix::with_symmetrizer(rows, &d).unwrap(), k)
            })
    }

    proptest! {
        #[test]
        fn mutation_is_an_involution((b, k) in symmetrizable_matrix()) {
            let back = mutate_matrix(&mutate_matrix(&b, k).unwrap(), k).unwrap();
            prop_assert_eq!(back, b);
        }

        #[test]
        fn mutation_keeps_skew_symmetry(b in skew_matrix(4, 3), k in 0usize..4) {
            let mu = mutate_matrix(&b, k).unwrap();
            prop_assert!(ExtExchangeMatrix::new(mu.entries().to_vec()).is_ok());
        }
    }
}
