//! Tensors in `gl_n ⊗ gl_n`, Casimir elements, the Cartan part `r0`,
//! Belavin–Drinfeld r-matrix assembly and the CYBE.
//!
//! Basis elements are matrix units `e_ab` with 1-based `a, b`.
//! The wedge is `x ∧ y = x⊗y − y⊗x`, with no factor of one half.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{format_rational, int, parse_rational, rat, solve_affine, QMatrix, Rational};
use crate::rootdata::{bd_partial_order, h_t_and_kt, BdTriple, CartanSubspace};

/// Index of `e_ab ⊗ e_cd` as `[a, b, c, d]`.
pub type Index2 = [usize; 4];
/// Index of `e_ab ⊗ e_cd ⊗ e_ef` as `[a, b, c, d, e, f]`.
pub type Index3 = [usize; 6];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RMatrixError {
    #[error("r0 does not satisfy the Cartan constraints: {0}")]
    InvalidR0(String),
    #[error("invalid triple: {0}")]
    InvalidTriple(String),
    #[error("malformed tensor JSON: {0}")]
    Json(String),
}

/// Sparse element of `gl_n ⊗ gl_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RTensor {
    pub n: usize,
    coeffs: BTreeMap<Index2, Rational>,
}

impl RTensor {
    pub fn zero(n: usize) -> Self {
        RTensor {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Index2, Rational)>) -> Self {
        let mut t = Self::zero(n);
        for (idx, c) in terms {
            t.add_term(idx, c);
        }
        t
    }

    /// `coeff · (e_x ∧ e_y)`.
    pub fn wedge(n: usize, x: (usize, usize), y: (usize, usize), coeff: Rational) -> Self {
        let mut t = Self::zero(n);
        t.add_term([x.0, x.1, y.0, y.1], coeff.clone());
        t.add_term([y.0, y.1, x.0, x.1], -coeff);
        t
    }

    pub fn add_term(&mut self, idx: Index2, coeff: Rational) {
        assert!(idx.iter().all(|&i| (1..=self.n).contains(&i)), "index out of range");
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(idx).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&idx);
        }
    }

    pub fn get(&self, idx: Index2) -> Rational {
        self.coeffs.get(&idx).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Index2, &Rational)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &RTensor) -> RTensor {
        assert_eq!(self.n, other.n, "tensor sizes differ");
        let mut out = self.clone();
        for (&idx, c) in &other.coeffs {
            out.add_term(idx, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &RTensor) -> RTensor {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, factor: &Rational) -> RTensor {
        RTensor::from_terms(self.n, self.coeffs.iter().map(|(&i, c)| (i, c * factor)))
    }

    /// Flip of the two tensor legs.
    pub fn swap(&self) -> RTensor {
        RTensor {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&[a, b, c, d], v)| ([c, d, a, b], v.clone()))
                .collect(),
        }
    }

    /// Coefficients of a tensor in `h ⊗ h` as the `n × n` matrix `c_ij` of
    /// `e_ii ⊗ e_jj`; `None` if some term is off-diagonal.
    pub fn cartan_matrix(&self) -> Option<QMatrix> {
        let mut m = QMatrix::zeros(self.n, self.n);
        for (&[a, b, c, d], v) in &self.coeffs {
            if a != b || c != d {
                return None;
            }
            m[(a - 1, c - 1)] = v.clone();
        }
        Some(m)
    }

    pub fn from_cartan_matrix(m: &QMatrix) -> RTensor {
        let n = m.rows();
        RTensor::from_terms(
            n,
            (0..n).flat_map(|i| (0..n).map(move |j| ([i + 1, i + 1, j + 1, j + 1], m[(i, j)].clone()))),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<TensorTermJson> = self
            .coeffs
            .iter()
            .map(|(&[a, b, c, d], v)| TensorTermJson {
                a,
                b,
                c,
                d,
                coeff: format_rational(v),
            })
            .collect();
        serde_json::to_value(terms).expect("tensor JSON is serializable")
    }

    pub fn from_json(n: usize, value: &serde_json::Value) -> Result<RTensor, RMatrixError> {
        let raw: Vec<TensorTermJson> =
            serde_json::from_value(value.clone()).map_err(|e| RMatrixError::Json(e.to_string()))?;
        let mut t = RTensor::zero(n);
        for term in raw {
            let idx = [term.a, term.b, term.c, term.d];
            if idx.iter().any(|&i| i == 0 || i > n) {
                return Err(RMatrixError::Json(format!("index {idx:?} out of range for n = {n}")));
            }
            let coeff = parse_rational(&term.coeff).map_err(|e| RMatrixError::Json(e.to_string()))?;
            t.add_term(idx, coeff);
        }
        Ok(t)
    }
}

#[derive(Serialize, Deserialize)]
struct TensorTermJson {
    a: usize,
    b: usize,
    c: usize,
    d: usize,
    coeff: String,
}

/// Sparse element of `gl_n ⊗ gl_n ⊗ gl_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RTensor3 {
    pub n: usize,
    coeffs: BTreeMap<Index3, Rational>,
}

impl RTensor3 {
    pub fn zero(n: usize) -> Self {
        RTensor3 {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    fn add_term(&mut self, idx: Index3, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(idx).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&idx);
        }
    }

    fn merge(mut self, other: RTensor3) -> RTensor3 {
        for (idx, c) in other.coeffs {
            self.add_term(idx, c);
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Index3, &Rational)> {
        self.coeffs.iter()
    }
}

/// `[e_ab, e_cd] = δ_bc e_ad − δ_da e_cb`, as up to two signed units.
fn commutator(a: usize, b: usize, c: usize, d: usize) -> [Option<((usize, usize), i64)>; 2] {
    [
        (b == c).then_some(((a, d), 1)),
        (d == a).then_some(((c, b), -1)),
    ]
}

/// `(t, t0)`: the Casimir of the trace form and its Cartan part.
pub fn casimir(n: usize) -> (RTensor, RTensor) {
    assert!(n >= 2, "casimir needs n >= 2");
    let inv_n = rat(1, n as i64);
    let mut t0 = RTensor::zero(n);
    for i in 1..=n {
        for j in 1..=n {
            let delta = if i == j { Rational::one() } else { Rational::zero() };
            t0.add_term([i, i, j, j], delta - &inv_n);
        }
    }
    let mut t = t0.clone();
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                t.add_term([i, j, j, i], Rational::one());
            }
        }
    }
    (t, t0)
}

/// `[[r, r]] = [r12, r13] + [r12, r23] + [r13, r23]`.
pub fn classical_yang_baxter(r: &RTensor) -> RTensor3 {
    let n = r.n;
    let terms: Vec<(&Index2, &Rational)> = r.terms().collect();
    terms
        .par_iter()
        .map(|&(&[a, b, c, d], u)| {
            let mut acc = RTensor3::zero(n);
            for &(&[e, f, g, h], v) in &terms {
                let uv = u * v;
                // [r12, r13]: [e_ab, e_ef] ⊗ e_cd ⊗ e_gh
                for ((p, q), s) in commutator(a, b, e, f).into_iter().flatten() {
                    acc.add_term([p, q, c, d, g, h], &uv * int(s));
                }
                // [r12, r23]: e_ab ⊗ [e_cd, e_ef] ⊗ e_gh
                for ((p, q), s) in commutator(c, d, e, f).into_iter().flatten() {
                    acc.add_term([a, b, p, q, g, h], &uv * int(s));
                }
                // [r13, r23]: e_ab ⊗ e_ef ⊗ [e_cd, e_gh]
                for ((p, q), s) in commutator(c, d, g, h).into_iter().flatten() {
                    acc.add_term([a, b, e, f, p, q], &uv * int(s));
                }
            }
            acc
        })
        .reduce(|| RTensor3::zero(n), RTensor3::merge)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CybeReport {
    pub cybe: RTensor3,
    /// `r + r²¹ − t`.
    pub unitarity_residual: RTensor,
}

impl CybeReport {
    pub fn cybe_holds(&self) -> bool {
        self.cybe.is_zero()
    }

    pub fn unitarity_holds(&self) -> bool {
        self.unitarity_residual.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.cybe_holds() && self.unitarity_holds()
    }
}

pub fn check_cybe_unitarity(r: &RTensor) -> CybeReport {
    let (t, _) = casimir(r.n);
    CybeReport {
        cybe: classical_yang_baxter(r),
        unitarity_residual: r.add(&r.swap()).sub(&t),
    }
}

/// Cartan part solution space: `particular + span(freedom)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct R0Solution {
    pub particular: RTensor,
    pub freedom: Vec<RTensor>,
}

impl R0Solution {
    pub fn contains(&self, r0: &RTensor) -> bool {
        let Some(target) = r0.sub(&self.particular).cartan_matrix() else {
            return false;
        };
        if self.freedom.is_empty() {
            return target.is_zero();
        }
        let columns: Vec<Vec<Rational>> = self
            .freedom
            .iter()
            .map(|f| f.cartan_matrix().expect("freedom lies in h⊗h").entries().to_vec())
            .collect();
        let a = QMatrix::from_rows(columns).expect("rectangular").transpose();
        solve_affine(&a, target.entries()).is_ok()
    }
}

/// Linear system for `r0 = Σ c_ij e_ii⊗e_jj` over the `n²` unknowns `c_ij`
/// (row-major): both legs traceless, `r0 + r0²¹ = t0`, and for every
/// `α ∈ Γ1` and every `k`: `Σ_i c_ik γ(α)(e_ii) + Σ_j c_kj α(e_jj) = 0`.
fn r0_system(t: &BdTriple) -> (QMatrix, Vec<Rational>) {
    let n = t.n;
    let var = |i: usize, j: usize| (i - 1) * n + (j - 1);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs = Vec::new();
    let mut push = |row: Vec<(usize, i64)>, value: Rational| {
        let mut dense = vec![Rational::zero(); n * n];
        for (k, c) in row {
            dense[k] += int(c);
        }
        rows.push(dense);
        rhs.push(value);
    };
    for i in 1..=n {
        push((1..=n).map(|j| (var(i, j), 1)).collect(), Rational::zero());
        push((1..=n).map(|j| (var(j, i), 1)).collect(), Rational::zero());
    }
    let inv_n = rat(1, n as i64);
    for i in 1..=n {
        for j in i..=n {
            let target = if i == j { Rational::one() - &inv_n } else { -inv_n.clone() };
            push(vec![(var(i, j), 1), (var(j, i), 1)], target);
        }
    }
    for (&p, &q) in &t.gamma {
        for k in 1..=n {
            push(
                vec![(var(q, k), 1), (var(q + 1, k), -1), (var(k, p), 1), (var(k, p + 1), -1)],
                Rational::zero(),
            );
        }
    }
    (QMatrix::from_rows(rows).expect("rectangular"), rhs)
}

/// Solves for the Cartan part of every r-matrix attached to `t`.
pub fn solve_r0(t: &BdTriple) -> Result<R0Solution, RMatrixError> {
    t.validate().map_err(|e| RMatrixError::InvalidTriple(e.to_string()))?;
    let n = t.n;
    let (a, b) = r0_system(t);
    let sol = solve_affine(&a, &b).expect("valid triples always admit r0");
    let to_tensor = |v: &[Rational]| {
        RTensor::from_cartan_matrix(&QMatrix::new(n, n, v.to_vec()).expect("n*n unknowns"))
    };
    let k = t.k_t();
    assert_eq!(sol.kernel.len(), k * k.saturating_sub(1) / 2, "r0 freedom is h_T ∧ h_T");
    Ok(R0Solution {
        particular: to_tensor(&sol.particular),
        freedom: sol.kernel.iter().map(|v| to_tensor(v)).collect(),
    })
}

/// Residuals of the `r0` constraints; empty iff `r0` is admissible for `t`.
pub fn r0_residual(t: &BdTriple, r0: &RTensor) -> Result<Vec<usize>, RMatrixError> {
    let c = r0
        .cartan_matrix()
        .ok_or_else(|| RMatrixError::InvalidR0("r0 has off-diagonal terms".into()))?;
    let (a, b) = r0_system(t);
    let values = a.mul_vec(c.entries()).expect("n*n unknowns");
    Ok(values
        .iter()
        .zip(&b)
        .enumerate()
        .filter(|(_, (v, w))| v != w)
        .map(|(i, _)| i)
        .collect())
}

/// `r = r0 + Σ_{α>0} e_{−α}⊗e_α + Σ_{α ≺_T β} e_{−α} ∧ e_β`.
pub fn assemble_r(t: &BdTriple, r0: &RTensor) -> Result<RTensor, RMatrixError> {
    if r0.n != t.n {
        return Err(RMatrixError::InvalidR0(format!("r0 is for n = {}, triple for n = {}", r0.n, t.n)));
    }
    let bad = r0_residual(t, r0)?;
    if !bad.is_empty() {
        return Err(RMatrixError::InvalidR0(format!("{} constraint(s) violated", bad.len())));
    }
    let n = t.n;
    let mut r = r0.clone();
    for i in 1..=n {
        for j in i + 1..=n {
            r.add_term([j, i, i, j], Rational::one());
        }
    }
    for (alpha, beta) in bd_partial_order(t) {
        r = r.add(&RTensor::wedge(n, (alpha.j, alpha.i), (beta.i, beta.j), Rational::one()));
    }
    Ok(r)
}

/// `t0 / 2`, the Cartan part of the standard r-matrix.
pub fn standard_r0(n: usize) -> RTensor {
    casimir(n).1.scale(&rat(1, 2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdReport {
    /// Terms whose weight does not vanish on the subspace.
    pub violations: Vec<Index2>,
}

impl AdReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every term `e_ab⊗e_cd` has weight `ε_a − ε_b + ε_c − ε_d`
/// vanishing on `h`.
pub fn check_ad_invariance(r: &RTensor, h: &CartanSubspace) -> AdReport {
    let violations = r
        .terms()
        .filter(|(&[a, b, c, d], _)| {
            h.basis.iter().any(|v| {
                let w = &v[a - 1] - &v[b - 1] + &v[c - 1] - &v[d - 1];
                !w.is_zero()
            })
        })
        .map(|(&idx, _)| idx)
        .collect();
    AdReport { violations }
}

/// r-matrix for `t` built from the first admissible `r0` and the triple's `h_T`.
pub fn default_r(t: &BdTriple) -> Result<(RTensor, CartanSubspace), RMatrixError> {
    let sol = solve_r0(t)?;
    let (h, _) = h_t_and_kt(t);
    Ok((assemble_r(t, &sol.particular)?, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::all_bd_triples;
    use proptest::prelude::*;

    fn wedge_sum(n: usize, pairs: &[(usize, usize, Rational)]) -> RTensor {
        pairs.iter().fold(RTensor::zero(n), |acc, (i, j, c)| {
            acc.add(&RTensor::wedge(n, (*i, *i), (*j, *j), c.clone()))
        })
    }

    #[test]
    fn casimir_two() {
        let (t, t0) = casimir(2);
        // (1/2) h⊗h with h = e11 − e22.
        let expected = RTensor::from_terms(
            2,
            [
                ([1, 1, 1, 1], rat(1, 2)),
                ([1, 1, 2, 2], rat(-1, 2)),
                ([2, 2, 1, 1], rat(-1, 2)),
                ([2, 2, 2, 2], rat(1, 2)),
            ],
        );
        assert_eq!(t0, expected);
        assert_eq!(t.swap(), t);
        assert_eq!(t.get([1, 2, 2, 1]), int(1));
    }

    #[test]
    fn zero_tensor() {
        let report = check_cybe_unitarity(&RTensor::zero(3));
        assert!(report.cybe_holds());
        assert!(!report.unitarity_holds());
    }

    #[test]
    fn standard_sl2() {
        let t = BdTriple::trivial(2);
        let r = assemble_r(&t, &standard_r0(2)).unwrap();
        assert_eq!(r, standard_r0(2).add(&RTensor::from_terms(2, [([2, 1, 1, 2], int(1))])));
        assert!(check_cybe_unitarity(&r).passed());
    }

    #[test]
    fn sl3_cremmer_gervais() {
        let t = BdTriple::cremmer_gervais(3);
        let sol = solve_r0(&t).unwrap();
        assert!(sol.freedom.is_empty());
        let offset = sol.particular.sub(&standard_r0(3));
        let expected = wedge_sum(3, &[(1, 3, rat(1, 6)), (1, 2, rat(-1, 6)), (2, 3, rat(-1, 6))]);
        assert_eq!(offset, expected);
        let r = assemble_r(&t, &sol.particular).unwrap();
        assert_eq!(r.get([3, 2, 1, 2]), int(1));
        assert_eq!(r.get([1, 2, 3, 2]), int(-1));
        assert!(check_cybe_unitarity(&r).passed());

        let mut perturbed = r.clone();
        perturbed.add_term([3, 2, 1, 2], int(1));
        assert!(!classical_yang_baxter(&perturbed).is_zero());

        let (h, _) = h_t_and_kt(&t);
        assert!(check_ad_invariance(&r, &h).passed());
        let full = check_ad_invariance(&r, &CartanSubspace::full(3));
        assert_eq!(full.violations, vec![[1, 2, 3, 2], [3, 2, 1, 2]]);
        assert!(check_ad_invariance(&sol.particular, &CartanSubspace::full(3)).passed());
    }

    #[test]
    fn sl4_cremmer_gervais() {
        let t = BdTriple::cremmer_gervais(4);
        let sol = solve_r0(&t).unwrap();
        let expected = wedge_sum(
            4,
            &[(1, 4, rat(1, 4)), (1, 2, rat(-1, 4)), (2, 3, rat(-1, 4)), (3, 4, rat(-1, 4))],
        );
        assert_eq!(sol.particular.sub(&standard_r0(4)), expected);
        let r = assemble_r(&t, &sol.particular).unwrap();
        let wedge_terms = r.terms().filter(|(&[a, b, c, d], _)| a != b && c != d && !(a == d && b == c)).count();
        assert_eq!(wedge_terms, 8);
    }

    #[test]
    fn trivial_freedom() {
        let sol = solve_r0(&BdTriple::trivial(3)).unwrap();
        assert_eq!(sol.freedom.len(), 1);
        assert!(sol.contains(&standard_r0(3)));
        assert_eq!(solve_r0(&BdTriple::trivial(4)).unwrap().freedom.len(), 3);
    }

    #[test]
    fn invalid_r0_is_rejected() {
        let t = BdTriple::cremmer_gervais(3);
        assert!(matches!(assemble_r(&t, &standard_r0(3)), Err(RMatrixError::InvalidR0(_))));
    }

    #[test]
    fn json_round_trip() {
        let r = assemble_r(&BdTriple::cremmer_gervais(3), &solve_r0(&BdTriple::cremmer_gervais(3)).unwrap().particular)
            .unwrap();
        assert_eq!(RTensor::from_json(3, &r.to_json()).unwrap(), r);
    }

    #[test]
    fn every_small_triple_gives_an_r_matrix() {
        for n in 2..=4 {
            for t in all_bd_triples(n) {
                let sol = solve_r0(&t).unwrap();
                let r = assemble_r(&t, &sol.particular).unwrap();
                assert!(check_cybe_unitarity(&r).passed(), "{t:?}");
                let (h, _) = h_t_and_kt(&t);
                assert!(check_ad_invariance(&r, &h).passed(), "{t:?}");
            }
        }
    }

    fn small_tensor() -> impl Strategy<Value = RTensor> {
        proptest::collection::vec(((1usize..=3, 1usize..=3, 1usize..=3, 1usize..=3), -5i64..=5), 0..12)
            .prop_map(|terms| RTensor::from_terms(3, terms.into_iter().map(|((a, b, c, d), v)| ([a, b, c, d], int(v)))))
    }

    proptest! {
        #[test]
        fn swap_is_an_involution(x in small_tensor()) {
            prop_assert_eq!(x.swap().swap(), x);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn cybe_ignores_cartan_freedom(coeffs in proptest::collection::vec(-4i64..=4, 3)) {
            let t = BdTriple::trivial(4);
            let sol = solve_r0(&t).unwrap();
            let base = assemble_r(&t, &sol.particular).unwrap();
            let shift = sol.freedom.iter().zip(&coeffs).fold(RTensor::zero(4), |acc, (f, &c)| acc.add(&f.scale(&int(c))));
            let r0 = sol.particular.add(&shift);
            prop_assert!(sol.contains(&r0));
            let r = assemble_r(&t, &r0).unwrap();
            prop_assert_eq!(classical_yang_baxter(&r), classical_yang_baxter(&base));
            prop_assert!(check_cybe_unitarity(&r).passed());
        }
    }
}
