//! The Sklyanin bracket on functions of the matrix entries `x_ij`.
//!
//! With `∂R_ab f = Σ_j x_bj ∂f/∂x_aj` and `∂L_ab f = Σ_i x_ia ∂f/∂x_ib`,
//!
//! ```text
//! {f, g} = Σ r_{ab,cd} (∂R_ab f · ∂R_cd g − ∂L_ab f · ∂L_cd g).
//! ```
//!
//! An optional twist adds `u_fᵀ V u_g`, where `u_f` collects `∂R_h f` and
//! `∂L_h f` over a basis of `h_T` and `V = [[V1, V12], [−V12ᵀ, V2]]`.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::exactnum::{QMatrix, QVector, Rational};
use crate::laurent::{entry_name, LaurentError, LaurentPoly, Monomial, TermAccumulator, VarContext};
use crate::rmatrix::RTensor;
use crate::rootdata::CartanSubspace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SklyaninError {
    #[error("polynomials live in different variable contexts")]
    ContextMismatch,
    #[error("context has no matrix entry {0}")]
    MissingMatrixEntry(String),
    #[error("invalid twist: {0}")]
    InvalidTwist(String),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// Cartan correction data. `V1`, `V2` are skew; `V12` is arbitrary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twist {
    pub h_basis: Vec<QVector>,
    pub v1: QMatrix,
    pub v2: QMatrix,
    pub v12: QMatrix,
}

impl Twist {
    pub fn new(h: &CartanSubspace, v1: QMatrix, v2: QMatrix, v12: QMatrix) -> Result<Self, SklyaninError> {
        let k = h.dim();
        for (name, m) in [("V1", &v1), ("V2", &v2), ("V12", &v12)] {
            if m.rows() != k || m.cols() != k {
                return Err(SklyaninError::InvalidTwist(format!(
                    "{name} is {}x{}, expected {k}x{k}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        if !v1.is_skew_symmetric() || !v2.is_skew_symmetric() {
            return Err(SklyaninError::InvalidTwist("V1 and V2 must be skew-symmetric".into()));
        }
        Ok(Twist {
            h_basis: h.basis.clone(),
            v1,
            v2,
            v12,
        })
    }

    pub fn k(&self) -> usize {
        self.h_basis.len()
    }

    /// The skew `2k × 2k` block matrix `[[V1, V12], [−V12ᵀ, V2]]`.
    pub fn block(&self) -> QMatrix {
        let k = self.k();
        let mut v = QMatrix::zeros(2 * k, 2 * k);
        for p in 0..k {
            for q in 0..k {
                v[(p, q)] = self.v1[(p, q)].clone();
                v[(p, k + q)] = self.v12[(p, q)].clone();
                v[(k + p, q)] = -self.v12[(q, p)].clone();
                v[(k + p, k + q)] = self.v2[(p, q)].clone();
            }
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketSpec {
    pub n: usize,
    pub r: RTensor,
    pub twist: Option<Twist>,
}

impl BracketSpec {
    pub fn new(r: RTensor) -> Self {
        BracketSpec { n: r.n, r, twist: None }
    }

    pub fn with_twist(mut self, twist: Twist) -> Self {
        self.twist = Some(twist);
        self
    }

    /// `r` regrouped by first leg: `rows[ab] = [(cd, r_{ab,cd})]`, flat 0-based indices.
    fn grouped(&self) -> Vec<Vec<(usize, Rational)>> {
        let n = self.n;
        let mut rows = vec![Vec::new(); n * n];
        for (&[a, b, c, d], v) in self.r.terms() {
            rows[(a - 1) * n + (b - 1)].push(((c - 1) * n + (d - 1), v.clone()));
        }
        rows
    }
}

/// Positions of the matrix entries `x_ij` inside a context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixCoords {
    pub n: usize,
    /// Row-major: `idx[(i-1)*n + (j-1)]` is the position of `x_ij`.
    pub idx: Vec<usize>,
}

impl MatrixCoords {
    /// Looks up `x11 .. xnn` by name.
    pub fn standard(ctx: &VarContext, n: usize) -> Result<Self, SklyaninError> {
        Self::with_names(ctx, n, entry_name)
    }

    pub fn with_names(
        ctx: &VarContext,
        n: usize,
        name: impl Fn(usize, usize) -> String,
    ) -> Result<Self, SklyaninError> {
        let mut idx = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                let nm = name(i, j);
                idx.push(ctx.index_of(&nm).map_err(|_| SklyaninError::MissingMatrixEntry(nm))?);
            }
        }
        Ok(MatrixCoords { n, idx })
    }

    fn at(&self, i: usize, j: usize) -> usize {
        self.idx[i * self.n + j]
    }
}

/// Left/right invariant derivatives of one function, flat-indexed by `ab`.
#[derive(Clone, Debug)]
pub struct Differentials {
    pub right: Vec<LaurentPoly>,
    pub left: Vec<LaurentPoly>,
    /// `(∂R_h f)_{h ∈ basis}` followed by `(∂L_h f)_{h ∈ basis}`; empty without a twist.
    pub cartan: Vec<LaurentPoly>,
}

pub fn differentials(spec: &BracketSpec, coords: &MatrixCoords, f: &LaurentPoly) -> Differentials {
    let n = coords.n;
    let ctx = f.ctx();
    let partials: Vec<LaurentPoly> = coords.idx.iter().map(|&k| f.partial_derivative_at(k)).collect();
    let var = |k: usize| {
        let mut e = vec![0; ctx.len()];
        e[k] = 1;
        Monomial::new(e)
    };
    let one = Rational::one();
    let mut right = Vec::with_capacity(n * n);
    let mut left = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut r = TermAccumulator::new(ctx);
            let mut l = TermAccumulator::new(ctx);
            for j in 0..n {
                r.add_scaled(&partials[a * n + j].mul_term(&var(coords.at(b, j)), &one), &one);
                l.add_scaled(&partials[j * n + b].mul_term(&var(coords.at(j, a)), &one), &one);
            }
            right.push(r.finish());
            left.push(l.finish());
        }
    }
    let cartan = match &spec.twist {
        None => Vec::new(),
        Some(tw) => {
            let along = |derivs: &[LaurentPoly], h: &QVector| {
                let mut acc = TermAccumulator::new(ctx);
                for (a, c) in h.iter().enumerate() {
                    acc.add_scaled(&derivs[a * n + a], c);
                }
                acc.finish()
            };
            let mut out: Vec<LaurentPoly> = tw.h_basis.iter().map(|h| along(&right, h)).collect();
            out.extend(tw.h_basis.iter().map(|h| along(&left, h)));
            out
        }
    };
    Differentials { right, left, cartan }
}

/// Bracket from precomputed differentials.
pub fn bracket_from(spec: &BracketSpec, grouped: &[Vec<(usize, Rational)>], df: &Differentials, dg: &Differentials) -> LaurentPoly {
    let ctx = df.right[0].ctx();
    let mut acc = TermAccumulator::new(ctx);
    let minus = -Rational::one();
    for (ab, row) in grouped.iter().enumerate() {
        if row.is_empty() {
            continue;
        }
        let mut gr = TermAccumulator::new(ctx);
        let mut gl = TermAccumulator::new(ctx);
        for (cd, c) in row {
            gr.add_scaled(&dg.right[*cd], c);
            gl.add_scaled(&dg.left[*cd], c);
        }
        acc.add_product(&df.right[ab], &gr.finish(), &Rational::one());
        acc.add_product(&df.left[ab], &gl.finish(), &minus);
    }
    if let Some(tw) = &spec.twist {
        let v = tw.block();
        for p in 0..v.rows() {
            for q in 0..v.cols() {
                acc.add_product(&df.cartan[p], &dg.cartan[q], &v[(p, q)]);
            }
        }
    }
    acc.finish()
}

fn coords_for(spec: &BracketSpec, f: &LaurentPoly, g: &LaurentPoly) -> Result<MatrixCoords, SklyaninError> {
    if f.ctx() != g.ctx() {
        return Err(SklyaninError::ContextMismatch);
    }
    MatrixCoords::standard(f.ctx(), spec.n)
}

pub fn sklyanin_bracket(spec: &BracketSpec, f: &LaurentPoly, g: &LaurentPoly) -> Result<LaurentPoly, SklyaninError> {
    let coords = coords_for(spec, f, g)?;
    let grouped = spec.grouped();
    let df = differentials(spec, &coords, f);
    let dg = differentials(spec, &coords, g);
    Ok(bracket_from(spec, &grouped, &df, &dg))
}

/// Why a pair fails to be log-canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Residue {
    /// `{P_i, P_j} / (P_i P_j)` is this non-constant Laurent polynomial.
    NonConstant(LaurentPoly),
    NotDivisible,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("bracket of basis elements {i} and {j} is not log-canonical")]
pub struct NotLogCanonical {
    pub i: usize,
    pub j: usize,
    pub bracket: LaurentPoly,
    pub residue: Residue,
}

/// Constant `c` with `bracket = c · product`, or the reason there is none.
fn log_canonical_coefficient(bracket: &LaurentPoly, product: &LaurentPoly) -> Result<Rational, Residue> {
    if bracket.is_zero() {
        return Ok(Rational::zero());
    }
    if let (Some((mb, cb)), Some((mp, cp))) = (bracket.leading_term(), product.leading_term()) {
        if mb == mp {
            let c = cb / cp;
            if *bracket == product.scale(&c) {
                return Ok(c);
            }
        }
    }
    match bracket.exact_divide(product) {
        Ok(q) => Err(Residue::NonConstant(q)),
        Err(_) => Err(Residue::NotDivisible),
    }
}

/// `Ω` with `{P_i, P_j} = ω_ij P_i P_j`, or the first offending pair in
/// row-major order. Pairs are computed in parallel.
pub fn extract_coefficient_matrix(spec: &BracketSpec, basis: &[LaurentPoly]) -> Result<QMatrix, NotLogCanonical> {
    let size = basis.len();
    if size == 0 {
        return Ok(QMatrix::zeros(0, 0));
    }
    let coords = MatrixCoords::standard(basis[0].ctx(), spec.n).expect("basis lives in a matrix context");
    assert!(basis.iter().all(|p| p.ctx() == basis[0].ctx()), "basis shares one context");
    let grouped = spec.grouped();
    let diffs: Vec<Differentials> = basis.par_iter().map(|p| differentials(spec, &coords, p)).collect();
    let pairs: Vec<(usize, usize)> = (0..size).flat_map(|i| (i + 1..size).map(move |j| (i, j))).collect();
    let results: Vec<Result<Rational, NotLogCanonical>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let bracket = bracket_from(spec, &grouped, &diffs[i], &diffs[j]);
            let product = &basis[i] * &basis[j];
            log_canonical_coefficient(&bracket, &product).map_err(|residue| NotLogCanonical {
                i,
                j,
                bracket,
                residue,
            })
        })
        .collect();
    let mut omega = QMatrix::zeros(size, size);
    for (&(i, j), res) in pairs.iter().zip(results) {
        let c = res?;
        omega[(j, i)] = -c.clone();
        omega[(i, j)] = c;
    }
    Ok(omega)
}

/// `Ω + U V Uᵀ`, where row `i` of `U` holds the Cartan weights
/// `(η_i, ζ_i)` of the `i`-th function.
pub fn twisted_omega(omega: &QMatrix, weights: &[QVector], twist: &Twist) -> QMatrix {
    let u = QMatrix::from_rows(weights.to_vec()).expect("rectangular weights");
    let correction = u
        .mul(&twist.block())
        .and_then(|uv| uv.mul(&u.transpose()))
        .expect("weights have 2k columns");
    omega.add(&correction).expect("same size")
}

fn identity_point(ctx: &VarContext, coords: &MatrixCoords) -> Vec<Rational> {
    let mut point = vec![Rational::zero(); ctx.len()];
    for i in 0..coords.n {
        point[coords.at(i, i)] = Rational::one();
    }
    point
}

fn coordinate_functions(n: usize) -> (VarContext, Vec<LaurentPoly>) {
    let ctx = VarContext::matrix(n, &[]);
    let xs = (0..n * n).map(|k| LaurentPoly::var_at(&ctx, k)).collect();
    (ctx, xs)
}

/// True iff every `{x_ij, x_kl}` vanishes at `X = I`.
pub fn poisson_lie_at_identity(spec: &BracketSpec) -> bool {
    let (ctx, xs) = coordinate_functions(spec.n);
    let coords = MatrixCoords::standard(&ctx, spec.n).expect("matrix context");
    let grouped = spec.grouped();
    let diffs: Vec<Differentials> = xs.iter().map(|x| differentials(spec, &coords, x)).collect();
    let point = identity_point(&ctx, &coords);
    (0..xs.len()).all(|p| {
        (p + 1..xs.len()).all(|q| {
            bracket_from(spec, &grouped, &diffs[p], &diffs[q])
                .evaluate(&point)
                .expect("polynomial")
                .is_zero()
        })
    })
}

/// Multiplicativity: `{z_ij, z_kl}` computed on pairs `(X, Y)` with the
/// product bracket equals `{x_ij, x_kl}` evaluated at `Z = XY`.
pub fn is_poisson_lie(spec: &BracketSpec) -> bool {
    let n = spec.n;
    let (ctx, xs) = coordinate_functions(n);
    let coords = MatrixCoords::standard(&ctx, n).expect("matrix context");
    let grouped = spec.grouped();

    let mut names: Vec<String> = Vec::with_capacity(2 * n * n);
    for prefix in ["a", "b"] {
        for i in 1..=n {
            for j in 1..=n {
                names.push(format!("{prefix}{i}{j}"));
            }
        }
    }
    let pair_ctx = VarContext::new(&names).expect("distinct names");
    let left = MatrixCoords::with_names(&pair_ctx, n, |i, j| format!("a{i}{j}")).expect("names");
    let right = MatrixCoords::with_names(&pair_ctx, n, |i, j| format!("b{i}{j}")).expect("names");
    let product: Vec<LaurentPoly> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let mut acc = TermAccumulator::new(&pair_ctx);
            for k in 0..n {
                acc.add_product(
                    &LaurentPoly::var_at(&pair_ctx, left.at(i, k)),
                    &LaurentPoly::var_at(&pair_ctx, right.at(k, j)),
                    &Rational::one(),
                );
            }
            acc.finish()
        })
        .collect();
    let at_product: HashMap<String, LaurentPoly> = ctx
        .names()
        .iter()
        .cloned()
        .zip(product.iter().cloned())
        .collect();

    let x_diffs: Vec<Differentials> = xs.iter().map(|x| differentials(spec, &coords, x)).collect();
    let dl: Vec<Differentials> = product.iter().map(|z| differentials(spec, &left, z)).collect();
    let dr: Vec<Differentials> = product.iter().map(|z| differentials(spec, &right, z)).collect();
    let pairs: Vec<(usize, usize)> = (0..n * n).flat_map(|p| (p + 1..n * n).map(move |q| (p, q))).collect();
    pairs.par_iter().all(|&(p, q)| {
        let lhs = &bracket_from(spec, &grouped, &dl[p], &dl[q]) + &bracket_from(spec, &grouped, &dr[p], &dr[q]);
        let rhs = bracket_from(spec, &grouped, &x_diffs[p], &x_diffs[q])
            .substitute(&at_product)
            .expect("polynomial substitution");
        lhs == rhs
    })
}

/// Diagonal torus acting by `X ↦ H1 X H2`, given by Laurent monomials.
#[derive(Clone, Debug)]
pub struct Torus {
    /// Matrix entries followed by the torus parameters.
    pub ctx: VarContext,
    pub left: Vec<LaurentPoly>,
    pub right: Vec<LaurentPoly>,
    pub left_params: Vec<String>,
    pub right_params: Vec<String>,
}

impl Torus {
    /// `H = diag(Π_p s_p^{h_p[i]})` for an integer basis `h_p`, with
    /// parameter names `left_params` for `H1` and `right_params` for `H2`.
    pub fn from_cartan(h: &CartanSubspace, left_params: &[&str], right_params: &[&str]) -> Self {
        assert_eq!(left_params.len(), h.dim(), "one left parameter per basis vector");
        assert_eq!(right_params.len(), h.dim(), "one right parameter per basis vector");
        let n = h.n;
        let mut extra: Vec<&str> = left_params.to_vec();
        extra.extend_from_slice(right_params);
        let ctx = VarContext::matrix(n, &extra);
        let diag = |params: &[&str]| -> Vec<LaurentPoly> {
            (0..n)
                .map(|i| {
                    let mut e = vec![0; ctx.len()];
                    for (p, name) in params.iter().enumerate() {
                        let v = &h.basis[p][i];
                        assert!(v.is_integer(), "torus needs an integer basis");
                        e[ctx.index_of(name).expect("parameter")] =
                            i32::try_from(v.to_integer()).expect("small weights");
                    }
                    LaurentPoly::monomial(&ctx, Monomial::new(e), Rational::one())
                })
                .collect()
        };
        Torus {
            left: diag(left_params),
            right: diag(right_params),
            left_params: left_params.iter().map(|s| s.to_string()).collect(),
            right_params: right_params.iter().map(|s| s.to_string()).collect(),
            ctx,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("function is not a weight vector for the torus action")]
pub struct NotEquivariant;

/// `(η, ζ)` with `P(H1 X H2) = H1^η H2^ζ P(X)`, as exponents of the parameters.
pub fn check_equivariance(p: &LaurentPoly, torus: &Torus) -> Result<(Vec<i64>, Vec<i64>), NotEquivariant> {
    let n = torus.left.len();
    let ctx = &torus.ctx;
    let embedded = p.embed(ctx).map_err(|_| NotEquivariant)?;
    let mut assignment = HashMap::new();
    for i in 1..=n {
        for j in 1..=n {
            let name = entry_name(i, j);
            let x = LaurentPoly::var(ctx, &name).map_err(|_| NotEquivariant)?;
            let image = &(&torus.left[i - 1] * &x) * &torus.right[j - 1];
            assignment.insert(name, image);
        }
    }
    let moved = embedded.substitute(&assignment).map_err(|_| NotEquivariant)?;
    let ratio = moved.exact_divide(&embedded).map_err(|_| NotEquivariant)?;
    let (mono, coeff) = ratio.as_monomial().ok_or(NotEquivariant)?;
    if !coeff.is_one() {
        return Err(NotEquivariant);
    }
    let exps = mono.exps();
    let params: Vec<usize> = torus
        .left_params
        .iter()
        .chain(&torus.right_params)
        .map(|s| ctx.index_of(s).expect("parameter"))
        .collect();
    if exps.iter().enumerate().any(|(k, &e)| e != 0 && !params.contains(&k)) {
        return Err(NotEquivariant);
    }
    let read = |names: &[String]| names.iter().map(|s| i64::from(exps[ctx.index_of(s).expect("parameter")])).collect();
    Ok((read(&torus.left_params), read(&torus.right_params)))
}

/// `{f,{g,h}} + {g,{h,f}} + {h,{f,g}}`.
pub fn jacobi_spot_check(
    spec: &BracketSpec,
    f: &LaurentPoly,
    g: &LaurentPoly,
    h: &LaurentPoly,
) -> Result<LaurentPoly, SklyaninError> {
    let b = |x: &LaurentPoly, y: &LaurentPoly| sklyanin_bracket(spec, x, y);
    let t1 = b(f, &b(g, h)?)?;
    let t2 = b(g, &b(h, f)?)?;
    let t3 = b(h, &b(f, g)?)?;
    Ok(&(&t1 + &t2) + &t3)
}

/// Rank of the Jacobian of `basis` with respect to the matrix entries at `point`.
pub fn jacobian_independence(basis: &[LaurentPoly], point: &QMatrix) -> Result<usize, SklyaninError> {
    let n = point.rows();
    if basis.is_empty() {
        return Ok(0);
    }
    let ctx = basis[0].ctx();
    if basis.iter().any(|p| p.ctx() != ctx) {
        return Err(SklyaninError::ContextMismatch);
    }
    let coords = MatrixCoords::standard(ctx, n)?;
    let mut values = vec![Rational::zero(); ctx.len()];
    for i in 0..n {
        for j in 0..n {
            values[coords.at(i, j)] = point[(i, j)].clone();
        }
    }
    let mut rows = Vec::with_capacity(basis.len());
    for p in basis {
        let row = coords
            .idx
            .iter()
            .map(|&k| p.partial_derivative_at(k).evaluate(&values))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(QMatrix::from_rows(rows).expect("rectangular").rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use crate::rmatrix::{assemble_r, solve_r0, standard_r0};
    use crate::rootdata::{h_t_and_kt, BdTriple};
    use proptest::prelude::*;

    /// `h ∧ e12` with `h = e11 − e22`.
    fn triangular() -> BracketSpec {
        let mut r = RTensor::zero(2);
        for (a, s) in [(1, 1), (2, -1)] {
            r = r.add(&RTensor::wedge(2, (a, a), (1, 2), int(s)));
        }
        BracketSpec::new(r)
    }

    fn standard(n: usize) -> BracketSpec {
        BracketSpec::new(assemble_r(&BdTriple::trivial(n), &standard_r0(n)).unwrap())
    }

    fn cg3() -> BracketSpec {
        let t = BdTriple::cremmer_gervais(3);
        BracketSpec::new(assemble_r(&t, &solve_r0(&t).unwrap().particular).unwrap())
    }

    fn x(ctx: &VarContext, i: usize, j: usize) -> LaurentPoly {
        LaurentPoly::var(ctx, &entry_name(i, j)).unwrap()
    }

    #[test]
    fn triangular_brackets() {
        let spec = triangular();
        let ctx = VarContext::matrix(2, &[]);
        let y1 = x(&ctx, 1, 1);
        let y2 = x(&ctx, 2, 1);
        let y3 = &x(&ctx, 1, 1) - &x(&ctx, 2, 2);
        assert_eq!(sklyanin_bracket(&spec, &y1, &y2).unwrap(), &y2 * &y2);
        assert_eq!(sklyanin_bracket(&spec, &y1, &y3).unwrap(), &y2 * &y3);
        assert!(sklyanin_bracket(&spec, &y2, &y3).unwrap().is_zero());
        assert!(sklyanin_bracket(&spec, &y1, &y1).unwrap().is_zero());

        let inv = y2.exact_divide(&(&y2 * &y2)).unwrap();
        let z2 = -&inv;
        let z3 = &y3 * &inv;
        assert_eq!(sklyanin_bracket(&spec, &y1, &z2).unwrap(), LaurentPoly::one(&ctx));
        assert!(sklyanin_bracket(&spec, &z2, &z3).unwrap().is_zero());
        assert!(sklyanin_bracket(&spec, &y1, &z3).unwrap().is_zero());

        match extract_coefficient_matrix(&spec, &[y1, y2.clone(), y3]) {
            Err(NotLogCanonical { i: 0, j: 1, residue: Residue::NonConstant(q), .. }) => {
                assert_eq!(q, y2.exact_divide(&x(&ctx, 1, 1)).unwrap())
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn determinant_is_a_casimir() {
        let spec = cg3();
        let ctx = VarContext::matrix(3, &[]);
        let m: Vec<Vec<LaurentPoly>> = (1..=3).map(|i| (1..=3).map(|j| x(&ctx, i, j)).collect()).collect();
        let det = crate::laurent::poly_determinant(&ctx, &m);
        for i in 1..=3 {
            for j in 1..=3 {
                assert!(sklyanin_bracket(&spec, &det, &x(&ctx, i, j)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn jacobi_on_coordinates() {
        let ctx = VarContext::matrix(3, &[]);
        let spec = cg3();
        let r = jacobi_spot_check(&spec, &x(&ctx, 1, 1), &x(&ctx, 2, 1), &x(&ctx, 1, 3)).unwrap();
        assert!(r.is_zero());
        let ctx2 = VarContext::matrix(2, &[]);
        let s2 = standard(2);
        let f = x(&ctx2, 1, 2);
        assert!(jacobi_spot_check(&s2, &f, &f, &f).unwrap().is_zero());
        assert!(jacobi_spot_check(&s2, &x(&ctx2, 1, 1), &x(&ctx2, 1, 2), &x(&ctx2, 2, 2)).unwrap().is_zero());
    }

    #[test]
    fn identity_test_and_multiplicativity() {
        let spec = cg3();
        assert!(poisson_lie_at_identity(&spec));
        assert!(is_poisson_lie(&spec));
        let (h, _) = h_t_and_kt(&BdTriple::cremmer_gervais(3));
        let zero = QMatrix::zeros(1, 1);
        let v12 = QMatrix::from_i64_rows(&[[1]]);
        let twisted = spec.clone().with_twist(Twist::new(&h, zero.clone(), zero.clone(), v12).unwrap());
        assert!(poisson_lie_at_identity(&twisted));
        assert!(!is_poisson_lie(&twisted));
        let untwisted = spec.with_twist(Twist::new(&h, zero.clone(), zero.clone(), zero).unwrap());
        assert!(is_poisson_lie(&untwisted));
    }

    #[test]
    fn equivariance() {
        let (h, _) = h_t_and_kt(&BdTriple::cremmer_gervais(3));
        let torus = Torus::from_cartan(&h, &["t"], &["z"]);
        let ctx = VarContext::matrix(3, &[]);
        assert_eq!(check_equivariance(&x(&ctx, 1, 1), &torus), Ok((vec![1], vec![1])));
        assert_eq!(check_equivariance(&x(&ctx, 3, 2), &torus), Ok((vec![-1], vec![0])));
        assert_eq!(
            check_equivariance(&(&x(&ctx, 1, 1) + &x(&ctx, 2, 1)), &torus),
            Err(NotEquivariant)
        );
    }

    #[test]
    fn jacobian_rank() {
        let ctx = VarContext::matrix(2, &[]);
        let point = QMatrix::from_i64_rows(&[[2, 1], [3, 2]]);
        let basis = vec![x(&ctx, 1, 1), x(&ctx, 2, 1), x(&ctx, 1, 1)];
        assert_eq!(jacobian_independence(&basis, &point).unwrap(), 2);
    }

    #[test]
    fn twist_correction_matches_weight_formula() {
        let t = BdTriple::trivial(2);
        let (h, _) = h_t_and_kt(&t);
        let spec = standard(2);
        let ctx = VarContext::matrix(2, &[]);
        let basis = vec![x(&ctx, 1, 2), x(&ctx, 1, 1), x(&ctx, 2, 1)];
        let omega = extract_coefficient_matrix(&spec, &basis).unwrap();
        let twist = Twist::new(&h, QMatrix::zeros(1, 1), QMatrix::zeros(1, 1), QMatrix::from_rows(vec![vec![rat(2, 3)]]).unwrap()).unwrap();
        let twisted = extract_coefficient_matrix(&spec.clone().with_twist(twist.clone()), &basis).unwrap();
        // Weights (η, ζ) in the basis diag(1,-1).
        let weights = vec![vec![int(1), int(-1)], vec![int(1), int(1)], vec![int(-1), int(1)]];
        assert_eq!(twisted, twisted_omega(&omega, &weights, &twist));
    }

    fn small_poly(ctx: VarContext) -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((proptest::collection::vec(0i32..=2, 4), -3i64..=3), 1..5)
            .prop_map(move |terms| LaurentPoly::from_terms(&ctx, terms.into_iter().map(|(e, c)| (e, int(c))).collect()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn antisymmetry_and_leibniz(
            f in small_poly(VarContext::matrix(2, &[])),
            g in small_poly(VarContext::matrix(2, &[])),
            h in small_poly(VarContext::matrix(2, &[])),
        ) {
            let spec = triangular();
            let fg = sklyanin_bracket(&spec, &f, &g).unwrap();
            prop_assert!((&fg + &sklyanin_bracket(&spec, &g, &f).unwrap()).is_zero());
            let lhs = sklyanin_bracket(&spec, &(&f * &g), &h).unwrap();
            let rhs = &(&f * &sklyanin_bracket(&spec, &g, &h).unwrap()) + &(&sklyanin_bracket(&spec, &f, &h).unwrap() * &g);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
