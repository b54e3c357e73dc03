//! Embedded case data: bases, exchange matrices, coefficient matrices and
//! torus weights, transcribed verbatim, plus explicit corrections.

use crate::cluster::ExtExchangeMatrix;
use crate::exactnum::{int, rat, QMatrix, Rational};
use crate::genminor::{initial_cluster, DoubleWord};
use crate::laurent::{entry_name, poly_determinant, LaurentPoly, VarContext};
use crate::rmatrix::{assemble_r, standard_r0, RTensor};
use crate::rootdata::{h_t_and_kt, BdTriple, CartanSubspace};

use super::CaseError;

pub const CASE_NAMES: [&str; 7] = [
    "sl3-cg",
    "sl4-case2",
    "sl4-case3",
    "sl4-case4",
    "sl2-triangular",
    "trivial-sl2",
    "trivial-sl3",
];

/// A known misprint and the stage whose outcome depends on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Erratum {
    pub stage: &'static str,
    pub text: String,
}

/// A coefficient matrix as printed (`scalar · Ω` with integer entries) and
/// the corrections, in printed units, needed to make it consistent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrintedOmega {
    pub scalar: i64,
    pub printed: QMatrix,
    /// `(i, j, value)`, 1-based; the transposed entry is set to `-value`.
    pub corrections: Vec<(usize, usize, i64)>,
}

impl PrintedOmega {
    fn new<R: AsRef<[i64]>>(scalar: i64, rows: &[R], corrections: &[(usize, usize, i64)]) -> Self {
        PrintedOmega {
            scalar,
            printed: QMatrix::from_i64_rows(rows),
            corrections: corrections.to_vec(),
        }
    }

    /// The printed matrix divided by its scalar, uncorrected.
    pub fn printed_omega(&self) -> QMatrix {
        self.printed.scale(&rat(1, self.scalar))
    }

    /// The corrected matrix divided by its scalar.
    pub fn omega(&self) -> QMatrix {
        let mut m = self.printed.clone();
        for &(i, j, v) in &self.corrections {
            m[(i - 1, j - 1)] = int(v);
            m[(j - 1, i - 1)] = int(-v);
        }
        m.scale(&rat(1, self.scalar))
    }
}

/// Parameters of the left and right torus actions `diag(Π_p s_p^{h_p[i]})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusParams {
    pub h: CartanSubspace,
    pub left: Vec<String>,
    pub right: Vec<String>,
}

/// Exact bracket values expected on the triangular example.
#[derive(Clone, Debug)]
pub struct TriangularData {
    pub y: Vec<LaurentPoly>,
    pub z: Vec<LaurentPoly>,
    /// `{y_i, y_j}` for `(i, j)` in `(1,2), (1,3), (2,3)`.
    pub y_brackets: Vec<LaurentPoly>,
    pub z_brackets: Vec<LaurentPoly>,
}

#[derive(Clone, Debug)]
pub struct CaseSpec {
    pub name: String,
    pub n: usize,
    /// `None` for the skew-symmetric triangular example.
    pub triple: Option<BdTriple>,
    pub r0: Option<RTensor>,
    pub r: RTensor,
    pub ctx: VarContext,
    /// Functions on `SL_n`, corrected where a misprint is recorded.
    pub basis: Vec<(String, LaurentPoly)>,
    /// The last function of the `GL_n` extension (`±det X`).
    pub gl_extension: Option<(String, LaurentPoly)>,
    /// Positions in the `GL_n` basis (basis followed by the extension)
    /// whose printed form differs from the one used here.
    pub printed_overrides: Vec<(usize, LaurentPoly)>,
    pub b_tilde: Option<ExtExchangeMatrix>,
    pub b_tilde_gl: Option<ExtExchangeMatrix>,
    pub omega: Option<PrintedOmega>,
    /// Sign `s` with `B̃Ω = (sI 0)` on the data used here.
    pub d_sign: Option<i64>,
    pub printed_d_sign: Option<i64>,
    pub torus: Option<TorusParams>,
    pub eta: Option<Vec<Vec<i64>>>,
    pub zeta: Option<Vec<Vec<i64>>>,
    /// Offsets of stable variables in `basis`.
    pub stable: Vec<usize>,
    pub word: Option<DoubleWord>,
    pub triangular: Option<TriangularData>,
    pub errata: Vec<Erratum>,
}

impl CaseSpec {
    pub fn basis_polys(&self) -> Vec<LaurentPoly> {
        self.basis.iter().map(|(_, p)| p.clone()).collect()
    }

    /// The basis followed by the `GL_n` extension, if any.
    pub fn gl_basis(&self) -> Vec<(String, LaurentPoly)> {
        let mut out = self.basis.clone();
        out.extend(self.gl_extension.clone());
        out
    }

    /// [`Self::gl_basis`] with every printed form restored.
    pub fn printed_gl_basis(&self) -> Vec<(String, LaurentPoly)> {
        let mut out = self.gl_basis();
        for (k, p) in &self.printed_overrides {
            out[*k].1 = p.clone();
        }
        out
    }

    pub fn errata_for(&self, stage: &str) -> Vec<&Erratum> {
        self.errata.iter().filter(|e| e.stage == stage).collect()
    }

    pub fn k_t(&self) -> usize {
        self.triple.as_ref().map_or(0, BdTriple::k_t)
    }

    /// `(η_i, ζ_i)` concatenated, one row per basis element.
    pub fn weight_rows(&self) -> Option<Vec<Vec<Rational>>> {
        let (eta, zeta) = (self.eta.as_ref()?, self.zeta.as_ref()?);
        Some(
            eta.iter()
                .zip(zeta)
                .map(|(e, z)| e.iter().chain(z).map(|&v| int(v)).collect())
                .collect(),
        )
    }
}

/// Entry `(i, j)` (0-based) is the `(j, i)` cofactor of the generic matrix,
/// so that `X·X̂ = det(X)·I`.
pub fn adjugate_polynomials(n: usize) -> Vec<Vec<LaurentPoly>> {
    assert!(n >= 2, "adjugate needs n >= 2");
    let ctx = VarContext::matrix(n, &[]);
    adjugate_in(&ctx, n)
}

fn adjugate_in(ctx: &VarContext, n: usize) -> Vec<Vec<LaurentPoly>> {
    let x = |i: usize, j: usize| LaurentPoly::var(ctx, &entry_name(i + 1, j + 1)).expect("matrix entry");
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let sub: Vec<Vec<LaurentPoly>> = (0..n)
                        .filter(|&r| r != j)
                        .map(|r| (0..n).filter(|&c| c != i).map(|c| x(r, c)).collect())
                        .collect();
                    let cof = poly_determinant(ctx, &sub);
                    if (i + j) % 2 == 0 {
                        cof
                    } else {
                        -&cof
                    }
                })
                .collect()
        })
        .collect()
}

/// Entries and adjugate entries of the generic `n × n` matrix, 1-based.
struct Generic {
    ctx: VarContext,
    n: usize,
    adj: Vec<Vec<LaurentPoly>>,
}

impl Generic {
    fn new(n: usize) -> Self {
        let ctx = VarContext::matrix(n, &[]);
        let adj = adjugate_in(&ctx, n);
        Generic { ctx, n, adj }
    }

    fn x(&self, i: usize, j: usize) -> LaurentPoly {
        LaurentPoly::var(&self.ctx, &entry_name(i, j)).expect("matrix entry")
    }

    fn xh(&self, i: usize, j: usize) -> LaurentPoly {
        self.adj[i - 1][j - 1].clone()
    }

    fn det(&self) -> LaurentPoly {
        let m: Vec<Vec<LaurentPoly>> = (1..=self.n).map(|i| (1..=self.n).map(|j| self.x(i, j)).collect()).collect();
        poly_determinant(&self.ctx, &m)
    }

    /// Determinant of a matrix given row by row.
    fn d(&self, rows: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
        poly_determinant(&self.ctx, &rows)
    }

    /// `|x_a x_b; x_c x_d|` over matrix entries.
    fn d2(&self, a: (usize, usize), b: (usize, usize), c: (usize, usize), d: (usize, usize)) -> LaurentPoly {
        self.d(vec![vec![self.x(a.0, a.1), self.x(b.0, b.1)], vec![self.x(c.0, c.1), self.x(d.0, d.1)]])
    }

    /// Same over adjugate entries.
    fn dh2(&self, a: (usize, usize), b: (usize, usize), c: (usize, usize), d: (usize, usize)) -> LaurentPoly {
        self.d(vec![
            vec![self.xh(a.0, a.1), self.xh(b.0, b.1)],
            vec![self.xh(c.0, c.1), self.xh(d.0, d.1)],
        ])
    }

    /// 3×3 determinant over matrix entries, entries given row by row.
    fn d3(&self, e: [[(usize, usize); 3]; 3]) -> LaurentPoly {
        self.d(e.iter().map(|row| row.iter().map(|&(i, j)| self.x(i, j)).collect()).collect())
    }
}

fn named(polys: Vec<LaurentPoly>) -> Vec<(String, LaurentPoly)> {
    polys
        .into_iter()
        .enumerate()
        .map(|(k, p)| (format!("P{}", k + 1), p))
        .collect()
}

fn pairs(v: &[(i64, i64)]) -> Vec<Vec<i64>> {
    v.iter().map(|&(a, b)| vec![a, b]).collect()
}

fn singles(v: &[i64]) -> Vec<Vec<i64>> {
    v.iter().map(|&a| vec![a]).collect()
}

/// `t0/2 + Σ c (e_ii ∧ e_jj)` for `(i, j, c)`.
fn r0_from_wedges(n: usize, wedges: &[(usize, usize, i64, i64)]) -> RTensor {
    let mut r0 = standard_r0(n);
    for &(i, j, p, q) in wedges {
        r0 = r0.add(&RTensor::wedge(n, (i, i), (j, j), rat(p, q)));
    }
    r0
}

fn torus(t: &BdTriple, left: &[&str], right: &[&str]) -> TorusParams {
    TorusParams {
        h: h_t_and_kt(t).0,
        left: left.iter().map(|s| s.to_string()).collect(),
        right: right.iter().map(|s| s.to_string()).collect(),
    }
}

fn matrix(rows: &[&[i64]]) -> ExtExchangeMatrix {
    ExtExchangeMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).expect("embedded matrix is skew")
}

pub fn load_case(name: &str) -> Result<CaseSpec, CaseError> {
    match name {
        "sl3-cg" => Ok(sl3_cg()),
        "sl4-case2" => Ok(sl4_case2()),
        "sl4-case3" => Ok(sl4_case3()),
        "sl4-case4" => Ok(sl4_case4()),
        "sl2-triangular" => Ok(sl2_triangular()),
        "trivial-sl2" => Ok(trivial(2, vec![-1, 1, -1])),
        "trivial-sl3" => Ok(trivial(3, vec![-2, -1, 1, -1, 2, -2, 1, -1])),
        other => Err(CaseError::UnknownCase(other.to_string())),
    }
}

fn sl3_cg() -> CaseSpec {
    let g = Generic::new(3);
    let (x, xh) = (|i, j| g.x(i, j), |i, j| g.xh(i, j));
    let basis = vec![
        x(1, 1),
        x(1, 3),
        x(2, 1),
        -&xh(2, 3),
        -&xh(3, 1),
        -&xh(3, 3),
        &(&x(1, 3) * &x(3, 1)) - &(&x(2, 1) * &x(2, 3)),
        &(&xh(1, 3) * &xh(3, 1)) - &(&xh(2, 1) * &xh(2, 3)),
    ];
    let det = g.det();
    let b = matrix(&[
        &[0, -1, -1, 1, 0, 0, 0, 0],
        &[1, 0, -1, -1, 0, 0, 1, 0],
        &[1, 1, 0, 0, 1, -1, -1, 0],
        &[-1, 1, 0, 0, 1, 1, 0, -1],
        &[0, 0, -1, -1, 0, 1, 0, 1],
        &[0, 0, 1, -1, -1, 0, 0, 0],
    ]);
    let appended = [0, 0, 0, 0, -1, 1];
    let b_gl = ExtExchangeMatrix::new(
        b.entries()
            .iter()
            .zip(appended)
            .map(|(row, extra)| row.iter().copied().chain([extra]).collect())
            .collect(),
    )
    .expect("skew principal part");
    let omega = PrintedOmega::new(
        3,
        &[
            [0, -2, -2, -1, -1, 0, -3, -3],
            [2, 0, 0, 0, 0, 1, -2, -1],
            [2, 0, 0, 0, 0, 1, 1, -1],
            [1, 0, 0, 0, 0, 2, -1, -2],
            [1, 0, 0, 0, 0, 2, -1, 1],
            [0, -1, -1, -2, -2, 0, -3, -3],
            [3, 2, -1, 1, 1, 3, 0, 0],
            [3, 1, 1, 2, -1, 3, 0, 0],
        ],
        &[(2, 7, 1), (3, 7, -2)],
    );
    let triple = BdTriple::cremmer_gervais(3);
    let r0 = r0_from_wedges(3, &[(1, 3, 1, 6), (1, 2, -1, 6), (2, 3, -1, 6)]);
    CaseSpec {
        name: "sl3-cg".into(),
        n: 3,
        r: assemble_r(&triple, &r0).expect("embedded r0 is admissible"),
        r0: Some(r0),
        torus: Some(torus(&triple, &["t"], &["z"])),
        triple: Some(triple),
        ctx: g.ctx.clone(),
        basis: named(basis),
        gl_extension: Some(("P9".into(), -&det)),
        printed_overrides: vec![(8, det)],
        b_tilde: Some(b),
        b_tilde_gl: Some(b_gl),
        omega: Some(omega),
        d_sign: Some(-1),
        printed_d_sign: Some(-1),
        eta: Some(singles(&[1, 1, 0, 1, -1, 1, 0, 0])),
        zeta: Some(singles(&[1, -1, 1, 0, 1, 1, 0, 0])),
        stable: vec![6, 7],
        word: None,
        triangular: None,
        errata: vec![
            Erratum {
                stage: "omega",
                text: "printed 3Ω has entries (2,7) and (3,7) exchanged: the bracket gives ω27 = 1/3, ω37 = -2/3".into(),
            },
            Erratum {
                stage: "regularity",
                text: "GL extension variable must be -det X; with +det X directions 5 and 6 are not Laurent".into(),
            },
        ],
    }
}

fn sl4_case2() -> CaseSpec {
    let g = Generic::new(4);
    let (x, xh) = (|i, j| g.x(i, j), |i, j| g.xh(i, j));
    let sum = |f: &dyn Fn(usize) -> LaurentPoly| (1..=3).fold(LaurentPoly::zero(&g.ctx), |acc, i| &acc + &f(i));
    let p13 = sum(&|i| &xh(i + 1, 1) * &g.d2((1, i), (1, 4), (2, i), (2, 4)));
    let p14 = -&sum(&|i| &xh(i, 4) * &g.d3([[(2, 1), (2, i + 1), (1, 4)], [(3, 1), (3, i + 1), (2, 4)], [(4, 1), (4, i + 1), (3, 4)]]));
    let p15 = -&sum(&|i| &xh(i + 1, 1) * &g.d3([[(2, 1), (1, i), (1, 4)], [(3, 1), (2, i), (2, 4)], [(4, 1), (3, i), (3, 4)]]));
    let basis = vec![
        -&x(2, 1),
        x(3, 1),
        x(2, 4),
        xh(3, 1),
        xh(2, 4),
        xh(3, 4),
        g.d2((1, 1), (1, 4), (2, 1), (2, 4)),
        g.d2((2, 1), (2, 4), (3, 1), (3, 4)),
        g.d2((2, 1), (1, 4), (3, 1), (2, 4)),
        g.d2((2, 1), (2, 2), (3, 1), (3, 2)),
        -&g.dh2((3, 1), (2, 4), (4, 1), (3, 4)),
        -&g.d3([[(2, 1), (2, 2), (1, 4)], [(3, 1), (3, 2), (2, 4)], [(4, 1), (4, 2), (3, 4)]]),
        p13,
        p14,
        p15,
    ];
    let b_gl = matrix(&[
        &[0, 1, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0],
        &[-1, 0, -1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
        &[-1, 1, 0, 0, 0, 0, 1, 0, -1, 0, 0, 0, 0, 0, 0, 0],
        &[0, 0, 0, 0, 1, -1, 0, 0, 0, 1, -1, 0, 0, 0, 0, 1],
        &[0, 0, 0, -1, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
        &[0, 0, 0, 1, 1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, -1],
        &[0, 0, -1, 0, 0, 0, 0, 1, 0, 0, -1, 0, 1, 0, 0, 0],
        &[1, 0, 0, 0, 0, 1, -1, 0, 0, -1, 0, 0, 0, 0, 0, 0],
        &[0, -1, 1, 0, 0, 0, 0, 0, 0, 1, 0, -1, -1, 0, 1, 0],
        &[0, 0, 0, -1, 0, 0, 0, 1, -1, 0, 0, 1, 0, 0, 0, 0],
        &[0, 0, 0, 1, -1, 0, 1, 0, 0, 0, 0, -1, -1, 1, 0, 0],
        &[0, 0, 0, 0, 0, 0, 0, 0, 1, -1, 1, 0, 0, -1, 0, 0],
        &[0, 0, 0, 0, 0, 0, -1, 0, 1, 0, 1, 0, 0, 0, -1, 0],
    ]);
    let omega = PrintedOmega::new(
        4,
        &[
            [0, -3, -3, -1, -1, 0, 0, -2, -3, 0, -1, -2, -2, -4, -4],
            [3, 0, 0, 0, 0, 1, 2, 0, -1, 2, 1, -1, 1, -2, -2],
            [3, 0, 0, 0, 0, 1, 2, 0, 3, 2, 1, 3, 1, 2, 2],
            [1, 0, 0, 0, 0, 3, 2, 0, 1, 2, 3, 1, 3, 2, 2],
            [1, 0, 0, 0, 0, 3, 2, 0, 1, 2, -1, 1, -1, -2, -2],
            [0, -1, -1, -3, -3, 0, 0, -2, -1, 0, -3, -2, -2, -4, -4],
            [0, -2, -2, -2, -2, 0, 0, -4, -2, 0, -2, 0, -4, -4, -4],
            [2, 0, 0, 0, 0, 2, 4, 0, 2, 4, 2, 2, 2, 0, 0],
            [3, 1, -3, -1, -1, 1, 2, -2, 0, 2, 0, 1, -1, -2, -2],
            [0, -2, -2, -2, -2, 0, 0, -4, -2, 0, -2, -4, 0, -4, -4],
            [1, -1, -1, -3, 1, 3, 2, -2, 0, 2, 0, -1, 1, -2, -2],
            [2, 1, -3, -1, -1, 2, 0, -2, -1, 4, 1, 0, 0, 0, 0],
            [2, -1, -1, -3, 1, 2, 4, -2, 1, 0, -1, 0, 0, 0, 0],
            [4, 2, -2, -2, 2, 4, 4, 0, 2, 4, 2, 0, 0, 0, 0],
            [4, 2, -2, -2, 2, 4, 4, 0, 2, 4, 2, 0, 0, 0, 0],
        ],
        &[],
    );
    let triple = BdTriple::cremmer_gervais(4);
    let r0 = r0_from_wedges(4, &[(1, 4, 1, 4), (1, 2, -1, 4), (2, 3, -1, 4), (3, 4, -1, 4)]);
    CaseSpec {
        name: "sl4-case2".into(),
        n: 4,
        r: assemble_r(&triple, &r0).expect("embedded r0 is admissible"),
        r0: Some(r0),
        torus: Some(torus(&triple, &["t"], &["z"])),
        triple: Some(triple),
        ctx: g.ctx.clone(),
        basis: named(basis),
        gl_extension: Some(("P16".into(), g.det())),
        printed_overrides: Vec::new(),
        b_tilde: Some(b_gl.drop_last_columns(1).expect("has a last column")),
        b_tilde_gl: Some(b_gl),
        omega: Some(omega),
        d_sign: Some(1),
        printed_d_sign: Some(1),
        eta: Some(singles(&[1, -1, 1, -3, 3, 3, 4, 0, 2, 0, 0, -1, 1, 2, -2])),
        zeta: Some(singles(&[3, 3, -3, 1, -1, 1, 0, 0, 0, 4, 2, 1, -1, -2, 2])),
        stable: vec![13, 14],
        word: None,
        triangular: None,
        errata: Vec::new(),
    }
}

fn sl4_case3() -> CaseSpec {
    let g = Generic::new(4);
    let (x, xh) = (|i, j| g.x(i, j), |i, j| g.xh(i, j));
    let basis = vec![
        x(1, 2),
        x(1, 3),
        x(4, 1),
        -&x(4, 2),
        -&xh(1, 2),
        -&xh(1, 3),
        xh(4, 1),
        xh(4, 2),
        -&g.d2((3, 2), (3, 3), (4, 2), (4, 3)),
        g.d2((1, 3), (1, 4), (4, 3), (4, 4)),
        -&g.d2((1, 2), (1, 3), (4, 2), (4, 3)),
        g.d2((1, 3), (1, 4), (2, 3), (2, 4)),
        g.d2((3, 1), (3, 2), (4, 1), (4, 2)),
        g.d2((1, 3), (1, 4), (4, 1), (4, 2)),
        g.dh2((1, 3), (1, 4), (4, 1), (4, 2)),
    ];
    let b_gl = matrix(&[
        &[0, 1, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0],
        &[-1, 0, -1, 0, 0, 0, 0, 0, 0, -1, 1, 0, 0, 1, 0, 0],
        &[0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0],
        &[-1, 0, -1, 0, 0, 0, 0, 0, -1, 0, 1, 0, 1, 0, 0, 0],
        &[0, 0, 0, 0, 0, -1, 0, -1, 0, 0, 1, 0, 0, 0, 0, 1],
        &[0, 0, 0, 0, 1, 0, 1, 0, 0, -1, 0, 1, 0, 0, -1, 0],
        &[0, 0, 0, 0, 0, -1, 0, -1, 0, 0, 0, 0, 0, 0, 1, 0],
        &[0, 0, 0, 0, 1, 0, 1, 0, -1, 0, 0, 0, 0, 0, 0, -1],
        &[0, 0, 0, 1, 0, 0, 0, 1, 0, 0, -1, 0, -1, 0, 0, 0],
        &[0, 1, 0, 0, 0, 1, 0, 0, 0, 0, -1, -1, 0, 0, 0, 0],
        &[1, -1, 0, -1, -1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0],
    ]);
    let omega = PrintedOmega::new(
        4,
        &[
            [0, -1, 0, -3, -2, -1, 0, 1, -2, -4, 0, -2, -2, -4, 0],
            [1, 0, -1, -2, -1, 0, -3, -2, -4, 0, -2, 2, -2, -2, -2],
            [0, 1, 0, -3, 0, -3, -2, 1, -2, 0, -2, 0, 0, 2, -2],
            [3, 2, 3, 0, 1, -2, 1, 4, 2, -2, 2, -2, 2, 2, 2],
            [2, 1, 0, -1, 0, 1, 0, 3, 0, -2, 0, 2, 2, 0, 4],
            [1, 0, 3, 2, -1, 0, 1, 2, 0, 0, 2, -2, 2, 2, 2],
            [0, 3, 2, -1, 0, -1, 0, 3, 0, 2, 2, 0, 0, 2, -2],
            [-1, 2, -1, -4, -3, -2, -3, 0, -2, -2, -2, 2, -2, -2, -2],
            [2, 4, 2, -2, 0, 0, 0, 2, 0, 0, 2, 2, 2, 2, 2],
            [4, 0, 0, 2, 2, 0, -2, 2, 0, 0, 2, 2, 2, 2, 2],
            [0, 2, 2, -2, 0, -2, -2, 2, -2, -2, 0, 0, 0, 0, 0],
            [2, -2, 0, 2, -2, 2, 0, -2, -2, -2, 0, 0, 0, 0, 0],
            [2, 2, 0, -2, -2, -2, 0, 2, -2, -2, 0, 0, 0, 0, 0],
            [4, 2, -2, -2, 0, -2, -2, 2, -2, -2, 0, 0, 0, 0, 0],
            [0, 2, 2, -2, -4, -2, 2, 2, -2, -2, 0, 0, 0, 0, 0],
        ],
        &[],
    );
    let triple = BdTriple::new(4, &[(1, 3)]);
    let r0 = r0_from_wedges(
        4,
        &[(1, 2, 1, 4), (2, 3, -1, 4), (3, 4, -1, 4), (2, 4, 1, 2), (1, 4, -1, 4)],
    );
    CaseSpec {
        name: "sl4-case3".into(),
        n: 4,
        r: assemble_r(&triple, &r0).expect("embedded r0 is admissible"),
        r0: Some(r0),
        torus: Some(torus(&triple, &["t", "w"], &["z", "u"])),
        triple: Some(triple),
        ctx: g.ctx.clone(),
        basis: named(basis),
        gl_extension: Some(("P16".into(), g.det())),
        printed_overrides: Vec::new(),
        b_tilde: Some(b_gl.drop_last_columns(1).expect("has a last column")),
        b_tilde_gl: Some(b_gl),
        omega: Some(omega),
        d_sign: Some(1),
        printed_d_sign: Some(-1),
        eta: Some(pairs(&[
            (1, 0),
            (1, 0),
            (-1, 0),
            (-1, 0),
            (0, -1),
            (0, 1),
            (-1, 0),
            (0, -1),
            (-1, -1),
            (0, 0),
            (0, 0),
            (1, 1),
            (-1, -1),
            (0, 0),
            (0, 0),
        ])),
        zeta: Some(pairs(&[
            (0, 1),
            (0, -1),
            (1, 0),
            (0, 1),
            (-1, 0),
            (-1, 0),
            (1, 0),
            (1, 0),
            (0, 0),
            (-1, -1),
            (0, 0),
            (-1, -1),
            (1, 1),
            (0, 0),
            (0, 0),
        ])),
        stable: vec![11, 12, 13, 14],
        word: None,
        triangular: None,
        errata: vec![Erratum {
            stage: "compatibility",
            text: "the printed B̃∘ times the printed 4Ω∘/4 equals (+I 0), not (-I 0) as stated".into(),
        }],
    }
}

fn sl4_case4() -> CaseSpec {
    let g = Generic::new(4);
    let (x, xh) = (|i, j| g.x(i, j), |i, j| g.xh(i, j));
    let p10 = g.d2((1, 2), (1, 3), (3, 2), (3, 3));
    let p11 = &(&x(4, 1) * &g.d2((1, 3), (1, 4), (3, 3), (3, 4))) - &(&x(4, 2) * &g.d2((1, 2), (1, 4), (3, 2), (3, 4)));
    let printed_p14 = g.d2((2, 1), (2, 3), (3, 1), (3, 3));
    let p15 = &(&xh(4, 1)
        * &(&(&x(4, 1) * &g.d2((1, 3), (1, 4), (2, 3), (2, 4))) - &(&x(4, 2) * &g.d2((1, 2), (1, 4), (2, 2), (2, 4)))))
        + &(&xh(4, 2)
            * &(&(&x(4, 1) * &g.d2((1, 3), (1, 4), (3, 3), (3, 4)))
                - &(&x(4, 2) * &g.d2((1, 2), (1, 4), (3, 2), (3, 4)))));
    let basis = vec![
        -&x(1, 2),
        x(4, 2),
        -&x(4, 1),
        -&xh(4, 1),
        xh(4, 2),
        -&xh(1, 2),
        &(&x(1, 2) * &x(4, 2)) - &(&x(1, 3) * &x(4, 1)),
        g.d2((1, 2), (1, 3), (4, 2), (4, 3)),
        g.d2((1, 1), (1, 2), (4, 1), (4, 2)),
        -&p10,
        -&p11,
        x(1, 4),
        xh(1, 4),
        g.d2((3, 1), (3, 2), (4, 1), (4, 2)),
        p15,
    ];
    let b_gl = matrix(&[
        &[0, 1, -1, 0, 0, 0, 1, -1, 0, 0, 0, 0, 0, 0, 0, 0],
        &[-1, 0, -1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
        &[1, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        &[0, 0, 0, 0, -1, 0, 0, 0, 0, 0, -1, 0, 0, 0, 1, 0],
        &[0, 0, 0, 1, 0, 1, 0, -1, 1, 0, 0, 0, 0, -1, 0, -1],
        &[0, 0, 0, 0, -1, 0, 0, 0, 0, 1, 0, 0, -1, 0, 0, 1],
        &[-1, 0, 1, 0, 0, 0, 0, 0, 0, 1, -1, 1, 0, 0, 0, 0],
        &[1, 0, 0, 0, 1, 0, 0, 0, -1, -1, 0, 0, 0, 0, 0, 0],
        &[0, -1, 0, 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0],
        &[0, 0, 0, 0, 0, -1, -1, 1, 0, 0, 1, 0, 0, 0, 0, 0],
        &[0, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0, 1, 0, -1, 0],
    ]);
    let omega = PrintedOmega::new(
        4,
        &[
            [0, -3, 0, -2, -1, -2, -3, -2, 0, -1, -3, -2, 0, -2, -4],
            [3, 0, 3, -1, 0, -1, 3, 0, 2, 1, 2, 1, 1, 0, 2],
            [0, -3, 0, -2, -1, -2, 1, -2, 0, -1, 1, 2, 0, -2, 0],
            [2, 1, 2, 0, 3, 0, 3, 2, 4, 1, 1, 0, -2, 2, 0],
            [1, 0, 1, -3, 0, -3, 1, 0, 2, -1, -2, -1, -1, 0, -2],
            [2, 1, 2, 0, 3, 0, 3, 2, 4, 1, 1, 0, 2, 2, 4],
            [3, -3, -1, -3, -1, -3, 0, -2, 2, 0, -1, -1, 1, -2, -2],
            [2, 0, 2, -2, 0, -2, 2, 0, 4, 2, 0, -2, 2, 0, 0],
            [0, -2, 0, -4, -2, -4, -2, -4, 0, -2, -2, 0, 0, -4, -4],
            [1, -1, 1, -1, 1, -1, 0, -2, 2, 0, -3, -3, -1, 2, -2],
            [3, -2, -1, -1, 2, -1, 1, 0, 2, 3, 0, 1, 1, 0, 2],
            [2, -1, -2, 0, 1, 0, 1, 2, 0, 3, -1, 0, 2, -2, 0],
            [0, -1, 0, 2, 1, -2, -1, -2, 0, 1, -1, -2, 0, 2, 0],
            [2, 0, 2, -2, 0, -2, 2, 0, 4, -2, 0, 2, 0, 0, 0],
            [4, -2, 0, 0, 2, -4, 2, 0, 4, 2, -2, 0, 0, 0, 0],
        ],
        &[(14, 13, -2)],
    );
    let triple = BdTriple::new(4, &[(1, 2)]);
    let r0 = r0_from_wedges(4, &[(1, 2, 1, 4), (2, 3, 1, 4), (3, 4, 1, 4), (1, 4, -1, 4)]);
    CaseSpec {
        name: "sl4-case4".into(),
        n: 4,
        r: assemble_r(&triple, &r0).expect("embedded r0 is admissible"),
        r0: Some(r0),
        torus: Some(torus(&triple, &["t", "w"], &["z", "u"])),
        triple: Some(triple),
        ctx: g.ctx.clone(),
        basis: named(basis),
        gl_extension: Some(("P16".into(), g.det())),
        printed_overrides: vec![(9, p10), (10, p11), (13, printed_p14)],
        b_tilde: Some(b_gl.drop_last_columns(1).expect("has a last column")),
        b_tilde_gl: Some(b_gl),
        omega: Some(omega),
        d_sign: Some(1),
        printed_d_sign: Some(1),
        eta: Some(pairs(&[
            (1, 0),
            (0, -3),
            (0, -3),
            (-1, 0),
            (0, -1),
            (0, -1),
            (1, -3),
            (1, -3),
            (1, -3),
            (0, 2),
            (0, -1),
            (1, 0),
            (0, 3),
            (-1, -1),
            (0, -2),
        ])),
        zeta: Some(pairs(&[
            (0, 1),
            (0, 1),
            (1, 0),
            (0, 3),
            (0, 3),
            (-1, 0),
            (0, 2),
            (-1, 3),
            (1, 1),
            (-1, 3),
            (0, -1),
            (0, -3),
            (-1, 0),
            (1, 1),
            (0, 2),
        ])),
        stable: vec![11, 12, 13, 14],
        word: None,
        triangular: None,
        errata: vec![
            Erratum {
                stage: "omega",
                text: "printed P14 = |x21 x23; x31 x33| is not log-canonical; P14 = |x31 x32; x41 x42| reproduces every printed entry".into(),
            },
            Erratum {
                stage: "omega",
                text: "printed 4Ω is not skew at (14,13): 0 there against 2 at (13,14); the bracket gives -2".into(),
            },
            Erratum {
                stage: "regularity",
                text: "P10 and P11 need the opposite sign; as printed, directions 4, 6, 8, 10 and 11 are not Laurent".into(),
            },
        ],
    }
}

fn sl2_triangular() -> CaseSpec {
    let ctx = VarContext::matrix(2, &[]);
    let x = |i, j| LaurentPoly::var(&ctx, &entry_name(i, j)).expect("matrix entry");
    let r = RTensor::wedge(2, (1, 1), (1, 2), int(1)).add(&RTensor::wedge(2, (2, 2), (1, 2), int(-1)));
    let y = vec![x(1, 1), x(2, 1), &x(1, 1) - &x(2, 2)];
    let inv = LaurentPoly::from_terms(&ctx, vec![(vec![0, 0, -1, 0], int(1))]);
    let z = vec![y[0].clone(), -&inv, &y[2] * &inv];
    let zero = LaurentPoly::zero(&ctx);
    let y_brackets = vec![&y[1] * &y[1], &y[1] * &y[2], zero.clone()];
    let z_brackets = vec![LaurentPoly::one(&ctx), zero.clone(), zero];
    CaseSpec {
        name: "sl2-triangular".into(),
        n: 2,
        triple: None,
        r0: None,
        r,
        ctx: ctx.clone(),
        basis: vec![
            ("y1".into(), y[0].clone()),
            ("y2".into(), y[1].clone()),
            ("y3".into(), y[2].clone()),
            ("z1".into(), z[0].clone()),
            ("z2".into(), z[1].clone()),
            ("z3".into(), z[2].clone()),
        ],
        gl_extension: None,
        printed_overrides: Vec::new(),
        b_tilde: None,
        b_tilde_gl: None,
        omega: None,
        d_sign: None,
        printed_d_sign: None,
        torus: None,
        eta: None,
        zeta: None,
        stable: Vec::new(),
        word: None,
        triangular: Some(TriangularData {
            y,
            z,
            y_brackets,
            z_brackets,
        }),
        errata: Vec::new(),
    }
}

fn trivial(n: usize, word: Vec<i64>) -> CaseSpec {
    let word = DoubleWord::new(n, word).expect("embedded word is valid");
    let cluster = initial_cluster(&word).expect("valid word");
    let triple = BdTriple::trivial(n);
    let r0 = standard_r0(n);
    let g = Generic::new(n);
    let torus = TorusParams {
        h: h_t_and_kt(&triple).0,
        left: (1..n).map(|p| format!("t{p}")).collect(),
        right: (1..n).map(|p| format!("z{p}")).collect(),
    };
    // Weights of each minor against the h_T basis, from its row and column sets.
    let project = |ind: &Vec<i64>| -> Vec<i64> {
        torus
            .h
            .basis
            .iter()
            .map(|h| {
                h.iter()
                    .zip(ind)
                    .map(|(v, &e)| v.to_integer() * e)
                    .sum::<num_bigint::BigInt>()
                    .try_into()
                    .expect("small weight")
            })
            .collect()
    };
    let eta = cluster.left_weights.iter().map(project).collect();
    let zeta = cluster.right_weights.iter().map(project).collect();
    CaseSpec {
        name: format!("trivial-sl{n}"),
        n,
        r: assemble_r(&triple, &r0).expect("t0/2 is admissible"),
        r0: Some(r0),
        triple: Some(triple),
        ctx: cluster.variables[0].1.ctx().clone(),
        basis: cluster.variables.clone(),
        gl_extension: Some(("det".into(), g.det())),
        printed_overrides: Vec::new(),
        b_tilde: None,
        b_tilde_gl: None,
        omega: None,
        d_sign: None,
        printed_d_sign: None,
        torus: Some(torus),
        eta: Some(eta),
        zeta: Some(zeta),
        stable: cluster.stable.clone(),
        word: Some(word),
        triangular: None,
        errata: Vec::new(),
    }
}
