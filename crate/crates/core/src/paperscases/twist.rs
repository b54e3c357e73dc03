//! Random Cartan twists of a case bracket.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::cluster::check_compatibility;
use crate::exactnum::{int, rat, QMatrix, Rational};
use crate::rootdata::CartanSubspace;
use crate::sklyanin::{
    extract_coefficient_matrix, is_poisson_lie, poisson_lie_at_identity, twisted_omega, BracketSpec, Twist,
};

use super::{format_matrix, load_case, CaseError};

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

fn random_matrix(rng: &mut ChaCha8Rng, k: usize) -> QMatrix {
    let entries = (0..k * k).map(|_| random_rational(rng)).collect();
    QMatrix::new(k, k, entries).expect("k*k entries")
}

fn random_skew(rng: &mut ChaCha8Rng, k: usize) -> QMatrix {
    let mut m = QMatrix::zeros(k, k);
    for i in 0..k {
        for j in i + 1..k {
            let v = random_rational(rng);
            m[(j, i)] = -v.clone();
            m[(i, j)] = v;
        }
    }
    m
}

/// Random skew `V1`, `V2` and arbitrary `V12` over `h`.
pub fn random_twist(h: &CartanSubspace, rng: &mut ChaCha8Rng) -> Twist {
    let k = h.dim();
    let v1 = random_skew(rng, k);
    let v2 = random_skew(rng, k);
    let v12 = random_matrix(rng, k);
    Twist::new(h, v1, v2, v12).expect("shapes and skewness hold by construction")
}

#[derive(Clone, Debug)]
pub struct TwistSample {
    pub twist: Twist,
    pub log_canonical: bool,
    /// Extracted matrix equals `Ω + U V Uᵀ` computed from the weights.
    pub formula_agrees: bool,
    /// `B̃Ω_V = (D 0)` with `D` diagonal; `None` without an exchange matrix.
    pub diagonal_d: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridPoint {
    pub v12_zero: bool,
    pub v2_is_minus_v1: bool,
    pub poisson_lie: bool,
    pub at_identity: bool,
}

impl GridPoint {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "V12_zero": self.v12_zero,
            "V2_is_minus_V1": self.v2_is_minus_v1,
            "poisson_lie": self.poisson_lie,
            "poisson_lie_at_identity": self.at_identity,
        })
    }

    pub fn consistent(&self) -> bool {
        self.poisson_lie == (self.v12_zero && self.v2_is_minus_v1)
    }
}

#[derive(Clone, Debug)]
pub struct TwistFamilyReport {
    pub case: String,
    pub samples: Vec<TwistSample>,
    pub grid: Vec<GridPoint>,
}

impl TwistFamilyReport {
    pub fn passed(&self) -> bool {
        self.samples
            .iter()
            .all(TwistSample::passed)
            && self.grid.iter().all(GridPoint::consistent)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "case": self.case,
            "samples": self.samples.iter().map(TwistSample::to_json).collect::<Vec<_>>(),
            "grid": self.grid.iter().map(GridPoint::to_json).collect::<Vec<_>>(),
            "passed": self.passed(),
        })
    }
}

/// Twisted bracket of `spec` on its basis, compared with the closed form.
pub fn twist_sample(
    spec: &super::CaseSpec,
    base_omega: &QMatrix,
    weights: &[Vec<Rational>],
    twist: Twist,
) -> TwistSample {
    let bspec = BracketSpec::new(spec.r.clone()).with_twist(twist.clone());
    let extracted = extract_coefficient_matrix(&bspec, &spec.basis_polys());
    let formula = twisted_omega(base_omega, weights, &twist);
    let (log_canonical, formula_agrees, diagonal_d) = match &extracted {
        Ok(m) => {
            let d = spec.b_tilde.as_ref().map(|b| check_compatibility(b, m).is_ok());
            (true, *m == formula, d)
        }
        Err(_) => (false, false, spec.b_tilde.as_ref().map(|_| false)),
    };
    TwistSample {
        twist,
        log_canonical,
        formula_agrees,
        diagonal_d,
    }
}

/// One user-supplied twist `(V1, V2, V12)` of a case.
pub fn verify_twist(
    name: &str,
    v1: QMatrix,
    v2: QMatrix,
    v12: QMatrix,
) -> Result<(TwistSample, GridPoint), CaseError> {
    let spec = load_case(name)?;
    let (Some(torus), Some(weights)) = (&spec.torus, spec.weight_rows()) else {
        return Err(CaseError::NoTwist(name.to_string()));
    };
    let twist = Twist::new(&torus.h, v1, v2, v12).map_err(|e| CaseError::BadTwist(e.to_string()))?;
    let base = extract_coefficient_matrix(&BracketSpec::new(spec.r.clone()), &spec.basis_polys())
        .expect("untwisted case bracket is log-canonical");
    let bspec = BracketSpec::new(spec.r.clone()).with_twist(twist.clone());
    let point = GridPoint {
        v12_zero: twist.v12.is_zero(),
        v2_is_minus_v1: twist.v1.add(&twist.v2).expect("same size").is_zero(),
        poisson_lie: is_poisson_lie(&bspec),
        at_identity: poisson_lie_at_identity(&bspec),
    };
    Ok((twist_sample(&spec, &base, &weights, twist), point))
}

impl TwistSample {
    pub fn passed(&self) -> bool {
        self.log_canonical && self.formula_agrees && self.diagonal_d != Some(false)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "V1": format_matrix(&self.twist.v1),
            "V2": format_matrix(&self.twist.v2),
            "V12": format_matrix(&self.twist.v12),
            "log_canonical": self.log_canonical,
            "formula_agrees": self.formula_agrees,
            "diagonal_d": self.diagonal_d,
        })
    }
}

/// Draws `samples` random twists, then runs the Poisson–Lie test on a 3×3
/// grid crossing `V12 ∈ {0, I, random}` with `(V1, V2) ∈ {(S, −S), (S, S'), (0, 0)}`.
pub fn verify_twist_family(name: &str, samples: usize, seed: u64) -> Result<TwistFamilyReport, CaseError> {
    let spec = load_case(name)?;
    let (Some(torus), Some(weights)) = (&spec.torus, spec.weight_rows()) else {
        return Err(CaseError::NoTwist(name.to_string()));
    };
    let h = &torus.h;
    let k = h.dim();
    if k == 0 {
        return Err(CaseError::NoTwist(name.to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = extract_coefficient_matrix(&BracketSpec::new(spec.r.clone()), &spec.basis_polys())
        .expect("untwisted case bracket is log-canonical");
    let samples = (0..samples)
        .map(|_| twist_sample(&spec, &base, &weights, random_twist(h, &mut rng)))
        .collect();

    let s = random_skew(&mut rng, k);
    let s2 = random_skew(&mut rng, k);
    let zero = QMatrix::zeros(k, k);
    let v12s = [zero.clone(), QMatrix::identity(k), random_matrix(&mut rng, k)];
    let diag_pairs = [(s.clone(), s.scale(&int(-1))), (s, s2), (zero.clone(), zero)];
    let mut grid = Vec::with_capacity(9);
    for v12 in &v12s {
        for (v1, v2) in &diag_pairs {
            let twist = Twist::new(h, v1.clone(), v2.clone(), v12.clone()).expect("valid twist");
            let bspec = BracketSpec::new(spec.r.clone()).with_twist(twist);
            grid.push(GridPoint {
                v12_zero: v12.is_zero(),
                v2_is_minus_v1: v1.add(v2).expect("same size").is_zero(),
                poisson_lie: is_poisson_lie(&bspec),
                at_identity: poisson_lie_at_identity(&bspec),
            });
        }
    }
    Ok(TwistFamilyReport {
        case: spec.name.clone(),
        samples,
        grid,
    })
}
