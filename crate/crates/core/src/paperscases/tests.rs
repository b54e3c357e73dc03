use super::*;
use crate::exactnum::rat;
use crate::laurent::{poly_determinant, VarContext};
use crate::sklyanin::BracketSpec;

fn var(ctx: &VarContext, i: usize, j: usize) -> LaurentPoly {
    LaurentPoly::var(ctx, &entry_name(i, j)).unwrap()
}

#[test]
fn adjugate_of_2x2() {
    let adj = adjugate_polynomials(2);
    let ctx = adj[0][0].ctx().clone();
    assert_eq!(adj[0][0], var(&ctx, 2, 2));
    assert_eq!(adj[0][1], -&var(&ctx, 1, 2));
    assert_eq!(adj[1][0], -&var(&ctx, 2, 1));
    assert_eq!(adj[1][1], var(&ctx, 1, 1));
}

#[test]
fn adjugate_times_matrix_is_det() {
    for n in [3, 4] {
        let adj = adjugate_polynomials(n);
        let ctx = adj[0][0].ctx().clone();
        let x: Vec<Vec<LaurentPoly>> = (1..=n).map(|i| (1..=n).map(|j| var(&ctx, i, j)).collect()).collect();
        let det = poly_determinant(&ctx, &x);
        for i in 0..n {
            for j in 0..n {
                let entry = (0..n).fold(LaurentPoly::zero(&ctx), |acc, k| &acc + &(&x[i][k] * &adj[k][j]));
                let expected = if i == j { det.clone() } else { LaurentPoly::zero(&ctx) };
                assert_eq!(entry, expected, "n={n} entry ({i},{j})");
            }
        }
    }
}

#[test]
fn adjugate_corner_is_complementary_minor() {
    let adj = adjugate_polynomials(4);
    let ctx = adj[0][0].ctx().clone();
    let sub: Vec<Vec<LaurentPoly>> = (2..=4).map(|i| (2..=4).map(|j| var(&ctx, i, j)).collect()).collect();
    assert_eq!(adj[0][0], poly_determinant(&ctx, &sub));
}

#[test]
fn catalog_shapes() {
    for name in CASE_NAMES {
        let spec = load_case(name).unwrap();
        if let (Some(b), Some(b_gl)) = (&spec.b_tilde, &spec.b_tilde_gl) {
            assert_eq!(spec.basis.len(), b.n() + b.m(), "{name}");
            assert_eq!(b_gl.m(), b.m() + 1, "{name}");
            assert_eq!(b_gl.drop_last_columns(1).unwrap(), *b, "{name}");
            let omega = spec.omega.as_ref().unwrap();
            assert_eq!(omega.printed.rows(), spec.basis.len(), "{name}");
            assert!(omega.omega().is_skew_symmetric(), "{name}");
            assert_eq!(spec.eta.as_ref().unwrap().len(), spec.basis.len(), "{name}");
            assert_eq!(spec.zeta.as_ref().unwrap().len(), spec.basis.len(), "{name}");
        }
        if spec.triple.is_some() {
            assert_eq!(spec.gl_basis().len(), spec.n * spec.n, "{name}");
        }
    }
    let sl3 = load_case("sl3-cg").unwrap();
    assert_eq!(sl3.basis.len(), 8);
    assert_eq!(sl3.basis[6].1.to_string(), "x13*x31 - x21*x23");
    let case3 = load_case("sl4-case3").unwrap();
    let b = case3.b_tilde_gl.unwrap();
    assert_eq!((b.n(), b.n() + b.m()), (11, 16));
    let case2 = load_case("sl4-case2").unwrap();
    let stable: Vec<&str> = case2.stable.iter().map(|&k| case2.basis[k].0.as_str()).collect();
    assert_eq!(stable, ["P14", "P15"]);
    assert_eq!(case2.gl_extension.unwrap().0, "P16");
}

#[test]
fn printed_matrices_skewness_checksum() {
    for name in ["sl3-cg", "sl4-case2", "sl4-case3"] {
        assert!(load_case(name).unwrap().omega.unwrap().printed.is_skew_symmetric(), "{name}");
    }
    let case4 = load_case("sl4-case4").unwrap().omega.unwrap().printed;
    assert!(!case4.is_skew_symmetric());
    assert_eq!((case4[(13, 12)].clone(), case4[(12, 13)].clone()), (int(0), int(2)));
}

#[test]
fn embedded_matrices_round_trip_through_json() {
    for name in CASE_NAMES {
        let spec = load_case(name).unwrap();
        let mut matrices: Vec<QMatrix> = Vec::new();
        matrices.extend(spec.b_tilde.iter().map(|b| b.to_qmatrix()));
        matrices.extend(spec.b_tilde_gl.iter().map(|b| b.to_qmatrix()));
        if let Some(o) = &spec.omega {
            matrices.extend([o.printed.clone(), o.omega()]);
        }
        for m in matrices {
            let text = serde_json::to_string(&m).unwrap();
            assert_eq!(serde_json::from_str::<QMatrix>(&text).unwrap(), m, "{name}");
        }
    }
}

#[test]
fn unknown_case_is_an_error() {
    assert_eq!(load_case("sl5").unwrap_err(), CaseError::UnknownCase("sl5".into()));
    assert!(verify_case("nope", &VerifyOptions::default()).is_err());
}

#[test]
fn sl3_report_has_every_stage_once() {
    let report = verify_case("sl3-cg", &VerifyOptions::default()).unwrap();
    assert!(report.passed(), "{}", report.to_text(false));
    let names: Vec<&str> = report.checks.iter().map(|c| c.name).collect();
    assert_eq!(names, STAGES);
    assert!(report.check("compatibility").unwrap().witness.contains("(-I6 0)"));
    assert_eq!(report.check("omega").unwrap().status, Status::Flagged);
    let json = report.to_json();
    assert_eq!(json["case"], "sl3-cg");
    assert_eq!(json["checks"].as_array().unwrap().len(), 13);
    assert_eq!(json["checks"][0]["status"], "pass");
}

#[test]
fn report_json_is_deterministic() {
    let a = verify_case("trivial-sl3", &VerifyOptions::default()).unwrap().to_json();
    let b = verify_case("trivial-sl3", &VerifyOptions::default()).unwrap().to_json();
    assert_eq!(a, b);
}

#[test]
fn triangular_case_expects_non_log_canonical() {
    let report = verify_case("sl2-triangular", &VerifyOptions::default()).unwrap();
    assert!(report.passed(), "{}", report.to_text(false));
    assert!(report.check("omega").unwrap().witness.starts_with("expected failure"));
    assert_eq!(report.check("triangular").unwrap().status, Status::Pass);
}

#[test]
fn trivial_cases_pass() {
    for name in ["trivial-sl2", "trivial-sl3"] {
        let report = verify_case(name, &VerifyOptions::default()).unwrap();
        assert!(report.passed(), "{}", report.to_text(false));
    }
}

#[test]
fn skip_slow_only_touches_sl4() {
    let opts = VerifyOptions {
        skip_slow: true,
        ..VerifyOptions::default()
    };
    let sl3 = verify_case("sl3-cg", &opts).unwrap();
    assert_ne!(sl3.check("omega").unwrap().status, Status::Skipped);
    let sl4 = verify_case("sl4-case3", &opts).unwrap();
    assert_eq!(sl4.check("omega").unwrap().status, Status::Skipped);
    assert_eq!(sl4.check("regularity").unwrap().status, Status::Skipped);
    assert!(sl4.passed(), "{}", sl4.to_text(false));
}

#[test]
fn printed_extension_sign_breaks_regularity() {
    let spec = load_case("sl3-cg").unwrap();
    let printed = regularity_by_direction(&spec, spec.printed_gl_basis()).unwrap();
    let bad: Vec<usize> = (0..printed.len()).filter(|&k| !printed[k]).collect();
    assert_eq!(bad, [4, 5]);
    assert!(regularity_by_direction(&spec, spec.gl_basis()).unwrap().iter().all(|&r| r));
}

#[test]
fn printed_sl3_omega_is_incompatible() {
    let spec = load_case("sl3-cg").unwrap();
    let printed = spec.omega.as_ref().unwrap().printed_omega();
    assert!(check_compatibility(spec.b_tilde.as_ref().unwrap(), &printed).is_err());
    assert_eq!(differing_entries(&spec.omega.unwrap().omega(), &printed), ["(2,7)", "(3,7)"]);
}

#[test]
fn twist_family_on_sl3() {
    let report = verify_twist_family("sl3-cg", 3, 1).unwrap();
    assert!(report.passed());
    assert_eq!(report.grid.len(), 9);
    assert!(verify_twist_family("sl2-triangular", 1, 1).is_err());
}

#[test]
fn zero_twist_leaves_omega_unchanged() {
    let spec = load_case("sl3-cg").unwrap();
    let h = spec.torus.as_ref().unwrap().h.clone();
    let zero = QMatrix::zeros(1, 1);
    let twist = crate::sklyanin::Twist::new(&h, zero.clone(), zero.clone(), zero).unwrap();
    let base = extract_coefficient_matrix(&BracketSpec::new(spec.r.clone()), &spec.basis_polys()).unwrap();
    let sample = twist_sample(&spec, &base, &spec.weight_rows().unwrap(), twist);
    assert!(sample.log_canonical && sample.formula_agrees);
    assert_eq!(sample.diagonal_d, Some(true));
}

#[test]
fn identity_v12_is_not_poisson_lie() {
    let report = verify_twist_family("sl3-cg", 0, 3).unwrap();
    let with_identity = report.grid.iter().filter(|g| !g.v12_zero);
    for g in with_identity {
        assert!(!g.poisson_lie);
    }
}

#[test]
fn vanishing_point_search() {
    let ctx = VarContext::matrix(2, &[]);
    let p = &var(&ctx, 1, 1) - &LaurentPoly::constant(&ctx, rat(1, 2));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let point = find_vanishing_point(&p, 2, &mut rng, 32).unwrap();
    assert_eq!(point[(0, 0)], rat(1, 2));
    assert!(!point.determinant().unwrap().is_zero());
    let det = &(&var(&ctx, 1, 1) * &var(&ctx, 2, 2)) - &(&var(&ctx, 1, 2) * &var(&ctx, 2, 1));
    assert!(find_vanishing_point(&det, 2, &mut rng, 32).is_none());
    assert!(find_vanishing_point(&LaurentPoly::one(&ctx), 2, &mut rng, 4).is_none());
}

#[test]
fn named_functions_resolve() {
    let spec = load_case("sl2-triangular").unwrap();
    assert_eq!(named_function(&spec, "y2").unwrap().to_string(), "x21");
    assert_eq!(named_function(&spec, "x12").unwrap().to_string(), "x12");
    assert!(named_function(&spec, "P3").is_none());
}

#[test]
fn explicit_anti_diagonal_twist_is_poisson_lie() {
    let s = QMatrix::zeros(1, 1);
    let (sample, point) = verify_twist("sl3-cg", s.clone(), s.clone(), s).unwrap();
    assert!(sample.passed() && point.poisson_lie && point.consistent());
    let bad = verify_twist("sl3-cg", QMatrix::identity(1), QMatrix::zeros(1, 1), QMatrix::zeros(1, 1));
    assert!(matches!(bad, Err(CaseError::BadTwist(_))));
}
