use belyi_series::field::rat;
use belyi_series::newton::{build_newton_system, newton_solve, BelyiMapAnsatz, MapCurve, NewtonOptions, Pin, RamificationData, SystemPoint};
use belyi_series::{BigComplex, EllipticModel, Field, SeriesError};

const DIGITS: usize = 50;

fn c(n: i64) -> BigComplex {
    BigComplex::from_i64(n, DIGITS)
}

fn q(n: i64, d: i64) -> BigComplex {
    BigComplex::from_rational(&rat(n, d), DIGITS)
}

/// `φ = 32/((x − 5)y + 16)` on `y² = x³ + 5x + 10`.
fn exact() -> SystemPoint<BigComplex> {
    SystemPoint {
        ansatz: BelyiMapAnsatz {
            curve: MapCurve::Elliptic(EllipticModel { c4: q(-5, 27), c6: q(-5, 27) }),
            u: c(32),
            phi0: vec![c(1)],
            phi_inf: vec![c(16), c(0), c(-5), c(0), c(1)],
        },
        points: vec![(c(1), c(-4)), (c(6), c(16)), (c(1), c(4)), (c(6), c(-16))],
        extra: vec![],
    }
}

fn ram() -> RamificationData {
    RamificationData::new([vec![5], vec![4, 1], vec![4, 1]], 5).unwrap()
}

fn pins() -> Vec<Pin> {
    vec![Pin { name: "b3".into(), value: c(-5) }]
}

#[test]
fn exact_solution_has_zero_residual() {
    let p = exact();
    let sys = build_newton_system(&p.ansatz, &ram(), &pins()).unwrap();
    assert_eq!(sys.variables().len(), 15);
    assert_eq!(sys.variables()[..7], ["u", "c4", "c6", "b0", "b2", "b3", "b4"]);
    let v = sys.pack(&p);
    let r = sys.residual(&v).unwrap();
    assert_eq!(r.len(), 15);
    for x in &r {
        assert!(x.log2_abs() < -150.0, "{x}");
    }
    let out = newton_solve(&sys, &v, 30, NewtonOptions::default()).unwrap();
    assert!(out.log.is_empty());
}

fn perturbed(scale: f64) -> Vec<BigComplex> {
    let p = exact();
    let sys = build_newton_system(&p.ansatz, &ram(), &pins()).unwrap();
    sys.pack(&p)
        .iter()
        .enumerate()
        .map(|(i, x)| {
            // deterministic, direction varies per coordinate
            let s = if i % 2 == 0 { 1.0 } else { -0.7 };
            x.add(&BigComplex::from_f64(scale * s, scale * 0.3, DIGITS))
        })
        .collect()
}

#[test]
fn reconverges_from_a_small_perturbation() {
    let p = exact();
    let sys = build_newton_system(&p.ansatz, &ram(), &pins()).unwrap();
    let out = newton_solve(&sys, &perturbed(1e-3), 30, NewtonOptions::default()).unwrap();
    for r in &out.log {
        eprintln!("{r:?}");
    }
    assert!(out.log.len() <= 12);
    let exact = sys.pack(&p);
    for (a, b) in out.solution.iter().zip(&exact) {
        assert!(a.sub(b).log2_abs() < -90.0);
    }
}

#[test]
fn large_perturbation_diverges() {
    let p = exact();
    let sys = build_newton_system(&p.ansatz, &ram(), &pins()).unwrap();
    let r = newton_solve(&sys, &perturbed(1e2), 30, NewtonOptions::default());
    eprintln!("{r:?}");
    assert!(matches!(r, Err(SeriesError::Diverged { .. })));
}

#[test]
fn digits_roughly_double() {
    let p = exact();
    let sys = build_newton_system(&p.ansatz, &ram(), &pins()).unwrap();
    let out = newton_solve(&sys, &perturbed(1e-3), 30, NewtonOptions::default()).unwrap();
    let r: Vec<f64> = out.log.iter().map(|l| l.residual_log10).collect();
    for w in r.windows(2) {
        assert!(w[1] <= 1.8 * w[0] + 1.0, "{r:?}");
    }
}

#[test]
fn degree_seven_genus_one_system_is_square() {
    // (6·1, 6·1, 3·2²) with the 6-cycle over 0 at infinity: φ0 ∈ L(2∞), φ∞ ∈ L(8∞)
    let ram = RamificationData::new([vec![6, 1], vec![6, 1], vec![3, 2, 2]], 6).unwrap();
    let ansatz = BelyiMapAnsatz {
        curve: MapCurve::Elliptic(EllipticModel { c4: c(1), c6: c(2) }),
        u: c(1),
        phi0: vec![c(0), c(1)],
        phi_inf: vec![c(0); 7].into_iter().chain([c(1)]).collect(),
    };
    let pins = vec![Pin { name: "b7".into(), value: c(1) }];
    let sys = build_newton_system(&ansatz, &ram, &pins).unwrap();
    assert_eq!(sys.variables().len(), 25);
    assert_eq!(sys.equation_count(), 25);
    assert_eq!(sys.extra_points(), 1);
    assert_eq!(
        sys.variables()[..11],
        ["u", "c4", "c6", "a0", "b0", "b2", "b3", "b4", "b5", "b6", "b7"]
    );
    assert_eq!(sys.variables()[23..], ["Q0.x", "Q0.y"]);
    // without the normalization the system is underdetermined
    assert!(matches!(
        build_newton_system(&ansatz, &ram, &[]),
        Err(SeriesError::NonSquare { equations: 24, variables: 25 })
    ));
    // totally ramified over 0: no extra zeros
    assert_eq!(build_newton_system(&exact().ansatz, &self::ram(), &self::pins()).unwrap().extra_points(), 0);
}

#[test]
fn genus_zero_cubic() {
    // φ = −4/((x + 1)²(x − 2)), φ − 1 = −(x − 1)²(x + 2)/((x + 1)²(x − 2))
    let ram = RamificationData::new([vec![3], vec![2, 1], vec![2, 1]], 3).unwrap();
    let p = SystemPoint {
        ansatz: BelyiMapAnsatz { curve: MapCurve::Line, u: c(-4), phi0: vec![c(1)], phi_inf: vec![c(-2), c(-3), c(0), c(1)] },
        points: vec![(c(1), c(0)), (c(-2), c(0)), (c(-1), c(0)), (c(2), c(0))],
        extra: vec![],
    };
    let pins = vec![Pin { name: "b2".into(), value: c(0) }, Pin { name: "b1".into(), value: c(-3) }];
    let sys = build_newton_system(&p.ansatz, &ram, &pins).unwrap();
    assert_eq!(sys.variables().len(), 8);
    let exact = sys.pack(&p);
    assert!(sys.residual(&exact).unwrap().iter().all(|r| r.is_zero()));
    let start: Vec<BigComplex> = exact.iter().map(|x| x.add(&BigComplex::from_f64(1e-3, -2e-3, DIGITS))).collect();
    let out = newton_solve(&sys, &start, 30, NewtonOptions::default()).unwrap();
    for (a, b) in out.solution.iter().zip(&exact) {
        assert!(a.sub(b).log2_abs() < -90.0);
    }
}

#[test]
fn degree_one_map_gives_an_empty_system() {
    let ram = RamificationData::new([vec![1], vec![1], vec![1]], 1).unwrap();
    let a = BelyiMapAnsatz { curve: MapCurve::Line, u: c(1), phi0: vec![c(1)], phi_inf: vec![c(0), c(1)] };
    let sys = build_newton_system(&a, &ram, &[]).unwrap();
    assert!(sys.is_empty());
    assert_eq!(sys.equation_count(), 0);
    assert!(newton_solve(&sys, &[], 30, NewtonOptions::default()).unwrap().log.is_empty());
}

#[test]
fn mismatched_ansatz_is_rejected() {
    let mut p = exact();
    p.ansatz.phi_inf.push(c(0));
    assert!(build_newton_system(&p.ansatz, &ram(), &pins()).is_err());
    let wrong_genus = RamificationData::new([vec![3], vec![3], vec![1, 1, 1]], 3).unwrap();
    assert!(build_newton_system(&exact().ansatz, &wrong_genus, &pins()).is_err());
}

#[test]
fn weighted_rescaling_of_the_numerical_degree_five_model() {
    use belyi_series::rescale::{coefficient, rescale_weighted, CoefficientRef};
    // numerical coefficients of y (weight 3) and xy (weight 5) before normalization
    let z = |re: f64, im: f64| BigComplex::from_f64(re, im, DIGITS);
    let a = BelyiMapAnsatz {
        curve: MapCurve::Elliptic(EllipticModel { c4: z(0.01030, 0.00748), c6: z(-0.00270, 0.00196) }),
        u: c(1),
        phi0: vec![c(1)],
        phi_inf: vec![c(1), c(0), z(2.21275, 0.71897), c(0), z(0.0, 1.77422)],
    };
    let (w3, w5) = (CoefficientRef::phi_inf(3), CoefficientRef::phi_inf(5));
    let b3 = coefficient(&a, w3).unwrap();
    let b5 = coefficient(&a, w5).unwrap();
    let lambda = b5.div(&b3.square()).unwrap();
    assert!((lambda.re_f64() - 0.19265).abs() < 1e-5 && (lambda.im_f64() - 0.26516).abs() < 1e-5);
    let r = rescale_weighted(&a, &lambda).unwrap();
    let (b3r, b5r) = (coefficient(&r, w3).unwrap(), coefficient(&r, w5).unwrap());
    // (b3')²/b5' = 1 by construction
    assert!(b3r.square().div(b5r).unwrap().sub(&c(1)).log2_abs() < -150.0);
    assert!((b3r.re_f64() + 256.0 / 3125.0).abs() < 1e-6 && b3r.im_f64().abs() < 1e-5);
    assert!((b5r.re_f64() - 65536.0 / 9765625.0).abs() < 1e-6 && b5r.im_f64().abs() < 1e-5);
}
