use belyi_series::field::rat;
use belyi_series::hyperelliptic::{default_log2_tol, detect_hyperelliptic};
use belyi_series::model::{expansion_rank, InfinityPoint};
use belyi_series::{rr_basis, rr_pole_bound, BigComplex, CurveFunction, Field, HyperellipticModel, Parity, Poly, TruncatedSeries};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_model(rng: &mut ChaCha8Rng, g: usize, parity: Parity) -> HyperellipticModel<BigRational> {
    loop {
        let mut v: Vec<i64> = (0..=2 * g + 2).map(|_| rng.gen_range(-5..=5)).collect();
        let u: Vec<i64> = (0..=g).map(|_| rng.gen_range(-2..=2)).collect();
        match parity {
            // deg u ≤ g, so f0 = 4 and the tails are rational
            Parity::Even => v[2 * g + 2] = 1,
            Parity::Odd => {
                v[2 * g + 2] = 0;
                v[2 * g + 1] = rng.gen_range(1..=3);
            }
        }
        if let Ok(m) = HyperellipticModel::new(g, Poly::from_i64(&u), Poly::from_i64(&v)) {
            assert_eq!(m.parity(), parity);
            return m;
        }
    }
}

#[test]
fn riemann_roch_dimensions_on_random_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for g in [2, 3] {
        for k in 0..5 {
            let parity = if k % 2 == 0 { Parity::Even } else { Parity::Odd };
            let m = random_model(&mut rng, g, parity);
            for pole in 2 * g - 1..=2 * g + 6 {
                let b = rr_basis(&m, pole).unwrap();
                assert_eq!(b.len(), pole - g + 1, "g={g} m={pole} {:?}", m.v());
                assert!(b.iter().all(|f| f.pole_order <= pole));
                assert_eq!(expansion_rank(&m, &b, pole, 6).unwrap(), Some(b.len()), "g={g} m={pole}");
            }
        }
    }
}

#[test]
fn tails_are_holomorphic_at_the_other_point() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for g in [2, 3] {
        let m = random_model(&mut rng, g, Parity::Even);
        for j in 0..6 {
            let tail = m.laurent_tail(j).unwrap();
            assert_eq!(tail.degree(), Some(j + g + 1));
            let f = CurveFunction::new(tail.neg(), Poly::monomial(rat(1, 1), j));
            let (x, y) = m.expansion_at_infinity(InfinityPoint::Other, j + 2 * g + 6).unwrap();
            assert!(f.eval_series(&x, &y).valuation().is_none_or(|v| v > 0));
        }
    }
}

#[test]
fn tails_for_the_genus_two_example() {
    let m = HyperellipticModel::new(2, Poly::zero(), Poly::from_i64(&[3, 0, 6, 0, 4, 0, 1])).unwrap();
    assert_eq!(m.laurent_tail(0).unwrap(), Poly::from_i64(&[0, 2, 0, 1]));
    assert_eq!(m.laurent_tail(1).unwrap(), Poly::from_i64(&[1, 0, 2, 0, 1]));
    // y at ∞′ in t = 1/x: t⁻³ + 2t⁻¹ + t − t³/2 + …
    let (_, y) = m.expansion_at_infinity(InfinityPoint::Other, 8).unwrap();
    let want = [(-3, rat(1, 1)), (-2, rat(0, 1)), (-1, rat(2, 1)), (0, rat(0, 1)), (1, rat(1, 1)), (3, rat(-1, 2))];
    for (e, c) in want {
        assert_eq!(y.coeff(e).unwrap(), c, "t^{e}");
    }
    // matching the sign against an expansion at the marked point
    let (xm, ym) = m.expansion_at_infinity(InfinityPoint::Marked, 8).unwrap();
    assert_eq!(m.laurent_tail_matching(0, &xm, &ym).unwrap(), Poly::from_i64(&[0, 2, 0, 1]));
    let (xo, yo) = m.expansion_at_infinity(InfinityPoint::Other, 8).unwrap();
    assert_eq!(m.laurent_tail_matching(0, &xo, &yo).unwrap(), Poly::from_i64(&[0, -2, 0, -1]));
    let odd = HyperellipticModel::new(2, Poly::zero(), Poly::from_i64(&[1, 0, 0, 0, 0, 1])).unwrap();
    assert!(odd.laurent_tail(0).is_err());
    assert_eq!(rr_pole_bound(7, 6, 1).unwrap().phi_inf_space, 8);
}

#[test]
fn detection_on_a_rescaled_model() {
    // x = 2^(1/3)/t, y = 2·y(t) for y² = x⁶ + 4x⁴ + 6x² + 3: the same curve
    // as y² = x⁶ + 4·2^(2/3)x⁴ + 6·2^(4/3)x² + 12
    let digits = 60;
    let m = HyperellipticModel::new(2, Poly::zero(), Poly::from_i64(&[3, 0, 6, 0, 4, 0, 1])).unwrap();
    let (_, y) = m.expansion_at_infinity(InfinityPoint::Marked, 40).unwrap();
    let alpha = BigComplex::from_i64(2, digits).nth_root(3).unwrap();
    let y = y.map(|c| BigComplex::from_rational(c, digits).mul_i64(2), BigComplex::zero(digits));
    let x = TruncatedSeries::new(-1, vec![alpha.clone()], y.prec() + 10, BigComplex::zero(digits));
    let found = detect_hyperelliptic(&x, &y, 2, default_log2_tol(digits)).unwrap().expect("relation");
    let v = found.v().coeffs();
    let published = [11.99999, 0.0, 15.11905, 0.0, 6.34960, 0.0, 1.00000];
    for (c, p) in v.iter().zip(published) {
        assert!((c.re_f64() - p).abs() < 2e-5, "{c} vs {p}");
        assert!(c.im_f64().abs() < 1e-30);
    }
    let exact = [BigComplex::from_i64(12, digits), alpha.pow(4).mul_i64(6), alpha.pow(2).mul_i64(4)];
    for (c, e) in [&v[0], &v[2], &v[4]].into_iter().zip(&exact) {
        assert!(c.sub(e).log2_abs() < -60.0);
    }
}
