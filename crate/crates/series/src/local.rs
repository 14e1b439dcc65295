//! Expansions of `(x, y)` at finite points of a hyperelliptic model.

use crate::error::{Result, SeriesError};
use crate::field::Field;
use crate::model::HyperellipticModel;
use crate::poly::Poly;
use crate::series::TruncatedSeries;

/// `(x(t), y(t))` at a point, `prec` terms past the constant.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalExpansion<S: Field> {
    pub x: TruncatedSeries<S>,
    pub y: TruncatedSeries<S>,
}

/// `w = 2y + u(x)`, with `w² = f(x)`.
fn w_at<S: Field>(model: &HyperellipticModel<S>, x0: &S, y0: &S) -> S {
    y0.mul_i64(2).add(&model.u().eval(x0))
}

/// Whether `(x0, y0)` is a Weierstrass point, to half the working precision.
pub fn is_two_torsion<S: Field>(model: &HyperellipticModel<S>, x0: &S, y0: &S) -> bool {
    let w = w_at(model, x0, y0);
    let scale = x0.log2_abs().max(y0.log2_abs()).max(0.0);
    w.is_zero() || w.log2_abs() < scale + x0.log2_tol(0.5)
}

/// Expansion in `t = x − x0` at a point that is not a Weierstrass point.
/// The point is checked to lie on the curve.
pub fn expand_at_point<S: Field>(model: &HyperellipticModel<S>, x0: &S, y0: &S, prec: usize) -> Result<LocalExpansion<S>> {
    let r = model.residual(x0, y0);
    let scale = model.v().eval(x0).log2_abs().max(y0.square().log2_abs()).max(0.0);
    if !r.is_zero() && r.log2_abs() > scale + x0.log2_tol(0.5) {
        return Err(SeriesError::OffCurve(r.log2_abs()));
    }
    if is_two_torsion(model, x0, y0) {
        return Err(SeriesError::TwoTorsion);
    }
    expand_at_point_unchecked(model, x0, y0, prec)
}

/// As [`expand_at_point`] without the curve check: `y(0) = y0` even when
/// the point is off the curve, which keeps Newton residuals smooth.
/// `y = (−u(x) + w0·√(1 + (f(x) − f(x0))/w0²))/2` with `w0 = 2y0 + u(x0)`.
pub fn expand_at_point_unchecked<S: Field>(model: &HyperellipticModel<S>, x0: &S, y0: &S, prec: usize) -> Result<LocalExpansion<S>> {
    let zero = x0.zero_like();
    let one = x0.one_like();
    let p = prec as i64 + 1;
    let x = TruncatedSeries::new(0, vec![x0.clone(), one.clone()], p, zero.clone());
    let w0 = w_at(model, x0, y0);
    let w0_sq_inv = w0.square().inv().ok_or(SeriesError::TwoTorsion)?;
    let f = model.f();
    // f(x0 + t) − f(x0), exactly, by Taylor shift
    let shifted = taylor_shift(&f, x0);
    let mut delta = shifted.coeffs().to_vec();
    if let Some(c) = delta.first_mut() {
        *c = zero.clone();
    }
    let ratio = TruncatedSeries::new(0, delta, p, zero.clone()).scale(&w0_sq_inv).add_scalar(&one);
    let root = ratio.sqrt(Some(&one))?;
    let w = root.scale(&w0);
    let half = one.from_i64_like(2).inv().expect("char 0");
    let y = w.sub(&model.u().eval_series(&x)).scale(&half);
    Ok(LocalExpansion { x, y })
}

/// Expansion at a Weierstrass point `(x0, −u(x0)/2)` in the uniformizer
/// `t = (2y + u(x))/2`: `x = x0 + ξ(t)` where `f(x0 + ξ) = 4t²`.
pub fn expand_at_two_torsion<S: Field>(model: &HyperellipticModel<S>, x0: &S, prec: usize) -> Result<LocalExpansion<S>> {
    let f = model.f();
    let fx = f.eval(x0);
    let scale = f.coeffs().iter().map(Field::log2_abs).fold(0.0, f64::max) + x0.log2_abs().max(0.0) * f.degree().unwrap_or(0) as f64;
    if !fx.is_zero() && fx.log2_abs() > scale + x0.log2_tol(0.5) {
        return Err(SeriesError::NotTwoTorsion);
    }
    let zero = x0.zero_like();
    let one = x0.one_like();
    let p = prec as i64 + 1;
    let shifted = taylor_shift(&f, x0);
    let d1 = shifted.coeff(1).cloned().unwrap_or_else(|| zero.clone());
    let d1_inv = d1.inv().ok_or(SeriesError::Model("f has a repeated root".into()))?;
    // higher part h(ξ) = f(x0 + ξ) − f'(x0)ξ, constant dropped
    let mut higher = shifted.coeffs().to_vec();
    higher[0] = zero.clone();
    if higher.len() > 1 {
        higher[1] = zero.clone();
    }
    let higher = Poly::new(higher);
    let four_t2 = TruncatedSeries::new(2, vec![one.from_i64_like(4)], p, zero.clone());
    // ξ = (4t² − h(ξ))/f'(x0); every pass fixes at least two more terms
    let mut xi = four_t2.scale(&d1_inv);
    for _ in 0..=prec / 2 + 1 {
        xi = four_t2.sub(&higher.eval_series(&xi)).scale(&d1_inv);
    }
    let x = xi.add_scalar(x0);
    let t = TruncatedSeries::new(1, vec![one.clone()], p, zero.clone());
    let half = one.from_i64_like(2).inv().expect("char 0");
    let y = t.sub(&model.u().eval_series(&x).scale(&half));
    Ok(LocalExpansion { x, y })
}

/// `p(x0 + t)` as a polynomial in `t`.
pub fn taylor_shift<S: Field>(p: &Poly<S>, x0: &S) -> Poly<S> {
    let Some(lead) = p.leading() else { return Poly::zero() };
    let lin = Poly::new(vec![x0.clone(), lead.one_like()]);
    let mut acc = Poly::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(&lin).add(&Poly::new(vec![c.clone()]));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use crate::model::EllipticModel;
    use num_rational::BigRational;

    fn curve() -> HyperellipticModel<BigRational> {
        EllipticModel::new(rat(-5, 27), rat(-5, 27)).unwrap().to_hyperelliptic()
    }

    #[test]
    fn expansion_satisfies_the_equation() {
        let m = curve();
        let e = expand_at_point(&m, &rat(1, 1), &rat(4, 1), 8).unwrap();
        let r = e.y.mul(&e.y).sub(&m.v().eval_series(&e.x));
        assert!(r.is_zero());
        assert_eq!(r.prec(), 9);
        // y'(1) = f'(1)/(2·4) = 8/8
        assert_eq!(e.y.coeff(1), Some(rat(1, 1)));
        assert!(expand_at_point(&m, &rat(1, 1), &rat(5, 1), 8).is_err());
        let g = HyperellipticModel::new(2, Poly::from_i64(&[1, 1]), Poly::from_i64(&[1, 0, 3, 0, 0, 1])).unwrap();
        let y0 = rat(1, 1);
        assert!(expand_at_point(&g, &rat(0, 1), &y0, 4).is_err());
        let e = expand_at_point_unchecked(&g, &rat(0, 1), &y0, 6).unwrap();
        assert_eq!(e.y.coeff(0), Some(y0));
    }

    #[test]
    fn two_torsion_expansion() {
        // y² = x³ − x at (0, 0): ξ = −t² − t⁶ − 3t¹⁰ ...
        let m = EllipticModel::new(rat(1, 27), rat(0, 1)).unwrap().to_hyperelliptic();
        let e = expand_at_two_torsion(&m, &rat(0, 1), 12).unwrap();
        let c: Vec<_> = (0..=12).map(|k| e.x.coeff(k).unwrap()).collect();
        assert_eq!(c[2], rat(-1, 1));
        assert_eq!(c[6], rat(-1, 1));
        assert_eq!(c[10], rat(-3, 1));
        assert!(c[4].is_zero() && c[3].is_zero());
        assert_eq!(e.y.coeff(1), Some(rat(1, 1)));
        let r = e.y.mul(&e.y).sub(&m.v().eval_series(&e.x));
        assert!(r.is_zero());
        assert!(expand_at_two_torsion(&m, &rat(2, 1), 4).is_err());
        assert!(expand_at_point(&m, &rat(1, 1), &rat(0, 1), 4).is_err());
    }
}
