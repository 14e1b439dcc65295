//! The weighted action `(x, y) ↦ (λ⁻²x, λ⁻³y)` on elliptic ansätze (and
//! `x ↦ λ⁻¹x` on the line), and choosing `λ` to equalize two coefficients.

use crate::complex::BigComplex;
use crate::error::{Result, SeriesError};
use crate::field::Field;
use crate::model::EllipticModel;
use crate::newton::{BelyiMapAnsatz, MapCurve};

/// Which of `φ0`, `φ∞` a coefficient belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Phi0,
    PhiInf,
}

/// A coefficient addressed by the pole order of its monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoefficientRef {
    pub side: Side,
    pub weight: usize,
}

impl CoefficientRef {
    pub fn phi0(weight: usize) -> Self {
        CoefficientRef { side: Side::Phi0, weight }
    }

    pub fn phi_inf(weight: usize) -> Self {
        CoefficientRef { side: Side::PhiInf, weight }
    }
}

pub fn coefficient<S: Field>(a: &BelyiMapAnsatz<S>, r: CoefficientRef) -> Option<&S> {
    let g = a.genus();
    let (coeffs, basis) = match r.side {
        Side::Phi0 => (&a.phi0, a.phi0_basis()),
        Side::PhiInf => (&a.phi_inf, a.phi_inf_basis()),
    };
    basis.iter().position(|m| m.weight(g) == r.weight).map(|i| &coeffs[i])
}

/// `c4 ↦ λ⁻⁴c4`, `c6 ↦ λ⁻⁶c6` and each coefficient times `λ^weight`;
/// `u` is unchanged. The map is the same function of the rescaled
/// coordinates (see [`rescale_point`]).
pub fn rescale_weighted<S: Field>(a: &BelyiMapAnsatz<S>, lambda: &S) -> Result<BelyiMapAnsatz<S>> {
    let inv = lambda.inv().ok_or(SeriesError::ZeroScale)?;
    let g = a.genus();
    let curve = match &a.curve {
        MapCurve::Line => MapCurve::Line,
        MapCurve::Elliptic(e) => MapCurve::Elliptic(EllipticModel { c4: e.c4.mul(&inv.pow(4)), c6: e.c6.mul(&inv.pow(6)) }),
    };
    let scale = |coeffs: &[S], basis: Vec<crate::newton::Monomial>| {
        coeffs.iter().zip(basis).map(|(c, m)| c.mul(&lambda.pow(m.weight(g) as u32))).collect()
    };
    Ok(BelyiMapAnsatz { curve, u: a.u.clone(), phi0: scale(&a.phi0, a.phi0_basis()), phi_inf: scale(&a.phi_inf, a.phi_inf_basis()) })
}

/// Image of a point under the same action: `(λ⁻²x, λ⁻³y)`, or `λ⁻¹x` on the line.
pub fn rescale_point<S: Field>(genus: usize, lambda: &S, x: &S, y: &S) -> Result<(S, S)> {
    let inv = lambda.inv().ok_or(SeriesError::ZeroScale)?;
    Ok(if genus == 0 { (x.mul(&inv), y.clone()) } else { (x.mul(&inv.pow(2)), y.mul(&inv.pow(3))) })
}

/// `λ` with `λ^(w_i − w_j) = c_j/c_i`, the principal root, so that after
/// [`rescale_weighted`] the two coefficients are equal.
pub fn normalize_consecutive(a: &BelyiMapAnsatz<BigComplex>, i: CoefficientRef, j: CoefficientRef) -> Result<BigComplex> {
    let missing = |r: CoefficientRef| SeriesError::Invalid(format!("no coefficient of weight {} on {:?}", r.weight, r.side));
    let ci = coefficient(a, i).ok_or_else(|| missing(i))?;
    let cj = coefficient(a, j).ok_or_else(|| missing(j))?;
    if ci.is_zero() || cj.is_zero() {
        return Err(SeriesError::ZeroScale);
    }
    let (num, den, n) = match i.weight.cmp(&j.weight) {
        std::cmp::Ordering::Equal => return Err(SeriesError::EqualWeights),
        std::cmp::Ordering::Greater => (cj, ci, i.weight - j.weight),
        std::cmp::Ordering::Less => (ci, cj, j.weight - i.weight),
    };
    let ratio = num.div(den).ok_or(SeriesError::ZeroScale)?;
    ratio.nth_root(n as u32).ok_or(SeriesError::ZeroScale)
}

#[cfg(test)]
mod tests {
    use super::*;

    const D: usize = 40;

    fn z(re: f64, im: f64) -> BigComplex {
        BigComplex::from_f64(re, im, D)
    }

    fn sample() -> BelyiMapAnsatz<BigComplex> {
        BelyiMapAnsatz {
            curve: MapCurve::Elliptic(EllipticModel { c4: z(0.3, -0.1), c6: z(-1.2, 0.5) }),
            u: z(2.0, 1.0),
            phi0: vec![z(0.5, 0.0), z(1.0, 0.0)],
            phi_inf: vec![z(1.0, 2.0), z(-0.5, 0.25), z(0.75, -1.0), z(0.1, 0.2), z(1.0, 0.0)],
        }
    }

    fn close(a: &BigComplex, b: &BigComplex) -> bool {
        a.sub(b).log2_abs() < -100.0
    }

    #[test]
    fn rescaling_preserves_the_map() {
        let a = sample();
        let lambda = z(0.7, -0.4);
        let b = rescale_weighted(&a, &lambda).unwrap();
        let MapCurve::Elliptic(e) = &a.curve else { unreachable!() };
        let MapCurve::Elliptic(e2) = &b.curve else { unreachable!() };
        // a point on the first curve
        let x = z(1.3, 0.2);
        let y = e.cubic().eval(&x).sqrt().unwrap();
        let (x2, y2) = rescale_point(1, &lambda, &x, &y).unwrap();
        assert!(e2.residual(&x2, &y2).log2_abs() < -100.0);
        assert!(close(&a.eval(&x, &y).unwrap(), &b.eval(&x2, &y2).unwrap()));
        let back = rescale_weighted(&b, &lambda.inv().unwrap()).unwrap();
        for (p, q) in back.phi_inf.iter().zip(&a.phi_inf) {
            assert!(close(p, q));
        }
        assert_eq!(rescale_weighted(&a, &z(1.0, 0.0)).unwrap(), a);
        assert!(matches!(rescale_weighted(&a, &z(0.0, 0.0)), Err(SeriesError::ZeroScale)));
    }

    #[test]
    fn consecutive_normalization() {
        let a = sample();
        let (b4, b5) = (CoefficientRef::phi_inf(4), CoefficientRef::phi_inf(5));
        let lambda = normalize_consecutive(&a, b4, b5).unwrap();
        let b = rescale_weighted(&a, &lambda).unwrap();
        assert!(close(coefficient(&b, b4).unwrap(), coefficient(&b, b5).unwrap()));
        let (b3, b0) = (CoefficientRef::phi_inf(3), CoefficientRef::phi_inf(0));
        let lambda = normalize_consecutive(&a, b3, b5).unwrap();
        let b = rescale_weighted(&a, &lambda).unwrap();
        assert!(close(coefficient(&b, b3).unwrap(), coefficient(&b, b5).unwrap()));
        assert!(matches!(normalize_consecutive(&a, b4, b4), Err(SeriesError::EqualWeights)));
        let mut zeroed = a.clone();
        zeroed.phi_inf[0] = z(0.0, 0.0);
        assert!(matches!(normalize_consecutive(&zeroed, b0, b5), Err(SeriesError::ZeroScale)));
        let mut equal = a.clone();
        equal.phi_inf[3] = equal.phi_inf[4].clone();
        assert!(close(&normalize_consecutive(&equal, b4, b5).unwrap(), &z(1.0, 0.0)));
    }
}
