//! Plane coordinates from an echelonized basis of holomorphic differentials,
//! and detection of a hyperelliptic relation among series.

use crate::complex::BigComplex;
use crate::error::{Result, SeriesError};
use crate::field::Field;
use crate::linalg::jacobi_svd;
use crate::model::HyperellipticModel;
use crate::poly::Poly;
use crate::series::TruncatedSeries;

/// `x = f1/f2` and `y = x′/f_g` for an echelonized basis `f1, …, f_g`
/// (strictly increasing valuations), `g ≥ 2`.
pub fn coords_from_basis<S: Field>(f: &[TruncatedSeries<S>]) -> Result<(TruncatedSeries<S>, TruncatedSeries<S>)> {
    if f.len() < 2 {
        return Err(SeriesError::Invalid("need at least two differentials".into()));
    }
    let vals: Vec<Option<i64>> = f.iter().map(TruncatedSeries::valuation).collect();
    if vals.iter().any(Option::is_none) {
        return Err(SeriesError::DivisionByZero);
    }
    if vals.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SeriesError::Invalid(format!("basis is not echelonized: valuations {vals:?}")));
    }
    let x = f[0].div(&f[1])?;
    let y = x.derivative().div(&f[f.len() - 1])?;
    Ok((x, y))
}

/// Margin of extra series terms beyond the number of monomials.
pub const DETECTION_MARGIN: usize = 10;

/// Looks for a relation among `1, x, …, x^(2g+2), y, xy, …, x^(g+1)y, y²`
/// whose smallest singular value is below `2^log2_tol` times the largest
/// (columns scaled to unit size first). Returns the model with the
/// `y²` coefficient normalized to 1, or `None` if there is no relation or
/// it does not involve `y²`.
pub fn detect_hyperelliptic(
    x: &TruncatedSeries<BigComplex>,
    y: &TruncatedSeries<BigComplex>,
    g: usize,
    log2_tol: f64,
) -> Result<Option<HyperellipticModel<BigComplex>>> {
    let mut cols: Vec<TruncatedSeries<BigComplex>> = Vec::new();
    let mut xp = TruncatedSeries::constant(x.zero_elem().one_like(), x.prec().max(y.prec()) + 1);
    let mut powers = Vec::new();
    for _ in 0..=2 * g + 2 {
        powers.push(xp.clone());
        xp = xp.mul(x);
    }
    cols.extend(powers.iter().cloned());
    cols.extend(powers[..=g + 1].iter().map(|p| p.mul(y)));
    cols.push(y.mul(y));
    let n = cols.len();
    let lo = cols.iter().filter_map(TruncatedSeries::valuation).min().unwrap_or(0);
    let hi = cols.iter().map(TruncatedSeries::prec).min().expect("nonempty");
    let rows = (hi - lo).max(0) as usize;
    if rows < n + DETECTION_MARGIN {
        return Err(SeriesError::TooShort { needed: n + DETECTION_MARGIN, have: rows });
    }
    let like = x.zero_elem().clone();
    let scales: Vec<BigComplex> = cols
        .iter()
        .map(|c| {
            let m = c.terms().map(|(_, v)| v.log2_abs()).fold(f64::NEG_INFINITY, f64::max);
            let e = if m.is_finite() { -m.round() as i64 } else { 0 };
            pow2(&like, e)
        })
        .collect();
    let matrix: Vec<Vec<BigComplex>> = (lo..hi)
        .map(|e| cols.iter().zip(&scales).map(|(c, s)| c.coeff(e).expect("below prec").mul(s)).collect())
        .collect();
    let svd = jacobi_svd(&matrix);
    let (top, low) = (svd.log2_singular[0], svd.log2_singular[n - 1]);
    if low - top > log2_tol {
        return Ok(None);
    }
    let kernel: Vec<BigComplex> = svd.v[n - 1].iter().zip(&scales).map(|(k, s)| k.mul(s)).collect();
    let lead = &kernel[n - 1];
    let biggest = kernel.iter().map(Field::log2_abs).fold(f64::NEG_INFINITY, f64::max);
    if lead.log2_abs() < biggest + log2_tol {
        return Ok(None);
    }
    let inv = lead.inv().expect("nonzero");
    let normalized: Vec<BigComplex> = kernel.iter().map(|k| k.mul(&inv)).collect();
    let floor = normalized.iter().map(Field::log2_abs).fold(f64::NEG_INFINITY, f64::max) + log2_tol;
    let chop = |c: &BigComplex| if c.log2_abs() < floor { c.zero_like() } else { c.clone() };
    let v: Vec<BigComplex> = normalized[..=2 * g + 2].iter().map(|c| chop(c).neg()).collect();
    let u: Vec<BigComplex> = normalized[2 * g + 3..n - 1].iter().map(chop).collect();
    match HyperellipticModel::new(g, Poly::new(u), Poly::new(v)) {
        Ok(m) => Ok(Some(m)),
        Err(SeriesError::Model(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn pow2(like: &BigComplex, e: i64) -> BigComplex {
    let two = like.from_i64_like(2);
    let p = two.pow(e.unsigned_abs() as u32);
    if e >= 0 {
        p
    } else {
        p.inv().expect("nonzero")
    }
}

/// Default relation tolerance: half the working precision.
pub fn default_log2_tol(digits: usize) -> f64 {
    -(digits as f64) / 2.0 * std::f64::consts::LOG2_10
}
