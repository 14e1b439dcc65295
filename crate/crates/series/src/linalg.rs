//! Dense linear algebra over a `Field`: LU solves, rank, and a one-sided
//! Jacobi SVD for multiprecision complex matrices.

use crate::complex::BigComplex;
use crate::error::{Result, SeriesError};
use crate::field::Field;

fn max_log2<S: Field>(rows: &[Vec<S>]) -> f64 {
    rows.iter().flatten().map(Field::log2_abs).fold(f64::NEG_INFINITY, f64::max)
}

/// Solves `a·x = b` by Gaussian elimination with partial pivoting. A pivot
/// below `2^rel_log2_tol` times the largest entry counts as singular.
pub fn lu_solve<S: Field>(mut a: Vec<Vec<S>>, mut b: Vec<S>, rel_log2_tol: f64) -> Result<Vec<S>> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|r| r.len() == n), "square system");
    if n == 0 {
        return Ok(Vec::new());
    }
    let floor = max_log2(&a) + rel_log2_tol;
    for k in 0..n {
        let (p, best) = (k..n)
            .map(|i| (i, a[i][k].log2_abs()))
            .fold((k, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
        if a[p][k].is_zero() || best < floor {
            return Err(SeriesError::Singular);
        }
        a.swap(k, p);
        b.swap(k, p);
        let inv = a[k][k].inv().ok_or(SeriesError::Singular)?;
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].mul(&inv);
            for j in k..n {
                let t = f.mul(&a[k][j]);
                a[i][j] = a[i][j].sub(&t);
            }
            let t = f.mul(&b[k]);
            b[i] = b[i].sub(&t);
        }
    }
    let mut x = vec![b[0].zero_like(); n];
    for k in (0..n).rev() {
        let mut s = b[k].clone();
        for j in k + 1..n {
            s = s.sub(&a[k][j].mul(&x[j]));
        }
        x[k] = s.div(&a[k][k]).ok_or(SeriesError::Singular)?;
    }
    Ok(x)
}

/// Rank by elimination with full pivoting; entries below `2^rel_log2_tol`
/// times the largest count as zero (exact domains: pass `-inf`).
pub fn rank<S: Field>(rows: &[Vec<S>], rel_log2_tol: f64) -> usize {
    let mut a: Vec<Vec<S>> = rows.to_vec();
    if a.is_empty() {
        return 0;
    }
    let m = a.len();
    let n = a[0].len();
    let floor = max_log2(&a) + rel_log2_tol;
    let mut r = 0;
    let mut cols: Vec<usize> = (0..n).collect();
    while r < m && r < n {
        let mut best = (r, r, f64::NEG_INFINITY);
        for i in r..m {
            for (jj, &j) in cols.iter().enumerate().skip(r) {
                let l = a[i][j].log2_abs();
                if l > best.2 {
                    best = (i, jj, l);
                }
            }
        }
        if best.2 == f64::NEG_INFINITY || best.2 < floor {
            break;
        }
        a.swap(r, best.0);
        cols.swap(r, best.1);
        let pc = cols[r];
        let inv = a[r][pc].inv().expect("nonzero pivot");
        for i in r + 1..m {
            if a[i][pc].is_zero() {
                continue;
            }
            let f = a[i][pc].mul(&inv);
            for &j in &cols[r..] {
                let t = f.mul(&a[r][j]);
                a[i][j] = a[i][j].sub(&t);
            }
        }
        r += 1;
    }
    r
}

/// Singular values (descending, as `log2`) and right singular vectors of an
/// `m × n` complex matrix, by one-sided Jacobi rotations.
pub struct Svd {
    pub log2_singular: Vec<f64>,
    /// `v[j]` is the right singular vector for `log2_singular[j]`.
    pub v: Vec<Vec<BigComplex>>,
}

pub fn jacobi_svd(rows: &[Vec<BigComplex>]) -> Svd {
    let m = rows.len();
    let n = if m == 0 { 0 } else { rows[0].len() };
    if n == 0 {
        return Svd { log2_singular: Vec::new(), v: Vec::new() };
    }
    let like = rows[0][0].clone();
    let bits = like.bits();
    // columns of A and of V
    let mut a: Vec<Vec<BigComplex>> = (0..n).map(|j| (0..m).map(|i| rows[i][j].clone()).collect()).collect();
    let mut v: Vec<Vec<BigComplex>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { like.one_like() } else { like.zero_like() }).collect())
        .collect();
    let eps = -(bits as f64) + 8.0;
    let dot = |x: &[BigComplex], y: &[BigComplex]| {
        x.iter().zip(y).fold(like.zero_like(), |acc, (p, q)| acc.add(&p.conj().mul(q)))
    };
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = dot(&a[p], &a[p]).real();
                let beta = dot(&a[q], &a[q]).real();
                let gamma = dot(&a[p], &a[q]);
                let g_abs = gamma.abs();
                if gamma.is_zero() || g_abs.log2_abs() - 0.5 * (alpha.log2_abs() + beta.log2_abs()) < eps {
                    continue;
                }
                rotated = true;
                // rotate a_q by the phase of γ so that the inner product is real
                let phase = gamma.conj().div(&g_abs).expect("nonzero");
                for x in a[q].iter_mut() {
                    *x = x.mul(&phase);
                }
                for x in v[q].iter_mut() {
                    *x = x.mul(&phase);
                }
                let zeta = beta.sub(&alpha).div(&g_abs.mul_i64(2)).expect("nonzero");
                let one = like.one_like();
                let root = one.add(&zeta.square()).sqrt().expect("real sqrt");
                let neg = zeta.re_f64() < 0.0;
                let mag = if neg { zeta.neg() } else { zeta.clone() };
                let mut t = one.div(&mag.add(&root)).expect("nonzero");
                if neg {
                    t = t.neg();
                }
                let c = one.div(&one.add(&t.square()).sqrt().expect("sqrt")).expect("nonzero");
                let s = c.mul(&t);
                for cols in [&mut a, &mut v] {
                    let len = cols[p].len();
                    for i in 0..len {
                        let xp = cols[p][i].clone();
                        let xq = cols[q][i].clone();
                        cols[p][i] = c.mul(&xp).sub(&s.mul(&xq));
                        cols[q][i] = s.mul(&xp).add(&c.mul(&xq));
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut order: Vec<(f64, usize)> = (0..n).map(|j| (dot(&a[j], &a[j]).log2_abs() / 2.0, j)).collect();
    order.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap_or(std::cmp::Ordering::Equal));
    Svd {
        log2_singular: order.iter().map(|o| o.0).collect(),
        v: order.iter().map(|o| v[o.1].clone()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use num_rational::BigRational;

    fn q(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&n| rat(n, 1)).collect()).collect()
    }

    #[test]
    fn exact_solve_and_rank() {
        let a = q(&[&[0, 2, 1], &[1, 1, 1], &[2, 0, 3]]);
        let b = vec![rat(3, 1), rat(3, 1), rat(5, 1)];
        let x = lu_solve(a.clone(), b, f64::NEG_INFINITY).unwrap();
        assert_eq!(x, vec![rat(1, 1), rat(1, 1), rat(1, 1)]);
        assert_eq!(rank(&a, f64::NEG_INFINITY), 3);
        let s = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&s, f64::NEG_INFINITY), 2);
        assert!(lu_solve(s, vec![rat(1, 1); 3], f64::NEG_INFINITY).is_err());
    }

    #[test]
    fn svd_finds_kernel() {
        let d = 40;
        let c = |re: f64, im: f64| BigComplex::from_f64(re, im, d);
        // third column = first + i·second
        let rows: Vec<Vec<BigComplex>> = [(1.0, 2.0), (3.0, -1.0), (0.5, 0.25), (-2.0, 1.0)]
            .iter()
            .map(|&(x, y)| {
                let a = c(x, 0.0);
                let b = c(y, 0.5);
                let third = a.add(&b.mul(&BigComplex::i(d)));
                vec![a, b, third]
            })
            .collect();
        let svd = jacobi_svd(&rows);
        assert_eq!(svd.log2_singular.len(), 3);
        assert!(svd.log2_singular[2] - svd.log2_singular[0] < -100.0);
        let k = &svd.v[2];
        for r in &rows {
            let s = r.iter().zip(k).fold(c(0.0, 0.0), |acc, (x, y)| acc.add(&x.mul(y)));
            assert!(s.log2_abs() < -100.0);
        }
        assert!(svd.log2_singular[1] > -10.0);
    }
}
