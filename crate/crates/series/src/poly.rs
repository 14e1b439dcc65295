//! Dense univariate polynomials, coefficients from the constant term up.

use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use crate::complex::BigComplex;
use crate::field::{format_rational, parse_rational, Field};
use crate::series::TruncatedSeries;

#[derive(Clone, PartialEq)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Field> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    /// `c·x^k`.
    pub fn monomial(c: S, k: usize) -> Self {
        let mut v = vec![c.zero_like(); k];
        v.push(c);
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    /// Coefficient of `x^k`, `None` when it is beyond the degree.
    pub fn coeff(&self, k: usize) -> Option<&S> {
        self.coeffs.get(k)
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn eval_series(&self, x: &TruncatedSeries<S>) -> TruncatedSeries<S> {
        let mut acc = TruncatedSeries::zero(i64::MAX / 4, x.zero_elem().clone());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&TruncatedSeries::constant(c.clone(), i64::MAX / 4));
        }
        acc
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(v)
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(Field::neg).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &S) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.mul(k)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut v = vec![zero; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        Poly::new(v)
    }

    pub fn pow(&self, e: u32) -> Self {
        let Some(c) = self.coeffs.first() else { return Poly::zero() };
        let mut acc = Poly::new(vec![c.one_like()]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.mul_i64(i as i64)).collect())
    }

    /// Quotient and remainder; `None` when dividing by zero.
    pub fn divrem(&self, d: &Self) -> Option<(Self, Self)> {
        let dl = d.leading()?.inv()?;
        let dd = d.degree()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Some((Poly::zero(), self.clone()));
        }
        let zero = dl.zero_like();
        let mut q = vec![zero; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mul(&dl);
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].sub(&c.mul(dc));
            }
            q[k] = c;
        }
        r.truncate(dd);
        Some((Poly::new(q), Poly::new(r)))
    }

    /// Monic gcd (zero if both are zero). Meaningful over exact domains.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_separable(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    pub fn monic(&self) -> Self {
        match self.leading().and_then(Field::inv) {
            Some(l) => self.scale(&l),
            None => self.clone(),
        }
    }
}

impl Poly<BigRational> {
    pub fn from_i64(v: &[i64]) -> Self {
        Poly::new(v.iter().map(|&n| BigRational::from_integer(n.into())).collect())
    }

    pub fn parse(v: &[String]) -> Option<Self> {
        v.iter().map(|s| parse_rational(s)).collect::<Option<Vec<_>>>().map(Poly::new)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    /// Squarefree decomposition `self = c · Π f_k^k` with monic pairwise
    /// coprime squarefree `f_k`; returns the nonconstant `(f_k, k)`.
    pub fn squarefree(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().is_none_or(|d| d == 0) {
            return out;
        }
        let f = self.monic();
        let d = f.derivative();
        let a0 = f.gcd(&d);
        let mut b = f.divrem(&a0).unwrap().0;
        let mut c = d.divrem(&a0).unwrap().0;
        let mut dd = c.sub(&b.derivative());
        let mut k = 1;
        while b.degree().is_some_and(|d| d > 0) {
            let a = b.gcd(&dd);
            b = b.divrem(&a).unwrap().0;
            c = dd.divrem(&a).unwrap().0;
            if a.degree().is_some_and(|d| d > 0) {
                out.push((a, k));
            }
            dd = c.sub(&b.derivative());
            k += 1;
        }
        out
    }

    pub fn to_complex(&self, digits: usize) -> Poly<BigComplex> {
        self.map(|c| BigComplex::from_rational(c, digits))
    }

    pub fn is_constant_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}

impl Poly<BigComplex> {
    /// All complex roots by the Aberth–Ehrlich iteration; intended for
    /// squarefree input. Returns `None` without convergence.
    pub fn roots(&self) -> Option<Vec<BigComplex>> {
        let n = self.degree()?;
        if n == 0 {
            return Some(Vec::new());
        }
        let p = self.monic();
        let dp = p.derivative();
        let lead = &p.coeffs[0];
        let bits = lead.bits().max(p.coeffs[n].bits());
        // start on a circle whose radius bounds the roots
        let radius = p.coeffs[..n].iter().map(|c| c.log2_abs()).fold(f64::NEG_INFINITY, f64::max);
        let r = 1.0 + 2f64.powf(radius.max(0.0));
        let digits = p.coeffs[n].digits();
        let mut z: Vec<BigComplex> = (0..n)
            .map(|k| {
                let a = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
                BigComplex::from_f64(r * a.cos(), r * a.sin(), digits)
            })
            .collect();
        let tol = -(bits as f64) + 24.0;
        for _ in 0..(200 + 4 * bits) {
            let mut worst = f64::NEG_INFINITY;
            for i in 0..n {
                let pv = p.eval(&z[i]);
                if pv.is_zero() {
                    continue;
                }
                let ratio = pv.div(&dp.eval(&z[i]))?;
                let mut s = ratio.zero_like();
                for j in 0..n {
                    if j != i {
                        s = s.add(&z[i].sub(&z[j]).inv()?);
                    }
                }
                let denom = ratio.one_like().sub(&ratio.mul(&s));
                let step = ratio.div(&denom)?;
                worst = worst.max(step.log2_abs() - z[i].log2_abs().max(0.0));
                z[i] = z[i].sub(&step);
            }
            if worst < tol {
                return Some(z);
            }
        }
        None
    }
}

impl<S: Field> fmt::Debug for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl fmt::Display for Poly<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if Field::is_zero(c) {
                continue;
            }
            let s = format_rational(c);
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag == "1" && k > 0;
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}*x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `Σ deg(f_k)·k` over a squarefree decomposition: the multiplicity
/// partition of the roots.
pub fn root_multiplicities(p: &Poly<BigRational>) -> Vec<usize> {
    let mut out = Vec::new();
    for (f, k) in p.squarefree() {
        out.extend(std::iter::repeat_n(k, f.degree().unwrap_or(0)));
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn p(v: &[i64]) -> Poly<BigRational> {
        Poly::from_i64(v)
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]); // x² − 1
        let b = p(&[1, 1]); // x + 1
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!((q, r), (p(&[-1, 1]), Poly::zero()));
        assert_eq!(a.gcd(&p(&[2, 2])), p(&[1, 1]));
        assert!(p(&[3, 0, 6, 0, 4, 0, 1]).is_separable());
        assert!(!p(&[1, 2, 1]).is_separable());
        assert_eq!(p(&[1, 2]).to_string(), "2*x + 1");
        assert_eq!(p(&[-1, 0, 0, 1]).to_string(), "x^3 - 1");
    }

    #[test]
    fn squarefree_parts() {
        // (x − 1)^4 (x − 6)
        let f = p(&[-6, 1]).mul(&p(&[-1, 1]).pow(4));
        let parts = f.squarefree();
        assert_eq!(parts, vec![(p(&[-6, 1]), 1), (p(&[-1, 1]), 4)]);
        assert_eq!(root_multiplicities(&f), vec![4, 1]);
        let g = p(&[0, 0, 1]).mul(&p(&[1, 0, 1]).pow(3)).scale(&rat(5, 1));
        assert_eq!(root_multiplicities(&g), vec![3, 3, 2]);
    }

    #[test]
    fn aberth_roots() {
        // x³ + 5x + 10 and a product with known roots
        let f = p(&[10, 5, 0, 1]).to_complex(40);
        let roots = f.roots().unwrap();
        assert_eq!(roots.len(), 3);
        for r in &roots {
            assert!(f.eval(r).log2_abs() < -110.0);
        }
        let g = p(&[-6, 1]).mul(&p(&[1, 0, 1])).to_complex(40);
        let mut re: Vec<f64> = g.roots().unwrap().iter().map(|z| z.re_f64()).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!(re[0].abs() < 1e-30 && re[1].abs() < 1e-30 && (re[2] - 6.0).abs() < 1e-30);
    }
}
