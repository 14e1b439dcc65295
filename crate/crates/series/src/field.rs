//! Coefficient domains: exact rationals, multiprecision complex numbers and
//! forward-mode dual numbers over either.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arithmetic needed by the series and curve code. Constants are built
/// from an existing element (`*_like`) so that precision travels with the
/// values instead of living in global state.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn from_i64_like(&self, n: i64) -> Self;
    fn from_rational_like(&self, q: &BigRational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    /// Principal square root; `None` when the domain has none.
    fn sqrt(&self) -> Option<Self>;
    /// Approximate `log2 |x|`, `-inf` for zero.
    fn log2_abs(&self) -> f64;
    /// Whether equality tests are exact in this domain.
    fn is_exact(&self) -> bool;
    /// Significant bits carried by a numerical value; `None` when exact.
    fn precision_bits(&self) -> Option<usize>;

    /// `log2` of a relative tolerance at `fraction` of the working
    /// precision; `-inf` for exact domains.
    fn log2_tol(&self, fraction: f64) -> f64 {
        match self.precision_bits() {
            Some(b) => -(b as f64) * fraction,
            None => f64::NEG_INFINITY,
        }
    }

    fn one_like(&self) -> Self {
        self.from_i64_like(1)
    }

    fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }

    fn mul_i64(&self, n: i64) -> Self {
        self.mul(&self.from_i64_like(n))
    }

    fn square(&self) -> Self {
        self.mul(self)
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn bigint_log2(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 60 {
        return n.abs().to_f64().unwrap_or(0.0).log2();
    }
    let top: BigInt = n.abs() >> (bits - 53);
    top.to_f64().unwrap_or(1.0).log2() + (bits - 53) as f64
}

impl Field for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
    fn from_rational_like(&self, q: &BigRational) -> Self {
        q.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sqrt(&self) -> Option<Self> {
        let n = exact_sqrt(self.numer())?;
        let d = exact_sqrt(self.denom())?;
        Some(BigRational::new(n, d))
    }
    fn log2_abs(&self) -> f64 {
        if Zero::is_zero(self) {
            return f64::NEG_INFINITY;
        }
        bigint_log2(self.numer()) - bigint_log2(self.denom())
    }
    fn is_exact(&self) -> bool {
        true
    }
    fn precision_bits(&self) -> Option<usize> {
        None
    }
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-1.25"`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        return (!Zero::is_zero(&d)).then(|| BigRational::new(n, d));
    }
    if let Some((i, f)) = s.split_once('.') {
        let neg = i.starts_with('-');
        let digits = format!("{}{}", i.trim_start_matches(['-', '+']), f);
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), f.len());
        let q = BigRational::new(n, d);
        return Some(if neg { -q } else { q });
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

/// `p/q` text (or `p` for integers).
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Forward-mode dual number: a value and its gradient. An empty gradient
/// stands for a constant.
#[derive(Clone, Debug, PartialEq)]
pub struct Dual<S> {
    pub value: S,
    pub grad: Vec<S>,
}

impl<S: Field> Dual<S> {
    pub fn constant(value: S) -> Self {
        Dual { value, grad: Vec::new() }
    }

    /// The `index`-th of `n` independent variables.
    pub fn variable(value: S, index: usize, n: usize) -> Self {
        let mut grad = vec![value.zero_like(); n];
        grad[index] = value.one_like();
        Dual { value, grad }
    }

    fn zip(&self, o: &Self, f: impl Fn(Option<&S>, Option<&S>) -> S) -> Vec<S> {
        let n = self.grad.len().max(o.grad.len());
        (0..n).map(|i| f(self.grad.get(i), o.grad.get(i))).collect()
    }

    fn scale_grad(&self, k: &S) -> Vec<S> {
        self.grad.iter().map(|g| g.mul(k)).collect()
    }
}

impl<S: Field> Field for Dual<S> {
    fn zero_like(&self) -> Self {
        Dual::constant(self.value.zero_like())
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Dual::constant(self.value.from_i64_like(n))
    }
    fn from_rational_like(&self, q: &BigRational) -> Self {
        Dual::constant(self.value.from_rational_like(q))
    }
    fn add(&self, o: &Self) -> Self {
        let grad = self.zip(o, |a, b| match (a, b) {
            (Some(a), Some(b)) => a.add(b),
            (Some(a), None) => a.clone(),
            (None, Some(b)) => b.clone(),
            (None, None) => unreachable!(),
        });
        Dual { value: self.value.add(&o.value), grad }
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        let grad = self.zip(o, |a, b| match (a, b) {
            (Some(a), Some(b)) => a.mul(&o.value).add(&self.value.mul(b)),
            (Some(a), None) => a.mul(&o.value),
            (None, Some(b)) => self.value.mul(b),
            (None, None) => unreachable!(),
        });
        Dual { value: self.value.mul(&o.value), grad }
    }
    fn neg(&self) -> Self {
        Dual { value: self.value.neg(), grad: self.grad.iter().map(Field::neg).collect() }
    }
    fn inv(&self) -> Option<Self> {
        let w = self.value.inv()?;
        let k = w.square().neg();
        Some(Dual { grad: self.scale_grad(&k), value: w })
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.grad.iter().all(Field::is_zero)
    }
    fn sqrt(&self) -> Option<Self> {
        let r = self.value.sqrt()?;
        if self.grad.is_empty() {
            return Some(Dual::constant(r));
        }
        let k = r.mul_i64(2).inv()?;
        Some(Dual { grad: self.scale_grad(&k), value: r })
    }
    fn log2_abs(&self) -> f64 {
        self.value.log2_abs()
    }
    fn is_exact(&self) -> bool {
        self.value.is_exact()
    }
    fn precision_bits(&self) -> Option<usize> {
        self.value.precision_bits()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sqrt_and_parse() {
        assert_eq!(Field::sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(Field::sqrt(&rat(2, 1)), None);
        assert_eq!(Field::sqrt(&rat(-1, 1)), None);
        assert_eq!(parse_rational("-5/27"), Some(rat(-5, 27)));
        assert_eq!(parse_rational("-1.25"), Some(rat(-5, 4)));
        assert_eq!(parse_rational("12"), Some(rat(12, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(format_rational(&rat(-10, 4)), "-5/2");
        assert!((rat(1, 1024).log2_abs() + 10.0).abs() < 1e-12);
    }

    #[test]
    fn dual_derivatives() {
        // f(x, y) = x² y + 1/x at (3, 2): ∂x = 2xy − 1/x² = 12 − 1/9, ∂y = x² = 9
        let x = Dual::variable(rat(3, 1), 0, 2);
        let y = Dual::variable(rat(2, 1), 1, 2);
        let f = x.square().mul(&y).add(&x.inv().unwrap());
        assert_eq!(f.value, rat(55, 3));
        assert_eq!(f.grad, vec![rat(107, 9), rat(9, 1)]);
        let s = Dual::variable(rat(4, 1), 0, 1).sqrt().unwrap();
        assert_eq!((s.value, s.grad), (rat(2, 1), vec![rat(1, 4)]));
    }
}
