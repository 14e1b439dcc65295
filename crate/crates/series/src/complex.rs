//! Multiprecision complex numbers on binary floats with half-even rounding.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use dashu_float::round::mode::HalfEven;
use dashu_float::{Context, DBig, FBig};
use dashu_base::{Abs, BitTest, UnsignedAbs};
use dashu_int::IBig;
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::field::Field;

type Real = FBig<HalfEven, 2>;

/// Guard bits added on top of the requested decimal precision.
const GUARD_BITS: usize = 16;

pub fn digits_to_bits(digits: usize) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + GUARD_BITS
}

#[derive(Clone)]
pub struct BigComplex {
    re: Real,
    im: Real,
    bits: usize,
}

fn ctx(bits: usize) -> Context<HalfEven> {
    Context::new(bits)
}

fn to_ibig(n: &BigInt) -> IBig {
    IBig::from_str(&n.to_string()).expect("decimal integer")
}

fn real_log2(x: &Real) -> f64 {
    let r = x.repr();
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    let sig = r.significand().unsigned_abs();
    let bits = sig.bit_len();
    let shift = bits.saturating_sub(53);
    let top: u64 = (sig >> shift).try_into().unwrap_or(u64::MAX);
    (top as f64).log2() + shift as f64 + r.exponent() as f64
}

fn real_is_neg(x: &Real) -> bool {
    x.repr().significand() < &IBig::ZERO
}

impl BigComplex {
    pub fn zero(digits: usize) -> Self {
        Self::from_bits_zero(digits_to_bits(digits))
    }

    fn from_bits_zero(bits: usize) -> Self {
        BigComplex { re: Real::ZERO, im: Real::ZERO, bits }
    }

    pub fn from_i64(n: i64, digits: usize) -> Self {
        Self::from_bits_i64(n, digits_to_bits(digits))
    }

    fn from_bits_i64(n: i64, bits: usize) -> Self {
        BigComplex { re: Real::from(n), im: Real::ZERO, bits }
    }

    pub fn from_rational(q: &BigRational, digits: usize) -> Self {
        Self::from_bits_rational(q, digits_to_bits(digits))
    }

    fn from_bits_rational(q: &BigRational, bits: usize) -> Self {
        let n = Real::from(to_ibig(q.numer()));
        let d = Real::from(to_ibig(q.denom()));
        BigComplex { re: ctx(bits).div(n.repr(), d.repr()).value(), im: Real::ZERO, bits }
    }

    pub fn from_rationals(re: &BigRational, im: &BigRational, digits: usize) -> Self {
        let a = Self::from_rational(re, digits);
        let b = Self::from_rational(im, digits);
        BigComplex { re: a.re, im: b.re, bits: a.bits }
    }

    pub fn from_f64(re: f64, im: f64, digits: usize) -> Self {
        let conv = |v: f64| Real::try_from(v).expect("finite float");
        BigComplex { re: conv(re), im: conv(im), bits: digits_to_bits(digits) }
    }

    /// Parses decimal strings for the real and imaginary parts.
    pub fn parse(re: &str, im: &str, digits: usize) -> Option<Self> {
        let bits = digits_to_bits(digits);
        let conv = |s: &str| -> Option<Real> {
            let d = DBig::from_str(s.trim()).ok()?;
            Some(d.with_rounding::<HalfEven>().with_base_and_precision::<2>(bits).value())
        };
        Some(BigComplex { re: conv(re)?, im: conv(im)?, bits })
    }

    pub fn i(digits: usize) -> Self {
        BigComplex { re: Real::ZERO, im: Real::ONE, bits: digits_to_bits(digits) }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    /// Working precision in decimal digits (guard bits excluded).
    pub fn digits(&self) -> usize {
        ((self.bits.saturating_sub(GUARD_BITS)) as f64 / std::f64::consts::LOG2_10).floor() as usize
    }

    pub fn with_digits(&self, digits: usize) -> Self {
        let bits = digits_to_bits(digits);
        let c = ctx(bits);
        let round = |x: &Real| c.add(x.repr(), Real::ZERO.repr()).value();
        BigComplex { re: round(&self.re), im: round(&self.im), bits }
    }

    pub fn re_f64(&self) -> f64 {
        self.re.to_f64().value()
    }

    pub fn im_f64(&self) -> f64 {
        self.im.to_f64().value()
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: -self.im.clone(), bits: self.bits }
    }

    pub fn real(&self) -> Self {
        BigComplex { re: self.re.clone(), im: Real::ZERO, bits: self.bits }
    }

    /// `|z|²` as a complex number with zero imaginary part.
    pub fn norm_sqr(&self) -> Self {
        let c = ctx(self.bits);
        let a = c.mul(self.re.repr(), self.re.repr()).value();
        let b = c.mul(self.im.repr(), self.im.repr()).value();
        BigComplex { re: c.add(a.repr(), b.repr()).value(), im: Real::ZERO, bits: self.bits }
    }

    /// `|z|` as a complex number with zero imaginary part.
    pub fn abs(&self) -> Self {
        let n = self.norm_sqr();
        BigComplex { re: ctx(self.bits).sqrt(n.re.repr()).value(), im: Real::ZERO, bits: self.bits }
    }

    /// Compares real parts.
    pub fn cmp_re(&self, o: &Self) -> Ordering {
        self.re.cmp(&o.re)
    }

    /// Decimal strings for the real and imaginary parts.
    pub fn to_decimal(&self, digits: usize) -> (String, String) {
        let conv = |x: &Real| -> String {
            if x.repr().is_zero() {
                return "0".into();
            }
            let d = x.clone().with_base_and_precision::<10>(digits.max(1)).value();
            d.to_string()
        };
        (conv(&self.re), conv(&self.im))
    }

    /// Principal `n`-th root: refined by Newton from a double-precision
    /// start on the principal branch.
    pub fn nth_root(&self, n: u32) -> Option<Self> {
        if n == 0 {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if n == 1 {
            return Some(self.clone());
        }
        if n == 2 {
            return self.sqrt();
        }
        let (re, im) = (self.re_f64(), self.im_f64());
        let (r, theta) = ((re * re + im * im).sqrt(), im.atan2(re));
        let mut w = if r.is_finite() && r > 0.0 {
            let rho = r.powf(1.0 / n as f64);
            let phi = theta / n as f64;
            let mut w = self.zero_like();
            w.re = Real::try_from(rho * phi.cos()).ok()?;
            w.im = Real::try_from(rho * phi.sin()).ok()?;
            w
        } else {
            return None;
        };
        let nn = self.from_i64_like(n as i64);
        let target_log2 = -(self.bits as f64) + 4.0 + self.log2_abs() / n as f64;
        for _ in 0..(self.bits.ilog2() as usize + 8) {
            // w ← w − (wⁿ − z)/(n wⁿ⁻¹)
            let wn1 = w.pow(n - 1);
            let step = wn1.mul(&w).sub(self).div(&nn.mul(&wn1))?;
            w = w.sub(&step);
            if step.log2_abs() < target_log2 {
                break;
            }
        }
        Some(w)
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(12);
        let (re, im) = self.to_decimal(digits);
        write!(f, "({re}, {im})")
    }
}

impl PartialEq for BigComplex {
    fn eq(&self, o: &Self) -> bool {
        self.re == o.re && self.im == o.im
    }
}

impl Field for BigComplex {
    fn zero_like(&self) -> Self {
        Self::from_bits_zero(self.bits)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Self::from_bits_i64(n, self.bits)
    }
    fn from_rational_like(&self, q: &BigRational) -> Self {
        Self::from_bits_rational(q, self.bits)
    }
    fn add(&self, o: &Self) -> Self {
        let bits = self.bits.max(o.bits);
        let c = ctx(bits);
        BigComplex { re: c.add(self.re.repr(), o.re.repr()).value(), im: c.add(self.im.repr(), o.im.repr()).value(), bits }
    }
    fn sub(&self, o: &Self) -> Self {
        let bits = self.bits.max(o.bits);
        let c = ctx(bits);
        BigComplex { re: c.sub(self.re.repr(), o.re.repr()).value(), im: c.sub(self.im.repr(), o.im.repr()).value(), bits }
    }
    fn mul(&self, o: &Self) -> Self {
        let bits = self.bits.max(o.bits);
        let c = ctx(bits);
        let (a, b, x, y) = (self.re.repr(), self.im.repr(), o.re.repr(), o.im.repr());
        let re = if b.is_zero() || y.is_zero() {
            c.mul(a, x).value()
        } else {
            c.sub(c.mul(a, x).value().repr(), c.mul(b, y).value().repr()).value()
        };
        let im = match (b.is_zero(), y.is_zero()) {
            (true, true) => Real::ZERO,
            (true, false) => c.mul(a, y).value(),
            (false, true) => c.mul(b, x).value(),
            (false, false) => c.add(c.mul(a, y).value().repr(), c.mul(b, x).value().repr()).value(),
        };
        BigComplex { re, im, bits }
    }
    fn neg(&self) -> Self {
        BigComplex { re: -self.re.clone(), im: -self.im.clone(), bits: self.bits }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let c = ctx(self.bits);
        let n = self.norm_sqr().re;
        let re = c.div(self.re.repr(), n.repr()).value();
        let im = if self.im.repr().is_zero() { Real::ZERO } else { -c.div(self.im.repr(), n.repr()).value() };
        Some(BigComplex { re, im, bits: self.bits })
    }
    fn is_zero(&self) -> bool {
        self.re.repr().is_zero() && self.im.repr().is_zero()
    }
    fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let c = ctx(self.bits);
        if self.im.repr().is_zero() {
            let a = &self.re;
            let r = c.sqrt(a.clone().abs().repr()).value();
            return Some(if real_is_neg(a) {
                BigComplex { re: Real::ZERO, im: r, bits: self.bits }
            } else {
                BigComplex { re: r, im: Real::ZERO, bits: self.bits }
            });
        }
        let r = self.abs().re;
        let two = Real::from(2);
        if !real_is_neg(&self.re) {
            let re = c.sqrt(c.div(c.add(r.repr(), self.re.repr()).value().repr(), two.repr()).value().repr()).value();
            let im = c.div(self.im.repr(), c.mul(re.repr(), two.repr()).value().repr()).value();
            Some(BigComplex { re, im, bits: self.bits })
        } else {
            let mut im = c.sqrt(c.div(c.sub(r.repr(), self.re.repr()).value().repr(), two.repr()).value().repr()).value();
            if real_is_neg(&self.im) {
                im = -im;
            }
            let re = c.div(self.im.repr(), c.mul(im.repr(), two.repr()).value().repr()).value();
            Some(BigComplex { re, im, bits: self.bits })
        }
    }
    fn log2_abs(&self) -> f64 {
        let a = real_log2(&self.re);
        let b = real_log2(&self.im);
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        if hi == f64::NEG_INFINITY {
            return hi;
        }
        hi + 0.5 * (1.0 + (2f64).powf(2.0 * (lo - hi))).log2()
    }
    fn is_exact(&self) -> bool {
        false
    }
    fn precision_bits(&self) -> Option<usize> {
        Some(self.bits - GUARD_BITS)
    }
}
