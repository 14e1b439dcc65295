//! Truncated Laurent series `Σ c_e t^e + O(t^prec)`.

use std::fmt;

use crate::error::{Result, SeriesError};
use crate::field::Field;

#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<S> {
    /// Exponent of `coeffs[0]`; equals `prec` for a series that is zero to
    /// truncation.
    valuation: i64,
    coeffs: Vec<S>,
    /// Terms with exponent `>= prec` are unknown.
    prec: i64,
    /// Zero of the coefficient domain, kept so that constants can be made
    /// at the right precision even for the zero series.
    zero: S,
}

impl<S: Field> TruncatedSeries<S> {
    /// Series with `coeffs[k]` the coefficient of `t^(valuation + k)`.
    /// Leading zeros are stripped and terms at or beyond `prec` dropped.
    pub fn new(valuation: i64, coeffs: Vec<S>, prec: i64, zero: S) -> Self {
        let mut s = TruncatedSeries { valuation, coeffs, prec, zero };
        s.normalize();
        s
    }

    /// Convenience constructor from a nonempty coefficient list.
    pub fn from_coeffs(valuation: i64, coeffs: Vec<S>, prec: i64) -> Self {
        let zero = coeffs.first().expect("nonempty coefficient list").zero_like();
        Self::new(valuation, coeffs, prec, zero)
    }

    pub fn zero(prec: i64, zero: S) -> Self {
        TruncatedSeries { valuation: prec, coeffs: Vec::new(), prec, zero }
    }

    pub fn constant(c: S, prec: i64) -> Self {
        let zero = c.zero_like();
        Self::new(0, vec![c], prec, zero)
    }

    /// The uniformizer `t` itself.
    pub fn variable(like: &S, prec: i64) -> Self {
        Self::new(1, vec![like.one_like()], prec, like.zero_like())
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.valuation += lead as i64;
        let keep = (self.prec - self.valuation).max(0) as usize;
        self.coeffs.truncate(keep);
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.valuation = self.prec;
        }
    }

    /// Lowest exponent with a nonzero coefficient; `None` if zero to truncation.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.valuation)
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Number of known terms from the valuation on.
    pub fn relative_prec(&self) -> i64 {
        self.prec - self.valuation
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn zero_elem(&self) -> &S {
        &self.zero
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.first()
    }

    /// Coefficient of `t^e`; `None` past the truncation order.
    pub fn coeff(&self, e: i64) -> Option<S> {
        if e >= self.prec {
            return None;
        }
        let k = e - self.valuation;
        if k < 0 || k as usize >= self.coeffs.len() {
            return Some(self.zero.clone());
        }
        Some(self.coeffs[k as usize].clone())
    }

    /// Known `(exponent, coefficient)` pairs, zeros included, starting at the valuation.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &S)> {
        self.coeffs.iter().enumerate().map(move |(k, c)| (self.valuation + k as i64, c))
    }

    /// Coefficients for exponents `from..prec` (zeros filled in).
    pub fn coeffs_from(&self, from: i64) -> Vec<S> {
        (from..self.prec).map(|e| self.coeff(e).expect("below prec")).collect()
    }

    pub fn truncate(&self, prec: i64) -> Self {
        Self::new(self.valuation, self.coeffs.clone(), prec.min(self.prec), self.zero.clone())
    }

    /// Drops leading coefficients with `log2 |c| < log2_tol`; for numerical
    /// series whose leading terms cancel to rounding noise.
    pub fn chop(&self, log2_tol: f64) -> Self {
        let skip = self.coeffs.iter().take_while(|c| c.log2_abs() < log2_tol).count();
        Self::new(self.valuation + skip as i64, self.coeffs[skip..].to_vec(), self.prec, self.zero.clone())
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T, zero: T) -> TruncatedSeries<T> {
        TruncatedSeries::new(self.valuation, self.coeffs.iter().map(f).collect(), self.prec, zero)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        TruncatedSeries { valuation: self.valuation + k, coeffs: self.coeffs.clone(), prec: self.prec + k, zero: self.zero.clone() }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(Field::neg).collect(),
            prec: self.prec,
            zero: self.zero.clone(),
        }
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::new(self.valuation, self.coeffs.iter().map(|c| c.mul(k)).collect(), self.prec, self.zero.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        let end = |a: &Self| (!a.coeffs.is_empty()).then(|| a.valuation + a.coeffs.len() as i64);
        let hi = end(self).max(end(o)).unwrap_or(prec).min(prec);
        let lo = self.valuation.min(o.valuation).min(hi);
        let coeffs = (lo..hi)
            .map(|e| {
                let a = self.coeff(e).expect("below prec");
                let b = o.coeff(e).expect("below prec");
                a.add(&b)
            })
            .collect();
        Self::new(lo, coeffs, prec, self.zero.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn add_scalar(&self, c: &S) -> Self {
        self.add(&Self::constant(c.clone(), self.prec.max(1)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prec = (self.valuation + o.prec).min(o.valuation + self.prec);
        let val = self.valuation + o.valuation;
        let n = (prec - val).max(0).min((self.coeffs.len() + o.coeffs.len()) as i64) as usize;
        if self.is_zero() || o.is_zero() || n == 0 {
            return Self::zero(prec, self.zero.clone());
        }
        let mut out = vec![self.zero.clone(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(val, out, prec, self.zero.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.zero.one_like(), i64::MAX / 4);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn inv(&self) -> Result<Self> {
        let a0 = self.leading().ok_or(SeriesError::DivisionByZero)?;
        let a0_inv = a0.inv().ok_or(SeriesError::DivisionByZero)?;
        let n = self.relative_prec() as usize;
        let mut b: Vec<S> = Vec::with_capacity(n);
        b.push(a0_inv.clone());
        for k in 1..n {
            let mut s = self.zero.clone();
            for i in 1..=k.min(self.coeffs.len() - 1) {
                s = s.add(&self.coeffs[i].mul(&b[k - i]));
            }
            b.push(s.mul(&a0_inv).neg());
        }
        let v = -self.valuation;
        Ok(Self::new(v, b, v + n as i64, self.zero.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// Square root with the branch fixed by the leading coefficient: the
    /// principal root, or its negative when that is closer to `target`.
    pub fn sqrt(&self, target: Option<&S>) -> Result<Self> {
        let Some(a0) = self.leading() else {
            return Ok(Self::zero(self.prec.div_euclid(2), self.zero.clone()));
        };
        if self.valuation.rem_euclid(2) != 0 {
            return Err(SeriesError::OddValuation(self.valuation));
        }
        let mut b0 = a0.sqrt().ok_or(SeriesError::NotASquare)?;
        if let Some(t) = target {
            if b0.neg().sub(t).log2_abs() < b0.sub(t).log2_abs() {
                b0 = b0.neg();
            }
        }
        let two_b0_inv = b0.mul_i64(2).inv().ok_or(SeriesError::NotASquare)?;
        let n = self.relative_prec() as usize;
        let mut b: Vec<S> = Vec::with_capacity(n);
        b.push(b0);
        for k in 1..n {
            let mut s = self.coeffs.get(k).cloned().unwrap_or_else(|| self.zero.clone());
            for i in 1..k {
                s = s.sub(&b[i].mul(&b[k - i]));
            }
            b.push(s.mul(&two_b0_inv));
        }
        let v = self.valuation / 2;
        Ok(Self::new(v, b, v + n as i64, self.zero.clone()))
    }

    /// Derivative with respect to `t`.
    pub fn derivative(&self) -> Self {
        let coeffs = self.terms().map(|(e, c)| c.mul_i64(e)).collect();
        Self::new(self.valuation - 1, coeffs, self.prec - 1, self.zero.clone())
    }

    /// `self(t)` with `t ↦ t^k` (k ≥ 1).
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k >= 1);
        let mut coeffs = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                coeffs.extend(std::iter::repeat_n(self.zero.clone(), (k - 1) as usize));
            }
            coeffs.push(c.clone());
        }
        Self::new(self.valuation * k, coeffs, self.prec * k, self.zero.clone())
    }
}

impl<S: Field + fmt::Display> fmt::Display for TruncatedSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{e}")?,
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(t^{})", self.prec)
    }
}

impl<S: Field> fmt::Debug for TruncatedSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncatedSeries")
            .field("valuation", &self.valuation)
            .field("coeffs", &self.coeffs)
            .field("prec", &self.prec)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;
    use num_rational::BigRational;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&n| rat(n, 1)).collect()
    }

    fn ser(val: i64, v: &[i64], prec: i64) -> TruncatedSeries<BigRational> {
        TruncatedSeries::from_coeffs(val, q(v), prec)
    }

    #[test]
    fn sqrt_examples() {
        let a = ser(0, &[1, 2, 1], 8);
        assert_eq!(a.sqrt(None).unwrap(), ser(0, &[1, 1], 8));
        // 1 + 4t² + 6t⁴ + 3t⁶ → 1 + 2t² + t⁴ − t⁶/2 + …
        let b = ser(0, &[1, 0, 4, 0, 6, 0, 3], 10);
        let r = b.sqrt(None).unwrap();
        assert_eq!(r.coeff(6), Some(rat(-1, 2)));
        assert_eq!(r.coeffs_from(0)[..5], q(&[1, 0, 2, 0, 1]));
        assert_eq!(r.mul(&r), b);
        let neg = b.sqrt(Some(&rat(-1, 1))).unwrap();
        assert_eq!(neg, r.neg());
        assert!(matches!(ser(1, &[1], 5).sqrt(None), Err(SeriesError::OddValuation(1))));
        assert!(matches!(ser(0, &[2], 5).sqrt(None), Err(SeriesError::NotASquare)));
    }

    #[test]
    fn y_series_for_the_genus_two_model() {
        // v(1/t) t⁶ = 1 + 4t² + 6t⁴ + 3t⁶, y = t⁻³ sqrt(...)
        let v = ser(-6, &[1, 0, 4, 0, 6, 0, 3], 6);
        let y = v.sqrt(None).unwrap();
        assert_eq!(y.valuation(), Some(-3));
        assert_eq!(y.coeff(-3), Some(rat(1, 1)));
        assert_eq!(y.coeff(-2), Some(rat(0, 1)));
        assert_eq!(y.coeff(-1), Some(rat(2, 1)));
        assert_eq!(y.coeff(1), Some(rat(1, 1)));
        assert_eq!(y.coeff(3), Some(rat(-1, 2)));
    }

    #[test]
    fn precision_bookkeeping() {
        let a = ser(-1, &[1, 2, 3], 2);
        let b = ser(2, &[5], 4);
        let p = a.mul(&b);
        assert_eq!((p.valuation(), p.prec()), (Some(1), 3));
        let s = a.add(&b);
        assert_eq!(s.prec(), 2);
        let i = a.inv().unwrap();
        assert_eq!((i.valuation(), i.prec()), (Some(1), 4));
        assert_eq!(i.mul(&a).truncate(3), ser(0, &[1], 3));
        assert!(TruncatedSeries::zero(3, rat(0, 1)).inv().is_err());
        let d = ser(0, &[7, 1, 1], 3).derivative();
        assert_eq!(d, ser(0, &[1, 2], 2));
        assert_eq!(ser(0, &[1, 1], 3).substitute_power(2), ser(0, &[1, 0, 1], 6));
    }
}
