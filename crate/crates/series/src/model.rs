//! Hyperelliptic and elliptic models, functions `a(x) + b(x)·y` on them,
//! expansions at the points at infinity, Laurent tails and Riemann–Roch
//! bases of `L(m∞)`.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SeriesError};
use crate::field::Field;
use crate::poly::Poly;
use crate::series::TruncatedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    /// `deg f = 2g + 1`: one point at infinity, a Weierstrass point.
    Odd,
    /// `deg f = 2g + 2`: two points at infinity, `∞` (marked) and `∞′`.
    Even,
}

/// Which point at infinity of an even model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InfinityPoint {
    /// The marked point, where `y/x^(g+1) → (−u_(g+1) − √f0)/2`.
    Marked,
    /// The other point, where `y/x^(g+1) → (−u_(g+1) + √f0)/2`.
    Other,
}

/// `y² + u(x)·y = v(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperellipticModel<S: Field> {
    genus: usize,
    u: Poly<S>,
    v: Poly<S>,
    parity: Parity,
}

impl<S: Field> HyperellipticModel<S> {
    /// Checks the degree bounds and, over exact domains, that
    /// `f = u² + 4v` is separable.
    pub fn new(genus: usize, u: Poly<S>, v: Poly<S>) -> Result<Self> {
        if genus == 0 {
            return Err(SeriesError::Model("genus must be at least 1".into()));
        }
        if u.degree().is_some_and(|d| d > genus + 1) || v.degree().is_some_and(|d| d > 2 * genus + 2) {
            return Err(SeriesError::Model(format!("degrees too large for genus {genus}")));
        }
        let like = v.leading().or(u.leading()).ok_or_else(|| SeriesError::Model("zero model".into()))?.clone();
        let f = u.mul(&u).add(&v.scale(&like.from_i64_like(4)));
        let parity = match f.degree() {
            Some(d) if d == 2 * genus + 1 => Parity::Odd,
            Some(d) if d == 2 * genus + 2 => Parity::Even,
            d => return Err(SeriesError::Model(format!("deg(u² + 4v) = {d:?} does not fit genus {genus}"))),
        };
        if f.leading().is_some_and(Field::is_exact) && f.gcd(&f.derivative()).degree() != Some(0) {
            return Err(SeriesError::Model("u² + 4v is not separable".into()));
        }
        Ok(HyperellipticModel { genus, u, v, parity })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn u(&self) -> &Poly<S> {
        &self.u
    }

    pub fn v(&self) -> &Poly<S> {
        &self.v
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    fn like(&self) -> S {
        self.v.leading().or(self.u.leading()).expect("nonzero model").clone()
    }

    /// `f = u² + 4v`.
    pub fn f(&self) -> Poly<S> {
        let four = self.like().from_i64_like(4);
        self.u.mul(&self.u).add(&self.v.scale(&four))
    }

    /// Residual `y² + u(x)y − v(x)`.
    pub fn residual(&self, x: &S, y: &S) -> S {
        y.square().add(&self.u.eval(x).mul(y)).sub(&self.v.eval(x))
    }

    /// Expansion of `(x, y)` at a point at infinity in a uniformizer `t`,
    /// with `rel` known terms of `y` beyond its leading one. Even models use
    /// `x = 1/t`; odd models use `x = c/t²` with `c` the leading coefficient
    /// of `f`, which keeps the expansion rational.
    pub fn expansion_at_infinity(
        &self,
        point: InfinityPoint,
        rel: usize,
    ) -> Result<(TruncatedSeries<S>, TruncatedSeries<S>)> {
        let like = self.like();
        let zero = like.zero_like();
        let f = self.f();
        let deg_f = f.degree().expect("nonzero") as i64;
        let step = match self.parity {
            Parity::Even => 1,
            Parity::Odd => 2,
        };
        // f(t^-step) has valuation −step·deg f; keep `rel` terms past it
        let lead_val = -step * deg_f;
        let prec = lead_val + rel as i64 * step + 1;
        // x is exact; give it enough room that no product loses terms below `prec`
        let scale = match self.parity {
            Parity::Even => like.one_like(),
            Parity::Odd => f.leading().expect("nonzero").clone(),
        };
        let x = TruncatedSeries::new(-step, vec![scale], (rel as i64 + 2 * deg_f + 2) * step, zero.clone());
        let f_t = poly_at(&f, &x).truncate(prec);
        let mut root = f_t.sqrt(None)?;
        if point == InfinityPoint::Marked && self.parity == Parity::Even {
            root = root.neg();
        }
        let u_t = poly_at(&self.u, &x);
        let half = like.from_i64_like(2).inv().expect("char 0");
        let y = root.sub(&u_t).scale(&half);
        Ok((x, y))
    }

    /// `P_j`: the polynomial part of `x^j·y` at `∞′`, so that `x^j·y − P_j`
    /// is holomorphic there. Even models only.
    pub fn laurent_tail(&self, j: usize) -> Result<Poly<S>> {
        if self.parity == Parity::Odd {
            return Err(SeriesError::Model("odd models have a single point at infinity".into()));
        }
        let g = self.genus;
        let (_, y) = self.expansion_at_infinity(InfinityPoint::Other, j + g + 2)?;
        let like = self.like();
        let top = j + g + 1;
        let mut coeffs = vec![like.zero_like(); top + 1];
        // x^j y = t^-j y(t); the coefficient of t^-k is that of x^k
        for (k, c) in coeffs.iter_mut().enumerate() {
            *c = y.coeff(j as i64 - k as i64).ok_or(SeriesError::TooShort { needed: top + 1, have: 0 })?;
        }
        Ok(Poly::new(coeffs))
    }

    /// As [`laurent_tail`](Self::laurent_tail), with `∞′` identified as the
    /// point at infinity *not* matching the given expansion of `(x, y)` at
    /// the marked point.
    pub fn laurent_tail_matching(&self, j: usize, x_inf: &TruncatedSeries<S>, y_inf: &TruncatedSeries<S>) -> Result<Poly<S>> {
        if self.parity == Parity::Odd {
            return Err(SeriesError::Model("odd models have a single point at infinity".into()));
        }
        let g = self.genus as u32;
        let (xl, yl) = match (x_inf.leading(), y_inf.leading()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(SeriesError::DivisionByZero),
        };
        let ratio = yl.div(&xl.pow(g + 1)).ok_or(SeriesError::DivisionByZero)?;
        let like = self.like();
        let f0 = self.f().leading().expect("nonzero").clone();
        let r = f0.sqrt().ok_or(SeriesError::NotASquare)?;
        let ug = self.u.coeff(self.genus + 1).cloned().unwrap_or_else(|| like.zero_like());
        let half = like.from_i64_like(2).inv().expect("char 0");
        let marked = ug.neg().sub(&r).mul(&half);
        let other = ug.neg().add(&r).mul(&half);
        let (dm, do_) = (ratio.sub(&marked).log2_abs(), ratio.sub(&other).log2_abs());
        let scale = ratio.log2_abs().max(0.0);
        let resolved = |d: f64| d < scale - 10.0;
        if resolved(dm) && !resolved(do_) {
            self.laurent_tail(j)
        } else if resolved(do_) && !resolved(dm) {
            // the given expansion sits at the point this model calls ∞′: flip y's branch
            let flipped = HyperellipticModel { genus: self.genus, u: self.u.clone(), v: self.v.clone(), parity: self.parity };
            let (_, y) = flipped.expansion_at_infinity(InfinityPoint::Marked, j + self.genus + 2)?;
            let top = j + self.genus + 1;
            let coeffs = (0..=top).map(|k| y.coeff(j as i64 - k as i64).expect("known")).collect();
            Ok(Poly::new(coeffs))
        } else {
            Err(SeriesError::Invalid("cannot tell the points at infinity apart from the given expansion".into()))
        }
    }
}

impl HyperellipticModel<BigRational> {
    pub fn to_complex(&self, digits: usize) -> HyperellipticModel<crate::BigComplex> {
        HyperellipticModel {
            genus: self.genus,
            u: self.u.to_complex(digits),
            v: self.v.to_complex(digits),
            parity: self.parity,
        }
    }
}

/// `p(x(t))` for a polynomial and a series.
pub fn poly_at<S: Field>(p: &Poly<S>, x: &TruncatedSeries<S>) -> TruncatedSeries<S> {
    p.eval_series(x)
}

/// `a(x) + b(x)·y`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveFunction<S: Field> {
    pub a: Poly<S>,
    pub b: Poly<S>,
}

impl<S: Field> CurveFunction<S> {
    pub fn new(a: Poly<S>, b: Poly<S>) -> Self {
        CurveFunction { a, b }
    }

    pub fn eval(&self, x: &S, y: &S) -> S {
        self.a.eval(x).add(&self.b.eval(x).mul(y))
    }

    pub fn eval_series(&self, x: &TruncatedSeries<S>, y: &TruncatedSeries<S>) -> TruncatedSeries<S> {
        poly_at(&self.a, x).add(&poly_at(&self.b, x).mul(y))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

/// An element of a Riemann–Roch basis with its pole order at `∞`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisFunction<S: Field> {
    pub function: CurveFunction<S>,
    pub pole_order: usize,
}

/// Basis of `L(m∞)`, sorted by pole order. Odd models: `x^i` and
/// `x^i·(y + u/2)`; even models: `1` and `x^j·y − P_j`.
pub fn rr_basis<S: Field>(model: &HyperellipticModel<S>, m: usize) -> Result<Vec<BasisFunction<S>>> {
    let g = model.genus();
    let like = model.like();
    let one = like.one_like();
    let mut out = Vec::new();
    match model.parity() {
        Parity::Odd => {
            let half = one.mul(&like.from_i64_like(2).inv().expect("char 0"));
            for i in 0..=m / 2 {
                out.push(BasisFunction {
                    function: CurveFunction::new(Poly::monomial(one.clone(), i), Poly::zero()),
                    pole_order: 2 * i,
                });
            }
            let mut i = 0;
            while 2 * i + 2 * g < m {
                let xi = Poly::monomial(one.clone(), i);
                out.push(BasisFunction {
                    function: CurveFunction::new(xi.mul(model.u()).scale(&half), xi),
                    pole_order: 2 * i + 2 * g + 1,
                });
                i += 1;
            }
        }
        Parity::Even => {
            out.push(BasisFunction { function: CurveFunction::new(Poly::monomial(one.clone(), 0), Poly::zero()), pole_order: 0 });
            if m > g {
                for j in 0..=m - g - 1 {
                    let tail = model.laurent_tail(j)?;
                    out.push(BasisFunction {
                        function: CurveFunction::new(tail.neg(), Poly::monomial(one.clone(), j)),
                        pole_order: j + g + 1,
                    });
                }
            }
        }
    }
    out.sort_by_key(|b| b.pole_order);
    Ok(out)
}

/// Rank of the expansions of `basis` at the marked point, over
/// `extra` terms past the constant term, together with a check that every
/// function has pole order at most `m` there (and, for even models, no
/// pole at `∞′`). Returns `None` if a pole condition fails.
pub fn expansion_rank<S: Field>(model: &HyperellipticModel<S>, basis: &[BasisFunction<S>], m: usize, extra: usize) -> Result<Option<usize>> {
    let rel = m + 2 * model.genus() + 2 + extra;
    let (x, y) = model.expansion_at_infinity(InfinityPoint::Marked, rel)?;
    let other = if model.parity() == Parity::Even {
        Some(model.expansion_at_infinity(InfinityPoint::Other, rel)?)
    } else {
        None
    };
    let hi = extra as i64;
    let lo = -(m as i64);
    let mut rows = Vec::new();
    for b in basis {
        let s = b.function.eval_series(&x, &y);
        if s.valuation().is_some_and(|v| v < lo) || s.prec() <= hi {
            return Ok(None);
        }
        if let Some((xo, yo)) = &other {
            let so = b.function.eval_series(xo, yo);
            if so.valuation().is_some_and(|v| v < 0) {
                return Ok(None);
            }
        }
        rows.push((lo..=hi).map(|e| s.coeff(e).expect("known")).collect::<Vec<S>>());
    }
    let tol = model.like().log2_tol(0.5);
    Ok(Some(crate::linalg::rank(&rows, tol)))
}

/// `t = d − s + g`: `φ0 ∈ L(t∞)` and `φ∞ ∈ L((s + t)∞)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleBound {
    pub t: usize,
    pub phi0_space: usize,
    pub phi_inf_space: usize,
}

pub fn rr_pole_bound(d: usize, s: usize, g: usize) -> Result<PoleBound> {
    if s == 0 || s > d {
        return Err(SeriesError::Invalid(format!("cycle length {s} outside 1..={d}")));
    }
    let t = d - s + g;
    Ok(PoleBound { t, phi0_space: t, phi_inf_space: s + t })
}

/// `y² = x³ − 27·c4·x − 54·c6`.
#[derive(Clone, Debug, PartialEq)]
pub struct EllipticModel<S: Field> {
    pub c4: S,
    pub c6: S,
}

impl<S: Field> EllipticModel<S> {
    /// Rejects `c4³ = c6²` (exactly, or to `2^log2_tol` relative for
    /// numerical coefficients).
    pub fn new(c4: S, c6: S) -> Result<Self> {
        let disc = c4.pow(3).sub(&c6.square());
        let scale = c4.pow(3).log2_abs().max(c6.square().log2_abs());
        let degenerate = disc.is_zero() || disc.log2_abs() < scale + c4.log2_tol(0.5);
        if degenerate {
            return Err(SeriesError::Model("singular cubic (c4³ = c6²)".into()));
        }
        Ok(EllipticModel { c4, c6 })
    }

    /// `f(x) = x³ − 27·c4·x − 54·c6`.
    pub fn cubic(&self) -> Poly<S> {
        let one = self.c4.one_like();
        Poly::new(vec![self.c6.mul_i64(-54), self.c4.mul_i64(-27), one.zero_like(), one])
    }

    pub fn residual(&self, x: &S, y: &S) -> S {
        y.square().sub(&self.cubic().eval(x))
    }

    pub fn to_hyperelliptic(&self) -> HyperellipticModel<S> {
        HyperellipticModel::new(1, Poly::zero(), self.cubic()).expect("nonsingular cubic")
    }
}
