//! Checks that a rational function on a curve over ℚ has the stated
//! ramification over `0, 1, ∞`.
//!
//! On the line everything is exact: multiplicities come from squarefree
//! decompositions of `A`, `A − B`, `B`. On `y² + uy = v` the divisor of
//! `F = P + Qy` is computed from exact data as far as possible: with
//! `h = gcd(P, Q)` and `F = h·(P′ + Q′y)`, the multiplicities are those of
//! the squarefree parts of `h` and of the norm `P′² − P′Q′u − Q′²v`;
//! only the location of each point (to tell points apart and to cancel
//! zeros against poles) is numerical.

use std::fmt;

use num_rational::BigRational;

use crate::complex::BigComplex;
use crate::error::{Result, SeriesError};
use crate::field::Field;
use crate::model::{CurveFunction, HyperellipticModel, InfinityPoint, Parity};
use crate::newton::{BelyiMapAnsatz, Fibre, MapCurve};
use crate::poly::Poly;
use crate::series::TruncatedSeries;

#[derive(Clone, Debug, PartialEq)]
pub enum VerifyCurve {
    Line,
    Hyperelliptic(HyperellipticModel<BigRational>),
}

/// `φ = numerator/denominator`, each `a(x) + b(x)·y` (`b = 0` on the line).
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMap {
    pub curve: VerifyCurve,
    pub numerator: CurveFunction<BigRational>,
    pub denominator: CurveFunction<BigRational>,
}

impl RationalMap {
    pub fn from_ansatz(a: &BelyiMapAnsatz<BigRational>) -> Result<Self> {
        let curve = match &a.curve {
            MapCurve::Line => VerifyCurve::Line,
            MapCurve::Elliptic(e) => VerifyCurve::Hyperelliptic(e.to_hyperelliptic()),
        };
        let (a0, b0, ai, bi) = a.as_fraction();
        Ok(RationalMap { curve, numerator: CurveFunction::new(a0, b0), denominator: CurveFunction::new(ai, bi) })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibreReport {
    pub fibre: Fibre,
    pub expected: Vec<usize>,
    pub found: Vec<usize>,
}

impl FibreReport {
    pub fn ok(&self) -> bool {
        self.expected == self.found
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Points could not be told apart at the working precision.
    Inconclusive(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationReport {
    pub degree: usize,
    pub fibres: Vec<FibreReport>,
    pub verdict: Verdict,
}

impl RamificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn fmt_partition(p: &[usize]) -> String {
    if p.is_empty() {
        return "-".into();
    }
    p.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for RamificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree {}", self.degree)?;
        for r in &self.fibres {
            writeln!(
                f,
                "over {}: found {} expected {} {}",
                r.fibre,
                fmt_partition(&r.found),
                fmt_partition(&r.expected),
                if r.ok() { "ok" } else { "MISMATCH" }
            )?;
        }
        match &self.verdict {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail => write!(f, "fail"),
            Verdict::Inconclusive(why) => write!(f, "inconclusive: {why}"),
        }
    }
}

fn sorted_desc(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Compares the ramification of `map` with `expected` (over 0, 1, ∞).
/// `digits` is the working precision for locating points in genus ≥ 1.
pub fn verify_ramification(map: &RationalMap, expected: &[Vec<usize>; 3], digits: usize) -> Result<RamificationReport> {
    let (degree, found) = match &map.curve {
        VerifyCurve::Line => line_ramification(map)?,
        VerifyCurve::Hyperelliptic(m) => match curve_ramification(m, map, digits)? {
            Ok(x) => x,
            Err(why) => {
                return Ok(RamificationReport {
                    degree: 0,
                    fibres: fibre_reports(expected, &[vec![], vec![], vec![]]),
                    verdict: Verdict::Inconclusive(why),
                })
            }
        },
    };
    let fibres = fibre_reports(expected, &found);
    let verdict = if fibres.iter().all(FibreReport::ok) { Verdict::Pass } else { Verdict::Fail };
    Ok(RamificationReport { degree, fibres, verdict })
}

fn fibre_reports(expected: &[Vec<usize>; 3], found: &[Vec<usize>; 3]) -> Vec<FibreReport> {
    [Fibre::Zero, Fibre::One, Fibre::Infinity]
        .into_iter()
        .enumerate()
        .map(|(i, fibre)| FibreReport { fibre, expected: sorted_desc(expected[i].clone()), found: found[i].clone() })
        .collect()
}

fn line_ramification(map: &RationalMap) -> Result<(usize, [Vec<usize>; 3])> {
    if !map.numerator.b.is_zero() || !map.denominator.b.is_zero() {
        return Err(SeriesError::Invalid("maps on the line have no y part".into()));
    }
    let (a, b) = (&map.numerator.a, &map.denominator.a);
    if b.is_zero() {
        return Err(SeriesError::DivisionByZero);
    }
    let g = a.gcd(b);
    let a = a.divrem(&g).expect("nonzero").0;
    let b = b.divrem(&g).expect("nonzero").0;
    let (da, db) = (a.degree().unwrap_or(0), b.degree().unwrap_or(0));
    let c = a.sub(&b);
    let dc = c.degree().unwrap_or(0);
    let degree = da.max(db);
    if degree == 0 {
        return Err(SeriesError::ConstantMap);
    }
    let mut fibres = [mults(&a), mults(&c), mults(&b)];
    // the point at infinity lies over 0, 1 or ∞ only if its value is one of them
    if db > da {
        fibres[0].push(db - da);
    } else if da > db {
        fibres[2].push(da - db);
    } else if dc < da {
        fibres[1].push(da - dc);
    }
    Ok((degree, fibres.map(sorted_desc)))
}

fn mults(p: &Poly<BigRational>) -> Vec<usize> {
    crate::poly::root_multiplicities(p)
}

/// A place of the curve and the order of a function there.
#[derive(Clone, Debug)]
enum Place {
    Finite(BigComplex, BigComplex),
    Infinity(InfinityPoint),
}

type Divisor = Vec<(Place, i64)>;

struct CurveContext<'a> {
    model: &'a HyperellipticModel<BigRational>,
    f: Poly<BigRational>,
    digits: usize,
}

impl CurveContext<'_> {
    fn c(&self, q: &BigRational) -> BigComplex {
        BigComplex::from_rational(q, self.digits)
    }

    /// Roots of a squarefree factor, split into those that are branch
    /// points and those that are not.
    fn roots(&self, p: &Poly<BigRational>) -> Result<(Vec<BigComplex>, Vec<BigComplex>)> {
        let branch = p.gcd(&self.f);
        let plain = p.divrem(&branch).expect("nonzero").0;
        let find = |q: &Poly<BigRational>| -> Result<Vec<BigComplex>> {
            if q.degree().is_none_or(|d| d == 0) {
                return Ok(Vec::new());
            }
            q.to_complex(self.digits).roots().ok_or_else(|| SeriesError::Invalid("root finding did not converge".into()))
        };
        Ok((find(&branch)?, find(&plain)?))
    }

    fn branch_point(&self, r: &BigComplex) -> Place {
        let u = self.model.u().to_complex(self.digits).eval(r);
        let half = r.from_i64_like(2).inv().expect("char 0");
        Place::Finite(r.clone(), u.neg().mul(&half))
    }

    /// Finite part of `div F`.
    fn finite_divisor(&self, func: &CurveFunction<BigRational>) -> Result<Divisor> {
        let (p, q) = (&func.a, &func.b);
        let h = p.gcd(q);
        let p1 = p.divrem(&h).expect("nonzero").0;
        let q1 = q.divrem(&h).expect("nonzero").0;
        let mut out = Divisor::new();
        let uc = self.model.u().to_complex(self.digits);
        let fc = self.f.to_complex(self.digits);
        let half = self.c(&BigRational::new(1.into(), 2.into()));
        for (factor, k) in h.squarefree() {
            let (branch, plain) = self.roots(&factor)?;
            for r in branch {
                out.push((self.branch_point(&r), 2 * k as i64));
            }
            for r in plain {
                let s = fc.eval(&r).sqrt().expect("complex sqrt");
                let mu = uc.eval(&r).neg();
                out.push((Place::Finite(r.clone(), mu.add(&s).mul(&half)), k as i64));
                out.push((Place::Finite(r.clone(), mu.sub(&s).mul(&half)), k as i64));
            }
        }
        let norm = p1.mul(&p1).sub(&p1.mul(&q1).mul(self.model.u())).sub(&q1.mul(&q1).mul(self.model.v()));
        let (p1c, q1c) = (p1.to_complex(self.digits), q1.to_complex(self.digits));
        for (factor, k) in norm.squarefree() {
            let (branch, plain) = self.roots(&factor)?;
            for r in branch {
                out.push((self.branch_point(&r), k as i64));
            }
            for r in plain {
                let y = p1c.eval(&r).neg().div(&q1c.eval(&r)).ok_or(SeriesError::DivisionByZero)?;
                out.push((Place::Finite(r, y), k as i64));
            }
        }
        Ok(out)
    }

    /// `deg N(F)`: the total finite order, so minus the order at infinity.
    fn norm_degree(&self, func: &CurveFunction<BigRational>) -> i64 {
        let (p, q) = (&func.a, &func.b);
        let n = p.mul(p).sub(&p.mul(q).mul(self.model.u())).sub(&q.mul(q).mul(self.model.v()));
        n.degree().unwrap_or(0) as i64
    }

    /// Order of `F` at the marked point at infinity of an even model.
    fn order_at_marked(&self, func: &CurveFunction<BigRational>) -> Result<i64> {
        let span = func.a.degree().unwrap_or(0).max(func.b.degree().unwrap_or(0) + self.model.genus() + 1);
        let rel = 2 * span + self.norm_degree(func) as usize + 8;
        match self.model.expansion_at_infinity(InfinityPoint::Marked, rel) {
            Ok((x, y)) => {
                let s = func.eval_series(&x, &y);
                s.valuation().ok_or(SeriesError::Invalid("function vanishes to the expansion order".into()))
            }
            Err(SeriesError::NotASquare) => {
                let mc = self.model.to_complex(self.digits);
                let (x, y) = mc.expansion_at_infinity(InfinityPoint::Marked, rel)?;
                let fc = CurveFunction::new(func.a.to_complex(self.digits), func.b.to_complex(self.digits));
                let s: TruncatedSeries<BigComplex> = fc.eval_series(&x, &y);
                let top = s.terms().map(|(_, c)| c.log2_abs()).fold(f64::NEG_INFINITY, f64::max);
                let tol = -(self.digits as f64) / 3.0 * std::f64::consts::LOG2_10;
                s.chop(top + tol).valuation().ok_or(SeriesError::Invalid("function vanishes to the expansion order".into()))
            }
            Err(e) => Err(e),
        }
    }

    fn divisor(&self, func: &CurveFunction<BigRational>) -> Result<Divisor> {
        if func.is_zero() {
            return Err(SeriesError::ConstantMap);
        }
        let mut d = self.finite_divisor(func)?;
        let total = self.norm_degree(func);
        match self.model.parity() {
            Parity::Odd => d.push((Place::Infinity(InfinityPoint::Marked), -total)),
            Parity::Even => {
                let at = self.order_at_marked(func)?;
                d.push((Place::Infinity(InfinityPoint::Marked), at));
                d.push((Place::Infinity(InfinityPoint::Other), -total - at));
            }
        }
        Ok(d)
    }
}

/// Sums orders at coinciding places. Places closer than `10^(−digits/3)`
/// coincide, farther than `10^(−digits/6)` are distinct; anything in
/// between is reported.
fn merge(items: Divisor, digits: usize) -> std::result::Result<Vec<(Place, i64)>, String> {
    let same = -(digits as f64) / 3.0 * std::f64::consts::LOG2_10;
    let apart = -(digits as f64) / 6.0 * std::f64::consts::LOG2_10;
    let mut out: Vec<(Place, i64)> = Vec::new();
    for (place, k) in items {
        let mut hit = None;
        for (i, (q, _)) in out.iter().enumerate() {
            match (&place, q) {
                (Place::Infinity(a), Place::Infinity(b)) if a == b => hit = Some(i),
                (Place::Finite(x1, y1), Place::Finite(x2, y2)) => {
                    let scale = x1.log2_abs().max(y1.log2_abs()).max(0.0);
                    let dist = x1.sub(x2).log2_abs().max(y1.sub(y2).log2_abs()) - scale;
                    if dist < same {
                        hit = Some(i);
                    } else if dist < apart {
                        return Err(format!("points at x = {x1} are {:.1} digits apart", -dist / std::f64::consts::LOG2_10));
                    }
                }
                _ => {}
            }
            if hit.is_some() {
                break;
            }
        }
        match hit {
            Some(i) => out[i].1 += k,
            None => out.push((place, k)),
        }
    }
    Ok(out)
}

type CurveResult = std::result::Result<(usize, [Vec<usize>; 3]), String>;

fn curve_ramification(model: &HyperellipticModel<BigRational>, map: &RationalMap, digits: usize) -> Result<CurveResult> {
    let ctx = CurveContext { model, f: model.f(), digits };
    let num = ctx.divisor(&map.numerator)?;
    let den = ctx.divisor(&map.denominator)?;
    let diff = CurveFunction::new(map.numerator.a.sub(&map.denominator.a), map.numerator.b.sub(&map.denominator.b));
    if diff.is_zero() {
        return Err(SeriesError::ConstantMap);
    }
    let one = ctx.divisor(&diff)?;
    let negate = |d: &Divisor| d.iter().map(|(p, k)| (p.clone(), -k)).collect::<Divisor>();
    let phi = match merge(num.into_iter().chain(negate(&den)).collect(), digits) {
        Ok(x) => x,
        Err(why) => return Ok(Err(why)),
    };
    let phi1 = match merge(one.into_iter().chain(negate(&den)).collect(), digits) {
        Ok(x) => x,
        Err(why) => return Ok(Err(why)),
    };
    let zeros: Vec<usize> = phi.iter().filter(|(_, k)| *k > 0).map(|(_, k)| *k as usize).collect();
    let poles: Vec<usize> = phi.iter().filter(|(_, k)| *k < 0).map(|(_, k)| (-k) as usize).collect();
    let ones: Vec<usize> = phi1.iter().filter(|(_, k)| *k > 0).map(|(_, k)| *k as usize).collect();
    let degree: usize = poles.iter().sum();
    if degree == 0 {
        return Err(SeriesError::ConstantMap);
    }
    if zeros.iter().sum::<usize>() != degree || ones.iter().sum::<usize>() != degree {
        return Ok(Err(format!(
            "orders do not balance: zeros {}, ones {}, poles {degree}",
            zeros.iter().sum::<usize>(),
            ones.iter().sum::<usize>()
        )));
    }
    Ok(Ok((degree, [sorted_desc(zeros), sorted_desc(ones), sorted_desc(poles)])))
}
