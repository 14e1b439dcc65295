//! Belyi map ansätze `φ = u·φ0/φ∞` in genus 0 and 1, the polynomial system
//! imposing the ramification, and plain Newton iteration on it.

use std::fmt;

use crate::complex::BigComplex;
use crate::error::{Result, SeriesError};
use crate::field::{Dual, Field};
use crate::local::{expand_at_point_unchecked, is_two_torsion};
use crate::model::{EllipticModel, HyperellipticModel};
use crate::poly::Poly;
use crate::series::TruncatedSeries;

/// `x^i·y^j`; its pole order at `∞` is its weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub x: usize,
    pub y: usize,
}

impl Monomial {
    /// Pole order at `∞`: `i` on the line, `2i + 3j` on an elliptic curve.
    pub fn weight(&self, genus: usize) -> usize {
        if genus == 0 {
            self.x
        } else {
            2 * self.x + 3 * self.y
        }
    }

    pub fn eval<S: Field>(&self, x: &S, y: &S) -> S {
        x.pow(self.x as u32).mul(&y.pow(self.y as u32))
    }

    fn eval_series<S: Field>(&self, x: &TruncatedSeries<S>, y: Option<&TruncatedSeries<S>>) -> TruncatedSeries<S> {
        let mut s = x.pow(self.x as u32);
        if self.y > 0 {
            s = s.mul(&y.expect("elliptic point").pow(self.y as u32));
        }
        s
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.x, self.y) {
            (0, 0) => write!(f, "1"),
            (0, _) => write!(f, "y"),
            (1, 0) => write!(f, "x"),
            (1, _) => write!(f, "xy"),
            (i, 0) => write!(f, "x^{i}"),
            (i, _) => write!(f, "x^{i}y"),
        }
    }
}

/// Basis of `L(m∞)` by increasing pole order: `x^k` in genus 0;
/// `1, x, y, x², xy, …` in genus 1 (no pole order 1).
pub fn monomial_basis(genus: usize, m: usize) -> Vec<Monomial> {
    match genus {
        0 => (0..=m).map(|k| Monomial { x: k, y: 0 }).collect(),
        1 => (0..=m)
            .filter(|&k| k != 1)
            .map(|k| if k % 2 == 0 { Monomial { x: k / 2, y: 0 } } else { Monomial { x: (k - 3) / 2, y: 1 } })
            .collect(),
        _ => panic!("monomial bases are for genus 0 and 1"),
    }
}

/// Largest pole order `≤ t` attained by a function with poles only at `∞`.
pub fn attainable_pole(genus: usize, t: usize) -> usize {
    if genus == 1 && t == 1 {
        0
    } else {
        t
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MapCurve<S: Field> {
    Line,
    Elliptic(EllipticModel<S>),
}

impl<S: Field> MapCurve<S> {
    pub fn genus(&self) -> usize {
        match self {
            MapCurve::Line => 0,
            MapCurve::Elliptic(_) => 1,
        }
    }
}

/// `φ = u·φ0/φ∞` with `φ0`, `φ∞` given by coefficients against
/// [`monomial_basis`]; the last coefficient of each is the leading one.
#[derive(Clone, Debug, PartialEq)]
pub struct BelyiMapAnsatz<S: Field> {
    pub curve: MapCurve<S>,
    pub u: S,
    pub phi0: Vec<S>,
    pub phi_inf: Vec<S>,
}

impl<S: Field> BelyiMapAnsatz<S> {
    pub fn genus(&self) -> usize {
        self.curve.genus()
    }

    pub fn phi0_basis(&self) -> Vec<Monomial> {
        basis_of_len(self.genus(), self.phi0.len())
    }

    pub fn phi_inf_basis(&self) -> Vec<Monomial> {
        basis_of_len(self.genus(), self.phi_inf.len())
    }

    /// Pole orders of `φ0` and `φ∞` at `∞`.
    pub fn pole_orders(&self) -> (usize, usize) {
        let g = self.genus();
        let top = |b: Vec<Monomial>| b.last().map(|m| m.weight(g)).unwrap_or(0);
        (top(self.phi0_basis()), top(self.phi_inf_basis()))
    }

    pub fn phi0_at(&self, x: &S, y: &S) -> S {
        combine(&self.phi0, &self.phi0_basis(), x, y)
    }

    pub fn phi_inf_at(&self, x: &S, y: &S) -> S {
        combine(&self.phi_inf, &self.phi_inf_basis(), x, y)
    }

    /// `φ(x, y)`; `None` at a pole.
    pub fn eval(&self, x: &S, y: &S) -> Option<S> {
        self.u.mul(&self.phi0_at(x, y)).div(&self.phi_inf_at(x, y))
    }

    /// Numerator `u·φ0` and denominator `φ∞` as `a(x) + b(x)·y` pairs.
    pub fn as_fraction(&self) -> (Poly<S>, Poly<S>, Poly<S>, Poly<S>) {
        let split = |coeffs: &[S], basis: &[Monomial], k: &S| {
            let zero = k.zero_like();
            let mut a = vec![zero.clone(); basis.len() + 1];
            let mut b = vec![zero; basis.len() + 1];
            for (c, m) in coeffs.iter().zip(basis) {
                let slot = if m.y == 0 { &mut a } else { &mut b };
                slot[m.x] = slot[m.x].add(&c.mul(k));
            }
            (Poly::new(a), Poly::new(b))
        };
        let one = self.u.one_like();
        let (a0, b0) = split(&self.phi0, &self.phi0_basis(), &self.u);
        let (ai, bi) = split(&self.phi_inf, &self.phi_inf_basis(), &one);
        (a0, b0, ai, bi)
    }

    /// Scales `φ0` and `φ∞` to leading coefficient 1, absorbing the change in `u`.
    pub fn normalize_leading(&self) -> Result<Self> {
        let l0 = self.phi0.last().ok_or(SeriesError::ConstantMap)?;
        let li = self.phi_inf.last().ok_or(SeriesError::ConstantMap)?;
        let i0 = l0.inv().ok_or(SeriesError::ZeroScale)?;
        let ii = li.inv().ok_or(SeriesError::ZeroScale)?;
        Ok(BelyiMapAnsatz {
            curve: self.curve.clone(),
            u: self.u.mul(l0).mul(&ii),
            phi0: self.phi0.iter().map(|c| c.mul(&i0)).collect(),
            phi_inf: self.phi_inf.iter().map(|c| c.mul(&ii)).collect(),
        })
    }
}

fn basis_of_len(genus: usize, len: usize) -> Vec<Monomial> {
    let mut m = len;
    loop {
        let b = monomial_basis(genus, m);
        if b.len() >= len {
            return b[..len].to_vec();
        }
        m += 1;
    }
}

fn combine<S: Field>(coeffs: &[S], basis: &[Monomial], x: &S, y: &S) -> S {
    coeffs.iter().zip(basis).fold(x.zero_like(), |acc, (c, m)| acc.add(&c.mul(&m.eval(x, y))))
}

/// Which fibre a point lies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Fibre {
    Zero,
    One,
    Infinity,
}

impl fmt::Display for Fibre {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fibre::Zero => "0",
            Fibre::One => "1",
            Fibre::Infinity => "inf",
        })
    }
}

/// Ramification partitions over `0, 1, ∞` and the length of the cycle of
/// `σ0` placed at the curve's point at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationData {
    pub lambda: [Vec<usize>; 3],
    pub marked: usize,
}

impl RamificationData {
    pub fn new(mut lambda: [Vec<usize>; 3], marked: usize) -> Result<Self> {
        for l in &mut lambda {
            l.sort_unstable_by(|a, b| b.cmp(a));
            if l.contains(&0) {
                return Err(SeriesError::Invalid("partition with a zero part".into()));
            }
        }
        let d: usize = lambda[0].iter().sum();
        if d == 0 || lambda.iter().any(|l| l.iter().sum::<usize>() != d) {
            return Err(SeriesError::Invalid(format!("partitions {lambda:?} do not have a common sum")));
        }
        if !lambda[0].contains(&marked) {
            return Err(SeriesError::Invalid(format!("no part {marked} over 0 for the point at infinity")));
        }
        Ok(RamificationData { lambda, marked })
    }

    pub fn degree(&self) -> usize {
        self.lambda[0].iter().sum()
    }

    /// From Riemann–Hurwitz; `None` if not a nonnegative integer.
    pub fn genus(&self) -> Option<usize> {
        let d = self.degree() as i64;
        let ram: i64 = self.lambda.iter().map(|l| d - l.len() as i64).sum();
        let twice = ram - 2 * d + 2;
        (twice >= 0 && twice % 2 == 0).then_some((twice / 2) as usize)
    }

    /// Points other than `∞`, in partition order: over 0 (with one part
    /// equal to `marked` removed), over 1, over `∞`.
    pub fn finite_points(&self) -> Vec<(Fibre, usize)> {
        let mut over_zero = self.lambda[0].clone();
        let pos = over_zero.iter().position(|&e| e == self.marked).expect("checked in new");
        over_zero.remove(pos);
        let mut out: Vec<(Fibre, usize)> = over_zero.into_iter().map(|e| (Fibre::Zero, e)).collect();
        out.extend(self.lambda[1].iter().map(|&e| (Fibre::One, e)));
        out.extend(self.lambda[2].iter().map(|&e| (Fibre::Infinity, e)));
        out
    }
}

/// Assembled system: unknowns, equations and the fixed data.
#[derive(Clone, Debug)]
pub struct NewtonSystem {
    genus: usize,
    phi0_basis: Vec<Monomial>,
    phi_inf_basis: Vec<Monomial>,
    /// Leading coefficients of `φ0` and `φ∞`, held fixed.
    phi0_lead: BigComplex,
    phi_inf_lead: BigComplex,
    points: Vec<(Fibre, usize)>,
    extra: usize,
    pins: Vec<(usize, BigComplex)>,
    names: Vec<String>,
    equations: usize,
}

/// A variable fixed to a value by an extra equation `variable − value`.
#[derive(Clone, Debug, PartialEq)]
pub struct Pin {
    pub name: String,
    pub value: BigComplex,
}

/// Coefficient names carry the pole order of their monomial: `a{w}` for
/// `φ0`, `b{w}` for `φ∞`.
pub fn build_newton_system(ansatz: &BelyiMapAnsatz<BigComplex>, ram: &RamificationData, pins: &[Pin]) -> Result<NewtonSystem> {
    let g = ansatz.genus();
    if ram.genus() != Some(g) {
        return Err(SeriesError::Invalid(format!("ramification has genus {:?}, ansatz genus {g}", ram.genus())));
    }
    let d = ram.degree();
    let s = ram.marked;
    let t = attainable_pole(g, d - s + g);
    let (p0, pi) = ansatz.pole_orders();
    if p0 != t || pi != s + t {
        return Err(SeriesError::Invalid(format!(
            "pole orders ({p0}, {pi}) of the ansatz, expected ({t}, {})",
            s + t
        )));
    }
    let extra = s + t - d;
    let phi0_basis = ansatz.phi0_basis();
    let phi_inf_basis = ansatz.phi_inf_basis();
    let mut names = vec!["u".to_string()];
    if g == 1 {
        names.push("c4".into());
        names.push("c6".into());
    }
    for m in &phi0_basis[..phi0_basis.len() - 1] {
        names.push(format!("a{}", m.weight(g)));
    }
    for m in &phi_inf_basis[..phi_inf_basis.len() - 1] {
        names.push(format!("b{}", m.weight(g)));
    }
    let points = ram.finite_points();
    let mut equations = 0;
    for (k, (_, e)) in points.iter().enumerate() {
        names.push(format!("P{k}.x"));
        if g == 1 {
            names.push(format!("P{k}.y"));
            equations += 1;
        }
        equations += e;
    }
    for k in 0..extra {
        names.push(format!("Q{k}.x"));
        names.push(format!("Q{k}.y"));
        equations += 3;
    }
    let mut pin_idx = Vec::new();
    for p in pins {
        let i = names
            .iter()
            .position(|n| *n == p.name)
            .ok_or_else(|| SeriesError::Invalid(format!("no variable named {}", p.name)))?;
        pin_idx.push((i, p.value.clone()));
    }
    equations += pins.len();
    if d > 1 && equations != names.len() {
        return Err(SeriesError::NonSquare { equations, variables: names.len() });
    }
    Ok(NewtonSystem {
        genus: g,
        phi0_lead: ansatz.phi0.last().expect("nonempty").clone(),
        phi_inf_lead: ansatz.phi_inf.last().expect("nonempty").clone(),
        phi0_basis,
        phi_inf_basis,
        points,
        extra,
        pins: pin_idx,
        names: if d > 1 { names } else { Vec::new() },
        equations: if d > 1 { equations } else { 0 },
    })
}

/// Values of everything the system solves for.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemPoint<S: Field> {
    pub ansatz: BelyiMapAnsatz<S>,
    /// Ramification points in [`RamificationData::finite_points`] order
    /// (`y` ignored in genus 0).
    pub points: Vec<(S, S)>,
    /// Extra common zeros of `φ0` and `φ∞`.
    pub extra: Vec<(S, S)>,
}

impl NewtonSystem {
    pub fn variables(&self) -> &[String] {
        &self.names
    }

    pub fn equation_count(&self) -> usize {
        self.equations
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Ramification points with their fibre and multiplicity.
    pub fn points(&self) -> &[(Fibre, usize)] {
        &self.points
    }

    pub fn extra_points(&self) -> usize {
        self.extra
    }

    /// Flattens in variable order.
    pub fn pack(&self, p: &SystemPoint<BigComplex>) -> Vec<BigComplex> {
        if self.is_empty() {
            return Vec::new();
        }
        let mut v = vec![p.ansatz.u.clone()];
        if let MapCurve::Elliptic(e) = &p.ansatz.curve {
            v.push(e.c4.clone());
            v.push(e.c6.clone());
        }
        v.extend(p.ansatz.phi0[..p.ansatz.phi0.len() - 1].iter().cloned());
        v.extend(p.ansatz.phi_inf[..p.ansatz.phi_inf.len() - 1].iter().cloned());
        for (x, y) in &p.points {
            v.push(x.clone());
            if self.genus == 1 {
                v.push(y.clone());
            }
        }
        for (x, y) in &p.extra {
            v.push(x.clone());
            v.push(y.clone());
        }
        v
    }

    /// Inverse of [`pack`](Self::pack), over any scalar domain.
    pub fn unpack<S: ComplexScalar>(&self, v: &[S]) -> SystemPoint<S> {
        let like = &v[0];
        let lift = |c: &BigComplex| lift_constant(c, like);
        let mut it = v.iter().cloned();
        let mut next = || it.next().expect("variable count");
        let u = next();
        let curve = if self.genus == 1 {
            let c4 = next();
            let c6 = next();
            MapCurve::Elliptic(EllipticModel { c4, c6 })
        } else {
            MapCurve::Line
        };
        let mut phi0: Vec<S> = (1..self.phi0_basis.len()).map(|_| next()).collect();
        phi0.push(lift(&self.phi0_lead));
        let mut phi_inf: Vec<S> = (1..self.phi_inf_basis.len()).map(|_| next()).collect();
        phi_inf.push(lift(&self.phi_inf_lead));
        let points = self
            .points
            .iter()
            .map(|_| {
                let x = next();
                let y = if self.genus == 1 { next() } else { x.zero_like() };
                (x, y)
            })
            .collect();
        let extra = (0..self.extra).map(|_| (next(), next())).collect();
        SystemPoint { ansatz: BelyiMapAnsatz { curve, u, phi0, phi_inf }, points, extra }
    }

    /// Equations in order: per point its on-curve equation then the
    /// vanishing coefficients; per extra zero (on-curve, φ0, φ∞); pins.
    pub fn residual<S: ComplexScalar>(&self, v: &[S]) -> Result<Vec<S>> {
        if self.is_empty() {
            return Ok(Vec::new());
        }
        let sp = self.unpack(v);
        let a = &sp.ansatz;
        let model = match &a.curve {
            MapCurve::Elliptic(e) => Some(elliptic_unchecked(e)?),
            MapCurve::Line => None,
        };
        let mut out = Vec::with_capacity(self.equations);
        for ((fibre, e), (x0, y0)) in self.points.iter().zip(&sp.points) {
            let (xs, ys) = match &model {
                Some(m) => {
                    out.push(m.residual(x0, y0));
                    let l = expand_at_point_unchecked(m, x0, y0, *e)?;
                    (l.x, Some(l.y))
                }
                None => {
                    let one = x0.one_like();
                    (TruncatedSeries::new(0, vec![x0.clone(), one], *e as i64 + 1, x0.zero_like()), None)
                }
            };
            let phi0 = series_combination(&a.phi0, &self.phi0_basis, &xs, ys.as_ref());
            let phi_inf = series_combination(&a.phi_inf, &self.phi_inf_basis, &xs, ys.as_ref());
            let target = match fibre {
                Fibre::Zero => phi0,
                Fibre::One => phi0.scale(&a.u).sub(&phi_inf),
                Fibre::Infinity => phi_inf,
            };
            for k in 0..*e as i64 {
                out.push(target.coeff(k).expect("expanded to the multiplicity"));
            }
        }
        for (x0, y0) in &sp.extra {
            let m = model.as_ref().expect("extra zeros only in genus 1");
            out.push(m.residual(x0, y0));
            out.push(a.phi0_at(x0, y0));
            out.push(a.phi_inf_at(x0, y0));
        }
        for (i, value) in &self.pins {
            out.push(v[*i].sub(&lift_constant(value, &v[0])));
        }
        Ok(out)
    }

    /// Residual and Jacobian by forward-mode differentiation.
    pub fn jacobian(&self, v: &[BigComplex]) -> Result<(Vec<BigComplex>, Vec<Vec<BigComplex>>)> {
        let n = v.len();
        let duals: Vec<Dual<BigComplex>> = v.iter().enumerate().map(|(i, x)| Dual::variable(x.clone(), i, n)).collect();
        let r = self.residual(&duals)?;
        let zero = v[0].zero_like();
        let values = r.iter().map(|d| d.value.clone()).collect();
        let rows = r
            .into_iter()
            .map(|d| (0..n).map(|j| d.grad.get(j).cloned().unwrap_or_else(|| zero.clone())).collect())
            .collect();
        Ok((values, rows))
    }
}

/// Scalars that can hold a complex constant: the working domain of the
/// system and its dual numbers.
pub trait ComplexScalar: Field {
    fn lift(&self, c: &BigComplex) -> Self;
}

impl ComplexScalar for BigComplex {
    fn lift(&self, c: &BigComplex) -> Self {
        c.clone()
    }
}

impl ComplexScalar for Dual<BigComplex> {
    fn lift(&self, c: &BigComplex) -> Self {
        Dual::constant(c.clone())
    }
}

fn lift_constant<S: ComplexScalar>(c: &BigComplex, like: &S) -> S {
    like.lift(c)
}

fn elliptic_unchecked<S: Field>(e: &EllipticModel<S>) -> Result<HyperellipticModel<S>> {
    HyperellipticModel::new(1, Poly::zero(), e.cubic())
}

fn series_combination<S: Field>(
    coeffs: &[S],
    basis: &[Monomial],
    x: &TruncatedSeries<S>,
    y: Option<&TruncatedSeries<S>>,
) -> TruncatedSeries<S> {
    let zero = coeffs[0].zero_like();
    let mut acc = TruncatedSeries::zero(x.prec(), zero);
    for (c, m) in coeffs.iter().zip(basis) {
        acc = acc.add(&m.eval_series(x, y).scale(c));
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NewtonOptions {
    pub max_iterations: usize,
    /// Consecutive steps without a decrease in the residual before giving up.
    pub stall_limit: usize,
    /// Give up once `log2` of the residual exceeds its starting value by this much.
    pub blowup_log2: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions { max_iterations: 40, stall_limit: 3, blowup_log2: 64.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IterationRecord {
    pub iteration: usize,
    /// `log10` of the max-norm of the residual after the step.
    pub residual_log10: f64,
    /// `log10` of the max-norm of the step.
    pub step_log10: f64,
}

#[derive(Clone, Debug)]
pub struct NewtonOutcome {
    pub solution: Vec<BigComplex>,
    pub initial_residual_log10: f64,
    pub log: Vec<IterationRecord>,
}

fn max_log2(v: &[BigComplex]) -> f64 {
    v.iter().map(Field::log2_abs).fold(f64::NEG_INFINITY, f64::max)
}

/// Newton iteration until the residual max-norm drops below
/// `10^-target_digits`, working at the precision of `initial`.
pub fn newton_solve(sys: &NewtonSystem, initial: &[BigComplex], target_digits: usize, opts: NewtonOptions) -> Result<NewtonOutcome> {
    if initial.len() != sys.names.len() {
        return Err(SeriesError::Invalid(format!("{} initial values for {} variables", initial.len(), sys.names.len())));
    }
    if sys.is_empty() {
        return Ok(NewtonOutcome { solution: Vec::new(), initial_residual_log10: f64::NEG_INFINITY, log: Vec::new() });
    }
    if sys.genus == 1 {
        let sp = sys.unpack(initial);
        let MapCurve::Elliptic(e) = &sp.ansatz.curve else { unreachable!() };
        let m = elliptic_unchecked(e)?;
        if sp.points.iter().any(|(x, y)| is_two_torsion(&m, x, y)) {
            return Err(SeriesError::TwoTorsion);
        }
    }
    let target_log2 = -(target_digits as f64) * std::f64::consts::LOG2_10;
    let tol = initial[0].log2_tol(0.9);
    let mut v = initial.to_vec();
    let mut r = sys.residual(&v)?;
    let start = max_log2(&r);
    let mut best = start;
    let mut stalled = 0;
    let mut log = Vec::new();
    for iteration in 1..=opts.max_iterations {
        if max_log2(&r) < target_log2 {
            break;
        }
        let (values, jac) = sys.jacobian(&v)?;
        let rhs: Vec<BigComplex> = values.iter().map(Field::neg).collect();
        let step = crate::linalg::lu_solve(jac, rhs, tol)?;
        for (x, dx) in v.iter_mut().zip(&step) {
            *x = x.add(dx);
        }
        r = sys.residual(&v)?;
        let now = max_log2(&r);
        log.push(IterationRecord {
            iteration,
            residual_log10: now / std::f64::consts::LOG2_10,
            step_log10: max_log2(&step) / std::f64::consts::LOG2_10,
        });
        if !now.is_finite() && now != f64::NEG_INFINITY || now > start + opts.blowup_log2 {
            return Err(SeriesError::Diverged { iterations: iteration, residual_log2: now });
        }
        if now < best {
            best = now;
            stalled = 0;
        } else {
            stalled += 1;
            if stalled >= opts.stall_limit {
                return Err(SeriesError::Diverged { iterations: iteration, residual_log2: now });
            }
        }
    }
    let last = max_log2(&r);
    if last >= target_log2 {
        return Err(SeriesError::Diverged { iterations: log.len(), residual_log2: last });
    }
    Ok(NewtonOutcome { solution: v, initial_residual_log10: start / std::f64::consts::LOG2_10, log })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bases() {
        let b = monomial_basis(1, 8);
        let names: Vec<String> = b.iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["1", "x", "y", "x^2", "xy", "x^3", "x^2y", "x^4"]);
        assert_eq!(monomial_basis(1, 2).len(), 2);
        assert_eq!(monomial_basis(1, 0).len(), 1);
        assert_eq!(monomial_basis(0, 3).len(), 4);
        assert_eq!(attainable_pole(1, 1), 0);
        assert_eq!(attainable_pole(0, 1), 1);
    }

    #[test]
    fn ramification_data() {
        let r = RamificationData::new([vec![6, 1], vec![1, 6], vec![2, 3, 2]], 6).unwrap();
        assert_eq!(r.genus(), Some(1));
        assert_eq!(r.finite_points(), vec![(Fibre::Zero, 1), (Fibre::One, 6), (Fibre::One, 1), (Fibre::Infinity, 3), (Fibre::Infinity, 2), (Fibre::Infinity, 2)]);
        assert!(RamificationData::new([vec![6, 1], vec![7], vec![7]], 5).is_err());
        assert!(RamificationData::new([vec![6], vec![7], vec![7]], 6).is_err());
    }
}
