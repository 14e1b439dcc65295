//! JSON forms of series, models, maps and Newton problems. Rationals are
//! `"p/q"` strings; complex numbers are `[re, im]` decimal strings.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::complex::BigComplex;
use crate::error::{Result, SeriesError};
use crate::field::{format_rational, parse_rational, Field};
use crate::model::{CurveFunction, EllipticModel, HyperellipticModel};
use crate::newton::{
    build_newton_system, newton_solve, BelyiMapAnsatz, IterationRecord, MapCurve, NewtonOptions, NewtonSystem, Pin,
    RamificationData, SystemPoint,
};
use crate::poly::Poly;
use crate::series::TruncatedSeries;
use crate::verify::{RationalMap, VerifyCurve};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Rational(String),
    Complex([String; 2]),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub valuation: i64,
    #[serde(rename = "truncation")]
    pub prec: i64,
    pub coefficients: Vec<ScalarJson>,
    /// Working precision of complex coefficients.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digits: Option<usize>,
}

pub fn parse_q(s: &str) -> Result<BigRational> {
    parse_rational(s).ok_or_else(|| SeriesError::Parse(format!("not a rational: {s:?}")))
}

pub fn parse_poly(v: &[String]) -> Result<Poly<BigRational>> {
    Ok(Poly::new(v.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>()?))
}

pub fn complex_to_json(c: &BigComplex, digits: usize) -> [String; 2] {
    let (re, im) = c.to_decimal(digits);
    [re, im]
}

pub fn complex_from_json(v: &ScalarJson, digits: usize) -> Result<BigComplex> {
    match v {
        ScalarJson::Rational(s) => Ok(BigComplex::from_rational(&parse_q(s)?, digits)),
        ScalarJson::Complex([re, im]) => {
            BigComplex::parse(re, im, digits).ok_or_else(|| SeriesError::Parse(format!("not a complex number: [{re:?}, {im:?}]")))
        }
    }
}

impl SeriesJson {
    pub fn from_rational(s: &TruncatedSeries<BigRational>) -> Self {
        let start = s.valuation().unwrap_or(s.prec());
        SeriesJson {
            valuation: start,
            prec: s.prec(),
            coefficients: s.coeffs_from(start).iter().map(|c| ScalarJson::Rational(format_rational(c))).collect(),
            digits: None,
        }
    }

    pub fn from_complex(s: &TruncatedSeries<BigComplex>, digits: usize) -> Self {
        let start = s.valuation().unwrap_or(s.prec());
        SeriesJson {
            valuation: start,
            prec: s.prec(),
            coefficients: s.coeffs_from(start).iter().map(|c| ScalarJson::Complex(complex_to_json(c, digits))).collect(),
            digits: Some(digits),
        }
    }

    pub fn to_rational(&self) -> Result<TruncatedSeries<BigRational>> {
        let coeffs = self
            .coefficients
            .iter()
            .map(|c| match c {
                ScalarJson::Rational(s) => parse_q(s),
                ScalarJson::Complex(_) => Err(SeriesError::Parse("complex coefficient in a rational series".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncatedSeries::new(self.valuation, coeffs, self.prec, BigRational::from_integer(0.into())))
    }

    pub fn to_complex(&self, default_digits: usize) -> Result<TruncatedSeries<BigComplex>> {
        let digits = self.digits.unwrap_or(default_digits);
        let coeffs = self.coefficients.iter().map(|c| complex_from_json(c, digits)).collect::<Result<Vec<_>>>()?;
        Ok(TruncatedSeries::new(self.valuation, coeffs, self.prec, BigComplex::zero(digits)))
    }
}

/// `y² + u(x)y = v(x)`, coefficient lists from the constant term up.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelJson {
    pub genus: usize,
    #[serde(default)]
    pub u: Vec<String>,
    pub v: Vec<String>,
}

impl ModelJson {
    pub fn to_model(&self) -> Result<HyperellipticModel<BigRational>> {
        HyperellipticModel::new(self.genus, parse_poly(&self.u)?, parse_poly(&self.v)?)
    }

    pub fn from_model(m: &HyperellipticModel<BigRational>) -> Self {
        ModelJson { genus: m.genus(), u: m.u().to_strings(), v: m.v().to_strings() }
    }
}

/// `a(x) + b(x)·y`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctionJson {
    #[serde(default)]
    pub a: Vec<String>,
    #[serde(default)]
    pub b: Vec<String>,
}

impl FunctionJson {
    pub fn to_function(&self) -> Result<CurveFunction<BigRational>> {
        Ok(CurveFunction::new(parse_poly(&self.a)?, parse_poly(&self.b)?))
    }
}

/// Input of `verify`: a map on a curve (absent: the line) and the
/// expected partitions over 0, 1, ∞.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<ModelJson>,
    pub numerator: FunctionJson,
    pub denominator: FunctionJson,
    pub ramification: [Vec<usize>; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digits: Option<usize>,
}

impl VerifyJson {
    pub fn to_map(&self) -> Result<RationalMap> {
        let curve = match &self.curve {
            None => VerifyCurve::Line,
            Some(m) => VerifyCurve::Hyperelliptic(m.to_model()?),
        };
        Ok(RationalMap { curve, numerator: self.numerator.to_function()?, denominator: self.denominator.to_function()? })
    }
}

/// A Newton problem: the ansatz shape and starting values, ramification,
/// and pins. Scalars are rationals or `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NewtonJson {
    pub ramification: [Vec<usize>; 3],
    /// Length of the cycle over 0 at the point at infinity.
    pub marked: usize,
    /// Elliptic curve coefficients; absent on the line.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c4: Option<ScalarJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c6: Option<ScalarJson>,
    pub u: ScalarJson,
    pub phi0: Vec<ScalarJson>,
    pub phi_inf: Vec<ScalarJson>,
    pub points: Vec<[ScalarJson; 2]>,
    #[serde(default)]
    pub extra: Vec<[ScalarJson; 2]>,
    #[serde(default)]
    pub pins: BTreeMap<String, ScalarJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NewtonStepJson {
    pub iteration: usize,
    pub residual_log10: f64,
    pub step_log10: f64,
}

impl From<&IterationRecord> for NewtonStepJson {
    fn from(r: &IterationRecord) -> Self {
        NewtonStepJson { iteration: r.iteration, residual_log10: r.residual_log10, step_log10: r.step_log10 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NewtonResultJson {
    pub variables: Vec<String>,
    pub values: Vec<[String; 2]>,
    pub initial_residual_log10: f64,
    pub iterations: Vec<NewtonStepJson>,
}

impl NewtonJson {
    /// The system, starting vector and working precision.
    pub fn assemble(&self, digits: usize) -> Result<(NewtonSystem, Vec<BigComplex>)> {
        let c = |v: &ScalarJson| complex_from_json(v, digits);
        let curve = match (&self.c4, &self.c6) {
            (Some(a), Some(b)) => MapCurve::Elliptic(EllipticModel { c4: c(a)?, c6: c(b)? }),
            (None, None) => MapCurve::Line,
            _ => return Err(SeriesError::Parse("give both c4 and c6, or neither".into())),
        };
        let ansatz = BelyiMapAnsatz {
            curve,
            u: c(&self.u)?,
            phi0: self.phi0.iter().map(c).collect::<Result<_>>()?,
            phi_inf: self.phi_inf.iter().map(c).collect::<Result<_>>()?,
        };
        if ansatz.phi0.is_empty() || ansatz.phi_inf.is_empty() {
            return Err(SeriesError::Parse("phi0 and phi_inf need at least one coefficient".into()));
        }
        let pair = |p: &[ScalarJson; 2]| -> Result<(BigComplex, BigComplex)> { Ok((c(&p[0])?, c(&p[1])?)) };
        let point = SystemPoint {
            points: self.points.iter().map(pair).collect::<Result<_>>()?,
            extra: self.extra.iter().map(pair).collect::<Result<_>>()?,
            ansatz,
        };
        let ram = RamificationData::new(self.ramification.clone(), self.marked)?;
        let pins = self.pins.iter().map(|(name, v)| Ok(Pin { name: name.clone(), value: c(v)? })).collect::<Result<Vec<_>>>()?;
        let sys = build_newton_system(&point.ansatz, &ram, &pins)?;
        if point.points.len() != sys.points().len() || point.extra.len() != sys.extra_points() {
            return Err(SeriesError::Parse(format!(
                "expected {} ramification points and {} extra zeros",
                sys.points().len(),
                sys.extra_points()
            )));
        }
        let start = sys.pack(&point);
        Ok((sys, start))
    }

    pub fn solve(&self, digits: usize, target_digits: usize) -> Result<NewtonResultJson> {
        let (sys, start) = self.assemble(digits)?;
        let out = newton_solve(&sys, &start, target_digits, NewtonOptions::default())?;
        Ok(NewtonResultJson {
            variables: sys.variables().to_vec(),
            values: out.solution.iter().map(|v| complex_to_json(v, digits)).collect(),
            initial_residual_log10: out.initial_residual_log10,
            iterations: out.log.iter().map(NewtonStepJson::from).collect(),
        })
    }
}

/// Rounds a complex value to a nearby rational with denominator at most
/// `max_den` when it is that close (real part only, imaginary part ≈ 0).
pub fn recognize_rational(c: &BigComplex, max_den: u64, log2_tol: f64) -> Option<BigRational> {
    if c.im_f64().abs() > 2f64.powf(log2_tol) {
        return None;
    }
    let x = c.re_f64();
    for den in 1..=max_den {
        let num = (x * den as f64).round();
        let q = BigRational::new((num as i64).into(), (den as i64).into());
        if c.sub(&BigComplex::from_rational(&q, c.digits())).log2_abs() < log2_tol {
            return Some(q);
        }
    }
    None
}
