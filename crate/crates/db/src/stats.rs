//! Count tables, largest passport sizes and the irreducibility statistics.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{DbError, Result};
use crate::record::{OrbitRecord, PassportRecord};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct StatsTable {
    /// degree → genus → number of passports
    pub counts: BTreeMap<usize, BTreeMap<usize, usize>>,
    /// degree → largest passport size
    pub max_sizes: BTreeMap<usize, usize>,
    /// degree → β over all passports of degree at most that degree
    pub beta: BTreeMap<usize, BetaValue>,
}

impl StatsTable {
    pub fn degree_total(&self, d: usize) -> usize {
        self.counts.get(&d).map(|m| m.values().sum()).unwrap_or(0)
    }

    pub fn genus_total(&self, g: usize) -> usize {
        self.counts.values().filter_map(|m| m.get(&g)).sum()
    }

    pub fn grand_total(&self) -> usize {
        self.counts.values().flat_map(|m| m.values()).sum()
    }

    /// Counts for genus `0..=max` present in degree `d`, zeros filled in.
    pub fn genus_counts(&self, d: usize) -> Vec<usize> {
        let Some(m) = self.counts.get(&d) else { return Vec::new() };
        let max = m.keys().copied().max().unwrap_or(0);
        (0..=max).map(|g| m.get(&g).copied().unwrap_or(0)).collect()
    }

    /// One line per degree: `d=4: 6,2 (total 8)`.
    pub fn summary_line(&self, d: usize) -> String {
        let parts: Vec<String> = self.genus_counts(d).iter().map(|c| c.to_string()).collect();
        format!("d={d}: {} (total {})", parts.join(","), self.degree_total(d))
    }

    /// Fixed-width table, degrees as rows and genera as columns.
    pub fn render_counts(&self) -> String {
        let max_g = self.counts.values().flat_map(|m| m.keys()).copied().max().unwrap_or(0);
        let mut out = String::from("d");
        for g in 0..=max_g {
            out.push_str(&format!("\tg={g}"));
        }
        out.push_str("\ttotal\n");
        for d in self.counts.keys() {
            out.push_str(&d.to_string());
            for g in 0..=max_g {
                let c = self.counts[d].get(&g).copied().unwrap_or(0);
                out.push_str(&format!("\t{c}"));
            }
            out.push_str(&format!("\t{}\n", self.degree_total(*d)));
        }
        out.push_str("total");
        for g in 0..=max_g {
            out.push_str(&format!("\t{}", self.genus_total(g)));
        }
        out.push_str(&format!("\t{}\n", self.grand_total()));
        out
    }
}

pub fn counts_table(records: &[PassportRecord]) -> StatsTable {
    let mut t = StatsTable::default();
    for r in records {
        *t.counts.entry(r.degree).or_default().entry(r.genus).or_default() += 1;
    }
    t.max_sizes = max_size_table(records);
    t
}

pub fn max_size_table(records: &[PassportRecord]) -> BTreeMap<usize, usize> {
    let mut m: BTreeMap<usize, usize> = BTreeMap::new();
    for r in records {
        let e = m.entry(r.degree).or_default();
        *e = (*e).max(r.size);
    }
    m
}

fn ratio(a: usize, b: usize) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// `1` for a passport of size 1, else `Σ(l_i − 1)² / (l − 1)²`.
pub fn passport_weight(size: usize, parts: &[usize]) -> Result<BigRational> {
    if parts.iter().sum::<usize>() != size || parts.contains(&0) {
        return Err(DbError::OrbitSum { size, parts: parts.to_vec() });
    }
    if size == 1 {
        return Ok(BigRational::one());
    }
    let num: usize = parts.iter().map(|&l| (l - 1) * (l - 1)).sum();
    Ok(ratio(num, (size - 1) * (size - 1)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BetaValue {
    Exact(BigRational),
    /// Unresolved passports contribute anywhere in `[0, 1]`.
    Interval { low: BigRational, high: BigRational, unresolved: usize },
}

impl BetaValue {
    pub fn low(&self) -> &BigRational {
        match self {
            BetaValue::Exact(v) => v,
            BetaValue::Interval { low, .. } => low,
        }
    }

    pub fn high(&self) -> &BigRational {
        match self {
            BetaValue::Exact(v) => v,
            BetaValue::Interval { high, .. } => high,
        }
    }
}

impl fmt::Display for BetaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let approx = |v: &BigRational| v.to_f64().unwrap_or(f64::NAN);
        match self {
            BetaValue::Exact(v) => write!(f, "{v} ~ {:.5}", approx(v)),
            BetaValue::Interval { low, high, unresolved } => write!(
                f,
                "[{low}, {high}] ~ [{:.5}, {:.5}] ({unresolved} unresolved)",
                approx(low),
                approx(high)
            ),
        }
    }
}

/// β over passports of degree at most `d`. Passports of size ≥ 2 without
/// orbit data are unresolved.
pub fn beta(records: &[PassportRecord], orbits: &[OrbitRecord], d: usize) -> Result<BetaValue> {
    let by_key: HashMap<&str, &OrbitRecord> = orbits.iter().map(|o| (o.key.as_str(), o)).collect();
    let mut known = BigRational::zero();
    let mut n = 0usize;
    let mut unresolved = 0usize;
    for r in records.iter().filter(|r| r.degree <= d) {
        n += 1;
        if r.size == 1 {
            known += BigRational::one();
            continue;
        }
        match by_key.get(r.key.as_str()) {
            Some(o) => known += passport_weight(r.size, &o.orbits)?,
            None => unresolved += 1,
        }
    }
    if n == 0 {
        return Ok(BetaValue::Exact(BigRational::one()));
    }
    let scale = ratio(1, n);
    if unresolved == 0 {
        return Ok(BetaValue::Exact(known * scale));
    }
    let low = known.clone() * scale.clone();
    let high = (known + BigRational::from_integer(BigInt::from(unresolved))) * scale;
    Ok(BetaValue::Interval { low, high, unresolved })
}
