//! Pointed triples and pointed passports: a distinguished cycle in one of
//! `σ0, σ1, σ∞`, its automorphism group, and the descent-by-size criterion.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::passport::Passport;
use crate::perm::Permutation;
use crate::triple::{triple_automorphisms, Branch, PermutationTriple};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointedTriple {
    pub triple: PermutationTriple,
    pub base: Branch,
    /// Support of the cycle (1-based), in the cyclic order of `σ_base`.
    pub cycle: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PointedPassport {
    #[serde(rename = "s")]
    pub base: Branch,
    #[serde(rename = "e")]
    pub length: usize,
    #[serde(rename = "a")]
    pub aut_order: usize,
    pub size: usize,
    /// Number of triple classes of the passport having such a cycle.
    pub contributing: usize,
}

fn support_mask(points: impl IntoIterator<Item = usize>) -> u32 {
    points.into_iter().fold(0u32, |m, x| m | 1 << x)
}

/// The cycle of `σ_base` through the 1-based point `cycle[0]`, checked to
/// have exactly the support of `cycle`.
fn check_cycle(t: &PermutationTriple, base: Branch, cycle: &[usize]) -> Result<u32> {
    let s = t.get(base);
    let d = t.degree();
    let first = *cycle.first().ok_or_else(|| Error::Invalid("empty cycle".into()))?;
    if cycle.iter().any(|&x| x == 0 || x > d) {
        return Err(Error::Invalid(format!("cycle {cycle:?} has points outside 1..={d}")));
    }
    let mut orbit = vec![first - 1];
    let mut x = s.at(first - 1);
    while x != first - 1 {
        orbit.push(x);
        x = s.at(x);
    }
    let mask = support_mask(orbit.iter().copied());
    if orbit.len() != cycle.len() || mask != support_mask(cycle.iter().map(|x| x - 1)) {
        return Err(Error::Invalid(format!("{cycle:?} is not a cycle of sigma_{base}")));
    }
    Ok(mask)
}

/// `Aut(σ; c)`: automorphisms of the triple mapping the cycle to itself.
pub fn pointed_aut(t: &PermutationTriple, base: Branch, cycle: &[usize]) -> Result<PermGroup> {
    let mask = check_cycle(t, base, cycle)?;
    let aut = triple_automorphisms(t);
    let elements: Vec<Permutation> = aut
        .elements()
        .iter()
        .filter(|tau| support_mask(cycle.iter().map(|&x| tau.at(x - 1))) == mask)
        .copied()
        .collect();
    Ok(PermGroup::from_closed_elements(t.degree(), elements))
}

/// Per triple class: `(s, e, a) ↦` number of `Aut(σ)`-orbits of `e`-cycles
/// of `σ_s` whose stabilizer has order `a`.
pub fn pointed_counts(t: &PermutationTriple) -> BTreeMap<(Branch, usize, usize), usize> {
    let aut = triple_automorphisms(t);
    let order = aut.order() as usize;
    let mut counts = BTreeMap::new();
    for s in Branch::ALL {
        let cycles = t.get(s).cycles0();
        let masks: Vec<u32> = cycles.iter().map(|c| support_mask(c.iter().copied())).collect();
        let mut seen = vec![false; cycles.len()];
        for k in 0..cycles.len() {
            if seen[k] {
                continue;
            }
            let mut orbit = 0;
            for (j, m) in masks.iter().enumerate() {
                let hit = aut
                    .elements()
                    .iter()
                    .any(|tau| support_mask(cycles[k].iter().map(|&x| tau.at(x))) == *m);
                if hit {
                    seen[j] = true;
                    orbit += 1;
                }
            }
            *counts.entry((s, cycles[k].len(), order / orbit)).or_default() += 1;
        }
    }
    counts
}

pub fn pointed_classes(p: &Passport) -> Vec<PointedPassport> {
    pointed_classes_of(&p.triples)
}

/// Pointed passports of the passport made of `triples` (one per class).
pub fn pointed_classes_of(triples: &[PermutationTriple]) -> Vec<PointedPassport> {
    let per_triple: Vec<_> = triples.par_iter().map(pointed_counts).collect();
    let mut acc: BTreeMap<(Branch, usize, usize), (usize, usize)> = BTreeMap::new();
    for counts in per_triple {
        for (key, n) in counts {
            let e = acc.entry(key).or_default();
            e.0 += n;
            e.1 += 1;
        }
    }
    acc.into_iter()
        .map(|((base, length, aut_order), (size, contributing))| PointedPassport {
            base,
            length,
            aut_order,
            size,
            contributing,
        })
        .collect()
}

/// Upper bound on the degree of a field of definition of a pointed Belyi
/// map in this pointed passport.
pub fn moduli_degree_bound(pp: &PointedPassport) -> usize {
    pp.size
}

/// A pointed passport witnessing descent: its size equals the passport
/// size and every triple class contributes to it.
pub fn descent_witness(p: &Passport, classes: &[PointedPassport]) -> Option<PointedPassport> {
    witness_for_size(p.size(), classes)
}

pub fn witness_for_size(size: usize, classes: &[PointedPassport]) -> Option<PointedPassport> {
    classes.iter().find(|pp| pp.size == size && pp.contributing == size).cloned()
}

pub fn descends_by_size(p: &Passport) -> bool {
    descent_witness(p, &pointed_classes(p)).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, d: usize) -> Permutation {
        Permutation::parse_cycles(s, Some(d)).unwrap()
    }

    #[test]
    fn pointed_aut_of_s5_example() {
        let t = PermutationTriple::new(p("(1,4,2,5,3)", 5), p("(1,2,3,4)", 5), p("(1,2,3,5)", 5)).unwrap();
        let a = pointed_aut(&t, Branch::Zero, &[1, 4, 2, 5, 3]).unwrap();
        assert_eq!(a.order(), 1);
        assert!(pointed_aut(&t, Branch::Zero, &[1, 2]).is_err());
        let counts = pointed_counts(&t);
        assert_eq!(counts[&(Branch::Zero, 5, 1)], 1);
        assert_eq!(counts[&(Branch::One, 1, 1)], 1);
    }

    #[test]
    fn cyclic_triple_orbits() {
        // σ0 = σ1 = 3-cycle, σ∞ = its inverse; Aut = C3 acting freely on points
        let c = p("(1,2,3)", 3);
        let t = PermutationTriple::from_pair(c, c);
        let counts = pointed_counts(&t);
        assert_eq!(counts[&(Branch::Zero, 3, 3)], 1);
        let a = pointed_aut(&t, Branch::Zero, &[1, 2, 3]).unwrap();
        assert_eq!(a.order(), 3);
        // fixed-point-free 2-cycles: d = 2
        let s = p("(1,2)", 2);
        let t = PermutationTriple::from_pair(s, s);
        let counts = pointed_counts(&t);
        assert_eq!(counts[&(Branch::Inf, 1, 1)], 1);
        assert_eq!(counts[&(Branch::Zero, 2, 2)], 1);
    }
}
