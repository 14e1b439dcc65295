//! Enumeration of transitive permutation triples and their passports.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{describe, Classifier, GroupKey};
use crate::error::{Error, Result};
use crate::group::{
    classes_mod, conjugation_orbit, coset_pair_reps_gens, normalizer_in_sym_with, sym_centralizer_generators,
    sym_class, Limits, PermGroup,
};
use crate::perm::{partitions, Partition, Permutation};
use crate::schreier;
use crate::triple::{canonical_triple, PermutationTriple, S3};

/// Degree above which enumeration requires an explicit opt-in.
pub const DEFAULT_DEGREE_CAP: usize = 9;
/// Hard upper bound even with the opt-in.
pub const LARGE_DEGREE_CAP: usize = 11;

/// `a ⪯ b`: `a` is lexicographically at least `b` on descending parts.
pub fn partition_leq(a: &Partition, b: &Partition) -> Result<bool> {
    if a.total() != b.total() {
        return Err(Error::TotalMismatch(a.total(), b.total()));
    }
    Ok(a <= b)
}

pub fn genus(t: &PermutationTriple) -> Result<usize> {
    t.genus()
}

/// Genus from cycle types alone (may be negative for intransitive data).
pub fn genus_of_types(d: usize, lambda: &[Partition; 3]) -> i64 {
    let e: usize = lambda.iter().map(|l| l.index()).sum();
    1 - d as i64 + e as i64 / 2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Passport {
    pub degree: usize,
    pub genus: usize,
    pub group: GroupKey,
    pub lambda: [Partition; 3],
    pub triples: Vec<PermutationTriple>,
}

impl Passport {
    pub fn size(&self) -> usize {
        self.triples.len()
    }

    /// Whether `lambda` matches `other` up to reordering.
    pub fn lambda_matches_unordered(&self, other: &[Partition; 3]) -> bool {
        let mut a = self.lambda.to_vec();
        let mut b = other.to_vec();
        a.sort();
        b.sort();
        a == b
    }

    fn sort_key(&self) -> (usize, [Partition; 3], u32) {
        (self.genus, self.lambda.clone(), self.group.id)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    PerGroup { generators: Vec<Permutation> },
    WholeDegree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationTask {
    pub mode: Mode,
    pub degree: usize,
    pub genus: Option<usize>,
    /// Worker threads; `None` uses all available cores.
    pub workers: Option<usize>,
    pub allow_large: bool,
    pub limits: Limits,
}

impl EnumerationTask {
    pub fn whole_degree(degree: usize) -> Self {
        EnumerationTask {
            mode: Mode::WholeDegree,
            degree,
            genus: None,
            workers: None,
            allow_large: false,
            limits: Limits::default(),
        }
    }

    pub fn check_degree(&self) -> Result<()> {
        let cap = if self.allow_large { LARGE_DEGREE_CAP } else { DEFAULT_DEGREE_CAP };
        if self.degree == 0 || self.degree > cap {
            return Err(Error::Capacity(format!(
                "degree {} is outside 1..={cap}{}",
                self.degree,
                if self.allow_large { "" } else { " (larger degrees need the large-degree opt-in)" }
            )));
        }
        Ok(())
    }

    pub fn run(&self) -> Result<Vec<Passport>> {
        self.check_degree()?;
        let work = || -> Result<Vec<Passport>> {
            let triples = match &self.mode {
                Mode::WholeDegree => whole_degree_triples(self.degree, self.genus)?,
                Mode::PerGroup { generators } => {
                    let g = crate::group::closure_with(generators, &self.limits)?;
                    if g.degree() != self.degree {
                        return Err(Error::DegreeMismatch(self.degree, g.degree()));
                    }
                    let mut ts = enumerate_group_with(&g, &self.limits)?;
                    if let Some(gen) = self.genus {
                        ts.retain(|t| t.genus().ok() == Some(gen));
                    }
                    ts
                }
            };
            assemble_passports_with(&triples, &self.limits)
        };
        match self.workers {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Invalid(e.to_string()))?
                .install(work),
            None => work(),
        }
    }
}

/// All passports of degree `d` (default limits, all cores).
pub fn enumerate_degree(d: usize) -> Result<Vec<Passport>> {
    EnumerationTask::whole_degree(d).run()
}

/// Canonical representatives of all transitive triples of degree `d` with
/// `λ0 ⪯ λ1 ⪯ λ∞`, one per simultaneous-conjugacy class, sorted.
///
/// For each pair of `S_d`-classes `C_i, C_j` with `λ_i ⪯ λ_j`, the orbits of
/// `Z(τ_i)` acting by conjugation on `C_j` are in bijection with the
/// simultaneous-conjugacy classes of pairs in `C_i × C_j`, so no further
/// deduplication is required.
pub fn whole_degree_triples(d: usize, genus: Option<usize>) -> Result<Vec<PermutationTriple>> {
    if d == 0 || d > LARGE_DEGREE_CAP {
        return Err(Error::Capacity(format!("degree {d} out of range")));
    }
    let parts = partitions(d);
    let classes: Vec<Vec<Permutation>> = parts.par_iter().map(sym_class).collect();
    let pairs: Vec<(usize, usize)> = (0..parts.len())
        .flat_map(|i| (i..parts.len()).map(move |j| (i, j)))
        .collect();
    let mut out: Vec<PermutationTriple> = pairs
        .par_iter()
        .flat_map_iter(|&(i, j)| {
            let tau = classes[i][0];
            let zgens = sym_centralizer_generators(&tau);
            let (li, lj) = (&parts[i], &parts[j]);
            coset_pair_reps_gens(&tau, &classes[j], &zgens)
                .into_iter()
                .filter_map(move |(s0, s1)| {
                    let t = PermutationTriple::from_pair(s0, s1);
                    let linf = t.sigma_inf.cycle_type();
                    if linf < *lj {
                        return None;
                    }
                    if let Some(g) = genus {
                        if genus_of_types(d, &[li.clone(), lj.clone(), linf]) != g as i64 {
                            return None;
                        }
                    }
                    if !t.is_transitive() {
                        return None;
                    }
                    Some(canonical_triple(&t))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    out.par_sort_unstable();
    Ok(out)
}

/// Per-group enumeration: one representative per simultaneous-conjugacy
/// class of triples with `⟨σ⟩ = G` and `λ0 ⪯ λ1 ⪯ λ∞`, canonical and sorted.
pub fn enumerate_group(g: &PermGroup) -> Result<Vec<PermutationTriple>> {
    enumerate_group_with(g, &Limits::default())
}

pub fn enumerate_group_with(g: &PermGroup, limits: &Limits) -> Result<Vec<PermutationTriple>> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let d = g.degree();
    let n = normalizer_in_sym_with(g, limits)?;
    // Step 1: classes of G up to N-conjugation
    let reps = classes_mod(g, &n);
    let ngens = n.generators().to_vec();
    let types: Vec<Partition> = reps.iter().map(|r| r.cycle_type()).collect();
    let pairs: Vec<(usize, usize)> = (0..reps.len())
        .flat_map(|i| (0..reps.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| types[i] <= types[j])
        .collect();
    let order = g.order();
    let mut out: Vec<PermutationTriple> = pairs
        .par_iter()
        .flat_map_iter(|&(i, j)| {
            let tau_i = reps[i];
            // Step 2: Z_N(τ_i) acting on the N-class of τ_j
            let z = n
                .elements()
                .iter()
                .filter(|h| h.then(&tau_i) == tau_i.then(h))
                .copied()
                .collect::<Vec<_>>();
            let z = PermGroup::from_closed_elements(d, z);
            let class_j = conjugation_orbit(&reps[j], &ngens);
            let lj = types[j].clone();
            coset_pair_reps_gens(&tau_i, &class_j, z.generators())
                .into_iter()
                .filter_map(move |(s0, s1)| {
                    // Steps 3–4
                    let t = PermutationTriple::from_pair(s0, s1);
                    if t.sigma_inf.cycle_type() < lj {
                        return None;
                    }
                    if schreier::group_order(d, &[s0, s1]) != order {
                        return None;
                    }
                    Some(canonical_triple(&t))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    out.par_sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn assemble_passports(triples: &[PermutationTriple]) -> Result<Vec<Passport>> {
    assemble_passports_with(triples, &Limits::default())
}

/// Buckets canonical triples by (degree, genus, λ, monodromy group class).
/// Group ids are ranked among the classes present in the input, per degree.
pub fn assemble_passports_with(triples: &[PermutationTriple], limits: &Limits) -> Result<Vec<Passport>> {
    let infos: Vec<_> = triples
        .par_iter()
        .map(|t| describe(t, limits).map(|i| (t.genus(), i)))
        .collect::<Result<Vec<_>>>()?;
    let mut by_degree: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, t) in triples.iter().enumerate() {
        by_degree.entry(t.degree()).or_default().push(k);
    }
    let mut passports = Vec::new();
    let mut infos: Vec<Option<_>> = infos.into_iter().map(Some).collect();
    for (d, idx) in by_degree {
        let mut classifier = Classifier::new();
        let mut buckets: BTreeMap<(usize, [Partition; 3], usize), Vec<PermutationTriple>> = BTreeMap::new();
        for k in idx {
            let t = &triples[k];
            let (genus, info) = infos[k].take().expect("each triple visited once");
            let genus = genus?;
            let c = classifier.insert(t, info);
            buckets.entry((genus, t.cycle_types(), c)).or_default().push(*t);
        }
        let keys = classifier.keys(d);
        for ((genus, lambda, c), mut ts) in buckets {
            ts.sort();
            ts.dedup();
            let p = Passport { degree: d, genus, group: keys[c].clone(), lambda, triples: ts };
            passports.push(s3_canonicalize(&p));
        }
    }
    merge_equal(&mut passports);
    passports.sort_by_key(|a| (a.degree, a.sort_key()));
    Ok(passports)
}

/// Passports given with λ out of order can land on the same canonical
/// passport; their triple lists are merged.
fn merge_equal(passports: &mut Vec<Passport>) {
    passports.sort_by_key(|a| (a.degree, a.sort_key()));
    let mut merged: Vec<Passport> = Vec::with_capacity(passports.len());
    for p in passports.drain(..) {
        match merged.last_mut() {
            Some(q) if q.degree == p.degree && q.sort_key() == p.sort_key() => {
                q.triples.extend(p.triples);
                q.triples.sort();
                q.triples.dedup();
            }
            _ => merged.push(p),
        }
    }
    *passports = merged;
}

/// The `S₃`-image with `λ0 ⪯ λ1 ⪯ λ∞`; ties broken by the least sorted
/// list of canonical triples.
pub fn s3_canonicalize(p: &Passport) -> Passport {
    let mut best: Option<([Partition; 3], Vec<PermutationTriple>)> = None;
    let Some(first) = p.triples.first() else {
        let mut lambda = p.lambda.clone();
        lambda.sort();
        return Passport { lambda, ..p.clone() };
    };
    for r in S3::ALL {
        let lambda = first.relabel(r).cycle_types();
        if !(lambda[0] <= lambda[1] && lambda[1] <= lambda[2]) {
            continue;
        }
        let mut ts: Vec<PermutationTriple> = p.triples.iter().map(|t| canonical_triple(&t.relabel(r))).collect();
        ts.sort();
        ts.dedup();
        let better = match &best {
            None => true,
            Some((_, b)) => ts < *b,
        };
        if better {
            best = Some((lambda, ts));
        }
    }
    let (lambda, triples) = best.expect("some ordering of three partitions is sorted");
    Passport { degree: p.degree, genus: p.genus, group: p.group.clone(), lambda, triples }
}
