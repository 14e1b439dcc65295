//! Monodromy groups up to conjugacy in `S_d`: invariant keys and
//! artifact-local ids.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::group::{closure_with, subgroup_conjugator, Limits, PermGroup, Signature};
use crate::perm::{factorial, Permutation};
use crate::schreier;
use crate::triple::PermutationTriple;

/// Conjugacy-invariant description of a monodromy group. `id` numbers the
/// classes found within one degree, ordered by (order, signature bytes,
/// least member triple); it is not a transitive-group database number.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupKey {
    pub degree: usize,
    pub order: u64,
    pub signature: Signature,
    pub transitive: bool,
    pub even: bool,
    pub id: u32,
}

impl GroupKey {
    pub fn signature_hash(&self) -> String {
        self.signature.hash_hex()
    }

    pub fn is_symmetric(&self) -> bool {
        self.order == factorial(self.degree)
    }

    pub fn is_alternating(&self) -> bool {
        self.degree >= 3 && self.even && self.order * 2 == factorial(self.degree)
    }

    /// `S7`, `A9`, or the order for other groups (`G168`).
    pub fn short_name(&self) -> String {
        if self.is_symmetric() {
            format!("S{}", self.degree)
        } else if self.is_alternating() {
            format!("A{}", self.degree)
        } else {
            format!("G{}", self.order)
        }
    }
}

/// Invariants of `⟨σ0, σ1⟩` computed without conjugacy comparisons.
#[derive(Clone, Debug)]
pub struct GroupInfo {
    pub order: u64,
    pub even: bool,
    pub transitive: bool,
    pub signature: Signature,
    /// Materialized group unless it is `A_d` or `S_d`.
    pub group: Option<PermGroup>,
}

pub fn describe(t: &PermutationTriple, limits: &Limits) -> Result<GroupInfo> {
    let d = t.degree();
    let gens = [t.sigma0, t.sigma1];
    let even = gens.iter().all(|g| g.is_even());
    let transitive = t.is_transitive();
    if transitive && schreier::contains_alternating(d, &gens) {
        let alternating = even && d >= 3;
        let order = if alternating { factorial(d) / 2 } else { factorial(d) };
        return Ok(GroupInfo {
            order,
            even,
            transitive,
            signature: Signature::symmetric(d, alternating),
            group: None,
        });
    }
    let g = closure_with(&gens, limits)?;
    Ok(GroupInfo { order: g.order(), even, transitive, signature: g.signature(), group: Some(g) })
}

struct Class {
    order: u64,
    even: bool,
    transitive: bool,
    signature: Signature,
    rep: Option<PermGroup>,
    least: PermutationTriple,
}

/// Assigns conjugacy classes to monodromy groups of one degree.
#[derive(Default)]
pub struct Classifier {
    classes: Vec<Class>,
    by_invariants: HashMap<(u64, Signature), Vec<usize>>,
    by_elements: HashMap<Vec<Permutation>, usize>,
}

impl Classifier {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the (provisional) class index of the group of `t`.
    pub fn insert(&mut self, t: &PermutationTriple, info: GroupInfo) -> usize {
        if let Some(g) = &info.group {
            if let Some(&c) = self.by_elements.get(g.elements()) {
                self.note_member(c, t);
                return c;
            }
        }
        let key = (info.order, info.signature.clone());
        let candidates = self.by_invariants.get(&key).cloned().unwrap_or_default();
        let found = candidates.into_iter().find(|&c| match (&self.classes[c].rep, &info.group) {
            (None, None) => true,
            (Some(h), Some(g)) => subgroup_conjugator(g, h).is_some(),
            _ => false,
        });
        let c = match found {
            Some(c) => c,
            None => {
                let c = self.classes.len();
                self.classes.push(Class {
                    order: info.order,
                    even: info.even,
                    transitive: info.transitive,
                    signature: info.signature,
                    rep: info.group.clone(),
                    least: *t,
                });
                self.by_invariants.entry(key).or_default().push(c);
                c
            }
        };
        if let Some(g) = info.group {
            self.by_elements.insert(g.elements().to_vec(), c);
        }
        self.note_member(c, t);
        c
    }

    fn note_member(&mut self, c: usize, t: &PermutationTriple) {
        if *t < self.classes[c].least {
            self.classes[c].least = *t;
        }
    }

    /// Final keys, indexed by provisional class index.
    pub fn keys(&self, degree: usize) -> Vec<GroupKey> {
        let mut idx: Vec<usize> = (0..self.classes.len()).collect();
        idx.sort_by(|&a, &b| {
            let (x, y) = (&self.classes[a], &self.classes[b]);
            (x.order, x.signature.to_bytes(), x.least).cmp(&(y.order, y.signature.to_bytes(), y.least))
        });
        let mut keys = vec![None; self.classes.len()];
        for (rank, &c) in idx.iter().enumerate() {
            let cl = &self.classes[c];
            keys[c] = Some(GroupKey {
                degree,
                order: cl.order,
                signature: cl.signature.clone(),
                transitive: cl.transitive,
                even: cl.even,
                id: rank as u32 + 1,
            });
        }
        keys.into_iter().map(|k| k.expect("every class ranked")).collect()
    }
}
