//! Permutation triples `(σ0, σ1, σ∞)` with `σ∞σ1σ0 = 1`, simultaneous
//! conjugation, canonical forms and automorphism groups.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{closure_with, Limits, PermGroup};
use crate::perm::{Partition, Permutation, MAX_DEGREE};
use crate::schreier;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PermutationTriple {
    pub sigma0: Permutation,
    pub sigma1: Permutation,
    #[serde(rename = "sigmaInf")]
    pub sigma_inf: Permutation,
}

/// One of the three branch values, indexing the permutations of a triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Branch {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "inf")]
    Inf,
}

impl Branch {
    pub const ALL: [Branch; 3] = [Branch::Zero, Branch::One, Branch::Inf];

    pub fn position(self) -> usize {
        match self {
            Branch::Zero => 0,
            Branch::One => 1,
            Branch::Inf => 2,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Zero => "0",
            Branch::One => "1",
            Branch::Inf => "inf",
        })
    }
}

impl PermutationTriple {
    pub fn new(sigma0: Permutation, sigma1: Permutation, sigma_inf: Permutation) -> Result<Self> {
        let d = sigma0.degree();
        for p in [&sigma1, &sigma_inf] {
            if p.degree() != d {
                return Err(Error::DegreeMismatch(d, p.degree()));
            }
        }
        if !sigma_inf.then(&sigma1).then(&sigma0).is_identity() {
            return Err(Error::ProductNotIdentity);
        }
        Ok(PermutationTriple { sigma0, sigma1, sigma_inf })
    }

    /// Completes `(σ0, σ1)` with `σ∞ = (σ1σ0)⁻¹`.
    pub fn from_pair(sigma0: Permutation, sigma1: Permutation) -> Self {
        let sigma_inf = sigma1.then(&sigma0).inverse();
        PermutationTriple { sigma0, sigma1, sigma_inf }
    }

    pub fn identity(degree: usize) -> Self {
        let id = Permutation::identity(degree);
        PermutationTriple { sigma0: id, sigma1: id, sigma_inf: id }
    }

    pub fn degree(&self) -> usize {
        self.sigma0.degree()
    }

    pub fn get(&self, s: Branch) -> &Permutation {
        match s {
            Branch::Zero => &self.sigma0,
            Branch::One => &self.sigma1,
            Branch::Inf => &self.sigma_inf,
        }
    }

    pub fn as_array(&self) -> [Permutation; 3] {
        [self.sigma0, self.sigma1, self.sigma_inf]
    }

    pub fn cycle_types(&self) -> [Partition; 3] {
        [self.sigma0.cycle_type(), self.sigma1.cycle_type(), self.sigma_inf.cycle_type()]
    }

    pub fn is_transitive(&self) -> bool {
        schreier::is_transitive_gens(self.degree(), &[self.sigma0, self.sigma1])
    }

    /// `τ⁻¹στ` applied to each entry.
    pub fn conjugate_by(&self, tau: &Permutation) -> Self {
        PermutationTriple {
            sigma0: self.sigma0.conjugate_by(tau),
            sigma1: self.sigma1.conjugate_by(tau),
            sigma_inf: self.sigma_inf.conjugate_by(tau),
        }
    }

    /// Riemann–Hurwitz genus `1 − d + (e0 + e1 + e∞)/2`.
    pub fn genus(&self) -> Result<usize> {
        let e = self.sigma0.index() + self.sigma1.index() + self.sigma_inf.index();
        if !e.is_multiple_of(2) {
            return Err(Error::Genus(format!("odd index sum {e}")));
        }
        let g = 1 + e as i64 / 2 - self.degree() as i64;
        if g < 0 {
            return Err(Error::Genus(format!("negative genus {g}")));
        }
        Ok(g as usize)
    }

    /// The monodromy group `⟨σ0, σ1⟩`, materialized.
    pub fn monodromy_group(&self, limits: &Limits) -> Result<PermGroup> {
        closure_with(&[self.sigma0, self.sigma1], limits)
    }

    /// Applies an element of `S₃` permuting the roles of `0, 1, ∞`.
    pub fn relabel(&self, r: S3) -> Self {
        let (a, b, c) = (self.sigma0, self.sigma1, self.sigma_inf);
        match r {
            S3::Id => *self,
            S3::Rot => PermutationTriple { sigma0: b, sigma1: c, sigma_inf: a },
            S3::Rot2 => PermutationTriple { sigma0: c, sigma1: a, sigma_inf: b },
            S3::Swap => PermutationTriple::from_pair(b, a),
            S3::SwapRot => PermutationTriple::from_pair(c, b),
            S3::SwapRot2 => PermutationTriple::from_pair(a, c),
        }
    }

    /// Whether the images of 0 under each entry are consistent with a
    /// triple of degree `d`; used when deserializing.
    pub fn validate(&self) -> Result<()> {
        PermutationTriple::new(self.sigma0, self.sigma1, self.sigma_inf).map(|_| ())
    }
}

impl fmt::Debug for PermutationTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.sigma0, self.sigma1, self.sigma_inf)
    }
}

impl fmt::Display for PermutationTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The six relabelings of `{0, 1, ∞}`. Odd ones invert the cyclic order, so
/// one entry is replaced by the inverse of a product to keep `σ∞σ1σ0 = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum S3 {
    Id,
    Rot,
    Rot2,
    Swap,
    SwapRot,
    SwapRot2,
}

impl S3 {
    pub const ALL: [S3; 6] = [S3::Id, S3::Rot, S3::Rot2, S3::Swap, S3::SwapRot, S3::SwapRot2];
}

/// Every `τ` with `a^τ = b` (all of them when `all`, else at most one).
fn conjugators(a: &PermutationTriple, b: &PermutationTriple, all: bool) -> Vec<Permutation> {
    let d = a.degree();
    let mut out = Vec::new();
    if b.degree() != d || a.cycle_types() != b.cycle_types() {
        return out;
    }
    let (a0, a1, b0, b1) = (a.sigma0, a.sigma1, b.sigma0, b.sigma1);
    let mut tau = [u8::MAX; MAX_DEGREE];
    let mut used = [false; MAX_DEGREE];
    search_conj(d, &a0, &a1, &b0, &b1, &mut tau, &mut used, all, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn search_conj(
    d: usize,
    a0: &Permutation,
    a1: &Permutation,
    b0: &Permutation,
    b1: &Permutation,
    tau: &mut [u8; MAX_DEGREE],
    used: &mut [bool; MAX_DEGREE],
    all: bool,
    out: &mut Vec<Permutation>,
) -> bool {
    let Some(base) = (0..d).find(|&i| tau[i] == u8::MAX) else {
        out.push(Permutation::from_raw(d, &tau[..d]));
        return !all;
    };
    for v in 0..d {
        if used[v] {
            continue;
        }
        let (saved_tau, saved_used) = (*tau, *used);
        if propagate(base, v, a0, a1, b0, b1, tau, used)
            && search_conj(d, a0, a1, b0, b1, tau, used, all, out)
        {
            return true;
        }
        *tau = saved_tau;
        *used = saved_used;
    }
    false
}

/// Sets `τ(base) = v` and follows `τ(a_s(i)) = b_s(τ(i))` through the orbit.
#[allow(clippy::too_many_arguments)]
fn propagate(
    base: usize,
    v: usize,
    a0: &Permutation,
    a1: &Permutation,
    b0: &Permutation,
    b1: &Permutation,
    tau: &mut [u8; MAX_DEGREE],
    used: &mut [bool; MAX_DEGREE],
) -> bool {
    tau[base] = v as u8;
    used[v] = true;
    let mut stack = vec![base];
    while let Some(i) = stack.pop() {
        let ti = tau[i] as usize;
        for (a, b) in [(a0, b0), (a1, b1)] {
            let (j, tj) = (a.at(i), b.at(ti));
            if tau[j] == u8::MAX {
                if used[tj] {
                    return false;
                }
                tau[j] = tj as u8;
                used[tj] = true;
                stack.push(j);
            } else if tau[j] as usize != tj {
                return false;
            }
        }
    }
    true
}

/// `τ` with `a^τ = b`, if any; verified by direct conjugation.
pub fn simultaneous_conjugator(a: &PermutationTriple, b: &PermutationTriple) -> Option<Permutation> {
    let tau = conjugators(a, b, false).pop()?;
    if a.conjugate_by(&tau) == *b {
        Some(tau)
    } else {
        None
    }
}

/// `Aut(σ)`: the centralizer in `S_d` of `⟨σ0, σ1⟩`.
pub fn triple_automorphisms(a: &PermutationTriple) -> PermGroup {
    let elements = conjugators(a, a, true);
    PermGroup::from_closed_elements(a.degree(), elements)
}

/// Order of `Aut(σ)` without materializing the group.
pub fn automorphism_count(a: &PermutationTriple) -> usize {
    conjugators(a, a, true).len()
}

/// The lexicographically least triple (σ0 images, then σ1 images) in the
/// simultaneous-conjugacy class of `a`.
pub fn canonical_triple(a: &PermutationTriple) -> PermutationTriple {
    canonical_with_conjugator(a).0
}

/// Canonical form together with a `τ` such that `a^τ` is that form.
pub fn canonical_with_conjugator(a: &PermutationTriple) -> (PermutationTriple, Permutation) {
    let d = a.degree();
    let mut st = Canon::new(a);
    st.search(0);
    let best_tau = st.best_tau.expect("some labelling exists");
    let tau = Permutation::from_raw(d, &best_tau[..d]);
    let c = a.conjugate_by(&tau);
    debug_assert_eq!(c.sigma1.raw(), &st.best[..d]);
    (c, tau)
}

/// Backtracking labeller. The least conjugate of `σ0` is fixed: cycles of
/// increasing length on consecutive labels. Labels are processed in
/// increasing order; label `k`'s `σ1`-image is either already labelled or
/// starts a fresh cycle that is placed, as a whole, into the earliest free
/// block of its length. Branching happens only when label `k` itself has
/// no point yet (a new orbit of `⟨σ0, σ1⟩`).
struct Canon<'a> {
    d: usize,
    s0: &'a Permutation,
    s1: &'a Permutation,
    /// block start for each label, and block length
    block_start: [u8; MAX_DEGREE],
    block_len: [u8; MAX_DEGREE],
    /// σ0-cycle id and position inside it for each point
    cycle_of: [u8; MAX_DEGREE],
    cycles: Vec<Vec<u8>>,
    tau: [u8; MAX_DEGREE],
    inv: [u8; MAX_DEGREE],
    block_used: [bool; MAX_DEGREE],
    cycle_used: Vec<bool>,
    cur: [u8; MAX_DEGREE],
    best: [u8; MAX_DEGREE],
    best_tau: Option<[u8; MAX_DEGREE]>,
}

const NONE: u8 = u8::MAX;

impl<'a> Canon<'a> {
    fn new(a: &'a PermutationTriple) -> Self {
        let d = a.degree();
        let s0 = &a.sigma0;
        let mut cycles: Vec<Vec<u8>> = s0
            .cycles0()
            .into_iter()
            .map(|c| c.into_iter().map(|x| x as u8).collect())
            .collect();
        cycles.sort_by_key(|c| c.len());
        let mut cycle_of = [NONE; MAX_DEGREE];
        for (ci, c) in cycles.iter().enumerate() {
            for &x in c {
                cycle_of[x as usize] = ci as u8;
            }
        }
        let mut block_start = [0u8; MAX_DEGREE];
        let mut block_len = [0u8; MAX_DEGREE];
        let mut next = 0usize;
        for c in &cycles {
            for k in 0..c.len() {
                block_start[next + k] = next as u8;
                block_len[next + k] = c.len() as u8;
            }
            next += c.len();
        }
        let n = cycles.len();
        Canon {
            d,
            s0,
            s1: &a.sigma1,
            block_start,
            block_len,
            cycle_of,
            cycles,
            tau: [NONE; MAX_DEGREE],
            inv: [NONE; MAX_DEGREE],
            block_used: [false; MAX_DEGREE],
            cycle_used: vec![false; n],
            cur: [NONE; MAX_DEGREE],
            best: [NONE; MAX_DEGREE],
            best_tau: None,
        }
    }

    /// Labels σ0-cycle `ci` onto the block starting at `start`, with point
    /// `first` receiving label `start`.
    fn place(&mut self, ci: usize, first: u8, start: usize) {
        let len = self.cycles[ci].len();
        let mut x = first as usize;
        for k in 0..len {
            self.tau[x] = (start + k) as u8;
            self.inv[start + k] = x as u8;
            x = self.s0.at(x);
        }
        self.block_used[start] = true;
        self.cycle_used[ci] = true;
    }

    fn unplace(&mut self, ci: usize, start: usize) {
        let len = self.cycles[ci].len();
        for k in 0..len {
            let x = self.inv[start + k] as usize;
            self.tau[x] = NONE;
            self.inv[start + k] = NONE;
        }
        self.block_used[start] = false;
        self.cycle_used[ci] = false;
    }

    fn free_block(&self, len: usize) -> usize {
        let mut s = 0;
        while s < self.d {
            if self.block_len[s] as usize == len && !self.block_used[s] {
                return s;
            }
            s += self.block_len[s] as usize;
        }
        unreachable!("a free block of every unplaced cycle length exists")
    }

    /// Processes label `k`; `tight` means the prefix equals `best` so far.
    fn search(&mut self, k: usize) {
        self.step(k, true);
    }

    fn step(&mut self, k: usize, tight: bool) {
        if k == self.d {
            if self.best_tau.is_none() || self.cur[..self.d] < self.best[..self.d] {
                self.best = self.cur;
                self.best_tau = Some(self.tau);
            }
            return;
        }
        if self.inv[k] == NONE {
            // new orbit: label k starts a block; try every unplaced cycle and rotation
            debug_assert_eq!(self.block_start[k] as usize, k);
            let len = self.block_len[k] as usize;
            for ci in 0..self.cycles.len() {
                if self.cycle_used[ci] || self.cycles[ci].len() != len {
                    continue;
                }
                for r in 0..len {
                    let first = self.cycles[ci][r];
                    self.place(ci, first, k);
                    self.emit(k, tight);
                    self.unplace(ci, k);
                }
            }
        } else {
            self.emit(k, tight);
        }
    }

    /// Label `k` has a point; determine the σ1-image label and recurse.
    fn emit(&mut self, k: usize, tight: bool) {
        let p = self.inv[k] as usize;
        let q = self.s1.at(p);
        let mut placed = None;
        if self.tau[q] == NONE {
            let ci = self.cycle_of[q] as usize;
            let start = self.free_block(self.cycles[ci].len());
            self.place(ci, q as u8, start);
            placed = Some((ci, start));
        }
        let v = self.tau[q];
        let mut next_tight = false;
        let prune = if self.best_tau.is_some() && tight {
            if v > self.best[k] {
                true
            } else {
                next_tight = v == self.best[k];
                false
            }
        } else {
            false
        };
        if !prune {
            self.cur[k] = v;
            self.step(k + 1, next_tight);
        }
        if let Some((ci, start)) = placed {
            self.unplace(ci, start);
        }
    }
}
