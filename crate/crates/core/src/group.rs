//! Materialized permutation groups: closure, centralizers, normalizers in
//! `S_d`, conjugacy classes modulo an overgroup, and conjugacy of subgroups.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::perm::{factorial, symmetric_group, Partition, Permutation, MAX_DEGREE};
use crate::schreier;

/// Bounds that turn runaway computations into capacity errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest group order that may be materialized.
    pub max_order: u64,
    /// Largest degree for which `S_d` may be scanned.
    pub max_scan_degree: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_order: factorial(9), max_scan_degree: 9 }
    }
}

/// A subgroup of `S_d` with its elements listed in sorted order.
#[derive(Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Elements in increasing order of image arrays.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.elements.binary_search(p).is_ok()
    }

    pub fn is_transitive(&self) -> bool {
        schreier::is_transitive_gens(self.degree, &self.generators)
    }

    pub fn is_even(&self) -> bool {
        self.generators.iter().all(|g| g.is_even())
    }

    pub fn trivial(degree: usize) -> PermGroup {
        let id = Permutation::identity(degree);
        PermGroup { degree, generators: vec![id], elements: vec![id] }
    }

    /// Builds a group from a subset the caller knows to be closed, choosing a
    /// small generating set with a fixed-seed random search.
    pub fn from_closed_elements(degree: usize, mut elements: Vec<Permutation>) -> PermGroup {
        elements.sort_unstable();
        elements.dedup();
        let generators = small_generating_set(degree, &elements);
        PermGroup { degree, generators, elements }
    }

    /// Signature: multiset of cycle types over all elements.
    pub fn signature(&self) -> Signature {
        let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
        for e in &self.elements {
            *counts.entry(e.cycle_type()).or_default() += 1;
        }
        Signature(counts.into_iter().collect())
    }
}

fn small_generating_set(degree: usize, elements: &[Permutation]) -> Vec<Permutation> {
    if elements.len() <= 1 {
        return vec![Permutation::identity(degree)];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut gens: Vec<Permutation> = Vec::new();
    let mut span: HashSet<Permutation> = HashSet::new();
    span.insert(Permutation::identity(degree));
    while span.len() < elements.len() {
        let cand = loop {
            let c = elements[rng.gen_range(0..elements.len())];
            if !span.contains(&c) {
                break c;
            }
        };
        gens.push(cand);
        span = closure_set(degree, &gens, u64::MAX).expect("no bound");
    }
    gens
}

fn closure_set(degree: usize, gens: &[Permutation], bound: u64) -> Result<HashSet<Permutation>> {
    let id = Permutation::identity(degree);
    let mut set = HashSet::new();
    set.insert(id);
    let mut queue = vec![id];
    let mut k = 0;
    while k < queue.len() {
        let e = queue[k];
        k += 1;
        for g in gens {
            let n = e.then(g);
            if set.insert(n) {
                if set.len() as u64 > bound {
                    return Err(Error::Capacity(format!(
                        "group order exceeds the configured bound {bound}"
                    )));
                }
                queue.push(n);
            }
        }
    }
    Ok(set)
}

/// Materializes `⟨generators⟩` with the default bound.
pub fn closure(generators: &[Permutation]) -> Result<PermGroup> {
    closure_with(generators, &Limits::default())
}

pub fn closure_with(generators: &[Permutation], limits: &Limits) -> Result<PermGroup> {
    let first = generators
        .first()
        .ok_or_else(|| Error::Invalid("closure of an empty generator list".into()))?;
    let degree = first.degree();
    for g in generators {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
    }
    let set = closure_set(degree, generators, limits.max_order)?;
    let mut elements: Vec<Permutation> = set.into_iter().collect();
    elements.sort_unstable();
    Ok(PermGroup { degree, generators: generators.to_vec(), elements })
}

pub fn is_transitive(group: &PermGroup) -> bool {
    group.is_transitive()
}

/// The full symmetric group, materialized (subject to `limits`).
pub fn symmetric(degree: usize, limits: &Limits) -> Result<PermGroup> {
    if degree > limits.max_scan_degree || factorial(degree) > limits.max_order {
        return Err(Error::Capacity(format!("S_{degree} exceeds the configured bound")));
    }
    let elements: Vec<Permutation> = symmetric_group(degree).collect();
    Ok(PermGroup { degree, generators: sym_generators(degree), elements })
}

/// A transposition and a long cycle (identity in degree 1).
pub fn sym_generators(degree: usize) -> Vec<Permutation> {
    if degree == 1 {
        return vec![Permutation::identity(1)];
    }
    let long: Vec<usize> = (1..=degree).collect();
    vec![
        Permutation::from_cycles(degree, &[vec![1, 2]]).unwrap(),
        Permutation::from_cycles(degree, &[long]).unwrap(),
    ]
}

/// `{h ∈ ambient : hg = gh}`.
pub fn centralizer(ambient: &PermGroup, g: &Permutation) -> Result<PermGroup> {
    if !ambient.contains(g) {
        return Err(Error::NotMember);
    }
    let elements: Vec<Permutation> = ambient
        .elements
        .iter()
        .filter(|h| h.then(g) == g.then(h))
        .copied()
        .collect();
    Ok(PermGroup::from_closed_elements(ambient.degree, elements))
}

/// Generators of the centralizer of `g` in `S_d`: rotations of each cycle
/// and swaps of consecutive cycles of equal length.
pub fn sym_centralizer_generators(g: &Permutation) -> Vec<Permutation> {
    let d = g.degree();
    let mut cycles = g.cycles0();
    cycles.sort_by_key(|c| c.len());
    let mut gens = Vec::new();
    for c in &cycles {
        if c.len() > 1 {
            let mut raw: Vec<u8> = (0..d as u8).collect();
            for (k, &x) in c.iter().enumerate() {
                raw[x] = c[(k + 1) % c.len()] as u8;
            }
            gens.push(Permutation::from_raw(d, &raw));
        }
    }
    for w in cycles.windows(2) {
        if w[0].len() == w[1].len() {
            let mut raw: Vec<u8> = (0..d as u8).collect();
            for (&a, &b) in w[0].iter().zip(&w[1]) {
                raw[a] = b as u8;
                raw[b] = a as u8;
            }
            gens.push(Permutation::from_raw(d, &raw));
        }
    }
    if gens.is_empty() {
        gens.push(Permutation::identity(d));
    }
    gens
}

/// `N_{S_d}(G)` by scanning `S_d` and testing generator conjugates.
pub fn normalizer_in_sym(g: &PermGroup) -> Result<PermGroup> {
    normalizer_in_sym_with(g, &Limits::default())
}

pub fn normalizer_in_sym_with(g: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    let d = g.degree;
    if d > limits.max_scan_degree {
        return Err(Error::Capacity(format!(
            "normalizer scan of S_{d} exceeds the degree bound {}",
            limits.max_scan_degree
        )));
    }
    if g.order() == factorial(d) {
        return symmetric(d, limits);
    }
    let elements: Vec<Permutation> = symmetric_group(d)
        .filter(|h| g.generators.iter().all(|s| g.contains(&s.conjugate_by(h))))
        .collect();
    Ok(PermGroup::from_closed_elements(d, elements))
}

/// Orbit representatives (least element) of `gens` acting by conjugation on
/// the sorted, conjugation-closed set `points`, in increasing order.
pub fn conjugation_orbit_reps(points: &[Permutation], gens: &[Permutation]) -> Vec<Permutation> {
    debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
    let mut seen = vec![false; points.len()];
    let mut reps = Vec::new();
    let mut queue = Vec::new();
    for start in 0..points.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        reps.push(points[start]);
        queue.clear();
        queue.push(start);
        while let Some(k) = queue.pop() {
            for g in gens {
                let c = points[k].conjugate_by(g);
                let idx = points.binary_search(&c).expect("point set closed under conjugation");
                if !seen[idx] {
                    seen[idx] = true;
                    queue.push(idx);
                }
            }
        }
    }
    reps
}

/// The conjugation orbit of `g` under `gens`, sorted.
pub fn conjugation_orbit(g: &Permutation, gens: &[Permutation]) -> Vec<Permutation> {
    let mut set = HashSet::new();
    set.insert(*g);
    let mut queue = vec![*g];
    while let Some(x) = queue.pop() {
        for h in gens {
            let c = x.conjugate_by(h);
            if set.insert(c) {
                queue.push(c);
            }
        }
    }
    let mut v: Vec<Permutation> = set.into_iter().collect();
    v.sort_unstable();
    v
}

/// The `S_d` conjugacy class of permutations with the given cycle type, sorted.
pub fn sym_class(lambda: &Partition) -> Vec<Permutation> {
    let rep = crate::perm::standard_element(lambda);
    conjugation_orbit(&rep, &sym_generators(lambda.total()))
}

/// One representative (lexicographically least) per orbit of `N` acting by
/// conjugation on `G`.
pub fn classes_mod(g: &PermGroup, n: &PermGroup) -> Vec<Permutation> {
    conjugation_orbit_reps(&g.elements, &n.generators)
}

/// For `τ0` and the `N`-class `class_c1` (sorted), one pair `(τ0, g)` per
/// orbit of `Z0` acting by conjugation on `class_c1`.
pub fn coset_pair_reps(
    tau0: &Permutation,
    class_c1: &[Permutation],
    z0: &PermGroup,
) -> Vec<(Permutation, Permutation)> {
    coset_pair_reps_gens(tau0, class_c1, &z0.generators)
}

pub fn coset_pair_reps_gens(
    tau0: &Permutation,
    class_c1: &[Permutation],
    z0_gens: &[Permutation],
) -> Vec<(Permutation, Permutation)> {
    conjugation_orbit_reps(class_c1, z0_gens)
        .into_iter()
        .map(|g| (*tau0, g))
        .collect()
}

/// Multiset of cycle types over all elements, as sorted (type, count) pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature(pub Vec<(Partition, u64)>);

impl Signature {
    /// Signature of `S_d` (all types) or `A_d` (even types only), computed
    /// from class sizes without materializing the group.
    pub fn symmetric(degree: usize, alternating: bool) -> Signature {
        let mut v: Vec<(Partition, u64)> = crate::perm::partitions(degree)
            .into_iter()
            .filter(|l| !alternating || l.is_even())
            .map(|l| {
                let n = l.class_size();
                (l, n)
            })
            .collect();
        v.sort();
        Signature(v)
    }

    /// Stable byte encoding: for each type, its parts then the count.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for (l, n) in &self.0 {
            out.push(l.len() as u8);
            out.extend(l.parts().iter().map(|&p| p as u8));
            out.extend(n.to_be_bytes());
        }
        out
    }

    /// Hex SHA-256 of [`Signature::to_bytes`].
    pub fn hash_hex(&self) -> String {
        hex::encode(Sha256::digest(self.to_bytes()))
    }
}

/// Searches `τ` with `τ⁻¹ G τ = H` by backtracking over point images; each
/// generator of `G` keeps the list of elements of `H` it could map to.
pub fn subgroup_conjugator(g: &PermGroup, h: &PermGroup) -> Option<Permutation> {
    if g.degree != h.degree || g.order() != h.order() {
        return None;
    }
    if g.signature() != h.signature() {
        return None;
    }
    let gens: Vec<Permutation> = g.generators.iter().filter(|s| !s.is_identity()).copied().collect();
    if gens.is_empty() {
        return Some(Permutation::identity(g.degree));
    }
    let cands: Vec<Vec<Permutation>> = gens
        .iter()
        .map(|s| {
            let t = s.cycle_type();
            h.elements.iter().filter(|x| x.cycle_type() == t).copied().collect()
        })
        .collect();
    let d = g.degree;
    // visiting order: BFS through generator edges, remembering the parent edge
    let mut order: Vec<(usize, Option<(usize, usize)>)> = Vec::new();
    let mut placed = [false; MAX_DEGREE];
    for root in 0..d {
        if placed[root] {
            continue;
        }
        placed[root] = true;
        order.push((root, None));
        let mut k = order.len() - 1;
        while k < order.len() {
            let p = order[k].0;
            k += 1;
            for (gi, s) in gens.iter().enumerate() {
                let q = s.at(p);
                if !placed[q] {
                    placed[q] = true;
                    order.push((q, Some((p, gi))));
                }
            }
        }
    }
    let mut tau = [u8::MAX; MAX_DEGREE];
    let mut used = [false; MAX_DEGREE];
    let found = conj_search(&gens, &order, 0, &mut tau, &mut used, &cands);
    let tau = found?;
    let t = Permutation::from_raw(d, &tau[..d]);
    debug_assert!(g.generators.iter().all(|s| h.contains(&s.conjugate_by(&t))));
    if g.generators.iter().all(|s| h.contains(&s.conjugate_by(&t))) {
        Some(t)
    } else {
        None
    }
}

fn conj_search(
    gens: &[Permutation],
    order: &[(usize, Option<(usize, usize)>)],
    depth: usize,
    tau: &mut [u8; MAX_DEGREE],
    used: &mut [bool; MAX_DEGREE],
    cands: &[Vec<Permutation>],
) -> Option<[u8; MAX_DEGREE]> {
    if depth == order.len() {
        return Some(*tau);
    }
    let d = gens[0].degree();
    let (p, parent) = order[depth];
    let values: Vec<usize> = match parent {
        None => (0..d).filter(|&v| !used[v]).collect(),
        Some((q, gi)) => {
            let tq = tau[q] as usize;
            let mut vs: Vec<usize> = cands[gi].iter().map(|x| x.at(tq)).filter(|&v| !used[v]).collect();
            vs.sort_unstable();
            vs.dedup();
            vs
        }
    };
    for v in values {
        tau[p] = v as u8;
        used[v] = true;
        // τ(s(x)) = h_s(τ(x)) must be satisfiable for every assigned edge
        let mut next: Vec<Vec<Permutation>> = Vec::with_capacity(cands.len());
        let mut ok = true;
        for (gi, s) in gens.iter().enumerate() {
            let filtered: Vec<Permutation> = cands[gi]
                .iter()
                .filter(|x| {
                    let check = |a: usize| {
                        let b = s.at(a);
                        let (ta, tb) = (tau[a], tau[b]);
                        ta == u8::MAX || tb == u8::MAX || x.at(ta as usize) == tb as usize
                    };
                    check(p) && check(s.inverse().at(p))
                })
                .copied()
                .collect();
            if filtered.is_empty() {
                ok = false;
                break;
            }
            next.push(filtered);
        }
        if ok {
            if let Some(t) = conj_search(gens, order, depth + 1, tau, used, &next) {
                return Some(t);
            }
        }
        tau[p] = u8::MAX;
        used[v] = false;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, d: usize) -> Permutation {
        Permutation::parse_cycles(s, Some(d)).unwrap()
    }

    fn assert_subgroup(g: &PermGroup) {
        for a in g.elements() {
            assert!(g.contains(&a.inverse()));
            for b in g.generators() {
                assert!(g.contains(&a.then(b)));
            }
        }
        assert!(g.contains(&Permutation::identity(g.degree())));
        assert_eq!(factorial(g.degree()) % g.order(), 0);
    }

    #[test]
    fn closures() {
        assert_eq!(closure(&[p("(1,2)", 2)]).unwrap().order(), 2);
        let s5 = closure(&[p("(1,4,2,5,3)", 5), p("(1,2,3,4)", 5)]).unwrap();
        assert_eq!(s5.order(), 120);
        assert_eq!(closure(&[p("(1,2,3)", 4), p("(1,2)(3,4)", 4)]).unwrap().order(), 12);
        assert!(!closure(&[p("(1,2)", 3)]).unwrap().is_transitive());
        assert!(closure(&[p("(1,2,3,4,5,6)", 6)]).unwrap().is_transitive());
        let tight = Limits { max_order: 10, max_scan_degree: 9 };
        assert!(matches!(closure_with(&s5.generators, &tight), Err(Error::Capacity(_))));
    }

    #[test]
    fn transitivity_of_degree_seven_triple() {
        let g = closure(&[p("(1,2,3,4,5,6)", 7), p("(2,7,6,3,4,5)", 7)]).unwrap();
        assert!(g.is_transitive());
        assert_eq!(g.order(), 5040);
    }

    #[test]
    fn centralizers() {
        let s3 = symmetric(3, &Limits::default()).unwrap();
        assert_eq!(centralizer(&s3, &Permutation::identity(3)).unwrap().order(), 6);
        let s5 = symmetric(5, &Limits::default()).unwrap();
        let z = centralizer(&s5, &p("(1,2,3,4,5)", 5)).unwrap();
        assert_eq!(z.order(), 5);
        assert_subgroup(&z);
        let s4 = symmetric(4, &Limits::default()).unwrap();
        let z = centralizer(&s4, &p("(1,2)(3,4)", 4)).unwrap();
        assert_eq!(z.order(), 8);
        assert_subgroup(&z);
        let c3 = closure(&[p("(1,2,3)", 3)]).unwrap();
        assert_eq!(centralizer(&c3, &p("(1,2)", 3)), Err(Error::NotMember));
    }

    #[test]
    fn combinatorial_centralizer_matches_scan() {
        let s6 = symmetric(6, &Limits::default()).unwrap();
        for g in s6.elements().iter().step_by(7) {
            let scan = centralizer(&s6, g).unwrap();
            let gens = sym_centralizer_generators(g);
            let built = closure(&gens).unwrap();
            assert_eq!(built.elements(), scan.elements());
            assert_eq!(built.order(), g.cycle_type().centralizer_order());
        }
    }

    #[test]
    fn normalizers() {
        let s4 = symmetric(4, &Limits::default()).unwrap();
        assert_eq!(normalizer_in_sym(&s4).unwrap().order(), 24);
        let c5 = closure(&[p("(1,2,3,4,5)", 5)]).unwrap();
        let n = normalizer_in_sym(&c5).unwrap();
        assert_eq!(n.order(), 20);
        assert_subgroup(&n);
        let a4 = closure(&[p("(1,2,3)", 4), p("(1,2)(3,4)", 4)]).unwrap();
        assert_eq!(normalizer_in_sym(&a4).unwrap().order(), 24);
        let big = closure(&[p("(1,2)", 10)]).unwrap();
        assert!(matches!(normalizer_in_sym(&big), Err(Error::Capacity(_))));
    }

    #[test]
    fn classes_modulo_overgroup() {
        let s3 = symmetric(3, &Limits::default()).unwrap();
        let reps = classes_mod(&s3, &s3);
        assert_eq!(reps.len(), 3);
        let c3 = closure(&[p("(1,2,3)", 3)]).unwrap();
        let reps = classes_mod(&c3, &s3);
        assert_eq!(reps.len(), 2);
        assert!(reps[0].is_identity());
        let s5 = symmetric(5, &Limits::default()).unwrap();
        assert_eq!(classes_mod(&s5, &s5).len(), 7);
    }

    #[test]
    fn sym_classes_have_expected_sizes() {
        for l in crate::perm::partitions(6) {
            let c = sym_class(&l);
            assert_eq!(c.len() as u64, l.class_size());
            assert!(c.iter().all(|x| x.cycle_type() == l));
        }
    }

    #[test]
    fn signatures_of_symmetric_and_alternating() {
        for d in 2..=6 {
            let s = symmetric(d, &Limits::default()).unwrap();
            assert_eq!(s.signature(), Signature::symmetric(d, false));
            let evens: Vec<Permutation> = s.elements().iter().filter(|x| x.is_even()).copied().collect();
            let a = PermGroup::from_closed_elements(d, evens);
            assert_eq!(a.signature(), Signature::symmetric(d, true));
        }
    }

    #[test]
    fn subgroup_conjugators() {
        let g = closure(&[p("(1,2,3)", 4)]).unwrap();
        assert!(subgroup_conjugator(&g, &g).is_some());
        let h = closure(&[p("(2,3,4)", 4)]).unwrap();
        let t = subgroup_conjugator(&g, &h).unwrap();
        for s in g.generators() {
            assert!(h.contains(&s.conjugate_by(&t)));
        }
        let c4 = closure(&[p("(1,2,3,4)", 4)]).unwrap();
        let v4 = closure(&[p("(1,2)(3,4)", 4), p("(1,3)(2,4)", 4)]).unwrap();
        assert_eq!(c4.order(), v4.order());
        assert!(subgroup_conjugator(&c4, &v4).is_none());
        // two non-conjugate Klein four-groups in S_4
        let v4b = closure(&[p("(1,2)", 4), p("(3,4)", 4)]).unwrap();
        assert!(!(v4.signature() == v4b.signature()));
        assert!(subgroup_conjugator(&v4, &v4b).is_none());
    }

    #[test]
    fn subgroup_conjugator_on_random_conjugates() {
        use rand::seq::SliceRandom;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s7: Vec<Permutation> = symmetric_group(7).collect();
        let gens = [p("(1,2,3,4,5,6,7)", 7), p("(2,3,5)(4,7,6)", 7)];
        let g = closure(&gens).unwrap();
        assert_eq!(g.order(), 21);
        for _ in 0..5 {
            let tau = *s7.choose(&mut rng).unwrap();
            let conj: Vec<Permutation> = gens.iter().map(|s| s.conjugate_by(&tau)).collect();
            let h = closure(&conj).unwrap();
            assert!(subgroup_conjugator(&g, &h).is_some());
        }
    }

    #[test]
    fn schreier_sims_agrees_with_closure() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in 2..=7 {
            let all: Vec<Permutation> = symmetric_group(d).collect();
            for _ in 0..20 {
                let gens: Vec<Permutation> =
                    (0..rng.gen_range(1..=3)).map(|_| all[rng.gen_range(0..all.len())]).collect();
                assert_eq!(
                    schreier::group_order(d, &gens),
                    closure(&gens).unwrap().order(),
                    "{gens:?}"
                );
            }
        }
    }
}
