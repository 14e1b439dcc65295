//! Group orders via a deterministic Schreier–Sims stabilizer chain, plus
//! a fast primitivity/Jordan test for groups containing the alternating group.

use crate::perm::{factorial, Permutation, MAX_DEGREE};

struct Chain {
    degree: usize,
    base: Vec<usize>,
    strong: Vec<Permutation>,
    /// `trans[l][b] = u` with `base[l]^u = b`
    trans: Vec<Vec<Option<Permutation>>>,
}

impl Chain {
    fn level_gens(&self, l: usize) -> Vec<Permutation> {
        self.strong
            .iter()
            .filter(|s| self.base[..l].iter().all(|&b| s.at(b) == b))
            .copied()
            .collect()
    }

    fn rebuild(&mut self) {
        let d = self.degree;
        self.trans.truncate(self.base.len());
        for l in 0..self.base.len() {
            let gens = self.level_gens(l);
            if l == self.trans.len() {
                let mut t = vec![None; d];
                t[self.base[l]] = Some(Permutation::identity(d));
                self.trans.push(t);
            }
            let t = &mut self.trans[l];
            let mut queue: Vec<usize> = (0..d).filter(|&b| t[b].is_some()).collect();
            let mut k = 0;
            while k < queue.len() {
                let b = queue[k];
                k += 1;
                let ub = t[b].unwrap();
                for s in &gens {
                    let c = s.at(b);
                    if t[c].is_none() {
                        t[c] = Some(ub.then(s));
                        queue.push(c);
                    }
                }
            }
        }
    }

    /// Sifts `g` from level `start`; returns the residue and the level where
    /// it dropped out, or `None` if it sifts to the identity.
    fn sift(&self, g: Permutation, start: usize) -> Option<(Permutation, usize)> {
        let mut h = g;
        for l in start..self.base.len() {
            let b = h.at(self.base[l]);
            match &self.trans[l][b] {
                None => return Some((h, l)),
                Some(u) => h = h.then(&u.inverse()),
            }
        }
        if h.is_identity() {
            None
        } else {
            Some((h, self.base.len()))
        }
    }

    fn add_strong(&mut self, h: Permutation) {
        if self.base.iter().all(|&b| h.at(b) == b) {
            let moved = (0..self.degree).find(|&i| h.at(i) != i).expect("nonidentity");
            self.base.push(moved);
        }
        self.strong.push(h);
        self.rebuild();
    }

    fn build(degree: usize, gens: &[Permutation]) -> Chain {
        let mut chain = Chain { degree, base: Vec::new(), strong: Vec::new(), trans: Vec::new() };
        for g in gens {
            if !g.is_identity() && chain.sift(*g, 0).is_some() {
                chain.add_strong(*g);
            }
        }
        let mut level = chain.base.len() as isize - 1;
        while level >= 0 {
            let l = level as usize;
            let gens = chain.level_gens(l);
            let mut residue = None;
            'scan: for b in 0..degree {
                let Some(ub) = chain.trans[l][b] else { continue };
                for s in &gens {
                    let c = s.at(b);
                    let uc = chain.trans[l][c].expect("orbit closed");
                    let schreier = ub.then(s).then(&uc.inverse());
                    if let Some(r) = chain.sift(schreier, l + 1) {
                        residue = Some(r);
                        break 'scan;
                    }
                }
            }
            match residue {
                Some((h, j)) => {
                    chain.add_strong(h);
                    level = j.min(chain.base.len() - 1) as isize;
                }
                None => level -= 1,
            }
        }
        chain
    }

    fn order(&self) -> u64 {
        self.trans
            .iter()
            .map(|t| t.iter().filter(|u| u.is_some()).count() as u64)
            .product()
    }
}

/// Order of the group generated by `gens` (all of degree `degree`).
pub fn group_order(degree: usize, gens: &[Permutation]) -> u64 {
    Chain::build(degree, gens).order()
}

pub(crate) fn orbit_of(degree: usize, gens: &[Permutation], start: usize) -> Vec<usize> {
    let mut seen = [false; MAX_DEGREE];
    seen[start] = true;
    let mut orbit = vec![start];
    let mut k = 0;
    while k < orbit.len() {
        let b = orbit[k];
        k += 1;
        for g in gens {
            let c = g.at(b);
            if !seen[c] {
                seen[c] = true;
                orbit.push(c);
            }
        }
    }
    debug_assert!(orbit.iter().all(|&x| x < degree));
    orbit
}

pub(crate) fn is_transitive_gens(degree: usize, gens: &[Permutation]) -> bool {
    orbit_of(degree, gens, 0).len() == degree
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Smallest block containing `0` and `b` (Atkinson's union–find method),
/// returned as its size.
fn minimal_block_size(degree: usize, gens: &[Permutation], b: usize) -> usize {
    let mut parent: Vec<usize> = (0..degree).collect();
    let mut queue = vec![(0usize, b)];
    parent[b] = 0;
    let mut k = 0;
    while k < queue.len() {
        let (x, y) = queue[k];
        k += 1;
        for g in gens {
            let gx = find(&mut parent, g.at(x));
            let gy = find(&mut parent, g.at(y));
            if gx != gy {
                let (lo, hi) = if gx < gy { (gx, gy) } else { (gy, gx) };
                parent[hi] = lo;
                queue.push((lo, hi));
            }
        }
    }
    let root = find(&mut parent, 0);
    (0..degree).filter(|&x| find(&mut parent, x) == root).count()
}

/// Primitivity of a transitive group given by generators.
pub(crate) fn is_primitive(degree: usize, gens: &[Permutation]) -> bool {
    (1..degree).all(|b| minimal_block_size(degree, gens, b) == degree)
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
}

/// Power of `g` that is a single `p`-cycle for a prime `p ≤ degree − 3`, if
/// its cycle type allows one.
fn prime_cycle_power(g: &Permutation) -> bool {
    let lens = g.cycle_type();
    let d = g.degree();
    for (p, m) in lens.multiplicities() {
        if m != 1 || !is_prime(p) || p + 3 > d {
            continue;
        }
        if lens.parts().iter().filter(|&&l| l != p).all(|&l| l % p != 0) {
            return true;
        }
    }
    false
}

/// Whether the transitive group generated by `gens` contains `A_d`, decided
/// by Jordan's theorem when a witness cycle is visible among a few short
/// words, otherwise by the order.
pub(crate) fn contains_alternating(degree: usize, gens: &[Permutation]) -> bool {
    if degree <= 2 {
        return true;
    }
    let mut words: Vec<Permutation> = gens.to_vec();
    for a in gens {
        for b in gens {
            words.push(a.then(b));
            words.push(a.then(&b.inverse()));
        }
    }
    if words.iter().any(prime_cycle_power) && is_primitive(degree, gens) {
        return true;
    }
    group_order(degree, gens) * 2 >= factorial(degree)
}
