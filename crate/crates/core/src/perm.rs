//! Permutations of `{1, …, d}` with `d ≤ 16`, and partitions (cycle types).
//!
//! Products act on the right: `p.then(&q)` applies `p` first, so
//! `i^(pq) = (i^p)^q`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 16;

/// A permutation stored as 0-based images; entries past `degree` are fixed.
///
/// The derived ordering compares degree, then image arrays lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    degree: u8,
    img: [u8; MAX_DEGREE],
}

const IDENTITY_IMG: [u8; MAX_DEGREE] = {
    let mut a = [0u8; MAX_DEGREE];
    let mut i = 0;
    while i < MAX_DEGREE {
        a[i] = i as u8;
        i += 1;
    }
    a
};

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!((1..=MAX_DEGREE).contains(&degree), "degree {degree} out of range");
        Permutation { degree: degree as u8, img: IDENTITY_IMG }
    }

    /// Builds from 1-based images, `images[i-1] = i^p`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let d = images.len();
        if d == 0 || d > MAX_DEGREE {
            return Err(Error::InvalidDegree(d));
        }
        let mut seen = [false; MAX_DEGREE];
        let mut img = IDENTITY_IMG;
        for (i, &x) in images.iter().enumerate() {
            if x == 0 || x > d || seen[x - 1] {
                return Err(Error::NotBijection(d));
            }
            seen[x - 1] = true;
            img[i] = (x - 1) as u8;
        }
        Ok(Permutation { degree: d as u8, img })
    }

    /// Builds from 0-based images without validation beyond a debug check.
    pub(crate) fn from_raw(degree: usize, raw: &[u8]) -> Self {
        let mut img = IDENTITY_IMG;
        img[..degree].copy_from_slice(&raw[..degree]);
        let p = Permutation { degree: degree as u8, img };
        debug_assert!(p.is_valid());
        p
    }

    fn is_valid(&self) -> bool {
        let mut seen = [false; MAX_DEGREE];
        for i in 0..self.degree() {
            let x = self.img[i] as usize;
            if x >= self.degree() || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        true
    }

    /// Builds from disjoint cycles given in 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::InvalidDegree(degree));
        }
        let mut img = IDENTITY_IMG;
        let mut seen = [false; MAX_DEGREE];
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                if x == 0 || x > degree || seen[x - 1] {
                    return Err(Error::Parse { what: "cycle", input: format!("{c:?}") });
                }
                seen[x - 1] = true;
                let y = c[(k + 1) % c.len()];
                img[x - 1] = (y - 1) as u8;
            }
        }
        Ok(Permutation { degree: degree as u8, img })
    }

    /// Parses cycle notation such as `(1,4,2,5,3)(6 7)`; `()` is the identity.
    /// Without an explicit degree the largest point mentioned is used.
    pub fn parse_cycles(s: &str, degree: Option<usize>) -> Result<Self> {
        let err = || Error::Parse { what: "cycle notation", input: s.to_string() };
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(err());
            }
            let close = rest.find(')').ok_or_else(err)?;
            let body = &rest[1..close];
            let pts: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| err()))
                .collect::<Result<_>>()?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
            rest = rest[close + 1..].trim_start();
        }
        let max = cycles.iter().flatten().copied().max().unwrap_or(1);
        let d = degree.unwrap_or(max);
        if max > d {
            return Err(err());
        }
        Self::from_cycles(d, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    /// 1-based image of a 1-based point.
    pub fn image(&self, point: usize) -> usize {
        assert!(point >= 1 && point <= self.degree());
        self.img[point - 1] as usize + 1
    }

    /// 0-based image of a 0-based point.
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    #[inline]
    pub(crate) fn raw(&self) -> &[u8] {
        &self.img[..self.degree()]
    }

    /// 1-based image array.
    pub fn images(&self) -> Vec<usize> {
        self.raw().iter().map(|&x| x as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.img == IDENTITY_IMG
    }

    /// `p` then `q`; panics on degree mismatch (see [`compose`] for the checked form).
    #[inline]
    pub fn then(&self, q: &Permutation) -> Permutation {
        assert_eq!(self.degree, q.degree, "degree mismatch");
        let mut img = IDENTITY_IMG;
        for i in 0..self.degree() {
            img[i] = q.img[self.img[i] as usize];
        }
        Permutation { degree: self.degree, img }
    }

    #[inline]
    pub fn inverse(&self) -> Permutation {
        let mut img = IDENTITY_IMG;
        for i in 0..self.degree() {
            img[self.img[i] as usize] = i as u8;
        }
        Permutation { degree: self.degree, img }
    }

    /// `τ⁻¹ p τ`, i.e. `p` relabelled by `τ`: the result maps `i^τ` to `(i^p)^τ`.
    #[inline]
    pub fn conjugate_by(&self, tau: &Permutation) -> Permutation {
        assert_eq!(self.degree, tau.degree, "degree mismatch");
        let mut img = IDENTITY_IMG;
        for i in 0..self.degree() {
            img[tau.img[i] as usize] = tau.img[self.img[i] as usize];
        }
        Permutation { degree: self.degree, img }
    }

    pub fn pow(&self, mut n: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = *self;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            n >>= 1;
        }
        acc
    }

    /// Cycles in 0-based points, fixed points included, each starting at
    /// its least point, ordered by that point.
    pub fn cycles0(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = [false; MAX_DEGREE];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = self.at(x);
            }
            out.push(c);
        }
        out
    }

    /// Cycles in 1-based points, fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.cycles0()
            .into_iter()
            .map(|c| c.into_iter().map(|x| x + 1).collect())
            .collect()
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = [false; MAX_DEGREE];
        let mut n = 0;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            n += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.at(x);
            }
        }
        n
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_sorted_unchecked(self.cycle_lengths())
    }

    fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = [false; MAX_DEGREE];
        let mut lens = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.at(x);
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// `d` minus the number of cycles.
    pub fn index(&self) -> usize {
        self.degree() - self.cycle_count()
    }

    pub fn is_even(&self) -> bool {
        self.index().is_multiple_of(2)
    }

    /// Order of the permutation (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, l| acc / gcd(acc, l as u64) * l as u64)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Checked composition: applies `p` first, then `q`.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    if p.degree != q.degree {
        return Err(Error::DegreeMismatch(p.degree(), q.degree()));
    }
    Ok(p.then(q))
}

pub fn inverse(p: &Permutation) -> Permutation {
    p.inverse()
}

pub fn cycle_type(p: &Permutation) -> Partition {
    p.cycle_type()
}

pub fn index(p: &Permutation) -> usize {
    p.index()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles() {
            if c.len() < 2 {
                continue;
            }
            any = true;
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(","))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[d={}]", self, self.degree)
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('[') {
            let body = t.trim_start_matches('[').trim_end_matches(']');
            let imgs: Vec<usize> = body
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse { what: "image array", input: s.to_string() })?;
            Permutation::from_images(&imgs)
        } else {
            Permutation::parse_cycles(t, None)
        }
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Permutation::from_images(&v).map_err(serde::de::Error::custom)
    }
}

/// Iterates over all of `S_d` in lexicographic order of image arrays.
pub struct SymmetricIter {
    cur: Option<[u8; MAX_DEGREE]>,
    degree: usize,
}

pub fn symmetric_group(degree: usize) -> SymmetricIter {
    assert!((1..=MAX_DEGREE).contains(&degree));
    SymmetricIter { cur: Some(IDENTITY_IMG), degree }
}

impl Iterator for SymmetricIter {
    type Item = Permutation;
    fn next(&mut self) -> Option<Permutation> {
        let cur = self.cur?;
        let out = Permutation { degree: self.degree as u8, img: cur };
        let a = &mut self.cur.as_mut().unwrap()[..self.degree];
        let n = a.len();
        let mut i = n.wrapping_sub(1);
        while i > 0 && a[i - 1] >= a[i] {
            i -= 1;
        }
        if n <= 1 || i == 0 {
            self.cur = None;
        } else {
            let mut j = n - 1;
            while a[j] <= a[i - 1] {
                j -= 1;
            }
            a.swap(i - 1, j);
            a[i..].reverse();
        }
        Some(out)
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// A partition of `d` with parts in weakly decreasing order.
///
/// `Ord` is the passport order ⪯: `a < b` iff `a` is lexicographically
/// larger, so `[d]` is least and `[1,…,1]` greatest. Partitions of
/// different totals compare by total first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Parse { what: "partition", input: format!("{parts:?}") });
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<usize>) -> Self {
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Riemann–Hurwitz index `d − #parts`.
    pub fn index(&self) -> usize {
        self.total() - self.len()
    }

    /// Whether permutations of this cycle type are even.
    pub fn is_even(&self) -> bool {
        self.index().is_multiple_of(2)
    }

    /// Multiplicity of each part as (part, count), parts descending.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, c)) if *q == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Order of the centralizer in `S_d` of a permutation of this type.
    pub fn centralizer_order(&self) -> u64 {
        self.multiplicities()
            .into_iter()
            .map(|(p, m)| (p as u64).pow(m as u32) * factorial(m))
            .product()
    }

    /// Size of the `S_d` conjugacy class of this cycle type.
    pub fn class_size(&self) -> u64 {
        factorial(self.total()) / self.centralizer_order()
    }

    /// Exponent notation joined by `sep`, e.g. `6^1 1^1`.
    pub fn exponent_notation(&self, sep: &str) -> String {
        self.multiplicities()
            .into_iter()
            .map(|(p, m)| format!("{p}^{m}"))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Parses exponent notation with parts separated by spaces, `.` or `,`,
    /// e.g. `6^1 1^1`, `3^2.1^1`; a bare part means exponent 1.
    pub fn parse_exponent(s: &str) -> Result<Self> {
        let err = || Error::Parse { what: "partition", input: s.to_string() };
        let mut parts = Vec::new();
        for tok in s.split([' ', '.', ',']).filter(|t| !t.is_empty()) {
            let (p, m) = match tok.split_once('^') {
                Some((p, m)) => (p, m),
                None => (tok, "1"),
            };
            let p: usize = p.parse().map_err(|_| err())?;
            let m: usize = m.parse().map_err(|_| err())?;
            parts.extend(std::iter::repeat_n(p, m));
        }
        Partition::new(parts).map_err(|_| err())
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.exponent_notation(" "))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Partition::new(v).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n`, in ⪯ order (`[n]` first).
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// A representative of the given cycle type: cycles of consecutive points,
/// longest first.
pub fn standard_element(lambda: &Partition) -> Permutation {
    let d = lambda.total();
    let mut cycles = Vec::new();
    let mut next = 1;
    for &p in lambda.parts() {
        cycles.push((next..next + p).collect());
        next += p;
    }
    Permutation::from_cycles(d, &cycles).expect("valid cycle layout")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(s: &str, d: usize) -> Permutation {
        Permutation::parse_cycles(s, Some(d)).unwrap()
    }

    #[test]
    fn product_identity_on_displayed_triples() {
        let s0 = cyc("(1,4,2,5,3)", 5);
        let s1 = cyc("(1,2,3,4)", 5);
        let si = cyc("(1,2,3,5)", 5);
        assert!(compose(&compose(&si, &s1).unwrap(), &s0).unwrap().is_identity());

        let s0 = cyc("(1 2 3 4 5 6)", 7);
        let s1 = cyc("(2 7 6 3 4 5)", 7);
        let si = cyc("(1 7 2)(3 5)(4 6)", 7);
        assert!(si.then(&s1).then(&s0).is_identity());
        // the opposite convention fails
        assert!(!s0.then(&s1).then(&si).is_identity());
    }

    #[test]
    fn compose_with_identity_and_mismatch() {
        let p = cyc("(1 2)", 2);
        assert_eq!(compose(&p, &Permutation::identity(2)).unwrap(), p);
        assert_eq!(
            compose(&p, &Permutation::identity(3)),
            Err(Error::DegreeMismatch(2, 3))
        );
    }

    #[test]
    fn cycle_types_and_index() {
        assert_eq!(Permutation::identity(5).cycle_type().parts(), &[1, 1, 1, 1, 1]);
        assert_eq!(cyc("(1 4 2 5 3)", 5).cycle_type().parts(), &[5]);
        assert_eq!(cyc("(1 7 2)(3 5)(4 6)", 7).cycle_type().parts(), &[3, 2, 2]);
        assert_eq!(Permutation::identity(7).index(), 0);
        assert_eq!(cyc("(1 2 3)(4 5)", 5).index(), 3);
        assert_eq!(cyc("(1 4 2 5 3)", 5).index(), 4);
    }

    #[test]
    fn text_forms_round_trip() {
        let p = cyc("(1,4,2,5,3)", 5);
        assert_eq!(p.images(), vec![4, 5, 1, 2, 3]);
        assert_eq!(p.to_string(), "(1,4,2,5,3)");
        assert_eq!("[4,5,1,2,3]".parse::<Permutation>().unwrap(), p);
        assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p);
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert!(Permutation::from_images(&[1, 1, 2]).is_err());
        assert!(Permutation::parse_cycles("(1,2", None).is_err());
    }

    #[test]
    fn conjugation_relabels() {
        let p = cyc("(1 2 3)", 4);
        let tau = cyc("(1 4)", 4);
        assert_eq!(p.conjugate_by(&tau), cyc("(4 2 3)", 4));
        assert_eq!(p.conjugate_by(&tau), tau.inverse().then(&p).then(&tau));
    }

    #[test]
    fn symmetric_iteration_is_sorted_and_complete() {
        for d in 1..=5 {
            let all: Vec<_> = symmetric_group(d).collect();
            assert_eq!(all.len() as u64, factorial(d));
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn partition_order_and_notation() {
        let p5 = Partition::new(vec![5]).unwrap();
        let p41 = Partition::new(vec![1, 4]).unwrap();
        assert!(p5 < p41);
        assert!(Partition::new(vec![4]).unwrap() < Partition::new(vec![2, 2]).unwrap());
        assert_eq!(p41.to_string(), "4^1 1^1");
        assert_eq!(Partition::parse_exponent("3^1.2^2").unwrap().parts(), &[3, 2, 2]);
        assert_eq!(Partition::parse_exponent("4^1 1^1").unwrap(), p41);
        let all = partitions(6);
        assert_eq!(all.len(), 11);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let total: u64 = all.iter().map(|l| l.class_size()).sum();
        assert_eq!(total, 720);
    }

    #[test]
    fn standard_elements_have_requested_type() {
        for l in partitions(7) {
            assert_eq!(standard_element(&l).cycle_type(), l);
        }
    }
}
