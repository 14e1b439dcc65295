use std::collections::BTreeMap;

use belyi_core::perm::symmetric_group;
use belyi_core::pointed::{descent_witness, pointed_classes, pointed_counts};
use belyi_core::{descends_by_size, enumerate_degree, pointed_aut, Branch, Partition, Passport, Permutation, PermutationTriple};

fn part(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn find(ps: &[Passport], genus: usize, order: u64, lambda: [&[usize]; 3]) -> Passport {
    let l = [part(lambda[0]), part(lambda[1]), part(lambda[2])];
    let hits: Vec<_> = ps
        .iter()
        .filter(|p| p.genus == genus && p.group.order == order && p.lambda_matches_unordered(&l))
        .collect();
    assert_eq!(hits.len(), 1, "{lambda:?}");
    hits[0].clone()
}

/// Counts by scanning all of S_d for automorphisms and cycle stabilizers.
fn brute_counts(t: &PermutationTriple) -> BTreeMap<(Branch, usize, usize), usize> {
    let d = t.degree();
    let aut: Vec<Permutation> = symmetric_group(d)
        .filter(|tau| t.conjugate_by(tau) == *t)
        .collect();
    let mut out = BTreeMap::new();
    for s in Branch::ALL {
        let cycles = t.get(s).cycles();
        let key = |c: &[usize]| {
            let mut v = c.to_vec();
            v.sort();
            v
        };
        let mut done = Vec::new();
        for c in &cycles {
            let k = key(c);
            if done.contains(&k) {
                continue;
            }
            let stab = aut
                .iter()
                .filter(|tau| key(&c.iter().map(|&x| tau.image(x)).collect::<Vec<_>>()) == k)
                .count();
            for tau in &aut {
                let img = key(&c.iter().map(|&x| tau.image(x)).collect::<Vec<_>>());
                if !done.contains(&img) {
                    done.push(img);
                }
            }
            *out.entry((s, c.len(), stab)).or_default() += 1;
        }
    }
    out
}

#[test]
fn pointed_counts_match_brute_force() {
    for d in 1..=6 {
        for p in enumerate_degree(d).unwrap() {
            for t in &p.triples {
                assert_eq!(pointed_counts(t), brute_counts(t), "{t}");
            }
        }
    }
}

#[test]
fn pointed_aut_matches_counts() {
    for p in enumerate_degree(6).unwrap() {
        for t in &p.triples {
            let counts = pointed_counts(t);
            for s in Branch::ALL {
                for c in t.get(s).cycles() {
                    let a = pointed_aut(t, s, &c).unwrap().order() as usize;
                    assert!(counts.contains_key(&(s, c.len(), a)));
                }
            }
        }
    }
}

#[test]
fn degree_five_example_descends() {
    let p = find(&enumerate_degree(5).unwrap(), 1, 120, [&[5], &[4, 1], &[4, 1]]);
    assert_eq!(p.size(), 1);
    let classes = pointed_classes(&p);
    let w = descent_witness(&p, &classes).unwrap();
    assert_eq!((w.base, w.length, w.aut_order, w.size), (Branch::Zero, 5, 1, 1));
    assert!(descends_by_size(&p));
}

#[test]
fn degree_seven_example_descends() {
    let p = find(&enumerate_degree(7).unwrap(), 1, 5040, [&[6, 1], &[6, 1], &[3, 2, 2]]);
    assert_eq!(p.size(), 13);
    let classes = pointed_classes(&p);
    assert!(descent_witness(&p, &classes).is_some());
    let six = classes
        .iter()
        .find(|pp| pp.base == Branch::Zero && pp.length == 6 && pp.aut_order == 1)
        .unwrap();
    assert_eq!((six.size, six.contributing), (13, 13));
}

#[test]
fn degree_eight_example_has_no_witness() {
    let p = find(&enumerate_degree(8).unwrap(), 1, 96, [&[3, 3, 1, 1], &[4, 4], &[4, 4]]);
    assert_eq!(p.size(), 1);
    let classes = pointed_classes(&p);
    assert!(!classes.is_empty());
    assert!(classes.iter().all(|pp| pp.size == 2));
    assert!(!descends_by_size(&p));
}

#[test]
fn pointed_sizes_sum_to_cycle_orbits() {
    // Σ over pointed passports with base s of size = Σ over triples of the
    // number of Aut-orbits on cycles of σ_s.
    for p in enumerate_degree(7).unwrap() {
        let classes = pointed_classes(&p);
        for s in Branch::ALL {
            let total: usize = classes.iter().filter(|pp| pp.base == s).map(|pp| pp.size).sum();
            let direct: usize = p
                .triples
                .iter()
                .map(|t| pointed_counts(t).iter().filter(|((b, _, _), _)| *b == s).map(|(_, n)| n).sum::<usize>())
                .sum();
            assert_eq!(total, direct);
            assert!(total >= p.size());
        }
        if p.size() == 1 && descends_by_size(&p) {
            assert!(classes.iter().any(|pp| pp.size == 1));
        }
    }
}
