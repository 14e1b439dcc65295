use belyi_core::perm::{partitions, standard_element};
use belyi_core::{canonical_triple, Partition, Permutation, PermutationTriple};
use proptest::prelude::*;

fn perm(d: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=d).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

fn perms(d: usize, n: usize) -> impl Strategy<Value = Vec<Permutation>> {
    proptest::collection::vec(perm(d), n)
}

proptest! {
    #[test]
    fn composition_is_associative((d, ps) in (1usize..=12).prop_flat_map(|d| (Just(d), perms(d, 3)))) {
        let _ = d;
        let (a, b, c) = (ps[0], ps[1], ps[2]);
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        prop_assert!(a.then(&a.inverse()).is_identity());
        prop_assert_eq!(a.inverse().inverse(), a);
    }

    #[test]
    fn cycle_type_and_conjugation((d, ps) in (1usize..=12).prop_flat_map(|d| (Just(d), perms(d, 2)))) {
        let (a, t) = (ps[0], ps[1]);
        let c = a.conjugate_by(&t);
        prop_assert_eq!(c.cycle_type(), a.cycle_type());
        prop_assert_eq!(c, t.inverse().then(&a).then(&t));
        prop_assert_eq!(a.cycle_type().total(), d);
        prop_assert_eq!(a.index(), d - a.cycle_count());
        prop_assert_eq!(a.is_even(), a.index() % 2 == 0);
        prop_assert!(a.pow(a.order()).is_identity());
        let text = a.to_string();
        prop_assert_eq!(Permutation::parse_cycles(&text, Some(d)).unwrap(), a);
    }

    #[test]
    fn triples_and_canonical_forms((d, ps) in (1usize..=8).prop_flat_map(|d| (Just(d), perms(d, 3)))) {
        let t = PermutationTriple::from_pair(ps[0], ps[1]);
        prop_assert!(t.sigma_inf.then(&t.sigma1).then(&t.sigma0).is_identity());
        let c = canonical_triple(&t);
        prop_assert_eq!(canonical_triple(&t.conjugate_by(&ps[2])), c);
        prop_assert_eq!(canonical_triple(&c), c);
        prop_assert_eq!(c.cycle_types(), t.cycle_types());
        if t.is_transitive() {
            let g = t.genus().unwrap() as i64;
            let idx: i64 = t.as_array().iter().map(|p| p.index() as i64).sum();
            prop_assert_eq!(2 * g - 2, -2 * d as i64 + idx);
        }
        let _ = d;
    }

    #[test]
    fn partition_round_trips(n in 1usize..=10, k in 0usize..200) {
        let ps = partitions(n);
        let l: &Partition = &ps[k % ps.len()];
        prop_assert_eq!(standard_element(l).cycle_type(), l.clone());
        prop_assert_eq!(Partition::parse_exponent(&l.exponent_notation(".")).unwrap(), l.clone());
        for w in ps.windows(2) {
            prop_assert!(w[0] < w[1]);
        }
    }
}

#[test]
fn partition_order_extremes() {
    let ps = partitions(5);
    assert_eq!(ps.first().unwrap().parts(), &[5]);
    assert_eq!(ps.last().unwrap().parts(), &[1, 1, 1, 1, 1]);
}
