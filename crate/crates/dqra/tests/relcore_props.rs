mod common;

use common::naive;
use dqra::relcore::{graph_compose_map, map_order, Side};
use dqra::{Endomap, FinRel};
use proptest::prelude::*;

fn rel(n: usize) -> impl Strategy<Value = FinRel> {
    prop::collection::vec(any::<bool>(), n * n)
        .prop_map(move |bits| FinRel::from_fn(n, |x, y| bits[x * n + y]))
}

fn perm(n: usize) -> impl Strategy<Value = Endomap> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Endomap::new(v).unwrap())
}

/// `(n, R, S, T)` at a common random size `1..=5`.
fn triple() -> impl Strategy<Value = (usize, FinRel, FinRel, FinRel)> {
    (1usize..=5).prop_flat_map(|n| (Just(n), rel(n), rel(n), rel(n)))
}

fn full(n: usize) -> FinRel {
    FinRel::full(n)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, rng_seed: proptest::test_runner::RngSeed::Fixed(common::seed()), ..ProptestConfig::default() })]

    #[test]
    fn converse_and_complement_identities((n, r, s, t) in triple()) {
        let u = full(n);
        prop_assert_eq!(r.converse().converse(), r.clone());
        prop_assert_eq!(
            r.converse().complement_in(&u).unwrap(),
            r.complement_in(&u).unwrap().converse()
        );
        prop_assert_eq!(r.union(&s).union(&t).converse(), r.converse().union(&s.converse()).union(&t.converse()));
        prop_assert_eq!(
            r.intersection(&s).intersection(&t).converse(),
            r.converse().intersection(&s.converse()).intersection(&t.converse())
        );
        prop_assert_eq!(naive::of(&r.converse()), naive::converse(&naive::of(&r)));
        prop_assert_eq!(naive::of(&r.complement_in(&u).unwrap()), naive::complement(&naive::of(&r), &naive::of(&u)));
    }

    #[test]
    fn composition_identities((n, r, s, t) in triple()) {
        let id = FinRel::identity(n);
        prop_assert_eq!(id.then(&r), r.clone());
        prop_assert_eq!(r.then(&id), r.clone());
        prop_assert_eq!(r.then(&s).then(&t), r.then(&s.then(&t)));
        prop_assert_eq!(r.then(&s).converse(), s.converse().then(&r.converse()));
        prop_assert_eq!(r.union(&s).then(&t), r.then(&t).union(&s.then(&t)));
        prop_assert_eq!(t.then(&r.union(&s)), t.then(&r).union(&t.then(&s)));
        prop_assert_eq!(naive::of(&r.then(&s)), naive::compose(&naive::of(&r), &naive::of(&s)));
        prop_assert_eq!(naive::of(&r.compose(&s).unwrap()), naive::compose(&naive::of(&r), &naive::of(&s)));
    }

    #[test]
    fn bijection_graph_identities(((n, r, s, _), g) in triple().prop_flat_map(|t| { let n = t.0; (Just(t), perm(n)) })) {
        let u = full(n);
        let gl = |x: &FinRel| graph_compose_map(&g, x, Side::Left).unwrap();
        let gr = |x: &FinRel| graph_compose_map(&g, x, Side::Right).unwrap();
        let c = |x: &FinRel| x.complement_in(&u).unwrap();
        // against the plain composition with the graph
        prop_assert_eq!(naive::of(&gl(&r)), naive::compose(&naive::graph(g.image()), &naive::of(&r)));
        prop_assert_eq!(naive::of(&gr(&r)), naive::compose(&naive::of(&r), &naive::graph(g.image())));
        prop_assert_eq!(c(&gl(&r)), gl(&c(&r)));
        prop_assert_eq!(c(&gr(&r)), gr(&c(&r)));
        prop_assert_eq!(gl(&r.intersection(&s)), gl(&r).intersection(&gl(&s)));
        prop_assert_eq!(gr(&r.intersection(&s)), gr(&r).intersection(&gr(&s)));
        let k = map_order(&g).unwrap();
        if k >= 2 {
            for j in 1..k {
                prop_assert_eq!(g.power(k - j).graph(), g.graph().converse().power(j));
            }
        }
    }

    #[test]
    fn transitive_and_symmetric_containers((_, r, s, t) in triple()) {
        let tc = t.reflexive_transitive_closure();
        let (r, s) = (r.intersection(&tc), s.intersection(&tc));
        prop_assert!(tc.contains(&r.then(&s)));
        let sym = t.union(&t.converse());
        prop_assert!(sym.contains(&r.intersection(&sym).converse()));
    }

    #[test]
    fn maps_inside_an_equivalence_commute_with_restriction(
        (n, r, blocks) in (1usize..=5).prop_flat_map(|n| (Just(n), rel(n), prop::collection::vec(0usize..3, n)))
    ) {
        let e = FinRel::from_fn(n, |x, y| blocks[x] == blocks[y]);
        // rotate the members of each block: a bijection inside E
        let mut img: Vec<usize> = (0..n).collect();
        for b in 0..3 {
            let members: Vec<usize> = (0..n).filter(|&x| blocks[x] == b).collect();
            for (i, &x) in members.iter().enumerate() {
                img[x] = members[(i + 1) % members.len()];
            }
        }
        let g = Endomap::new(img).unwrap();
        prop_assert!(g.escapes(&e).is_none());
        prop_assert_eq!(r.map_left(&g).intersection(&e), r.intersection(&e).map_left(&g));
        prop_assert_eq!(r.map_right(&g).intersection(&e), r.intersection(&e).map_right(&g));
    }
}

#[test]
fn fixed_examples() {
    let r = FinRel::from_pairs(2, [(0, 1)]).unwrap();
    assert_eq!(r.then(&FinRel::identity(2)), r);
    assert_eq!(r.then(&FinRel::from_pairs(2, [(1, 0)]).unwrap()), FinRel::from_pairs(2, [(0, 0)]).unwrap());
    assert_eq!(r.converse(), FinRel::from_pairs(2, [(1, 0)]).unwrap());
    let chain = FinRel::from_pairs(2, [(0, 0), (0, 1), (1, 1)]).unwrap();
    assert_eq!(chain.complement_in(&FinRel::full(2)).unwrap(), FinRel::from_pairs(2, [(1, 0)]).unwrap());
    assert_eq!(FinRel::empty(3).complement_in(&FinRel::full(3)).unwrap(), FinRel::full(3));
    assert!(FinRel::full(2).complement_in(&FinRel::identity(2)).is_err());
    let swap = Endomap::new(vec![1, 0]).unwrap();
    let xx = FinRel::from_pairs(2, [(0, 0)]).unwrap();
    assert_eq!(graph_compose_map(&swap, &xx, Side::Left).unwrap(), FinRel::from_pairs(2, [(1, 0)]).unwrap());
    assert!(FinRel::identity(3).is_partial_order());
    assert!(FinRel::full(3).is_equivalence());
    let bad = FinRel::from_pairs(2, [(0, 0), (1, 1), (0, 1), (1, 0)]).unwrap();
    assert!(!bad.is_partial_order());
    assert!(FinRel::identity(2).compose(&FinRel::identity(3)).is_err());
    assert_eq!(map_order(&Endomap::new(vec![1, 2, 0]).unwrap()).unwrap(), 3);
    assert!(map_order(&Endomap::new(vec![0, 0]).unwrap()).is_err());
}
