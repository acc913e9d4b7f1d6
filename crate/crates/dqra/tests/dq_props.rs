mod common;

use common::naive;
use dqra::catalog::{build_tuples, PosetCatalog};
use dqra::relcore::{dual_order_automorphisms, map_order};
use dqra::{build, ConcreteDqRA, Endomap, Error, FinRel, Poset, DEFAULT_CAP};

fn small_builds() -> Vec<ConcreteDqRA> {
    let cat = PosetCatalog::generate(3);
    build_tuples(&cat, 3)
        .into_iter()
        .map(|t| build(&t.poset, &t.e, &t.alpha, &t.beta, DEFAULT_CAP).unwrap())
        .collect()
}

fn chain2_twisted() -> ConcreteDqRA {
    build(&Poset::chain(2), &FinRel::full(2), &Endomap::identity(2), &Endomap::new(vec![1, 0]).unwrap(), DEFAULT_CAP).unwrap()
}

fn rel(n: usize, pairs: &[(usize, usize)]) -> FinRel {
    FinRel::from_pairs(n, pairs.iter().copied()).unwrap()
}

fn from_naive(m: &naive::M) -> FinRel {
    FinRel::from_fn(m.len(), |x, y| m[x][y])
}

#[test]
fn closed_forms_against_independent_formulas() {
    for b in small_builds() {
        let e = naive::of(b.e());
        let ga = naive::graph(b.alpha().image());
        let gb = naive::graph(b.beta().image());
        let leq = naive::of(b.one());
        let zero = naive::compose(&ga, &naive::converse(&naive::complement(&leq, &e)));
        assert_eq!(naive::of(b.zero()), zero);
        assert_eq!(zero, naive::compose(&naive::converse(&naive::complement(&leq, &e)), &ga));
        for r in b.carrier() {
            let rc = naive::complement(&naive::of(r), &e);
            let tilde = naive::compose(&naive::converse(&rc), &ga);
            let minus = naive::compose(&ga, &naive::converse(&rc));
            let prime = naive::compose(&naive::compose(&naive::compose(&ga, &gb), &rc), &gb);
            assert_eq!(naive::of(&b.tilde(r).unwrap()), tilde);
            assert_eq!(naive::of(&b.minus(r).unwrap()), minus);
            assert_eq!(naive::of(&b.prime(r).unwrap()), prime);
            assert!(b.in_carrier(&from_naive(&prime)));
            // residual definitions are the oracle for the negations
            assert_eq!(b.tilde(r).unwrap(), b.tilde_by_residual(r));
            assert_eq!(b.minus(r).unwrap(), b.minus_by_residual(r));
            assert_eq!(b.tilde(r).unwrap(), b.residual_left(r, b.zero()).unwrap());
            assert_eq!(b.minus(r).unwrap(), b.residual_right(b.zero(), r).unwrap());
        }
    }
}

#[test]
fn powers_of_the_negations_match_iteration() {
    for b in small_builds() {
        for r in b.carrier() {
            let (mut t, mut m) = (r.clone(), r.clone());
            for n in 0..=6 {
                assert_eq!(b.tilde_n(r, n).unwrap(), t, "∼^{n}");
                assert_eq!(b.minus_n(r, n).unwrap(), m, "−^{n}");
                t = b.tilde(&t).unwrap();
                m = b.minus(&m).unwrap();
            }
            assert_eq!(b.minus(&b.tilde(r).unwrap()).unwrap(), *r);
            assert_eq!(b.tilde(&b.minus(r).unwrap()).unwrap(), *r);
            assert_eq!(b.prime(&b.prime(r).unwrap()).unwrap(), *r);
        }
    }
}

#[test]
fn periodicity_is_the_order_of_alpha() {
    for b in small_builds() {
        let k = map_order(b.alpha()).unwrap();
        assert_eq!(b.periodicity(), k);
        assert_eq!(b.is_cyclic(), k == 1);
        if b.alpha().is_identity() {
            assert!(b.is_cyclic());
        }
    }
}

#[test]
fn derived_primes_in_terms_of_alpha_and_beta() {
    for b in small_builds() {
        let a = b.alpha().graph();
        let beta = b.beta().graph();
        let c = |r: &FinRel| r.complement_in(b.e()).unwrap();
        for r in b.carrier() {
            let p = b.prime(r).unwrap();
            // ∼∼R′ = β∘Rᶜ∘β∘α
            assert_eq!(b.tilde_n(&p, 2).unwrap(), beta.then(&c(r)).then(&beta).then(&a));
            for n in 1..=3 {
                let an = b.alpha().power(n).graph();
                let up = an.then(&beta);
                let down = beta.then(&an);
                assert_eq!(b.minus_n(&p, 2 * n).unwrap(), a.then(&up).then(&c(r)).then(&up));
                assert_eq!(b.tilde_n(&p, 2 * n).unwrap(), a.then(&down).then(&c(r)).then(&down));
            }
        }
    }
}

/// The single-sided form `α∘γ∘Rᶜ∘α` is not available in general: already on
/// the six-element algebra (α = id) no dual automorphism `γ` works, since the
/// derived prime needs the dual map on both sides of `Rᶜ`.
#[test]
fn single_sided_form_fails_on_the_six_element_algebra() {
    let b = chain2_twisted();
    let a = b.alpha().graph();
    let c = |r: &FinRel| r.complement_in(b.e()).unwrap();
    let duals = dual_order_automorphisms(b.poset(), true);
    assert!(!duals.is_empty());
    for g in duals {
        let g = g.graph();
        let ok = b
            .carrier()
            .iter()
            .all(|r| b.minus_n(&b.prime(r).unwrap(), 2).unwrap() == a.then(&g).then(&c(r)).then(&a));
        assert!(!ok);
    }
}

#[test]
fn double_negations_preserve_fusion() {
    for b in small_builds() {
        for r in b.carrier() {
            for s in b.carrier().iter().step_by(3) {
                let rs = b.fuse(r, s).unwrap();
                assert_eq!(b.tilde_n(&rs, 2).unwrap(), b.tilde_n(r, 2).unwrap().then(&b.tilde_n(s, 2).unwrap()));
                assert_eq!(b.minus_n(&rs, 2).unwrap(), b.minus_n(r, 2).unwrap().then(&b.minus_n(s, 2).unwrap()));
            }
        }
    }
}

#[test]
fn residuals_form_an_adjunction_on_the_six_element_algebra() {
    let b = chain2_twisted();
    let c = b.carrier();
    for r in c {
        for s in c {
            let rl = b.residual_left(r, s).unwrap();
            let rr = b.residual_right(s, r).unwrap();
            for t in c {
                let fits = s.contains(&b.fuse(r, t).unwrap());
                assert_eq!(fits, rl.contains(t));
                let fits = s.contains(&b.fuse(t, r).unwrap());
                assert_eq!(fits, rr.contains(t));
            }
        }
    }
    let leq = b.one();
    assert_eq!(&b.residual_left(leq, leq).unwrap(), leq);
    for r in c {
        assert_eq!(&b.residual_left(r, b.e()).unwrap(), b.e());
    }
}

#[test]
fn plus_laws_on_the_six_element_algebra() {
    let b = chain2_twisted();
    for r in b.carrier() {
        assert_eq!(&b.plus(b.zero(), r).unwrap(), r);
        assert_eq!(&b.plus(r, b.e()).unwrap(), b.e());
        for s in b.carrier() {
            let ps = b.plus(r, s).unwrap();
            let via_minus = b.minus(&b.tilde(s).unwrap().then(&b.tilde(r).unwrap())).unwrap();
            assert_eq!(ps, via_minus);
            let lhs = b.prime(&b.fuse(r, s).unwrap()).unwrap();
            assert_eq!(lhs, b.plus(&b.prime(r).unwrap(), &b.prime(s).unwrap()).unwrap());
        }
    }
}

#[test]
fn worked_examples() {
    let b = chain2_twisted();
    assert_eq!(b.len(), 6);
    assert_eq!(b.zero(), &rel(2, &[(0, 1)]));
    let xx_xy = rel(2, &[(0, 0), (0, 1)]);
    assert_eq!(b.prime(&xx_xy).unwrap(), xx_xy);
    assert_eq!(b.tilde(&FinRel::empty(2)).unwrap(), FinRel::full(2));

    // discrete two points, E = X², α = swap, β = id
    let swap = Endomap::new(vec![1, 0]).unwrap();
    let d = build(&Poset::antichain(2), &FinRel::full(2), &swap, &Endomap::identity(2), DEFAULT_CAP).unwrap();
    assert_eq!(d.len(), 16);
    assert_eq!(d.zero(), d.one());
    assert_eq!(d.tilde(d.one()).unwrap(), *d.one());
    let most = rel(2, &[(0, 1), (1, 0), (1, 1)]);
    assert_eq!(d.fuse(&most, &most).unwrap(), FinRel::full(2));
    assert_eq!(d.prime(&most).unwrap(), rel(2, &[(1, 0)]));
    assert!(!d.is_cyclic());
    assert_eq!(d.periodicity(), 2);
    let abs = d.to_abstract();
    assert!((0..abs.size()).any(|x| abs.tilde(x) != abs.minus(x)));

    // three-cycle α on the discrete 3-point poset
    let cyc = Endomap::new(vec![1, 2, 0]).unwrap();
    let t = build(&Poset::antichain(3), &FinRel::full(3), &cyc, &Endomap::new(vec![0, 2, 1]).unwrap(), DEFAULT_CAP).unwrap();
    assert_eq!(t.periodicity(), 3);

    let one = build(&Poset::chain(1), &FinRel::full(1), &Endomap::identity(1), &Endomap::identity(1), DEFAULT_CAP).unwrap();
    let abs = one.to_abstract();
    assert_eq!(abs.size(), 2);
    assert_eq!(one.zero(), &FinRel::empty(1));
}

#[test]
fn hypotheses_are_reported_by_name() {
    let p = Poset::antichain(3);
    let full = FinRel::full(3);
    let a = Endomap::new(vec![1, 0, 2]).unwrap();
    let b = Endomap::new(vec![1, 2, 0]).unwrap();
    assert!(matches!(build(&p, &full, &a, &b, DEFAULT_CAP), Err(Error::AbaConditionFailed { .. })));
    let chain = Poset::chain(2);
    let id = Endomap::identity(2);
    assert!(matches!(
        build(&chain, &FinRel::full(2), &id, &id, DEFAULT_CAP),
        Err(Error::BetaNotDualAutomorphism(_))
    ));
    let e = FinRel::identity(2);
    let swap = Endomap::new(vec![1, 0]).unwrap();
    assert!(matches!(
        build(&Poset::antichain(2), &e, &swap, &id, DEFAULT_CAP),
        Err(Error::GammaNotInsideE { map: "alpha", .. })
    ));
    assert!(matches!(
        build(&Poset::antichain(3), &FinRel::full(3), &Endomap::identity(3), &Endomap::identity(3), 10),
        Err(Error::CarrierCapExceeded { .. })
    ));
    let not_bij = Endomap::new(vec![0, 0]).unwrap();
    assert!(matches!(
        build(&Poset::antichain(2), &FinRel::full(2), &not_bij, &id, DEFAULT_CAP),
        Err(Error::NotOrderAutomorphism(_))
    ));
}

#[test]
fn non_carrier_arguments_are_rejected() {
    let b = chain2_twisted();
    let yx = rel(2, &[(1, 0)]);
    assert!(matches!(b.tilde(&yx), Err(Error::NotInCarrier(_))));
    assert!(b.fuse(&yx, b.one()).is_err());
    assert!(b.prime(&yx).is_err());
}
