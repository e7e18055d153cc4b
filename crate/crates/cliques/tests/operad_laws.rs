//! Operad laws on random cliques over the integers and over a non-associative magma.

mod common;

use cliques::operad::{partial_compose, partial_compose_lin, star, LinComb};
use cliques::{Clique, Magma};
use common::{sized_finite_clique, sized_integer_clique};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn unit_laws(p in sized_integer_clique(Magma::integers(), 1, 5, 3)) {
        let u = Clique::unit(p.magma());
        prop_assert_eq!(&partial_compose(&u, &p, 1).unwrap(), &p);
        for i in 1..=p.arity() {
            prop_assert_eq!(&partial_compose(&p, &u, i).unwrap(), &p);
        }
    }

    #[test]
    fn series_associativity_over_e2(
        p in sized_finite_clique(Magma::e(2), 2, 3),
        q in sized_finite_clique(Magma::e(2), 2, 3),
        r in sized_finite_clique(Magma::e(2), 1, 3),
        i in 1usize..4,
        j in 1usize..4,
    ) {
        let i = 1 + (i - 1) % p.arity();
        let j = 1 + (j - 1) % q.arity();
        let lhs = partial_compose(&partial_compose(&p, &q, i).unwrap(), &r, i + j - 1).unwrap();
        let rhs = partial_compose(&p, &partial_compose(&q, &r, j).unwrap(), i).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn parallel_associativity_over_z(
        p in sized_integer_clique(Magma::integers(), 2, 4, 2),
        q in sized_integer_clique(Magma::integers(), 1, 3, 2),
        r in sized_integer_clique(Magma::integers(), 1, 3, 2),
        i in 1usize..5,
        j in 1usize..5,
    ) {
        let n = p.arity();
        let (i, j) = (1 + (i - 1) % n, 1 + (j - 1) % n);
        prop_assume!(i < j);
        let lhs = partial_compose(&partial_compose(&p, &r, j).unwrap(), &q, i).unwrap();
        let rhs = partial_compose(&partial_compose(&p, &q, i).unwrap(), &r, j + q.arity() - 1).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reflection_is_an_antiautomorphism(
        p in sized_integer_clique(Magma::integers(), 1, 4, 3),
        q in sized_integer_clique(Magma::integers(), 1, 4, 3),
        i in 1usize..5,
    ) {
        let n = p.arity();
        let i = 1 + (i - 1) % n;
        let lhs = partial_compose(&p, &q, i).unwrap().reflect();
        let rhs = partial_compose(&p.reflect(), &q.reflect(), n + 1 - i).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(p.reflect().reflect(), p);
    }

    #[test]
    fn rotation_has_order_n_plus_one(p in sized_integer_clique(Magma::integers(), 1, 5, 3)) {
        let mut r = p.clone();
        for _ in 0..=p.arity() {
            r = r.rotate();
        }
        prop_assert_eq!(r, p);
    }

    #[test]
    fn star_with_all_unit_clique_is_neutral(p in sized_integer_clique(Magma::integers(), 1, 5, 3)) {
        let u = Clique::all_unit(p.magma(), p.arity()).unwrap();
        prop_assert_eq!(&star(&p, &u).unwrap(), &p);
        prop_assert_eq!(&star(&u, &p).unwrap(), &p);
    }

    #[test]
    fn linear_composition_extends_clique_composition(
        p in sized_finite_clique(Magma::d(1), 2, 3),
        p2 in sized_finite_clique(Magma::d(1), 3, 3),
        q in sized_finite_clique(Magma::d(1), 1, 3),
        a in -3i64..4,
        b in -3i64..4,
    ) {
        prop_assume!(p.arity() == p2.arity());
        let m = p.magma().clone();
        let f = LinComb::from_int_terms(&m, p.arity(), &[(a, p.clone()), (b, p2.clone())]).unwrap();
        let g = LinComb::from_clique(&q);
        let lhs = partial_compose_lin(&f, &g, 1).unwrap();
        let rhs = LinComb::from_int_terms(
            &m,
            p.arity() + q.arity() - 1,
            &[(a, partial_compose(&p, &q, 1).unwrap()), (b, partial_compose(&p2, &q, 1).unwrap())],
        )
        .unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
