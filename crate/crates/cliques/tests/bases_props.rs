//! H and K bases: round trips and closed composition rules on random inputs.

mod common;

use cliques::bases::{compose_h, compose_k, from_h, from_k, to_h, to_k};
use cliques::operad::{partial_compose_lin, LinComb};
use cliques::Magma;
use common::{sized_finite_clique, sized_integer_clique};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn round_trips_on_combinations(
        p in sized_finite_clique(Magma::d(1), 3, 3),
        q in sized_finite_clique(Magma::d(1), 3, 3),
        a in -5i64..6,
        b in -5i64..6,
    ) {
        let f = LinComb::from_int_terms(p.magma(), 3, &[(a, p.clone()), (b, q.clone())]).unwrap();
        prop_assert_eq!(&to_h(&from_h(&f)), &f);
        prop_assert_eq!(&from_h(&to_h(&f)), &f);
        prop_assert_eq!(&to_k(&from_k(&f)), &f);
        prop_assert_eq!(&from_k(&to_k(&f)), &f);
    }

    #[test]
    fn closed_rules_over_z(
        p in sized_integer_clique(Magma::integers(), 2, 3, 2),
        q in sized_integer_clique(Magma::integers(), 2, 3, 2),
        i in 1usize..4,
    ) {
        let i = 1 + (i - 1) % p.arity();
        let hp = from_h(&LinComb::from_clique(&p));
        let hq = from_h(&LinComb::from_clique(&q));
        prop_assert_eq!(from_h(&compose_h(&p, &q, i).unwrap()), partial_compose_lin(&hp, &hq, i).unwrap());
        let kp = from_k(&LinComb::from_clique(&p));
        let kq = from_k(&LinComb::from_clique(&q));
        prop_assert_eq!(from_k(&compose_k(&p, &q, i).unwrap()), partial_compose_lin(&kp, &kq, i).unwrap());
    }

    #[test]
    fn closed_rules_over_e2(
        p in sized_finite_clique(Magma::e(2), 2, 3),
        q in sized_finite_clique(Magma::e(2), 2, 3),
        i in 1usize..4,
    ) {
        let i = 1 + (i - 1) % p.arity();
        let hp = from_h(&LinComb::from_clique(&p));
        let hq = from_h(&LinComb::from_clique(&q));
        prop_assert_eq!(from_h(&compose_h(&p, &q, i).unwrap()), partial_compose_lin(&hp, &hq, i).unwrap());
        let kp = from_k(&LinComb::from_clique(&p));
        let kq = from_k(&LinComb::from_clique(&q));
        prop_assert_eq!(from_k(&compose_k(&p, &q, i).unwrap()), partial_compose_lin(&kp, &kq, i).unwrap());
    }
}
