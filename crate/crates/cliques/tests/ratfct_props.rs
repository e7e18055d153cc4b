//! The map to rational functions, checked against direct substitution at rational points.

mod common;

use cliques::magma::RankFunction;
use cliques::operad::{partial_compose, star};
use cliques::ratfct::f_theta;
use cliques::Magma;
use common::sized_integer_clique;
use num::BigRational;
use proptest::prelude::*;

fn point(values: &[i64]) -> Vec<BigRational> {
    values.iter().map(|&v| BigRational::from_integer(v.into())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn morphism_law_by_substitution(
        p in sized_integer_clique(Magma::integers(), 1, 4, 3),
        q in sized_integer_clique(Magma::integers(), 1, 4, 3),
        i in 1usize..5,
        u in proptest::collection::vec(1i64..20, 7),
    ) {
        let (n, m) = (p.arity(), q.arity());
        let i = 1 + (i - 1) % n;
        let id = RankFunction::identity();
        let u = point(&u[..n + m - 1]);
        let lhs = f_theta(&partial_compose(&p, &q, i).unwrap(), &id).unwrap().eval(&u).unwrap();
        let mut outer = u[..i - 1].to_vec();
        outer.push(u[i - 1..i + m - 1].iter().sum());
        outer.extend_from_slice(&u[i + m - 1..]);
        let f = f_theta(&p, &id).unwrap().eval(&outer).unwrap();
        let g = f_theta(&q, &id).unwrap().eval(&u[i - 1..i + m - 1]).unwrap();
        prop_assert_eq!(lhs, f * g);
    }

    #[test]
    fn star_is_multiplicative(
        p in sized_integer_clique(Magma::integers(), 2, 4, 3),
        seed in proptest::collection::vec(-3i64..=3, 10),
        u in proptest::collection::vec(1i64..20, 4),
    ) {
        let n = p.arity();
        let labels: Vec<i64> = seed.into_iter().take(cliques::clique::arc_count(n)).collect();
        let q = cliques::Clique::new(p.magma(), n, labels).unwrap();
        let id = RankFunction::identity();
        let u = point(&u[..n]);
        let lhs = f_theta(&star(&p, &q).unwrap(), &id).unwrap().eval(&u).unwrap();
        let rhs = f_theta(&p, &id).unwrap().eval(&u).unwrap() * f_theta(&q, &id).unwrap().eval(&u).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
