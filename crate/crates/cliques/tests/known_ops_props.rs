//! Multi-tildes and their embedding into cliques over D_0.

use cliques::known_operads::{phi_mt, phi_mt_inverse, MultiTilde};
use cliques::operad::partial_compose;
use proptest::prelude::*;

fn multi_tilde(lo: usize, hi: usize) -> impl Strategy<Value = MultiTilde> {
    (lo..=hi).prop_flat_map(|n| {
        let slots: Vec<(usize, usize)> = (1..=n).flat_map(|x| (x..=n).map(move |y| (x, y))).collect();
        proptest::collection::vec(any::<bool>(), slots.len()).prop_map(move |keep| {
            let pairs: Vec<(usize, usize)> = slots.iter().zip(keep).filter(|(_, k)| *k).map(|(s, _)| *s).collect();
            MultiTilde::new(n, &pairs).unwrap()
        })
    })
}

fn excluded(t: &MultiTilde) -> bool {
    t.arity() == 1 && !t.is_empty()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn associativity(s in multi_tilde(1, 4), t in multi_tilde(1, 4), r in multi_tilde(1, 3), i in 1usize..5, j in 1usize..5) {
        let i = 1 + (i - 1) % s.arity();
        let j = 1 + (j - 1) % t.arity();
        let lhs = s.compose(&t, i).unwrap().compose(&r, i + j - 1).unwrap();
        let rhs = s.compose(&t.compose(&r, j).unwrap(), i).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn phi_is_a_morphism(s in multi_tilde(1, 4), t in multi_tilde(1, 4), i in 1usize..5) {
        prop_assume!(!excluded(&s) && !excluded(&t));
        let i = 1 + (i - 1) % s.arity();
        let st = s.compose(&t, i).unwrap();
        prop_assume!(!excluded(&st));
        prop_assert_eq!(phi_mt(&st).unwrap(), partial_compose(&phi_mt(&s).unwrap(), &phi_mt(&t).unwrap(), i).unwrap());
        prop_assert_eq!(phi_mt_inverse(&phi_mt(&s).unwrap()).unwrap(), s);
    }

    #[test]
    fn json_round_trip(s in multi_tilde(1, 6)) {
        prop_assert_eq!(MultiTilde::from_json(&s.to_json()).unwrap(), s);
    }
}
