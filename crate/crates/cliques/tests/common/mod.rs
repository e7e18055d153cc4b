//! Strategies shared by the property tests.

#![allow(dead_code)]

use cliques::clique::arc_count;
use cliques::{Clique, Elem, MagmaRef};
use proptest::prelude::*;

/// A clique of arity `n` over a finite magma of `m` elements.
pub fn finite_clique(magma: MagmaRef, n: usize) -> impl Strategy<Value = Clique> {
    let m = magma.size().expect("finite magma") as Elem;
    let len = arc_count(n);
    proptest::collection::vec(0..m, len).prop_map(move |labels| {
        let labels = if n == 1 { vec![0] } else { labels };
        Clique::new(&magma, n, labels).expect("valid labels")
    })
}

/// A clique of arity `n` over the integers with labels in `-r..=r`.
pub fn integer_clique(z: MagmaRef, n: usize, r: i64) -> impl Strategy<Value = Clique> {
    let len = arc_count(n);
    proptest::collection::vec(-r..=r, len).prop_map(move |labels| {
        let labels = if n == 1 { vec![0] } else { labels };
        Clique::new(&z, n, labels).expect("valid labels")
    })
}

/// A clique of arity in `lo..=hi` over a finite magma.
pub fn sized_finite_clique(magma: MagmaRef, lo: usize, hi: usize) -> impl Strategy<Value = Clique> {
    (lo..=hi).prop_flat_map(move |n| finite_clique(magma.clone(), n))
}

/// An integer clique of arity in `lo..=hi`.
pub fn sized_integer_clique(z: MagmaRef, lo: usize, hi: usize, r: i64) -> impl Strategy<Value = Clique> {
    (lo..=hi).prop_flat_map(move |n| integer_clique(z.clone(), n, r))
}
