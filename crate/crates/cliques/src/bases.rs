//! The H- and K-bases: the erasure orders on cliques, conversions to and from the
//! fundamental basis by Möbius inversion, and the closed composition rules.
//!
//! A combination "in the H-basis" is stored as a [`LinComb`] whose keys are the indexing
//! cliques `p` of the basis elements `H_p`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num::{One, Zero};

use crate::clique::{arc_index, arcs, Clique};
use crate::error::{Error, Result};
use crate::magma::{Elem, MagmaRef, UNIT};
use crate::operad::{partial_compose, Coeff, LinComb};

/// Basis in which the coefficients of a [`LinComb`] are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisTag {
    Fundamental,
    H,
    K,
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisTag::Fundamental => "fundamental",
            BasisTag::H => "H",
            BasisTag::K => "K",
        })
    }
}

impl FromStr for BasisTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<BasisTag> {
        match s {
            "fundamental" | "F" => Ok(BasisTag::Fundamental),
            "H" | "h" => Ok(BasisTag::H),
            "K" | "k" => Ok(BasisTag::K),
            _ => Err(Error::Parse(format!("unknown basis `{s}`"))),
        }
    }
}

/// A linear combination together with the basis it is expressed in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tagged {
    pub basis: BasisTag,
    pub comb: LinComb,
}

impl Tagged {
    pub fn new(basis: BasisTag, comb: LinComb) -> Tagged {
        Tagged { basis, comb }
    }

    pub fn to_fundamental(&self) -> LinComb {
        match self.basis {
            BasisTag::Fundamental => self.comb.clone(),
            BasisTag::H => from_h(&self.comb),
            BasisTag::K => from_k(&self.comb),
        }
    }

    /// Re-expresses the combination in the basis `to`.
    pub fn convert(&self, to: BasisTag) -> Tagged {
        let f = self.to_fundamental();
        let comb = match to {
            BasisTag::Fundamental => f,
            BasisTag::H => to_h(&f),
            BasisTag::K => to_k(&f),
        };
        Tagged { basis: to, comb }
    }
}

/// One of the two erasure orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    /// Erasing labels of edges and of the base.
    EdgesAndBase,
    /// Erasing labels of diagonals.
    Diagonals,
}

fn erasable_positions(order: Order, n: usize, labels: &[Elem]) -> Vec<usize> {
    arcs(n)
        .enumerate()
        .filter(|&(k, (x, y))| {
            let boundary = y == x + 1 || (x == 1 && y == n + 1);
            labels[k] != UNIT && (boundary == (order == Order::EdgesAndBase))
        })
        .map(|(k, _)| k)
        .collect()
}

/// All `(p', h(p', p))` with `p'` below `p` for the order, obtained by erasing subsets of
/// the erasable solid arcs.
fn down_set(order: Order, n: usize, labels: &[Elem]) -> Vec<(Vec<Elem>, usize)> {
    let pos = erasable_positions(order, n, labels);
    let mut out = Vec::with_capacity(1 << pos.len());
    for mask in 0u64..(1u64 << pos.len()) {
        let mut l = labels.to_vec();
        for (b, &k) in pos.iter().enumerate() {
            if mask >> b & 1 == 1 {
                l[k] = UNIT;
            }
        }
        out.push((l, mask.count_ones() as usize));
    }
    out
}

/// All cliques `p'` with `p' ≼_be p`: `p` is obtained from `p'` by filling some unit
/// labels of edges or of the base.
pub fn below_be(p: &Clique) -> Vec<Clique> {
    down_set(Order::EdgesAndBase, p.arity(), p.labels())
        .into_iter()
        .map(|(l, _)| Clique::from_raw(p.magma(), p.arity(), l))
        .collect()
}

/// All cliques `p'` with `p' ≼_d p`, the analogue of [`below_be`] for diagonals.
pub fn below_d(p: &Clique) -> Vec<Clique> {
    down_set(Order::Diagonals, p.arity(), p.labels())
        .into_iter()
        .map(|(l, _)| Clique::from_raw(p.magma(), p.arity(), l))
        .collect()
}

/// `p` with the base label replaced by the unit.
pub fn d_0(p: &Clique) -> Clique {
    let n = p.arity();
    let mut l = p.labels().to_vec();
    l[arc_index(n, 1, n + 1)] = UNIT;
    Clique::from_raw(p.magma(), n, l)
}

/// `p` with the label of its `i`th edge replaced by the unit.
pub fn d_i(p: &Clique, i: usize) -> Result<Clique> {
    let n = p.arity();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, arity: n });
    }
    let mut l = p.labels().to_vec();
    l[arc_index(n, i, i + 1)] = UNIT;
    Ok(Clique::from_raw(p.magma(), n, l))
}

type Expansion = Arc<Vec<(Vec<Elem>, usize)>>;

/// Memoized down-sets for repeated conversions over one magma. Safe to share between threads.
#[derive(Default)]
pub struct BasisConverter {
    memo: Mutex<HashMap<(Order, usize, Vec<Elem>), Expansion>>,
}

impl BasisConverter {
    pub fn new() -> BasisConverter {
        BasisConverter::default()
    }

    fn expansion(&self, order: Order, n: usize, labels: &[Elem]) -> Expansion {
        let key = (order, n, labels.to_vec());
        if let Some(e) = self.memo.lock().unwrap().get(&key) {
            return e.clone();
        }
        let e = Arc::new(down_set(order, n, labels));
        self.memo.lock().unwrap().insert(key, e.clone());
        e
    }

    fn transform(&self, f: &LinComb, order: Order, signed: bool) -> LinComb {
        let n = f.arity();
        let mut out = LinComb::zero(f.magma(), n);
        for (c, k) in f.iter() {
            for (l, h) in self.expansion(order, n, c.labels()).iter() {
                let v = if signed && h % 2 == 1 { -k.clone() } else { k.clone() };
                out.add_raw(l.clone(), v);
            }
        }
        out
    }

    /// Expands H-coordinates into the fundamental basis.
    pub fn from_h(&self, f: &LinComb) -> LinComb {
        self.transform(f, Order::EdgesAndBase, false)
    }

    /// Fundamental coordinates to H-coordinates.
    pub fn to_h(&self, f: &LinComb) -> LinComb {
        self.transform(f, Order::EdgesAndBase, true)
    }

    /// Expands K-coordinates into the fundamental basis.
    pub fn from_k(&self, f: &LinComb) -> LinComb {
        self.transform(f, Order::Diagonals, true)
    }

    /// Fundamental coordinates to K-coordinates.
    pub fn to_k(&self, f: &LinComb) -> LinComb {
        self.transform(f, Order::Diagonals, false)
    }

    /// Number of memoized down-sets.
    pub fn cached(&self) -> usize {
        self.memo.lock().unwrap().len()
    }
}

pub fn from_h(f: &LinComb) -> LinComb {
    BasisConverter::new().from_h(f)
}

pub fn to_h(f: &LinComb) -> LinComb {
    BasisConverter::new().to_h(f)
}

pub fn from_k(f: &LinComb) -> LinComb {
    BasisConverter::new().from_k(f)
}

pub fn to_k(f: &LinComb) -> LinComb {
    BasisConverter::new().to_k(f)
}

/// `H_p` as an element of the fundamental basis.
pub fn h_element(p: &Clique) -> LinComb {
    from_h(&LinComb::from_clique(p))
}

/// `K_p` as an element of the fundamental basis.
pub fn k_element(p: &Clique) -> LinComb {
    from_k(&LinComb::from_clique(p))
}

fn reject_units(p: &Clique, q: &Clique) -> Result<()> {
    if p.is_unit() || q.is_unit() {
        Err(Error::UnitCliqueRejected)
    } else {
        Ok(())
    }
}

fn sum_of(terms: Vec<Clique>) -> Result<LinComb> {
    let first = &terms[0];
    LinComb::from_terms(&first.magma().clone(), first.arity(), terms.into_iter().map(|c| (Coeff::one(), c)))
}

/// `H_p ∘_i H_q` in H-coordinates, by the four-case rule on the solidity of `p_i` and `q_0`.
pub fn compose_h(p: &Clique, q: &Clique, i: usize) -> Result<LinComb> {
    reject_units(p, q)?;
    let pq = partial_compose(p, q, i)?;
    let p_solid = p.edge(i) != UNIT;
    let q_solid = q.base() != UNIT;
    let mut terms = vec![pq];
    if p_solid {
        terms.push(partial_compose(&d_i(p, i)?, q, i)?);
    }
    if q_solid {
        terms.push(partial_compose(p, &d_0(q), i)?);
    }
    if p_solid && q_solid {
        terms.push(partial_compose(&d_i(p, i)?, &d_0(q), i)?);
    }
    sum_of(terms)
}

/// `K_p ∘_i K_q` in K-coordinates: one term when `p_i ⋆ q_0` is the unit, two otherwise.
pub fn compose_k(p: &Clique, q: &Clique, i: usize) -> Result<LinComb> {
    reject_units(p, q)?;
    let pq = partial_compose(p, q, i)?;
    let mut terms = vec![pq];
    if p.magma().op(p.edge(i), q.base()) != UNIT {
        terms.push(partial_compose(&d_i(p, i)?, &d_0(q), i)?);
    }
    sum_of(terms)
}

/// Bilinear extension of [`compose_h`] on H-coordinates.
pub fn compose_h_lin(f: &LinComb, g: &LinComb, i: usize) -> Result<LinComb> {
    compose_basis_lin(f, g, i, compose_h)
}

/// Bilinear extension of [`compose_k`] on K-coordinates.
pub fn compose_k_lin(f: &LinComb, g: &LinComb, i: usize) -> Result<LinComb> {
    compose_basis_lin(f, g, i, compose_k)
}

fn compose_basis_lin(
    f: &LinComb,
    g: &LinComb,
    i: usize,
    rule: fn(&Clique, &Clique, usize) -> Result<LinComb>,
) -> Result<LinComb> {
    if i == 0 || i > f.arity() {
        return Err(Error::IndexOutOfRange { index: i, arity: f.arity() });
    }
    let mut out = LinComb::zero(f.magma(), f.arity() + g.arity() - 1);
    for (p, a) in f.iter() {
        for (q, b) in g.iter() {
            let r = rule(&p, &q, i)?;
            out = out.add(&r.scale(&(a * b)))?;
        }
    }
    Ok(out)
}

/// Outcome of cross-checking the closed rules against conversion through the fundamental basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisCheck {
    pub pairs: u64,
    pub failure: Option<String>,
}

impl BasisCheck {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `from(compose(p, q, i)) = from(p) ∘_i from(q)` for all pairs of non-unit cliques
/// with composite arity at most `max_arity`, for the H-basis and the K-basis.
pub fn verify_basis_compositions(magma: &MagmaRef, max_arity: usize) -> Result<BasisCheck> {
    let conv = BasisConverter::new();
    let mut pairs = 0u64;
    for n in 2..max_arity {
        let ps: Vec<Clique> = crate::enumeration::generate_cliques(magma, n)?.collect();
        for m in 2..=max_arity + 1 - n {
            let qs: Vec<Clique> = crate::enumeration::generate_cliques(magma, m)?.collect();
            for p in &ps {
                let hp = conv.from_h(&LinComb::from_clique(p));
                let kp = conv.from_k(&LinComb::from_clique(p));
                for q in &qs {
                    let hq = conv.from_h(&LinComb::from_clique(q));
                    let kq = conv.from_k(&LinComb::from_clique(q));
                    for i in 1..=n {
                        pairs += 1;
                        let lhs = conv.from_h(&compose_h(p, q, i)?);
                        let rhs = crate::operad::partial_compose_lin(&hp, &hq, i)?;
                        if lhs != rhs {
                            return Ok(BasisCheck {
                                pairs,
                                failure: Some(format!("H: {p} ∘_{i} {q}: {lhs} != {rhs}")),
                            });
                        }
                        let lhs = conv.from_k(&compose_k(p, q, i)?);
                        let rhs = crate::operad::partial_compose_lin(&kp, &kq, i)?;
                        if lhs != rhs {
                            return Ok(BasisCheck {
                                pairs,
                                failure: Some(format!("K: {p} ∘_{i} {q}: {lhs} != {rhs}")),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(BasisCheck { pairs, failure: None })
}

/// Checks that the conversion matrices are unitriangular: the coefficient of `p` in the
/// image of `p` is one and every other term is strictly below `p`.
pub fn is_unitriangular(p: &Clique) -> bool {
    let f = LinComb::from_clique(p);
    let check = |g: LinComb, order: Order| {
        let below: Vec<Vec<Elem>> = down_set(order, p.arity(), p.labels()).into_iter().map(|(l, _)| l).collect();
        g.coefficient(p).is_one() && g.iter().all(|(c, k)| k.is_zero() || below.iter().any(|l| l == c.labels()))
    };
    check(to_h(&f), Order::EdgesAndBase) && check(to_k(&f), Order::Diagonals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magma::Magma;

    #[test]
    fn down_sets() {
        let z = Magma::integers();
        let u = Clique::all_unit(&z, 3).unwrap();
        assert_eq!(below_be(&u), vec![u.clone()]);
        assert_eq!(below_d(&u), vec![u.clone()]);
        let one_edge = u.with_label(2, 3, 5).unwrap();
        assert_eq!(below_be(&one_edge).len(), 2);
        assert_eq!(below_d(&one_edge).len(), 1);
    }

    #[test]
    fn round_trips() {
        let z = Magma::integers();
        let p = Clique::from_arcs(&z, 4, &[((1, 3), 2), ((2, 5), 1), ((3, 4), 1), ((4, 5), 2)]).unwrap();
        let f = LinComb::from_clique(&p);
        assert_eq!(to_h(&from_h(&f)), f);
        assert_eq!(from_h(&to_h(&f)), f);
        assert_eq!(to_k(&from_k(&f)), f);
        assert_eq!(from_k(&to_k(&f)), f);
        assert!(is_unitriangular(&p));
    }

    #[test]
    fn unit_clique_rejected() {
        let d = Magma::d(0);
        let u = Clique::unit(&d);
        let t = Clique::triangle(&d, 0, 0, 0).unwrap();
        assert_eq!(compose_h(&u, &t, 1), Err(Error::UnitCliqueRejected));
        assert_eq!(compose_k(&t, &u, 1), Err(Error::UnitCliqueRejected));
    }

    #[test]
    fn closed_rules_small() {
        let check = verify_basis_compositions(&Magma::d(0), 4).unwrap();
        assert!(check.ok(), "{:?}", check.failure);
    }
}
