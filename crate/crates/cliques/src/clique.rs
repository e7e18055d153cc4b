//! Decorated cliques: storage, statistics on solid arcs, symmetries and diagonal splitting.
//!
//! An arity-`n` clique labels every arc `(x, y)`, `1 <= x < y <= n + 1`. Labels are
//! stored in lexicographic arc order. Only the solidity of labels (label != unit)
//! matters for the statistics.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::magma::{ensure_same, same_magma, Elem, MagmaMorphism, MagmaRef, UNIT};

/// Number of arcs of an arity-`n` clique.
#[inline]
pub const fn arc_count(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Position of arc `(x, y)` in the lexicographic arc order of an arity-`n` clique.
#[inline]
pub const fn arc_index(n: usize, x: usize, y: usize) -> usize {
    let v = n + 1;
    (x - 1) * (2 * v - x) / 2 + (y - x - 1)
}

/// All arcs of an arity-`n` clique in lexicographic order.
pub fn arcs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n + 1).flat_map(move |x| (x + 1..=n + 1).map(move |y| (x, y)))
}

/// Classification of an arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcKind {
    Base,
    Edge(usize),
    Diagonal,
}

/// An arc `(x, y)` of an arity-`n` clique.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub x: usize,
    pub y: usize,
}

impl Arc {
    pub fn new(x: usize, y: usize) -> Arc {
        Arc { x, y }
    }

    /// Classification relative to arity `n`; the base wins over the edge at arity 1.
    pub fn kind(&self, n: usize) -> ArcKind {
        if self.x == 1 && self.y == n + 1 {
            ArcKind::Base
        } else if self.y == self.x + 1 {
            ArcKind::Edge(self.x)
        } else {
            ArcKind::Diagonal
        }
    }

    pub fn is_diagonal(&self, n: usize) -> bool {
        self.kind(n) == ArcKind::Diagonal
    }

    /// Whether the two arcs cross (as chords of the polygon).
    pub fn crosses(&self, other: &Arc) -> bool {
        crosses(self.x, self.y, other.x, other.y)
    }
}

#[inline]
pub(crate) fn crosses(x: usize, y: usize, a: usize, b: usize) -> bool {
    (x < a && a < y && y < b) || (a < x && x < b && b < y)
}

#[inline]
fn is_diagonal(n: usize, x: usize, y: usize) -> bool {
    y > x + 1 && !(x == 1 && y == n + 1)
}

/// The undirected graph of solid arcs on the `n + 1` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    pub vertices: usize,
    pub arcs: Vec<(usize, usize)>,
}

/// An `M`-decorated clique.
#[derive(Clone)]
pub struct Clique {
    magma: MagmaRef,
    arity: usize,
    labels: Vec<Elem>,
}

impl PartialEq for Clique {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.labels == other.labels && same_magma(&self.magma, &other.magma)
    }
}

impl Eq for Clique {}

impl Hash for Clique {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.arity.hash(state);
        self.labels.hash(state);
    }
}

impl PartialOrd for Clique {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Clique {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.arity, &self.labels).cmp(&(other.arity, &other.labels))
    }
}

impl fmt::Debug for Clique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Clique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}[", self.arity)?;
        let mut first = true;
        for (k, (x, y)) in arcs(self.arity).enumerate() {
            if self.labels[k] != UNIT {
                if !first {
                    f.write_str(", ")?;
                }
                first = false;
                write!(f, "({x},{y})={}", self.magma.name_of(self.labels[k]))?;
            }
        }
        f.write_str("]")
    }
}

impl Clique {
    /// The unit clique: arity 1 with its single arc labeled by the unit.
    pub fn unit(magma: &MagmaRef) -> Clique {
        Clique { magma: magma.clone(), arity: 1, labels: vec![UNIT] }
    }

    /// The clique of arity `n` with every arc labeled by the unit.
    pub fn all_unit(magma: &MagmaRef, n: usize) -> Result<Clique> {
        if n == 0 {
            return Err(Error::InvalidClique("arity must be positive".into()));
        }
        Ok(Clique { magma: magma.clone(), arity: n, labels: vec![UNIT; arc_count(n)] })
    }

    /// A clique from labels in lexicographic arc order.
    pub fn new(magma: &MagmaRef, arity: usize, labels: Vec<Elem>) -> Result<Clique> {
        if arity == 0 {
            return Err(Error::InvalidClique("arity must be positive".into()));
        }
        if labels.len() != arc_count(arity) {
            return Err(Error::InvalidClique(format!(
                "arity {arity} needs {} labels, found {}",
                arc_count(arity),
                labels.len()
            )));
        }
        if let Some(bad) = labels.iter().find(|&&v| !magma.contains(v)) {
            return Err(Error::UnknownElement(bad.to_string(), magma.name().to_string()));
        }
        if arity == 1 && labels[0] != UNIT {
            return Err(Error::InvalidClique("the only clique of arity 1 is the unit clique".into()));
        }
        Ok(Clique { magma: magma.clone(), arity, labels })
    }

    pub(crate) fn from_raw(magma: &MagmaRef, arity: usize, labels: Vec<Elem>) -> Clique {
        debug_assert_eq!(labels.len(), arc_count(arity));
        Clique { magma: magma.clone(), arity, labels }
    }

    /// A clique of arity `n` whose listed arcs carry the given labels and all others the unit.
    pub fn from_arcs(magma: &MagmaRef, n: usize, solid: &[((usize, usize), Elem)]) -> Result<Clique> {
        let mut labels = vec![UNIT; arc_count(n.max(1))];
        for &((x, y), v) in solid {
            if !(1 <= x && x < y && y <= n + 1) {
                return Err(Error::InvalidArc(x, y, n));
            }
            labels[arc_index(n, x, y)] = v;
        }
        Clique::new(magma, n, labels)
    }

    /// Like [`Clique::from_arcs`] with labels given by element names.
    pub fn from_named_arcs(magma: &MagmaRef, n: usize, solid: &[((usize, usize), &str)]) -> Result<Clique> {
        let parsed: Result<Vec<_>> = solid.iter().map(|&(a, s)| Ok((a, magma.parse_elem(s)?))).collect();
        Clique::from_arcs(magma, n, &parsed?)
    }

    /// The arity-2 clique with the given base and edge labels.
    pub fn triangle(magma: &MagmaRef, base: Elem, e1: Elem, e2: Elem) -> Result<Clique> {
        Clique::new(magma, 2, vec![e1, base, e2])
    }

    pub fn magma(&self) -> &MagmaRef {
        &self.magma
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Labels in lexicographic arc order.
    pub fn labels(&self) -> &[Elem] {
        &self.labels
    }

    pub fn into_labels(self) -> Vec<Elem> {
        self.labels
    }

    fn check_arc(&self, x: usize, y: usize) -> Result<()> {
        if 1 <= x && x < y && y <= self.arity + 1 {
            Ok(())
        } else {
            Err(Error::InvalidArc(x, y, self.arity))
        }
    }

    /// The label of arc `(x, y)`. Panics on an invalid arc.
    #[inline]
    pub fn label(&self, x: usize, y: usize) -> Elem {
        assert!(1 <= x && x < y && y <= self.arity + 1, "invalid arc ({x}, {y})");
        self.labels[arc_index(self.arity, x, y)]
    }

    pub fn try_label(&self, x: usize, y: usize) -> Result<Elem> {
        self.check_arc(x, y)?;
        Ok(self.labels[arc_index(self.arity, x, y)])
    }

    /// The base label `p_0`.
    pub fn base(&self) -> Elem {
        self.label(1, self.arity + 1)
    }

    /// The label `p_i` of the `i`-th edge.
    pub fn edge(&self, i: usize) -> Elem {
        self.label(i, i + 1)
    }

    pub fn is_solid(&self, x: usize, y: usize) -> bool {
        self.label(x, y) != UNIT
    }

    /// A copy with arc `(x, y)` relabeled.
    pub fn with_label(&self, x: usize, y: usize, v: Elem) -> Result<Clique> {
        self.check_arc(x, y)?;
        let mut labels = self.labels.clone();
        labels[arc_index(self.arity, x, y)] = v;
        Clique::new(&self.magma, self.arity, labels)
    }

    /// All solid arcs in lexicographic order.
    pub fn solid_arcs(&self) -> Vec<Arc> {
        arcs(self.arity).zip(&self.labels).filter(|(_, &v)| v != UNIT).map(|((x, y), _)| Arc::new(x, y)).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.arity == 1
    }

    pub fn skeleton(&self) -> Skeleton {
        Skeleton { vertices: self.arity + 1, arcs: self.solid_arcs().iter().map(|a| (a.x, a.y)).collect() }
    }

    pub fn degree(&self) -> usize {
        degree(self.arity, &self.labels)
    }

    pub fn crossing_number(&self) -> usize {
        crossing_number(self.arity, &self.labels)
    }

    pub fn is_noncrossing(&self) -> bool {
        self.crossing_number() == 0
    }

    pub fn is_nesting_free(&self) -> bool {
        is_nesting_free(self.arity, &self.labels)
    }

    pub fn is_acyclic(&self) -> bool {
        is_acyclic(self.arity, &self.labels)
    }

    pub fn is_white(&self) -> bool {
        is_white(self.arity, &self.labels)
    }

    pub fn is_bubble(&self) -> bool {
        is_bubble(self.arity, &self.labels)
    }

    pub fn is_triangle(&self) -> bool {
        self.arity == 2
    }

    pub fn is_prime(&self) -> bool {
        is_prime(self.arity, &self.labels)
    }

    pub fn is_minimal_prime(&self) -> bool {
        is_minimal_prime(self.arity, &self.labels)
    }

    /// Factorizes `p = q ∘_x r` along a diagonal `(x, y)` crossed by no solid diagonal.
    pub fn split_along_diagonal(&self, d: Arc) -> Result<(Clique, Clique)> {
        let n = self.arity;
        let (x, y) = (d.x, d.y);
        self.check_arc(x, y)?;
        if !is_diagonal(n, x, y) {
            return Err(Error::InvalidClique(format!("({x}, {y}) is not a diagonal")));
        }
        for (k, (a, b)) in arcs(n).enumerate() {
            if self.labels[k] != UNIT && is_diagonal(n, a, b) && crosses(x, y, a, b) {
                return Err(Error::CrossedDiagonal(x, y));
            }
        }
        let shift = y - x - 1;
        let nq = n + x + 1 - y;
        let mut q = Vec::with_capacity(arc_count(nq));
        for (z, t) in arcs(nq) {
            let v = if t <= x {
                self.label(z, t)
            } else if z <= x {
                self.label(z, t + shift)
            } else {
                self.label(z + shift, t + shift)
            };
            q.push(v);
        }
        let nr = y - x;
        let mut r = Vec::with_capacity(arc_count(nr));
        for (z, t) in arcs(nr) {
            if z == 1 && t == nr + 1 {
                r.push(UNIT);
            } else {
                r.push(self.label(z + x - 1, t + x - 1));
            }
        }
        Ok((Clique::from_raw(&self.magma, nq, q), Clique::from_raw(&self.magma, nr, r)))
    }

    /// Reflection: `result(x, y) = p(n - y + 2, n - x + 2)`.
    pub fn reflect(&self) -> Clique {
        let n = self.arity;
        let labels = arcs(n).map(|(x, y)| self.label(n + 2 - y, n + 2 - x)).collect();
        Clique::from_raw(&self.magma, n, labels)
    }

    /// One-step rotation: `result(x, y) = p(x + 1, y + 1)` if `y <= n`, else `p(1, x + 1)`.
    pub fn rotate(&self) -> Clique {
        let n = self.arity;
        let labels =
            arcs(n).map(|(x, y)| if y <= n { self.label(x + 1, y + 1) } else { self.label(1, x + 1) }).collect();
        Clique::from_raw(&self.magma, n, labels)
    }

    /// Arcwise application of a magma morphism.
    pub fn relabel(&self, theta: &MagmaMorphism) -> Result<Clique> {
        ensure_same(&self.magma, theta.src())?;
        let labels = self.labels.iter().map(|&v| theta.apply(v)).collect();
        Ok(Clique::from_raw(theta.dst(), self.arity, labels))
    }

    /// Number of arcs with different labels.
    pub fn hamming(&self, other: &Clique) -> Result<usize> {
        ensure_same(&self.magma, &other.magma)?;
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        Ok(self.labels.iter().zip(&other.labels).filter(|(a, b)| a != b).count())
    }

    /// A full textual arc table, one arc per line.
    pub fn to_table(&self) -> String {
        let mut out = format!("arity {} over {}\n", self.arity, self.magma.name());
        for (k, (x, y)) in arcs(self.arity).enumerate() {
            let kind = match Arc::new(x, y).kind(self.arity) {
                ArcKind::Base => "base",
                ArcKind::Edge(_) => "edge",
                ArcKind::Diagonal => "diagonal",
            };
            out.push_str(&format!("({x},{y}) {kind:<8} {}\n", self.magma.name_of(self.labels[k])));
        }
        out
    }
}

/// Maximal number of solid arcs at a vertex.
pub fn degree(n: usize, labels: &[Elem]) -> usize {
    let mut deg = [0usize; 64];
    let mut deg_vec;
    let d: &mut [usize] = if n + 2 <= 64 {
        &mut deg[..n + 2]
    } else {
        deg_vec = vec![0usize; n + 2];
        &mut deg_vec
    };
    for (k, (x, y)) in arcs(n).enumerate() {
        if labels[k] != UNIT {
            d[x] += 1;
            d[y] += 1;
        }
    }
    d.iter().copied().max().unwrap_or(0)
}

fn solid_diagonals(n: usize, labels: &[Elem]) -> Vec<(usize, usize)> {
    arcs(n).zip(labels).filter(|((x, y), &v)| v != UNIT && is_diagonal(n, *x, *y)).map(|(a, _)| a).collect()
}

/// Maximum over solid diagonals of the number of solid diagonals crossing it.
pub fn crossing_number(n: usize, labels: &[Elem]) -> usize {
    let diags = solid_diagonals(n, labels);
    diags.iter().map(|&(x, y)| diags.iter().filter(|&&(a, b)| crosses(x, y, a, b)).count()).max().unwrap_or(0)
}

/// No solid arc is nested in another solid arc.
pub fn is_nesting_free(n: usize, labels: &[Elem]) -> bool {
    let solid: Vec<(usize, usize)> = arcs(n).zip(labels).filter(|(_, &v)| v != UNIT).map(|(a, _)| a).collect();
    for (k, &(x, y)) in solid.iter().enumerate() {
        for &(a, b) in &solid[k + 1..] {
            if (x <= a && b <= y) || (a <= x && y <= b) {
                return false;
            }
        }
    }
    true
}

/// The skeleton has no cycle.
pub fn is_acyclic(n: usize, labels: &[Elem]) -> bool {
    let mut parent: Vec<usize> = (0..n + 2).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for (k, (x, y)) in arcs(n).enumerate() {
        if labels[k] != UNIT {
            let (a, b) = (find(&mut parent, x), find(&mut parent, y));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
    }
    true
}

/// No solid edges and no solid base.
pub fn is_white(n: usize, labels: &[Elem]) -> bool {
    arcs(n).zip(labels).all(|((x, y), &v)| v == UNIT || is_diagonal(n, x, y))
}

/// No solid diagonals.
pub fn is_bubble(n: usize, labels: &[Elem]) -> bool {
    arcs(n).zip(labels).all(|((x, y), &v)| v == UNIT || !is_diagonal(n, x, y))
}

/// Arity at least 2 and every diagonal crossed by a solid diagonal.
pub fn is_prime(n: usize, labels: &[Elem]) -> bool {
    if n < 2 {
        return false;
    }
    let diags = solid_diagonals(n, labels);
    arcs(n).filter(|&(x, y)| is_diagonal(n, x, y)).all(|(x, y)| diags.iter().any(|&(a, b)| crosses(x, y, a, b)))
}

/// Prime, and erasing any single solid arc gives a non-prime clique.
pub fn is_minimal_prime(n: usize, labels: &[Elem]) -> bool {
    if !is_prime(n, labels) {
        return false;
    }
    let mut work = labels.to_vec();
    for k in 0..work.len() {
        if work[k] != UNIT {
            let saved = work[k];
            work[k] = UNIT;
            let prime = is_prime(n, &work);
            work[k] = saved;
            if prime {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magma::Magma;

    fn d0() -> MagmaRef {
        Magma::d(0)
    }

    #[test]
    fn arc_indexing_is_lexicographic() {
        for n in 1..8 {
            for (k, (x, y)) in arcs(n).enumerate() {
                assert_eq!(arc_index(n, x, y), k);
            }
            assert_eq!(arcs(n).count(), arc_count(n));
        }
    }

    #[test]
    fn unit_clique_statistics() {
        let u = Clique::unit(&d0());
        assert_eq!(u.degree(), 0);
        assert!(u.is_nesting_free() && u.is_acyclic() && u.is_white() && u.is_bubble());
        assert!(!u.is_triangle() && !u.is_prime());
        assert!(Clique::new(&d0(), 1, vec![1]).is_err());
    }

    #[test]
    fn triangle_degree_and_hamming() {
        let t = Clique::triangle(&d0(), 1, 1, 1).unwrap();
        assert_eq!(t.degree(), 2);
        let w = Clique::all_unit(&d0(), 2).unwrap();
        assert_eq!(t.hamming(&w).unwrap(), 3);
        assert_eq!(w.hamming(&t).unwrap(), 3);
        assert_eq!(w.degree(), 0);
    }

    #[test]
    fn crossing_and_nesting() {
        let m = d0();
        let c = Clique::from_arcs(&m, 3, &[((1, 3), 1), ((2, 4), 1)]).unwrap();
        assert_eq!(c.crossing_number(), 1);
        let nest = Clique::from_arcs(&m, 3, &[((1, 3), 1), ((1, 4), 1)]).unwrap();
        assert_eq!(nest.crossing_number(), 0);
        let nest4 = Clique::from_arcs(&m, 4, &[((1, 3), 1), ((1, 4), 1)]).unwrap();
        assert!(!nest4.is_nesting_free());
    }

    #[test]
    fn primality() {
        let m = d0();
        assert!(!Clique::all_unit(&m, 3).unwrap().is_prime());
        let c = Clique::from_arcs(&m, 3, &[((1, 3), 1), ((2, 4), 1)]).unwrap();
        assert!(c.is_prime() && c.is_minimal_prime());
        let t = Clique::triangle(&m, 0, 1, 0).unwrap();
        assert!(t.is_prime() && !t.is_minimal_prime());
    }

    #[test]
    fn split_all_unit() {
        let m = d0();
        let p = Clique::all_unit(&m, 3).unwrap();
        let (q, r) = p.split_along_diagonal(Arc::new(1, 3)).unwrap();
        assert_eq!(q, Clique::all_unit(&m, 2).unwrap());
        assert_eq!(r, Clique::all_unit(&m, 2).unwrap());
        let c = Clique::from_arcs(&m, 3, &[((1, 3), 1), ((2, 4), 1)]).unwrap();
        assert_eq!(c.split_along_diagonal(Arc::new(1, 3)), Err(Error::CrossedDiagonal(1, 3)));
    }

    #[test]
    fn rotation_of_a_triangle() {
        let m = Magma::cyclic(5).unwrap();
        let t = Clique::triangle(&m, 1, 2, 3).unwrap();
        let r = t.rotate();
        assert_eq!((r.base(), r.edge(1), r.edge(2)), (2, 3, 1));
    }

    #[test]
    fn reflect_preserves_base() {
        let m = Magma::cyclic(7).unwrap();
        let p = Clique::new(&m, 3, (0..6).collect()).unwrap();
        assert_eq!(p.reflect().base(), p.base());
        assert_eq!(p.reflect().reflect(), p);
        assert_eq!(Clique::unit(&m).reflect(), Clique::unit(&m));
        assert_eq!(Clique::unit(&m).rotate(), Clique::unit(&m));
    }

    #[test]
    fn relabel_functor_law() {
        let z = Magma::integers();
        let p = Clique::from_arcs(&z, 3, &[((1, 3), 2), ((2, 3), -1)]).unwrap();
        let neg = MagmaMorphism::integer_scale(-1);
        let id = MagmaMorphism::identity(&z);
        assert_eq!(p.relabel(&id).unwrap(), p);
        assert_eq!(p.relabel(&neg).unwrap().relabel(&neg).unwrap(), p);
        let twice = neg.then(&MagmaMorphism::integer_scale(3)).unwrap();
        assert_eq!(
            p.relabel(&twice).unwrap(),
            p.relabel(&neg).unwrap().relabel(&MagmaMorphism::integer_scale(3)).unwrap()
        );
    }
}
