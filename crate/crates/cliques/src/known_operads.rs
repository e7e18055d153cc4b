//! Multi-tildes, double multi-tildes and gravity chord diagrams, each with its own
//! composition, and the maps realizing them as clique operads over `D_0` and `D_0 × D_0`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::clique::{arc_count, arc_index, arcs, Clique};
use crate::error::{Error, Result};
use crate::magma::{ensure_same, Elem, Magma, MagmaRef, UNIT};
use crate::operad::partial_compose;
use crate::substructures::gravity_condition;

/// Largest arity representable by [`MultiTilde`].
pub const MAX_TILDE_ARITY: usize = 15;

/// A multi-tilde: an arity `n` and a set of pairs `(x, y)` with `1 <= x <= y <= n`.
/// The pair `(x, y)` is stored as bit `arc_index(n, x, y + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiTilde {
    arity: usize,
    bits: u128,
}

#[derive(Serialize, Deserialize)]
struct MultiTildeJson {
    arity: usize,
    pairs: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct DoubleMultiTildeJson {
    arity: usize,
    pairs1: Vec<[usize; 2]>,
    pairs2: Vec<[usize; 2]>,
}

/// For every arity up to [`MAX_TILDE_ARITY`], the arcs in lexicographic order.
fn arc_table() -> &'static Vec<Vec<(u8, u8)>> {
    static TABLE: OnceLock<Vec<Vec<(u8, u8)>>> = OnceLock::new();
    TABLE.get_or_init(|| (0..=MAX_TILDE_ARITY).map(|n| arcs(n).map(|(x, y)| (x as u8, y as u8)).collect()).collect())
}

fn check_arity(n: usize) -> Result<()> {
    if n == 0 || n > MAX_TILDE_ARITY {
        return Err(Error::Unsupported(format!("multi-tilde arity {n} outside 1..={MAX_TILDE_ARITY}")));
    }
    Ok(())
}

impl MultiTilde {
    pub fn new(arity: usize, pairs: &[(usize, usize)]) -> Result<MultiTilde> {
        check_arity(arity)?;
        let mut bits = 0u128;
        for &(x, y) in pairs {
            if x == 0 || x > y || y > arity {
                return Err(Error::Parse(format!("pair ({x}, {y}) outside P_{arity}")));
            }
            bits |= 1 << arc_index(arity, x, y + 1);
        }
        Ok(MultiTilde { arity, bits })
    }

    /// The unit `(1, ∅)`.
    pub fn unit() -> MultiTilde {
        MultiTilde { arity: 1, bits: 0 }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        x >= 1 && x <= y && y <= self.arity && self.bits >> arc_index(self.arity, x, y + 1) & 1 == 1
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        arcs(self.arity).enumerate().filter(|(k, _)| self.bits >> k & 1 == 1).map(|(_, (x, y))| (x, y - 1)).collect()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    /// `(n, s) ∘_i (m, t)` by the shift rules.
    pub fn compose(&self, t: &MultiTilde, i: usize) -> Result<MultiTilde> {
        let (n, m) = (self.arity, t.arity);
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, arity: n });
        }
        let arity = n + m - 1;
        check_arity(arity)?;
        let table = arc_table();
        let mut bits = 0u128;
        let mut rest = self.bits;
        while rest != 0 {
            let k = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let (x, y1) = table[n][k];
            let (x, y) = (x as usize, y1 as usize - 1);
            let (a, b) = if y < i {
                (x, y)
            } else if x <= i {
                (x, y + m - 1)
            } else {
                (x + m - 1, y + m - 1)
            };
            bits |= 1 << arc_index(arity, a, b + 1);
        }
        let mut rest = t.bits;
        while rest != 0 {
            let k = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let (x, y1) = table[m][k];
            bits |= 1 << arc_index(arity, x as usize + i - 1, y1 as usize + i - 1);
        }
        Ok(MultiTilde { arity, bits })
    }

    /// All multi-tildes of arity `n`.
    pub fn all(n: usize) -> Result<impl Iterator<Item = MultiTilde>> {
        check_arity(n)?;
        let len = arc_count(n);
        if len > 30 {
            return Err(Error::BudgetExceeded { needed: 1u128 << len, budget: 1 << 30 });
        }
        Ok((0u128..1 << len).map(move |bits| MultiTilde { arity: n, bits }))
    }

    pub fn to_json(&self) -> String {
        let j = MultiTildeJson { arity: self.arity, pairs: self.pairs().into_iter().map(|(x, y)| [x, y]).collect() };
        serde_json::to_string(&j).unwrap()
    }

    pub fn from_json(s: &str) -> Result<MultiTilde> {
        let j: MultiTildeJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        MultiTilde::new(j.arity, &j.pairs.iter().map(|p| (p[0], p[1])).collect::<Vec<_>>())
    }
}

impl fmt::Display for MultiTilde {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.arity, fmt_pairs(&self.pairs()))
    }
}

fn fmt_pairs(pairs: &[(usize, usize)]) -> String {
    if pairs.is_empty() {
        return "∅".into();
    }
    let inner: Vec<String> = pairs.iter().map(|(x, y)| format!("({x}, {y})")).collect();
    format!("{{{}}}", inner.join(", "))
}

fn d0() -> MagmaRef {
    Magma::d(0)
}

/// The `D_0` element `0`.
const ZERO: Elem = 1;

/// The clique over `D_0` whose arc `(x, y)` is labeled `0` exactly when `(x, y - 1)` is a pair.
pub fn phi_mt(t: &MultiTilde) -> Result<Clique> {
    if t.arity == 1 && !t.is_empty() {
        return Err(Error::Excluded(format!("{t} has no clique image")));
    }
    let labels = (0..arc_count(t.arity)).map(|k| if t.bits >> k & 1 == 1 { ZERO } else { UNIT }).collect();
    Clique::new(&d0(), t.arity, labels)
}

/// Inverse of [`phi_mt`] on cliques over `D_0`.
pub fn phi_mt_inverse(p: &Clique) -> Result<MultiTilde> {
    ensure_same(p.magma(), &d0())?;
    check_arity(p.arity())?;
    let mut bits = 0u128;
    for (k, &l) in p.labels().iter().enumerate() {
        if l != UNIT {
            bits |= 1 << k;
        }
    }
    Ok(MultiTilde { arity: p.arity(), bits })
}

/// A double multi-tilde `(n, s, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubleMultiTilde {
    pub s: MultiTilde,
    pub t: MultiTilde,
}

impl DoubleMultiTilde {
    pub fn new(s: MultiTilde, t: MultiTilde) -> Result<DoubleMultiTilde> {
        if s.arity != t.arity {
            return Err(Error::ArityMismatch(s.arity, t.arity));
        }
        Ok(DoubleMultiTilde { s, t })
    }

    pub fn unit() -> DoubleMultiTilde {
        DoubleMultiTilde { s: MultiTilde::unit(), t: MultiTilde::unit() }
    }

    pub fn arity(&self) -> usize {
        self.s.arity
    }

    /// Componentwise composition; the result has arity `n + m - 1`.
    pub fn compose(&self, other: &DoubleMultiTilde, i: usize) -> Result<DoubleMultiTilde> {
        Ok(DoubleMultiTilde { s: self.s.compose(&other.s, i)?, t: self.t.compose(&other.t, i)? })
    }

    pub fn all(n: usize) -> Result<Vec<DoubleMultiTilde>> {
        let singles: Vec<MultiTilde> = MultiTilde::all(n)?.collect();
        Ok(singles.iter().flat_map(|&s| singles.iter().map(move |&t| DoubleMultiTilde { s, t })).collect())
    }

    pub fn to_json(&self) -> String {
        let conv = |m: &MultiTilde| m.pairs().into_iter().map(|(x, y)| [x, y]).collect();
        let j = DoubleMultiTildeJson { arity: self.arity(), pairs1: conv(&self.s), pairs2: conv(&self.t) };
        serde_json::to_string(&j).unwrap()
    }

    pub fn from_json(s: &str) -> Result<DoubleMultiTilde> {
        let j: DoubleMultiTildeJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let conv = |v: &[[usize; 2]]| v.iter().map(|p| (p[0], p[1])).collect::<Vec<_>>();
        DoubleMultiTilde::new(MultiTilde::new(j.arity, &conv(&j.pairs1))?, MultiTilde::new(j.arity, &conv(&j.pairs2))?)
    }
}

impl fmt::Display for DoubleMultiTilde {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.arity(), fmt_pairs(&self.s.pairs()), fmt_pairs(&self.t.pairs()))
    }
}

/// The magma `D_0 × D_0`.
pub fn d0_squared() -> MagmaRef {
    Magma::product(&d0(), &d0()).expect("finite factors")
}

/// The clique over `D_0 × D_0` labeling arc `(x, y)` by the pair of memberships of
/// `(x, y - 1)` in `s` and in `t`.
pub fn phi_dmt(t: &DoubleMultiTilde) -> Result<Clique> {
    if t.arity() == 1 && !(t.s.is_empty() && t.t.is_empty()) {
        return Err(Error::Excluded(format!("{t} has no clique image")));
    }
    let m = d0_squared();
    let n = t.arity();
    let labels = (0..arc_count(n))
        .map(|k| {
            let a = if t.s.bits >> k & 1 == 1 { ZERO } else { UNIT };
            let b = if t.t.bits >> k & 1 == 1 { ZERO } else { UNIT };
            m.pair(a, b)
        })
        .collect::<Result<Vec<_>>>()?;
    Clique::new(&m, n, labels)
}

/// Inverse of [`phi_dmt`].
pub fn phi_dmt_inverse(p: &Clique) -> Result<DoubleMultiTilde> {
    let m = d0_squared();
    ensure_same(p.magma(), &m)?;
    check_arity(p.arity())?;
    let (mut s, mut t) = (0u128, 0u128);
    for (k, &l) in p.labels().iter().enumerate() {
        let (a, b) = m.unpair(l)?;
        if a != UNIT {
            s |= 1 << k;
        }
        if b != UNIT {
            t |= 1 << k;
        }
    }
    let n = p.arity();
    Ok(DoubleMultiTilde { s: MultiTilde { arity: n, bits: s }, t: MultiTilde { arity: n, bits: t } })
}

/// A gravity chord diagram: the set of labeled arcs of a polygon.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GravityDiagram {
    arity: usize,
    arcs: BTreeSet<(usize, usize)>,
}

impl GravityDiagram {
    /// Validates that every edge and the base are labeled (for arity at least two) and that
    /// crossing labeled diagonals `(x, y)`, `(x', y')` with `x < x'` leave `(x', y)` unlabeled.
    pub fn new(arity: usize, labeled: &[(usize, usize)]) -> Result<GravityDiagram> {
        if arity == 0 {
            return Err(Error::InvalidClique("arity must be positive".into()));
        }
        let mut set = BTreeSet::new();
        for &(x, y) in labeled {
            if x == 0 || x >= y || y > arity + 1 {
                return Err(Error::InvalidArc(x, y, arity));
            }
            set.insert((x, y));
        }
        let g = GravityDiagram { arity, arcs: set };
        if !g.is_valid() {
            return Err(Error::InvalidClique(format!("{g} is not a gravity chord diagram")));
        }
        Ok(g)
    }

    pub fn unit() -> GravityDiagram {
        GravityDiagram { arity: 1, arcs: BTreeSet::new() }
    }

    fn is_valid(&self) -> bool {
        let n = self.arity;
        if n == 1 {
            return self.arcs.is_empty();
        }
        if !self.arcs.contains(&(1, n + 1)) || (1..=n).any(|i| !self.arcs.contains(&(i, i + 1))) {
            return false;
        }
        let diags: Vec<_> = self.arcs.iter().filter(|&&(x, y)| y > x + 1 && !(x == 1 && y == n + 1)).collect();
        for &&(x, y) in &diags {
            for &&(a, b) in &diags {
                if x < a && a < y && y < b && self.arcs.contains(&(a, y)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn labeled_arcs(&self) -> impl Iterator<Item = &(usize, usize)> {
        self.arcs.iter()
    }

    pub fn diagonal_count(&self) -> usize {
        let n = self.arity;
        self.arcs.iter().filter(|&&(x, y)| y > x + 1 && !(x == 1 && y == n + 1)).count()
    }

    /// Glues the base of `d` onto the `i`th edge of `self`.
    pub fn compose(&self, d: &GravityDiagram, i: usize) -> Result<GravityDiagram> {
        let (n, m) = (self.arity, d.arity);
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, arity: n });
        }
        let mut out = BTreeSet::new();
        for &(x, y) in &self.arcs {
            out.insert(if y <= i {
                (x, y)
            } else if x > i {
                (x + m - 1, y + m - 1)
            } else {
                (x, y + m - 1)
            });
        }
        for &(x, y) in &d.arcs {
            out.insert((x + i - 1, y + i - 1));
        }
        let g = GravityDiagram { arity: n + m - 1, arcs: out };
        if !g.is_valid() {
            return Err(Error::ClosureViolation(format!("{self} ∘_{i} {d} = {g} is not a gravity chord diagram")));
        }
        Ok(g)
    }

    /// All gravity chord diagrams of arity `n`.
    pub fn all(n: usize) -> Result<Vec<GravityDiagram>> {
        let d = d0();
        let mut out = Vec::new();
        for p in crate::enumeration::generate_cliques(&d, n)? {
            if grav_check(&p) {
                out.push(phi_grav_inverse(&p)?);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for GravityDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.arcs.iter().map(|(x, y)| format!("({x}, {y})")).collect();
        write!(f, "G{}[{}]", self.arity, inner.join(", "))
    }
}

/// Labeled arcs become `0`, unlabeled arcs the unit.
pub fn phi_grav(g: &GravityDiagram) -> Result<Clique> {
    let solid: Vec<((usize, usize), Elem)> = g.arcs.iter().map(|&a| (a, ZERO)).collect();
    Clique::from_arcs(&d0(), g.arity, &solid)
}

/// Inverse of [`phi_grav`] on cliques over `D_0` satisfying the gravity condition.
pub fn phi_grav_inverse(p: &Clique) -> Result<GravityDiagram> {
    ensure_same(p.magma(), &d0())?;
    if !grav_check(p) {
        return Err(Error::InvalidClique(format!("{p} violates the gravity condition")));
    }
    let arcs = p.solid_arcs().into_iter().map(|a| (a.x, a.y)).collect();
    Ok(GravityDiagram { arity: p.arity(), arcs })
}

/// The gravity condition, for cliques over any magma.
pub fn grav_check(p: &Clique) -> bool {
    gravity_condition(p.arity(), p.labels())
}

/// Partial composition restricted to cliques satisfying the gravity condition.
pub fn grav_compose(p: &Clique, q: &Clique, i: usize) -> Result<Clique> {
    for c in [p, q] {
        if !grav_check(c) {
            return Err(Error::InvalidClique(format!("{c} violates the gravity condition")));
        }
    }
    let r = partial_compose(p, q, i)?;
    if !grav_check(&r) {
        return Err(Error::ClosureViolation(format!("{p} ∘_{i} {q} = {r} violates the gravity condition")));
    }
    Ok(r)
}

/// The gravity chord diagrams of arity `n` with the largest number of labeled diagonals.
pub fn lie_maximal(n: usize, budget: u128) -> Result<Vec<GravityDiagram>> {
    let diag = if n >= 2 { (n + 1) * (n - 2) / 2 } else { 0 };
    if (1u128 << diag) > budget {
        return Err(Error::BudgetExceeded { needed: 1 << diag, budget });
    }
    if n == 1 {
        return Ok(vec![GravityDiagram::unit()]);
    }
    let diagonals: Vec<(usize, usize)> = arcs(n).filter(|&(x, y)| y > x + 1 && !(x == 1 && y == n + 1)).collect();
    let boundary: Vec<(usize, usize)> = arcs(n).filter(|&(x, y)| y == x + 1 || (x == 1 && y == n + 1)).collect();
    let mut best = 0;
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << diagonals.len()) {
        let k = mask.count_ones() as usize;
        if k < best {
            continue;
        }
        let mut labeled = boundary.clone();
        labeled.extend(diagonals.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &a)| a));
        if let Ok(g) = GravityDiagram::new(n, &labeled) {
            if k > best {
                best = k;
                out.clear();
            }
            out.push(g);
        }
    }
    Ok(out)
}

/// Outcome of [`verify_known_operads`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnownOpsReport {
    pub checks: Vec<(String, u64, Option<String>)>,
}

impl KnownOpsReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|(_, _, f)| f.is_none())
    }
}

impl fmt::Display for KnownOpsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, n, fail) in &self.checks {
            match fail {
                None => writeln!(f, "{name}: ok ({n} instances)")?,
                Some(w) => writeln!(f, "{name}: FAILED after {n} instances: {w}")?,
            }
        }
        Ok(())
    }
}

fn run(name: &str, body: impl FnOnce(&mut u64) -> Result<Option<String>>) -> Result<(String, u64, Option<String>)> {
    let mut count = 0;
    let fail = body(&mut count)?;
    Ok((name.to_string(), count, fail))
}

/// Bijectivity and morphism checks for `φ_MT`, `φ_DMT` and `φ_Grav` up to `max_arity`,
/// associativity of the multi-tilde composition for composites up to `assoc_arity`, and
/// closure of the gravity condition over `D_0`.
pub fn verify_known_operads(max_arity: usize, assoc_arity: usize) -> Result<KnownOpsReport> {
    let mut checks = Vec::new();
    let tildes: Vec<Vec<MultiTilde>> = (0..=max_arity.max(assoc_arity))
        .map(|n| if n == 0 { Ok(vec![]) } else { MultiTilde::all(n).map(|i| i.collect()) })
        .collect::<Result<_>>()?;

    checks.push(run("phi_MT bijection", |count| {
        for n in 1..=max_arity {
            let d = d0();
            let mut images = BTreeSet::new();
            for t in &tildes[n] {
                *count += 1;
                match phi_mt(t) {
                    Ok(p) => {
                        if phi_mt_inverse(&p)? != *t {
                            return Ok(Some(format!("round trip fails on {t}")));
                        }
                        images.insert(p);
                    }
                    Err(Error::Excluded(_)) if n == 1 => {}
                    Err(e) => return Err(e),
                }
            }
            let cliques = crate::enumeration::generate_cliques(&d, n)?.count();
            if images.len() != cliques {
                return Ok(Some(format!("arity {n}: {} images for {cliques} cliques", images.len())));
            }
        }
        Ok(None)
    })?);

    checks.push(run("phi_MT morphism", |count| {
        for n in 1..max_arity {
            for m in 1..=max_arity - n {
                for s in tildes[n].iter().filter(|t| phi_mt(t).is_ok()) {
                    for t in tildes[m].iter().filter(|t| phi_mt(t).is_ok()) {
                        for i in 1..=n {
                            *count += 1;
                            let lhs = phi_mt(&s.compose(t, i)?)?;
                            let rhs = partial_compose(&phi_mt(s)?, &phi_mt(t)?, i)?;
                            if lhs != rhs {
                                return Ok(Some(format!("{s} ∘_{i} {t}")));
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    })?);

    checks.push(run("MT associativity and unit", |count| {
        let unit = MultiTilde::unit();
        for a in 1..=assoc_arity {
            for x in &tildes[a] {
                *count += 1;
                for i in 1..=a {
                    if x.compose(&unit, i)? != *x {
                        return Ok(Some(format!("right unit on {x}")));
                    }
                }
                if unit.compose(x, 1)? != *x {
                    return Ok(Some(format!("left unit on {x}")));
                }
            }
        }
        for a in 1..=assoc_arity {
            for b in 1..=assoc_arity {
                for c in 1..=assoc_arity {
                    if a + b + c - 2 > assoc_arity {
                        continue;
                    }
                    for x in &tildes[a] {
                        for y in &tildes[b] {
                            let xy: Vec<(usize, MultiTilde)> =
                                (1..=a).map(|i| Ok((i, x.compose(y, i)?))).collect::<Result<_>>()?;
                            for z in &tildes[c] {
                                for &(i, ref xyi) in &xy {
                                    for j in 1..=b {
                                        *count += 1;
                                        if xyi.compose(z, i + j - 1)? != x.compose(&y.compose(z, j)?, i)? {
                                            return Ok(Some(format!("series ({x} ∘_{i} {y}) ∘ {z}, j = {j}")));
                                        }
                                    }
                                    for j in i + 1..=a {
                                        *count += 1;
                                        if xyi.compose(z, j + b - 1)? != x.compose(z, j)?.compose(y, i)? {
                                            return Ok(Some(format!("parallel ({x} ∘_{i} {y}) ∘ {z}, j = {j}")));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    })?);

    let dmts: Vec<Vec<DoubleMultiTilde>> =
        (0..=max_arity).map(|n| if n == 0 { Ok(vec![]) } else { DoubleMultiTilde::all(n) }).collect::<Result<_>>()?;
    checks.push(run("phi_DMT bijection", |count| {
        for n in 1..=max_arity {
            let mut images = BTreeSet::new();
            for t in &dmts[n] {
                *count += 1;
                match phi_dmt(t) {
                    Ok(p) => {
                        if phi_dmt_inverse(&p)? != *t {
                            return Ok(Some(format!("round trip fails on {t}")));
                        }
                        images.insert(p);
                    }
                    Err(Error::Excluded(_)) if n == 1 => {}
                    Err(e) => return Err(e),
                }
            }
            let cliques = crate::enumeration::clique_count(4, n);
            if images.len() as u128 != cliques || (n == 1 && dmts[1].len() - images.len() != 3) {
                return Ok(Some(format!("arity {n}: {} images", images.len())));
            }
        }
        Ok(None)
    })?);

    checks.push(run("phi_DMT morphism", |count| {
        let limit = max_arity.min(3);
        for n in 1..limit {
            for m in 1..=limit - n {
                for s in dmts[n].iter().filter(|t| phi_dmt(t).is_ok()) {
                    for t in dmts[m].iter().filter(|t| phi_dmt(t).is_ok()) {
                        for i in 1..=n {
                            *count += 1;
                            let lhs = phi_dmt(&s.compose(t, i)?)?;
                            let rhs = partial_compose(&phi_dmt(s)?, &phi_dmt(t)?, i)?;
                            if lhs != rhs {
                                return Ok(Some(format!("{s} ∘_{i} {t}")));
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    })?);

    let gravs: Vec<Vec<GravityDiagram>> =
        (0..=max_arity).map(|n| if n == 0 { Ok(vec![]) } else { GravityDiagram::all(n) }).collect::<Result<_>>()?;
    checks.push(run("phi_Grav morphism and closure", |count| {
        for n in 1..max_arity {
            for m in 1..=max_arity - n {
                for c in &gravs[n] {
                    for d in &gravs[m] {
                        for i in 1..=n {
                            *count += 1;
                            let g = match c.compose(d, i) {
                                Ok(g) => g,
                                Err(Error::ClosureViolation(w)) => return Ok(Some(w)),
                                Err(e) => return Err(e),
                            };
                            let lhs = phi_grav(&g)?;
                            let rhs = grav_compose(&phi_grav(c)?, &phi_grav(d)?, i)?;
                            if lhs != rhs {
                                return Ok(Some(format!("{c} ∘_{i} {d}")));
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    })?);

    checks.push(run("phi_Grav image", |count| {
        for n in 1..=max_arity {
            for p in crate::enumeration::generate_cliques(&d0(), n)? {
                *count += 1;
                let direct = n == 1
                    || (p.base() != UNIT && (1..=n).all(|i| p.edge(i) != UNIT) && {
                        let s = p.solid_arcs();
                        s.iter().all(|a| {
                            s.iter().all(|b| {
                                !(a.is_diagonal(n) && b.is_diagonal(n) && a.x < b.x && a.crosses(b))
                                    || !p.is_solid(b.x, a.y)
                            })
                        })
                    });
                if direct != grav_check(&p) {
                    return Ok(Some(format!("{p}")));
                }
                if direct && phi_grav(&phi_grav_inverse(&p)?)? != p {
                    return Ok(Some(format!("round trip fails on {p}")));
                }
            }
        }
        Ok(None)
    })?);

    Ok(KnownOpsReport { checks })
}

/// Checks that the gravity condition is closed under composition over `magma`, for all
/// pairs of cliques with composite arity at most `max_arity`.
pub fn verify_grav_closure(magma: &MagmaRef, max_arity: usize) -> Result<(u64, Option<String>)> {
    let mut count = 0;
    let members: Vec<Vec<Clique>> = (0..max_arity)
        .map(|n| {
            if n == 0 {
                Ok(vec![])
            } else {
                Ok(crate::enumeration::generate_cliques(magma, n)?.filter(grav_check).collect())
            }
        })
        .collect::<Result<_>>()?;
    for n in 1..max_arity {
        for m in 1..=max_arity - n {
            for p in &members[n] {
                for q in &members[m] {
                    for i in 1..=n {
                        count += 1;
                        match grav_compose(p, q, i) {
                            Ok(_) => {}
                            Err(Error::ClosureViolation(w)) => return Ok((count, Some(w))),
                            Err(e) => return Err(e),
                        }
                    }
                }
            }
        }
    }
    Ok((count, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mt(n: usize, pairs: &[(usize, usize)]) -> MultiTilde {
        MultiTilde::new(n, pairs).unwrap()
    }

    #[test]
    fn multi_tilde_examples() {
        let s = mt(5, &[(1, 5), (2, 4), (4, 5)]);
        let t = mt(6, &[(2, 2), (4, 6)]);
        assert_eq!(s.compose(&t, 4).unwrap(), mt(10, &[(1, 10), (2, 9), (4, 10), (5, 5), (7, 9)]));
        assert_eq!(s.compose(&t, 5).unwrap(), mt(10, &[(1, 10), (2, 4), (4, 10), (6, 6), (8, 10)]));
        let p = phi_mt(&s).unwrap();
        let solid: Vec<(usize, usize)> = p.solid_arcs().iter().map(|a| (a.x, a.y)).collect();
        assert_eq!(solid, vec![(1, 6), (2, 5), (4, 6)]);
        assert!(matches!(phi_mt(&mt(1, &[(1, 1)])), Err(Error::Excluded(_))));
        assert!(phi_mt(&MultiTilde::unit()).unwrap().is_unit());
        assert_eq!(MultiTilde::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn double_multi_tilde_example() {
        let a = DoubleMultiTilde::new(mt(3, &[(2, 2)]), mt(3, &[(1, 2), (1, 3)])).unwrap();
        let b = DoubleMultiTilde::new(mt(2, &[(1, 1)]), mt(2, &[(1, 2)])).unwrap();
        let want = DoubleMultiTilde::new(mt(4, &[(2, 2), (2, 3)]), mt(4, &[(1, 3), (1, 4), (2, 3)])).unwrap();
        assert_eq!(a.compose(&b, 2).unwrap(), want);
        assert!(phi_dmt(&DoubleMultiTilde::unit()).unwrap().is_unit());
        assert_eq!(DoubleMultiTilde::from_json(&want.to_json()).unwrap(), want);
    }

    #[test]
    fn gravity_examples() {
        let boundary = |n: usize| {
            let mut v: Vec<(usize, usize)> = (1..=n).map(|i| (i, i + 1)).collect();
            v.push((1, n + 1));
            v
        };
        let mut a7 = boundary(7);
        a7.extend([(2, 5), (2, 6), (2, 7), (3, 6)]);
        let g7 = GravityDiagram::new(7, &a7).unwrap();
        assert_eq!(g7.diagonal_count(), 4);
        assert!(grav_check(&phi_grav(&g7).unwrap()));

        let mut a5 = boundary(5);
        a5.extend([(1, 4), (2, 5)]);
        let mut a3 = boundary(3);
        a3.push((1, 3));
        let c = GravityDiagram::new(5, &a5).unwrap();
        let d = GravityDiagram::new(3, &a3).unwrap();
        let mut want = boundary(7);
        want.extend([(1, 6), (2, 7), (3, 5), (3, 6)]);
        let r = c.compose(&d, 3).unwrap();
        assert_eq!(r, GravityDiagram::new(7, &want).unwrap());
        assert_eq!(phi_grav(&r).unwrap(), grav_compose(&phi_grav(&c).unwrap(), &phi_grav(&d).unwrap(), 3).unwrap());

        let p = Clique::from_arcs(&d0(), 3, &[((1, 4), ZERO), ((1, 3), ZERO), ((1, 2), ZERO), ((2, 3), ZERO)]).unwrap();
        assert!(!grav_check(&p));
    }

    #[test]
    fn lie_small() {
        assert_eq!(lie_maximal(2, 1 << 20).unwrap().len(), 1);
        let three = lie_maximal(3, 1 << 20).unwrap();
        assert_eq!(three.len(), 2);
        assert!(three.iter().all(|g| g.diagonal_count() == 1));
    }
}
