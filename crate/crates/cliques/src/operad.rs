//! The operad of decorated cliques: partial composition, linear combinations, axiom
//! verifiers, associative elements, symmetries, rotations, basic-basis criterion,
//! Cartesian products and the arcwise star product.

use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use num::{BigInt, BigRational, One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::clique::{arc_count, arc_index, arcs, Clique};
use crate::error::{Error, Result};
use crate::magma::{ensure_same, Elem, Magma, MagmaMorphism, MagmaRef, UNIT};

/// Exact rational coefficient.
pub type Coeff = BigRational;

/// Where the label of an arc of `p ∘_i q` comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Left(usize),
    Right(usize),
    Glued(usize, usize),
    Unit,
}

/// The arc-by-arc recipe of `p ∘_i q` for `|p| = n`, `|q| = m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionPlan {
    pub n: usize,
    pub m: usize,
    pub i: usize,
    pub sources: Vec<Source>,
}

impl CompositionPlan {
    pub fn new(n: usize, m: usize, i: usize) -> CompositionPlan {
        assert!(n >= 1 && m >= 1 && 1 <= i && i <= n, "invalid composition shape ({n}, {m}, {i})");
        let total = n + m - 1;
        let sources = arcs(total)
            .map(|(x, y)| {
                if x == i && y == i + m {
                    Source::Glued(arc_index(n, i, i + 1), arc_index(m, 1, m + 1))
                } else if y <= i {
                    Source::Left(arc_index(n, x, y))
                } else if x <= i && i + m <= y {
                    Source::Left(arc_index(n, x, y + 1 - m))
                } else if i + m <= x {
                    Source::Left(arc_index(n, x + 1 - m, y + 1 - m))
                } else if i <= x && y <= i + m {
                    Source::Right(arc_index(m, x + 1 - i, y + 1 - i))
                } else {
                    Source::Unit
                }
            })
            .collect();
        CompositionPlan { n, m, i, sources }
    }

    /// Arity of the composite.
    pub fn arity(&self) -> usize {
        self.n + self.m - 1
    }

    /// Writes the composite labels into `out`; `glue` computes the glued arc from `(p_i, q_0)`.
    #[inline]
    pub fn apply<T: Clone>(&self, p: &[T], q: &[T], out: &mut Vec<T>, unit: &T, glue: impl Fn(&T, &T) -> T) {
        out.clear();
        for s in &self.sources {
            out.push(match *s {
                Source::Left(k) => p[k].clone(),
                Source::Right(k) => q[k].clone(),
                Source::Glued(a, b) => glue(&p[a], &q[b]),
                Source::Unit => unit.clone(),
            });
        }
    }
}

/// The rule used for the glued arc; only [`GlueRule::Standard`] defines the clique operad.
/// The other rules exist to test that the verifiers detect faulty compositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GlueRule {
    #[default]
    Standard,
    Swapped,
    DropRight,
}

impl GlueRule {
    #[inline]
    fn combine(self, magma: &Magma, a: Elem, b: Elem) -> Elem {
        match self {
            GlueRule::Standard => magma.op(a, b),
            GlueRule::Swapped => magma.op(b, a),
            GlueRule::DropRight => a,
        }
    }
}

fn check_index(p: &Clique, i: usize) -> Result<()> {
    if i == 0 || i > p.arity() {
        Err(Error::IndexOutOfRange { index: i, arity: p.arity() })
    } else {
        Ok(())
    }
}

/// The partial composition `p ∘_i q`.
pub fn partial_compose(p: &Clique, q: &Clique, i: usize) -> Result<Clique> {
    ensure_same(p.magma(), q.magma())?;
    check_index(p, i)?;
    Ok(compose_with_rule(p, q, i, GlueRule::Standard))
}

pub(crate) fn compose_with_rule(p: &Clique, q: &Clique, i: usize, rule: GlueRule) -> Clique {
    let magma = p.magma();
    let plan = CompositionPlan::new(p.arity(), q.arity(), i);
    let mut out = Vec::with_capacity(plan.sources.len());
    plan.apply(p.labels(), q.labels(), &mut out, &UNIT, |&a, &b| rule.combine(magma, a, b));
    Clique::from_raw(magma, plan.arity(), out)
}

/// Arcwise magma product of two cliques of equal arity.
pub fn star(p: &Clique, q: &Clique) -> Result<Clique> {
    ensure_same(p.magma(), q.magma())?;
    if p.arity() != q.arity() {
        return Err(Error::ArityMismatch(p.arity(), q.arity()));
    }
    let labels = p.labels().iter().zip(q.labels()).map(|(&a, &b)| p.magma().op(a, b)).collect();
    Ok(Clique::from_raw(p.magma(), p.arity(), labels))
}

/// A finite formal sum of cliques of one arity with exact rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct LinComb {
    magma: MagmaRef,
    arity: usize,
    terms: BTreeMap<Vec<Elem>, Coeff>,
}

impl fmt::Debug for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (c, coeff)) in self.iter().enumerate() {
            let neg = coeff < &Coeff::zero();
            let abs = if neg { -coeff.clone() } else { coeff.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}·")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl LinComb {
    pub fn zero(magma: &MagmaRef, arity: usize) -> LinComb {
        LinComb { magma: magma.clone(), arity, terms: BTreeMap::new() }
    }

    pub fn from_clique(c: &Clique) -> LinComb {
        let mut out = LinComb::zero(c.magma(), c.arity());
        out.terms.insert(c.labels().to_vec(), Coeff::one());
        out
    }

    /// A combination of `(coefficient, clique)` pairs; all cliques must share magma and arity.
    pub fn from_terms(
        magma: &MagmaRef,
        arity: usize,
        terms: impl IntoIterator<Item = (Coeff, Clique)>,
    ) -> Result<LinComb> {
        let mut out = LinComb::zero(magma, arity);
        for (coeff, c) in terms {
            out.add_term(&c, coeff)?;
        }
        Ok(out)
    }

    /// Convenience constructor with integer coefficients.
    pub fn from_int_terms(magma: &MagmaRef, arity: usize, terms: &[(i64, Clique)]) -> Result<LinComb> {
        LinComb::from_terms(magma, arity, terms.iter().map(|(k, c)| (Coeff::from_integer(BigInt::from(*k)), c.clone())))
    }

    pub fn magma(&self) -> &MagmaRef {
        &self.magma
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (Clique, &Coeff)> + '_ {
        self.terms.iter().map(move |(l, c)| (Clique::from_raw(&self.magma, self.arity, l.clone()), c))
    }

    pub fn coefficient(&self, c: &Clique) -> Coeff {
        self.terms.get(c.labels()).cloned().unwrap_or_else(Coeff::zero)
    }

    pub(crate) fn add_raw(&mut self, labels: Vec<Elem>, coeff: Coeff) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(labels) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `coeff · c` in place.
    pub fn add_term(&mut self, c: &Clique, coeff: Coeff) -> Result<()> {
        ensure_same(&self.magma, c.magma())?;
        if c.arity() != self.arity {
            return Err(Error::ArityMismatch(self.arity, c.arity()));
        }
        self.add_raw(c.labels().to_vec(), coeff);
        Ok(())
    }

    fn check_compatible(&self, other: &LinComb) -> Result<()> {
        ensure_same(&self.magma, &other.magma)?;
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        Ok(())
    }

    pub fn add(&self, other: &LinComb) -> Result<LinComb> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_raw(l.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LinComb) -> Result<LinComb> {
        self.add(&other.scale(&-Coeff::one()))
    }

    pub fn scale(&self, k: &Coeff) -> LinComb {
        let mut out = LinComb::zero(&self.magma, self.arity);
        for (l, c) in &self.terms {
            out.add_raw(l.clone(), c * k);
        }
        out
    }

    /// Applies a linear map given on basis cliques.
    pub fn map_linear(&self, arity: usize, mut f: impl FnMut(&Clique) -> Result<LinComb>) -> Result<LinComb> {
        let mut out = LinComb::zero(&self.magma, arity);
        for (c, k) in self.iter() {
            let image = f(&c)?;
            if image.arity != arity {
                return Err(Error::ArityMismatch(arity, image.arity));
            }
            for (l, v) in image.terms {
                out.add_raw(l, v * k);
            }
        }
        Ok(out)
    }
}

/// Bilinear extension of the partial composition.
pub fn partial_compose_lin(f: &LinComb, g: &LinComb, i: usize) -> Result<LinComb> {
    ensure_same(&f.magma, &g.magma)?;
    if i == 0 || i > f.arity {
        return Err(Error::IndexOutOfRange { index: i, arity: f.arity });
    }
    let plan = CompositionPlan::new(f.arity, g.arity, i);
    let magma = f.magma.clone();
    let mut out = LinComb::zero(&magma, plan.arity());
    let mut buf = Vec::new();
    for (p, a) in &f.terms {
        for (q, b) in &g.terms {
            plan.apply(p, q, &mut buf, &UNIT, |&x, &y| magma.op(x, y));
            out.add_raw(buf.clone(), a * b);
        }
    }
    Ok(out)
}

/// Bilinear extension of the arcwise product.
pub fn star_product(f: &LinComb, g: &LinComb) -> Result<LinComb> {
    f.check_compatible(g)?;
    let mut out = LinComb::zero(&f.magma, f.arity);
    for (p, a) in &f.terms {
        for (q, b) in &g.terms {
            let labels = p.iter().zip(q).map(|(&x, &y)| f.magma.op(x, y)).collect();
            out.add_raw(labels, a * b);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Axiom verification
// ---------------------------------------------------------------------------

/// A composition shape checked by the axiom verifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// `(x ∘_i y) ∘_{i+j-1} z = x ∘_i (y ∘_j z)` with arities `(a, b, c)`.
    Series { a: usize, b: usize, c: usize, i: usize, j: usize },
    /// `(x ∘_i y) ∘_{j+b-1} z = (x ∘_j z) ∘_i y` for `i < j`.
    Parallel { a: usize, b: usize, c: usize, i: usize, j: usize },
    /// `𝟙 ∘_1 x = x` with `|x| = a`.
    LeftUnit { a: usize },
    /// `x ∘_i 𝟙 = x` with `|x| = a`.
    RightUnit { a: usize, i: usize },
}

impl Shape {
    fn arities(&self) -> Vec<usize> {
        match *self {
            Shape::Series { a, b, c, .. } | Shape::Parallel { a, b, c, .. } => vec![a, b, c],
            Shape::LeftUnit { a } | Shape::RightUnit { a, .. } => vec![a],
        }
    }

    fn law(&self) -> &'static str {
        match self {
            Shape::Series { .. } => "series associativity",
            Shape::Parallel { .. } => "parallel associativity",
            Shape::LeftUnit { .. } => "left unit law",
            Shape::RightUnit { .. } => "right unit law",
        }
    }

    /// Evaluates both sides on label arrays of the arguments.
    fn sides<T: Clone>(&self, args: &[&[T]], unit: &T, glue: &dyn Fn(&T, &T) -> T) -> (Vec<T>, Vec<T>) {
        let comp = |p: &[T], q: &[T], n: usize, m: usize, i: usize| -> Vec<T> {
            let mut out = Vec::new();
            CompositionPlan::new(n, m, i).apply(p, q, &mut out, unit, glue);
            out
        };
        let unit_clique = [unit.clone()];
        match *self {
            Shape::Series { a, b, c, i, j } => {
                let (x, y, z) = (args[0], args[1], args[2]);
                let xy = comp(x, y, a, b, i);
                let lhs = comp(&xy, z, a + b - 1, c, i + j - 1);
                let yz = comp(y, z, b, c, j);
                let rhs = comp(x, &yz, a, b + c - 1, i);
                (lhs, rhs)
            }
            Shape::Parallel { a, b, c, i, j } => {
                let (x, y, z) = (args[0], args[1], args[2]);
                let xy = comp(x, y, a, b, i);
                let lhs = comp(&xy, z, a + b - 1, c, j + b - 1);
                let xz = comp(x, z, a, c, j);
                let rhs = comp(&xz, y, a + c - 1, b, i);
                (lhs, rhs)
            }
            Shape::LeftUnit { a } => (comp(&unit_clique, args[0], 1, a, 1), args[0].to_vec()),
            Shape::RightUnit { a, i } => (comp(args[0], &unit_clique, a, 1, i), args[0].to_vec()),
        }
    }
}

/// All shapes whose composites have arity at most `max_arity`.
pub fn axiom_shapes(max_arity: usize) -> Vec<Shape> {
    let mut out = Vec::new();
    for a in 1..=max_arity {
        out.push(Shape::LeftUnit { a });
        for i in 1..=a {
            out.push(Shape::RightUnit { a, i });
        }
    }
    for a in 1..=max_arity {
        for b in 1..=max_arity {
            for c in 1..=max_arity {
                if a + b + c > max_arity + 2 {
                    continue;
                }
                for i in 1..=a {
                    for j in 1..=b {
                        out.push(Shape::Series { a, b, c, i, j });
                    }
                    for j in i + 1..=a {
                        out.push(Shape::Parallel { a, b, c, i, j });
                    }
                }
            }
        }
    }
    out
}

/// A failed instance of an axiom.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub law: String,
    pub arguments: Vec<Clique>,
    pub indices: Vec<usize>,
    pub lhs: Clique,
    pub rhs: Clique,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails for", self.law)?;
        for (k, c) in self.arguments.iter().enumerate() {
            write!(f, " {}={c}", ["x", "y", "z"][k.min(2)])?;
        }
        write!(f, " at indices {:?}: {} != {}", self.indices, self.lhs, self.rhs)
    }
}

/// Options of [`verify_operad_axioms_with`].
#[derive(Debug, Clone, Copy)]
pub struct AxiomOptions {
    pub max_arity: usize,
    /// Largest number of instances enumerated one by one for a single shape.
    pub literal_budget: u128,
    /// Also run the arc-local exhaustive check on every shape.
    pub factored: bool,
    pub glue: GlueRule,
}

impl AxiomOptions {
    pub fn new(max_arity: usize) -> AxiomOptions {
        AxiomOptions { max_arity, literal_budget: 1 << 24, factored: true, glue: GlueRule::Standard }
    }
}

/// Outcome of an axiom verification.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub magma: String,
    pub max_arity: usize,
    pub shapes: usize,
    pub literal_shapes: usize,
    pub literal_instances: u128,
    pub factored_shapes: usize,
    pub complete: bool,
    pub counterexample: Option<Counterexample>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            Some(c) => write!(f, "{}: counterexample: {c}", self.magma),
            None => write!(
                f,
                "{}: no counterexample up to arity {} ({} shapes; {} instances enumerated over {} shapes; {} shapes checked arc by arc; {})",
                self.magma,
                self.max_arity,
                self.shapes,
                self.literal_instances,
                self.literal_shapes,
                self.factored_shapes,
                if self.complete { "complete" } else { "incomplete" }
            ),
        }
    }
}

/// Exhaustive verification of the operad axioms with default options.
pub fn verify_operad_axioms(magma: &MagmaRef, max_arity: usize) -> Result<AxiomReport> {
    verify_operad_axioms_with(magma, &AxiomOptions::new(max_arity))
}

fn clique_count(m: usize, n: usize) -> u128 {
    if n == 1 {
        1
    } else {
        (m as u128).pow(arc_count(n) as u32)
    }
}

/// All cliques of arity `n` over an `m`-element magma as a flat `u8` array.
fn all_cliques_u8(m: usize, n: usize) -> Vec<u8> {
    if n == 1 {
        return vec![0];
    }
    let len = arc_count(n);
    let total = clique_count(m, n) as usize;
    let mut out = Vec::with_capacity(total * len);
    let mut cur = vec![0u8; len];
    for _ in 0..total {
        out.extend_from_slice(&cur);
        for k in (0..len).rev() {
            cur[k] += 1;
            if (cur[k] as usize) < m {
                break;
            }
            cur[k] = 0;
        }
    }
    out
}

/// Verifies series, parallel and unit axioms over all basis cliques whose composites have
/// arity at most `max_arity`.
///
/// Every shape whose instance count fits in `literal_budget` is enumerated instance by
/// instance. With `factored`, every shape is also checked arc by arc: both sides are
/// computed on symbolic labels, and each arc's equation is checked for all values of the
/// few labels it involves. Labels of distinct arcs range independently, so this covers
/// every instance of the shape.
pub fn verify_operad_axioms_with(magma: &MagmaRef, opts: &AxiomOptions) -> Result<AxiomReport> {
    let m = magma.require_finite()?;
    if m > 256 {
        return Err(Error::Unsupported("magmas with more than 256 elements".into()));
    }
    if opts.max_arity < 2 {
        return Err(Error::Unsupported("max_arity must be at least 2".into()));
    }
    let shapes = axiom_shapes(opts.max_arity);
    let mut report = AxiomReport {
        magma: magma.name().to_string(),
        max_arity: opts.max_arity,
        shapes: shapes.len(),
        literal_shapes: 0,
        literal_instances: 0,
        factored_shapes: 0,
        complete: true,
        counterexample: None,
    };
    let mut table = vec![0u8; m * m];
    for a in 0..m {
        for b in 0..m {
            table[a * m + b] = opts.glue.combine(magma, a as Elem, b as Elem) as u8;
        }
    }
    let mut pools: BTreeMap<usize, Vec<u8>> = BTreeMap::new();
    for shape in &shapes {
        let instances: u128 = shape.arities().iter().map(|&n| clique_count(m, n)).product();
        let literal = instances <= opts.literal_budget;
        if literal {
            for n in shape.arities() {
                pools.entry(n).or_insert_with(|| all_cliques_u8(m, n));
            }
            if let Some(c) = literal_check(magma, shape, &pools, &table) {
                report.counterexample = Some(c);
                return Ok(report);
            }
            report.literal_shapes += 1;
            report.literal_instances += instances;
        }
        if opts.factored {
            if let Some(c) = factored_check(magma, shape, opts.glue) {
                report.counterexample = Some(c);
                return Ok(report);
            }
            report.factored_shapes += 1;
        } else if !literal {
            report.complete = false;
        }
    }
    Ok(report)
}

fn to_clique(magma: &MagmaRef, n: usize, labels: &[u8]) -> Clique {
    Clique::from_raw(magma, n, labels.iter().map(|&v| v as Elem).collect())
}

fn literal_check(
    magma: &MagmaRef,
    shape: &Shape,
    pools: &BTreeMap<usize, Vec<u8>>,
    table: &[u8],
) -> Option<Counterexample> {
    let m = magma.size().unwrap();
    let glue = |a: &u8, b: &u8| table[*a as usize * m + *b as usize];
    let ar = shape.arities();
    let pool = |n: usize| (&pools[&n], arc_count(n));
    let witness = |args: Vec<&[u8]>, idx: Vec<usize>| {
        let (l, r) = shape.sides(&args, &0u8, &glue);
        let total = match *shape {
            Shape::Series { a, b, c, .. } | Shape::Parallel { a, b, c, .. } => a + b + c - 2,
            Shape::LeftUnit { a } | Shape::RightUnit { a, .. } => a,
        };
        Counterexample {
            law: shape.law().to_string(),
            arguments: args.iter().zip(&ar).map(|(x, &n)| to_clique(magma, n, x)).collect(),
            indices: idx,
            lhs: to_clique(magma, total, &l),
            rhs: to_clique(magma, total, &r),
        }
    };
    match *shape {
        Shape::LeftUnit { a } => {
            let plan = CompositionPlan::new(1, a, 1);
            let (xs, len) = pool(a);
            let unit = [0u8];
            xs.par_chunks(len).find_map_first(|x| {
                let mut out = Vec::with_capacity(len);
                plan.apply(&unit, x, &mut out, &0, glue);
                (out != x).then(|| witness(vec![x], vec![1]))
            })
        }
        Shape::RightUnit { a, i } => {
            let plan = CompositionPlan::new(a, 1, i);
            let (xs, len) = pool(a);
            let unit = [0u8];
            xs.par_chunks(len).find_map_first(|x| {
                let mut out = Vec::with_capacity(len);
                plan.apply(x, &unit, &mut out, &0, glue);
                (out != x).then(|| witness(vec![x], vec![i]))
            })
        }
        Shape::Series { a, b, c, i, j } => {
            let (xs, lx) = pool(a);
            let (ys, ly) = pool(b);
            let (zs, lz) = pool(c);
            let p_xy = CompositionPlan::new(a, b, i);
            let p_xy_z = CompositionPlan::new(a + b - 1, c, i + j - 1);
            let p_yz = CompositionPlan::new(b, c, j);
            let p_x_yz = CompositionPlan::new(a, b + c - 1, i);
            let lyz = arc_count(b + c - 1);
            let mut yz_all = Vec::with_capacity(ys.len() / ly * zs.len() / lz * lyz);
            let mut buf = Vec::new();
            for y in ys.chunks(ly) {
                for z in zs.chunks(lz) {
                    p_yz.apply(y, z, &mut buf, &0, glue);
                    yz_all.extend_from_slice(&buf);
                }
            }
            let nz = zs.len() / lz;
            xs.par_chunks(lx).find_map_first(|x| {
                let (mut xy, mut lhs, mut rhs) = (Vec::new(), Vec::new(), Vec::new());
                for (yi, y) in ys.chunks(ly).enumerate() {
                    p_xy.apply(x, y, &mut xy, &0, glue);
                    for (zi, z) in zs.chunks(lz).enumerate() {
                        p_xy_z.apply(&xy, z, &mut lhs, &0, glue);
                        let off = (yi * nz + zi) * lyz;
                        p_x_yz.apply(x, &yz_all[off..off + lyz], &mut rhs, &0, glue);
                        if lhs != rhs {
                            return Some(witness(vec![x, y, z], vec![i, j]));
                        }
                    }
                }
                None
            })
        }
        Shape::Parallel { a, b, c, i, j } => {
            let (xs, lx) = pool(a);
            let (ys, ly) = pool(b);
            let (zs, lz) = pool(c);
            let p_xy = CompositionPlan::new(a, b, i);
            let p_xy_z = CompositionPlan::new(a + b - 1, c, j + b - 1);
            let p_xz = CompositionPlan::new(a, c, j);
            let p_xz_y = CompositionPlan::new(a + c - 1, b, i);
            xs.par_chunks(lx).find_map_first(|x| {
                let lxz = arc_count(a + c - 1);
                let mut xz_all = Vec::with_capacity(zs.len() / lz * lxz);
                let mut buf = Vec::new();
                for z in zs.chunks(lz) {
                    p_xz.apply(x, z, &mut buf, &0, glue);
                    xz_all.extend_from_slice(&buf);
                }
                let (mut xy, mut lhs, mut rhs) = (Vec::new(), Vec::new(), Vec::new());
                for y in ys.chunks(ly) {
                    p_xy.apply(x, y, &mut xy, &0, glue);
                    for (zi, z) in zs.chunks(lz).enumerate() {
                        p_xy_z.apply(&xy, z, &mut lhs, &0, glue);
                        p_xz_y.apply(&xz_all[zi * lxz..(zi + 1) * lxz], y, &mut rhs, &0, glue);
                        if lhs != rhs {
                            return Some(witness(vec![x, y, z], vec![i, j]));
                        }
                    }
                }
                None
            })
        }
    }
}

/// A label expression over the arcs of the arguments.
#[derive(Debug, Clone, PartialEq)]
enum Term {
    Unit,
    Var(usize, usize),
    Op(Rc<Term>, Rc<Term>),
}

impl Term {
    fn combine(a: &Term, b: &Term, rule: GlueRule) -> Term {
        let (l, r) = match rule {
            GlueRule::Standard => (a, b),
            GlueRule::Swapped => (b, a),
            GlueRule::DropRight => return a.clone(),
        };
        match (l, r) {
            (Term::Unit, t) | (t, Term::Unit) => t.clone(),
            _ => Term::Op(Rc::new(l.clone()), Rc::new(r.clone())),
        }
    }

    fn vars(&self, out: &mut Vec<(usize, usize)>) {
        match self {
            Term::Unit => {}
            Term::Var(a, k) => {
                if !out.contains(&(*a, *k)) {
                    out.push((*a, *k));
                }
            }
            Term::Op(l, r) => {
                l.vars(out);
                r.vars(out);
            }
        }
    }

    fn eval(&self, magma: &Magma, vars: &[(usize, usize)], values: &[Elem]) -> Elem {
        match self {
            Term::Unit => UNIT,
            Term::Var(a, k) => values[vars.iter().position(|v| *v == (*a, *k)).unwrap()],
            Term::Op(l, r) => magma.op(l.eval(magma, vars, values), r.eval(magma, vars, values)),
        }
    }
}

fn factored_check(magma: &MagmaRef, shape: &Shape, rule: GlueRule) -> Option<Counterexample> {
    let m = magma.size().unwrap() as Elem;
    let ar = shape.arities();
    let symbolic: Vec<Vec<Term>> = ar
        .iter()
        .enumerate()
        .map(|(a, &n)| if n == 1 { vec![Term::Unit] } else { (0..arc_count(n)).map(|k| Term::Var(a, k)).collect() })
        .collect();
    let args: Vec<&[Term]> = symbolic.iter().map(|v| v.as_slice()).collect();
    let (lhs, rhs) = shape.sides(&args, &Term::Unit, &|a, b| Term::combine(a, b, rule));
    for (l, r) in lhs.iter().zip(&rhs) {
        let mut vars = Vec::new();
        l.vars(&mut vars);
        r.vars(&mut vars);
        let mut values = vec![0 as Elem; vars.len()];
        loop {
            if l.eval(magma, &vars, &values) != r.eval(magma, &vars, &values) {
                let concrete: Vec<Vec<u8>> = ar
                    .iter()
                    .enumerate()
                    .map(|(a, &n)| {
                        let mut labels = vec![0u8; arc_count(n)];
                        for (v, &(arg, k)) in vars.iter().enumerate() {
                            if arg == a {
                                labels[k] = values[v] as u8;
                            }
                        }
                        labels
                    })
                    .collect();
                let table: Vec<u8> = (0..m * m).map(|t| rule.combine(magma, t / m, t % m) as u8).collect();
                let glue = |x: &u8, y: &u8| table[*x as usize * m as usize + *y as usize];
                let refs: Vec<&[u8]> = concrete.iter().map(|v| v.as_slice()).collect();
                let (cl, cr) = shape.sides(&refs, &0u8, &glue);
                let n_total = (1..).find(|&n| arc_count(n) == cl.len()).unwrap();
                let indices = match *shape {
                    Shape::Series { i, j, .. } | Shape::Parallel { i, j, .. } => vec![i, j],
                    Shape::LeftUnit { .. } => vec![1],
                    Shape::RightUnit { i, .. } => vec![i],
                };
                return Some(Counterexample {
                    law: shape.law().to_string(),
                    arguments: concrete.iter().zip(&ar).map(|(l, &n)| to_clique(magma, n, l)).collect(),
                    indices,
                    lhs: to_clique(magma, n_total, &cl),
                    rhs: to_clique(magma, n_total, &cr),
                });
            }
            let mut k = 0;
            loop {
                if k == values.len() {
                    break;
                }
                values[k] += 1;
                if values[k] < m {
                    break;
                }
                values[k] = 0;
                k += 1;
            }
            if k == values.len() {
                break;
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Associative elements
// ---------------------------------------------------------------------------

/// Result of the two associativity tests of an arity-2 element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociativityReport {
    pub by_expansion: bool,
    pub by_conditions: bool,
}

/// Whether `f ∘_1 f = f ∘_2 f`, decided by direct expansion and, independently, by the
/// three families of coefficient conditions; disagreement is an internal error.
pub fn is_associative_element(f: &LinComb) -> Result<bool> {
    let r = associativity_report(f)?;
    if r.by_expansion != r.by_conditions {
        return Err(Error::Internal(format!(
            "associativity of {f}: expansion says {}, coefficient conditions say {}",
            r.by_expansion, r.by_conditions
        )));
    }
    Ok(r.by_expansion)
}

/// Both associativity tests, without asserting their agreement.
pub fn associativity_report(f: &LinComb) -> Result<AssociativityReport> {
    if f.arity != 2 {
        return Err(Error::Unsupported(format!("associative elements have arity 2, got {}", f.arity)));
    }
    let magma = f.magma.clone();
    let m = magma.require_finite()? as Elem;
    let lhs = partial_compose_lin(f, f, 1)?;
    let rhs = partial_compose_lin(f, f, 2)?;
    let by_expansion = lhs.sub(&rhs)?.is_zero();

    let lambda =
        |p0: Elem, p1: Elem, p2: Elem| -> Coeff { f.terms.get(&vec![p1, p0, p2]).cloned().unwrap_or_else(Coeff::zero) };
    let op = |a, b| magma.op(a, b);
    let mut by_conditions = true;
    'outer: for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    let mut eq2 = Coeff::zero();
                    let mut eq1 = vec![Coeff::zero(); m as usize];
                    let mut eq3 = vec![Coeff::zero(); m as usize];
                    for s in 0..m {
                        for q0 in 0..m {
                            // Eq. 1 and 2 with (p0, p2, q1, q2) = (a, b, c, d), p1 = s.
                            let t = lambda(a, s, b) * lambda(q0, c, d);
                            let delta = op(s, q0);
                            if delta == UNIT {
                                eq2 += t - lambda(a, c, s) * lambda(q0, d, b);
                            } else {
                                eq1[delta as usize] += t;
                            }
                            // Eq. 3 with (p0, p1, q1, q2) = (a, b, c, d), p2 = s.
                            let delta = op(s, q0);
                            if delta != UNIT {
                                eq3[delta as usize] += lambda(a, b, s) * lambda(q0, c, d);
                            }
                        }
                    }
                    if !eq2.is_zero() || eq1.iter().any(|v| !v.is_zero()) || eq3.iter().any(|v| !v.is_zero()) {
                        by_conditions = false;
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(AssociativityReport { by_expansion, by_conditions })
}

/// A random arity-2 element with small integer coefficients on a random support.
pub fn random_arity2_element(magma: &MagmaRef, rng: &mut impl Rng) -> Result<LinComb> {
    let m = magma.require_finite()? as Elem;
    let mut f = LinComb::zero(magma, 2);
    let terms = rng.gen_range(1..=4);
    for _ in 0..terms {
        let labels = vec![rng.gen_range(0..m), rng.gen_range(0..m), rng.gen_range(0..m)];
        let k: i64 = rng.gen_range(-2..=2);
        f.add_raw(labels, Coeff::from_integer(BigInt::from(k)));
    }
    Ok(f)
}

// ---------------------------------------------------------------------------
// Symmetries, rotation, basic basis, products
// ---------------------------------------------------------------------------

/// Outcome of a structural verification.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub instances: u64,
    pub failure: Option<String>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }

    fn new(name: &str) -> CheckReport {
        CheckReport { name: name.to_string(), instances: 0, failure: None }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "{}: ok ({} instances)", self.name, self.instances),
            Some(e) => write!(f, "{}: FAILED: {e}", self.name),
        }
    }
}

/// Calls `f(p, q, i)` for all cliques `p`, `q` and indices with `|p| + |q| - 1 <= max_arity`.
fn for_all_pairs(
    magma: &MagmaRef,
    max_arity: usize,
    mut f: impl FnMut(&Clique, &Clique, usize) -> Option<String>,
) -> Result<(u64, Option<String>)> {
    let mut count = 0u64;
    let mut pools: BTreeMap<usize, Vec<Clique>> = BTreeMap::new();
    for n in 1..=max_arity {
        pools.insert(n, crate::enumeration::generate_cliques(magma, n)?.collect());
    }
    for a in 1..=max_arity {
        for b in 1..=max_arity + 1 - a {
            for p in &pools[&a] {
                for q in &pools[&b] {
                    for i in 1..=a {
                        count += 1;
                        if let Some(e) = f(p, q, i) {
                            return Ok((count, Some(e)));
                        }
                    }
                }
            }
        }
    }
    Ok((count, None))
}

/// Reflection is an antiautomorphism and every magma automorphism induces an operad
/// automorphism, exhaustively up to composite arity `max_arity`.
pub fn verify_symmetries(magma: &MagmaRef, max_arity: usize) -> Result<CheckReport> {
    let autos = magma.automorphisms()?;
    let thetas: Vec<MagmaMorphism> =
        autos.into_iter().map(|t| MagmaMorphism::from_table(magma, magma, t)).collect::<Result<_>>()?;
    let mut report = CheckReport::new(&format!("symmetries of {}", magma.name()));
    let (count, failure) = for_all_pairs(magma, max_arity, |p, q, i| {
        let c = compose_with_rule(p, q, i, GlueRule::Standard);
        let n = p.arity();
        let r = compose_with_rule(&p.reflect(), &q.reflect(), n + 1 - i, GlueRule::Standard);
        if c.reflect() != r {
            return Some(format!("reflect({p} ∘_{i} {q}) = {} but reflected composite is {r}", c.reflect()));
        }
        if c.reflect().reflect() != c {
            return Some(format!("reflection is not an involution on {c}"));
        }
        for t in &thetas {
            let lhs = c.relabel(t).unwrap();
            let rhs = compose_with_rule(&p.relabel(t).unwrap(), &q.relabel(t).unwrap(), i, GlueRule::Standard);
            if lhs != rhs {
                return Some(format!("automorphism {t:?} does not commute with ∘_{i} on {p}, {q}"));
            }
        }
        None
    })?;
    report.instances = count * (1 + thetas.len() as u64);
    report.failure = failure;
    Ok(report)
}

/// Randomized antiautomorphism check on integer cliques with labels in `{-1, 0, 1}`.
pub fn verify_reflection_random_z(samples: usize, max_arity: usize, seed: u64) -> CheckReport {
    let z = Magma::integers();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::new("reflection on random Z-cliques");
    for _ in 0..samples {
        let a = rng.gen_range(1..max_arity);
        let b = rng.gen_range(1..=max_arity + 1 - a);
        let p = random_z_clique(&z, a, &mut rng);
        let q = random_z_clique(&z, b, &mut rng);
        let i = rng.gen_range(1..=a);
        let lhs = partial_compose(&p, &q, i).unwrap().reflect();
        let rhs = partial_compose(&p.reflect(), &q.reflect(), a + 1 - i).unwrap();
        report.instances += 1;
        if lhs != rhs {
            report.failure = Some(format!("reflect({p} ∘_{i} {q}) = {lhs} != {rhs}"));
            break;
        }
    }
    report
}

/// A random integer clique of arity `n` with labels in `{-1, 0, 1}`.
pub fn random_z_clique(z: &MagmaRef, n: usize, rng: &mut impl Rng) -> Clique {
    if n == 1 {
        return Clique::unit(z);
    }
    let labels = (0..arc_count(n)).map(|_| rng.gen_range(-1..=1)).collect();
    Clique::from_raw(z, n, labels)
}

/// The rotation map axioms, exhaustively up to composite arity `max_arity`, together with
/// `ρ^{n+1} = id` on all cliques of arity at most `max_arity`.
pub fn verify_cyclic(magma: &MagmaRef, max_arity: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new(&format!("rotation map of {}", magma.name()));
    let unit = Clique::unit(magma);
    if unit.rotate() != unit {
        report.failure = Some("ρ(𝟙) != 𝟙".into());
        return Ok(report);
    }
    let mut order_checks = 0u64;
    for n in 1..=max_arity {
        for p in crate::enumeration::generate_cliques(magma, n)? {
            let mut r = p.rotate();
            for _ in 0..n {
                r = r.rotate();
            }
            order_checks += 1;
            if r != p {
                report.failure = Some(format!("ρ^{} != id on {p}", n + 1));
                return Ok(report);
            }
        }
    }
    let (count, failure) = for_all_pairs(magma, max_arity, |x, y, i| {
        let lhs = compose_with_rule(x, y, i, GlueRule::Standard).rotate();
        let rhs = if i == 1 {
            compose_with_rule(&y.rotate(), &x.rotate(), y.arity(), GlueRule::Standard)
        } else {
            compose_with_rule(&x.rotate(), y, i - 1, GlueRule::Standard)
        };
        (lhs != rhs).then(|| format!("ρ({x} ∘_{i} {y}) = {lhs} != {rhs}"))
    })?;
    report.instances = count + order_checks;
    report.failure = failure;
    Ok(report)
}

/// Outcome of the basic set-operad test.
#[derive(Debug, Clone)]
pub struct BasicReport {
    pub magma: String,
    pub injective: bool,
    pub right_cancelable: bool,
    pub maps_checked: u64,
    /// Two distinct cliques `x1`, `x2` with `x1 ∘_i q = x2 ∘_i q`.
    pub witness: Option<(Clique, Clique, Clique, usize)>,
}

impl BasicReport {
    pub fn agrees(&self) -> bool {
        self.injective == self.right_cancelable
    }
}

/// Brute-forces injectivity of every map `x ↦ x ∘_i q` with composite arity at most
/// `max_arity`, and compares with right cancelability of the magma.
pub fn verify_basic_set_operad(magma: &MagmaRef, max_arity: usize) -> Result<BasicReport> {
    let right_cancelable = magma.is_right_cancelable()?;
    let mut report = BasicReport {
        magma: magma.name().to_string(),
        injective: true,
        right_cancelable,
        maps_checked: 0,
        witness: None,
    };
    let mut pools: BTreeMap<usize, Vec<Clique>> = BTreeMap::new();
    for n in 1..=max_arity {
        pools.insert(n, crate::enumeration::generate_cliques(magma, n)?.collect());
    }
    for b in 1..=max_arity {
        for a in 1..=max_arity + 1 - b {
            for q in &pools[&b] {
                for i in 1..=a {
                    report.maps_checked += 1;
                    let mut seen: std::collections::HashMap<Clique, &Clique> = std::collections::HashMap::new();
                    for x in &pools[&a] {
                        let c = compose_with_rule(x, q, i, GlueRule::Standard);
                        if let Some(prev) = seen.insert(c, x) {
                            report.injective = false;
                            report.witness = Some((prev.clone(), x.clone(), q.clone(), i));
                            return Ok(report);
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Arcwise pairing of two cliques into a clique over the product magma.
pub fn product_iso(p1: &Clique, p2: &Clique) -> Result<Clique> {
    if p1.arity() != p2.arity() {
        return Err(Error::ArityMismatch(p1.arity(), p2.arity()));
    }
    let prod = Magma::product(p1.magma(), p2.magma())?;
    let labels = p1.labels().iter().zip(p2.labels()).map(|(&a, &b)| prod.pair(a, b)).collect::<Result<_>>()?;
    Clique::new(&prod, p1.arity(), labels)
}

/// Inverse of [`product_iso`].
pub fn product_iso_inverse(p: &Clique) -> Result<(Clique, Clique)> {
    let (m1, m2) = p
        .magma()
        .factors()
        .ok_or_else(|| Error::Unsupported(format!("`{}` is not a product magma", p.magma().name())))?;
    let mut l1 = Vec::with_capacity(p.labels().len());
    let mut l2 = Vec::with_capacity(p.labels().len());
    for &v in p.labels() {
        let (a, b) = p.magma().unpair(v)?;
        l1.push(a);
        l2.push(b);
    }
    Ok((Clique::new(m1, p.arity(), l1)?, Clique::new(m2, p.arity(), l2)?))
}

/// Checks that the product isomorphism commutes with partial composition on all pairs of
/// pairs up to composite arity `max_arity`.
pub fn verify_product_iso(m1: &MagmaRef, m2: &MagmaRef, max_arity: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new(&format!("product iso {} × {}", m1.name(), m2.name()));
    let prod = Magma::product(m1, m2)?;
    let (count, failure) = for_all_pairs(&prod, max_arity, |p, q, i| {
        let (p1, p2) = product_iso_inverse(p).unwrap();
        let (q1, q2) = product_iso_inverse(q).unwrap();
        if product_iso(&p1, &p2).unwrap() != *p {
            return Some(format!("zip(unzip({p})) != {p}"));
        }
        let lhs = compose_with_rule(p, q, i, GlueRule::Standard);
        let rhs = product_iso(&partial_compose(&p1, &q1, i).unwrap(), &partial_compose(&p2, &q2, i).unwrap()).unwrap();
        (lhs != rhs).then(|| format!("product iso does not commute on {p} ∘_{i} {q}"))
    })?;
    report.instances = count;
    report.failure = failure;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_of_integer_triangles() {
        let z = Magma::integers();
        let (a, b, c, d, e, f) = (1, 2, 3, 4, 5, 6);
        let p = Clique::triangle(&z, a, b, c).unwrap();
        let q = Clique::triangle(&z, d, e, f).unwrap();
        let r = partial_compose(&p, &q, 1).unwrap();
        assert_eq!(r.arity(), 3);
        assert_eq!(r.base(), a);
        assert_eq!(r.label(1, 3), b + d);
        assert_eq!((r.edge(1), r.edge(2), r.edge(3)), (e, f, c));
        assert_eq!(r.label(2, 4), 0);
    }

    #[test]
    fn unit_laws_on_examples() {
        let z = Magma::integers();
        let p = Clique::from_arcs(&z, 3, &[((1, 3), 2), ((2, 4), -1), ((1, 4), 5)]).unwrap();
        let u = Clique::unit(&z);
        assert_eq!(partial_compose(&u, &p, 1).unwrap(), p);
        for i in 1..=3 {
            assert_eq!(partial_compose(&p, &u, i).unwrap(), p);
        }
        assert!(partial_compose(&p, &u, 4).is_err());
        assert!(partial_compose(&p, &Clique::unit(&Magma::d(0)), 1).is_err());
    }

    #[test]
    fn bilinearity() {
        let m = Magma::d(0);
        let p = Clique::triangle(&m, 1, 0, 1).unwrap();
        let p2 = Clique::triangle(&m, 0, 1, 1).unwrap();
        let q = Clique::triangle(&m, 1, 1, 0).unwrap();
        let two = Coeff::from_integer(2.into());
        let three = Coeff::from_integer(3.into());
        let f = LinComb::from_clique(&p).scale(&two);
        let g = LinComb::from_clique(&q).scale(&three);
        let lhs = partial_compose_lin(&f, &g, 2).unwrap();
        let rhs = LinComb::from_clique(&partial_compose(&p, &q, 2).unwrap()).scale(&Coeff::from_integer(6.into()));
        assert_eq!(lhs, rhs);
        let sum = LinComb::from_clique(&p).add(&LinComb::from_clique(&p2)).unwrap();
        let lhs = partial_compose_lin(&sum, &LinComb::from_clique(&q), 1).unwrap();
        let rhs = LinComb::from_clique(&partial_compose(&p, &q, 1).unwrap())
            .add(&LinComb::from_clique(&partial_compose(&p2, &q, 1).unwrap()))
            .unwrap();
        assert_eq!(lhs, rhs);
        assert!(partial_compose_lin(&LinComb::zero(&m, 2), &g, 1).unwrap().is_zero());
    }

    #[test]
    fn glued_arc_label() {
        let m = Magma::e(2);
        for p in crate::enumeration::generate_cliques(&m, 2).unwrap() {
            for q in crate::enumeration::generate_cliques(&m, 3).unwrap().take(50) {
                for i in 1..=2 {
                    let r = partial_compose(&p, &q, i).unwrap();
                    assert_eq!(r.label(i, i + 3), m.op(p.edge(i), q.base()));
                }
            }
        }
    }

    #[test]
    fn axioms_small() {
        for spec in ["N:2", "D:0", "E:1"] {
            let m = crate::magma::parse_magma_spec(spec).unwrap();
            let r = verify_operad_axioms(&m, 4).unwrap();
            assert!(r.ok() && r.complete, "{r}");
        }
    }

    #[test]
    fn dropped_glue_is_detected() {
        let m = Magma::d(0);
        let mut opts = AxiomOptions::new(3);
        opts.glue = GlueRule::DropRight;
        let r = verify_operad_axioms_with(&m, &opts).unwrap();
        assert!(!r.ok());
        let mut opts = AxiomOptions::new(3);
        opts.glue = GlueRule::DropRight;
        opts.literal_budget = 0;
        let r = verify_operad_axioms_with(&m, &opts).unwrap();
        assert!(!r.ok(), "the arc-local check must also see the fault");
    }

    #[test]
    fn star_with_unit_clique() {
        let z = Magma::integers();
        let p = Clique::from_arcs(&z, 2, &[((1, 2), 3), ((1, 3), -1)]).unwrap();
        let q = Clique::from_arcs(&z, 2, &[((1, 2), 1), ((2, 3), 2)]).unwrap();
        assert_eq!(star(&p, &Clique::all_unit(&z, 2).unwrap()).unwrap(), p);
        let s = star(&p, &q).unwrap();
        assert_eq!((s.edge(1), s.edge(2), s.base()), (4, 2, -1));
    }

    #[test]
    fn product_iso_round_trip() {
        let d = Magma::d(0);
        let p1 = Clique::from_arcs(&d, 3, &[((1, 3), 1)]).unwrap();
        let p2 = Clique::from_arcs(&d, 3, &[((2, 4), 1), ((1, 3), 1)]).unwrap();
        let z = product_iso(&p1, &p2).unwrap();
        assert_eq!(product_iso_inverse(&z).unwrap(), (p1, p2));
        let u = product_iso(&Clique::unit(&d), &Clique::unit(&d)).unwrap();
        assert!(u.is_unit());
    }
}
