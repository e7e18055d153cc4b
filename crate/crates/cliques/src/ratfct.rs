//! Products of powers of interval sums `u_x + ... + u_{y-1}` and their rational linear
//! combinations, with the substitution composition of rational functions, the map `F_θ`
//! from cliques, and an exact zero test.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clique::{arcs, Clique};
use crate::error::{Error, Result};
use crate::magma::{ensure_same, Magma, MagmaMorphism, RankFunction};
use crate::operad::{partial_compose, star, Coeff, LinComb};

/// An interval `[x, y)` standing for the linear form `u_x + ... + u_{y-1}`.
pub type Interval = (usize, usize);

/// `Π (u_x + ... + u_{y-1})^{e}` over a finite set of intervals with nonzero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalProduct {
    arity: usize,
    exps: BTreeMap<Interval, i64>,
}

impl IntervalProduct {
    /// The constant `1` of arity `n`.
    pub fn one(arity: usize) -> IntervalProduct {
        IntervalProduct { arity, exps: BTreeMap::new() }
    }

    pub fn new(arity: usize, factors: &[(Interval, i64)]) -> Result<IntervalProduct> {
        let mut out = IntervalProduct::one(arity);
        for &((x, y), e) in factors {
            if x == 0 || x >= y || y > arity + 1 {
                return Err(Error::InvalidArc(x, y, arity));
            }
            out.multiply_factor((x, y), e);
        }
        Ok(out)
    }

    fn multiply_factor(&mut self, iv: Interval, e: i64) {
        if e == 0 {
            return;
        }
        let v = self.exps.entry(iv).or_insert(0);
        *v += e;
        if *v == 0 {
            self.exps.remove(&iv);
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn exponent(&self, iv: Interval) -> i64 {
        self.exps.get(&iv).copied().unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (Interval, i64)> + '_ {
        self.exps.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Product of two functions of the same arity.
    pub fn mul(&self, other: &IntervalProduct) -> Result<IntervalProduct> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        let mut out = self.clone();
        for (iv, e) in other.factors() {
            out.multiply_factor(iv, e);
        }
        Ok(out)
    }

    /// The reciprocal.
    pub fn inverse(&self) -> IntervalProduct {
        IntervalProduct { arity: self.arity, exps: self.exps.iter().map(|(&k, &v)| (k, -v)).collect() }
    }

    /// `f(u_1, ..., u_{i-1}, u_i + ... + u_{i+m-1}, u_{i+m}, ...) · g(u_i, ..., u_{i+m-1})`.
    pub fn compose(&self, g: &IntervalProduct, i: usize) -> Result<IntervalProduct> {
        if i == 0 || i > self.arity {
            return Err(Error::IndexOutOfRange { index: i, arity: self.arity });
        }
        let m = g.arity;
        let mut out = IntervalProduct::one(self.arity + m - 1);
        for ((x, y), e) in self.factors() {
            let iv = if y <= i {
                (x, y)
            } else if x > i {
                (x + m - 1, y + m - 1)
            } else {
                (x, y + m - 1)
            };
            out.multiply_factor(iv, e);
        }
        for ((x, y), e) in g.factors() {
            out.multiply_factor((x + i - 1, y + i - 1), e);
        }
        Ok(out)
    }

    /// Exact value at a point `u = (u_1, ..., u_n)`; `None` at a pole.
    pub fn eval(&self, u: &[BigRational]) -> Option<BigRational> {
        let mut acc = BigRational::one();
        for ((x, y), e) in self.factors() {
            let s: BigRational = u[x - 1..y - 1].iter().sum();
            if s.is_zero() {
                return None;
            }
            let p = num::pow(s, e.unsigned_abs() as usize);
            acc = if e > 0 { acc * p } else { acc / p };
        }
        Some(acc)
    }
}

fn write_form(f: &mut fmt::Formatter<'_>, (x, y): Interval, e: i64) -> fmt::Result {
    let vars: Vec<String> = (x..y).map(|k| format!("u{k}")).collect();
    let e = e.abs();
    if vars.len() == 1 {
        f.write_str(&vars[0])?;
    } else {
        write!(f, "({})", vars.join(" + "))?;
    }
    if e != 1 {
        write!(f, "^{e}")?;
    }
    Ok(())
}

fn write_factors(f: &mut fmt::Formatter<'_>, fs: &[(Interval, i64)]) -> fmt::Result {
    for (k, &(iv, e)) in fs.iter().enumerate() {
        if k > 0 {
            f.write_str(" ")?;
        }
        write_form(f, iv, e)?;
    }
    Ok(())
}

impl fmt::Display for IntervalProduct {
    /// Renders as `num / den`, e.g. `(u1 + u2)^2 u4^3 / (u1 (u5 + u6))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num: Vec<_> = self.factors().filter(|&(_, e)| e > 0).collect();
        let den: Vec<_> = self.factors().filter(|&(_, e)| e < 0).collect();
        if num.is_empty() {
            f.write_str("1")?;
        } else {
            write_factors(f, &num)?;
        }
        if !den.is_empty() {
            f.write_str(" / ")?;
            if den.len() == 1 {
                write_factors(f, &den)?;
            } else {
                f.write_str("(")?;
                write_factors(f, &den)?;
                f.write_str(")")?;
            }
        }
        Ok(())
    }
}

/// A rational linear combination of interval products of one arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatElem {
    arity: usize,
    terms: BTreeMap<IntervalProduct, Coeff>,
}

impl RatElem {
    pub fn zero(arity: usize) -> RatElem {
        RatElem { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> RatElem {
        RatElem::from_product(IntervalProduct::one(arity))
    }

    pub fn from_product(p: IntervalProduct) -> RatElem {
        let mut out = RatElem::zero(p.arity);
        out.terms.insert(p, Coeff::one());
        out
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IntervalProduct, &Coeff)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, p: IntervalProduct, c: Coeff) -> Result<()> {
        if p.arity != self.arity {
            return Err(Error::ArityMismatch(self.arity, p.arity));
        }
        if c.is_zero() {
            return Ok(());
        }
        let v = self.terms.entry(p.clone()).or_insert_with(Coeff::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&p);
        }
        Ok(())
    }

    pub fn add(&self, other: &RatElem) -> Result<RatElem> {
        let mut out = self.clone();
        for (p, c) in other.terms() {
            out.add_term(p.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &RatElem) -> Result<RatElem> {
        let mut out = RatElem::zero(self.arity);
        for (p, a) in self.terms() {
            for (q, b) in other.terms() {
                out.add_term(p.mul(q)?, a * b)?;
            }
        }
        Ok(out)
    }

    /// Exact value at a point; `None` if some term has a pole there.
    pub fn eval(&self, u: &[BigRational]) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (p, c) in self.terms() {
            acc += p.eval(u)? * c;
        }
        Some(acc)
    }
}

impl fmt::Display for RatElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (p, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}·")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Bilinear extension of [`IntervalProduct::compose`].
pub fn rf_compose(f: &RatElem, g: &RatElem, i: usize) -> Result<RatElem> {
    if i == 0 || i > f.arity {
        return Err(Error::IndexOutOfRange { index: i, arity: f.arity });
    }
    let mut out = RatElem::zero(f.arity + g.arity - 1);
    for (p, a) in f.terms() {
        for (q, b) in g.terms() {
            out.add_term(p.compose(q, i)?, a * b)?;
        }
    }
    Ok(out)
}

/// `F_θ(p) = Π_{(x, y)} (u_x + ... + u_{y-1})^{θ(p(x, y))}`.
pub fn f_theta(p: &Clique, theta: &RankFunction) -> Result<IntervalProduct> {
    ensure_same(p.magma(), theta.magma())?;
    let n = p.arity();
    let mut out = IntervalProduct::one(n);
    for ((x, y), &l) in arcs(n).zip(p.labels()) {
        out.multiply_factor((x, y), theta.eval(l));
    }
    Ok(out)
}

/// Linear extension of [`f_theta`].
pub fn f_theta_lin(f: &LinComb, theta: &RankFunction) -> Result<RatElem> {
    let mut out = RatElem::zero(f.arity());
    for (c, k) in f.iter() {
        out.add_term(f_theta(&c, theta)?, k.clone())?;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Exact zero test
// ---------------------------------------------------------------------------

/// A polynomial in `u_1, ..., u_n` with rational coefficients, keyed by exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    vars: usize,
    terms: HashMap<Vec<u32>, BigRational>,
}

impl Poly {
    pub fn constant(vars: usize, c: BigRational) -> Poly {
        let mut terms = HashMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; vars], c);
        }
        Poly { vars, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplication by `u_x + ... + u_{y-1}`.
    pub fn mul_interval(&self, (x, y): Interval) -> Poly {
        let mut terms: HashMap<Vec<u32>, BigRational> = HashMap::with_capacity(self.terms.len() * (y - x));
        for (mono, c) in &self.terms {
            for v in x - 1..y - 1 {
                let mut m = mono.clone();
                m[v] += 1;
                *terms.entry(m).or_insert_with(BigRational::zero) += c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Poly { vars: self.vars, terms }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            *self.terms.entry(m.clone()).or_insert_with(BigRational::zero) += c;
        }
        self.terms.retain(|_, c| !c.is_zero());
    }
}

/// Outcome of [`zero_test`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroTest {
    /// Result of the exact expansion.
    pub exact: bool,
    /// Whether every random evaluation returned zero.
    pub random_points_zero: bool,
    pub evaluations: usize,
    /// Number of monomials of the cleared numerator.
    pub numerator_terms: usize,
}

/// The cleared numerator `D · f`, where `D` is the product of every interval form raised to
/// its largest negative exponent among the terms of `f`.
pub fn cleared_numerator(f: &RatElem) -> Poly {
    let mut den: BTreeMap<Interval, i64> = BTreeMap::new();
    for (p, _) in f.terms() {
        for (iv, e) in p.factors() {
            if e < 0 {
                let d = den.entry(iv).or_insert(0);
                *d = (*d).max(-e);
            }
        }
    }
    let mut total = Poly::constant(f.arity, BigRational::zero());
    for (p, c) in f.terms() {
        let mut t = Poly::constant(f.arity, c.clone());
        let mut powers: BTreeMap<Interval, i64> = den.clone();
        for (iv, e) in p.factors() {
            *powers.entry(iv).or_insert(0) += e;
        }
        for (iv, e) in powers {
            for _ in 0..e {
                t = t.mul_interval(iv);
            }
        }
        total.add_assign(&t);
    }
    total
}

fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigRational> {
    (0..n)
        .map(|_| {
            let num: i64 = rng.gen_range(-97..=97);
            let den: i64 = rng.gen_range(1..=13);
            BigRational::new(BigInt::from(num), BigInt::from(den))
        })
        .collect()
}

/// Runs `evaluations` random-point evaluations (points hitting a pole are redrawn) and the
/// exact expansion of the cleared numerator.
pub fn zero_test(f: &RatElem, evaluations: usize, seed: u64) -> ZeroTest {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random_points_zero = true;
    let mut done = 0;
    while done < evaluations {
        let u = random_point(&mut rng, f.arity);
        if let Some(v) = f.eval(&u) {
            done += 1;
            if !v.is_zero() {
                random_points_zero = false;
                break;
            }
        }
    }
    let num = cleared_numerator(f);
    ZeroTest { exact: num.is_zero(), random_points_zero, evaluations: done, numerator_terms: num.len() }
}

/// Exact decision of `f = 0` as a rational function.
pub fn rf_is_zero(f: &RatElem) -> bool {
    if f.is_empty() {
        return true;
    }
    let quick = zero_test(f, 1, 0x5eed);
    if !quick.random_points_zero {
        return false;
    }
    quick.exact
}

// ---------------------------------------------------------------------------
// Laws
// ---------------------------------------------------------------------------

/// The arity-`n` integer bubble whose `x`th edge is labeled `α_x` and whose other arcs are
/// unit; its image under `F_Id` is the Laurent monomial `u_1^{α_1} ... u_n^{α_n}`.
pub fn laurent_bubble(alpha: &[i64]) -> Result<Clique> {
    let z = Magma::integers();
    let solid: Vec<((usize, usize), i64)> =
        alpha.iter().enumerate().filter(|(_, &a)| a != 0).map(|(k, &a)| ((k + 1, k + 2), a)).collect();
    Clique::from_arcs(&z, alpha.len(), &solid)
}

/// Outcome of [`verify_rf_laws`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RfLawsReport {
    pub morphism_instances: u64,
    pub product_instances: u64,
    pub inverse_instances: u64,
    pub laurent_instances: u64,
    pub failure: Option<String>,
}

impl RfLawsReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks, for `F_Id` on integer cliques:
/// the morphism law on all cliques with labels in `{-1, 0, 1}` up to `max_arity`, and on
/// `samples` random pairs; multiplicativity with respect to `⋆`; inversion under negation;
/// Laurent monomials of arity at least 2 with exponents in `-2..=2` as images of bubbles.
pub fn verify_rf_laws(max_arity: usize, samples: usize, seed: u64) -> Result<RfLawsReport> {
    let z = Magma::integers();
    let id = RankFunction::identity();
    let neg = MagmaMorphism::integer_scale(-1);
    let mut rep = RfLawsReport {
        morphism_instances: 0,
        product_instances: 0,
        inverse_instances: 0,
        laurent_instances: 0,
        failure: None,
    };
    let small = |n: usize| -> Vec<Clique> {
        let len = crate::clique::arc_count(n);
        let total = 3usize.pow(len as u32);
        (0..total)
            .map(|mut code| {
                let labels = (0..len)
                    .map(|_| {
                        let v = (code % 3) as i64 - 1;
                        code /= 3;
                        v
                    })
                    .collect::<Vec<_>>();
                Clique::from_raw(&z, n, labels)
            })
            .filter(|c| n > 1 || c.labels()[0] == 0)
            .collect()
    };
    let check_pair = |p: &Clique, q: &Clique, i: usize, rep: &mut RfLawsReport| -> Result<bool> {
        rep.morphism_instances += 1;
        let lhs = f_theta(&partial_compose(p, q, i)?, &id)?;
        let rhs = f_theta(p, &id)?.compose(&f_theta(q, &id)?, i)?;
        if lhs != rhs {
            rep.failure = Some(format!("F({p} ∘_{i} {q}) = {lhs} but F ∘_{i} F = {rhs}"));
            return Ok(false);
        }
        Ok(true)
    };
    let cache: Vec<Vec<Clique>> = (0..=max_arity).map(|n| if n == 0 { vec![] } else { small(n) }).collect();
    for n in 1..=max_arity {
        for m in 1..=max_arity + 1 - n {
            if n + m - 1 > max_arity {
                continue;
            }
            for p in &cache[n] {
                for q in &cache[m] {
                    for i in 1..=n {
                        if !check_pair(p, q, i, &mut rep)? {
                            return Ok(rep);
                        }
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=4);
        let p = crate::operad::random_z_clique(&z, n, &mut rng);
        let q = crate::operad::random_z_clique(&z, m, &mut rng);
        let i = rng.gen_range(1..=n);
        if !check_pair(&p, &q, i, &mut rep)? {
            return Ok(rep);
        }
        let q2 = crate::operad::random_z_clique(&z, n, &mut rng);
        rep.product_instances += 1;
        let lhs = f_theta(&p, &id)?.mul(&f_theta(&q2, &id)?)?;
        let rhs = f_theta(&star(&p, &q2)?, &id)?;
        if lhs != rhs {
            rep.failure = Some(format!("F({p}) F({q2}) = {lhs} but F({p} ⋆ {q2}) = {rhs}"));
            return Ok(rep);
        }
        rep.inverse_instances += 1;
        let inv = f_theta(&p.relabel(&neg)?, &id)?;
        if inv != f_theta(&p, &id)?.inverse() {
            rep.failure = Some(format!("F of the negation of {p} is {inv}, not 1/F({p})"));
            return Ok(rep);
        }
    }
    for n in 2..=max_arity {
        let mut alpha = vec![-2i64; n];
        loop {
            rep.laurent_instances += 1;
            let img = f_theta(&laurent_bubble(&alpha)?, &id)?;
            let want = IntervalProduct::new(
                n,
                &alpha.iter().enumerate().map(|(k, &a)| ((k + 1, k + 2), a)).collect::<Vec<_>>(),
            )?;
            if img != want {
                rep.failure = Some(format!("Laurent monomial {want} is not F of its bubble ({img})"));
                return Ok(rep);
            }
            let mut k = 0;
            while k < n && alpha[k] == 2 {
                alpha[k] = -2;
                k += 1;
            }
            if k == n {
                break;
            }
            alpha[k] += 1;
        }
    }
    Ok(rep)
}

/// The two kernel elements of `F_Id` over the integers.
pub fn kernel_examples() -> Result<Vec<LinComb>> {
    let z = Magma::integers();
    let t = |b, e1, e2| Clique::triangle(&z, b, e1, e2);
    let first = LinComb::from_int_terms(&z, 2, &[(1, t(1, 0, 0)?), (-1, t(0, 1, 0)?), (-1, t(0, 0, 1)?)])?;
    let c = |solid: &[((usize, usize), i64)]| Clique::from_arcs(&z, 3, solid);
    let second = LinComb::from_int_terms(
        &z,
        3,
        &[
            (1, c(&[((2, 3), -1), ((3, 4), -1)])?),
            (-1, c(&[((2, 4), -1), ((3, 4), -1)])?),
            (-1, c(&[((2, 3), -1), ((2, 4), -1)])?),
        ],
    )?;
    Ok(vec![first, second])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_and_constant() {
        let one1 = RatElem::one(1);
        let one2 = RatElem::one(2);
        assert_eq!(rf_compose(&one2, &one1, 2).unwrap(), one2);
        assert_eq!(rf_compose(&one1, &one2, 1).unwrap(), one2);
    }

    #[test]
    fn hand_reindexing() {
        let f = IntervalProduct::new(2, &[((1, 3), 1)]).unwrap();
        let g = IntervalProduct::new(1, &[((1, 2), 1)]).unwrap();
        let want = IntervalProduct::new(2, &[((1, 3), 1), ((2, 3), 1)]).unwrap();
        assert_eq!(f.compose(&g, 2).unwrap(), want);
    }

    #[test]
    fn rendering_of_arity_six_example() {
        let z = Magma::integers();
        let p = Clique::from_arcs(
            &z,
            6,
            &[((1, 2), -1), ((1, 5), 2), ((1, 7), 1), ((3, 7), -2), ((4, 5), 3), ((5, 7), -1)],
        )
        .unwrap();
        let f = f_theta(&p, &RankFunction::identity()).unwrap();
        assert_eq!(
            f.to_string(),
            "(u1 + u2 + u3 + u4)^2 (u1 + u2 + u3 + u4 + u5 + u6) u4^3 / (u1 (u3 + u4 + u5 + u6)^2 (u5 + u6))"
        );
    }

    #[test]
    fn kernel() {
        let id = RankFunction::identity();
        for k in kernel_examples().unwrap() {
            let f = f_theta_lin(&k, &id).unwrap();
            assert!(!f.is_empty());
            let t = zero_test(&f, 20, 1);
            assert!(t.exact && t.random_points_zero);
        }
        let single = RatElem::from_product(IntervalProduct::new(2, &[((1, 3), 1)]).unwrap());
        assert!(!rf_is_zero(&single));
    }
}
