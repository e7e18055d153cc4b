//! Unitary magmas: built-in families, products, table magmas, morphisms and rank functions.
//!
//! Every element is stored as an [`Elem`] (an `i64`). Finite carriers are indexed
//! so that the unit is always `0`; the additive integers use their own values, so
//! the unit is `0` there too. A label is solid exactly when it is nonzero.

use std::fmt;
use std::sync::Arc;

use serde::Deserialize;

use crate::error::{Error, Result};

/// Raw element value. The unit of every magma is `0`.
pub type Elem = i64;

/// The unit of every magma in its raw encoding.
pub const UNIT: Elem = 0;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Carrier {
    Integers,
    Finite { names: Vec<String>, table: Vec<u32> },
}

/// A set with a binary operation admitting a two-sided unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Magma {
    name: String,
    carrier: Carrier,
    factors: Option<(Arc<Magma>, Arc<Magma>)>,
}

/// Shared handle on a magma.
pub type MagmaRef = Arc<Magma>;

impl fmt::Display for Magma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

const UNIT_SYMBOL: &str = "𝟙";

impl Magma {
    fn finite(name: String, names: Vec<String>, table: Vec<u32>) -> Magma {
        Magma { name, carrier: Carrier::Finite { names, table }, factors: None }
    }

    fn from_rule(name: String, names: Vec<String>, rule: impl Fn(usize, usize) -> usize) -> Magma {
        let m = names.len();
        let mut table = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                table.push(rule(a, b) as u32);
            }
        }
        Magma::finite(name, names, table)
    }

    /// The additive magma of all integers.
    pub fn integers() -> MagmaRef {
        Arc::new(Magma { name: "Z".into(), carrier: Carrier::Integers, factors: None })
    }

    /// The cyclic additive magma on `Z / l Z`, `l >= 1`.
    pub fn cyclic(l: usize) -> Result<MagmaRef> {
        if l == 0 {
            return Err(Error::MagmaSpec("N:0".into()));
        }
        let names = (0..l).map(|k| k.to_string()).collect();
        Ok(Arc::new(Magma::from_rule(format!("N:{l}"), names, |a, b| (a + b) % l)))
    }

    /// The magma `{𝟙, 0, d_1, ..., d_l}` with `0` absorbing and `d_i ⋆ d_j = 0`.
    pub fn d(l: usize) -> MagmaRef {
        let mut names = vec![UNIT_SYMBOL.to_string(), "0".to_string()];
        names.extend((1..=l).map(|k| format!("d_{k}")));
        Arc::new(Magma::from_rule(format!("D:{l}"), names, |a, b| {
            if a == 0 {
                b
            } else if b == 0 {
                a
            } else {
                1
            }
        }))
    }

    /// The magma `{𝟙, e_1, ..., e_l}` with `e_i ⋆ e_j = 𝟙`.
    pub fn e(l: usize) -> MagmaRef {
        let mut names = vec![UNIT_SYMBOL.to_string()];
        names.extend((1..=l).map(|k| format!("e_{k}")));
        Arc::new(Magma::from_rule(format!("E:{l}"), names, |a, b| {
            if a == 0 {
                b
            } else if b == 0 {
                a
            } else {
                0
            }
        }))
    }

    /// The one-element magma.
    pub fn trivial() -> MagmaRef {
        Arc::new(Magma::finite("trivial".into(), vec![UNIT_SYMBOL.into()], vec![0]))
    }

    /// Cartesian product with componentwise operation. Both factors must be finite.
    /// The pair `(a, b)` is encoded as `a * |M2| + b`.
    pub fn product(m1: &MagmaRef, m2: &MagmaRef) -> Result<MagmaRef> {
        let s1 = m1.size().ok_or_else(|| Error::InfiniteMagma(m1.name.clone()))?;
        let s2 = m2.size().ok_or_else(|| Error::InfiniteMagma(m2.name.clone()))?;
        let mut names = Vec::with_capacity(s1 * s2);
        for a in 0..s1 {
            for b in 0..s2 {
                names.push(format!("({},{})", m1.name_of(a as Elem), m2.name_of(b as Elem)));
            }
        }
        let mut magma = Magma::from_rule(format!("prod({},{})", m1.name, m2.name), names, |x, y| {
            let (a1, b1) = (x / s2, x % s2);
            let (a2, b2) = (y / s2, y % s2);
            let a = m1.op(a1 as Elem, a2 as Elem) as usize;
            let b = m2.op(b1 as Elem, b2 as Elem) as usize;
            a * s2 + b
        });
        magma.factors = Some((m1.clone(), m2.clone()));
        Ok(Arc::new(magma))
    }

    /// A finite magma given by element names, a unit name and a row-major table of names.
    /// The carrier is reindexed so that the unit comes first; the unit axioms are validated.
    pub fn from_table(name: &str, elements: &[String], unit: &str, table: &[String]) -> Result<MagmaRef> {
        let m = elements.len();
        if m == 0 {
            return Err(Error::InvalidTable("empty carrier".into()));
        }
        if table.len() != m * m {
            return Err(Error::InvalidTable(format!("expected {} entries, found {}", m * m, table.len())));
        }
        let u = elements
            .iter()
            .position(|e| e == unit)
            .ok_or_else(|| Error::InvalidTable(format!("unit `{unit}` is not an element")))?;
        let mut order: Vec<usize> = vec![u];
        order.extend((0..m).filter(|&k| k != u));
        let mut position = vec![0usize; m];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let lookup = |s: &str| -> Result<usize> {
            elements
                .iter()
                .position(|e| e == s)
                .map(|old| position[old])
                .ok_or_else(|| Error::InvalidTable(format!("unknown element `{s}` in table")))
        };
        let mut new_table = vec![0u32; m * m];
        for a in 0..m {
            for b in 0..m {
                new_table[position[a] * m + position[b]] = lookup(&table[a * m + b])? as u32;
            }
        }
        let names = order.iter().map(|&k| elements[k].clone()).collect();
        let magma = Magma::finite(name.to_string(), names, new_table);
        for x in 0..m as Elem {
            if magma.op(UNIT, x) != x || magma.op(x, UNIT) != x {
                return Err(Error::InvalidTable(format!(
                    "`{unit}` is not a two-sided unit (fails on `{}`)",
                    magma.name_of(x)
                )));
            }
        }
        Ok(Arc::new(magma))
    }

    /// Display identifier, which is also the canonical spec string.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of elements, or `None` for the integers.
    pub fn size(&self) -> Option<usize> {
        match &self.carrier {
            Carrier::Integers => None,
            Carrier::Finite { names, .. } => Some(names.len()),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    /// Size of a finite magma, or an error naming the magma.
    pub fn require_finite(&self) -> Result<usize> {
        self.size().ok_or_else(|| Error::InfiniteMagma(self.name.clone()))
    }

    pub fn unit(&self) -> Elem {
        UNIT
    }

    /// The two factors of a product magma.
    pub fn factors(&self) -> Option<(&MagmaRef, &MagmaRef)> {
        self.factors.as_ref().map(|(a, b)| (a, b))
    }

    /// The magma product of two raw elements.
    #[inline]
    pub fn op(&self, a: Elem, b: Elem) -> Elem {
        match &self.carrier {
            Carrier::Integers => a.checked_add(b).expect("integer label overflow"),
            Carrier::Finite { names, table } => table[a as usize * names.len() + b as usize] as Elem,
        }
    }

    /// Whether a raw value is an element of the carrier.
    pub fn contains(&self, a: Elem) -> bool {
        match self.size() {
            None => true,
            Some(m) => a >= 0 && (a as usize) < m,
        }
    }

    /// All elements of a finite carrier, unit first.
    pub fn elements(&self) -> Result<Vec<Elem>> {
        Ok((0..self.require_finite()? as Elem).collect())
    }

    /// Rendering of an element in the usual notation.
    pub fn name_of(&self, a: Elem) -> String {
        match &self.carrier {
            Carrier::Integers => a.to_string(),
            Carrier::Finite { names, .. } => names[a as usize].clone(),
        }
    }

    /// Parses an element name. The unit also answers to `𝟙`, `unit`, `u` and, when no
    /// element carries that name, `1`.
    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        match &self.carrier {
            Carrier::Integers => s.parse::<i64>().map_err(|_| Error::UnknownElement(s.to_string(), self.name.clone())),
            Carrier::Finite { names, .. } => {
                if let Some(k) = names.iter().position(|n| n == s) {
                    return Ok(k as Elem);
                }
                let compact: String = s.chars().filter(|c| *c != '_' && !c.is_whitespace()).collect();
                if let Some(k) = names
                    .iter()
                    .position(|n| n.chars().filter(|c| *c != '_' && !c.is_whitespace()).collect::<String>() == compact)
                {
                    return Ok(k as Elem);
                }
                if matches!(s, "𝟙" | "unit" | "u" | "1") {
                    return Ok(UNIT);
                }
                Err(Error::UnknownElement(s.to_string(), self.name.clone()))
            }
        }
    }

    /// True iff `y ⋆ x = z ⋆ x` implies `y = z`. The integers are cancelable by rule.
    pub fn is_right_cancelable(&self) -> Result<bool> {
        let m = match self.size() {
            None => return Ok(true),
            Some(m) => m as Elem,
        };
        for x in 0..m {
            let mut seen = vec![false; m as usize];
            for y in 0..m {
                let v = self.op(y, x) as usize;
                if seen[v] {
                    return Ok(false);
                }
                seen[v] = true;
            }
        }
        Ok(true)
    }

    /// A witness `(x, y, z)` with `y ⋆ x = z ⋆ x` and `y != z`, when one exists.
    pub fn right_cancel_witness(&self) -> Result<Option<(Elem, Elem, Elem)>> {
        let m = match self.size() {
            None => return Ok(None),
            Some(m) => m as Elem,
        };
        for x in 0..m {
            for y in 0..m {
                for z in (y + 1)..m {
                    if self.op(y, x) == self.op(z, x) {
                        return Ok(Some((x, y, z)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// True iff there are `x, y != 𝟙` with `x ⋆ y = 𝟙`. On the integers, `1 + (-1) = 0`.
    pub fn has_nontrivial_unit_divisors(&self) -> bool {
        match self.size() {
            None => true,
            Some(m) => {
                let m = m as Elem;
                (1..m).any(|x| (1..m).any(|y| self.op(x, y) == UNIT))
            }
        }
    }

    /// Diagnostic associativity check. The integers are associative by rule.
    pub fn is_monoid(&self) -> bool {
        match self.size() {
            None => true,
            Some(m) => {
                let m = m as Elem;
                (0..m).all(|a| (0..m).all(|b| (0..m).all(|c| self.op(self.op(a, b), c) == self.op(a, self.op(b, c)))))
            }
        }
    }

    /// Exhaustive check that the unit is two-sided on a finite carrier.
    pub fn check_unit(&self) -> bool {
        match self.size() {
            None => true,
            Some(m) => (0..m as Elem).all(|x| self.op(UNIT, x) == x && self.op(x, UNIT) == x),
        }
    }

    /// All automorphisms of a finite magma, as element permutations.
    pub fn automorphisms(&self) -> Result<Vec<Vec<Elem>>> {
        let m = self.require_finite()?;
        let mut out = Vec::new();
        let mut perm: Vec<Elem> = (0..m as Elem).collect();
        permutations_fixing_zero(&mut perm, 1, &mut |p| {
            let ok = (0..m as Elem)
                .all(|a| (0..m as Elem).all(|b| p[self.op(a, b) as usize] == self.op(p[a as usize], p[b as usize])));
            if ok {
                out.push(p.to_vec());
            }
        });
        Ok(out)
    }

    /// Encodes a pair of factor elements of a product magma.
    pub fn pair(&self, a: Elem, b: Elem) -> Result<Elem> {
        let (_, m2) = self.factors().ok_or_else(|| Error::Unsupported(format!("`{}` is not a product", self.name)))?;
        Ok(a * m2.require_finite()? as Elem + b)
    }

    /// Decodes an element of a product magma into its factor elements.
    pub fn unpair(&self, e: Elem) -> Result<(Elem, Elem)> {
        let (_, m2) = self.factors().ok_or_else(|| Error::Unsupported(format!("`{}` is not a product", self.name)))?;
        let s2 = m2.require_finite()? as Elem;
        Ok((e / s2, e % s2))
    }
}

fn permutations_fixing_zero(perm: &mut Vec<Elem>, k: usize, f: &mut impl FnMut(&[Elem])) {
    if k >= perm.len() {
        f(perm);
        return;
    }
    for j in k..perm.len() {
        perm.swap(k, j);
        permutations_fixing_zero(perm, k + 1, f);
        perm.swap(k, j);
    }
}

/// Whether two magma handles denote the same magma.
pub fn same_magma(a: &MagmaRef, b: &MagmaRef) -> bool {
    Arc::ptr_eq(a, b) || a.name == b.name && a.carrier == b.carrier
}

/// Fails with [`Error::MagmaMismatch`] unless both handles denote the same magma.
pub fn ensure_same(a: &MagmaRef, b: &MagmaRef) -> Result<()> {
    if same_magma(a, b) {
        Ok(())
    } else {
        Err(Error::MagmaMismatch(a.name.clone(), b.name.clone()))
    }
}

#[derive(Deserialize)]
struct TableFile {
    elements: Vec<String>,
    unit: String,
    table: Vec<String>,
}

/// Parses a magma spec: `Z`, `N:<l>`, `D:<l>`, `E:<l>`, `trivial`,
/// `prod(<spec>,<spec>)` or `table:<file>`.
pub fn parse_magma_spec(text: &str) -> Result<MagmaRef> {
    let t = text.trim();
    let bad = || Error::MagmaSpec(text.to_string());
    let number = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    if t == "Z" {
        return Ok(Magma::integers());
    }
    if t == "trivial" {
        return Ok(Magma::trivial());
    }
    if let Some(rest) = t.strip_prefix("N:") {
        return Magma::cyclic(number(rest)?).map_err(|_| bad());
    }
    if let Some(rest) = t.strip_prefix("D:") {
        return Ok(Magma::d(number(rest)?));
    }
    if let Some(rest) = t.strip_prefix("E:") {
        return Ok(Magma::e(number(rest)?));
    }
    if let Some(path) = t.strip_prefix("table:") {
        let raw = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
        let file: TableFile = serde_json::from_str(&raw).map_err(|e| Error::InvalidTable(e.to_string()))?;
        return Magma::from_table(t, &file.elements, &file.unit, &file.table);
    }
    if let Some(inner) = t.strip_prefix("prod(").and_then(|r| r.strip_suffix(')')) {
        let mut depth = 0i32;
        for (k, c) in inner.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    let a = parse_magma_spec(&inner[..k])?;
                    let b = parse_magma_spec(&inner[k + 1..])?;
                    return Magma::product(&a, &b);
                }
                _ => {}
            }
        }
    }
    Err(bad())
}

/// An element tagged with its magma, for operations that must reject mixed operands.
#[derive(Debug, Clone)]
pub struct MagmaElem {
    pub magma: MagmaRef,
    pub value: Elem,
}

impl MagmaElem {
    pub fn new(magma: &MagmaRef, value: Elem) -> Result<MagmaElem> {
        if !magma.contains(value) {
            return Err(Error::UnknownElement(value.to_string(), magma.name.clone()));
        }
        Ok(MagmaElem { magma: magma.clone(), value })
    }

    pub fn parse(magma: &MagmaRef, name: &str) -> Result<MagmaElem> {
        Ok(MagmaElem { magma: magma.clone(), value: magma.parse_elem(name)? })
    }

    /// The magma product, rejecting operands from different magmas.
    pub fn op(&self, other: &MagmaElem) -> Result<MagmaElem> {
        ensure_same(&self.magma, &other.magma)?;
        Ok(MagmaElem { magma: self.magma.clone(), value: self.magma.op(self.value, other.value) })
    }

    pub fn is_unit(&self) -> bool {
        self.value == UNIT
    }
}

impl PartialEq for MagmaElem {
    fn eq(&self, other: &Self) -> bool {
        same_magma(&self.magma, &other.magma) && self.value == other.value
    }
}

impl fmt::Display for MagmaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.magma.name_of(self.value))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum MapRule {
    Table(Vec<Elem>),
    Scale(i64),
}

/// A validated unitary-magma morphism.
#[derive(Debug, Clone)]
pub struct MagmaMorphism {
    src: MagmaRef,
    dst: MagmaRef,
    rule: MapRule,
}

impl MagmaMorphism {
    /// A morphism from a finite magma, given by the image of every element.
    pub fn from_table(src: &MagmaRef, dst: &MagmaRef, images: Vec<Elem>) -> Result<MagmaMorphism> {
        let m = src.require_finite()?;
        if images.len() != m {
            return Err(Error::InvalidMorphism(format!("expected {m} images, found {}", images.len())));
        }
        if let Some(bad) = images.iter().find(|&&v| !dst.contains(v)) {
            return Err(Error::InvalidMorphism(format!("image {bad} outside `{}`", dst.name)));
        }
        if images[0] != UNIT {
            return Err(Error::InvalidMorphism("the unit is not sent to the unit".into()));
        }
        for a in 0..m {
            for b in 0..m {
                let lhs = images[src.op(a as Elem, b as Elem) as usize];
                let rhs = dst.op(images[a], images[b]);
                if lhs != rhs {
                    return Err(Error::InvalidMorphism(format!(
                        "θ({} ⋆ {}) != θ({}) ⋆ θ({})",
                        src.name_of(a as Elem),
                        src.name_of(b as Elem),
                        src.name_of(a as Elem),
                        src.name_of(b as Elem)
                    )));
                }
            }
        }
        Ok(MagmaMorphism { src: src.clone(), dst: dst.clone(), rule: MapRule::Table(images) })
    }

    /// The endomorphism `x ↦ c·x` of the integers. These are all endomorphisms of `Z`.
    pub fn integer_scale(c: i64) -> MagmaMorphism {
        let z = Magma::integers();
        MagmaMorphism { src: z.clone(), dst: z, rule: MapRule::Scale(c) }
    }

    /// The identity morphism of any magma.
    pub fn identity(m: &MagmaRef) -> MagmaMorphism {
        match m.size() {
            None => MagmaMorphism { src: m.clone(), dst: m.clone(), rule: MapRule::Scale(1) },
            Some(s) => MagmaMorphism { src: m.clone(), dst: m.clone(), rule: MapRule::Table((0..s as Elem).collect()) },
        }
    }

    pub fn src(&self) -> &MagmaRef {
        &self.src
    }

    pub fn dst(&self) -> &MagmaRef {
        &self.dst
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        match &self.rule {
            MapRule::Table(t) => t[a as usize],
            MapRule::Scale(c) => a * c,
        }
    }

    /// The composite `other ∘ self`.
    pub fn then(&self, other: &MagmaMorphism) -> Result<MagmaMorphism> {
        ensure_same(&self.dst, &other.src)?;
        let rule = match (&self.rule, &other.rule) {
            (MapRule::Scale(a), MapRule::Scale(b)) => MapRule::Scale(a * b),
            (MapRule::Table(t), _) => MapRule::Table(t.iter().map(|&v| other.apply(v)).collect()),
            (MapRule::Scale(_), MapRule::Table(_)) => {
                return Err(Error::Unsupported("morphisms from the integers into finite magmas".into()))
            }
        };
        Ok(MagmaMorphism { src: self.src.clone(), dst: other.dst.clone(), rule })
    }
}

/// A morphism of unitary magmas into the additive integers.
#[derive(Debug, Clone)]
pub struct RankFunction {
    magma: MagmaRef,
    rule: MapRule,
}

impl RankFunction {
    /// A rank function on a finite magma, validated exhaustively.
    pub fn from_table(magma: &MagmaRef, values: Vec<i64>) -> Result<RankFunction> {
        let m = magma.require_finite()?;
        if values.len() != m {
            return Err(Error::InvalidMorphism(format!("expected {m} values, found {}", values.len())));
        }
        if values[0] != 0 {
            return Err(Error::InvalidMorphism("θ(𝟙) must be 0".into()));
        }
        for a in 0..m {
            for b in 0..m {
                if values[magma.op(a as Elem, b as Elem) as usize] != values[a] + values[b] {
                    return Err(Error::InvalidMorphism(format!(
                        "θ({} ⋆ {}) != θ({}) + θ({})",
                        magma.name_of(a as Elem),
                        magma.name_of(b as Elem),
                        magma.name_of(a as Elem),
                        magma.name_of(b as Elem)
                    )));
                }
            }
        }
        Ok(RankFunction { magma: magma.clone(), rule: MapRule::Table(values) })
    }

    /// The rank function `x ↦ c·x` on the integers.
    pub fn integer_scale(c: i64) -> RankFunction {
        RankFunction { magma: Magma::integers(), rule: MapRule::Scale(c) }
    }

    /// The identity rank function on the integers.
    pub fn identity() -> RankFunction {
        RankFunction::integer_scale(1)
    }

    pub fn magma(&self) -> &MagmaRef {
        &self.magma
    }

    #[inline]
    pub fn eval(&self, a: Elem) -> i64 {
        match &self.rule {
            MapRule::Table(t) => t[a as usize],
            MapRule::Scale(c) => a * c,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d2_products_of_generators_vanish() {
        let d = Magma::d(2);
        let d1 = d.parse_elem("d_1").unwrap();
        let d2 = d.parse_elem("d_2").unwrap();
        assert_eq!(d.name_of(d.op(d1, d2)), "0");
    }

    #[test]
    fn e2_is_not_associative() {
        let e = Magma::e(2);
        let (e1, e2) = (e.parse_elem("e_1").unwrap(), e.parse_elem("e_2").unwrap());
        assert_eq!(e.op(e1, e.op(e1, e2)), e1);
        assert_eq!(e.op(e.op(e1, e1), e2), e2);
        assert!(!e.is_monoid());
    }

    #[test]
    fn units_are_two_sided() {
        for spec in
            ["N:1", "N:2", "N:3", "D:0", "D:1", "D:2", "E:0", "E:1", "E:2", "trivial", "prod(D:0,D:0)", "prod(N:2,E:1)"]
        {
            assert!(parse_magma_spec(spec).unwrap().check_unit(), "{spec}");
        }
    }

    #[test]
    fn cancelability() {
        assert!(Magma::cyclic(3).unwrap().is_right_cancelable().unwrap());
        assert!(Magma::e(1).is_right_cancelable().unwrap());
        assert!(!Magma::d(0).is_right_cancelable().unwrap());
        assert!(Magma::integers().is_right_cancelable().unwrap());
        for l in 0..3 {
            assert!(!Magma::d(l).is_right_cancelable().unwrap());
            assert!(!Magma::e(l + 2).is_right_cancelable().unwrap());
            assert!(Magma::cyclic(l + 1).unwrap().is_right_cancelable().unwrap());
        }
    }

    #[test]
    fn unit_divisors() {
        assert!(!Magma::d(0).has_nontrivial_unit_divisors());
        assert!(!Magma::d(3).has_nontrivial_unit_divisors());
        assert!(Magma::e(1).has_nontrivial_unit_divisors());
        assert!(Magma::cyclic(2).unwrap().has_nontrivial_unit_divisors());
        assert!(Magma::integers().has_nontrivial_unit_divisors());
    }

    #[test]
    fn klein_four_group() {
        let n2 = Magma::cyclic(2).unwrap();
        let k = Magma::product(&n2, &n2).unwrap();
        assert_eq!(k.size(), Some(4));
        for a in 0..4 {
            assert_eq!(k.op(a, a), UNIT);
        }
        assert_eq!(k.op(1, 2), 3);
        assert!(k.is_monoid());
    }

    #[test]
    fn product_with_trivial_is_a_copy() {
        let d = Magma::d(1);
        let p = Magma::product(&d, &Magma::trivial()).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(p.op(a, b), d.op(a, b));
            }
        }
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(parse_magma_spec("D:0").unwrap().size(), Some(2));
        assert_eq!(parse_magma_spec("prod(D:0,D:0)").unwrap().size(), Some(4));
        assert_eq!(parse_magma_spec("prod(prod(D:0,N:2),E:1)").unwrap().size(), Some(8));
        assert_eq!(parse_magma_spec("N:3").unwrap().op(2, 2), 1);
        assert!(parse_magma_spec("Q").is_err());
        assert!(parse_magma_spec("N:x").is_err());
    }

    #[test]
    fn table_rejects_non_unit() {
        let els: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let bad: Vec<String> = ["a", "a", "b", "b"].iter().map(|s| s.to_string()).collect();
        assert!(Magma::from_table("t", &els, "a", &bad).is_err());
        let good: Vec<String> = ["b", "a", "a", "b"].iter().map(|s| s.to_string()).collect();
        let m = Magma::from_table("t", &els, "b", &good).unwrap();
        assert_eq!(m.name_of(0), "b");
        assert_eq!(m.op(1, 1), 0);
        assert_eq!(m.op(0, 1), 1);
    }

    #[test]
    fn mixed_operands_rejected() {
        let a = MagmaElem::parse(&Magma::d(0), "0").unwrap();
        let b = MagmaElem::parse(&Magma::e(1), "e_1").unwrap();
        assert!(a.op(&b).is_err());
        assert!(a.op(&a).is_ok());
    }

    #[test]
    fn rank_functions() {
        for l in 1..5 {
            let n = Magma::cyclic(l).unwrap();
            for c in 1..3 {
                let values: Vec<i64> = (0..l as i64).map(|k| c * k).collect();
                assert!(RankFunction::from_table(&n, values).is_err() || l == 1);
            }
            assert!(RankFunction::from_table(&n, vec![0; l]).is_ok());
        }
        assert_eq!(RankFunction::identity().eval(-3), -3);
    }

    #[test]
    fn automorphisms_of_small_magmas() {
        assert_eq!(Magma::d(2).automorphisms().unwrap().len(), 2);
        assert_eq!(Magma::cyclic(3).unwrap().automorphisms().unwrap().len(), 2);
        assert_eq!(parse_magma_spec("prod(N:2,N:2)").unwrap().automorphisms().unwrap().len(), 6);
    }
}
