//! Generation and counting of cliques and of clique families, closed dimension formulas,
//! prime census, the Dyck-word bijection for nesting-free cliques and sequence export.

use std::fmt;

use num::{BigUint, One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::clique::{self, arc_count, arcs, Clique};
use crate::error::{Error, Result};
use crate::magma::{Elem, MagmaRef, UNIT};
use crate::substructures::{Variant, VariantKind};

/// Default enumeration budget: at most `2^24` cliques per arity.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// Number of arity-`n` cliques over an `m`-element magma.
pub fn clique_count(m: usize, n: usize) -> u128 {
    if n == 1 {
        1
    } else {
        (m as u128).checked_pow(arc_count(n) as u32).unwrap_or(u128::MAX)
    }
}

fn check_budget(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// Iterator over all cliques of one arity in lexicographic label order.
pub struct CliqueIter {
    magma: MagmaRef,
    arity: usize,
    m: Elem,
    current: Option<Vec<Elem>>,
}

impl Iterator for CliqueIter {
    type Item = Clique;

    fn next(&mut self) -> Option<Clique> {
        let cur = self.current.as_mut()?;
        let out = Clique::from_raw(&self.magma, self.arity, cur.clone());
        if self.arity == 1 || !advance(cur, self.m) {
            self.current = None;
        }
        Some(out)
    }
}

/// Odometer step over labels in `0..m`; returns `false` after the last assignment.
#[inline]
fn advance(labels: &mut [Elem], m: Elem) -> bool {
    for k in (0..labels.len()).rev() {
        labels[k] += 1;
        if labels[k] < m {
            return true;
        }
        labels[k] = 0;
    }
    false
}

/// All cliques of arity `n` (only the unit clique for `n = 1`), each exactly once.
pub fn generate_cliques(magma: &MagmaRef, n: usize) -> Result<CliqueIter> {
    let m = magma.require_finite()? as Elem;
    if n == 0 {
        return Err(Error::InvalidClique("arity must be positive".into()));
    }
    Ok(CliqueIter { magma: magma.clone(), arity: n, m, current: Some(vec![UNIT; arc_count(n)]) })
}

/// Counts label arrays in `0..m` of length `len` satisfying `pred`, in parallel over prefixes.
/// `fixed` lists positions that are pinned to the unit.
fn parallel_count(m: usize, len: usize, free: &[usize], pred: impl Fn(&[Elem]) -> bool + Sync) -> u128 {
    let mut prefix = 0;
    let mut chunks: u128 = 1;
    while prefix < free.len() && chunks < 256 {
        chunks *= m as u128;
        prefix += 1;
    }
    (0..chunks as u64)
        .into_par_iter()
        .map(|c| {
            let mut labels = vec![UNIT; len];
            let mut rest = c;
            for &pos in free[..prefix].iter().rev() {
                labels[pos] = (rest % m as u64) as Elem;
                rest /= m as u64;
            }
            let tail = &free[prefix..];
            let mut count = 0u128;
            loop {
                if pred(&labels) {
                    count += 1;
                }
                let mut k = tail.len();
                loop {
                    if k == 0 {
                        return count;
                    }
                    k -= 1;
                    let pos = tail[k];
                    labels[pos] += 1;
                    if (labels[pos] as usize) < m {
                        break;
                    }
                    labels[pos] = 0;
                }
            }
        })
        .sum()
}

/// Counts all arity-`n` cliques satisfying `pred` on raw labels.
pub fn count_cliques_where(
    magma: &MagmaRef,
    n: usize,
    budget: u128,
    pred: impl Fn(&[Elem]) -> bool + Sync,
) -> Result<u128> {
    let m = magma.require_finite()?;
    if n == 1 {
        return Ok(pred(&[UNIT]) as u128);
    }
    check_budget(clique_count(m, n), budget)?;
    let free: Vec<usize> = (0..arc_count(n)).collect();
    Ok(parallel_count(m, arc_count(n), &free, pred))
}

/// Closed dimension formulas for the full operad, `Lab`, `Whi`, `Bub` and `Nes`.
pub fn dim_formula(v: &Variant, n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidClique("arity must be positive".into()));
    }
    if n == 1 {
        return Ok(BigUint::one());
    }
    let m = BigUint::from(v.magma().require_finite()?);
    let diag = ((n + 1) * (n - 2) / 2) as u32;
    Ok(match &v.kind {
        VariantKind::Full => m.pow(arc_count(n) as u32),
        VariantKind::Lab { b, e, d } => {
            BigUint::from(b.len()) * BigUint::from(e.len()).pow(n as u32) * BigUint::from(d.len()).pow(diag)
        }
        VariantKind::Whi => m.pow(diag),
        VariantKind::Bub => m.pow(n as u32 + 1),
        VariantKind::Nes => {
            let mut total = BigUint::zero();
            for k in 0..=n {
                total += (&m - 1u32).pow(k as u32) * narayana(n + 2, k);
            }
            total
        }
        _ => return Err(Error::Unsupported(format!("no closed formula for {v}"))),
    })
}

/// `nar(n, k) = C(n - 2, k) C(n - 1, k) / (k + 1)`.
pub fn narayana(n: usize, k: usize) -> BigUint {
    if n < 2 {
        return BigUint::zero();
    }
    binomial(n - 2, k) * binomial(n - 1, k) / BigUint::from(k + 1)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut r = BigUint::one();
    for t in 0..k {
        r = r * BigUint::from(n - t) / BigUint::from(t + 1);
    }
    r
}

pub fn catalan(n: usize) -> BigUint {
    binomial(2 * n, n) / BigUint::from(n + 1)
}

/// Counts members of a family by streaming all cliques of arity `n`.
pub fn count_by_enumeration(v: &Variant, n: usize, budget: u128) -> Result<u128> {
    count_cliques_where(v.magma(), n, budget, |l| v.member_labels(n, l))
}

/// Counts members of a family whose membership depends only on solidity, by a search over
/// sets of solid arcs weighted by `(m - 1)^{#solid}`. Downward-closed families are pruned.
pub fn count_by_configurations(v: &Variant, n: usize) -> Result<u128> {
    if !v.depends_on_solidity_only() {
        return Err(Error::Unsupported(format!("{v} depends on labels, not only on solidity")));
    }
    let m = v.magma().require_finite()?;
    if n == 1 {
        return Ok(v.member_labels(1, &[UNIT]) as u128);
    }
    let len = arc_count(n);
    let mut labels = vec![UNIT; len];
    let prune = v.is_downward_closed();
    let mut total = 0u128;
    fn dfs(
        v: &Variant,
        n: usize,
        m: u128,
        k: usize,
        solid: u32,
        labels: &mut Vec<Elem>,
        prune: bool,
        total: &mut u128,
    ) {
        if k == labels.len() {
            if v.member_labels(n, labels) {
                *total += (m - 1).pow(solid);
            }
            return;
        }
        dfs(v, n, m, k + 1, solid, labels, prune, total);
        if m > 1 {
            labels[k] = 1;
            if !prune || v.member_labels(n, labels) {
                dfs(v, n, m, k + 1, solid + 1, labels, prune, total);
            }
            labels[k] = UNIT;
        }
    }
    dfs(v, n, m as u128, 0, 0, &mut labels, prune, &mut total);
    Ok(total)
}

/// How a count was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Formula,
    Enumeration,
    Both,
}

/// A computed integer sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceRecord {
    pub variant: String,
    pub magma: String,
    pub values: Vec<(usize, u128)>,
    pub provenance: Provenance,
}

/// Counts for arities `1..=max_arity`. Arities within `budget` are enumerated clique by
/// clique; larger ones use the solid-set search when membership depends on solidity only.
/// Enumeration is cross-checked against the closed formula when one exists.
pub fn compute_sequence(v: &Variant, max_arity: usize, budget: u128) -> Result<SequenceRecord> {
    let m = v.magma().require_finite()?;
    let mut values = Vec::new();
    let mut formula_used = false;
    let mut enumeration_used = false;
    for n in 1..=max_arity {
        let formula = dim_formula(v, n).ok();
        let counted = if clique_count(m, n) <= budget {
            Some(count_by_enumeration(v, n, budget)?)
        } else if v.depends_on_solidity_only() && (v.is_downward_closed() || (1u128 << arc_count(n)) <= budget) {
            Some(count_by_configurations(v, n)?)
        } else {
            None
        };
        let value = match (counted, &formula) {
            (Some(c), Some(f)) => {
                if BigUint::from(c) != *f {
                    return Err(Error::Internal(format!("{v} at arity {n}: enumeration {c} != formula {f}")));
                }
                formula_used = true;
                enumeration_used = true;
                c
            }
            (Some(c), None) => {
                enumeration_used = true;
                c
            }
            (None, Some(f)) => {
                formula_used = true;
                u128::try_from(f.clone()).map_err(|_| Error::Unsupported("count exceeds 128 bits".into()))?
            }
            (None, None) => {
                return Err(Error::BudgetExceeded { needed: clique_count(m, n), budget });
            }
        };
        values.push((n, value));
    }
    let provenance = match (formula_used, enumeration_used) {
        (true, true) => Provenance::Both,
        (true, false) => Provenance::Formula,
        _ => Provenance::Enumeration,
    };
    Ok(SequenceRecord { variant: v.to_string(), magma: v.magma().name().to_string(), values, provenance })
}

/// Number of prime cliques of arity `n`.
pub fn count_prime(magma: &MagmaRef, n: usize, budget: u128) -> Result<u128> {
    count_cliques_where(magma, n, budget, |l| clique::is_prime(n, l))
}

/// Number of white prime cliques of arity `n`; only white cliques are enumerated.
pub fn count_white_prime(magma: &MagmaRef, n: usize, budget: u128) -> Result<u128> {
    let m = magma.require_finite()?;
    if n == 1 {
        return Ok(0);
    }
    let free: Vec<usize> =
        arcs(n).enumerate().filter(|(_, (x, y))| *y > *x + 1 && !(*x == 1 && *y == n + 1)).map(|(k, _)| k).collect();
    check_budget((m as u128).pow(free.len() as u32), budget)?;
    Ok(parallel_count(m, arc_count(n), &free, |l| clique::is_prime(n, l)))
}

/// Number of minimal prime cliques of arity `n`, over all cliques.
pub fn count_minimal_prime(magma: &MagmaRef, n: usize, budget: u128) -> Result<u128> {
    count_cliques_where(magma, n, budget, |l| clique::is_minimal_prime(n, l))
}

/// Checks `count_prime = m^{n+1} · count_white_prime`.
pub fn check_prime_divisibility(magma: &MagmaRef, n: usize, budget: u128) -> Result<(u128, u128)> {
    let m = magma.require_finite()? as u128;
    let all = count_prime(magma, n, budget)?;
    let white = count_white_prime(magma, n, budget)?;
    if n >= 2 && all != m.pow(n as u32 + 1) * white {
        return Err(Error::Internal(format!("arity {n}: {all} primes but {white} white primes")));
    }
    Ok((all, white))
}

// ---------------------------------------------------------------------------
// Dyck words
// ---------------------------------------------------------------------------

/// A letter of a colored Dyck word; colored letters `a` carry a non-unit label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    ColoredA(Elem),
    B,
}

/// A word over `{a, b}` with some letters `a` at even positions colored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredDyckWord {
    pub letters: Vec<Letter>,
}

impl fmt::Display for ColoredDyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            match l {
                Letter::A => f.write_str("a")?,
                Letter::B => f.write_str("b")?,
                Letter::ColoredA(c) => write!(f, "a[{c}]")?,
            }
        }
        Ok(())
    }
}

impl ColoredDyckWord {
    /// The word with colors written as element names of `magma`.
    pub fn render(&self, magma: &MagmaRef) -> String {
        self.letters
            .iter()
            .map(|l| match l {
                Letter::A => "a".to_string(),
                Letter::B => "b".to_string(),
                Letter::ColoredA(c) => format!("a[{}]", magma.name_of(*c)),
            })
            .collect()
    }

    /// Prefix dominance and balance, ignoring colors.
    pub fn is_dyck(&self) -> bool {
        let mut height = 0i64;
        for l in &self.letters {
            height += if *l == Letter::B { -1 } else { 1 };
            if height < 0 {
                return false;
            }
        }
        height == 0
    }

    /// Number of colored letters.
    pub fn colored(&self) -> usize {
        self.letters.iter().filter(|l| matches!(l, Letter::ColoredA(_))).count()
    }
}

/// Encodes a nesting-free clique by decorating each vertex: a source gets `a a_c`, a
/// target `b b`, a vertex that is both `b a_c`, and any other vertex `a b`, where `c` is
/// the label of the arc leaving the vertex.
pub fn dyck_encode(p: &Clique) -> Result<ColoredDyckWord> {
    if p.magma().has_nontrivial_unit_divisors() {
        return Err(Error::NotApplicable("Dyck encoding".into(), "the magma has nontrivial unit divisors".into()));
    }
    if !p.is_nesting_free() {
        return Err(Error::InvalidClique(format!("{p} is not nesting-free")));
    }
    let n = p.arity();
    let mut out_label = vec![None; n + 2];
    let mut has_in = vec![false; n + 2];
    for a in p.solid_arcs() {
        out_label[a.x] = Some(p.label(a.x, a.y));
        has_in[a.y] = true;
    }
    let mut letters = Vec::with_capacity(2 * (n + 1));
    for x in 1..=n + 1 {
        match (out_label[x], has_in[x]) {
            (Some(c), false) => letters.extend([Letter::A, Letter::ColoredA(c)]),
            (None, true) => letters.extend([Letter::B, Letter::B]),
            (Some(c), true) => letters.extend([Letter::B, Letter::ColoredA(c)]),
            (None, false) => letters.extend([Letter::A, Letter::B]),
        }
    }
    Ok(ColoredDyckWord { letters })
}

/// Inverse of [`dyck_encode`]: sources and targets read left to right are paired in order.
pub fn dyck_decode(w: &ColoredDyckWord, magma: &MagmaRef) -> Result<Clique> {
    let bad = |s: &str| Error::InvalidDyckWord(format!("{w}: {s}"));
    if w.letters.len() < 4 || w.letters.len() % 2 != 0 {
        return Err(bad("length must be even and at least 4"));
    }
    if !w.is_dyck() {
        return Err(bad("not a Dyck word"));
    }
    let n = w.letters.len() / 2 - 1;
    let mut sources = Vec::new();
    let mut targets = Vec::new();
    for x in 1..=n + 1 {
        let (first, second) = (w.letters[2 * x - 2], w.letters[2 * x - 1]);
        match (first, second) {
            (Letter::A, Letter::ColoredA(c)) => sources.push((x, c)),
            (Letter::B, Letter::B) => targets.push(x),
            (Letter::B, Letter::ColoredA(c)) => {
                targets.push(x);
                sources.push((x, c));
            }
            (Letter::A, Letter::B) => {}
            _ => return Err(bad("invalid vertex decoration")),
        }
    }
    if sources.len() != targets.len() {
        return Err(bad("unbalanced sources and targets"));
    }
    let mut solid = Vec::new();
    for (&(x, c), &y) in sources.iter().zip(&targets) {
        if c == UNIT || !magma.contains(c) {
            return Err(bad("invalid color"));
        }
        if x >= y {
            return Err(bad("arc does not go forward"));
        }
        solid.push(((x, y), c));
    }
    Clique::from_arcs(magma, n, &solid)
}

/// All colored Dyck words of length `2(n + 1)` whose colored letters are exactly the
/// letters `a` at even positions, with colors in the non-unit elements. At arity 1 only the
/// uncolored word remains, matching the single unit clique.
pub fn colored_dyck_words(magma: &MagmaRef, n: usize) -> Result<Vec<ColoredDyckWord>> {
    let m = magma.require_finite()? as Elem;
    let len = 2 * (n + 1);
    let mut out = Vec::new();
    fn rec(pos: usize, len: usize, height: i64, m: Elem, cur: &mut Vec<Letter>, out: &mut Vec<ColoredDyckWord>) {
        if pos == len {
            if height == 0 {
                out.push(ColoredDyckWord { letters: cur.clone() });
            }
            return;
        }
        if height > 0 {
            cur.push(Letter::B);
            rec(pos + 1, len, height - 1, m, cur, out);
            cur.pop();
        }
        if pos % 2 == 1 {
            for c in 1..m {
                cur.push(Letter::ColoredA(c));
                rec(pos + 1, len, height + 1, m, cur, out);
                cur.pop();
            }
        } else {
            cur.push(Letter::A);
            rec(pos + 1, len, height + 1, m, cur, out);
            cur.pop();
        }
    }
    rec(0, len, 0, m, &mut Vec::new(), &mut out);
    if n == 1 {
        out.retain(|w| w.letters.iter().all(|l| !matches!(l, Letter::ColoredA(_))));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

/// Output format of [`export_sequence`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    BFile,
    Csv,
    Json,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<ExportFormat> {
        match s {
            "b" => Ok(ExportFormat::BFile),
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            _ => Err(Error::Parse(format!("unknown format `{s}`"))),
        }
    }
}

/// Renders a sequence as b-file lines `n a(n)`, as CSV with header `arity,count`, or as JSON.
pub fn export_sequence(rec: &SequenceRecord, format: ExportFormat) -> String {
    match format {
        ExportFormat::BFile => rec.values.iter().map(|(n, c)| format!("{n} {c}\n")).collect(),
        ExportFormat::Csv => {
            let mut out = String::from("arity,count\n");
            for (n, c) in &rec.values {
                out.push_str(&format!("{n},{c}\n"));
            }
            out
        }
        ExportFormat::Json => {
            let values: Vec<serde_json::Value> =
                rec.values.iter().map(|(n, c)| serde_json::json!({"arity": n, "count": c.to_string()})).collect();
            let v = serde_json::json!({
                "variant": rec.variant,
                "magma": rec.magma,
                "provenance": rec.provenance,
                "values": values,
            });
            format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magma::Magma;

    #[test]
    fn generation_counts() {
        let d = Magma::d(0);
        assert_eq!(generate_cliques(&d, 2).unwrap().count(), 8);
        assert_eq!(generate_cliques(&d, 1).unwrap().collect::<Vec<_>>(), vec![Clique::unit(&d)]);
        assert_eq!(generate_cliques(&Magma::d(1), 2).unwrap().count(), 27);
        let all: Vec<Clique> = generate_cliques(&d, 3).unwrap().collect();
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, all);
    }

    #[test]
    fn formulas() {
        let d = Magma::d(0);
        let nes = Variant::parse("nes", &d).unwrap();
        let got: Vec<u64> = (2..=6).map(|n| dim_formula(&nes, n).unwrap().try_into().unwrap()).collect();
        assert_eq!(got, vec![5, 14, 42, 132, 429]);
        let bub = Variant::parse("bub", &d).unwrap();
        assert_eq!(dim_formula(&bub, 3).unwrap(), BigUint::from(16u32));
        let lab = Variant::parse("lab:𝟙;𝟙;𝟙,0", &d).unwrap();
        let whi = Variant::parse("whi", &d).unwrap();
        for n in 2..6 {
            assert_eq!(dim_formula(&lab, n).unwrap(), dim_formula(&whi, n).unwrap());
        }
        for n in 1..8 {
            let s: BigUint = (0..=n).map(|k| narayana(n + 2, k)).sum();
            assert_eq!(s, catalan(n + 1));
        }
    }

    #[test]
    fn export_formats() {
        let rec = SequenceRecord {
            variant: "x".into(),
            magma: "D:0".into(),
            values: vec![(2, 4), (3, 10)],
            provenance: Provenance::Enumeration,
        };
        assert_eq!(export_sequence(&rec, ExportFormat::BFile), "2 4\n3 10\n");
        assert!(export_sequence(&rec, ExportFormat::Csv).starts_with("arity,count\n"));
        let empty = SequenceRecord { values: vec![], ..rec };
        assert_eq!(export_sequence(&empty, ExportFormat::BFile), "");
    }

    #[test]
    fn dyck_of_all_unit_clique() {
        let d = Magma::d(0);
        for n in 1..5 {
            let w = dyck_encode(&Clique::all_unit(&d, n).unwrap()).unwrap();
            assert_eq!(w.to_string(), "ab".repeat(n + 1));
        }
    }
}
