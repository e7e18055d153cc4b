//! Named subfamilies of cliques realized as suboperads or quotients, with closure,
//! ideal and inclusion checks.

use std::fmt;

use crate::clique::{self, arcs, Clique};
use crate::error::{Error, Result};
use crate::magma::{Elem, MagmaRef, UNIT};
use crate::operad::{partial_compose_lin, CheckReport, LinComb};

/// Algebraic status of a family inside the clique operad.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Suboperad,
    Quotient,
    Both,
}

/// The defining condition of a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VariantKind {
    Full,
    Cro(usize),
    Deg(usize),
    Bub,
    Nes,
    Acy,
    Whi,
    Lab { b: Vec<Elem>, e: Vec<Elem>, d: Vec<Elem> },
    Wnc,
    Pat,
    For,
    Mot,
    Dis,
    Luc,
    Grav,
}

/// A named family of cliques over a fixed magma.
#[derive(Debug, Clone)]
pub struct Variant {
    pub kind: VariantKind,
    magma: MagmaRef,
    warning: Option<String>,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match &self.kind {
            VariantKind::Full => "C".to_string(),
            VariantKind::Cro(k) => format!("Cro{k}"),
            VariantKind::Deg(k) => format!("Deg{k}"),
            VariantKind::Bub => "Bub".into(),
            VariantKind::Nes => "Nes".into(),
            VariantKind::Acy => "Acy".into(),
            VariantKind::Whi => "Whi".into(),
            VariantKind::Lab { b, e, d } => {
                let set = |s: &[Elem]| s.iter().map(|&v| self.magma.name_of(v)).collect::<Vec<_>>().join(",");
                format!("Lab{{{}}};{{{}}};{{{}}}", set(b), set(e), set(d))
            }
            VariantKind::Wnc => "WNC".into(),
            VariantKind::Pat => "Pat".into(),
            VariantKind::For => "For".into(),
            VariantKind::Mot => "Mot".into(),
            VariantKind::Dis => "Dis".into(),
            VariantKind::Luc => "Luc".into(),
            VariantKind::Grav => "Grav".into(),
        };
        write!(f, "{name} {}", self.magma.name())
    }
}

/// Whether a clique satisfies the gravity condition.
pub fn gravity_condition(n: usize, labels: &[Elem]) -> bool {
    if n == 1 {
        return true;
    }
    let idx = |x, y| clique::arc_index(n, x, y);
    if labels[idx(1, n + 1)] == UNIT || (1..=n).any(|i| labels[idx(i, i + 1)] == UNIT) {
        return false;
    }
    let diags: Vec<(usize, usize)> = arcs(n)
        .zip(labels)
        .filter(|((x, y), &v)| v != UNIT && *y > *x + 1 && !(*x == 1 && *y == n + 1))
        .map(|(a, _)| a)
        .collect();
    for &(x, y) in &diags {
        for &(a, b) in &diags {
            if x < a && a < y && y < b && labels[idx(a, y)] != UNIT {
                return false;
            }
        }
    }
    true
}

impl Variant {
    /// Builds a variant, refusing magmas on which it is not an operad.
    pub fn new(kind: VariantKind, magma: &MagmaRef) -> Result<Variant> {
        let needs_no_divisors = matches!(
            kind,
            VariantKind::Deg(_)
                | VariantKind::Nes
                | VariantKind::Acy
                | VariantKind::Pat
                | VariantKind::For
                | VariantKind::Mot
                | VariantKind::Dis
                | VariantKind::Luc
        );
        let mut v = Variant { kind, magma: magma.clone(), warning: None };
        if needs_no_divisors && magma.has_nontrivial_unit_divisors() {
            return Err(Error::NotApplicable(v.to_string(), "the magma has nontrivial unit divisors".into()));
        }
        if let VariantKind::Lab { b, e, d } = &v.kind {
            for s in [b, e, d] {
                if let Some(bad) = s.iter().find(|&&x| !magma.contains(x)) {
                    return Err(Error::UnknownElement(bad.to_string(), magma.name().into()));
                }
            }
            if !b.contains(&UNIT) || !d.contains(&UNIT) {
                return Err(Error::NotApplicable(v.to_string(), "B and D must contain the unit".into()));
            }
            for &x in e {
                for &y in b {
                    if !d.contains(&magma.op(x, y)) {
                        return Err(Error::NotApplicable(
                            v.to_string(),
                            format!("{} ⋆ {} lies outside D", magma.name_of(x), magma.name_of(y)),
                        ));
                    }
                }
            }
            if !e.contains(&UNIT) {
                v.warning = Some("E does not contain the unit".into());
            }
        }
        Ok(v)
    }

    /// Parses `cro:<k>`, `deg:<k>`, `bub`, `nes`, `acy`, `whi`, `lab:<B>;<E>;<D>`, `wnc`,
    /// `pat`, `for`, `mot`, `dis`, `luc`, `grav` or `full`. Label sets are comma-separated.
    pub fn parse(spec: &str, magma: &MagmaRef) -> Result<Variant> {
        let s = spec.trim();
        let bad = || Error::VariantSpec(spec.to_string());
        let number = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let kind = if let Some(k) = s.strip_prefix("cro:") {
            VariantKind::Cro(number(k)?)
        } else if let Some(k) = s.strip_prefix("deg:") {
            VariantKind::Deg(number(k)?)
        } else if let Some(rest) = s.strip_prefix("lab:") {
            let parts: Vec<&str> = rest.split(';').collect();
            if parts.len() != 3 {
                return Err(bad());
            }
            let set = |t: &str| -> Result<Vec<Elem>> {
                let mut out: Vec<Elem> = t
                    .split(',')
                    .map(str::trim)
                    .filter(|x| !x.is_empty())
                    .map(|x| magma.parse_elem(x))
                    .collect::<Result<_>>()?;
                out.sort_unstable();
                out.dedup();
                Ok(out)
            };
            VariantKind::Lab { b: set(parts[0])?, e: set(parts[1])?, d: set(parts[2])? }
        } else {
            match s {
                "full" | "C" => VariantKind::Full,
                "bub" => VariantKind::Bub,
                "nes" => VariantKind::Nes,
                "acy" => VariantKind::Acy,
                "whi" => VariantKind::Whi,
                "wnc" => VariantKind::Wnc,
                "pat" => VariantKind::Pat,
                "for" => VariantKind::For,
                "mot" => VariantKind::Mot,
                "dis" => VariantKind::Dis,
                "luc" => VariantKind::Luc,
                "grav" => VariantKind::Grav,
                _ => return Err(bad()),
            }
        };
        Variant::new(kind, magma)
    }

    pub fn magma(&self) -> &MagmaRef {
        &self.magma
    }

    /// Construction warning, currently only for `Lab` without the unit in `E`.
    pub fn warning(&self) -> Option<&str> {
        self.warning.as_deref()
    }

    pub fn status(&self) -> Status {
        match self.kind {
            VariantKind::Full | VariantKind::Cro(_) => Status::Both,
            VariantKind::Whi | VariantKind::Lab { .. } | VariantKind::Grav => Status::Suboperad,
            _ => Status::Quotient,
        }
    }

    /// Whether the family is a quotient of `Whi` rather than of the whole operad.
    pub fn inside_white(&self) -> bool {
        matches!(self.kind, VariantKind::Wnc | VariantKind::Dis)
    }

    /// Whether membership only depends on which arcs are solid.
    pub fn depends_on_solidity_only(&self) -> bool {
        !matches!(self.kind, VariantKind::Lab { .. })
    }

    /// Whether erasing solid arcs of a member always gives a member.
    pub fn is_downward_closed(&self) -> bool {
        !matches!(self.kind, VariantKind::Lab { .. } | VariantKind::Grav)
    }

    /// Membership test on raw labels.
    pub fn member_labels(&self, n: usize, labels: &[Elem]) -> bool {
        let cro0 = || clique::crossing_number(n, labels) == 0;
        let deg = |k| clique::degree(n, labels) <= k;
        match &self.kind {
            VariantKind::Full => true,
            VariantKind::Cro(k) => clique::crossing_number(n, labels) <= *k,
            VariantKind::Deg(k) => deg(*k),
            VariantKind::Bub => clique::is_bubble(n, labels),
            VariantKind::Nes => clique::is_nesting_free(n, labels),
            VariantKind::Acy => clique::is_acyclic(n, labels),
            VariantKind::Whi => clique::is_white(n, labels),
            VariantKind::Lab { b, e, d } => {
                if n == 1 {
                    return b.contains(&labels[0]);
                }
                arcs(n).zip(labels).all(|((x, y), v)| {
                    if x == 1 && y == n + 1 {
                        b.contains(v)
                    } else if y == x + 1 {
                        e.contains(v)
                    } else {
                        d.contains(v)
                    }
                })
            }
            VariantKind::Wnc => clique::is_white(n, labels) && cro0(),
            VariantKind::Pat => deg(2) && clique::is_acyclic(n, labels),
            VariantKind::For => cro0() && clique::is_acyclic(n, labels),
            VariantKind::Mot => cro0() && deg(1),
            VariantKind::Dis => clique::is_white(n, labels) && cro0() && deg(1),
            VariantKind::Luc => clique::is_bubble(n, labels) && deg(1),
            VariantKind::Grav => gravity_condition(n, labels),
        }
    }

    /// Membership test, rejecting cliques over another magma.
    pub fn member(&self, p: &Clique) -> Result<bool> {
        crate::magma::ensure_same(&self.magma, p.magma())?;
        Ok(self.member_labels(p.arity(), p.labels()))
    }

    fn in_universe(&self, n: usize, labels: &[Elem]) -> bool {
        !self.inside_white() || clique::is_white(n, labels)
    }
}

/// Composition inside the family: compose in the clique operad, then drop non-members
/// for quotients, or check closure for suboperads.
pub fn variant_compose(v: &Variant, f: &LinComb, g: &LinComb, i: usize) -> Result<LinComb> {
    for (h, side) in [(f, "left"), (g, "right")] {
        for (c, _) in h.iter() {
            if !v.member_labels(c.arity(), c.labels()) {
                return Err(Error::NotApplicable(v.to_string(), format!("{side} operand {c} is not a member")));
            }
        }
    }
    let composite = partial_compose_lin(f, g, i)?;
    match v.status() {
        Status::Quotient => {
            let mut out = LinComb::zero(composite.magma(), composite.arity());
            for (c, k) in composite.iter() {
                if v.member_labels(c.arity(), c.labels()) {
                    out.add_term(&c, k.clone())?;
                }
            }
            Ok(out)
        }
        Status::Suboperad | Status::Both => {
            for (c, _) in composite.iter() {
                if !v.member_labels(c.arity(), c.labels()) {
                    return Err(Error::ClosureViolation(format!("{c} left {v}")));
                }
            }
            Ok(composite)
        }
    }
}

fn pools(v: &Variant, max_arity: usize) -> Result<Vec<Vec<Clique>>> {
    let mut out = vec![Vec::new()];
    for n in 1..=max_arity {
        out.push(
            crate::enumeration::generate_cliques(v.magma(), n)?
                .filter(|c| v.in_universe(c.arity(), c.labels()))
                .collect(),
        );
    }
    Ok(out)
}

/// Ideal property of the non-members: composing a non-member with anything, on either
/// side and at any index, gives a non-member. Exhaustive up to composite arity `max_arity`.
pub fn verify_ideal(v: &Variant, max_arity: usize) -> Result<CheckReport> {
    let pool = pools(v, max_arity)?;
    let mut report = CheckReport { name: format!("ideal of {v}"), instances: 0, failure: None };
    for a in 1..=max_arity {
        for b in 1..=max_arity + 1 - a {
            for p in &pool[a] {
                let pm = v.member_labels(a, p.labels());
                for q in &pool[b] {
                    let qm = v.member_labels(b, q.labels());
                    if pm && qm {
                        continue;
                    }
                    for i in 1..=a {
                        report.instances += 1;
                        let c = crate::operad::compose_with_rule(p, q, i, Default::default());
                        if v.member_labels(c.arity(), c.labels()) {
                            report.failure = Some(format!("{p} ∘_{i} {q} = {c} is a member"));
                            return Ok(report);
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Closure of the members under composition, exhaustive up to composite arity `max_arity`.
pub fn verify_closure(v: &Variant, max_arity: usize) -> Result<CheckReport> {
    let pool = pools(v, max_arity)?;
    let mut report = CheckReport { name: format!("closure of {v}"), instances: 0, failure: None };
    for a in 1..=max_arity {
        for b in 1..=max_arity + 1 - a {
            for p in pool[a].iter().filter(|p| v.member_labels(a, p.labels())) {
                for q in pool[b].iter().filter(|q| v.member_labels(b, q.labels())) {
                    for i in 1..=a {
                        report.instances += 1;
                        let c = crate::operad::compose_with_rule(p, q, i, Default::default());
                        if !v.member_labels(c.arity(), c.labels()) {
                            report.failure = Some(format!("{p} ∘_{i} {q} = {c} is not a member"));
                            return Ok(report);
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Kind of an arrow of the morphism diagrams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arrow {
    /// `A ↠ B`: every member of `B` is a member of `A`.
    Surjection,
    /// `A ↣ B`: every member of `A` is a member of `B`.
    Injection,
}

/// One checked implication.
#[derive(Debug, Clone)]
pub struct ImplicationResult {
    pub label: String,
    pub checked: u64,
    pub witness: Option<Clique>,
}

/// Outcome of [`verify_inclusions`].
#[derive(Debug, Clone)]
pub struct InclusionReport {
    pub lemma: Vec<ImplicationResult>,
    pub diagram_arrows: Vec<ImplicationResult>,
}

impl InclusionReport {
    pub fn failures(&self) -> Vec<&ImplicationResult> {
        self.lemma.iter().chain(&self.diagram_arrows).filter(|r| r.witness.is_some()).collect()
    }
}

const MAIN_DIAGRAM: &[(&str, &str, Arrow)] = &[
    ("full", "acy", Arrow::Surjection),
    ("full", "deg:K", Arrow::Surjection),
    ("full", "cro:K", Arrow::Surjection),
    ("cro:K", "full", Arrow::Injection),
    ("LAB", "full", Arrow::Injection),
    ("acy", "nes", Arrow::Surjection),
    ("acy", "deg:1", Arrow::Surjection),
    ("deg:3", "deg:2", Arrow::Surjection),
    ("cro:K", "cro:0", Arrow::Surjection),
    ("cro:0", "cro:K", Arrow::Injection),
    ("whi", "LAB", Arrow::Injection),
    ("deg:2", "nes", Arrow::Surjection),
    ("deg:2", "deg:1", Arrow::Surjection),
    ("deg:2", "bub", Arrow::Surjection),
    ("cro:0", "bub", Arrow::Surjection),
    ("nes", "deg:0", Arrow::Surjection),
    ("deg:1", "deg:0", Arrow::Surjection),
    ("bub", "deg:0", Arrow::Surjection),
    ("whi", "deg:0", Arrow::Surjection),
];

const SECONDARY_DIAGRAM: &[(&str, &str, Arrow)] = &[
    ("wnc", "cro:0", Arrow::Injection),
    ("dis", "mot", Arrow::Injection),
    ("cro:0", "for", Arrow::Surjection),
    ("deg:2", "bub", Arrow::Surjection),
    ("deg:2", "pat", Arrow::Surjection),
    ("acy", "pat", Arrow::Surjection),
    ("acy", "for", Arrow::Surjection),
    ("pat", "nes", Arrow::Surjection),
    ("pat", "deg:1", Arrow::Surjection),
    ("for", "mot", Arrow::Surjection),
    ("mot", "luc", Arrow::Surjection),
    ("wnc", "dis", Arrow::Surjection),
    ("whi", "wnc", Arrow::Surjection),
    ("deg:1", "mot", Arrow::Surjection),
    ("bub", "luc", Arrow::Surjection),
    ("dis", "deg:0", Arrow::Surjection),
    ("luc", "deg:0", Arrow::Surjection),
    ("whi", "full", Arrow::Injection),
    ("cro:0", "full", Arrow::Injection),
    ("full", "cro:0", Arrow::Surjection),
    ("full", "acy", Arrow::Surjection),
    ("full", "deg:2", Arrow::Surjection),
    ("nes", "deg:0", Arrow::Surjection),
];

fn subsets_with_unit(m: usize) -> Vec<Vec<Elem>> {
    (0..1usize << (m - 1))
        .map(|mask| {
            let mut s = vec![UNIT];
            s.extend((1..m).filter(|k| mask >> (k - 1) & 1 == 1).map(|k| k as Elem));
            s
        })
        .collect()
}

/// All label-set triples satisfying `𝟙 ∈ B`, `𝟙 ∈ E`, `𝟙 ∈ D` and `E ⋆ B ⊆ D`.
pub fn lab_parameter_triples(magma: &MagmaRef) -> Result<Vec<(Vec<Elem>, Vec<Elem>, Vec<Elem>)>> {
    let m = magma.require_finite()?;
    let subsets = subsets_with_unit(m);
    let mut out = Vec::new();
    for b in &subsets {
        for e in &subsets {
            for d in &subsets {
                if e.iter().all(|&x| b.iter().all(|&y| d.contains(&magma.op(x, y)))) {
                    out.push((b.clone(), e.clone(), d.clone()));
                }
            }
        }
    }
    Ok(out)
}

fn check_implication(
    label: String,
    cliques: &[Clique],
    premise: impl Fn(&Clique) -> bool,
    conclusion: impl Fn(&Clique) -> bool,
) -> ImplicationResult {
    let mut checked = 0;
    for c in cliques {
        checked += 1;
        if premise(c) && !conclusion(c) {
            return ImplicationResult { label, checked, witness: Some(c.clone()) };
        }
    }
    ImplicationResult { label, checked, witness: None }
}

/// The ideal containments of the inclusion lemma (as containments of non-member sets) and
/// every arrow of the two morphism diagrams (as member implications), exhaustively on all
/// cliques of arity at most `max_arity`. Arrows with a parameter `k` are checked for
/// `k = 0..=3`; arrows involving `Lab` for every admissible label-set triple, except that
/// `Whi ↣ Lab` ranges over the triples whose diagonal set is the whole magma.
pub fn verify_inclusions(magma: &MagmaRef, max_arity: usize) -> Result<InclusionReport> {
    if magma.has_nontrivial_unit_divisors() {
        return Err(Error::NotApplicable("inclusion lemma".into(), "the magma has nontrivial unit divisors".into()));
    }
    let mut cliques = Vec::new();
    for n in 1..=max_arity {
        cliques.extend(crate::enumeration::generate_cliques(magma, n)?);
    }
    let var = |s: &str| Variant::parse(s, magma);
    let lemma_pairs = [
        ("acy", "deg:1"),
        ("nes", "deg:0"),
        ("bub", "deg:0"),
        ("cro:0", "bub"),
        ("deg:2", "bub"),
        ("deg:2", "nes"),
        ("acy", "nes"),
    ];
    let mut lemma = Vec::new();
    for (a, b) in lemma_pairs {
        let (va, vb) = (var(a)?, var(b)?);
        lemma.push(check_implication(
            format!("non-members of {a} are non-members of {b}"),
            &cliques,
            |c| !va.member_labels(c.arity(), c.labels()),
            |c| !vb.member_labels(c.arity(), c.labels()),
        ));
    }
    let labs = lab_parameter_triples(magma)?;
    let mut diagram_arrows = Vec::new();
    for (diagram, arrows) in [("main", MAIN_DIAGRAM), ("secondary", SECONDARY_DIAGRAM)] {
        for &(from, to, arrow) in arrows {
            let expand = |s: &str| -> Result<Vec<Variant>> {
                if s.contains('K') {
                    (0..=3).map(|k| var(&s.replace('K', &k.to_string()))).collect()
                } else if s == "LAB" {
                    let whole = magma.elements()?;
                    labs.iter()
                        .filter(|(_, _, d)| from != "whi" || d.len() == whole.len())
                        .map(|(b, e, d)| {
                            Variant::new(VariantKind::Lab { b: b.clone(), e: e.clone(), d: d.clone() }, magma)
                        })
                        .collect()
                } else {
                    Ok(vec![var(s)?])
                }
            };
            let (froms, tos) = (expand(from)?, expand(to)?);
            let paired = from.contains('K') && to.contains('K');
            for (fi, va) in froms.iter().enumerate() {
                for (ti, vb) in tos.iter().enumerate() {
                    if paired && fi != ti {
                        continue;
                    }
                    let (src, dst) = match arrow {
                        Arrow::Surjection => (vb, va),
                        Arrow::Injection => (va, vb),
                    };
                    let sym = if arrow == Arrow::Surjection { "↠" } else { "↣" };
                    diagram_arrows.push(check_implication(
                        format!("{diagram} diagram: {va} {sym} {vb}"),
                        &cliques,
                        |c| src.member_labels(c.arity(), c.labels()),
                        |c| dst.member_labels(c.arity(), c.labels()),
                    ));
                }
            }
        }
    }
    Ok(InclusionReport { lemma, diagram_arrows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magma::Magma;

    #[test]
    fn unit_clique_is_always_a_member() {
        let d = Magma::d(0);
        let u = Clique::unit(&d);
        for s in [
            "cro:0",
            "deg:0",
            "bub",
            "nes",
            "acy",
            "whi",
            "wnc",
            "pat",
            "for",
            "mot",
            "dis",
            "luc",
            "grav",
            "lab:𝟙;𝟙;𝟙,0",
        ] {
            assert!(Variant::parse(s, &d).unwrap().member(&u).unwrap(), "{s}");
        }
    }

    #[test]
    fn applicability() {
        let e = Magma::e(1);
        assert!(Variant::parse("deg:1", &e).is_err());
        assert!(Variant::parse("cro:1", &e).is_ok());
        let d = Magma::d(0);
        assert!(Variant::parse("lab:0;𝟙;𝟙", &d).is_err());
        let v = Variant::parse("lab:𝟙;0;0,𝟙", &d).unwrap();
        assert!(v.warning().is_some());
    }

    #[test]
    fn crossing_triangles() {
        let d = Magma::d(0);
        let c = Clique::from_arcs(&d, 3, &[((1, 3), 1), ((2, 4), 1)]).unwrap();
        assert!(!Variant::parse("cro:0", &d).unwrap().member(&c).unwrap());
        assert!(Variant::parse("cro:1", &d).unwrap().member(&c).unwrap());
        for t in crate::enumeration::generate_cliques(&d, 2).unwrap() {
            assert!(t.is_bubble() && t.is_noncrossing());
        }
    }
}
