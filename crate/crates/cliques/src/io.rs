//! JSON formats for cliques and linear combinations of cliques.

use std::collections::BTreeMap;

use num::BigRational;
use serde::{Deserialize, Serialize};

use crate::clique::{arcs, Clique};
use crate::error::{Error, Result};
use crate::magma::{parse_magma_spec, same_magma, MagmaRef};
use crate::operad::LinComb;

/// Serialized form of a clique. Arcs absent from `labels` carry the unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueJson {
    pub magma: String,
    pub arity: usize,
    pub labels: BTreeMap<String, String>,
}

/// One term of a serialized linear combination.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coefficient: String,
    pub clique: CliqueJson,
}

impl CliqueJson {
    pub fn from_clique(p: &Clique) -> CliqueJson {
        let magma = p.magma();
        let labels = p
            .solid_arcs()
            .into_iter()
            .map(|a| (format!("{},{}", a.x, a.y), magma.name_of(p.label(a.x, a.y))))
            .collect();
        CliqueJson { magma: magma.name().to_string(), arity: p.arity(), labels }
    }

    /// Rebuilds the clique, over `magma` when given (which must match the recorded spec)
    /// or over the magma parsed from the recorded spec.
    pub fn to_clique(&self, magma: Option<&MagmaRef>) -> Result<Clique> {
        let recorded = parse_magma_spec(&self.magma)?;
        let magma = match magma {
            Some(m) if !same_magma(m, &recorded) => {
                return Err(Error::Parse(format!("clique over {} where {} was expected", self.magma, m.name())))
            }
            Some(m) => m.clone(),
            None => recorded,
        };
        let mut solid = Vec::with_capacity(self.labels.len());
        for (key, name) in &self.labels {
            let (x, y) = key
                .split_once(',')
                .and_then(|(x, y)| Some((x.trim().parse::<usize>().ok()?, y.trim().parse::<usize>().ok()?)))
                .ok_or_else(|| Error::Parse(format!("arc key {key:?}")))?;
            solid.push(((x, y), magma.parse_elem(name)?));
        }
        Clique::from_arcs(&magma, self.arity, &solid)
    }
}

pub fn clique_to_json(p: &Clique) -> String {
    serde_json::to_string(&CliqueJson::from_clique(p)).expect("clique serializes")
}

pub fn clique_from_json(text: &str, magma: Option<&MagmaRef>) -> Result<Clique> {
    let raw: CliqueJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    raw.to_clique(magma)
}

pub fn lincomb_to_terms(f: &LinComb) -> Vec<TermJson> {
    f.iter()
        .map(|(p, c)| TermJson {
            coefficient: format!("{}/{}", c.numer(), c.denom()),
            clique: CliqueJson::from_clique(&p),
        })
        .collect()
}

pub fn lincomb_to_json(f: &LinComb) -> String {
    serde_json::to_string(&lincomb_to_terms(f)).expect("linear combination serializes")
}

fn parse_coefficient(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("coefficient {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = n.trim().parse().map_err(|_| bad())?;
            let d: num::BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == num::BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// Parses a linear combination; an empty list needs `magma` and `arity` to be known.
pub fn lincomb_from_json(text: &str, magma: &MagmaRef, arity: Option<usize>) -> Result<LinComb> {
    let raw: Vec<TermJson> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let arity = match (arity, raw.first()) {
        (Some(n), _) => n,
        (None, Some(t)) => t.clique.arity,
        (None, None) => return Err(Error::Parse("empty linear combination without an arity".into())),
    };
    let mut f = LinComb::zero(magma, arity);
    for t in &raw {
        f.add_term(&t.clique.to_clique(Some(magma))?, parse_coefficient(&t.coefficient)?)?;
    }
    Ok(f)
}

/// Reads either a single clique or a linear combination from JSON text.
pub fn element_from_json(text: &str, magma: &MagmaRef) -> Result<LinComb> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if value.is_array() {
        lincomb_from_json(text, magma, None)
    } else {
        Ok(LinComb::from_clique(&clique_from_json(text, Some(magma))?))
    }
}

/// All arcs of arity `n` with their label, including unit-labeled ones.
pub fn arc_labels(p: &Clique) -> Vec<((usize, usize), String)> {
    arcs(p.arity()).map(|(x, y)| ((x, y), p.magma().name_of(p.label(x, y)))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magma::Magma;

    #[test]
    fn clique_round_trip() {
        let z = Magma::integers();
        let p = Clique::from_arcs(&z, 4, &[((1, 3), 2), ((2, 5), -1), ((3, 4), 1)]).unwrap();
        let s = clique_to_json(&p);
        assert_eq!(clique_from_json(&s, None).unwrap(), p);
        assert_eq!(clique_from_json(&s, Some(&z)).unwrap(), p);
        assert!(clique_from_json(&s, Some(&Magma::d(0))).is_err());
    }

    #[test]
    fn lincomb_round_trip() {
        let d0 = Magma::d(0);
        let p = Clique::all_unit(&d0, 3).unwrap();
        let q = p.with_label(1, 4, 1).unwrap();
        let f = LinComb::from_int_terms(&d0, 3, &[(3, p), (-2, q)]).unwrap();
        let s = lincomb_to_json(&f);
        assert_eq!(lincomb_from_json(&s, &d0, None).unwrap(), f);
        assert_eq!(element_from_json(&s, &d0).unwrap(), f);
    }

    #[test]
    fn rejects_bad_input() {
        let d0 = Magma::d(0);
        assert!(clique_from_json(r#"{"magma":"D:0","arity":2,"labels":{"1-2":"0"}}"#, None).is_err());
        assert!(clique_from_json(r#"{"magma":"D:0","arity":2,"labels":{"1,2":"7"}}"#, None).is_err());
        assert!(lincomb_from_json(
            r#"[{"coefficient":"1/0","clique":{"magma":"D:0","arity":2,"labels":{}}}]"#,
            &d0,
            None
        )
        .is_err());
    }
}
