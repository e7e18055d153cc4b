//! Enumeration engines against each other and against closed formulas.

use cliques::enumeration::{
    check_prime_divisibility, colored_dyck_words, compute_sequence, count_by_configurations, count_by_enumeration,
    dim_formula, dyck_decode, dyck_encode, export_sequence, generate_cliques, ExportFormat, Provenance, DEFAULT_BUDGET,
};
use cliques::substructures::Variant;
use cliques::{Error, Magma};
use num::BigUint;

#[test]
fn dyck_bijection_is_exhaustive_up_to_arity_5() {
    let d0 = Magma::d(0);
    for n in 1..=5 {
        let mut encoded = Vec::new();
        for p in generate_cliques(&d0, n).unwrap().filter(|p| p.is_nesting_free()) {
            let w = dyck_encode(&p).unwrap();
            assert!(w.is_dyck(), "{w} is not a Dyck word");
            assert_eq!(dyck_decode(&w, &d0).unwrap(), p);
            encoded.push(w);
        }
        encoded.sort();
        let mut words = colored_dyck_words(&d0, n).unwrap();
        words.sort();
        assert_eq!(encoded, words, "arity {n}");
    }
}

#[test]
fn dyck_encode_rejects_nestings() {
    let d0 = Magma::d(0);
    let p = cliques::Clique::from_arcs(&d0, 3, &[((1, 4), 1), ((2, 3), 1)]).unwrap();
    assert!(dyck_encode(&p).is_err());
}

#[test]
fn engines_agree() {
    for spec in ["D:0", "D:1"] {
        let m = cliques::magma::parse_magma_spec(spec).unwrap();
        for v in ["deg:1", "deg:2", "cro:0", "cro:1", "nes", "acy", "bub", "whi", "pat", "for", "mot", "luc"] {
            let v = Variant::parse(v, &m).unwrap();
            for n in 1..=4 {
                let brute = count_by_enumeration(&v, n, DEFAULT_BUDGET).unwrap();
                if v.depends_on_solidity_only() {
                    assert_eq!(count_by_configurations(&v, n).unwrap(), brute, "{v} at {n}");
                }
                if let Ok(f) = dim_formula(&v, n) {
                    assert_eq!(f, BigUint::from(brute), "{v} at {n}");
                }
            }
        }
    }
}

#[test]
fn full_dimension_formula() {
    let m = Magma::d(2);
    let v = Variant::parse("full", &m).unwrap();
    for n in 2..=3 {
        let count = generate_cliques(&m, n).unwrap().count() as u128;
        assert_eq!(count, 4u128.pow(cliques::clique::arc_count(n) as u32));
        assert_eq!(dim_formula(&v, n).unwrap(), BigUint::from(count));
    }
}

#[test]
fn prime_divisibility() {
    for spec in ["D:0", "N:3"] {
        let m = cliques::magma::parse_magma_spec(spec).unwrap();
        for n in 2..=4 {
            check_prime_divisibility(&m, n, DEFAULT_BUDGET).unwrap();
        }
    }
}

#[test]
fn budget_is_enforced() {
    let m = Magma::d(2);
    let v = Variant::parse("pat", &m).unwrap();
    assert!(matches!(count_by_enumeration(&v, 7, 1 << 10), Err(Error::BudgetExceeded { .. })));
}

#[test]
fn b_file_is_bit_exact() {
    let v = Variant::parse("nes", &Magma::d(0)).unwrap();
    let rec = compute_sequence(&v, 5, DEFAULT_BUDGET).unwrap();
    assert_eq!(rec.provenance, Provenance::Both);
    assert_eq!(export_sequence(&rec, ExportFormat::BFile), "1 1\n2 5\n3 14\n4 42\n5 132\n");
    let csv = export_sequence(&rec, ExportFormat::Csv);
    assert!(csv.lines().count() >= 6);
    let json: serde_json::Value = serde_json::from_str(&export_sequence(&rec, ExportFormat::Json)).unwrap();
    assert!(json.is_object() || json.is_array());
}
