//! Python bindings: magmas, cliques, linear combinations, enumeration and verifiers.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use cliques::bases;
use cliques::enumeration::{self, DEFAULT_BUDGET};
use cliques::io;
use cliques::magma::{parse_magma_spec, RankFunction};
use cliques::operad::{self, Coeff};
use cliques::ratfct;
use cliques::substructures::Variant;

fn err(e: cliques::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        c.to_string()
    }
}

/// A unitary magma built from a spec such as `D:0`, `N:3`, `Z` or `prod(D:0,E:1)`.
#[pyclass(name = "Magma", frozen)]
pub struct PyMagma {
    inner: cliques::MagmaRef,
}

#[pymethods]
impl PyMagma {
    #[new]
    fn new(spec: &str) -> PyResult<PyMagma> {
        Ok(PyMagma { inner: parse_magma_spec(spec).map_err(err)? })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn size(&self) -> Option<usize> {
        self.inner.size()
    }

    #[getter]
    fn unit(&self) -> String {
        self.inner.name_of(self.inner.unit())
    }

    fn elements(&self) -> PyResult<Vec<String>> {
        let es = self.inner.elements().map_err(err)?;
        Ok(es.iter().map(|&e| self.inner.name_of(e)).collect())
    }

    /// Product of two elements given by name.
    fn op(&self, a: &str, b: &str) -> PyResult<String> {
        let x = self.inner.parse_elem(a).map_err(err)?;
        let y = self.inner.parse_elem(b).map_err(err)?;
        Ok(self.inner.name_of(self.inner.op(x, y)))
    }

    fn is_right_cancelable(&self) -> PyResult<bool> {
        self.inner.is_right_cancelable().map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Magma('{}')", self.inner.name())
    }
}

/// A decorated clique.
#[pyclass(name = "Clique", frozen, eq, hash)]
#[derive(PartialEq, Eq, Hash)]
pub struct PyClique {
    inner: cliques::Clique,
}

#[pymethods]
impl PyClique {
    /// Builds a clique from a map `{(x, y): element name}`; missing arcs carry the unit.
    #[new]
    #[pyo3(signature = (magma, arity, labels = BTreeMap::new()))]
    fn new(magma: &PyMagma, arity: usize, labels: BTreeMap<(usize, usize), String>) -> PyResult<PyClique> {
        let named: Vec<((usize, usize), &str)> = labels.iter().map(|(k, v)| (*k, v.as_str())).collect();
        Ok(PyClique { inner: cliques::Clique::from_named_arcs(&magma.inner, arity, &named).map_err(err)? })
    }

    #[staticmethod]
    fn unit(magma: &PyMagma) -> PyClique {
        PyClique { inner: cliques::Clique::unit(&magma.inner) }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyClique> {
        Ok(PyClique { inner: io::clique_from_json(text, None).map_err(err)? })
    }

    fn to_json(&self) -> String {
        io::clique_to_json(&self.inner)
    }

    #[getter]
    fn arity(&self) -> usize {
        self.inner.arity()
    }

    #[getter]
    fn magma(&self) -> PyMagma {
        PyMagma { inner: self.inner.magma().clone() }
    }

    fn label(&self, x: usize, y: usize) -> PyResult<String> {
        let v = self.inner.try_label(x, y).map_err(err)?;
        Ok(self.inner.magma().name_of(v))
    }

    /// Solid arcs with their labels.
    fn solid_arcs(&self) -> Vec<((usize, usize), String)> {
        let m = self.inner.magma();
        self.inner.solid_arcs().iter().map(|a| ((a.x, a.y), m.name_of(self.inner.label(a.x, a.y)))).collect()
    }

    fn compose(&self, other: &PyClique, i: usize) -> PyResult<PyClique> {
        Ok(PyClique { inner: operad::partial_compose(&self.inner, &other.inner, i).map_err(err)? })
    }

    fn reflect(&self) -> PyClique {
        PyClique { inner: self.inner.reflect() }
    }

    fn rotate(&self) -> PyClique {
        PyClique { inner: self.inner.rotate() }
    }

    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn crossing_number(&self) -> usize {
        self.inner.crossing_number()
    }

    fn is_prime(&self) -> bool {
        self.inner.is_prime()
    }

    fn is_nesting_free(&self) -> bool {
        self.inner.is_nesting_free()
    }

    fn is_acyclic(&self) -> bool {
        self.inner.is_acyclic()
    }

    fn is_white(&self) -> bool {
        self.inner.is_white()
    }

    /// Colored Dyck word of a nesting-free clique.
    fn dyck_word(&self) -> PyResult<String> {
        Ok(enumeration::dyck_encode(&self.inner).map_err(err)?.render(self.inner.magma()))
    }

    /// Image under the map to rational functions, for cliques over the integers.
    fn rational_function(&self) -> PyResult<String> {
        Ok(ratfct::f_theta(&self.inner, &RankFunction::identity()).map_err(err)?.to_string())
    }

    fn table(&self) -> String {
        self.inner.to_table()
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }
}

/// A linear combination of cliques with rational coefficients.
#[pyclass(name = "LinComb", frozen, eq)]
#[derive(PartialEq)]
pub struct PyLinComb {
    inner: operad::LinComb,
}

#[pymethods]
impl PyLinComb {
    #[new]
    fn new(terms: Vec<(i64, PyRef<'_, PyClique>)>) -> PyResult<PyLinComb> {
        let first = terms.first().ok_or_else(|| PyValueError::new_err("empty combination"))?;
        let (magma, arity) = (first.1.inner.magma().clone(), first.1.inner.arity());
        let pairs: Vec<(i64, cliques::Clique)> = terms.iter().map(|(k, p)| (*k, p.inner.clone())).collect();
        Ok(PyLinComb { inner: operad::LinComb::from_int_terms(&magma, arity, &pairs).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str, magma: &PyMagma) -> PyResult<PyLinComb> {
        Ok(PyLinComb { inner: io::element_from_json(text, &magma.inner).map_err(err)? })
    }

    fn to_json(&self) -> String {
        io::lincomb_to_json(&self.inner)
    }

    /// Terms as `(coefficient, clique)` pairs, coefficients rendered as strings.
    fn terms(&self) -> Vec<(String, PyClique)> {
        self.inner.iter().map(|(p, c)| (coeff(c), PyClique { inner: p })).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn compose(&self, other: &PyLinComb, i: usize) -> PyResult<PyLinComb> {
        Ok(PyLinComb { inner: operad::partial_compose_lin(&self.inner, &other.inner, i).map_err(err)? })
    }

    /// Reads `self` in the H-basis and expands it in the fundamental basis.
    fn from_h(&self) -> PyLinComb {
        PyLinComb { inner: bases::from_h(&self.inner) }
    }

    fn to_h(&self) -> PyLinComb {
        PyLinComb { inner: bases::to_h(&self.inner) }
    }

    fn from_k(&self) -> PyLinComb {
        PyLinComb { inner: bases::from_k(&self.inner) }
    }

    fn to_k(&self) -> PyLinComb {
        PyLinComb { inner: bases::to_k(&self.inner) }
    }

    fn is_associative(&self) -> PyResult<bool> {
        operad::is_associative_element(&self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }
}

/// `H_p ∘_i H_q` expressed in the H-basis.
#[pyfunction]
fn compose_h(p: &PyClique, q: &PyClique, i: usize) -> PyResult<PyLinComb> {
    Ok(PyLinComb { inner: bases::compose_h(&p.inner, &q.inner, i).map_err(err)? })
}

/// `K_p ∘_i K_q` expressed in the K-basis.
#[pyfunction]
fn compose_k(p: &PyClique, q: &PyClique, i: usize) -> PyResult<PyLinComb> {
    Ok(PyLinComb { inner: bases::compose_k(&p.inner, &q.inner, i).map_err(err)? })
}

/// All cliques of one arity.
#[pyfunction]
fn cliques_of_arity(magma: &PyMagma, n: usize) -> PyResult<Vec<PyClique>> {
    let size = magma.inner.require_finite().map_err(err)?;
    let needed = enumeration::clique_count(size, n);
    if needed > DEFAULT_BUDGET {
        return Err(err(cliques::Error::BudgetExceeded { needed, budget: DEFAULT_BUDGET }));
    }
    Ok(enumeration::generate_cliques(&magma.inner, n).map_err(err)?.map(|p| PyClique { inner: p }).collect())
}

/// Dimensions of a variant for arities `1..=max_arity`.
#[pyfunction]
#[pyo3(signature = (variant, magma, max_arity, budget = DEFAULT_BUDGET))]
fn sequence(variant: &str, magma: &PyMagma, max_arity: usize, budget: u128) -> PyResult<Vec<u128>> {
    let v = Variant::parse(variant, &magma.inner).map_err(err)?;
    let rec = enumeration::compute_sequence(&v, max_arity, budget).map_err(err)?;
    Ok(rec.values.iter().map(|&(_, x)| x).collect())
}

/// Number of prime cliques of arity `n`.
#[pyfunction]
fn count_prime(magma: &PyMagma, n: usize) -> PyResult<u128> {
    enumeration::count_prime(&magma.inner, n, DEFAULT_BUDGET).map_err(err)
}

/// Exhaustive check of the operad axioms up to a composite arity; returns the
/// counterexample text, or `None`.
#[pyfunction]
fn verify_axioms(magma: &PyMagma, max_arity: usize) -> PyResult<Option<String>> {
    let r = operad::verify_operad_axioms(&magma.inner, max_arity).map_err(err)?;
    Ok(r.counterexample.map(|c| c.to_string()))
}

/// Runs the acceptance criteria whose ids are given (all by default) and returns
/// `(id, passed, detail)` triples.
#[pyfunction]
#[pyo3(signature = (ids = None))]
fn acceptance(py: Python<'_>, ids: Option<Vec<usize>>) -> Vec<(usize, bool, String)> {
    let ids = ids.unwrap_or_else(|| (1..=11).collect());
    py.detach(|| cliques::acceptance::run_selected(&ids)).into_iter().map(|c| (c.id, c.passed, c.detail)).collect()
}

#[pymodule]
fn cliques_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMagma>()?;
    m.add_class::<PyClique>()?;
    m.add_class::<PyLinComb>()?;
    m.add_function(wrap_pyfunction!(compose_h, m)?)?;
    m.add_function(wrap_pyfunction!(compose_k, m)?)?;
    m.add_function(wrap_pyfunction!(cliques_of_arity, m)?)?;
    m.add_function(wrap_pyfunction!(sequence, m)?)?;
    m.add_function(wrap_pyfunction!(count_prime, m)?)?;
    m.add_function(wrap_pyfunction!(verify_axioms, m)?)?;
    m.add_function(wrap_pyfunction!(acceptance, m)?)?;
    Ok(())
}
