//! Python module `pyexterior`: graphs, clique complexes, exact forms,
//! `d`, wedge, expansion, Betti numbers and operator verification.
//!
//! Rationals cross the boundary as strings (`"p/q"`) so no precision is lost.

use std::sync::Arc;

use exterior_graph::calculus::{exterior_derivative, expand_reconstruct, wedge};
use exterior_graph::clique::clique_number;
use exterior_graph::io::{form_from_json, form_to_json, labels_of, OperatorTable};
use exterior_graph::uniqueness::{check_axioms, ExteriorDerivative, TableOperator};
use exterior_graph::{chi, cohomology, rational, selftest, CliqueComplex, Error, Form, Graph};
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(format!("{}: {e}", e.code()))
}

#[pyclass(name = "Graph", module = "pyexterior", frozen)]
struct PyGraph {
    inner: Arc<Graph>,
}

#[pymethods]
impl PyGraph {
    /// Builds a graph from `(u, v)` label pairs; `vertices` adds isolated labels.
    #[new]
    #[pyo3(signature = (edges, vertices = None))]
    fn new(edges: Vec<(String, String)>, vertices: Option<Vec<String>>) -> PyResult<Self> {
        let mut b = exterior_graph::graph::GraphBuilder::new();
        for v in vertices.unwrap_or_default() {
            b.vertex(&v);
        }
        for (u, v) in &edges {
            b.edge(u, v).map_err(err)?;
        }
        Ok(PyGraph { inner: Arc::new(b.build()) })
    }

    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: Arc::new(Graph::parse_edge_list(text).map_err(err)?) })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: Arc::new(Graph::from_json(text).map_err(err)?) })
    }

    /// `K<n>`, `C<n>`, `P<n>`, `petersen` or `octahedron`.
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        exterior_graph::graph::named::by_name(name)
            .map(|g| PyGraph { inner: Arc::new(g) })
            .ok_or_else(|| PyValueError::new_err(format!("unknown graph `{name}`")))
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn edges(&self) -> Vec<(String, String)> {
        self.inner
            .edges()
            .into_iter()
            .map(|(a, b)| (self.inner.label(a).to_owned(), self.inner.label(b).to_owned()))
            .collect()
    }

    fn clique_number(&self) -> usize {
        clique_number(&self.inner)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn betti(&self) -> PyResult<Vec<usize>> {
        let cx = CliqueComplex::build_full(Arc::clone(&self.inner)).map_err(err)?;
        cohomology::betti(&cx).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={})", self.inner.n(), self.inner.edge_count())
    }
}

#[pyclass(name = "Complex", module = "pyexterior", frozen)]
struct PyComplex {
    inner: Arc<CliqueComplex>,
}

#[pymethods]
impl PyComplex {
    /// Cliques up to `max_card` vertices; by default every clique plus one
    /// empty level, so `d` is defined in every degree.
    #[new]
    #[pyo3(signature = (graph, max_card = None))]
    fn new(graph: &PyGraph, max_card: Option<usize>) -> PyResult<Self> {
        let g = Arc::clone(&graph.inner);
        let inner = match max_card {
            Some(m) => CliqueComplex::build(g, m),
            None => CliqueComplex::build_full(g),
        }
        .map_err(err)?;
        Ok(PyComplex { inner })
    }

    #[getter]
    fn max_card(&self) -> usize {
        self.inner.max_card()
    }

    fn level_sizes(&self) -> Vec<usize> {
        self.inner.level_sizes()
    }

    /// Canonical cliques with `card` vertices, as label lists.
    fn level(&self, card: usize) -> Vec<Vec<String>> {
        self.inner.level(card).iter().map(|c| labels_of(&self.inner, c.vertices())).collect()
    }

    fn betti(&self) -> PyResult<Vec<usize>> {
        cohomology::betti(&self.inner).map_err(err)
    }

    fn euler_characteristic(&self) -> i64 {
        cohomology::euler_characteristic(&self.inner)
    }

    /// Zero form of the given degree.
    fn zero(&self, degree: usize) -> PyResult<PyForm> {
        Form::zero(&self.inner, degree).map(PyForm::wrap).map_err(err)
    }

    /// Form from `(labels, value)` pairs; values are ints or `"p/q"` strings.
    fn form(&self, degree: usize, entries: Vec<(Vec<String>, Bound<'_, PyAny>)>) -> PyResult<PyForm> {
        let g = self.inner.graph();
        let mut out = Vec::with_capacity(entries.len());
        for (labels, value) in entries {
            let vs = labels.iter().map(|l| g.vertex(l)).collect::<Result<Vec<_>, _>>().map_err(err)?;
            out.push((vs, parse_value(&value)?));
        }
        Form::from_entries(&self.inner, degree, out).map(PyForm::wrap).map_err(err)
    }

    fn form_from_json(&self, text: &str) -> PyResult<PyForm> {
        form_from_json(text, &self.inner).map(PyForm::wrap).map_err(err)
    }

    /// Indicator function of one vertex.
    fn chi(&self, label: &str) -> PyResult<PyForm> {
        let v = self.inner.graph().vertex(label).map_err(err)?;
        chi(&self.inner, v).map(PyForm::wrap).map_err(err)
    }

    /// Checks an operator table (JSON) against the axioms; returns the report JSON.
    #[pyo3(signature = (table_json, trials = 20, seed = 0))]
    fn verify_operator(&self, table_json: &str, trials: usize, seed: u64) -> PyResult<String> {
        let table = OperatorTable::from_json(table_json, &self.inner).map_err(err)?;
        let op = TableOperator::new("table", table);
        Ok(check_axioms(&op, &self.inner, trials, seed).map_err(err)?.to_json())
    }

    /// Operator table of `d` itself, ready for editing or verification.
    fn derivative_table(&self) -> PyResult<String> {
        Ok(TableOperator::tabulate(&ExteriorDerivative, &self.inner).map_err(err)?.to_json())
    }
}

fn parse_value(v: &Bound<'_, PyAny>) -> PyResult<rational::Rational> {
    if let Ok(i) = v.extract::<i64>() {
        return Ok(rational::int(i));
    }
    if let Ok(s) = v.extract::<String>() {
        return rational::parse(&s).map_err(err);
    }
    Err(PyTypeError::new_err("form values must be int or str"))
}

#[pyclass(name = "Form", module = "pyexterior", frozen)]
struct PyForm {
    inner: Form,
}

impl PyForm {
    fn wrap(inner: Form) -> Self {
        PyForm { inner }
    }
}

#[pymethods]
impl PyForm {
    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    /// Value at an ordered label tuple, as a reduced fraction string.
    fn value(&self, labels: Vec<String>) -> PyResult<String> {
        let g = self.inner.complex().graph();
        let vs = labels.iter().map(|l| g.vertex(l)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        Ok(rational::format(&self.inner.eval(&vs).map_err(err)?))
    }

    fn entries(&self) -> Vec<(Vec<String>, String)> {
        let cx = self.inner.complex();
        self.inner
            .entries()
            .map(|(c, v)| (labels_of(cx, c.vertices()), rational::format(v)))
            .collect()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn d(&self) -> PyResult<PyForm> {
        exterior_derivative(&self.inner).map(PyForm::wrap).map_err(err)
    }

    fn wedge(&self, other: &PyForm) -> PyResult<PyForm> {
        wedge(&self.inner, &other.inner).map(PyForm::wrap).map_err(err)
    }

    /// Reassembles the form from its expansion over products of `dχ^v`.
    fn expand(&self) -> PyResult<PyForm> {
        expand_reconstruct(&self.inner).map(PyForm::wrap).map_err(err)
    }

    fn scale(&self, c: Bound<'_, PyAny>) -> PyResult<PyForm> {
        Ok(PyForm::wrap(self.inner.scale(&parse_value(&c)?)))
    }

    fn to_json(&self) -> String {
        form_to_json(&self.inner)
    }

    fn __add__(&self, other: &PyForm) -> PyResult<PyForm> {
        self.inner.add(&other.inner).map(PyForm::wrap).map_err(err)
    }

    fn __sub__(&self, other: &PyForm) -> PyResult<PyForm> {
        self.inner.sub(&other.inner).map(PyForm::wrap).map_err(err)
    }

    fn __neg__(&self) -> PyForm {
        PyForm::wrap(self.inner.neg())
    }

    fn __xor__(&self, other: &PyForm) -> PyResult<PyForm> {
        self.wedge(other)
    }

    fn __eq__(&self, other: &PyForm) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Form(degree={}, nnz={})", self.inner.degree(), self.inner.nnz())
    }
}

/// Runs the built-in property suite and returns its JSON report.
#[pyfunction]
#[pyo3(signature = (trials = 10, seed = 0))]
fn run_selftest(trials: usize, seed: u64) -> PyResult<String> {
    Ok(selftest::run(trials, seed).map_err(err)?.to_json())
}

#[pymodule]
fn pyexterior(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyComplex>()?;
    m.add_class::<PyForm>()?;
    m.add_function(wrap_pyfunction!(run_selftest, m)?)?;
    Ok(())
}
