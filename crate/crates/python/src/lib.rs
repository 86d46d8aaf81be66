use ::oreham as core;
use core::families::{cross_family_identities, family_atlas};
use core::hamiltonicity::Fault;
use core::recognizers::{find_isomorphism, recognize_exception};
use core::verification::{enumerate_graphs, verify_theorem_with, HypothesisFilter, NOffset};
use core::{EdgeList, FamilyId, FamilySpec, Theorem};
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// JSON value handed to Python through `json.loads`.
fn to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

/// Simple undirected graph on at most 64 vertices.
#[pyclass(name = "Graph", module = "oreham", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyGraph {
    inner: core::Graph,
}

impl From<core::Graph> for PyGraph {
    fn from(inner: core::Graph) -> Self {
        PyGraph { inner }
    }
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        core::Graph::from_edges(n, &edges).map(Self::from).map_err(err)
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        core::parse_graph6(text).map(Self::from).map_err(err)
    }

    #[staticmethod]
    fn complete(n: usize) -> PyResult<Self> {
        core::Graph::complete(n).map(Self::from).map_err(err)
    }

    #[staticmethod]
    fn empty(n: usize) -> PyResult<Self> {
        core::Graph::empty(n).map(Self::from).map_err(err)
    }

    #[staticmethod]
    fn cycle(n: usize) -> PyResult<Self> {
        core::Graph::cycle(n).map(Self::from).map_err(err)
    }

    fn to_graph6(&self) -> String {
        self.inner.to_graph6()
    }

    #[pyo3(signature = (name = "G"))]
    fn to_dot(&self, name: &str) -> String {
        self.inner.to_dot(name)
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn has_edge(&self, u: usize, v: usize) -> PyResult<bool> {
        let n = self.inner.order();
        if u >= n || v >= n {
            return Err(PyIndexError::new_err(format!("vertex out of range for order {n}")));
        }
        Ok(u != v && self.inner.has_edge(u, v))
    }

    fn degrees(&self) -> Vec<usize> {
        core::degree_sequence(&self.inner).degrees
    }

    fn complement(&self) -> Self {
        self.inner.complement().into()
    }

    /// Minimum degree sum over nonadjacent pairs, `None` for complete graphs.
    fn sigma2(&self) -> Option<usize> {
        match core::sigma2(&self.inner) {
            core::Sigma2::Finite(v) => Some(v),
            core::Sigma2::Infinite => None,
        }
    }

    fn kappa(&self) -> PyResult<usize> {
        core::vertex_connectivity(&self.inner).map(|c| c.kappa).map_err(err)
    }

    fn independence_number(&self) -> PyResult<usize> {
        core::independence_number(&self.inner).map_err(err)
    }

    fn hamiltonian_cycle(&self) -> Option<Vec<usize>> {
        core::find_hamiltonian_cycle(&self.inner).map(|c| c.0)
    }

    fn is_hamiltonian(&self) -> bool {
        core::find_hamiltonian_cycle(&self.inner).is_some()
    }

    /// `(tolerant, witness)`; the witness is the first failing vertex set.
    fn vertex_fault(&self, k: usize) -> PyResult<(bool, Option<Vec<usize>>)> {
        let v = core::is_k_vertex_fault_hamiltonian(&self.inner, k).map_err(err)?;
        let w = match v.witness {
            Some(Fault::Vertices(vs)) => Some(vs),
            _ => None,
        };
        Ok((v.tolerant, w))
    }

    fn edge_fault(&self, k: usize) -> PyResult<(bool, Option<Vec<(usize, usize)>>)> {
        let v = core::is_k_edge_fault_hamiltonian(&self.inner, k).map_err(err)?;
        let w = match v.witness {
            Some(Fault::Edges(es)) => Some(es),
            _ => None,
        };
        Ok((v.tolerant, w))
    }

    fn canonical(&self) -> PyResult<Vec<u8>> {
        core::canonical_form(&self.inner).map(|c| c.0).map_err(err)
    }

    fn is_isomorphic(&self, other: &PyGraph) -> bool {
        core::are_isomorphic(&self.inner, &other.inner)
    }

    /// `phi` with `self.permute(phi) == other`, or `None`.
    fn isomorphism(&self, other: &PyGraph) -> Option<Vec<usize>> {
        find_isomorphism(&self.inner, &other.inner)
    }

    fn permute(&self, perm: Vec<usize>) -> PyResult<Self> {
        let n = self.inner.order();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(PyValueError::new_err("not a permutation of the vertices"));
        }
        Ok(self.inner.permute(&perm).into())
    }

    fn __repr__(&self) -> String {
        format!("Graph.from_graph6({:?})", self.inner.to_graph6())
    }
}

#[pyfunction]
fn join(a: &PyGraph, b: &PyGraph) -> PyResult<PyGraph> {
    core::join(&a.inner, &b.inner).map(PyGraph::from).map_err(err)
}

#[pyfunction]
fn union(a: &PyGraph, b: &PyGraph) -> PyResult<PyGraph> {
    core::disjoint_union(&a.inner, &b.inner).map(PyGraph::from).map_err(err)
}

#[pyfunction]
fn family_names() -> Vec<&'static str> {
    FamilyId::ALL.iter().map(|f| f.name()).collect()
}

/// Builds a family instance from keyword arguments or a JSON spec string.
#[pyfunction]
#[pyo3(signature = (family = None, n = None, h = None, cross = Vec::new(), deleted = Vec::new(), params = Default::default(), spec_json = None))]
fn build_family(
    family: Option<&str>,
    n: Option<usize>,
    h: Option<&PyGraph>,
    cross: Vec<(usize, usize)>,
    deleted: Vec<(usize, usize)>,
    params: std::collections::BTreeMap<String, usize>,
    spec_json: Option<&str>,
) -> PyResult<PyGraph> {
    let spec = match (spec_json, family) {
        (Some(text), None) => FamilySpec::from_json(text).map_err(err)?,
        (None, Some(name)) => {
            let f: FamilyId = name.parse().map_err(err)?;
            let hg = h.map(|g| g.inner.clone());
            let n = match n {
                Some(n) => n,
                None => core::families::infer_order(f, hg.as_ref(), &params).map_err(err)?,
            };
            let mut s = FamilySpec::new(f, n)
                .with_cross(EdgeList::new(cross).map_err(err)?)
                .with_deleted(EdgeList::new(deleted).map_err(err)?);
            s.h = hg;
            s.params = params;
            s
        }
        _ => return Err(PyValueError::new_err("pass exactly one of family or spec_json")),
    };
    core::build_family(&spec).map(PyGraph::from).map_err(err)
}

/// `[(spec_json, graph)]` for every atlas instance up to `n_max`.
#[pyfunction]
fn atlas(n_max: usize) -> Vec<(String, PyGraph)> {
    family_atlas(n_max)
        .into_iter()
        .map(|(s, g)| (s.to_json().to_string(), g.into()))
        .collect()
}

#[pyfunction]
fn identities() -> Vec<(String, bool)> {
    cross_family_identities().into_iter().map(|r| (r.name, r.holds)).collect()
}

/// η-family recognition as a dict, or `None`.
#[pyfunction]
fn recognize<'py>(py: Python<'py>, g: &PyGraph) -> PyResult<Option<Bound<'py, PyAny>>> {
    let Some(r) = recognize_exception(&g.inner).map_err(err)? else {
        return Ok(None);
    };
    let alternates: Vec<&str> = r.alternates.iter().map(|f| f.name()).collect();
    let v = serde_json::json!({
        "family": r.spec.family.name(),
        "sub_scale": r.sub_scale,
        "alternates": alternates,
        "spec": r.spec.to_json(),
    });
    to_py(py, &v).map(Some)
}

#[pyfunction]
fn classify<'py>(py: Python<'py>, g: &PyGraph) -> PyResult<Bound<'py, PyAny>> {
    let c = core::classify_graph(&g.inner).map_err(err)?;
    to_py(py, &c.to_json())
}

#[pyfunction]
#[pyo3(signature = (n, min_sigma2 = None, min_kappa = None, connected = false, maximal_non_hamiltonian = false))]
fn enumerate(
    py: Python<'_>,
    n: usize,
    min_sigma2: Option<&str>,
    min_kappa: Option<usize>,
    connected: bool,
    maximal_non_hamiltonian: bool,
) -> PyResult<Vec<PyGraph>> {
    let filter = HypothesisFilter {
        min_sigma2: min_sigma2.map(|s| s.parse::<NOffset>()).transpose().map_err(err)?,
        min_kappa,
        connected_only: connected,
        maximal_non_hamiltonian,
    };
    py.detach(|| {
        let mut out = Vec::new();
        enumerate_graphs(n, &filter, |g| out.push(PyGraph::from(g.clone())))?;
        Ok(out)
    })
    .map_err(|e: core::Error| err(e))
}

/// Report dict for one theorem at order `n`.
#[pyfunction]
#[pyo3(signature = (theorem, n, workers = None))]
fn verify_theorem<'py>(
    py: Python<'py>,
    theorem: &str,
    n: usize,
    workers: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let t: Theorem = theorem.parse().map_err(err)?;
    let report = py.detach(|| verify_theorem_with(t, n, workers)).map_err(err)?;
    py.import("json")?.call_method1("loads", (report.to_json(),))
}

#[pymodule(name = "oreham")]
fn oreham_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(join, m)?)?;
    m.add_function(wrap_pyfunction!(union, m)?)?;
    m.add_function(wrap_pyfunction!(family_names, m)?)?;
    m.add_function(wrap_pyfunction!(build_family, m)?)?;
    m.add_function(wrap_pyfunction!(atlas, m)?)?;
    m.add_function(wrap_pyfunction!(identities, m)?)?;
    m.add_function(wrap_pyfunction!(recognize, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem, m)?)?;
    Ok(())
}
