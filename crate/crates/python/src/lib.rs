//! Python bindings: `snr.Structure` plus module-level morphism helpers.
//!
//! Reports come back as plain dicts and lists shaped like the CLI's JSON.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList, PyString};
use serde::Serialize;
use serde_json::Value;

use snr_core::congruences::{self, Partition};
use snr_core::constructions;
use snr_core::ideals::{self, Positions};
use snr_core::morphisms::{self, Morphism};
use snr_core::substructures::{self, Subset};
use snr_core::{axioms, units, Element, FinStructure, OpTable};

fn err(e: snr_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().into_any(),
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => u.into_pyobject(py)?.into_any(),
            (None, Some(i)) => i.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => PyString::new(py, s).into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn report<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    to_py(py, &v)
}

fn subset(elements: Vec<Element>, k: usize) -> PyResult<Subset> {
    Subset::from_elements(elements, k).map_err(err)
}

fn partition(blocks: Vec<Vec<Element>>, k: usize) -> PyResult<Partition> {
    Partition::from_blocks(&blocks, k).map_err(err)
}

/// A finite structure with an m-ary `f` and an n-ary `g`, both as flat tables.
#[pyclass(name = "Structure", module = "snr", frozen)]
struct PyStructure {
    inner: FinStructure,
}

fn wrap(inner: FinStructure) -> PyStructure {
    PyStructure { inner }
}

#[pymethods]
impl PyStructure {
    #[new]
    fn new(name: &str, k: usize, m: usize, f: Vec<Element>, n: usize, g: Vec<Element>) -> PyResult<Self> {
        let f = OpTable::new(m, k, &f).map_err(err)?;
        let g = OpTable::new(n, k, &g).map_err(err)?;
        Ok(wrap(FinStructure::new(name, f, g).map_err(err)?))
    }

    /// Parse the `.snr` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        snr_core::parse_structure(text).map(wrap).map_err(err)
    }

    #[staticmethod]
    fn powerset(base: usize, m: usize, n: usize) -> PyResult<Self> {
        constructions::gen_powerset(base, m, n).map(wrap).map_err(err)
    }

    #[staticmethod]
    fn modring(q: usize, m: usize, n: usize) -> PyResult<Self> {
        constructions::gen_modring(q, m, n).map(wrap).map_err(err)
    }

    #[staticmethod]
    fn affine(q: usize) -> PyResult<Self> {
        constructions::gen_affine(q).map(wrap).map_err(err)
    }

    #[staticmethod]
    fn product(a: &PyStructure, b: &PyStructure) -> PyResult<Self> {
        constructions::direct_product(&a.inner, &b.inner).map(wrap).map_err(err)
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn f_table(&self) -> Vec<Element> {
        self.inner.f().entries().collect()
    }

    #[getter]
    fn g_table(&self) -> Vec<Element> {
        self.inner.g().entries().collect()
    }

    #[pyo3(signature = (*args))]
    fn f(&self, args: Vec<Element>) -> PyResult<Element> {
        self.inner.f().eval(&args).map_err(err)
    }

    #[pyo3(signature = (*args))]
    fn g(&self, args: Vec<Element>) -> PyResult<Element> {
        self.inner.g().eval(&args).map_err(err)
    }

    fn serialize(&self) -> String {
        snr_core::serialize_structure(&self.inner)
    }

    fn relabeled(&self, perm: Vec<Element>) -> PyResult<Self> {
        self.inner.relabeled(&perm).map(wrap).map_err(err)
    }

    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report(py, &axioms::classify(&self.inner))
    }

    fn is_subseminearring<'py>(&self, py: Python<'py>, elements: Vec<Element>) -> PyResult<Bound<'py, PyAny>> {
        let v = substructures::is_subseminearring(&self.inner, subset(elements, self.inner.k())?).map_err(err)?;
        report(py, &v)
    }

    fn is_ideal<'py>(&self, py: Python<'py>, elements: Vec<Element>) -> PyResult<Bound<'py, PyAny>> {
        let v = ideals::is_ideal(&self.inner, subset(elements, self.inner.k())?).map_err(err)?;
        report(py, &v)
    }

    fn subs(&self) -> PyResult<Vec<Vec<Element>>> {
        let found = substructures::enumerate_subs(&self.inner).map_err(err)?;
        Ok(found.into_iter().map(Subset::elements).collect())
    }

    /// Ideals absorbing in every slot, or only in the listed ones.
    #[pyo3(signature = (positions=None))]
    fn ideals(&self, positions: Option<Vec<usize>>) -> PyResult<Vec<Vec<Element>>> {
        let positions = positions.map_or(Positions::All, Positions::Only);
        let found = ideals::enumerate_ideals(&self.inner, &positions).map_err(err)?;
        Ok(found.into_iter().map(Subset::elements).collect())
    }

    fn sub_closure(&self, seed: Vec<Element>) -> PyResult<Vec<Element>> {
        let c = substructures::sub_closure(&self.inner, subset(seed, self.inner.k())?).map_err(err)?;
        Ok(c.elements())
    }

    fn ideal_closure(&self, seed: Vec<Element>) -> PyResult<Vec<Element>> {
        let c = ideals::ideal_closure(&self.inner, subset(seed, self.inner.k())?).map_err(err)?;
        Ok(c.elements())
    }

    /// Units and inverses for `unity`, defaulting to the least g-identity.
    #[pyo3(signature = (unity=None))]
    fn units<'py>(&self, py: Python<'py>, unity: Option<Element>) -> PyResult<Bound<'py, PyAny>> {
        let e = match unity {
            Some(e) => e,
            None => *axioms::find_g_identities(&self.inner)
                .first()
                .ok_or_else(|| PyValueError::new_err("structure has no g-identity"))?,
        };
        report(py, &units::units_set(&self.inner, e).map_err(err)?)
    }

    fn unity_theorems<'py>(&self, py: Python<'py>, unity: Element) -> PyResult<Bound<'py, PyAny>> {
        report(py, &units::check_unity_theorems(&self.inner, unity).map_err(err)?)
    }

    fn is_congruence<'py>(&self, py: Python<'py>, blocks: Vec<Vec<Element>>) -> PyResult<Bound<'py, PyAny>> {
        let p = partition(blocks, self.inner.k())?;
        report(py, &congruences::is_congruence(&self.inner, &p).map_err(err)?)
    }

    fn congruence_closure(&self, pairs: Vec<(Element, Element)>) -> PyResult<Vec<Vec<Element>>> {
        let p = congruences::congruence_closure(&self.inner, &pairs).map_err(err)?;
        Ok(p.blocks().to_vec())
    }

    fn congruences(&self) -> PyResult<Vec<Vec<Vec<Element>>>> {
        let found = congruences::enumerate_congruences(&self.inner).map_err(err)?;
        Ok(found.iter().map(|p| p.blocks().to_vec()).collect())
    }

    fn quotient(&self, blocks: Vec<Vec<Element>>) -> PyResult<Self> {
        let p = partition(blocks, self.inner.k())?;
        congruences::quotient(&self.inner, &p).map(wrap).map_err(err)
    }

    /// Same tables, ignoring names.
    fn tables_equal(&self, other: &PyStructure) -> bool {
        self.inner.tables_equal(&other.inner)
    }

    fn __eq__(&self, other: &PyStructure) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Structure({:?}, k={}, m={}, n={})", self.inner.name(), self.inner.k(), self.inner.m(), self.inner.n())
    }
}

fn morphism<'a>(domain: &'a PyStructure, codomain: &'a PyStructure, map: Vec<Element>) -> PyResult<Morphism<'a>> {
    Morphism::new(&domain.inner, &codomain.inner, map).map_err(err)
}

/// Every homomorphism as its list of images, in lexicographic order.
#[pyfunction]
#[pyo3(signature = (domain, codomain, limit=None))]
fn homomorphisms(domain: &PyStructure, codomain: &PyStructure, limit: Option<usize>) -> PyResult<Vec<Vec<Element>>> {
    let found = morphisms::find_homomorphisms(&domain.inner, &codomain.inner, limit).map_err(err)?;
    Ok(found.iter().map(|m| m.map().to_vec()).collect())
}

#[pyfunction]
fn is_homomorphism<'py>(
    py: Python<'py>,
    domain: &PyStructure,
    codomain: &PyStructure,
    map: Vec<Element>,
) -> PyResult<Bound<'py, PyAny>> {
    report(py, &morphisms::is_homomorphism(&morphism(domain, codomain, map)?))
}

/// `{"mono", "epi", "iso"}` flags of a homomorphism.
#[pyfunction]
fn classify_morphism<'py>(
    py: Python<'py>,
    domain: &PyStructure,
    codomain: &PyStructure,
    map: Vec<Element>,
) -> PyResult<Bound<'py, PyAny>> {
    report(py, &morphisms::classify_morphism(&morphism(domain, codomain, map)?).map_err(err)?)
}

#[pyfunction]
fn image(domain: &PyStructure, codomain: &PyStructure, map: Vec<Element>) -> PyResult<Vec<Element>> {
    Ok(morphisms::image(&morphism(domain, codomain, map)?).map_err(err)?.elements())
}

#[pyfunction]
fn kernel(domain: &PyStructure, codomain: &PyStructure, map: Vec<Element>) -> PyResult<Vec<Vec<Element>>> {
    Ok(morphisms::kernel(&morphism(domain, codomain, map)?).map_err(err)?.blocks().to_vec())
}

#[pyfunction]
fn push_ideal(domain: &PyStructure, codomain: &PyStructure, map: Vec<Element>, ideal: Vec<Element>) -> PyResult<Vec<Element>> {
    let psi = morphism(domain, codomain, map)?;
    let i = subset(ideal, domain.inner.k())?;
    Ok(morphisms::push_ideal(&psi, i).map_err(err)?.elements())
}

/// Run the `snr` command line in-process; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_command(args: Vec<String>) -> (i32, String, String) {
    let out = snr_core::run_command(std::iter::once("snr".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn snr(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyStructure>()?;
    m.add_function(wrap_pyfunction!(homomorphisms, m)?)?;
    m.add_function(wrap_pyfunction!(is_homomorphism, m)?)?;
    m.add_function(wrap_pyfunction!(classify_morphism, m)?)?;
    m.add_function(wrap_pyfunction!(image, m)?)?;
    m.add_function(wrap_pyfunction!(kernel, m)?)?;
    m.add_function(wrap_pyfunction!(push_ideal, m)?)?;
    m.add_function(wrap_pyfunction!(run_command, m)?)?;
    Ok(())
}
