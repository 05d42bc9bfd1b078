//! Python bindings for the sl2tilt engine: group parameters, stable symbols,
//! tilt runs, Hom/Ext counting and the Frobenius perversity data.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use sl2tilt::homcount::{self, HomQuery};
use sl2tilt::render::Table;
use sl2tilt::symbols;
use sl2tilt::tilt::{self, BlockFilter};
use sl2tilt::{frob, GroupParams, StableSymbol};

fn err(e: sl2tilt::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_block(block: &str) -> PyResult<BlockFilter> {
    block
        .parse()
        .map_err(|_| PyValueError::new_err(format!("unknown block filter: {block}")))
}

/// Group parameters for SL2(p^n): holds p, n, q = p^n and q - 1.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Params {
    inner: GroupParams,
}

#[pymethods]
impl Params {
    #[new]
    fn new(p: u32, n: u32) -> PyResult<Self> {
        Ok(Self {
            inner: GroupParams::new(p, n).map_err(err)?,
        })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n
    }

    #[getter]
    fn q(&self) -> i64 {
        self.inner.q
    }

    #[getter]
    fn modulus(&self) -> i64 {
        self.inner.modulus
    }

    fn __repr__(&self) -> String {
        format!("Params(p={}, n={})", self.inner.p, self.inner.n)
    }
}

/// A twist/Heller symbol Omega^e U_u M_idx in the stable category.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Symbol {
    inner: StableSymbol,
    params: GroupParams,
}

#[pymethods]
impl Symbol {
    #[new]
    #[pyo3(signature = (params, idx, u = 0, omega = 0))]
    fn new(params: &Params, idx: i64, u: i64, omega: i64) -> PyResult<Self> {
        Ok(Self {
            inner: StableSymbol::new(u, omega, idx, &params.inner).map_err(err)?,
            params: params.inner,
        })
    }

    #[getter]
    fn u(&self) -> i64 {
        self.inner.u
    }

    #[getter]
    fn omega(&self) -> i64 {
        self.inner.omega.into()
    }

    #[getter]
    fn idx(&self) -> i64 {
        self.inner.idx
    }

    #[getter]
    fn is_zero(&self) -> bool {
        self.inner.zero
    }

    fn canonicalize(&self) -> Symbol {
        Symbol {
            inner: symbols::canonicalize(self.inner, &self.params),
            params: self.params,
        }
    }

    fn tensor_u(&self, j: i64) -> Symbol {
        Symbol {
            inner: symbols::tensor_u(self.inner, j, &self.params),
            params: self.params,
        }
    }

    fn omega_inverse(&self) -> PyResult<Symbol> {
        Ok(Symbol {
            inner: symbols::omega_inverse(self.inner, &self.params).map_err(err)?,
            params: self.params,
        })
    }

    fn shorthand(&self) -> String {
        symbols::shorthand(&self.inner, &self.params)
    }

    fn __eq__(&self, other: &Symbol) -> bool {
        self.params == other.params
            && symbols::symbols_equal(self.inner, other.inner, &self.params)
    }

    fn __repr__(&self) -> String {
        format!("Symbol({})", symbols::shorthand(&self.inner, &self.params))
    }
}

/// Render the full tilt run for one block as the plain-text table.
#[pyfunction]
#[pyo3(signature = (params, block = "all"))]
fn tilt_text(params: &Params, block: &str) -> PyResult<String> {
    let run = tilt::run(&params.inner, parse_block(block)?, false).map_err(err)?;
    Ok(Table::from_run(&run, &params.inner, parse_block(block)?)
        .map_err(err)?
        .to_text())
}

/// Same table serialized as JSON.
#[pyfunction]
#[pyo3(signature = (params, block = "all"))]
fn tilt_json(params: &Params, block: &str) -> PyResult<String> {
    let run = tilt::run(&params.inner, parse_block(block)?, false).map_err(err)?;
    Ok(Table::from_run(&run, &params.inner, parse_block(block)?)
        .map_err(err)?
        .to_json())
}

/// Run the engine and check the closed-form final law U_1 M_a'.
#[pyfunction]
#[pyo3(signature = (params, block = "all"))]
fn verify(params: &Params, block: &str) -> PyResult<bool> {
    let run = tilt::run(&params.inner, parse_block(block)?, false).map_err(err)?;
    tilt::verify_final(run.states.last().unwrap(), &params.inner).map_err(err)
}

/// dim PHom(U_j M_b, U_jj M_c).
#[pyfunction]
fn stable_hom_dim(params: &Params, j: i64, b: i64, jj: i64, c: i64) -> PyResult<u64> {
    homcount::stable_hom_dim(HomQuery { j, b, jj, c }, &params.inner).map_err(err)
}

/// dim Ext^1(U_j M_b, U_jj M_c) in the stable category.
#[pyfunction]
fn ext1_dim(params: &Params, j: i64, b: i64, jj: i64, c: i64) -> PyResult<u64> {
    homcount::ext1_dim(HomQuery { j, b, jj, c }, &params.inner).map_err(err)
}

/// Frobenius data for a simple index: Z-sequence, partition lambda, the
/// perversity phi'(lambda) and the accumulated omega total.
#[pyfunction]
fn frobenius_data<'py>(
    py: Python<'py>,
    params: &Params,
    a: i64,
) -> PyResult<Bound<'py, PyDict>> {
    let data = frob::partition_data(a, &params.inner).map_err(err)?;
    let total = frob::total_omega(a, &params.inner).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("a", data.a)?;
    d.set_item("z", data.z)?;
    d.set_item("lambda", data.lambda)?;
    d.set_item("omega_values", data.omega_values)?;
    d.set_item("phi", data.phi)?;
    d.set_item("total_omega", total)?;
    Ok(d)
}

/// Re-run the engine against a bundled golden fixture; returns the rendered
/// table and raises on any mismatch.
#[pyfunction]
fn check_fixture(name: &str) -> PyResult<String> {
    Ok(sl2tilt::render::check_fixture(name).map_err(err)?.to_text())
}

/// Names of the bundled golden fixtures.
#[pyfunction]
fn fixture_names() -> Vec<String> {
    sl2tilt::render::FIXTURE_NAMES
        .iter()
        .map(|s| s.to_string())
        .collect()
}

#[pymodule]
fn sl2tilt_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Params>()?;
    m.add_class::<Symbol>()?;
    m.add_function(wrap_pyfunction!(tilt_text, m)?)?;
    m.add_function(wrap_pyfunction!(tilt_json, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(stable_hom_dim, m)?)?;
    m.add_function(wrap_pyfunction!(ext1_dim, m)?)?;
    m.add_function(wrap_pyfunction!(frobenius_data, m)?)?;
    m.add_function(wrap_pyfunction!(check_fixture, m)?)?;
    m.add_function(wrap_pyfunction!(fixture_names, m)?)?;
    Ok(())
}
