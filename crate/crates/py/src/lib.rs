//! Python bindings. Structured results come back as plain dicts and lists; modules,
//! charges and two-term objects are passed as dicts (or JSON strings) in the same
//! shape the CLI reads.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList, PyString};
use serde::de::DeserializeOwned;
use serde_json::Value;

use cy2lab::heartlab::hn_filter;
use cy2lab::kcharge::{euler_form as k_euler, twist_on_k as k_twist, CentralCharge, KClass};
use cy2lab::nfcalc::LineObject;
use cy2lab::pimod::{ext_dims as pi_ext_dims, realize_line_bundle as realize, PiCategory, PiModule};
use cy2lab::reduction::{reduce_pair as reduce, LinePair};
use cy2lab::spectral::{e3_table as spectral_table, sphericality_test, TwoTermObject};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any(),
            (_, Some(u)) => u.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => PyString::new(py, s).into_any(),
        Value::Array(xs) => {
            let list = PyList::empty(py);
            for x in xs {
                list.append(to_py(py, x)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, x) in map {
                // integer-like keys (degrees, page positions) stay strings, as in the JSON
                dict.set_item(k, to_py(py, x)?)?;
            }
            dict.into_any()
        }
    })
}

fn serialize<'py, T: serde::Serialize>(py: Python<'py>, x: &T) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &serde_json::to_value(x).map_err(err)?)
}

/// Accepts a JSON string or any object `json.dumps` can encode.
fn from_py<T: DeserializeOwned>(obj: &Bound<'_, PyAny>) -> PyResult<T> {
    let text: String = if let Ok(s) = obj.cast::<PyString>() {
        s.to_str()?.to_owned()
    } else {
        obj.py().import("json")?.call_method1("dumps", (obj,))?.extract()?
    };
    serde_json::from_str(&text).map_err(err)
}

/// `(dim Hom^0, dim Hom^1, dim Hom^2)` between `O_Z(s)` and `O_Z(t)`.
#[pyfunction]
fn hom_dims(s: i64, t: i64) -> (u64, u64, u64) {
    let h = cy2lab::homtable::hom_dims_line(s, t);
    (h.d0, h.d1, h.d2)
}

/// `{i: dim Hom^i(O(s)[p], O(t)[q])}` over the three possible degrees.
#[pyfunction]
fn hom_dims_shifted(s: i64, p: i64, t: i64, q: i64) -> std::collections::BTreeMap<i64, u64> {
    cy2lab::homtable::hom_dims_shifted(s, p, t, q)
}

#[pyfunction]
fn line_class(deg: i64, shift: i64) -> (i64, i64) {
    let c = LineObject::new(deg, shift).class();
    (c.a, c.b)
}

#[pyfunction]
fn euler_form(u: (i64, i64), v: (i64, i64)) -> i64 {
    k_euler(KClass::new(u.0, u.1), KClass::new(v.0, v.1))
}

#[pyfunction]
fn twist_on_k(e: (i64, i64), f: (i64, i64)) -> PyResult<(i64, i64)> {
    let c = k_twist(KClass::new(e.0, e.1), KClass::new(f.0, f.1)).map_err(err)?;
    Ok((c.a, c.b))
}

/// Certified reduction of a pair such as `("O(0)[1]", "O(1)[0]")`.
#[pyfunction]
fn reduce_pair<'py>(py: Python<'py>, e: &str, f: &str) -> PyResult<Bound<'py, PyAny>> {
    let pair = LinePair::new(e.parse().map_err(err)?, f.parse().map_err(err)?);
    let trace = reduce(&pair).map_err(err)?;
    trace.certify().map_err(|e| err(e.0))?;
    serialize(py, &trace)
}

#[pyfunction]
#[pyo3(signature = (v, p = 3))]
fn simple_module<'py>(py: Python<'py>, v: usize, p: u32) -> PyResult<Bound<'py, PyAny>> {
    if v > 1 {
        return Err(err("vertex must be 0 or 1"));
    }
    serialize(py, &PiModule::simple(v, p))
}

/// `(dim Hom, dim Ext^1, dim Ext^2)` between two modules.
#[pyfunction]
fn ext_dims(m: &Bound<'_, PyAny>, n: &Bound<'_, PyAny>) -> PyResult<(usize, usize, usize)> {
    let m: PiModule = from_py(m)?;
    let n: PiModule = from_py(n)?;
    if m.p() != n.p() {
        return Err(err("modules over different fields"));
    }
    Ok(pi_ext_dims(&m, &n))
}

/// HN filtration of a module under a charge `{"z_OZ": [..], "z_Ox": [..]}`.
#[pyfunction]
fn hn<'py>(py: Python<'py>, module: &Bound<'py, PyAny>, charge: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let m: PiModule = from_py(module)?;
    let z: CentralCharge = from_py(charge)?;
    let filtration = hn_filter(&PiCategory::new(m.p()), &z, &m).map_err(err)?;
    serialize(py, &filtration)
}

/// `E_2`/`E_3` pages and Hom dimensions of two-term objects `{"H0", "H1", "e"}`.
#[pyfunction]
#[pyo3(signature = (e, f = None))]
fn e3_table<'py>(py: Python<'py>, e: &Bound<'py, PyAny>, f: Option<&Bound<'py, PyAny>>) -> PyResult<Bound<'py, PyAny>> {
    let e: TwoTermObject = from_py(e)?;
    let f: TwoTermObject = match f {
        Some(f) => from_py(f)?,
        None => e.clone(),
    };
    serialize(py, &spectral_table(&e, &f).map_err(err)?)
}

#[pyfunction]
fn is_spherical(e: &Bound<'_, PyAny>) -> PyResult<bool> {
    let e: TwoTermObject = from_py(e)?;
    sphericality_test(&e).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (t, p = 3, depth = 4, dim = 8))]
fn realize_line_bundle<'py>(py: Python<'py>, t: i64, p: u32, depth: usize, dim: usize) -> PyResult<Bound<'py, PyAny>> {
    serialize(py, &realize(t, p, depth, dim))
}

#[pymodule]
fn cy2lab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(hom_dims, m)?)?;
    m.add_function(wrap_pyfunction!(hom_dims_shifted, m)?)?;
    m.add_function(wrap_pyfunction!(line_class, m)?)?;
    m.add_function(wrap_pyfunction!(euler_form, m)?)?;
    m.add_function(wrap_pyfunction!(twist_on_k, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_pair, m)?)?;
    m.add_function(wrap_pyfunction!(simple_module, m)?)?;
    m.add_function(wrap_pyfunction!(ext_dims, m)?)?;
    m.add_function(wrap_pyfunction!(hn, m)?)?;
    m.add_function(wrap_pyfunction!(e3_table, m)?)?;
    m.add_function(wrap_pyfunction!(is_spherical, m)?)?;
    m.add_function(wrap_pyfunction!(realize_line_bundle, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
