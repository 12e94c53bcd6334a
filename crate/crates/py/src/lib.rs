//! Python bindings: groups, difference sets, reduced linking systems, the
//! constructions, bent sets and the Z4 x Z4 census.

use std::sync::Arc;

use linkset_core::bent::{self, BentSet, BooleanFunction};
use linkset_core::cert;
use linkset_core::designs::is_difference_set;
use linkset_core::diffmat;
use linkset_core::linking::{self, ReducedLinkingSystem};
use linkset_core::search;
use linkset_core::{Error, FiniteGroup};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(linkset, VerificationError, PyException);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Verification(m) => VerificationError::new_err(m),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// A finite group described by the JSON group format.
#[pyclass(frozen, module = "linkset")]
struct Group {
    inner: Arc<FiniteGroup>,
}

#[pymethods]
impl Group {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(Group {
            inner: cert::parse_group(spec).map_err(to_py)?,
        })
    }

    /// `Z_{f1} x ... x Z_{fr}` with generators named `names` (or x1, x2, ...).
    #[staticmethod]
    #[pyo3(signature = (factors, names=None))]
    fn abelian(factors: Vec<u32>, names: Option<Vec<String>>) -> PyResult<Self> {
        let g = match names {
            Some(n) => {
                let refs: Vec<&str> = n.iter().map(String::as_str).collect();
                FiniteGroup::make_abelian_named(&factors, &refs)
            }
            None => FiniteGroup::make_abelian(&factors),
        };
        Ok(Group {
            inner: g.map_err(to_py)?.into_ref(),
        })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    #[getter]
    fn exponent(&self) -> usize {
        self.inner.exponent()
    }

    fn elements(&self) -> Vec<String> {
        self.inner.elements().map(|x| self.inner.name(x).to_string()).collect()
    }

    fn to_json(&self) -> PyResult<String> {
        Ok(cert::to_canonical_string(
            &cert::group_to_json(&self.inner).map_err(to_py)?,
        ))
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        match cert::group_to_json(&self.inner) {
            Ok(v) => format!("Group('{}')", cert::to_canonical_string(&v)),
            Err(_) => format!("<Group of order {}>", self.inner.order()),
        }
    }

    /// `(v, k, lambda, n)` when `names` is a difference set, else `None`.
    fn difference_set_params(&self, names: Vec<String>) -> PyResult<Option<(i64, i64, i64, i64)>> {
        let set = self.inner.parse_set(&names).map_err(to_py)?;
        Ok(is_difference_set(&self.inner, &set).map(|p| (p.v, p.k, p.lambda, p.n)))
    }
}

/// A verified reduced linking system with its witness sets.
#[pyclass(frozen, module = "linkset")]
struct LinkingSystem {
    inner: ReducedLinkingSystem,
}

impl LinkingSystem {
    fn names(&self, set: &[linkset_core::Elem]) -> Vec<String> {
        self.inner.group.set_names(set)
    }
}

#[pymethods]
impl LinkingSystem {
    /// Parses and verifies a certificate (bare payload or envelope).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc = cert::parse_json(text).map_err(to_py)?;
        let payload = cert::unwrap_envelope(&doc, Some(cert::Kind::LinkingSystem)).map_err(to_py)?;
        Ok(LinkingSystem {
            inner: cert::system_from_json(payload).map_err(to_py)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        Ok(cert::to_canonical_string(
            &cert::system_to_json(&self.inner).map_err(to_py)?,
        ))
    }

    #[getter]
    fn group(&self) -> Group {
        Group {
            inner: self.inner.group.clone(),
        }
    }

    #[getter]
    fn mu(&self) -> i64 {
        self.inner.munu.mu
    }

    #[getter]
    fn nu(&self) -> i64 {
        self.inner.munu.nu
    }

    #[getter]
    fn params(&self) -> (i64, i64, i64, i64) {
        let p = self.inner.params;
        (p.v, p.k, p.lambda, p.n)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "<LinkingSystem {} of size {}, (mu,nu)=({},{})>",
            self.inner.params,
            self.inner.len(),
            self.inner.munu.mu,
            self.inner.munu.nu
        )
    }

    fn sets(&self) -> Vec<Vec<String>> {
        self.inner.sets().iter().map(|s| self.names(s)).collect()
    }

    /// The set `D` with `D_i D_j^(-1) = (mu - nu) D + nu G`, indices from 1.
    fn witness(&self, i: usize, j: usize) -> Option<Vec<String>> {
        self.inner.witness(i, j).map(|w| self.names(w))
    }

    fn reversibility_profile(&self) -> Vec<bool> {
        self.inner.reversibility_profile()
    }

    fn complement(&self) -> LinkingSystem {
        LinkingSystem {
            inner: self.inner.complement_system(),
        }
    }

    /// Expands to the full system and checks every defining product.
    fn verify_full(&self) -> PyResult<bool> {
        self.inner.expand().verify_full().map_err(to_py)
    }
}

/// Verifies sets (element names) as a reduced linking system.
#[pyfunction]
fn verify_reduced(group: &Group, sets: Vec<Vec<String>>) -> PyResult<Option<LinkingSystem>> {
    let sets = sets
        .iter()
        .map(|s| group.inner.parse_set(s))
        .collect::<linkset_core::Result<Vec<_>>>()
        .map_err(to_py)?;
    Ok(linking::verify_reduced(&group.inner, &sets).map(|inner| LinkingSystem { inner }))
}

#[pyfunction]
fn build_general(group: &Group) -> PyResult<LinkingSystem> {
    Ok(LinkingSystem {
        inner: diffmat::build_general(&group.inner).map_err(to_py)?,
    })
}

#[pyfunction]
fn build_improved(group: &Group) -> PyResult<LinkingSystem> {
    Ok(LinkingSystem {
        inner: diffmat::build_improved(&group.inner).map_err(to_py)?,
    })
}

/// System of size `2^(d+1) - 1` in `D4 x K`, `K` abelian of order
/// `2^(2d-1)` and exponent at most 4.
#[pyfunction]
fn build_tyken(d: u32, k: &Group) -> PyResult<LinkingSystem> {
    Ok(LinkingSystem {
        inner: diffmat::build_tyken(d, &k.inner).map_err(to_py)?,
    })
}

#[pyfunction]
fn build_nonreversible(d: u32) -> PyResult<LinkingSystem> {
    Ok(LinkingSystem {
        inner: diffmat::build_nonreversible(d).map_err(to_py)?,
    })
}

fn functions(arity: u32, hexes: &[String]) -> PyResult<Vec<BooleanFunction>> {
    hexes
        .iter()
        .map(|h| BooleanFunction::from_hex(arity, h).map_err(to_py))
        .collect()
}

#[pyfunction]
fn is_bent(arity: u32, hex: String) -> PyResult<bool> {
    bent::is_bent(&BooleanFunction::from_hex(arity, &hex).map_err(to_py)?).map_err(to_py)
}

#[pyfunction]
fn is_bent_set(arity: u32, hexes: Vec<String>) -> PyResult<bool> {
    bent::is_bent_set(&functions(arity, &hexes)?).map_err(to_py)
}

/// Truth tables (hex) of a bent set of size `2^(2d+1)` on `2d+2` variables.
#[pyfunction]
fn kerdock_bent_set(d: u32) -> PyResult<Vec<String>> {
    let set = bent::kerdock_bent_set(d).map_err(to_py)?;
    Ok(set.functions.iter().map(BooleanFunction::to_hex).collect())
}

/// Linking system from a bent set containing the zero function.
#[pyfunction]
fn bent_linking(arity: u32, hexes: Vec<String>) -> PyResult<LinkingSystem> {
    let set = BentSet::new(functions(arity, &hexes)?).map_err(to_py)?;
    Ok(LinkingSystem {
        inner: bent::bent_linking(&set).map_err(to_py)?,
    })
}

/// Census of (16,6,2,4) linking systems of the given size in Z4 x Z4.
#[pyfunction]
#[pyo3(signature = (size=3))]
fn census_z42(py: Python<'_>, size: usize) -> PyResult<Bound<'_, PyDict>> {
    let g = FiniteGroup::make_abelian_named(&[4, 4], &["x", "y"])
        .map_err(to_py)?
        .into_ref();
    let c = py.detach(|| search::census(&g, 6, size)).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("difference_sets", c.difference_sets)?;
    d.set_item("system_count", c.system_count())?;
    d.set_item("max_system_size", c.max_system_size())?;
    d.set_item("digest", c.digest())?;
    Ok(d)
}

#[pymodule]
fn linkset(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("VerificationError", m.py().get_type::<VerificationError>())?;
    m.add_class::<Group>()?;
    m.add_class::<LinkingSystem>()?;
    m.add_function(wrap_pyfunction!(verify_reduced, m)?)?;
    m.add_function(wrap_pyfunction!(build_general, m)?)?;
    m.add_function(wrap_pyfunction!(build_improved, m)?)?;
    m.add_function(wrap_pyfunction!(build_tyken, m)?)?;
    m.add_function(wrap_pyfunction!(build_nonreversible, m)?)?;
    m.add_function(wrap_pyfunction!(is_bent, m)?)?;
    m.add_function(wrap_pyfunction!(is_bent_set, m)?)?;
    m.add_function(wrap_pyfunction!(kerdock_bent_set, m)?)?;
    m.add_function(wrap_pyfunction!(bent_linking, m)?)?;
    m.add_function(wrap_pyfunction!(census_z42, m)?)?;
    Ok(())
}
