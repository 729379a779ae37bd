use msod_core::euler::report_gram;
use msod_core::group::{ActionSpec, SpaceKind};
use msod_core::mutlat::{BlockMove, Direction, ExceptionalSequence};
use msod_core::presets::Preset;
use msod_core::sod::{assemble, msodc_plan};
use msod_core::verify::{self, VerifyReport};
use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Hands a serializable value to Python as plain dicts and lists.
fn to_python<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A diagonal action of `μ₂^k` on affine space, projective space or a
/// Fermat quadric.
#[pyclass(name = "ActionSpec", module = "msod", frozen)]
struct PyActionSpec {
    inner: ActionSpec,
}

#[pymethods]
impl PyActionSpec {
    /// `kind` is "affine", "projective" or "fermat_quadric"; `rows` is the
    /// k × c action matrix of 0/1 entries.
    #[new]
    fn new(kind: &str, dim: usize, rows: Vec<Vec<u8>>) -> PyResult<Self> {
        let space = match kind {
            "affine" => SpaceKind::Affine(dim),
            "projective" => SpaceKind::Projective(dim),
            "fermat_quadric" => SpaceKind::FermatQuadric(dim),
            other => return Err(value_error(format!("unknown space kind {other:?}"))),
        };
        let inner = ActionSpec::new(space, &rows).map_err(value_error)?;
        Ok(PyActionSpec { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = msod_core::parse_spec(text).map_err(value_error)?;
        Ok(PyActionSpec { inner })
    }

    /// Built-in presets: etale (n, k), p2-example, pn-full (n), quadric (q_dim).
    #[staticmethod]
    #[pyo3(signature = (name, n=None, k=None, q_dim=None))]
    fn preset(name: &str, n: Option<usize>, k: Option<usize>, q_dim: Option<usize>) -> PyResult<Self> {
        let preset = Preset::parse(name, n, k, q_dim).map_err(value_error)?;
        let inner = preset.spec().map_err(value_error)?;
        Ok(PyActionSpec { inner })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.to_document()).map_err(value_error)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn order(&self) -> u64 {
        self.inner.order()
    }

    #[getter]
    fn num_coords(&self) -> usize {
        self.inner.num_coords()
    }

    #[getter]
    fn rows(&self) -> Vec<Vec<u8>> {
        self.inner.rows()
    }

    #[getter]
    fn is_effective(&self) -> bool {
        self.inner.is_effective()
    }

    fn __repr__(&self) -> String {
        format!("ActionSpec({}, k={}, rows={:?})", self.inner.space(), self.inner.rank(), self.inner.rows())
    }
}

/// Inertia components with coarse types and ranks.
#[pyfunction]
fn components<'py>(py: Python<'py>, spec: &PyActionSpec) -> PyResult<Bound<'py, PyAny>> {
    let comps = msod_core::components(&spec.inner).map_err(value_error)?;
    to_python(py, &comps)
}

/// The dimension-ordered decomposition report.
#[pyfunction]
fn sod<'py>(py: Python<'py>, spec: &PyActionSpec) -> PyResult<Bound<'py, PyAny>> {
    let report = assemble(&spec.inner).map_err(value_error)?;
    to_python(py, &report)
}

/// Labels of the decomposition pieces, in order.
#[pyfunction]
fn labels(spec: &PyActionSpec) -> PyResult<Vec<String>> {
    let report = assemble(&spec.inner).map_err(value_error)?;
    Ok(report.order.into_iter().map(|p| p.label).collect())
}

#[pyfunction]
fn total_rank(spec: &PyActionSpec) -> PyResult<i64> {
    Ok(assemble(&spec.inner).map_err(value_error)?.total_rank)
}

/// Block moves grouping pieces by group element, and the grouped labels.
#[pyfunction]
fn plan<'py>(py: Python<'py>, spec: &PyActionSpec) -> PyResult<(Bound<'py, PyAny>, Vec<String>)> {
    let report = assemble(&spec.inner).map_err(value_error)?;
    let seq = report_gram(&spec.inner, &report).ok().and_then(|g| g.to_sequence().ok());
    let plan = msodc_plan(&report, seq.as_ref()).map_err(value_error)?;
    let grouped = plan.target.iter().map(|&p| report.order[p].label.clone()).collect();
    Ok((to_python(py, &plan)?, grouped))
}

/// Gram matrix of the canonical generators (projective spaces only).
#[pyfunction]
fn gram(spec: &PyActionSpec) -> PyResult<Vec<Vec<i64>>> {
    let report = assemble(&spec.inner).map_err(value_error)?;
    Ok(report_gram(&spec.inner, &report).map_err(value_error)?.matrix)
}

/// `(Σ_{g,h} χ(X^{⟨g,h⟩}), |G|)`.
#[pyfunction]
fn burnside(spec: &PyActionSpec) -> PyResult<(i64, i64)> {
    verify::burnside_double_sum(&spec.inner).map_err(value_error)
}

/// Runs all checks, or the named family; returns `(passed, checks)`.
#[pyfunction]
#[pyo3(signature = (check=None))]
fn run_checks<'py>(py: Python<'py>, check: Option<&str>) -> PyResult<(bool, Bound<'py, PyAny>)> {
    let checks = match check {
        Some(name) => verify::run_named(name).ok_or_else(|| value_error(format!("unknown check {name:?}")))?,
        None => verify::default_suite(),
    };
    let report = VerifyReport::new(checks);
    Ok((report.passed, to_python(py, &report.checks)?))
}

fn direction(name: &str) -> PyResult<Direction> {
    match name {
        "left" => Ok(Direction::Left),
        "right" => Ok(Direction::Right),
        other => Err(value_error(format!("direction must be 'left' or 'right', got {other:?}"))),
    }
}

/// An exceptional sequence in a lattice with a fixed bilinear form.
/// Mutations return new sequences.
#[pyclass(name = "ExceptionalSequence", module = "msod", frozen)]
struct PySequence {
    inner: ExceptionalSequence,
}

#[pymethods]
impl PySequence {
    /// Standard basis vectors; `blocks` gives block sizes (default: one
    /// element per block).
    #[new]
    #[pyo3(signature = (form, blocks=None))]
    fn new(form: Vec<Vec<i64>>, blocks: Option<Vec<usize>>) -> PyResult<Self> {
        let inner = match blocks {
            Some(sizes) => {
                let labels = (0..sizes.len()).map(|i| format!("B{i}")).collect();
                ExceptionalSequence::with_identity_basis(form, &sizes, labels)
            }
            None => ExceptionalSequence::singletons(form),
        }
        .map_err(value_error)?;
        Ok(PySequence { inner })
    }

    /// The canonical-generator sequence of a projective spec, one block per
    /// decomposition piece.
    #[staticmethod]
    fn from_spec(spec: &PyActionSpec) -> PyResult<Self> {
        let report = assemble(&spec.inner).map_err(value_error)?;
        let inner = report_gram(&spec.inner, &report)
            .and_then(|g| g.to_sequence())
            .map_err(value_error)?;
        Ok(PySequence { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = serde_json::from_str(text).map_err(value_error)?;
        Ok(PySequence { inner })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(value_error)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    #[getter]
    fn vectors(&self) -> Vec<Vec<BigInt>> {
        self.inner.vectors().to_vec()
    }

    #[getter]
    fn block_labels(&self) -> PyResult<Vec<String>> {
        self.inner.block_labels().map_err(value_error)
    }

    fn pairing(&self, i: usize, j: usize) -> PyResult<BigInt> {
        self.inner.pairing(i, j).map_err(value_error)
    }

    fn gram(&self) -> Vec<Vec<BigInt>> {
        self.inner.gram()
    }

    fn is_semiorthogonal(&self) -> bool {
        self.inner.is_semiorthogonal()
    }

    fn determinant(&self) -> BigInt {
        self.inner.determinant()
    }

    fn mutate_left(&self, i: usize) -> PyResult<Self> {
        let inner = self.inner.mutate_left(i).map_err(value_error)?;
        Ok(PySequence { inner })
    }

    fn mutate_right(&self, i: usize) -> PyResult<Self> {
        let inner = self.inner.mutate_right(i).map_err(value_error)?;
        Ok(PySequence { inner })
    }

    /// Moves a block past its neighbour; returns the new sequence and
    /// whether the two blocks were orthogonal.
    fn move_block(&self, block: usize, direction_name: &str) -> PyResult<(Self, bool)> {
        let step = BlockMove { block, direction: direction(direction_name)? };
        let (inner, orthogonal) = self.inner.move_block(step).map_err(value_error)?;
        Ok((PySequence { inner }, orthogonal))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("ExceptionalSequence(len={}, semiorthogonal={})", self.inner.len(), self.inner.is_semiorthogonal())
    }
}

#[pymodule]
fn msod(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyActionSpec>()?;
    m.add_class::<PySequence>()?;
    m.add_function(wrap_pyfunction!(components, m)?)?;
    m.add_function(wrap_pyfunction!(sod, m)?)?;
    m.add_function(wrap_pyfunction!(labels, m)?)?;
    m.add_function(wrap_pyfunction!(total_rank, m)?)?;
    m.add_function(wrap_pyfunction!(plan, m)?)?;
    m.add_function(wrap_pyfunction!(gram, m)?)?;
    m.add_function(wrap_pyfunction!(burnside, m)?)?;
    m.add_function(wrap_pyfunction!(run_checks, m)?)?;
    Ok(())
}
