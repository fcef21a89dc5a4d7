//! Python bindings: the counting, sampling, field, and rendering surface
//! of the core crate, exposed as the `aztec_tilings` extension module.
//!
//! Counts come back as arbitrary-precision Python ints; fields and tilings
//! are thin owned wrappers, so every method returns fresh objects instead
//! of views.

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use aztec_core::{
    aztec_closed_form as core_closed_form, count_tilings, decompose, enumerate_tilings,
    horizontal_histogram, kasteleyn_square as core_kasteleyn, render_field, render_tiling,
    sample_statistics as core_sample_statistics, sample_uniform,
    verify_recursion as core_verify_recursion, ArrowField as CoreField, HistogramSource, Region,
    RenderOptions, SampleSpec, Tiling as CoreTiling, DEFAULT_SEED,
};

/// Largest diamond order `Tiling.enumerate_aztec` accepts (32,768 tilings).
const ENUMERATE_GUARD: u32 = 5;

fn value_error(err: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn render_options(
    cell_px: u32,
    arrows: bool,
    nodes: bool,
    bold_edges: bool,
    color_classes: bool,
) -> PyResult<RenderOptions> {
    if cell_px == 0 {
        return Err(value_error("cell_px must be positive"));
    }
    Ok(RenderOptions {
        cell_px,
        show_arrows: arrows,
        show_nodes: nodes,
        show_bold_edges: bold_edges,
        color_classes,
    })
}

/// Exact number of domino tilings of the order-`n` Aztec diamond.
#[pyfunction]
fn count_aztec(n: u32) -> BigUint {
    count_tilings(&Region::aztec(n))
}

/// The closed form `2^(n(n+1)/2)`.
#[pyfunction]
fn aztec_closed_form(n: u32) -> BigUint {
    core_closed_form(n)
}

/// Exact number of domino tilings of a `w` x `h` rectangle.
#[pyfunction]
fn count_rect(w: u32, h: u32) -> BigUint {
    count_tilings(&Region::rectangle(w, h))
}

/// Cosine-product evaluation for an even `n` x `n` square.
#[pyfunction]
fn kasteleyn_square(n: u32) -> PyResult<f64> {
    core_kasteleyn(n).map_err(value_error)
}

/// Exhaustive histogram of tilings by horizontal-domino pair count.
#[pyfunction]
fn horizontal_histogram_exact(n: u32) -> PyResult<std::collections::BTreeMap<u64, BigUint>> {
    horizontal_histogram(n, HistogramSource::Enumerate).map_err(value_error)
}

/// Audit the order `n -> n + 1` recursion; returns the report as a dict.
#[pyfunction]
fn verify_recursion(py: Python<'_>, n: u32) -> PyResult<Bound<'_, PyDict>> {
    let report = core_verify_recursion(n).map_err(value_error)?;
    let dict = PyDict::new(py);
    dict.set_item("n", report.n)?;
    dict.set_item("passed", report.passed())?;
    let checks: Vec<Bound<'_, PyDict>> = report
        .checks
        .iter()
        .map(|c| {
            let check = PyDict::new(py);
            check.set_item("name", &c.name)?;
            check.set_item("pass", c.pass)?;
            check.set_item("detail", &c.detail)?;
            Ok(check)
        })
        .collect::<PyResult<_>>()?;
    dict.set_item("checks", checks)?;
    Ok(dict)
}

/// Histogram and occupancy grid over `count` uniform samples.
#[pyfunction]
#[pyo3(signature = (order, count, seed = DEFAULT_SEED))]
fn sample_statistics(
    py: Python<'_>,
    order: u32,
    count: u64,
    seed: u64,
) -> PyResult<Bound<'_, PyDict>> {
    if count == 0 {
        return Err(value_error("count must be positive"));
    }
    let stats = core_sample_statistics(order, count, seed);
    let dict = PyDict::new(py);
    dict.set_item("order", stats.order)?;
    dict.set_item("count", stats.count)?;
    dict.set_item("hist", &stats.hist)?;
    dict.set_item("h_occupancy", &stats.h_occupancy)?;
    Ok(dict)
}

/// A domino tiling of an Aztec diamond or rectangle.
#[pyclass(name = "Tiling", eq)]
#[derive(PartialEq)]
struct PyTiling {
    inner: CoreTiling,
}

#[pymethods]
impl PyTiling {
    /// Draw one exactly-uniform tiling of the order-`order` diamond.
    #[staticmethod]
    #[pyo3(signature = (order, seed = DEFAULT_SEED))]
    fn sample(order: u32, seed: u64) -> PyTiling {
        PyTiling { inner: sample_uniform(&SampleSpec { order, seed }) }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyTiling> {
        Ok(PyTiling { inner: CoreTiling::from_json(text).map_err(value_error)? })
    }

    /// Every tiling of a small diamond, in deterministic order.
    #[staticmethod]
    fn enumerate_aztec(order: u32) -> PyResult<Vec<PyTiling>> {
        if order > ENUMERATE_GUARD {
            return Err(value_error(format!(
                "order {order} exceeds the enumeration guard {ENUMERATE_GUARD}"
            )));
        }
        Ok(enumerate_tilings(&Region::aztec(order))
            .map(|inner| PyTiling { inner })
            .collect())
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn region(&self) -> String {
        self.inner.region().to_string()
    }

    /// `(x, y, "h" | "v")` per domino, sorted by anchor cell.
    fn dominoes(&self) -> Vec<(i64, i64, &'static str)> {
        self.inner
            .dominoes()
            .iter()
            .map(|d| {
                let o = match d.orientation {
                    aztec_core::Orientation::Horizontal => "h",
                    aztec_core::Orientation::Vertical => "v",
                };
                (d.cell.x, d.cell.y, o)
            })
            .collect()
    }

    fn horizontal_count(&self) -> u64 {
        self.inner.horizontal_domino_count()
    }

    /// Human-readable violations; empty means the tiling is exact.
    fn validate(&self) -> Vec<String> {
        aztec_core::validate_tiling(&self.inner).iter().map(|v| v.to_string()).collect()
    }

    fn is_valid(&self) -> bool {
        self.inner.is_valid()
    }

    #[pyo3(signature = (cell_px = 24, arrows = false, nodes = false, bold_edges = false, color_classes = true))]
    fn render_svg(
        &self,
        cell_px: u32,
        arrows: bool,
        nodes: bool,
        bold_edges: bool,
        color_classes: bool,
    ) -> PyResult<String> {
        let options = render_options(cell_px, arrows, nodes, bold_edges, color_classes)?;
        render_tiling(&self.inner, &options).map_err(value_error)
    }

    /// The arrow field this tiling induces on its own diamond.
    fn outer_field(&self) -> PyResult<PyArrowField> {
        Ok(PyArrowField { inner: CoreField::from_outer_tiling(&self.inner).map_err(value_error)? })
    }

    /// The arrow field this tiling induces one order up.
    fn inner_field(&self) -> PyResult<PyArrowField> {
        Ok(PyArrowField { inner: CoreField::from_inner_tiling(&self.inner).map_err(value_error)? })
    }

    fn __len__(&self) -> usize {
        self.inner.dominoes().len()
    }

    fn __repr__(&self) -> String {
        format!("Tiling({}, {} dominoes)", self.inner.region(), self.inner.dominoes().len())
    }
}

/// A diagonal arrow per cell of a diamond, under the six-pattern rule.
#[pyclass(name = "ArrowField", eq)]
#[derive(PartialEq)]
struct PyArrowField {
    inner: CoreField,
}

#[pymethods]
impl PyArrowField {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyArrowField> {
        Ok(PyArrowField { inner: CoreField::from_json(text).map_err(value_error)? })
    }

    fn inner_order(&self) -> u32 {
        self.inner.inner_order()
    }

    /// "outward", "inward", or "mixed".
    fn orientation(&self) -> String {
        self.inner.orientation().to_string()
    }

    /// Interior nodes with an invalid arrow pattern; empty means valid.
    fn validate(&self) -> Vec<(i64, i64)> {
        self.inner.validate().iter().map(|p| (p.x, p.y)).collect()
    }

    /// `{"attracting": a, "repelling": r, "transient": t}` over all nodes.
    fn census<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let census = self.inner.census().map_err(value_error)?;
        let dict = PyDict::new(py);
        dict.set_item("attracting", census.attracting)?;
        dict.set_item("repelling", census.repelling)?;
        dict.set_item("transient", census.transient)?;
        Ok(dict)
    }

    fn flip(&self) -> PyArrowField {
        PyArrowField { inner: self.inner.flip() }
    }

    /// Number of free 2x2 blocks; the field is compatible with `2**r` tilings.
    fn free_choices(&self) -> PyResult<usize> {
        Ok(decompose(&self.inner).map_err(value_error)?.free_choices())
    }

    /// Per-diagonal `{"offset", "bf", "fb"}` rows (outward fields only).
    fn line_balance<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        self.inner
            .line_balance()
            .map_err(value_error)?
            .iter()
            .map(|line| {
                let dict = PyDict::new(py);
                dict.set_item("offset", line.offset)?;
                dict.set_item("bf", line.bf)?;
                dict.set_item("fb", line.fb)?;
                Ok(dict)
            })
            .collect()
    }

    /// The member of this field's tiling family selected by `choices`
    /// (`False` = horizontal pair, `True` = vertical pair, square by square).
    fn tiling_for_choices(&self, choices: Vec<bool>) -> PyResult<PyTiling> {
        let decomposition = decompose(&self.inner).map_err(value_error)?;
        Ok(PyTiling { inner: decomposition.tiling(&choices).map_err(value_error)? })
    }

    /// The choice vector reproducing `tiling`, or None if it is not in
    /// this field's family.
    fn choices_for(&self, tiling: &PyTiling) -> PyResult<Option<Vec<bool>>> {
        Ok(decompose(&self.inner).map_err(value_error)?.choices_for(&tiling.inner))
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[pyo3(signature = (cell_px = 24, nodes = false, bold_edges = true))]
    fn render_svg(&self, cell_px: u32, nodes: bool, bold_edges: bool) -> PyResult<String> {
        let options = render_options(cell_px, false, nodes, bold_edges, true)?;
        render_field(&self.inner, &options).map_err(value_error)
    }

    fn __repr__(&self) -> String {
        format!(
            "ArrowField(inner order {}, {})",
            self.inner.inner_order(),
            self.inner.orientation()
        )
    }
}

#[pymodule]
fn aztec_tilings(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DEFAULT_SEED", DEFAULT_SEED)?;
    m.add_function(wrap_pyfunction!(count_aztec, m)?)?;
    m.add_function(wrap_pyfunction!(aztec_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(count_rect, m)?)?;
    m.add_function(wrap_pyfunction!(kasteleyn_square, m)?)?;
    m.add_function(wrap_pyfunction!(horizontal_histogram_exact, m)?)?;
    m.add_function(wrap_pyfunction!(verify_recursion, m)?)?;
    m.add_function(wrap_pyfunction!(sample_statistics, m)?)?;
    m.add_class::<PyTiling>()?;
    m.add_class::<PyArrowField>()?;
    Ok(())
}
