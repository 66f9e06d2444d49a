//! Python bindings. Projective points are accepted as floats, the string
//! `"inf"` (or any token `parse_point` understands), or `ProjPoint` objects,
//! and are returned as floats with ∞ mapped to `float("inf")`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use threeleaf::cover::{self, CirclePoint};
use threeleaf::moduli::{self, ChartPoint, Configuration};
use threeleaf::projline::{self, MobiusMap, ProjPoint};
use threeleaf::tangent::{self, Rational};
use threeleaf::Error;

fn py_err(e: Error) -> PyErr {
    if e.is_numerical() {
        PyArithmeticError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

#[pyclass(name = "ProjPoint", frozen, eq, skip_from_py_object)]
#[derive(Clone, Copy, PartialEq)]
struct PyProjPoint(ProjPoint);

#[pymethods]
impl PyProjPoint {
    /// The point `[a : b]`, i.e. `a/b`.
    #[new]
    fn new(a: f64, b: f64) -> PyResult<Self> {
        ProjPoint::new(a, b).map(PyProjPoint).map_err(py_err)
    }

    #[staticmethod]
    fn parse(token: &str) -> PyResult<Self> {
        projline::parse_point(token).map(PyProjPoint).map_err(py_err)
    }

    #[getter]
    fn a(&self) -> f64 {
        self.0.a()
    }

    #[getter]
    fn b(&self) -> f64 {
        self.0.b()
    }

    fn value(&self) -> f64 {
        self.0.value()
    }

    fn is_infinite(&self) -> bool {
        self.0.is_infinite()
    }

    fn chordal(&self, other: PointArg<'_>) -> PyResult<f64> {
        Ok(self.0.chordal(&other.point()?))
    }

    fn __float__(&self) -> f64 {
        self.0.value()
    }

    fn __repr__(&self) -> String {
        format!("ProjPoint({}, {})", self.0.a(), self.0.b())
    }
}

#[derive(FromPyObject)]
enum PointArg<'py> {
    Point(PyRef<'py, PyProjPoint>),
    Float(f64),
    Token(String),
}

impl PointArg<'_> {
    fn point(&self) -> PyResult<ProjPoint> {
        match self {
            PointArg::Point(p) => Ok(p.0),
            PointArg::Float(x) if x.is_infinite() => Ok(ProjPoint::INFINITY),
            PointArg::Float(x) => ProjPoint::try_affine(*x).map_err(py_err),
            PointArg::Token(s) => projline::parse_point(s).map_err(py_err),
        }
    }
}

fn points(args: &[PointArg<'_>]) -> PyResult<Vec<ProjPoint>> {
    args.iter().map(PointArg::point).collect()
}

#[pyclass(name = "MobiusMap", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyMobiusMap(MobiusMap);

#[pymethods]
impl PyMobiusMap {
    /// `x ↦ (ax + b)/(cx + d)`.
    #[new]
    fn new(a: f64, b: f64, c: f64, d: f64) -> PyResult<Self> {
        MobiusMap::new(a, b, c, d).map(PyMobiusMap).map_err(py_err)
    }

    /// `σ(x) = 1/(1 − x)`.
    #[staticmethod]
    fn sigma() -> Self {
        PyMobiusMap(MobiusMap::sigma())
    }

    fn entries(&self) -> (f64, f64, f64, f64) {
        let [a, b, c, d] = self.0.entries();
        (a, b, c, d)
    }

    fn det(&self) -> f64 {
        self.0.det()
    }

    fn apply(&self, x: PointArg<'_>) -> PyResult<f64> {
        Ok(self.0.apply(x.point()?).value())
    }

    /// `self ∘ other`.
    fn compose(&self, other: &PyMobiusMap) -> Self {
        PyMobiusMap(self.0.compose(&other.0))
    }

    fn inverse(&self) -> Self {
        PyMobiusMap(self.0.inverse())
    }

    fn __repr__(&self) -> String {
        let [a, b, c, d] = self.0.entries();
        format!("MobiusMap({a}, {b}, {c}, {d})")
    }
}

#[pyfunction]
fn cross_ratio(p0: PointArg<'_>, p1: PointArg<'_>, p2: PointArg<'_>, p3: PointArg<'_>) -> PyResult<f64> {
    projline::cross_ratio(p0.point()?, p1.point()?, p2.point()?, p3.point()?).map(|p| p.value()).map_err(py_err)
}

#[pyfunction]
fn kappa(x: PointArg<'_>) -> PyResult<f64> {
    Ok(cover::kappa(x.point()?).value())
}

#[pyfunction]
fn kappa_prime(x: PointArg<'_>) -> PyResult<f64> {
    Ok(cover::kappa_prime(x.point()?))
}

#[pyfunction]
fn varkappa(x: PointArg<'_>) -> PyResult<f64> {
    Ok(cover::varkappa(x.point()?).value())
}

#[pyfunction]
fn interval(x: PointArg<'_>) -> PyResult<&'static str> {
    Ok(cover::interval_classify(x.point()?).name())
}

#[pyfunction]
fn devadoss_gamma(p0: PointArg<'_>, p1: PointArg<'_>, p2: PointArg<'_>, p3: PointArg<'_>) -> PyResult<f64> {
    cover::devadoss_gamma(p0.point()?, p1.point()?, p2.point()?, p3.point()?).map(|p| p.value()).map_err(py_err)
}

#[pyfunction]
fn kappa_winding(samples: Vec<PointArg<'_>>) -> PyResult<i64> {
    cover::kappa_winding(&points(&samples)?).map_err(py_err)
}

#[pyfunction]
fn group_add(p: PointArg<'_>, q: PointArg<'_>) -> PyResult<f64> {
    Ok(tangent::group_add(p.point()?, q.point()?).value())
}

#[pyfunction]
fn group_neg(p: PointArg<'_>) -> PyResult<f64> {
    Ok(tangent::group_neg(p.point()?).value())
}

#[pyfunction]
fn group_mul(m: i64, p: PointArg<'_>) -> PyResult<f64> {
    Ok(tangent::group_mul_int(m, p.point()?).value())
}

/// `tan(π·num/den)`.
#[pyfunction]
fn torsion_point(num: i64, den: i64) -> PyResult<f64> {
    Ok(tangent::torsion_point(Rational::new(num, den).map_err(py_err)?).value())
}

#[pyfunction]
fn cayley(x: PointArg<'_>) -> PyResult<(f64, f64)> {
    let z = tangent::cayley(x.point()?);
    Ok((z.re(), z.im()))
}

#[pyfunction]
fn cayley_inv(re: f64, im: f64) -> PyResult<f64> {
    tangent::cayley_inv(Complex64::new(re, im)).map(|p| p.value()).map_err(py_err)
}

#[pyfunction]
fn stereo_param(t: f64) -> f64 {
    tangent::stereo_param(CirclePoint::new(t)).value()
}

/// `((Re u, Im u), (Re v, Im v))` of the SU(1,1) conjugate of a det-1 matrix.
#[pyfunction]
fn su11_conjugate(m: &PyMobiusMap) -> PyResult<((f64, f64), (f64, f64))> {
    let s = tangent::su11_conjugate(&m.0).map_err(py_err)?;
    Ok(((s.u.re, s.u.im), (s.v.re, s.v.im)))
}

fn configuration(pts: &[PointArg<'_>]) -> PyResult<Configuration> {
    Configuration::new(points(pts)?).map_err(py_err)
}

fn chart(coords: Vec<f64>) -> PyResult<ChartPoint> {
    ChartPoint::new(coords).map_err(py_err)
}

fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

#[pyfunction]
fn chart_coords(configuration_points: Vec<PointArg<'_>>) -> PyResult<Vec<f64>> {
    let u = moduli::chart_coords(&configuration(&configuration_points)?).map_err(py_err)?;
    Ok(u.coords().to_vec())
}

#[pyfunction]
fn albanese(configuration_points: Vec<PointArg<'_>>) -> PyResult<Vec<f64>> {
    let v = moduli::albanese(&configuration(&configuration_points)?).map_err(py_err)?;
    Ok(v.iter().map(|t| t.value()).collect())
}

#[pyfunction]
#[pyo3(signature = (chart_point, h = moduli::DEFAULT_STEP))]
fn albanese_jacobian(chart_point: Vec<f64>, h: f64) -> PyResult<Vec<Vec<f64>>> {
    Ok(rows(&moduli::albanese_jacobian(&chart(chart_point)?, h).map_err(py_err)?))
}

#[pyfunction]
#[pyo3(signature = (chart_point, h = moduli::DEFAULT_STEP))]
fn metric_matrix(chart_point: Vec<f64>, h: f64) -> PyResult<Vec<Vec<f64>>> {
    Ok(moduli::metric_matrix(&chart(chart_point)?, h).map_err(py_err)?.rows())
}

#[pyfunction]
#[pyo3(signature = (matrix, tol = moduli::DEFAULT_RANK_TOL))]
fn jacobian_rank(matrix: Vec<Vec<f64>>, tol: f64) -> PyResult<usize> {
    let nrows = matrix.len();
    let ncols = matrix.first().map_or(0, Vec::len);
    if matrix.iter().any(|r| r.len() != ncols) {
        return Err(PyValueError::new_err("ragged matrix"));
    }
    let m = DMatrix::from_fn(nrows, ncols, |r, c| matrix[r][c]);
    moduli::jacobian_rank(&m, tol).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (samples, h = moduli::DEFAULT_STEP))]
fn curve_length(samples: Vec<Vec<f64>>, h: f64) -> PyResult<f64> {
    let pts = samples.into_iter().map(chart).collect::<PyResult<Vec<_>>>()?;
    moduli::curve_length(&pts, h).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (n, trials, seed = 0, h = moduli::DEFAULT_STEP, tol = moduli::DEFAULT_RANK_TOL))]
fn rank_scan<'py>(
    py: Python<'py>,
    n: usize,
    trials: usize,
    seed: u64,
    h: f64,
    tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let r = py.detach(|| moduli::rank_scan(n, trials, seed, h, tol)).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("n", r.n)?;
    d.set_item("trials", r.trials)?;
    d.set_item("seed", r.seed)?;
    d.set_item("h", r.h)?;
    d.set_item("tol", r.tol)?;
    d.set_item("full_rank_count", r.full_rank_count)?;
    d.set_item("min_rank", r.min_rank)?;
    d.set_item("worst_sigma_ratio", r.worst_sigma_ratio)?;
    d.set_item("counterexample", r.counterexample.map(|u| u.coords().to_vec()))?;
    Ok(d)
}

#[pymodule]
#[pyo3(name = "threeleaf")]
fn threeleaf_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyProjPoint>()?;
    m.add_class::<PyMobiusMap>()?;
    m.add_function(wrap_pyfunction!(cross_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(kappa, m)?)?;
    m.add_function(wrap_pyfunction!(kappa_prime, m)?)?;
    m.add_function(wrap_pyfunction!(varkappa, m)?)?;
    m.add_function(wrap_pyfunction!(interval, m)?)?;
    m.add_function(wrap_pyfunction!(devadoss_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(kappa_winding, m)?)?;
    m.add_function(wrap_pyfunction!(group_add, m)?)?;
    m.add_function(wrap_pyfunction!(group_neg, m)?)?;
    m.add_function(wrap_pyfunction!(group_mul, m)?)?;
    m.add_function(wrap_pyfunction!(torsion_point, m)?)?;
    m.add_function(wrap_pyfunction!(cayley, m)?)?;
    m.add_function(wrap_pyfunction!(cayley_inv, m)?)?;
    m.add_function(wrap_pyfunction!(stereo_param, m)?)?;
    m.add_function(wrap_pyfunction!(su11_conjugate, m)?)?;
    m.add_function(wrap_pyfunction!(chart_coords, m)?)?;
    m.add_function(wrap_pyfunction!(albanese, m)?)?;
    m.add_function(wrap_pyfunction!(albanese_jacobian, m)?)?;
    m.add_function(wrap_pyfunction!(metric_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(jacobian_rank, m)?)?;
    m.add_function(wrap_pyfunction!(curve_length, m)?)?;
    m.add_function(wrap_pyfunction!(rank_scan, m)?)?;
    Ok(())
}
