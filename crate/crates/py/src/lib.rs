//! Python bindings. Thin object wrappers over the core types plus one
//! function per residual check; numbers cross the boundary as plain floats,
//! complex values as Python complex, and full runs as JSON text.

use kahler_verify::ambient::SpaceForm;
use kahler_verify::cli::{self, RunConfig};
use kahler_verify::hypersurface::Hypersurface;
use kahler_verify::jets::ScalarField;
use kahler_verify::scalar::DMAX;
use kahler_verify::verify::{self, ResidualReport};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyComplex;

fn lift(e: kahler_verify::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Chart coordinates (x_1, y_1, x_2, y_2, ...) padded to the fixed width.
fn chart_point(coords: &[f64]) -> PyResult<[f64; DMAX]> {
    if coords.len() > DMAX {
        return Err(PyValueError::new_err(format!(
            "a chart point has at most {DMAX} real coordinates"
        )));
    }
    let mut p = [0.0; DMAX];
    p[..coords.len()].copy_from_slice(coords);
    Ok(p)
}

/// One of the three model spaces, in its standard chart.
#[pyclass]
#[derive(Clone)]
struct Space {
    inner: SpaceForm,
}

#[pymethods]
impl Space {
    #[new]
    #[pyo3(signature = (kind, n = 2))]
    fn new(kind: &str, n: usize) -> PyResult<Self> {
        let kappa = cli::parse_space(kind).map_err(PyValueError::new_err)?;
        if n != 2 && n != 3 {
            return Err(PyValueError::new_err(format!("n must be 2 or 3 (got {n})")));
        }
        Ok(Space { inner: SpaceForm::new(kappa, n) })
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kappa.tag()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    /// Constant holomorphic sectional curvature is 4 times this.
    #[getter]
    fn kappa(&self) -> f64 {
        self.inner.kappa.kappa()
    }

    /// Distinguished potential at a chart point.
    fn phi(&self, point: Vec<f64>) -> PyResult<f64> {
        let p = chart_point(&point)?;
        self.inner.check_chart(&p).map_err(lift)?;
        Ok(self.inner.phi_field().value(&p).re)
    }

    /// Geodesic distance from the chart center.
    fn distance(&self, point: Vec<f64>) -> PyResult<f64> {
        let p = chart_point(&point)?;
        self.inner.check_chart(&p).map_err(lift)?;
        Ok(self.inner.dist_field().value(&p).re)
    }

    fn __repr__(&self) -> String {
        format!("Space('{}', n={})", self.kind(), self.n())
    }
}

/// Complex-valued field on a chart, exactly differentiable to second order.
/// Supports +, -, *, /, unary -, and ** with an integer exponent.
#[pyclass]
#[derive(Clone)]
struct Field {
    inner: ScalarField,
}

#[pymethods]
impl Field {
    #[staticmethod]
    fn z(i: usize) -> PyResult<Field> {
        if i >= 3 {
            return Err(PyValueError::new_err("coordinate index must be 0, 1, or 2"));
        }
        Ok(Field { inner: ScalarField::z(i) })
    }

    #[staticmethod]
    fn zbar(i: usize) -> PyResult<Field> {
        if i >= 3 {
            return Err(PyValueError::new_err("coordinate index must be 0, 1, or 2"));
        }
        Ok(Field { inner: ScalarField::zbar(i) })
    }

    #[staticmethod]
    #[pyo3(signature = (re, im = 0.0))]
    fn constant(re: f64, im: f64) -> Field {
        Field { inner: ScalarField::constant(re, im) }
    }

    /// |z_1|² + ... + |z_n|².
    #[staticmethod]
    #[pyo3(signature = (n = 2))]
    fn norm_sq(n: usize) -> PyResult<Field> {
        if n != 2 && n != 3 {
            return Err(PyValueError::new_err(format!("n must be 2 or 3 (got {n})")));
        }
        Ok(Field { inner: ScalarField::norm2(n) })
    }

    fn conj(&self) -> Field {
        Field { inner: self.inner.conj() }
    }

    fn re(&self) -> Field {
        Field { inner: self.inner.re() }
    }

    fn im(&self) -> Field {
        Field { inner: self.inner.im() }
    }

    fn abs_sq(&self) -> Field {
        Field { inner: self.inner.abs_sq() }
    }

    fn exp(&self) -> Field {
        Field { inner: self.inner.exp() }
    }

    fn scale(&self, s: f64) -> Field {
        Field { inner: self.inner.scale(s) }
    }

    fn value<'py>(&self, py: Python<'py>, point: Vec<f64>) -> PyResult<Bound<'py, PyComplex>> {
        let v = self.inner.value(&chart_point(&point)?);
        Ok(PyComplex::from_doubles(py, v.re, v.im))
    }

    fn __add__(&self, other: &Field) -> Field {
        Field { inner: self.inner.clone() + other.inner.clone() }
    }

    fn __sub__(&self, other: &Field) -> Field {
        Field { inner: self.inner.clone() - other.inner.clone() }
    }

    fn __mul__(&self, other: &Field) -> Field {
        Field { inner: self.inner.clone() * other.inner.clone() }
    }

    fn __truediv__(&self, other: &Field) -> Field {
        Field { inner: self.inner.clone() / other.inner.clone() }
    }

    fn __neg__(&self) -> Field {
        Field { inner: -self.inner.clone() }
    }

    fn __pow__(&self, k: u32, _modulo: Option<i64>) -> Field {
        Field { inner: self.inner.powi(k) }
    }
}

/// A level-set hypersurface bounding a domain in a model space.
#[pyclass]
#[derive(Clone)]
struct Surface {
    inner: Hypersurface,
}

impl Surface {
    fn frame_at(&self, direction: &[f64]) -> PyResult<kahler_verify::hypersurface::BoundaryFrame> {
        let p = self.inner.point_on(direction).map_err(lift)?;
        self.inner.frame(&p).map_err(lift)
    }
}

#[pymethods]
impl Surface {
    #[staticmethod]
    fn sphere(space: &Space, a: f64) -> PyResult<Surface> {
        Ok(Surface { inner: Hypersurface::sphere(&space.inner, a).map_err(lift)? })
    }

    #[staticmethod]
    fn tube(space: &Space, a: f64) -> PyResult<Surface> {
        Ok(Surface { inner: Hypersurface::tube(&space.inner, a).map_err(lift)? })
    }

    /// Ellipsoid with the given semiaxes, one per complex coordinate.
    #[staticmethod]
    fn ellipsoid(space: &Space, semiaxes: Vec<f64>) -> PyResult<Surface> {
        if semiaxes.iter().any(|s| !(*s > 0.0)) {
            return Err(PyValueError::new_err("semiaxes must be positive"));
        }
        let coef: Vec<f64> = semiaxes.iter().map(|s| 1.0 / (s * s)).collect();
        Ok(Surface { inner: Hypersurface::ellipsoid(&space.inner, &coef).map_err(lift)? })
    }

    #[staticmethod]
    fn perturbed_sphere(space: &Space, a: f64, eps: f64) -> PyResult<Surface> {
        Ok(Surface { inner: Hypersurface::perturbed_sphere(&space.inner, a, eps).map_err(lift)? })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn star_shaped(&self) -> bool {
        self.inner.star_shaped
    }

    #[getter]
    fn space(&self) -> Space {
        Space { inner: self.inner.space.clone() }
    }

    /// Chart coordinates of the surface point on the ray through `direction`.
    fn point_on(&self, direction: Vec<f64>) -> PyResult<Vec<f64>> {
        let p = self.inner.point_on(&direction).map_err(lift)?;
        Ok(p.c[..2 * self.inner.space.n].to_vec())
    }

    #[pyo3(signature = (order = 12))]
    fn area(&self, order: usize) -> PyResult<f64> {
        self.inner.integrate(order, |_| Ok(1.0)).map_err(lift)
    }

    #[pyo3(signature = (order = 12, order_radial = 10))]
    fn volume(&self, order: usize, order_radial: usize) -> PyResult<f64> {
        self.inner.integrate_domain(order, order_radial, |_| Ok(1.0)).map_err(lift)
    }

    /// Principal curvatures at the surface point on the ray, ascending.
    fn shape_spectrum(&self, direction: Vec<f64>) -> PyResult<Vec<f64>> {
        Ok(self.frame_at(&direction)?.shape_spectrum())
    }

    /// Normal curvature of the structure direction at the ray point.
    fn alpha(&self, direction: Vec<f64>) -> PyResult<f64> {
        Ok(self.frame_at(&direction)?.alpha())
    }

    /// Trace of the second fundamental form over the complex subbundle.
    fn h_b(&self, direction: Vec<f64>) -> PyResult<f64> {
        Ok(self.frame_at(&direction)?.h_b())
    }

    fn mean_curvature(&self, direction: Vec<f64>) -> PyResult<f64> {
        Ok(self.frame_at(&direction)?.mean_curvature())
    }

    fn __repr__(&self) -> String {
        format!("Surface({} in {})", self.inner.name, self.inner.space.kappa.tag())
    }
}

/// Outcome of one residual check.
#[pyclass]
#[derive(Clone)]
struct Report {
    inner: ResidualReport,
}

#[pymethods]
impl Report {
    #[getter]
    fn check_id(&self) -> String {
        self.inner.check_id.clone()
    }

    #[getter]
    fn anchor(&self) -> String {
        self.inner.anchor.clone()
    }

    #[getter]
    fn status(&self) -> &'static str {
        self.inner.status.label()
    }

    #[getter]
    fn lhs<'py>(&self, py: Python<'py>) -> Bound<'py, PyComplex> {
        PyComplex::from_doubles(py, self.inner.lhs[0], self.inner.lhs[1])
    }

    #[getter]
    fn rhs<'py>(&self, py: Python<'py>) -> Bound<'py, PyComplex> {
        PyComplex::from_doubles(py, self.inner.rhs[0], self.inner.rhs[1])
    }

    #[getter]
    fn abs_residual(&self) -> f64 {
        self.inner.abs_residual
    }

    #[getter]
    fn rel_residual(&self) -> f64 {
        self.inner.rel_residual
    }

    #[getter]
    fn tolerance(&self) -> f64 {
        self.inner.tolerance
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order
    }

    #[getter]
    fn samples(&self) -> usize {
        self.inner.samples
    }

    #[getter]
    fn notes(&self) -> String {
        self.inner.notes.clone()
    }

    fn passed(&self) -> bool {
        self.inner.passed()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!(
            "Report('{}', status={}, abs={:.3e}, rel={:.3e}, tol={:.1e})",
            self.inner.check_id,
            self.inner.status.label(),
            self.inner.abs_residual,
            self.inner.rel_residual,
            self.inner.tolerance
        )
    }
}

fn wrap(r: ResidualReport) -> Report {
    Report { inner: r }
}

fn wrap_all(rs: Vec<ResidualReport>) -> Vec<Report> {
    rs.into_iter().map(wrap).collect()
}

/// Integral identity residual for one scalar field on the domain `surface`
/// bounds. `tag` only names the report row.
#[pyfunction]
#[pyo3(signature = (surface, field, tag = "f", order_surface = 10, order_volume = 8))]
fn identity(
    surface: &Surface,
    field: &Field,
    tag: &str,
    order_surface: usize,
    order_volume: usize,
) -> PyResult<Report> {
    let mut r = verify::check_main_identity(
        &surface.inner,
        "",
        "f",
        &field.inner,
        order_surface,
        order_volume,
    )
    .map_err(lift)?;
    r.check_id = format!("identity-{tag}");
    Ok(wrap(r))
}

/// The fixed 12-field battery.
#[pyfunction]
#[pyo3(signature = (surface, order_surface = 10, order_volume = 8))]
fn identity_battery(
    surface: &Surface,
    order_surface: usize,
    order_volume: usize,
) -> PyResult<Vec<Report>> {
    verify::main_identity_battery(&surface.inner, "", order_surface, order_volume)
        .map(wrap_all)
        .map_err(lift)
}

#[pyfunction]
#[pyo3(signature = (space, seed = 7, count = 20))]
fn curvature(space: &Space, seed: u64, count: usize) -> PyResult<Report> {
    verify::check_curvature(&space.inner, seed, count).map(wrap).map_err(lift)
}

#[pyfunction]
#[pyo3(signature = (space, seed = 7, count = 100))]
fn potential(space: &Space, seed: u64, count: usize) -> PyResult<Report> {
    verify::check_potential(&space.inner, seed, count).map(wrap).map_err(lift)
}

#[pyfunction]
#[pyo3(signature = (surface, seed = 7, count = 40))]
fn div_t(surface: &Surface, seed: u64, count: usize) -> PyResult<Report> {
    verify::check_div_t(&surface.inner, "", seed, count).map(wrap).map_err(lift)
}

#[pyfunction]
#[pyo3(signature = (surface, seed = 7, pairs = 8, order = 10))]
fn duality(surface: &Surface, seed: u64, pairs: usize, order: usize) -> PyResult<Report> {
    verify::check_duality(&surface.inner, "", seed, pairs, order).map(wrap).map_err(lift)
}

#[pyfunction]
#[pyo3(signature = (surface, seed = 7, count = 30))]
fn compare(surface: &Surface, seed: u64, count: usize) -> PyResult<Report> {
    verify::check_compare(&surface.inner, "", seed, count).map(wrap).map_err(lift)
}

#[pyfunction]
#[pyo3(signature = (surface, order = 12, seed = 7))]
fn minkowski(surface: &Surface, order: usize, seed: u64) -> PyResult<Report> {
    verify::check_minkowski(&surface.inner, "", order, seed).map(wrap).map_err(lift)
}

#[pyfunction]
#[pyo3(signature = (surface, order_surface = 12, order_volume = 10, seed = 7))]
fn invhb(
    surface: &Surface,
    order_surface: usize,
    order_volume: usize,
    seed: u64,
) -> PyResult<Report> {
    verify::check_invhb(&surface.inner, "", order_surface, order_volume, seed)
        .map(wrap)
        .map_err(lift)
}

#[pyfunction]
#[pyo3(signature = (surface, order_surface = 12, order_volume = 10, seed = 7))]
fn iso(surface: &Surface, order_surface: usize, order_volume: usize, seed: u64) -> PyResult<Report> {
    verify::check_iso(&surface.inner, "", order_surface, order_volume, seed)
        .map(wrap)
        .map_err(lift)
}

#[pyfunction]
#[pyo3(signature = (space, a, seed = 7, count = 8))]
fn equality_case(space: &Space, a: f64, seed: u64, count: usize) -> PyResult<Report> {
    verify::check_equality_case(&space.inner, a, seed, count).map(wrap).map_err(lift)
}

/// Four rows: operator equation, root relation, constancy, comparison bound.
#[pyfunction]
#[pyo3(signature = (surface, seed = 7, count = 10))]
fn rigidity(surface: &Surface, seed: u64, count: usize) -> PyResult<Vec<Report>> {
    verify::check_rigidity(&surface.inner, "", seed, count).map(wrap_all).map_err(lift)
}

#[pyfunction]
#[pyo3(signature = (seed = 7, count = 10))]
fn hessian_radial(seed: u64, count: usize) -> PyResult<Report> {
    verify::check_hessian_radial(seed, count).map(wrap).map_err(lift)
}

#[pyfunction]
#[pyo3(signature = (field, tag = "f", order = 24))]
fn extension_holomorphy(field: &Field, tag: &str, order: usize) -> PyResult<Report> {
    verify::check_extension_holomorphy(&field.inner, tag, order).map(wrap).map_err(lift)
}

#[pyfunction]
#[pyo3(signature = (field, tag = "f", order = 24))]
fn energy_identity(field: &Field, tag: &str, order: usize) -> PyResult<Report> {
    verify::check_energy_identity(&field.inner, tag, order).map(wrap).map_err(lift)
}

/// Closed-form principal curvatures of the geodesic sphere, ascending.
#[pyfunction]
fn sphere_spectrum(space: &Space, a: f64) -> PyResult<Vec<f64>> {
    verify::sphere_spectrum(&space.inner, a).map_err(lift)
}

/// Closed-form principal curvatures of the tube about a complex line.
#[pyfunction]
fn tube_spectrum(n: usize, a: f64) -> PyResult<Vec<f64>> {
    if n != 2 && n != 3 {
        return Err(PyValueError::new_err(format!("n must be 2 or 3 (got {n})")));
    }
    Ok(verify::tube_spectrum(n, a))
}

/// Full pipeline run, mirroring the command line. Returns the JSON report;
/// timing is omitted so the bytes are reproducible.
#[pyfunction]
#[pyo3(signature = (space = "ch", n = 2, geometry = "sphere 0.5", suite = "all",
                    order_surface = 12, order_volume = 10, order_extend = 32,
                    tol_scale = 1.0, seed = 7))]
#[allow(clippy::too_many_arguments)]
fn run_report(
    space: &str,
    n: usize,
    geometry: &str,
    suite: &str,
    order_surface: usize,
    order_volume: usize,
    order_extend: usize,
    tol_scale: f64,
    seed: u64,
) -> PyResult<String> {
    let cfg = RunConfig {
        space: cli::parse_space(space).map_err(PyValueError::new_err)?,
        n,
        geometry: cli::parse_geometry(geometry).map_err(PyValueError::new_err)?,
        suite: cli::Suite::parse(suite).map_err(PyValueError::new_err)?,
        order_surface,
        order_volume,
        order_extend,
        tol_scale,
        threads: None,
        seed,
        output: None,
        csv: None,
        timing: false,
    };
    cli::validate(&cfg).map_err(PyValueError::new_err)?;
    let report = cli::run(&cfg).map_err(lift)?;
    Ok(cli::report_json(&report))
}

#[pymodule]
fn kahler_verify_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Space>()?;
    m.add_class::<Field>()?;
    m.add_class::<Surface>()?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(identity, m)?)?;
    m.add_function(wrap_pyfunction!(identity_battery, m)?)?;
    m.add_function(wrap_pyfunction!(curvature, m)?)?;
    m.add_function(wrap_pyfunction!(potential, m)?)?;
    m.add_function(wrap_pyfunction!(div_t, m)?)?;
    m.add_function(wrap_pyfunction!(duality, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(minkowski, m)?)?;
    m.add_function(wrap_pyfunction!(invhb, m)?)?;
    m.add_function(wrap_pyfunction!(iso, m)?)?;
    m.add_function(wrap_pyfunction!(equality_case, m)?)?;
    m.add_function(wrap_pyfunction!(rigidity, m)?)?;
    m.add_function(wrap_pyfunction!(hessian_radial, m)?)?;
    m.add_function(wrap_pyfunction!(extension_holomorphy, m)?)?;
    m.add_function(wrap_pyfunction!(energy_identity, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(tube_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(run_report, m)?)?;
    Ok(())
}
