//! Python bindings: walks, families of polyharmonic generating functions, counting.

use std::sync::Arc;

use clap::Parser;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use quadrant_phf::contphf::{cont_chain, inverse_laplace, Scaling};
use quadrant_phf::discretephf::{self as d, PolyGF};
use quadrant_phf::exactalg::{fmt_q, parse_q, RatFun, Q};
use quadrant_phf::gridcheck::{check_polyharmonic, expand_ratfun};
use quadrant_phf::phfcli::{latex, serial, Cli};
use quadrant_phf::walkcount;
use quadrant_phf::walkmodel::{catalog, DEFAULT_GROUP_CAP};

const XY: [&str; 2] = ["x", "y"];

fn err(e: quadrant_phf::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn q_arg(s: &str) -> PyResult<Q> {
    parse_q(s).map_err(err)
}

/// An exact rational function of `x` and `y`.
#[pyclass(
    name = "RationalFunction",
    module = "quadrant_phf",
    frozen,
    eq,
    skip_from_py_object
)]
#[derive(Clone, PartialEq)]
pub struct PyRatFun(RatFun);

#[pymethods]
impl PyRatFun {
    /// Numerator and denominator as lists of `(i, j, "p/q")`.
    #[new]
    fn new(num: Vec<(u32, u32, String)>, den: Vec<(u32, u32, String)>) -> PyResult<Self> {
        let conv = |t: Vec<(u32, u32, String)>| -> PyResult<_> {
            let mut out = vec![];
            for (i, j, c) in t {
                out.push(((i, j), q_arg(&c)?));
            }
            Ok(quadrant_phf::exactalg::MPoly::from_terms(out))
        };
        RatFun::new(conv(num)?, conv(den)?)
            .map(PyRatFun)
            .map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serial::parse_ratfun_text(text).map(PyRatFun).map_err(err)
    }

    fn to_json(&self) -> String {
        serial::ratfun_json(&self.0).to_string()
    }

    fn text(&self) -> String {
        self.0.to_text(XY)
    }

    fn latex(&self) -> String {
        latex::ratfun_latex(&self.0, XY)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Value at rational `x`, `y` given as strings.
    fn eval(&self, x: &str, y: &str) -> PyResult<String> {
        self.0
            .eval(&q_arg(x)?, &q_arg(y)?)
            .map(|v| fmt_q(&v))
            .map_err(err)
    }

    /// Coefficients of `x^i y^j` for `i <= imax`, `j <= jmax`.
    fn series(&self, imax: usize, jmax: usize) -> PyResult<Vec<Vec<String>>> {
        let s = self.0.series_coeffs(imax, jmax).map_err(err)?;
        Ok(s.iter().map(|r| r.iter().map(fmt_q).collect()).collect())
    }

    fn scale(&self, c: &str) -> PyResult<Self> {
        Ok(PyRatFun(self.0.scale(&q_arg(c)?)))
    }

    fn __add__(&self, o: &Self) -> Self {
        PyRatFun(&self.0 + &o.0)
    }

    fn __sub__(&self, o: &Self) -> Self {
        PyRatFun(&self.0 - &o.0)
    }

    fn __mul__(&self, o: &Self) -> Self {
        PyRatFun(&self.0 * &o.0)
    }

    fn __repr__(&self) -> String {
        format!("RationalFunction({})", self.0.to_text(XY))
    }
}

/// A validated quarter-plane walk with its kernel, group and conformal data.
#[pyclass(name = "Walk", module = "quadrant_phf", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyWalk(catalog::Walk);

#[pymethods]
impl PyWalk {
    /// A catalog model: "simple", "tandem" or "diagonal".
    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        catalog::walk(name).map(PyWalk).map_err(err)
    }

    /// A model file in JSON form, with optional conformal data.
    #[staticmethod]
    #[pyo3(signature = (text, max_group_order = DEFAULT_GROUP_CAP))]
    fn from_json(text: &str, max_group_order: usize) -> PyResult<Self> {
        let (m, u) = serial::parse_model_file(text).map_err(err)?;
        catalog::Walk::new(m, u, max_group_order)
            .map(PyWalk)
            .map_err(err)
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name().to_string()
    }

    #[getter]
    fn group_order(&self) -> usize {
        self.0.group().order()
    }

    #[getter]
    fn pi_over_theta(&self) -> Option<u32> {
        self.0.angle().pi_over_theta
    }

    #[getter]
    fn has_conformal(&self) -> bool {
        self.0.has_conformal()
    }

    fn summary(&self) -> String {
        self.0.summary()
    }

    fn kernel(&self) -> PyRatFun {
        PyRatFun(self.0.kernel().ratfun())
    }

    /// Symbolic Laplacian of a generating function.
    fn laplacian(&self, f: &PyRatFun) -> PyResult<PyRatFun> {
        d::gf_laplacian(&f.0, self.0.kernel())
            .map(PyRatFun)
            .map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Walk({})", self.0.summary())
    }
}

/// `H_n^k` together with the decouplers that produced it.
#[pyclass(name = "PolyGF", module = "quadrant_phf", frozen)]
pub struct PyPolyGF(Arc<PolyGF>);

#[pymethods]
impl PyPolyGF {
    #[getter]
    fn n(&self) -> u32 {
        self.0.n
    }

    #[getter]
    fn k(&self) -> u32 {
        self.0.k
    }

    #[getter]
    fn gf(&self) -> PyRatFun {
        PyRatFun(self.0.gf.clone())
    }

    #[getter]
    fn alpha_bound(&self) -> u32 {
        self.0.alpha_bound
    }

    fn pole_orders(&self) -> (u32, u32) {
        self.0.pole_orders()
    }

    /// `(F_i, G_i)` for `i = 1 .. n-1`.
    fn decouplers(&self) -> Vec<(PyRatFun, PyRatFun)> {
        self.0
            .decoupler_chain()
            .into_iter()
            .map(|dc| (PyRatFun(dc.f), PyRatFun(dc.g)))
            .collect()
    }

    fn to_json(&self) -> String {
        serial::polygf_json(&self.0).to_string()
    }

    /// Whether `Delta^n` of the coefficient grid vanishes on a `window x window` block.
    #[pyo3(signature = (window = 30))]
    fn check_grid(&self, window: usize) -> PyResult<bool> {
        let e = window.max(1) - 1 + self.0.n as usize;
        let g = expand_ratfun(&self.0.model, &self.0.gf, e, e).map_err(err)?;
        let m = catalog::catalog_model(&self.0.model).map_err(err)?;
        let r = check_polyharmonic(&g, &m, self.0.n).map_err(err)?;
        Ok(r.verified && r.exact_order)
    }

    fn __repr__(&self) -> String {
        format!(
            "PolyGF(H_{}^{} = {})",
            self.0.n,
            self.0.k,
            self.0.gf.to_text(XY)
        )
    }
}

/// Memoized polyharmonic family of one walk.
#[pyclass(name = "Family", module = "quadrant_phf", frozen)]
pub struct PyFamily(d::Family);

#[pymethods]
impl PyFamily {
    #[new]
    fn new(walk: &PyWalk) -> Self {
        PyFamily(d::Family::new(walk.0.clone()))
    }

    fn get(&self, n: u32, k: u32) -> PyResult<PyPolyGF> {
        if n == 0 || k == 0 {
            return Err(PyValueError::new_err("n and k start at 1"));
        }
        self.0.get(n, k).map(PyPolyGF).map_err(err)
    }

    fn chain(&self, n: u32, k: u32) -> PyResult<Vec<PyPolyGF>> {
        (1..=n).map(|i| self.get(i, k)).collect()
    }

    /// Coefficients `{(i, j): "p/q"}` of `f` over `H_i^j`, and whether the residual vanishes.
    #[pyo3(signature = (f, count = 4, max_order = 4))]
    fn decompose(
        &self,
        f: &PyRatFun,
        count: u32,
        max_order: u32,
    ) -> PyResult<(Vec<((u32, u32), String)>, bool)> {
        let order = d::polyharmonic_order(&f.0, &self.0, max_order)
            .map_err(err)?
            .ok_or_else(|| PyValueError::new_err("not polyharmonic of the allowed order"))?;
        if order == 0 {
            return Ok((vec![], true));
        }
        let r = d::decompose_polyharmonic(&self.0, &f.0, order, count).map_err(err)?;
        Ok((
            r.coefficients.iter().map(|(k, v)| (*k, fmt_q(v))).collect(),
            r.is_exact(),
        ))
    }
}

/// Catalog summaries.
#[pyfunction]
fn models() -> Vec<String> {
    catalog::listing().into_iter().map(|(_, s)| s).collect()
}

/// Closed-form simple walk count `q(0, (i, j); n)` as a decimal string.
#[pyfunction]
fn simple_walk_count(i: u64, j: u64, n: u64) -> String {
    walkcount::simple_walk_exact(i, j, n).to_string()
}

/// `[(n, i, j, "value")]` for the nonzero excursion counts up to length `max_len`.
#[pyfunction]
#[pyo3(signature = (walk, max_len, weighted = false))]
fn count_paths(
    walk: &PyWalk,
    max_len: usize,
    weighted: bool,
) -> Vec<(usize, usize, usize, String)> {
    walkcount::count_paths(walk.0.model(), max_len, weighted)
        .entries()
        .map(|(n, i, j, v)| (n, i, j, fmt_q(v)))
        .collect()
}

/// Inverse Laplace transforms `h_1^k .. h_n^k` of the scaling limit, as text in `(u, v)`.
#[pyfunction]
fn continuous(walk: &PyWalk, n: u32, k: u32) -> PyResult<Vec<String>> {
    let sc = Scaling::new(&walk.0).map_err(err)?;
    let (ls, _) = cont_chain(&sc, n, k).map_err(err)?;
    ls.iter()
        .map(|l| {
            inverse_laplace(l)
                .map(|p| p.to_text(["u", "v"]))
                .map_err(err)
        })
        .collect()
}

/// Runs the command-line tool in-process; returns `(exit code, output)`.
#[pyfunction]
fn run(args: Vec<String>) -> (i32, String) {
    let argv = std::iter::once("qphf".to_string()).chain(args);
    match Cli::try_parse_from(argv) {
        Ok(cli) => {
            let o = quadrant_phf::phfcli::run(&cli);
            (o.code, o.text)
        }
        Err(e) => (if e.use_stderr() { 3 } else { 0 }, e.to_string()),
    }
}

#[pymodule(name = "quadrant_phf")]
fn quadrant_phf_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRatFun>()?;
    m.add_class::<PyWalk>()?;
    m.add_class::<PyPolyGF>()?;
    m.add_class::<PyFamily>()?;
    m.add_function(wrap_pyfunction!(models, m)?)?;
    m.add_function(wrap_pyfunction!(simple_walk_count, m)?)?;
    m.add_function(wrap_pyfunction!(count_paths, m)?)?;
    m.add_function(wrap_pyfunction!(continuous, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add("__version__", serial::VERSION)?;
    Ok(())
}
