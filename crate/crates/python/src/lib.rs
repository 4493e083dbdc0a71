//! Python bindings: polynomials, Galois certificates, verdicts, changes of
//! model and exceptional sets. Polynomial arguments accept either a
//! [`Polynomial`] or an expression string; rationals are passed as strings
//! such as `"-3/4"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::{PyArithmeticError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use rigidity_core::exactalg::{parse_rational, rational_to_string};
use rigidity_core::galois::{self, GaloisOutcome};
use rigidity_core::moduli::{self, DEFAULT_DENOM_BOUND, DEFAULT_PRECISION};
use rigidity_core::torsionmod::F2PermModule;
use rigidity_core::verdict::{self, Decided};
use rigidity_core::{curvemap, parse, Error, RationalPoly};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Domain(_) | Error::Syntax { .. } => PyValueError::new_err(e.to_string()),
        Error::Precision(_) => PyArithmeticError::new_err(e.to_string()),
        Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
    }
}

fn rational(s: &str) -> PyResult<BigRational> {
    parse_rational(s.trim()).ok_or_else(|| PyValueError::new_err(format!("not a rational number: {s:?}")))
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// Exact univariate polynomial over the rationals.
#[pyclass(frozen, eq, from_py_object, module = "jacobian_rigidity")]
#[derive(Clone, PartialEq)]
pub struct Polynomial {
    inner: RationalPoly,
}

#[derive(FromPyObject)]
enum PolyArg {
    Poly(Polynomial),
    Text(String),
}

impl PolyArg {
    fn get(self) -> PyResult<RationalPoly> {
        match self {
            PolyArg::Poly(p) => Ok(p.inner),
            PolyArg::Text(s) => parse::parse_poly(&s).map_err(py_err),
        }
    }
}

fn wrap(inner: RationalPoly) -> Polynomial {
    Polynomial { inner }
}

#[pymethods]
impl Polynomial {
    #[new]
    fn new(expr: &str) -> PyResult<Self> {
        parse::parse_poly(expr).map(wrap).map_err(py_err)
    }

    /// Degree, or `None` for the zero polynomial.
    #[getter]
    fn degree(&self) -> Option<usize> {
        self.inner.deg()
    }

    /// Coefficients from the constant term up, as strings.
    #[getter]
    fn coefficients(&self) -> Vec<String> {
        self.inner.coeffs().iter().map(rational_to_string).collect()
    }

    fn discriminant(&self) -> PyResult<String> {
        self.inner.discriminant().map(|d| rational_to_string(&d)).map_err(py_err)
    }

    fn is_squarefree(&self) -> bool {
        self.inner.is_squarefree()
    }

    /// Distinct rational roots, ascending.
    fn rational_roots(&self) -> PyResult<Vec<String>> {
        let rr = self.inner.rational_roots().map_err(py_err)?;
        Ok(rr.roots.iter().map(|(r, _)| rational_to_string(r)).collect())
    }

    fn evaluate(&self, x: &str) -> PyResult<String> {
        Ok(rational_to_string(&self.inner.eval(&rational(x)?)))
    }

    fn __mul__(&self, other: PolyArg) -> PyResult<Self> {
        Ok(wrap(&self.inner * &other.get()?))
    }

    fn __add__(&self, other: PolyArg) -> PyResult<Self> {
        Ok(wrap(&self.inner + &other.get()?))
    }

    fn __sub__(&self, other: PolyArg) -> PyResult<Self> {
        Ok(wrap(&self.inner - &other.get()?))
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}')", self.inner)
    }
}

/// Outcome of Galois certification.
#[pyclass(frozen, module = "jacobian_rigidity")]
pub struct GaloisResult {
    polynomial: RationalPoly,
    outcome: GaloisOutcome,
}

#[pymethods]
impl GaloisResult {
    #[getter]
    fn certified(&self) -> bool {
        self.outcome.certificate().is_some()
    }

    /// `"SYMMETRIC"`, `"ALTERNATING"` or `None`.
    #[getter]
    fn group(&self) -> Option<String> {
        self.outcome.certificate().map(|c| json(&c.conclusion).trim_matches('"').to_string())
    }

    #[getter]
    fn primes(&self) -> Vec<u64> {
        match &self.outcome {
            GaloisOutcome::Certified(c) => c.primes.iter().map(|ct| ct.p).collect(),
            GaloisOutcome::Inconclusive(i) => i.primes.iter().map(|ct| ct.p).collect(),
        }
    }

    /// Re-checks the certificate independently of the search.
    fn replay(&self) -> bool {
        self.outcome.certificate().is_some_and(|c| galois::replay(&self.polynomial, c).is_ok())
    }

    fn to_json(&self) -> String {
        json(&self.outcome)
    }

    fn __repr__(&self) -> String {
        match self.group() {
            Some(g) => format!("GaloisResult({g})"),
            None => "GaloisResult(INCONCLUSIVE)".to_string(),
        }
    }
}

/// Conclusion of the rule table for one curve.
#[pyclass(frozen, module = "jacobian_rigidity")]
pub struct Verdict {
    inner: verdict::Verdict,
}

#[pymethods]
impl Verdict {
    #[getter]
    fn conclusion(&self) -> String {
        json(&self.inner.conclusion).trim_matches('"').to_string()
    }

    #[getter]
    fn corollaries(&self) -> Vec<String> {
        self.inner.corollary_set().iter().map(|c| json(c).trim_matches('"').to_string()).collect()
    }

    #[getter]
    fn rules(&self) -> Vec<String> {
        self.inner.rule_ids().into_iter().map(str::to_string).collect()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __repr__(&self) -> String {
        format!("Verdict({}, rules={:?})", self.conclusion(), self.rules())
    }
}

/// The exceptional parameter set `B(h)`.
#[pyclass(frozen, module = "jacobian_rigidity")]
pub struct ExceptionalSet {
    inner: moduli::ExceptionalSet,
}

#[pymethods]
impl ExceptionalSet {
    #[getter]
    fn b1(&self) -> Vec<String> {
        self.inner.b1.iter().map(rational_to_string).collect()
    }

    #[getter]
    fn b2(&self) -> Vec<String> {
        self.inner.b2.iter().map(rational_to_string).collect()
    }

    #[getter]
    fn b3(&self) -> Vec<String> {
        self.inner.b3.iter().map(rational_to_string).collect()
    }

    #[getter]
    fn elements(&self) -> Vec<String> {
        self.inner.all().iter().map(rational_to_string).collect()
    }

    #[getter]
    fn precision_used(&self) -> usize {
        self.inner.precision_used
    }

    #[getter]
    fn superset_flag(&self) -> bool {
        self.inner.superset_flag
    }

    fn __contains__(&self, t: &str) -> PyResult<bool> {
        Ok(self.inner.contains(&rational(t)?))
    }

    /// Conservative membership, also counting near misses of unrecognised values.
    fn may_contain(&self, t: &str) -> PyResult<bool> {
        Ok(self.inner.may_contain(&rational(t)?))
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __len__(&self) -> usize {
        self.inner.all().len()
    }
}

#[pyfunction]
fn parse_poly(expr: &str) -> PyResult<Polynomial> {
    Polynomial::new(expr)
}

#[pyfunction]
#[pyo3(signature = (h, budget = galois::DEFAULT_BUDGET, seed = 0))]
fn certify_galois(py: Python<'_>, h: PolyArg, budget: usize, seed: u64) -> PyResult<GaloisResult> {
    let h = h.get()?;
    let outcome = py.detach(|| galois::certify_sym_or_alt(&h, budget, seed)).map_err(py_err)?;
    Ok(GaloisResult { polynomial: h, outcome })
}

#[pyfunction]
#[pyo3(signature = (f, budget = galois::DEFAULT_BUDGET, seed = 0))]
fn classify(py: Python<'_>, f: PolyArg, budget: usize, seed: u64) -> PyResult<Verdict> {
    let f = f.get()?;
    let inner = py.detach(|| verdict::classify(&f, budget, seed)).map_err(py_err)?;
    Ok(Verdict { inner })
}

/// `True` when the jacobians are proved non-isogenous, `None` otherwise.
#[pyfunction]
#[pyo3(signature = (f, f1, budget = galois::DEFAULT_BUDGET, seed = 0))]
fn non_isogenous(py: Python<'_>, f: PolyArg, f1: PolyArg, budget: usize, seed: u64) -> PyResult<Option<bool>> {
    let (f, f1) = (f.get()?, f1.get()?);
    let r = py.detach(|| verdict::non_isogenous(&f, &f1, budget, seed)).map_err(py_err)?;
    Ok((r.result == Decided::True).then_some(true))
}

/// `True` when the jacobians over `t1` and `t2` are proved non-isomorphic,
/// `None` otherwise.
#[pyfunction]
#[pyo3(signature = (h, t1, t2, budget = galois::DEFAULT_BUDGET, seed = 0, precision = DEFAULT_PRECISION, denom_bound = DEFAULT_DENOM_BOUND))]
#[allow(clippy::too_many_arguments)]
fn moduli_rigidity(
    py: Python<'_>,
    h: PolyArg,
    t1: &str,
    t2: &str,
    budget: usize,
    seed: u64,
    precision: usize,
    denom_bound: u64,
) -> PyResult<Option<bool>> {
    let (h, t1, t2) = (h.get()?, rational(t1)?, rational(t2)?);
    let bound = BigInt::from(denom_bound);
    let r = py
        .detach(|| verdict::moduli_rigidity(&h, &t1, &t2, budget, seed, precision, &bound))
        .map_err(py_err)?;
    Ok((r.result == Decided::True).then_some(true))
}

#[pyfunction]
fn odd_to_even_model(f: PolyArg, t: &str) -> PyResult<Polynomial> {
    curvemap::odd_to_even_model(&f.get()?, &rational(t)?).map(wrap).map_err(py_err)
}

/// `(h2, v, root)` with `h2 = (x - root) v`.
#[pyfunction]
fn two_root_reduction(f: PolyArg, t1: &str, t2: &str) -> PyResult<(Polynomial, Polynomial, String)> {
    let r = curvemap::two_root_reduction(&f.get()?, &rational(t1)?, &rational(t2)?).map_err(py_err)?;
    Ok((wrap(r.h2), wrap(r.v), rational_to_string(&r.root)))
}

#[pyfunction]
#[pyo3(signature = (f, t, h2, samples = 0))]
fn verify_birational_identity(f: PolyArg, t: &str, h2: PolyArg, samples: usize) -> PyResult<bool> {
    Ok(curvemap::verify_birational_identity(&f.get()?, &rational(t)?, &h2.get()?, samples))
}

#[pyfunction]
#[pyo3(signature = (h, precision = DEFAULT_PRECISION, denom_bound = DEFAULT_DENOM_BOUND))]
fn exceptional_set(py: Python<'_>, h: PolyArg, precision: usize, denom_bound: u64) -> PyResult<ExceptionalSet> {
    let h = h.get()?;
    let bound = BigInt::from(denom_bound);
    let inner = py.detach(|| moduli::exceptional_set(&h, precision, &bound)).map_err(py_err)?;
    Ok(ExceptionalSet { inner })
}

#[pyfunction]
#[pyo3(signature = (f1, f2, tol = 1e-30))]
fn curves_isomorphic(py: Python<'_>, f1: PolyArg, f2: PolyArg, tol: f64) -> PyResult<bool> {
    let (f1, f2) = (f1.get()?, f2.get()?);
    py.detach(|| moduli::curves_isomorphic(&f1, &f2, tol)).map_err(py_err)
}

/// `(submodule dimensions, centralizer dimension)` for `Alt(letters)`.
#[pyfunction]
fn torsion_check(letters: usize) -> PyResult<(Vec<usize>, usize)> {
    let module = F2PermModule::alternating(letters).map_err(py_err)?;
    let dims = module.submodule_dims().map_err(py_err)?.into_iter().collect();
    Ok((dims, module.centralizer_dim()))
}

#[pymodule]
fn jacobian_rigidity(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("SCHEMA", rigidity_core::SCHEMA)?;
    m.add_class::<Polynomial>()?;
    m.add_class::<GaloisResult>()?;
    m.add_class::<Verdict>()?;
    m.add_class::<ExceptionalSet>()?;
    m.add_function(wrap_pyfunction!(parse_poly, m)?)?;
    m.add_function(wrap_pyfunction!(certify_galois, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(non_isogenous, m)?)?;
    m.add_function(wrap_pyfunction!(moduli_rigidity, m)?)?;
    m.add_function(wrap_pyfunction!(odd_to_even_model, m)?)?;
    m.add_function(wrap_pyfunction!(two_root_reduction, m)?)?;
    m.add_function(wrap_pyfunction!(verify_birational_identity, m)?)?;
    m.add_function(wrap_pyfunction!(exceptional_set, m)?)?;
    m.add_function(wrap_pyfunction!(curves_isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(torsion_check, m)?)?;
    Ok(())
}
