//! Python bindings: polynomials, hierarchy configs, dealing, reconstruction
//! and the exhaustive verifier. Files cross the boundary as JSON strings in
//! the same format the CLI writes.

use chss::hash::STD_V1;
use chss::io::ShareFile;
use chss::oracle::{verify_config, VerifyOptions};
use chss::{Error, HashFamily, HierarchyConfig, ParticipantSet, Polynomial, PrimeModulus, PublicBulletin, Secret};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

create_exception!(chss_py, ChssError, PyException);
create_exception!(chss_py, NotAuthorizedError, ChssError);
create_exception!(chss_py, BindingMismatchError, ChssError);
create_exception!(chss_py, ParseError, ChssError);
create_exception!(chss_py, BudgetExceededError, ChssError);

fn to_py(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::NotAuthorized { .. } | Error::InsufficientShares { .. } => NotAuthorizedError::new_err(msg),
        Error::BindingMismatch { .. } | Error::HashFamilyMismatch { .. } => BindingMismatchError::new_err(msg),
        Error::Parse { .. } | Error::MalformedConfig(_) => ParseError::new_err(msg),
        Error::BudgetExceeded(_) => BudgetExceededError::new_err(msg),
        _ => ChssError::new_err(msg),
    }
}

trait IntoPy<T> {
    fn py_err(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for chss::Result<T> {
    fn py_err(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

fn rng(seed: Option<u64>) -> ChaCha20Rng {
    match seed {
        Some(s) => ChaCha20Rng::seed_from_u64(s),
        None => ChaCha20Rng::from_entropy(),
    }
}

fn field(p: u64) -> PyResult<PrimeModulus> {
    PrimeModulus::new(p).py_err()
}

/// A polynomial over F_p, coefficients lowest degree first.
#[pyclass(name = "Polynomial", module = "chss_py", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPolynomial {
    inner: Polynomial,
}

impl PyPolynomial {
    fn wrap(inner: Polynomial) -> Self {
        PyPolynomial { inner }
    }
}

#[pymethods]
impl PyPolynomial {
    #[new]
    fn new(p: u64, coeffs: Vec<u64>) -> PyResult<Self> {
        Ok(Self::wrap(Polynomial::new(field(p)?, coeffs).py_err()?))
    }

    #[staticmethod]
    fn parse(p: u64, text: &str) -> PyResult<Self> {
        Ok(Self::wrap(Polynomial::parse(field(p)?, text).py_err()?))
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.modulus().value()
    }

    #[getter]
    fn coeffs(&self) -> Vec<u64> {
        self.inner.coeffs().to_vec()
    }

    /// `None` for the zero polynomial.
    #[getter]
    fn degree(&self) -> Option<usize> {
        self.inner.degree()
    }

    fn __add__(&self, other: &PyPolynomial) -> PyResult<Self> {
        Ok(Self::wrap(self.inner.add(&other.inner).py_err()?))
    }

    fn __sub__(&self, other: &PyPolynomial) -> PyResult<Self> {
        Ok(Self::wrap(self.inner.sub(&other.inner).py_err()?))
    }

    fn __mul__(&self, other: &PyPolynomial) -> PyResult<Self> {
        Ok(Self::wrap(self.inner.mul(&other.inner).py_err()?))
    }

    fn __mod__(&self, other: &PyPolynomial) -> PyResult<Self> {
        Ok(Self::wrap(self.inner.rem(&other.inner).py_err()?))
    }

    fn __divmod__(&self, other: &PyPolynomial) -> PyResult<(Self, Self)> {
        let (q, r) = self.inner.divmod(&other.inner).py_err()?;
        Ok((Self::wrap(q), Self::wrap(r)))
    }

    fn inv_mod(&self, m: &PyPolynomial) -> PyResult<Self> {
        Ok(Self::wrap(self.inner.inv_mod(&m.inner).py_err()?))
    }

    fn gcd(&self, other: &PyPolynomial) -> PyResult<Self> {
        Ok(Self::wrap(Polynomial::gcd(&self.inner, &other.inner).py_err()?))
    }

    fn is_irreducible(&self) -> PyResult<bool> {
        self.inner.is_irreducible().py_err()
    }

    fn eval(&self, v: u64) -> u64 {
        self.inner.eval(v)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({}, {:?})", self.p(), self.inner.coeffs())
    }
}

/// Solves `f ≡ r_i (mod m_i)` for pairwise coprime `m_i`.
#[pyfunction]
fn crt_solve(system: Vec<(PyPolynomial, PyPolynomial)>) -> PyResult<PyPolynomial> {
    let items = system.into_iter().map(|(m, r)| (m.inner, r.inner)).collect();
    Ok(PyPolynomial::wrap(chss::crt_solve(items).py_err()?))
}

fn set_of(ids: Vec<usize>) -> ParticipantSet {
    ids.into_iter().collect()
}

fn ids_of(set: &ParticipantSet) -> Vec<usize> {
    set.ids().collect()
}

#[pyclass(name = "HierarchyConfig", module = "chss_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyConfig {
    inner: HierarchyConfig,
}

#[pymethods]
impl PyConfig {
    /// Builds a config from explicit moduli.
    #[new]
    #[pyo3(signature = (p, d0, levels, thresholds, moduli, hash_family = STD_V1))]
    fn new(
        p: u64,
        d0: usize,
        levels: Vec<usize>,
        thresholds: Vec<usize>,
        moduli: Vec<PyPolynomial>,
        hash_family: &str,
    ) -> PyResult<Self> {
        let moduli = moduli.into_iter().map(|m| m.inner).collect();
        let inner = HierarchyConfig::new(field(p)?, d0, levels, thresholds, moduli, hash_family).py_err()?;
        Ok(PyConfig { inner })
    }

    /// Draws distinct monic irreducible moduli of the given degrees.
    #[staticmethod]
    #[pyo3(signature = (p, d0, levels, thresholds, degrees, seed = None, hash_family = STD_V1))]
    fn generate(
        p: u64,
        d0: usize,
        levels: Vec<usize>,
        thresholds: Vec<usize>,
        degrees: Vec<usize>,
        seed: Option<u64>,
        hash_family: &str,
    ) -> PyResult<Self> {
        let mut rng = rng(seed);
        let inner =
            HierarchyConfig::generate(field(p)?, d0, levels, thresholds, &degrees, hash_family, &mut rng).py_err()?;
        Ok(PyConfig { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyConfig {
            inner: HierarchyConfig::from_json(text).py_err()?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p().value()
    }

    #[getter]
    fn d0(&self) -> usize {
        self.inner.d0()
    }

    #[getter]
    fn level_sizes(&self) -> Vec<usize> {
        self.inner.level_sizes().to_vec()
    }

    #[getter]
    fn thresholds(&self) -> Vec<usize> {
        self.inner.thresholds().to_vec()
    }

    #[getter]
    fn degrees(&self) -> Vec<usize> {
        self.inner.degrees()
    }

    #[getter]
    fn moduli(&self) -> Vec<PyPolynomial> {
        self.inner.moduli().iter().cloned().map(PyPolynomial::wrap).collect()
    }

    #[getter]
    fn participants(&self) -> usize {
        self.inner.participants()
    }

    /// Violated conditions as `(code, message)` pairs; empty when valid.
    fn validate(&self) -> Vec<(String, String)> {
        self.inner
            .validate()
            .violations
            .iter()
            .map(|v| (v.code().to_string(), v.to_string()))
            .collect()
    }

    fn is_valid(&self) -> bool {
        self.inner.validate().is_valid()
    }

    fn is_authorized(&self, ids: Vec<usize>) -> PyResult<bool> {
        self.inner.is_authorized(&set_of(ids)).py_err()
    }

    fn theta(&self, ids: Vec<usize>) -> PyResult<i64> {
        self.inner.theta(&set_of(ids)).py_err()
    }

    fn worst_case_unauthorized_sets(&self) -> PyResult<Vec<Vec<usize>>> {
        Ok(self.inner.worst_case_unauthorized_sets().py_err()?.iter().map(ids_of).collect())
    }

    fn minimal_authorized_sets(&self) -> PyResult<Vec<Vec<usize>>> {
        Ok(self.inner.minimal_authorized_sets().py_err()?.iter().map(ids_of).collect())
    }

    fn information_rate(&self) -> f64 {
        self.inner.information_rate()
    }

    fn __repr__(&self) -> String {
        format!("HierarchyConfig({})", self.inner.to_json())
    }
}

fn family(cfg: &HierarchyConfig) -> PyResult<HashFamily> {
    HashFamily::new(cfg.hash_family(), cfg.p(), cfg.levels()).py_err()
}

/// Deals `secret` (coefficients, lowest first). Returns the share files in
/// participant order and the bulletin file, all as JSON text.
#[pyfunction]
#[pyo3(signature = (config, secret, seed = None))]
fn split(config: &PyConfig, secret: Vec<u64>, seed: Option<u64>) -> PyResult<(Vec<String>, String)> {
    let cfg = &config.inner;
    let report = cfg.validate();
    if !report.is_valid() {
        return Err(to_py(Error::InvalidConfig(report.to_string())));
    }
    let fam = family(cfg)?;
    let s = Secret::new(Polynomial::new(cfg.p(), secret).py_err()?, cfg.d0()).py_err()?;
    let mut rng = rng(seed);
    let (shares, bulletin) = chss::split(&s, cfg, &fam, &mut rng).py_err()?;
    let files = shares
        .iter()
        .map(|b| b.to_json(&bulletin))
        .collect::<chss::Result<Vec<_>>>()
        .py_err()?;
    Ok((files, bulletin.to_json()))
}

/// Recovers the secret coefficients from a bulletin and share files.
#[pyfunction]
fn reconstruct(bulletin: &str, shares: Vec<String>) -> PyResult<Vec<u64>> {
    let bulletin = PublicBulletin::from_json(bulletin).py_err()?;
    let fam = bulletin.family().py_err()?;
    let bound = shares
        .iter()
        .map(|text| ShareFile::from_json(text)?.bind(&bulletin))
        .collect::<chss::Result<Vec<_>>>()
        .py_err()?;
    let s = chss::reconstruct(&bulletin, &fam, &bound).py_err()?;
    Ok(s.poly().coeffs().to_vec())
}

/// Runs the exhaustive counting checks. Returns `(all_hold, report_json)`.
#[pyfunction]
#[pyo3(signature = (config, seed = None, secrets = 10, condition_iv_trials = None))]
fn verify(
    config: &PyConfig,
    seed: Option<u64>,
    secrets: usize,
    condition_iv_trials: Option<usize>,
) -> PyResult<(bool, String)> {
    let cfg = &config.inner;
    let fam = family(cfg)?;
    let options = VerifyOptions {
        secrets_per_set: secrets,
        condition_iv_trials,
        corrupt: false,
    };
    let mut rng = rng(seed);
    let report = verify_config(cfg, &fam, &options, &mut rng).py_err()?;
    Ok((report.all_hold(), report.to_json()))
}

#[pymodule]
fn chss_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyConfig>()?;
    m.add_function(wrap_pyfunction!(crt_solve, m)?)?;
    m.add_function(wrap_pyfunction!(split, m)?)?;
    m.add_function(wrap_pyfunction!(reconstruct, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("ChssError", py.get_type::<ChssError>())?;
    m.add("NotAuthorizedError", py.get_type::<NotAuthorizedError>())?;
    m.add("BindingMismatchError", py.get_type::<BindingMismatchError>())?;
    m.add("ParseError", py.get_type::<ParseError>())?;
    m.add("BudgetExceededError", py.get_type::<BudgetExceededError>())?;
    Ok(())
}
