//! Python bindings: fields, codes, search, simulation and the example check.

use cdcodes::cli::CodeConfigDescriptor;
use cdcodes::codes::CodeConfig;
use cdcodes::harness::{self, ChannelSpec, ValueDistribution};
use cdcodes::residue::{build_field, BetaPolicy, ResidueField};
use cdcodes::search::{self, SearchOptions};
use cdcodes::vring::{VContext, VElement};
use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Residue field of V modulo a prime element pi.
#[pyclass(frozen, skip_from_py_object, module = "cdcodes_py")]
#[derive(Clone)]
struct Field {
    inner: ResidueField,
}

#[pymethods]
impl Field {
    /// Field for prime `p` in the algebra of depth `t`; `r` defaults to max(1, t - 2).
    #[new]
    #[pyo3(signature = (p, t, r = None))]
    fn new(p: u64, t: u32, r: Option<u32>) -> PyResult<Self> {
        let inner = search::field_for(p, t, r).map_err(value_error)?;
        Ok(Field { inner })
    }

    #[staticmethod]
    fn from_pi(a: BigInt, b: BigInt, t: u32, r: u32) -> PyResult<Self> {
        Field::from_pi_big(&(a, b), t, r)
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    #[getter]
    fn s(&self) -> u64 {
        self.inner.s()
    }

    #[getter]
    fn t(&self) -> u32 {
        self.inner.ctx().t()
    }

    #[getter]
    fn r(&self) -> u32 {
        self.inner.ctx().r()
    }

    #[getter]
    fn pi(&self) -> (BigInt, BigInt) {
        let pi = self.inner.pi();
        (pi.a.clone(), pi.b.clone())
    }

    fn label(&self, a: BigInt, b: BigInt) -> u64 {
        self.inner.label_of(&VElement::new(a, b))
    }

    /// Minimal-norm representative `(a, b)` of label `k`.
    fn unlabel(&self, k: u64) -> PyResult<(BigInt, BigInt)> {
        if k >= self.inner.p() {
            return Err(value_error(format!(
                "label {k} is not below p = {}",
                self.inner.p()
            )));
        }
        let x = self.inner.unlabel_min_norm(k).map_err(value_error)?;
        Ok((x.a, x.b))
    }

    fn weight(&self, k: u64) -> u64 {
        self.inner.weight_g(k % self.inner.p())
    }

    fn distance(&self, x: u64, y: u64) -> u64 {
        let p = self.inner.p();
        self.inner.distance_g(x % p, y % p)
    }

    /// Labels `x` with `x^n = +-s`.
    fn beta_candidates(&self, n: u64) -> PyResult<Vec<u64>> {
        self.inner.beta_candidates(n).map_err(value_error)
    }

    fn __repr__(&self) -> String {
        format!(
            "Field(p={}, t={}, r={}, {})",
            self.inner.p(),
            self.t(),
            self.r(),
            self.inner
        )
    }
}

#[pyclass(frozen, get_all, module = "cdcodes_py")]
struct DecodeOutcome {
    status: String,
    errors: Vec<(usize, u64)>,
    corrected: Option<Vec<u64>>,
}

/// Code of length `n` over a residue field with `rows` parity rows.
#[pyclass(frozen, module = "cdcodes_py")]
struct Code {
    inner: CodeConfig,
}

#[pymethods]
impl Code {
    #[new]
    #[pyo3(signature = (field, n, beta = None, rows = 2))]
    fn new(field: &Field, n: u64, beta: Option<u64>, rows: usize) -> PyResult<Self> {
        let f = field.inner.clone();
        let inner = match beta {
            Some(b) => CodeConfig::new(f, n, b, rows),
            None => CodeConfig::with_policy(f, n, rows, BetaPolicy::PrimitivePreferred),
        }
        .map_err(value_error)?;
        Ok(Code { inner })
    }

    #[staticmethod]
    fn from_toml(text: &str) -> PyResult<Self> {
        let d = CodeConfigDescriptor::from_toml(text).map_err(value_error)?;
        Ok(Code {
            inner: d.to_config().map_err(value_error)?,
        })
    }

    fn to_toml(&self) -> PyResult<String> {
        Ok(CodeConfigDescriptor::from_config(&self.inner)
            .map_err(value_error)?
            .to_toml())
    }

    #[getter]
    fn field(&self) -> Field {
        Field {
            inner: self.inner.field().clone(),
        }
    }

    #[getter]
    fn n(&self) -> u64 {
        self.inner.n()
    }

    #[getter]
    #[allow(non_snake_case)]
    fn M(&self) -> u64 {
        self.inner.M()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.dimension()
    }

    #[getter]
    fn rows(&self) -> usize {
        self.inner.rows()
    }

    #[getter]
    fn beta(&self) -> u64 {
        self.inner.beta().label
    }

    #[getter]
    fn sign(&self) -> i8 {
        self.inner.sign()
    }

    fn generator_polynomial(&self) -> Vec<u64> {
        self.inner.generator_polynomial()
    }

    fn parity_matrix(&self) -> Vec<Vec<u64>> {
        self.inner.parity_matrix()
    }

    fn encode(&self, message: Vec<u64>) -> PyResult<Vec<u64>> {
        self.inner.encode(&message).map_err(value_error)
    }

    fn syndrome(&self, word: Vec<u64>) -> PyResult<Vec<u64>> {
        self.inner.syndrome(&word).map_err(value_error)
    }

    fn is_codeword(&self, word: Vec<u64>) -> bool {
        self.inner.is_codeword(&word)
    }

    fn decode(&self, word: Vec<u64>) -> PyResult<DecodeOutcome> {
        let r = self.inner.decode(&word).map_err(value_error)?;
        Ok(DecodeOutcome {
            status: r.status.to_string(),
            errors: r.errors,
            corrected: r.corrected,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "Code(p={}, n={}, k={}, beta={}, rows={})",
            self.inner.p(),
            self.inner.n(),
            self.inner.dimension(),
            self.inner.beta().label,
            self.inner.rows()
        )
    }
}

#[allow(non_snake_case)]
#[pyclass(frozen, get_all, module = "cdcodes_py")]
struct Candidate {
    t: u32,
    r: u32,
    pi: (BigInt, BigInt),
    p: u64,
    s: u64,
    n: u64,
    M: u64,
    beta: Option<u64>,
    sign: Option<i8>,
    feasible: bool,
}

#[pymethods]
impl Candidate {
    #[getter]
    fn field(&self) -> PyResult<Field> {
        Field::from_pi_big(&self.pi, self.t, self.r)
    }

    fn __repr__(&self) -> String {
        format!(
            "Candidate(t={}, r={}, n={}, beta={:?}, feasible={})",
            self.t, self.r, self.n, self.beta, self.feasible
        )
    }
}

impl Field {
    fn from_pi_big(pi: &(BigInt, BigInt), t: u32, r: u32) -> PyResult<Self> {
        let ctx = VContext::new(t, r).map_err(value_error)?;
        let inner =
            build_field(&VElement::new(pi.0.clone(), pi.1.clone()), ctx).map_err(value_error)?;
        Ok(Field { inner })
    }
}

/// Ranked (algebra, r, n) choices for `p`, feasible first.
#[pyfunction]
#[pyo3(signature = (p, t_max = 6, r_extra = 4, rows = 2))]
fn search_codes(p: u64, t_max: u32, r_extra: u32, rows: usize) -> PyResult<Vec<Candidate>> {
    let opts = SearchOptions {
        t_max,
        r_extra,
        rows,
        policy: BetaPolicy::PrimitiveOnly,
    };
    let ranked = search::main_algorithm(p, &opts).map_err(value_error)?;
    Ok(ranked
        .into_iter()
        .map(|c| Candidate {
            t: c.repr.t,
            r: c.r,
            pi: (c.field.pi().a.clone(), c.field.pi().b.clone()),
            p: c.field.p(),
            s: c.field.s(),
            n: c.pair.n,
            M: c.pair.m,
            beta: c.beta.as_ref().map(|b| b.label),
            sign: c.beta.as_ref().map(|b| b.sign),
            feasible: c.feasible,
        })
        .collect())
}

#[pyclass(frozen, get_all, module = "cdcodes_py")]
struct SimulationReport {
    trials: u64,
    corrected: u64,
    miscorrected: u64,
    detected: u64,
    /// `(numerator, denominator)` of the exact success rate.
    success_rate: (u64, u64),
    rng: &'static str,
}

#[pyfunction]
#[pyo3(signature = (code, errors, trials, seed = 0, powers_of_w = false))]
fn simulate(
    code: &Code,
    errors: usize,
    trials: u64,
    seed: u64,
    powers_of_w: bool,
) -> PyResult<SimulationReport> {
    let spec = ChannelSpec {
        error_count: errors,
        values: if powers_of_w {
            ValueDistribution::PowersOfW
        } else {
            ValueDistribution::UniformNonzero
        },
        seed,
    };
    let r = harness::simulate_channel(&code.inner, &spec, trials).map_err(value_error)?;
    Ok(SimulationReport {
        trials: r.trials,
        corrected: r.corrected,
        miscorrected: r.miscorrected,
        detected: r.detected,
        success_rate: (*r.success_rate.numer(), *r.success_rate.denom()),
        rng: r.rng,
    })
}

#[pyclass(frozen, get_all, module = "cdcodes_py")]
struct PaperCheck {
    example: &'static str,
    claim: &'static str,
    expected: String,
    computed: String,
    verdict: String,
}

#[pyfunction]
fn verify_paper() -> Vec<PaperCheck> {
    harness::verify_paper_examples()
        .checks
        .into_iter()
        .map(|c| PaperCheck {
            example: c.example,
            claim: c.claim,
            expected: c.expected,
            computed: c.computed,
            verdict: c.verdict.to_string(),
        })
        .collect()
}

#[pymodule]
fn cdcodes_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<Code>()?;
    m.add_class::<DecodeOutcome>()?;
    m.add_class::<Candidate>()?;
    m.add_class::<SimulationReport>()?;
    m.add_class::<PaperCheck>()?;
    m.add_function(wrap_pyfunction!(search_codes, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(verify_paper, m)?)?;
    Ok(())
}
