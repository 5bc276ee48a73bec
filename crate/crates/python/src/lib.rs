//! Python bindings for the `relqi` core crate, exposed as the `pyrelqi` module.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use relqi::bellcorr::{self, BellSettings};
use relqi::entanglement::{self, LogBase};
use relqi::kinematics;
use relqi::linalg::CMatrix;
use relqi::qstate::{self, Partition, SPIN_FACTORS, TOTAL_FACTORS};
use relqi::relboost::{self, GaussianPacket, ScenarioParams, SpinFamily};
use relqi::runner::{self, ScenarioConfig, SweepSpec};

fn err(e: relqi::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    use serde_json::Value;
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, json_to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    json_to_py(py, &v)
}

fn family(beta: Option<f64>, theta: Option<f64>, phi: Option<f64>) -> PyResult<SpinFamily> {
    match (beta, theta, phi) {
        (Some(beta), None, None) => Ok(SpinFamily::BellType { beta }),
        (None, Some(theta), Some(phi)) => Ok(SpinFamily::TripletType { theta, phi }),
        _ => Err(PyValueError::new_err("give either beta, or both theta and phi")),
    }
}

/// Pure state on qubit factors: a 4-qubit `[momA, momB, spinA, spinB]` state or a spin pair.
#[pyclass(name = "PureState", module = "pyrelqi", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPureState {
    inner: qstate::PureState,
}

#[pymethods]
impl PyPureState {
    /// Builds a state from 16 (momenta and spins) or 4 (spins only) amplitudes.
    #[new]
    #[pyo3(signature = (amplitudes, normalize = false))]
    fn new(amplitudes: Vec<Complex64>, normalize: bool) -> PyResult<Self> {
        let factors = match amplitudes.len() {
            16 => TOTAL_FACTORS.to_vec(),
            4 => SPIN_FACTORS.to_vec(),
            n => return Err(PyValueError::new_err(format!("expected 4 or 16 amplitudes, got {n}"))),
        };
        let inner = if normalize {
            qstate::PureState::normalized(amplitudes, factors)
        } else {
            qstate::PureState::new(amplitudes, factors)
        };
        Ok(Self { inner: inner.map_err(err)? })
    }

    /// `(cos α |p₊p₋⟩ + sin α |p₋p₊⟩) ⊗ spin`, with a Bell-type spin part for `beta` or a
    /// triplet-type one for `theta`, `phi`.
    #[staticmethod]
    #[pyo3(signature = (alpha, beta = None, theta = None, phi = None))]
    fn total(alpha: f64, beta: Option<f64>, theta: Option<f64>, phi: Option<f64>) -> PyResult<Self> {
        let params = ScenarioParams::with_delta(family(beta, theta, phi)?, alpha, 0.0);
        Ok(Self { inner: params.initial_state() })
    }

    fn amplitudes(&self) -> Vec<Complex64> {
        self.inner.amplitudes().to_vec()
    }

    fn num_factors(&self) -> usize {
        self.inner.num_factors()
    }

    fn norm(&self) -> f64 {
        self.inner.norm()
    }

    fn inner_product(&self, other: &PyPureState) -> Complex64 {
        self.inner.inner(&other.inner)
    }

    /// Reduced density matrix on the kept factor positions.
    fn reduce(&self, keep: Vec<usize>) -> PyResult<PyDensityMatrix> {
        Ok(PyDensityMatrix { inner: self.inner.reduce(&keep).map_err(err)? })
    }

    fn density(&self) -> PyDensityMatrix {
        PyDensityMatrix { inner: self.inner.density() }
    }

    /// Applies the Wigner rotation `δ` of an observer boost to a 4-qubit state.
    fn boost(&self, delta: f64) -> PyResult<Self> {
        Ok(Self { inner: relboost::boost_two_particle(&self.inner, delta).map_err(err)? })
    }

    /// Normalized linear entropy summed over the blocks of a partition of factor positions.
    fn entanglement(&self, blocks: Vec<Vec<usize>>) -> PyResult<f64> {
        let p = Partition::new(blocks, self.inner.num_factors()).map_err(err)?;
        entanglement::total_entanglement(&self.inner, &p).map_err(err)
    }

    /// Per-block linear and von Neumann entropies for a partition.
    fn entanglement_report<'py>(&self, py: Python<'py>, blocks: Vec<Vec<usize>>) -> PyResult<Bound<'py, PyAny>> {
        let p = Partition::new(blocks, self.inner.num_factors()).map_err(err)?;
        to_py(py, &entanglement::partition_entanglement(&self.inner, &p).map_err(err)?)
    }

    /// Schmidt weights across a two-block partition, largest first.
    fn schmidt(&self, blocks: Vec<Vec<usize>>) -> PyResult<Vec<f64>> {
        let p = Partition::new(blocks, self.inner.num_factors()).map_err(err)?;
        qstate::schmidt_coefficients(&self.inner, &p).map_err(err)
    }

    fn genuinely_entangled(&self) -> PyResult<bool> {
        entanglement::genuine_multipartite_entangled(&self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("PureState(factors={:?})", self.inner.factors())
    }
}

/// Density matrix on qubit factors.
#[pyclass(name = "DensityMatrix", module = "pyrelqi", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDensityMatrix {
    inner: qstate::DensityMatrix,
}

#[pymethods]
impl PyDensityMatrix {
    /// Builds a density matrix from a square nested list of complex entries.
    #[new]
    fn new(rows: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(PyValueError::new_err("matrix must be square"));
        }
        let m = CMatrix::new(n, n, rows.into_iter().flatten().collect()).map_err(err)?;
        Ok(Self { inner: qstate::DensityMatrix::from_matrix(m).map_err(err)? })
    }

    #[staticmethod]
    fn bell(kind: &str) -> PyResult<Self> {
        let kind = match kind {
            "phi+" => qstate::BellKind::PhiPlus,
            "phi-" => qstate::BellKind::PhiMinus,
            "psi+" => qstate::BellKind::PsiPlus,
            "psi-" => qstate::BellKind::PsiMinus,
            _ => return Err(PyValueError::new_err("kind is one of phi+, phi-, psi+, psi-")),
        };
        Ok(Self { inner: qstate::bell_state(kind).density() })
    }

    #[staticmethod]
    fn maximally_mixed(qubits: usize) -> Self {
        Self { inner: qstate::DensityMatrix::maximally_mixed(qubits) }
    }

    fn matrix(&self) -> Vec<Vec<Complex64>> {
        let m = self.inner.matrix();
        m.as_slice().chunks(m.cols()).map(<[Complex64]>::to_vec).collect()
    }

    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn purity(&self) -> f64 {
        self.inner.purity()
    }

    fn eigenvalues(&self) -> PyResult<Vec<f64>> {
        self.inner.eigenvalues().map_err(err)
    }

    fn partial_trace(&self, keep: Vec<usize>) -> PyResult<Self> {
        Ok(Self { inner: self.inner.partial_trace(&keep).map_err(err)? })
    }

    fn linear_entropy(&self) -> f64 {
        entanglement::linear_entropy(&self.inner)
    }

    /// Von Neumann entropy in bits, or nats with `nats=True`.
    #[pyo3(signature = (nats = false))]
    fn von_neumann_entropy(&self, nats: bool) -> PyResult<f64> {
        let base = if nats { LogBase::Nats } else { LogBase::Bits };
        entanglement::von_neumann_entropy(&self.inner, base).map_err(err)
    }

    fn concurrence(&self) -> PyResult<f64> {
        entanglement::concurrence(&self.inner).map_err(err)
    }

    fn entanglement_of_formation(&self) -> PyResult<f64> {
        entanglement::entanglement_of_formation(&self.inner).map_err(err)
    }

    fn horodecki_m(&self) -> PyResult<f64> {
        bellcorr::horodecki_m(&self.inner).map_err(err)
    }

    /// CHSH value for coplanar directions given by their angles from ẑ in the xz-plane.
    #[pyo3(signature = (a = 0.0, a_prime = std::f64::consts::FRAC_PI_2, b = std::f64::consts::FRAC_PI_4, b_prime = 3.0 * std::f64::consts::FRAC_PI_4))]
    fn bell_parameter(&self, a: f64, a_prime: f64, b: f64, b_prime: f64) -> PyResult<f64> {
        bellcorr::bell_parameter(&self.inner, &BellSettings::coplanar(a, a_prime, b, b_prime)).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("DensityMatrix(dim={})", self.inner.dim())
    }
}

/// Wigner angle for perpendicular particle speed `v` and observer speed `w`.
#[pyfunction]
fn wigner_angle(v: f64, w: f64) -> PyResult<f64> {
    kinematics::wigner_angle_perpendicular(v, w).map_err(err)
}

#[pyfunction]
fn closed_forms_bell<'py>(py: Python<'py>, alpha: f64, beta: f64, delta: f64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &entanglement::closed_forms_bell(alpha, beta, delta))
}

#[pyfunction]
fn closed_forms_triplet<'py>(py: Python<'py>, alpha: f64, theta: f64, phi: f64, delta: f64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &entanglement::closed_forms_triplet(alpha, theta, phi, delta))
}

/// Full entanglement report for a JSON scenario configuration.
#[pyfunction]
#[pyo3(signature = (config, degrees = false))]
fn run_scenario<'py>(py: Python<'py>, config: &str, degrees: bool) -> PyResult<Bound<'py, PyAny>> {
    let cfg = ScenarioConfig::from_json(config, degrees).map_err(err)?;
    to_py(py, &runner::run_scenario(&cfg).map_err(err)?)
}

/// Runs a named preset or a JSON sweep specification; returns `(header, rows)`.
#[pyfunction]
#[pyo3(signature = (preset = None, spec = None, degrees = false))]
fn sweep(preset: Option<&str>, spec: Option<&str>, degrees: bool) -> PyResult<(Vec<String>, Vec<Vec<f64>>)> {
    let spec = match (preset, spec) {
        (Some(name), None) => SweepSpec::preset(name),
        (None, Some(text)) => SweepSpec::from_json(text, degrees),
        _ => return Err(PyValueError::new_err("give exactly one of preset, spec")),
    }
    .map_err(err)?;
    let table = runner::run_sweep(&spec).map_err(err)?;
    Ok((table.header, table.rows))
}

/// CHSH values of a singlet before and after a boost, with fixed and transformed observables.
#[pyfunction]
fn chsh_demo<'py>(py: Python<'py>, v: f64, w: f64) -> PyResult<Bound<'py, PyDict>> {
    let singlet = SpinFamily::BellType { beta: -std::f64::consts::FRAC_PI_4 };
    let params = ScenarioParams::from_speeds(singlet, 0.0, v, w).map_err(err)?;
    let demo = bellcorr::boosted_chsh_demo(&params, &BellSettings::standard()).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("delta", demo.delta)?;
    d.set_item("s_initial", demo.s_initial)?;
    d.set_item("s_boosted_fixed", demo.s_boosted_fixed)?;
    d.set_item("s_boosted_transformed", demo.s_boosted_transformed)?;
    Ok(d)
}

/// Spin entropy (nats) of a boosted Gaussian packet, numerically and from the small-width formula.
#[pyfunction]
#[pyo3(signature = (mass, width, rapidity, nodes = 17))]
fn gaussian_spin_entropy(mass: f64, width: f64, rapidity: f64, nodes: usize) -> PyResult<(f64, f64)> {
    let rho = relboost::gaussian_boosted_spin_density(&GaussianPacket::new(mass, width, rapidity, nodes)).map_err(err)?;
    let s = entanglement::von_neumann_entropy(&rho, LogBase::Nats).map_err(err)?;
    Ok((s, relboost::pst_entropy(width, mass, rapidity)))
}

#[pymodule]
fn pyrelqi(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPureState>()?;
    m.add_class::<PyDensityMatrix>()?;
    m.add_function(wrap_pyfunction!(wigner_angle, m)?)?;
    m.add_function(wrap_pyfunction!(closed_forms_bell, m)?)?;
    m.add_function(wrap_pyfunction!(closed_forms_triplet, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(chsh_demo, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_spin_entropy, m)?)?;
    Ok(())
}
