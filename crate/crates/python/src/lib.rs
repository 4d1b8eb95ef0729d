//! Python bindings: states, families, measures, envelopes, decompositions
//! and the Bloch-ball tetrahedron.

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

use tangle_roof::geometry::{bloch_from_span_state, zero_tetrahedron, zero_witness, BlochVector};
use tangle_roof::invariants::{concurrence_mixed, eof_from_concurrence, LogBase};
use tangle_roof::linalg::{CMatrix, C64};
use tangle_roof::qstate::{catalog, catalog_lookup, density_of};
use tangle_roof::roof::{self, Case};
use tangle_roof::tables::measures_for;
use tangle_roof::{measure as measure_rs, DensityMatrix, Error, FamilyId, InvariantKind, PureState, RankTwoFamily};

fn err(e: Error) -> PyErr {
    match e {
        Error::Io(io) => PyIOError::new_err(io.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn kind(name: &str) -> PyResult<InvariantKind> {
    InvariantKind::parse(name).ok_or_else(|| PyValueError::new_err(format!("unknown measure {name:?}")))
}

fn case(name: &str) -> PyResult<Case> {
    Case::parse(name).map_err(err)
}

#[pyclass(name = "PureState", module = "tangle_roof_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPureState(PureState);

#[pymethods]
impl PyPureState {
    /// Wraps amplitudes (length 2**n) as given; call `normalized()` to rescale.
    #[new]
    fn new(amplitudes: Vec<C64>) -> PyResult<Self> {
        PureState::new(amplitudes).map(Self).map_err(err)
    }

    /// Normalized state from (bitstring, coefficient) pairs.
    #[staticmethod]
    fn from_kets(terms: Vec<(String, f64)>) -> PyResult<Self> {
        let refs: Vec<(&str, f64)> = terms.iter().map(|(k, c)| (k.as_str(), *c)).collect();
        PureState::from_kets(&refs).map(Self).map_err(err)
    }

    #[staticmethod]
    fn named(key: &str) -> PyResult<Self> {
        catalog_lookup(key).map(|n| Self(n.state)).map_err(err)
    }

    #[getter]
    fn num_qubits(&self) -> usize {
        self.0.num_qubits()
    }

    #[getter]
    fn amplitudes(&self) -> Vec<C64> {
        self.0.amplitudes().to_vec()
    }

    fn norm(&self) -> f64 {
        self.0.norm()
    }

    fn normalized(&self) -> PyResult<Self> {
        self.0.normalize().map(Self).map_err(err)
    }

    fn density(&self) -> PyDensityMatrix {
        PyDensityMatrix(density_of(&self.0))
    }

    /// Every applicable measure for this qubit count, as a dict.
    fn measures(&self) -> PyResult<Vec<(String, f64)>> {
        measures_for(self.0.num_qubits())
            .iter()
            .map(|&k| Ok((k.name().to_string(), measure_rs(k, &self.0).map_err(err)?)))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("PureState(num_qubits={}, norm={:.6})", self.0.num_qubits(), self.0.norm())
    }
}

#[pyclass(name = "DensityMatrix", module = "tangle_roof_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDensityMatrix(DensityMatrix);

#[pymethods]
impl PyDensityMatrix {
    /// Validated density matrix from row lists.
    #[new]
    fn new(rows: Vec<Vec<C64>>) -> PyResult<Self> {
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(PyValueError::new_err("matrix must be square"));
        }
        DensityMatrix::new(CMatrix::from_rows(&rows)).map(Self).map_err(err)
    }

    #[getter]
    fn num_qubits(&self) -> usize {
        self.0.num_qubits()
    }

    #[getter]
    fn entries(&self) -> Vec<Vec<C64>> {
        let m = self.0.entries();
        let d = m.dim();
        (0..d).map(|i| (0..d).map(|j| m[(i, j)]).collect()).collect()
    }

    fn trace(&self) -> f64 {
        self.0.trace()
    }

    fn spectrum(&self) -> PyResult<Vec<f64>> {
        self.0.spectrum().map_err(err)
    }

    /// Reduced state on the listed qubits (0 = A, most significant).
    fn partial_trace(&self, keep: Vec<usize>) -> PyResult<Self> {
        self.0.partial_trace(&keep).map(Self).map_err(err)
    }

    /// Wootters concurrence of a two-qubit state.
    fn concurrence(&self) -> PyResult<f64> {
        concurrence_mixed(&self.0).map_err(err)
    }

    /// Bloch vector in span{Φ₂, W₄}.
    fn bloch(&self) -> PyResult<(f64, f64, f64)> {
        let r = bloch_from_span_state(&self.0).map_err(err)?.r;
        Ok((r[0], r[1], r[2]))
    }

    fn __repr__(&self) -> String {
        format!("DensityMatrix(num_qubits={})", self.0.num_qubits())
    }
}

#[pyclass(name = "RankTwoFamily", module = "tangle_roof_py", frozen)]
struct PyRankTwoFamily(RankTwoFamily);

#[pymethods]
impl PyRankTwoFamily {
    #[new]
    fn new(phi: &PyPureState, w: &PyPureState) -> PyResult<Self> {
        RankTwoFamily::new(phi.0.clone(), w.0.clone()).map(Self).map_err(err)
    }

    /// One of "rho1", "rho2", "rho3", "ghzw".
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        FamilyId::parse(name)
            .map(|f| Self(f.family()))
            .ok_or_else(|| PyValueError::new_err(format!("unknown family {name:?}")))
    }

    #[getter]
    fn phi(&self) -> PyPureState {
        PyPureState(self.0.phi().clone())
    }

    #[getter]
    fn w(&self) -> PyPureState {
        PyPureState(self.0.w().clone())
    }

    /// √p|Φ⟩ − e^{iφ}√(1−p)|W⟩
    fn superpose(&self, p: f64, phase: f64) -> PyResult<PyPureState> {
        self.0.superpose(p, phase).map(PyPureState).map_err(err)
    }

    fn mix(&self, p: f64) -> PyResult<PyDensityMatrix> {
        self.0.mix(p).map(PyDensityMatrix).map_err(err)
    }
}

#[pyclass(name = "EnvelopeResult", module = "tangle_roof_py", frozen, get_all)]
struct PyEnvelope {
    case: String,
    p_values: Vec<f64>,
    min_curve: Vec<f64>,
    hull_curve: Vec<f64>,
    reference: Vec<f64>,
}

#[pymethods]
impl PyEnvelope {
    /// sup |hull − reference|
    fn max_deviation(&self) -> f64 {
        self.hull_curve
            .iter()
            .zip(&self.reference)
            .map(|(h, r)| (h - r).abs())
            .fold(0.0, f64::max)
    }
}

#[pyclass(name = "Decomposition", module = "tangle_roof_py", frozen)]
struct PyDecomposition(roof::Decomposition);

#[pymethods]
impl PyDecomposition {
    #[getter]
    fn terms(&self) -> Vec<(f64, PyPureState)> {
        self.0.terms.iter().map(|(w, s)| (*w, PyPureState(s.clone()))).collect()
    }

    #[getter]
    fn target(&self) -> PyDensityMatrix {
        PyDensityMatrix(self.0.target.clone())
    }

    /// (reconstruction residual, weighted average of the measure)
    fn verify(&self, measure: &str) -> PyResult<(f64, f64)> {
        let v = roof::verify_decomposition(&self.0, kind(measure)?).map_err(err)?;
        Ok((v.residual, v.avg_entanglement))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

/// Evaluate one measure ("F1".."G3", "tau3", "tau3sq", "C") on a pure state.
#[pyfunction]
fn measure(name: &str, state: &PyPureState) -> PyResult<f64> {
    measure_rs(kind(name)?, &state.0).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (concurrence, log2 = false))]
fn eof(concurrence: f64, log2: bool) -> PyResult<f64> {
    let base = if log2 { LogBase::Two } else { LogBase::Natural };
    eof_from_concurrence(concurrence, base).map_err(err)
}

#[pyfunction]
fn catalog_keys() -> Vec<&'static str> {
    catalog().iter().map(|e| e.key).collect()
}

#[pyfunction]
fn cases() -> Vec<String> {
    Case::supported().iter().map(|c| c.to_string()).collect()
}

#[pyfunction]
fn reference_value(case_name: &str, p: f64) -> PyResult<f64> {
    Ok(roof::reference_formula(case(case_name)?).map_err(err)?.value(p))
}

#[pyfunction]
fn breakpoints(case_name: &str) -> PyResult<Vec<f64>> {
    Ok(roof::reference_formula(case(case_name)?).map_err(err)?.breakpoints)
}

#[pyfunction]
fn solve_p1() -> f64 {
    roof::solve_p1()
}

/// Min characteristic curve, its hull and the closed form on a uniform grid.
#[pyfunction]
#[pyo3(signature = (case_name, p_points = roof::DEFAULT_P_POINTS, phi_points = roof::DEFAULT_PHI_POINTS))]
fn envelope(py: Python<'_>, case_name: &str, p_points: usize, phi_points: usize) -> PyResult<PyEnvelope> {
    let c = case(case_name)?;
    let (env, reference) = py
        .detach(|| -> tangle_roof::Result<_> {
            let fam = c.family();
            let env = roof::envelope(
                &fam,
                c.kind,
                &roof::uniform_p_grid(p_points),
                &roof::uniform_phi_grid(phi_points),
            )?;
            let f = roof::reference_formula(c)?;
            let reference = env.p_values.iter().map(|&p| f.value(p)).collect();
            Ok((env, reference))
        })
        .map_err(err)?;
    Ok(PyEnvelope {
        case: c.to_string(),
        p_values: env.p_values,
        min_curve: env.min_curve,
        hull_curve: env.hull_curve,
        reference,
    })
}

#[pyfunction]
fn build_decomposition(case_name: &str, p: f64) -> PyResult<PyDecomposition> {
    roof::build_decomposition(case(case_name)?, p).map(PyDecomposition).map_err(err)
}

#[pyfunction]
fn in_zero_tetrahedron(x: f64, y: f64, z: f64) -> PyResult<bool> {
    zero_tetrahedron().contains(&BlochVector::new(x, y, z)).map_err(err)
}

/// Zero-F1 certificate for a Bloch point inside the tetrahedron.
#[pyfunction(name = "zero_witness")]
fn zero_witness_py(x: f64, y: f64, z: f64) -> PyResult<PyDecomposition> {
    zero_witness(&zero_tetrahedron(), &BlochVector::new(x, y, z))
        .map(PyDecomposition)
        .map_err(err)
}

#[pymodule]
fn tangle_roof_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPureState>()?;
    m.add_class::<PyDensityMatrix>()?;
    m.add_class::<PyRankTwoFamily>()?;
    m.add_class::<PyEnvelope>()?;
    m.add_class::<PyDecomposition>()?;
    m.add_function(wrap_pyfunction!(measure, m)?)?;
    m.add_function(wrap_pyfunction!(eof, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_keys, m)?)?;
    m.add_function(wrap_pyfunction!(cases, m)?)?;
    m.add_function(wrap_pyfunction!(reference_value, m)?)?;
    m.add_function(wrap_pyfunction!(breakpoints, m)?)?;
    m.add_function(wrap_pyfunction!(solve_p1, m)?)?;
    m.add_function(wrap_pyfunction!(envelope, m)?)?;
    m.add_function(wrap_pyfunction!(build_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(in_zero_tetrahedron, m)?)?;
    m.add_function(wrap_pyfunction!(zero_witness_py, m)?)?;
    Ok(())
}
