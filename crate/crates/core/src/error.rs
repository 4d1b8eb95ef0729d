use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate state: amplitude vector has zero norm")]
    ZeroNorm,
    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("expected a {expected}-qubit state, got {actual} qubits")]
    QubitCount { expected: usize, actual: usize },
    #[error("amplitude vector of length {0} is not a power of two")]
    BadLength(usize),
    #[error("invalid qubit selection {keep:?} for a {num_qubits}-qubit state")]
    BadIndexSet { keep: Vec<usize>, num_qubits: usize },
    #[error("family members are not orthonormal (overlap {0:.3e})")]
    NotOrthonormal(f64),
    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),
    #[error("matrix is not positive semidefinite (eigenvalue {0:.3e})")]
    NotPsd(f64),
    #[error("unknown catalog key `{0}`")]
    UnknownKey(String),
    #[error("unsupported case `{0}`")]
    UnknownCase(String),
    #[error("decomposition `{form}` does not apply at p = {p} (valid on [{lo}, {hi}])")]
    RegionMismatch {
        form: &'static str,
        p: f64,
        lo: f64,
        hi: f64,
    },
    #[error("case {case} has no `{form}` decomposition")]
    FormNotUsed { form: &'static str, case: String },
    #[error("grid needs at least {min} points, got {got}")]
    GridTooSmall { min: usize, got: usize },
    #[error("density matrix leaks {0:.3e} outside the two-dimensional span")]
    OutsideSpan(f64),
    #[error("Bloch vector lies outside the tetrahedron")]
    OutsideTetrahedron,
    #[error("degenerate tetrahedron (volume {0:.3e})")]
    DegenerateTetrahedron(f64),
    #[error("state file line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("state norm deviates from 1 by {0:.3e}")]
    NormDeviation(f64),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            lo: 0.0,
            hi: 1.0,
        })
    }
}
