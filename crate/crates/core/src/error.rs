use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("qubit index {index} out of range for a {n}-qubit register")]
    TargetOutOfRange { index: usize, n: usize },

    #[error("qubit index {0} appears more than once")]
    DuplicateTarget(usize),

    #[error("matrix is not unitary: max |U†U - I| = {deviation:.3e}")]
    NotUnitary { deviation: f64 },

    #[error("matrix is not Hermitian: max |H - H†| = {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    #[error("amplitudes are not normalized: sum |a|^2 = {0}")]
    NotNormalized(f64),

    #[error("expected a {expected}-qubit state, found {found} qubits")]
    QubitCount { expected: usize, found: usize },

    #[error("qubit count {0} outside the supported range 1..=12")]
    QubitRange(usize),

    #[error("shots must be at least 1")]
    ZeroShots,

    #[error("matrix unit index ({i}, {j}) outside 1..=4")]
    IndexOutOfRange { i: usize, j: usize },

    #[error("degenerate dielectric tensor: {0}")]
    DegenerateDielectric(String),

    #[error("malformed oracle table: {0}")]
    MalformedOracle(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("polarization constraint violated: {0}")]
    PolarizationConstraint(String),

    #[error("requested split {target} is unreachable: needs mixing angle {required:.6} rad, calibration reaches {available:.6} rad")]
    Unreachable {
        target: f64,
        required: f64,
        available: f64,
    },

    #[error("numerical instability: {0}")]
    Instability(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),
}
