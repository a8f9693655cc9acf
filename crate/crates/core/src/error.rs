use thiserror::Error;

/// Errors raised by graph construction, Hamiltonian assembly and the numeric routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows for {len} entries")]
    NotSquare { rows: usize, len: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian: |H[{row},{col}] - conj(H[{col},{row}])| = {deviation:e}")]
    NotHermitian { row: usize, col: usize, deviation: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("state vector has zero norm")]
    ZeroNorm,

    #[error("site {site} out of range 1..={dim}")]
    SiteOutOfRange { site: usize, dim: usize },

    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("edge ({from}, {to}) has a label outside 1..={n}")]
    LabelOutOfRange { from: usize, to: usize, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("({0}, {1}) is not an edge of the graph")]
    NotAnEdge(usize, usize),

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("invalid cycle: {0}")]
    InvalidCycle(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("eigenstate index {0} out of range 1..=6")]
    EigenIndexOutOfRange(usize),

    #[error(
        "finite-difference generator is not Hermitian (residual {residual:e}, norm {norm:e}); adjust the step size"
    )]
    GeneratorResidual { residual: f64, norm: f64 },

    #[error("finite-difference generator changes by {difference:e} between step sizes {step:e} and {coarse_step:e}")]
    StepSizeInconsistent { difference: f64, step: f64, coarse_step: f64 },

    #[error("Cramér-Rao bound undefined for Q = {q}, M = {m}")]
    UndefinedBound { q: f64, m: u64 },

    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
