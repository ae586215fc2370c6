use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix has no 1-entries")]
    AllZero,

    #[error("canonicalization cap exceeded: nonzero core is {rows}x{cols}, smaller side must be at most {cap}")]
    CanonicalCapExceeded { rows: usize, cols: usize, cap: usize },

    #[error("spectral dimension cap exceeded: smaller side {dim} > {cap}")]
    SpectralCapExceeded { dim: usize, cap: usize },

    #[error("jacobi iteration did not converge within {sweeps} sweeps (off-diagonal norm {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("materialization cap exceeded: {entries} entries > {cap}")]
    MaterializeCapExceeded { entries: u64, cap: u64 },

    #[error("brute-force guard exceeded: C({cells}, {ones}) = {count} > {cap}")]
    OracleGuardExceeded { cells: u64, ones: u64, count: u128, cap: u128 },

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("invalid matrix literal: {0}")]
    Parse(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("selection does not describe a submatrix: {0}")]
    NotASubmatrix(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    /// True for errors caused by a size or work guard rather than bad input.
    pub fn is_resource_guard(&self) -> bool {
        matches!(
            self,
            Error::CanonicalCapExceeded { .. }
                | Error::SpectralCapExceeded { .. }
                | Error::MaterializeCapExceeded { .. }
                | Error::OracleGuardExceeded { .. }
        )
    }
}
