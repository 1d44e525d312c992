use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input contained NaN or infinite entries.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A vector failed the probability-simplex invariants.
    #[error("not a simplex point: {0}")]
    NotASimplexPoint(String),

    /// Strategy or matrix dimensions do not match the game.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Support enumeration only covers games with min(m, n) <= {limit}.
    #[error("game too large for support enumeration: min(m, n) = {size} > {limit}")]
    UnsupportedSize { size: usize, limit: usize },

    /// An operation was called outside its stated hypotheses.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// An iterative solve hit its iteration cap before reaching tolerance.
    #[error(
        "no convergence after {iterations} iterations (residual {residual:.3e}, tol {tol:.3e})"
    )]
    ConvergenceFailure {
        iterations: u64,
        residual: f64,
        tol: f64,
        /// Last x iterate, for diagnostics.
        last_x: Vec<f64>,
        /// Last y iterate, for diagnostics.
        last_y: Vec<f64>,
    },

    /// Iterates left the finite range during a dynamics run.
    #[error("non-finite value at iteration {iteration}")]
    NonFinite { iteration: u64 },

    /// A referenced information set has no strategy entry.
    #[error("missing infoset entry: {0}")]
    MissingInfoset(String),

    /// Game-tree construction or parsing failed validation.
    #[error("malformed game: {0}")]
    MalformedGame(String),
}
