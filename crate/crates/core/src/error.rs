use thiserror::Error;

/// Error type shared by all modules of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Structurally invalid argument (sizes, ordering, ranges).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Nested quadrature failed to meet its tolerance at the node cap.
    #[error(
        "quadrature did not converge: estimates {coarse} and {fine} differ by {diff:e} \
         (target {tol:e}) at {points} points"
    )]
    QuadratureDidNotConverge {
        coarse: f64,
        fine: f64,
        diff: f64,
        tol: f64,
        points: usize,
    },

    /// Iterative eigensolver exceeded its sweep/iteration budget.
    #[error("eigensolver did not converge: {0}")]
    EigenDidNotConverge(String),

    /// A discretized determinantal kernel produced an eigenvalue at or above 1,
    /// which signals that the counting window reaches into the bulk.
    #[error("window touches the bulk: discretized kernel eigenvalue {0} is at or above 1")]
    WindowIncludesBulk(f64),

    /// Counting probabilities failed to stabilize under grid doubling.
    #[error("counting distribution did not stabilize: grid {grid}, residual {residual:e} > {tol:e}")]
    CountingDidNotConverge {
        grid: usize,
        residual: f64,
        tol: f64,
    },

    /// Two algebraically equivalent evaluation routes disagree beyond tolerance.
    #[error("independent evaluation routes disagree: {a} vs {b} (allowed {tol:e})")]
    RouteMismatch { a: f64, b: f64, tol: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
