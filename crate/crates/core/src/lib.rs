//! Solvers for two-player zero-sum games built around payoff perturbation.
//!
//! The crate covers three layers:
//!
//! * **Matrix games** ([`MatrixGame`], [`SimplexPoint`]): bilinear payoffs on
//!   probability simplices, simplex projection, spectral norms, and the
//!   NashConv proximity metric.
//! * **Static analysis** ([`perturb`]): an exact minimax oracle via support
//!   enumeration, fixed-point solvers for perturbed games (symmetric,
//!   asymmetric, or independently perturbed), critical perturbation-strength
//!   formulas, and perturbation-strength sweeps. Exact rational evaluation is
//!   available for games with rational payoffs ([`rational`]).
//! * **Dynamics**: projected gradient descent-ascent variants on matrix games
//!   ([`gda`]) and regret-minimization variants on extensive-form games
//!   ([`cfr`], [`efg`]), including the asymmetrically perturbed and anchored
//!   updates, with trajectory recording for experiment harnesses.

pub mod cfr;
pub mod efg;
mod error;
pub mod gda;
mod linalg;
pub mod matrix;
pub mod perturb;
pub mod rational;
pub mod simplex;

pub use error::Error;
pub use matrix::{MatrixGame, StrategyProfile};
pub use simplex::SimplexPoint;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
