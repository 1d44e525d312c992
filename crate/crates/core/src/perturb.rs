//! Static analysis of perturbed matrix games.
//!
//! Provides an exact minimax oracle (support enumeration), fixed-point
//! solvers for payoff-perturbed games in every perturbation mode, the
//! critical perturbation-strength formulas for symmetrically perturbed
//! games, and proximity sweeps over the perturbation strength.

use crate::matrix::{best_response_value_x, MatrixGame, StrategyProfile};
use crate::simplex::{project_simplex_unchecked, SimplexPoint};
use crate::{linalg, Error, Result};
use itertools::Itertools;

/// Support enumeration is capped at this many actions on the smaller side.
pub const SUPPORT_ENUMERATION_LIMIT: usize = 12;

/// Default residual tolerance for the fixed-point oracle.
pub const DEFAULT_ORACLE_TOL: f64 = 1e-10;

/// Iteration cap for the fixed-point oracle.
const ORACLE_MAX_ITERS: u64 = 100_000_000;

/// Coordinates below this are treated as off-support.
const SUPPORT_EPS: f64 = 1e-9;

/// Interiority threshold for the critical-strength formulas.
const INTERIOR_EPS: f64 = 1e-8;

/// Which player's payoff carries the quadratic penalty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerturbationMode {
    /// Unperturbed game.
    None,
    /// Both players share one strength.
    Symmetric,
    /// Only the minimizing player `x` is perturbed.
    AsymmetricX,
    /// Only the maximizing player `y` is perturbed.
    AsymmetricY,
    /// Each player chooses a strength independently.
    Independent,
}

/// Perturbation mode plus per-player strengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationConfig {
    mode: PerturbationMode,
    mu_x: f64,
    mu_y: f64,
}

impl PerturbationConfig {
    pub fn none() -> Self {
        Self {
            mode: PerturbationMode::None,
            mu_x: 0.0,
            mu_y: 0.0,
        }
    }

    pub fn symmetric(mu: f64) -> Self {
        Self {
            mode: PerturbationMode::Symmetric,
            mu_x: mu,
            mu_y: mu,
        }
    }

    pub fn asymmetric_x(mu: f64) -> Self {
        Self {
            mode: PerturbationMode::AsymmetricX,
            mu_x: mu,
            mu_y: 0.0,
        }
    }

    pub fn asymmetric_y(mu: f64) -> Self {
        Self {
            mode: PerturbationMode::AsymmetricY,
            mu_x: 0.0,
            mu_y: mu,
        }
    }

    pub fn independent(mu_x: f64, mu_y: f64) -> Self {
        Self {
            mode: PerturbationMode::Independent,
            mu_x,
            mu_y,
        }
    }

    /// Builds a config for `mode` with a single strength parameter.
    ///
    /// `Independent` is rejected here because it needs two strengths.
    pub fn for_mode(mode: PerturbationMode, mu: f64) -> Result<Self> {
        match mode {
            PerturbationMode::None => Ok(Self::none()),
            PerturbationMode::Symmetric => Ok(Self::symmetric(mu)),
            PerturbationMode::AsymmetricX => Ok(Self::asymmetric_x(mu)),
            PerturbationMode::AsymmetricY => Ok(Self::asymmetric_y(mu)),
            PerturbationMode::Independent => Err(Error::InvalidInput(
                "independent mode needs per-player strengths".into(),
            )),
        }
    }

    pub fn mode(&self) -> PerturbationMode {
        self.mode
    }

    pub fn mu_x(&self) -> f64 {
        self.mu_x
    }

    pub fn mu_y(&self) -> f64 {
        self.mu_y
    }

    /// Checks the mode-consistency invariants.
    pub fn validate(&self) -> Result<()> {
        if !(self.mu_x.is_finite() && self.mu_y.is_finite()) || self.mu_x < 0.0 || self.mu_y < 0.0 {
            return Err(Error::InvalidInput(
                "perturbation strengths must be finite and nonnegative".into(),
            ));
        }
        let consistent = match self.mode {
            PerturbationMode::None => self.mu_x == 0.0 && self.mu_y == 0.0,
            PerturbationMode::Symmetric => self.mu_x == self.mu_y,
            PerturbationMode::AsymmetricX => self.mu_y == 0.0,
            PerturbationMode::AsymmetricY => self.mu_x == 0.0,
            PerturbationMode::Independent => true,
        };
        if !consistent {
            return Err(Error::InvalidInput(format!(
                "strengths (mu_x = {}, mu_y = {}) inconsistent with mode {:?}",
                self.mu_x, self.mu_y, self.mode
            )));
        }
        Ok(())
    }
}

/// An equilibrium certificate: the profile, its value, and the supports.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumResult {
    pub x_star: SimplexPoint,
    pub y_star: SimplexPoint,
    /// Bilinear value `x^T A y` at the returned profile.
    pub game_value: f64,
    pub x_support: Vec<usize>,
    pub y_support: Vec<usize>,
}

impl EquilibriumResult {
    fn from_profile(game: &MatrixGame, x: SimplexPoint, y: SimplexPoint) -> Self {
        let game_value = game.value(x.as_slice(), y.as_slice());
        let x_support = x.support(SUPPORT_EPS);
        let y_support = y.support(SUPPORT_EPS);
        Self {
            x_star: x,
            y_star: y,
            game_value,
            x_support,
            y_support,
        }
    }

    pub fn profile(&self) -> StrategyProfile {
        StrategyProfile::new(self.x_star.clone(), self.y_star.clone())
    }
}

/// One Nash equilibrium of the unperturbed game, by support enumeration.
///
/// Candidate supports of equal cardinality are enumerated in lexicographic
/// order; for each pair the indifference conditions are solved as a linear
/// system and the result is kept only if it passes feasibility, optimality
/// outside the support, and a final NashConv certificate at 1e-9. Singular
/// support systems are skipped.
pub fn exact_minimax(game: &MatrixGame) -> Result<EquilibriumResult> {
    let (m, n) = (game.rows(), game.cols());
    let small = m.min(n);
    if small > SUPPORT_ENUMERATION_LIMIT {
        return Err(Error::UnsupportedSize {
            size: small,
            limit: SUPPORT_ENUMERATION_LIMIT,
        });
    }

    const CERT_TOL: f64 = 1e-9;
    for k in 1..=small {
        for rows in (0..m).combinations(k) {
            for cols in (0..n).combinations(k) {
                let Some((x, y)) = solve_support_pair(game, &rows, &cols, CERT_TOL) else {
                    continue;
                };
                let z = StrategyProfile::new(x.clone(), y.clone());
                if crate::matrix::nash_conv(game, &z)? <= CERT_TOL {
                    return Ok(EquilibriumResult::from_profile(game, x, y));
                }
            }
        }
    }
    Err(Error::PreconditionViolated(
        "support enumeration certified no equilibrium".into(),
    ))
}

/// Solves the indifference system on one support pair and checks
/// feasibility plus optimality outside the supports.
fn solve_support_pair(
    game: &MatrixGame,
    rows: &[usize],
    cols: &[usize],
    tol: f64,
) -> Option<(SimplexPoint, SimplexPoint)> {
    let k = rows.len();
    let dim = k + 1;

    // y block: (A y)_i = v on support rows, sum(y) = 1.
    let mut sys = vec![0.0; dim * dim];
    let mut rhs = vec![0.0; dim];
    for (r, &i) in rows.iter().enumerate() {
        for (c, &j) in cols.iter().enumerate() {
            sys[r * dim + c] = game.entry(i, j);
        }
        sys[r * dim + k] = -1.0;
    }
    for c in 0..k {
        sys[k * dim + c] = 1.0;
    }
    rhs[k] = 1.0;
    let y_sol = linalg::solve_linear(&sys, &rhs, dim)?;
    let v = y_sol[k];

    // x block: (x^T A)_j = w on support columns, sum(x) = 1.
    let mut sys = vec![0.0; dim * dim];
    let mut rhs = vec![0.0; dim];
    for (c, &j) in cols.iter().enumerate() {
        for (r, &i) in rows.iter().enumerate() {
            sys[c * dim + r] = game.entry(i, j);
        }
        sys[c * dim + k] = -1.0;
    }
    for r in 0..k {
        sys[k * dim + r] = 1.0;
    }
    rhs[k] = 1.0;
    let x_sol = linalg::solve_linear(&sys, &rhs, dim)?;
    let w = x_sol[k];

    if (v - w).abs() > tol {
        return None;
    }
    if y_sol[..k].iter().any(|p| *p < -tol) || x_sol[..k].iter().any(|p| *p < -tol) {
        return None;
    }

    let mut y = vec![0.0; game.cols()];
    for (c, &j) in cols.iter().enumerate() {
        y[j] = y_sol[c].max(0.0);
    }
    let mut x = vec![0.0; game.rows()];
    for (r, &i) in rows.iter().enumerate() {
        x[i] = x_sol[r].max(0.0);
    }
    let ysum: f64 = y.iter().sum();
    let xsum: f64 = x.iter().sum();
    if ysum <= 0.0 || xsum <= 0.0 {
        return None;
    }
    y.iter_mut().for_each(|p| *p /= ysum);
    x.iter_mut().for_each(|p| *p /= xsum);

    // Optimality: no row below the value, no column above it.
    let row_payoffs = game.a_y(&y);
    for (i, &p) in row_payoffs.iter().enumerate() {
        if !rows.contains(&i) && p < v - tol {
            return None;
        }
    }
    let col_payoffs = game.at_x(&x);
    for (j, &p) in col_payoffs.iter().enumerate() {
        if !cols.contains(&j) && p > w + tol {
            return None;
        }
    }

    Some((SimplexPoint::new(x).ok()?, SimplexPoint::new(y).ok()?))
}

/// Equilibrium of the perturbed game selected by `cfg`, to residual `tol`.
///
/// Alternating projected gradient steps with a conservative step size; the
/// run stops when the per-step displacement over eta falls below `tol`.
/// The iteration cap produces a convergence-failure error carrying the last
/// iterate.
pub fn solve_perturbed(
    game: &MatrixGame,
    cfg: &PerturbationConfig,
    tol: f64,
) -> Result<EquilibriumResult> {
    solve_perturbed_with_budget(game, cfg, tol, ORACLE_MAX_ITERS)
}

/// [`solve_perturbed`] with an explicit iteration budget instead of the
/// default cap.
pub fn solve_perturbed_with_budget(
    game: &MatrixGame,
    cfg: &PerturbationConfig,
    tol: f64,
    max_iters: u64,
) -> Result<EquilibriumResult> {
    cfg.validate()?;
    if cfg.mu_x() + cfg.mu_y() <= 0.0 {
        return Err(Error::PreconditionViolated(
            "perturbed solve needs a positive strength".into(),
        ));
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::PreconditionViolated("tol must be positive".into()));
    }

    let eta = oracle_step_size(game, cfg);
    let mut x = SimplexPoint::uniform(game.rows()).to_vec();
    let mut y = SimplexPoint::uniform(game.cols()).to_vec();
    let (mu_x, mu_y) = (cfg.mu_x(), cfg.mu_y());

    let mut residual = f64::INFINITY;
    for _ in 0..max_iters {
        let grad_x = game.a_y(&y);
        let x_next: Vec<f64> = x
            .iter()
            .zip(&grad_x)
            .map(|(xi, g)| xi - eta * (g + mu_x * xi))
            .collect();
        let x_next = project_simplex_unchecked(&x_next).to_vec();

        let grad_y = game.at_x(&x_next);
        let y_next: Vec<f64> = y
            .iter()
            .zip(&grad_y)
            .map(|(yi, g)| yi + eta * (g - mu_y * yi))
            .collect();
        let y_next = project_simplex_unchecked(&y_next).to_vec();

        let mut disp = 0.0;
        for (a, b) in x_next.iter().zip(&x) {
            disp += (a - b) * (a - b);
        }
        for (a, b) in y_next.iter().zip(&y) {
            disp += (a - b) * (a - b);
        }
        residual = disp.sqrt() / eta;
        x = x_next;
        y = y_next;
        if residual <= tol {
            return Ok(EquilibriumResult::from_profile(
                game,
                SimplexPoint::new_unchecked(x),
                SimplexPoint::new_unchecked(y),
            ));
        }
    }
    Err(Error::ConvergenceFailure {
        iterations: max_iters,
        residual,
        tol,
        last_x: x,
        last_y: y,
    })
}

/// Conservative step size for the fixed-point oracle.
fn oracle_step_size(game: &MatrixGame, cfg: &PerturbationConfig) -> f64 {
    let norm = game.spectral_norm();
    let positive_mus: Vec<f64> = [cfg.mu_x(), cfg.mu_y()]
        .into_iter()
        .filter(|m| *m > 0.0)
        .collect();
    let modulus = positive_mus.iter().copied().fold(f64::INFINITY, f64::min);
    let mu_max = positive_mus.iter().copied().fold(0.0f64, f64::max);
    let contraction_bound = modulus / (2.0 * (modulus * modulus + norm * norm));
    let smoothness_bound = 1.0 / (2.0 * (norm + mu_max));
    0.5 * contraction_bound.min(smoothness_bound)
}

/// NashConv evaluated in the perturbed game: both inner optimizations have
/// closed forms (a simplex projection when the side is perturbed, a plain
/// max/min otherwise).
pub fn perturbed_nash_conv(
    game: &MatrixGame,
    cfg: &PerturbationConfig,
    z: &StrategyProfile,
) -> f64 {
    let (mu_x, mu_y) = (cfg.mu_x(), cfg.mu_y());
    let payoff = |x: &[f64], y: &[f64]| {
        let norm_x: f64 = x.iter().map(|v| v * v).sum();
        let norm_y: f64 = y.iter().map(|v| v * v).sum();
        game.value(x, y) + 0.5 * mu_x * norm_x - 0.5 * mu_y * norm_y
    };

    let x = z.x.as_slice();
    let y = z.y.as_slice();

    let best_y_value = if mu_y > 0.0 {
        let target: Vec<f64> = game.at_x(x).iter().map(|g| g / mu_y).collect();
        let best_y = project_simplex_unchecked(&target);
        payoff(x, best_y.as_slice())
    } else {
        let best = game.at_x(x).into_iter().fold(f64::NEG_INFINITY, f64::max);
        best + 0.5 * mu_x * x.iter().map(|v| v * v).sum::<f64>()
    };

    let best_x_value = if mu_x > 0.0 {
        let target: Vec<f64> = game.a_y(y).iter().map(|g| -g / mu_x).collect();
        let best_x = project_simplex_unchecked(&target);
        payoff(best_x.as_slice(), y)
    } else {
        let best = game.a_y(y).into_iter().fold(f64::INFINITY, f64::min);
        best - 0.5 * mu_y * y.iter().map(|v| v * v).sum::<f64>()
    };

    (best_y_value - best_x_value).max(0.0)
}

/// Critical strength at which the symmetrically perturbed minimax strategy
/// can coincide with the original one:
/// `(mean(A) - v*) / (||x*||^2 - 1/m)`.
///
/// Returns `None` when no positive candidate exists (zero numerator or a
/// nonpositive ratio). Requires an interior equilibrium with `x*` away from
/// uniform; anything else is a precondition error.
pub fn critical_mu_x(game: &MatrixGame, eq: &EquilibriumResult) -> Result<Option<f64>> {
    critical_mu(game, eq, Side::X)
}

/// Mirror of [`critical_mu_x`] for the maximizing player:
/// `(v* - mean(A)) / (||y*||^2 - 1/n)`.
pub fn critical_mu_y(game: &MatrixGame, eq: &EquilibriumResult) -> Result<Option<f64>> {
    critical_mu(game, eq, Side::Y)
}

enum Side {
    X,
    Y,
}

fn critical_mu(game: &MatrixGame, eq: &EquilibriumResult, side: Side) -> Result<Option<f64>> {
    if !eq.x_star.is_interior(INTERIOR_EPS) || !eq.y_star.is_interior(INTERIOR_EPS) {
        return Err(Error::PreconditionViolated(
            "critical strength formula assumes an interior equilibrium".into(),
        ));
    }
    let mean = game.entries().iter().sum::<f64>() / (game.rows() * game.cols()) as f64;
    let (numerator, denominator) = match side {
        Side::X => (
            mean - eq.game_value,
            eq.x_star.norm_sq() - 1.0 / game.rows() as f64,
        ),
        Side::Y => (
            eq.game_value - mean,
            eq.y_star.norm_sq() - 1.0 / game.cols() as f64,
        ),
    };
    if denominator.abs() <= 1e-12 {
        return Err(Error::PreconditionViolated(
            "equilibrium strategy is uniform; the formula degenerates".into(),
        ));
    }
    if numerator.abs() <= 1e-12 {
        return Ok(None);
    }
    let mu = numerator / denominator;
    Ok(if mu > 0.0 { Some(mu) } else { None })
}

/// One proximity measurement of a strength sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct MuSweepPoint {
    pub mu: f64,
    /// `g(x^mu) - v*`: excess of the best response against `x^mu` over the
    /// original game value.
    pub exploitability: f64,
    pub converged: bool,
}

/// Sweeps the perturbation strength and reports how exploitable the
/// perturbed minimax strategy is in the original game.
///
/// Entries that fail to converge are flagged and evaluated at the last
/// iterate; the sweep continues.
pub fn mu_sweep(
    game: &MatrixGame,
    mode: PerturbationMode,
    mu_values: &[f64],
    tol: f64,
) -> Result<Vec<MuSweepPoint>> {
    mu_sweep_with_budget(game, mode, mu_values, tol, ORACLE_MAX_ITERS)
}

/// [`mu_sweep`] with an explicit per-solve iteration budget.
pub fn mu_sweep_with_budget(
    game: &MatrixGame,
    mode: PerturbationMode,
    mu_values: &[f64],
    tol: f64,
    max_iters: u64,
) -> Result<Vec<MuSweepPoint>> {
    if mu_values.iter().any(|m| !m.is_finite() || *m <= 0.0) {
        return Err(Error::PreconditionViolated(
            "sweep strengths must be positive".into(),
        ));
    }
    if mu_values.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::PreconditionViolated(
            "sweep strengths must be sorted ascending".into(),
        ));
    }
    let v_star = exact_minimax(game)?.game_value;

    let mut out = Vec::with_capacity(mu_values.len());
    for &mu in mu_values {
        let cfg = PerturbationConfig::for_mode(mode, mu)?;
        let (x, converged) = match solve_perturbed_with_budget(game, &cfg, tol, max_iters) {
            Ok(eq) => (eq.x_star, true),
            Err(Error::ConvergenceFailure { last_x, .. }) => (SimplexPoint::new(last_x)?, false),
            Err(e) => return Err(e),
        };
        let gap = best_response_value_x(game, &x).0 - v_star;
        let exploitability = if (-1e-12..0.0).contains(&gap) {
            0.0
        } else {
            gap
        };
        out.push(MuSweepPoint {
            mu,
            exploitability,
            converged,
        });
    }
    Ok(out)
}

/// Empirical invariance threshold: the largest strength (within `precision`)
/// at which the asymmetrically perturbed minimax strategy still matches the
/// original equilibrium, located by bisection on the exploitability.
///
/// `lo` must be invariant and `hi` must not; both are verified.
pub fn empirical_invariance_threshold(
    game: &MatrixGame,
    mode: PerturbationMode,
    lo: f64,
    hi: f64,
    exploitability_tol: f64,
    precision: f64,
    oracle_tol: f64,
) -> Result<f64> {
    let v_star = exact_minimax(game)?.game_value;
    let exploitability = |mu: f64| -> Result<f64> {
        let cfg = PerturbationConfig::for_mode(mode, mu)?;
        let eq = solve_perturbed(game, &cfg, oracle_tol)?;
        Ok(best_response_value_x(game, &eq.x_star).0 - v_star)
    };
    if exploitability(lo)? > exploitability_tol {
        return Err(Error::PreconditionViolated(format!(
            "lower bracket mu = {lo} is already exploitable"
        )));
    }
    if exploitability(hi)? <= exploitability_tol {
        return Err(Error::PreconditionViolated(format!(
            "upper bracket mu = {hi} is not exploitable"
        )));
    }
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > precision {
        let mid = 0.5 * (lo + hi);
        if exploitability(mid)? <= exploitability_tol {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bmp() -> MatrixGame {
        MatrixGame::from_rows(&[vec![1.0 / 3.0, -2.0 / 3.0], vec![-2.0 / 3.0, 1.0]]).unwrap()
    }

    fn brps() -> MatrixGame {
        MatrixGame::from_rows(&[
            vec![0.0, 1.0, -3.0],
            vec![-1.0, 0.0, 1.0],
            vec![3.0, -1.0, 0.0],
        ])
        .unwrap()
    }

    #[test]
    fn config_mode_consistency() {
        assert!(PerturbationConfig::symmetric(1.0).validate().is_ok());
        assert!(PerturbationConfig::none().validate().is_ok());
        let bad = PerturbationConfig {
            mode: PerturbationMode::AsymmetricX,
            mu_x: 1.0,
            mu_y: 0.5,
        };
        assert!(bad.validate().is_err());
        let bad = PerturbationConfig {
            mode: PerturbationMode::Symmetric,
            mu_x: 1.0,
            mu_y: 0.5,
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn bmp_exact_minimax() {
        let eq = exact_minimax(&bmp()).unwrap();
        for (got, want) in eq.x_star.as_slice().iter().zip(&[0.625, 0.375]) {
            assert!((got - want).abs() < 1e-12);
        }
        for (got, want) in eq.y_star.as_slice().iter().zip(&[0.625, 0.375]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert!((eq.game_value - (-1.0 / 24.0)).abs() < 1e-12);
        assert_eq!(eq.x_support, vec![0, 1]);
    }

    #[test]
    fn brps_exact_minimax() {
        let eq = exact_minimax(&brps()).unwrap();
        for (got, want) in eq.x_star.as_slice().iter().zip(&[0.2, 0.6, 0.2]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert!(eq.game_value.abs() < 1e-12);
    }

    #[test]
    fn oversized_game_is_rejected() {
        let m = 13;
        let game = MatrixGame::new(m, m, vec![0.0; m * m]).unwrap();
        assert!(matches!(
            exact_minimax(&game),
            Err(Error::UnsupportedSize { .. })
        ));
    }

    #[test]
    fn critical_mu_of_bmp_is_four_thirds() {
        let game = bmp();
        let eq = exact_minimax(&game).unwrap();
        let mu = critical_mu_x(&game, &eq).unwrap().unwrap();
        assert!((mu - 4.0 / 3.0).abs() < 1e-10, "got {mu}");
        // The y-side numerator v* - mean(A) is negative for BMP, so no
        // positive candidate exists on that side: the maximin strategy
        // shifts for every strength.
        assert_eq!(critical_mu_y(&game, &eq).unwrap(), None);
    }

    #[test]
    fn critical_mu_absent_for_antisymmetric_games() {
        let game = brps();
        let eq = exact_minimax(&game).unwrap();
        assert_eq!(critical_mu_x(&game, &eq).unwrap(), None);
        assert_eq!(critical_mu_y(&game, &eq).unwrap(), None);
    }

    #[test]
    fn critical_mu_scales_with_the_matrix() {
        let game = bmp();
        let eq = exact_minimax(&game).unwrap();
        let mu = critical_mu_x(&game, &eq).unwrap().unwrap();

        let doubled =
            MatrixGame::from_rows(&[vec![2.0 / 3.0, -4.0 / 3.0], vec![-4.0 / 3.0, 2.0]]).unwrap();
        let eq2 = exact_minimax(&doubled).unwrap();
        let mu2 = critical_mu_x(&doubled, &eq2).unwrap().unwrap();
        assert!((mu2 - 2.0 * mu).abs() < 1e-9);
    }

    #[test]
    fn critical_mu_of_negated_bmp_swaps_sides() {
        let game = bmp();
        let eq = exact_minimax(&game).unwrap();
        let mu_x = critical_mu_x(&game, &eq).unwrap().unwrap();

        let negated =
            MatrixGame::from_rows(&[vec![-1.0 / 3.0, 2.0 / 3.0], vec![2.0 / 3.0, -1.0]]).unwrap();
        let neq = exact_minimax(&negated).unwrap();
        let mu_y = critical_mu_y(&negated, &neq).unwrap().unwrap();
        assert!((mu_y - mu_x).abs() < 1e-9);
    }

    #[test]
    fn critical_mu_rejects_boundary_equilibria() {
        // Dominant-strategy game with a pure equilibrium.
        let game = MatrixGame::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
        let eq = exact_minimax(&game).unwrap();
        assert!(matches!(
            critical_mu_x(&game, &eq),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
