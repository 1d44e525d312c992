//! Projected gradient descent-ascent dynamics on matrix games.
//!
//! All variants use alternating updates: the descent step for `x` happens
//! first and the ascent step for `y` sees the fresh `x`. The perturbed
//! variants add a quadratic pull toward the origin (or toward a periodically
//! reset anchor) on one or both sides.

use crate::matrix::{nash_conv, MatrixGame, StrategyProfile};
use crate::perturb::{PerturbationConfig, PerturbationMode};
use crate::simplex::{project_simplex_unchecked, SimplexPoint};
use crate::{Error, Result};
use rand::SeedableRng;

/// Update rule selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Gda,
    SympGda,
    AsympGda,
    Ogda,
    AdaAsympGda,
    AdaSympGda,
}

impl Algorithm {
    pub fn is_anchored(&self) -> bool {
        matches!(self, Algorithm::AdaAsympGda | Algorithm::AdaSympGda)
    }

    /// The perturbation mode this update rule expects.
    fn expected_mode(&self) -> PerturbationMode {
        match self {
            Algorithm::Gda | Algorithm::Ogda => PerturbationMode::None,
            Algorithm::SympGda | Algorithm::AdaSympGda => PerturbationMode::Symmetric,
            Algorithm::AsympGda | Algorithm::AdaAsympGda => PerturbationMode::AsymmetricX,
        }
    }
}

/// Full configuration of a dynamics run.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    /// Learning rate eta.
    pub eta: f64,
    pub perturbation: PerturbationConfig,
    /// Anchor reset period (anchored variants only).
    pub anchor_period: u64,
    /// Total iterations T.
    pub max_iters: u64,
    /// Trajectory thinning: record every this many iterations.
    pub record_every: u64,
    /// Seed for random initial strategies.
    pub seed: u64,
}

impl SolverConfig {
    /// Builds a config with the perturbation mode implied by the algorithm.
    pub fn new(algorithm: Algorithm, eta: f64, mu: f64) -> Self {
        let perturbation = match algorithm.expected_mode() {
            PerturbationMode::None => PerturbationConfig::none(),
            PerturbationMode::Symmetric => PerturbationConfig::symmetric(mu),
            PerturbationMode::AsymmetricX => PerturbationConfig::asymmetric_x(mu),
            // Algorithms never expect the remaining modes.
            _ => unreachable!(),
        };
        Self {
            algorithm,
            eta,
            perturbation,
            anchor_period: 10_000,
            max_iters: 100_000,
            record_every: 100,
            seed: 0,
        }
    }

    pub fn with_anchor_period(mut self, period: u64) -> Self {
        self.anchor_period = period;
        self
    }

    pub fn with_max_iters(mut self, iters: u64) -> Self {
        self.max_iters = iters;
        self
    }

    pub fn with_record_every(mut self, every: u64) -> Self {
        self.record_every = every;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.eta.is_finite() || self.eta <= 0.0 {
            return Err(Error::InvalidInput("eta must be positive".into()));
        }
        self.perturbation.validate()?;
        if self.perturbation.mode() != self.algorithm.expected_mode() {
            return Err(Error::InvalidInput(format!(
                "{:?} expects perturbation mode {:?}, got {:?}",
                self.algorithm,
                self.algorithm.expected_mode(),
                self.perturbation.mode()
            )));
        }
        if self.max_iters == 0 || self.record_every == 0 {
            return Err(Error::InvalidInput(
                "max_iters and record_every must be positive".into(),
            ));
        }
        if self.algorithm.is_anchored()
            && (self.anchor_period == 0 || self.anchor_period > self.max_iters)
        {
            return Err(Error::InvalidInput(
                "anchored runs need 1 <= anchor_period <= max_iters".into(),
            ));
        }
        Ok(())
    }

    fn mu(&self) -> f64 {
        self.perturbation.mu_x().max(self.perturbation.mu_y())
    }
}

/// One thinned trajectory sample.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRecord {
    /// Iterations completed when the sample was taken.
    pub t: u64,
    pub x: SimplexPoint,
    pub y: SimplexPoint,
    pub nash_conv: f64,
    pub dist_to_x_star: Option<f64>,
    pub dist_to_perturbed: Option<f64>,
}

/// Thinned iterate history of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    records: Vec<TrajectoryRecord>,
    /// Iteration at which the run hit non-finite values, if it did.
    aborted_at: Option<u64>,
}

impl Trajectory {
    pub fn records(&self) -> &[TrajectoryRecord] {
        &self.records
    }

    pub fn final_record(&self) -> &TrajectoryRecord {
        self.records.last().expect("trajectory records t = 0")
    }

    /// `Some(t)` when the run aborted on non-finite iterates; the records
    /// then form the diagnostic prefix up to the failure.
    pub fn aborted_at(&self) -> Option<u64> {
        self.aborted_at
    }

    pub fn is_complete(&self) -> bool {
        self.aborted_at.is_none()
    }
}

/// Reference points against which trajectory distances are measured.
#[derive(Debug, Clone, Default)]
pub struct References {
    /// A minimax strategy of the unperturbed game.
    pub x_star: Option<SimplexPoint>,
    /// An equilibrium of the perturbed game (the y part must be the nearest
    /// maximin strategy when the set is not a singleton).
    pub perturbed: Option<StrategyProfile>,
}

/// Plain alternating projected GDA step.
pub fn gda_step(
    game: &MatrixGame,
    x: &SimplexPoint,
    y: &SimplexPoint,
    eta: f64,
) -> (SimplexPoint, SimplexPoint) {
    let grad_x = game.a_y(y.as_slice());
    let x_next: Vec<f64> = x
        .as_slice()
        .iter()
        .zip(&grad_x)
        .map(|(xi, g)| xi - eta * g)
        .collect();
    let x_next = project_simplex_unchecked(&x_next);

    let grad_y = game.at_x(x_next.as_slice());
    let y_next: Vec<f64> = y
        .as_slice()
        .iter()
        .zip(&grad_y)
        .map(|(yi, g)| yi + eta * g)
        .collect();
    (x_next, project_simplex_unchecked(&y_next))
}

/// Asymmetrically perturbed step: the descent gradient gains `mu * x`, the
/// ascent step is unperturbed and uses the fresh `x`.
pub fn asymp_gda_step(
    game: &MatrixGame,
    x: &SimplexPoint,
    y: &SimplexPoint,
    eta: f64,
    mu: f64,
) -> (SimplexPoint, SimplexPoint) {
    let grad_x = game.a_y(y.as_slice());
    let x_next: Vec<f64> = x
        .as_slice()
        .iter()
        .zip(&grad_x)
        .map(|(xi, g)| xi - eta * (g + mu * xi))
        .collect();
    let x_next = project_simplex_unchecked(&x_next);

    let grad_y = game.at_x(x_next.as_slice());
    let y_next: Vec<f64> = y
        .as_slice()
        .iter()
        .zip(&grad_y)
        .map(|(yi, g)| yi + eta * g)
        .collect();
    (x_next, project_simplex_unchecked(&y_next))
}

/// Symmetrically perturbed step: both gradients carry the quadratic pull.
pub fn symp_gda_step(
    game: &MatrixGame,
    x: &SimplexPoint,
    y: &SimplexPoint,
    eta: f64,
    mu: f64,
) -> (SimplexPoint, SimplexPoint) {
    let grad_x = game.a_y(y.as_slice());
    let x_next: Vec<f64> = x
        .as_slice()
        .iter()
        .zip(&grad_x)
        .map(|(xi, g)| xi - eta * (g + mu * xi))
        .collect();
    let x_next = project_simplex_unchecked(&x_next);

    let grad_y = game.at_x(x_next.as_slice());
    let y_next: Vec<f64> = y
        .as_slice()
        .iter()
        .zip(grad_y.iter().zip(y.as_slice()))
        .map(|(yi, (g, y_cur))| yi + eta * (g - mu * y_cur))
        .collect();
    (x_next, project_simplex_unchecked(&y_next))
}

/// Anchored asymmetric step: the pull is toward `sigma` instead of the origin.
pub fn ada_asymp_gda_step(
    game: &MatrixGame,
    x: &SimplexPoint,
    y: &SimplexPoint,
    sigma: &SimplexPoint,
    eta: f64,
    mu: f64,
) -> (SimplexPoint, SimplexPoint) {
    let grad_x = game.a_y(y.as_slice());
    let x_next: Vec<f64> = x
        .as_slice()
        .iter()
        .zip(grad_x.iter().zip(sigma.as_slice()))
        .map(|(xi, (g, s))| xi - eta * (g + mu * (xi - s)))
        .collect();
    let x_next = project_simplex_unchecked(&x_next);

    let grad_y = game.at_x(x_next.as_slice());
    let y_next: Vec<f64> = y
        .as_slice()
        .iter()
        .zip(&grad_y)
        .map(|(yi, g)| yi + eta * g)
        .collect();
    (x_next, project_simplex_unchecked(&y_next))
}

/// Anchored symmetric step: both players pull toward their own anchors.
pub fn ada_symp_gda_step(
    game: &MatrixGame,
    x: &SimplexPoint,
    y: &SimplexPoint,
    sigma_x: &SimplexPoint,
    sigma_y: &SimplexPoint,
    eta: f64,
    mu: f64,
) -> (SimplexPoint, SimplexPoint) {
    let grad_x = game.a_y(y.as_slice());
    let x_next: Vec<f64> = x
        .as_slice()
        .iter()
        .zip(grad_x.iter().zip(sigma_x.as_slice()))
        .map(|(xi, (g, s))| xi - eta * (g + mu * (xi - s)))
        .collect();
    let x_next = project_simplex_unchecked(&x_next);

    let grad_y = game.at_x(x_next.as_slice());
    let y_next: Vec<f64> = y
        .as_slice()
        .iter()
        .zip(
            grad_y
                .iter()
                .zip(y.as_slice().iter().zip(sigma_y.as_slice())),
        )
        .map(|(yi, (g, (y_cur, s)))| yi + eta * (g - mu * (y_cur - s)))
        .collect();
    (x_next, project_simplex_unchecked(&y_next))
}

/// Optimistic GDA state: strategies plus the previous gradients.
#[derive(Debug, Clone, PartialEq)]
pub struct OgdaState {
    pub x: SimplexPoint,
    pub y: SimplexPoint,
    prev_grad_x: Vec<f64>,
    prev_grad_y: Vec<f64>,
}

impl OgdaState {
    /// Fresh state with zero gradient history.
    pub fn new(x: SimplexPoint, y: SimplexPoint) -> Self {
        let (m, n) = (x.dim(), y.dim());
        Self {
            x,
            y,
            prev_grad_x: vec![0.0; m],
            prev_grad_y: vec![0.0; n],
        }
    }
}

/// Past-gradient optimistic step `x' = proj(x - eta (2 g_t - g_{t-1}))`,
/// alternating like the other variants.
pub fn ogda_step(game: &MatrixGame, state: &OgdaState, eta: f64) -> OgdaState {
    let grad_x = game.a_y(state.y.as_slice());
    let x_next: Vec<f64> = state
        .x
        .as_slice()
        .iter()
        .zip(grad_x.iter().zip(&state.prev_grad_x))
        .map(|(xi, (g, gp))| xi - eta * (2.0 * g - gp))
        .collect();
    let x_next = project_simplex_unchecked(&x_next);

    let grad_y = game.at_x(x_next.as_slice());
    let y_next: Vec<f64> = state
        .y
        .as_slice()
        .iter()
        .zip(grad_y.iter().zip(&state.prev_grad_y))
        .map(|(yi, (g, gp))| yi + eta * (2.0 * g - gp))
        .collect();
    let y_next = project_simplex_unchecked(&y_next);

    OgdaState {
        x: x_next,
        y: y_next,
        prev_grad_x: grad_x,
        prev_grad_y: grad_y,
    }
}

/// Anchor epoch index: `k(t) = floor((t - 1) / period) + 1`.
pub fn anchor_epoch(t: u64, period: u64) -> u64 {
    (t - 1) / period + 1
}

/// Step-size check against the computable convergence bound
/// `mu / (2 (mu^2 + ||A||^2))`. The second branch of the theoretical bound
/// involves a non-constructive constant and is not evaluated.
pub fn check_step_size(game: &MatrixGame, mu: f64, eta: f64) -> (bool, f64) {
    assert!(mu > 0.0, "bound is defined for positive mu");
    let norm = game.spectral_norm();
    let bound = mu / (2.0 * (mu * mu + norm * norm));
    (eta < bound, bound)
}

/// Runs the configured dynamics and records a thinned trajectory.
///
/// `initial` falls back to a profile drawn uniformly from the simplices with
/// the config seed. Distances to the reference points are recorded whenever
/// the references are supplied. A sample is taken before the first step, at
/// every `record_every`-th iteration, and at the final one; if iterates stop
/// being finite the run aborts and the trajectory keeps the prefix.
pub fn run_solver(
    game: &MatrixGame,
    cfg: &SolverConfig,
    initial: Option<StrategyProfile>,
    refs: &References,
) -> Result<Trajectory> {
    cfg.validate()?;
    // Gradients are bounded by the matrix norm on the simplices, so the
    // update stays finite as long as this product does.
    if !(cfg.eta * (game.spectral_norm() + cfg.mu() + 1.0)).is_finite() {
        return Err(Error::InvalidInput(
            "eta is large enough to overflow the update".into(),
        ));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cfg.seed);
    let z0 = initial.unwrap_or_else(|| {
        StrategyProfile::new(
            SimplexPoint::sample_uniform(game.rows(), &mut rng),
            SimplexPoint::sample_uniform(game.cols(), &mut rng),
        )
    });
    if z0.x.dim() != game.rows() || z0.y.dim() != game.cols() {
        return Err(Error::DimensionMismatch(
            "initial profile does not fit the game".into(),
        ));
    }

    let mu = cfg.mu();
    let eta = cfg.eta;
    let mut x = z0.x;
    let mut y = z0.y;
    let mut ogda =
        matches!(cfg.algorithm, Algorithm::Ogda).then(|| OgdaState::new(x.clone(), y.clone()));
    let mut sigma_x = x.clone();
    let mut sigma_y = y.clone();

    let mut records = Vec::new();
    let mut push_record = |t: u64, x: &SimplexPoint, y: &SimplexPoint| {
        let z = StrategyProfile::new(x.clone(), y.clone());
        let nc = nash_conv(game, &z).expect("dimensions verified");
        records.push(TrajectoryRecord {
            t,
            x: x.clone(),
            y: y.clone(),
            nash_conv: nc,
            dist_to_x_star: refs.x_star.as_ref().map(|xs| x.distance(xs)),
            dist_to_perturbed: refs.perturbed.as_ref().map(|zp| z.distance(zp)),
        });
    };
    push_record(0, &x, &y);

    for t in 1..=cfg.max_iters {
        if cfg.algorithm.is_anchored() && (t - 1) % cfg.anchor_period == 0 {
            sigma_x = x.clone();
            sigma_y = y.clone();
        }
        match cfg.algorithm {
            Algorithm::Gda => {
                (x, y) = gda_step(game, &x, &y, eta);
            }
            Algorithm::SympGda => {
                (x, y) = symp_gda_step(game, &x, &y, eta, mu);
            }
            Algorithm::AsympGda => {
                (x, y) = asymp_gda_step(game, &x, &y, eta, mu);
            }
            Algorithm::AdaAsympGda => {
                (x, y) = ada_asymp_gda_step(game, &x, &y, &sigma_x, eta, mu);
            }
            Algorithm::AdaSympGda => {
                (x, y) = ada_symp_gda_step(game, &x, &y, &sigma_x, &sigma_y, eta, mu);
            }
            Algorithm::Ogda => {
                let state = ogda.take().expect("ogda state initialized");
                let next = ogda_step(game, &state, eta);
                x = next.x.clone();
                y = next.y.clone();
                ogda = Some(next);
            }
        }
        if t % cfg.record_every == 0 || t == cfg.max_iters {
            let finite = x
                .as_slice()
                .iter()
                .chain(y.as_slice())
                .all(|v| v.is_finite());
            if !finite {
                return Ok(Trajectory {
                    records,
                    aborted_at: Some(t),
                });
            }
            push_record(t, &x, &y);
        }
    }

    Ok(Trajectory {
        records,
        aborted_at: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brps() -> MatrixGame {
        MatrixGame::from_rows(&[
            vec![0.0, 1.0, -3.0],
            vec![-1.0, 0.0, 1.0],
            vec![3.0, -1.0, 0.0],
        ])
        .unwrap()
    }

    fn uniform3() -> SimplexPoint {
        SimplexPoint::uniform(3)
    }

    #[test]
    fn asymp_step_from_uniform_matches_hand_arithmetic() {
        // A y = (-2/3, 0, 2/3) at uniform y, so the pre-projection vector is
        // 1/3 - 0.01 * (A y + x)_i = (0.336667, 0.330000, 0.323333); its sum
        // falls short of 1 by eta * mu = 0.01, which the projection spreads
        // back as 0.01 / 3 per coordinate.
        let game = brps();

        let grad: Vec<f64> = game
            .a_y(uniform3().as_slice())
            .iter()
            .map(|g| 1.0 / 3.0 - 0.01 * (g + 1.0 / 3.0))
            .collect();
        let pre = [0.336_666_666_666_666_7, 0.33, 0.323_333_333_333_333_3];
        for (got, want) in grad.iter().zip(&pre) {
            assert!((got - want).abs() < 1e-15, "pre-projection {grad:?}");
        }

        let (x1, _) = asymp_gda_step(&game, &uniform3(), &uniform3(), 0.01, 1.0);
        let want = [0.34, 1.0 / 3.0, 0.32666666666666666];
        for (got, want) in x1.as_slice().iter().zip(&want) {
            assert!((got - want).abs() < 1e-12, "projected {:?}", x1.as_slice());
        }
    }

    #[test]
    fn y_update_uses_fresh_x() {
        // Recomputing the ascent step with the stale x changes the iterate;
        // this pins the alternating order.
        let game = brps();
        let x0 = uniform3();
        let y0 = uniform3();
        let (x1, y1) = asymp_gda_step(&game, &x0, &y0, 0.01, 1.0);

        let grad_stale = game.at_x(x0.as_slice());
        let y_stale: Vec<f64> = y0
            .as_slice()
            .iter()
            .zip(&grad_stale)
            .map(|(yi, g)| yi + 0.01 * g)
            .collect();
        let y_stale = project_simplex_unchecked(&y_stale);

        let grad_fresh = game.at_x(x1.as_slice());
        let y_fresh: Vec<f64> = y0
            .as_slice()
            .iter()
            .zip(&grad_fresh)
            .map(|(yi, g)| yi + 0.01 * g)
            .collect();
        let y_fresh = project_simplex_unchecked(&y_fresh);

        assert_eq!(y1.as_slice(), y_fresh.as_slice());
        assert_ne!(y1.as_slice(), y_stale.as_slice());
    }

    #[test]
    fn zero_mu_reductions_are_exact() {
        let game = brps();
        let x = SimplexPoint::new(vec![0.5, 0.3, 0.2]).unwrap();
        let y = SimplexPoint::new(vec![0.1, 0.2, 0.7]).unwrap();
        let plain = gda_step(&game, &x, &y, 0.01);
        let asym = asymp_gda_step(&game, &x, &y, 0.01, 0.0);
        let sym = symp_gda_step(&game, &x, &y, 0.01, 0.0);
        assert_eq!(plain, asym);
        assert_eq!(plain, sym);
    }

    #[test]
    fn shared_x_update_between_perturbed_variants() {
        let game = brps();
        let (xa, _) = asymp_gda_step(&game, &uniform3(), &uniform3(), 0.01, 1.0);
        let (xs, _) = symp_gda_step(&game, &uniform3(), &uniform3(), 0.01, 1.0);
        assert_eq!(xa.as_slice(), xs.as_slice());
    }

    #[test]
    fn anchored_step_reduces_to_plain_variants() {
        let game = brps();
        let x = SimplexPoint::new(vec![0.5, 0.3, 0.2]).unwrap();
        let y = SimplexPoint::new(vec![0.1, 0.2, 0.7]).unwrap();
        // Anchor equal to the current strategy cancels the pull.
        let (xa, ya) = ada_asymp_gda_step(&game, &x, &y, &x, 0.01, 5.0);
        let (xp, yp) = gda_step(&game, &x, &y, 0.01);
        assert!(xa
            .as_slice()
            .iter()
            .zip(xp.as_slice())
            .all(|(a, b)| (a - b).abs() < 1e-15));
        assert!(ya
            .as_slice()
            .iter()
            .zip(yp.as_slice())
            .all(|(a, b)| (a - b).abs() < 1e-15));
    }

    #[test]
    fn first_ogda_step_is_gda_with_doubled_rate() {
        let game = brps();
        let state = OgdaState::new(uniform3(), uniform3());
        let next = ogda_step(&game, &state, 0.01);
        let (x2, y2) = gda_step(&game, &uniform3(), &uniform3(), 0.02);
        assert_eq!(next.x.as_slice(), x2.as_slice());
        assert_eq!(next.y.as_slice(), y2.as_slice());
    }

    #[test]
    fn ogda_with_constant_gradients_tracks_gda() {
        // Once the gradient history matches the current gradient, the
        // optimistic combination 2g - g_prev collapses to g.
        let game = MatrixGame::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let x = SimplexPoint::new(vec![0.7, 0.3]).unwrap();
        let y = SimplexPoint::new(vec![0.4, 0.6]).unwrap();
        let s1 = ogda_step(&game, &OgdaState::new(x.clone(), y.clone()), 0.01);
        let s2 = ogda_step(&game, &s1, 0.01);
        let (gx, gy) = gda_step(&game, &s1.x, &s1.y, 0.01);
        assert_eq!(s2.x.as_slice(), gx.as_slice());
        assert_eq!(s2.y.as_slice(), gy.as_slice());
    }

    #[test]
    fn anchor_epoch_schedule() {
        let epochs: Vec<u64> = (1..=7).map(|t| anchor_epoch(t, 3)).collect();
        assert_eq!(epochs, vec![1, 1, 1, 2, 2, 2, 3]);
    }

    #[test]
    fn anchor_values_follow_the_reset_schedule() {
        // With period 3 over 7 iterations the anchors must be x^1, x^4, x^7
        // (1-based iterates, x^1 the initial point). Replay the loop by hand
        // and compare against the solver's trajectory.
        let game = brps();
        let cfg = SolverConfig::new(Algorithm::AdaAsympGda, 0.01, 5.0)
            .with_anchor_period(3)
            .with_max_iters(7)
            .with_record_every(1);
        let traj = run_solver(
            &game,
            &cfg,
            Some(profile_uniform(&game)),
            &References::default(),
        )
        .unwrap();

        let mut x = SimplexPoint::uniform(3);
        let mut y = SimplexPoint::uniform(3);
        let mut sigma = x.clone();
        for t in 1..=7u64 {
            if (t - 1) % 3 == 0 {
                sigma = x.clone();
            }
            let expected_anchor_iterate = match t {
                1..=3 => 0,
                4..=6 => 3,
                _ => 6,
            };
            assert_eq!(
                sigma.as_slice(),
                traj.records()[expected_anchor_iterate].x.as_slice(),
                "anchor at t = {t}"
            );
            (x, y) = ada_asymp_gda_step(&game, &x, &y, &sigma, 0.01, 5.0);
            assert_eq!(traj.records()[t as usize].x.as_slice(), x.as_slice());
        }
    }

    fn profile_uniform(game: &MatrixGame) -> StrategyProfile {
        StrategyProfile::uniform(game)
    }

    #[test]
    fn step_size_check_on_brps() {
        let game = brps();
        let (valid, bound) = check_step_size(&game, 1.0, 0.01);
        assert!((bound - 1.0 / 24.0).abs() < 1e-10, "bound {bound}");
        assert!(valid);
        let (valid, _) = check_step_size(&game, 1.0, 0.05);
        assert!(!valid);
    }

    #[test]
    fn step_size_bound_is_monotone_for_large_mu() {
        let game = brps();
        let mut prev = f64::INFINITY;
        for mu in [4.0, 8.0, 16.0, 32.0, 64.0] {
            let (_, bound) = check_step_size(&game, mu, 0.01);
            assert!(bound < prev);
            prev = bound;
        }
    }

    #[test]
    fn step_size_bound_for_zero_game() {
        let game = MatrixGame::from_rows(&[vec![0.0, 0.0], vec![0.0, 0.0]]).unwrap();
        let (_, bound) = check_step_size(&game, 1.0, 0.01);
        assert!((bound - 0.5).abs() < 1e-12);
    }

    #[test]
    fn identical_seeds_give_bit_identical_trajectories() {
        let game = brps();
        let cfg = SolverConfig::new(Algorithm::AsympGda, 0.01, 1.0)
            .with_max_iters(500)
            .with_record_every(50)
            .with_seed(42);
        let a = run_solver(&game, &cfg, None, &References::default()).unwrap();
        let b = run_solver(&game, &cfg, None, &References::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn config_validation_rejects_mismatched_modes() {
        let mut cfg = SolverConfig::new(Algorithm::Gda, 0.01, 0.0);
        cfg.perturbation = PerturbationConfig::symmetric(1.0);
        assert!(cfg.validate().is_err());

        let cfg = SolverConfig::new(Algorithm::AdaAsympGda, 0.01, 5.0)
            .with_max_iters(10)
            .with_anchor_period(20);
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn trajectory_timestamps_strictly_increase() {
        let game = brps();
        let cfg = SolverConfig::new(Algorithm::Gda, 0.01, 0.0)
            .with_max_iters(103)
            .with_record_every(25);
        let traj = run_solver(&game, &cfg, None, &References::default()).unwrap();
        let ts: Vec<u64> = traj.records().iter().map(|r| r.t).collect();
        assert_eq!(ts, vec![0, 25, 50, 75, 100, 103]);
    }
}
