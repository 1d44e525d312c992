//! Counterfactual regret minimization on extensive-form games.
//!
//! Implements vanilla CFR, CFR+, and the payoff-perturbed CFR+ variants.
//! The perturbed variants penalize one or both players with a quadratic
//! pull toward the origin (or toward a periodically reset anchor): each
//! regret update subtracts the regret of that penalty's linearization,
//! `mu * (sigma_a - <sigma, sigma>)` per infoset, so strategy-weighted
//! regrets keep summing to zero and the perturbed equilibrium is a fixed
//! point of the dynamics. Updates alternate: the full X block (strategy,
//! regret update) runs before the Y block, and the Y traversal sees X's
//! refreshed strategy.

use crate::efg::{BehavioralStrategy, ExtensiveGame, GameNode, Player};
use crate::simplex::SimplexPoint;
use crate::{Error, Result};

/// Regret-update rule selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfrVariant {
    /// No clipping; strategies still use the positive part of the regrets.
    Cfr,
    /// Cumulative regrets clipped at zero every iteration.
    CfrPlus,
    /// CFR+ with the perturbation term on both players.
    SympCfrPlus,
    /// CFR+ with the perturbation term on the configured player only.
    AsympCfrPlus,
    /// Anchored asymmetric variant.
    AdaAsympCfrPlus,
    /// Anchored symmetric variant.
    AdaSympCfrPlus,
}

impl CfrVariant {
    fn is_anchored(&self) -> bool {
        matches!(
            self,
            CfrVariant::AdaAsympCfrPlus | CfrVariant::AdaSympCfrPlus
        )
    }

    fn clips_regrets(&self) -> bool {
        !matches!(self, CfrVariant::Cfr)
    }

    /// True when `player`'s regret update carries the perturbation term.
    fn perturbs(&self, player: Player, perturbed_player: Player) -> bool {
        match self {
            CfrVariant::Cfr | CfrVariant::CfrPlus => false,
            CfrVariant::SympCfrPlus | CfrVariant::AdaSympCfrPlus => true,
            CfrVariant::AsympCfrPlus | CfrVariant::AdaAsympCfrPlus => player == perturbed_player,
        }
    }
}

/// Run parameters for a CFR family solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CfrConfig {
    pub variant: CfrVariant,
    /// Perturbation strength; ignored by the unperturbed variants.
    pub mu: f64,
    /// Anchor reset period for the anchored variants.
    pub anchor_period: u64,
    /// Total iterations T.
    pub iterations: u64,
    /// Evaluation thinning.
    pub eval_every: u64,
    /// Which player carries the asymmetric perturbation. The update rule is
    /// stated for one player; the first mover is the default reading.
    pub perturbed_player: Player,
}

impl CfrConfig {
    /// Defaults per variant: mu = 0.01 for the plain perturbed updates,
    /// mu = 0.05 with a 2500-iteration anchor period for the anchored ones.
    pub fn new(variant: CfrVariant) -> Self {
        let (mu, anchor_period) = match variant {
            CfrVariant::Cfr | CfrVariant::CfrPlus => (0.0, 2_500),
            CfrVariant::SympCfrPlus | CfrVariant::AsympCfrPlus => (0.01, 2_500),
            CfrVariant::AdaAsympCfrPlus | CfrVariant::AdaSympCfrPlus => (0.05, 2_500),
        };
        Self {
            variant,
            mu,
            anchor_period,
            iterations: 10_000,
            eval_every: 100,
            perturbed_player: Player::X,
        }
    }

    pub fn with_mu(mut self, mu: f64) -> Self {
        self.mu = mu;
        self
    }

    pub fn with_iterations(mut self, iterations: u64) -> Self {
        self.iterations = iterations;
        self
    }

    pub fn with_eval_every(mut self, eval_every: u64) -> Self {
        self.eval_every = eval_every;
        self
    }

    pub fn with_anchor_period(mut self, period: u64) -> Self {
        self.anchor_period = period;
        self
    }

    pub fn with_perturbed_player(mut self, player: Player) -> Self {
        self.perturbed_player = player;
        self
    }

    /// Zero strength is allowed on the perturbed variants: it reduces them
    /// to CFR+ bit-exactly, which the reduction tests rely on.
    pub fn validate(&self) -> Result<()> {
        if !self.mu.is_finite() || self.mu < 0.0 {
            return Err(Error::InvalidInput("mu must be finite and >= 0".into()));
        }
        if self.iterations == 0 || self.eval_every == 0 {
            return Err(Error::InvalidInput(
                "iterations and eval_every must be positive".into(),
            ));
        }
        if self.variant.is_anchored() && self.anchor_period == 0 {
            return Err(Error::InvalidInput("anchor_period must be >= 1".into()));
        }
        Ok(())
    }
}

/// Per-player cumulative tables, indexed by infoset then action.
#[derive(Debug, Clone, PartialEq)]
pub struct PlayerTables {
    regrets: Vec<Vec<f64>>,
    strategy_sums: Vec<Vec<f64>>,
    anchors: Vec<Vec<f64>>,
}

impl PlayerTables {
    fn new(game: &ExtensiveGame, player: Player) -> Self {
        let shapes: Vec<usize> = game
            .infosets(player)
            .iter()
            .map(|s| s.actions.len())
            .collect();
        let zeros: Vec<Vec<f64>> = shapes.iter().map(|&n| vec![0.0; n]).collect();
        // Anchors start at the uniform strategy, which is what the first
        // iteration plays from zero regrets.
        let anchors = shapes.iter().map(|&n| vec![1.0 / n as f64; n]).collect();
        Self {
            regrets: zeros.clone(),
            strategy_sums: zeros,
            anchors,
        }
    }

    pub fn regrets(&self) -> &[Vec<f64>] {
        &self.regrets
    }

    pub fn strategy_sums(&self) -> &[Vec<f64>] {
        &self.strategy_sums
    }

    fn current_strategy(&self, game: &ExtensiveGame, player: Player) -> BehavioralStrategy {
        let probs = self
            .regrets
            .iter()
            .map(|r| regret_matching_plus(r))
            .collect();
        BehavioralStrategy::new(game, player, probs).expect("tables match the game")
    }

    fn average_strategy(&self, game: &ExtensiveGame, player: Player) -> BehavioralStrategy {
        let probs = self
            .strategy_sums
            .iter()
            .map(|sums| {
                let total: f64 = sums.iter().sum();
                if total > 0.0 {
                    SimplexPoint::new_unchecked(sums.iter().map(|s| s / total).collect())
                } else {
                    SimplexPoint::uniform(sums.len())
                }
            })
            .collect();
        BehavioralStrategy::new(game, player, probs).expect("tables match the game")
    }
}

/// Cumulative regrets, strategy weights, and anchors for both players.
#[derive(Debug, Clone, PartialEq)]
pub struct RegretState {
    x: PlayerTables,
    y: PlayerTables,
    /// Next iteration number (1-based).
    t: u64,
    /// Anchor epochs completed.
    k: u64,
}

impl RegretState {
    pub fn new(game: &ExtensiveGame) -> Self {
        Self {
            x: PlayerTables::new(game, Player::X),
            y: PlayerTables::new(game, Player::Y),
            t: 1,
            k: 0,
        }
    }

    pub fn tables(&self, player: Player) -> &PlayerTables {
        match player {
            Player::X => &self.x,
            Player::Y => &self.y,
        }
    }

    /// Iterations completed so far.
    pub fn iterations_done(&self) -> u64 {
        self.t - 1
    }

    pub fn anchor_epochs(&self) -> u64 {
        self.k
    }

    #[cfg(test)]
    pub(crate) fn seed_regrets(&mut self, player: Player, infoset: usize, values: Vec<f64>) {
        match player {
            Player::X => self.x.regrets[infoset] = values,
            Player::Y => self.y.regrets[infoset] = values,
        }
    }

    pub fn current_strategies(
        &self,
        game: &ExtensiveGame,
    ) -> (BehavioralStrategy, BehavioralStrategy) {
        (
            self.x.current_strategy(game, Player::X),
            self.y.current_strategy(game, Player::Y),
        )
    }

    pub fn average_strategies(
        &self,
        game: &ExtensiveGame,
    ) -> (BehavioralStrategy, BehavioralStrategy) {
        (
            self.x.average_strategy(game, Player::X),
            self.y.average_strategy(game, Player::Y),
        )
    }
}

/// Regret matching on the positive part: `[r]+ / ||[r]+||_1`, or uniform
/// when no regret is positive (the normalization is undefined there and the
/// zero-regret start needs a strategy).
pub fn regret_matching_plus(regrets: &[f64]) -> SimplexPoint {
    debug_assert!(regrets.iter().all(|r| r.is_finite()));
    let total: f64 = regrets.iter().map(|r| r.max(0.0)).sum();
    if total > 0.0 {
        SimplexPoint::new_unchecked(regrets.iter().map(|r| r.max(0.0) / total).collect())
    } else {
        SimplexPoint::uniform(regrets.len())
    }
}

/// Immediate counterfactual regrets of `player` at the given profile:
/// `r(I, a) = v(I, a) - v(I)` with opponent-and-chance reach weighting,
/// from one exact full-tree traversal.
pub fn immediate_counterfactual_regret(
    game: &ExtensiveGame,
    strat_x: &BehavioralStrategy,
    strat_y: &BehavioralStrategy,
    player: Player,
) -> Vec<Vec<f64>> {
    cf_walk(game, strat_x, strat_y, player).0
}

/// Full-tree traversal returning per-infoset immediate regrets and the
/// player's own reach mass per infoset.
fn cf_walk(
    game: &ExtensiveGame,
    strat_x: &BehavioralStrategy,
    strat_y: &BehavioralStrategy,
    player: Player,
) -> (Vec<Vec<f64>>, Vec<f64>) {
    let sets = game.infosets(player);
    let mut regrets: Vec<Vec<f64>> = sets.iter().map(|s| vec![0.0; s.actions.len()]).collect();
    let mut own_reach = vec![0.0; sets.len()];
    let sign = match player {
        Player::X => -1.0,
        Player::Y => 1.0,
    };

    #[allow(clippy::too_many_arguments)]
    fn recurse(
        game: &ExtensiveGame,
        strat_x: &BehavioralStrategy,
        strat_y: &BehavioralStrategy,
        player: Player,
        sign: f64,
        id: usize,
        p_own: f64,
        p_ext: f64,
        regrets: &mut [Vec<f64>],
        own_reach: &mut [f64],
    ) -> f64 {
        match game.node(id) {
            GameNode::Terminal { utility_y } => sign * utility_y,
            GameNode::Chance {
                probs, children, ..
            } => probs
                .iter()
                .zip(children)
                .map(|(p, &c)| {
                    p * recurse(
                        game,
                        strat_x,
                        strat_y,
                        player,
                        sign,
                        c,
                        p_own,
                        p_ext * p,
                        regrets,
                        own_reach,
                    )
                })
                .sum(),
            GameNode::Decision {
                player: owner,
                infoset,
                children,
            } => {
                let strat = match owner {
                    Player::X => strat_x,
                    Player::Y => strat_y,
                };
                let probs = strat.probs(*infoset);
                if *owner == player {
                    own_reach[*infoset] += p_own;
                    let mut action_values = Vec::with_capacity(children.len());
                    let mut value = 0.0;
                    for (a, &c) in children.iter().enumerate() {
                        let v = recurse(
                            game,
                            strat_x,
                            strat_y,
                            player,
                            sign,
                            c,
                            p_own * probs[a],
                            p_ext,
                            regrets,
                            own_reach,
                        );
                        action_values.push(v);
                        value += probs[a] * v;
                    }
                    for (a, v) in action_values.iter().enumerate() {
                        regrets[*infoset][a] += p_ext * (v - value);
                    }
                    value
                } else {
                    children
                        .iter()
                        .enumerate()
                        .map(|(a, &c)| {
                            probs[a]
                                * recurse(
                                    game,
                                    strat_x,
                                    strat_y,
                                    player,
                                    sign,
                                    c,
                                    p_own,
                                    p_ext * probs[a],
                                    regrets,
                                    own_reach,
                                )
                        })
                        .sum()
                }
            }
        }
    }

    recurse(
        game,
        strat_x,
        strat_y,
        player,
        sign,
        game.root(),
        1.0,
        1.0,
        &mut regrets,
        &mut own_reach,
    );
    (regrets, own_reach)
}

/// One full iteration: X's strategy, regret update, and strategy-sum
/// accumulation, then the same for Y against the refreshed X strategy.
/// Anchors reset at the start of iterations 1, 1 + period, 1 + 2 period, ...
pub fn cfr_iteration(game: &ExtensiveGame, state: &mut RegretState, cfg: &CfrConfig) -> Result<()> {
    cfg.validate()?;
    let t = state.t;

    if cfg.variant.is_anchored() && (t - 1).is_multiple_of(cfg.anchor_period) {
        let (x_now, y_now) = state.current_strategies(game);
        for (slot, i) in state.x.anchors.iter_mut().zip(0..) {
            *slot = x_now.probs(i).to_vec();
        }
        for (slot, i) in state.y.anchors.iter_mut().zip(0..) {
            *slot = y_now.probs(i).to_vec();
        }
        state.k += 1;
    }

    let x_t = state.x.current_strategy(game, Player::X);
    let y_t = state.y.current_strategy(game, Player::Y);

    let (r_x, own_x) = cf_walk(game, &x_t, &y_t, Player::X);
    update_tables(&mut state.x, &x_t, &r_x, &own_x, Player::X, t, cfg);

    let x_fresh = state.x.current_strategy(game, Player::X);
    let (r_y, own_y) = cf_walk(game, &x_fresh, &y_t, Player::Y);
    update_tables(&mut state.y, &y_t, &r_y, &own_y, Player::Y, t, cfg);

    state.t = t + 1;
    if !state
        .x
        .regrets
        .iter()
        .chain(&state.y.regrets)
        .flatten()
        .all(|r| r.is_finite())
    {
        return Err(Error::NonFinite { iteration: t });
    }
    Ok(())
}

fn update_tables(
    tables: &mut PlayerTables,
    played: &BehavioralStrategy,
    immediate: &[Vec<f64>],
    own_reach: &[f64],
    player: Player,
    t: u64,
    cfg: &CfrConfig,
) {
    let perturb = cfg.variant.perturbs(player, cfg.perturbed_player);
    let anchored = cfg.variant.is_anchored();
    for (i, regs) in tables.regrets.iter_mut().enumerate() {
        let strat = played.probs(i);
        // The quadratic penalty enters as the regret of its linearization:
        // the pull g is mu * sigma (or mu * (sigma - anchor)), and action a
        // is charged g_a minus the strategy-weighted average <sigma, g>.
        // The averaged component keeps strategy-weighted regrets summing to
        // zero, so the perturbed equilibrium is a fixed point of the update.
        let pull: Vec<f64> = if perturb {
            if anchored {
                strat
                    .as_slice()
                    .iter()
                    .zip(&tables.anchors[i])
                    .map(|(s, anchor)| cfg.mu * (s - anchor))
                    .collect()
            } else {
                strat.as_slice().iter().map(|s| cfg.mu * s).collect()
            }
        } else {
            vec![0.0; regs.len()]
        };
        let average_pull: f64 = strat.as_slice().iter().zip(&pull).map(|(s, g)| s * g).sum();
        for (a, r) in regs.iter_mut().enumerate() {
            let next = *r + immediate[i][a] - (pull[a] - average_pull);
            *r = if cfg.variant.clips_regrets() {
                next.max(0.0)
            } else {
                next
            };
        }
        // Linear averaging: iteration t contributes with weight t.
        for (a, s) in tables.strategy_sums[i].iter_mut().enumerate() {
            *s += t as f64 * own_reach[i] * strat[a];
        }
    }
}

/// One evaluation row of a CFR run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CfrEval {
    /// Iterations completed.
    pub t: u64,
    /// NashConv of the current (last-iterate) strategies.
    pub nashconv_last: f64,
    /// NashConv of the normalized average strategies.
    pub nashconv_avg: f64,
}

/// A finished CFR run: the evaluation series plus the final state.
#[derive(Debug, Clone)]
pub struct CfrRun {
    pub evals: Vec<CfrEval>,
    pub state: RegretState,
}

/// Runs `cfg.iterations` iterations, evaluating NashConv of the last-iterate
/// and average strategies at t = 0, every `eval_every` iterations, and at
/// the end.
pub fn run_cfr(game: &ExtensiveGame, cfg: &CfrConfig) -> Result<CfrRun> {
    cfg.validate()?;
    let mut state = RegretState::new(game);
    let mut evals = Vec::new();

    let evaluate = |state: &RegretState, t: u64, evals: &mut Vec<CfrEval>| -> Result<()> {
        let (x_last, y_last) = state.current_strategies(game);
        let (x_avg, y_avg) = state.average_strategies(game);
        evals.push(CfrEval {
            t,
            nashconv_last: crate::efg::nash_conv_efg(game, &x_last, &y_last)?,
            nashconv_avg: crate::efg::nash_conv_efg(game, &x_avg, &y_avg)?,
        });
        Ok(())
    };

    evaluate(&state, 0, &mut evals)?;
    for t in 1..=cfg.iterations {
        cfr_iteration(game, &mut state, cfg)?;
        if t % cfg.eval_every == 0 || t == cfg.iterations {
            evaluate(&state, t, &mut evals)?;
        }
    }
    Ok(CfrRun { evals, state })
}
