//! Shared fixtures for the integration suites.
#![allow(dead_code)]

use zerosum::efg::{BehavioralStrategy, ExtensiveGame, Player};
use zerosum::simplex::SimplexPoint;
use zerosum::MatrixGame;

/// Biased matching pennies.
pub fn bmp() -> MatrixGame {
    MatrixGame::from_rows(&[vec![1.0 / 3.0, -2.0 / 3.0], vec![-2.0 / 3.0, 1.0]]).unwrap()
}

/// Biased rock-paper-scissors.
pub fn brps() -> MatrixGame {
    MatrixGame::from_rows(&[
        vec![0.0, 1.0, -3.0],
        vec![-1.0, 0.0, 1.0],
        vec![3.0, -1.0, 0.0],
    ])
    .unwrap()
}

/// Five-action game with multiple equilibria.
pub fn mne() -> MatrixGame {
    MatrixGame::from_rows(&[
        vec![0.0, -1.0, 1.0, 0.0, 0.0],
        vec![1.0, 0.0, -1.0, 0.0, 0.0],
        vec![-1.0, 1.0, 0.0, 0.0, 0.0],
        vec![-1.0, 1.0, 0.0, 2.0, -1.0],
        vec![-1.0, 1.0, 0.0, -1.0, 2.0],
    ])
    .unwrap()
}

pub fn brps_minimax() -> SimplexPoint {
    SimplexPoint::new(vec![0.2, 0.6, 0.2]).unwrap()
}

fn strategy_from_map(
    game: &ExtensiveGame,
    player: Player,
    entries: &[(&str, f64)],
) -> BehavioralStrategy {
    let mut strat = BehavioralStrategy::uniform(game, player);
    for (key, p_second) in entries {
        let idx = game
            .infosets(player)
            .iter()
            .position(|s| s.key == *key)
            .unwrap_or_else(|| panic!("no infoset {key}"));
        strat.set_probs(
            idx,
            SimplexPoint::new(vec![1.0 - p_second, *p_second]).unwrap(),
        );
    }
    strat
}

/// One member of Kuhn poker's equilibrium family for the first mover,
/// parameterized by the jack bluffing frequency `gamma` in [0, 1/3]:
/// bet K three times as often, never bet Q, and call a check-raise with Q
/// at `gamma + 1/3`.
pub fn kuhn_equilibrium_x(game: &ExtensiveGame, gamma: f64) -> BehavioralStrategy {
    strategy_from_map(
        game,
        Player::X,
        &[
            ("J", gamma),
            ("Q", 0.0),
            ("K", 3.0 * gamma),
            ("Jcb", 0.0),
            ("Qcb", gamma + 1.0 / 3.0),
            ("Kcb", 1.0),
        ],
    )
}

/// The second mover's unique equilibrium strategy in Kuhn poker.
pub fn kuhn_equilibrium_y(game: &ExtensiveGame) -> BehavioralStrategy {
    strategy_from_map(
        game,
        Player::Y,
        &[
            ("Jc", 1.0 / 3.0),
            ("Qc", 0.0),
            ("Kc", 1.0),
            ("Jb", 0.0),
            ("Qb", 1.0 / 3.0),
            ("Kb", 1.0),
        ],
    )
}

/// Game value of Kuhn poker for player Y (the second mover).
pub const KUHN_VALUE_Y: f64 = 1.0 / 18.0;
