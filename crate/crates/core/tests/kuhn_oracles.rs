//! Kuhn poker oracles: Monte-Carlo expected value, pure-strategy
//! best-response enumeration, and reach-probability conservation.

mod common;

use common::{kuhn_equilibrium_x, kuhn_equilibrium_y, KUHN_VALUE_Y};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zerosum::efg::{
    best_response, build_kuhn_poker, expected_value, nash_conv_efg, BehavioralStrategy,
    ExtensiveGame, GameNode, Player,
};
use zerosum::simplex::SimplexPoint;

fn random_strategy(
    game: &ExtensiveGame,
    player: Player,
    rng: &mut ChaCha8Rng,
) -> BehavioralStrategy {
    let probs = game
        .infosets(player)
        .iter()
        .map(|set| SimplexPoint::sample_uniform(set.actions.len(), rng))
        .collect();
    BehavioralStrategy::new(game, player, probs).unwrap()
}

/// Samples one playout and returns the terminal utility for Y.
fn sample_playout(
    game: &ExtensiveGame,
    sx: &BehavioralStrategy,
    sy: &BehavioralStrategy,
    rng: &mut ChaCha8Rng,
) -> f64 {
    let mut node = game.root();
    loop {
        match game.node(node) {
            GameNode::Terminal { utility_y } => return *utility_y,
            GameNode::Chance {
                probs, children, ..
            } => {
                let u: f64 = rng.random();
                let mut acc = 0.0;
                let mut next = *children.last().unwrap();
                for (p, &c) in probs.iter().zip(children) {
                    acc += p;
                    if u < acc {
                        next = c;
                        break;
                    }
                }
                node = next;
            }
            GameNode::Decision {
                player,
                infoset,
                children,
            } => {
                let strat = match player {
                    Player::X => sx,
                    Player::Y => sy,
                };
                let probs = strat.probs(*infoset);
                let u: f64 = rng.random();
                let mut acc = 0.0;
                let mut next = *children.last().unwrap();
                for (a, &c) in children.iter().enumerate() {
                    acc += probs[a];
                    if u < acc {
                        next = c;
                        break;
                    }
                }
                node = next;
            }
        }
    }
}

#[test]
fn expected_value_matches_monte_carlo() {
    let game = build_kuhn_poker();
    let sx = BehavioralStrategy::uniform(&game, Player::X);
    let sy = BehavioralStrategy::uniform(&game, Player::Y);
    let exact = expected_value(&game, &sx, &sy).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let n = 1_000_000usize;
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..n {
        let u = sample_playout(&game, &sx, &sy, &mut rng);
        sum += u;
        sum_sq += u * u;
    }
    let mean = sum / n as f64;
    let var = (sum_sq / n as f64 - mean * mean).max(0.0);
    let sigma = (var / n as f64).sqrt();
    assert!(
        (exact - mean).abs() <= 3.0 * sigma,
        "exact {exact} vs Monte-Carlo {mean} (3 sigma = {})",
        3.0 * sigma
    );
}

#[test]
fn always_checking_has_zero_value() {
    let game = build_kuhn_poker();
    let mut sx = BehavioralStrategy::uniform(&game, Player::X);
    let mut sy = BehavioralStrategy::uniform(&game, Player::Y);
    for (i, set) in game.infosets(Player::X).iter().enumerate() {
        if set.actions == ["check", "bet"] {
            sx.set_probs(i, SimplexPoint::new(vec![1.0, 0.0]).unwrap());
        }
    }
    for (i, set) in game.infosets(Player::Y).iter().enumerate() {
        if set.actions == ["check", "bet"] {
            sy.set_probs(i, SimplexPoint::new(vec![1.0, 0.0]).unwrap());
        }
    }
    // Only the six equally likely stake-1 showdowns are reached; wins and
    // losses pair off.
    assert_eq!(expected_value(&game, &sx, &sy).unwrap(), 0.0);
}

#[test]
fn best_response_vs_passive_opponent() {
    // Y checks whenever possible and folds to any bet: betting wins the
    // ante outright, so X's best response is worth +1 and bets J and Q
    // strictly. (Holding K, checking into the showdown ties the bet line at
    // +1; the tie-break picks the lower-indexed check action.)
    let game = build_kuhn_poker();
    let mut sy = BehavioralStrategy::uniform(&game, Player::Y);
    for (i, set) in game.infosets(Player::Y).iter().enumerate() {
        let passive = match set.actions.as_slice() {
            [a, _] if a == "check" => vec![1.0, 0.0],
            [a, _] if a == "fold" => vec![1.0, 0.0],
            other => panic!("unexpected actions {other:?}"),
        };
        sy.set_probs(i, SimplexPoint::new(passive).unwrap());
    }
    let (br, value) = best_response(&game, &sy, Player::X).unwrap();
    assert!(value > 0.0);
    assert!((value - 1.0).abs() < 1e-12);
    for (i, set) in game.infosets(Player::X).iter().enumerate() {
        match set.key.as_str() {
            "J" | "Q" => assert_eq!(br.probs(i).as_slice(), &[0.0, 1.0], "bet at {}", set.key),
            "K" => assert_eq!(br.probs(i).as_slice(), &[1.0, 0.0], "tie-break at K"),
            _ => {}
        }
    }
}

#[test]
fn best_response_against_equilibrium_recovers_game_value() {
    let game = build_kuhn_poker();
    for gamma in [0.0, 1.0 / 6.0, 1.0 / 3.0] {
        let sx = kuhn_equilibrium_x(&game, gamma);
        let (_, y_gain) = best_response(&game, &sx, Player::Y).unwrap();
        assert!(
            (y_gain - KUHN_VALUE_Y).abs() < 1e-12,
            "gamma = {gamma}: y best response {y_gain}"
        );
    }
    let sy = kuhn_equilibrium_y(&game);
    let (_, x_gain) = best_response(&game, &sy, Player::X).unwrap();
    assert!((x_gain - (-KUHN_VALUE_Y)).abs() < 1e-12);
}

#[test]
fn equilibrium_pair_has_zero_nash_conv() {
    let game = build_kuhn_poker();
    for gamma in [0.0, 0.25, 1.0 / 3.0] {
        let sx = kuhn_equilibrium_x(&game, gamma);
        let sy = kuhn_equilibrium_y(&game);
        let nc = nash_conv_efg(&game, &sx, &sy).unwrap();
        assert!(nc.abs() < 1e-12, "gamma = {gamma}: NashConv {nc}");
        assert!((expected_value(&game, &sx, &sy).unwrap() - KUHN_VALUE_Y).abs() < 1e-12);
    }
}

#[test]
fn uniform_nash_conv_matches_pure_enumeration() {
    let game = build_kuhn_poker();
    let sx = BehavioralStrategy::uniform(&game, Player::X);
    let sy = BehavioralStrategy::uniform(&game, Player::Y);

    // Every pure strategy is an assignment of one action per infoset;
    // with six binary infosets that is 2^6 per player.
    let pure = |game: &ExtensiveGame, player: Player, mask: usize| {
        let probs = game
            .infosets(player)
            .iter()
            .enumerate()
            .map(|(i, set)| {
                assert_eq!(set.actions.len(), 2);
                let mut p = vec![0.0; 2];
                p[(mask >> i) & 1] = 1.0;
                SimplexPoint::new(p).unwrap()
            })
            .collect();
        BehavioralStrategy::new(game, player, probs).unwrap()
    };

    let mut best_y = f64::NEG_INFINITY;
    let mut best_x = f64::NEG_INFINITY;
    for mask in 0..(1usize << 6) {
        let py = pure(&game, Player::Y, mask);
        best_y = best_y.max(expected_value(&game, &sx, &py).unwrap());
        let px = pure(&game, Player::X, mask);
        best_x = best_x.max(-expected_value(&game, &px, &sy).unwrap());
    }
    let enumerated = best_y + best_x;
    let nc = nash_conv_efg(&game, &sx, &sy).unwrap();
    assert!(nc > 0.0);
    assert!(
        (nc - enumerated).abs() < 1e-12,
        "nash_conv {nc} vs enumeration {enumerated}"
    );
}

#[test]
fn best_response_dominates_random_alternatives() {
    let game = build_kuhn_poker();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let sy = random_strategy(&game, Player::Y, &mut rng);
    let (_, br_value) = best_response(&game, &sy, Player::X).unwrap();
    for _ in 0..50 {
        let alt = random_strategy(&game, Player::X, &mut rng);
        let alt_value = -expected_value(&game, &alt, &sy).unwrap();
        assert!(
            br_value >= alt_value - 1e-12,
            "alternative beats best response: {alt_value} > {br_value}"
        );
    }
}

#[test]
fn nash_conv_is_nonnegative_for_random_profiles() {
    let game = build_kuhn_poker();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..25 {
        let sx = random_strategy(&game, Player::X, &mut rng);
        let sy = random_strategy(&game, Player::Y, &mut rng);
        assert!(nash_conv_efg(&game, &sx, &sy).unwrap() >= 0.0);
    }
}

#[test]
fn reach_probabilities_sum_to_one_level_by_level() {
    let game = build_kuhn_poker();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let sx = random_strategy(&game, Player::X, &mut rng);
        let sy = random_strategy(&game, Player::Y, &mut rng);

        // reach[id] under the full profile, plus each node's depth.
        let mut reach = vec![0.0; game.num_nodes()];
        let mut depth = vec![0usize; game.num_nodes()];
        let mut stack = vec![(game.root(), 1.0f64, 0usize)];
        let mut max_depth = 0;
        while let Some((id, r, d)) = stack.pop() {
            reach[id] = r;
            depth[id] = d;
            max_depth = max_depth.max(d);
            match game.node(id) {
                GameNode::Terminal { .. } => {}
                GameNode::Chance {
                    probs, children, ..
                } => {
                    for (p, &c) in probs.iter().zip(children) {
                        stack.push((c, r * p, d + 1));
                    }
                }
                GameNode::Decision {
                    player,
                    infoset,
                    children,
                } => {
                    let strat = match player {
                        Player::X => &sx,
                        Player::Y => &sy,
                    };
                    for (a, &c) in children.iter().enumerate() {
                        stack.push((c, r * strat.probs(*infoset)[a], d + 1));
                    }
                }
            }
        }

        for level in 0..=max_depth {
            let mut total = 0.0;
            for id in 0..game.num_nodes() {
                let terminal = matches!(game.node(id), GameNode::Terminal { .. });
                if depth[id] == level || (terminal && depth[id] < level) {
                    total += reach[id];
                }
            }
            assert!((total - 1.0).abs() < 1e-12, "level {level} mass {total}");
        }
    }
}

/// The tree interface is not Kuhn-specific: a simultaneous-move game is
/// expressed by putting the second mover's nodes in one information set.
#[test]
fn builder_admits_other_games() {
    use zerosum::cfr::{run_cfr, CfrConfig, CfrVariant};
    use zerosum::efg::GameBuilder;

    // Matching pennies: Y cannot observe X's move.
    let mut b = GameBuilder::new();
    let hh = b.terminal(1.0).unwrap();
    let ht = b.terminal(-1.0).unwrap();
    let y_after_heads = b
        .decision(Player::Y, "guess", &["heads", "tails"], vec![hh, ht])
        .unwrap();
    let th = b.terminal(-1.0).unwrap();
    let tt = b.terminal(1.0).unwrap();
    let y_after_tails = b
        .decision(Player::Y, "guess", &["heads", "tails"], vec![th, tt])
        .unwrap();
    let root = b
        .decision(
            Player::X,
            "pick",
            &["heads", "tails"],
            vec![y_after_heads, y_after_tails],
        )
        .unwrap();
    let game = b.build(root).unwrap();

    assert_eq!(game.infosets(Player::Y).len(), 1, "one hidden infoset");
    let uniform_x = BehavioralStrategy::uniform(&game, Player::X);
    let uniform_y = BehavioralStrategy::uniform(&game, Player::Y);
    assert_eq!(expected_value(&game, &uniform_x, &uniform_y).unwrap(), 0.0);
    assert_eq!(nash_conv_efg(&game, &uniform_x, &uniform_y).unwrap(), 0.0);

    // CFR+ finds the uniform equilibrium.
    let run = run_cfr(
        &game,
        &CfrConfig::new(CfrVariant::CfrPlus).with_iterations(2_000),
    )
    .unwrap();
    assert!(run.evals.last().unwrap().nashconv_avg <= 1e-2);
}
