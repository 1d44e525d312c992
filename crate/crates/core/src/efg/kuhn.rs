//! Kuhn poker: three cards, one ante each, a single bet of one.

use super::{ExtensiveGame, GameBuilder, Player};

const CARDS: [&str; 3] = ["J", "Q", "K"];

/// Builds the Kuhn poker tree.
///
/// Each player antes 1 and receives one of {J, Q, K}; the six ordered deals
/// are equally likely. Player X acts first with check/bet; facing a bet the
/// other player folds or calls. Information sets are keyed by the private
/// card concatenated with the public action history ("Q", "Qb", "Qcb", ...),
/// giving six infosets per player. Terminal utilities are for player Y:
/// folds move the ante, showdowns move 1 (unraised) or 2 (called).
pub fn build_kuhn_poker() -> ExtensiveGame {
    let mut b = GameBuilder::new();
    let mut deals = Vec::new();
    for (cx, x_card) in CARDS.iter().enumerate() {
        for (cy, y_card) in CARDS.iter().enumerate() {
            if cx == cy {
                continue;
            }
            // Showdown utility to Y at stake 1.
            let showdown = if cy > cx { 1.0 } else { -1.0 };

            // X checked, Y bet, X decides.
            let fold_after_check_bet = b.terminal(1.0).expect("finite");
            let call_after_check_bet = b.terminal(2.0 * showdown).expect("finite");
            let x_facing_bet = b
                .decision(
                    Player::X,
                    &format!("{x_card}cb"),
                    &["fold", "call"],
                    vec![fold_after_check_bet, call_after_check_bet],
                )
                .expect("valid node");

            // Y after X checks.
            let both_check = b.terminal(showdown).expect("finite");
            let y_after_check = b
                .decision(
                    Player::Y,
                    &format!("{y_card}c"),
                    &["check", "bet"],
                    vec![both_check, x_facing_bet],
                )
                .expect("valid node");

            // Y facing X's bet.
            let y_folds = b.terminal(-1.0).expect("finite");
            let y_calls = b.terminal(2.0 * showdown).expect("finite");
            let y_facing_bet = b
                .decision(
                    Player::Y,
                    &format!("{y_card}b"),
                    &["fold", "call"],
                    vec![y_folds, y_calls],
                )
                .expect("valid node");

            let x_root = b
                .decision(
                    Player::X,
                    x_card,
                    &["check", "bet"],
                    vec![y_after_check, y_facing_bet],
                )
                .expect("valid node");
            deals.push((format!("{x_card}{y_card}"), 1.0 / 6.0, x_root));
        }
    }
    let root = b.chance(deals).expect("valid deal distribution");
    b.build(root).expect("kuhn poker tree is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_shape() {
        let game = build_kuhn_poker();
        assert_eq!(game.terminal_count(), 30);
        assert_eq!(game.decision_node_count(Player::X), 12);
        assert_eq!(game.decision_node_count(Player::Y), 12);
        assert_eq!(game.infosets(Player::X).len(), 6);
        assert_eq!(game.infosets(Player::Y).len(), 6);
        // 30 terminals + 24 decisions + 1 chance root.
        assert_eq!(game.num_nodes(), 55);
    }

    #[test]
    fn infoset_keys_are_card_plus_public_history() {
        let game = build_kuhn_poker();
        let mut x_keys: Vec<&str> = game
            .infosets(Player::X)
            .iter()
            .map(|s| s.key.as_str())
            .collect();
        x_keys.sort_unstable();
        assert_eq!(x_keys, vec!["J", "Jcb", "K", "Kcb", "Q", "Qcb"]);

        let mut y_keys: Vec<&str> = game
            .infosets(Player::Y)
            .iter()
            .map(|s| s.key.as_str())
            .collect();
        y_keys.sort_unstable();
        assert_eq!(y_keys, vec!["Jb", "Jc", "Kb", "Kc", "Qb", "Qc"]);
    }

    #[test]
    fn terminal_utilities_are_in_range() {
        let game = build_kuhn_poker();
        for id in 0..game.num_nodes() {
            if let super::super::GameNode::Terminal { utility_y } = game.node(id) {
                assert!(
                    [-2.0, -1.0, 1.0, 2.0].contains(utility_y),
                    "unexpected utility {utility_y}"
                );
            }
        }
    }
}
