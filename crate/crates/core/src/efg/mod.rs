//! Two-player zero-sum extensive-form games with imperfect information.
//!
//! Trees are immutable arenas built bottom-up through [`GameBuilder`], which
//! validates chance distributions, information-set consistency, and perfect
//! recall. Terminal utilities are stored for player `Y`; player `X`
//! minimizes them. Strategies are behavioral: one distribution per
//! information set.

mod kuhn;
pub mod text;

pub use kuhn::build_kuhn_poker;

use crate::simplex::SimplexPoint;
use crate::{Error, Result};
use std::collections::HashMap;

/// The two players. `X` moves to minimize the stored utilities, `Y` to
/// maximize them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    X,
    Y,
}

impl Player {
    pub fn opponent(&self) -> Player {
        match self {
            Player::X => Player::Y,
            Player::Y => Player::X,
        }
    }

    pub(crate) fn index(&self) -> usize {
        match self {
            Player::X => 0,
            Player::Y => 1,
        }
    }

    /// Sign that converts a `Y` utility into this player's utility.
    fn utility_sign(&self) -> f64 {
        match self {
            Player::X => -1.0,
            Player::Y => 1.0,
        }
    }
}

pub type NodeId = usize;

/// One node of the game tree.
#[derive(Debug, Clone, PartialEq)]
pub enum GameNode {
    Chance {
        labels: Vec<String>,
        probs: Vec<f64>,
        children: Vec<NodeId>,
    },
    Decision {
        player: Player,
        infoset: usize,
        children: Vec<NodeId>,
    },
    Terminal {
        utility_y: f64,
    },
}

/// An information set: the acting player, its key, the shared action list,
/// and the member nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Infoset {
    pub key: String,
    pub player: Player,
    pub actions: Vec<String>,
    pub nodes: Vec<NodeId>,
}

/// An immutable extensive-form game.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensiveGame {
    nodes: Vec<GameNode>,
    root: NodeId,
    infosets: [Vec<Infoset>; 2],
}

impl ExtensiveGame {
    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node(&self, id: NodeId) -> &GameNode {
        &self.nodes[id]
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn infosets(&self, player: Player) -> &[Infoset] {
        &self.infosets[player.index()]
    }

    pub fn infoset(&self, player: Player, idx: usize) -> &Infoset {
        &self.infosets[player.index()][idx]
    }

    pub fn terminal_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, GameNode::Terminal { .. }))
            .count()
    }

    pub fn decision_node_count(&self, player: Player) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, GameNode::Decision { player: p, .. } if *p == player))
            .count()
    }

    /// Number of responder decisions above each infoset (its own-history
    /// depth). Used to order best-response backups bottom-up.
    fn infoset_depths(&self, player: Player) -> Vec<usize> {
        let mut depths = vec![0usize; self.infosets(player).len()];
        let mut stack = vec![(self.root, 0usize)];
        while let Some((id, own_depth)) = stack.pop() {
            match &self.nodes[id] {
                GameNode::Terminal { .. } => {}
                GameNode::Chance { children, .. } => {
                    stack.extend(children.iter().map(|c| (*c, own_depth)));
                }
                GameNode::Decision {
                    player: p,
                    infoset,
                    children,
                } => {
                    let next = if *p == player {
                        depths[*infoset] = own_depth;
                        own_depth + 1
                    } else {
                        own_depth
                    };
                    stack.extend(children.iter().map(|c| (*c, next)));
                }
            }
        }
        depths
    }
}

/// Bottom-up builder: children must exist before their parent.
///
/// Referencing only existing nodes makes cycles impossible; `build` checks
/// the remaining tree and recall invariants.
#[derive(Debug, Default)]
pub struct GameBuilder {
    nodes: Vec<GameNode>,
    infosets: [Vec<Infoset>; 2],
    infoset_index: HashMap<(usize, String), usize>,
}

impl GameBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn terminal(&mut self, utility_y: f64) -> Result<NodeId> {
        if !utility_y.is_finite() {
            return Err(Error::MalformedGame("non-finite terminal utility".into()));
        }
        self.nodes.push(GameNode::Terminal { utility_y });
        Ok(self.nodes.len() - 1)
    }

    pub fn chance(&mut self, outcomes: Vec<(String, f64, NodeId)>) -> Result<NodeId> {
        if outcomes.is_empty() {
            return Err(Error::MalformedGame("chance node without outcomes".into()));
        }
        let mut labels = Vec::with_capacity(outcomes.len());
        let mut probs = Vec::with_capacity(outcomes.len());
        let mut children = Vec::with_capacity(outcomes.len());
        for (label, p, child) in outcomes {
            check_token(&label)?;
            if !(p.is_finite() && p >= 0.0) {
                return Err(Error::MalformedGame(format!("bad chance probability {p}")));
            }
            self.check_child(child)?;
            labels.push(label);
            probs.push(p);
            children.push(child);
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::MalformedGame(format!(
                "chance probabilities sum to {total}"
            )));
        }
        self.nodes.push(GameNode::Chance {
            labels,
            probs,
            children,
        });
        Ok(self.nodes.len() - 1)
    }

    pub fn decision(
        &mut self,
        player: Player,
        key: &str,
        actions: &[&str],
        children: Vec<NodeId>,
    ) -> Result<NodeId> {
        check_token(key)?;
        if actions.is_empty() {
            return Err(Error::MalformedGame(format!(
                "decision {key} has no actions"
            )));
        }
        if actions.len() != children.len() {
            return Err(Error::MalformedGame(format!(
                "decision {key}: {} actions vs {} children",
                actions.len(),
                children.len()
            )));
        }
        for child in &children {
            self.check_child(*child)?;
        }
        for a in actions {
            check_token(a)?;
        }

        let map_key = (player.index(), key.to_string());
        let infoset = match self.infoset_index.get(&map_key) {
            Some(&idx) => {
                let set = &self.infosets[player.index()][idx];
                if set.actions.len() != actions.len()
                    || set.actions.iter().zip(actions).any(|(a, b)| a != b)
                {
                    return Err(Error::MalformedGame(format!(
                        "infoset {key}: inconsistent action lists"
                    )));
                }
                idx
            }
            None => {
                let idx = self.infosets[player.index()].len();
                self.infosets[player.index()].push(Infoset {
                    key: key.to_string(),
                    player,
                    actions: actions.iter().map(|s| s.to_string()).collect(),
                    nodes: Vec::new(),
                });
                self.infoset_index.insert(map_key, idx);
                idx
            }
        };
        let id = self.nodes.len();
        self.infosets[player.index()][infoset].nodes.push(id);
        self.nodes.push(GameNode::Decision {
            player,
            infoset,
            children,
        });
        Ok(id)
    }

    fn check_child(&self, child: NodeId) -> Result<()> {
        if child >= self.nodes.len() {
            return Err(Error::MalformedGame(format!(
                "child {child} does not exist yet"
            )));
        }
        Ok(())
    }

    /// Validates tree structure and perfect recall, then freezes the game.
    pub fn build(self, root: NodeId) -> Result<ExtensiveGame> {
        if root >= self.nodes.len() {
            return Err(Error::MalformedGame("root does not exist".into()));
        }
        // Tree check: every node except the root is someone's child exactly once.
        let mut parent_count = vec![0usize; self.nodes.len()];
        for node in &self.nodes {
            let children: &[NodeId] = match node {
                GameNode::Terminal { .. } => &[],
                GameNode::Chance { children, .. } => children,
                GameNode::Decision { children, .. } => children,
            };
            for &c in children {
                parent_count[c] += 1;
            }
        }
        if parent_count[root] != 0 {
            return Err(Error::MalformedGame("root has a parent".into()));
        }
        for (id, &count) in parent_count.iter().enumerate() {
            if id != root && count != 1 {
                return Err(Error::MalformedGame(format!(
                    "node {id} has {count} parents; the game must be a tree"
                )));
            }
        }

        let game = ExtensiveGame {
            nodes: self.nodes,
            root,
            infosets: self.infosets,
        };
        game.validate_perfect_recall()?;
        Ok(game)
    }
}

/// Keys, labels, and action names end up whitespace-separated in the text
/// format, so they must be nonempty single tokens.
fn check_token(s: &str) -> Result<()> {
    if s.is_empty() || s.contains(char::is_whitespace) || s.contains(',') {
        return Err(Error::MalformedGame(format!(
            "token {s:?} must be nonempty without whitespace or commas"
        )));
    }
    Ok(())
}

impl ExtensiveGame {
    /// Perfect recall: all nodes of an infoset see the same sequence of the
    /// owner's past (infoset, action) pairs.
    fn validate_perfect_recall(&self) -> Result<()> {
        type History = Vec<(usize, usize)>;
        let mut seen: [Vec<Option<History>>; 2] = [
            vec![None; self.infosets[0].len()],
            vec![None; self.infosets[1].len()],
        ];
        let mut stack: Vec<(NodeId, [History; 2])> = vec![(self.root, [Vec::new(), Vec::new()])];
        while let Some((id, histories)) = stack.pop() {
            match &self.nodes[id] {
                GameNode::Terminal { .. } => {}
                GameNode::Chance { children, .. } => {
                    for &c in children {
                        stack.push((c, histories.clone()));
                    }
                }
                GameNode::Decision {
                    player,
                    infoset,
                    children,
                } => {
                    let p = player.index();
                    match &seen[p][*infoset] {
                        Some(h) if *h != histories[p] => {
                            return Err(Error::MalformedGame(format!(
                                "infoset {} of {:?} violates perfect recall",
                                self.infosets[p][*infoset].key, player
                            )));
                        }
                        Some(_) => {}
                        None => seen[p][*infoset] = Some(histories[p].clone()),
                    }
                    for (a, &c) in children.iter().enumerate() {
                        let mut next = histories.clone();
                        next[p].push((*infoset, a));
                        stack.push((c, next));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A behavioral strategy: one action distribution per infoset of one player.
#[derive(Debug, Clone, PartialEq)]
pub struct BehavioralStrategy {
    player: Player,
    probs: Vec<SimplexPoint>,
}

impl BehavioralStrategy {
    /// Uniform play at every infoset.
    pub fn uniform(game: &ExtensiveGame, player: Player) -> Self {
        let probs = game
            .infosets(player)
            .iter()
            .map(|set| SimplexPoint::uniform(set.actions.len()))
            .collect();
        Self { player, probs }
    }

    /// Wraps per-infoset distributions, checking coverage and dimensions.
    pub fn new(game: &ExtensiveGame, player: Player, probs: Vec<SimplexPoint>) -> Result<Self> {
        let sets = game.infosets(player);
        if probs.len() != sets.len() {
            return Err(Error::MissingInfoset(format!(
                "{:?} needs {} infoset entries, got {}",
                player,
                sets.len(),
                probs.len()
            )));
        }
        for (set, p) in sets.iter().zip(&probs) {
            if p.dim() != set.actions.len() {
                return Err(Error::MissingInfoset(format!(
                    "infoset {} expects {} action probabilities, got {}",
                    set.key,
                    set.actions.len(),
                    p.dim()
                )));
            }
        }
        Ok(Self { player, probs })
    }

    pub fn player(&self) -> Player {
        self.player
    }

    pub fn probs(&self, infoset: usize) -> &SimplexPoint {
        &self.probs[infoset]
    }

    pub fn set_probs(&mut self, infoset: usize, p: SimplexPoint) {
        assert_eq!(self.probs[infoset].dim(), p.dim());
        self.probs[infoset] = p;
    }

    fn validate_for(&self, game: &ExtensiveGame, player: Player) -> Result<()> {
        if self.player != player {
            return Err(Error::MissingInfoset(format!(
                "strategy belongs to {:?}, expected {:?}",
                self.player, player
            )));
        }
        if self.probs.len() != game.infosets(player).len() {
            return Err(Error::MissingInfoset(format!(
                "strategy covers {} infosets, game has {}",
                self.probs.len(),
                game.infosets(player).len()
            )));
        }
        Ok(())
    }
}

/// Expected utility for player `Y` under a complete strategy profile.
pub fn expected_value(
    game: &ExtensiveGame,
    strat_x: &BehavioralStrategy,
    strat_y: &BehavioralStrategy,
) -> Result<f64> {
    strat_x.validate_for(game, Player::X)?;
    strat_y.validate_for(game, Player::Y)?;
    Ok(node_value(game, strat_x, strat_y, game.root()))
}

fn node_value(
    game: &ExtensiveGame,
    strat_x: &BehavioralStrategy,
    strat_y: &BehavioralStrategy,
    id: NodeId,
) -> f64 {
    match game.node(id) {
        GameNode::Terminal { utility_y } => *utility_y,
        GameNode::Chance {
            probs, children, ..
        } => probs
            .iter()
            .zip(children)
            .map(|(p, c)| p * node_value(game, strat_x, strat_y, *c))
            .sum(),
        GameNode::Decision {
            player,
            infoset,
            children,
        } => {
            let strat = match player {
                Player::X => strat_x,
                Player::Y => strat_y,
            };
            let probs = strat.probs(*infoset);
            children
                .iter()
                .enumerate()
                .map(|(a, c)| probs[a] * node_value(game, strat_x, strat_y, *c))
                .sum()
        }
    }
}

/// Best response of `responder` against a fixed opponent strategy.
///
/// Counterfactual-reach-weighted action values are backed up per infoset,
/// deepest own-history first; ties break to the lowest action index. The
/// returned value is from the responder's perspective (always maximizing).
pub fn best_response(
    game: &ExtensiveGame,
    opponent_strategy: &BehavioralStrategy,
    responder: Player,
) -> Result<(BehavioralStrategy, f64)> {
    opponent_strategy.validate_for(game, responder.opponent())?;

    // Counterfactual reach of every node: chance and opponent probabilities
    // along the path, ignoring the responder's own choices.
    let mut cf_reach = vec![0.0; game.num_nodes()];
    let mut stack = vec![(game.root(), 1.0f64)];
    while let Some((id, reach)) = stack.pop() {
        cf_reach[id] += reach;
        match game.node(id) {
            GameNode::Terminal { .. } => {}
            GameNode::Chance {
                probs, children, ..
            } => {
                for (p, &c) in probs.iter().zip(children) {
                    stack.push((c, reach * p));
                }
            }
            GameNode::Decision {
                player,
                infoset,
                children,
            } => {
                if *player == responder {
                    for &c in children {
                        stack.push((c, reach));
                    }
                } else {
                    let probs = opponent_strategy.probs(*infoset);
                    for (a, &c) in children.iter().enumerate() {
                        stack.push((c, reach * probs[a]));
                    }
                }
            }
        }
    }

    let sets = game.infosets(responder);
    let depths = game.infoset_depths(responder);
    let mut order: Vec<usize> = (0..sets.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(depths[i]));

    let sign = responder.utility_sign();
    let mut chosen: Vec<Option<usize>> = vec![None; sets.len()];

    for &i in &order {
        let set = &sets[i];
        let mut best_action = 0;
        let mut best_value = f64::NEG_INFINITY;
        for a in 0..set.actions.len() {
            let mut value = 0.0;
            for &node in &set.nodes {
                let GameNode::Decision { children, .. } = game.node(node) else {
                    unreachable!("infoset members are decision nodes");
                };
                value += cf_reach[node]
                    * resolved_value(
                        game,
                        opponent_strategy,
                        responder,
                        &chosen,
                        sign,
                        children[a],
                    );
            }
            if value > best_value {
                best_value = value;
                best_action = a;
            }
        }
        chosen[i] = Some(best_action);
    }

    let probs = sets
        .iter()
        .zip(&chosen)
        .map(|(set, action)| {
            let mut p = vec![0.0; set.actions.len()];
            p[action.expect("all infosets resolved")] = 1.0;
            SimplexPoint::new_unchecked(p)
        })
        .collect();
    let strategy = BehavioralStrategy {
        player: responder,
        probs,
    };

    let value_y = match responder {
        Player::X => expected_value(game, &strategy, opponent_strategy)?,
        Player::Y => expected_value(game, opponent_strategy, &strategy)?,
    };
    Ok((strategy, sign * value_y))
}

/// Responder-perspective value of a node, with deeper responder infosets
/// already fixed to their chosen actions.
fn resolved_value(
    game: &ExtensiveGame,
    opponent: &BehavioralStrategy,
    responder: Player,
    chosen: &[Option<usize>],
    sign: f64,
    id: NodeId,
) -> f64 {
    match game.node(id) {
        GameNode::Terminal { utility_y } => sign * utility_y,
        GameNode::Chance {
            probs, children, ..
        } => probs
            .iter()
            .zip(children)
            .map(|(p, c)| p * resolved_value(game, opponent, responder, chosen, sign, *c))
            .sum(),
        GameNode::Decision {
            player,
            infoset,
            children,
        } => {
            if *player == responder {
                let action =
                    chosen[*infoset].expect("deeper infosets are resolved before their ancestors");
                resolved_value(game, opponent, responder, chosen, sign, children[action])
            } else {
                let probs = opponent.probs(*infoset);
                children
                    .iter()
                    .enumerate()
                    .map(|(a, c)| {
                        probs[a] * resolved_value(game, opponent, responder, chosen, sign, *c)
                    })
                    .sum()
            }
        }
    }
}

/// NashConv for extensive-form games: the sum of both players'
/// best-response gains, clamped at zero for rounding slack.
pub fn nash_conv_efg(
    game: &ExtensiveGame,
    strat_x: &BehavioralStrategy,
    strat_y: &BehavioralStrategy,
) -> Result<f64> {
    let (_, y_gain) = best_response(game, strat_x, Player::Y)?;
    let (_, x_gain) = best_response(game, strat_y, Player::X)?;
    let conv = y_gain + x_gain;
    if (-1e-12..0.0).contains(&conv) {
        return Ok(0.0);
    }
    Ok(conv)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Single X decision over two terminals with X-utilities (3, 1)
    /// (stored as Y-utilities -3, -1).
    pub(crate) fn single_decision_x() -> ExtensiveGame {
        let mut b = GameBuilder::new();
        let hi = b.terminal(-3.0).unwrap();
        let lo = b.terminal(-1.0).unwrap();
        let root = b
            .decision(Player::X, "root", &["left", "right"], vec![hi, lo])
            .unwrap();
        b.build(root).unwrap()
    }

    #[test]
    fn builder_rejects_forward_references() {
        let mut b = GameBuilder::new();
        let err = b.decision(Player::X, "k", &["a"], vec![5]);
        assert!(matches!(err, Err(Error::MalformedGame(_))));
    }

    #[test]
    fn builder_rejects_shared_subtrees() {
        let mut b = GameBuilder::new();
        let t = b.terminal(1.0).unwrap();
        let root = b.decision(Player::X, "k", &["a", "b"], vec![t, t]).unwrap();
        assert!(matches!(b.build(root), Err(Error::MalformedGame(_))));
    }

    #[test]
    fn builder_rejects_bad_chance_mass() {
        let mut b = GameBuilder::new();
        let t1 = b.terminal(0.0).unwrap();
        let t2 = b.terminal(1.0).unwrap();
        let err = b.chance(vec![("a".into(), 0.6, t1), ("b".into(), 0.6, t2)]);
        assert!(matches!(err, Err(Error::MalformedGame(_))));
    }

    #[test]
    fn builder_rejects_inconsistent_infoset_actions() {
        let mut b = GameBuilder::new();
        let t1 = b.terminal(0.0).unwrap();
        let t2 = b.terminal(1.0).unwrap();
        b.decision(Player::X, "k", &["a", "b"], vec![t1, t2])
            .unwrap();
        let t3 = b.terminal(0.0).unwrap();
        let t4 = b.terminal(1.0).unwrap();
        let err = b.decision(Player::X, "k", &["a", "c"], vec![t3, t4]);
        assert!(matches!(err, Err(Error::MalformedGame(_))));
    }

    #[test]
    fn perfect_recall_validator_rejects_corrupted_infosets() {
        // Two X decisions in sequence forced into one infoset: the deeper
        // node has a longer own history, which perfect recall forbids.
        let mut b = GameBuilder::new();
        let t1 = b.terminal(0.0).unwrap();
        let t2 = b.terminal(1.0).unwrap();
        let inner = b
            .decision(Player::X, "same", &["a", "b"], vec![t1, t2])
            .unwrap();
        let t3 = b.terminal(2.0).unwrap();
        let root = b
            .decision(Player::X, "same", &["a", "b"], vec![inner, t3])
            .unwrap();
        let err = b.build(root);
        assert!(
            matches!(err, Err(Error::MalformedGame(ref m)) if m.contains("perfect recall")),
            "{err:?}"
        );
    }

    #[test]
    fn merging_nodes_with_different_histories_is_rejected() {
        // The "late" infoset is reachable both through "early" and directly,
        // so its members disagree on the owner's action history.
        let mut b = GameBuilder::new();
        let t1 = b.terminal(0.0).unwrap();
        let t2 = b.terminal(1.0).unwrap();
        let d1 = b
            .decision(Player::X, "late", &["l", "r"], vec![t1, t2])
            .unwrap();
        let t3 = b.terminal(0.5).unwrap();
        let d2 = b
            .decision(Player::X, "early", &["l", "r"], vec![d1, t3])
            .unwrap();
        let t4 = b.terminal(0.0).unwrap();
        let t5 = b.terminal(1.0).unwrap();
        let d3 = b
            .decision(Player::X, "late", &["l", "r"], vec![t4, t5])
            .unwrap();
        let root = b
            .chance(vec![("c1".into(), 0.5, d2), ("c2".into(), 0.5, d3)])
            .unwrap();
        let err = b.build(root);
        assert!(matches!(err, Err(Error::MalformedGame(_))), "{err:?}");
    }

    #[test]
    fn single_decision_values() {
        let game = single_decision_x();
        let strat_x = BehavioralStrategy::uniform(&game, Player::X);
        let strat_y = BehavioralStrategy::uniform(&game, Player::Y);
        // X utilities are (3, 1), so uniform play gives u_y = -2.
        assert_eq!(expected_value(&game, &strat_x, &strat_y).unwrap(), -2.0);

        let (br, value) = best_response(&game, &strat_y, Player::X).unwrap();
        assert_eq!(value, 3.0);
        assert_eq!(br.probs(0).as_slice(), &[1.0, 0.0]);
    }

    #[test]
    fn degenerate_tree_value_is_its_terminal() {
        let mut b = GameBuilder::new();
        let t = b.terminal(0.75).unwrap();
        let root = b.chance(vec![("only".into(), 1.0, t)]).unwrap();
        let game = b.build(root).unwrap();
        let sx = BehavioralStrategy::uniform(&game, Player::X);
        let sy = BehavioralStrategy::uniform(&game, Player::Y);
        assert_eq!(expected_value(&game, &sx, &sy).unwrap(), 0.75);
    }

    #[test]
    fn strategy_validation_catches_missing_entries() {
        let game = build_kuhn_poker();
        let err = BehavioralStrategy::new(&game, Player::X, vec![SimplexPoint::uniform(2)]);
        assert!(matches!(err, Err(Error::MissingInfoset(_))));

        let bad_dims = vec![SimplexPoint::uniform(3); game.infosets(Player::X).len()];
        let err = BehavioralStrategy::new(&game, Player::X, bad_dims);
        assert!(matches!(err, Err(Error::MissingInfoset(_))));
    }
}
