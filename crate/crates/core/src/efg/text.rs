//! Line-oriented text serialization of game trees.
//!
//! One node per line, id-ordered:
//!
//! ```text
//! <id> chance <labels,csv> <probs,csv> <children,csv>
//! <id> decision <X|Y> <infoset-key> <actions,csv> <children,csv>
//! <id> terminal <utility>
//! ```
//!
//! Floats use the shortest decimal form that parses back to the same bits,
//! so serialize/parse round-trips are bit-exact. The root is the unique
//! node that never appears as a child.

use super::{ExtensiveGame, GameBuilder, GameNode, Player};
use crate::{Error, Result};

/// Serializes a game to the line format (LF endings, trailing newline).
pub fn write_game(game: &ExtensiveGame) -> String {
    let mut out = String::new();
    for id in 0..game.num_nodes() {
        match game.node(id) {
            GameNode::Terminal { utility_y } => {
                out.push_str(&format!("{id} terminal {utility_y}\n"));
            }
            GameNode::Chance {
                labels,
                probs,
                children,
            } => {
                let probs: Vec<String> = probs.iter().map(f64::to_string).collect();
                let children: Vec<String> = children.iter().map(usize::to_string).collect();
                out.push_str(&format!(
                    "{id} chance {} {} {}\n",
                    labels.join(","),
                    probs.join(","),
                    children.join(",")
                ));
            }
            GameNode::Decision {
                player,
                infoset,
                children,
            } => {
                let set = game.infoset(*player, *infoset);
                let tag = match player {
                    Player::X => "X",
                    Player::Y => "Y",
                };
                let children: Vec<String> = children.iter().map(usize::to_string).collect();
                out.push_str(&format!(
                    "{id} decision {tag} {} {} {}\n",
                    set.key,
                    set.actions.join(","),
                    children.join(",")
                ));
            }
        }
    }
    out
}

/// Parses the line format back into a validated game.
pub fn parse_game(input: &str) -> Result<ExtensiveGame> {
    let mut builder = GameBuilder::new();
    let mut is_child = Vec::new();

    for (lineno, line) in input.lines().enumerate() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            return Err(malformed(lineno, "empty line"));
        }
        let id: usize = fields[0]
            .parse()
            .map_err(|_| malformed(lineno, "bad node id"))?;
        if id != lineno {
            return Err(malformed(lineno, "node ids must be 0..n in order"));
        }
        is_child.push(false);

        let built = match fields.get(1).copied() {
            Some("terminal") => {
                let [utility] = fields[2..] else {
                    return Err(malformed(lineno, "terminal expects one utility field"));
                };
                let utility: f64 = utility
                    .parse()
                    .map_err(|_| malformed(lineno, "bad utility"))?;
                builder.terminal(utility)?
            }
            Some("chance") => {
                let [labels, probs, children] = fields[2..] else {
                    return Err(malformed(lineno, "chance expects labels, probs, children"));
                };
                let labels: Vec<&str> = labels.split(',').collect();
                let probs = parse_csv::<f64>(probs, lineno)?;
                let children = parse_csv::<usize>(children, lineno)?;
                if labels.len() != probs.len() || probs.len() != children.len() {
                    return Err(malformed(lineno, "chance field lengths disagree"));
                }
                mark_children(&children, &mut is_child, lineno)?;
                let outcomes = labels
                    .iter()
                    .zip(probs.iter().zip(&children))
                    .map(|(l, (p, c))| (l.to_string(), *p, *c))
                    .collect();
                builder.chance(outcomes)?
            }
            Some("decision") => {
                let [player, key, actions, children] = fields[2..] else {
                    return Err(malformed(
                        lineno,
                        "decision expects player, key, actions, children",
                    ));
                };
                let player = match player {
                    "X" => Player::X,
                    "Y" => Player::Y,
                    other => return Err(malformed(lineno, &format!("bad player {other:?}"))),
                };
                let actions: Vec<&str> = actions.split(',').collect();
                let children = parse_csv::<usize>(children, lineno)?;
                mark_children(&children, &mut is_child, lineno)?;
                builder.decision(player, key, &actions, children)?
            }
            other => {
                return Err(malformed(lineno, &format!("unknown node kind {other:?}")));
            }
        };
        debug_assert_eq!(built, id);
    }

    let mut roots = is_child
        .iter()
        .enumerate()
        .filter(|(_, c)| !**c)
        .map(|(id, _)| id);
    let root = roots
        .next()
        .ok_or_else(|| Error::MalformedGame("no root candidate".into()))?;
    if roots.next().is_some() {
        return Err(Error::MalformedGame(
            "multiple root candidates; the input is a forest".into(),
        ));
    }
    builder.build(root)
}

fn mark_children(children: &[usize], is_child: &mut [bool], lineno: usize) -> Result<()> {
    for &c in children {
        if c >= is_child.len() {
            return Err(malformed(lineno, "child references a later node"));
        }
        is_child[c] = true;
    }
    Ok(())
}

fn parse_csv<T: std::str::FromStr>(s: &str, lineno: usize) -> Result<Vec<T>> {
    s.split(',')
        .map(|f| f.parse::<T>().map_err(|_| malformed(lineno, "bad field")))
        .collect()
}

fn malformed(lineno: usize, msg: &str) -> Error {
    Error::MalformedGame(format!("line {}: {msg}", lineno + 1))
}
