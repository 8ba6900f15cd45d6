//! Finite-depth dyadic strategy trees.
//!
//! One player (the pinned player) follows a fixed strategy; at every node the
//! other player (the adversary) branches into two continuations whose brackets
//! are disjoint. Node `w` stores the bracket after its continuation and the
//! exact moves that realize it, so [`verify_tree`] can replay everything.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::game::{GameError, GameState, GameVariant, Move, Player};
use crate::interval::{AnchorSpec, Interval};
use crate::rational::Rational;
use crate::strategy::{splitting_responses, EndpointPin, Side, Strategy, StrategyError};
use crate::word::BinaryWord;

pub const DEFAULT_MAX_DEPTH: usize = 14;
pub const DEFAULT_MAX_SEGMENT_ROUNDS: usize = 64;

/// How the adversary produces two disjoint continuations at a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Brancher {
    /// The adversary's flush-left and flush-right replies.
    Split,
    /// Schmidt's game: the adversary runs its left endpoint strategy on branch 0
    /// and its right endpoint strategy on branch 1 until the two brackets sit on
    /// opposite sides of the node's midpoint.
    EndpointPair { max_rounds: usize },
    /// McMullen's game with Bob pinned: Alice tries obstacles on a grid of
    /// half-length steps, and the first pair whose Bob replies are disjoint wins.
    Obstacles,
}

impl Brancher {
    pub fn endpoint_pair() -> Self {
        Brancher::EndpointPair {
            max_rounds: DEFAULT_MAX_SEGMENT_ROUNDS,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Brancher::Split => "split",
            Brancher::EndpointPair { .. } => "endpoint-pair",
            Brancher::Obstacles => "obstacles",
        }
    }

    /// The brancher the constructions use by default for each variant.
    pub fn default_for(variant: &GameVariant) -> Self {
        match variant {
            GameVariant::BanachMazur { .. } => Brancher::Split,
            GameVariant::Schmidt { .. } => Brancher::endpoint_pair(),
            GameVariant::McMullen { .. } => Brancher::Obstacles,
        }
    }
}

impl fmt::Display for Brancher {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Brancher {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "split" => Ok(Brancher::Split),
            "endpoint-pair" => Ok(Brancher::endpoint_pair()),
            "obstacles" => Ok(Brancher::Obstacles),
            other => Err(format!("unknown brancher `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub interval: Interval,
    /// Moves from the parent's position to this node's; for the root, from
    /// the empty game.
    pub fragment: Vec<Move>,
    /// Bob moves in the fragment, not counting the opening.
    pub rounds: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyTree {
    pub variant: GameVariant,
    pub pinned: Player,
    pub pinned_strategy: String,
    pub brancher: Brancher,
    pub depth: usize,
    pub nodes: BTreeMap<BinaryWord, TreeNode>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub count: usize,
    pub max_diameter: Rational,
    pub total_length: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvariantKind {
    MissingNode,
    IllegalFragment,
    IntervalMismatch,
    NotNested,
    NotDisjoint,
    DiameterNotDecreasing,
    NodeCount,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("depth {depth} exceeds the maximum {max}")]
    DepthExceeded { depth: usize, max: usize },
    #[error("branch collision at `{word}`: {left} and {right} are not disjoint")]
    BranchCollision {
        word: BinaryWord,
        left: Box<Interval>,
        right: Box<Interval>,
    },
    #[error("brancher `{brancher}` cannot be used here: {reason}")]
    BadBrancher { brancher: String, reason: String },
    #[error("unknown word `{0}`")]
    UnknownWord(BinaryWord),
    #[error("invariant violation ({kind:?}) at {}: {detail}", fmt_words(.words))]
    InvariantViolation {
        kind: InvariantKind,
        words: Vec<BinaryWord>,
        detail: String,
    },
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error(transparent)]
    Game(#[from] GameError),
}

fn fmt_words(words: &[BinaryWord]) -> String {
    words
        .iter()
        .map(|w| format!("`{w}`"))
        .collect::<Vec<_>>()
        .join(" and ")
}

#[derive(Debug, Clone)]
pub struct TreeOptions {
    /// Bob's opening; defaults to the pinned strategy's opening when Bob is
    /// pinned and to `[0, 1]` otherwise.
    pub opening: Option<Interval>,
    pub max_depth: usize,
}

impl Default for TreeOptions {
    fn default() -> Self {
        TreeOptions {
            opening: None,
            max_depth: DEFAULT_MAX_DEPTH,
        }
    }
}

/// Applies the pinned strategy until the adversary is to move.
fn settle(state: &mut GameState, pinned: &dyn Strategy) -> Result<(), TreeError> {
    while state.to_move() == pinned.owner() {
        let iv = pinned.next_move(state)?;
        state.apply_in_place(Move::new(pinned.owner(), iv))?;
    }
    Ok(())
}

fn bad(brancher: Brancher, reason: impl Into<String>) -> TreeError {
    TreeError::BadBrancher {
        brancher: brancher.to_string(),
        reason: reason.into(),
    }
}

/// Two children of `state` (adversary to move), each settled, with the number
/// of Bob moves each took.
fn branch(
    brancher: Brancher,
    state: &GameState,
    pinned: &dyn Strategy,
    word: &BinaryWord,
) -> Result<[GameState; 2], TreeError> {
    let adversary = pinned.owner().opponent();
    let children = match brancher {
        Brancher::Split => {
            let (a, b) = splitting_responses(state)?;
            let mut left = state.apply(a)?;
            let mut right = state.apply(b)?;
            settle(&mut left, pinned)?;
            settle(&mut right, pinned)?;
            [left, right]
        }
        Brancher::EndpointPair { max_rounds } => {
            if !matches!(state.variant(), GameVariant::Schmidt { .. }) {
                return Err(bad(brancher, "endpoint strategies need Schmidt's game"));
            }
            let mid = state.bracket()?.center();
            let sides = [
                EndpointPin::new(adversary, Side::Left),
                EndpointPin::new(adversary, Side::Right),
            ];
            let mut runs = [state.clone(), state.clone()];
            let mut separated = false;
            for _ in 0..max_rounds {
                for (run, strat) in runs.iter_mut().zip(&sides) {
                    let iv = strat.next_move(run)?;
                    run.apply_in_place(Move::new(adversary, iv))?;
                    settle(run, pinned)?;
                }
                if runs[0].bracket()?.strictly_left_of(&mid)
                    && runs[1].bracket()?.strictly_right_of(&mid)
                {
                    separated = true;
                    break;
                }
            }
            if !separated {
                return Err(bad(
                    brancher,
                    format!("brackets at `{word}` did not separate within {max_rounds} rounds"),
                ));
            }
            runs
        }
        Brancher::Obstacles => {
            if !matches!(state.variant(), GameVariant::McMullen { .. })
                || adversary != Player::Alice
            {
                return Err(bad(brancher, "obstacles need McMullen's game with Bob pinned"));
            }
            let host = state.host().expect("node positions have a host").clone();
            let len = state.required_length().expect("McMullen fixes lengths");
            let step = &len / Rational::from_integer(2);
            let slack = host.length() - &len;
            let mut candidates = Vec::new();
            let mut offset = Rational::zero();
            while offset <= slack {
                let obstacle = host
                    .place_subinterval(&len, &AnchorSpec::Offset(offset.clone()))
                    .map_err(StrategyError::from)?;
                let mut child = state.apply(Move::alice(obstacle))?;
                if settle(&mut child, pinned).is_ok() {
                    candidates.push(child);
                }
                offset = offset + &step;
            }
            let reply = |s: &GameState| s.bracket().cloned();
            let mut found = None;
            'outer: for i in 0..candidates.len() {
                for j in i + 1..candidates.len() {
                    let (a, b) = (reply(&candidates[i])?, reply(&candidates[j])?);
                    if a.is_disjoint(&b) {
                        found = Some(if a.lo() < b.lo() { (i, j) } else { (j, i) });
                        break 'outer;
                    }
                }
            }
            let Some((i, j)) = found else {
                return Err(bad(
                    brancher,
                    format!("no pair of obstacles at `{word}` yields disjoint replies"),
                ));
            };
            [candidates[i].clone(), candidates[j].clone()]
        }
    };
    let left = children[0].bracket()?;
    let right = children[1].bracket()?;
    if !left.is_disjoint(right) {
        return Err(TreeError::BranchCollision {
            word: word.clone(),
            left: Box::new(left.clone()),
            right: Box::new(right.clone()),
        });
    }
    Ok(children)
}

fn bob_moves_after(state: &GameState, from: usize) -> usize {
    state.history()[from..]
        .iter()
        .filter(|m| m.player == Player::Bob)
        .count()
}

/// Builds the tree with the default options.
pub fn build_tree(
    variant: &GameVariant,
    pinned: &dyn Strategy,
    brancher: Brancher,
    depth: usize,
) -> Result<StrategyTree, TreeError> {
    build_tree_with(variant, pinned, brancher, depth, &TreeOptions::default())
}

pub fn build_tree_with(
    variant: &GameVariant,
    pinned: &dyn Strategy,
    brancher: Brancher,
    depth: usize,
    options: &TreeOptions,
) -> Result<StrategyTree, TreeError> {
    if depth > options.max_depth {
        return Err(TreeError::DepthExceeded {
            depth,
            max: options.max_depth,
        });
    }
    pinned.check_applicable(variant)?;
    let mut root = GameState::initial(variant.clone())?;
    let opening = match &options.opening {
        Some(o) => o.clone(),
        None if pinned.owner() == Player::Bob => pinned.next_move(&root)?,
        None => Interval::unit(),
    };
    root.apply_in_place(Move::bob(opening))?;
    settle(&mut root, pinned)?;

    let mut nodes = BTreeMap::new();
    nodes.insert(
        BinaryWord::empty(),
        TreeNode {
            interval: root.bracket()?.clone(),
            fragment: root.history().to_vec(),
            rounds: 0,
        },
    );
    let mut frontier = vec![(BinaryWord::empty(), root)];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for (word, state) in frontier {
            let base = state.history().len();
            let children = branch(brancher, &state, pinned, &word)?;
            for (bit, child) in [false, true].into_iter().zip(children) {
                let w = word.child(bit);
                nodes.insert(
                    w.clone(),
                    TreeNode {
                        interval: child.bracket()?.clone(),
                        fragment: child.history()[base..].to_vec(),
                        rounds: bob_moves_after(&child, base),
                    },
                );
                next.push((w, child));
            }
        }
        frontier = next;
    }
    Ok(StrategyTree {
        variant: variant.clone(),
        pinned: pinned.owner(),
        pinned_strategy: pinned.name(),
        brancher,
        depth,
        nodes,
    })
}

fn violation(kind: InvariantKind, words: Vec<BinaryWord>, detail: impl Into<String>) -> TreeError {
    TreeError::InvariantViolation {
        kind,
        words,
        detail: detail.into(),
    }
}

/// Re-checks every structural invariant from the raw node data.
///
/// Fragments are replayed through the rule engine from the empty game, so a
/// tree is accepted only if every stored interval is the bracket of a legal
/// play. Returns one report per level.
pub fn verify_tree(tree: &StrategyTree) -> Result<Vec<LevelReport>, TreeError> {
    let root_word = BinaryWord::empty();
    let root = tree
        .nodes
        .get(&root_word)
        .ok_or_else(|| violation(InvariantKind::MissingNode, vec![root_word.clone()], "no root"))?;
    let mut root_state = GameState::initial(tree.variant.clone())?;
    for mv in &root.fragment {
        root_state.apply_in_place(mv.clone()).map_err(|e| {
            violation(InvariantKind::IllegalFragment, vec![root_word.clone()], e.to_string())
        })?;
    }
    check_bracket(&root_word, &root_state, root)?;

    let expected_total: usize = (0..=tree.depth).map(|l| 1usize << l).sum();
    if tree.nodes.len() != expected_total {
        return Err(violation(
            InvariantKind::NodeCount,
            vec![],
            format!("{} nodes, expected {expected_total}", tree.nodes.len()),
        ));
    }

    let mut reports = vec![level_report(0, &[(&root_word, root)])];
    let mut frontier = vec![(root_word, root_state)];
    for level in 1..=tree.depth {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for (parent_word, parent_state) in &frontier {
            let parent = &tree.nodes[parent_word];
            for bit in [false, true] {
                let w = parent_word.child(bit);
                let node = tree.nodes.get(&w).ok_or_else(|| {
                    violation(InvariantKind::MissingNode, vec![w.clone()], "missing child")
                })?;
                let mut state = parent_state.clone();
                for mv in &node.fragment {
                    state.apply_in_place(mv.clone()).map_err(|e| {
                        violation(InvariantKind::IllegalFragment, vec![w.clone()], e.to_string())
                    })?;
                }
                check_bracket(&w, &state, node)?;
                if !parent.interval.contains(&node.interval) {
                    return Err(violation(
                        InvariantKind::NotNested,
                        vec![parent_word.clone(), w.clone()],
                        format!("{} is not inside {}", node.interval, parent.interval),
                    ));
                }
                if node.interval.length() >= parent.interval.length() {
                    return Err(violation(
                        InvariantKind::DiameterNotDecreasing,
                        vec![parent_word.clone(), w.clone()],
                        format!(
                            "length {} does not drop below {}",
                            node.interval.length(),
                            parent.interval.length()
                        ),
                    ));
                }
                next.push((w, state));
            }
        }
        let mut level_nodes: Vec<(&BinaryWord, &TreeNode)> =
            next.iter().map(|(w, _)| (w, &tree.nodes[w])).collect();
        if level_nodes.len() != 1 << level {
            return Err(violation(
                InvariantKind::NodeCount,
                vec![],
                format!("level {level} has {} nodes", level_nodes.len()),
            ));
        }
        // after sorting by left endpoint, any overlap shows up between neighbours
        level_nodes.sort_by(|a, b| a.1.interval.lo().cmp(b.1.interval.lo()));
        for pair in level_nodes.windows(2) {
            let (wa, a) = pair[0];
            let (wb, b) = pair[1];
            if !a.interval.is_disjoint(&b.interval) {
                let mut words = vec![wa.clone(), wb.clone()];
                words.sort();
                return Err(violation(
                    InvariantKind::NotDisjoint,
                    words,
                    format!("{} and {} intersect", a.interval, b.interval),
                ));
            }
        }
        reports.push(level_report(level, &level_nodes));
        frontier = next;
    }
    Ok(reports)
}

fn check_bracket(word: &BinaryWord, state: &GameState, node: &TreeNode) -> Result<(), TreeError> {
    let bracket = state.bracket()?;
    if *bracket != node.interval {
        return Err(violation(
            InvariantKind::IntervalMismatch,
            vec![word.clone()],
            format!("stored {} but the fragment ends at {bracket}", node.interval),
        ));
    }
    Ok(())
}

fn level_report(level: usize, nodes: &[(&BinaryWord, &TreeNode)]) -> LevelReport {
    let lengths: Vec<Rational> = nodes.iter().map(|(_, n)| n.interval.length()).collect();
    LevelReport {
        level,
        count: nodes.len(),
        max_diameter: lengths.iter().cloned().max().unwrap_or_else(Rational::zero),
        total_length: lengths.into_iter().sum(),
    }
}

/// The node interval for `word`: the bracket of every point coded by an
/// infinite extension of it.
pub fn code_point<'t>(tree: &'t StrategyTree, word: &BinaryWord) -> Result<&'t Interval, TreeError> {
    tree.nodes
        .get(word)
        .map(|n| &n.interval)
        .ok_or_else(|| TreeError::UnknownWord(word.clone()))
}

#[derive(Debug, Clone, Serialize)]
pub struct NodeExport {
    pub lo: Rational,
    pub hi: Rational,
    pub rounds: usize,
}

impl StrategyTree {
    /// Words to `{lo, hi, rounds}`; the root is the empty string.
    pub fn export(&self) -> BTreeMap<String, NodeExport> {
        self.nodes
            .iter()
            .map(|(w, n)| {
                (
                    w.to_string(),
                    NodeExport {
                        lo: n.interval.lo().clone(),
                        hi: n.interval.hi().clone(),
                        rounds: n.rounds,
                    },
                )
            })
            .collect()
    }

    pub fn export_json(&self) -> String {
        serde_json::to_string(&self.export()).expect("tree export serializes")
    }

    /// The gap between the two children of `word`, if both exist.
    pub fn sibling_gap(&self, word: &BinaryWord) -> Option<Rational> {
        let a = &self.nodes.get(&word.child(false))?.interval;
        let b = &self.nodes.get(&word.child(true))?.interval;
        Some(if a.hi() < b.lo() {
            b.lo() - a.hi()
        } else {
            a.lo() - b.hi()
        })
    }
}

pub const LEVEL_TABLE_HEADER: &str = "level,count,max_diameter,total_length";

pub fn level_table(reports: &[LevelReport]) -> String {
    let mut out = String::from(LEVEL_TABLE_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.level, r.count, r.max_diameter, r.total_length
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::iv;
    use crate::rational::q;
    use crate::strategy::{Align, SplitThirds};

    fn bm_tree(depth: usize) -> StrategyTree {
        build_tree(
            &GameVariant::banach_mazur(),
            &SplitThirds::new(Player::Alice),
            Brancher::Split,
            depth,
        )
        .unwrap()
    }

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn bm_thirds_depth_two() {
        let t = bm_tree(2);
        let reports = verify_tree(&t).unwrap();
        let counts: Vec<usize> = reports.iter().map(|r| r.count).collect();
        assert_eq!(counts, [1, 2, 4]);
        // root: B0 = [0,1], then Alice's middle third
        assert_eq!(code_point(&t, &w("")).unwrap(), &iv(q(1, 3), q(2, 3)));
        // branch 0: Bob takes [1/3, 4/9], Alice its middle third
        assert_eq!(code_point(&t, &w("0")).unwrap(), &iv(q(10, 27), q(11, 27)));
        assert_eq!(code_point(&t, &w("01")).unwrap(), &iv(q(97, 243), q(98, 243)));
        assert!(matches!(code_point(&t, &w("010")), Err(TreeError::UnknownWord(_))));
        assert_eq!(t.nodes[&w("01")].rounds, 1);
    }

    #[test]
    fn depth_limit() {
        let err = build_tree(
            &GameVariant::banach_mazur(),
            &SplitThirds::new(Player::Alice),
            Brancher::Split,
            15,
        )
        .unwrap_err();
        assert_eq!(err, TreeError::DepthExceeded { depth: 15, max: 14 });
    }

    #[test]
    fn sabotage_is_caught() {
        let mut t = bm_tree(2);
        let copy = t.nodes[&w("00")].clone();
        t.nodes.insert(w("01"), copy);
        match verify_tree(&t).unwrap_err() {
            TreeError::InvariantViolation { kind, words, .. } => {
                assert_eq!(kind, InvariantKind::NotDisjoint);
                assert_eq!(words, [w("00"), w("01")]);
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn schmidt_endpoint_tree() {
        let v = GameVariant::schmidt(q(4, 5), q(4, 5)).unwrap();
        let t = build_tree(&v, &Align::center(Player::Alice), Brancher::endpoint_pair(), 3).unwrap();
        let reports = verify_tree(&t).unwrap();
        assert_eq!(reports[3].count, 8);
        for pair in reports.windows(2) {
            assert!(pair[1].max_diameter < pair[0].max_diameter);
        }
    }

    #[test]
    fn mcmullen_obstacle_tree() {
        let v = GameVariant::mcmullen(q(1, 5)).unwrap();
        let t = build_tree(&v, &Align::left(Player::Bob), Brancher::Obstacles, 2).unwrap();
        let reports = verify_tree(&t).unwrap();
        assert_eq!(reports[2].count, 4);
        assert_eq!(t.nodes[&w("")].interval, Interval::unit());
    }

    #[test]
    fn export_shape() {
        let t = bm_tree(1);
        let json = t.export_json();
        assert!(json.starts_with(r#"{"":{"lo":"1/3","hi":"2/3","rounds":0},"0":"#));
        let table = level_table(&verify_tree(&t).unwrap());
        assert_eq!(table.lines().next(), Some(LEVEL_TABLE_HEADER));
        assert_eq!(table.lines().nth(1), Some("0,1,1/3,1/3"));
    }
}
