//! Strategies: deterministic rules mapping a position to the owner's next move.
//!
//! Every concrete strategy here is a pure function of the [`GameState`] plus
//! immutable configuration, so the same position always yields the same move.

pub mod endpoint;
pub mod escape;
pub mod pin;
pub mod positional;
pub mod split;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{GameError, GameState, GameVariant, Player};
use crate::interval::{Interval, IntervalError};
use crate::rational::Rational;

pub use endpoint::EndpointPin;
pub use pin::{AliceDensePin, BobCenterPin};
pub use positional::{Align, RandomLegal, SplitThirds};
pub use split::splitting_responses;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("inapplicable parameters: {0}")]
    InapplicableParameters(String),
    #[error("it is not {0}'s turn")]
    NotOwnersTurn(Player),
    #[error("cannot split: {0}")]
    CannotSplit(String),
    #[error("no move available: {0}")]
    NoMove(String),
    #[error("unknown strategy `{0}`")]
    Unknown(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// Evidence a strategy offers about the eventual intersection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    None,
    /// The intersection of all moves is `{point}`; `point` lies in every bracket.
    PinnedPoint { point: Rational },
    /// Realized endpoint displacement of an endpoint strategy, normalized by
    /// the owner's first interval, with the guaranteed lower bound and the
    /// escape threshold `ratio - 1/2`.
    EscapeBound {
        side: Side,
        rounds: usize,
        displacement: Rational,
        lower_bound: Rational,
        threshold: Rational,
    },
}

impl Certificate {
    pub fn pinned_point(&self) -> Option<&Rational> {
        match self {
            Certificate::PinnedPoint { point } => Some(point),
            _ => None,
        }
    }
}

/// A rule that specifies the owner's move in every reachable position.
pub trait Strategy: Send + Sync + fmt::Debug {
    /// Stable identifier, as accepted by [`StrategyId::from_str`].
    fn name(&self) -> String;

    fn owner(&self) -> Player;

    /// Whether this strategy is guaranteed to produce legal moves in `variant`.
    fn check_applicable(&self, variant: &GameVariant) -> Result<(), StrategyError>;

    /// The owner's next interval. Called only when the owner is to move.
    fn next_move(&self, state: &GameState) -> Result<Interval, StrategyError>;

    fn certificate(&self, _state: &GameState) -> Certificate {
        Certificate::None
    }
}

pub(crate) fn ensure_turn(owner: Player, state: &GameState) -> Result<(), StrategyError> {
    if state.to_move() != owner || state.is_finished() {
        return Err(StrategyError::NotOwnersTurn(owner));
    }
    Ok(())
}

/// Parsed form of a stable strategy identifier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StrategyId {
    BobCenterPin { x: Rational },
    AliceDensePin,
    BobEndpointPin(Side),
    AliceEndpointPin(Side),
    SplitThirds,
    AlignLeft,
    AlignRight,
    AlignCenter,
    RandomLegal { seed: u64 },
}

impl StrategyId {
    /// Which player the identifier is bound to, if any.
    pub fn fixed_owner(&self) -> Option<Player> {
        match self {
            StrategyId::BobCenterPin { .. } | StrategyId::BobEndpointPin(_) => Some(Player::Bob),
            StrategyId::AliceDensePin | StrategyId::AliceEndpointPin(_) => Some(Player::Alice),
            _ => None,
        }
    }

    pub fn build(&self, owner: Player) -> Result<Box<dyn Strategy>, StrategyError> {
        if let Some(fixed) = self.fixed_owner() {
            if fixed != owner {
                return Err(StrategyError::InapplicableParameters(format!(
                    "`{self}` is a {fixed} strategy, not a {owner} strategy"
                )));
            }
        }
        Ok(match self {
            StrategyId::BobCenterPin { x } => Box::new(BobCenterPin::new(x.clone())),
            StrategyId::AliceDensePin => Box::new(AliceDensePin::rationals()),
            StrategyId::BobEndpointPin(side) => Box::new(EndpointPin::new(Player::Bob, *side)),
            StrategyId::AliceEndpointPin(side) => {
                Box::new(EndpointPin::new(Player::Alice, *side))
            }
            StrategyId::SplitThirds => Box::new(SplitThirds::new(owner)),
            StrategyId::AlignLeft => Box::new(Align::left(owner)),
            StrategyId::AlignRight => Box::new(Align::right(owner)),
            StrategyId::AlignCenter => Box::new(Align::center(owner)),
            StrategyId::RandomLegal { seed } => Box::new(RandomLegal::new(owner, *seed)),
        })
    }
}

impl fmt::Display for StrategyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyId::BobCenterPin { x } if x.is_zero() => f.write_str("bob-center-pin"),
            StrategyId::BobCenterPin { x } => write!(f, "bob-center-pin:{x}"),
            StrategyId::AliceDensePin => f.write_str("alice-dense-pin"),
            StrategyId::BobEndpointPin(s) => write!(f, "bob-endpoint-pin-{}", s.as_str()),
            StrategyId::AliceEndpointPin(s) => write!(f, "alice-endpoint-pin-{}", s.as_str()),
            StrategyId::SplitThirds => f.write_str("split-thirds"),
            StrategyId::AlignLeft => f.write_str("align-left"),
            StrategyId::AlignRight => f.write_str("align-right"),
            StrategyId::AlignCenter => f.write_str("align-center"),
            StrategyId::RandomLegal { seed } => write!(f, "random-legal:{seed}"),
        }
    }
}

impl FromStr for StrategyId {
    type Err = StrategyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || StrategyError::Unknown(s.to_string());
        let s = s.trim();
        if let Some(seed) = s.strip_prefix("random-legal:") {
            return seed
                .parse()
                .map(|seed| StrategyId::RandomLegal { seed })
                .map_err(|_| unknown());
        }
        if let Some(x) = s.strip_prefix("bob-center-pin:") {
            return x
                .parse()
                .map(|x| StrategyId::BobCenterPin { x })
                .map_err(|_| unknown());
        }
        Ok(match s {
            "bob-center-pin" => StrategyId::BobCenterPin { x: Rational::zero() },
            "alice-dense-pin" => StrategyId::AliceDensePin,
            "bob-endpoint-pin-left" => StrategyId::BobEndpointPin(Side::Left),
            "bob-endpoint-pin-right" => StrategyId::BobEndpointPin(Side::Right),
            "alice-endpoint-pin-left" => StrategyId::AliceEndpointPin(Side::Left),
            "alice-endpoint-pin-right" => StrategyId::AliceEndpointPin(Side::Right),
            "split-thirds" => StrategyId::SplitThirds,
            "align-left" => StrategyId::AlignLeft,
            "align-right" => StrategyId::AlignRight,
            "align-center" => StrategyId::AlignCenter,
            _ => return Err(unknown()),
        })
    }
}
