//! Endpoint-sharing strategies.
//!
//! The owner always answers with the required-length subinterval that shares
//! the right (or left) endpoint of the opponent's last move. Whatever the
//! opponent does, the owner's left endpoints then advance by at least
//! `|opponent move| - |own reply|` per round.

use crate::game::{GameState, GameVariant, Player};
use crate::interval::{AnchorSpec, Interval};
use crate::rational::Rational;
use crate::strategy::escape::displacement_partial_sum;
use crate::strategy::{ensure_turn, Certificate, Side, Strategy, StrategyError};

#[derive(Debug, Clone)]
pub struct EndpointPin {
    owner: Player,
    side: Side,
    opening: Interval,
}

impl EndpointPin {
    pub fn new(owner: Player, side: Side) -> Self {
        EndpointPin {
            owner,
            side,
            opening: Interval::unit(),
        }
    }

    pub fn with_opening(mut self, opening: Interval) -> Self {
        self.opening = opening;
        self
    }

    pub fn side(&self) -> Side {
        self.side
    }

    fn anchor(&self) -> AnchorSpec {
        match self.side {
            Side::Left => AnchorSpec::LeftAligned,
            Side::Right => AnchorSpec::RightAligned,
        }
    }
}

impl Strategy for EndpointPin {
    fn name(&self) -> String {
        format!("{}-endpoint-pin-{}", self.owner, self.side.as_str())
    }

    fn owner(&self) -> Player {
        self.owner
    }

    fn check_applicable(&self, variant: &GameVariant) -> Result<(), StrategyError> {
        match variant {
            GameVariant::Schmidt { .. } => Ok(()),
            other => Err(StrategyError::InapplicableParameters(format!(
                "endpoint strategies need Schmidt's game, not {}",
                other.tag().as_str()
            ))),
        }
    }

    fn next_move(&self, state: &GameState) -> Result<Interval, StrategyError> {
        ensure_turn(self.owner, state)?;
        self.check_applicable(state.variant())?;
        let Some(host) = state.host() else {
            return Ok(self.opening.clone());
        };
        let len = state.required_length().expect("Schmidt fixes lengths");
        Ok(host.place_subinterval(&len, &self.anchor())?)
    }

    fn certificate(&self, state: &GameState) -> Certificate {
        let (Some(own), Some(opp)) = (
            state.variant().ratio_for(self.owner),
            state.variant().ratio_for(self.owner.opponent()),
        ) else {
            return Certificate::None;
        };
        let mine: Vec<&Interval> = match self.owner {
            Player::Bob => state.bob_moves().collect(),
            Player::Alice => state.alice_moves().collect(),
        };
        let (Some(first), Some(last)) = (mine.first(), mine.last()) else {
            return Certificate::None;
        };
        let rounds = mine.len() - 1;
        let moved = match self.side {
            Side::Right => last.lo() - first.lo(),
            Side::Left => first.hi() - last.hi(),
        };
        let lower_bound = if rounds == 0 {
            Rational::zero()
        } else {
            displacement_partial_sum(opp, own, rounds - 1)
        };
        Certificate::EscapeBound {
            side: self.side,
            rounds,
            displacement: moved / first.length(),
            lower_bound,
            threshold: own - Rational::half(),
        }
    }
}
