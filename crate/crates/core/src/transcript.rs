//! Persisted record of one finite-horizon play.
//!
//! The JSON form is canonical: rationals are `"p/q"` in lowest terms and
//! fields appear in declaration order, so `to_json(from_json(s)) == s` for any
//! `s` this module produced.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{GameError, GameState, GameVariant, Move, VariantTag};
use crate::interval::Interval;
use crate::rational::Rational;
use crate::strategy::Certificate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    BobWins,
    AliceWins,
    UndecidedAtHorizon,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::BobWins => "bob-wins",
            Outcome::AliceWins => "alice-wins",
            Outcome::UndecidedAtHorizon => "undecided-at-horizon",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Verdict {
    pub outcome: Outcome,
    pub bracket: Interval,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shrink: Option<Rational>,
}

impl Parameters {
    pub fn of(variant: &GameVariant) -> Self {
        Parameters {
            alpha: variant.alpha().cloned(),
            beta: variant.beta().cloned(),
            shrink: variant.shrink().cloned(),
        }
    }

    pub fn to_variant(&self, tag: VariantTag) -> Result<GameVariant, GameError> {
        let need = |p: &Option<Rational>, name: &str| {
            p.clone().ok_or_else(|| {
                GameError::BadParameters(format!("{} needs parameter `{name}`", tag.as_str()))
            })
        };
        let extra = |present: bool, name: &str| {
            if present {
                Err(GameError::BadParameters(format!(
                    "{} takes no parameter `{name}`",
                    tag.as_str()
                )))
            } else {
                Ok(())
            }
        };
        match tag {
            VariantTag::BanachMazur => {
                extra(self.alpha.is_some(), "alpha")?;
                extra(self.beta.is_some(), "beta")?;
                GameVariant::banach_mazur_with_shrink(self.shrink.clone())
            }
            VariantTag::Schmidt => {
                extra(self.shrink.is_some(), "shrink")?;
                GameVariant::schmidt(need(&self.alpha, "alpha")?, need(&self.beta, "beta")?)
            }
            VariantTag::McMullen => {
                extra(self.alpha.is_some(), "alpha")?;
                extra(self.shrink.is_some(), "shrink")?;
                GameVariant::mcmullen(need(&self.beta, "beta")?)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrategyNames {
    pub bob: String,
    pub alice: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Transcript {
    pub variant: VariantTag,
    pub parameters: Parameters,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strategies: Option<StrategyNames>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    pub moves: Vec<Move>,
    pub horizon: usize,
    pub verdict: Verdict,
    pub certificate: Certificate,
}

#[derive(Debug, Error)]
pub enum TranscriptError {
    #[error("malformed transcript: {0}")]
    Json(#[from] serde_json::Error),
    #[error("transcript does not replay: {0}")]
    Replay(#[from] GameError),
}

impl Transcript {
    pub fn game_variant(&self) -> Result<GameVariant, GameError> {
        self.parameters.to_variant(self.variant)
    }

    /// Re-applies every move through the rule engine.
    pub fn replay(&self) -> Result<GameState, GameError> {
        let state = GameState::replay(self.game_variant()?, &self.moves)?;
        Ok(if state.rounds_completed() >= self.horizon && state.to_move() == crate::game::Player::Alice {
            state.finish()
        } else {
            state
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("transcripts always serialize")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcripts always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, TranscriptError> {
        Ok(serde_json::from_str(s)?)
    }
}
