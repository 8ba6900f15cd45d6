//! Strategy-versus-strategy play to a finite horizon.
//!
//! A play is Bob's opening followed by `horizon` rounds of (Alice, Bob). The
//! infinite intersection is never computed: a verdict is reached only when a
//! strategy certifies a pinned point and the target decides that point.

use thiserror::Error;

use crate::game::{GameError, GameState, GameVariant, Move, Player, Violation};
use crate::interval::Interval;
use crate::rational::Rational;
use crate::strategy::{Certificate, Strategy, StrategyError};
use crate::target::TargetDescriptor;
use crate::transcript::{Outcome, Parameters, StrategyNames, Transcript, Verdict};

#[derive(Debug, Error)]
pub enum PlayError {
    #[error("horizon must be at least 1")]
    ZeroHorizon,
    #[error("strategy `{strategy}` plays for {actual}, but was seated as {seat}")]
    WrongSeat {
        strategy: String,
        seat: Player,
        actual: Player,
    },
    #[error("strategy `{strategy}` is inapplicable: {source}")]
    Inapplicable {
        strategy: String,
        source: StrategyError,
    },
    #[error("illegal opening: {0}")]
    IllegalOpening(Violation),
    #[error(
        "strategy `{strategy}` produced an illegal move {interval} for {player} after {} moves: {violation}",
        history.len()
    )]
    StrategyProducedIllegalMove {
        strategy: String,
        player: Player,
        interval: Box<Interval>,
        violation: Violation,
        history: Vec<Move>,
    },
    #[error("strategy `{strategy}` failed after {} moves: {source}", history.len())]
    StrategyFailed {
        strategy: String,
        source: StrategyError,
        history: Vec<Move>,
    },
    #[error("strategy `{strategy}` certified {point}, which is outside the bracket {bracket}")]
    BrokenCertificate {
        strategy: String,
        point: Box<Rational>,
        bracket: Box<Interval>,
    },
    #[error(transparent)]
    Game(#[from] GameError),
}

/// Asks `strategy` for its move and applies it, attributing any failure.
pub fn step(state: &mut GameState, strategy: &dyn Strategy) -> Result<(), PlayError> {
    let interval = strategy
        .next_move(state)
        .map_err(|source| PlayError::StrategyFailed {
            strategy: strategy.name(),
            source,
            history: state.history().to_vec(),
        })?;
    let mv = Move::new(strategy.owner(), interval);
    if let Err(violation) = state.check_legal(&mv) {
        return Err(PlayError::StrategyProducedIllegalMove {
            strategy: strategy.name(),
            player: mv.player,
            interval: Box::new(mv.interval),
            violation,
            history: state.history().to_vec(),
        });
    }
    state.apply_in_place(mv)?;
    Ok(())
}

/// Verdict for a finished position from the strategies' certificates.
///
/// A pinned point `p` means the intersection of all moves is `{p}`, so Alice
/// wins iff `p` is in the target. Certificates are consulted Bob first; the
/// first one the target can decide settles the verdict.
pub fn adjudicate(
    state: &GameState,
    certified: &[(String, Certificate)],
    target: &TargetDescriptor,
) -> Result<(Verdict, Certificate), PlayError> {
    let bracket = state.bracket()?.clone();
    for (strategy, cert) in certified {
        if let Some(p) = cert.pinned_point() {
            if !bracket.contains_point(p) {
                return Err(PlayError::BrokenCertificate {
                    strategy: strategy.clone(),
                    point: Box::new(p.clone()),
                    bracket: Box::new(bracket),
                });
            }
        }
    }
    for (_, cert) in certified {
        if let Some(member) = cert.pinned_point().and_then(|p| target.decide(p)) {
            let outcome = if member {
                Outcome::AliceWins
            } else {
                Outcome::BobWins
            };
            return Ok((Verdict { outcome, bracket }, cert.clone()));
        }
    }
    let fallback = certified
        .iter()
        .map(|(_, c)| c)
        .find(|c| **c != Certificate::None)
        .cloned()
        .unwrap_or(Certificate::None);
    Ok((
        Verdict {
            outcome: Outcome::UndecidedAtHorizon,
            bracket,
        },
        fallback,
    ))
}

fn seat(strategy: &dyn Strategy, seat: Player, variant: &GameVariant) -> Result<(), PlayError> {
    if strategy.owner() != seat {
        return Err(PlayError::WrongSeat {
            strategy: strategy.name(),
            seat,
            actual: strategy.owner(),
        });
    }
    strategy
        .check_applicable(variant)
        .map_err(|source| PlayError::Inapplicable {
            strategy: strategy.name(),
            source,
        })
}

/// Plays `horizon` rounds and returns the final state with its transcript.
///
/// `b0` overrides Bob's opening when given; otherwise Bob's strategy opens.
pub fn play_to_state(
    variant: &GameVariant,
    bob: &dyn Strategy,
    alice: &dyn Strategy,
    b0: Option<Interval>,
    horizon: usize,
    target: &TargetDescriptor,
) -> Result<(GameState, Transcript), PlayError> {
    if horizon == 0 {
        return Err(PlayError::ZeroHorizon);
    }
    seat(bob, Player::Bob, variant)?;
    seat(alice, Player::Alice, variant)?;
    let mut state = GameState::initial(variant.clone())?;
    match b0 {
        Some(opening) => state
            .apply_in_place(Move::bob(opening))
            .map_err(|e| match e {
                GameError::IllegalMove(v) => PlayError::IllegalOpening(v),
                other => PlayError::Game(other),
            })?,
        None => step(&mut state, bob)?,
    }
    for _ in 0..horizon {
        step(&mut state, alice)?;
        step(&mut state, bob)?;
    }
    let state = state.finish();
    let certified = [
        (bob.name(), bob.certificate(&state)),
        (alice.name(), alice.certificate(&state)),
    ];
    let (verdict, certificate) = adjudicate(&state, &certified, target)?;
    let transcript = Transcript {
        variant: variant.tag(),
        parameters: Parameters::of(variant),
        strategies: Some(StrategyNames {
            bob: bob.name(),
            alice: alice.name(),
        }),
        target: Some(target.to_string()),
        moves: state.history().to_vec(),
        horizon,
        verdict,
        certificate,
    };
    Ok((state, transcript))
}

pub fn play(
    variant: &GameVariant,
    bob: &dyn Strategy,
    alice: &dyn Strategy,
    b0: Option<Interval>,
    horizon: usize,
    target: &TargetDescriptor,
) -> Result<Transcript, PlayError> {
    play_to_state(variant, bob, alice, b0, horizon, target).map(|(_, t)| t)
}
