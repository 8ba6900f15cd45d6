//! Two disjoint legal replies for the player to move.

use crate::game::{GameState, GameVariant, Move, Player};
use crate::interval::{AnchorSpec, Interval};
use crate::rational::Rational;
use crate::strategy::StrategyError;

/// Returns two legal moves for the player to move whose intervals are disjoint,
/// flush left and flush right (thirds in Banach–Mazur).
///
/// Fails with [`StrategyError::CannotSplit`] when the rules leave no room for
/// two disjoint replies: in Schmidt's game whenever the mover's ratio is at
/// least 1/2, and before Bob's opening in every variant.
pub fn splitting_responses(state: &GameState) -> Result<(Move, Move), StrategyError> {
    let mover = state.to_move();
    let host = state
        .host()
        .ok_or_else(|| StrategyError::CannotSplit("no move has been made yet".into()))?;
    let (left, right) = match state.variant() {
        GameVariant::BanachMazur { .. } => {
            let third = host.length() / Rational::from_integer(3);
            let len = match state.length_cap() {
                Some(cap) => Rational::min_of(third, cap),
                None => third,
            };
            aligned_pair(host, &len)?
        }
        GameVariant::Schmidt { .. } => {
            let ratio = state.variant().ratio_for(mover).expect("Schmidt ratio");
            if ratio * Rational::from_integer(2) >= Rational::one() {
                return Err(StrategyError::CannotSplit(format!(
                    "{mover}'s ratio {ratio} is at least 1/2"
                )));
            }
            let len = state.required_length().expect("Schmidt fixes lengths");
            aligned_pair(host, &len)?
        }
        GameVariant::McMullen { .. } => {
            let len = state.required_length().expect("McMullen fixes lengths");
            match mover {
                Player::Alice => aligned_pair(host, &len)?,
                Player::Bob => {
                    let region = state.legal_region();
                    let (first, last) = match (region.placements.first(), region.placements.last())
                    {
                        (Some(f), Some(l)) => (f, l),
                        _ => return Err(StrategyError::CannotSplit("no gap fits".into())),
                    };
                    let a = first.within.place_subinterval(&len, &AnchorSpec::LeftAligned)?;
                    let b = last.within.place_subinterval(&len, &AnchorSpec::RightAligned)?;
                    if !a.is_disjoint(&b) {
                        return Err(StrategyError::CannotSplit(format!(
                            "{a} and {b} overlap"
                        )));
                    }
                    (a, b)
                }
            }
        }
    };
    let pair = (Move::new(mover, left), Move::new(mover, right));
    debug_assert!(state.check_legal(&pair.0).is_ok() && state.check_legal(&pair.1).is_ok());
    Ok(pair)
}

fn aligned_pair(host: &Interval, len: &Rational) -> Result<(Interval, Interval), StrategyError> {
    let a = host.place_subinterval(len, &AnchorSpec::LeftAligned)?;
    let b = host.place_subinterval(len, &AnchorSpec::RightAligned)?;
    if !a.is_disjoint(&b) {
        return Err(StrategyError::CannotSplit(format!("{a} and {b} overlap")));
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::iv;
    use crate::rational::q;

    fn opened(v: GameVariant) -> GameState {
        GameState::initial(v)
            .unwrap()
            .apply(Move::bob(Interval::unit()))
            .unwrap()
    }

    #[test]
    fn banach_mazur_thirds() {
        let (a, b) = splitting_responses(&opened(GameVariant::banach_mazur())).unwrap();
        assert_eq!(a.interval, iv(q(0, 1), q(1, 3)));
        assert_eq!(b.interval, iv(q(2, 3), q(1, 1)));
        assert_eq!(a.player, Player::Alice);
    }

    #[test]
    fn schmidt_small_ratio() {
        let s = opened(GameVariant::schmidt(q(1, 4), q(1, 2)).unwrap());
        let (a, b) = splitting_responses(&s).unwrap();
        assert_eq!(a.interval, iv(q(0, 1), q(1, 4)));
        assert_eq!(b.interval, iv(q(3, 4), q(1, 1)));
    }

    #[test]
    fn schmidt_large_ratio_cannot_split() {
        let s = opened(GameVariant::schmidt(q(3, 5), q(1, 2)).unwrap());
        assert!(matches!(splitting_responses(&s), Err(StrategyError::CannotSplit(_))));
        let s = opened(GameVariant::schmidt(q(1, 2), q(1, 2)).unwrap());
        assert!(matches!(splitting_responses(&s), Err(StrategyError::CannotSplit(_))));
    }

    #[test]
    fn mcmullen_alice_always_splits() {
        let s = opened(GameVariant::mcmullen(q(33, 100)).unwrap());
        let (a, b) = splitting_responses(&s).unwrap();
        assert!(a.interval.is_disjoint(&b.interval));
    }

    #[test]
    fn mcmullen_bob_split_across_gaps() {
        let s = opened(GameVariant::mcmullen(q(1, 4)).unwrap())
            .apply(Move::alice(iv(q(3, 8), q(5, 8))))
            .unwrap();
        let (a, b) = splitting_responses(&s).unwrap();
        assert_eq!(a.interval, iv(q(0, 1), q(1, 4)));
        assert_eq!(b.interval, iv(q(3, 4), q(1, 1)));
    }

    #[test]
    fn no_split_before_opening() {
        let s = GameState::initial(GameVariant::banach_mazur()).unwrap();
        assert!(matches!(splitting_responses(&s), Err(StrategyError::CannotSplit(_))));
    }
}
