//! Center-pinning strategies for Schmidt's game.
//!
//! Bob pins `x` when `beta <= 2 - 1/alpha`: his length-`L` move is centered at
//! `x`, Alice's length-`alpha L` reply leaves at least `(alpha - 1/2) L` between
//! `x` and her nearest edge, and that is at least the half-length
//! `alpha beta L / 2` of his next centered move. Alice's dense pin is the
//! mirror image with the roles of `alpha` and `beta` swapped.

use crate::game::{GameState, GameVariant, Player};
use crate::interval::{AnchorSpec, Interval};
use crate::rational::Rational;
use crate::regime::pin_threshold;
use crate::strategy::{ensure_turn, Certificate, Strategy, StrategyError};
use crate::target::DenseEnumeration;

fn schmidt_params(variant: &GameVariant) -> Result<(&Rational, &Rational), StrategyError> {
    match variant {
        GameVariant::Schmidt { alpha, beta } => Ok((alpha, beta)),
        other => Err(StrategyError::InapplicableParameters(format!(
            "pinning strategies need Schmidt's game, not {}",
            other.tag().as_str()
        ))),
    }
}

#[derive(Debug, Clone)]
pub struct BobCenterPin {
    x: Rational,
    opening_length: Rational,
}

impl BobCenterPin {
    pub fn new(x: Rational) -> Self {
        BobCenterPin {
            x,
            opening_length: Rational::one(),
        }
    }

    pub fn with_opening_length(mut self, len: Rational) -> Self {
        assert!(len.is_positive(), "opening length must be positive");
        self.opening_length = len;
        self
    }

    pub fn point(&self) -> &Rational {
        &self.x
    }

    pub fn opening(&self) -> Interval {
        Interval::centered(&self.x, &self.opening_length).expect("positive length")
    }
}

impl Strategy for BobCenterPin {
    fn name(&self) -> String {
        if self.x.is_zero() {
            "bob-center-pin".into()
        } else {
            format!("bob-center-pin:{}", self.x)
        }
    }

    fn owner(&self) -> Player {
        Player::Bob
    }

    fn check_applicable(&self, variant: &GameVariant) -> Result<(), StrategyError> {
        let (alpha, beta) = schmidt_params(variant)?;
        let bound = pin_threshold(alpha);
        if *beta > bound {
            return Err(StrategyError::InapplicableParameters(format!(
                "bob-center-pin needs beta <= 2 - 1/alpha = {bound}, got beta = {beta}"
            )));
        }
        Ok(())
    }

    fn next_move(&self, state: &GameState) -> Result<Interval, StrategyError> {
        ensure_turn(Player::Bob, state)?;
        let Some(host) = state.host() else {
            return Ok(self.opening());
        };
        let len = state.required_length().ok_or_else(|| {
            StrategyError::InapplicableParameters("no fixed reply length".into())
        })?;
        host.place_subinterval(&len, &AnchorSpec::CenteredAt(self.x.clone()))
            .map_err(|e| StrategyError::NoMove(e.to_string()))
    }

    fn certificate(&self, _state: &GameState) -> Certificate {
        Certificate::PinnedPoint {
            point: self.x.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct AliceDensePin {
    enumeration: DenseEnumeration,
}

impl AliceDensePin {
    pub fn new(enumeration: DenseEnumeration) -> Self {
        AliceDensePin { enumeration }
    }

    pub fn rationals() -> Self {
        AliceDensePin::new(DenseEnumeration::SternBrocot)
    }

    /// Centers Alice can use on her first move: `[lo + aL/2, hi - aL/2]`.
    pub fn feasible_band(b0: &Interval, alpha: &Rational) -> Interval {
        let half = alpha * b0.length() / Rational::from_integer(2);
        Interval::new(b0.lo() + &half, b0.hi() - &half).expect("alpha < 1 keeps the band nonempty")
    }

    /// The enumerated point Alice pins, determined by Bob's opening.
    pub fn pinned_point(&self, state: &GameState) -> Option<Rational> {
        let b0 = state.opening()?;
        let alpha = state.variant().alpha()?;
        Some(self.enumeration.first_in(&Self::feasible_band(b0, alpha)))
    }
}

impl Strategy for AliceDensePin {
    fn name(&self) -> String {
        "alice-dense-pin".into()
    }

    fn owner(&self) -> Player {
        Player::Alice
    }

    fn check_applicable(&self, variant: &GameVariant) -> Result<(), StrategyError> {
        let (alpha, beta) = schmidt_params(variant)?;
        let bound = pin_threshold(beta);
        if *alpha > bound {
            return Err(StrategyError::InapplicableParameters(format!(
                "alice-dense-pin needs alpha <= 2 - 1/beta = {bound}, got alpha = {alpha}"
            )));
        }
        Ok(())
    }

    fn next_move(&self, state: &GameState) -> Result<Interval, StrategyError> {
        ensure_turn(Player::Alice, state)?;
        schmidt_params(state.variant())?;
        let y = self.pinned_point(state).expect("Bob has opened");
        let host = state.host().expect("Bob has opened");
        let len = state.required_length().expect("Schmidt fixes lengths");
        host.place_subinterval(&len, &AnchorSpec::CenteredAt(y))
            .map_err(|e| StrategyError::NoMove(e.to_string()))
    }

    fn certificate(&self, state: &GameState) -> Certificate {
        match self.pinned_point(state) {
            Some(point) => Certificate::PinnedPoint { point },
            None => Certificate::None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Move;
    use crate::interval::iv;
    use crate::rational::q;

    fn schmidt(a: Rational, b: Rational) -> GameVariant {
        GameVariant::schmidt(a, b).unwrap()
    }

    #[test]
    fn bob_pin_worst_case_alice() {
        let v = schmidt(q(4, 5), q(1, 2));
        let bob = BobCenterPin::new(q(0, 1));
        bob.check_applicable(&v).unwrap();
        let s = GameState::initial(v).unwrap();
        let b0 = bob.next_move(&s).unwrap();
        assert_eq!(b0, iv(q(-1, 2), q(1, 2)));
        let s = s
            .apply(Move::bob(b0))
            .unwrap()
            .apply(Move::alice(iv(q(-1, 2), q(3, 10))))
            .unwrap();
        let reply = bob.next_move(&s).unwrap();
        assert_eq!(reply, iv(q(-1, 5), q(1, 5)));
        assert_eq!(s.check_legal(&Move::bob(reply)), Ok(()));
    }

    #[test]
    fn bob_pin_boundary_zero_slack() {
        // beta = 2 - 1/alpha = 3/4: margin alpha - 1/2 equals alpha beta / 2
        let v = schmidt(q(4, 5), q(3, 4));
        let bob = BobCenterPin::new(q(0, 1));
        bob.check_applicable(&v).unwrap();
        let s = GameState::initial(v)
            .unwrap()
            .apply(Move::bob(iv(q(-1, 2), q(1, 2))))
            .unwrap()
            .apply(Move::alice(iv(q(-1, 2), q(3, 10))))
            .unwrap();
        let reply = bob.next_move(&s).unwrap();
        assert_eq!(reply, iv(q(-3, 10), q(3, 10)));
        // the reply touches Alice's right edge exactly
        assert_eq!(reply.hi(), s.host().unwrap().hi());
    }

    #[test]
    fn bob_pin_inapplicable() {
        let bob = BobCenterPin::new(q(0, 1));
        assert!(matches!(
            bob.check_applicable(&schmidt(q(3, 5), q(3, 4))),
            Err(StrategyError::InapplicableParameters(_))
        ));
        assert!(bob
            .check_applicable(&GameVariant::mcmullen(q(1, 4)).unwrap())
            .is_err());
    }

    #[test]
    fn alice_pin_band_and_point() {
        let v = schmidt(q(1, 2), q(4, 5));
        let alice = AliceDensePin::rationals();
        alice.check_applicable(&v).unwrap();
        assert_eq!(
            AliceDensePin::feasible_band(&Interval::unit(), &q(1, 2)),
            iv(q(1, 4), q(3, 4))
        );
        let s = GameState::initial(v)
            .unwrap()
            .apply(Move::bob(Interval::unit()))
            .unwrap();
        assert_eq!(alice.pinned_point(&s), Some(q(1, 2)));
        let a0 = alice.next_move(&s).unwrap();
        assert_eq!(a0, iv(q(1, 4), q(3, 4)));
    }

    #[test]
    fn alice_pin_boundary_and_inapplicable() {
        let alice = AliceDensePin::rationals();
        alice.check_applicable(&schmidt(q(3, 4), q(4, 5))).unwrap();
        assert!(matches!(
            alice.check_applicable(&schmidt(q(3, 4), q(3, 5))),
            Err(StrategyError::InapplicableParameters(_))
        ));
    }

    #[test]
    fn wrong_turn() {
        let v = schmidt(q(4, 5), q(1, 2));
        let s = GameState::initial(v).unwrap();
        assert!(matches!(
            AliceDensePin::rationals().next_move(&s),
            Err(StrategyError::NotOwnersTurn(Player::Alice))
        ));
    }
}
