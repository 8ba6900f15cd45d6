use intersection_games_core::interval::iv;
use intersection_games_core::rational::q;
use intersection_games_core::strategy::{Align, BobCenterPin, RandomLegal};
use intersection_games_core::{
    play, play_to_state, AnchorSpec, GameVariant, Interval, Player, Rational, TargetDescriptor,
};
use num_rational::BigRational;
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rational> {
    (-500i64..500, 1i64..200).prop_map(|(n, d)| q(n, d))
}

fn interval() -> impl Strategy<Value = Interval> {
    (rat(), 1i64..300, 1i64..50).prop_map(|(lo, n, d)| iv(lo.clone(), lo + q(n, d)))
}

fn unit_ratio() -> impl Strategy<Value = Rational> {
    (1i64..64).prop_map(|n| q(n, 64))
}

proptest! {
    #[test]
    fn rational_text_round_trip(r in rat()) {
        let s = r.to_string();
        prop_assert_eq!(s.parse::<Rational>().unwrap(), r.clone());
        let json = serde_json::to_string(&r).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), r);
    }

    #[test]
    fn rational_agrees_with_bigrational(a in rat(), b in rat()) {
        let big = |r: &Rational| BigRational::new(
            r.numer().clone(),
            r.denom().clone(),
        );
        let sum = &a + &b;
        prop_assert_eq!(big(&sum), big(&a) + big(&b));
        let prod = &a * &b;
        prop_assert_eq!(big(&prod), big(&a) * big(&b));
        prop_assert_eq!(a < b, big(&a) < big(&b));
    }

    #[test]
    fn placement_is_contained_with_exact_length(
        host in interval(), num in 1i64..64, side in 0usize..3, off in 0i64..=64
    ) {
        let len = host.length() * q(num, 64);
        let slack = host.length() - &len;
        let anchor = match side {
            0 => AnchorSpec::LeftAligned,
            1 => AnchorSpec::RightAligned,
            _ => AnchorSpec::Offset(slack * q(off, 64)),
        };
        let sub = host.place_subinterval(&len, &anchor).unwrap();
        prop_assert!(host.contains(&sub));
        prop_assert_eq!(sub.length(), len);
    }

    #[test]
    fn gap_lengths_sum(host in interval(), a in 0i64..=64, b in 0i64..=64) {
        let (a, b) = (a.min(b), a.max(b));
        let lo = host.lo() + host.length() * q(a, 64);
        let hi = host.lo() + host.length() * q(b, 64);
        let removed = iv(lo, hi);
        let gaps = host.gap_components(&removed).unwrap();
        let total: Rational = gaps.iter().map(Interval::length).sum();
        prop_assert_eq!(total, host.length() - removed.length());
        for g in &gaps {
            prop_assert!(host.contains(g));
            prop_assert!(!g.is_degenerate());
        }
    }

    #[test]
    fn random_play_is_nested_with_exact_schmidt_ratios(
        a in unit_ratio(), b in unit_ratio(), s1 in any::<u64>(), s2 in any::<u64>()
    ) {
        let v = GameVariant::schmidt(a.clone(), b.clone()).unwrap();
        let (_, t) = play_to_state(
            &v,
            &RandomLegal::new(Player::Bob, s1),
            &RandomLegal::new(Player::Alice, s2),
            None,
            6,
            &TargetDescriptor::undecidable(),
        ).unwrap();
        for pair in t.moves.windows(2) {
            prop_assert!(pair[0].interval.contains(&pair[1].interval));
            let ratio = pair[1].interval.length() / pair[0].interval.length();
            let expected = if pair[1].player == Player::Alice { &a } else { &b };
            prop_assert_eq!(&ratio, expected);
        }
    }

    #[test]
    fn random_mcmullen_bob_dodges(beta_n in 1i64..21, s1 in any::<u64>(), s2 in any::<u64>()) {
        let beta = q(beta_n, 64);
        let v = GameVariant::mcmullen(beta.clone()).unwrap();
        let (_, t) = play_to_state(
            &v,
            &RandomLegal::new(Player::Bob, s1),
            &RandomLegal::new(Player::Alice, s2),
            None,
            5,
            &TargetDescriptor::undecidable(),
        ).unwrap();
        let m = &t.moves;
        let mut i = 1;
        while i + 1 < m.len() {
            let (host, obstacle, reply) = (&m[i - 1].interval, &m[i].interval, &m[i + 1].interval);
            prop_assert!(host.contains(reply));
            prop_assert!(reply.lo() >= obstacle.hi() || reply.hi() <= obstacle.lo());
            prop_assert_eq!(reply.length(), host.length() * &beta);
            i += 2;
        }
    }

    #[test]
    fn simulation_is_deterministic(seed in any::<u64>()) {
        let v = GameVariant::schmidt(q(7, 8), q(1, 3)).unwrap();
        let run = || play(
            &v,
            &BobCenterPin::new(q(1, 5)),
            &RandomLegal::new(Player::Alice, seed),
            None,
            8,
            &TargetDescriptor::co_singleton(q(1, 5)),
        ).unwrap().to_json();
        prop_assert_eq!(run(), run());
    }
}

#[test]
fn align_strategies_are_legal_in_every_variant() {
    let variants = [
        GameVariant::banach_mazur(),
        GameVariant::banach_mazur_with_shrink(Some(q(1, 5))).unwrap(),
        GameVariant::schmidt(q(2, 3), q(5, 6)).unwrap(),
        GameVariant::mcmullen(q(3, 10)).unwrap(),
    ];
    for v in &variants {
        for bob in [Align::left(Player::Bob), Align::right(Player::Bob), Align::center(Player::Bob)] {
            for alice in [Align::left(Player::Alice), Align::center(Player::Alice)] {
                let (state, t) =
                    play_to_state(v, &bob, &alice, None, 10, &TargetDescriptor::undecidable()).unwrap();
                assert_eq!(t.replay().unwrap(), state);
            }
        }
    }
}
