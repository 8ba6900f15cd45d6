use std::sync::Arc;
use std::thread;

use intersection_games_core::game::ViolationCode;
use intersection_games_core::interval::iv;
use intersection_games_core::rational::q;
use intersection_games_core::transcript::{Outcome, Transcript};
use intersection_games_core::{Interval, Player, Rational, VariantTag};
use intersection_games_service::{
    CreateSession, FileStore, HumanSide, MemoryStore, SessionError, SessionManager, Status,
    TranscriptStore,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn manager() -> SessionManager {
    SessionManager::new(Arc::new(MemoryStore::new()))
}

fn schmidt_vs_center_pin(horizon: usize) -> CreateSession {
    CreateSession {
        variant: VariantTag::Schmidt,
        alpha: Some(q(4, 5)),
        beta: Some(q(1, 2)),
        shrink: None,
        human: HumanSide::Alice,
        engine: Some("bob-center-pin".into()),
        alice_engine: None,
        target: Some("co-singleton:0".into()),
        horizon,
        b0: None,
    }
}

#[test]
fn engine_opens_when_human_is_alice() {
    let m = manager();
    let v = m.create_session(schmidt_vs_center_pin(10)).unwrap();
    assert_eq!(v.moves.len(), 1);
    assert_eq!(v.moves[0].interval, iv(q(-1, 2), q(1, 2)));
    assert_eq!(v.status, Status::AwaitingHuman);
    assert_eq!(v.to_move, Some(Player::Alice));
}

#[test]
fn legal_move_gets_centered_reply() {
    let m = manager();
    let v = m.create_session(schmidt_vs_center_pin(10)).unwrap();
    let v = m.submit_move(&v.id, None, iv(q(-3, 10), q(1, 2))).unwrap();
    assert_eq!(v.moves.len(), 3);
    assert_eq!(v.moves[2].interval, iv(q(-1, 5), q(1, 5)));
    assert_eq!(v.bracket, Some(iv(q(-1, 5), q(1, 5))));
}

#[test]
fn illegal_move_leaves_session_unchanged() {
    let m = manager();
    let v = m.create_session(schmidt_vs_center_pin(10)).unwrap();
    let err = m.submit_move(&v.id, None, iv(q(0, 1), q(1, 2))).unwrap_err();
    match err {
        SessionError::IllegalMove(violation) => assert_eq!(violation.code, ViolationCode::WrongLength),
        other => panic!("unexpected {other}"),
    }
    assert_eq!(m.get_session(&v.id).unwrap(), v);
}

#[test]
fn move_after_horizon_is_rejected() {
    let m = manager();
    let v = m.create_session(schmidt_vs_center_pin(1)).unwrap();
    let v = m.submit_move(&v.id, None, iv(q(-1, 2), q(3, 10))).unwrap();
    assert_eq!(v.status, Status::Finished);
    assert_eq!(v.verdict.as_ref().unwrap().outcome, Outcome::BobWins);
    let err = m.submit_move(&v.id, None, iv(q(-1, 5), q(1, 5))).unwrap_err();
    assert!(matches!(err, SessionError::NotYourTurn(_)));
    let stored = m.store().get(&v.id).unwrap().unwrap();
    let t = Transcript::from_json(&stored).unwrap();
    assert_eq!(t.replay().unwrap(), m.final_state(&v.id).unwrap());
}

#[test]
fn creation_errors() {
    let m = manager();
    let mut req = schmidt_vs_center_pin(5);
    req.human = HumanSide::Bob;
    req.engine = Some("alice-dense-pin".into());
    req.alpha = Some(q(3, 5));
    assert!(matches!(m.create_session(req), Err(SessionError::InapplicableStrategy(_))));

    let req = CreateSession {
        variant: VariantTag::McMullen,
        alpha: None,
        beta: Some(q(1, 3)),
        shrink: None,
        human: HumanSide::Alice,
        engine: Some("align-left".into()),
        alice_engine: None,
        target: None,
        horizon: 3,
        b0: None,
    };
    assert!(matches!(m.create_session(req), Err(SessionError::BadParameters(_))));
    assert!(matches!(m.get_session("nope"), Err(SessionError::UnknownSession(_))));
}

#[test]
fn human_bob_supplies_opening() {
    let m = manager();
    let req = CreateSession {
        variant: VariantTag::McMullen,
        alpha: None,
        beta: Some(q(1, 4)),
        shrink: None,
        human: HumanSide::Bob,
        engine: Some("align-center".into()),
        alice_engine: None,
        target: None,
        horizon: 2,
        b0: None,
    };
    let v = m.create_session(req).unwrap();
    assert!(v.moves.is_empty());
    let v = m.submit_move(&v.id, Some(Player::Bob), Interval::unit()).unwrap();
    assert_eq!(v.moves[1].interval, iv(q(3, 8), q(5, 8)));
    let hint = m.hint_legal(&v.id).unwrap();
    assert_eq!(hint.placements.len(), 2);
    assert_eq!(hint.required_length, Some(q(1, 4)));
    let err = m.submit_move(&v.id, Some(Player::Bob), iv(q(1, 4), q(1, 2))).unwrap_err();
    match err {
        SessionError::IllegalMove(violation) => {
            assert_eq!(violation.code, ViolationCode::NotInComplement)
        }
        other => panic!("unexpected {other}"),
    }
}

#[test]
fn hint_for_schmidt_alice() {
    let m = manager();
    let mut req = schmidt_vs_center_pin(3);
    req.alpha = Some(q(1, 2));
    req.engine = Some("align-left".into());
    let v = m.create_session(req).unwrap();
    let hint = m.hint_legal(&v.id).unwrap();
    assert_eq!(hint.host, Some(Interval::unit()));
    assert_eq!(hint.required_length, Some(q(1, 2)));
    assert_eq!(
        hint.placements[0].left_endpoint_range,
        Some((q(0, 1), q(1, 2)))
    );
}

#[test]
fn engine_only_sessions_finish_at_creation() {
    let m = manager();
    let req = CreateSession {
        variant: VariantTag::Schmidt,
        alpha: Some(q(1, 2)),
        beta: Some(q(4, 5)),
        shrink: None,
        human: HumanSide::None,
        engine: Some("random-legal:5".into()),
        alice_engine: Some("alice-dense-pin".into()),
        target: Some("rationals".into()),
        horizon: 4,
        b0: None,
    };
    let v = m.create_session(req).unwrap();
    assert_eq!(v.status, Status::Finished);
    assert_eq!(v.verdict.unwrap().outcome, Outcome::AliceWins);
    assert_eq!(m.store().list().unwrap().len(), 1);
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let d = rng.gen_range(1..=40);
    q(rng.gen_range(-60..=60), d)
}

/// Hammers sessions with mostly garbage moves and checks that everything
/// that reaches the store replays through the rule engine.
#[test]
fn fuzzed_api_never_stores_illegal_moves() {
    let m = manager();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let specs = [
        (VariantTag::BanachMazur, None, None, "align-center"),
        (VariantTag::Schmidt, Some(q(4, 5)), Some(q(1, 2)), "bob-center-pin"),
        (VariantTag::Schmidt, Some(q(2, 3)), Some(q(2, 3)), "random-legal:3"),
        (VariantTag::McMullen, None, Some(q(1, 4)), "align-right"),
    ];
    for round in 0..60 {
        let (variant, alpha, beta, engine) = specs[round % specs.len()].clone();
        let v = m
            .create_session(CreateSession {
                variant,
                alpha,
                beta,
                shrink: None,
                human: HumanSide::Alice,
                engine: Some(engine.into()),
                alice_engine: None,
                target: None,
                horizon: 3,
                b0: None,
            })
            .unwrap();
        for _ in 0..200 {
            let view = m.get_session(&v.id).unwrap();
            if view.status == Status::Finished {
                break;
            }
            // half the time try a legal move from the hint, otherwise junk
            let attempt = if rng.gen_bool(0.5) {
                let hint = m.hint_legal(&v.id).unwrap();
                let host = hint.host.unwrap();
                let len = hint.required_length.unwrap_or_else(|| host.length() / Rational::from_integer(3));
                let (lo, _) = hint.placements[0]
                    .left_endpoint_range
                    .clone()
                    .unwrap_or((host.lo().clone(), host.lo().clone()));
                Interval::new(lo.clone(), lo + len).unwrap()
            } else {
                let a = random_rational(&mut rng);
                let b = random_rational(&mut rng);
                Interval::new(Rational::min_of(a.clone(), b.clone()), Rational::max_of(a, b)).unwrap()
            };
            let player = if rng.gen_bool(0.1) { Some(Player::Bob) } else { None };
            let _ = m.submit_move(&v.id, player, attempt);
        }
    }
    let list = m.store().list().unwrap();
    assert!(!list.is_empty());
    for meta in list {
        let raw = m.store().get(&meta.id).unwrap().unwrap();
        let t = Transcript::from_json(&raw).unwrap();
        assert_eq!(t.replay().unwrap(), m.final_state(&meta.id).unwrap());
        assert_eq!(t.to_json(), raw);
    }
}

#[test]
fn concurrent_sessions_are_isolated() {
    let m = Arc::new(manager());
    let handles: Vec<_> = (0..8)
        .map(|i| {
            let m = Arc::clone(&m);
            thread::spawn(move || {
                let mut req = schmidt_vs_center_pin(6);
                req.target = Some(format!("co-singleton:{i}"));
                req.engine = Some(format!("bob-center-pin:{i}"));
                let mut v = m.create_session(req).unwrap();
                while v.status != Status::Finished {
                    let hint = m.hint_legal(&v.id).unwrap();
                    let (lo, _) = hint.placements[0].left_endpoint_range.clone().unwrap();
                    let len = hint.required_length.unwrap();
                    v = m.submit_move(&v.id, None, Interval::new(lo.clone(), lo + len).unwrap()).unwrap();
                }
                (i, v)
            })
        })
        .collect();
    for h in handles {
        let (i, v) = h.join().unwrap();
        let x = Rational::from_integer(i);
        assert!(v.moves.iter().all(|mv| mv.interval.contains_point(&x)));
        assert_eq!(v.verdict.unwrap().outcome, Outcome::BobWins);
        assert_eq!(m.get_session(&v.id).unwrap().moves, v.moves);
    }
    assert_eq!(m.len(), 8);
}

#[test]
fn file_store_round_trips_and_reopens() {
    let dir = tempfile::tempdir().unwrap();
    let m = SessionManager::new(Arc::new(FileStore::open(dir.path()).unwrap()));
    let v = m.create_session(schmidt_vs_center_pin(1)).unwrap();
    let v = m.submit_move(&v.id, None, iv(q(-3, 10), q(1, 2))).unwrap();
    let first = m.store().get(&v.id).unwrap().unwrap();

    let reopened = FileStore::open(dir.path()).unwrap();
    assert_eq!(reopened.get(&v.id).unwrap().unwrap(), first);
    assert_eq!(reopened.list().unwrap().len(), 1);
    let t = Transcript::from_json(&first).unwrap();
    assert!(matches!(
        reopened.append(&v.id, &t),
        Err(intersection_games_service::StoreError::DuplicateId(_))
    ));
    assert_eq!(t.to_json(), first);
}
