use intersection_games_core::rational::q;
use intersection_games_core::strategy::escape::{displacement_partial_sum, first_exceeding};
use intersection_games_core::strategy::{Align, SplitThirds};
use intersection_games_core::tree::{build_tree, verify_tree, Brancher, TreeError};
use intersection_games_core::{BinaryWord, GameVariant, Player, Rational};

#[test]
fn bm_depth_two_has_four_disjoint_leaves() {
    let t = build_tree(
        &GameVariant::banach_mazur(),
        &SplitThirds::new(Player::Alice),
        Brancher::Split,
        2,
    )
    .unwrap();
    let leaves: Vec<_> = BinaryWord::all_of_length(2).map(|w| t.nodes[&w].interval.clone()).collect();
    for (i, a) in leaves.iter().enumerate() {
        for b in &leaves[i + 1..] {
            assert!(a.is_disjoint(b));
        }
    }
    for w in BinaryWord::all_of_length(2) {
        let parent = w.parent().unwrap();
        assert!(t.nodes[&parent].interval.contains(&t.nodes[&w].interval));
    }
}

#[test]
fn schmidt_segments_match_escape_oracle() {
    let (a, b) = (q(4, 5), q(4, 5));
    let v = GameVariant::schmidt(a.clone(), b.clone()).unwrap();
    let t = build_tree(&v, &Align::center(Player::Alice), Brancher::endpoint_pair(), 3).unwrap();
    let reports = verify_tree(&t).unwrap();
    assert_eq!(reports[3].count, 8);
    // a segment of r Bob rounds realizes the partial sum up to index r - 1
    let k = first_exceeding(&a, &b, &(&b - Rational::half()), 100).unwrap();
    assert_eq!(k, 2);
    for (w, node) in &t.nodes {
        if !w.is_empty() {
            assert_eq!(node.rounds, k + 1, "segment at `{w}`");
        }
    }
}

#[test]
fn schmidt_sibling_gaps_beat_escape_margin() {
    let (a, b) = (q(4, 5), q(4, 5));
    let v = GameVariant::schmidt(a.clone(), b.clone()).unwrap();
    let t = build_tree(&v, &Align::center(Player::Alice), Brancher::endpoint_pair(), 4).unwrap();
    for (w, node) in &t.nodes {
        let Some(gap) = t.sibling_gap(w) else { continue };
        let rounds = t.nodes[&w.child(false)].rounds;
        let margin = displacement_partial_sum(&a, &b, rounds - 1) - (&b - Rational::half());
        assert!(gap.is_positive());
        assert!(gap >= margin * node.interval.length(), "gap at `{w}`");
    }
}

#[test]
fn mcmullen_depth_two() {
    let v = GameVariant::mcmullen(q(1, 5)).unwrap();
    let t = build_tree(&v, &Align::left(Player::Bob), Brancher::Obstacles, 2).unwrap();
    assert_eq!(verify_tree(&t).unwrap().iter().map(|r| r.count).collect::<Vec<_>>(), [1, 2, 4]);
}

#[test]
fn rebuild_is_identical() {
    let v = GameVariant::mcmullen(q(1, 4)).unwrap();
    let build = || build_tree(&v, &Align::center(Player::Bob), Brancher::Obstacles, 4).unwrap();
    assert_eq!(build(), build());
}

#[test]
fn bad_brancher_choices_fail() {
    let schmidt = GameVariant::schmidt(q(4, 5), q(4, 5)).unwrap();
    // both ratios are at least 1/2, so plain splitting is impossible
    let err = build_tree(&schmidt, &Align::center(Player::Alice), Brancher::Split, 1).unwrap_err();
    assert!(matches!(err, TreeError::Strategy(_)));
    let err = build_tree(&schmidt, &Align::center(Player::Alice), Brancher::Obstacles, 1).unwrap_err();
    assert!(matches!(err, TreeError::BadBrancher { .. }));
}
