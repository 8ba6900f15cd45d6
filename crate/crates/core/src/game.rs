//! Rule engines for the Banach–Mazur, Schmidt and McMullen interval games.
//!
//! Bob always opens with `B_0`; Alice answers with `A_0`; Bob plays `B_1`,
//! and so on. A [`GameState`] is an immutable record of that alternating
//! history. [`GameState::check_legal`] is the single place where the rules of
//! each variant are enforced.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interval::{AnchorSpec, Interval};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Bob,
    Alice,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Bob => Player::Alice,
            Player::Alice => Player::Bob,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Player::Bob => "bob",
            Player::Alice => "alice",
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Player {
    type Err = GameError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "bob" => Ok(Player::Bob),
            "alice" => Ok(Player::Alice),
            _ => Err(GameError::BadParameters(format!("unknown player `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VariantTag {
    BanachMazur,
    Schmidt,
    #[serde(rename = "mcmullen")]
    McMullen,
}

impl VariantTag {
    pub fn as_str(self) -> &'static str {
        match self {
            VariantTag::BanachMazur => "banach-mazur",
            VariantTag::Schmidt => "schmidt",
            VariantTag::McMullen => "mcmullen",
        }
    }
}

impl std::str::FromStr for VariantTag {
    type Err = GameError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "banach-mazur" | "bm" => Ok(VariantTag::BanachMazur),
            "schmidt" => Ok(VariantTag::Schmidt),
            "mcmullen" => Ok(VariantTag::McMullen),
            _ => Err(GameError::BadParameters(format!("unknown variant `{s}`"))),
        }
    }
}

/// Which game is being played, with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GameVariant {
    /// `shrink`, when set, caps each Bob move at `shrink` times his previous
    /// move's length so that finite-horizon brackets shrink to zero.
    BanachMazur { shrink: Option<Rational> },
    Schmidt { alpha: Rational, beta: Rational },
    McMullen { beta: Rational },
}

impl GameVariant {
    pub const DEFAULT_SHRINK: (i64, i64) = (1, 2);

    pub fn banach_mazur() -> Self {
        let (n, d) = Self::DEFAULT_SHRINK;
        GameVariant::BanachMazur {
            shrink: Some(Rational::new(n, d)),
        }
    }

    pub fn banach_mazur_with_shrink(shrink: Option<Rational>) -> Result<Self, GameError> {
        let v = GameVariant::BanachMazur { shrink };
        v.validate()?;
        Ok(v)
    }

    pub fn schmidt(alpha: Rational, beta: Rational) -> Result<Self, GameError> {
        let v = GameVariant::Schmidt { alpha, beta };
        v.validate()?;
        Ok(v)
    }

    pub fn mcmullen(beta: Rational) -> Result<Self, GameError> {
        let v = GameVariant::McMullen { beta };
        v.validate()?;
        Ok(v)
    }

    pub fn tag(&self) -> VariantTag {
        match self {
            GameVariant::BanachMazur { .. } => VariantTag::BanachMazur,
            GameVariant::Schmidt { .. } => VariantTag::Schmidt,
            GameVariant::McMullen { .. } => VariantTag::McMullen,
        }
    }

    pub fn alpha(&self) -> Option<&Rational> {
        match self {
            GameVariant::Schmidt { alpha, .. } => Some(alpha),
            _ => None,
        }
    }

    pub fn beta(&self) -> Option<&Rational> {
        match self {
            GameVariant::Schmidt { beta, .. } | GameVariant::McMullen { beta } => Some(beta),
            _ => None,
        }
    }

    pub fn shrink(&self) -> Option<&Rational> {
        match self {
            GameVariant::BanachMazur { shrink } => shrink.as_ref(),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<(), GameError> {
        match self {
            GameVariant::BanachMazur { shrink: Some(s) } if !s.in_open_unit() => Err(
                GameError::BadParameters(format!("shrink factor {s} must lie in (0, 1)")),
            ),
            GameVariant::BanachMazur { .. } => Ok(()),
            GameVariant::Schmidt { alpha, beta } => {
                if !alpha.in_open_unit() || !beta.in_open_unit() {
                    Err(GameError::BadParameters(format!(
                        "Schmidt parameters need 0 < alpha, beta < 1, got alpha={alpha}, beta={beta}"
                    )))
                } else {
                    Ok(())
                }
            }
            GameVariant::McMullen { beta } => {
                if !crate::regime::mcmullen_param_ok(beta) {
                    Err(GameError::BadParameters(format!(
                        "McMullen parameter needs 0 < beta < 1/3, got beta={beta}"
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Length ratio the given player must use relative to the reference
    /// interval (Schmidt and McMullen only).
    pub fn ratio_for(&self, player: Player) -> Option<&Rational> {
        match (self, player) {
            (GameVariant::Schmidt { alpha, .. }, Player::Alice) => Some(alpha),
            (GameVariant::Schmidt { beta, .. }, Player::Bob) => Some(beta),
            (GameVariant::McMullen { beta }, _) => Some(beta),
            _ => None,
        }
    }
}

/// One player's interval choice. Serialized flat as `{player, lo, hi}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMove", into = "RawMove")]
pub struct Move {
    pub player: Player,
    pub interval: Interval,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMove {
    player: Player,
    lo: Rational,
    hi: Rational,
}

impl TryFrom<RawMove> for Move {
    type Error = crate::interval::IntervalError;
    fn try_from(raw: RawMove) -> Result<Self, Self::Error> {
        Ok(Move {
            player: raw.player,
            interval: Interval::new(raw.lo, raw.hi)?,
        })
    }
}

impl From<Move> for RawMove {
    fn from(m: Move) -> Self {
        RawMove {
            player: m.player,
            lo: m.interval.lo().clone(),
            hi: m.interval.hi().clone(),
        }
    }
}

impl Move {
    pub fn new(player: Player, interval: Interval) -> Self {
        Move { player, interval }
    }

    pub fn bob(interval: Interval) -> Self {
        Move::new(Player::Bob, interval)
    }

    pub fn alice(interval: Interval) -> Self {
        Move::new(Player::Alice, interval)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationCode {
    WrongPlayer,
    NotNested,
    WrongLength,
    NotInComplement,
    NotShrinking,
    Degenerate,
}

impl ViolationCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationCode::WrongPlayer => "wrong-player",
            ViolationCode::NotNested => "not-nested",
            ViolationCode::WrongLength => "wrong-length",
            ViolationCode::NotInComplement => "not-in-complement",
            ViolationCode::NotShrinking => "not-shrinking",
            ViolationCode::Degenerate => "degenerate",
        }
    }
}

/// The first game rule a proposed move breaks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize, Error)]
#[error("{}: {detail}", code.as_str())]
pub struct Violation {
    pub code: ViolationCode,
    pub detail: String,
}

impl Violation {
    fn new(code: ViolationCode, detail: impl Into<String>) -> Self {
        Violation {
            code,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("illegal move: {0}")]
    IllegalMove(Violation),
    #[error("history is empty")]
    EmptyHistory,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no legal reply: {0}")]
    NoLegalReply(String),
}

/// Immutable game position: variant plus the alternating move history.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GameState {
    variant: GameVariant,
    history: Vec<Move>,
    finished: bool,
}

impl GameState {
    pub fn initial(variant: GameVariant) -> Result<Self, GameError> {
        variant.validate()?;
        Ok(GameState {
            variant,
            history: Vec::new(),
            finished: false,
        })
    }

    /// Rebuilds a state by applying `moves` one at a time from the opening.
    pub fn replay(variant: GameVariant, moves: &[Move]) -> Result<Self, GameError> {
        let mut state = GameState::initial(variant)?;
        for mv in moves {
            state.apply_in_place(mv.clone())?;
        }
        Ok(state)
    }

    pub fn variant(&self) -> &GameVariant {
        &self.variant
    }

    pub fn history(&self) -> &[Move] {
        &self.history
    }

    pub fn is_finished(&self) -> bool {
        self.finished
    }

    pub fn to_move(&self) -> Player {
        if self.history.len().is_multiple_of(2) {
            Player::Bob
        } else {
            Player::Alice
        }
    }

    /// Number of completed Alice-then-Bob rounds after Bob's opening.
    pub fn rounds_completed(&self) -> usize {
        self.history.len().saturating_sub(1) / 2
    }

    pub fn last_move(&self) -> Option<&Move> {
        self.history.last()
    }

    pub fn last_of(&self, player: Player) -> Option<&Interval> {
        self.history
            .iter()
            .rev()
            .find(|m| m.player == player)
            .map(|m| &m.interval)
    }

    pub fn opening(&self) -> Option<&Interval> {
        self.history.first().map(|m| &m.interval)
    }

    pub fn bob_moves(&self) -> impl Iterator<Item = &Interval> {
        self.history.iter().step_by(2).map(|m| &m.interval)
    }

    pub fn alice_moves(&self) -> impl Iterator<Item = &Interval> {
        self.history.iter().skip(1).step_by(2).map(|m| &m.interval)
    }

    pub fn finish(mut self) -> Self {
        self.finished = true;
        self
    }

    /// The interval the next move must lie inside, `None` before Bob's opening.
    pub fn host(&self) -> Option<&Interval> {
        match (&self.variant, self.to_move()) {
            (GameVariant::McMullen { .. }, _) => self.last_of(Player::Bob),
            _ => self.last_move().map(|m| &m.interval),
        }
    }

    /// Exact length the next move must have, if the variant fixes one.
    pub fn required_length(&self) -> Option<Rational> {
        let mover = self.to_move();
        let host = self.host()?;
        match &self.variant {
            GameVariant::BanachMazur { .. } => None,
            GameVariant::Schmidt { alpha, beta } => {
                let ratio = if mover == Player::Alice { alpha } else { beta };
                Some(ratio * host.length())
            }
            // both players use beta * |B_n|
            GameVariant::McMullen { beta } => Some(beta * host.length()),
        }
    }

    /// Upper bound on the next move's length in Banach–Mazur with a shrink rule.
    pub fn length_cap(&self) -> Option<Rational> {
        match &self.variant {
            GameVariant::BanachMazur { shrink: Some(s) } if self.to_move() == Player::Bob => {
                self.last_of(Player::Bob).map(|b| s * b.length())
            }
            _ => None,
        }
    }

    /// Checks `mv` against the rules without touching the state.
    pub fn check_legal(&self, mv: &Move) -> Result<(), Violation> {
        use ViolationCode::*;
        if self.finished {
            return Err(Violation::new(WrongPlayer, "the game is finished"));
        }
        let mover = self.to_move();
        if mv.player != mover {
            return Err(Violation::new(
                WrongPlayer,
                format!("{} to move, got a move by {}", mover, mv.player),
            ));
        }
        let cand = &mv.interval;
        if cand.is_degenerate() {
            return Err(Violation::new(
                Degenerate,
                format!("{cand} has zero length"),
            ));
        }
        let Some(host) = self.host() else {
            // Bob's opening is any nondegenerate interval
            return Ok(());
        };
        if !host.contains(cand) {
            return Err(Violation::new(
                NotNested,
                format!("{cand} is not contained in {host}"),
            ));
        }
        match &self.variant {
            GameVariant::BanachMazur { .. } => {
                if let Some(cap) = self.length_cap() {
                    if cand.length() > cap {
                        return Err(Violation::new(
                            NotShrinking,
                            format!(
                                "length {} exceeds the shrink cap {cap}",
                                cand.length()
                            ),
                        ));
                    }
                }
                Ok(())
            }
            GameVariant::Schmidt { .. } => self.check_length(cand),
            GameVariant::McMullen { .. } => {
                self.check_length(cand)?;
                if mover == Player::Bob {
                    let obstacle = self
                        .last_of(Player::Alice)
                        .expect("Bob's non-opening move follows an Alice move");
                    let gaps = host
                        .gap_components(obstacle)
                        .expect("Alice's obstacle lies in Bob's interval");
                    if !gaps.iter().any(|g| g.contains(cand)) {
                        return Err(Violation::new(
                            NotInComplement,
                            format!("{cand} is not inside a component of {host} minus {obstacle}"),
                        ));
                    }
                }
                Ok(())
            }
        }
    }

    fn check_length(&self, cand: &Interval) -> Result<(), Violation> {
        let required = self
            .required_length()
            .expect("length-ratio variants fix the length after the opening");
        if cand.length() != required {
            return Err(Violation::new(
                ViolationCode::WrongLength,
                format!("length {} but the rules require {required}", cand.length()),
            ));
        }
        Ok(())
    }

    /// Returns a new state with `mv` appended.
    pub fn apply(&self, mv: Move) -> Result<GameState, GameError> {
        let mut next = self.clone();
        next.apply_in_place(mv)?;
        Ok(next)
    }

    /// In-place variant of [`GameState::apply`]; leaves `self` untouched on error.
    pub fn apply_in_place(&mut self, mv: Move) -> Result<(), GameError> {
        self.check_legal(&mv).map_err(GameError::IllegalMove)?;
        self.history.push(mv);
        Ok(())
    }

    /// The finite-horizon witness for the intersection of all moves.
    ///
    /// For Banach–Mazur and Schmidt this is the last move. For McMullen it is
    /// the last Bob interval, since Alice's moves are obstacles.
    pub fn bracket(&self) -> Result<&Interval, GameError> {
        let found = match self.variant {
            GameVariant::McMullen { .. } => self.last_of(Player::Bob),
            _ => self.last_move().map(|m| &m.interval),
        };
        found.ok_or(GameError::EmptyHistory)
    }

    /// A concrete legal Bob reply in McMullen's game: left-aligned in the
    /// largest gap left by Alice's obstacle, ties going to the left gap.
    pub fn mcmullen_reply_witness(&self) -> Result<Interval, GameError> {
        let GameVariant::McMullen { .. } = self.variant else {
            return Err(GameError::Precondition("not a McMullen game".into()));
        };
        if self.to_move() != Player::Bob || self.history.is_empty() {
            return Err(GameError::Precondition(
                "Bob must be to move after an Alice obstacle".into(),
            ));
        }
        let host = self.host().expect("nonempty history");
        let obstacle = self.last_of(Player::Alice).expect("Alice has moved");
        let len = self.required_length().expect("ratio variant");
        let gaps = host
            .gap_components(obstacle)
            .map_err(|e| GameError::Precondition(e.to_string()))?;
        let widest = gaps.iter().fold(None::<&Interval>, |best, g| match best {
            Some(b) if b.length() >= g.length() => Some(b),
            _ => Some(g),
        });
        match widest {
            Some(g) if g.length() >= len => Ok(g
                .place_subinterval(&len, &AnchorSpec::LeftAligned)
                .expect("gap is long enough")),
            _ => Err(GameError::NoLegalReply(format!(
                "no gap of {host} minus {obstacle} has length {len}"
            ))),
        }
    }

    /// Description of the set of legal next moves.
    pub fn legal_region(&self) -> LegalRegion {
        let player = self.to_move();
        let host = self.host().cloned();
        let required_length = self.required_length();
        let max_length = self.length_cap();
        let mut placements = Vec::new();
        if let Some(h) = &host {
            let within: Vec<Interval> = match (&self.variant, player) {
                (GameVariant::McMullen { .. }, Player::Bob) => {
                    let obstacle = self.last_of(Player::Alice).expect("Alice has moved");
                    h.gap_components(obstacle).expect("obstacle inside host")
                }
                _ => vec![h.clone()],
            };
            for w in within {
                match &required_length {
                    Some(len) if w.length() >= *len => placements.push(Placement {
                        left_endpoint_range: Some((w.lo().clone(), w.hi() - len)),
                        within: w,
                    }),
                    Some(_) => {}
                    None => placements.push(Placement {
                        within: w,
                        left_endpoint_range: None,
                    }),
                }
            }
        }
        LegalRegion {
            player,
            host,
            required_length,
            max_length,
            placements,
        }
    }
}

/// One connected region where a legal move can sit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    pub within: Interval,
    /// Feasible left endpoints `[lo, hi]` when the length is fixed.
    pub left_endpoint_range: Option<(Rational, Rational)>,
}

/// Enough information for a client to render the legal move set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegalRegion {
    pub player: Player,
    pub host: Option<Interval>,
    pub required_length: Option<Rational>,
    pub max_length: Option<Rational>,
    pub placements: Vec<Placement>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::iv;
    use crate::rational::q;

    fn schmidt(a: Rational, b: Rational) -> GameState {
        GameState::initial(GameVariant::schmidt(a, b).unwrap()).unwrap()
    }

    fn mcmullen(b: Rational) -> GameState {
        GameState::initial(GameVariant::mcmullen(b).unwrap()).unwrap()
    }

    #[test]
    fn initial_states() {
        let s = schmidt(q(1, 2), q(1, 2));
        assert!(s.history().is_empty());
        assert_eq!(s.to_move(), Player::Bob);
        assert!(!s.is_finished());
        assert!(matches!(
            GameVariant::mcmullen(q(1, 3)),
            Err(GameError::BadParameters(_))
        ));
        assert!(GameVariant::mcmullen(q(1, 4)).is_ok());
        assert!(GameVariant::schmidt(q(1, 1), q(1, 2)).is_err());
        assert!(GameVariant::schmidt(q(0, 1), q(1, 2)).is_err());
        assert!(GameVariant::banach_mazur_with_shrink(Some(q(1, 1))).is_err());
        assert!(GameVariant::banach_mazur_with_shrink(None).is_ok());
    }

    #[test]
    fn schmidt_alice_length_rule() {
        let s = schmidt(q(1, 2), q(1, 2))
            .apply(Move::bob(Interval::unit()))
            .unwrap();
        assert_eq!(s.check_legal(&Move::alice(iv(q(0, 1), q(1, 2)))), Ok(()));
        let err = s.check_legal(&Move::alice(iv(q(0, 1), q(1, 3)))).unwrap_err();
        assert_eq!(err.code, ViolationCode::WrongLength);
    }

    #[test]
    fn violations_in_order() {
        let s = schmidt(q(1, 2), q(1, 2))
            .apply(Move::bob(Interval::unit()))
            .unwrap();
        let wrong_player = s.check_legal(&Move::bob(iv(q(0, 1), q(1, 2)))).unwrap_err();
        assert_eq!(wrong_player.code, ViolationCode::WrongPlayer);
        let degenerate = s.check_legal(&Move::alice(iv(q(1, 2), q(1, 2)))).unwrap_err();
        assert_eq!(degenerate.code, ViolationCode::Degenerate);
        let outside = s.check_legal(&Move::alice(iv(q(3, 4), q(5, 4)))).unwrap_err();
        assert_eq!(outside.code, ViolationCode::NotNested);
    }

    #[test]
    fn degenerate_opening_rejected() {
        let s = schmidt(q(1, 2), q(1, 2));
        let err = s.check_legal(&Move::bob(iv(q(1, 1), q(1, 1)))).unwrap_err();
        assert_eq!(err.code, ViolationCode::Degenerate);
    }

    #[test]
    fn mcmullen_bob_reply_in_gap() {
        let s = mcmullen(q(1, 4))
            .apply(Move::bob(Interval::unit()))
            .unwrap()
            .apply(Move::alice(iv(q(3, 8), q(5, 8))))
            .unwrap();
        assert_eq!(s.check_legal(&Move::bob(iv(q(0, 1), q(1, 4)))), Ok(()));
        // straddles the obstacle
        let err = s.check_legal(&Move::bob(iv(q(1, 4), q(1, 2)))).unwrap_err();
        assert_eq!(err.code, ViolationCode::NotInComplement);
        // touching the obstacle's endpoint is allowed
        assert_eq!(s.check_legal(&Move::bob(iv(q(1, 8), q(3, 8)))), Ok(()));
        let err = s.check_legal(&Move::bob(iv(q(0, 1), q(1, 8)))).unwrap_err();
        assert_eq!(err.code, ViolationCode::WrongLength);
    }

    #[test]
    fn mcmullen_lengths_follow_bob() {
        let s = mcmullen(q(1, 4))
            .apply(Move::bob(Interval::unit()))
            .unwrap()
            .apply(Move::alice(iv(q(3, 8), q(5, 8))))
            .unwrap()
            .apply(Move::bob(iv(q(0, 1), q(1, 4))))
            .unwrap();
        assert_eq!(s.required_length(), Some(q(1, 16)));
        assert_eq!(s.host(), Some(&iv(q(0, 1), q(1, 4))));
    }

    #[test]
    fn apply_is_pure() {
        let s = schmidt(q(1, 2), q(1, 2))
            .apply(Move::bob(Interval::unit()))
            .unwrap();
        let next = s.apply(Move::alice(iv(q(0, 1), q(1, 2)))).unwrap();
        assert_eq!(next.history().len(), s.history().len() + 1);
        let before = s.clone();
        let err = s.apply(Move::alice(iv(q(0, 1), q(1, 3)))).unwrap_err();
        assert!(matches!(err, GameError::IllegalMove(v) if v.code == ViolationCode::WrongLength));
        assert_eq!(s, before);
    }

    #[test]
    fn schmidt_four_moves_lengths() {
        let s = GameState::replay(
            GameVariant::schmidt(q(1, 2), q(1, 2)).unwrap(),
            &[
                Move::bob(Interval::unit()),
                Move::alice(iv(q(0, 1), q(1, 2))),
                Move::bob(iv(q(1, 4), q(1, 2))),
                Move::alice(iv(q(1, 4), q(3, 8))),
            ],
        )
        .unwrap();
        let lens: Vec<Rational> = s.history().iter().map(|m| m.interval.length()).collect();
        assert_eq!(lens, vec![q(1, 1), q(1, 2), q(1, 4), q(1, 8)]);
        assert_eq!(s.bracket().unwrap().length(), q(1, 8));
    }

    #[test]
    fn brackets() {
        let s = schmidt(q(1, 2), q(1, 2));
        assert_eq!(s.bracket(), Err(GameError::EmptyHistory));
        let s = s
            .apply(Move::bob(Interval::unit()))
            .unwrap()
            .apply(Move::alice(iv(q(0, 1), q(1, 2))))
            .unwrap();
        assert_eq!(s.bracket().unwrap(), &iv(q(0, 1), q(1, 2)));

        let m = mcmullen(q(1, 4))
            .apply(Move::bob(Interval::unit()))
            .unwrap()
            .apply(Move::alice(iv(q(3, 8), q(5, 8))))
            .unwrap();
        assert_eq!(m.bracket().unwrap(), &Interval::unit());
        let m = m.apply(Move::bob(iv(q(0, 1), q(1, 4)))).unwrap();
        assert_eq!(m.bracket().unwrap(), &iv(q(0, 1), q(1, 4)));

        let bm = GameState::initial(GameVariant::banach_mazur())
            .unwrap()
            .apply(Move::bob(Interval::unit()))
            .unwrap();
        assert_eq!(bm.bracket().unwrap(), &Interval::unit());
    }

    #[test]
    fn banach_mazur_shrink_rule() {
        let s = GameState::initial(GameVariant::banach_mazur())
            .unwrap()
            .apply(Move::bob(Interval::unit()))
            .unwrap()
            .apply(Move::alice(iv(q(0, 1), q(9, 10))))
            .unwrap();
        let err = s.check_legal(&Move::bob(iv(q(0, 1), q(3, 5)))).unwrap_err();
        assert_eq!(err.code, ViolationCode::NotShrinking);
        assert_eq!(s.check_legal(&Move::bob(iv(q(0, 1), q(1, 2)))), Ok(()));

        let free = GameState::initial(GameVariant::banach_mazur_with_shrink(None).unwrap())
            .unwrap()
            .apply(Move::bob(Interval::unit()))
            .unwrap()
            .apply(Move::alice(iv(q(0, 1), q(9, 10))))
            .unwrap();
        assert_eq!(free.check_legal(&Move::bob(iv(q(0, 1), q(9, 10)))), Ok(()));
    }

    #[test]
    fn finished_state_rejects_moves() {
        let s = schmidt(q(1, 2), q(1, 2))
            .apply(Move::bob(Interval::unit()))
            .unwrap()
            .finish();
        let err = s.check_legal(&Move::alice(iv(q(0, 1), q(1, 2)))).unwrap_err();
        assert_eq!(err.code, ViolationCode::WrongPlayer);
    }

    #[test]
    fn witness_examples() {
        let after = |b: Rational, obstacle: Interval| {
            mcmullen(b)
                .apply(Move::bob(Interval::unit()))
                .unwrap()
                .apply(Move::alice(obstacle))
                .unwrap()
        };
        assert_eq!(
            after(q(1, 4), iv(q(0, 1), q(1, 4)))
                .mcmullen_reply_witness()
                .unwrap(),
            iv(q(1, 4), q(1, 2))
        );
        assert_eq!(
            after(q(1, 4), iv(q(3, 8), q(5, 8)))
                .mcmullen_reply_witness()
                .unwrap(),
            iv(q(0, 1), q(1, 4))
        );
        assert_eq!(
            after(q(3, 10), iv(q(7, 20), q(13, 20)))
                .mcmullen_reply_witness()
                .unwrap(),
            iv(q(0, 1), q(3, 10))
        );
    }

    #[test]
    fn witness_preconditions() {
        let s = mcmullen(q(1, 4)).apply(Move::bob(Interval::unit())).unwrap();
        assert!(matches!(s.mcmullen_reply_witness(), Err(GameError::Precondition(_))));
        let sch = schmidt(q(1, 2), q(1, 2));
        assert!(matches!(sch.mcmullen_reply_witness(), Err(GameError::Precondition(_))));
    }

    #[test]
    fn hint_regions() {
        let s = schmidt(q(1, 2), q(1, 2))
            .apply(Move::bob(Interval::unit()))
            .unwrap();
        let r = s.legal_region();
        assert_eq!(r.host, Some(Interval::unit()));
        assert_eq!(r.required_length, Some(q(1, 2)));
        assert_eq!(
            r.placements[0].left_endpoint_range,
            Some((q(0, 1), q(1, 2)))
        );

        let m = mcmullen(q(1, 4))
            .apply(Move::bob(Interval::unit()))
            .unwrap()
            .apply(Move::alice(iv(q(3, 8), q(5, 8))))
            .unwrap();
        let r = m.legal_region();
        assert_eq!(r.placements.len(), 2);
        assert_eq!(r.placements[0].within, iv(q(0, 1), q(3, 8)));
        assert_eq!(r.placements[0].left_endpoint_range, Some((q(0, 1), q(1, 8))));
        assert_eq!(r.placements[1].left_endpoint_range, Some((q(5, 8), q(3, 4))));

        let bm = GameState::initial(GameVariant::banach_mazur())
            .unwrap()
            .apply(Move::bob(Interval::unit()))
            .unwrap()
            .apply(Move::alice(iv(q(0, 1), q(1, 2))))
            .unwrap();
        let r = bm.legal_region();
        assert_eq!(r.required_length, None);
        assert_eq!(r.max_length, Some(q(1, 2)));
        assert_eq!(r.placements[0].within, iv(q(0, 1), q(1, 2)));

        let opening = schmidt(q(1, 2), q(1, 2)).legal_region();
        assert!(opening.host.is_none() && opening.placements.is_empty());
    }
}
