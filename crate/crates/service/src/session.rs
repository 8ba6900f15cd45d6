//! Interactive play sessions.
//!
//! A session pairs a human side with engine strategies. Every operation on a
//! session holds that session's lock for its whole duration, and the engine
//! replies synchronously inside [`SessionManager::submit_move`].

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, RwLock};

use intersection_games_core::game::{GameError, LegalRegion, Violation};
use intersection_games_core::play::{adjudicate, PlayError};
use intersection_games_core::strategy::{Certificate, StrategyError};
use intersection_games_core::transcript::{Parameters, StrategyNames, Transcript, Verdict};
use intersection_games_core::{
    GameState, GameVariant, Interval, Move, Player, Rational, Strategy, StrategyId,
    TargetDescriptor, VariantTag,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::store::{StoreError, TranscriptStore};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HumanSide {
    Bob,
    Alice,
    /// Both seats are engines.
    None,
    /// Both seats are human; used for hot-seat play and transcript replay.
    Both,
}

impl HumanSide {
    pub fn plays(self, player: Player) -> bool {
        match self {
            HumanSide::Bob => player == Player::Bob,
            HumanSide::Alice => player == Player::Alice,
            HumanSide::None => false,
            HumanSide::Both => true,
        }
    }
}

impl FromStr for HumanSide {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bob" => Ok(HumanSide::Bob),
            "alice" => Ok(HumanSide::Alice),
            "none" => Ok(HumanSide::None),
            "both" => Ok(HumanSide::Both),
            other => Err(format!("unknown side `{other}` (expected bob, alice, none or both)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    AwaitingHuman,
    AwaitingEngine,
    Finished,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::AwaitingHuman => "awaiting-human",
            Status::AwaitingEngine => "awaiting-engine",
            Status::Finished => "finished",
        })
    }
}

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("unknown session `{0}`")]
    UnknownSession(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("inapplicable strategy: {0}")]
    InapplicableStrategy(String),
    #[error("illegal move: {0}")]
    IllegalMove(Violation),
    #[error("not your turn: {0}")]
    NotYourTurn(String),
    #[error("engine failed: {0}")]
    EngineFailed(String),
    #[error(transparent)]
    Store(#[from] StoreError),
}

impl From<GameError> for SessionError {
    fn from(e: GameError) -> Self {
        match e {
            GameError::IllegalMove(v) => SessionError::IllegalMove(v),
            GameError::BadParameters(m) => SessionError::BadParameters(m),
            other => SessionError::EngineFailed(other.to_string()),
        }
    }
}

impl SessionError {
    pub fn code(&self) -> &'static str {
        match self {
            SessionError::UnknownSession(_) => "unknown-session",
            SessionError::BadParameters(_) => "bad-parameters",
            SessionError::InapplicableStrategy(_) => "inapplicable-strategy",
            SessionError::IllegalMove(_) => "illegal-move",
            SessionError::NotYourTurn(_) => "not-your-turn",
            SessionError::EngineFailed(_) => "engine-failed",
            SessionError::Store(_) => "store-error",
        }
    }
}

fn default_horizon() -> usize {
    10
}

/// Request body for creating a session.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CreateSession {
    pub variant: VariantTag,
    #[serde(default)]
    pub alpha: Option<Rational>,
    #[serde(default)]
    pub beta: Option<Rational>,
    #[serde(default)]
    pub shrink: Option<Rational>,
    pub human: HumanSide,
    /// Strategy for the side the human does not play; Bob's when nobody is human.
    #[serde(default)]
    pub engine: Option<String>,
    /// Alice's strategy when nobody is human.
    #[serde(default)]
    pub alice_engine: Option<String>,
    /// Target descriptor; defaults to `undecidable`.
    #[serde(default)]
    pub target: Option<String>,
    #[serde(default = "default_horizon")]
    pub horizon: usize,
    /// Bob's opening.
    #[serde(default)]
    pub b0: Option<Interval>,
}

impl CreateSession {
    pub fn parameters(&self) -> Parameters {
        Parameters {
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            shrink: self.shrink.clone(),
        }
    }
}

struct Session {
    id: String,
    state: GameState,
    human: HumanSide,
    bob: Option<Box<dyn Strategy>>,
    alice: Option<Box<dyn Strategy>>,
    target: TargetDescriptor,
    horizon: usize,
    outcome: Option<(Verdict, Certificate)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionView {
    pub id: String,
    pub variant: VariantTag,
    pub parameters: Parameters,
    pub human: HumanSide,
    pub strategies: SeatView,
    pub target: String,
    pub horizon: usize,
    pub status: Status,
    pub to_move: Option<Player>,
    pub rounds_completed: usize,
    pub moves: Vec<Move>,
    pub bracket: Option<Interval>,
    pub verdict: Option<Verdict>,
    pub certificate: Option<Certificate>,
    pub transcript_id: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeatView {
    pub bob: Option<String>,
    pub alice: Option<String>,
}

impl Session {
    fn seat(&self, player: Player) -> Option<&dyn Strategy> {
        match player {
            Player::Bob => self.bob.as_deref(),
            Player::Alice => self.alice.as_deref(),
        }
    }

    fn status(&self) -> Status {
        if self.state.is_finished() {
            Status::Finished
        } else if self.human.plays(self.state.to_move()) {
            Status::AwaitingHuman
        } else {
            Status::AwaitingEngine
        }
    }

    fn horizon_reached(state: &GameState, horizon: usize) -> bool {
        state.opening().is_some()
            && state.rounds_completed() >= horizon
            && state.to_move() == Player::Alice
    }

    /// Runs engine moves and finishes the game once the horizon is reached.
    /// Works on a copy of the state so failures leave the session untouched.
    fn advance(&self, mut state: GameState) -> Result<(GameState, Option<(Verdict, Certificate)>), SessionError> {
        loop {
            if Self::horizon_reached(&state, self.horizon) {
                let state = state.finish();
                let mut certified = Vec::new();
                for s in [self.bob.as_deref(), self.alice.as_deref()].into_iter().flatten() {
                    certified.push((s.name(), s.certificate(&state)));
                }
                let outcome = adjudicate(&state, &certified, &self.target)
                    .map_err(|e| SessionError::EngineFailed(e.to_string()))?;
                return Ok((state, Some(outcome)));
            }
            let Some(engine) = self.seat(state.to_move()) else {
                return Ok((state, None));
            };
            let iv = engine.next_move(&state).map_err(|e| {
                SessionError::EngineFailed(format!("`{}`: {e}", engine.name()))
            })?;
            let mv = Move::new(engine.owner(), iv);
            if let Err(violation) = state.check_legal(&mv) {
                return Err(SessionError::EngineFailed(
                    PlayError::StrategyProducedIllegalMove {
                        strategy: engine.name(),
                        player: mv.player,
                        interval: Box::new(mv.interval),
                        violation,
                        history: state.history().to_vec(),
                    }
                    .to_string(),
                ));
            }
            state.apply_in_place(mv)?;
        }
    }

    fn transcript(&self) -> Option<Transcript> {
        let (verdict, certificate) = self.outcome.clone()?;
        Some(Transcript {
            variant: self.state.variant().tag(),
            parameters: Parameters::of(self.state.variant()),
            strategies: Some(StrategyNames {
                bob: self.bob.as_ref().map_or("human".into(), |s| s.name()),
                alice: self.alice.as_ref().map_or("human".into(), |s| s.name()),
            }),
            target: Some(self.target.to_string()),
            moves: self.state.history().to_vec(),
            horizon: self.horizon,
            verdict,
            certificate,
        })
    }

    fn view(&self) -> SessionView {
        let finished = self.state.is_finished();
        SessionView {
            id: self.id.clone(),
            variant: self.state.variant().tag(),
            parameters: Parameters::of(self.state.variant()),
            human: self.human,
            strategies: SeatView {
                bob: self.bob.as_ref().map(|s| s.name()),
                alice: self.alice.as_ref().map(|s| s.name()),
            },
            target: self.target.to_string(),
            horizon: self.horizon,
            status: self.status(),
            to_move: (!finished).then(|| self.state.to_move()),
            rounds_completed: self.state.rounds_completed(),
            moves: self.state.history().to_vec(),
            bracket: self.state.bracket().ok().cloned(),
            verdict: self.outcome.as_ref().map(|(v, _)| v.clone()),
            certificate: self.outcome.as_ref().map(|(_, c)| c.clone()),
            transcript_id: finished.then(|| self.id.clone()),
        }
    }
}

/// Registry of live sessions, each behind its own lock.
pub struct SessionManager {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    store: Arc<dyn TranscriptStore>,
}

fn build_strategy(id: &str, owner: Player, variant: &GameVariant) -> Result<Box<dyn Strategy>, SessionError> {
    let parsed: StrategyId = id
        .parse()
        .map_err(|e: StrategyError| SessionError::BadParameters(e.to_string()))?;
    let strategy = parsed
        .build(owner)
        .map_err(|e| SessionError::InapplicableStrategy(e.to_string()))?;
    strategy
        .check_applicable(variant)
        .map_err(|e| SessionError::InapplicableStrategy(format!("`{id}`: {e}")))?;
    Ok(strategy)
}

impl SessionManager {
    pub fn new(store: Arc<dyn TranscriptStore>) -> Self {
        SessionManager {
            sessions: RwLock::new(HashMap::new()),
            store,
        }
    }

    pub fn store(&self) -> &Arc<dyn TranscriptStore> {
        &self.store
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, SessionError> {
        self.sessions
            .read()
            .expect("session table lock")
            .get(id)
            .cloned()
            .ok_or_else(|| SessionError::UnknownSession(id.to_string()))
    }

    pub fn create_session(&self, req: CreateSession) -> Result<SessionView, SessionError> {
        let variant = req.parameters().to_variant(req.variant)?;
        if req.horizon == 0 {
            return Err(SessionError::BadParameters("horizon must be at least 1".into()));
        }
        let target: TargetDescriptor = match &req.target {
            Some(t) => t.parse().map_err(|e| SessionError::BadParameters(format!("{e}")))?,
            None => TargetDescriptor::undecidable(),
        };
        let need = |s: &Option<String>, what: &str| {
            s.clone()
                .ok_or_else(|| SessionError::BadParameters(format!("missing `{what}` strategy")))
        };
        let (bob, alice) = match req.human {
            HumanSide::Alice => (Some(build_strategy(&need(&req.engine, "engine")?, Player::Bob, &variant)?), None),
            HumanSide::Bob => (None, Some(build_strategy(&need(&req.engine, "engine")?, Player::Alice, &variant)?)),
            HumanSide::None => (
                Some(build_strategy(&need(&req.engine, "engine")?, Player::Bob, &variant)?),
                Some(build_strategy(&need(&req.alice_engine, "alice_engine")?, Player::Alice, &variant)?),
            ),
            HumanSide::Both => {
                if req.engine.is_some() {
                    return Err(SessionError::BadParameters("`engine` is unused when both sides are human".into()));
                }
                (None, None)
            }
        };
        if req.human != HumanSide::None && req.alice_engine.is_some() {
            return Err(SessionError::BadParameters(
                "`alice_engine` is only used when nobody is human".into(),
            ));
        }
        let mut state = GameState::initial(variant)?;
        if let Some(b0) = &req.b0 {
            state.apply_in_place(Move::bob(b0.clone()))?;
        }
        let mut session = Session {
            id: uuid::Uuid::new_v4().to_string(),
            state: state.clone(),
            human: req.human,
            bob,
            alice,
            target,
            horizon: req.horizon,
            outcome: None,
        };
        let (state, outcome) = session.advance(state)?;
        session.state = state;
        session.outcome = outcome;
        if let Some(t) = session.transcript() {
            self.store.append(&session.id, &t)?;
        }
        let view = session.view();
        self.sessions
            .write()
            .expect("session table lock")
            .insert(session.id.clone(), Arc::new(Mutex::new(session)));
        Ok(view)
    }

    pub fn get_session(&self, id: &str) -> Result<SessionView, SessionError> {
        let s = self.session(id)?;
        let s = s.lock().expect("session lock");
        Ok(s.view())
    }

    /// Validates and applies the human's move, then the engine's replies.
    /// On any error the session is unchanged.
    pub fn submit_move(
        &self,
        id: &str,
        player: Option<Player>,
        interval: Interval,
    ) -> Result<SessionView, SessionError> {
        let s = self.session(id)?;
        let mut s = s.lock().expect("session lock");
        if s.state.is_finished() {
            return Err(SessionError::NotYourTurn("the game is finished".into()));
        }
        let to_move = s.state.to_move();
        if !s.human.plays(to_move) {
            return Err(SessionError::NotYourTurn(format!("{to_move} is played by the engine")));
        }
        if let Some(p) = player {
            if p != to_move {
                return Err(SessionError::NotYourTurn(format!("{to_move} is to move, not {p}")));
            }
        }
        let mv = Move::new(to_move, interval);
        s.state.check_legal(&mv).map_err(SessionError::IllegalMove)?;
        let next = s.state.apply(mv)?;
        let (state, outcome) = s.advance(next)?;
        let finishing = outcome.is_some();
        let previous = std::mem::replace(&mut s.state, state);
        s.outcome = outcome;
        if finishing {
            if let Some(t) = s.transcript() {
                if let Err(e) = self.store.append(&s.id, &t) {
                    s.state = previous;
                    s.outcome = None;
                    return Err(e.into());
                }
            }
        }
        Ok(s.view())
    }

    /// Feeds every move of `t` through a fresh hot-seat session.
    pub fn replay_transcript(&self, t: &Transcript) -> Result<SessionView, SessionError> {
        let view = self.create_session(CreateSession {
            variant: t.variant,
            alpha: t.parameters.alpha.clone(),
            beta: t.parameters.beta.clone(),
            shrink: t.parameters.shrink.clone(),
            human: HumanSide::Both,
            engine: None,
            alice_engine: None,
            target: t.target.clone(),
            horizon: t.horizon,
            b0: None,
        })?;
        let mut view = view;
        for mv in &t.moves {
            view = self.submit_move(&view.id, Some(mv.player), mv.interval.clone())?;
        }
        Ok(view)
    }

    pub fn hint_legal(&self, id: &str) -> Result<LegalRegion, SessionError> {
        let s = self.session(id)?;
        let s = s.lock().expect("session lock");
        Ok(s.state.legal_region())
    }

    /// The final state a session reached, for replay checks.
    pub fn final_state(&self, id: &str) -> Result<GameState, SessionError> {
        let s = self.session(id)?;
        let s = s.lock().expect("session lock");
        Ok(s.state.clone())
    }

    pub fn len(&self) -> usize {
        self.sessions.read().expect("session table lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
