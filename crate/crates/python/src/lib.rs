//! Python bindings for the interval games engine.
//!
//! Rationals cross the boundary as `"p/q"` strings; anything whose `str()`
//! parses as a rational (ints, `fractions.Fraction`) is accepted on input.
//! Structured results come back as plain dicts and lists.

use intersection_games_core::game::GameError;
use intersection_games_core::regime::ChainError;
use intersection_games_core::strategy::escape;
use intersection_games_core::transcript::Parameters;
use intersection_games_core::tree::{build_tree as core_build_tree, verify_tree, Brancher};
use intersection_games_core::{
    GameState, GameVariant, Interval, Move, Player, Rational, StrategyId, TargetDescriptor,
    Transcript, VariantTag,
};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

create_exception!(intersection_games, IllegalMoveError, PyValueError);

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    obj.str()?.to_string().parse().map_err(value_error)
}

fn opt_rational(obj: Option<&Bound<'_, PyAny>>) -> PyResult<Option<Rational>> {
    obj.map(rational).transpose()
}

fn interval(lo: &Bound<'_, PyAny>, hi: &Bound<'_, PyAny>) -> PyResult<Interval> {
    Interval::new(rational(lo)?, rational(hi)?).map_err(value_error)
}

fn pair(iv: &Interval) -> (String, String) {
    (iv.lo().to_string(), iv.hi().to_string())
}

fn player(name: &str) -> PyResult<Player> {
    name.parse().map_err(value_error)
}

fn variant(
    name: &str,
    alpha: Option<&Bound<'_, PyAny>>,
    beta: Option<&Bound<'_, PyAny>>,
    shrink: Option<&Bound<'_, PyAny>>,
) -> PyResult<GameVariant> {
    let tag: VariantTag = name.parse().map_err(value_error)?;
    Parameters {
        alpha: opt_rational(alpha)?,
        beta: opt_rational(beta)?,
        shrink: opt_rational(shrink)?,
    }
    .to_variant(tag)
    .map_err(value_error)
}

fn game_error(e: GameError) -> PyErr {
    match e {
        GameError::IllegalMove(v) => IllegalMoveError::new_err((v.code.as_str(), v.detail)),
        other => value_error(other),
    }
}

/// Converts through JSON so Python sees exactly the wire format.
fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Regime and boundary margins of Schmidt's game at `(alpha, beta)`.
#[pyfunction]
fn classify<'py>(
    py: Python<'py>,
    alpha: &Bound<'py, PyAny>,
    beta: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &intersection_games_core::classify(&rational(alpha)?, &rational(beta)?))
}

/// Every step of the escape-bound inequality chain, evaluated exactly.
#[pyfunction]
fn verify_chain<'py>(
    py: Python<'py>,
    alpha: &Bound<'py, PyAny>,
    beta: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    match intersection_games_core::verify_chain(&rational(alpha)?, &rational(beta)?) {
        Ok(report) => to_py(py, &report),
        Err(e @ ChainError::NotNondeterminacy { .. }) => Err(value_error(e)),
        Err(e) => Err(PyRuntimeError::new_err(e.to_string())),
    }
}

#[pyfunction]
fn displacement_closed_form(alpha: &Bound<'_, PyAny>, beta: &Bound<'_, PyAny>) -> PyResult<String> {
    let (a, b) = (rational(alpha)?, rational(beta)?);
    if &a * &b == Rational::one() {
        return Err(value_error("alpha * beta must differ from 1"));
    }
    Ok(escape::displacement_closed_form(&a, &b).to_string())
}

#[pyfunction]
fn displacement_partial_sum(alpha: &Bound<'_, PyAny>, beta: &Bound<'_, PyAny>, k: usize) -> PyResult<String> {
    Ok(escape::displacement_partial_sum(&rational(alpha)?, &rational(beta)?, k).to_string())
}

/// Smallest `K <= max_k` whose partial displacement sum exceeds `threshold`.
#[pyfunction]
#[pyo3(signature = (alpha, beta, threshold, max_k=1000))]
fn first_exceeding(
    alpha: &Bound<'_, PyAny>,
    beta: &Bound<'_, PyAny>,
    threshold: &Bound<'_, PyAny>,
    max_k: usize,
) -> PyResult<Option<usize>> {
    Ok(escape::first_exceeding(&rational(alpha)?, &rational(beta)?, &rational(threshold)?, max_k))
}

/// Plays two named strategies against each other and returns the transcript.
#[pyfunction]
#[pyo3(signature = (variant_name, bob, alice, *, alpha=None, beta=None, shrink=None, horizon=10, target="undecidable", b0=None))]
#[allow(clippy::too_many_arguments)]
fn simulate<'py>(
    py: Python<'py>,
    variant_name: &str,
    bob: &str,
    alice: &str,
    alpha: Option<&Bound<'py, PyAny>>,
    beta: Option<&Bound<'py, PyAny>>,
    shrink: Option<&Bound<'py, PyAny>>,
    horizon: usize,
    target: &str,
    b0: Option<(Bound<'py, PyAny>, Bound<'py, PyAny>)>,
) -> PyResult<Bound<'py, PyAny>> {
    let variant = variant(variant_name, alpha, beta, shrink)?;
    let build = |id: &str, owner| {
        id.parse::<StrategyId>()
            .and_then(|s| s.build(owner))
            .map_err(value_error)
    };
    let bob = build(bob, Player::Bob)?;
    let alice = build(alice, Player::Alice)?;
    let target: TargetDescriptor = target.parse().map_err(|e| value_error(format!("{e:?}")))?;
    let b0 = b0.map(|(lo, hi)| interval(&lo, &hi)).transpose()?;
    let t = intersection_games_core::play(&variant, bob.as_ref(), alice.as_ref(), b0, horizon, &target)
        .map_err(value_error)?;
    to_py(py, &t)
}

/// Builds and verifies the Cantor-type tree of a pinned strategy.
#[pyfunction]
#[pyo3(signature = (variant_name, pinned, pinned_player, depth, *, alpha=None, beta=None, shrink=None, brancher=None))]
#[allow(clippy::too_many_arguments)]
fn build_tree<'py>(
    py: Python<'py>,
    variant_name: &str,
    pinned: &str,
    pinned_player: &str,
    depth: usize,
    alpha: Option<&Bound<'py, PyAny>>,
    beta: Option<&Bound<'py, PyAny>>,
    shrink: Option<&Bound<'py, PyAny>>,
    brancher: Option<&str>,
) -> PyResult<Bound<'py, PyAny>> {
    let variant = variant(variant_name, alpha, beta, shrink)?;
    let owner = player(pinned_player)?;
    let strategy = pinned
        .parse::<StrategyId>()
        .and_then(|s| s.build(owner))
        .map_err(value_error)?;
    let brancher = match brancher {
        Some(b) => b.parse::<Brancher>().map_err(value_error)?,
        None => Brancher::default_for(&variant),
    };
    let tree = core_build_tree(&variant, strategy.as_ref(), brancher, depth).map_err(value_error)?;
    let levels = verify_tree(&tree).map_err(value_error)?;
    #[derive(Serialize)]
    struct Out<'a, N: Serialize, L: Serialize> {
        brancher: &'a str,
        depth: usize,
        nodes: N,
        levels: L,
    }
    to_py(
        py,
        &Out {
            brancher: tree.brancher.as_str(),
            depth: tree.depth,
            nodes: tree.export(),
            levels,
        },
    )
}

/// Parses a transcript and replays its moves through the rule engine.
#[pyfunction]
fn replay(transcript: &str) -> PyResult<Game> {
    let t = Transcript::from_json(transcript).map_err(value_error)?;
    let state = t.replay().map_err(game_error)?;
    Ok(Game { state })
}

/// A game in progress; every move is checked against the rules.
#[pyclass(module = "intersection_games")]
struct Game {
    state: GameState,
}

#[pymethods]
impl Game {
    #[new]
    #[pyo3(signature = (variant_name, *, alpha=None, beta=None, shrink=None))]
    fn new(
        variant_name: &str,
        alpha: Option<&Bound<'_, PyAny>>,
        beta: Option<&Bound<'_, PyAny>>,
        shrink: Option<&Bound<'_, PyAny>>,
    ) -> PyResult<Self> {
        let state = GameState::initial(variant(variant_name, alpha, beta, shrink)?).map_err(game_error)?;
        Ok(Game { state })
    }

    #[getter]
    fn to_move(&self) -> &'static str {
        self.state.to_move().as_str()
    }

    #[getter]
    fn rounds_completed(&self) -> usize {
        self.state.rounds_completed()
    }

    #[getter]
    fn history(&self) -> Vec<(&'static str, String, String)> {
        self.state
            .history()
            .iter()
            .map(|m| {
                let (lo, hi) = pair(&m.interval);
                (m.player.as_str(), lo, hi)
            })
            .collect()
    }

    #[getter]
    fn bracket(&self) -> Option<(String, String)> {
        self.state.bracket().ok().map(pair)
    }

    /// Plays `[lo, hi]` for whoever is to move.
    fn play(&mut self, lo: &Bound<'_, PyAny>, hi: &Bound<'_, PyAny>) -> PyResult<()> {
        let mv = Move::new(self.state.to_move(), interval(lo, hi)?);
        self.state.apply_in_place(mv).map_err(game_error)
    }

    /// Plays the move the named strategy chooses and returns it.
    fn engine_move(&mut self, strategy: &str) -> PyResult<(String, String)> {
        let owner = self.state.to_move();
        let s = strategy
            .parse::<StrategyId>()
            .and_then(|id| id.build(owner))
            .map_err(value_error)?;
        s.check_applicable(self.state.variant()).map_err(value_error)?;
        let iv = s.next_move(&self.state).map_err(value_error)?;
        let out = pair(&iv);
        self.state.apply_in_place(Move::new(owner, iv)).map_err(game_error)?;
        Ok(out)
    }

    fn legal_region<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.state.legal_region())
    }

    /// A legal McMullen reply for Bob after Alice's obstacle.
    fn reply_witness(&self) -> PyResult<(String, String)> {
        self.state.mcmullen_reply_witness().map(|iv| pair(&iv)).map_err(game_error)
    }

    fn __len__(&self) -> usize {
        self.state.history().len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Game({}, moves={}, to_move={})",
            self.state.variant().tag().as_str(),
            self.state.history().len(),
            self.to_move()
        )
    }
}

#[pymodule]
fn intersection_games(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("IllegalMoveError", m.py().get_type::<IllegalMoveError>())?;
    m.add_class::<Game>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(verify_chain, m)?)?;
    m.add_function(wrap_pyfunction!(displacement_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(displacement_partial_sum, m)?)?;
    m.add_function(wrap_pyfunction!(first_exceeding, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(build_tree, m)?)?;
    m.add_function(wrap_pyfunction!(replay, m)?)?;
    Ok(())
}
