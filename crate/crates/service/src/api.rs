//! HTTP surface of the session service.
//!
//! Every response body is a JSON object carrying `schema_version`. Errors
//! look like `{"schema_version": 1, "error": {"code", "message", "violation"?}}`.

use std::sync::Arc;

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use intersection_games_core::game::{Player, Violation};
use intersection_games_core::regime::{classify, verify_chain, ChainError};
use intersection_games_core::transcript::Parameters;
use intersection_games_core::tree::{build_tree_with, verify_tree, Brancher, TreeError, TreeOptions};
use intersection_games_core::{Interval, Move, Rational, StrategyId, VariantTag};
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use serde_json::{json, Value};

use crate::session::{CreateSession, SessionError, SessionManager};
use crate::SCHEMA_VERSION;

/// Deepest tree the HTTP endpoint will build.
pub const MAX_HTTP_TREE_DEPTH: usize = 8;

pub struct ApiError {
    status: StatusCode,
    code: &'static str,
    message: String,
    violation: Option<Violation>,
}

impl ApiError {
    fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            code,
            message: message.into(),
            violation: None,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let mut error = json!({ "code": self.code, "message": self.message });
        if let Some(v) = self.violation {
            error["violation"] = serde_json::to_value(v).expect("violations serialize");
        }
        let body = json!({ "schema_version": SCHEMA_VERSION, "error": error });
        (self.status, Json(body)).into_response()
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        let status = match &e {
            SessionError::UnknownSession(_) => StatusCode::NOT_FOUND,
            SessionError::BadParameters(_) => StatusCode::BAD_REQUEST,
            SessionError::InapplicableStrategy(_) | SessionError::IllegalMove(_) => {
                StatusCode::UNPROCESSABLE_ENTITY
            }
            SessionError::NotYourTurn(_) => StatusCode::CONFLICT,
            SessionError::EngineFailed(_) | SessionError::Store(_) => {
                StatusCode::INTERNAL_SERVER_ERROR
            }
        };
        let violation = match &e {
            SessionError::IllegalMove(v) => Some(v.clone()),
            _ => None,
        };
        ApiError {
            status,
            code: e.code(),
            message: e.to_string(),
            violation,
        }
    }
}

fn bad_request(message: impl Into<String>) -> ApiError {
    ApiError::new(StatusCode::BAD_REQUEST, "bad-request", message)
}

/// Wraps a serializable payload with the schema version.
fn versioned<T: Serialize>(payload: T) -> Result<Json<Value>, ApiError> {
    let mut value = serde_json::to_value(payload).map_err(|e| bad_request(e.to_string()))?;
    match value.as_object_mut() {
        Some(obj) => {
            obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
            Ok(Json(value))
        }
        None => Ok(Json(json!({ "schema_version": SCHEMA_VERSION, "value": value }))),
    }
}

/// Parses a JSON body, turning rejections into schema-versioned errors.
fn parse_body<T: for<'de> Deserialize<'de>>(body: &str) -> Result<T, ApiError> {
    serde_json::from_str(body).map_err(|e| bad_request(format!("malformed request: {e}")))
}

pub fn router(manager: Arc<SessionManager>) -> Router {
    Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/moves", post(submit_move))
        .route("/sessions/{id}/hint", get(hint))
        .route("/transcripts", get(list_transcripts))
        .route("/transcripts/{id}", get(get_transcript))
        .route("/classify", post(classify_handler))
        .route("/tree", post(build_tree_handler))
        .route("/chain", post(chain_handler))
        .fallback(|| async {
            ApiError::new(StatusCode::NOT_FOUND, "not-found", "no such endpoint")
        })
        .with_state(manager)
}

async fn create_session(
    State(m): State<Arc<SessionManager>>,
    body: String,
) -> Result<(StatusCode, Json<Value>), ApiError> {
    let req: CreateSession = parse_body(&body)?;
    let view = m.create_session(req)?;
    Ok((StatusCode::CREATED, versioned(view)?))
}

async fn get_session(
    State(m): State<Arc<SessionManager>>,
    Path(id): Path<String>,
) -> Result<Json<Value>, ApiError> {
    versioned(m.get_session(&id)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MoveRequest {
    #[serde(default)]
    player: Option<Player>,
    lo: Rational,
    hi: Rational,
}

async fn submit_move(
    State(m): State<Arc<SessionManager>>,
    Path(id): Path<String>,
    body: String,
) -> Result<Json<Value>, ApiError> {
    let req: MoveRequest = parse_body(&body)?;
    let interval = Interval::new(req.lo, req.hi).map_err(|e| bad_request(e.to_string()))?;
    versioned(m.submit_move(&id, req.player, interval)?)
}

async fn hint(
    State(m): State<Arc<SessionManager>>,
    Path(id): Path<String>,
) -> Result<Json<Value>, ApiError> {
    versioned(m.hint_legal(&id)?)
}

async fn list_transcripts(State(m): State<Arc<SessionManager>>) -> Result<Json<Value>, ApiError> {
    let list = m.store().list().map_err(SessionError::from)?;
    versioned(json!({ "transcripts": list }))
}

#[derive(Serialize)]
struct TranscriptResponse<'a> {
    schema_version: u32,
    id: &'a str,
    transcript: &'a RawValue,
}

async fn get_transcript(
    State(m): State<Arc<SessionManager>>,
    Path(id): Path<String>,
) -> Result<Response, ApiError> {
    let raw = m
        .store()
        .get(&id)
        .map_err(SessionError::from)?
        .ok_or_else(|| {
            ApiError::new(StatusCode::NOT_FOUND, "unknown-transcript", format!("no transcript `{id}`"))
        })?;
    let raw = RawValue::from_string(raw)
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "store-error", e.to_string()))?;
    let body = TranscriptResponse {
        schema_version: SCHEMA_VERSION,
        id: &id,
        transcript: &raw,
    };
    Ok(Json(body).into_response())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairRequest {
    alpha: Rational,
    beta: Rational,
}

async fn classify_handler(body: String) -> Result<Json<Value>, ApiError> {
    let req: PairRequest = parse_body(&body)?;
    versioned(classify(&req.alpha, &req.beta))
}

async fn chain_handler(body: String) -> Result<Json<Value>, ApiError> {
    let req: PairRequest = parse_body(&body)?;
    match verify_chain(&req.alpha, &req.beta) {
        Ok(report) => versioned(report),
        Err(e @ ChainError::NotNondeterminacy { .. }) => Err(ApiError::new(
            StatusCode::UNPROCESSABLE_ENTITY,
            "not-nondeterminacy",
            e.to_string(),
        )),
        Err(e) => Err(ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "chain-step-failed", e.to_string())),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TreeRequest {
    variant: VariantTag,
    #[serde(default)]
    alpha: Option<Rational>,
    #[serde(default)]
    beta: Option<Rational>,
    #[serde(default)]
    shrink: Option<Rational>,
    /// Strategy id of the pinned player.
    pinned: String,
    pinned_player: Player,
    #[serde(default)]
    brancher: Option<String>,
    depth: usize,
    #[serde(default)]
    b0: Option<Interval>,
}

#[derive(Serialize)]
struct TreeNodeView {
    word: String,
    lo: Rational,
    hi: Rational,
    rounds: usize,
    fragment: Vec<Move>,
}

fn tree_error(e: TreeError) -> ApiError {
    let code = match &e {
        TreeError::DepthExceeded { .. } => "depth-exceeded",
        TreeError::BranchCollision { .. } => "branch-collision",
        TreeError::BadBrancher { .. } => "bad-brancher",
        TreeError::UnknownWord(_) => "unknown-word",
        TreeError::InvariantViolation { .. } => "invariant-violation",
        TreeError::Strategy(_) => "inapplicable-strategy",
        TreeError::Game(_) => "bad-parameters",
    };
    ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, code, e.to_string())
}

async fn build_tree_handler(body: String) -> Result<Json<Value>, ApiError> {
    let req: TreeRequest = parse_body(&body)?;
    let params = Parameters {
        alpha: req.alpha,
        beta: req.beta,
        shrink: req.shrink,
    };
    let variant = params
        .to_variant(req.variant)
        .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, "bad-parameters", e.to_string()))?;
    let id: StrategyId = req
        .pinned
        .parse()
        .map_err(|e: intersection_games_core::StrategyError| bad_request(e.to_string()))?;
    let pinned = id
        .build(req.pinned_player)
        .map_err(|e| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "inapplicable-strategy", e.to_string()))?;
    let brancher = match &req.brancher {
        Some(b) => b.parse::<Brancher>().map_err(bad_request)?,
        None => Brancher::default_for(&variant),
    };
    let options = TreeOptions {
        opening: req.b0,
        max_depth: MAX_HTTP_TREE_DEPTH,
    };
    // tree building is CPU-bound exact arithmetic; keep it off the reactor
    let result = tokio::task::spawn_blocking(move || {
        let tree = build_tree_with(&variant, pinned.as_ref(), brancher, req.depth, &options)?;
        let levels = verify_tree(&tree)?;
        Ok::<_, TreeError>((tree, levels))
    })
    .await
    .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))?;
    let (tree, levels) = result.map_err(tree_error)?;
    let nodes: Vec<TreeNodeView> = tree
        .nodes
        .iter()
        .map(|(w, n)| TreeNodeView {
            word: w.to_string(),
            lo: n.interval.lo().clone(),
            hi: n.interval.hi().clone(),
            rounds: n.rounds,
            fragment: n.fragment.clone(),
        })
        .collect();
    versioned(json!({
        "variant": tree.variant.tag(),
        "pinned": tree.pinned_strategy,
        "pinned_player": tree.pinned,
        "brancher": tree.brancher.to_string(),
        "depth": tree.depth,
        "nodes": nodes,
        "levels": levels,
    }))
}
