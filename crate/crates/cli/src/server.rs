//! HTTP session service.

use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use qptilt::{examples, parse_document, Error, ExportFormat, MutationStep, Session, SessionOptions, Side, StateView};
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};
use tower_http::cors::CorsLayer;

#[derive(Default)]
pub struct AppState {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    next: AtomicU64,
}

pub type Shared = Arc<AppState>;

pub fn router() -> Router {
    router_with(Arc::default())
}

pub fn router_with(state: Shared) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(show))
        .route("/sessions/{id}/steps", post(step))
        .route("/sessions/{id}/undo", post(undo))
        .route("/sessions/{id}/export", get(export))
        .layer(CorsLayer::permissive())
        .with_state(state)
}

pub async fn serve(port: u16) -> anyhow::Result<()> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router()).await?;
    Ok(())
}

struct ApiError {
    status: StatusCode,
    body: serde_json::Value,
}

impl ApiError {
    fn new(status: StatusCode, message: impl ToString) -> Self {
        ApiError {
            status,
            body: json!({ "error": message.to_string() }),
        }
    }

    fn not_found(id: &str) -> Self {
        Self::new(StatusCode::NOT_FOUND, format!("unknown session `{id}`"))
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        match &e {
            Error::IllegalStep { classification, .. } => ApiError {
                status: StatusCode::CONFLICT,
                body: json!({ "error": e.to_string(), "classification": classification }),
            },
            _ => ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, e),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

#[derive(Deserialize)]
pub struct CreateRequest {
    document: Option<String>,
    example: Option<String>,
    bound: Option<usize>,
    cap: Option<usize>,
}

#[derive(Serialize)]
pub struct SessionResponse {
    id: String,
    state: StateView,
    /// False once a step at a non-strict vertex dropped the cut.
    cut_guarantee: bool,
}

fn respond(id: &str, s: &Session) -> SessionResponse {
    SessionResponse {
        id: id.to_string(),
        state: s.view(),
        cut_guarantee: s.current().cut.is_some(),
    }
}

fn lookup(state: &AppState, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
    let table = state.sessions.read().expect("session table");
    table.get(id).cloned().ok_or_else(|| ApiError::not_found(id))
}

async fn create(
    State(state): State<Shared>,
    Json(req): Json<CreateRequest>,
) -> Result<(StatusCode, Json<SessionResponse>), ApiError> {
    let text = match (&req.document, &req.example) {
        (Some(d), _) => d.clone(),
        (None, Some(name)) => examples::get(name)
            .ok_or_else(|| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, format!("no example `{name}`")))?
            .to_string(),
        (None, None) => {
            return Err(ApiError::new(
                StatusCode::UNPROCESSABLE_ENTITY,
                "expected `document` or `example`",
            ))
        }
    };
    let defaults = SessionOptions::default();
    let options = SessionOptions {
        bound: req.bound.unwrap_or(defaults.bound),
        cap: req.cap.unwrap_or(defaults.cap),
    };
    let session = Session::new(parse_document(&text)?, options)?;
    let id = format!("s{}", state.next.fetch_add(1, Ordering::Relaxed) + 1);
    let body = respond(&id, &session);
    state
        .sessions
        .write()
        .expect("session table")
        .insert(id, Arc::new(Mutex::new(session)));
    Ok((StatusCode::CREATED, Json(body)))
}

async fn show(State(state): State<Shared>, Path(id): Path<String>) -> Result<Json<SessionResponse>, ApiError> {
    let s = lookup(&state, &id)?;
    let s = s.lock().expect("session");
    Ok(Json(respond(&id, &s)))
}

#[derive(Deserialize)]
pub struct StepRequest {
    vertex: String,
    side: Side,
    #[serde(default)]
    allow_nonstrict: bool,
}

async fn step(
    State(state): State<Shared>,
    Path(id): Path<String>,
    Json(req): Json<StepRequest>,
) -> Result<Json<SessionResponse>, ApiError> {
    let s = lookup(&state, &id)?;
    let mut s = s.lock().expect("session");
    let step = MutationStep {
        vertex: req.vertex.as_str().into(),
        side: req.side,
    };
    s.apply_step(&step, req.allow_nonstrict)?;
    Ok(Json(respond(&id, &s)))
}

async fn undo(State(state): State<Shared>, Path(id): Path<String>) -> Result<Json<SessionResponse>, ApiError> {
    let s = lookup(&state, &id)?;
    let mut s = s.lock().expect("session");
    if s.undo().is_none() {
        return Err(ApiError::new(StatusCode::CONFLICT, "nothing to undo"));
    }
    Ok(Json(respond(&id, &s)))
}

#[derive(Deserialize)]
pub struct ExportQuery {
    format: Option<String>,
}

async fn export(
    State(state): State<Shared>,
    Path(id): Path<String>,
    Query(q): Query<ExportQuery>,
) -> Result<Response, ApiError> {
    let s = lookup(&state, &id)?;
    let s = s.lock().expect("session");
    let format: ExportFormat = q
        .format
        .as_deref()
        .unwrap_or("qp")
        .parse()
        .map_err(|e| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, e))?;
    let content_type = match format {
        ExportFormat::Json => "application/json",
        ExportFormat::Dot => "text/vnd.graphviz",
        ExportFormat::Qp => "text/plain; charset=utf-8",
    };
    Ok(([(header::CONTENT_TYPE, content_type)], s.export(format)).into_response())
}
