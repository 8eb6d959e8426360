//! HTTP JSON API hosting worksheet sessions.
//!
//! | method | path                      | success                    |
//! |--------|---------------------------|----------------------------|
//! | POST   | `/sessions`               | 201 `{id, state}`          |
//! | GET    | `/sessions/{id}`          | 200 `{state}`              |
//! | POST   | `/sessions/{id}/moves`    | 200 `{verdict, state}`     |
//! | GET    | `/sessions/{id}/solution` | 200 `{table, tree}`        |
//! | GET    | `/graphs/fixtures`        | 200 `[{name, format, content}]` |
//!
//! `POST /sessions` takes `{"graph": ..., "origin": "A"}` where `graph` is
//! either edge-list text or a JSON network (`{directedness, nodes, edges}`)
//! or a city map (`{places, intersections, streets}`). A move is
//! `{"move": {"kind": "set_label", "node": "B", "dist": 3, "last": "C"}}`.
//!
//! Failures carry `{"code": ..., "message": ...}` with one of the codes in
//! [`ErrorCode`].

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use axum::body::Bytes;
use axum::extract::{Path as UrlPath, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use wayfinder::dijkstra::{LabelTable, SpanningTree};
use wayfinder::session::{Move, Session, SessionError, SessionState, Verdict};
use wayfinder::{fixtures, Graph};

use crate::load::graph_from_json;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ErrorCode {
    /// No session with that id. 404.
    UnknownSession,
    /// No such route. 404.
    UnknownEndpoint,
    /// Body is not the expected JSON shape, or the origin is not in the graph. 400.
    BadRequest,
    /// The uploaded network does not parse or validate. 400.
    ParseError,
    /// The move is missing fields it needs. 400.
    BadMove,
    /// The worksheet is complete; only `finish` may still be sent. 409.
    SessionDone,
    /// 500.
    Internal,
}

impl ErrorCode {
    pub fn status(self) -> StatusCode {
        match self {
            ErrorCode::UnknownSession | ErrorCode::UnknownEndpoint => StatusCode::NOT_FOUND,
            ErrorCode::BadRequest | ErrorCode::ParseError | ErrorCode::BadMove => {
                StatusCode::BAD_REQUEST
            }
            ErrorCode::SessionDone => StatusCode::CONFLICT,
            ErrorCode::Internal => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApiError {
    pub code: ErrorCode,
    pub message: String,
}

impl ApiError {
    fn new(code: ErrorCode, message: impl Into<String>) -> ApiError {
        ApiError {
            code,
            message: message.into(),
        }
    }

    fn unknown_session(id: &str) -> ApiError {
        ApiError::new(
            ErrorCode::UnknownSession,
            format!("no session with id {id}"),
        )
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.code.status(), Json(self)).into_response()
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> ApiError {
        let code = match e {
            SessionError::AlreadyDone => ErrorCode::SessionDone,
            SessionError::MalformedMove(_) => ErrorCode::BadMove,
            SessionError::Graph(_) => ErrorCode::BadRequest,
        };
        ApiError::new(code, e.to_string())
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CreateSession {
    pub graph: Value,
    pub origin: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Created {
    pub id: String,
    pub state: SessionState,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StateBody {
    pub state: SessionState,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SubmitMove {
    #[serde(rename = "move")]
    pub mv: Move,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Judged {
    pub verdict: Verdict,
    pub state: SessionState,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Solution {
    pub table: LabelTable,
    pub tree: SpanningTree,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FixtureEntry {
    pub name: String,
    pub format: String,
    pub content: String,
}

/// What a snapshot file holds per session: enough to replay it.
#[derive(Debug, Serialize, Deserialize)]
struct SavedSession {
    id: String,
    graph: Graph,
    origin: String,
    moves: Vec<Move>,
}

/// In-memory session store. The map lock is held only to look up or insert
/// an entry; moves lock their own session, so different sessions never wait
/// on each other.
#[derive(Debug, Default)]
pub struct Store {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
}

impl Store {
    pub fn new() -> Store {
        Store::default()
    }

    pub fn len(&self) -> usize {
        self.sessions.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn create(&self, graph: Graph, origin: &str) -> Result<SessionState, ApiError> {
        let id = uuid::Uuid::new_v4().to_string();
        let session = Session::start(id.clone(), Arc::new(graph), origin)?;
        let state = session.state();
        self.sessions
            .write()
            .unwrap()
            .insert(id, Arc::new(Mutex::new(session)));
        Ok(state)
    }

    fn get(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.sessions
            .read()
            .unwrap()
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::unknown_session(id))
    }

    pub fn state(&self, id: &str) -> Result<SessionState, ApiError> {
        Ok(self.get(id)?.lock().unwrap().state())
    }

    pub fn submit(&self, id: &str, mv: Move) -> Result<(Verdict, SessionState), ApiError> {
        let entry = self.get(id)?;
        let mut session = entry.lock().unwrap();
        let verdict = session.submit(mv)?;
        Ok((verdict, session.state()))
    }

    pub fn solution(&self, id: &str) -> Result<Solution, ApiError> {
        let (table, tree) = self.get(id)?.lock().unwrap().reveal_solution().into_parts();
        Ok(Solution { table, tree })
    }

    pub fn to_snapshot(&self) -> String {
        let mut saved: Vec<SavedSession> = self
            .sessions
            .read()
            .unwrap()
            .values()
            .map(|entry| {
                let s = entry.lock().unwrap();
                SavedSession {
                    id: s.id().to_string(),
                    graph: (**s.graph()).clone(),
                    origin: s.origin().to_string(),
                    moves: s.moves().cloned().collect(),
                }
            })
            .collect();
        saved.sort_by(|a, b| a.id.cmp(&b.id));
        serde_json::to_string_pretty(&saved).expect("sessions serialize") + "\n"
    }

    /// Rebuilds every saved session by replaying its accepted moves.
    pub fn from_snapshot(text: &str) -> Result<Store, String> {
        let saved: Vec<SavedSession> = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let store = Store::new();
        {
            let mut map = store.sessions.write().unwrap();
            for s in saved {
                let session = Session::replay(s.id.clone(), Arc::new(s.graph), &s.origin, s.moves)
                    .map_err(|e| format!("session {}: {e}", s.id))?;
                map.insert(s.id, Arc::new(Mutex::new(session)));
            }
        }
        Ok(store)
    }

    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.to_snapshot())
    }
}

fn parse_body<T: for<'de> Deserialize<'de>>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body)
        .map_err(|e| ApiError::new(ErrorCode::BadRequest, format!("bad request body: {e}")))
}

async fn create_session(
    State(store): State<Arc<Store>>,
    body: Bytes,
) -> Result<Response, ApiError> {
    let req: CreateSession = parse_body(&body)?;
    let graph = match &req.graph {
        Value::String(text) => wayfinder::parse_edge_list(text).map_err(|e| e.to_string()),
        other => graph_from_json(other.clone()),
    }
    .map_err(|e| ApiError::new(ErrorCode::ParseError, e))?;
    let state = store.create(graph, &req.origin)?;
    let body = Created {
        id: state.id.clone(),
        state,
    };
    Ok((StatusCode::CREATED, Json(body)).into_response())
}

async fn get_session(
    State(store): State<Arc<Store>>,
    UrlPath(id): UrlPath<String>,
) -> Result<Json<StateBody>, ApiError> {
    Ok(Json(StateBody {
        state: store.state(&id)?,
    }))
}

async fn post_move(
    State(store): State<Arc<Store>>,
    UrlPath(id): UrlPath<String>,
    body: Bytes,
) -> Result<Json<Judged>, ApiError> {
    // an unknown session outranks a malformed body
    store.get(&id)?;
    let req: SubmitMove = serde_json::from_slice(&body)
        .map_err(|e| ApiError::new(ErrorCode::BadMove, format!("malformed move: {e}")))?;
    let (verdict, state) = store.submit(&id, req.mv)?;
    Ok(Json(Judged { verdict, state }))
}

async fn get_solution(
    State(store): State<Arc<Store>>,
    UrlPath(id): UrlPath<String>,
) -> Result<Json<Solution>, ApiError> {
    Ok(Json(store.solution(&id)?))
}

async fn list_fixtures() -> Json<Vec<FixtureEntry>> {
    Json(
        fixtures::ALL
            .iter()
            .map(|f| FixtureEntry {
                name: f.name.to_string(),
                format: f.format.to_string(),
                content: f.content.to_string(),
            })
            .collect(),
    )
}

async fn not_found() -> ApiError {
    ApiError::new(ErrorCode::UnknownEndpoint, "no such endpoint")
}

/// The API routes. With `ui` set, unmatched GETs are served from that
/// directory so a built front end can share the origin.
pub fn router(store: Arc<Store>, ui: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/moves", post(post_move))
        .route("/sessions/{id}/solution", get(get_solution))
        .route("/graphs/fixtures", get(list_fixtures))
        .with_state(store);
    match ui {
        Some(dir) => api.fallback_service(tower_http::services::ServeDir::new(dir)),
        None => api.fallback(not_found),
    }
}

/// Serves until `shutdown` resolves, then writes the snapshot if asked to.
pub async fn serve(
    listener: tokio::net::TcpListener,
    store: Arc<Store>,
    ui: Option<PathBuf>,
    snapshot: Option<PathBuf>,
    shutdown: impl std::future::Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    axum::serve(listener, router(store.clone(), ui))
        .with_graceful_shutdown(shutdown)
        .await?;
    if let Some(path) = snapshot {
        store.save(&path)?;
    }
    Ok(())
}
