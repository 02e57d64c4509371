//! HTTP API for guided sessions.
//!
//! Each session owns a solved bundle and a [`Session`] behind its own lock,
//! so concurrent requests to different sessions never contend. Errors are
//! JSON objects with `code`, `message` and `detail` fields.

mod error;
mod view;

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::{Arc, Mutex, RwLock};
use std::time::SystemTime;

use adviser_core::io::document::parse_arena;
use adviser_core::io::dot::{export_dot, Overlay};
use adviser_core::io::fixtures::{fixture, FIXTURE_NAMES};
use adviser_core::io::manufacturing::{generate_manufacturing, RuleTemplate};
use adviser_core::{synthesize, AdversaryPolicy, Arena, Owner, Session, DEFAULT_CAP};
use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::IntoResponse;
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use uuid::Uuid;

pub use error::ApiError;
use view::{EventView, SessionView};

/// Largest candidate cap a client may request.
pub const MAX_CAP: usize = 1 << 16;

/// Name under which the example assembly template is offered as a fixture.
pub const MANUFACTURING_FIXTURE: &str = "manufacturing";

struct Entry {
    session: Session,
    random: AdversaryPolicy,
    created_at: SystemTime,
}

#[derive(Clone, Default)]
pub struct AppState {
    sessions: Arc<RwLock<HashMap<Uuid, Arc<Mutex<Entry>>>>>,
}

impl AppState {
    fn entry(&self, id: &str) -> Result<Arc<Mutex<Entry>>, ApiError> {
        let key = Uuid::parse_str(id).map_err(|_| ApiError::session_not_found(id))?;
        self.sessions
            .read()
            .expect("session map lock")
            .get(&key)
            .cloned()
            .ok_or_else(|| ApiError::session_not_found(id))
    }
}

pub fn router() -> Router {
    router_with(AppState::default())
}

pub fn router_with(state: AppState) -> Router {
    Router::new()
        .route("/health", get(|| async { "ok" }))
        .route("/fixtures", get(fixtures))
        .route("/sessions", post(create).get(list))
        .route("/sessions/{id}", get(show).delete(remove))
        .route("/sessions/{id}/move", post(adversary_move))
        .route("/sessions/{id}/auto", post(auto))
        .route("/sessions/{id}/reset", post(reset))
        .route("/sessions/{id}/graph", get(graph))
        .with_state(state)
}

pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router()).await
}

async fn fixtures() -> Json<serde_json::Value> {
    let mut names: Vec<&str> = FIXTURE_NAMES.to_vec();
    names.push(MANUFACTURING_FIXTURE);
    Json(serde_json::json!({ "fixtures": names }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CreateRequest {
    fixture: Option<String>,
    document: Option<String>,
    template: Option<RuleTemplate>,
    cap: Option<usize>,
    /// Seed for the compliant random adversary used by `auto`.
    seed: Option<u64>,
}

fn load_arena(req: &CreateRequest) -> Result<Arena, ApiError> {
    let arena = match (&req.fixture, &req.document, &req.template) {
        (Some(name), None, None) if name == MANUFACTURING_FIXTURE => {
            generate_manufacturing(&RuleTemplate::example())?
        }
        (Some(name), None, None) => fixture(name)?,
        (None, Some(text), None) => parse_arena(text)?,
        (None, None, Some(t)) => generate_manufacturing(t)?,
        _ => {
            return Err(ApiError::bad_request(
                "give exactly one of `fixture`, `document` or `template`",
            ))
        }
    };
    Ok(arena.alternation_transform())
}

async fn create(
    State(app): State<AppState>,
    body: Result<Json<CreateRequest>, JsonRejection>,
) -> Result<(StatusCode, Json<SessionView>), ApiError> {
    let Json(req) = body?;
    let cap = req.cap.unwrap_or(DEFAULT_CAP);
    if cap > MAX_CAP {
        return Err(ApiError::unprocessable(
            "cap_too_large",
            format!("cap {cap} exceeds the limit of {MAX_CAP}"),
        ));
    }
    let arena = load_arena(&req)?;
    let report = arena.validate();
    if !report.is_valid() {
        return Err(ApiError::invalid_arena(&report));
    }
    let bundle = tokio::task::spawn_blocking(move || synthesize(&arena, cap))
        .await
        .map_err(|e| ApiError::internal(e.to_string()))??;
    let session = Session::start(Arc::new(bundle))?;
    let id = Uuid::new_v4();
    let entry = Entry {
        session,
        random: AdversaryPolicy::compliant_random(req.seed.unwrap_or(0)),
        created_at: SystemTime::now(),
    };
    let view = SessionView::new(id, &entry.session, entry.created_at);
    app.sessions
        .write()
        .expect("session map lock")
        .insert(id, Arc::new(Mutex::new(entry)));
    Ok((StatusCode::CREATED, Json(view)))
}

async fn list(State(app): State<AppState>) -> Json<serde_json::Value> {
    let sessions = app.sessions.read().expect("session map lock");
    let mut ids: Vec<String> = sessions.keys().map(Uuid::to_string).collect();
    ids.sort();
    Json(serde_json::json!({ "sessions": ids }))
}

async fn show(
    State(app): State<AppState>,
    Path(id): Path<String>,
) -> Result<Json<SessionView>, ApiError> {
    let entry = app.entry(&id)?;
    let e = entry.lock().expect("session lock");
    Ok(Json(SessionView::new(
        parse_id(&id),
        &e.session,
        e.created_at,
    )))
}

async fn remove(
    State(app): State<AppState>,
    Path(id): Path<String>,
) -> Result<StatusCode, ApiError> {
    app.entry(&id)?;
    app.sessions
        .write()
        .expect("session map lock")
        .remove(&parse_id(&id));
    Ok(StatusCode::NO_CONTENT)
}

fn parse_id(id: &str) -> Uuid {
    Uuid::parse_str(id).expect("ids are checked on lookup")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MoveRequest {
    input: String,
}

#[derive(serde::Serialize)]
struct StepResponse {
    event: EventView,
    session: SessionView,
}

async fn adversary_move(
    State(app): State<AppState>,
    Path(id): Path<String>,
    body: Result<Json<MoveRequest>, JsonRejection>,
) -> Result<Json<StepResponse>, ApiError> {
    let Json(req) = body?;
    let entry = app.entry(&id)?;
    let mut e = entry.lock().expect("session lock");
    let event = e.session.adversary_step(&req.input)?;
    Ok(Json(StepResponse {
        event: EventView::from(&event),
        session: SessionView::new(parse_id(&id), &e.session, e.created_at),
    }))
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
enum AutoPolicy {
    #[default]
    Worst,
    Random,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct AutoRequest {
    #[serde(default)]
    policy: AutoPolicy,
}

/// Plays the protagonist's strategy, or lets a policy move for the adversary.
async fn auto(
    State(app): State<AppState>,
    Path(id): Path<String>,
    body: Option<Json<AutoRequest>>,
) -> Result<Json<StepResponse>, ApiError> {
    let req = body.map(|Json(r)| r).unwrap_or_default();
    let entry = app.entry(&id)?;
    let mut guard = entry.lock().expect("session lock");
    let e = &mut *guard;
    let event = match (e.session.current_owner(), req.policy) {
        (Owner::Protagonist, _) => e.session.protagonist_step()?,
        (Owner::Adversary, AutoPolicy::Worst) => {
            e.session.auto_adversary(&mut AdversaryPolicy::WorstCase)?
        }
        (Owner::Adversary, AutoPolicy::Random) => e.session.auto_adversary(&mut e.random)?,
    };
    Ok(Json(StepResponse {
        event: EventView::from(&event),
        session: SessionView::new(parse_id(&id), &e.session, e.created_at),
    }))
}

async fn reset(
    State(app): State<AppState>,
    Path(id): Path<String>,
) -> Result<Json<SessionView>, ApiError> {
    let entry = app.entry(&id)?;
    let mut e = entry.lock().expect("session lock");
    e.session.reset();
    Ok(Json(SessionView::new(
        parse_id(&id),
        &e.session,
        e.created_at,
    )))
}

async fn graph(
    State(app): State<AppState>,
    Path(id): Path<String>,
) -> Result<impl IntoResponse, ApiError> {
    let entry = app.entry(&id)?;
    let e = entry.lock().expect("session lock");
    let s = &e.session;
    let bundle = s.bundle();
    let dot = export_dot(
        &bundle.arena,
        &Overlay {
            adviser: Some(&bundle.candidates[s.current_adviser()].adviser),
            losing: Some(bundle.ladder.final_set()),
            strategy: Some(s.current_strategy()),
            current: Some(s.current_state()),
        },
    )?;
    Ok((
        [(header::CONTENT_TYPE, "text/vnd.graphviz; charset=utf-8")],
        dot,
    ))
}
