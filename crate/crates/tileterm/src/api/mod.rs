//! JSON over HTTP for the proof explorer.

mod store;

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tileterm_core::corpus::Workspace;
use tileterm_core::graph::MorphismClass;
use tileterm_core::report::dto::{AnalysisDto, GraphDto, RuleDto, TileEntryDto, TranscriptDto};
use tileterm_core::termination::{analyze_system, ProofState};
use tower_http::cors::CorsLayer;
use tower_http::services::ServeDir;

pub use store::{Session, Snapshot, Store};

#[derive(Debug, Clone)]
pub struct ApiConfig {
    /// Budget for one analysis.
    pub timeout: Duration,
    /// Sessions untouched for this long are dropped.
    pub idle: Duration,
    pub persist: Option<PathBuf>,
    pub static_dir: Option<PathBuf>,
}

impl Default for ApiConfig {
    fn default() -> ApiConfig {
        ApiConfig {
            timeout: Duration::from_secs(30),
            idle: Duration::from_secs(24 * 60 * 60),
            persist: None,
            static_dir: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct AppState {
    pub workspace: Arc<Workspace>,
    pub store: Arc<Store>,
    pub timeout: Duration,
}

#[derive(Debug, thiserror::Error)]
pub enum ApiError {
    #[error("{0}")]
    NotFound(String),
    #[error("{0}")]
    Conflict(String),
    #[error("{0}")]
    Invalid(String),
    #[error("analysis timeout after {0:?}")]
    Timeout(Duration),
    #[error("{0}")]
    Internal(String),
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = match &self {
            ApiError::NotFound(_) => StatusCode::NOT_FOUND,
            ApiError::Conflict(_) => StatusCode::CONFLICT,
            ApiError::Invalid(_) => StatusCode::UNPROCESSABLE_ENTITY,
            ApiError::Timeout(_) => StatusCode::SERVICE_UNAVAILABLE,
            ApiError::Internal(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        (status, Json(ErrorDto { error: self.to_string() })).into_response()
    }
}

impl From<JsonRejection> for ApiError {
    fn from(r: JsonRejection) -> ApiError {
        ApiError::Invalid(r.body_text())
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

#[derive(Debug, Serialize, Deserialize)]
pub struct ErrorDto {
    pub error: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SystemSummaryDto {
    pub id: String,
    pub index: usize,
    pub name: String,
    pub rule_count: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SystemDto {
    pub id: String,
    pub index: usize,
    pub name: String,
    pub source: String,
    pub rules: Vec<RuleDto>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TileDto {
    pub id: String,
    pub index: usize,
    pub name: String,
    pub graph: GraphDto,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CreateSessionDto {
    pub system_id: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionDto {
    pub id: String,
    pub system_id: String,
    pub created_ms: u64,
    pub updated_ms: u64,
    pub transcript: TranscriptDto,
}

/// Entries are checked by hand so that every malformed entry is a 422
/// with a readable message.
#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalyzeEntryIn {
    pub tile_id: String,
    pub weight: serde_json::Value,
    pub class: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AnalyzeDto {
    pub entries: Vec<AnalyzeEntryIn>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalyzeResponseDto {
    pub session: SessionDto,
    #[serde(flatten)]
    pub analysis: AnalysisDto,
}

pub fn router(workspace: Arc<Workspace>, config: &ApiConfig) -> (Router, Vec<(PathBuf, String)>) {
    let store = Arc::new(Store::new(config.persist.clone(), config.idle));
    let failed = store.restore(&workspace);
    let state = AppState { workspace, store, timeout: config.timeout };
    let mut app = Router::new()
        .route("/api/systems", get(list_systems))
        .route("/api/systems/{id}", get(get_system))
        .route("/api/tiles", get(list_tiles))
        .route("/api/sessions", post(create_session))
        .route("/api/sessions/{id}", get(get_session))
        .route("/api/sessions/{id}/analyze", post(analyze))
        .route("/api/sessions/{id}/undo", post(undo))
        .with_state(state)
        .layer(CorsLayer::permissive());
    if let Some(dir) = &config.static_dir {
        app = app.fallback_service(ServeDir::new(dir));
    }
    (app, failed)
}

fn session_dto(s: &Session) -> SessionDto {
    let state = s.state.lock().unwrap();
    SessionDto {
        id: s.id.clone(),
        system_id: s.system_id.clone(),
        created_ms: s.created_ms,
        updated_ms: *s.updated_ms.lock().unwrap(),
        transcript: TranscriptDto::from(&*state),
    }
}

async fn list_systems(State(st): State<AppState>) -> Json<Vec<SystemSummaryDto>> {
    Json(
        st.workspace
            .systems
            .iter()
            .enumerate()
            .map(|(index, s)| SystemSummaryDto {
                id: s.name.clone(),
                index,
                name: s.name.clone(),
                rule_count: s.rules.len(),
            })
            .collect(),
    )
}

async fn get_system(State(st): State<AppState>, Path(id): Path<String>) -> ApiResult<SystemDto> {
    let sys = st.workspace.system(&id).ok_or_else(|| ApiError::NotFound(format!("unknown system `{id}`")))?;
    let index = st.workspace.systems.iter().position(|s| s.name == sys.name).unwrap_or_default();
    Ok(Json(SystemDto {
        id: sys.name.clone(),
        index,
        name: sys.name.clone(),
        source: sys.source.clone(),
        rules: sys.rules.iter().map(RuleDto::from).collect(),
    }))
}

async fn list_tiles(State(st): State<AppState>) -> Json<Vec<TileDto>> {
    Json(
        st.workspace
            .tiles
            .iter()
            .enumerate()
            .map(|(index, t)| TileDto {
                id: t.tile.name.clone(),
                index,
                name: t.tile.name.clone(),
                graph: GraphDto::from(&t.tile.graph),
            })
            .collect(),
    )
}

async fn create_session(
    State(st): State<AppState>,
    body: Result<Json<CreateSessionDto>, JsonRejection>,
) -> Result<(StatusCode, Json<SessionDto>), ApiError> {
    let Json(body) = body?;
    let sys = st
        .workspace
        .system(&body.system_id)
        .ok_or_else(|| ApiError::NotFound(format!("unknown system `{}`", body.system_id)))?;
    let id = uuid::Uuid::new_v4().simple().to_string();
    let session = Session::new(id, sys.name.clone(), ProofState::new(sys.name.clone(), sys.rules.clone()));
    let session = st.store.insert(session);
    Ok((StatusCode::CREATED, Json(session_dto(&session))))
}

fn lookup(st: &AppState, id: &str) -> Result<Arc<Session>, ApiError> {
    st.store.get(id).ok_or_else(|| ApiError::NotFound(format!("unknown session `{id}`")))
}

async fn get_session(State(st): State<AppState>, Path(id): Path<String>) -> ApiResult<SessionDto> {
    let session = lookup(&st, &id)?;
    Ok(Json(session_dto(&session)))
}

fn check_entries(st: &AppState, entries: &[AnalyzeEntryIn]) -> Result<Vec<TileEntryDto>, ApiError> {
    if entries.is_empty() {
        return Err(ApiError::Invalid("at least one tile entry is required".into()));
    }
    entries
        .iter()
        .map(|e| {
            let weight = e
                .weight
                .as_u64()
                .filter(|&w| w >= 1)
                .ok_or_else(|| ApiError::Invalid(format!("weight of `{}` must be a positive integer", e.tile_id)))?;
            let class: MorphismClass = e.class.parse().map_err(ApiError::Invalid)?;
            let tile = st.workspace.tile(&e.tile_id).ok_or_else(|| ApiError::Invalid(format!("unknown tile `{}`", e.tile_id)))?;
            Ok(TileEntryDto { tile_id: tile.tile.name.clone(), weight, class })
        })
        .collect()
}

async fn analyze(
    State(st): State<AppState>,
    Path(id): Path<String>,
    body: Result<Json<AnalyzeDto>, JsonRejection>,
) -> ApiResult<AnalyzeResponseDto> {
    let session = lookup(&st, &id)?;
    let Json(body) = body?;
    let entries = check_entries(&st, &body.entries)?;
    let cfg = store::build_config(&st.workspace, &entries).map_err(ApiError::Invalid)?;
    let guard = session.try_acquire().ok_or_else(|| ApiError::Conflict("session is busy".into()))?;
    let before = session.state.lock().unwrap().clone();
    if before.is_proven() {
        return Err(ApiError::Conflict("the system is already proven terminating".into()));
    }

    // The guard moves into the worker so the session stays busy until the
    // analysis really ends, even after a timeout.
    let worker = tokio::task::spawn_blocking(move || {
        let _guard = guard;
        let (verdicts, after) = analyze_system(&before, &cfg);
        (verdicts, before, after)
    });
    let (verdicts, before, after) = match tokio::time::timeout(st.timeout, worker).await {
        Err(_) => return Err(ApiError::Timeout(st.timeout)),
        Ok(Err(e)) => return Err(ApiError::Internal(format!("analysis failed: {e}"))),
        Ok(Ok(r)) => r,
    };
    let analysis = AnalysisDto::new(&verdicts, &before, &after);
    *session.state.lock().unwrap() = after;
    session.touch();
    st.store.save(&session);
    Ok(Json(AnalyzeResponseDto { session: session_dto(&session), analysis }))
}

async fn undo(State(st): State<AppState>, Path(id): Path<String>) -> ApiResult<SessionDto> {
    let session = lookup(&st, &id)?;
    let _guard = session.try_acquire().ok_or_else(|| ApiError::Conflict("session is busy".into()))?;
    if session.state.lock().unwrap().undo().is_none() {
        return Err(ApiError::Conflict("there is no stage to undo".into()));
    }
    session.touch();
    st.store.save(&session);
    Ok(Json(session_dto(&session)))
}
