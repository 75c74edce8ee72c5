//! HTTP/JSON service hosting box instances.
//!
//! Each box has a single writer: an event that finds the box busy gets a
//! 409 instead of waiting. Experiment endpoints are stateless.

use std::collections::HashMap;
use std::io::Write;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, MutexGuard, TryLockError};
use std::time::{SystemTime, UNIX_EPOCH};

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use catbox_core::experiments::{
    distinguish, parse_angle, run_trials, BellReport, ChshSettings, ObservableSpec, StatePrep,
};
use catbox_core::fsm::{transcript_jsonl, BoxState, Catalog, Event, LogEntry, PanelView};

/// Upper bound on trials per experiment request.
pub const MAX_TRIALS: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ErrorCode {
    NotFound,
    BadRequest,
    Conflict,
}

impl ErrorCode {
    pub fn status(self) -> StatusCode {
        match self {
            ErrorCode::NotFound => StatusCode::NOT_FOUND,
            ErrorCode::BadRequest => StatusCode::BAD_REQUEST,
            ErrorCode::Conflict => StatusCode::CONFLICT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[error("{code:?}: {message}")]
pub struct ApiError {
    pub code: ErrorCode,
    pub message: String,
}

impl ApiError {
    fn not_found(id: &str) -> Self {
        ApiError {
            code: ErrorCode::NotFound,
            message: format!("no box with id {id:?}"),
        }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        ApiError {
            code: ErrorCode::BadRequest,
            message: message.into(),
        }
    }

    fn conflict(id: &str) -> Self {
        ApiError {
            code: ErrorCode::Conflict,
            message: format!("box {id:?} is busy with another event"),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.code.status(), Json(self)).into_response()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedMode {
    Fixed(u64),
    PerBoxRandom,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxHandle {
    pub box_id: String,
    /// Milliseconds since the Unix epoch.
    pub created_at: u64,
    pub seed: u64,
}

struct BoxSlot {
    handle: BoxHandle,
    state: Mutex<BoxState>,
}

#[derive(Debug, Clone)]
pub struct Config {
    pub seed_mode: SeedMode,
    pub catalog: Catalog,
    /// When set, every appended log entry is also written to
    /// `<dir>/<box_id>.jsonl`.
    pub transcript_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed_mode: SeedMode::PerBoxRandom,
            catalog: Catalog::default(),
            transcript_dir: None,
        }
    }
}

pub struct AppState {
    config: Config,
    boxes: Mutex<HashMap<String, Arc<BoxSlot>>>,
}

/// Exclusive access to one box, as held by an in-flight event.
pub struct WriterGuard<'a>(#[allow(dead_code)] MutexGuard<'a, BoxState>);

impl AppState {
    pub fn new(config: Config) -> Arc<Self> {
        Arc::new(AppState {
            config,
            boxes: Mutex::new(HashMap::new()),
        })
    }

    fn registry(&self) -> MutexGuard<'_, HashMap<String, Arc<BoxSlot>>> {
        self.boxes.lock().unwrap_or_else(|e| e.into_inner())
    }

    fn slot(&self, id: &str) -> Result<Arc<BoxSlot>, ApiError> {
        self.registry()
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::not_found(id))
    }

    pub fn create_box(&self, seed: Option<u64>) -> BoxHandle {
        let seed = seed.unwrap_or_else(|| match self.config.seed_mode {
            SeedMode::Fixed(s) => s,
            SeedMode::PerBoxRandom => rand::random(),
        });
        let handle = BoxHandle {
            box_id: uuid::Uuid::new_v4().simple().to_string(),
            created_at: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_millis() as u64)
                .unwrap_or(0),
            seed,
        };
        let slot = Arc::new(BoxSlot {
            handle: handle.clone(),
            state: Mutex::new(BoxState::new(seed)),
        });
        self.registry().insert(handle.box_id.clone(), slot);
        handle
    }

    pub fn handle(&self, id: &str) -> Result<BoxHandle, ApiError> {
        Ok(self.slot(id)?.handle.clone())
    }

    /// Runs `f` with the box locked, failing with 409 if another writer
    /// holds it.
    fn with_box<T>(&self, id: &str, f: impl FnOnce(&mut BoxState) -> T) -> Result<T, ApiError> {
        let slot = self.slot(id)?;
        let mut guard = match slot.state.try_lock() {
            Ok(g) => g,
            Err(TryLockError::WouldBlock) => return Err(ApiError::conflict(id)),
            Err(TryLockError::Poisoned(e)) => e.into_inner(),
        };
        Ok(f(&mut guard))
    }

    /// Takes the writer lock on a box and keeps it until the guard drops.
    /// Events sent meanwhile are answered with 409.
    pub fn hold_writer<R>(&self, id: &str, f: impl FnOnce(WriterGuard<'_>) -> R) -> Result<R, ApiError> {
        let slot = self.slot(id)?;
        let guard = slot.state.try_lock().map_err(|_| ApiError::conflict(id))?;
        Ok(f(WriterGuard(guard)))
    }

    pub fn panel(&self, id: &str) -> Result<PanelView, ApiError> {
        self.with_box(id, |b| b.render(&self.config.catalog))
    }

    pub fn apply_event(&self, id: &str, event: Event) -> Result<EventResponse, ApiError> {
        let result = self.with_box(id, |b| {
            let appended = b.apply(event);
            let new_entries = b.transcript()[b.transcript().len() - appended..].to_vec();
            if let Some(dir) = &self.config.transcript_dir {
                // Persisting under the writer lock keeps file order equal to log order.
                if let Err(e) = append_transcript(dir, id, &new_entries) {
                    eprintln!("catbox: cannot persist transcript for {id}: {e}");
                }
            }
            EventResponse {
                panel: b.render(&self.config.catalog),
                new_log_entries: new_entries,
            }
        })?;
        Ok(result)
    }

    pub fn transcript(&self, id: &str) -> Result<String, ApiError> {
        self.with_box(id, |b| b.transcript_jsonl())
    }

    pub fn delete_box(&self, id: &str) -> Result<(), ApiError> {
        self.registry()
            .remove(id)
            .map(|_| ())
            .ok_or_else(|| ApiError::not_found(id))
    }

    pub fn live_boxes(&self) -> usize {
        self.registry().len()
    }
}

fn append_transcript(dir: &std::path::Path, id: &str, entries: &[LogEntry]) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(dir.join(format!("{id}.jsonl")))?;
    file.write_all(transcript_jsonl(entries).as_bytes())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventResponse {
    pub panel: PanelView,
    pub new_log_entries: Vec<LogEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxView {
    pub box_id: String,
    pub seed: u64,
    #[serde(flatten)]
    pub panel: PanelView,
    pub message: String,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct CreateBoxRequest {
    seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EventRequest {
    event: Event,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrialsRequest {
    pub prep: StatePrep,
    pub obs: ObservableSpec,
    pub n: u64,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistinguishRequest {
    pub prep: StatePrep,
    pub n: u64,
    #[serde(default)]
    pub seed: u64,
}

/// A number in radians or a π expression such as `"3pi/4"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AngleValue {
    Radians(f64),
    Text(String),
}

impl AngleValue {
    fn radians(&self) -> Result<f64, String> {
        match self {
            AngleValue::Radians(x) if x.is_finite() => Ok(*x),
            AngleValue::Radians(x) => Err(format!("angle {x} is not finite")),
            AngleValue::Text(t) => parse_angle(t).map_err(|e| e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BellRequest {
    /// `[a, a', b, b']`; defaults to the Tsirelson settings.
    #[serde(default)]
    pub angles: Option<[AngleValue; 4]>,
    #[serde(default)]
    pub n: Option<u64>,
    #[serde(default)]
    pub seed: u64,
}

fn parse_body<T: DeserializeOwned>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request(format!("malformed body: {e}")))
}

fn check_trials(n: u64) -> Result<(), ApiError> {
    if n == 0 || n > MAX_TRIALS {
        return Err(ApiError::bad_request(format!("n must be in 1..={MAX_TRIALS}")));
    }
    Ok(())
}

async fn create_box(State(app): State<Arc<AppState>>, body: Bytes) -> Result<Response, ApiError> {
    let req: CreateBoxRequest = if body.iter().all(u8::is_ascii_whitespace) {
        CreateBoxRequest::default()
    } else {
        parse_body(&body)?
    };
    let handle = app.create_box(req.seed);
    Ok((StatusCode::CREATED, Json(handle)).into_response())
}

async fn get_box(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<Json<BoxView>, ApiError> {
    let handle = app.handle(&id)?;
    let panel = app.panel(&id)?;
    Ok(Json(BoxView {
        box_id: handle.box_id,
        seed: handle.seed,
        message: panel.message(),
        panel,
    }))
}

async fn post_event(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Json<EventResponse>, ApiError> {
    app.slot(&id)?;
    let req: EventRequest = parse_body(&body)?;
    Ok(Json(app.apply_event(&id, req.event)?))
}

async fn get_transcript(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<Response, ApiError> {
    let body = app.transcript(&id)?;
    Ok(([(header::CONTENT_TYPE, "application/x-ndjson")], body).into_response())
}

async fn delete_box(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<StatusCode, ApiError> {
    app.delete_box(&id)?;
    Ok(StatusCode::NO_CONTENT)
}

async fn blocking<T: Send + 'static>(
    f: impl FnOnce() -> Result<T, ApiError> + Send + 'static,
) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::bad_request(format!("experiment aborted: {e}")))?
}

async fn trials(body: Bytes) -> Result<Response, ApiError> {
    let req: TrialsRequest = parse_body(&body)?;
    check_trials(req.n)?;
    let table = blocking(move || {
        run_trials(req.prep, req.obs, req.n, req.seed).map_err(|e| ApiError::bad_request(e.to_string()))
    })
    .await?;
    Ok(Json(table).into_response())
}

async fn distinguish_handler(body: Bytes) -> Result<Response, ApiError> {
    let req: DistinguishRequest = parse_body(&body)?;
    check_trials(req.n)?;
    let verdict = blocking(move || {
        distinguish(req.prep, req.n, req.seed).map_err(|e| ApiError::bad_request(e.to_string()))
    })
    .await?;
    Ok(Json(verdict).into_response())
}

async fn bell(body: Bytes) -> Result<Response, ApiError> {
    let req: BellRequest = parse_body(&body)?;
    let settings = match &req.angles {
        None => ChshSettings::tsirelson(),
        Some(angles) => {
            let mut r = [0.0; 4];
            for (slot, a) in r.iter_mut().zip(angles) {
                *slot = a.radians().map_err(ApiError::bad_request)?;
            }
            ChshSettings::new(r[0], r[1], r[2], r[3]).map_err(|e| ApiError::bad_request(e.to_string()))?
        }
    };
    if let Some(n) = req.n {
        check_trials(n)?;
    }
    let seed = req.seed;
    let report = blocking(move || {
        BellReport::run(settings, req.n.map(|n| (n, seed)))
            .map_err(|e| ApiError::bad_request(e.to_string()))
    })
    .await?;
    Ok(Json(report).into_response())
}

pub fn router(app: Arc<AppState>) -> Router {
    Router::new()
        .route("/boxes", post(create_box))
        .route("/boxes/{id}", get(get_box).delete(delete_box))
        .route("/boxes/{id}/events", post(post_event))
        .route("/boxes/{id}/transcript", get(get_transcript))
        .route("/experiments/trials", post(trials))
        .route("/experiments/distinguish", post(distinguish_handler))
        .route("/experiments/bell", post(bell))
        .with_state(app)
}

/// Serves until the listener fails or ctrl-c.
pub async fn serve(listener: tokio::net::TcpListener, app: Arc<AppState>) -> std::io::Result<()> {
    axum::serve(listener, router(app))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
