//! HTTP/JSON service hosting game sessions.
//!
//! Moves on one game are applied under that game's mutex; readers take the
//! latest published snapshot. With a journal directory every game is also
//! written to `game-<id>.jsonl` (config line, then one line per accepted move)
//! and can be rebuilt by replaying those files.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use axum::body::Bytes;
use axum::extract::{Path as UrlPath, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};

use crate::error::{ChordError, Result};
use crate::game::{apply_move, legal_moves, GameConfig, GameState};
use crate::wire::{GameConfigJson, GameStateJson};

struct Session {
    config: GameConfig,
    live: Mutex<Live>,
    snapshot: RwLock<Arc<GameStateJson>>,
}

struct Live {
    state: GameState,
    version: u64,
    journal: Option<File>,
}

/// All games of one service instance.
#[derive(Default)]
pub struct GameStore {
    games: RwLock<HashMap<u64, Arc<Session>>>,
    next_id: AtomicU64,
    journal_dir: Option<PathBuf>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JournalLine {
    Config { config: GameConfigJson },
    Move { dots: Vec<usize> },
}

/// Body of `POST /games/{id}/moves`: a bare dot list, or an object naming the
/// player so that out-of-turn submissions are rejected.
#[derive(Deserialize)]
#[serde(untagged)]
enum MoveBody {
    Dots(Vec<usize>),
    Detailed { dots: Vec<usize>, player: Option<u8> },
}

#[derive(Debug)]
pub enum ServiceError {
    NotFound(u64),
    Conflict(String),
    BadRequest(String),
    Internal(String),
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let (code, msg) = match self {
            ServiceError::NotFound(id) => (StatusCode::NOT_FOUND, format!("no game {id}")),
            ServiceError::Conflict(m) => (StatusCode::CONFLICT, m),
            ServiceError::BadRequest(m) => (StatusCode::BAD_REQUEST, m),
            ServiceError::Internal(m) => (StatusCode::INTERNAL_SERVER_ERROR, m),
        };
        (code, Json(serde_json::json!({ "error": msg }))).into_response()
    }
}

impl GameStore {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// A store journalling to `dir`, first replaying any games found there.
    pub fn with_journal(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(io_err)?;
        let store = GameStore { journal_dir: Some(dir.clone()), ..Self::default() };
        let mut max_id = 0;
        for entry in fs::read_dir(&dir).map_err(io_err)? {
            let path = entry.map_err(io_err)?.path();
            let Some(id) = journal_id(&path) else { continue };
            let session = replay(&path)?;
            max_id = max_id.max(id);
            store.games.write().expect("store lock").insert(id, Arc::new(session));
        }
        store.next_id.store(max_id, Ordering::SeqCst);
        Ok(store)
    }

    pub fn create(&self, config: GameConfig) -> Result<(u64, GameStateJson)> {
        let id = self.next_id.fetch_add(1, Ordering::SeqCst) + 1;
        let journal = match &self.journal_dir {
            Some(dir) => {
                let mut file = File::create(dir.join(format!("game-{id}.jsonl"))).map_err(io_err)?;
                write_line(&mut file, &JournalLine::Config { config: GameConfigJson::new(&config) })?;
                Some(file)
            }
            None => None,
        };
        let state = GameState::new(&config);
        let snap = GameStateJson::new(&config, &state, 0);
        let session = Session {
            snapshot: RwLock::new(Arc::new(snap.clone())),
            live: Mutex::new(Live { state, version: 0, journal }),
            config,
        };
        self.games.write().expect("store lock").insert(id, Arc::new(session));
        tracing::info!(id, "game created");
        Ok((id, snap))
    }

    fn session(&self, id: u64) -> std::result::Result<Arc<Session>, ServiceError> {
        self.games.read().expect("store lock").get(&id).cloned().ok_or(ServiceError::NotFound(id))
    }

    pub fn state(&self, id: u64) -> std::result::Result<Arc<GameStateJson>, ServiceError> {
        Ok(self.session(id)?.snapshot.read().expect("snapshot lock").clone())
    }

    pub fn legal(&self, id: u64) -> std::result::Result<Vec<Vec<usize>>, ServiceError> {
        let s = self.session(id)?;
        let live = s.live.lock().expect("game lock");
        legal_moves(&s.config, &live.state).map_err(|e| ServiceError::Conflict(e.to_string()))
    }

    pub fn play(&self, id: u64, dots: &[usize], player: Option<u8>) -> std::result::Result<GameStateJson, ServiceError> {
        let s = self.session(id)?;
        let mut live = s.live.lock().expect("game lock");
        if let Some(p) = player {
            if p != live.state.turn.number() {
                return Err(ServiceError::Conflict(format!("it is player {}'s turn", live.state.turn.number())));
            }
        }
        let next = apply_move(&s.config, &live.state, dots).map_err(|e| ServiceError::Conflict(e.to_string()))?;
        if let Some(file) = live.journal.as_mut() {
            write_line(file, &JournalLine::Move { dots: dots.to_vec() })
                .map_err(|e| ServiceError::Internal(e.to_string()))?;
        }
        live.state = next;
        live.version += 1;
        let snap = GameStateJson::new(&s.config, &live.state, live.version);
        *s.snapshot.write().expect("snapshot lock") = Arc::new(snap.clone());
        tracing::debug!(id, version = live.version, "move accepted");
        Ok(snap)
    }
}

fn io_err(e: std::io::Error) -> ChordError {
    ChordError::internal(format!("journal: {e}"))
}

fn write_line(file: &mut File, line: &JournalLine) -> Result<()> {
    let text = serde_json::to_string(line).map_err(|e| ChordError::internal(e.to_string()))?;
    writeln!(file, "{text}").and_then(|_| file.flush()).map_err(io_err)
}

fn journal_id(path: &Path) -> Option<u64> {
    path.file_name()?.to_str()?.strip_prefix("game-")?.strip_suffix(".jsonl")?.parse().ok()
}

fn replay(path: &Path) -> Result<Session> {
    let reader = BufReader::new(File::open(path).map_err(io_err)?);
    let mut lines = reader.lines();
    let first = lines.next().ok_or_else(|| ChordError::Parse(format!("{} is empty", path.display())))?;
    let JournalLine::Config { config } = crate::wire::from_json(&first.map_err(io_err)?)? else {
        return Err(ChordError::Parse(format!("{} does not start with a config", path.display())));
    };
    let config = config.to_config()?;
    let mut state = GameState::new(&config);
    let mut version = 0;
    for line in lines {
        let line = line.map_err(io_err)?;
        if line.trim().is_empty() {
            continue;
        }
        let JournalLine::Move { dots } = crate::wire::from_json(&line)? else {
            return Err(ChordError::Parse("config line inside a journal".into()));
        };
        state = apply_move(&config, &state, &dots)?;
        version += 1;
    }
    let journal = Some(OpenOptions::new().append(true).open(path).map_err(io_err)?);
    let snap = GameStateJson::new(&config, &state, version);
    Ok(Session {
        snapshot: RwLock::new(Arc::new(snap)),
        live: Mutex::new(Live { state, version, journal }),
        config,
    })
}

fn parse_body<T: for<'de> Deserialize<'de>>(body: &Bytes) -> std::result::Result<T, ServiceError> {
    serde_json::from_slice(body).map_err(|e| ServiceError::BadRequest(e.to_string()))
}

async fn create_game(State(store): State<Arc<GameStore>>, body: Bytes) -> std::result::Result<Response, ServiceError> {
    let config: GameConfigJson = parse_body(&body)?;
    let config = config.to_config().map_err(|e| ServiceError::BadRequest(e.to_string()))?;
    let (id, state) = store.create(config).map_err(|e| ServiceError::Internal(e.to_string()))?;
    Ok((StatusCode::CREATED, Json(serde_json::json!({ "id": id, "state": state })) ).into_response())
}

async fn get_game(State(store): State<Arc<GameStore>>, UrlPath(id): UrlPath<u64>) -> std::result::Result<Json<GameStateJson>, ServiceError> {
    Ok(Json(store.state(id)?.as_ref().clone()))
}

async fn get_legal(State(store): State<Arc<GameStore>>, UrlPath(id): UrlPath<u64>) -> std::result::Result<Json<Vec<Vec<usize>>>, ServiceError> {
    Ok(Json(store.legal(id)?))
}

async fn post_move(
    State(store): State<Arc<GameStore>>,
    UrlPath(id): UrlPath<u64>,
    body: Bytes,
) -> std::result::Result<Json<GameStateJson>, ServiceError> {
    store.session(id)?;
    let (dots, player) = match parse_body(&body)? {
        MoveBody::Dots(d) => (d, None),
        MoveBody::Detailed { dots, player } => (dots, player),
    };
    Ok(Json(store.play(id, &dots, player)?))
}

pub fn router(store: Arc<GameStore>) -> Router {
    Router::new()
        .route("/games", post(create_game))
        .route("/games/{id}", get(get_game))
        .route("/games/{id}/moves", post(post_move))
        .route("/games/{id}/legal", get(get_legal))
        .with_state(store)
}

/// Serves until the process is stopped.
pub async fn serve(store: Arc<GameStore>, port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    tracing::info!(addr = %listener.local_addr()?, "game service listening");
    axum::serve(listener, router(store)).await
}
