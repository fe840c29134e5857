//! In-memory proof sessions with optional JSON snapshots on disk.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use tileterm_core::corpus::Workspace;
use tileterm_core::report::dto::{entries_dto, TileEntryDto};
use tileterm_core::termination::{analyze_system, ProofState, TileConfig, TileEntry};

pub fn now_ms() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis() as u64).unwrap_or(0)
}

#[derive(Debug)]
pub struct Session {
    pub id: String,
    pub system_id: String,
    pub created_ms: u64,
    pub updated_ms: Mutex<u64>,
    pub state: Mutex<ProofState>,
    busy: AtomicBool,
}

/// Held while a mutation of one session is in flight.
pub struct BusyGuard(Arc<Session>);

impl Drop for BusyGuard {
    fn drop(&mut self) {
        self.0.busy.store(false, Ordering::Release);
    }
}

impl Session {
    pub fn new(id: String, system_id: String, state: ProofState) -> Session {
        let now = now_ms();
        Session {
            id,
            system_id,
            created_ms: now,
            updated_ms: Mutex::new(now),
            state: Mutex::new(state),
            busy: AtomicBool::new(false),
        }
    }

    /// None when another mutation holds the session.
    pub fn try_acquire(self: &Arc<Session>) -> Option<BusyGuard> {
        self.busy
            .compare_exchange(false, true, Ordering::AcqRel, Ordering::Acquire)
            .ok()
            .map(|_| BusyGuard(self.clone()))
    }

    pub fn touch(&self) {
        *self.updated_ms.lock().unwrap() = now_ms();
    }

    pub fn snapshot(&self) -> Snapshot {
        let state = self.state.lock().unwrap();
        Snapshot {
            id: self.id.clone(),
            system_id: self.system_id.clone(),
            created_ms: self.created_ms,
            updated_ms: *self.updated_ms.lock().unwrap(),
            stages: state.stages().iter().map(|s| entries_dto(&s.config)).collect(),
        }
    }
}

/// What is written to disk: the analyses are replayed on load.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Snapshot {
    pub id: String,
    pub system_id: String,
    pub created_ms: u64,
    pub updated_ms: u64,
    pub stages: Vec<Vec<TileEntryDto>>,
}

pub fn build_config(ws: &Workspace, entries: &[TileEntryDto]) -> Result<TileConfig, String> {
    let entries = entries
        .iter()
        .map(|e| {
            let tile = ws.tile(&e.tile_id).ok_or_else(|| format!("unknown tile `{}`", e.tile_id))?;
            Ok(TileEntry { tile: tile.tile.clone(), weight: e.weight, class: e.class })
        })
        .collect::<Result<Vec<_>, String>>()?;
    TileConfig::new(entries).map_err(|e| e.to_string())
}

/// Rebuilds a session by re-running every recorded stage.
pub fn replay(ws: &Workspace, snap: &Snapshot) -> Result<Session, String> {
    let sys = ws.system(&snap.system_id).ok_or_else(|| format!("unknown system `{}`", snap.system_id))?;
    let mut state = ProofState::new(sys.name.clone(), sys.rules.clone());
    for entries in &snap.stages {
        let cfg = build_config(ws, entries)?;
        let before = state.stages().len();
        state = analyze_system(&state, &cfg).1;
        if state.stages().len() == before {
            return Err("a recorded stage no longer prunes".to_string());
        }
    }
    let session = Session::new(snap.id.clone(), snap.system_id.clone(), state);
    let session = Session { created_ms: snap.created_ms, updated_ms: Mutex::new(snap.updated_ms), ..session };
    Ok(session)
}

#[derive(Debug)]
pub struct Store {
    sessions: Mutex<HashMap<String, Arc<Session>>>,
    persist: Option<PathBuf>,
    idle: Duration,
}

impl Store {
    pub fn new(persist: Option<PathBuf>, idle: Duration) -> Store {
        Store { sessions: Mutex::new(HashMap::new()), persist, idle }
    }

    /// Loads the snapshots in the persistence directory. Returns the
    /// snapshots that could not be restored.
    pub fn restore(&self, ws: &Workspace) -> Vec<(PathBuf, String)> {
        let Some(dir) = &self.persist else { return Vec::new() };
        let Ok(read) = std::fs::read_dir(dir) else { return Vec::new() };
        let mut failed = Vec::new();
        for path in read.filter_map(Result::ok).map(|e| e.path()) {
            if path.extension().is_none_or(|e| e != "json") {
                continue;
            }
            let result = std::fs::read_to_string(&path)
                .map_err(|e| e.to_string())
                .and_then(|s| serde_json::from_str::<Snapshot>(&s).map_err(|e| e.to_string()))
                .and_then(|snap| replay(ws, &snap));
            match result {
                Ok(session) => {
                    self.sessions.lock().unwrap().insert(session.id.clone(), Arc::new(session));
                }
                Err(e) => failed.push((path, e)),
            }
        }
        failed
    }

    pub fn insert(&self, session: Session) -> Arc<Session> {
        let session = Arc::new(session);
        self.sessions.lock().unwrap().insert(session.id.clone(), session.clone());
        self.save(&session);
        session
    }

    pub fn get(&self, id: &str) -> Option<Arc<Session>> {
        self.expire();
        self.sessions.lock().unwrap().get(id).cloned()
    }

    pub fn len(&self) -> usize {
        self.sessions.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn snapshot_path(dir: &Path, id: &str) -> PathBuf {
        dir.join(format!("{id}.json"))
    }

    /// Best effort; a failed write only loses persistence.
    pub fn save(&self, session: &Session) {
        if let Some(dir) = &self.persist {
            let json = serde_json::to_string_pretty(&session.snapshot()).expect("snapshot serializes");
            if let Err(e) = std::fs::create_dir_all(dir).and_then(|_| std::fs::write(Self::snapshot_path(dir, &session.id), json))
            {
                eprintln!("warning: cannot persist session {}: {e}", session.id);
            }
        }
    }

    fn expire(&self) {
        let cutoff = now_ms().saturating_sub(self.idle.as_millis() as u64);
        let mut sessions = self.sessions.lock().unwrap();
        let stale: Vec<String> = sessions
            .values()
            .filter(|s| *s.updated_ms.lock().unwrap() < cutoff)
            .map(|s| s.id.clone())
            .collect();
        for id in stale {
            sessions.remove(&id);
            if let Some(dir) = &self.persist {
                let _ = std::fs::remove_file(Self::snapshot_path(dir, &id));
            }
        }
    }
}
