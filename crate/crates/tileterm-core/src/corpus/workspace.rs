use std::path::{Path, PathBuf};

use crate::pbpo::PbpoRule;
use crate::termination::Tile;

use super::parse::{parse_graph, parse_system, ParseError};

pub const SYSTEM_EXTENSION: &str = "pbpop";

#[derive(Debug, Clone)]
pub struct SystemFile {
    pub name: String,
    pub path: PathBuf,
    pub source: String,
    pub rules: Vec<PbpoRule>,
}

#[derive(Debug, Clone)]
pub struct TileFile {
    pub tile: Tile,
    pub path: PathBuf,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LoadWarning {
    #[error("{}: {message}", path.display())]
    Unreadable { path: PathBuf, message: String },
    #[error("{}: {error}", path.display())]
    Malformed { path: PathBuf, error: ParseError },
    #[error("{}: another file already defines `{name}`; skipped", path.display())]
    DuplicateName { path: PathBuf, name: String },
    #[error("{}: tile is empty and counts nothing useful", path.display())]
    EmptyTile { path: PathBuf },
}

#[derive(Debug, Clone, thiserror::Error)]
#[error("cannot read workspace directory {}: {message}", path.display())]
pub struct WorkspaceError {
    pub path: PathBuf,
    pub message: String,
}

/// Systems and tiles loaded from `<root>/systems` and `<root>/tiles`,
/// numbered by sorted file name.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    pub root: PathBuf,
    pub systems: Vec<SystemFile>,
    pub tiles: Vec<TileFile>,
    pub warnings: Vec<LoadWarning>,
}

/// `03-folding_an_edge.pbpop` is listed as `folding_an_edge`; the prefix
/// only fixes the order.
pub fn display_name(path: &Path) -> String {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    match stem.split_once('-') {
        Some((digits, rest)) if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) && !rest.is_empty() => {
            rest.to_string()
        }
        _ => stem,
    }
}

fn sorted_files(dir: &Path, extension: Option<&str>) -> Result<Vec<PathBuf>, WorkspaceError> {
    if !dir.exists() {
        return Ok(Vec::new());
    }
    let read = std::fs::read_dir(dir)
        .map_err(|e| WorkspaceError { path: dir.to_path_buf(), message: e.to_string() })?;
    let mut files: Vec<PathBuf> = read
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.is_file())
        .filter(|p| !p.file_name().is_some_and(|n| n.to_string_lossy().starts_with('.')))
        .filter(|p| extension.is_none_or(|x| p.extension().is_some_and(|e| e == x)))
        .collect();
    files.sort();
    Ok(files)
}

impl Workspace {
    /// Loads every readable file; problems with single files become
    /// warnings. Only an unreadable root is an error.
    pub fn load(root: impl AsRef<Path>) -> Result<Workspace, WorkspaceError> {
        let root = root.as_ref();
        if !root.is_dir() {
            return Err(WorkspaceError { path: root.to_path_buf(), message: "not a directory".into() });
        }
        let mut ws = Workspace { root: root.to_path_buf(), ..Workspace::default() };

        for path in sorted_files(&root.join("systems"), Some(SYSTEM_EXTENSION))? {
            let Some(source) = ws.read(&path) else { continue };
            let name = display_name(&path);
            if ws.systems.iter().any(|s| s.name == name) {
                ws.warnings.push(LoadWarning::DuplicateName { path, name });
                continue;
            }
            match parse_system(&source) {
                Ok(rules) => ws.systems.push(SystemFile { name, path, source, rules }),
                Err(error) => ws.warnings.push(LoadWarning::Malformed { path, error }),
            }
        }

        for path in sorted_files(&root.join("tiles"), None)? {
            let Some(source) = ws.read(&path) else { continue };
            let name = display_name(&path);
            if ws.tiles.iter().any(|t| t.tile.name == name) {
                ws.warnings.push(LoadWarning::DuplicateName { path, name });
                continue;
            }
            match parse_graph(&source) {
                Ok(graph) => {
                    if graph.is_empty() {
                        ws.warnings.push(LoadWarning::EmptyTile { path: path.clone() });
                    }
                    ws.tiles.push(TileFile { tile: Tile::new(name, graph), path, source });
                }
                Err(error) => ws.warnings.push(LoadWarning::Malformed { path, error }),
            }
        }
        Ok(ws)
    }

    fn read(&mut self, path: &Path) -> Option<String> {
        match std::fs::read_to_string(path) {
            Ok(s) => Some(s),
            Err(e) => {
                self.warnings.push(LoadWarning::Unreadable { path: path.to_path_buf(), message: e.to_string() });
                None
            }
        }
    }

    /// A system by name, or by index as a fallback.
    pub fn system(&self, id: &str) -> Option<&SystemFile> {
        self.systems
            .iter()
            .find(|s| s.name == id)
            .or_else(|| id.parse::<usize>().ok().and_then(|i| self.systems.get(i)))
    }

    /// A tile by name, or by index as a fallback.
    pub fn tile(&self, id: &str) -> Option<&TileFile> {
        self.tiles
            .iter()
            .find(|t| t.tile.name == id)
            .or_else(|| id.parse::<usize>().ok().and_then(|i| self.tiles.get(i)))
    }
}
