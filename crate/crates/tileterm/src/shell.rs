//! The interactive command language shared by the REPL and batch mode.

use std::fmt::Write;
use std::sync::Arc;

use tileterm_core::corpus::Workspace;
use tileterm_core::graph::MorphismClass;
use tileterm_core::report::render_report;
use tileterm_core::termination::{analyze_system, ProofState, RuleVerdict, TileConfig, TileEntry};

pub const PROMPT: &str = "tileterm> ";

pub const BANNER: &str = "=== tileterm REPL ===
>> You are in system selection mode.
>> Type 'help' to view the available commands.
";

const SELECTION_HELP: &str = ">> Available commands:
select [n]  : select system n for termination proving
inspect [n] : inspect option (system/tile) n in detail
systems     : list the available systems
help        : print all available commands
exit        : exit the program
";

const PROOF_HELP: &str = ">> Available commands:
use [i w c]+ :
use tile i with weight w, and count morphisms of class c, where:
- i and w are integers (and w is positive), and
- c is a character (r: regular monos, m: monos, h: homomorphisms)
multiple tiles can be specified.
for example, 'use 3 4 h 5 9 r' uses:
- tile 3 with weight 4 (counting homomorphisms), and
- tile 5 with weight 9 (counting regular monos)
inspect [n] : inspect option (system/tile) n in detail
back : return to system selection mode
help : print all available commands
tiles : list the available tiles
exit : exit the program
";

const USE_USAGE: &str = "usage: use [i w c]+ with i a tile, w a positive integer and c one of r, m, h";

#[derive(Debug, Clone)]
pub enum Mode {
    Selection,
    Proof(ProofState),
}

/// The result of one `use`, kept for batch expectations and JSON output.
#[derive(Debug, Clone)]
pub struct UseRecord {
    pub config: TileConfig,
    pub verdicts: Vec<RuleVerdict>,
    pub before: ProofState,
    pub after: ProofState,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Effect {
    Continue,
    Exit,
    /// The command was rejected; the mode did not change.
    Error,
}

#[derive(Debug, Clone)]
pub struct Response {
    pub output: String,
    pub effect: Effect,
    pub analysis: Option<UseRecord>,
}

impl Response {
    fn ok(output: impl Into<String>) -> Response {
        Response { output: output.into(), effect: Effect::Continue, analysis: None }
    }

    fn error(message: impl AsRef<str>) -> Response {
        Response { output: format!(">> {}\n", message.as_ref()), effect: Effect::Error, analysis: None }
    }
}

pub struct Shell {
    workspace: Arc<Workspace>,
    mode: Mode,
}

/// Parses the arguments of `use` against the workspace tiles.
pub fn parse_use_args(ws: &Workspace, args: &[&str]) -> Result<TileConfig, String> {
    if args.is_empty() || args.len() % 3 != 0 {
        return Err(USE_USAGE.to_string());
    }
    let mut entries = Vec::new();
    for triple in args.chunks(3) {
        let tile = ws.tile(triple[0]).ok_or_else(|| format!("there is no tile {}", triple[0]))?;
        let weight: u64 = triple[1]
            .parse()
            .ok()
            .filter(|&w| w > 0)
            .ok_or_else(|| format!("weight {} is not a positive integer", triple[1]))?;
        let class: MorphismClass =
            triple[2].parse().map_err(|_| format!("unknown class {}; use r, m or h", triple[2]))?;
        entries.push(TileEntry { tile: tile.tile.clone(), weight, class });
    }
    TileConfig::new(entries).map_err(|e| e.to_string())
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 { format!("{n} {word}") } else { format!("{n} {word}s") }
}

impl Shell {
    pub fn new(workspace: Arc<Workspace>) -> Shell {
        Shell { workspace, mode: Mode::Selection }
    }

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    pub fn workspace(&self) -> &Workspace {
        &self.workspace
    }

    pub fn execute(&mut self, line: &str) -> Response {
        let words: Vec<&str> = line.split_whitespace().collect();
        let Some((&cmd, args)) = words.split_first() else {
            return Response::ok("");
        };
        let in_proof = matches!(self.mode, Mode::Proof(_));
        match (cmd, in_proof) {
            ("help", false) => Response::ok(SELECTION_HELP),
            ("help", true) => Response::ok(PROOF_HELP),
            ("exit", _) => Response { output: String::new(), effect: Effect::Exit, analysis: None },
            ("systems", false) => Response::ok(self.list_systems()),
            ("tiles", true) => Response::ok(self.list_tiles()),
            ("select", false) => self.select(args),
            ("inspect", false) => self.inspect_system(args),
            ("inspect", true) => self.inspect_tile(args),
            ("back", true) => {
                self.mode = Mode::Selection;
                Response::ok(">> Returning to system selection mode.\n")
            }
            ("use", true) => self.use_tiles(args),
            _ => Response::error(format!("Unknown command '{cmd}'. Type 'help' to view the available commands.")),
        }
    }

    fn list_systems(&self) -> String {
        let mut s = String::from(">> The following systems were loaded:\n");
        for (i, sys) in self.workspace.systems.iter().enumerate() {
            writeln!(s, "({i}) {}", sys.name).unwrap();
        }
        s
    }

    fn list_tiles(&self) -> String {
        let mut s = String::from(">> The following tiles were loaded:\n");
        for (i, t) in self.workspace.tiles.iter().enumerate() {
            writeln!(s, "({i}) {}", t.tile.name).unwrap();
        }
        s
    }

    fn single_arg<'a>(args: &[&'a str], cmd: &str) -> Result<&'a str, Response> {
        match args {
            [a] => Ok(a),
            _ => Err(Response::error(format!("usage: {cmd} [n]"))),
        }
    }

    fn inspect_system(&self, args: &[&str]) -> Response {
        let id = match Self::single_arg(args, "inspect") {
            Ok(id) => id,
            Err(r) => return r,
        };
        match self.workspace.system(id) {
            Some(sys) => Response::ok(format!("SYSTEM: {}\n{}", sys.name, with_newline(&sys.source))),
            None => Response::error(format!("There is no system {id}.")),
        }
    }

    fn inspect_tile(&self, args: &[&str]) -> Response {
        let id = match Self::single_arg(args, "inspect") {
            Ok(id) => id,
            Err(r) => return r,
        };
        match self.workspace.tile(id) {
            Some(t) => Response::ok(format!("TILE: {}\n{}", t.tile.name, with_newline(&t.source))),
            None => Response::error(format!("There is no tile {id}.")),
        }
    }

    fn select(&mut self, args: &[&str]) -> Response {
        let id = match Self::single_arg(args, "select") {
            Ok(id) => id,
            Err(r) => return r,
        };
        let Some(sys) = self.workspace.system(id) else {
            return Response::error(format!("There is no system {id}."));
        };
        let mut s = String::new();
        writeln!(s, ">> Entering proof mode for system {}.", sys.name).unwrap();
        writeln!(s, ">> The system consists of {}.", plural(sys.rules.len(), "rule")).unwrap();
        writeln!(s, ">> The system is as follows:").unwrap();
        writeln!(s).unwrap();
        s.push_str(&with_newline(&sys.source));
        self.mode = Mode::Proof(ProofState::new(sys.name.clone(), sys.rules.clone()));
        Response::ok(s)
    }

    fn use_tiles(&mut self, args: &[&str]) -> Response {
        let Mode::Proof(state) = &self.mode else { unreachable!("use is only dispatched in proof mode") };
        let cfg = match parse_use_args(&self.workspace, args) {
            Ok(cfg) => cfg,
            Err(e) => return Response::error(e),
        };
        let (verdicts, next) = analyze_system(state, &cfg);
        let mut s = render_report(&verdicts, &cfg, state, &next);
        writeln!(s).unwrap();
        let record = UseRecord { config: cfg, verdicts, before: state.clone(), after: next.clone() };
        if next.is_proven() {
            writeln!(s, ">> The pruned system is empty!").unwrap();
            writeln!(s, ">> You have proven system {} terminating.", next.system()).unwrap();
            writeln!(s, ">> Returning to system selection mode.").unwrap();
            self.mode = Mode::Selection;
        } else if next.remaining_names().len() < state.remaining_names().len() {
            let remaining = next.remaining_names();
            writeln!(s, ">> The pruned system consists of {}: {}.", plural(remaining.len(), "rule"), remaining.join(", "))
                .unwrap();
            writeln!(s, ">> Continue with the pruned system.").unwrap();
            self.mode = Mode::Proof(next);
        } else {
            writeln!(s, ">> No rules were pruned. Try other tiles.").unwrap();
            // a stage of non-increasing verdicts is still part of the proof
            self.mode = Mode::Proof(next);
        }
        Response { output: s, effect: Effect::Continue, analysis: Some(record) }
    }
}

fn with_newline(s: &str) -> String {
    if s.ends_with('\n') { s.to_string() } else { format!("{s}\n") }
}
