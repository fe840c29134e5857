//! Non-interactive replay of shell commands with `expect` assertions.
//!
//! A script is a list of shell commands, one per line. Blank lines and
//! lines starting with `#` are skipped. `expect terminating` asserts that
//! the most recent `use` left an empty pruned system.

use std::fmt::Write;
use std::sync::Arc;

use serde::Serialize;
use tileterm_core::corpus::Workspace;
use tileterm_core::report::dto::{entries_dto, AnalysisDto, TileEntryDto};

use crate::shell::{Effect, Shell, UseRecord, PROMPT};

pub const EXIT_OK: i32 = 0;
pub const EXIT_EXPECTATION_FAILED: i32 = 1;
pub const EXIT_SCRIPT_ERROR: i32 = 2;

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StageRecord {
    pub line: usize,
    pub system: String,
    pub entries: Vec<TileEntryDto>,
    pub analysis: AnalysisDto,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExpectationRecord {
    pub line: usize,
    pub expectation: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BatchOutcome {
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub stages: Vec<StageRecord>,
    pub expectations: Vec<ExpectationRecord>,
    /// The transcript as the REPL would have shown it.
    #[serde(skip)]
    pub text: String,
}

impl BatchOutcome {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("batch outcome serializes")
    }
}

fn stage_record(line: usize, r: &UseRecord) -> StageRecord {
    StageRecord {
        line,
        system: r.after.system().to_string(),
        entries: entries_dto(&r.config),
        analysis: AnalysisDto::new(&r.verdicts, &r.before, &r.after),
    }
}

pub fn run_script(workspace: Arc<Workspace>, script: &str) -> BatchOutcome {
    let mut shell = Shell::new(workspace);
    let mut out = BatchOutcome {
        exit_code: EXIT_OK,
        error: None,
        stages: Vec::new(),
        expectations: Vec::new(),
        text: String::new(),
    };
    let mut last: Option<UseRecord> = None;

    for (i, raw) in script.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        writeln!(out.text, "{PROMPT}{line}").unwrap();

        if let Some(what) = line.strip_prefix("expect") {
            let what = what.trim();
            if what != "terminating" {
                out.exit_code = EXIT_SCRIPT_ERROR;
                out.error = Some(format!("line {line_no}: unknown expectation `{what}`"));
                break;
            }
            let passed = last.as_ref().is_some_and(|r| r.after.is_proven());
            writeln!(out.text, ">> expect terminating: {}", if passed { "ok" } else { "FAILED" }).unwrap();
            out.expectations.push(ExpectationRecord { line: line_no, expectation: what.to_string(), passed });
            if !passed {
                out.exit_code = EXIT_EXPECTATION_FAILED;
            }
            continue;
        }

        let response = shell.execute(line);
        out.text.push_str(&response.output);
        if let Some(record) = response.analysis {
            out.stages.push(stage_record(line_no, &record));
            last = Some(record);
        }
        match response.effect {
            Effect::Continue => {}
            Effect::Exit => break,
            Effect::Error => {
                out.exit_code = EXIT_SCRIPT_ERROR;
                out.error = Some(format!("line {line_no}: {}", response.output.trim().trim_start_matches(">> ")));
                break;
            }
        }
    }
    out
}
