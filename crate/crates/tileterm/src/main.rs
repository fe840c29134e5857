use std::io::{BufRead, IsTerminal, Write};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use tileterm::api::{router, ApiConfig};
use tileterm::batch::{run_script, EXIT_SCRIPT_ERROR};
use tileterm::shell::{Effect, Shell, BANNER, PROMPT};
use tileterm_core::corpus::Workspace;

#[derive(Parser)]
#[command(name = "tileterm", version, about = "Termination proofs for PBPO+ graph transformation systems")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Clone)]
struct WorkspaceArg {
    /// Directory containing `systems/` and `tiles/`.
    #[arg(long, default_value = "./corpus")]
    workspace: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Interactive proof session (the default).
    Repl {
        #[command(flatten)]
        ws: WorkspaceArg,
    },
    /// Replay a command script; exit 1 if an `expect` fails, 2 on errors.
    Batch {
        script: PathBuf,
        #[command(flatten)]
        ws: WorkspaceArg,
        /// Print a JSON report instead of the transcript.
        #[arg(long)]
        json: bool,
    },
    /// Serve the JSON API (and optionally the explorer).
    Serve {
        #[command(flatten)]
        ws: WorkspaceArg,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Static files served under `/`.
        #[arg(long = "static")]
        static_dir: Option<PathBuf>,
        /// Directory for session snapshots.
        #[arg(long)]
        persist: Option<PathBuf>,
        /// Analysis time budget in seconds.
        #[arg(long, default_value_t = 30)]
        timeout: u64,
        /// Idle session lifetime in seconds.
        #[arg(long, default_value_t = 86_400)]
        idle_timeout: u64,
    },
}

fn load(path: &Path) -> anyhow::Result<Arc<Workspace>> {
    let ws = Workspace::load(path)?;
    for w in &ws.warnings {
        eprintln!("warning: {w}");
    }
    Ok(Arc::new(ws))
}

fn repl(ws: Arc<Workspace>) -> anyhow::Result<()> {
    let interactive = std::io::stdin().is_terminal();
    let mut out = std::io::stdout().lock();
    let mut shell = Shell::new(ws);
    write!(out, "{BANNER}")?;
    let mut lines = std::io::stdin().lock().lines();
    loop {
        write!(out, "{PROMPT}")?;
        out.flush()?;
        let Some(line) = lines.next().transpose()? else {
            writeln!(out)?;
            return Ok(());
        };
        if !interactive {
            writeln!(out, "{line}")?;
        }
        let response = shell.execute(&line);
        write!(out, "{}", response.output)?;
        if response.effect == Effect::Exit {
            return Ok(());
        }
    }
}

async fn serve(ws: Arc<Workspace>, addr: SocketAddr, config: ApiConfig) -> anyhow::Result<()> {
    let (app, failed) = router(ws, &config);
    for (path, e) in failed {
        eprintln!("warning: cannot restore {}: {e}", path.display());
    }
    let listener = tokio::net::TcpListener::bind(addr).await.with_context(|| format!("cannot bind {addr}"))?;
    eprintln!("listening on http://{addr}");
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command.unwrap_or(Command::Repl { ws: WorkspaceArg { workspace: "./corpus".into() } }) {
        Command::Repl { ws } => {
            repl(load(&ws.workspace)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Batch { script, ws, json } => {
            let text = match std::fs::read_to_string(&script) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", script.display());
                    return Ok(ExitCode::from(EXIT_SCRIPT_ERROR as u8));
                }
            };
            let outcome = run_script(load(&ws.workspace)?, &text);
            if json {
                println!("{}", outcome.to_json());
            } else {
                print!("{}", outcome.text);
            }
            if let Some(e) = &outcome.error {
                eprintln!("error: {e}");
            }
            Ok(ExitCode::from(outcome.exit_code as u8))
        }
        Command::Serve { ws, port, host, static_dir, persist, timeout, idle_timeout } => {
            let addr: SocketAddr = format!("{host}:{port}").parse().context("invalid --host/--port")?;
            let config = ApiConfig {
                timeout: Duration::from_secs(timeout),
                idle: Duration::from_secs(idle_timeout),
                persist,
                static_dir,
            };
            let ws = load(&ws.workspace)?;
            tokio::runtime::Runtime::new()?.block_on(serve(ws, addr, config))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_SCRIPT_ERROR as u8)
        }
    }
}
