//! `catbox box|trials|distinguish|bell|serve`.
//!
//! Exit codes: 0 on success, 2 on bad arguments or an unparseable script
//! line, 1 on I/O or runtime failures.

use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use catbox_core::experiments::{
    distinguish, parse_angle, run_trials, BellReport, ChshSettings, ObservableSpec, StatePrep,
};
use catbox_core::fsm::{BoxState, Catalog};

use crate::script::{parse_line, parse_script, Command as ScriptCommand};
use crate::service::{self, AppState, Config, SeedMode};

#[derive(Debug, Parser)]
#[command(name = "catbox", version, about = "Schrödinger-cat box simulator")]
pub struct Cli {
    /// Message catalog (KEY=text lines) overriding the English display texts.
    #[arg(long, global = true, env = "CATBOX_CATALOG")]
    pub catalog: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Drive one box, interactively from stdin or from a script file.
    Box(BoxArgs),
    /// Repeated prepare-and-measure trials; prints a frequency table.
    Trials(TrialsArgs),
    /// Decide whether the hidden state is the pure cat or the mixture.
    Distinguish(DistinguishArgs),
    /// CHSH report: analytic singlet value, classical bound, optional sampling.
    Bell(BellArgs),
    /// Run the HTTP service.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct BoxArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Event script; the transcript is printed as JSON lines.
    #[arg(long)]
    pub script: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrialsArgs {
    /// pure[:phase] | mixed | dephased:<strength>
    #[arg(long, default_value = "pure:0")]
    pub prep: StatePrep,
    /// h | s | rotated:<angle>
    #[arg(long)]
    pub obs: ObservableSpec,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct DistinguishArgs {
    #[arg(long)]
    pub prep: StatePrep,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct BellArgs {
    /// a,a',b,b' in radians or multiples of pi; defaults to 0,pi/2,pi/4,3pi/4.
    #[arg(long, value_parser = parse_settings)]
    pub angles: Option<ChshSettings>,
    /// Samples per setting pair; omit for the analytic report only.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub host: String,
    /// Give every box this seed instead of a random one.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Append each box's transcript to <dir>/<box_id>.jsonl.
    #[arg(long)]
    pub transcript_dir: Option<PathBuf>,
}

fn parse_settings(s: &str) -> Result<ChshSettings, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(format!("expected 4 comma-separated angles, got {}", parts.len()));
    }
    let mut angles = [0.0; 4];
    for (slot, p) in angles.iter_mut().zip(parts) {
        *slot = parse_angle(p).map_err(|e| e.to_string())?;
    }
    ChshSettings::new(angles[0], angles[1], angles[2], angles[3]).map_err(|e| e.to_string())
}

const EXIT_FAILURE: i32 = 1;
const EXIT_USAGE: i32 = 2;

/// Parses `args` and runs the command. Returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = if e.use_stderr() { e.render().to_string() } else { e.to_string() };
            let _ = if e.use_stderr() {
                write!(stderr, "{text}")
            } else {
                write!(stdout, "{text}")
            };
            return code;
        }
    };
    match execute(cli, stdin, stdout) {
        Ok(()) => 0,
        Err(Failure { code, message }) => {
            let _ = writeln!(stderr, "catbox: {message}");
            code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: EXIT_FAILURE, message: e.to_string() }
    }
}

fn print_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    writeln!(out, "{text}")?;
    Ok(())
}

fn execute(cli: Cli, stdin: &mut dyn BufRead, stdout: &mut dyn Write) -> Result<(), Failure> {
    let catalog = match &cli.catalog {
        Some(path) => Catalog::load(path).map_err(|e| Failure::usage(e.to_string()))?,
        None => Catalog::default(),
    };
    match cli.command {
        Command::Box(args) => match args.script {
            Some(path) => {
                let source = std::fs::read_to_string(&path).map_err(|e| {
                    Failure::usage(format!("cannot read script {}: {e}", path.display()))
                })?;
                let events = parse_script(&source).map_err(|e| {
                    Failure::usage(format!("{}: {e}", path.display()))
                })?;
                let b = BoxState::replay(args.seed, events);
                stdout.write_all(b.transcript_jsonl().as_bytes())?;
                Ok(())
            }
            None => interactive(args.seed, &catalog, stdin, stdout),
        },
        Command::Trials(a) => {
            let table = run_trials(a.prep, a.obs, a.n, a.seed).map_err(|e| Failure::usage(e.to_string()))?;
            print_json(stdout, &table)
        }
        Command::Distinguish(a) => {
            let verdict = distinguish(a.prep, a.n, a.seed).map_err(|e| Failure::usage(e.to_string()))?;
            print_json(stdout, &verdict)
        }
        Command::Bell(a) => {
            let settings = a.angles.unwrap_or_else(ChshSettings::tsirelson);
            let report = BellReport::run(settings, a.n.map(|n| (n, a.seed)))
                .map_err(|e| Failure::usage(e.to_string()))?;
            print_json(stdout, &report)
        }
        Command::Serve(a) => serve(a, catalog, stdout),
    }
}

fn interactive(seed: u64, catalog: &Catalog, stdin: &mut dyn BufRead, out: &mut dyn Write) -> Result<(), Failure> {
    let mut b = BoxState::new(seed);
    writeln!(out, "catbox seed {seed}. Commands: prepare, select h|s, measure, lid open|close, quit")?;
    write!(out, "{}", b.render(catalog).to_text())?;
    let mut line = String::new();
    loop {
        line.clear();
        if stdin.read_line(&mut line)? == 0 {
            break;
        }
        match parse_line(&line) {
            None => continue,
            Some(Ok(ScriptCommand::Quit)) => break,
            Some(Err(text)) => {
                writeln!(out, "? unrecognized command {text:?}")?;
                continue;
            }
            Some(Ok(ScriptCommand::Event(e))) => {
                b.apply(e);
                write!(out, "{}", b.render(catalog).to_text())?;
            }
        }
        out.flush()?;
    }
    Ok(())
}

fn serve(args: ServeArgs, catalog: Catalog, out: &mut dyn Write) -> Result<(), Failure> {
    let config = Config {
        seed_mode: args.seed.map_or(SeedMode::PerBoxRandom, SeedMode::Fixed),
        catalog,
        transcript_dir: args.transcript_dir,
    };
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind((args.host.as_str(), args.port)).await?;
        writeln!(out, "catbox listening on http://{}", listener.local_addr()?)?;
        out.flush()?;
        service::serve(listener, AppState::new(config)).await
    })?;
    Ok(())
}
