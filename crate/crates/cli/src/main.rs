//! `ncpn`: parse, normalize and check noncommutative Poisson-Nijenhuis data
//! on doubled quivers.

mod commands;
mod report;
mod script;
mod session;

use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use ncpn_core::{builtins, Error, Result};

use commands::{CheckKind, Command};
use report::{emit, Format, Report};
use script::Script;
use session::{parse_dims, Session};

#[derive(Parser, Debug)]
#[command(name = "ncpn", version, about = "Exact symbolic checks for Poisson-Nijenhuis structures on quiver path algebras")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Opts {
    /// `cm`, `gh`, or a file holding a quiver declaration.
    #[arg(long, global = true)]
    quiver: Option<String>,
    /// Largest word length in the test family.
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Hierarchy depth, or the largest degree for bracket tables.
    #[arg(long, global = true)]
    depth: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Family of functions for `check lenard` (`I`, `J`, `I2`).
    #[arg(long, global = true)]
    chain: Option<String>,
    /// Number of links for `check lenard`.
    #[arg(long, global = true)]
    links: Option<usize>,
    /// Report wall-clock time per command.
    #[arg(long, global = true)]
    timing: bool,
    /// Dimension vector such as `2,1`; repeat for several.
    #[arg(long, global = true, value_parser = parse_dims)]
    dims: Vec<Vec<usize>>,
    /// Random points per dimension vector.
    #[arg(long, global = true)]
    points: Option<usize>,
    /// Random cases for `check structure`.
    #[arg(long, global = true)]
    cases: Option<usize>,
    /// Prefix of built-ins to compare a hierarchy against, e.g. `cm.pi`.
    #[arg(long, global = true)]
    expect: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Parse an expression and print it in canonical form.
    Parse { expr: String },
    /// Reduce to the necklace or de Rham quotient.
    Normalize { expr: String },
    /// The double Schouten bracket of two polyvectors.
    Schouten { left: String, right: String },
    /// Run a named check.
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        args: Vec<String>,
    },
    /// Build `π_m` from `π₀` and `N`, then check pairwise compatibility.
    Hierarchy { pi: String, endo: String },
    /// Evaluate on a representation point.
    RepEval {
        expr: String,
        /// JSON file `{dim, matrices}`; random when absent.
        #[arg(long)]
        point: Option<String>,
    },
    /// Run a batch script.
    Run { script: String },
    /// List the built-in names.
    Builtins,
}

fn session(o: &Opts) -> Result<Session> {
    let mut s = Session::default();
    let c = &mut s.config;
    if let Some(v) = o.bound {
        c.bound = v;
    }
    if let Some(v) = o.depth {
        c.depth = v;
    }
    if let Some(v) = o.seed {
        c.seed = v;
    }
    if let Some(v) = o.links {
        c.links = v;
    }
    if let Some(v) = o.points {
        c.points = v;
    }
    if let Some(v) = o.cases {
        c.cases = v;
    }
    c.chain = o.chain.clone();
    c.expect = o.expect.clone();
    c.dims = o.dims.clone();
    if let Some(q) = &o.quiver {
        let text = if Path::new(q).is_file() {
            std::fs::read_to_string(q).map_err(|e| Error::Quiver(format!("{q}: {e}")))?
        } else {
            q.clone()
        };
        s.load_quiver(&text)?;
    }
    Ok(s)
}

fn timed(r: Result<Report>, t0: Instant, timing: bool) -> Result<Report> {
    let mut r = r?;
    if timing {
        r.elapsed_ms = Some(t0.elapsed().as_millis() as u64);
    }
    Ok(r)
}

fn execute(cli: &Cli) -> Result<bool> {
    let mut s = session(&cli.opts)?;
    let fmt = cli.opts.format;
    let t0 = Instant::now();
    let cmd = match &cli.cmd {
        Cmd::Parse { expr } => Command::Parse(expr.clone()),
        Cmd::Normalize { expr } => Command::Normalize(expr.clone()),
        Cmd::Schouten { left, right } => Command::Schouten(left.clone(), right.clone()),
        Cmd::Check { kind, args } => Command::Check(*kind, args.clone()),
        Cmd::Hierarchy { pi, endo } => Command::Hierarchy(pi.clone(), endo.clone()),
        Cmd::RepEval { expr, point } => Command::RepEval {
            expr: expr.clone(),
            point: point.clone(),
        },
        Cmd::Run { script } => {
            let src = std::fs::read_to_string(script).map_err(|e| Error::Json(format!("{script}: {e}")))?;
            let sc = Script::parse(&src)?;
            sc.validate(&s.config)?;
            let reports = sc.run(&mut s, cli.opts.timing)?;
            emit(&reports, fmt, Some(script));
            return Ok(reports.iter().all(Report::passed));
        }
        Cmd::Builtins => {
            let mut r = Report::new("builtins");
            for n in builtins::NAMES {
                r = r.line(*n);
            }
            r.result = Some(serde_json::json!(builtins::NAMES));
            emit(&[r], fmt, None);
            return Ok(true);
        }
    };
    let r = timed(commands::run(&cmd, &mut s), t0, cli.opts.timing)?;
    let ok = r.passed();
    emit(&[r], fmt, None);
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            if cli.opts.format == Format::Json {
                println!("{}", serde_json::json!({ "schema": 1, "error": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
