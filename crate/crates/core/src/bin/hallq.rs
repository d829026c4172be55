use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hallq::generic::Side;
use hallq::io::{error_record, run_command, Format, JobConfig, Mode};
use hallq::{Error, Result};

#[derive(Parser)]
#[command(name = "hallq", version, about = "Exact Hall algebra computations for Dynkin quivers over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the positive roots.
    Roots(Opts),
    /// Decompose a representation (args.rep) or describe a class (--class).
    Decompose(Opts),
    /// One Hall number g^L_{MN}, optionally cross-checked by enumeration.
    Hallnum(Opts),
    /// Twisted product of basis elements u_M.
    Product(Opts),
    /// Product in the reduced algebra of E_i, F_i, K_i, K_i^-1, b[α] and radical classes.
    Dhproduct(Opts),
    /// Check the quantum group relations and the Serre relations of the u_{S_i}.
    #[command(name = "verify-qg")]
    VerifyQg(Opts),
    /// res coefficients against twisted Hall numbers.
    Res(Opts),
    /// Hall polynomials fitted over the primes and checked on a held-out prime.
    Interpolate(Opts),
    /// Canonical basis at --nu, or the three-orbit check without it.
    Canonical(Opts),
    /// Leading coefficients of M ↦ C_M.
    #[command(name = "phi-check")]
    PhiCheck(Opts),
    /// Write structure-constant tables and a manifest to --out.
    #[command(name = "export-tables")]
    ExportTables(Opts),
}

#[derive(Args, Clone, Default)]
struct Opts {
    /// TOML job file; flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Quiver file or built-in name (A2, D4, E6, ...).
    #[arg(long)]
    quiver: Option<String>,
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long, value_parser = parse_mode)]
    mode: Option<Mode>,
    #[arg(long)]
    cap: Option<u64>,
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
    /// Dimension-vector window, e.g. 2,2.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    dim: Option<Vec<i64>>,
    #[arg(long, value_delimiter = ',')]
    ue1: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    ue0: Option<Vec<usize>>,
    #[arg(long, value_parser = parse_side)]
    side: Option<Side>,
    #[arg(long)]
    l: Option<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    n: Option<String>,
    /// Cross-check against exhaustive enumeration.
    #[arg(long)]
    oracle: bool,
    /// Product factor; repeat in order.
    #[arg(long = "factor")]
    factors: Vec<String>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    nu: Option<Vec<i64>>,
    #[arg(long)]
    class: Option<String>,
    #[arg(long)]
    out: Option<String>,
}

fn parse_side(s: &str) -> std::result::Result<Side, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    match s {
        "numeric" => Ok(Mode::Numeric),
        "generic" => Ok(Mode::Generic),
        _ => Err(format!("unknown mode `{s}`")),
    }
}

fn parse_format(s: &str) -> std::result::Result<Format, String> {
    match s {
        "json" => Ok(Format::Json),
        "csv" => Ok(Format::Csv),
        _ => Err(format!("unknown format `{s}`")),
    }
}

impl Command {
    fn split(self) -> (&'static str, Opts) {
        match self {
            Command::Roots(o) => ("roots", o),
            Command::Decompose(o) => ("decompose", o),
            Command::Hallnum(o) => ("hallnum", o),
            Command::Product(o) => ("product", o),
            Command::Dhproduct(o) => ("dhproduct", o),
            Command::VerifyQg(o) => ("verify-qg", o),
            Command::Res(o) => ("res", o),
            Command::Interpolate(o) => ("interpolate", o),
            Command::Canonical(o) => ("canonical", o),
            Command::PhiCheck(o) => ("phi-check", o),
            Command::ExportTables(o) => ("export-tables", o),
        }
    }
}

fn job(o: Opts) -> Result<JobConfig> {
    let mut c = match &o.config {
        Some(p) => JobConfig::load(p)?,
        None => JobConfig::default(),
    };
    if let Some(x) = o.quiver {
        c.quiver = x;
        c.base_dir = None;
    }
    if let Some(x) = o.primes {
        c.primes = x;
    }
    c.q = o.q.or(c.q);
    c.mode = o.mode.unwrap_or(c.mode);
    c.cap = o.cap.unwrap_or(c.cap);
    c.format = o.format.unwrap_or(c.format);
    c.window.dim = o.dim.or(c.window.dim);
    c.window.ue1 = o.ue1.or(c.window.ue1);
    c.window.ue0 = o.ue0.or(c.window.ue0);
    let a = &mut c.args;
    a.side = o.side.or(a.side);
    a.l = o.l.or(a.l.take());
    a.m = o.m.or(a.m.take());
    a.n = o.n.or(a.n.take());
    a.oracle |= o.oracle;
    if !o.factors.is_empty() {
        a.factors = o.factors;
    }
    a.nu = o.nu.or(a.nu.take());
    a.class = o.class.or(a.class.take());
    a.out = o.out.or(a.out.take());
    Ok(c)
}

fn run(cmd: Command) -> Result<i32> {
    let (name, opts) = cmd.split();
    let cfg = job(opts)?;
    let report = run_command(name, &cfg)?;
    print!("{}", report.render(cfg.format)?);
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match std::panic::catch_unwind(|| run(cli.command)) {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            eprintln!("hallq: {e}");
            println!("{}", serde_json::to_string_pretty(&error_record(&e)).unwrap_or_default());
            e.exit_code()
        }
        Err(_) => 1,
    };
    ExitCode::from(code as u8)
}
