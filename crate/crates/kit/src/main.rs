use std::collections::BTreeMap;
use std::process::ExitCode;

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand};

use boso_kit::{emit, exit_code, run, Command, Format, JobConfig, Options, EXIT_INPUT};

#[derive(Parser)]
#[command(name = "boso-kit", version, about = "Exact Ext-algebras, smash products and deformation-sequence checks")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Ext table of the algebra named in a config's [ext] block.
    Ext(Job),
    /// Verify a deformation sequence (config or built-in name).
    VerifySeq(Job),
    /// Validate a twisting map (config or built-in name).
    VerifyTtp(Job),
    /// Smash a sequence by a Hopf sequence (config, or two built-in names).
    Smash(Job),
    /// Run a built-in example.
    Examples(Job),
}

#[derive(Args)]
struct Job {
    /// Config file or built-in name(s), then `key=value` parameters.
    #[arg(required = true)]
    targets: Vec<String>,
    /// Maximum homological degree.
    #[arg(long = "N")]
    top: Option<usize>,
    /// Maximum internal degree.
    #[arg(long)]
    max_ideg: Option<u32>,
    /// Field override, e.g. F5 or Q(zeta4).
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    p: Option<u32>,
    /// Scalar literal or zetaK.
    #[arg(long)]
    q: Option<String>,
    /// Order of the acting root of unity.
    #[arg(long)]
    q_order: Option<u32>,
    /// Comma-separated nilpotency orders for `qls`.
    #[arg(long)]
    orders: Option<String>,
    /// json, csv or tex.
    #[arg(long)]
    output: Option<String>,
    #[arg(long)]
    out: Option<String>,
}

fn execute(cmd: Command, job: Job) -> Result<i32> {
    let mut names = Vec::new();
    let mut params = BTreeMap::new();
    for t in &job.targets {
        match t.split_once('=') {
            Some((k, v)) => {
                params.insert(k.to_string(), v.to_string());
            }
            None => names.push(t.clone()),
        }
    }
    for (k, v) in [("n", job.n.map(|x| x.to_string())), ("p", job.p.map(|x| x.to_string())), ("q", job.q), ("q-order", job.q_order.map(|x| x.to_string())), ("orders", job.orders)] {
        if let Some(v) = v {
            params.insert(k.to_string(), v);
        }
    }
    let mut format = job.output.as_deref().map(Format::parse).transpose()?;
    let mut path = job.out;
    if let Some(first) = names.first().filter(|f| std::path::Path::new(f.as_str()).is_file()) {
        if let Some(o) = JobConfig::load(first)?.output {
            format = format.or(o.format.as_deref().map(Format::parse).transpose()?);
            path = path.or(o.path);
        }
    }
    if names.is_empty() {
        return Err(anyhow!("missing config file or built-in name"));
    }
    let opts = Options { top: job.top, max_ideg: job.max_ideg, field: job.field, params };
    let report = run(cmd, &names, &opts)?;
    let text = emit(&report, format.unwrap_or_default())?;
    match path {
        Some(p) => std::fs::write(&p, text).map_err(|e| anyhow!("writing {p}: {e}"))?,
        None => print!("{text}"),
    }
    Ok(exit_code(&report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, job) = match cli.command {
        Cmd::Ext(j) => (Command::Ext, j),
        Cmd::VerifySeq(j) => (Command::VerifySeq, j),
        Cmd::VerifyTtp(j) => (Command::VerifyTtp, j),
        Cmd::Smash(j) => (Command::Smash, j),
        Cmd::Examples(j) => (Command::Examples, j),
    };
    match execute(cmd, job) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
