mod commands;
mod datapoints;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use report::Report;

#[derive(Parser)]
#[command(name = "hilbseries", version, about = "Exact tautological series on Hilbert schemes of points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Emit::Table)]
    emit: Emit,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cache finished reports in this directory.
    #[arg(long, global = true, env = "HILBSERIES_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Json,
    Table,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
enum Command {
    /// Fit V, W, X, Y, Z for one rank from top Chern class integrals.
    C2n(commands::C2nArgs),
    /// Euler characteristics of determinant line bundles by localization.
    Chi(commands::ChiArgs),
    /// Check the identities relating both families of universal series.
    Verify(commands::VerifyArgs),
    /// Compare top Chern classes with Euler characteristics on Quot-type instances.
    Quot(commands::QuotArgs),
    /// Check c_2n(O_p^[n]) = (-1)^n C_n.
    Catalan(commands::CatalanArgs),
    /// Run the tree and hook-length oracles.
    Trees(commands::TreesArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::C2n(_) => "c2n",
            Command::Chi(_) => "chi",
            Command::Verify(_) => "verify",
            Command::Quot(_) => "quot",
            Command::Catalan(_) => "catalan",
            Command::Trees(_) => "trees",
        }
    }

    /// The configuration that determines the report, with file inputs inlined.
    fn config(&self) -> Result<serde_json::Value, String> {
        let mut v = serde_json::to_value(self).map_err(|e| e.to_string())?;
        if let Command::C2n(a) = self {
            if let Some(path) = &a.datapoints {
                let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                let parsed: serde_json::Value = serde_json::from_str(&text).map_err(|e| format!("datapoints: {e}"))?;
                v["c2n"]["datapoints"] = parsed;
            }
        }
        Ok(v)
    }

    fn run(&self, config: serde_json::Value) -> Result<Report, String> {
        let report = Report::new(self.name(), config);
        match self {
            Command::C2n(a) => commands::c2n(a, report),
            Command::Chi(a) => commands::chi(a, report),
            Command::Verify(a) => commands::verify(a, report),
            Command::Quot(a) => commands::quot(a, report),
            Command::Catalan(a) => commands::catalan(a, report),
            Command::Trees(a) => commands::trees(a, report),
        }
    }
}

fn cache_path(dir: &Path, config: &serde_json::Value) -> PathBuf {
    let key = serde_json::json!({ "version": hilbseries::VERSION, "config": config });
    let digest = Sha256::digest(key.to_string().as_bytes());
    dir.join(format!("{digest:x}.json"))
}

fn load_or_run(cmd: &Command, cache_dir: Option<&Path>) -> Result<Report, String> {
    let config = cmd.config()?;
    let path = cache_dir.map(|d| cache_path(d, &config));
    if let Some(p) = &path {
        if let Ok(text) = std::fs::read_to_string(p) {
            if let Ok(report) = serde_json::from_str::<Report>(&text) {
                if report.config == config {
                    return Ok(report);
                }
            }
        }
    }
    let report = cmd.run(config)?;
    if let (Some(p), Some(dir)) = (&path, cache_dir) {
        std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
        let tmp = p.with_extension("tmp");
        std::fs::write(&tmp, report.to_json()).and_then(|_| std::fs::rename(&tmp, p)).map_err(|e| format!("{}: {e}", p.display()))?;
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match load_or_run(&cli.command, cli.output.cache_dir.as_deref()) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match cli.output.emit {
        Emit::Json => report.to_json(),
        Emit::Table => report.to_table(),
    };
    match &cli.output.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
