use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::Parser;

use kmdual_cli::scenario::{parse_field, parse_window};
use kmdual_cli::{run, Options, Scenario};

/// Run verification scenarios on finite-dimensional curved dg algebras.
#[derive(Parser, Debug)]
#[command(name = "kmdual", version)]
struct Cli {
    /// verify, hochschild, koszul-check, morita, simples or ext
    scenario: String,

    /// Builtin name or path to a description file.
    #[arg(long, default_value = "k")]
    algebra: String,

    /// `k`, `A`, `A*`, a module block of the algebra file, or a path.
    #[arg(long)]
    module: Option<String>,

    /// Word-length truncation W.
    #[arg(long, default_value_t = 4)]
    truncation: usize,

    /// Degree window `a:b` for cohomology.
    #[arg(long)]
    window: Option<String>,

    /// `Q` or `F<p>`.
    #[arg(long)]
    field: Option<String>,

    /// Write the key-value report here.
    #[arg(long)]
    report: Option<PathBuf>,

    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Print the elapsed time on stderr.
    #[arg(long)]
    timings: bool,
}

fn options(cli: &Cli) -> anyhow::Result<(Scenario, Options)> {
    let scenario = cli.scenario.parse()?;
    let opts = Options {
        algebra: cli.algebra.clone(),
        module: cli.module.clone(),
        truncation: cli.truncation,
        window: cli.window.as_deref().map(parse_window).transpose()?,
        field: cli.field.as_deref().map(parse_field).transpose()?,
        seed: cli.seed,
    };
    Ok((scenario, opts))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = options(&cli).and_then(|(scenario, opts)| Ok(run(scenario, &opts)?));
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    print!("{}", report.to_human());
    if let Some(path) = &cli.report {
        let written =
            std::fs::write(path, report.to_key_value()).with_context(|| format!("writing {}", path.display()));
        if let Err(e) = written {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    }
    if cli.timings {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
