use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use cli_report::{parse_config, run, Command, RunConfig, RunError};

/// Entanglement distribution times for heralded quantum repeaters.
#[derive(Parser, Debug)]
#[command(name = "repeater", version)]
struct Cli {
    /// Command to run; falls back to `command` in the config file.
    #[arg(value_enum)]
    command: Option<Command>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    protocol: Option<String>,
    #[arg(long = "L-km")]
    l_km: Option<String>,
    #[arg(long)]
    eta_m: Option<String>,
    #[arg(long)]
    eta_d: Option<String>,
    #[arg(long)]
    n_max: Option<String>,
    #[arg(long)]
    nm: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    trials: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the effective config and exit.
    #[arg(long)]
    dump_config: bool,
}

fn build(cli: &Cli) -> Result<RunConfig, RunError> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|source| RunError::Io { path: path.display().to_string(), source })?;
            parse_config(&text)?
        }
        None => RunConfig::default(),
    };
    if let Some(c) = cli.command {
        cfg.command = c;
    }
    let flags = [
        ("protocol", &cli.protocol),
        ("L_km", &cli.l_km),
        ("eta_m", &cli.eta_m),
        ("eta_d", &cli.eta_d),
        ("n_max", &cli.n_max),
        ("nm", &cli.nm),
        ("seed", &cli.seed),
        ("trials", &cli.trials),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            cfg.set(key, v, 0)?;
        }
    }
    if let Some(out) = &cli.out {
        cfg.out = Some(out.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn execute(cli: &Cli) -> Result<(), RunError> {
    let cfg = build(cli)?;
    let text = if cli.dump_config { cfg.dump() } else { run(&cfg)? };
    match &cfg.out {
        Some(path) if !cli.dump_config => {
            std::fs::write(path, text).map_err(|source| RunError::Io { path: path.display().to_string(), source })
        }
        _ => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
