use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qchan::experiment::{
    certificates_for, preset, recheck_certificate, run_and_write, ExperimentConfig, RunOutcome, PRESETS,
};

/// Capacity certificates and output-purity experiments for generalized
/// depolarizing channels.
#[derive(Parser)]
#[command(name = "qchan", version)]
struct Cli {
    /// Maximum number of worker threads.
    #[arg(long, global = true, env = "QCHAN_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment described by a JSON config.
    Run {
        config: PathBuf,
        /// Overrides the seed in the config.
        #[arg(long, env = "QCHAN_SEED")]
        seed: Option<u64>,
        /// CSV destination; overrides the config, `-` for stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one of the built-in grids.
    Preset {
        name: String,
        #[arg(long, env = "QCHAN_SEED")]
        seed: Option<u64>,
        /// CSV destination (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        starts: Option<usize>,
        /// JSON sidecar for the certificates.
        #[arg(long)]
        certificates: Option<PathBuf>,
        /// Print the preset's config instead of running it.
        #[arg(long)]
        print_config: bool,
    },
    /// Re-run stored certificates (a sidecar, or a config naming one).
    Verify { path: PathBuf },
    /// List preset names.
    ListPresets,
}

fn set_output(cfg: &mut ExperimentConfig, out: Option<PathBuf>) {
    match out {
        Some(p) if p.as_os_str() == "-" => cfg.output = None,
        Some(p) => cfg.output = Some(p),
        None => {}
    }
}

fn report(outcome: &RunOutcome) -> ExitCode {
    let failed = outcome.failures();
    eprintln!("{} rows, {} failed", outcome.rows.len(), failed);
    for r in outcome.rows.iter().filter(|r| r.failed()) {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        eprintln!(
            "  FAIL {} {} verified={} non_converged={}",
            r.family,
            params.join(" "),
            r.verified,
            r.non_converged
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn execute(cli: Cli) -> qchan::Result<ExitCode> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| qchan::Error::ConfigInvalid(format!("thread pool: {e}")))?;
    }
    match cli.command {
        Command::Run { config, seed, out } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            set_output(&mut cfg, out);
            Ok(report(&run_and_write(&cfg)?))
        }
        Command::Preset { name, seed, out, starts, certificates, print_config } => {
            let mut cfg = preset(&name)?;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(n) = starts {
                cfg.starts = n;
            }
            set_output(&mut cfg, out);
            cfg.certificates = certificates;
            if print_config {
                println!("{}", serde_json::to_string_pretty(&cfg)?);
                return Ok(ExitCode::SUCCESS);
            }
            Ok(report(&run_and_write(&cfg)?))
        }
        Command::Verify { path } => {
            let certs = certificates_for(&path)?;
            let mut failed = 0;
            for (i, c) in certs.iter().enumerate() {
                let r = recheck_certificate(c)?;
                let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                println!(
                    "{} #{i} {}^{} {} stored={:.3e} rerun={:.3e} candidate={} reproduced={} verified={}",
                    if r.ok() { "OK  " } else { "FAIL" },
                    r.family,
                    r.tensor_power,
                    params.join(" "),
                    r.stored_violation,
                    r.worst_violation,
                    r.candidate_matches,
                    r.reproduced,
                    r.verified
                );
                failed += usize::from(!r.ok());
            }
            eprintln!("{} certificates, {failed} failed", certs.len());
            Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::ListPresets => {
            for (name, about) in PRESETS {
                println!("{name:<20} {about}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
