use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ooqeom::driver::{self, exit, RunConfig};

/// oo-VQE ground states and qEOM excited-state spectra.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and write results.json, spectrum.csv and manifest.json.
    Run { config: PathBuf },
    /// Check the inputs named by a config without running anything.
    Validate { config: PathBuf },
    /// Run the pipeline and compare against CASCI in the optimized orbitals.
    Oracle { config: PathBuf },
}

fn fail(e: &ooqeom::Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(driver::exit_code(e) as u8)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Err(e) = driver::configure_threads() {
        return fail(&e);
    }
    let path = match &cli.command {
        Command::Run { config } | Command::Validate { config } | Command::Oracle { config } => config,
    };
    let cfg = match RunConfig::load(path) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    match cli.command {
        Command::Run { .. } => match driver::run(&cfg) {
            Ok(s) => {
                for st in &s.output.states {
                    println!("S{:<3} {:>10.4} eV  f = {:.6}  R = {:+.6e}", st.index, st.energy_ev, st.oscillator_strength, st.rotational_strength);
                }
                for f in &s.files {
                    println!("wrote {}", f.display());
                }
                if s.exit_code == exit::NOT_CONVERGED {
                    eprintln!("warning: VQE did not reach the gradient tolerance");
                }
                ExitCode::from(s.exit_code as u8)
            }
            Err(e) => fail(&e),
        },
        Command::Validate { .. } => {
            let issues = driver::validate(&cfg);
            if issues.is_empty() {
                println!("ok: no issues");
                ExitCode::SUCCESS
            } else {
                for i in &issues {
                    println!("issue: {i}");
                }
                ExitCode::from(exit::INPUT as u8)
            }
        }
        Command::Oracle { .. } => match driver::oracle(&cfg) {
            Ok(r) => {
                print!("{}", r.table());
                ExitCode::SUCCESS
            }
            Err(e) => fail(&e),
        },
    }
}
