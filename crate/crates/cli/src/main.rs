//! Command-line driver for the two-backend Hodge-Gaussian toolkit.
//!
//! Exit codes: 0 success / all checks pass, 1 configuration or usage error,
//! 2 verification failure, 3 inconclusive verification.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{ConfigFile, Overrides, RunConfig};

#[derive(Parser)]
#[command(
    name = "hodge-gauss",
    about = "Relation spaces, Wahl maps and Hodge-Gaussian maps on the projective line and the flat torus",
    version
)]
struct Cli {
    /// structured key/value config file; command-line flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// backend: p1 (exact) or torus (spectral)
    #[arg(long, global = true)]
    backend: Option<String>,

    /// bundle degree d
    #[arg(long, global = true)]
    degree: Option<usize>,

    /// relation degree k (default 2)
    #[arg(long, global = true)]
    k: Option<usize>,

    /// twist m (default 1)
    #[arg(long, global = true)]
    m: Option<usize>,

    /// torus modulus as a complex literal, e.g. 0+1i
    #[arg(long, global = true)]
    tau: Option<String>,

    /// torus grid resolution (power of two)
    #[arg(long, global = true)]
    grid: Option<usize>,

    /// ascending grid list for convergence studies, e.g. 64,128,256
    #[arg(long, global = true)]
    grids: Option<String>,

    /// flat character `a, b` in [0,1)^2
    #[arg(long, global = true)]
    chi: Option<String>,

    /// sample points (exact rationals on p1; x:y pairs on the torus)
    #[arg(long, global = true)]
    points: Option<String>,

    /// output directory for JSON/CSV artifacts
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the relation space I_k(L) and write its basis
    Ik,
    /// Compute the Wahl images of the I_2 basis
    Wahl,
    /// Compute the Hodge-Gaussian image of one basis relation at one point
    Rho {
        /// index into the relation-space basis
        #[arg(long, default_value_t = 0)]
        q_index: usize,
        /// Schiffer point (exact rational on p1, x:y on the torus)
        #[arg(long)]
        point: Option<String>,
    },
    /// Pair-of-bundles relation space R_2(E,F) on the line, and optionally
    /// the pair map image
    Pair {
        /// summand degrees of E, e.g. 2 or 2,1
        #[arg(long, default_value = "2")]
        e_degrees: String,
        /// summand degrees of F
        #[arg(long, default_value = "2")]
        f_degrees: String,
        /// E-summand carrying the Schiffer class
        #[arg(long)]
        component: Option<usize>,
        /// Schiffer point (exact rational)
        #[arg(long)]
        point: Option<String>,
        /// index into the R_2 basis
        #[arg(long, default_value_t = 0)]
        q_index: usize,
    },
    /// Run verification suites and write reports
    Verify {
        /// lift | twisted | welldefined | closedness | symmetry | convergence | all
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Pretty-print a report file
    Report { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let file = match cli.config.as_deref().map(ConfigFile::load).transpose() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let overrides = Overrides {
        backend: cli.backend.clone(),
        degree: cli.degree,
        k: cli.k,
        m: cli.m,
        tau: cli.tau.clone(),
        grid: cli.grid,
        grids: cli.grids.clone(),
        chi: cli.chi.clone(),
        points: cli.points.clone(),
        output: cli.out.clone(),
    };
    let needs_config = !matches!(cli.command, Command::Report { .. } | Command::Pair { .. });
    let run_config = if needs_config {
        match RunConfig::build(file.as_ref(), &overrides) {
            Ok(c) => Some(c),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        }
    } else {
        None
    };

    let result = match cli.command {
        Command::Ik => commands::cmd_ik(run_config.as_ref().unwrap()),
        Command::Wahl => commands::cmd_wahl(run_config.as_ref().unwrap()),
        Command::Rho { q_index, point } => {
            commands::cmd_rho(run_config.as_ref().unwrap(), q_index, point.as_deref())
        }
        Command::Pair {
            e_degrees,
            f_degrees,
            component,
            point,
            q_index,
        } => commands::cmd_pair(
            file.as_ref(),
            &overrides,
            &e_degrees,
            &f_degrees,
            component,
            point.as_deref(),
            q_index,
        ),
        Command::Verify { suite } => {
            return commands::cmd_verify(run_config.as_ref().unwrap(), &suite);
        }
        Command::Report { file } => commands::cmd_report(&file),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
