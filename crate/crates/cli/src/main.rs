use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use unsteady_stokes_cli::{cmd_identities, cmd_solve, cmd_validate_asym, RunConfig, Table};

#[derive(Parser)]
#[command(name = "ustokes", version, about = "Unsteady Stokes layer potentials on moving boundaries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// TOML config file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// GMRES relative tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Local window width in time steps.
    #[arg(long, global = true)]
    delta_mult: Option<usize>,
    /// Spatial singular-rule order (4, 8, 16).
    #[arg(long, global = true)]
    order: Option<usize>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write CSV here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the line integrals and kernel moments.
    Identities,
    /// Hybrid against reference error over an ε sweep.
    ValidateAsym {
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        boundary: Option<String>,
        #[arg(long, value_delimiter = ',')]
        eps: Option<Vec<f64>>,
        #[arg(long)]
        points: Option<usize>,
    },
    /// Convergence study on the manufactured solution.
    Solve {
        #[arg(long)]
        boundary: Option<String>,
        #[arg(long, value_delimiter = ',')]
        steps: Option<Vec<usize>>,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long)]
        final_time: Option<f64>,
        /// Asymptotic-slice width.
        #[arg(long)]
        eps: Option<f64>,
        /// Run even beyond the work budget.
        #[arg(long)]
        force: bool,
    },
}

fn set<T>(slot: &mut T, v: Option<T>) {
    if let Some(v) = v {
        *slot = v;
    }
}

fn emit(table: &Table, out: &Option<PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, table.render())?,
        None => print!("{}", table.render()),
    }
    Ok(())
}

/// `Ok(true)` when every accuracy check passed.
fn run(cli: Cli) -> anyhow::Result<bool> {
    let mut cfg = match &cli.common.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let c = cli.common;
    set(&mut cfg.tol, c.tol);
    set(&mut cfg.delta_mult, c.delta_mult);
    set(&mut cfg.order, c.order);
    if c.threads.is_some() {
        cfg.threads = c.threads;
    }
    if c.out.is_some() {
        cfg.out = c.out;
    }
    let command = match &cli.command {
        Command::Identities => "identities",
        Command::ValidateAsym { kind, boundary, eps, points } => {
            set(&mut cfg.kind, kind.clone());
            set(&mut cfg.boundary, boundary.clone());
            set(&mut cfg.eps, eps.clone());
            set(&mut cfg.points, *points);
            "validate-asym"
        }
        Command::Solve { boundary, steps, points, final_time, eps, force } => {
            set(&mut cfg.boundary, boundary.clone());
            set(&mut cfg.steps, steps.clone());
            set(&mut cfg.points, *points);
            set(&mut cfg.final_time, *final_time);
            set(&mut cfg.solve_eps, *eps);
            cfg.force |= force;
            "solve"
        }
    };
    cfg.validate_for(command)?;
    if let Some(n) = cfg.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    match command {
        "identities" => {
            let r = cmd_identities()?;
            emit(&r.table(), &cfg.out)?;
            Ok(r.all_pass())
        }
        "validate-asym" => {
            let r = cmd_validate_asym(&cfg)?;
            emit(&r.table(), &cfg.out)?;
            Ok(true)
        }
        _ => {
            let r = cmd_solve(&cfg)?;
            emit(&r.table(), &cfg.out)?;
            Ok(r.rows.iter().all(|row| row.error.is_ok()))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
