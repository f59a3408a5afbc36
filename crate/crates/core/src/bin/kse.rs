use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rkhs_kse::basis::Scheme;
use rkhs_kse::config::{parse_number, ProblemConfig};
use rkhs_kse::metrics::{convergence_table, emit_surface, table_abs_errors, table_zetas, ErrorReport};
use rkhs_kse::operator::KseProblem;
use rkhs_kse::solver::{interior_grid, solve, FIXED_POINT_SWEEPS};
use rkhs_kse::{selftest, Error, Result};

#[derive(Parser)]
#[command(name = "kse", version, about = "Kernel collocation solver for the time-fractional KS equation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve once and print error norms against the reference solution.
    Solve(SolveArgs),
    /// Absolute errors at ζ = i/12, τ = 0.5 for α = 0.5, 0.75, 0.85, 0.95 (1..4).
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        which: u8,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// L2 and L∞ errors over the table ζ points for each (n, τ).
    Converge {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, value_delimiter = ',', default_values_t = vec![6usize, 12, 24])]
        n_list: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values = ["1/6", "1/3", "1/2", "2/3", "5/6"], value_parser = number)]
        tau_list: Vec<f64>,
        #[arg(long, default_value_t = Scheme::default(), value_parser = scheme)]
        scheme: Scheme,
        #[arg(long, default_value_t = FIXED_POINT_SWEEPS)]
        sweeps: usize,
    },
    /// Write exact and approximate values on a RxC grid as CSV.
    Surface {
        #[command(flatten)]
        solve: SolveArgs,
        #[arg(long, default_value = "21x21")]
        grid: String,
        #[arg(long)]
        csv: PathBuf,
    },
    /// Kernel, Caputo, orthonormality and operator consistency checks.
    Selftest,
}

#[derive(Args)]
struct ProblemArgs {
    /// `key = value` file with alpha, beta, gamma, mu, nu, a, b, T.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the configured fractional order.
    #[arg(long, value_parser = number)]
    alpha: Option<f64>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 12)]
    n: usize,
    #[arg(long, default_value_t = Scheme::default(), value_parser = scheme)]
    scheme: Scheme,
    /// Sweep budget; 1 runs the sequential pass only.
    #[arg(long, default_value_t = FIXED_POINT_SWEEPS)]
    sweeps: usize,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    run: RunArgs,
}

fn number(s: &str) -> std::result::Result<f64, String> {
    parse_number(s)
}

fn scheme(s: &str) -> Result<Scheme> {
    s.parse()
}

impl ProblemArgs {
    fn problem(&self) -> Result<KseProblem> {
        let mut cfg = match &self.config {
            Some(path) => ProblemConfig::load(path)?,
            None => ProblemConfig::default(),
        };
        if let Some(a) = self.alpha {
            cfg.alpha = a;
        }
        cfg.problem()
    }
}

fn parse_grid(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Config(format!("grid must look like RxC, got `{s}`"));
    let (r, c) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((r.trim().parse().map_err(|_| bad())?, c.trim().parse().map_err(|_| bad())?))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve(args) => {
            let problem = args.problem.problem()?;
            let RunArgs { n, scheme, sweeps } = args.run;
            let sol = solve(&problem, n, scheme, sweeps)?;
            for (k, rec) in sol.history().iter().enumerate() {
                println!("sweep {:>3}: |B| = {:.6e}, |ΔB| = {:.3e}", k + 1, rec.norm, rec.change);
            }
            let tau = 0.5 * problem.domain.t_end;
            let dom = problem.domain;
            let table: Vec<_> = table_zetas().iter().map(|&x| (dom.a + dom.width() * x, tau)).collect();
            let line = ErrorReport::evaluate(&sol, &table)?;
            let area = ErrorReport::evaluate(&sol, &interior_grid(&problem, 9, 9))?;
            let worst = sol.collocation_residuals().iter().fold(0.0f64, |m, r| m.max(r.abs()));
            println!("α = {}, n = {n}, scheme = {scheme}, sweeps run = {}", problem.alpha.value(), sol.sweeps_run());
            println!("τ = {tau} line: L2 = {:.6e}, L∞ = {:.6e}", line.l2, line.linf);
            println!("9×9 grid:     L2 = {:.6e}, L∞ = {:.6e}", area.l2, area.linf);
            println!("max collocation residual = {worst:.3e}");
        }
        Command::Table { which, run, csv } => {
            let alpha = [0.5, 0.75, 0.85, 0.95][which as usize - 1];
            let problem = KseProblem::benchmark(alpha)?;
            let report = table_abs_errors(&problem, run.n, run.scheme, run.sweeps, 0.5, &table_zetas())?;
            println!("{report}");
            if let Some(path) = csv {
                report.write_csv(std::io::BufWriter::new(std::fs::File::create(path)?))?;
            }
        }
        Command::Converge { problem, n_list, tau_list, scheme, sweeps } => {
            let problem = problem.problem()?;
            let reports = convergence_table(&problem, &n_list, &tau_list, scheme, sweeps)?;
            println!("{:>4} {:>10} {:>14} {:>14}", "n", "τ", "L2", "L∞");
            for rep in &reports {
                println!("{:>4} {:>10.6} {:>14.6e} {:>14.6e}", rep.config.n, rep.rows[0].tau, rep.l2, rep.linf);
            }
        }
        Command::Surface { solve: args, grid, csv } => {
            let (rows, cols) = parse_grid(&grid)?;
            let problem = args.problem.problem()?;
            let sol = solve(&problem, args.run.n, args.run.scheme, args.run.sweeps)?;
            emit_surface(&sol, rows, cols, &csv)?;
            println!("wrote {} rows to {}", rows * cols, csv.display());
        }
        Command::Selftest => {
            let checks = selftest::run()?;
            for c in &checks {
                println!("{c}");
            }
            if let Some(c) = checks.iter().find(|c| !c.passed()) {
                return Err(Error::Accuracy { estimate: c.worst, bound: c.worst, tol: c.tolerance });
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("kse: {e}");
            ExitCode::from(e.category().exit_code() as u8)
        }
    }
}
