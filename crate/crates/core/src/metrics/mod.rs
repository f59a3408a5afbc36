//! Error norms, error tables and surface data.

use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;

use rayon::prelude::*;

use crate::basis::Scheme;
use crate::error::{contract, Error, Result};
use crate::operator::KseProblem;
use crate::solver::{solve, ApproximateSolution};

pub const CSV_HEADER: &str = "zeta,tau,exact,approx,abs_error";

/// `√(Σ eᵢ²)`, without normalization by the number of points.
pub fn l2_error(errors: &[f64]) -> Result<f64> {
    if errors.is_empty() {
        return Err(contract("l2 norm of an empty error list"));
    }
    Ok(errors.iter().map(|e| e * e).sum::<f64>().sqrt())
}

/// `max |eᵢ|`.
pub fn linf_error(errors: &[f64]) -> Result<f64> {
    if errors.is_empty() {
        return Err(contract("max norm of an empty error list"));
    }
    Ok(errors.iter().fold(0.0, |m, e| m.max(e.abs())))
}

/// `ζ = i/12` for `i = 1..11`, the default evaluation points of the error tables.
pub fn table_zetas() -> Vec<f64> {
    (1..12).map(|i| i as f64 / 12.0).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRow {
    pub zeta: f64,
    pub tau: f64,
    pub exact: f64,
    pub approx: f64,
    pub abs_error: f64,
}

impl ErrorRow {
    pub fn new(zeta: f64, tau: f64, exact: f64, approx: f64) -> Self {
        Self { zeta, tau, exact, approx, abs_error: (exact - approx).abs() }
    }

    fn csv_line(&self) -> String {
        format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            self.zeta, self.tau, self.exact, self.approx, self.abs_error
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub alpha: f64,
    pub n: usize,
    pub scheme: Scheme,
    /// Sweeps actually run.
    pub sweeps: usize,
}

impl RunConfig {
    pub fn of(solution: &ApproximateSolution) -> Self {
        Self {
            alpha: solution.problem().alpha.value(),
            n: solution.len(),
            scheme: solution.basis().set().scheme,
            sweeps: solution.sweeps_run(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub rows: Vec<ErrorRow>,
    pub l2: f64,
    pub linf: f64,
    pub config: RunConfig,
}

impl ErrorReport {
    pub fn from_rows(rows: Vec<ErrorRow>, config: RunConfig) -> Result<Self> {
        let errs: Vec<f64> = rows.iter().map(|r| r.abs_error).collect();
        Ok(Self { l2: l2_error(&errs)?, linf: linf_error(&errs)?, rows, config })
    }

    /// Compares `solution` with the reference at `points`, evaluating in parallel.
    pub fn evaluate(solution: &ApproximateSolution, points: &[(f64, f64)]) -> Result<Self> {
        let problem = solution.problem();
        let approx = solution.evaluate_many(points)?;
        let rows = points
            .iter()
            .zip(approx)
            .map(|(&(z, t), w)| ErrorRow::new(z, t, problem.exact(z, t), w))
            .collect();
        Self::from_rows(rows, RunConfig::of(solution))
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for row in &self.rows {
            writeln!(out, "{}", row.csv_line())?;
        }
        Ok(())
    }
}

impl fmt::Display for ErrorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(f, "α = {}, n = {}, scheme = {}, sweeps = {}", c.alpha, c.n, c.scheme, c.sweeps)?;
        writeln!(f, "{:>10} {:>6} {:>16} {:>16} {:>12}", "ζ", "τ", "exact", "approx", "abs error")?;
        for r in &self.rows {
            writeln!(
                f,
                "{:>10.6} {:>6.3} {:>16.10} {:>16.10} {:>12.4e}",
                r.zeta, r.tau, r.exact, r.approx, r.abs_error
            )?;
        }
        write!(f, "L2 = {:.4e}, L∞ = {:.4e}", self.l2, self.linf)
    }
}

/// Solves once and tabulates the absolute errors at `(ζ, τ)` for each ζ.
pub fn table_abs_errors(
    problem: &KseProblem,
    n: usize,
    scheme: Scheme,
    sweeps: usize,
    tau: f64,
    zetas: &[f64],
) -> Result<ErrorReport> {
    let solution = solve(problem, n, scheme, sweeps)?;
    let points: Vec<_> = zetas.iter().map(|&z| (z, tau)).collect();
    ErrorReport::evaluate(&solution, &points)
}

/// One report per `(n, τ)` over the table ζ points, `n`-major.
pub fn convergence_table(
    problem: &KseProblem,
    n_list: &[usize],
    tau_list: &[f64],
    scheme: Scheme,
    sweeps: usize,
) -> Result<Vec<ErrorReport>> {
    if n_list.is_empty() || tau_list.is_empty() {
        return Err(contract("convergence table needs at least one n and one τ"));
    }
    let zetas = table_zetas();
    let mut out = Vec::with_capacity(n_list.len() * tau_list.len());
    for &n in n_list {
        let solution = solve(problem, n, scheme, sweeps)?;
        for &tau in tau_list {
            let points: Vec<_> = zetas.iter().map(|&z| (z, tau)).collect();
            out.push(ErrorReport::evaluate(&solution, &points)?);
        }
    }
    Ok(out)
}

/// `rows × cols` grid over the closed domain, `ζ` outer and `τ` inner.
pub fn surface_grid(problem: &KseProblem, rows: usize, cols: usize) -> Result<Vec<(f64, f64)>> {
    if rows < 2 || cols < 2 {
        return Err(contract(format!("surface grid must be at least 2×2, got {rows}×{cols}")));
    }
    let dom = problem.domain;
    let mut out = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        let zeta = if i + 1 == rows { dom.b } else { dom.a + dom.width() * i as f64 / (rows - 1) as f64 };
        for j in 0..cols {
            let tau = if j + 1 == cols { dom.t_end } else { dom.t_end * j as f64 / (cols - 1) as f64 };
            out.push((zeta, tau));
        }
    }
    Ok(out)
}

/// Writes the surface of `solution` on a `rows × cols` grid as CSV.
pub fn write_surface<W: Write>(solution: &ApproximateSolution, rows: usize, cols: usize, out: W) -> Result<()> {
    let grid = surface_grid(solution.problem(), rows, cols)?;
    ErrorReport::evaluate(solution, &grid)?.write_csv(out)
}

/// [`write_surface`] into a file.
pub fn emit_surface(solution: &ApproximateSolution, rows: usize, cols: usize, destination: &Path) -> Result<()> {
    let file = std::fs::File::create(destination)?;
    let mut out = std::io::BufWriter::new(file);
    write_surface(solution, rows, cols, &mut out)?;
    out.flush()?;
    Ok(())
}

/// Parses CSV produced by [`ErrorReport::write_csv`].
pub fn read_csv<R: BufRead>(input: R) -> Result<Vec<ErrorRow>> {
    let mut lines = input.lines();
    match lines.next() {
        Some(Ok(h)) if h.trim() == CSV_HEADER => {}
        Some(Err(e)) => return Err(e.into()),
        _ => return Err(Error::Config(format!("missing CSV header `{CSV_HEADER}`"))),
    }
    let mut rows = Vec::new();
    for (k, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let vals: Vec<f64> = line
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Config(format!("CSV line {}: {e}", k + 2)))?;
        let [zeta, tau, exact, approx, abs_error] = vals[..] else {
            return Err(Error::Config(format!("CSV line {} has {} fields", k + 2, vals.len())));
        };
        rows.push(ErrorRow { zeta, tau, exact, approx, abs_error });
    }
    Ok(rows)
}

/// `(n, L∞)` for solutions at several `n` on the same points, solved in parallel.
pub fn linf_by_n(
    problem: &KseProblem,
    n_list: &[usize],
    scheme: Scheme,
    sweeps: usize,
    points: &[(f64, f64)],
) -> Result<Vec<(usize, f64)>> {
    n_list
        .par_iter()
        .map(|&n| {
            let sol = solve(problem, n, scheme, sweeps)?;
            Ok((n, ErrorReport::evaluate(&sol, points)?.linf))
        })
        .collect()
}
