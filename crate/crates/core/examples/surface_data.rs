//! Writes the full surface and the τ = 0.5 slice as CSV for plotting.
//!
//! Usage: `cargo run --example surface_data -- [output directory]`

use std::path::PathBuf;

use rkhs_kse::basis::Scheme;
use rkhs_kse::metrics::{emit_surface, table_zetas, ErrorReport};
use rkhs_kse::operator::KseProblem;
use rkhs_kse::solver::{solve, FIXED_POINT_SWEEPS};

fn main() -> rkhs_kse::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&dir)?;
    for alpha in [0.5, 0.75, 0.85, 0.95] {
        let problem = KseProblem::benchmark(alpha)?;
        let solution = solve(&problem, 12, Scheme::default(), FIXED_POINT_SWEEPS)?;
        let surface = dir.join(format!("surface_alpha_{alpha}.csv"));
        emit_surface(&solution, 21, 21, &surface)?;

        let slice: Vec<_> = table_zetas().into_iter().map(|z| (z, 0.5)).collect();
        let report = ErrorReport::evaluate(&solution, &slice)?;
        let path = dir.join(format!("slice_alpha_{alpha}.csv"));
        report.write_csv(std::fs::File::create(&path)?)?;
        println!("α = {alpha}: {} and {} (slice L∞ = {:.3e})", surface.display(), path.display(), report.linf);
    }
    Ok(())
}
