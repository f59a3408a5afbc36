//! Error against n for three fractional orders, comparing the sequential pass
//! with sweeps to a fixed point, and all three collocation schemes.

use rkhs_kse::basis::Scheme;
use rkhs_kse::metrics::table_zetas;
use rkhs_kse::operator::KseProblem;
use rkhs_kse::solver::{error_sequence, interior_grid, FIXED_POINT_SWEEPS};

fn main() -> rkhs_kse::Result<()> {
    let n_list = [6, 12, 24, 48];
    for alpha in [0.5, 0.75, 0.95] {
        let problem = KseProblem::benchmark(alpha)?;
        let mut grid: Vec<_> = table_zetas().into_iter().map(|z| (z, 0.5)).collect();
        grid.extend(interior_grid(&problem, 9, 9));
        println!("α = {alpha}");
        for scheme in [Scheme::Maximin, Scheme::DiagonalGrid, Scheme::Halton] {
            for sweeps in [1, FIXED_POINT_SWEEPS] {
                let seq = error_sequence(&problem, &n_list, scheme, sweeps, &grid)?;
                let cells: Vec<String> = seq.iter().map(|(n, e)| format!("n={n}: {e:.3e}")).collect();
                let mode = if sweeps == 1 { "single pass" } else { "fixed point" };
                println!("  {scheme:>8} {mode:<11} {}", cells.join("  "));
            }
        }
    }
    Ok(())
}
