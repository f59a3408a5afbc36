//! Absolute errors at ζ = i/12, τ = 0.5 for the four fractional orders of the
//! reference runs, with n = 12 and sweeps to a fixed point.

use rkhs_kse::basis::Scheme;
use rkhs_kse::metrics::{table_abs_errors, table_zetas};
use rkhs_kse::operator::KseProblem;
use rkhs_kse::solver::FIXED_POINT_SWEEPS;

fn main() -> rkhs_kse::Result<()> {
    for alpha in [0.5, 0.75, 0.85, 0.95] {
        let problem = KseProblem::benchmark(alpha)?;
        let report = table_abs_errors(&problem, 12, Scheme::default(), FIXED_POINT_SWEEPS, 0.5, &table_zetas())?;
        println!("{report}\n");
    }
    Ok(())
}
