//! A forced problem with a known polynomial solution
//! `w = 0.1 - 0.2ζ + 0.1 τ² ζ³` and `γ = μ = 0, β = -1`.

use rkhs_kse::basis::Scheme;
use rkhs_kse::fracalc::FractionalOrder;
use rkhs_kse::operator::{KseParams, KseProblem, ReferenceSolution, SeparableSolution, SpaceTimeDomain};
use rkhs_kse::solver::{error_sequence, interior_grid, FIXED_POINT_SWEEPS};

fn main() -> rkhs_kse::Result<()> {
    for alpha in [0.5, 0.9] {
        let truth = SeparableSolution {
            base: vec![0.1, -0.2],
            profile: vec![0.0, 0.0, 0.0, 0.1],
            exponent: 2.0,
            alpha: FractionalOrder::new(alpha)?,
        };
        let params = KseParams { beta: -1.0, gamma: 0.0, mu: 0.0, nu: 0.75 };
        let problem = KseProblem::manufactured(params, SpaceTimeDomain::unit(), ReferenceSolution::Separable(truth));
        let grid = interior_grid(&problem, 9, 9);
        let seq = error_sequence(&problem, &[4, 8, 16, 32], Scheme::default(), FIXED_POINT_SWEEPS, &grid)?;
        println!("α = {alpha}");
        for (n, e) in seq {
            println!("  n = {n:>2}: max error on 9×9 grid = {e:.3e}");
        }
    }
    Ok(())
}
