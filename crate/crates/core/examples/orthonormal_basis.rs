//! Builds the collocation basis, prints the Gram matrix conditioning and
//! compares the Cholesky orthonormalization with the row recursion.

use rkhs_kse::basis::{gram_schmidt_recursive, orthonormality_defect, CollocationBasis, Scheme};
use rkhs_kse::operator::KseProblem;

fn main() -> rkhs_kse::Result<()> {
    let problem = KseProblem::benchmark(0.5)?;
    println!("{:>4} {:>9} {:>12} {:>12} {:>12}", "n", "scheme", "cond(G)", "‖ξGξᵀ-I‖", "recursion");
    for n in [4, 8, 16, 24, 48] {
        for scheme in [Scheme::Maximin, Scheme::Halton] {
            let basis = CollocationBasis::new(&problem, n, scheme)?;
            let eig = basis.gram().clone().symmetric_eigen().eigenvalues;
            let cond = eig.max() / eig.min();
            let defect = orthonormality_defect(basis.xi(), basis.gram());
            let rec = gram_schmidt_recursive(basis.gram())?;
            let gap = (&rec - basis.xi()).amax();
            println!("{n:>4} {scheme:>9} {cond:>12.3e} {defect:>12.3e} {gap:>12.3e}");
        }
    }
    Ok(())
}
