//! Quick internal consistency checks, run by `kse selftest`.

use std::fmt;

use crate::basis::{orthonormality_defect, CollocationBasis, Scheme};
use crate::error::Result;
use crate::fracalc::{caputo_monomial, caputo_numeric, gamma_fn, FractionalOrder};
use crate::kernels::{verify_kernel, KernelFamily};
use crate::operator::{residual_terms, Bundle, KseProblem, PointData};

#[derive(Debug, Clone, PartialEq)]
pub struct SelfCheck {
    pub name: String,
    pub worst: f64,
    pub tolerance: f64,
}

impl SelfCheck {
    pub fn passed(&self) -> bool {
        self.worst <= self.tolerance
    }
}

impl fmt::Display for SelfCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed() { "ok  " } else { "FAIL" };
        write!(f, "{tag} {:<28} worst {:.3e} (tol {:.0e})", self.name, self.worst, self.tolerance)
    }
}

/// Runs every check; an `Err` means a check could not be carried out at all.
pub fn run() -> Result<Vec<SelfCheck>> {
    let mut out = Vec::new();
    for family in [KernelFamily::order1(), KernelFamily::order2(), KernelFamily::order4()] {
        for c in verify_kernel(family).checks {
            out.push(SelfCheck {
                name: format!("kernel order {} {}", family.order(), c.name),
                worst: c.worst,
                tolerance: c.tolerance,
            });
        }
    }
    out.push(caputo_check()?);
    out.push(orthonormality_check()?);
    out.push(recombination_check()?);
    Ok(out)
}

fn caputo_check() -> Result<SelfCheck> {
    let mut worst: f64 = 0.0;
    for a in [0.25, 0.5, 0.9] {
        let alpha = FractionalOrder::new(a)?;
        for k in 1..=4u32 {
            let exact = caputo_monomial(k, alpha, 0.7)?;
            let numeric = caputo_numeric(|s| k as f64 * s.powi(k as i32 - 1), alpha, 0.7, 1e-12)?;
            worst = worst.max((exact - numeric).abs());
        }
    }
    Ok(SelfCheck { name: "caputo monomials".into(), worst, tolerance: 1e-8 })
}

fn orthonormality_check() -> Result<SelfCheck> {
    let basis = CollocationBasis::new(&KseProblem::benchmark(0.5)?, 24, Scheme::default())?;
    Ok(SelfCheck {
        name: "orthonormality n=24".into(),
        worst: orthonormality_defect(basis.xi(), basis.gram()),
        tolerance: 1e-8,
    })
}

fn recombination_check() -> Result<SelfCheck> {
    let problem = KseProblem::benchmark(0.5)?;
    let a = problem.alpha.value();
    let mut worst: f64 = 0.0;
    for k in 1..=10 {
        let zeta = (k as f64 * 0.618_033_988_749_895).fract();
        let tau = (k as f64 * 0.754_877_666_246_693).fract();
        // v = τ² ζ²(1 - ζ) (2 + ζ)
        let p = [0.0, 0.0, 2.0, -1.0, -1.0];
        let v: [f64; 4] = std::array::from_fn(|d| tau * tau * crate::fracalc::horner_deriv(&p, zeta, d));
        let caputo_v = 2.0 / gamma_fn(3.0 - a)? * tau.powf(2.0 - a) * crate::fracalc::horner_deriv(&p, zeta, 0);
        let pd = PointData::new(&problem, zeta, tau)?;
        let split = pd.apply_l(&Bundle { v, caputo: caputo_v }) - pd.rhs_m(&v);
        let w: [f64; 4] = std::array::from_fn(|d| v[d] + pd.f[d]);
        let full = residual_terms(&problem.params, caputo_v + pd.caputo_f, &w) - pd.source;
        worst = worst.max((split - full).abs());
    }
    Ok(SelfCheck { name: "operator recombination".into(), worst, tolerance: 1e-9 })
}
