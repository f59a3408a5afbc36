use std::fmt;

use nalgebra::{DMatrix, DVector};

use super::KernelFamily;
use crate::fracalc::quad::gauss_legendre;

const REPRODUCING_TOL: f64 = 1e-7;
const SYMMETRY_TOL: f64 = 1e-10;
const BOUNDARY_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-10;

/// Result of a single kernel check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Largest violation seen, in the units of the check.
    pub worst: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub order: usize,
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order-{} kernel", self.order)?;
        for c in &self.checks {
            writeln!(
                f,
                "  {:<13} {}  worst {:.3e} (tol {:.0e})",
                c.name,
                if c.passed { "pass" } else { "FAIL" },
                c.worst,
                c.tolerance
            )?;
        }
        Ok(())
    }
}

/// Deterministic well-spread points in `(0, 1)`.
fn probe_points(n: usize, offset: f64) -> Vec<f64> {
    const GOLDEN: f64 = 0.618_033_988_749_894_8;
    (1..=n).map(|k| (offset + k as f64 * GOLDEN).fract()).collect()
}

/// Checks the reproducing property, symmetry, the boundary conditions and
/// positive semidefiniteness of a kernel family.
pub fn verify_kernel(family: &KernelFamily) -> VerificationReport {
    let checks = vec![
        check_reproducing(family),
        check_symmetry(family),
        check_boundary(family),
        check_psd(family),
    ];
    VerificationReport { order: family.order(), checks }
}

/// Monomial combinations of degree < 2r satisfying the family's conditions,
/// each as monomial coefficients.
fn admissible_tests(family: &KernelFamily) -> Vec<Vec<f64>> {
    let r = family.order();
    let conds = family.constraints();
    let c = conds.len();
    let top = 2 * r;
    let apply = |coeffs: &[f64], point: f64, d: usize| crate::fracalc::horner_deriv(coeffs, point, d);
    let mut out = Vec::new();
    for k in c..top {
        let mut h = vec![0.0; top];
        h[k] = 1.0;
        if c > 0 {
            // subtract a combination of 1, s, …, s^{c-1} so every condition holds
            let m = DMatrix::from_fn(c, c, |i, j| {
                let mut e = vec![0.0; j + 1];
                e[j] = 1.0;
                apply(&e, conds[i].point, conds[i].derivative)
            });
            let rhs = DVector::from_fn(c, |i, _| apply(&h, conds[i].point, conds[i].derivative));
            let Some(a) = m.lu().solve(&rhs) else { continue };
            for j in 0..c {
                h[j] -= a[j];
            }
        }
        out.push(h);
    }
    out
}

fn check_reproducing(family: &KernelFamily) -> CheckOutcome {
    let r = family.order();
    let mut worst: f64 = 0.0;
    for h in admissible_tests(family) {
        for y in probe_points(10, 0.0) {
            let mut inner = 0.0;
            for i in 0..r {
                inner += crate::fracalc::horner_deriv(&h, 0.0, i) * family.partial(0, i, y, 0.0);
            }
            let integrand = |s: f64| crate::fracalc::horner_deriv(&h, s, r) * family.partial(0, r, y, s);
            let n = (family.polynomial().degree_first().max(family.polynomial().degree_second()) + 2 * r) / 2 + 2;
            inner += gauss_legendre(integrand, 0.0, y, n) + gauss_legendre(integrand, y, 1.0, n);
            let exact = crate::fracalc::horner_deriv(&h, y, 0);
            worst = worst.max((inner - exact).abs());
        }
    }
    CheckOutcome { name: "reproducing", passed: worst <= REPRODUCING_TOL, worst, tolerance: REPRODUCING_TOL }
}

fn check_symmetry(family: &KernelFamily) -> CheckOutcome {
    let xs = probe_points(100, 0.1);
    let ys = probe_points(100, 0.77);
    let worst = xs
        .iter()
        .zip(&ys)
        .map(|(&x, &y)| (family.value(x, y) - family.value(y, x)).abs())
        .fold(0.0, f64::max);
    CheckOutcome { name: "symmetry", passed: worst <= SYMMETRY_TOL, worst, tolerance: SYMMETRY_TOL }
}

fn check_boundary(family: &KernelFamily) -> CheckOutcome {
    let mut worst: f64 = 0.0;
    for y in probe_points(10, 0.3).into_iter().chain([0.0, 1.0]) {
        for c in family.constraints() {
            worst = worst.max(family.partial(0, c.derivative, y, c.point).abs());
        }
    }
    CheckOutcome { name: "boundary", passed: worst <= BOUNDARY_TOL, worst, tolerance: BOUNDARY_TOL }
}

fn check_psd(family: &KernelFamily) -> CheckOutcome {
    let pts = probe_points(8, 0.45);
    let gram = DMatrix::from_fn(8, 8, |i, j| family.value(pts[i], pts[j]));
    let smallest = gram.symmetric_eigenvalues().min();
    let worst = (-smallest).max(0.0);
    CheckOutcome { name: "psd", passed: smallest >= -PSD_TOL, worst, tolerance: PSD_TOL }
}
