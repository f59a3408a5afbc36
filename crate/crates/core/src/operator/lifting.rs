//! Lifting of the initial and boundary data.
//!
//! With `λ = b - a`, `X = (ζ - a)/λ` and `Δu(τ) = u(τ) - u(0)`:
//!
//! ```text
//! f(ζ, τ) = w(ζ, 0) + (1-X)² Δg₁(τ) + X² Δg₂(τ) + λ X (1-X) [Δw_ζ(a, τ) + 2 Δg₁(τ)/λ]
//! ```
//!
//! where `g₁ = w(a, ·)` and `g₂ = w(b, ·)`. It reproduces `w` on `τ = 0`, on both
//! spatial boundaries, and `w_ζ` on `ζ = a`.

use crate::error::{contract, Result};

use super::KseProblem;

/// The time-dependent part of the lifting at a fixed `τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiftingTrace {
    tau: f64,
    /// `Δg₁, Δg₂, Δw_ζ(a, ·)`.
    increments: [f64; 3],
    /// Caputo derivatives of the same three functions.
    caputo: [f64; 3],
}

impl LiftingTrace {
    pub fn new(problem: &KseProblem, tau: f64) -> Result<Self> {
        let dom = &problem.domain;
        dom.check(dom.a, tau)?;
        let w = &problem.reference;
        let tol = problem.caputo_tol;
        let increments = increments(problem, tau)?;
        let caputo = [
            w.caputo(dom.a, tau, 0, tol)?,
            w.caputo(dom.b, tau, 0, tol)?,
            w.caputo(dom.a, tau, 1, tol)?,
        ];
        Ok(Self { tau, increments, caputo })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Blending functions and their first three derivatives in `ζ`, one row per function.
    fn blends(problem: &KseProblem, zeta: f64) -> [[f64; 4]; 3] {
        let lam = problem.domain.width();
        let x = (zeta - problem.domain.a) / lam;
        [
            [(1.0 - x) * (1.0 - x), -2.0 * (1.0 - x) / lam, 2.0 / (lam * lam), 0.0],
            [x * x, 2.0 * x / lam, 2.0 / (lam * lam), 0.0],
            [lam * x * (1.0 - x), 1.0 - 2.0 * x, -2.0 / lam, 0.0],
        ]
    }

    fn combine(problem: &KseProblem, zeta: f64, d: usize, parts: &[f64; 3]) -> f64 {
        let lam = problem.domain.width();
        let bl = Self::blends(problem, zeta);
        bl[0][d] * parts[0] + bl[1][d] * parts[1] + bl[2][d] * (parts[2] + 2.0 * parts[0] / lam)
    }

    /// `f, f_ζ, f_ζζ, f_ζζζ` at `(ζ, τ)`.
    pub fn spatial(&self, problem: &KseProblem, zeta: f64) -> [f64; 4] {
        let w0 = problem.reference.spatial(zeta, 0.0);
        std::array::from_fn(|d| w0[d] + Self::combine(problem, zeta, d, &self.increments))
    }

    /// `ᶜDᵅ_τ f` at `(ζ, τ)`.
    pub fn caputo(&self, problem: &KseProblem, zeta: f64) -> f64 {
        Self::combine(problem, zeta, 0, &self.caputo)
    }
}

fn increments(problem: &KseProblem, tau: f64) -> Result<[f64; 3]> {
    let dom = &problem.domain;
    let w = &problem.reference;
    Ok([
        w.value(dom.a, tau) - w.value(dom.a, 0.0),
        w.value(dom.b, tau) - w.value(dom.b, 0.0),
        w.derivative(dom.a, tau, 1)? - w.derivative(dom.a, 0.0, 1)?,
    ])
}

/// `f, f_ζ, f_ζζ, f_ζζζ` at `(ζ, τ)`, without any Caputo evaluation.
pub fn lifting_spatial(problem: &KseProblem, zeta: f64, tau: f64) -> Result<[f64; 4]> {
    problem.domain.check(zeta, tau)?;
    let inc = increments(problem, tau)?;
    let w0 = problem.reference.spatial(zeta, 0.0);
    Ok(std::array::from_fn(|d| w0[d] + LiftingTrace::combine(problem, zeta, d, &inc)))
}

/// `∂ᵈ_ζ f(ζ, τ)` for `d ≤ 3`.
pub fn lifting_f(problem: &KseProblem, zeta: f64, tau: f64, d: usize) -> Result<f64> {
    if d > 3 {
        return Err(contract(format!("lifting derivatives are available up to order 3, got {d}")));
    }
    Ok(lifting_spatial(problem, zeta, tau)?[d])
}

/// `ᶜDᵅ_τ f(ζ, τ)` with every Caputo evaluation accurate to `tol`.
pub fn caputo_f(problem: &KseProblem, zeta: f64, tau: f64, tol: f64) -> Result<f64> {
    problem.domain.check(zeta, tau)?;
    let mut local = problem.clone();
    local.caputo_tol = tol;
    Ok(LiftingTrace::new(&local, tau)?.caputo(&local, zeta))
}
