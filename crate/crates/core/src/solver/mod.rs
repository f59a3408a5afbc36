//! Picard iteration on the orthonormalized basis.
//!
//! With `Ψᵢ = Σₖ ξᵢₖ ψₖ` the homogenized approximation is `vₙ = Σ B̃ᵢ Ψᵢ`. The first
//! sweep walks the collocation points in order and sets
//!
//! ```text
//! B̃ᵢ = Σ_{k≤i} ξᵢₖ ℳ(v_{k-1})(ζₖ, τₖ),    v_k = Σ_{i≤k} B̃ᵢ Ψᵢ,    v₀ = 0.
//! ```
//!
//! Further sweeps recompute every `B̃ = ξ ℳ(vₙ)` from the previous full iterate.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::basis::{CollocationBasis, Scheme};
use crate::error::{contract, Error, Result};
use crate::operator::{lifting_spatial, residual, Field, KseProblem};

/// Sweep budget used when iterating to a fixed point.
pub const FIXED_POINT_SWEEPS: usize = 200;
/// Sweeps stop once `‖ΔB̃‖∞` drops to this value.
pub const SWEEP_TOL: f64 = 1e-10;
/// Largest accepted growth of `‖B̃‖∞` from one sweep to the next.
pub const DIVERGENCE_GROWTH: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    /// `‖B̃‖∞` after the sweep.
    pub norm: f64,
    /// `‖B̃ - B̃_prev‖∞`; for the first sweep this is the distance from zero.
    pub change: f64,
}

#[derive(Debug, Clone)]
pub struct ApproximateSolution {
    basis: CollocationBasis,
    /// `B̃ᵢ`, coefficients over `Ψᵢ`.
    coefficients: Vec<f64>,
    /// `cⱼ = Σᵢ B̃ᵢ ξᵢⱼ`, coefficients over `ψⱼ`.
    psi_coefficients: Vec<f64>,
    history: Vec<SweepRecord>,
}

/// Builds the basis and runs up to `sweeps` Picard sweeps (the first one being
/// the sequential pass).
pub fn solve(problem: &KseProblem, n: usize, scheme: Scheme, sweeps: usize) -> Result<ApproximateSolution> {
    if n == 0 {
        return Err(contract("solve needs n ≥ 1"));
    }
    let basis = CollocationBasis::new(problem, n, scheme)?;
    solve_on(basis, sweeps)
}

/// Same as [`solve`] on an already assembled basis.
pub fn solve_on(basis: CollocationBasis, sweeps: usize) -> Result<ApproximateSolution> {
    if sweeps == 0 {
        return Err(contract("at least one sweep is required"));
    }
    let n = basis.len();
    let xi = basis.xi().clone();
    // Ψᵢ and its spatial derivatives at the collocation points, (point, i)
    let orth: [DMatrix<f64>; 4] = std::array::from_fn(|d| basis.derivatives_at_points(d) * xi.transpose());
    let data = basis.point_data();

    let mut b = DVector::<f64>::zeros(n);
    let mut m = DVector::<f64>::zeros(n);
    for k in 0..n {
        let v: [f64; 4] = std::array::from_fn(|d| (0..k).map(|i| b[i] * orth[d][(k, i)]).sum());
        m[k] = data[k].rhs_m(&v);
        b[k] = (0..=k).map(|l| xi[(k, l)] * m[l]).sum();
    }
    let mut history = vec![SweepRecord { norm: b.amax(), change: b.amax() }];

    for sweep in 2..=sweeps {
        let vals: [DVector<f64>; 4] = std::array::from_fn(|d| &orth[d] * &b);
        let m = DVector::from_iterator(
            n,
            (0..n).map(|k| data[k].rhs_m(&[vals[0][k], vals[1][k], vals[2][k], vals[3][k]])),
        );
        let next = &xi * m;
        let norm = next.amax();
        let prev = b.amax();
        if !norm.is_finite() || norm > DIVERGENCE_GROWTH * prev.max(1e-12) {
            return Err(Error::Divergence { sweep, growth: norm / prev });
        }
        let change = (&next - &b).amax();
        b = next;
        history.push(SweepRecord { norm, change });
        if change <= SWEEP_TOL {
            break;
        }
    }

    let c = xi.transpose() * &b;
    Ok(ApproximateSolution {
        psi_coefficients: c.iter().copied().collect(),
        coefficients: b.iter().copied().collect(),
        basis,
        history,
    })
}

impl ApproximateSolution {
    pub fn basis(&self) -> &CollocationBasis {
        &self.basis
    }

    pub fn problem(&self) -> &KseProblem {
        self.basis.problem()
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `B̃₁..B̃ₙ`.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// The same expansion written over the non-orthogonal `ψⱼ`.
    pub fn psi_coefficients(&self) -> &[f64] {
        &self.psi_coefficients
    }

    pub fn history(&self) -> &[SweepRecord] {
        &self.history
    }

    pub fn sweeps_run(&self) -> usize {
        self.history.len()
    }

    /// Whether the last sweep moved the coefficients by at most [`SWEEP_TOL`].
    pub fn converged(&self) -> bool {
        self.history.len() > 1 && self.history.last().is_some_and(|r| r.change <= SWEEP_TOL)
    }

    /// `vₙ, ∂vₙ, ∂²vₙ, ∂³vₙ` at `(ζ, τ)`.
    pub fn homogeneous(&self, zeta: f64, tau: f64) -> Result<[f64; 4]> {
        self.basis.combine_spatial(&self.psi_coefficients, zeta, tau)
    }

    /// `wₙ = vₙ + f` and its first three spatial derivatives.
    pub fn spatial(&self, zeta: f64, tau: f64) -> Result<[f64; 4]> {
        let v = self.homogeneous(zeta, tau)?;
        let f = lifting_spatial(self.problem(), zeta, tau)?;
        Ok(std::array::from_fn(|d| v[d] + f[d]))
    }

    /// `∂ᵈ_ζ wₙ(ζ, τ)` for `d ≤ 3`.
    pub fn evaluate(&self, zeta: f64, tau: f64, d: usize) -> Result<f64> {
        if d > 3 {
            return Err(contract(format!("spatial derivatives are available up to order 3, got {d}")));
        }
        Ok(self.spatial(zeta, tau)?[d])
    }

    /// `wₙ` at many points, in parallel.
    pub fn evaluate_many(&self, points: &[(f64, f64)]) -> Result<Vec<f64>> {
        points.par_iter().map(|&(z, t)| self.evaluate(z, t, 0)).collect()
    }

    /// `(L vₙ - ℳ(vₙ))` at every collocation point.
    pub fn collocation_residuals(&self) -> Vec<f64> {
        let c = DVector::from_column_slice(&self.psi_coefficients);
        let lv = self.basis.gram() * &c;
        let vals: [DVector<f64>; 4] = std::array::from_fn(|d| self.basis.derivatives_at_points(d) * &c);
        self.basis
            .point_data()
            .iter()
            .enumerate()
            .map(|(k, p)| lv[k] - p.rhs_m(&[vals[0][k], vals[1][k], vals[2][k], vals[3][k]]))
            .collect()
    }

    /// Residual of the full equation on `wₙ` at `(ζ, τ)`.
    pub fn residual(&self, zeta: f64, tau: f64) -> Result<f64> {
        let problem = self.problem();
        residual(problem, self, zeta, tau, problem.caputo_tol)
    }
}

impl Field for ApproximateSolution {
    fn spatial(&self, zeta: f64, tau: f64) -> Result<[f64; 4]> {
        ApproximateSolution::spatial(self, zeta, tau)
    }

    fn caputo(&self, zeta: f64, tau: f64, tol: f64) -> Result<f64> {
        let v = self.basis.combine_caputo(&self.psi_coefficients, zeta, tau)?;
        Ok(v + crate::operator::caputo_f(self.problem(), zeta, tau, tol)?)
    }
}

/// Max deviation of `wₙ` from the reference solution over `grid`.
pub fn max_deviation(solution: &ApproximateSolution, grid: &[(f64, f64)]) -> Result<f64> {
    let approx = solution.evaluate_many(grid)?;
    let problem = solution.problem();
    Ok(grid
        .iter()
        .zip(approx)
        .map(|(&(z, t), w)| (problem.exact(z, t) - w).abs())
        .fold(0.0, f64::max))
}

/// Solves at each `n` and reports `(n, L∞)` against the reference on `grid`.
pub fn error_sequence(
    problem: &KseProblem,
    n_list: &[usize],
    scheme: Scheme,
    sweeps: usize,
    grid: &[(f64, f64)],
) -> Result<Vec<(usize, f64)>> {
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(contract("n_list must be strictly increasing"));
    }
    if grid.is_empty() {
        return Err(contract("validation grid is empty"));
    }
    n_list
        .iter()
        .map(|&n| Ok((n, max_deviation(&solve(problem, n, scheme, sweeps)?, grid)?)))
        .collect()
}

/// `rows × cols` interior grid `((i+1)/(rows+1), (j+1)/(cols+1))` mapped into the domain.
pub fn interior_grid(problem: &KseProblem, rows: usize, cols: usize) -> Vec<(f64, f64)> {
    let dom = problem.domain;
    let mut out = Vec::with_capacity(rows * cols);
    for i in 1..=rows {
        for j in 1..=cols {
            let x = i as f64 / (rows + 1) as f64;
            let s = j as f64 / (cols + 1) as f64;
            out.push((dom.a + dom.width() * x, dom.t_end * s));
        }
    }
    out
}
