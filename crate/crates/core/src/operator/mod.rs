//! The time-fractional Kudryashov–Sinelshchikov problem
//!
//! ```text
//! ᶜDᵅ_τ w + γ w w_ζ + w_ζζζ - (1+β) w_ζ w_ζζ - w w_ζζζ - ν w_ζζ - μ w w_ζζ - μ w_ζ² = S
//! ```
//!
//! on `[a, b] × [0, T]`, with initial and boundary data taken from a
//! [`ReferenceSolution`]. `S` is zero for the physical problem and equals the
//! reference's own residual for manufactured problems.
//!
//! Writing `w = v + f` with the lifting `f` of [`lifting_f`] gives homogeneous
//! data for `v` and splits the equation into `L v = ℳ(v)`, where
//!
//! ```text
//! L v  = ᶜDᵅ v + p₀ v + p₁ v_ζ + p₂ v_ζζ + p₃ v_ζζζ
//! p₀ = γ f_ζ - f_ζζζ - μ f_ζζ        p₁ = γ f - (1+β) f_ζζ - 2μ f_ζ
//! p₂ = -(1+β) f_ζ - ν - μ f          p₃ = 1 - f
//! ℳ(v) = S - R(f) - [γ v v_ζ - (1+β) v_ζ v_ζζ - v v_ζζζ - μ v v_ζζ - μ v_ζ²]
//! ```
//!
//! and `R(f)` is the left-hand side above evaluated on `f`.

mod lifting;
mod reference;

pub use lifting::{caputo_f, lifting_f, lifting_spatial, LiftingTrace};
pub use reference::{ReferenceSolution, SeparableSolution, TravelingWave};

use crate::error::{domain, Result};
use crate::fracalc::FractionalOrder;

/// Default absolute tolerance of every adaptive Caputo evaluation.
pub const CAPUTO_TOL: f64 = 1e-9;

/// Coefficients `β, γ, μ, ν` of the equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KseParams {
    pub beta: f64,
    pub gamma: f64,
    pub mu: f64,
    pub nu: f64,
}

impl KseParams {
    /// `β = -4, γ = 0.1, ν = 0.75, μ = -16/3`.
    pub fn benchmark() -> Self {
        Self { beta: -4.0, gamma: 0.1, mu: -16.0 / 3.0, nu: 0.75 }
    }
}

/// `[a, b] × [0, T]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceTimeDomain {
    pub a: f64,
    pub b: f64,
    pub t_end: f64,
}

impl SpaceTimeDomain {
    pub fn unit() -> Self {
        Self { a: 0.0, b: 1.0, t_end: 1.0 }
    }

    pub fn new(a: f64, b: f64, t_end: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(domain(format!("spatial interval [{a}, {b}] is empty or not finite")));
        }
        if !(t_end > 0.0 && t_end.is_finite()) {
            return Err(domain(format!("time horizon must be positive, got {t_end}")));
        }
        Ok(Self { a, b, t_end })
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn contains(&self, zeta: f64, tau: f64) -> bool {
        zeta >= self.a && zeta <= self.b && tau >= 0.0 && tau <= self.t_end
    }

    pub(crate) fn check(&self, zeta: f64, tau: f64) -> Result<()> {
        if self.contains(zeta, tau) {
            Ok(())
        } else {
            Err(domain(format!(
                "({zeta}, {tau}) outside [{}, {}] × [0, {}]",
                self.a, self.b, self.t_end
            )))
        }
    }
}

/// Right-hand side added to the equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Forcing {
    None,
    /// The residual of the reference solution, which makes it exact.
    ReferenceResidual,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KseProblem {
    pub alpha: FractionalOrder,
    pub params: KseParams,
    pub domain: SpaceTimeDomain,
    pub reference: ReferenceSolution,
    pub forcing: Forcing,
    pub caputo_tol: f64,
}

impl KseProblem {
    /// Problem whose data come from the kink of [`TravelingWave::from_params`].
    pub fn new(alpha: FractionalOrder, params: KseParams, domain: SpaceTimeDomain) -> Result<Self> {
        let wave = TravelingWave::from_params(&params, alpha)?;
        Ok(Self {
            alpha,
            params,
            domain,
            reference: ReferenceSolution::TravelingWave(wave),
            forcing: Forcing::None,
            caputo_tol: CAPUTO_TOL,
        })
    }

    /// Benchmark parameters on the unit square.
    pub fn benchmark(alpha: f64) -> Result<Self> {
        Self::new(FractionalOrder::new(alpha)?, KseParams::benchmark(), SpaceTimeDomain::unit())
    }

    /// Problem with an arbitrary reference solution made exact by forcing.
    pub fn manufactured(
        params: KseParams,
        domain: SpaceTimeDomain,
        reference: ReferenceSolution,
    ) -> Self {
        Self {
            alpha: reference.alpha(),
            params,
            domain,
            reference,
            forcing: Forcing::ReferenceResidual,
            caputo_tol: CAPUTO_TOL,
        }
    }

    pub fn with_forcing(mut self, forcing: Forcing) -> Self {
        self.forcing = forcing;
        self
    }

    /// Reference solution `w(ζ, τ)`.
    pub fn exact(&self, zeta: f64, tau: f64) -> f64 {
        self.reference.value(zeta, tau)
    }

    /// Right-hand side `S(ζ, τ)`.
    pub fn source(&self, zeta: f64, tau: f64) -> Result<f64> {
        match self.forcing {
            Forcing::None => Ok(0.0),
            Forcing::ReferenceResidual => {
                let w = self.reference.spatial(zeta, tau);
                let dw = self.reference.caputo(zeta, tau, 0, self.caputo_tol)?;
                Ok(residual_terms(&self.params, dw, &w))
            }
        }
    }
}

/// Left-hand side of the equation from `ᶜDᵅ w` and `w, w_ζ, w_ζζ, w_ζζζ`.
pub fn residual_terms(params: &KseParams, caputo: f64, w: &[f64; 4]) -> f64 {
    let KseParams { beta, gamma, mu, nu } = *params;
    let [w0, w1, w2, w3] = *w;
    caputo + gamma * w0 * w1 + w3 - (1.0 + beta) * w1 * w2 - w0 * w3 - nu * w2 - mu * w0 * w2
        - mu * w1 * w1
}

/// Quadratic part `γ v v_ζ - (1+β) v_ζ v_ζζ - v v_ζζζ - μ v v_ζζ - μ v_ζ²`.
pub fn quadratic_terms(params: &KseParams, v: &[f64; 4]) -> f64 {
    let KseParams { beta, gamma, mu, .. } = *params;
    let [v0, v1, v2, v3] = *v;
    gamma * v0 * v1 - (1.0 + beta) * v1 * v2 - v0 * v3 - mu * v0 * v2 - mu * v1 * v1
}

/// Values of `v, v_ζ, v_ζζ, v_ζζζ` and `ᶜDᵅ_τ v` at one point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Bundle {
    pub v: [f64; 4],
    pub caputo: f64,
}

impl Bundle {
    pub fn scaled_sum(a: f64, x: &Bundle, b: f64, y: &Bundle) -> Bundle {
        Bundle {
            v: std::array::from_fn(|d| a * x.v[d] + b * y.v[d]),
            caputo: a * x.caputo + b * y.caputo,
        }
    }
}

/// Everything about the lifting and forcing needed to apply `L` and `ℳ` at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointData {
    pub zeta: f64,
    pub tau: f64,
    /// `f, f_ζ, f_ζζ, f_ζζζ`.
    pub f: [f64; 4],
    pub caputo_f: f64,
    pub source: f64,
    /// `p₀..p₃` of `L`.
    pub coeffs: [f64; 4],
    params: KseParams,
}

impl PointData {
    pub fn new(problem: &KseProblem, zeta: f64, tau: f64) -> Result<Self> {
        problem.domain.check(zeta, tau)?;
        let trace = LiftingTrace::new(problem, tau)?;
        Self::with_trace(problem, &trace, zeta)
    }

    /// Point data at `(ζ, trace.tau)` reusing the time-dependent part of the lifting.
    pub fn with_trace(problem: &KseProblem, trace: &LiftingTrace, zeta: f64) -> Result<Self> {
        let tau = trace.tau();
        problem.domain.check(zeta, tau)?;
        let f = trace.spatial(problem, zeta);
        let caputo_f = trace.caputo(problem, zeta);
        let source = problem.source(zeta, tau)?;
        let KseParams { beta, gamma, mu, nu } = problem.params;
        let coeffs = [
            gamma * f[1] - f[3] - mu * f[2],
            gamma * f[0] - (1.0 + beta) * f[2] - 2.0 * mu * f[1],
            -(1.0 + beta) * f[1] - nu - mu * f[0],
            1.0 - f[0],
        ];
        Ok(Self { zeta, tau, f, caputo_f, source, coeffs, params: problem.params })
    }

    /// `(L v)` at this point.
    pub fn apply_l(&self, bundle: &Bundle) -> f64 {
        bundle.caputo + (0..4).map(|d| self.coeffs[d] * bundle.v[d]).sum::<f64>()
    }

    /// `ℳ(v)` at this point.
    pub fn rhs_m(&self, v: &[f64; 4]) -> f64 {
        self.source - self.lifting_residual() - quadratic_terms(&self.params, v)
    }

    /// `R(f)`: the equation's left-hand side on the lifting alone.
    pub fn lifting_residual(&self) -> f64 {
        residual_terms(&self.params, self.caputo_f, &self.f)
    }
}

/// `(L v)(ζ, τ)` for the given bundle.
pub fn apply_l(problem: &KseProblem, bundle: &Bundle, zeta: f64, tau: f64) -> Result<f64> {
    Ok(PointData::new(problem, zeta, tau)?.apply_l(bundle))
}

/// `ℳ(v)(ζ, τ)` for the given spatial derivatives of `v`.
pub fn rhs_m(problem: &KseProblem, v: &[f64; 4], zeta: f64, tau: f64) -> Result<f64> {
    Ok(PointData::new(problem, zeta, tau)?.rhs_m(v))
}

/// A function of `(ζ, τ)` with spatial derivatives and a Caputo derivative in `τ`.
pub trait Field {
    /// `u, u_ζ, u_ζζ, u_ζζζ`.
    fn spatial(&self, zeta: f64, tau: f64) -> Result<[f64; 4]>;
    fn caputo(&self, zeta: f64, tau: f64, tol: f64) -> Result<f64>;
}

impl Field for ReferenceSolution {
    fn spatial(&self, zeta: f64, tau: f64) -> Result<[f64; 4]> {
        Ok(ReferenceSolution::spatial(self, zeta, tau))
    }

    fn caputo(&self, zeta: f64, tau: f64, tol: f64) -> Result<f64> {
        ReferenceSolution::caputo(self, zeta, tau, 0, tol)
    }
}

/// Left-hand side of the equation on `w` at `(ζ, τ)`, minus the problem's forcing.
pub fn residual(problem: &KseProblem, w: &dyn Field, zeta: f64, tau: f64, tol: f64) -> Result<f64> {
    problem.domain.check(zeta, tau)?;
    let spatial = w.spatial(zeta, tau)?;
    let caputo = w.caputo(zeta, tau, tol)?;
    Ok(residual_terms(&problem.params, caputo, &spatial) - problem.source(zeta, tau)?)
}
