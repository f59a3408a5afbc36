//! Caputo fractional differentiation of order `α ∈ (0, 1]`.
//!
//! The Caputo derivative used throughout is
//!
//! ```text
//! ᶜDᵅ g(t) = 1/Γ(1-α) ∫₀ᵗ g'(s) (t-s)^(-α) ds,    0 < α < 1,
//! ᶜD¹ g(t) = g'(t).
//! ```
//!
//! Piecewise polynomials are handled exactly through incomplete beta
//! functions; everything else goes through adaptive Gauss–Jacobi quadrature.

mod poly;
pub(crate) mod quad;
mod special;

use std::f64::consts::PI;

pub use poly::PiecewisePolynomial;
pub(crate) use poly::{falling_factorial, horner_deriv, taylor_shift};
pub use special::{beta_fn, gamma_fn, incomplete_beta};
pub(crate) use special::{gamma_unchecked, incomplete_beta_unchecked};

use crate::error::{domain, Error, Result};

/// Integrand evaluations allowed before an adaptive Caputo quadrature gives up.
pub const NODE_BUDGET: usize = 400_000;

/// Order of a Caputo derivative, `0 < α ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha <= 1.0 {
            Ok(Self(alpha))
        } else {
            Err(domain(format!("fractional order must lie in (0, 1], got {alpha}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_classical(self) -> bool {
        self.0 == 1.0
    }
}

impl TryFrom<f64> for FractionalOrder {
    type Error = Error;

    fn try_from(alpha: f64) -> Result<Self> {
        Self::new(alpha)
    }
}

/// Caputo derivative of `tᵏ` evaluated at `t ≥ 0`.
pub fn caputo_monomial(k: u32, alpha: FractionalOrder, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(domain(format!("Caputo derivative needs t ≥ 0, got {t}")));
    }
    if k == 0 {
        return Ok(0.0);
    }
    let kf = k as f64;
    if alpha.is_classical() {
        return Ok(kf * t.powi(k as i32 - 1));
    }
    let a = alpha.value();
    Ok(gamma_unchecked(kf + 1.0) / gamma_unchecked(kf + 1.0 - a) * t.powf(kf - a))
}

/// Exact Caputo derivative of a continuous piecewise polynomial.
///
/// The base point of the derivative is `0`, which must lie inside the domain of `p`.
pub fn caputo_piecewise(p: &PiecewisePolynomial, alpha: FractionalOrder, t: f64) -> Result<f64> {
    let (lo, hi) = p.domain();
    if !(t >= lo && t <= hi) || lo > 0.0 || t < 0.0 {
        return Err(domain(format!(
            "Caputo evaluation point {t} must lie in [0, {hi}] within the domain [{lo}, {hi}]"
        )));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let bps = p.breakpoints();
    if alpha.is_classical() {
        // derivative from the left: the piece whose closed interval ends at or beyond t
        let idx = bps[1..].iter().position(|&b| t <= b).unwrap_or(bps.len() - 2);
        return Ok(horner_deriv(&p.pieces()[idx], t - bps[idx], 1));
    }
    let a = alpha.value();
    let b = 1.0 - a;
    let gamma_b = gamma_unchecked(b);
    let mut total = 0.0;
    for (k, coeffs) in p.pieces().iter().enumerate() {
        let (l, r) = (bps[k], bps[k + 1]);
        let u0 = l.max(0.0);
        let u1 = r.min(t);
        if u1 <= u0 {
            continue;
        }
        let derivative = taylor_shift(&poly::differentiate(coeffs), u0 - l);
        let span = t - u0;
        let ratio = ((u1 - u0) / span).min(1.0);
        for (j, &c) in derivative.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let jf = j as f64;
            let weight = if u1 == t {
                // complete beta: j! Γ(1-α) / Γ(j+2-α), with Γ(1-α) cancelled
                gamma_unchecked(jf + 1.0) / gamma_unchecked(jf + 2.0 - a)
            } else {
                incomplete_beta_unchecked(ratio, jf + 1.0, b) / gamma_b
            };
            total += c * span.powf(jf + 1.0 - a) * weight;
        }
    }
    Ok(total)
}

/// Caputo derivative at `t` of a function given through its first derivative `g_prime`.
///
/// `g_prime` must be integrable against `(t-s)^(-α)` on `[0, t]`; the result
/// carries an estimated absolute error of at most `tol`.
pub fn caputo_numeric<F>(g_prime: F, alpha: FractionalOrder, t: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(t >= 0.0) {
        return Err(domain(format!("Caputo derivative needs t ≥ 0, got {t}")));
    }
    if !(tol > 0.0) {
        return Err(domain(format!("tolerance must be positive, got {tol}")));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    if alpha.is_classical() {
        return Ok(g_prime(t));
    }
    let a = alpha.value();
    let norm = gamma_unchecked(1.0 - a);
    match quad::integrate_right_weighted(&g_prime, 0.0, t, -a, tol * norm, NODE_BUDGET) {
        Ok((value, _)) => Ok(value / norm),
        Err(Error::Accuracy { estimate, bound, .. }) => {
            Err(Error::Accuracy { estimate: estimate / norm, bound: bound / norm, tol })
        }
        Err(e) => Err(e),
    }
}

/// Caputo derivative at `t` of `g(t) = h(tᵅ / Γ(1+α))`, given `h'`.
///
/// Substituting `s = t σ^(1/α)` turns the Caputo integral into
/// `sin(πα)/(πα) ∫₀¹ h'(T σ) (1 - σ^(1/α))^(-α) dσ` with `T = tᵅ/Γ(1+α)`,
/// which removes the `s^(α-1)` singularity of `g'` at the origin.
pub fn caputo_time_power<F>(h_prime: F, alpha: FractionalOrder, t: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(t >= 0.0) {
        return Err(domain(format!("Caputo derivative needs t ≥ 0, got {t}")));
    }
    if !(tol > 0.0) {
        return Err(domain(format!("tolerance must be positive, got {tol}")));
    }
    if alpha.is_classical() {
        return Ok(h_prime(t));
    }
    let a = alpha.value();
    let big_t = time_power(alpha, t);
    let q = 1.0 / a;
    let prefactor = (PI * a).sin() / (PI * a);
    let integrand = |sigma: f64| {
        let log_sigma = (sigma - 1.0).ln_1p();
        let ratio = -(q * log_sigma).exp_m1() / (1.0 - sigma);
        h_prime(big_t * sigma) * ratio.powf(-a)
    };
    match quad::integrate_right_weighted(integrand, 0.0, 1.0, -a, tol / prefactor, NODE_BUDGET) {
        Ok((value, _)) => Ok(prefactor * value),
        Err(Error::Accuracy { estimate, bound, .. }) => Err(Error::Accuracy {
            estimate: prefactor * estimate,
            bound: prefactor * bound,
            tol,
        }),
        Err(e) => Err(e),
    }
}

/// `tᵅ / Γ(1+α)`, the time variable of the fractional traveling wave.
pub fn time_power(alpha: FractionalOrder, t: f64) -> f64 {
    let a = alpha.value();
    if alpha.is_classical() {
        t
    } else {
        t.powf(a) / gamma_unchecked(1.0 + a)
    }
}
