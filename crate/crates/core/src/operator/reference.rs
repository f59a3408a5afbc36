use crate::error::{contract, Result};
use crate::fracalc::{
    caputo_time_power, gamma_unchecked, horner_deriv, time_power, FractionalOrder,
};

use super::KseParams;

/// `tanh⁽ᵏ⁾(z)` for `k ≤ 4`.
pub(crate) fn tanh_derivative(z: f64, k: usize) -> f64 {
    let t = z.tanh();
    let s = 1.0 - t * t;
    match k {
        0 => t,
        1 => s,
        2 => -2.0 * t * s,
        3 => s * (6.0 * t * t - 2.0),
        4 => s * (16.0 * t - 24.0 * t * t * t),
        _ => unreachable!("tanh derivatives are tabulated up to order 4"),
    }
}

/// `w = A + B tanh(ζ - c tᵅ/Γ(1+α))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TravelingWave {
    pub level: f64,
    pub amplitude: f64,
    pub speed: f64,
    pub alpha: FractionalOrder,
}

impl TravelingWave {
    /// The kink whose amplitude and speed follow from the equation's parameters.
    ///
    /// With `D = γ - 4 + μ²`: `A = (γ - 4 - μν)/D`, `B = -2(μ + ν)/D`, `c = γA`.
    /// For `β = -4` and `α = 1` this is an exact solution.
    pub fn from_params(params: &KseParams, alpha: FractionalOrder) -> Result<Self> {
        let KseParams { gamma, mu, nu, .. } = *params;
        let denom = gamma - 4.0 + mu * mu;
        if denom.abs() < 1e-12 {
            return Err(crate::error::domain(format!(
                "γ - 4 + μ² vanishes (γ = {gamma}, μ = {mu}); the kink is undefined"
            )));
        }
        let level = (gamma - 4.0 - mu * nu) / denom;
        Ok(Self { level, amplitude: -2.0 * (mu + nu) / denom, speed: gamma * level, alpha })
    }

    fn phase(&self, zeta: f64, tau: f64) -> f64 {
        zeta - self.speed * time_power(self.alpha, tau)
    }

    pub fn derivative(&self, zeta: f64, tau: f64, d: usize) -> f64 {
        let v = self.amplitude * tanh_derivative(self.phase(zeta, tau), d);
        if d == 0 {
            self.level + v
        } else {
            v
        }
    }

    pub fn caputo(&self, zeta: f64, tau: f64, d: usize, tol: f64) -> Result<f64> {
        if tau == 0.0 || self.speed == 0.0 || self.amplitude == 0.0 {
            return Ok(0.0);
        }
        let (b, c) = (self.amplitude, self.speed);
        let h_prime = |big_t: f64| -c * b * tanh_derivative(zeta - c * big_t, d + 1);
        if self.alpha.is_classical() {
            return Ok(h_prime(tau));
        }
        caputo_time_power(h_prime, self.alpha, tau, tol)
    }
}

/// `w = base(ζ) + τᵖ profile(ζ)` with polynomial `base` and `profile`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableSolution {
    /// Monomial coefficients of `base` in `ζ`.
    pub base: Vec<f64>,
    /// Monomial coefficients of `profile` in `ζ`.
    pub profile: Vec<f64>,
    pub exponent: f64,
    pub alpha: FractionalOrder,
}

impl SeparableSolution {
    pub fn derivative(&self, zeta: f64, tau: f64, d: usize) -> f64 {
        horner_deriv(&self.base, zeta, d) + tau.powf(self.exponent) * horner_deriv(&self.profile, zeta, d)
    }

    pub fn caputo(&self, zeta: f64, tau: f64, d: usize) -> f64 {
        if tau == 0.0 {
            return 0.0;
        }
        let p = self.exponent;
        let a = self.alpha.value();
        let factor = if self.alpha.is_classical() {
            p * tau.powf(p - 1.0)
        } else {
            gamma_unchecked(p + 1.0) / gamma_unchecked(p + 1.0 - a) * tau.powf(p - a)
        };
        factor * horner_deriv(&self.profile, zeta, d)
    }
}

/// Closed-form solution that supplies the initial and boundary data.
#[derive(Debug, Clone, PartialEq)]
pub enum ReferenceSolution {
    TravelingWave(TravelingWave),
    Separable(SeparableSolution),
}

impl ReferenceSolution {
    /// `∂ᵈ_ζ w(ζ, τ)` for `d ≤ 4`.
    pub fn derivative(&self, zeta: f64, tau: f64, d: usize) -> Result<f64> {
        if d > 4 {
            return Err(contract(format!("spatial derivative order {d} exceeds 4")));
        }
        Ok(match self {
            Self::TravelingWave(w) => w.derivative(zeta, tau, d),
            Self::Separable(w) => w.derivative(zeta, tau, d),
        })
    }

    pub fn value(&self, zeta: f64, tau: f64) -> f64 {
        match self {
            Self::TravelingWave(w) => w.derivative(zeta, tau, 0),
            Self::Separable(w) => w.derivative(zeta, tau, 0),
        }
    }

    /// Values of `w, w_ζ, w_ζζ, w_ζζζ`.
    pub fn spatial(&self, zeta: f64, tau: f64) -> [f64; 4] {
        std::array::from_fn(|d| match self {
            Self::TravelingWave(w) => w.derivative(zeta, tau, d),
            Self::Separable(w) => w.derivative(zeta, tau, d),
        })
    }

    /// Caputo derivative in `τ` of `∂ᵈ_ζ w`.
    pub fn caputo(&self, zeta: f64, tau: f64, d: usize, tol: f64) -> Result<f64> {
        match self {
            Self::TravelingWave(w) => w.caputo(zeta, tau, d, tol),
            Self::Separable(w) => Ok(w.caputo(zeta, tau, d)),
        }
    }

    pub fn alpha(&self) -> FractionalOrder {
        match self {
            Self::TravelingWave(w) => w.alpha,
            Self::Separable(w) => w.alpha,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn tanh_derivatives_match_finite_differences() {
        let h = 1e-5;
        for z in [-1.3, 0.0, 0.4, 2.0] {
            for k in 0..4 {
                let fd = (tanh_derivative(z + h, k) - tanh_derivative(z - h, k)) / (2.0 * h);
                assert_abs_diff_eq!(tanh_derivative(z, k + 1), fd, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn benchmark_kink_coefficients() {
        let wave = TravelingWave::from_params(&KseParams::benchmark(), FractionalOrder::new(0.5).unwrap())
            .unwrap();
        assert_abs_diff_eq!(wave.level, 0.004_074_241_738_343_145_5, epsilon = 1e-17);
        assert_abs_diff_eq!(wave.amplitude, 0.373_472_159_348_121_3, epsilon = 1e-15);
        assert_abs_diff_eq!(wave.speed, 0.000_407_424_173_834_314_55, epsilon = 1e-18);
    }

    #[test]
    fn separable_caputo_is_closed_form() {
        let alpha = FractionalOrder::new(0.5).unwrap();
        let w = SeparableSolution { base: vec![1.0], profile: vec![0.0, 2.0], exponent: 2.0, alpha };
        // D^½ τ² = Γ(3)/Γ(2.5) τ^1.5
        let expected = 2.0 / 1.329_340_388_179_137 * 0.25f64.powf(1.5) * 2.0 * 0.3;
        assert_abs_diff_eq!(w.caputo(0.3, 0.25, 0), expected, epsilon = 1e-14);
        assert_eq!(w.caputo(0.3, 0.0, 0), 0.0);
    }
}
