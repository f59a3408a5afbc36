//! Oracles shared by the integration tests. Nothing here calls back into the
//! code paths it is used to check.
#![allow(dead_code)]

use gauss_quad::GaussLegendre;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rkhs_kse::fracalc::{FractionalOrder, PiecewisePolynomial};
use rkhs_kse::operator::{KseParams, KseProblem, ReferenceSolution, SeparableSolution, SpaceTimeDomain};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gamma(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

/// `∫₀ᵗ g'(s) (t-s)^{-α} ds / Γ(1-α)` by the substitution `u = (t-s)^{1-α}`,
/// which turns the weight into a constant, and Gauss–Legendre on panels graded
/// towards `u = 0` and split at the images of `kinks`.
pub fn caputo_oracle(g_prime: impl Fn(f64) -> f64, kinks: &[f64], alpha: f64, t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    if alpha == 1.0 {
        return g_prime(t);
    }
    let b = 1.0 - alpha;
    let m = 1.0 / b;
    let mut cuts: Vec<f64> = vec![0.0, t.powf(b)];
    for &k in kinks {
        if k > 0.0 && k < t {
            cuts.push((t - k).powf(b));
        }
    }
    cuts.sort_by(f64::total_cmp);
    let gl = GaussLegendre::new(std::num::NonZeroUsize::new(24).unwrap());
    let panel = |lo: f64, hi: f64| gl.integrate(lo, hi, |u| g_prime(t - u.powf(m)));
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if lo == 0.0 {
            // geometric grading: [hi 2^-(j+1), hi 2^-j]
            let mut right = hi;
            for _ in 0..40 {
                total += panel(0.5 * right, right);
                right *= 0.5;
            }
            total += panel(0.0, right);
        } else {
            total += panel(lo, hi);
        }
    }
    m * total / gamma(b)
}

/// Left-hand side of the equation, written out term by term.
pub fn kse_lhs(p: &KseParams, caputo: f64, w: &[f64; 4]) -> f64 {
    let (w0, wz, wzz, wzzz) = (w[0], w[1], w[2], w[3]);
    caputo + p.gamma * w0 * wz + wzzz - (1.0 + p.beta) * wz * wzz - w0 * wzzz - p.nu * wzz - p.mu * w0 * wzz
        - p.mu * wz.powi(2)
}

/// Continuous random piecewise polynomial on `[0, 1]` with 1..=4 pieces of degree ≤ 5.
pub fn random_spline(rng: &mut impl Rng) -> PiecewisePolynomial {
    let pieces = rng.gen_range(1..=4);
    let mut bps: Vec<f64> = (0..pieces - 1).map(|_| rng.gen_range(0.05..0.95)).collect();
    bps.sort_by(f64::total_cmp);
    bps.dedup_by(|a, b| (*a - *b).abs() < 1e-3);
    bps.insert(0, 0.0);
    bps.push(1.0);
    let mut coeffs: Vec<Vec<f64>> = Vec::new();
    for k in 0..bps.len() - 1 {
        let deg = rng.gen_range(0..=5);
        let mut c: Vec<f64> = (0..=deg).map(|_| rng.gen_range(-2.0..2.0)).collect();
        if let Some(prev) = coeffs.last() {
            let h = bps[k] - bps[k - 1];
            c[0] = prev.iter().rev().fold(0.0, |acc, &a| acc * h + a);
        }
        coeffs.push(c);
    }
    PiecewisePolynomial::new(bps, coeffs).unwrap()
}

/// `w = 0.1 - 0.2ζ + 0.1 τ² ζ³` with `γ = μ = 0, β = -1, ν = 0.75`.
pub fn manufactured(alpha: f64) -> KseProblem {
    let truth = SeparableSolution {
        base: vec![0.1, -0.2],
        profile: vec![0.0, 0.0, 0.0, 0.1],
        exponent: 2.0,
        alpha: FractionalOrder::new(alpha).unwrap(),
    };
    let params = KseParams { beta: -1.0, gamma: 0.0, mu: 0.0, nu: 0.75 };
    KseProblem::manufactured(params, SpaceTimeDomain::unit(), ReferenceSolution::Separable(truth))
}

pub fn manufactured_truth(zeta: f64, tau: f64) -> f64 {
    0.1 - 0.2 * zeta + 0.1 * tau * tau * zeta.powi(3)
}

/// Rounds to `digits` significant digits.
pub fn round_sig(x: f64, digits: i32) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let scale = 10f64.powi(digits - 1 - x.abs().log10().floor() as i32);
    (x * scale).round() / scale
}
