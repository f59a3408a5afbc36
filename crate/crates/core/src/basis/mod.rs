//! Collocation basis `ψᵢ = L₍z,u₎ K((z,u), ·)` at `(z,u) = (ζᵢ, τᵢ)` and its orthonormalization.
//!
//! The kernel lives on the unit square; with `x = (ζ - a)/λ`, `s = τ/T` the
//! operator `L` becomes `T⁻ᵅ ᶜDᵅ_s + Σ_d p_d λ⁻ᵈ ∂ᵈ_x`, so
//!
//! ```text
//! ψⱼ(x, s) = q_c φⱼ(s) R⁴(xⱼ, x) + Σ_d q_d(j) ∂₁ᵈR⁴(xⱼ, x) R²(sⱼ, s)
//! φⱼ(s)    = ᶜDᵅ_u R²(u, s) at u = sⱼ
//! ```
//!
//! with `q_c = T⁻ᵅ` and `q_d(j) = p_d(ζⱼ, τⱼ) λ⁻ᵈ`. Gram entries use the adjoint
//! identity `⟨ψᵢ, ψⱼ⟩ = (L ψⱼ)(ζᵢ, τᵢ)`; the only doubly fractional term is
//! `ᶜDᵅ_s ᶜDᵅ_u R²(u, s)`, which equals the inner product of two Caputo
//! representers and has the closed form of [`double_caputo`].

mod collocation;
mod orthonormal;

pub use collocation::{make_collocation, radical_inverse, CollocationSet, Scheme};
pub use orthonormal::{cholesky, gram_schmidt_recursive, orthonormality_defect, orthonormalize};

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::{contract, Result};
use crate::fracalc::{caputo_piecewise, gamma_unchecked, quad, FractionalOrder, NODE_BUDGET};
use crate::kernels::KernelFamily;
use crate::operator::{KseProblem, LiftingTrace, PointData};

/// `ᶜDᵅ_s ᶜDᵅ_u R²(u, s)` at `(u, s) = (s₂, s₁)`:
///
/// ```text
/// [(s₁ s₂)^{1-α} + ∫₀^{min} (s₁-t)^{1-α} (s₂-t)^{1-α} dt] / Γ(2-α)²
/// ```
pub fn double_caputo(s1: f64, s2: f64, alpha: FractionalOrder) -> Result<f64> {
    let (m, big) = if s1 <= s2 { (s1, s2) } else { (s2, s1) };
    if alpha.is_classical() {
        return Ok(1.0 + m);
    }
    let b = 1.0 - alpha.value();
    let g = gamma_unchecked(2.0 - alpha.value());
    let head = (s1 * s2).powf(b);
    let integral = if m <= 0.0 {
        0.0
    } else if big - m <= 1e-14 * big {
        m.powf(2.0 * b + 1.0) / (2.0 * b + 1.0)
    } else {
        let tol = 1e-14 * m.powf(2.0 * b + 1.0).max(1e-300);
        quad::integrate_right_weighted(|t| (big - t).powf(b), 0.0, m, b, tol, NODE_BUDGET)?.0
    };
    Ok((head + integral) / (g * g))
}

/// `φ(s, u) = ᶜDᵅ_v R²(v, s)` at `v = u`.
pub(crate) fn time_caputo(s: f64, u: f64, alpha: FractionalOrder) -> Result<f64> {
    caputo_piecewise(&KernelFamily::order2().section(s)?, alpha, u)
}

/// Orthonormalized collocation basis for one problem.
#[derive(Debug, Clone)]
pub struct CollocationBasis {
    problem: KseProblem,
    set: CollocationSet,
    point_data: Vec<PointData>,
    // q_d(j) for the unit-square operator
    q: Vec<[f64; 4]>,
    qc: f64,
    // at_points[d][(k, l)] = ∂ᵈ_ζ ψₗ(ζₖ, τₖ), physical units
    at_points: [DMatrix<f64>; 4],
    // (k, l) = ᶜDᵅ_τ ψₗ(ζₖ, τₖ)
    caputo_at_points: DMatrix<f64>,
    gram: DMatrix<f64>,
    xi: DMatrix<f64>,
}

impl CollocationBasis {
    /// Basis on the first `n` points of `scheme`.
    pub fn new(problem: &KseProblem, n: usize, scheme: Scheme) -> Result<Self> {
        let set = make_collocation(n, scheme, problem.domain)?;
        Self::build(problem, set)
    }

    pub fn build(problem: &KseProblem, set: CollocationSet) -> Result<Self> {
        if set.domain != problem.domain {
            return Err(contract("collocation set and problem live on different domains"));
        }
        let n = set.len();
        let lam = problem.domain.width();
        let alpha = problem.alpha;
        let qc = problem.domain.t_end.powf(-alpha.value());
        let point_data = set
            .points
            .par_iter()
            .map(|&(z, t)| {
                let trace = LiftingTrace::new(problem, t)?;
                PointData::with_trace(problem, &trace, z)
            })
            .collect::<Result<Vec<_>>>()?;
        let q: Vec<[f64; 4]> = point_data
            .iter()
            .map(|pd| std::array::from_fn(|d| pd.coeffs[d] / lam.powi(d as i32)))
            .collect();

        // phi[(k, l)] = φₗ(s_k)
        let rows = set
            .unit
            .par_iter()
            .map(|&(_, sk)| {
                let section = KernelFamily::order2().section(sk)?;
                set.unit
                    .iter()
                    .map(|&(_, sl)| caputo_piecewise(&section, alpha, sl))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let phi = DMatrix::from_fn(n, n, |k, l| rows[k][l]);

        let r4 = KernelFamily::order4();
        let r2 = KernelFamily::order2();
        let entries = (0..n)
            .into_par_iter()
            .map(|k| {
                let (xk, sk) = set.unit[k];
                (0..n)
                    .map(|l| {
                        let (xl, sl) = set.unit[l];
                        let time = r2.value(sl, sk);
                        let mut spatial = [0.0; 4];
                        for (e, out) in spatial.iter_mut().enumerate() {
                            let mixed: f64 =
                                (0..4).map(|d| q[l][d] * r4.partial(d, e, xl, xk)).sum();
                            *out = (qc * phi[(k, l)] * r4.partial(0, e, xl, xk) + mixed * time)
                                / lam.powi(e as i32);
                        }
                        let lhs: f64 = (0..4).map(|d| q[l][d] * r4.partial(d, 0, xl, xk)).sum();
                        let dd = double_caputo(sk, sl, alpha)?;
                        let caputo = qc * (qc * r4.value(xl, xk) * dd + lhs * phi[(l, k)]);
                        Ok((spatial, caputo))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let at_points: [DMatrix<f64>; 4] =
            std::array::from_fn(|d| DMatrix::from_fn(n, n, |k, l| entries[k][l].0[d]));
        let caputo_at_points = DMatrix::from_fn(n, n, |k, l| entries[k][l].1);
        let gram = DMatrix::from_fn(n, n, |i, j| {
            caputo_at_points[(i, j)]
                + (0..4).map(|d| point_data[i].coeffs[d] * at_points[d][(i, j)]).sum::<f64>()
        });
        let gram = (&gram + gram.transpose()) * 0.5;
        let xi = orthonormalize(&gram)?;
        Ok(Self {
            problem: problem.clone(),
            set,
            point_data,
            q,
            qc,
            at_points,
            caputo_at_points,
            gram,
            xi,
        })
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn problem(&self) -> &KseProblem {
        &self.problem
    }

    pub fn set(&self) -> &CollocationSet {
        &self.set
    }

    pub fn point_data(&self) -> &[PointData] {
        &self.point_data
    }

    /// `Gᵢⱼ = ⟨ψᵢ, ψⱼ⟩`.
    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn xi(&self) -> &DMatrix<f64> {
        &self.xi
    }

    /// `∂ᵈ_ζ ψₗ(ζₖ, τₖ)` as an `n × n` matrix indexed `(k, l)`.
    pub fn derivatives_at_points(&self, d: usize) -> &DMatrix<f64> {
        &self.at_points[d]
    }

    /// `ᶜDᵅ_τ ψₗ(ζₖ, τₖ)` indexed `(k, l)`.
    pub fn caputo_at_points(&self) -> &DMatrix<f64> {
        &self.caputo_at_points
    }

    /// `(L ψⱼ)(ζᵢ, τᵢ)` recomputed from scratch.
    pub fn gram_entry(&self, i: usize, j: usize) -> Result<f64> {
        let n = self.len();
        if i >= n || j >= n {
            return Err(contract(format!("Gram index ({i}, {j}) outside a basis of size {n}")));
        }
        let (zi, ti) = self.set.points[i];
        let spatial = self.psi_spatial(j, zi, ti)?;
        let caputo = self.psi_caputo(j, zi, ti)?;
        let pd = &self.point_data[i];
        Ok(caputo + (0..4).map(|d| pd.coeffs[d] * spatial[d]).sum::<f64>())
    }

    fn to_unit(&self, zeta: f64, tau: f64) -> Result<(f64, f64)> {
        let dom = &self.problem.domain;
        dom.check(zeta, tau)?;
        Ok((((zeta - dom.a) / dom.width()).clamp(0.0, 1.0), (tau / dom.t_end).clamp(0.0, 1.0)))
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j < self.len() {
            Ok(())
        } else {
            Err(contract(format!("basis index {j} outside a basis of size {}", self.len())))
        }
    }

    /// `ψⱼ(ζ, τ)`.
    pub fn psi(&self, j: usize, zeta: f64, tau: f64) -> Result<f64> {
        Ok(self.psi_spatial(j, zeta, tau)?[0])
    }

    /// `∂ᵈ_ζ ψⱼ(ζ, τ)` for `d = 0..3`.
    pub fn psi_spatial(&self, j: usize, zeta: f64, tau: f64) -> Result<[f64; 4]> {
        self.check_index(j)?;
        let (x, s) = self.to_unit(zeta, tau)?;
        let section = KernelFamily::order2().section(s)?;
        let phi = caputo_piecewise(&section, self.problem.alpha, self.set.unit[j].1)?;
        Ok(self.spatial_with(j, x, s, phi))
    }

    fn spatial_with(&self, j: usize, x: f64, s: f64, phi_j: f64) -> [f64; 4] {
        let r4 = KernelFamily::order4();
        let (xj, sj) = self.set.unit[j];
        let time = KernelFamily::order2().value(sj, s);
        let lam = self.problem.domain.width();
        std::array::from_fn(|e| {
            let mixed: f64 = (0..4).map(|d| self.q[j][d] * r4.partial(d, e, xj, x)).sum();
            (self.qc * phi_j * r4.partial(0, e, xj, x) + mixed * time) / lam.powi(e as i32)
        })
    }

    /// `ᶜDᵅ_τ ψⱼ(ζ, τ)`.
    pub fn psi_caputo(&self, j: usize, zeta: f64, tau: f64) -> Result<f64> {
        self.check_index(j)?;
        let (x, s) = self.to_unit(zeta, tau)?;
        let sj = self.set.unit[j].1;
        let phi_s = time_caputo(sj, s, self.problem.alpha)?;
        self.caputo_with(j, x, s, phi_s)
    }

    fn caputo_with(&self, j: usize, x: f64, s: f64, phi_s: f64) -> Result<f64> {
        let r4 = KernelFamily::order4();
        let (xj, sj) = self.set.unit[j];
        let lhs: f64 = (0..4).map(|d| self.q[j][d] * r4.partial(d, 0, xj, x)).sum();
        let dd = double_caputo(s, sj, self.problem.alpha)?;
        Ok(self.qc * (self.qc * r4.value(xj, x) * dd + lhs * phi_s))
    }

    /// `Σ cⱼ ∂ᵈ_ζ ψⱼ(ζ, τ)` for `d = 0..3`.
    pub fn combine_spatial(&self, coeffs: &[f64], zeta: f64, tau: f64) -> Result<[f64; 4]> {
        self.check_len(coeffs)?;
        let (x, s) = self.to_unit(zeta, tau)?;
        let section = KernelFamily::order2().section(s)?;
        let mut out = [0.0; 4];
        for (j, &c) in coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let phi = caputo_piecewise(&section, self.problem.alpha, self.set.unit[j].1)?;
            let v = self.spatial_with(j, x, s, phi);
            for d in 0..4 {
                out[d] += c * v[d];
            }
        }
        Ok(out)
    }

    /// `Σ cⱼ ᶜDᵅ_τ ψⱼ(ζ, τ)`.
    pub fn combine_caputo(&self, coeffs: &[f64], zeta: f64, tau: f64) -> Result<f64> {
        self.check_len(coeffs)?;
        let (x, s) = self.to_unit(zeta, tau)?;
        let mut out = 0.0;
        for (j, &c) in coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let phi_s = time_caputo(self.set.unit[j].1, s, self.problem.alpha)?;
            out += c * self.caputo_with(j, x, s, phi_s)?;
        }
        Ok(out)
    }

    fn check_len(&self, coeffs: &[f64]) -> Result<()> {
        if coeffs.len() == self.len() {
            Ok(())
        } else {
            Err(contract(format!(
                "{} coefficients supplied for a basis of size {}",
                coeffs.len(),
                self.len()
            )))
        }
    }

    /// Coefficients `c` of `Σ cⱼ ψⱼ` whose image under `L` takes the given values
    /// at the collocation points, i.e. `c = G⁻¹ values = ξᵀ ξ values`.
    pub fn interpolate(&self, values: &[f64]) -> Result<Vec<f64>> {
        self.check_len(values)?;
        let rhs = DVector::from_column_slice(values);
        let c = self.xi.transpose() * (&self.xi * rhs);
        Ok(c.iter().copied().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn double_caputo_classical_and_diagonal() {
        let one = FractionalOrder::new(1.0).unwrap();
        assert_eq!(double_caputo(0.3, 0.8, one).unwrap(), 1.3);
        let a = FractionalOrder::new(0.5).unwrap();
        // s₁ = s₂ = s: (s + s²/2) / Γ(3/2)²
        let s: f64 = 0.36;
        let expected = (s + s * s / 2.0) / gamma_unchecked(1.5).powi(2);
        assert_abs_diff_eq!(double_caputo(s, s, a).unwrap(), expected, epsilon = 1e-14);
        assert_abs_diff_eq!(
            double_caputo(0.2, 0.7, a).unwrap(),
            double_caputo(0.7, 0.2, a).unwrap(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn double_caputo_matches_nested_quadrature() {
        // ᶜDᵅ_s of s ↦ φ(s, u), with φ differentiated through the kernel's section in s
        let a = FractionalOrder::new(0.6).unwrap();
        let r2 = KernelFamily::order2();
        for (s, u) in [(0.7, 0.3), (0.25, 0.9), (0.5, 0.5)] {
            let g_prime = |t: f64| {
                let sec = r2.section_deriv(t, 1).unwrap();
                caputo_piecewise(&sec, a, u).unwrap()
            };
            let nested = crate::fracalc::caputo_numeric(g_prime, a, s, 1e-10).unwrap();
            assert_abs_diff_eq!(double_caputo(s, u, a).unwrap(), nested, epsilon = 1e-8);
        }
    }

    #[test]
    fn psi_vanishes_on_homogeneous_manifolds() {
        let p = KseProblem::benchmark(0.5).unwrap();
        let basis = CollocationBasis::new(&p, 5, Scheme::DiagonalGrid).unwrap();
        for j in 0..5 {
            for t in [0.1, 0.6, 1.0] {
                assert_abs_diff_eq!(basis.psi(j, 0.0, t).unwrap(), 0.0, epsilon = 1e-14);
                assert_abs_diff_eq!(basis.psi(j, 1.0, t).unwrap(), 0.0, epsilon = 1e-14);
            }
            for z in [0.2, 0.5, 0.8] {
                assert_abs_diff_eq!(basis.psi(j, z, 0.0).unwrap(), 0.0, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn precomputed_tables_match_pointwise_evaluation() {
        let p = KseProblem::benchmark(0.75).unwrap();
        let basis = CollocationBasis::new(&p, 6, Scheme::Halton).unwrap();
        for k in 0..6 {
            let (z, t) = basis.set().points[k];
            for l in 0..6 {
                let v = basis.psi_spatial(l, z, t).unwrap();
                for (d, vd) in v.iter().enumerate() {
                    assert_abs_diff_eq!(*vd, basis.derivatives_at_points(d)[(k, l)], epsilon = 1e-12);
                }
                let c = basis.psi_caputo(l, z, t).unwrap();
                assert_abs_diff_eq!(c, basis.caputo_at_points()[(k, l)], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn gram_is_symmetric_and_positive() {
        let p = KseProblem::benchmark(0.5).unwrap();
        let basis = CollocationBasis::new(&p, 6, Scheme::DiagonalGrid).unwrap();
        for i in 0..6 {
            assert!(basis.gram_entry(i, i).unwrap() > 0.0);
            for j in 0..6 {
                let gij = basis.gram_entry(i, j).unwrap();
                let gji = basis.gram_entry(j, i).unwrap();
                assert_abs_diff_eq!(gij, gji, epsilon = 1e-8 * gij.abs().max(1.0));
                assert_abs_diff_eq!(gij, basis.gram()[(i, j)], epsilon = 1e-10 * gij.abs().max(1.0));
            }
        }
    }

    #[test]
    fn interpolation_recovers_span_members() {
        let p = KseProblem::benchmark(0.5).unwrap();
        let basis = CollocationBasis::new(&p, 4, Scheme::DiagonalGrid).unwrap();
        let a = [0.3, -1.2, 0.5, 2.0];
        let g = basis.gram();
        let values: Vec<f64> = (0..4).map(|i| (0..4).map(|j| g[(i, j)] * a[j]).sum()).collect();
        let c = basis.interpolate(&values).unwrap();
        for (z, t) in [(0.1, 0.9), (0.6, 0.35), (0.85, 0.7)] {
            let truth = basis.combine_spatial(&a, z, t).unwrap()[0];
            let rebuilt = basis.combine_spatial(&c, z, t).unwrap()[0];
            assert_abs_diff_eq!(truth, rebuilt, epsilon = 1e-6 * truth.abs().max(1e-3));
        }
    }
}
