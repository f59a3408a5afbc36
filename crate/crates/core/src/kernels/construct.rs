//! Exact kernel construction in rational arithmetic.
//!
//! Without constraints, the kernel of `W₂ʳ[0,1]` under the inner product
//! `Σ_{i<r} f⁽ⁱ⁾(0) h⁽ⁱ⁾(0) + ∫₀¹ f⁽ʳ⁾ h⁽ʳ⁾` is
//!
//! ```text
//! K(x, y) = Σ_{i<r} xⁱ yⁱ / (i!)² + 1/((r-1)!)² ∫₀^{min(x,y)} (x-t)^{r-1} (y-t)^{r-1} dt.
//! ```
//!
//! Homogeneous conditions `ℓⱼ h = 0` cut out a closed subspace whose kernel is
//! the orthogonal projection `K - Σ eⱼ(x) (A⁻¹)ⱼₖ eₖ(y)` with `eⱼ = ℓⱼ K(·, y)`
//! and `Aⱼₖ = ℓⱼ ℓₖ K`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::bivariate::{rational, RationalPoly};
use super::{KernelFamily, KernelSource, PointCondition};
use crate::error::{contract, Error, Result};

/// Kernel of `W₂ʳ[0,1]` with the given homogeneous conditions imposed.
///
/// `r` must be 2 or 4. Conditions may sit at `0` or `1` and involve derivatives
/// below order `r`.
pub fn reconstruct_kernel(r: usize, constraints: &[PointCondition]) -> Result<KernelFamily> {
    if r != 2 && r != 4 {
        return Err(contract(format!("kernel reconstruction supports r = 2 or 4, got {r}")));
    }
    for c in constraints {
        if c.point != 0.0 && c.point != 1.0 {
            return Err(contract(format!("condition point {} must be 0 or 1", c.point)));
        }
        if c.derivative >= r {
            return Err(contract(format!(
                "condition on derivative {} exceeds the smoothness of W₂^{r}",
                c.derivative
            )));
        }
    }
    let full = full_kernel(r);
    let poly = project(&full, constraints)?;
    Ok(KernelFamily::from_poly(r, KernelSource::Reconstructed, constraints.to_vec(), poly.to_f64()))
}

/// Branch `m ≤ M` of the unconstrained kernel.
fn full_kernel(r: usize) -> RationalPoly {
    let m = RationalPoly::first();
    let big = RationalPoly::second();
    let mut k = RationalPoly::default();
    let mut fact = BigRational::one();
    for i in 0..r {
        if i > 0 {
            fact *= rational(i as i64, 1);
        }
        let term = m.mul(&big).pow(i).scale(&(BigRational::one() / (&fact * &fact)));
        k = k.add(&term);
    }
    // with u = m - t: ∫₀ᵐ u^{r-1} (M - m + u)^{r-1} du
    //   = Σₖ C(r-1, k) (M - m)^{r-1-k} m^{r+k} / (r+k)
    let gap = big.sub(&m);
    let mut integral = RationalPoly::default();
    for kk in 0..r {
        let coeff = rational(binomial(r - 1, kk), (r + kk) as i64);
        integral = integral.add(&gap.pow(r - 1 - kk).mul(&m.pow(r + kk)).scale(&coeff));
    }
    let norm = BigRational::one() / (&fact * &fact);
    k.add(&integral.scale(&norm))
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `ℓ K(·, y)` as a polynomial in the second variable, valid for all `y ∈ [0, 1]`.
fn functional_section(full: &RationalPoly, c: &PointCondition) -> RationalPoly {
    if c.point == 0.0 {
        // x = 0 ≤ y: ∂ₘᵈ P(m, M) at m = 0
        full.partial(c.derivative, 0).at_first(&BigRational::zero())
    } else {
        // x = 1 ≥ y: K(x, y) = P(y, x), differentiate in the second slot, then rename y → M
        full.partial(0, c.derivative).at_second(&BigRational::one()).swap()
    }
}

fn apply_to_second(p: &RationalPoly, c: &PointCondition) -> BigRational {
    let point = if c.point == 0.0 { BigRational::zero() } else { BigRational::one() };
    p.partial(0, c.derivative).at_second(&point).constant_value()
}

fn project(full: &RationalPoly, constraints: &[PointCondition]) -> Result<RationalPoly> {
    let n = constraints.len();
    if n == 0 {
        return Ok(full.clone());
    }
    let sections: Vec<RationalPoly> =
        constraints.iter().map(|c| functional_section(full, c)).collect();
    let gram: Vec<Vec<BigRational>> = sections
        .iter()
        .map(|e| constraints.iter().map(|c| apply_to_second(e, c)).collect())
        .collect();
    let inverse = invert(gram).ok_or_else(|| {
        Error::Construction("point conditions are linearly dependent".to_string())
    })?;
    let mut correction = RationalPoly::default();
    for (j, ej) in sections.iter().enumerate() {
        let ej_first = ej.swap();
        for (k, ek) in sections.iter().enumerate() {
            if inverse[j][k].is_zero() {
                continue;
            }
            correction = correction.add(&ej_first.mul(ek).scale(&inverse[j][k]));
        }
    }
    Ok(full.sub(&correction))
}

/// Gauss–Jordan inverse over the rationals; `None` when singular.
fn invert(mut a: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for row in 0..n {
            if row == col || a[row][col].is_zero() {
                continue;
            }
            let f = a[row][col].clone();
            for j in 0..n {
                let (ac, ic) = (a[col][j].clone(), inv[col][j].clone());
                a[row][j] -= &f * ac;
                inv[row][j] -= &f * ic;
            }
        }
    }
    Some(inv)
}

/// A closed-form candidate for the order-4 kernel.
///
/// Kept as a candidate only; it does not satisfy the reproducing property.
pub fn candidate_order4() -> KernelFamily {
    let s = RationalPoly::first();
    let y = RationalPoly::second();
    let c = RationalPoly::int;
    let q = |n: i64, d: i64| rational(n, d);
    // y(-20 + y(15 + (-6 + y) y)) + k
    let inner = |k: i64| {
        y.mul(&c(-20).add(&y.mul(&c(15).add(&c(-6).add(&y).mul(&y))))).add(&c(k))
    };
    let common = |k: i64| s.pow(2).mul(&y.sub(&c(1))).mul(&y.pow(2)).mul(&inner(k));
    let tail = c(21).add(&c(-7).add(&y).mul(&y));
    let t1 = s.pow(18).mul(&y.pow(2)).scale(&BigRational::new(
        BigInt::from(-343),
        BigInt::from(133_589_564_928_000i64),
    ));
    let t2 = common(-160).scale(&q(1, 5680));
    let t3 = common(1260).mul(&s.pow(3)).scale(&q(-1, 340_800));
    let t4 = common(1260).scale(&q(1, 51_120));
    let t5 = common(1260).mul(&s.pow(2)).scale(&q(1, 204_480));
    // s⁶ y (1420 + y(-1260 + y(-1260 + y²(-35 + y(21 + (-7 + y) y)))))
    let six = c(1420).add(&y.mul(&c(-1260).add(&y.mul(
        &c(-1260).add(&y.pow(2).mul(&c(-35).add(&y.mul(&tail)))),
    ))));
    let t6 = s.pow(6).mul(&y).mul(&six).scale(&q(1, 1_022_400));
    // s⁷ (1420 + y²(-1260 + y(-140 + y(-35 + y(21 + (-7 + y) y)))))
    let seven = c(1420).add(&y.pow(2).mul(&c(-1260).add(&y.mul(
        &c(-140).add(&y.mul(&c(-35).add(&y.mul(&tail)))),
    ))));
    let t7 = s.pow(7).mul(&seven).scale(&q(-1, 7_156_800));
    let poly = [t2, t3, t4, t5, t6, t7].iter().fold(t1, |acc, t| acc.add(t));
    KernelFamily::from_poly(
        4,
        KernelSource::ClosedForm,
        vec![PointCondition::value_at(0.0), PointCondition::value_at(1.0)],
        poly.to_f64(),
    )
}
