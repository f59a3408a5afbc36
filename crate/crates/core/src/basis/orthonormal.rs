use nalgebra::DMatrix;

use crate::error::{contract, Error, Result};

/// Lower-triangular `ξ` with `ξ G ξᵀ = I`, i.e. the inverse of the Cholesky factor of `G`.
///
/// Row `i` of `ξ` holds the coefficients of `Ψᵢ` in terms of `ψ₁..ψᵢ`.
pub fn orthonormalize(gram: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let l = cholesky(gram)?;
    Ok(lower_inverse(&l))
}

/// Cholesky factor `L` with `L Lᵀ = G`; a non-positive pivot is reported with its
/// 0-based row index.
pub fn cholesky(gram: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = gram.nrows();
    if gram.ncols() != n {
        return Err(contract(format!("Gram matrix must be square, got {}×{}", n, gram.ncols())));
    }
    let mut l = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut sum = gram[(i, j)];
            for k in 0..j {
                sum -= l[(i, k)] * l[(j, k)];
            }
            if i == j {
                if !(sum > 0.0) {
                    return Err(Error::Degeneracy { index: i, pivot: sum });
                }
                l[(i, i)] = sum.sqrt();
            } else {
                l[(i, j)] = sum / l[(j, j)];
            }
        }
    }
    Ok(l)
}

fn lower_inverse(l: &DMatrix<f64>) -> DMatrix<f64> {
    let n = l.nrows();
    let mut inv = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        inv[(j, j)] = 1.0 / l[(j, j)];
        for i in j + 1..n {
            let mut sum = 0.0;
            for k in j..i {
                sum += l[(i, k)] * inv[(k, j)];
            }
            inv[(i, j)] = -sum / l[(i, i)];
        }
    }
    inv
}

/// Classical Gram–Schmidt coefficients built row by row:
///
/// ```text
/// cᵢₖ = ⟨ψᵢ, Ψₖ⟩ = Σ_{l≤k} ξₖₗ Gᵢₗ,   dᵢ = √(Gᵢᵢ - Σ_{k<i} cᵢₖ²),
/// ξᵢᵢ = 1/dᵢ,   ξᵢⱼ = -(1/dᵢ) Σ_{k=j}^{i-1} cᵢₖ ξₖⱼ.
/// ```
///
/// Mathematically equal to [`orthonormalize`] but loses orthogonality faster as `n` grows.
pub fn gram_schmidt_recursive(gram: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = gram.nrows();
    let mut xi = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        let c: Vec<f64> = (0..i).map(|k| (0..=k).map(|l| xi[(k, l)] * gram[(i, l)]).sum()).collect();
        let d2 = gram[(i, i)] - c.iter().map(|v| v * v).sum::<f64>();
        if !(d2 > 0.0) {
            return Err(Error::Degeneracy { index: i, pivot: d2 });
        }
        let d = d2.sqrt();
        xi[(i, i)] = 1.0 / d;
        for j in 0..i {
            let s: f64 = (j..i).map(|k| c[k] * xi[(k, j)]).sum();
            xi[(i, j)] = -s / d;
        }
    }
    Ok(xi)
}

/// `max |(ξ G ξᵀ)ᵢⱼ - δᵢⱼ|`.
pub fn orthonormality_defect(xi: &DMatrix<f64>, gram: &DMatrix<f64>) -> f64 {
    let p = xi * gram * xi.transpose();
    let n = p.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((p[(i, j)] - target).abs());
        }
    }
    worst
}
