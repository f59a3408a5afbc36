use crate::error::{domain, Result};

/// Univariate piecewise polynomial.
///
/// Piece `k` lives on `[breakpoints[k], breakpoints[k + 1]]` and stores its
/// coefficients in powers of `(x - breakpoints[k])`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePolynomial {
    breakpoints: Vec<f64>,
    pieces: Vec<Vec<f64>>,
}

impl PiecewisePolynomial {
    pub fn new(breakpoints: Vec<f64>, pieces: Vec<Vec<f64>>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(domain("a piecewise polynomial needs at least two breakpoints"));
        }
        if pieces.len() + 1 != breakpoints.len() {
            return Err(domain(format!(
                "{} breakpoints require {} pieces, got {}",
                breakpoints.len(),
                breakpoints.len() - 1,
                pieces.len()
            )));
        }
        if breakpoints.iter().any(|b| !b.is_finite()) || breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(domain("breakpoints must be finite and strictly increasing"));
        }
        Ok(Self { breakpoints, pieces })
    }

    /// Single piece on `[lo, hi]` with coefficients in powers of `(x - lo)`.
    pub fn single(lo: f64, hi: f64, coeffs: Vec<f64>) -> Result<Self> {
        Self::new(vec![lo, hi], vec![coeffs])
    }

    /// Single piece on `[lo, hi]` given ordinary monomial coefficients in `x`.
    pub fn from_monomials(lo: f64, hi: f64, monomial: &[f64]) -> Result<Self> {
        Self::single(lo, hi, taylor_shift(monomial, lo))
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Vec<f64>] {
        &self.pieces
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.breakpoints[0], *self.breakpoints.last().unwrap())
    }

    pub fn degree(&self) -> usize {
        self.pieces.iter().map(|p| p.len().saturating_sub(1)).max().unwrap_or(0)
    }

    fn contains(&self, x: f64) -> bool {
        let (lo, hi) = self.domain();
        x >= lo && x <= hi
    }

    /// Index of the piece evaluated at `x`; interior breakpoints belong to the right piece.
    fn piece_index(&self, x: f64) -> usize {
        let m = self.pieces.len();
        match self.breakpoints[1..m].iter().position(|&b| x < b) {
            Some(k) => k,
            None => m - 1,
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.eval_deriv(x, 0)
    }

    /// `k`-th derivative at `x` taken from the piece that owns `x`.
    pub fn eval_deriv(&self, x: f64, k: usize) -> Result<f64> {
        if !self.contains(x) {
            let (lo, hi) = self.domain();
            return Err(domain(format!("{x} outside [{lo}, {hi}]")));
        }
        let idx = self.piece_index(x);
        Ok(horner_deriv(&self.pieces[idx], x - self.breakpoints[idx], k))
    }

    /// Limits from the left and the right at interior breakpoint `index` (1-based among breakpoints).
    pub fn one_sided_at_breakpoint(&self, index: usize, k: usize) -> Option<(f64, f64)> {
        if index == 0 || index >= self.pieces.len() {
            return None;
        }
        let left = &self.pieces[index - 1];
        let width = self.breakpoints[index] - self.breakpoints[index - 1];
        Some((horner_deriv(left, width, k), horner_deriv(&self.pieces[index], 0.0, k)))
    }

    pub fn derivative(&self) -> Self {
        let pieces = self.pieces.iter().map(|c| differentiate(c)).collect();
        Self { breakpoints: self.breakpoints.clone(), pieces }
    }

    pub fn scale(&self, factor: f64) -> Self {
        let pieces = self.pieces.iter().map(|c| c.iter().map(|v| v * factor).collect()).collect();
        Self { breakpoints: self.breakpoints.clone(), pieces }
    }

    /// Restatement on a finer breakpoint set; `points` must lie inside the domain.
    pub fn refined(&self, points: &[f64]) -> Self {
        let (lo, hi) = self.domain();
        let mut bps: Vec<f64> = self.breakpoints.clone();
        bps.extend(points.iter().copied().filter(|&p| p > lo && p < hi));
        bps.sort_by(|a, b| a.partial_cmp(b).unwrap());
        bps.dedup();
        let pieces = bps
            .windows(2)
            .map(|w| {
                let idx = self.piece_index(w[0]);
                taylor_shift(&self.pieces[idx], w[0] - self.breakpoints[idx])
            })
            .collect();
        Self { breakpoints: bps, pieces }
    }

    /// `a·p + b·q` on the union of both breakpoint sets; domains must coincide.
    pub fn linear_combination(a: f64, p: &Self, b: f64, q: &Self) -> Result<Self> {
        if p.domain() != q.domain() {
            return Err(domain("linear combination of piecewise polynomials on different domains"));
        }
        let pr = p.refined(&q.breakpoints);
        let qr = q.refined(&p.breakpoints);
        let pieces = pr
            .pieces
            .iter()
            .zip(&qr.pieces)
            .map(|(x, y)| {
                let n = x.len().max(y.len());
                (0..n)
                    .map(|i| a * x.get(i).copied().unwrap_or(0.0) + b * y.get(i).copied().unwrap_or(0.0))
                    .collect()
            })
            .collect();
        Ok(Self { breakpoints: pr.breakpoints, pieces })
    }
}

/// Value of the `k`-th derivative of `Σ c_i h^i` at `h`.
pub(crate) fn horner_deriv(coeffs: &[f64], h: f64, k: usize) -> f64 {
    if coeffs.len() <= k {
        return 0.0;
    }
    let mut acc = 0.0;
    for i in (k..coeffs.len()).rev() {
        acc = acc * h + coeffs[i] * falling_factorial(i, k);
    }
    acc
}

pub(crate) fn falling_factorial(n: usize, k: usize) -> f64 {
    ((n + 1 - k.min(n + 1))..=n).fold(1.0, |acc, v| acc * v as f64)
}

pub(crate) fn differentiate(coeffs: &[f64]) -> Vec<f64> {
    if coeffs.len() <= 1 {
        return vec![0.0];
    }
    coeffs.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect()
}

/// Coefficients of `p(h + delta)` in powers of `h`.
pub(crate) fn taylor_shift(coeffs: &[f64], delta: f64) -> Vec<f64> {
    let mut out = coeffs.to_vec();
    if delta == 0.0 {
        return out;
    }
    let n = out.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            out[j] += delta * out[j + 1];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rejects_malformed_inputs() {
        assert!(PiecewisePolynomial::new(vec![0.0], vec![]).is_err());
        assert!(PiecewisePolynomial::new(vec![0.0, 1.0], vec![]).is_err());
        assert!(PiecewisePolynomial::new(vec![0.0, 0.0], vec![vec![1.0]]).is_err());
        assert!(PiecewisePolynomial::new(vec![1.0, 0.5], vec![vec![1.0]]).is_err());
    }

    #[test]
    fn evaluates_centered_pieces() {
        // t² written around 0.1 on the second piece: (h + 0.1)² = 0.01 + 0.2 h + h²
        let p = PiecewisePolynomial::new(
            vec![0.0, 0.1, 1.0],
            vec![vec![0.0, 0.0, 1.0], vec![0.01, 0.2, 1.0]],
        )
        .unwrap();
        for x in [0.0, 0.05, 0.1, 0.3, 1.0] {
            assert_abs_diff_eq!(p.eval(x).unwrap(), x * x, epsilon = 1e-15);
            assert_abs_diff_eq!(p.eval_deriv(x, 1).unwrap(), 2.0 * x, epsilon = 1e-15);
        }
        let (l, r) = p.one_sided_at_breakpoint(1, 0).unwrap();
        assert_abs_diff_eq!(l, r, epsilon = 1e-15);
        assert!(p.eval(1.1).is_err());
    }

    #[test]
    fn taylor_shift_recenters() {
        let c = [1.0, -2.0, 0.5, 3.0];
        let shifted = taylor_shift(&c, 0.7);
        for h in [-0.3, 0.0, 0.2, 1.1] {
            assert_abs_diff_eq!(
                horner_deriv(&shifted, h, 0),
                horner_deriv(&c, h + 0.7, 0),
                epsilon = 1e-13
            );
        }
    }

    #[test]
    fn linear_combination_merges_breakpoints() {
        let p = PiecewisePolynomial::from_monomials(0.0, 1.0, &[0.0, 1.0, 1.0]).unwrap();
        let q = PiecewisePolynomial::new(vec![0.0, 0.4, 1.0], vec![vec![1.0], vec![2.0, 1.0]]).unwrap();
        let r = PiecewisePolynomial::linear_combination(2.0, &p, -1.0, &q).unwrap();
        assert_eq!(r.breakpoints(), &[0.0, 0.4, 1.0]);
        for x in [0.1, 0.4, 0.75] {
            let expected = 2.0 * p.eval(x).unwrap() - q.eval(x).unwrap();
            assert_abs_diff_eq!(r.eval(x).unwrap(), expected, epsilon = 1e-14);
        }
    }
}
