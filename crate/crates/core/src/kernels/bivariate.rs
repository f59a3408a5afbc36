use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::fracalc::falling_factorial;

/// Dense polynomial `Σ c[i][j] mⁱ Mʲ` in two variables.
#[derive(Debug, Clone, PartialEq)]
pub struct BivariatePoly {
    coeffs: Vec<Vec<f64>>,
}

impl BivariatePoly {
    /// `coeffs[i][j]` multiplies `mⁱ Mʲ`.
    pub fn new(coeffs: Vec<Vec<f64>>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Vec<f64>] {
        &self.coeffs
    }

    /// Highest power of the first variable.
    pub fn degree_first(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Highest power of the second variable.
    pub fn degree_second(&self) -> usize {
        self.coeffs.iter().map(|r| r.len().saturating_sub(1)).max().unwrap_or(0)
    }

    pub fn eval(&self, m: f64, big_m: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, row| acc * m + horner(row, big_m))
    }

    /// `∂ₘᵈ ∂_Mᵉ` as a new polynomial.
    pub fn partial(&self, d: usize, e: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(d)
            .map(|(i, row)| {
                let fi = falling_factorial(i, d);
                row.iter()
                    .enumerate()
                    .skip(e)
                    .map(|(j, c)| c * fi * falling_factorial(j, e))
                    .collect()
            })
            .collect();
        Self { coeffs }
    }

    /// Monomial coefficients in the second variable after fixing the first at `m`.
    pub(crate) fn row_at_first(&self, m: f64) -> Vec<f64> {
        let width = self.degree_second() + 1;
        let mut out = vec![0.0; width];
        let mut power = 1.0;
        for row in &self.coeffs {
            for (j, c) in row.iter().enumerate() {
                out[j] += c * power;
            }
            power *= m;
        }
        out
    }

    /// Monomial coefficients in the first variable after fixing the second at `big_m`.
    pub(crate) fn column_at_second(&self, big_m: f64) -> Vec<f64> {
        self.coeffs.iter().map(|row| horner(row, big_m)).collect()
    }
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Sparse exact polynomial in `(m, M)` used while building kernels.
#[derive(Debug, Clone, PartialEq, Default)]
pub(crate) struct RationalPoly {
    terms: BTreeMap<(usize, usize), BigRational>,
}

pub(crate) fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl RationalPoly {
    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::default();
        p.add_term(0, 0, c);
        p
    }

    pub fn int(c: i64) -> Self {
        Self::constant(rational(c, 1))
    }

    pub fn first() -> Self {
        let mut p = Self::default();
        p.add_term(1, 0, BigRational::one());
        p
    }

    pub fn second() -> Self {
        let mut p = Self::default();
        p.add_term(0, 1, BigRational::one());
        p
    }

    fn add_term(&mut self, i: usize, j: usize, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rational(-1, 1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &other.terms {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::default();
        for (&(i, j), a) in &self.terms {
            out.add_term(i, j, a * c);
        }
        out
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::int(1), |acc, _| acc.mul(self))
    }

    pub fn partial(&self, d: usize, e: usize) -> Self {
        let mut out = Self::default();
        for (&(i, j), c) in &self.terms {
            if i < d || j < e {
                continue;
            }
            let f = falling(i, d) * falling(j, e);
            out.add_term(i - d, j - e, c * f);
        }
        out
    }

    /// Fixes the first variable at `x`.
    pub fn at_first(&self, x: &BigRational) -> Self {
        let mut out = Self::default();
        for (&(i, j), c) in &self.terms {
            out.add_term(0, j, c * pow_rational(x, i));
        }
        out
    }

    /// Fixes the second variable at `x`.
    pub fn at_second(&self, x: &BigRational) -> Self {
        let mut out = Self::default();
        for (&(i, j), c) in &self.terms {
            out.add_term(i, 0, c * pow_rational(x, j));
        }
        out
    }

    pub fn swap(&self) -> Self {
        let mut out = Self::default();
        for (&(i, j), c) in &self.terms {
            out.add_term(j, i, c.clone());
        }
        out
    }

    /// Value of a polynomial with no free variables left.
    pub fn constant_value(&self) -> BigRational {
        self.terms.get(&(0, 0)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn to_f64(&self) -> BivariatePoly {
        let rows = self.terms.keys().map(|k| k.0 + 1).max().unwrap_or(1);
        let cols = self.terms.keys().map(|k| k.1 + 1).max().unwrap_or(1);
        let mut coeffs = vec![vec![0.0; cols]; rows];
        for (&(i, j), c) in &self.terms {
            coeffs[i][j] = c.to_f64().unwrap_or(f64::NAN);
        }
        BivariatePoly::new(coeffs)
    }
}

fn falling(n: usize, k: usize) -> BigRational {
    ((n + 1 - k)..=n).fold(BigRational::one(), |acc, v| acc * rational(v as i64, 1))
}

fn pow_rational(x: &BigRational, n: usize) -> BigRational {
    (0..n).fold(BigRational::one(), |acc, _| acc * x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn evaluation_and_partials() {
        // p = 1 + 2 m M² - m³
        let p = BivariatePoly::new(vec![vec![1.0], vec![0.0, 0.0, 2.0], vec![], vec![-1.0]]);
        assert_abs_diff_eq!(p.eval(0.5, 2.0), 1.0 + 4.0 - 0.125, epsilon = 1e-15);
        let q = p.partial(1, 1); // 4 M
        assert_abs_diff_eq!(q.eval(0.3, 2.0), 8.0, epsilon = 1e-15);
        let row = p.row_at_first(0.5);
        assert_abs_diff_eq!(horner(&row, 2.0), p.eval(0.5, 2.0), epsilon = 1e-15);
        let col = p.column_at_second(2.0);
        assert_abs_diff_eq!(horner(&col, 0.5), p.eval(0.5, 2.0), epsilon = 1e-15);
    }

    #[test]
    fn rational_algebra_is_exact() {
        let m = RationalPoly::first();
        let big = RationalPoly::second();
        let diff = big.sub(&m);
        let cube = diff.pow(3);
        // (M - m)³ at m = 1/3, M = 1 is 8/27
        let v = cube.at_first(&rational(1, 3)).at_second(&rational(1, 1)).constant_value();
        assert_eq!(v, rational(8, 27));
        assert_eq!(cube.partial(0, 3).constant_value(), rational(6, 1));
        assert_eq!(cube.swap().add(&cube).partial(1, 2).constant_value(), rational(0, 1));
    }
}
