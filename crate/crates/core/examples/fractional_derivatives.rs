//! Caputo derivatives three ways: closed form for monomials, exact for a
//! piecewise polynomial, and adaptive quadrature for a general function.

use rkhs_kse::fracalc::{caputo_monomial, caputo_numeric, caputo_piecewise, FractionalOrder, PiecewisePolynomial};

fn main() -> rkhs_kse::Result<()> {
    let t = 0.6;
    println!("{:>6} {:>4} {:>20} {:>20}", "α", "k", "closed form", "quadrature");
    for a in [0.25, 0.5, 0.75, 1.0] {
        let alpha = FractionalOrder::new(a)?;
        for k in 1..=3u32 {
            let exact = caputo_monomial(k, alpha, t)?;
            let numeric = caputo_numeric(|s| k as f64 * s.powi(k as i32 - 1), alpha, t, 1e-12)?;
            println!("{a:>6} {k:>4} {exact:>20.15} {numeric:>20.15}");
        }
    }

    // a C² spline whose third derivative jumps at s = 0.4
    let spline = PiecewisePolynomial::new(vec![0.0, 0.4, 1.0], vec![vec![0.0, 1.0, 2.0], vec![0.72, 2.6, 2.0, -1.5]])?;
    let alpha = FractionalOrder::new(0.5)?;
    for t in [0.2, 0.4, 0.8] {
        let exact = caputo_piecewise(&spline, alpha, t)?;
        let numeric = caputo_numeric(|s| spline.eval_deriv(s, 1).unwrap(), alpha, t, 1e-12)?;
        println!("spline  t = {t}: {exact:.15} vs {numeric:.15}");
    }

    // exp has no finite closed form here, only quadrature
    let e = caputo_numeric(f64::exp, alpha, 1.0, 1e-10)?;
    println!("ᶜD^½ eᵗ at t = 1: {e:.12}");
    Ok(())
}
