//! Adaptive quadrature for integrands carrying an algebraic end-point weight `(r - x)^β`.

use std::collections::HashMap;
use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex, OnceLock};

use gauss_quad::{FiniteAboveNegOneF64, GaussJacobi, GaussLegendre};

use crate::error::{Error, Result};

/// Nodes and weights on `[-1, 1]`.
#[derive(Debug)]
pub(crate) struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Rule {
    fn apply(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

type RuleCache = Mutex<HashMap<(usize, u64), Arc<Rule>>>;

fn cache() -> &'static RuleCache {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Gauss–Jacobi rule for the weight `(1 - y)^beta` (Gauss–Legendre when `beta == 0`).
pub(crate) fn right_weighted_rule(n: usize, beta: f64) -> Arc<Rule> {
    let key = (n, beta.to_bits());
    if let Some(rule) = cache().lock().unwrap().get(&key) {
        return rule.clone();
    }
    let degree = NonZeroUsize::new(n).expect("rule size must be positive");
    let (nodes, weights): (Vec<f64>, Vec<f64>) = if beta == 0.0 {
        GaussLegendre::new(degree).iter().map(|(x, w)| (*x, *w)).unzip()
    } else {
        let exponent = FiniteAboveNegOneF64::new(beta).expect("weight exponent must exceed -1");
        GaussJacobi::new(degree, exponent, FiniteAboveNegOneF64::default())
            .iter()
            .map(|(x, w)| (*x, *w))
            .unzip()
    };
    let rule = Arc::new(Rule { nodes, weights });
    cache().lock().unwrap().insert(key, rule.clone());
    rule
}

/// Fixed-order Gauss–Legendre integral of `f` over `[a, b]`.
pub(crate) fn gauss_legendre(f: impl FnMut(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let rule = right_weighted_rule(n, 0.0);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    let mut f = f;
    half * rule.apply(|y| f(mid + half * y))
}

const LOW: usize = 10;
const HIGH: usize = 20;

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

/// Integrates `f(x) · (end - x)^beta` over `[start, end]` to absolute accuracy `tol`.
///
/// Interior panels use Gauss–Legendre on the full integrand; the panel touching
/// `end` uses Gauss–Jacobi so the weight is integrated exactly. Panels are
/// bisected greedily by estimated error until the total estimate meets `tol`
/// or `max_evals` integrand evaluations have been spent.
pub(crate) fn integrate_right_weighted<F>(
    f: F,
    start: f64,
    end: f64,
    beta: f64,
    tol: f64,
    max_evals: usize,
) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    if end <= start {
        return Ok((0.0, 0.0));
    }
    let low_end = right_weighted_rule(LOW, beta);
    let high_end = right_weighted_rule(HIGH, beta);
    let low_mid = right_weighted_rule(LOW, 0.0);
    let high_mid = right_weighted_rule(HIGH, 0.0);

    let eval_panel = |lo: f64, hi: f64| -> Panel {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let (a, b) = if hi == end {
            let scale = half * half.powf(beta);
            let g = |y: f64| f(mid + half * y);
            (scale * low_end.apply(g), scale * high_end.apply(g))
        } else {
            let g = |y: f64| {
                let x = mid + half * y;
                f(x) * (end - x).powf(beta)
            };
            (half * low_mid.apply(g), half * high_mid.apply(g))
        };
        let error = (b - a).abs();
        Panel { lo, hi, value: b, error: if error.is_finite() { error } else { f64::INFINITY } }
    };

    let mut evals = LOW + HIGH;
    let mut panels = vec![eval_panel(start, end)];
    loop {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let bound: f64 = panels.iter().map(|p| p.error).sum();
        if bound <= tol {
            return Ok((total, bound));
        }
        if evals >= max_evals {
            return Err(Error::Accuracy { estimate: total, bound, tol });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.error.partial_cmp(&b.1.error).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap();
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.lo + p.hi);
        if mid <= p.lo || mid >= p.hi {
            return Err(Error::Accuracy { estimate: total, bound, tol });
        }
        panels.push(eval_panel(p.lo, mid));
        panels.push(eval_panel(mid, p.hi));
        evals += 2 * (LOW + HIGH);
    }
}
