use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{contract, Error, Result};
use crate::operator::SpaceTimeDomain;

/// Deterministic dense point sequences; every prefix of a longer set is the shorter set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scheme {
    /// Points of the dyadic grids `h = 2⁻ˡ` with `0 < x < 1`, `0 < s ≤ 1`, level by
    /// level; within a level each next point is the one farthest from all points
    /// taken so far (ties go to the earliest in `x`-major order).
    #[default]
    Maximin,
    /// Interior points of the dyadic grids, level by level, each level walked
    /// along anti-diagonals and skipping points of coarser levels.
    DiagonalGrid,
    /// Halton points in bases 2 (space) and 3 (time).
    Halton,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Maximin => "maximin",
            Scheme::DiagonalGrid => "diagonal",
            Scheme::Halton => "halton",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "maximin" => Ok(Scheme::Maximin),
            "diagonal" | "diagonal-grid" => Ok(Scheme::DiagonalGrid),
            "halton" => Ok(Scheme::Halton),
            other => Err(Error::Config(format!("unknown collocation scheme `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollocationSet {
    pub scheme: Scheme,
    pub domain: SpaceTimeDomain,
    /// Physical points `(ζᵢ, τᵢ)`.
    pub points: Vec<(f64, f64)>,
    /// The same points mapped to the unit square.
    pub unit: Vec<(f64, f64)>,
}

impl CollocationSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Builds a set from explicit unit-square points, all in `(0,1) × (0,1]`.
    pub fn from_unit_points(
        scheme: Scheme,
        domain: SpaceTimeDomain,
        unit: Vec<(f64, f64)>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        for &(x, s) in &unit {
            if !(x > 0.0 && x < 1.0 && s > 0.0 && s <= 1.0) {
                return Err(contract(format!(
                    "collocation point ({x}, {s}) touches the boundary or initial line"
                )));
            }
            if !seen.insert((x.to_bits(), s.to_bits())) {
                return Err(contract(format!("collocation point ({x}, {s}) is repeated")));
            }
        }
        let lam = domain.width();
        let points = unit.iter().map(|&(x, s)| (domain.a + lam * x, domain.t_end * s)).collect();
        Ok(Self { scheme, domain, points, unit })
    }

    /// Largest distance from a point of the unit square to the nearest collocation
    /// point, estimated on a `resolution × resolution` probe grid including the edges.
    pub fn fill_distance(&self, resolution: usize) -> f64 {
        let r = resolution.max(2) - 1;
        let mut worst: f64 = 0.0;
        for i in 0..=r {
            for j in 0..=r {
                let (x, s) = (i as f64 / r as f64, j as f64 / r as f64);
                let nearest = self
                    .unit
                    .iter()
                    .map(|&(px, ps)| (px - x).hypot(ps - s))
                    .fold(f64::INFINITY, f64::min);
                worst = worst.max(nearest);
            }
        }
        worst
    }
}

/// First `n` points of `scheme` inside `domain`.
pub fn make_collocation(n: usize, scheme: Scheme, domain: SpaceTimeDomain) -> Result<CollocationSet> {
    if n == 0 {
        return Err(contract("a collocation set needs at least one point"));
    }
    let unit = match scheme {
        Scheme::Maximin => maximin_grid(n),
        Scheme::DiagonalGrid => diagonal_grid(n),
        Scheme::Halton => (1..=n as u64).map(|k| (radical_inverse(k, 2), radical_inverse(k, 3))).collect(),
    };
    CollocationSet::from_unit_points(scheme, domain, unit)
}

fn maximin_grid(n: usize) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(n);
    let mut level = 1u32;
    while out.len() < n {
        let m = 1u64 << level;
        let mut candidates: Vec<(f64, f64)> = Vec::new();
        for i in 1..m {
            for j in 1..=m {
                // coarser levels already hold the points with both indices even
                if level > 1 && i % 2 == 0 && j % 2 == 0 {
                    continue;
                }
                candidates.push((i as f64 / m as f64, j as f64 / m as f64));
            }
        }
        while !candidates.is_empty() && out.len() < n {
            let mut best = 0;
            let mut best_gap = f64::NEG_INFINITY;
            for (k, &(x, s)) in candidates.iter().enumerate() {
                let gap = out
                    .iter()
                    .map(|&(px, ps)| (px - x).hypot(ps - s))
                    .fold(f64::INFINITY, f64::min);
                if gap > best_gap + 1e-12 {
                    best_gap = gap;
                    best = k;
                }
            }
            out.push(candidates.remove(best));
        }
        level += 1;
    }
    out
}

fn diagonal_grid(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    let mut level = 1u32;
    while out.len() < n {
        let m = 1u64 << level;
        for diag in 2..=2 * (m - 1) {
            let lo = diag.saturating_sub(m - 1).max(1);
            let hi = (diag - 1).min(m - 1);
            for i in lo..=hi {
                let j = diag - i;
                // points with both indices even already appeared on a coarser grid
                if level > 1 && i % 2 == 0 && j % 2 == 0 {
                    continue;
                }
                out.push((i as f64 / m as f64, j as f64 / m as f64));
                if out.len() == n {
                    return out;
                }
            }
        }
        level += 1;
    }
    out
}

/// Van der Corput radical inverse of `k` in `base`.
pub fn radical_inverse(mut k: u64, base: u64) -> f64 {
    let mut inv_base = 1.0 / base as f64;
    let mut result = 0.0;
    while k > 0 {
        result += (k % base) as f64 * inv_base;
        k /= base;
        inv_base /= base as f64;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coarsest_diagonal_point_is_the_centre() {
        let set = make_collocation(1, Scheme::DiagonalGrid, SpaceTimeDomain::unit()).unwrap();
        assert_eq!(set.points, vec![(0.5, 0.5)]);
    }

    #[test]
    fn second_level_fills_the_quarter_grid() {
        let set = make_collocation(9, Scheme::DiagonalGrid, SpaceTimeDomain::unit()).unwrap();
        assert_eq!(set.unit[1], (0.25, 0.25));
        assert_eq!(set.unit[2], (0.25, 0.5));
        assert_eq!(set.unit[3], (0.5, 0.25));
        let mut all: Vec<_> = set.unit.iter().map(|&(x, s)| ((x * 4.0) as u32, (s * 4.0) as u32)).collect();
        all.sort();
        let expected: Vec<_> = (1..4).flat_map(|i| (1..4).map(move |j| (i, j))).collect();
        assert_eq!(all, expected);
    }

    #[test]
    fn maximin_starts_from_the_coarse_grid() {
        let set = make_collocation(12, Scheme::Maximin, SpaceTimeDomain::unit()).unwrap();
        assert_eq!(&set.unit[..2], &[(0.5, 0.5), (0.5, 1.0)]);
        assert_eq!(set.unit[2], (0.25, 0.25));
        // level 2 adds the 10 points of the quarter grid missing from level 1
        let longer = make_collocation(20, Scheme::Maximin, SpaceTimeDomain::unit()).unwrap();
        assert_eq!(&longer.unit[..12], &set.unit[..]);
        assert!(longer.unit[..12].iter().all(|&(x, s)| (x * 4.0).fract() == 0.0 && (s * 4.0).fract() == 0.0));
    }

    #[test]
    fn halton_prefix_and_values() {
        let set = make_collocation(4, Scheme::Halton, SpaceTimeDomain::unit()).unwrap();
        assert_eq!(set.unit, vec![(0.5, 1.0 / 3.0), (0.25, 2.0 / 3.0), (0.75, 1.0 / 9.0), (0.125, 4.0 / 9.0)]);
    }

    #[test]
    fn maps_into_the_physical_domain() {
        let dom = SpaceTimeDomain::new(-2.0, 2.0, 3.0).unwrap();
        let set = make_collocation(1, Scheme::DiagonalGrid, dom).unwrap();
        assert_eq!(set.points, vec![(0.0, 1.5)]);
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(make_collocation(0, Scheme::Halton, SpaceTimeDomain::unit()).is_err());
        let bad = vec![(0.5, 0.5), (0.5, 0.5)];
        assert!(CollocationSet::from_unit_points(Scheme::Halton, SpaceTimeDomain::unit(), bad).is_err());
        let edge = vec![(0.0, 0.5)];
        assert!(CollocationSet::from_unit_points(Scheme::Halton, SpaceTimeDomain::unit(), edge).is_err());
        assert_eq!("diagonal".parse::<Scheme>().unwrap(), Scheme::DiagonalGrid);
        assert_eq!(Scheme::default().to_string().parse::<Scheme>().unwrap(), Scheme::Maximin);
        assert!("grid".parse::<Scheme>().is_err());
    }
}
