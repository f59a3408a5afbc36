//! `key = value` problem files.
//!
//! Recognized keys are `alpha, beta, gamma, mu, nu, a, b, T`; anything missing
//! keeps the default configuration. Values are decimals or fractions such as
//! `-16/3`. Blank lines and `#` comments are ignored.

use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fracalc::FractionalOrder;
use crate::operator::{KseParams, KseProblem, SpaceTimeDomain};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemConfig {
    pub alpha: f64,
    pub params: KseParams,
    pub domain: SpaceTimeDomain,
}

impl Default for ProblemConfig {
    fn default() -> Self {
        Self { alpha: 0.5, params: KseParams::benchmark(), domain: SpaceTimeDomain::unit() }
    }
}

impl ProblemConfig {
    pub fn load(path: &Path) -> Result<Self> {
        std::fs::read_to_string(path)?.parse()
    }

    pub fn problem(&self) -> Result<KseProblem> {
        let domain = SpaceTimeDomain::new(self.domain.a, self.domain.b, self.domain.t_end)?;
        KseProblem::new(FractionalOrder::new(self.alpha)?, self.params, domain)
    }
}

impl FromStr for ProblemConfig {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", k + 1)))?;
            let v = parse_number(value.trim())
                .map_err(|e| Error::Config(format!("line {}: {e}", k + 1)))?;
            match key.trim() {
                "alpha" => cfg.alpha = v,
                "beta" => cfg.params.beta = v,
                "gamma" => cfg.params.gamma = v,
                "mu" => cfg.params.mu = v,
                "nu" => cfg.params.nu = v,
                "a" => cfg.domain.a = v,
                "b" => cfg.domain.b = v,
                "T" => cfg.domain.t_end = v,
                other => return Err(Error::Config(format!("line {}: unknown key `{other}`", k + 1))),
            }
        }
        Ok(cfg)
    }
}

/// A decimal or a quotient `p/q` of two decimals.
pub fn parse_number(s: &str) -> std::result::Result<f64, String> {
    let one = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("`{s}` is not a number"));
    let v = match s.split_once('/') {
        Some((p, q)) => {
            let q = one(q)?;
            if q == 0.0 {
                return Err(format!("`{s}` divides by zero"));
            }
            one(p)? / q
        }
        None => one(s)?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_benchmark_file() {
        let cfg: ProblemConfig = "# benchmark run\nalpha = 0.75\nbeta=-4\ngamma = 0.1\nmu = -16/3\nnu = 0.75\na = 0\nb = 1\nT = 1\n"
            .parse()
            .unwrap();
        assert_eq!(cfg.alpha, 0.75);
        assert_eq!(cfg.params, KseParams::benchmark());
        assert_eq!(cfg.domain, SpaceTimeDomain::unit());
        assert!(cfg.problem().is_ok());
    }

    #[test]
    fn rejects_garbage() {
        assert!("alpha 0.5".parse::<ProblemConfig>().is_err());
        assert!("delta = 1".parse::<ProblemConfig>().is_err());
        assert!("mu = 1/0".parse::<ProblemConfig>().is_err());
        assert!("nu = x".parse::<ProblemConfig>().is_err());
        let bad: ProblemConfig = "alpha = 1.5".parse().unwrap();
        assert!(bad.problem().is_err());
        let empty: ProblemConfig = "b = 0".parse().unwrap();
        assert!(empty.problem().is_err());
    }
}
