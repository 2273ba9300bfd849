use std::time::Duration;

use crate::error::{Error, Result};

/// Size budgets for the exhaustive parts of the library.
#[derive(Debug, Clone, PartialEq)]
pub struct Limits {
    /// Largest graph for maximal independent set enumeration.
    pub mis_vertices: usize,
    /// Largest materialized OR power.
    pub power_vertices: usize,
    /// Largest graph handed to the exact colorer.
    pub exact_vertices: usize,
    pub exact_timeout: Duration,
    /// Largest graph for brute-force chromatic entropy.
    pub entropy_vertices: usize,
    /// Largest dense matrix for the eigensolver.
    pub dense_dimension: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            mis_vertices: 24,
            power_vertices: 10_000,
            exact_vertices: 64,
            exact_timeout: Duration::from_secs(60),
            entropy_vertices: 12,
            dense_dimension: 10_000,
        }
    }
}

impl Limits {
    /// Parses an override string: either one integer applied to every vertex
    /// budget, or comma separated `key=value` pairs.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Ok(self);
        }
        if let Ok(n) = spec.parse::<usize>() {
            self.mis_vertices = n;
            self.power_vertices = n;
            self.exact_vertices = n;
            self.entropy_vertices = n;
            self.dense_dimension = n;
            return Ok(self);
        }
        for part in spec.split(',') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("bad guard override {part:?}")))?;
            let v: u64 = v
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("bad guard value {v:?}")))?;
            match k.trim() {
                "mis" => self.mis_vertices = v as usize,
                "power" => self.power_vertices = v as usize,
                "exact" => self.exact_vertices = v as usize,
                "timeout" => self.exact_timeout = Duration::from_secs(v),
                "entropy" => self.entropy_vertices = v as usize,
                "dense" => self.dense_dimension = v as usize,
                other => return Err(Error::invalid(format!("unknown guard key {other:?}"))),
            }
        }
        Ok(self)
    }
}

pub(crate) fn check(what: &'static str, needed: u128, budget: usize) -> Result<()> {
    if needed > budget as u128 {
        Err(Error::Guard {
            what,
            needed,
            budget: budget as u128,
        })
    } else {
        Ok(())
    }
}
