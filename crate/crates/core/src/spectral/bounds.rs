use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{adjacency, gershgorin, power_spectrum, smallest_eig_lower_bounds, GershgorinMode};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;
use crate::product::{constant_tuple_degree, or_power, power_edge_count};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundVariant {
    /// Hoffman and Wilf on the materialized power.
    HoffmanDirect,
    /// Cycles only: exact `λ_1`, smallest eigenvalue from Hong or Brigham.
    CyclePower,
    /// Degrees of the power and the Das bound.
    Degree,
    /// `λ_1(G) + d_max·Σ_{j=1}^{n-1} V^j` in place of `λ_1(G^n)`.
    General,
    /// A window for `λ_1(G^n)` itself.
    Lambda1Window,
    /// `λ_1(A_gr) + λ_1(A_fc)` in place of `λ_1(G^n)`, Hong for `λ_min`.
    GctSplit,
}

impl BoundVariant {
    pub const ALL: [BoundVariant; 6] = [
        BoundVariant::HoffmanDirect,
        BoundVariant::CyclePower,
        BoundVariant::Degree,
        BoundVariant::General,
        BoundVariant::Lambda1Window,
        BoundVariant::GctSplit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundVariant::HoffmanDirect => "hoffman-direct",
            BoundVariant::CyclePower => "cycle-power",
            BoundVariant::Degree => "degree",
            BoundVariant::General => "general",
            BoundVariant::Lambda1Window => "lambda1-window",
            BoundVariant::GctSplit => "gct-split",
        }
    }
}

impl fmt::Display for BoundVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BoundVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown bound variant {s:?}")))
    }
}

/// What a report bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Chromatic,
    Lambda1,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub variant: BoundVariant,
    pub quantity: Quantity,
    pub n: usize,
    pub lower: f64,
    pub upper: f64,
    /// Reference value once known, and whether it lies in `[lower, upper]`.
    pub exact: Option<f64>,
    pub holds: Option<bool>,
    /// Where each input came from.
    pub provenance: Vec<String>,
    /// Lambda1 window only: `[d_avg·V^{n-1}, d_max·Σ_{j<n} V^j]`.
    pub degree_envelope: Option<(f64, f64)>,
    /// Lambda1 window only: block Gershgorin hull, when the power fits.
    pub block_envelope: Option<(f64, f64)>,
}

impl BoundReport {
    fn new(variant: BoundVariant, quantity: Quantity, n: usize, lower: f64, upper: f64) -> Self {
        BoundReport {
            variant,
            quantity,
            n,
            lower,
            upper,
            exact: None,
            holds: None,
            provenance: Vec::new(),
            degree_envelope: None,
            block_envelope: None,
        }
    }

    /// Records the reference value and checks the sandwich.
    pub fn with_exact(mut self, x: f64, tol: f64) -> Self {
        self.exact = Some(x);
        self.holds = Some(self.lower - tol <= x && x <= self.upper + tol);
        self
    }
}

fn floor_plus_one(x: f64) -> f64 {
    (x + 1e-9).floor() + 1.0
}

/// `1 - λ_1 / λ_min`, which is 1 when there are no edges.
fn hoffman(lambda1: f64, lambda_min: f64) -> f64 {
    if lambda_min < -1e-12 {
        1.0 - lambda1 / lambda_min
    } else {
        1.0
    }
}

/// `Σ_{j=lo}^{hi} V^j` as a float.
fn geometric(v: usize, lo: usize, hi: usize) -> f64 {
    (lo..=hi).map(|j| (v as f64).powi(j as i32)).sum()
}

/// `λ_1(A_gr) + λ_1(A_fc)` for the `n`-fold power: the diagonal blocks are
/// copies of `G^{n-1}` and the remainder is `A(G) ⊗ J_{V^{n-1}}`.
fn split_lambda1(g: &Graph, n: usize, limits: &Limits, prov: &mut Vec<String>) -> Result<f64> {
    let v = g.vertex_count();
    let base = power_spectrum(g, 1, limits)?.largest();
    let gr = if n == 1 {
        0.0
    } else {
        power_spectrum(g, n - 1, limits)?.largest()
    };
    prov.push(format!("lambda1(A_gr) = lambda1(G^{}) by solver", n - 1));
    prov.push("lambda1(A_fc) = lambda1(G)*V^(n-1)".into());
    Ok(gr + base * (v as f64).powi(n as i32 - 1))
}

pub fn chromatic_bounds_spectral(g: &Graph, n: usize, variant: BoundVariant, limits: &Limits) -> Result<BoundReport> {
    if n == 0 {
        return Err(Error::invalid("power must be at least 1"));
    }
    let v = g.vertex_count();
    if v == 0 {
        return Err(Error::invalid("empty graph"));
    }
    let vn = (v as f64).powi(n as i32);
    let en = power_edge_count(v, g.edge_count(), n) as f64;
    let s = geometric(v, 0, n - 1);
    let mut prov = Vec::new();
    let report = match variant {
        BoundVariant::HoffmanDirect => {
            let sp = power_spectrum(g, n, limits)?;
            prov.push("spectrum of the materialized power".into());
            BoundReport::new(
                variant,
                Quantity::Chromatic,
                n,
                hoffman(sp.largest(), sp.smallest()),
                floor_plus_one(sp.largest()),
            )
        }
        BoundVariant::CyclePower => {
            if v < 3 || g.regular_degree() != Some(2) || !g.is_connected() {
                return Err(Error::invalid("cycle-power bounds need a cycle"));
            }
            let lambda1 = constant_tuple_degree(2, v, n) as f64;
            let b = smallest_eig_lower_bounds(vn, en, lambda1, lambda1)?;
            prov.push("lambda1 closed form; lambda_min from max(hong, brigham)".into());
            BoundReport::new(
                variant,
                Quantity::Chromatic,
                n,
                hoffman(lambda1, b.hong.max(b.brigham)),
                lambda1 + 1.0,
            )
        }
        BoundVariant::Degree => {
            let (dmin, dmax) = (g.min_degree() as f64 * s, g.max_degree() as f64 * s);
            let davg = 2.0 * en / vn;
            let das = smallest_eig_lower_bounds(vn, en, dmin, dmax)?.das;
            prov.push("power degrees closed form; lambda_min from das".into());
            BoundReport::new(variant, Quantity::Chromatic, n, hoffman(davg, das), dmax + 1.0)
        }
        BoundVariant::General => {
            let lambda1 = power_spectrum(g, 1, limits)?.largest();
            let num = lambda1 + g.max_degree() as f64 * geometric(v, 1, n - 1);
            let lambda_min = match power_spectrum(g, n, limits) {
                Ok(sp) => {
                    prov.push("lambda_min of the materialized power".into());
                    sp.smallest()
                }
                Err(e) if e.is_guard() => {
                    prov.push("lambda_min replaced by the hong bound (bound on bound)".into());
                    smallest_eig_lower_bounds(vn, en, 0.0, 0.0)?.hong
                }
                Err(e) => return Err(e),
            };
            BoundReport::new(variant, Quantity::Chromatic, n, hoffman(num, lambda_min), floor_plus_one(num))
        }
        BoundVariant::GctSplit => {
            let sum = split_lambda1(g, n, limits, &mut prov)?;
            let hong = smallest_eig_lower_bounds(vn, en, 0.0, 0.0)?.hong;
            BoundReport::new(variant, Quantity::Chromatic, n, hoffman(sum, hong), floor_plus_one(sum))
        }
        BoundVariant::Lambda1Window => {
            let sum = split_lambda1(g, n, limits, &mut prov)?;
            let width = (v as f64).powi(n as i32 - 1);
            let lower = g.average_degree() * width;
            let mut r = BoundReport::new(variant, Quantity::Lambda1, n, lower, floor_plus_one(sum));
            r.degree_envelope = Some((lower, g.max_degree() as f64 * s));
            match or_power(g, n, limits) {
                Ok(p) => {
                    let block = if n == 1 { GershgorinMode::Scalar } else { GershgorinMode::Block(v.pow(n as u32 - 1)) };
                    r.block_envelope = Some(gershgorin(&adjacency(&p.graph), block)?.envelope);
                }
                Err(e) if e.is_guard() => prov.push("block envelope skipped: power too large".into()),
                Err(e) => return Err(e),
            }
            r
        }
    };
    Ok(BoundReport {
        provenance: prov,
        ..report
    })
}
