//! Neighbourhood expansion of OR powers and its spectral bounds.
//!
//! Two rates are reported for a subset `Y`:
//! - exclusive, `|N(Y) \ Y| / |Y|`, the definition used for the rate itself;
//! - inclusive, `|Γ(Y)| / |Y|` with `Γ(Y)` every vertex adjacent to some
//!   member of `Y`, members included.
//!
//! The Tanner-type lower bounds control the inclusive count; the exclusive
//! rate can fall below them (a clique `Y` has no outside neighbours left
//! once `Y` is everything). Upper bounds are compared with the exclusive
//! rate.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::limits::{self, Limits};
use crate::product::{constant_tuple_degree, or_power};
use crate::rational::{self, Q};
use crate::spectral::{adjacency_spectrum, regular_power_spectrum, smallest_eig_lower_bounds};

fn check_subset(g: &Graph, y: &VertexSet) -> Result<()> {
    if y.universe() != g.vertex_count() {
        return Err(Error::invalid("subset universe does not match the graph"));
    }
    if y.is_empty() {
        return Err(Error::invalid("subset must be nonempty"));
    }
    Ok(())
}

fn reach(g: &Graph, y: &VertexSet) -> VertexSet {
    y.iter()
        .fold(VertexSet::new(g.vertex_count()), |acc, u| acc.union(g.neighbors(u)))
}

/// `|N(Y)| / |Y|` with `N(Y)` the outside neighbours of `Y`.
pub fn expansion_rate(g: &Graph, y: &VertexSet) -> Result<Q> {
    check_subset(g, y)?;
    let n = reach(g, y).difference(y).count();
    Ok(rational::q(n as i64, y.count() as i64))
}

/// `|Γ(Y)| / |Y|`, members of `Y` with a neighbour in `Y` included.
pub fn inclusive_rate(g: &Graph, y: &VertexSet) -> Result<Q> {
    check_subset(g, y)?;
    Ok(rational::q(reach(g, y).count() as i64, y.count() as i64))
}

/// `D² / (Λ² + (D² - Λ²)·|Y|/N)`.
pub fn tanner_bound(degree: f64, lambda: f64, y: f64, total: f64) -> f64 {
    let (d2, l2) = (degree * degree, lambda * lambda);
    d2 / (l2 + (d2 - l2) * y / total)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase", tag = "family")]
pub enum ExpansionFamily {
    /// A `d`-regular base graph; needs `Λ` of its power.
    Regular { d: usize },
    Complete,
    /// A cycle base graph; `Λ` defaults to `|λ_min|` of the cycle power.
    Cycle,
    /// Any base graph: the cycle and complete bounds of the same size.
    General,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpansionBounds {
    pub v: usize,
    pub n: usize,
    pub subset_size: usize,
    pub tanner_lower: Option<f64>,
    pub cycle_lower: Option<f64>,
    pub complete_upper: f64,
    /// `Λ` used by the lower bound that was evaluated.
    pub lambda: Option<f64>,
    /// Set when `Λ` came from the Hong bound instead of a spectrum.
    pub bound_on_bound: bool,
}

/// `Λ(C_V^n) = |λ_min|` from the closed-form spectrum, or the Hong
/// magnitude when even the eigenvalue list is too long.
fn cycle_power_lambda(v: usize, n: usize, limits: &Limits) -> Result<(f64, bool)> {
    let c = Graph::cycle(v)?;
    match regular_power_spectrum(&c, n, limits) {
        Ok(s) => Ok((s.smallest().abs(), false)),
        Err(e) if e.is_guard() => {
            let vn = (v as f64).powi(n as i32);
            Ok((smallest_eig_lower_bounds(vn, 0.0, 0.0, 0.0)?.hong.abs(), true))
        }
        Err(e) => Err(e),
    }
}

pub fn expansion_bounds(
    family: ExpansionFamily,
    v: usize,
    n: usize,
    subset_size: usize,
    lambda: Option<f64>,
    limits: &Limits,
) -> Result<ExpansionBounds> {
    if n == 0 || v < 2 {
        return Err(Error::invalid("need V >= 2 and n >= 1"));
    }
    let total = (v as f64).powi(n as i32);
    if subset_size == 0 || subset_size as f64 > total {
        return Err(Error::invalid("subset size out of range"));
    }
    let y = subset_size as f64;
    let complete_upper = tanner_bound(total - 1.0, 1.0, y, total);
    let mut out = ExpansionBounds {
        v,
        n,
        subset_size,
        tanner_lower: None,
        cycle_lower: None,
        complete_upper,
        lambda: None,
        bound_on_bound: false,
    };
    let cycle_degree = constant_tuple_degree(2, v, n) as f64;
    match family {
        ExpansionFamily::Regular { d } => {
            let lambda = lambda.ok_or_else(|| Error::invalid("regular family needs Λ of the power"))?;
            let degree = constant_tuple_degree(d, v, n) as f64;
            out.tanner_lower = Some(tanner_bound(degree, lambda, y, total));
            out.lambda = Some(lambda);
        }
        ExpansionFamily::Complete => {
            out.lambda = Some(1.0);
        }
        ExpansionFamily::Cycle | ExpansionFamily::General => {
            if v < 3 {
                return Err(Error::invalid("cycle bound needs V >= 3"));
            }
            let (lambda, flagged) = match lambda {
                Some(l) => (l, false),
                None => cycle_power_lambda(v, n, limits)?,
            };
            out.cycle_lower = Some(tanner_bound(cycle_degree, lambda, y, total));
            out.lambda = Some(lambda);
            out.bound_on_bound = flagged;
        }
    }
    Ok(out)
}

/// Whether `g` has a spanning cycle, by the subset DP.
pub fn has_hamiltonian_cycle(g: &Graph, limits: &Limits) -> Result<bool> {
    let v = g.vertex_count();
    limits::check("Hamiltonian cycle search", v as u128, limits.mis_vertices)?;
    if v < 3 {
        return Ok(false);
    }
    // reach[mask] = set of end vertices of paths from 0 covering `mask`.
    let full = (1usize << v) - 1;
    let mut ends = vec![0u32; 1 << v];
    ends[1] = 1;
    for mask in 1..=full {
        if mask & 1 == 0 || ends[mask] == 0 {
            continue;
        }
        for u in 0..v {
            if ends[mask] >> u & 1 == 0 {
                continue;
            }
            for w in g.neighbors(u).iter() {
                if mask >> w & 1 == 0 {
                    ends[mask | 1 << w] |= 1 << w;
                }
            }
        }
    }
    Ok(g.neighbors(0).iter().any(|w| ends[full] >> w & 1 == 1))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpansionReport {
    pub subset: Vec<usize>,
    pub subset_size: usize,
    pub neighborhood: usize,
    pub inclusive_neighborhood: usize,
    pub rate: String,
    pub rate_value: f64,
    pub inclusive_rate: String,
    pub inclusive_rate_value: f64,
    pub bounds: ExpansionBounds,
    /// Lower bounds hold against the inclusive rate and the upper bound
    /// against the exclusive rate.
    pub consistent: bool,
}

/// Measures a subset of the `n`-fold power and evaluates every bound that
/// applies to the base graph: Tanner when it is regular, the cycle bound
/// when it has a Hamiltonian cycle, and always the complete-graph bound.
pub fn expansion_report(g: &Graph, n: usize, y: &VertexSet, limits: &Limits) -> Result<ExpansionReport> {
    let p = or_power(g, n, limits)?;
    let exclusive = expansion_rate(&p.graph, y)?;
    let inclusive = inclusive_rate(&p.graph, y)?;
    let v = g.vertex_count();
    let size = y.count();
    let family = if v >= 3 && has_hamiltonian_cycle(g, limits)? {
        ExpansionFamily::General
    } else {
        ExpansionFamily::Complete
    };
    let mut bounds = expansion_bounds(family, v, n, size, None, limits)?;
    if let Some(d) = g.regular_degree() {
        let lambda = adjacency_spectrum(&p.graph, limits)?.lambda();
        let t = expansion_bounds(ExpansionFamily::Regular { d }, v, n, size, Some(lambda), limits)?;
        bounds.tanner_lower = t.tanner_lower;
        if bounds.lambda.is_none() {
            bounds.lambda = t.lambda;
        }
    }
    let (ex, inc) = (rational::to_f64(&exclusive), rational::to_f64(&inclusive));
    let tol = 1e-9;
    let consistent = bounds.tanner_lower.is_none_or(|b| b <= inc + tol)
        && bounds.cycle_lower.is_none_or(|b| b <= inc + tol)
        && ex <= bounds.complete_upper + tol;
    let reach_all = reach(&p.graph, y);
    Ok(ExpansionReport {
        subset: y.to_vec(),
        subset_size: size,
        neighborhood: reach_all.difference(y).count(),
        inclusive_neighborhood: reach_all.count(),
        rate: rational::format(&exclusive),
        rate_value: ex,
        inclusive_rate: rational::format(&inclusive),
        inclusive_rate_value: inc,
        bounds,
        consistent,
    })
}

/// `size` distinct vertices out of `universe`, sorted, from a seeded stream.
pub fn sample_subset(universe: usize, size: usize, seed: u64) -> Result<VertexSet> {
    if size == 0 || size > universe {
        return Err(Error::invalid("sample size out of range"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut members = sample(&mut rng, universe, size).into_vec();
    members.sort_unstable();
    VertexSet::from_members(universe, &members)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LambdaRelation {
    pub n: usize,
    pub block: usize,
    /// `λ_1` of the block's induced sub-graph.
    pub lhs: f64,
    /// `λ_2(A^n) + (deg - λ_2(A^n)) / V`.
    pub rhs: f64,
    pub lambda2: f64,
    pub degree: f64,
    pub holds: bool,
}

/// Compares `λ_1` of block `l` of a regular power with the second
/// eigenvalue of the whole power, the block taking a `1/V` share.
pub fn induced_lambda_relation_check(g: &Graph, n: usize, l: usize, limits: &Limits) -> Result<LambdaRelation> {
    let d = g
        .regular_degree()
        .ok_or_else(|| Error::OutOfScope("the relation is stated for regular graphs".into()))?;
    let p = or_power(g, n, limits)?;
    let block = p.subgraph_view(l)?;
    let lhs = adjacency_spectrum(&block, limits)?.largest();
    let lambda2 = adjacency_spectrum(&p.graph, limits)?.second();
    let degree = constant_tuple_degree(d, g.vertex_count(), n) as f64;
    let rhs = lambda2 + (degree - lambda2) / g.vertex_count() as f64;
    Ok(LambdaRelation {
        n,
        block: l,
        lhs,
        rhs,
        lambda2,
        degree,
        holds: lhs <= rhs + 1e-9,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::arb_graph;
    use crate::rational::q;
    use proptest::prelude::*;

    fn set(v: usize, m: &[usize]) -> VertexSet {
        VertexSet::from_members(v, m).unwrap()
    }

    #[test]
    fn rates_by_hand() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(expansion_rate(&c5, &set(5, &[0])).unwrap(), q(2, 1));
        assert_eq!(expansion_rate(&c5, &set(5, &[0, 1])).unwrap(), q(1, 1));
        assert_eq!(inclusive_rate(&c5, &set(5, &[0, 1])).unwrap(), q(2, 1));
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(expansion_rate(&k5, &set(5, &[3])).unwrap(), q(4, 1));
        assert!(expansion_rate(&c5, &VertexSet::new(5)).is_err());
    }

    #[test]
    fn bound_values() {
        let l = Limits::default();
        let k = expansion_bounds(ExpansionFamily::Complete, 5, 1, 1, None, &l).unwrap();
        assert!((k.complete_upper - 4.0).abs() < 1e-12);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let c = expansion_bounds(ExpansionFamily::Regular { d: 2 }, 5, 1, 1, Some(phi), &l).unwrap();
        assert!((c.tanner_lower.unwrap() - 1.382).abs() < 1e-3);
        let c2 = expansion_bounds(ExpansionFamily::Cycle, 5, 2, 1, None, &l).unwrap();
        assert!((c2.lambda.unwrap() - 6.0902).abs() < 1e-3);
        assert!((c2.cycle_lower.unwrap() - 3.48).abs() < 5e-3);
        assert!(!c2.bound_on_bound);
        let small = Limits {
            power_vertices: 10,
            ..Limits::default()
        };
        let c3 = expansion_bounds(ExpansionFamily::Cycle, 5, 2, 1, None, &small).unwrap();
        assert!(c3.bound_on_bound);
        assert!(c3.cycle_lower.unwrap() <= c2.cycle_lower.unwrap());
        assert!(expansion_bounds(ExpansionFamily::Regular { d: 2 }, 5, 1, 1, None, &l).is_err());
    }

    #[test]
    fn complete_lambda_is_one() {
        let s = adjacency_spectrum(&Graph::complete(6).unwrap(), &Limits::default()).unwrap();
        assert!((s.lambda() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn lower_bound_shrinks_with_subset() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let l = Limits::default();
        let vals: Vec<f64> = (1..5)
            .map(|y| {
                expansion_bounds(ExpansionFamily::Regular { d: 2 }, 5, 1, y, Some(phi), &l)
                    .unwrap()
                    .tanner_lower
                    .unwrap()
            })
            .collect();
        assert!(vals.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn pentagon_square_report() {
        let l = Limits::default();
        let r = expansion_report(&Graph::cycle(5).unwrap(), 2, &set(25, &[0]), &l).unwrap();
        assert_eq!(r.rate, "12");
        assert!(r.consistent);
        assert!((r.bounds.cycle_lower.unwrap() - 3.48).abs() < 5e-3);
    }

    #[test]
    fn hamiltonian() {
        let l = Limits::default();
        assert!(has_hamiltonian_cycle(&Graph::cycle(6).unwrap(), &l).unwrap());
        assert!(has_hamiltonian_cycle(&Graph::prism(), &l).unwrap());
        assert!(!has_hamiltonian_cycle(&Graph::path(5).unwrap(), &l).unwrap());
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!has_hamiltonian_cycle(&star, &l).unwrap());
    }

    #[test]
    fn lambda_relation() {
        let l = Limits::default();
        let r = induced_lambda_relation_check(&Graph::cycle(5).unwrap(), 2, 0, &l).unwrap();
        assert!((r.lhs - 2.0).abs() < 1e-9 && (r.lambda2 - 5.09017).abs() < 1e-4 && r.holds);
        assert!(induced_lambda_relation_check(&Graph::cycle(4).unwrap(), 2, 0, &l).unwrap().holds);
        let r1 = induced_lambda_relation_check(&Graph::cycle(5).unwrap(), 1, 2, &l).unwrap();
        assert_eq!(r1.lhs, 0.0);
        assert!(r1.holds);
    }

    #[test]
    fn sampling_is_seeded() {
        let a = sample_subset(25, 4, 7).unwrap();
        assert_eq!(a, sample_subset(25, 4, 7).unwrap());
        assert_eq!(a.count(), 4);
        assert!(sample_subset(3, 4, 7).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn bounds_hold(g in arb_graph(6), seed in any::<u64>(), frac in 0.0f64..1.0) {
            prop_assume!(g.vertex_count() >= 2 && g.is_connected());
            let l = Limits::default();
            let total = g.vertex_count().pow(2);
            let size = 1 + (frac * (total - 1) as f64) as usize;
            let y = sample_subset(total, size, seed).unwrap();
            let r = expansion_report(&g, 2, &y, &l).unwrap();
            prop_assert!(r.consistent, "{:?}", r);
        }
    }
}
