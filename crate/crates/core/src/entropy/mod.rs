//! Color distributions, chromatic entropy and its bounds, Huffman codes.

mod alpha;
mod huffman;

pub use alpha::{
    general_entropy_upper_bound, odd_cycle_entropy_upper_bound, profile_entropy, AlphaProfile,
    EntropyWindow,
};
pub use huffman::{huffman_code, HuffmanCode};

use std::collections::HashMap;

use num::{One, Zero};

use crate::coloring::{ensure_valid, Coloring};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::limits::{self, Limits};
use crate::rational::{self, Q};

/// Probability of each color, indexed by color id.
#[derive(Clone, Debug, PartialEq)]
pub struct ColoringPmf {
    pub probs: Vec<Q>,
}

impl ColoringPmf {
    pub fn entropy(&self) -> f64 {
        rational::entropy_bits(&self.probs)
    }
}

fn check_pmf(pmf: &[Q], v: usize) -> Result<()> {
    if pmf.len() != v {
        return Err(Error::invalid(format!("pmf has {} entries for {v} vertices", pmf.len())));
    }
    if pmf.iter().any(|p| *p < Q::zero()) || !pmf.iter().sum::<Q>().is_one() {
        return Err(Error::invalid("vertex pmf must be nonnegative and sum to 1"));
    }
    Ok(())
}

pub fn uniform_pmf(v: usize) -> Vec<Q> {
    vec![rational::q(1, v as i64); v]
}

/// Pushforward of `vertex_pmf` under the color map and its entropy in bits.
pub fn coloring_entropy(g: &Graph, c: &Coloring, vertex_pmf: &[Q]) -> Result<(f64, ColoringPmf)> {
    ensure_valid(g, c)?;
    check_pmf(vertex_pmf, g.vertex_count())?;
    let mut probs = vec![Q::zero(); c.palette()];
    for (v, p) in vertex_pmf.iter().enumerate() {
        probs[c.color(v)] += p;
    }
    let pmf = ColoringPmf { probs };
    Ok((pmf.entropy(), pmf))
}

/// Minimum entropy over all proper colorings, with a minimizer.
///
/// Sorting the classes of a minimizer by probability, each class can be
/// taken maximal independent in what the earlier classes leave: moving a
/// vertex into a heavier class never raises entropy. So the search walks
/// chains of maximal independent sets of the remaining graph.
pub fn chromatic_entropy_bruteforce(g: &Graph, vertex_pmf: &[Q], limits: &Limits) -> Result<(f64, Coloring)> {
    let v = g.vertex_count();
    limits::check("brute-force chromatic entropy", v as u128, limits.entropy_vertices)?;
    check_pmf(vertex_pmf, v)?;
    let weights: Vec<f64> = vertex_pmf.iter().map(rational::to_f64).collect();
    let mut memo = HashMap::new();
    chains(g, &weights, VertexSet::full(v), &mut memo);
    let mut colors = vec![0; v];
    let mut remaining = VertexSet::full(v);
    let mut c = 0;
    while !remaining.is_empty() {
        let class = memo[&remaining].1.clone().expect("nonempty remainder has a class");
        for u in class.iter() {
            colors[u] = c;
        }
        remaining = remaining.difference(&class);
        c += 1;
    }
    let coloring = Coloring::compact(&colors);
    let (h, _) = coloring_entropy(g, &coloring, vertex_pmf)?;
    Ok((h, coloring))
}

/// Cheapest completion of `remaining`, memoized on the set: the terms are
/// additive, so the order of the earlier classes does not matter.
fn chains(
    g: &Graph,
    w: &[f64],
    remaining: VertexSet,
    memo: &mut HashMap<VertexSet, (f64, Option<VertexSet>)>,
) -> f64 {
    if remaining.is_empty() {
        return 0.0;
    }
    if let Some((h, _)) = memo.get(&remaining) {
        return *h;
    }
    let members = remaining.to_vec();
    let sub = g.induced(&members);
    let mut sets = Vec::new();
    maximal_sets(&sub, &mut sets);
    let mut best = (f64::INFINITY, None);
    for s in sets {
        let mut class = VertexSet::new(g.vertex_count());
        for i in s.iter() {
            class.insert(members[i]);
        }
        let p: f64 = class.iter().map(|u| w[u]).sum();
        let term = if p > 0.0 { -p * p.log2() } else { 0.0 };
        let total = term + chains(g, w, remaining.difference(&class), memo);
        if total < best.0 - 1e-12 {
            best = (total, Some(class));
        }
    }
    memo.insert(remaining, best.clone());
    best.0
}

fn maximal_sets(g: &Graph, out: &mut Vec<VertexSet>) {
    // The caller already enforces the size guard.
    let limits = Limits {
        mis_vertices: usize::MAX,
        ..Limits::default()
    };
    out.extend(g.maximal_independent_sets(&limits).expect("unguarded"));
}

/// `log2((2k+1)/k)`: entropy floor from the fractional chromatic number of
/// an odd cycle under a uniform source.
pub fn fractional_entropy_lower_bound(v: usize) -> Result<f64> {
    if v.is_multiple_of(2) || v < 5 {
        return Err(Error::OutOfScope(format!(
            "fractional bound needs an odd cycle length >= 5, got {v}"
        )));
    }
    let k = (v - 1) / 2;
    Ok((v as f64 / k as f64).log2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::arb_graph;
    use crate::rational::q;
    use proptest::prelude::*;

    /// Every set partition into independent classes, by restricted growth strings.
    fn exhaustive(g: &Graph, pmf: &[Q]) -> f64 {
        fn go(g: &Graph, pmf: &[Q], col: &mut Vec<usize>, k: usize, best: &mut f64) {
            let u = col.len();
            if u == g.vertex_count() {
                let c = Coloring::new(col.clone()).unwrap();
                *best = best.min(coloring_entropy(g, &c, pmf).unwrap().0);
                return;
            }
            for c in 0..=k {
                if (0..u).any(|w| col[w] == c && g.has_edge(u, w)) {
                    continue;
                }
                col.push(c);
                go(g, pmf, col, k.max(c + 1), best);
                col.pop();
            }
        }
        let mut best = f64::INFINITY;
        go(g, pmf, &mut Vec::new(), 0, &mut best);
        best
    }

    #[test]
    fn c5_three_coloring() {
        let g = Graph::cycle(5).unwrap();
        let c = Coloring::new(vec![0, 1, 0, 1, 2]).unwrap();
        let (h, pmf) = coloring_entropy(&g, &c, &uniform_pmf(5)).unwrap();
        assert_eq!(pmf.probs, vec![q(2, 5), q(2, 5), q(1, 5)]);
        assert!((h - 1.521928).abs() < 1e-6);
    }

    #[test]
    fn all_distinct_is_log_v() {
        let g = Graph::cycle(6).unwrap();
        let c = Coloring::new((0..6).collect()).unwrap();
        let (h, _) = coloring_entropy(&g, &c, &uniform_pmf(6)).unwrap();
        assert!((h - 6f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn brute_force_values() {
        let l = Limits::default();
        let (h, _) = chromatic_entropy_bruteforce(&Graph::cycle(5).unwrap(), &uniform_pmf(5), &l).unwrap();
        assert!((h - 1.521928).abs() < 1e-6);
        let (h, _) = chromatic_entropy_bruteforce(&Graph::cycle(4).unwrap(), &uniform_pmf(4), &l).unwrap();
        assert!((h - 1.0).abs() < 1e-12);
        let (h, c) = chromatic_entropy_bruteforce(&Graph::edgeless(4), &uniform_pmf(4), &l).unwrap();
        assert_eq!((h, c.palette()), (0.0, 1));
        assert!(chromatic_entropy_bruteforce(&Graph::cycle(13).unwrap(), &uniform_pmf(13), &l)
            .unwrap_err()
            .is_guard());
    }

    #[test]
    fn fractional_floor() {
        assert!((fractional_entropy_lower_bound(5).unwrap() - 1.321928).abs() < 1e-6);
        assert!((fractional_entropy_lower_bound(7).unwrap() - (7.0f64 / 3.0).log2()).abs() < 1e-12);
        assert!(fractional_entropy_lower_bound(6).is_err());
        assert!(fractional_entropy_lower_bound(10001).unwrap() > 1.0);
        let l = Limits::default();
        for v in [5, 7] {
            let (h, _) = chromatic_entropy_bruteforce(&Graph::cycle(v).unwrap(), &uniform_pmf(v), &l).unwrap();
            assert!(fractional_entropy_lower_bound(v).unwrap() <= h);
        }
    }

    #[test]
    fn rejects_bad_pmf() {
        let g = Graph::cycle(4).unwrap();
        let c = Coloring::new(vec![0, 1, 0, 1]).unwrap();
        assert!(coloring_entropy(&g, &c, &[q(1, 2), q(1, 2), q(0, 1)]).is_err());
        assert!(coloring_entropy(&g, &c, &vec![q(1, 2); 4]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn brute_force_matches_exhaustive(g in arb_graph(7), w in proptest::collection::vec(1i64..5, 7)) {
            let v = g.vertex_count();
            let total: i64 = w[..v].iter().sum();
            let pmf: Vec<Q> = w[..v].iter().map(|&x| q(x, total)).collect();
            let (h, c) = chromatic_entropy_bruteforce(&g, &pmf, &Limits::default()).unwrap();
            prop_assert!((h - exhaustive(&g, &pmf)).abs() < 1e-9);
            prop_assert!(crate::coloring::is_valid_coloring(&g, &c).unwrap());
            // Graph entropy never exceeds source entropy.
            prop_assert!(h <= rational::entropy_bits(&pmf) + 1e-9);
        }
    }
}
