use std::collections::HashMap;
use std::time::{Duration, Instant};

use num::{BigInt, BigRational};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;

/// An `a:b` coloring: each vertex gets `b` of `a` colors, disjoint across edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalColoring {
    pub a: usize,
    pub b: usize,
    pub sets: Vec<Vec<usize>>,
}

pub fn is_valid_fractional(g: &Graph, f: &FractionalColoring) -> bool {
    f.sets.len() == g.vertex_count()
        && f.sets.iter().all(|s| {
            let mut t = s.clone();
            t.sort_unstable();
            t.dedup();
            t.len() == f.b && t.iter().all(|&c| c < f.a)
        })
        && g
            .edges()
            .iter()
            .all(|&(u, v)| f.sets[u].iter().all(|c| !f.sets[v].contains(c)))
}

/// `χ_b(G)` exactly, with a witness.
///
/// Color classes may be taken to be maximal independent sets, so this is the
/// smallest multiset of maximal independent sets covering every vertex `b`
/// times. Solved by memoized recursion on the residual demand vector, always
/// covering the lowest vertex with positive demand next.
pub fn b_fold_chromatic_number(g: &Graph, b: usize, limits: &Limits) -> Result<FractionalColoring> {
    if b == 0 {
        return Err(Error::invalid("fold size must be positive"));
    }
    if b > u8::MAX as usize {
        return Err(Error::invalid("fold size above 255"));
    }
    let v = g.vertex_count();
    let sets: Vec<Vec<usize>> = g
        .maximal_independent_sets(limits)?
        .iter()
        .map(|s| s.to_vec())
        .collect();
    let mut memo: HashMap<Vec<u8>, (u32, u32)> = HashMap::new();
    let start = vec![b as u8; v];
    let deadline = Instant::now() + limits.exact_timeout;
    cover(&start, &sets, &mut memo, deadline)?;

    // Walk the memo to recover the chosen sets.
    let mut chosen = Vec::new();
    let mut d = start;
    while d.iter().any(|&x| x > 0) {
        let (_, pick) = memo[&d];
        chosen.push(pick as usize);
        for &u in &sets[pick as usize] {
            d[u] = d[u].saturating_sub(1);
        }
    }
    let mut colors: Vec<Vec<usize>> = vec![Vec::new(); v];
    for (c, &i) in chosen.iter().enumerate() {
        for &u in &sets[i] {
            if colors[u].len() < b {
                colors[u].push(c);
            }
        }
    }
    Ok(FractionalColoring {
        a: chosen.len(),
        b,
        sets: colors,
    })
}

fn cover(
    d: &[u8],
    sets: &[Vec<usize>],
    memo: &mut HashMap<Vec<u8>, (u32, u32)>,
    deadline: Instant,
) -> Result<u32> {
    let Some(v) = d.iter().position(|&x| x > 0) else {
        return Ok(0);
    };
    if let Some(&(n, _)) = memo.get(d) {
        return Ok(n);
    }
    if memo.len().is_multiple_of(4096) && Instant::now() > deadline {
        return Err(Error::Timeout(Duration::ZERO));
    }
    let mut best = (u32::MAX, 0);
    for (i, s) in sets.iter().enumerate() {
        if !s.contains(&v) {
            continue;
        }
        let mut next = d.to_vec();
        for &u in s {
            next[u] = next[u].saturating_sub(1);
        }
        let n = 1 + cover(&next, sets, memo, deadline)?;
        if n < best.0 {
            best = (n, i as u32);
        }
    }
    memo.insert(d.to_vec(), best);
    Ok(best.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FractionalCycle {
    pub k: usize,
    pub b: usize,
    /// `χ_b(C_{2k+1}) = 2b + ceil(b/k)`.
    pub chi_b: usize,
    pub coloring: FractionalColoring,
    /// Whether the consecutive-window assignment was used (otherwise the exact witness).
    pub windowed: bool,
    /// `χ_f = (2k+1)/k`.
    pub chi_f: BigRational,
}

/// b-fold coloring of `C_{2k+1}`: vertex `i` gets colors `ib .. ib+b-1` mod `a`.
/// When the windows collide on the closing edge the exact witness is used.
pub fn fractional_chromatic_cycle(k: usize, b: usize, limits: &Limits) -> Result<FractionalCycle> {
    if k < 2 || b == 0 {
        return Err(Error::invalid("need k >= 2 and b >= 1"));
    }
    let v = 2 * k + 1;
    let a = 2 * b + b.div_ceil(k);
    let g = Graph::cycle(v)?;
    let windows = FractionalColoring {
        a,
        b,
        sets: (0..v).map(|i| (0..b).map(|j| (i * b + j) % a).collect()).collect(),
    };
    let (coloring, windowed) = if is_valid_fractional(&g, &windows) {
        (windows, true)
    } else {
        let w = b_fold_chromatic_number(&g, b, limits)?;
        if w.a != a {
            return Err(Error::invalid(format!("exact b-fold number {} differs from {a}", w.a)));
        }
        (w, false)
    };
    Ok(FractionalCycle {
        k,
        b,
        chi_b: a,
        coloring,
        windowed,
        chi_f: cycle_fractional_chromatic(k),
    })
}

pub fn cycle_fractional_chromatic(k: usize) -> BigRational {
    BigRational::new(BigInt::from(2 * k + 1), BigInt::from(k))
}

/// `χ_f(C_{2k+1}^n) = ((2k+1)/k)^n`.
pub fn cycle_power_fractional_chromatic(k: usize, n: usize) -> BigRational {
    num::pow(cycle_fractional_chromatic(k), n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn c5_folds() {
        for (b, want) in [(1, 3), (2, 5), (3, 8), (4, 10)] {
            let f = fractional_chromatic_cycle(2, b, &l()).unwrap();
            assert_eq!(f.chi_b, want, "b = {b}");
            assert!(is_valid_fractional(&Graph::cycle(5).unwrap(), &f.coloring));
            let exact = b_fold_chromatic_number(&Graph::cycle(5).unwrap(), b, &l()).unwrap();
            assert_eq!(exact.a, want);
        }
        assert_eq!(
            fractional_chromatic_cycle(2, 2, &l()).unwrap().chi_f,
            BigRational::new(5.into(), 2.into())
        );
    }

    #[test]
    fn c7_three_fold() {
        let f = fractional_chromatic_cycle(3, 3, &l()).unwrap();
        assert_eq!(f.chi_b, 7);
        assert!(f.windowed);
        let exact = b_fold_chromatic_number(&Graph::cycle(7).unwrap(), 3, &l()).unwrap();
        assert_eq!(exact.a, 7);
    }

    #[test]
    fn power_rule() {
        assert_eq!(cycle_power_fractional_chromatic(2, 2), BigRational::new(25.into(), 4.into()));
    }

    #[test]
    fn fractional_below_integral() {
        for k in 2..=4 {
            let chi_f = cycle_fractional_chromatic(k);
            assert!(chi_f <= BigRational::from_integer(3.into()));
        }
    }
}
