use num::{BigInt, BigRational, ToPrimitive};

use super::{exact_chromatic_number, Coloring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::{self, Limits};
use crate::product::{or_power, TupleIndex};

fn tuple_count(v: usize, n: usize, limits: &Limits) -> Result<usize> {
    if n == 0 {
        return Err(Error::invalid("power must be at least 1"));
    }
    let size = (v as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    limits::check("scheme coloring", size, limits.power_vertices)?;
    Ok(size as usize)
}

/// Parity-vector coloring of `C_{2k}^n` with `2^n` colors.
pub fn even_cycle_power_coloring(k: usize, n: usize, limits: &Limits) -> Result<Coloring> {
    if k < 2 {
        return Err(Error::invalid("even cycle needs k >= 2"));
    }
    let v = 2 * k;
    let size = tuple_count(v, n, limits)?;
    let idx = TupleIndex::new(v, n);
    let colors = (0..size)
        .map(|x| idx.decode(x).iter().fold(0, |acc, &s| acc * 2 + s % 2))
        .collect();
    Coloring::new(colors)
}

/// `χ(C_{2k+1}^n)` from `s_1 = 3`, `s_{m+1} = 2 s_m + ceil(s_m / 2)`.
pub fn odd_cycle_chromatic_count(n: usize) -> Result<u128> {
    if n == 0 {
        return Err(Error::invalid("power must be at least 1"));
    }
    let mut s: u128 = 3;
    for _ in 1..n {
        s = s
            .checked_mul(2)
            .and_then(|t| t.checked_add(s.div_ceil(2)))
            .ok_or_else(|| Error::invalid("count overflows u128"))?;
    }
    Ok(s)
}

/// Homomorphism `C_{2k+1} -> C_5` selecting the window offset of each block.
/// The identity for `k = 2`.
fn window_slot(i: usize, k: usize) -> usize {
    if i == 0 {
        0
    } else if i == 2 * k {
        4
    } else if i == 2 * k - 1 {
        3
    } else if i % 2 == 1 {
        1
    } else {
        2
    }
}

/// Recursive coloring of `C_{2k+1}^n` (k >= 2).
///
/// Block `l` of the `m`-fold power uses the `s_{m-1}` consecutive colors
/// starting at `slot(l)·s_{m-1}` modulo `s_m`, filled by the `(m-1)`-fold
/// coloring of the tuple tail. For C5 the windows are `{0,1,2}, {3,4,5},
/// {6,7,0}, {1,2,3}, {4,5,6}` at `m = 2`.
///
/// The count is always returned; the explicit coloring only within the guard.
pub fn odd_cycle_power_coloring(
    v: usize,
    n: usize,
    limits: &Limits,
) -> Result<(Option<Coloring>, u128)> {
    if v.is_multiple_of(2) || v < 5 {
        return Err(Error::OutOfScope(format!(
            "odd-cycle scheme needs an odd cycle of length >= 5, got {v}"
        )));
    }
    let count = odd_cycle_chromatic_count(n)?;
    let size = match tuple_count(v, n, limits) {
        Ok(s) => s,
        Err(e) if e.is_guard() => return Ok((None, count)),
        Err(e) => return Err(e),
    };
    let k = (v - 1) / 2;
    let idx = TupleIndex::new(v, n);
    let counts: Vec<usize> = (1..=n)
        .map(|m| odd_cycle_chromatic_count(m).map(|c| c as usize))
        .collect::<Result<_>>()?;
    let base = |x: usize| if x == v - 1 { 2 } else { x % 2 };
    let colors = (0..size)
        .map(|x| {
            let t = idx.decode(x);
            // Innermost coordinate first, then wrap outward.
            let mut c = base(t[n - 1]);
            for m in 2..=n {
                let s = counts[m - 2];
                let l = t[n - m];
                c = (window_slot(l, k) * s + c) % counts[m - 1];
            }
            c
        })
        .collect();
    Ok((Some(Coloring::new(colors)?), count))
}

/// `χ(K_i^n) = i^n`: the power of a complete graph is complete.
pub fn complete_power_chromatic(i: usize, n: usize) -> u128 {
    (i as u128).pow(n as u32)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GreedyGain {
    pub n: usize,
    /// Colors used by coloring each coordinate independently, `3^n`.
    pub product_colors: u128,
    pub scheme_colors: u128,
    pub eta: BigRational,
    /// `1.2^n`, the curve the gain is often quoted against.
    pub curve_n: f64,
    /// `1.2^{n-1}`, the growth the recursion actually follows.
    pub curve_n_minus_1: f64,
}

/// `η_n = 3^n / χ(C_{2k+1}^n)`; independent of k.
pub fn greedy_gain(v: usize, n: usize) -> Result<GreedyGain> {
    if v.is_multiple_of(2) || v < 5 {
        return Err(Error::OutOfScope(format!("gain is defined for odd cycles >= 5, got {v}")));
    }
    let product_colors = 3u128.pow(n as u32);
    let scheme_colors = odd_cycle_chromatic_count(n)?;
    Ok(GreedyGain {
        n,
        product_colors,
        scheme_colors,
        eta: BigRational::new(BigInt::from(product_colors), BigInt::from(scheme_colors)),
        curve_n: 1.2f64.powi(n as i32),
        curve_n_minus_1: 1.2f64.powi(n as i32 - 1),
    })
}

impl GreedyGain {
    pub fn eta_f64(&self) -> f64 {
        self.eta.to_f64().unwrap_or(f64::NAN)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularPowerReport {
    pub d: usize,
    pub v: usize,
    pub n: usize,
    /// `d^n`.
    pub closed_form: u128,
    /// Exact chromatic number of the supplied graph's power, when computed.
    pub exact: Option<usize>,
    pub agrees: Option<bool>,
}

/// `d^n` for a d-regular graph on an even number of vertices, optionally
/// cross-checked against the exact colorer on a concrete graph.
///
/// The closed form is not a theorem for every such graph (the 3-cube has
/// `χ = 2`), so disagreement is reported, not raised.
pub fn regular_power_chromatic(
    d: usize,
    v: usize,
    n: usize,
    graph: Option<&Graph>,
    limits: &Limits,
) -> Result<RegularPowerReport> {
    if v % 2 == 1 {
        return Err(Error::OutOfScope(format!("vertex count {v} is odd")));
    }
    if d == 0 || d >= v || n == 0 {
        return Err(Error::invalid(format!("no {d}-regular graph on {v} vertices")));
    }
    let closed_form = (d as u128).pow(n as u32);
    let mut exact = None;
    if let Some(g) = graph {
        if g.vertex_count() != v || g.regular_degree() != Some(d) {
            return Err(Error::invalid(format!("graph is not {d}-regular on {v} vertices")));
        }
        match or_power(g, n, limits).and_then(|p| exact_chromatic_number(&p.graph, limits)) {
            Ok(r) => exact = Some(r.chi),
            Err(e) if e.is_guard() => {}
            Err(e) => return Err(e),
        }
    }
    Ok(RegularPowerReport {
        d,
        v,
        n,
        closed_form,
        exact,
        agrees: exact.map(|x| x as u128 == closed_form),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_valid_coloring;
    use crate::graph::Graph;

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn sequence() {
        let got: Vec<u128> = (1..=6).map(|n| odd_cycle_chromatic_count(n).unwrap()).collect();
        assert_eq!(got, vec![3, 8, 20, 50, 125, 313]);
    }

    #[test]
    fn c5_windows() {
        let (c, count) = odd_cycle_power_coloring(5, 2, &l()).unwrap();
        let c = c.unwrap();
        assert_eq!(count, 8);
        let windows: Vec<Vec<usize>> = (0..5)
            .map(|b| {
                let mut w: Vec<usize> = c.assignment()[b * 5..b * 5 + 5].to_vec();
                w.sort_unstable();
                w.dedup();
                w
            })
            .collect();
        assert_eq!(
            windows,
            vec![vec![0, 1, 2], vec![3, 4, 5], vec![0, 6, 7], vec![1, 2, 3], vec![4, 5, 6]]
        );
    }

    #[test]
    fn odd_schemes_are_valid() {
        for (v, n) in [(5, 1), (5, 2), (5, 3), (7, 2), (9, 2), (7, 3), (11, 2)] {
            let (c, count) = odd_cycle_power_coloring(v, n, &l()).unwrap();
            let c = c.unwrap();
            let p = or_power(&Graph::cycle(v).unwrap(), n, &l()).unwrap();
            assert!(is_valid_coloring(&p.graph, &c).unwrap(), "C{v}^{n}");
            assert_eq!(c.palette() as u128, count);
        }
    }

    #[test]
    fn odd_scheme_above_guard_still_counts() {
        let (c, count) = odd_cycle_power_coloring(5, 6, &l()).unwrap();
        assert!(c.is_none());
        assert_eq!(count, 313);
        assert!(odd_cycle_power_coloring(3, 2, &l()).is_err());
        assert!(odd_cycle_power_coloring(6, 2, &l()).is_err());
    }

    #[test]
    fn even_schemes() {
        for (k, n, want) in [(2, 3, 8), (2, 2, 4), (3, 2, 4), (2, 1, 2), (3, 1, 2)] {
            let c = even_cycle_power_coloring(k, n, &l()).unwrap();
            let p = or_power(&Graph::cycle(2 * k).unwrap(), n, &l()).unwrap();
            assert!(is_valid_coloring(&p.graph, &c).unwrap());
            assert_eq!(c.palette(), want);
        }
    }

    #[test]
    fn gain() {
        let g = greedy_gain(5, 2).unwrap();
        assert_eq!(g.eta, BigRational::new(9.into(), 8.into()));
        assert_eq!(greedy_gain(5, 3).unwrap().eta_f64(), 1.35);
        assert_eq!(greedy_gain(7, 1).unwrap().eta_f64(), 1.0);
        let etas: Vec<f64> = (2..=12).map(|n| greedy_gain(5, n).unwrap().eta_f64()).collect();
        assert!(etas.windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn regular_closed_form() {
        let r = regular_power_chromatic(3, 6, 1, Some(&Graph::prism()), &l()).unwrap();
        assert_eq!((r.closed_form, r.exact, r.agrees), (3, Some(3), Some(true)));
        let r = regular_power_chromatic(2, 6, 3, None, &l()).unwrap();
        assert_eq!(r.closed_form, 8);
        assert!(matches!(
            regular_power_chromatic(2, 5, 2, None, &l()),
            Err(Error::OutOfScope(_))
        ));
        // The 3-cube is bipartite: the closed form overshoots.
        let q3 = Graph::from_edges(
            8,
            &[(0, 1), (0, 2), (0, 4), (1, 3), (1, 5), (2, 3), (2, 6), (3, 7), (4, 5), (4, 6), (5, 7), (6, 7)],
        )
        .unwrap();
        let r = regular_power_chromatic(3, 8, 1, Some(&q3), &l()).unwrap();
        assert_eq!(r.agrees, Some(false));
    }

    #[test]
    fn complete_powers() {
        for i in 2..=4 {
            for n in 1..=2 {
                let p = or_power(&Graph::complete(i).unwrap(), n, &l()).unwrap();
                let chi = exact_chromatic_number(&p.graph, &l()).unwrap().chi;
                assert_eq!(chi as u128, complete_power_chromatic(i, n));
            }
        }
        let c3sq = or_power(&Graph::cycle(3).unwrap(), 2, &l()).unwrap();
        assert_eq!(exact_chromatic_number(&c3sq.graph, &l()).unwrap().chi, 9);
    }
}
