use nalgebra::SymmetricEigen;
use serde::Serialize;

use super::{Matrix, Spectrum};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "size")]
pub enum GershgorinMode {
    Scalar,
    /// Square diagonal blocks of the given size.
    Block(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GershgorinIntervals {
    pub mode: GershgorinMode,
    /// `[center - radius, center + radius]`. In block mode there is one per
    /// eigenvalue of each diagonal block.
    pub intervals: Vec<(f64, f64)>,
    /// Hull of the union. In block mode the block centers are themselves
    /// replaced by their scalar Gershgorin range, which is the cruder
    /// interval obtained without solving the diagonal blocks.
    pub envelope: (f64, f64),
}

impl GershgorinIntervals {
    pub fn contains(&self, x: f64, tol: f64) -> bool {
        self.intervals.iter().any(|&(lo, hi)| lo - tol <= x && x <= hi + tol)
    }

    pub fn contains_spectrum(&self, s: &Spectrum, tol: f64) -> bool {
        s.eigenvalues.iter().all(|&x| self.contains(x, tol))
    }

    /// Distinct intervals with their counts, in first-seen order.
    pub fn distinct(&self) -> Vec<((f64, f64), usize)> {
        let mut out: Vec<((f64, f64), usize)> = Vec::new();
        for &iv in &self.intervals {
            match out
                .iter_mut()
                .find(|(j, _)| (j.0 - iv.0).abs() < 1e-9 && (j.1 - iv.1).abs() < 1e-9)
            {
                Some((_, c)) => *c += 1,
                None => out.push((iv, 1)),
            }
        }
        out
    }
}

fn off_diagonal_row_sum(m: &Matrix, k: usize, lo: usize, hi: usize) -> f64 {
    (0..m.ncols())
        .filter(|&t| t < lo || t >= hi)
        .map(|t| m[(k, t)].abs())
        .sum()
}

pub fn gershgorin(m: &Matrix, mode: GershgorinMode) -> Result<GershgorinIntervals> {
    let n = m.nrows();
    if n != m.ncols() || n == 0 {
        return Err(Error::invalid("need a nonempty square matrix"));
    }
    match mode {
        GershgorinMode::Scalar => {
            let intervals: Vec<(f64, f64)> = (0..n)
                .map(|k| {
                    let r = off_diagonal_row_sum(m, k, k, k + 1);
                    (m[(k, k)] - r, m[(k, k)] + r)
                })
                .collect();
            let envelope = hull(&intervals);
            Ok(GershgorinIntervals {
                mode,
                intervals,
                envelope,
            })
        }
        GershgorinMode::Block(b) => {
            if b == 0 || !n.is_multiple_of(b) {
                return Err(Error::invalid(format!("block size {b} does not divide {n}")));
            }
            let mut intervals = Vec::new();
            let mut coarse = Vec::new();
            for k in 0..n / b {
                let lo = k * b;
                let diag = m.view((lo, lo), (b, b)).into_owned();
                // Sum of spectral norms of the off-diagonal blocks in this block row.
                let radius: f64 = (0..n / b)
                    .filter(|&t| t != k)
                    .map(|t| m.view((lo, t * b), (b, b)).into_owned().singular_values().max())
                    .sum();
                for mu in SymmetricEigen::new(diag.clone()).eigenvalues.iter() {
                    intervals.push((mu - radius, mu + radius));
                }
                let inner = (0..b)
                    .map(|i| diag[(i, i)].abs() + off_diagonal_row_sum(&diag, i, i, i + 1))
                    .fold(0.0, f64::max);
                coarse.push((-(inner + radius), inner + radius));
            }
            Ok(GershgorinIntervals {
                mode,
                intervals,
                envelope: hull(&coarse),
            })
        }
    }
}

fn hull(v: &[(f64, f64)]) -> (f64, f64) {
    v.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &(lo, hi)| (a.min(lo), b.max(hi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::arb_graph;
    use crate::graph::Graph;
    use crate::limits::Limits;
    use crate::product::or_power;
    use crate::spectral::{adjacency, adjacency_spectrum};
    use proptest::prelude::*;

    #[test]
    fn example5_scalar() {
        let g = crate::worked::example5_graph();
        let iv = gershgorin(&adjacency(&g), GershgorinMode::Scalar).unwrap();
        let mut d = iv.distinct();
        d.sort_by(|a, b| a.0 .1.total_cmp(&b.0 .1));
        assert_eq!(d, vec![((-2.0, 2.0), 3), ((-3.0, 3.0), 2)]);
    }

    #[test]
    fn example5_square_block() {
        let l = Limits::default();
        let p = or_power(&crate::worked::example5_graph(), 2, &l).unwrap();
        let iv = gershgorin(&adjacency(&p.graph), GershgorinMode::Block(5)).unwrap();
        assert!((iv.envelope.0 + 18.0).abs() < 1e-9 && (iv.envelope.1 - 18.0).abs() < 1e-9);
        let s = adjacency_spectrum(&p.graph, &l).unwrap();
        assert!(iv.contains_spectrum(&s, 1e-9));
        assert!(s.eigenvalues.iter().all(|x| x.abs() <= 18.0));
    }

    #[test]
    fn k2_on_boundary() {
        let iv = gershgorin(&adjacency(&Graph::complete(2).unwrap()), GershgorinMode::Scalar).unwrap();
        assert_eq!(iv.intervals, vec![(-1.0, 1.0), (-1.0, 1.0)]);
        assert!(iv.contains(1.0, 0.0) && iv.contains(-1.0, 0.0));
    }

    #[test]
    fn bad_block() {
        let m = adjacency(&Graph::cycle(5).unwrap());
        assert!(gershgorin(&m, GershgorinMode::Block(2)).is_err());
        assert!(gershgorin(&m, GershgorinMode::Block(0)).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn union_contains_spectrum(g in arb_graph(6)) {
            let l = Limits::default();
            let p = or_power(&g, 2, &l).unwrap();
            let m = adjacency(&p.graph);
            let s = adjacency_spectrum(&p.graph, &l).unwrap();
            let scalar = gershgorin(&m, GershgorinMode::Scalar).unwrap();
            let block = gershgorin(&m, GershgorinMode::Block(g.vertex_count())).unwrap();
            prop_assert!(scalar.contains_spectrum(&s, 1e-9));
            prop_assert!(block.contains_spectrum(&s, 1e-9));
            prop_assert!(s.eigenvalues.iter().all(|&x| block.envelope.0 - 1e-9 <= x && x <= block.envelope.1 + 1e-9));
        }
    }
}
