use serde::Serialize;

use super::{adjacency, symmetric_eigenvalues, Matrix, Spectrum, SOLVER_TOL};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;
use crate::product::OrPower;

/// `A(G^n) = A_gr + A_fc`: the diagonal blocks (copies of `A(G^{n-1})`) and
/// the cross-block remainder (`A(G) ⊗ J`).
#[derive(Clone, Debug, PartialEq)]
pub struct SplitDecomposition {
    pub block: usize,
    pub a_gr: Matrix,
    pub a_fc: Matrix,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SplitReport {
    pub full: Vec<f64>,
    pub gr: Vec<f64>,
    pub fc: Vec<f64>,
    /// `λ_k(A_gr) + λ_k(A_fc) - λ_k(A)` for every `k`, all lists descending.
    pub deviations: Vec<f64>,
    pub max_deviation: f64,
    pub lambda1_sum: f64,
    pub lambda1: f64,
    /// `λ_k(A(G)) + Σ_{j=2}^{n} λ_k(A_fc^j)` for `k <= V`, using
    /// `λ(A_fc^j) = λ(A(G))·V^{j-1}` padded with zeros.
    pub iterative: Vec<f64>,
}

pub fn split_decomposition(power: &OrPower, base: &Graph, limits: &Limits) -> Result<(SplitDecomposition, SplitReport)> {
    let v = power.index.base;
    let n = power.index.len;
    if base.vertex_count() != v {
        return Err(Error::invalid("base graph does not match the power's provenance"));
    }
    let a = adjacency(&power.graph);
    let size = a.nrows();
    let block = size / v;
    let mut a_gr = Matrix::zeros(size, size);
    for l in 0..v {
        let r = l * block;
        a_gr.view_mut((r, r), (block, block)).copy_from(&a.view((r, r), (block, block)));
    }
    let a_fc = &a - &a_gr;

    let full = symmetric_eigenvalues(&a, SOLVER_TOL, limits)?;
    let gr = symmetric_eigenvalues(&a_gr, SOLVER_TOL, limits)?;
    let fc = symmetric_eigenvalues(&a_fc, SOLVER_TOL, limits)?;
    let deviations: Vec<f64> = (0..size)
        .map(|k| gr.eigenvalues[k] + fc.eigenvalues[k] - full.eigenvalues[k])
        .collect();
    let max_deviation = deviations.iter().fold(0.0, |m: f64, d| m.max(d.abs()));

    let base_spec = symmetric_eigenvalues(&adjacency(base), SOLVER_TOL, limits)?;
    let iterative = (0..v)
        .map(|k| {
            base_spec.eigenvalues[k]
                + (2..=n)
                    .map(|j| kth_of_kron_with_ones(&base_spec, v.pow(j as u32 - 1), k))
                    .sum::<f64>()
        })
        .collect();

    let report = SplitReport {
        lambda1_sum: gr.largest() + fc.largest(),
        lambda1: full.largest(),
        full: full.eigenvalues,
        gr: gr.eigenvalues,
        fc: fc.eigenvalues,
        deviations,
        max_deviation,
        iterative,
    };
    Ok((SplitDecomposition { block, a_gr, a_fc }, report))
}

/// `k`-th largest eigenvalue of `A ⊗ J_w`: the spectrum of `A` scaled by
/// `w`, plus `(w - 1)·V` zeros.
fn kth_of_kron_with_ones(s: &Spectrum, w: usize, k: usize) -> f64 {
    let mut all: Vec<f64> = s.eigenvalues.iter().map(|x| x * w as f64).collect();
    all.extend(std::iter::repeat_n(0.0, (w - 1) * s.len()));
    all.sort_by(|a, b| b.total_cmp(a));
    all[k]
}
