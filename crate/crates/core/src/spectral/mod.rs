//! Adjacency spectra, Gershgorin enclosures, the block split of OR-power
//! adjacency matrices and eigenvalue-based chromatic bounds.

mod bounds;
mod gershgorin;
mod split;

pub use bounds::{chromatic_bounds_spectral, BoundReport, BoundVariant, Quantity};
pub use gershgorin::{gershgorin, GershgorinIntervals, GershgorinMode};
pub use split::{split_decomposition, SplitDecomposition, SplitReport};

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::{self, Limits};
use crate::product::{constant_tuple_degree, or_power};

pub type Matrix = DMatrix<f64>;

/// Absolute gap under which two eigenvalues count as one distinct value.
pub const CLUSTER_TOL: f64 = 1e-6;

/// Default relative error accepted in the power-sum check.
pub const SOLVER_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    /// With multiplicity, largest first.
    pub eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn new(mut eigenvalues: Vec<f64>) -> Spectrum {
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        Spectrum { eigenvalues }
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn largest(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn smallest(&self) -> f64 {
        *self.eigenvalues.last().expect("nonempty spectrum")
    }

    /// `λ_2`, or `λ_1` for a 1×1 matrix.
    pub fn second(&self) -> f64 {
        self.eigenvalues.get(1).copied().unwrap_or(self.eigenvalues[0])
    }

    /// `max(λ_2, |λ_min|)`.
    pub fn lambda(&self) -> f64 {
        self.second().max(self.smallest().abs())
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    /// Distinct values, ascending, with multiplicities. Values closer than
    /// `CLUSTER_TOL` to the previous one join its cluster.
    pub fn distinct(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for &x in self.eigenvalues.iter().rev() {
            match out.last_mut() {
                Some((y, m)) if (x - *y).abs() <= CLUSTER_TOL => *m += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }

    pub fn distinct_values(&self) -> Vec<f64> {
        self.distinct().into_iter().map(|(x, _)| x).collect()
    }
}

pub fn adjacency(g: &Graph) -> Matrix {
    let v = g.vertex_count();
    let mut m = Matrix::zeros(v, v);
    for (a, b) in g.edges() {
        m[(a, b)] = 1.0;
        m[(b, a)] = 1.0;
    }
    m
}

/// Eigenvalues of a symmetric matrix by Householder reduction and implicit
/// QR with Givens rotations. The result is checked through the power sums
/// `Σλ^k = tr(M^k)`, `k = 1..3`, to within `tol·‖M‖_F^k`. Eigenvectors are
/// not used: inside large repeated eigenspaces they lose accuracy long
/// before the eigenvalues do.
pub fn symmetric_eigenvalues(m: &Matrix, tol: f64, limits: &Limits) -> Result<Spectrum> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::invalid("matrix is not square"));
    }
    limits::check("dense eigensolve", n as u128, limits.dense_dimension)?;
    if n == 0 {
        return Err(Error::invalid("empty matrix"));
    }
    for i in 0..n {
        for j in 0..i {
            if (m[(i, j)] - m[(j, i)]).abs() > tol {
                return Err(Error::invalid(format!("matrix is not symmetric at ({i}, {j})")));
            }
        }
    }
    let eig = SymmetricEigen::new(m.clone());
    let scale = m.norm().max(1.0);
    let m2 = m * m;
    let traces = [m.trace(), m2.trace(), (&m2 * m).trace()];
    for (k, tr) in traces.into_iter().enumerate() {
        let sum: f64 = eig.eigenvalues.iter().map(|x| x.powi(k as i32 + 1)).sum();
        let bound = tol * scale.powi(k as i32 + 1);
        if (sum - tr).abs() > bound {
            return Err(Error::invalid(format!(
                "eigenvalue power sum {} off by {:e}, over {bound:e}",
                k + 1,
                (sum - tr).abs()
            )));
        }
    }
    Ok(Spectrum::new(eig.eigenvalues.iter().copied().collect()))
}

pub fn adjacency_spectrum(g: &Graph, limits: &Limits) -> Result<Spectrum> {
    symmetric_eigenvalues(&adjacency(g), SOLVER_TOL, limits)
}

/// Spectrum of the materialized `n`-fold power.
pub fn power_spectrum(g: &Graph, n: usize, limits: &Limits) -> Result<Spectrum> {
    let p = or_power(g, n, limits)?;
    adjacency_spectrum(&p.graph, limits)
}

/// `J_V`: `V` once, then `V - 1` zeros.
pub fn all_ones_spectrum(v: usize) -> Result<Spectrum> {
    if v == 0 {
        return Err(Error::invalid("V must be positive"));
    }
    let mut e = vec![0.0; v];
    e[0] = v as f64;
    Ok(Spectrum::new(e))
}

/// `λ_1` of the `n`-fold power of a `V`-cycle: `2 + Σ_{j=1}^{n-1} 2V^j`.
pub fn cycle_power_largest_eig(v: usize, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("power must be at least 1"));
    }
    Ok(constant_tuple_degree(2, v, n) as f64)
}

/// Spectrum of the `n`-fold power of a regular graph without materializing it.
///
/// With `H = G^{n-1}` of degree `d'`, `A(G^n) = A(G) ⊗ J + I ⊗ A(H)`. The
/// all-ones vector of `H` lifts every eigenvalue `μ` of `G` to
/// `μ·V^{n-1} + d'`; the other eigenvectors of `H` are killed by `J` and
/// repeat their eigenvalue `V` times.
pub fn regular_power_spectrum(g: &Graph, n: usize, limits: &Limits) -> Result<Spectrum> {
    let d = g
        .regular_degree()
        .ok_or_else(|| Error::OutOfScope("closed-form power spectrum needs a regular graph".into()))?;
    if n == 0 {
        return Err(Error::invalid("power must be at least 1"));
    }
    let v = g.vertex_count();
    let size = (v as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    limits::check("closed-form power spectrum", size, limits.power_vertices)?;
    let base = adjacency_spectrum(g, limits)?;
    let mut current = base.eigenvalues.clone();
    for t in 2..=n {
        let width = v.pow(t as u32 - 1) as f64;
        let prev_deg = constant_tuple_degree(d, v, t - 1) as f64;
        // Drop one copy of the previous Perron value.
        let perron = current
            .iter()
            .position(|&x| (x - prev_deg).abs() < 1e-6 * prev_deg.max(1.0))
            .expect("regular graphs have their degree as an eigenvalue");
        current.remove(perron);
        let mut next: Vec<f64> = base.eigenvalues.iter().map(|&mu| mu * width + prev_deg).collect();
        for &x in &current {
            next.extend(std::iter::repeat_n(x, v));
        }
        current = next;
    }
    Ok(Spectrum::new(current))
}

/// Lower bounds on the smallest adjacency eigenvalue.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SmallestEigBounds {
    /// `-sqrt(2E·(V-1)/2)`.
    pub brigham: f64,
    /// `-sqrt((V/2)·((V+1)/2))`.
    pub hong: f64,
    /// `-sqrt(2E - (V-1)·δ + (δ-1)·Δ)`.
    pub das: f64,
}

impl SmallestEigBounds {
    /// The tightest of the three.
    pub fn best(&self) -> f64 {
        self.brigham.max(self.hong).max(self.das)
    }
}

/// Takes floats so that powers too large for integer types still evaluate.
pub fn smallest_eig_lower_bounds(v: f64, e: f64, min_deg: f64, max_deg: f64) -> Result<SmallestEigBounds> {
    if v < 1.0 || e < 0.0 || min_deg > max_deg || min_deg < 0.0 || 2.0 * e > v * (v - 1.0) {
        return Err(Error::invalid("inconsistent V, E and degree range"));
    }
    let das_arg = 2.0 * e - (v - 1.0) * min_deg + (min_deg - 1.0) * max_deg;
    Ok(SmallestEigBounds {
        brigham: -(2.0 * e * (v - 1.0) / 2.0).sqrt(),
        hong: -((v / 2.0) * ((v + 1.0) / 2.0)).sqrt(),
        das: -das_arg.max(0.0).sqrt(),
    })
}

pub fn graph_smallest_eig_bounds(g: &Graph) -> SmallestEigBounds {
    smallest_eig_lower_bounds(
        g.vertex_count() as f64,
        g.edge_count() as f64,
        g.min_degree() as f64,
        g.max_degree() as f64,
    )
    .expect("a graph is always consistent")
}
