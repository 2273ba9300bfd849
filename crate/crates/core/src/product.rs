//! n-fold OR powers with big-endian tuple indexing.
//!
//! The power is built in the block layout `A^n = A ⊗ J + I ⊗ A^{n-1}`:
//! tuples sharing a first coordinate form a copy of `G^{n-1}`, blocks whose
//! first coordinates are adjacent are joined completely, other blocks not at
//! all. Equivalently two tuples are adjacent iff the first coordinate where
//! they differ is an edge of `G`. This is the layout behind the degree
//! `2(V^n-1)/(V-1)` of cycle powers and the spectra used throughout.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::limits::{self, Limits};

/// Bijection `[V]^n <-> [V^n]`, most significant coordinate first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TupleIndex {
    pub base: usize,
    pub len: usize,
}

impl TupleIndex {
    pub fn new(base: usize, len: usize) -> Self {
        TupleIndex { base, len }
    }

    pub fn size(&self) -> usize {
        self.base.pow(self.len as u32)
    }

    pub fn encode(&self, tuple: &[usize]) -> Result<usize> {
        if tuple.len() != self.len {
            return Err(Error::invalid(format!(
                "tuple has length {}, expected {}",
                tuple.len(),
                self.len
            )));
        }
        tuple.iter().try_fold(0usize, |acc, &x| {
            if x >= self.base {
                Err(Error::invalid(format!("symbol {x} outside 0..{}", self.base)))
            } else {
                Ok(acc * self.base + x)
            }
        })
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.len];
        for slot in out.iter_mut().rev() {
            *slot = index % self.base;
            index /= self.base;
        }
        out
    }

    /// Index range of sub-graph block `l`: tuples whose first coordinate is `l`.
    pub fn block(&self, l: usize) -> std::ops::Range<usize> {
        let w = self.base.pow(self.len as u32 - 1);
        l * w..(l + 1) * w
    }
}

/// A materialized power together with its provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct OrPower {
    pub graph: Graph,
    pub index: TupleIndex,
}

pub fn or_power(g: &Graph, n: usize, limits: &Limits) -> Result<OrPower> {
    if n == 0 {
        return Err(Error::invalid("power must be at least 1"));
    }
    let v = g.vertex_count();
    let size = (v as u128)
        .checked_pow(n as u32)
        .unwrap_or(u128::MAX);
    limits::check("OR power", size, limits.power_vertices)?;
    let index = TupleIndex::new(v, n);
    let total = size as usize;
    let rows = (0..total)
        .map(|x| {
            let t = index.decode(x);
            let mut row = VertexSet::new(total);
            let mut prefix = 0usize;
            for (j, &xj) in t.iter().enumerate() {
                let width = v.pow((n - j - 1) as u32);
                for w in g.neighbors(xj).iter() {
                    let lo = (prefix * v + w) * width;
                    row.insert_range(lo, lo + width);
                }
                prefix = prefix * v + xj;
            }
            row
        })
        .collect();
    Ok(OrPower {
        graph: Graph::from_rows(rows),
        index,
    })
}

impl OrPower {
    /// Induced sub-graph on block `l`, a copy of the `(n-1)`-fold power.
    pub fn subgraph_view(&self, l: usize) -> Result<Graph> {
        if l >= self.index.base {
            return Err(Error::invalid(format!("block {l} out of range")));
        }
        if self.index.len == 1 {
            return Ok(Graph::edgeless(1));
        }
        let members: Vec<usize> = self.index.block(l).collect();
        Ok(self.graph.induced(&members))
    }

    /// Number of edges between blocks `l` and `m`.
    pub fn cross_block_edges(&self, l: usize, m: usize) -> usize {
        let bm: Vec<usize> = self.index.block(m).collect();
        self.index
            .block(l)
            .map(|x| bm.iter().filter(|&&y| self.graph.has_edge(x, y)).count())
            .sum()
    }
}

/// Lexicographic product `G[H]`: `(a, x) ~ (b, y)` iff `a ~ b`, or `a = b` and `x ~ y`.
/// Vertex `(a, x)` has index `a·|H| + x`.
pub fn lexicographic_product(g: &Graph, h: &Graph) -> Graph {
    let (a, b) = (g.vertex_count(), h.vertex_count());
    let rows = (0..a * b)
        .map(|x| {
            let (x1, x2) = (x / b, x % b);
            let mut row = VertexSet::new(a * b);
            for w in g.neighbors(x1).iter() {
                row.insert_range(w * b, (w + 1) * b);
            }
            for w in h.neighbors(x2).iter() {
                row.insert(x1 * b + w);
            }
            row
        })
        .collect();
    Graph::from_rows(rows)
}

#[derive(Clone, Debug, PartialEq)]
pub enum DegreeFamily {
    Cycle { v: usize },
    Regular { d: usize, v: usize },
    /// Degrees of the base graph, one per vertex.
    General { degrees: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Degrees {
    Uniform(u128),
    /// One entry per tuple, in tuple-index order.
    PerVertex(Vec<u128>),
}

fn geometric(v: u128, n: usize) -> u128 {
    // 1 + V + ... + V^{n-1} = (V^n - 1)/(V - 1)
    (0..n as u32).map(|j| v.pow(j)).sum()
}

pub fn degree_formula(family: &DegreeFamily, n: usize, limits: &Limits) -> Result<Degrees> {
    if n == 0 {
        return Err(Error::invalid("power must be at least 1"));
    }
    match family {
        DegreeFamily::Cycle { v } => {
            if *v < 3 {
                return Err(Error::invalid("cycle needs at least 3 vertices"));
            }
            Ok(Degrees::Uniform(2 * geometric(*v as u128, n)))
        }
        DegreeFamily::Regular { d, v } => {
            if d >= v || (d * v) % 2 == 1 {
                return Err(Error::invalid(format!("no {d}-regular graph on {v} vertices")));
            }
            Ok(Degrees::Uniform(*d as u128 * geometric(*v as u128, n)))
        }
        DegreeFamily::General { degrees } => {
            let v = degrees.len();
            if v == 0 || degrees.iter().any(|&d| d >= v) {
                return Err(Error::invalid("base degrees must be below the vertex count"));
            }
            let size = (v as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
            limits::check("per-tuple degrees", size, limits.power_vertices)?;
            let index = TupleIndex::new(v, n);
            Ok(Degrees::PerVertex(
                (0..size as usize)
                    .map(|x| {
                        index
                            .decode(x)
                            .iter()
                            .enumerate()
                            .map(|(j, &s)| degrees[s] as u128 * (v as u128).pow((n - 1 - j) as u32))
                            .sum()
                    })
                    .collect(),
            ))
        }
    }
}

/// Degree of the constant tuple `(x, ..., x)`: `deg(x) + Σ_{j=1}^{n-1} deg(x)·V^j`.
pub fn constant_tuple_degree(deg: usize, v: usize, n: usize) -> u128 {
    deg as u128 * geometric(v as u128, n)
}

/// `E^n = V^n · deg / 2` summed over tuples, i.e. `E·V^{n-1}·(V^n-1)/(V-1)`.
pub fn power_edge_count(v: usize, e: usize, n: usize) -> u128 {
    e as u128 * (v as u128).pow(n as u32 - 1) * geometric(v as u128, n)
}
