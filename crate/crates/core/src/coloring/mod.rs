//! Proper colorings: validation, greedy and exact colorers, and the
//! closed-form schemes for cycle and regular powers.

mod exact;
mod fractional;
mod power;
mod schemes;

pub use exact::{exact_chromatic_number, max_clique, ExactResult};
pub use fractional::{
    b_fold_chromatic_number, cycle_fractional_chromatic, cycle_power_fractional_chromatic,
    fractional_chromatic_cycle, is_valid_fractional, FractionalColoring,
    FractionalCycle,
};
pub use power::{exact_power_chromatic, PowerChromatic};
pub use schemes::{
    complete_power_chromatic, even_cycle_power_coloring, greedy_gain, odd_cycle_chromatic_count,
    odd_cycle_power_coloring, regular_power_chromatic, GreedyGain, RegularPowerReport,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    assignment: Vec<usize>,
    palette: usize,
}

/// Wire format: `{"colors": [...], "palette": a}`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ColoringJson {
    pub colors: Vec<usize>,
    pub palette: usize,
}

impl Coloring {
    /// Wraps an assignment whose ids must cover `0..palette` with no gaps.
    pub fn new(assignment: Vec<usize>) -> Result<Coloring> {
        let palette = assignment.iter().max().map_or(0, |m| m + 1);
        let mut used = vec![false; palette];
        for &c in &assignment {
            used[c] = true;
        }
        if used.iter().any(|u| !u) {
            return Err(Error::invalid("color ids are not contiguous from 0"));
        }
        Ok(Coloring { assignment, palette })
    }

    /// Renumbers colors by first appearance, so any assignment becomes contiguous.
    pub fn compact(assignment: &[usize]) -> Coloring {
        let mut map = std::collections::HashMap::new();
        let out: Vec<usize> = assignment
            .iter()
            .map(|c| {
                let n = map.len();
                *map.entry(*c).or_insert(n)
            })
            .collect();
        Coloring {
            palette: map.len(),
            assignment: out,
        }
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn color(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// Vertices of each color class.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.palette];
        for (v, &c) in self.assignment.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    pub fn to_json(&self) -> ColoringJson {
        ColoringJson {
            colors: self.assignment.clone(),
            palette: self.palette,
        }
    }

    pub fn from_json(j: &ColoringJson) -> Result<Coloring> {
        let c = Coloring::new(j.colors.clone())?;
        if c.palette != j.palette {
            return Err(Error::invalid("palette does not match colors"));
        }
        Ok(c)
    }
}

/// First monochromatic edge, if any.
pub fn conflict(g: &Graph, c: &Coloring) -> Result<Option<(usize, usize)>> {
    if g.vertex_count() != c.len() {
        return Err(Error::invalid(format!(
            "coloring has {} entries for {} vertices",
            c.len(),
            g.vertex_count()
        )));
    }
    Ok(g.edges().into_iter().find(|&(a, b)| c.color(a) == c.color(b)))
}

pub fn is_valid_coloring(g: &Graph, c: &Coloring) -> Result<bool> {
    Ok(conflict(g, c)?.is_none())
}

/// Errors with the offending edge when the coloring is not proper.
pub fn ensure_valid(g: &Graph, c: &Coloring) -> Result<()> {
    match conflict(g, c)? {
        Some((a, b)) => Err(Error::InvalidColoring(a, b)),
        None => Ok(()),
    }
}

/// First-fit coloring along `order`.
pub fn greedy_coloring(g: &Graph, order: &[usize]) -> Result<Coloring> {
    let v = g.vertex_count();
    let mut seen = vec![false; v];
    if order.len() != v || order.iter().any(|&x| x >= v || std::mem::replace(&mut seen[x], true)) {
        return Err(Error::invalid("order is not a permutation of the vertices"));
    }
    let mut color = vec![usize::MAX; v];
    let mut taken = vec![usize::MAX; v + 1];
    for &u in order {
        for w in g.neighbors(u).iter() {
            if color[w] != usize::MAX {
                taken[color[w]] = u;
            }
        }
        let c = (0..).find(|&c| taken[c] != u).expect("a free color exists");
        color[u] = c;
    }
    Ok(Coloring::compact(&color))
}

pub fn natural_order(v: usize) -> Vec<usize> {
    (0..v).collect()
}
