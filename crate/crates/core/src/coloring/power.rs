use super::{b_fold_chromatic_number, exact_chromatic_number, Coloring};
use crate::error::Result;
use crate::graph::Graph;
use crate::limits::Limits;

#[derive(Clone, Debug)]
pub struct PowerChromatic {
    /// `χ(G^m)` for `m = 1..=n`.
    pub chain: Vec<usize>,
    /// Witness on the n-fold power when it fits the power budget.
    pub coloring: Option<Coloring>,
}

impl PowerChromatic {
    pub fn chi(&self) -> usize {
        *self.chain.last().expect("chain is nonempty")
    }
}

/// Exact `χ(G^n)` through `χ(G[H]) = χ_{χ(H)}(G)`, which only ever colors
/// the base graph. If `c` colors `H` with `s` colors and vertex `v` of `G`
/// holds the color set `S(v)` of an `s`-fold coloring, then `(v, h)` gets
/// the `c(h)`-th member of `S(v)`.
pub fn exact_power_chromatic(g: &Graph, n: usize, limits: &Limits) -> Result<PowerChromatic> {
    if n == 0 {
        return Err(crate::error::Error::invalid("power must be at least 1"));
    }
    let base = exact_chromatic_number(g, limits)?;
    let v = g.vertex_count();
    let mut chain = vec![base.chi];
    let mut witness = Some(base.coloring.assignment().to_vec());
    for m in 2..=n {
        let s = chain[m - 2];
        let fold = b_fold_chromatic_number(g, s, limits)?;
        chain.push(fold.a);
        let fits = (v as u128)
            .checked_pow(m as u32)
            .is_some_and(|size| size <= limits.power_vertices as u128);
        witness = match witness {
            Some(inner) if fits => Some(
                (0..v)
                    .flat_map(|x| inner.iter().map(|&c| fold.sets[x][c]).collect::<Vec<_>>())
                    .collect(),
            ),
            _ => None,
        };
    }
    Ok(PowerChromatic {
        chain,
        coloring: witness.map(|w| Coloring::compact(&w)),
    })
}
