use std::time::Instant;

use super::Coloring;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::limits::{self, Limits};

#[derive(Clone, Debug)]
pub struct ExactResult {
    pub chi: usize,
    pub coloring: Coloring,
    /// Clique used to seed the search.
    pub clique: Vec<usize>,
    /// Root lower bound: max of clique size and ceil(V / alpha).
    pub lower_bound: usize,
    pub nodes: u64,
}

/// Chromatic number by DSATUR branch and bound.
///
/// Vertices in a maximum clique are precolored; branching picks the vertex
/// of highest saturation, then most uncolored neighbours, then lowest id.
pub fn exact_chromatic_number(g: &Graph, limits: &Limits) -> Result<ExactResult> {
    let v = g.vertex_count();
    limits::check("exact coloring", v as u128, limits.exact_vertices)?;
    let start = Instant::now();

    let clique = max_clique(g);
    let alpha = max_clique(&g.complement()).len().max(1);
    let lower_bound = clique.len().max(v.div_ceil(alpha));

    let adj: Vec<Vec<usize>> = (0..v).map(|u| g.neighbors(u).to_vec()).collect();
    let greedy = dsatur_greedy(&adj);
    let mut s = Search {
        adj: &adj,
        color: vec![NONE; v],
        counts: vec![vec![0; greedy.palette() + 1]; v],
        sat: vec![0; v],
        uncolored_deg: adj.iter().map(Vec::len).collect(),
        best: greedy.palette(),
        best_colors: greedy.assignment().to_vec(),
        lower_bound,
        nodes: 0,
        start,
        timeout: limits.exact_timeout,
        timed_out: false,
        done: greedy.palette() <= lower_bound,
    };
    if !s.done {
        for (c, &u) in clique.iter().enumerate() {
            s.assign(u, c);
        }
        s.search(v - clique.len(), clique.len());
    }
    if s.timed_out {
        return Err(Error::Timeout(limits.exact_timeout));
    }
    let coloring = Coloring::compact(&s.best_colors);
    debug_assert_eq!(coloring.palette(), s.best);
    Ok(ExactResult {
        chi: s.best,
        coloring,
        clique,
        lower_bound,
        nodes: s.nodes,
    })
}

const NONE: usize = usize::MAX;

struct Search<'a> {
    adj: &'a [Vec<usize>],
    color: Vec<usize>,
    counts: Vec<Vec<u32>>,
    sat: Vec<usize>,
    uncolored_deg: Vec<usize>,
    best: usize,
    best_colors: Vec<usize>,
    lower_bound: usize,
    nodes: u64,
    start: Instant,
    timeout: std::time::Duration,
    timed_out: bool,
    done: bool,
}

impl Search<'_> {
    fn assign(&mut self, u: usize, c: usize) {
        self.color[u] = c;
        let adj = self.adj;
        for &w in &adj[u] {
            if self.counts[w][c] == 0 {
                self.sat[w] += 1;
            }
            self.counts[w][c] += 1;
            self.uncolored_deg[w] -= 1;
        }
    }

    fn unassign(&mut self, u: usize) {
        let c = self.color[u];
        self.color[u] = NONE;
        let adj = self.adj;
        for &w in &adj[u] {
            self.counts[w][c] -= 1;
            if self.counts[w][c] == 0 {
                self.sat[w] -= 1;
            }
            self.uncolored_deg[w] += 1;
        }
    }

    fn pick(&self) -> usize {
        let mut best = NONE;
        for u in 0..self.color.len() {
            if self.color[u] != NONE {
                continue;
            }
            if best == NONE
                || (self.sat[u], self.uncolored_deg[u]) > (self.sat[best], self.uncolored_deg[best])
            {
                best = u;
            }
        }
        best
    }

    fn search(&mut self, remaining: usize, used: usize) {
        if self.done {
            return;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) && self.start.elapsed() > self.timeout {
            self.timed_out = true;
            self.done = true;
            return;
        }
        if remaining == 0 {
            self.best = used;
            self.best_colors = self.color.clone();
            if used <= self.lower_bound {
                self.done = true;
            }
            return;
        }
        let u = self.pick();
        // Any completion needs at least sat(u)+1 colors.
        if self.sat[u] + 1 >= self.best {
            return;
        }
        let limit = (used + 1).min(self.best - 1);
        for c in 0..limit {
            if self.counts[u][c] != 0 {
                continue;
            }
            self.assign(u, c);
            self.search(remaining - 1, used.max(c + 1));
            self.unassign(u);
            if self.done || used >= self.best {
                return;
            }
        }
    }
}

/// Greedy DSATUR, used as the initial upper bound.
fn dsatur_greedy(adj: &[Vec<usize>]) -> Coloring {
    let v = adj.len();
    let mut color = vec![NONE; v];
    let mut forbidden: Vec<Vec<bool>> = vec![vec![false; v + 1]; v];
    let mut sat = vec![0usize; v];
    for _ in 0..v {
        let u = (0..v)
            .filter(|&u| color[u] == NONE)
            .max_by_key(|&u| (sat[u], adj[u].len(), std::cmp::Reverse(u)))
            .expect("uncolored vertex remains");
        let c = (0..).find(|&c| !forbidden[u][c]).expect("free color");
        color[u] = c;
        for &w in &adj[u] {
            if !forbidden[w][c] {
                forbidden[w][c] = true;
                sat[w] += 1;
            }
        }
    }
    Coloring::compact(&color)
}

/// A maximum clique, by branch and bound with a greedy-coloring bound.
/// Ties resolve toward lower vertex ids, so the result is deterministic.
pub fn max_clique(g: &Graph) -> Vec<usize> {
    let v = g.vertex_count();
    let mut order: Vec<usize> = (0..v).collect();
    order.sort_by_key(|&u| (std::cmp::Reverse(g.neighbors(u).count()), u));
    // Greedy seed.
    let mut best: Vec<usize> = Vec::new();
    for &s in &order {
        let mut c = vec![s];
        for &u in &order {
            if u != s && c.iter().all(|&w| g.has_edge(u, w)) {
                c.push(u);
            }
        }
        if c.len() > best.len() {
            best = c;
        }
    }
    let mut current = Vec::new();
    expand(g, &mut current, VertexSet::full(v), &mut best);
    best.sort_unstable();
    best
}

fn expand(g: &Graph, current: &mut Vec<usize>, mut cand: VertexSet, best: &mut Vec<usize>) {
    // Greedy color classes give an upper bound on the clique inside `cand`.
    let mut bounded: Vec<(usize, usize)> = Vec::new();
    let mut rest = cand.clone();
    let mut k = 0;
    while !rest.is_empty() {
        k += 1;
        let mut q = rest.clone();
        while let Some(u) = q.first() {
            q.remove(u);
            q = q.difference(g.neighbors(u));
            rest.remove(u);
            bounded.push((u, k));
        }
    }
    while let Some((u, k)) = bounded.pop() {
        if current.len() + k <= best.len() {
            return;
        }
        current.push(u);
        let next = cand.intersect(g.neighbors(u));
        if next.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            expand(g, current, next, best);
        }
        current.pop();
        cand.remove(u);
    }
}
