//! Undirected simple graphs stored as bitset rows.
//!
//! Vertices are 0-indexed. Where the literature numbers cycle vertices
//! 1..V clockwise, vertex `i` here is vertex `i + 1` there.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::{self, Limits};

/// A subset of `[V]` as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VertexSet {
    len: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(len: usize) -> Self {
        VertexSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = VertexSet::new(len);
        for v in 0..len {
            s.insert(v);
        }
        s
    }

    pub fn from_members(len: usize, members: &[usize]) -> Result<Self> {
        let mut s = VertexSet::new(len);
        for &v in members {
            if v >= len {
                return Err(Error::invalid(format!("vertex {v} out of range 0..{len}")));
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Universe size.
    pub fn universe(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.len && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    /// Inserts every id in `lo..hi`.
    pub fn insert_range(&mut self, lo: usize, hi: usize) {
        let mut v = lo;
        while v < hi {
            if v.is_multiple_of(64) && v + 64 <= hi {
                self.words[v / 64] = u64::MAX;
                v += 64;
            } else {
                self.insert(v);
                v += 1;
            }
        }
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn intersect(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(),
        }
    }

    pub fn intersection_count(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    rows: Vec<VertexSet>,
    edge_count: usize,
}

/// Wire format: `{"vertices": V, "edges": [[u, v], ...]}`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

impl Graph {
    pub fn edgeless(v: usize) -> Graph {
        Graph {
            rows: (0..v).map(|_| VertexSet::new(v)).collect(),
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(v: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if v == 0 {
            return Err(Error::invalid("graph needs at least one vertex"));
        }
        let mut g = Graph::edgeless(v);
        for &(a, b) in edges {
            if a >= v || b >= v {
                return Err(Error::invalid(format!("edge ({a},{b}) out of range 0..{v}")));
            }
            if a == b {
                return Err(Error::invalid(format!("self-loop at {a}")));
            }
            if g.has_edge(a, b) {
                return Err(Error::invalid(format!("duplicate edge ({a},{b})")));
            }
            g.add_edge_unchecked(a, b);
        }
        Ok(g)
    }

    /// Builds from rows that are already known to be symmetric with empty diagonal.
    pub(crate) fn from_rows(rows: Vec<VertexSet>) -> Graph {
        let twice: usize = rows.iter().map(VertexSet::count).sum();
        debug_assert!(rows.iter().enumerate().all(|(i, r)| !r.contains(i)));
        Graph {
            rows,
            edge_count: twice / 2,
        }
    }

    pub(crate) fn add_edge_unchecked(&mut self, a: usize, b: usize) {
        if !self.rows[a].contains(b) {
            self.rows[a].insert(b);
            self.rows[b].insert(a);
            self.edge_count += 1;
        }
    }

    pub fn cycle(v: usize) -> Result<Graph> {
        if v < 3 {
            return Err(Error::invalid("cycle needs at least 3 vertices"));
        }
        let edges: Vec<_> = (0..v).map(|i| (i, (i + 1) % v)).collect();
        Graph::from_edges(v, &edges)
    }

    pub fn complete(v: usize) -> Result<Graph> {
        if v == 0 {
            return Err(Error::invalid("complete graph needs at least 1 vertex"));
        }
        let mut g = Graph::edgeless(v);
        for a in 0..v {
            for b in a + 1..v {
                g.add_edge_unchecked(a, b);
            }
        }
        Ok(g)
    }

    pub fn path(v: usize) -> Result<Graph> {
        if v == 0 {
            return Err(Error::invalid("path needs at least 1 vertex"));
        }
        let edges: Vec<_> = (1..v).map(|i| (i - 1, i)).collect();
        Graph::from_edges(v, &edges)
    }

    /// Triangular prism: two triangles joined by a perfect matching. 3-regular on 6 vertices.
    pub fn prism() -> Graph {
        Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        )
        .expect("static edge list")
    }

    /// Builds from a dense 0/1 matrix; must be symmetric with zero diagonal.
    pub fn from_matrix(m: &[Vec<u8>]) -> Result<Graph> {
        let v = m.len();
        let mut edges = Vec::new();
        for (i, row) in m.iter().enumerate() {
            if row.len() != v {
                return Err(Error::invalid("matrix is not square"));
            }
            if row[i] != 0 {
                return Err(Error::invalid(format!("nonzero diagonal at {i}")));
            }
            for (j, &x) in row.iter().enumerate() {
                if x > 1 || x != m[j][i] {
                    return Err(Error::invalid(format!("entry ({i},{j}) not symmetric 0/1")));
                }
                if x == 1 && i < j {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges(v, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        if v >= self.vertex_count() {
            return Err(Error::invalid(format!("vertex {v} out of range")));
        }
        Ok(self.rows[v].count())
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.rows.iter().map(VertexSet::count).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    pub fn average_degree(&self) -> f64 {
        2.0 * self.edge_count as f64 / self.vertex_count() as f64
    }

    /// Common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degrees();
        d.iter().all(|&x| x == d[0]).then_some(d[0])
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, row) in self.rows.iter().enumerate() {
            out.extend(row.iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn adjacency_matrix(&self) -> Vec<Vec<u8>> {
        let v = self.vertex_count();
        self.rows
            .iter()
            .map(|r| (0..v).map(|j| r.contains(j) as u8).collect())
            .collect()
    }

    pub fn complement(&self) -> Graph {
        let v = self.vertex_count();
        let rows = (0..v)
            .map(|i| {
                let mut r = VertexSet::full(v).difference(&self.rows[i]);
                r.remove(i);
                r
            })
            .collect();
        Graph::from_rows(rows)
    }

    pub fn induced(&self, members: &[usize]) -> Graph {
        let k = members.len();
        let mut g = Graph::edgeless(k);
        for i in 0..k {
            for j in i + 1..k {
                if self.has_edge(members[i], members[j]) {
                    g.add_edge_unchecked(i, j);
                }
            }
        }
        g
    }

    pub fn union(&self, other: &Graph) -> Result<Graph> {
        if self.vertex_count() != other.vertex_count() {
            return Err(Error::invalid("graph union needs equal vertex counts"));
        }
        Ok(Graph::from_rows(
            self.rows.iter().zip(&other.rows).map(|(a, b)| a.union(b)).collect(),
        ))
    }

    pub fn is_connected(&self) -> bool {
        let v = self.vertex_count();
        let mut seen = VertexSet::new(v);
        let mut stack = vec![0];
        seen.insert(0);
        while let Some(u) = stack.pop() {
            for w in self.rows[u].iter() {
                if !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen.count() == v
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.rows[v].intersection_count(s) == 0)
    }

    /// Bipartiteness by BFS 2-coloring.
    pub fn is_bipartite(&self) -> bool {
        let v = self.vertex_count();
        let mut side = vec![u8::MAX; v];
        for s in 0..v {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for w in self.rows[u].iter() {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// All maximal independent sets, by Bron–Kerbosch with pivoting on the complement.
    pub fn maximal_independent_sets(&self, limits: &Limits) -> Result<Vec<VertexSet>> {
        limits::check("MIS enumeration", self.vertex_count() as u128, limits.mis_vertices)?;
        let co = self.complement();
        let v = self.vertex_count();
        let mut out = Vec::new();
        bron_kerbosch(&co, VertexSet::new(v), VertexSet::full(v), VertexSet::new(v), &mut out);
        out.sort_by_key(|a| a.to_vec());
        Ok(out)
    }

    /// Size of the largest independent set, `|MIS_G|`.
    pub fn independence_number(&self, limits: &Limits) -> Result<usize> {
        Ok(self
            .maximal_independent_sets(limits)?
            .iter()
            .map(VertexSet::count)
            .max()
            .unwrap_or(0))
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.vertex_count(),
            edges: self.edges().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Graph> {
        let edges: Vec<_> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(j.vertices, &edges)
    }
}

fn bron_kerbosch(g: &Graph, r: VertexSet, mut p: VertexSet, mut x: VertexSet, out: &mut Vec<VertexSet>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = p
        .union(&x)
        .iter()
        .max_by_key(|&u| (g.neighbors(u).intersection_count(&p), std::cmp::Reverse(u)))
        .expect("p is nonempty");
    let candidates = p.difference(g.neighbors(pivot));
    for v in candidates.iter() {
        let mut r2 = r.clone();
        r2.insert(v);
        let nv = g.neighbors(v);
        bron_kerbosch(g, r2, p.intersect(nv), x.intersect(nv), out);
        p.remove(v);
        x.insert(v);
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_mis(g: &Graph) -> Vec<Vec<usize>> {
        let v = g.vertex_count();
        let indep = |m: u32| {
            (0..v).all(|a| (0..v).all(|b| m >> a & 1 == 0 || m >> b & 1 == 0 || !g.has_edge(a, b)))
        };
        let mut out = Vec::new();
        for m in 0u32..1 << v {
            if indep(m) && (0..v).all(|w| m >> w & 1 == 1 || !indep(m | 1 << w)) {
                out.push((0..v).filter(|&i| m >> i & 1 == 1).collect());
            }
        }
        out.sort();
        out
    }

    #[test]
    fn constructors() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.edge_count(), 5);
        assert_eq!(c5.degrees(), vec![2; 5]);
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(k5.edge_count(), 10);
        assert_eq!(k5.regular_degree(), Some(4));
        let p3 = Graph::path(3).unwrap();
        assert_eq!(p3.degree(1).unwrap(), 2);
        assert_eq!(Graph::prism().regular_degree(), Some(3));
        assert!(Graph::cycle(2).is_err());
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::cycle(5).unwrap().degree(5).is_err());
    }

    #[test]
    fn example5_matrix_round_trips() {
        let g = crate::worked::example5_graph();
        assert_eq!(g.degree(1).unwrap(), 3);
        assert_eq!(g.adjacency_matrix()[1], vec![1, 0, 1, 1, 0]);
        assert_eq!(Graph::from_matrix(&g.adjacency_matrix()).unwrap(), g);
    }

    #[test]
    fn dense_export() {
        let c4 = Graph::cycle(4).unwrap().adjacency_matrix();
        assert_eq!(c4[0], vec![0, 1, 0, 1]);
        assert_eq!(Graph::complete(2).unwrap().adjacency_matrix(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn mis_small_cases() {
        let l = Limits::default();
        let c5 = Graph::cycle(5).unwrap().maximal_independent_sets(&l).unwrap();
        assert_eq!(c5.len(), 5);
        assert!(c5.iter().all(|s| s.count() == 2));
        let k5 = Graph::complete(5).unwrap().maximal_independent_sets(&l).unwrap();
        assert_eq!(k5.len(), 5);
        assert!(k5.iter().all(|s| s.count() == 1));
    }

    #[test]
    fn mis_guard() {
        let g = Graph::cycle(30).unwrap();
        let err = g.maximal_independent_sets(&Limits::default()).unwrap_err();
        assert!(err.is_guard());
    }

    #[test]
    fn bipartite() {
        assert!(Graph::cycle(6).unwrap().is_bipartite());
        assert!(!Graph::cycle(7).unwrap().is_bipartite());
    }

    #[test]
    fn json_is_sorted() {
        let g = Graph::from_edges(3, &[(2, 1), (1, 0)]).unwrap();
        assert_eq!(g.to_json().edges, vec![[0, 1], [1, 2]]);
        assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
    }

    pub(crate) fn arb_graph(max_v: usize) -> impl Strategy<Value = Graph> {
        (1..=max_v).prop_flat_map(|v| {
            proptest::collection::vec(any::<bool>(), v * (v - 1) / 2).prop_map(move |bits| {
                let mut g = Graph::edgeless(v);
                let mut k = 0;
                for a in 0..v {
                    for b in a + 1..v {
                        if bits[k] {
                            g.add_edge_unchecked(a, b);
                        }
                        k += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn handshake(g in arb_graph(12)) {
            prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
            let m = g.adjacency_matrix();
            for (i, row) in m.iter().enumerate() {
                prop_assert_eq!(row[i], 0);
                for (j, &x) in row.iter().enumerate() {
                    prop_assert_eq!(x, m[j][i]);
                }
            }
        }

        #[test]
        fn mis_matches_brute_force(g in arb_graph(12)) {
            let got: Vec<Vec<usize>> = g
                .maximal_independent_sets(&Limits::default())
                .unwrap()
                .iter()
                .map(VertexSet::to_vec)
                .collect();
            prop_assert_eq!(got, brute_mis(&g));
        }
    }
}
