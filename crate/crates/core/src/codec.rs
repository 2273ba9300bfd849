//! End-to-end two-source codec: block colorings, Huffman codes on the color
//! distributions, and a receiver lookup table keyed by color pairs.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num::Zero;
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chargraph::{build_characteristic_graph, FunctionSpec, JointPmf, Source};
use crate::coloring::{
    ensure_valid, even_cycle_power_coloring, exact_chromatic_number, exact_power_chromatic, greedy_coloring,
    is_valid_coloring, natural_order, odd_cycle_power_coloring, Coloring,
};
use crate::entropy::{
    chromatic_entropy_bruteforce, fractional_entropy_lower_bound, general_entropy_upper_bound, huffman_code,
    HuffmanCode,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::{self, Limits};
use crate::product::{or_power, OrPower, TupleIndex};
use crate::rational::{self, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Exact,
    Greedy,
    EvenCycle,
    OddCycle,
    /// Colorings handed in by the caller.
    Supplied,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [Strategy::Exact, Strategy::Greedy, Strategy::EvenCycle, Strategy::OddCycle];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Exact => "exact",
            Strategy::Greedy => "greedy",
            Strategy::EvenCycle => "even-cycle",
            Strategy::OddCycle => "odd-cycle",
            Strategy::Supplied => "supplied",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Strategy> {
        Strategy::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown coloring strategy {s:?}")))
    }
}

/// One side of the codec.
#[derive(Clone, Debug)]
pub struct SourcePlan {
    pub source: Source,
    pub graph: Graph,
    pub power: OrPower,
    /// Strategy actually used. A cycle scheme falls back to `Exact` when it
    /// does not fit.
    pub strategy: Strategy,
    /// Colors blocks of `n` symbols, indexed like `power`.
    pub coloring: Coloring,
    pub marginal: Vec<Q>,
    /// Probability of each color under the i.i.d. block distribution.
    pub color_pmf: Vec<Q>,
    pub code: HuffmanCode,
}

impl SourcePlan {
    pub fn alphabet(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn color_of(&self, block: &[usize]) -> Result<usize> {
        if block.len() != self.power.index.len {
            return Err(Error::invalid(format!(
                "block has {} symbols, codec uses {}",
                block.len(),
                self.power.index.len
            )));
        }
        if let Some(&s) = block.iter().find(|&&s| s >= self.alphabet()) {
            return Err(Error::invalid(format!("symbol {s} outside alphabet of size {}", self.alphabet())));
        }
        Ok(self.coloring.color(self.power.index.encode(block)?))
    }

    pub fn coloring_entropy(&self) -> f64 {
        rational::entropy_bits(&self.color_pmf)
    }
}

#[derive(Clone, Debug)]
pub struct CodecPlan {
    pub n: usize,
    pub spec: FunctionSpec,
    pub pmf: JointPmf,
    pub sources: [SourcePlan; 2],
    /// `(color1, color2)` to the outcome block.
    pub decoder: HashMap<(usize, usize), Vec<usize>>,
}

/// Blocks `x, x'` are adjacent iff some side block makes both positive and
/// separates them under coordinatewise `f`. With i.i.d. coordinates that is:
/// every coordinate pair shares a side symbol, and some coordinate pair is an
/// edge of the single-letter graph.
pub fn block_characteristic_graph(
    spec: &FunctionSpec,
    pmf: &JointPmf,
    source: Source,
    n: usize,
    limits: &Limits,
) -> Result<Graph> {
    let base = build_characteristic_graph(spec, pmf, source)?;
    let (n1, n2) = spec.dims();
    let (own, side) = match source {
        Source::One => (n1, n2),
        Source::Two => (n2, n1),
    };
    let positive = |x: usize, y: usize| match source {
        Source::One => pmf.positive(x, y),
        Source::Two => pmf.positive(y, x),
    };
    let compat: Vec<Vec<bool>> = (0..own)
        .map(|a| (0..own).map(|b| (0..side).any(|y| positive(a, y) && positive(b, y))).collect())
        .collect();
    let size = block_count(own, n, limits)?;
    let idx = TupleIndex::new(own, n);
    let tuples: Vec<Vec<usize>> = (0..size).map(|x| idx.decode(x)).collect();
    let mut edges = Vec::new();
    for x in 0..size {
        for y in x + 1..size {
            let (s, t) = (&tuples[x], &tuples[y]);
            let all_compat = s.iter().zip(t).all(|(&a, &b)| compat[a][b]);
            if all_compat && s.iter().zip(t).any(|(&a, &b)| base.has_edge(a, b)) {
                edges.push((x, y));
            }
        }
    }
    Graph::from_edges(size, &edges)
}

fn block_count(v: usize, n: usize, limits: &Limits) -> Result<usize> {
    if n == 0 {
        return Err(Error::invalid("block length must be at least 1"));
    }
    let size = (v as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    limits::check("codec blocks", size, limits.power_vertices)?;
    Ok(size as usize)
}

fn is_subgraph(a: &Graph, b: &Graph) -> bool {
    a.edges().into_iter().all(|(x, y)| b.has_edge(x, y))
}

fn block_pmf(marginal: &[Q], n: usize, limits: &Limits) -> Result<Vec<Q>> {
    let size = block_count(marginal.len(), n, limits)?;
    let idx = TupleIndex::new(marginal.len(), n);
    Ok((0..size)
        .map(|x| idx.decode(x).iter().map(|&s| marginal[s].clone()).product())
        .collect())
}

/// Colors `target`, a supergraph of `power.graph`, according to `strategy`.
/// Returns the strategy actually used.
fn color_target(
    graph: &Graph,
    power: &OrPower,
    target: &Graph,
    strategy: Strategy,
    label: Source,
    limits: &Limits,
) -> Result<(Strategy, Coloring)> {
    let v = graph.vertex_count();
    let n = power.index.len;
    let is_cycle = Graph::cycle(v).is_ok_and(|c| c == *graph);
    let scheme = match strategy {
        Strategy::EvenCycle if v >= 4 && v.is_multiple_of(2) && is_cycle => Some(even_cycle_power_coloring(v / 2, n, limits)?),
        Strategy::OddCycle if v >= 5 && v % 2 == 1 && is_cycle => odd_cycle_power_coloring(v, n, limits)?.0,
        _ => None,
    };
    if let Some(c) = scheme {
        if is_valid_coloring(target, &c)? {
            return Ok((strategy, c));
        }
        log::info!("{strategy} coloring of {label:?} does not separate the receiver's conflicts; coloring exactly");
    } else if matches!(strategy, Strategy::EvenCycle | Strategy::OddCycle) {
        log::info!("{strategy} scheme does not fit the characteristic graph of {label:?}; coloring exactly");
    }
    if strategy == Strategy::Greedy {
        return Ok((Strategy::Greedy, greedy_coloring(target, &natural_order(target.vertex_count()))?));
    }
    let c = if is_subgraph(target, &power.graph) {
        exact_power_chromatic(graph, n, limits)?.coloring.ok_or_else(|| Error::Guard {
            what: "codec blocks",
            needed: power.graph.vertex_count() as u128,
            budget: limits.power_vertices as u128,
        })?
    } else {
        exact_chromatic_number(target, limits)?.coloring
    };
    Ok((Strategy::Exact, c))
}

fn finish_source(
    pmf: &JointPmf,
    source: Source,
    graph: Graph,
    power: OrPower,
    (strategy, coloring): (Strategy, Coloring),
    limits: &Limits,
) -> Result<SourcePlan> {
    ensure_valid(&power.graph, &coloring)?;
    let marginal = match source {
        Source::One => pmf.marginal1(),
        Source::Two => pmf.marginal2(),
    };
    let mut color_pmf = vec![Q::zero(); coloring.palette()];
    for (x, p) in block_pmf(&marginal, power.index.len, limits)?.into_iter().enumerate() {
        color_pmf[coloring.color(x)] += p;
    }
    let code = huffman_code(&color_pmf)?;
    Ok(SourcePlan {
        source,
        graph,
        power,
        strategy,
        coloring,
        marginal,
        color_pmf,
        code,
    })
}

/// Source-2 blocks `y ~ y'` iff some source-1 color class meets both in
/// positive pairs with different outcomes. Coloring this graph properly is
/// exactly what makes the receiver's table well defined.
fn receiver_conflicts(spec: &FunctionSpec, pmf: &JointPmf, first: &SourcePlan, limits: &Limits) -> Result<Graph> {
    let n = first.power.index.len;
    let size = block_count(pmf.dims().1, n, limits)?;
    let idx = TupleIndex::new(pmf.dims().1, n);
    let mut seen: HashMap<(usize, usize), (Vec<usize>, Vec<usize>)> = HashMap::new();
    for_each_positive_block(pmf, n, limits, |b1, b2| {
        let key = (first.color_of(b1)?, idx.encode(b2)?);
        let out = apply(spec, b1, b2);
        match seen.get(&key) {
            Some((o, w1)) if *o != out => Err(Error::Ambiguous {
                x1: w1.clone(),
                x2: b2.to_vec(),
                y1: b1.to_vec(),
                y2: b2.to_vec(),
            }),
            Some(_) => Ok(()),
            None => {
                seen.insert(key, (out, b1.to_vec()));
                Ok(())
            }
        }
    })?;
    let mut by_class: BTreeMap<usize, Vec<(usize, Vec<usize>)>> = BTreeMap::new();
    for ((c, y), (out, _)) in seen {
        by_class.entry(c).or_default().push((y, out));
    }
    let mut edges = Vec::new();
    for members in by_class.values() {
        for (i, (y, o)) in members.iter().enumerate() {
            for (y2, o2) in &members[i + 1..] {
                if o != o2 {
                    edges.push((*y.min(y2), *y.max(y2)));
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(size, &edges)
}

/// Every `(x1, x2)` with positive probability, as a list.
fn positive_pairs(pmf: &JointPmf) -> Vec<(usize, usize)> {
    let (n1, n2) = pmf.dims();
    (0..n1)
        .flat_map(|a| (0..n2).map(move |b| (a, b)))
        .filter(|&(a, b)| pmf.positive(a, b))
        .collect()
}

/// Calls `visit` on every positive-probability block pair.
fn for_each_positive_block(
    pmf: &JointPmf,
    n: usize,
    limits: &Limits,
    mut visit: impl FnMut(&[usize], &[usize]) -> Result<()>,
) -> Result<usize> {
    let pairs = positive_pairs(pmf);
    let total = (pairs.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    limits::check("positive block pairs", total, limits.power_vertices.saturating_mul(100))?;
    let idx = TupleIndex::new(pairs.len(), n);
    let (mut b1, mut b2) = (vec![0; n], vec![0; n]);
    for t in 0..total as usize {
        for (j, k) in idx.decode(t).into_iter().enumerate() {
            (b1[j], b2[j]) = pairs[k];
        }
        visit(&b1, &b2)?;
    }
    Ok(total as usize)
}

fn apply(spec: &FunctionSpec, b1: &[usize], b2: &[usize]) -> Vec<usize> {
    b1.iter().zip(b2).map(|(&a, &b)| spec.eval(a, b)).collect()
}

/// Colors both sources' `n`-blocks and tabulates the receiver.
///
/// Source 1 colors the union of its OR power and its block characteristic
/// graph. Source 2 then colors its OR power joined with the conflicts left by
/// source 1's classes, since two proper colorings alone need not give a
/// well-defined table. A cycle scheme is kept on a side only when it is proper
/// for that side's target; otherwise the side is colored exactly. The table is
/// still checked by enumerating positive-probability blocks.
pub fn build_codec(
    spec: &FunctionSpec,
    pmf: &JointPmf,
    n: usize,
    strategy: Strategy,
    limits: &Limits,
) -> Result<CodecPlan> {
    if spec.dims() != pmf.dims() {
        return Err(Error::invalid(format!("function is {:?} but pmf is {:?}", spec.dims(), pmf.dims())));
    }
    let g1 = build_characteristic_graph(spec, pmf, Source::One)?;
    let p1 = or_power(&g1, n, limits)?;
    let t1 = p1.graph.union(&block_characteristic_graph(spec, pmf, Source::One, n, limits)?)?;
    let c1 = color_target(&g1, &p1, &t1, strategy, Source::One, limits)?;
    let s1 = finish_source(pmf, Source::One, g1, p1, c1, limits)?;

    let g2 = build_characteristic_graph(spec, pmf, Source::Two)?;
    let p2 = or_power(&g2, n, limits)?;
    let t2 = p2.graph.union(&receiver_conflicts(spec, pmf, &s1, limits)?)?;
    let c2 = color_target(&g2, &p2, &t2, strategy, Source::Two, limits)?;
    let s2 = finish_source(pmf, Source::Two, g2, p2, c2, limits)?;
    tabulate(spec, pmf, n, s1, s2, limits)
}

/// A plan from caller-supplied colorings of the two block powers. Fails with
/// the witness blocks when the colorings do not determine `f`.
pub fn plan_from_colorings(
    spec: &FunctionSpec,
    pmf: &JointPmf,
    n: usize,
    c1: Coloring,
    c2: Coloring,
    limits: &Limits,
) -> Result<CodecPlan> {
    if spec.dims() != pmf.dims() {
        return Err(Error::invalid(format!("function is {:?} but pmf is {:?}", spec.dims(), pmf.dims())));
    }
    let mut sides = Vec::with_capacity(2);
    for (source, c) in [(Source::One, c1), (Source::Two, c2)] {
        let g = build_characteristic_graph(spec, pmf, source)?;
        let p = or_power(&g, n, limits)?;
        if c.len() != p.graph.vertex_count() {
            return Err(Error::invalid(format!("coloring of {source:?} has {} entries, power has {}", c.len(), p.graph.vertex_count())));
        }
        sides.push(finish_source(pmf, source, g, p, (Strategy::Supplied, c), limits)?);
    }
    let s2 = sides.pop().expect("two sides");
    let s1 = sides.pop().expect("two sides");
    tabulate(spec, pmf, n, s1, s2, limits)
}

fn tabulate(
    spec: &FunctionSpec,
    pmf: &JointPmf,
    n: usize,
    s1: SourcePlan,
    s2: SourcePlan,
    limits: &Limits,
) -> Result<CodecPlan> {
    // Color pair to (outcome, x1 block, x2 block) of the first pair seen.
    type Seen = (Vec<usize>, Vec<usize>, Vec<usize>);
    let mut table: HashMap<(usize, usize), Seen> = HashMap::new();
    for_each_positive_block(pmf, n, limits, |b1, b2| {
        let key = (s1.color_of(b1)?, s2.color_of(b2)?);
        let out = apply(spec, b1, b2);
        match table.get(&key) {
            Some((seen, w1, w2)) if *seen != out => Err(Error::Ambiguous {
                x1: w1.clone(),
                x2: w2.clone(),
                y1: b1.to_vec(),
                y2: b2.to_vec(),
            }),
            Some(_) => Ok(()),
            None => {
                table.insert(key, (out, b1.to_vec(), b2.to_vec()));
                Ok(())
            }
        }
    })?;
    Ok(CodecPlan {
        n,
        spec: spec.clone(),
        pmf: pmf.clone(),
        decoder: table.into_iter().map(|(k, (out, _, _))| (k, out)).collect(),
        sources: [s1, s2],
    })
}

impl CodecPlan {
    fn side(&self, source: Source) -> &SourcePlan {
        match source {
            Source::One => &self.sources[0],
            Source::Two => &self.sources[1],
        }
    }

    /// Appends the codeword of `block`'s color.
    pub fn encode_block(&self, source: Source, block: &[usize], out: &mut Vec<bool>) -> Result<()> {
        let side = self.side(source);
        let color = side.color_of(block)?;
        if block.iter().any(|&s| side.marginal[s].is_zero()) {
            return Err(Error::Unsupported(format!("block {block:?} of {source:?} has probability zero")));
        }
        side.code.encode(color, out).map_err(|_| {
            Error::Unsupported(format!("block {block:?} of {source:?} has probability zero"))
        })
    }

    pub fn decode_colors(&self, c1: usize, c2: usize) -> Result<&[usize]> {
        self.decoder
            .get(&(c1, c2))
            .map(Vec::as_slice)
            .ok_or_else(|| Error::Unsupported(format!("color pair ({c1}, {c2}) never occurs")))
    }

    /// Reads one codeword from each stream. Returns the outcome block and the
    /// bits consumed from each.
    pub fn decode_pair(&self, bits1: &[bool], bits2: &[bool]) -> Result<(Vec<usize>, usize, usize)> {
        let (c1, u1) = self.sources[0].code.decode(bits1, 1)?;
        let (c2, u2) = self.sources[1].code.decode(bits2, 1)?;
        Ok((self.decode_colors(c1[0], c2[0])?.to_vec(), u1, u2))
    }

    /// Encodes and decodes every positive-probability block pair, returning how many were checked.
    pub fn verify_lossless(&self, limits: &Limits) -> Result<usize> {
        let mut sample = 0;
        let (mut w1, mut w2) = (Vec::new(), Vec::new());
        for_each_positive_block(&self.pmf, self.n, limits, |b1, b2| {
            w1.clear();
            w2.clear();
            self.encode_block(Source::One, b1, &mut w1)?;
            self.encode_block(Source::Two, b2, &mut w2)?;
            let (got, _, _) = self.decode_pair(&w1, &w2)?;
            let expected = apply(&self.spec, b1, b2);
            if got != expected {
                return Err(Error::Mismatch { sample, expected, got });
            }
            sample += 1;
            Ok(())
        })
    }

    pub fn summary(&self) -> PlanSummary {
        let side = |s: &SourcePlan| SourceSummary {
            alphabet: s.alphabet(),
            strategy: s.strategy,
            colors: s.coloring.palette(),
            coloring: s.coloring.assignment().to_vec(),
            color_pmf: s.color_pmf.iter().map(rational::format).collect(),
            codewords: s.code.to_strings(),
            average_length: rational::format(&s.code.average),
            coloring_entropy: s.coloring_entropy(),
        };
        let mut decoder: Vec<DecoderEntry> = self
            .decoder
            .iter()
            .map(|(&(c1, c2), out)| DecoderEntry {
                c1,
                c2,
                outcome: out.iter().map(|&o| self.spec.label(o).to_string()).collect(),
            })
            .collect();
        decoder.sort_by_key(|e| (e.c1, e.c2));
        PlanSummary {
            n: self.n,
            source1: side(&self.sources[0]),
            source2: side(&self.sources[1]),
            decoder,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SourceSummary {
    pub alphabet: usize,
    pub strategy: Strategy,
    pub colors: usize,
    pub coloring: Vec<usize>,
    pub color_pmf: Vec<String>,
    pub codewords: Vec<Option<String>>,
    pub average_length: String,
    pub coloring_entropy: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecoderEntry {
    pub c1: usize,
    pub c2: usize,
    pub outcome: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlanSummary {
    pub n: usize,
    pub source1: SourceSummary,
    pub source2: SourceSummary,
    pub decoder: Vec<DecoderEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SourceRate {
    pub strategy: Strategy,
    pub colors: usize,
    pub bits: u64,
    /// Empirical bits per source symbol.
    pub rate: f64,
    /// Huffman average length over `n`.
    pub expected_rate: f64,
    /// Color entropy over `n`.
    pub coloring_entropy: f64,
    /// Brute-force chromatic entropy of the power over `n`, when small enough.
    pub chromatic_entropy: Option<f64>,
    /// `log2` of the fractional chromatic number, for uniform odd cycles.
    pub fractional_lower: Option<f64>,
    /// α-profile window at this `n`, for uniform sources.
    pub window: Option<(f64, f64)>,
    /// `H(X)` in bits.
    pub source_entropy: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateReport {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub symbols: usize,
    pub source1: SourceRate,
    pub source2: SourceRate,
    pub lossless: bool,
}

fn source_rate(plan: &CodecPlan, side: &SourcePlan, bits: u64, symbols: usize, limits: &Limits) -> SourceRate {
    let n = plan.n as f64;
    let marginal = &side.marginal;
    let v = side.alphabet();
    let uniform = marginal.iter().all(|p| *p == rational::q(1, v as i64));
    let chromatic_entropy = block_pmf(marginal, plan.n, limits)
        .and_then(|p| chromatic_entropy_bruteforce(&side.power.graph, &p, limits))
        .map(|(h, _)| h / n)
        .ok();
    let odd_cycle = v >= 5 && v % 2 == 1 && Graph::cycle(v).is_ok_and(|c| c == side.graph);
    let fractional_lower = if uniform && odd_cycle { fractional_entropy_lower_bound(v).ok() } else { None };
    let window = if uniform {
        general_entropy_upper_bound(&side.graph, plan.n, limits).ok().map(|w| (w.lo, w.hi))
    } else {
        None
    };
    SourceRate {
        strategy: side.strategy,
        colors: side.coloring.palette(),
        bits,
        rate: bits as f64 / symbols as f64,
        expected_rate: side.code.average_f64() / n,
        coloring_entropy: side.coloring_entropy() / n,
        chromatic_entropy,
        fractional_lower,
        window,
        source_entropy: rational::entropy_bits(marginal),
    }
}

/// Draws `samples` i.i.d. blocks, pushes each through the codec and tallies bits.
/// Any decode mismatch aborts with the offending sample.
pub fn simulate(plan: &CodecPlan, samples: usize, seed: u64, limits: &Limits) -> Result<RateReport> {
    if samples == 0 {
        return Err(Error::invalid("need at least one sample"));
    }
    let pairs = positive_pairs(&plan.pmf);
    let weights: Vec<f64> = pairs.iter().map(|&(a, b)| rational::to_f64(plan.pmf.p(a, b))).collect();
    let dist = WeightedIndex::new(&weights).map_err(|e| Error::invalid(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = plan.n;
    let (mut b1, mut b2) = (vec![0; n], vec![0; n]);
    let (mut w1, mut w2) = (Vec::new(), Vec::new());
    let (mut bits1, mut bits2) = (0u64, 0u64);
    for sample in 0..samples {
        for j in 0..n {
            (b1[j], b2[j]) = pairs[dist.sample(&mut rng)];
        }
        w1.clear();
        w2.clear();
        plan.encode_block(Source::One, &b1, &mut w1)?;
        plan.encode_block(Source::Two, &b2, &mut w2)?;
        bits1 += w1.len() as u64;
        bits2 += w2.len() as u64;
        let (got, _, _) = plan.decode_pair(&w1, &w2)?;
        let expected = apply(&plan.spec, &b1, &b2);
        if got != expected {
            return Err(Error::Mismatch { sample, expected, got });
        }
    }
    let symbols = samples * n;
    Ok(RateReport {
        n,
        samples,
        seed,
        symbols,
        source1: source_rate(plan, &plan.sources[0], bits1, symbols, limits),
        source2: source_rate(plan, &plan.sources[1], bits2, symbols, limits),
        lossless: true,
    })
}

/// Builds the codec and simulates it.
pub fn simulate_spec(
    spec: &FunctionSpec,
    pmf: &JointPmf,
    n: usize,
    samples: usize,
    seed: u64,
    strategy: Strategy,
    limits: &Limits,
) -> Result<RateReport> {
    simulate(&build_codec(spec, pmf, n, strategy, limits)?, samples, seed, limits)
}

/// Color histogram of a plan side, used for display.
pub fn color_classes(side: &SourcePlan) -> BTreeMap<usize, Vec<Vec<usize>>> {
    let mut out: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for (x, &c) in side.coloring.assignment().iter().enumerate() {
        out.entry(c).or_default().push(side.power.index.decode(x));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::worked::{example1, pentagon_function};
    use proptest::prelude::*;
    use super::Strategy;
    use proptest::strategy::Strategy as _;

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn example1_table() {
        let (f, p) = example1();
        let plan = build_codec(&f, &p, 1, Strategy::Exact, &l()).unwrap();
        assert_eq!(plan.sources[0].coloring.palette(), 2);
        assert_eq!(plan.sources[1].coloring.palette(), 2);
        assert_eq!(plan.decoder.len(), 4);
        // Independent oracle: x1 parity class and x2 value determine f.
        for a in 0..4 {
            for b in 0..2 {
                let c = (plan.sources[0].color_of(&[a]).unwrap(), plan.sources[1].color_of(&[b]).unwrap());
                assert_eq!(plan.decoder[&c], vec![f.eval(a, b)]);
                assert_eq!(f.label(plan.decoder[&c][0]), ((a + b) % 2).to_string());
            }
        }
        let mut w1 = Vec::new();
        let mut w2 = Vec::new();
        plan.encode_block(Source::One, &[2], &mut w1).unwrap();
        plan.encode_block(Source::Two, &[1], &mut w2).unwrap();
        let (out, u1, u2) = plan.decode_pair(&w1, &w2).unwrap();
        assert_eq!(f.label(out[0]), "1");
        assert_eq!((u1, u2), (1, 1));
    }

    #[test]
    fn example1_blocks() {
        let (f, p) = example1();
        for n in 1..=3 {
            let plan = build_codec(&f, &p, n, Strategy::Exact, &l()).unwrap();
            assert_eq!(plan.sources[0].coloring.palette(), 1 << n);
            assert_eq!(plan.sources[1].coloring.palette(), 1 << n);
            assert_eq!(plan.decoder.len(), 1 << (2 * n));
            assert_eq!(plan.verify_lossless(&l()).unwrap(), 8usize.pow(n as u32));
        }
    }

    #[test]
    fn constant_function() {
        let f = FunctionSpec::from_fn(3, 2, |_, _| 7).unwrap();
        let p = JointPmf::uniform(3, 2).unwrap();
        let plan = build_codec(&f, &p, 2, Strategy::Greedy, &l()).unwrap();
        assert_eq!(plan.sources[0].coloring.palette(), 1);
        assert_eq!(plan.sources[1].coloring.palette(), 1);
        assert_eq!(plan.decoder.len(), 1);
        assert_eq!(plan.verify_lossless(&l()).unwrap(), 36);
    }

    #[test]
    fn pentagon_rates() {
        let (f, p) = pentagon_function();
        let plan = build_codec(&f, &p, 1, Strategy::OddCycle, &l()).unwrap();
        assert_eq!(plan.sources[0].strategy, Strategy::OddCycle);
        assert_eq!(plan.sources[0].code.average, q(8, 5));
        plan.verify_lossless(&l()).unwrap();
        let r = simulate(&plan, 20_000, 3, &l()).unwrap();
        assert!((r.source1.rate - 1.6).abs() < 0.03);
        assert!((r.source1.chromatic_entropy.unwrap() - 1.5219).abs() < 1e-3);
        assert!(r.source1.fractional_lower.unwrap() <= r.source1.chromatic_entropy.unwrap());

        let plan = build_codec(&f, &p, 2, Strategy::OddCycle, &l()).unwrap();
        assert_eq!(plan.sources[0].coloring.palette(), 8);
        plan.verify_lossless(&l()).unwrap();
        let s = &plan.sources[0];
        assert!(s.code.average_f64() >= s.coloring_entropy() - 1e-12);
    }

    #[test]
    fn pentagon_exact_matches_power() {
        let (f, p) = pentagon_function();
        let plan = build_codec(&f, &p, 2, Strategy::Exact, &l()).unwrap();
        assert_eq!(plan.sources[0].coloring.palette(), 8);
        // Decodability costs source 2 more than chi(C5^2).
        assert!(plan.sources[1].coloring.palette() >= 8);
        plan.verify_lossless(&l()).unwrap();

        // Two lexicographic colorings are proper on their powers but leave the table ambiguous.
        let (c, _) = odd_cycle_power_coloring(5, 2, &l()).unwrap();
        let c = c.unwrap();
        let e = plan_from_colorings(&f, &p, 2, c.clone(), c, &l());
        assert!(matches!(e, Err(Error::Ambiguous { .. })), "{e:?}");
    }

    #[test]
    fn scheme_falls_back() {
        let (f, p) = example1();
        let plan = build_codec(&f, &p, 2, Strategy::EvenCycle, &l()).unwrap();
        assert_eq!(plan.sources[0].strategy, Strategy::EvenCycle);
        assert_eq!(plan.sources[1].strategy, Strategy::Exact);
        plan.verify_lossless(&l()).unwrap();
    }

    #[test]
    fn ambiguity_is_reported() {
        // Diagonal support: neither graph has an edge, yet one color each
        // cannot tell the two positive pairs apart.
        let f = FunctionSpec::from_fn(2, 2, |a, b| usize::from(a == 1 && b == 1)).unwrap();
        let p = JointPmf::new(vec![vec![q(1, 2), q(0, 1)], vec![q(0, 1), q(1, 2)]]).unwrap();
        let one = || Coloring::new(vec![0, 0]).unwrap();
        match plan_from_colorings(&f, &p, 1, one(), one(), &l()) {
            Err(Error::Ambiguous { x1, x2, y1, y2 }) => {
                assert_eq!((x1, x2, y1, y2), (vec![0], vec![0], vec![1], vec![1]));
            }
            other => panic!("expected ambiguity, got {other:?}"),
        }
        let plan = build_codec(&f, &p, 1, Strategy::Exact, &l()).unwrap();
        assert_eq!(plan.sources[1].coloring.palette(), 2);
        plan.verify_lossless(&l()).unwrap();
    }

    #[test]
    fn unknown_inputs() {
        let (f, p) = pentagon_function();
        let plan = build_codec(&f, &p, 1, Strategy::Exact, &l()).unwrap();
        let mut w = Vec::new();
        assert!(plan.encode_block(Source::One, &[5], &mut w).is_err());
        assert!(plan.encode_block(Source::One, &[0, 1], &mut w).is_err());
        // x1 = 0 never meets e = 2: its color pair may be absent.
        let c1 = plan.sources[0].color_of(&[0]).unwrap();
        let missing = (0..plan.sources[1].coloring.palette()).find(|&c2| !plan.decoder.contains_key(&(c1, c2)));
        if let Some(c2) = missing {
            assert!(matches!(plan.decode_colors(c1, c2), Err(Error::Unsupported(_))));
        }
    }

    #[test]
    fn zero_probability_block() {
        let f = FunctionSpec::from_fn(3, 2, |a, b| (a + b) % 2).unwrap();
        let p = JointPmf::new(vec![
            vec![q(1, 4), q(1, 4)],
            vec![q(1, 4), q(1, 4)],
            vec![q(0, 1), q(0, 1)],
        ])
        .unwrap();
        let plan = build_codec(&f, &p, 1, Strategy::Exact, &l()).unwrap();
        let mut w = Vec::new();
        let e = plan.encode_block(Source::One, &[2], &mut w);
        assert!(matches!(e, Err(Error::Unsupported(_))), "{e:?}");
    }

    #[test]
    fn deterministic_simulation() {
        let (f, p) = example1();
        let a = simulate_spec(&f, &p, 1, 5_000, 11, Strategy::Exact, &l()).unwrap();
        let b = simulate_spec(&f, &p, 1, 5_000, 11, Strategy::Exact, &l()).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!((a.source1.rate - 1.0).abs() < 1e-12 && (a.source2.rate - 1.0).abs() < 1e-12);
        assert!(a.source1.rate <= a.source1.source_entropy + 1e-12);
    }

    #[test]
    fn strategy_names() {
        for s in Strategy::ALL {
            assert_eq!(s.name().parse::<Strategy>().unwrap(), s);
        }
        assert!("dsatur".parse::<Strategy>().is_err());
    }

    fn arb_instance() -> impl proptest::strategy::Strategy<Value = (FunctionSpec, JointPmf)> {
        (1usize..=3, 1usize..=3).prop_flat_map(|(a, b)| {
            (
                proptest::collection::vec(0usize..3, a * b),
                proptest::collection::vec(0i64..3, a * b),
            )
                .prop_filter("needs some mass", |(_, w)| w.iter().any(|&x| x > 0))
                .prop_map(move |(f, w)| {
                    let total: i64 = w.iter().sum();
                    let spec = FunctionSpec::from_fn(a, b, |x, y| f[x * b + y]).unwrap();
                    let probs = (0..a).map(|x| (0..b).map(|y| q(w[x * b + y], total)).collect()).collect();
                    (spec, JointPmf::new(probs).unwrap())
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn every_strategy_round_trips((f, p) in arb_instance(), n in 1usize..=2) {
            for s in Strategy::ALL {
                let plan = build_codec(&f, &p, n, s, &l()).unwrap();
                plan.verify_lossless(&l()).unwrap();
                let r = simulate(&plan, 200, 5, &l()).unwrap();
                prop_assert!(r.lossless && r.source1.rate >= 0.0 && r.source2.rate >= 0.0);
            }
        }
    }
}
