//! Characteristic graphs of a two-argument function under a joint distribution.

use num::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coloring::{ensure_valid, Coloring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{self, Q};

/// `f(x1, x2)` as a table of dense outcome ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionSpec {
    table: Vec<Vec<usize>>,
    /// Original label of each outcome id.
    labels: Vec<String>,
}

/// Wire format: `{"x1": n1, "x2": n2, "f": [[...], ...]}` with any JSON scalars as labels.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct FunctionSpecJson {
    pub x1: usize,
    pub x2: usize,
    pub f: Vec<Vec<Value>>,
}

impl FunctionSpec {
    /// Builds from a table of arbitrary labels, numbering outcomes by first appearance.
    pub fn from_labels<T: ToString>(table: &[Vec<T>]) -> Result<FunctionSpec> {
        let n1 = table.len();
        if n1 == 0 {
            return Err(Error::invalid("function table is empty"));
        }
        let n2 = table[0].len();
        if n2 == 0 || table.iter().any(|r| r.len() != n2) {
            return Err(Error::invalid("function table is ragged or empty"));
        }
        let mut labels: Vec<String> = Vec::new();
        let table = table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let s = x.to_string();
                        match labels.iter().position(|l| *l == s) {
                            Some(i) => i,
                            None => {
                                labels.push(s);
                                labels.len() - 1
                            }
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(FunctionSpec { table, labels })
    }

    pub fn from_fn(n1: usize, n2: usize, f: impl Fn(usize, usize) -> usize) -> Result<FunctionSpec> {
        let t: Vec<Vec<usize>> = (0..n1).map(|a| (0..n2).map(|b| f(a, b)).collect()).collect();
        FunctionSpec::from_labels(&t)
    }

    pub fn from_json(j: &FunctionSpecJson) -> Result<FunctionSpec> {
        if j.f.len() != j.x1 || j.f.iter().any(|r| r.len() != j.x2) {
            return Err(Error::invalid(format!(
                "table shape does not match {}x{}",
                j.x1, j.x2
            )));
        }
        let t: Vec<Vec<String>> = j
            .f
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    })
                    .collect()
            })
            .collect();
        FunctionSpec::from_labels(&t)
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.table.len(), self.table[0].len())
    }

    #[inline]
    pub fn eval(&self, x1: usize, x2: usize) -> usize {
        self.table[x1][x2]
    }

    pub fn outcome_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, outcome: usize) -> &str {
        &self.labels[outcome]
    }
}

/// Exact joint distribution of `(X1, X2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct JointPmf {
    probs: Vec<Vec<Q>>,
}

/// Wire format: `"uniform"` or `{"probs": [["1/8", ...], ...]}`.
#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(untagged)]
pub enum JointPmfJson {
    Shorthand(String),
    Table { probs: Vec<Vec<String>> },
}

impl JointPmf {
    pub fn new(probs: Vec<Vec<Q>>) -> Result<JointPmf> {
        let n2 = probs.first().map_or(0, Vec::len);
        if probs.is_empty() || n2 == 0 || probs.iter().any(|r| r.len() != n2) {
            return Err(Error::invalid("pmf table is ragged or empty"));
        }
        if probs.iter().flatten().any(|p| *p < Q::zero()) {
            return Err(Error::invalid("negative probability"));
        }
        let total: Q = probs.iter().flatten().sum();
        if !total.is_one() {
            return Err(Error::invalid(format!(
                "probabilities sum to {}, not 1",
                rational::format(&total)
            )));
        }
        Ok(JointPmf { probs })
    }

    pub fn uniform(n1: usize, n2: usize) -> Result<JointPmf> {
        let p = rational::q(1, (n1 * n2) as i64);
        JointPmf::new(vec![vec![p; n2]; n1])
    }

    pub fn from_json(j: &JointPmfJson, dims: (usize, usize)) -> Result<JointPmf> {
        match j {
            JointPmfJson::Shorthand(s) if s == "uniform" => JointPmf::uniform(dims.0, dims.1),
            JointPmfJson::Shorthand(s) => Err(Error::invalid(format!("unknown pmf shorthand {s:?}"))),
            JointPmfJson::Table { probs } => JointPmf::new(
                probs
                    .iter()
                    .map(|r| r.iter().map(|s| rational::parse(s)).collect())
                    .collect::<Result<_>>()?,
            ),
        }
    }

    pub fn to_json(&self) -> JointPmfJson {
        JointPmfJson::Table {
            probs: self
                .probs
                .iter()
                .map(|r| r.iter().map(rational::format).collect())
                .collect(),
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.probs.len(), self.probs[0].len())
    }

    #[inline]
    pub fn p(&self, x1: usize, x2: usize) -> &Q {
        &self.probs[x1][x2]
    }

    #[inline]
    pub fn positive(&self, x1: usize, x2: usize) -> bool {
        !self.probs[x1][x2].is_zero()
    }

    pub fn marginal1(&self) -> Vec<Q> {
        self.probs.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn marginal2(&self) -> Vec<Q> {
        let (_, n2) = self.dims();
        (0..n2).map(|b| self.probs.iter().map(|r| &r[b]).sum()).collect()
    }

    /// The same distribution with the roles of the sources swapped.
    pub fn transposed(&self) -> JointPmf {
        let (n1, n2) = self.dims();
        JointPmf {
            probs: (0..n2)
                .map(|b| (0..n1).map(|a| self.probs[a][b].clone()).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Source {
    One,
    Two,
}

fn check_dims(spec: &FunctionSpec, pmf: &JointPmf) -> Result<()> {
    if spec.dims() != pmf.dims() {
        return Err(Error::invalid(format!(
            "function is {:?} but pmf is {:?}",
            spec.dims(),
            pmf.dims()
        )));
    }
    Ok(())
}

/// `x ~ x'` iff some side value `y` has `p(x,y)·p(x',y) > 0` and `f(x,y) != f(x',y)`.
pub fn build_characteristic_graph(spec: &FunctionSpec, pmf: &JointPmf, source: Source) -> Result<Graph> {
    check_dims(spec, pmf)?;
    let (n1, n2) = spec.dims();
    let (own, side) = match source {
        Source::One => (n1, n2),
        Source::Two => (n2, n1),
    };
    let at = |x: usize, y: usize| match source {
        Source::One => (pmf.positive(x, y), spec.eval(x, y)),
        Source::Two => (pmf.positive(y, x), spec.eval(y, x)),
    };
    let mut edges = Vec::new();
    for a in 0..own {
        for b in a + 1..own {
            let distinguishable = (0..side).any(|y| {
                let (pa, fa) = at(a, y);
                let (pb, fb) = at(b, y);
                pa && pb && fa != fb
            });
            if distinguishable {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(own, &edges)
}

/// True iff the receiver can recover `f` from the color pair: no two
/// positive-probability pairs with equal colors disagree on `f`.
pub fn verify_coloring_sufficiency(
    spec: &FunctionSpec,
    pmf: &JointPmf,
    c1: &Coloring,
    c2: &Coloring,
) -> Result<bool> {
    check_dims(spec, pmf)?;
    ensure_valid(&build_characteristic_graph(spec, pmf, Source::One)?, c1)?;
    ensure_valid(&build_characteristic_graph(spec, pmf, Source::Two)?, c2)?;
    decoder_is_well_defined(spec, pmf, c1, c2)
}

/// The lookup-table condition alone, without checking that the colorings are proper.
pub fn decoder_is_well_defined(
    spec: &FunctionSpec,
    pmf: &JointPmf,
    c1: &Coloring,
    c2: &Coloring,
) -> Result<bool> {
    check_dims(spec, pmf)?;
    let (n1, n2) = spec.dims();
    if c1.len() != n1 || c2.len() != n2 {
        return Err(Error::invalid("coloring length does not match alphabet"));
    }
    let mut table = std::collections::HashMap::new();
    for a in 0..n1 {
        for b in 0..n2 {
            if !pmf.positive(a, b) {
                continue;
            }
            let f = spec.eval(a, b);
            if *table.entry((c1.color(a), c2.color(b))).or_insert(f) != f {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
