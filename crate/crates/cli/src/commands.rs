use chromacode::chargraph::{build_characteristic_graph, verify_coloring_sufficiency, Source};
use chromacode::codec::{build_codec, simulate, Strategy};
use chromacode::coloring::{
    b_fold_chromatic_number, even_cycle_power_coloring, exact_power_chromatic,
    greedy_coloring, is_valid_coloring, natural_order, odd_cycle_power_coloring,
};
use chromacode::entropy::{
    chromatic_entropy_bruteforce, coloring_entropy, fractional_entropy_lower_bound, general_entropy_upper_bound,
    odd_cycle_entropy_upper_bound, AlphaProfile, EntropyWindow,
};
use chromacode::expansion::{expansion_report, sample_subset};
use chromacode::rational::{self, Q};
use chromacode::spectral::{
    adjacency, chromatic_bounds_spectral, gershgorin, graph_smallest_eig_bounds, power_spectrum,
    split_decomposition, BoundVariant, GershgorinMode, Quantity,
};
use chromacode::{or_power, Error, Graph, Limits, Result, VertexSet};
use serde_json::{json, Value};

use crate::io::Inputs;

pub struct Outcome {
    pub body: Value,
    pub passed: bool,
}

impl Outcome {
    fn ok(body: Value) -> Outcome {
        Outcome { body, passed: true }
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::invalid(msg)
}

fn is_cycle(g: &Graph) -> bool {
    let v = g.vertex_count();
    v >= 3 && Graph::cycle(v).is_ok_and(|c| c == *g)
}

pub fn graph(inputs: &mut Inputs, arg: &str, limits: &Limits) -> Result<Outcome> {
    let g = inputs.graph(arg)?;
    let alpha = match g.independence_number(limits) {
        Ok(a) => json!(a),
        Err(e) if e.is_guard() => Value::Null,
        Err(e) => return Err(e),
    };
    Ok(Outcome::ok(json!({
        "graph": g.to_json(),
        "edge_count": g.edge_count(),
        "degrees": g.degrees(),
        "connected": g.is_connected(),
        "bipartite": g.is_bipartite(),
        "regular_degree": g.regular_degree(),
        "independence_number": alpha,
    })))
}

pub fn chargraph(
    inputs: &mut Inputs,
    spec: &str,
    pmf: Option<&str>,
    colorings: Option<(&str, &str)>,
) -> Result<Outcome> {
    let (f, p) = inputs.function(spec, pmf)?;
    let g1 = build_characteristic_graph(&f, &p, Source::One)?;
    let g2 = build_characteristic_graph(&f, &p, Source::Two)?;
    let fmt = |v: Vec<Q>| v.iter().map(rational::format).collect::<Vec<_>>();
    let mut body = json!({
        "source1": g1.to_json(),
        "source2": g2.to_json(),
        "marginal1": fmt(p.marginal1()),
        "marginal2": fmt(p.marginal2()),
    });
    let mut passed = true;
    if let Some((c1, c2)) = colorings {
        let (c1, c2) = (inputs.coloring(c1)?, inputs.coloring(c2)?);
        let ok = match verify_coloring_sufficiency(&f, &p, &c1, &c2) {
            Ok(ok) => ok,
            Err(Error::InvalidColoring(..)) => false,
            Err(e) => return Err(e),
        };
        body["sufficient"] = json!(ok);
        passed = ok;
    }
    Ok(Outcome { body, passed })
}

pub fn power(inputs: &mut Inputs, arg: &str, n: usize, limits: &Limits) -> Result<Outcome> {
    let g = inputs.graph(arg)?;
    let p = or_power(&g, n, limits)?;
    let j = p.graph.to_json();
    Ok(Outcome::ok(json!({
        "vertices": j.vertices,
        "edges": j.edges,
        "tuple_base": p.index.base,
        "tuple_len": p.index.len,
    })))
}

pub fn color(inputs: &mut Inputs, arg: &str, n: usize, scheme: &str, b: usize, limits: &Limits) -> Result<Outcome> {
    let g = inputs.graph(arg)?;
    let v = g.vertex_count();
    let check = |c: &chromacode::Coloring| -> Result<bool> {
        match or_power(&g, n, limits) {
            Ok(p) => is_valid_coloring(&p.graph, c),
            Err(e) => Err(e),
        }
    };
    let body = match scheme {
        "exact" => {
            let r = exact_power_chromatic(&g, n, limits)?;
            let valid = r.coloring.as_ref().map(check).transpose()?;
            json!({
                "chi": r.chi(),
                "chain": r.chain,
                "colors": r.coloring.as_ref().map(|c| c.assignment().to_vec()),
                "valid": valid,
            })
        }
        "greedy" => {
            let p = or_power(&g, n, limits)?;
            let c = greedy_coloring(&p.graph, &natural_order(p.graph.vertex_count()))?;
            json!({"chi": c.palette(), "colors": c.assignment(), "valid": is_valid_coloring(&p.graph, &c)?, "upper_bound": true})
        }
        "even-cycle" => {
            if !is_cycle(&g) || v % 2 == 1 {
                return Err(Error::OutOfScope("even-cycle scheme needs an even cycle".into()));
            }
            let c = even_cycle_power_coloring(v / 2, n, limits)?;
            json!({"chi": c.palette(), "colors": c.assignment(), "valid": check(&c)?})
        }
        "odd-cycle" => {
            if !is_cycle(&g) {
                return Err(Error::OutOfScope("odd-cycle scheme needs an odd cycle".into()));
            }
            let (c, count) = odd_cycle_power_coloring(v, n, limits)?;
            let valid = c.as_ref().map(check).transpose()?;
            json!({
                "chi": u64::try_from(count).map(Value::from).unwrap_or_else(|_| json!(count.to_string())),
                "colors": c.as_ref().map(|c| c.assignment().to_vec()),
                "valid": valid,
            })
        }
        "fractional" => {
            let p = or_power(&g, n, limits)?;
            let r = b_fold_chromatic_number(&p.graph, b, limits)?;
            json!({"a": r.a, "b": r.b, "ratio": r.a as f64 / r.b as f64, "sets": r.sets})
        }
        other => return Err(usage(format!("unknown scheme {other:?}"))),
    };
    let passed = body.get("valid").is_none_or(|x| x.as_bool() != Some(false));
    Ok(Outcome { body, passed })
}

fn profile_json(p: &AlphaProfile, vn: u64) -> Value {
    let pmf: Vec<String> = p
        .alphas
        .iter()
        .zip(&p.mis_sizes)
        .rev()
        .flat_map(|(&a, &s)| std::iter::repeat_n(rational::format(&rational::q(s as i64, vn as i64)), a as usize))
        .collect();
    json!({"alphas": p.alphas, "mis_sizes": p.mis_sizes, "pmf": pmf})
}

fn window_json(w: &EntropyWindow, v: usize) -> Value {
    let vn = (v as u64).pow(w.n as u32);
    json!({
        "lo": w.lo,
        "hi": w.hi,
        "alphas": {"lo": w.lo_profile.alphas, "hi": w.hi_profile.alphas},
        "pmf": {"lo": profile_json(&w.lo_profile, vn)["pmf"], "hi": profile_json(&w.hi_profile, vn)["pmf"]},
        "alpha_n_range": w.alpha_n_range,
        "alpha_n_feasible": w.alpha_n_feasible,
    })
}

pub fn entropy(
    inputs: &mut Inputs,
    arg: &str,
    n: usize,
    bound: &str,
    pmf: Option<&str>,
    coloring: Option<&str>,
    limits: &Limits,
) -> Result<Outcome> {
    let g = inputs.graph(arg)?;
    let v = g.vertex_count();
    let vertex_pmf = inputs.vertex_pmf(pmf, v)?;
    let block_pmf = |limits: &Limits| -> Result<Vec<Q>> {
        let p = or_power(&g, n, limits)?;
        Ok((0..p.graph.vertex_count())
            .map(|x| p.index.decode(x).iter().map(|&s| vertex_pmf[s].clone()).product())
            .collect())
    };
    if let Some(path) = coloring {
        let c = inputs.coloring(path)?;
        let p = or_power(&g, n, limits)?;
        let (h, cp) = coloring_entropy(&p.graph, &c, &block_pmf(limits)?)?;
        return Ok(Outcome::ok(json!({
            "lo": h / n as f64,
            "hi": h / n as f64,
            "alphas": Value::Null,
            "pmf": cp.probs.iter().map(rational::format).collect::<Vec<_>>(),
        })));
    }
    let uniform = vertex_pmf.iter().all(|p| *p == rational::q(1, v as i64));
    let body = match bound {
        "brute" => {
            let p = or_power(&g, n, limits)?;
            let (h, c) = chromatic_entropy_bruteforce(&p.graph, &block_pmf(limits)?, limits)?;
            let (_, cp) = coloring_entropy(&p.graph, &c, &block_pmf(limits)?)?;
            json!({
                "lo": h / n as f64,
                "hi": h / n as f64,
                "alphas": Value::Null,
                "pmf": cp.probs.iter().map(rational::format).collect::<Vec<_>>(),
                "colors": c.assignment(),
            })
        }
        "odd-cycle" => {
            if !is_cycle(&g) || v % 2 == 0 || !uniform {
                return Err(Error::OutOfScope("odd-cycle window needs a uniform odd cycle".into()));
            }
            window_json(&odd_cycle_entropy_upper_bound((v - 1) / 2, n)?, v)
        }
        "general" => {
            if !uniform {
                return Err(Error::OutOfScope("α-profile window assumes a uniform source".into()));
            }
            window_json(&general_entropy_upper_bound(&g, n, limits)?, v)
        }
        "fractional" => {
            if !is_cycle(&g) || !uniform {
                return Err(Error::OutOfScope("fractional bound needs a uniform odd cycle".into()));
            }
            let lo = fractional_entropy_lower_bound(v)?;
            json!({"lo": lo, "hi": Value::Null, "alphas": Value::Null, "pmf": Value::Null})
        }
        other => return Err(usage(format!("unknown bound {other:?}"))),
    };
    Ok(Outcome::ok(body))
}

pub struct SpectralArgs<'a> {
    pub op: &'a str,
    pub n: usize,
    pub block: Option<usize>,
    pub variant: Option<&'a str>,
    pub tol: f64,
}

pub fn spectral(inputs: &mut Inputs, arg: &str, a: &SpectralArgs, limits: &Limits) -> Result<Outcome> {
    let g = inputs.graph(arg)?;
    let n = a.n;
    match a.op {
        "eig" => {
            let s = power_spectrum(&g, n, limits)?;
            let p = or_power(&g, n, limits)?;
            Ok(Outcome::ok(json!({
                "eigenvalues": s.eigenvalues,
                "distinct": s.distinct(),
                "smallest_bounds": graph_smallest_eig_bounds(&p.graph),
            })))
        }
        "gct" => {
            let p = or_power(&g, n, limits)?;
            let mode = match a.block {
                Some(b) => GershgorinMode::Block(b),
                None => GershgorinMode::Scalar,
            };
            let iv = gershgorin(&adjacency(&p.graph), mode)?;
            let s = power_spectrum(&g, n, limits)?;
            let contains = iv.contains_spectrum(&s, a.tol);
            let intervals: Vec<Value> = iv
                .distinct()
                .into_iter()
                .map(|((lo, hi), count)| json!({"lo": lo, "hi": hi, "count": count}))
                .collect();
            Ok(Outcome {
                body: json!({
                    "mode": iv.mode,
                    "intervals": intervals,
                    "envelope": iv.envelope,
                    "eigenvalues": s.eigenvalues,
                    "contains_spectrum": contains,
                }),
                passed: contains,
            })
        }
        "split" => {
            if n < 2 {
                return Err(usage("split needs --power >= 2"));
            }
            let p = or_power(&g, n, limits)?;
            let (_, r) = split_decomposition(&p, &g, limits)?;
            let passed = r.lambda1 <= r.lambda1_sum + a.tol;
            Ok(Outcome {
                body: serde_json::to_value(&r).expect("serializes"),
                passed,
            })
        }
        "bounds" => {
            let variants: Vec<BoundVariant> = match a.variant {
                Some(s) => vec![s.parse()?],
                None => BoundVariant::ALL.to_vec(),
            };
            let chi = match exact_power_chromatic(&g, n, limits) {
                Ok(r) => Some(r.chi() as f64),
                Err(e) if e.is_guard() => None,
                Err(e) => return Err(e),
            };
            let lambda1 = match power_spectrum(&g, n, limits) {
                Ok(s) => Some(s.largest()),
                Err(e) if e.is_guard() => None,
                Err(e) => return Err(e),
            };
            let mut bounds = Vec::new();
            let mut skipped = Vec::new();
            for v in variants {
                let r = match chromatic_bounds_spectral(&g, n, v, limits) {
                    Ok(r) => r,
                    Err(e @ (Error::Invalid(_) | Error::OutOfScope(_))) if a.variant.is_none() => {
                        skipped.push(json!({"variant": v, "reason": e.to_string()}));
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let exact = match r.quantity {
                    Quantity::Chromatic => chi,
                    Quantity::Lambda1 => lambda1,
                };
                bounds.push(match exact {
                    Some(x) => r.with_exact(x, a.tol),
                    None => r,
                });
            }
            let passed = bounds.iter().all(|b| b.holds != Some(false));
            Ok(Outcome {
                body: json!({"bounds": bounds, "skipped": skipped}),
                passed,
            })
        }
        other => Err(usage(format!("unknown spectral op {other:?}"))),
    }
}

pub fn expansion(
    inputs: &mut Inputs,
    arg: &str,
    n: usize,
    subset: Option<&str>,
    sample: Option<(usize, u64)>,
    limits: &Limits,
) -> Result<Outcome> {
    let g = inputs.graph(arg)?;
    let universe = (g.vertex_count() as u128)
        .checked_pow(n as u32)
        .filter(|&s| s <= limits.power_vertices as u128)
        .ok_or(Error::Guard {
            what: "expansion power",
            needed: u128::MAX,
            budget: limits.power_vertices as u128,
        })? as usize;
    let y = match (subset, sample) {
        (Some(s), None) => {
            let members: Vec<usize> = s
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| usage(format!("bad vertex {t:?}"))))
                .collect::<Result<_>>()?;
            VertexSet::from_members(universe, &members)?
        }
        (None, Some((size, seed))) => sample_subset(universe, size, seed)?,
        _ => return Err(usage("give exactly one of --subset or --sample")),
    };
    let r = expansion_report(&g, n, &y, limits)?;
    Ok(Outcome {
        passed: r.consistent,
        body: serde_json::to_value(&r).expect("serializes"),
    })
}

pub struct SimulateArgs<'a> {
    pub spec: &'a str,
    pub pmf: Option<&'a str>,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub strategy: &'a str,
    pub plan: bool,
    pub exhaustive: bool,
}

pub fn simulate_cmd(inputs: &mut Inputs, a: &SimulateArgs, limits: &Limits) -> Result<Outcome> {
    let (f, p) = inputs.function(a.spec, a.pmf)?;
    let strategy: Strategy = a.strategy.parse()?;
    let plan = build_codec(&f, &p, a.n, strategy, limits)?;
    let checked = if a.exhaustive { Some(plan.verify_lossless(limits)?) } else { None };
    let report = simulate(&plan, a.samples, a.seed, limits)?;
    let mut body = serde_json::to_value(&report).expect("serializes");
    if let Some(c) = checked {
        body["exhaustive_pairs"] = json!(c);
    }
    if a.plan {
        body["plan"] = serde_json::to_value(plan.summary()).expect("serializes");
    }
    Ok(Outcome {
        passed: report.lossless,
        body,
    })
}
