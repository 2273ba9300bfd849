//! Entropy windows from α-profiles.
//!
//! An α-profile describes a coloring of `G^n` by the sizes of its classes:
//! `α_t` classes of `m^t` vertices each, `m = |MIS_G|`, so `|MIS_{G^t}| = m^t`.
//! Under a uniform source a class of size `m^t` has probability `m^t / V^n`.
//!
//! Feasible profiles satisfy
//! - `Σ_t α_t m^t = V^n`,
//! - `α_0 = 1`,
//! - `α_0 <= α_1 <= ... <= α_n`,
//! - `ceil(V^n m^n / Σ_t m^{2t}) <= α_n <= floor((V^n - 1) / m^n)`.
//!
//! The stronger ordering `α_t >= m·α_{t-1}` sometimes quoted alongside these
//! has no integer solution already for C7 at n = 2, so the weak one is used.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::limits::Limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaProfile {
    /// `α_0 ..= α_n`.
    pub alphas: Vec<u64>,
    /// `m^t` for `t = 0 ..= n`.
    pub mis_sizes: Vec<u64>,
}

impl AlphaProfile {
    pub fn total(&self) -> u128 {
        self.alphas
            .iter()
            .zip(&self.mis_sizes)
            .map(|(&a, &s)| a as u128 * s as u128)
            .sum()
    }
}

/// `-Σ_t α_t p_t log2 p_t` with `p_t = m^t / V^n`.
pub fn profile_entropy(p: &AlphaProfile, vn: u64) -> f64 {
    p.alphas
        .iter()
        .zip(&p.mis_sizes)
        .filter(|(&a, _)| a > 0)
        .map(|(&a, &s)| {
            let pt = s as f64 / vn as f64;
            -(a as f64) * pt * pt.log2()
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntropyWindow {
    pub n: usize,
    /// Per-symbol bound at the largest feasible `α_n`.
    pub lo: f64,
    /// Per-symbol bound at the smallest feasible `α_n`.
    pub hi: f64,
    pub lo_profile: AlphaProfile,
    pub hi_profile: AlphaProfile,
    /// The `α_n` range allowed by the size constraints.
    pub alpha_n_range: (u64, u64),
    /// The feasible part of that range.
    pub alpha_n_feasible: (u64, u64),
}

/// Window for `C_{2k+1}`, where `|MIS| = k`.
pub fn odd_cycle_entropy_upper_bound(k: usize, n: usize) -> Result<EntropyWindow> {
    if k < 2 {
        return Err(Error::invalid("need k >= 2"));
    }
    window(2 * k as u64 + 1, k as u64, n)
}

/// Window for an arbitrary base graph, using its independence number.
pub fn general_entropy_upper_bound(g: &Graph, n: usize, limits: &Limits) -> Result<EntropyWindow> {
    let m = g.independence_number(limits)?;
    window(g.vertex_count() as u64, m as u64, n)
}

const NODE_BUDGET: u64 = 20_000_000;

fn window(v: u64, m: u64, n: usize) -> Result<EntropyWindow> {
    if n == 0 {
        return Err(Error::invalid("power must be at least 1"));
    }
    let overflow = || Error::invalid("profile sizes overflow u64");
    let vn = v.checked_pow(n as u32).ok_or_else(overflow)?;
    let sizes: Vec<u64> = (0..=n as u32)
        .map(|t| m.checked_pow(t).ok_or_else(overflow))
        .collect::<Result<_>>()?;
    let mn = sizes[n];
    let denom: u128 = sizes.iter().map(|&s| s as u128 * s as u128).sum();
    let lower = (vn as u128 * mn as u128).div_ceil(denom) as u64;
    let upper = (vn - 1) / mn;
    if lower > upper {
        return Err(Error::invalid(format!("empty α_n range [{lower}, {upper}]")));
    }
    let mut budget = NODE_BUDGET;
    let mut feasible = Vec::new();
    for an in lower..=upper {
        if let Some(p) = best_completion(vn, &sizes, an, &mut budget)? {
            feasible.push((an, p));
        }
    }
    let (Some((amin, hi_p)), Some((amax, lo_p))) = (feasible.first().cloned(), feasible.last().cloned()) else {
        return Err(Error::invalid(format!(
            "no feasible α-profile for V = {v}, |MIS| = {m}, n = {n}"
        )));
    };
    Ok(EntropyWindow {
        n,
        lo: profile_entropy(&lo_p, vn) / n as f64,
        hi: profile_entropy(&hi_p, vn) / n as f64,
        lo_profile: lo_p,
        hi_profile: hi_p,
        alpha_n_range: (lower, upper),
        alpha_n_feasible: (amin, amax),
    })
}

/// Lowest-entropy profile with the given `α_n`, if any.
fn best_completion(vn: u64, sizes: &[u64], an: u64, budget: &mut u64) -> Result<Option<AlphaProfile>> {
    let n = sizes.len() - 1;
    let used = an.checked_mul(sizes[n]).filter(|&u| u < vn);
    let Some(used) = used else { return Ok(None) };
    let mut alphas = vec![0u64; n + 1];
    alphas[0] = 1;
    alphas[n] = an;
    if n == 1 {
        let ok = vn - used == 1;
        return Ok(ok.then(|| AlphaProfile {
            alphas,
            mis_sizes: sizes.to_vec(),
        }));
    }
    let mut best: Option<(f64, Vec<u64>)> = None;
    // Mass left for α_1..α_{n-1} after α_0 = 1 and α_n.
    let rest = vn - used - 1;
    fill(vn, sizes, 1, 1, an, rest, &mut alphas, &mut best, budget)?;
    Ok(best.map(|(_, alphas)| AlphaProfile {
        alphas,
        mis_sizes: sizes.to_vec(),
    }))
}

#[allow(clippy::too_many_arguments)]
fn fill(
    vn: u64,
    sizes: &[u64],
    t: usize,
    floor: u64,
    cap: u64,
    rest: u64,
    alphas: &mut Vec<u64>,
    best: &mut Option<(f64, Vec<u64>)>,
    budget: &mut u64,
) -> Result<()> {
    let n = sizes.len() - 1;
    if *budget == 0 {
        return Err(Error::Guard {
            what: "α-profile search",
            needed: NODE_BUDGET as u128 + 1,
            budget: NODE_BUDGET as u128,
        });
    }
    *budget -= 1;
    if t == n - 1 {
        // Last free slot is forced by the mass equation.
        if !rest.is_multiple_of(sizes[t]) {
            return Ok(());
        }
        let a = rest / sizes[t];
        if a < floor || a > cap {
            return Ok(());
        }
        alphas[t] = a;
        let p = AlphaProfile {
            alphas: alphas.clone(),
            mis_sizes: sizes.to_vec(),
        };
        let h = profile_entropy(&p, vn);
        if best.as_ref().is_none_or(|(bh, _)| h < *bh - 1e-12) {
            *best = Some((h, p.alphas));
        }
        return Ok(());
    }
    // Later slots are at least `a` each, so a + Σ_{s>t} a·size_s <= rest.
    let tail: u64 = sizes[t..n].iter().sum();
    let mut a = floor;
    while a <= cap && a.saturating_mul(tail) <= rest {
        alphas[t] = a;
        fill(vn, sizes, t + 1, a, cap, rest - a * sizes[t], alphas, best, budget)?;
        a += 1;
    }
    Ok(())
}
