//! Exact rational helpers. Probabilities travel as `"num/den"` strings.

use num::{BigInt, BigRational, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn parse(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::invalid(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

pub fn format(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Shannon entropy in bits of an exact distribution; zero entries are skipped.
pub fn entropy_bits<'a>(probs: impl IntoIterator<Item = &'a Q>) -> f64 {
    probs
        .into_iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let p = to_f64(p);
            -p * p.log2()
        })
        .sum()
}
