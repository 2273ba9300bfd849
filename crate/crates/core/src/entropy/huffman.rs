use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use num::Zero;

use crate::error::{Error, Result};
use crate::rational::{self, Q};

/// Binary prefix code over color ids. Zero-probability colors get no codeword.
#[derive(Clone, Debug, PartialEq)]
pub struct HuffmanCode {
    pub codewords: Vec<Option<Vec<bool>>>,
    /// Exact expected length in bits.
    pub average: Q,
}

#[derive(PartialEq, Eq)]
struct Node {
    p: Q,
    /// Smallest symbol below this node; breaks probability ties.
    min_id: usize,
    id: usize,
}

impl Ord for Node {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.p, self.min_id).cmp(&(&other.p, other.min_id))
    }
}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Optimal binary prefix code. The two least probable nodes merge first,
/// ties going to the node holding the smaller color id, which gets bit 0.
/// A lone symbol gets the empty codeword.
pub fn huffman_code(pmf: &[Q]) -> Result<HuffmanCode> {
    if pmf.is_empty() {
        return Err(Error::invalid("empty pmf"));
    }
    if pmf.iter().any(|p| *p < Q::zero()) {
        return Err(Error::invalid("negative probability"));
    }
    let dropped: Vec<usize> = (0..pmf.len()).filter(|&i| pmf[i].is_zero()).collect();
    if !dropped.is_empty() {
        log::warn!("dropping zero-probability colors {dropped:?}");
    }
    let live: Vec<usize> = (0..pmf.len()).filter(|&i| !pmf[i].is_zero()).collect();
    if live.is_empty() {
        return Err(Error::invalid("pmf has no positive entries"));
    }
    // children[id] for internal nodes; leaves are ids < pmf.len().
    let mut children: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut heap: BinaryHeap<Reverse<Node>> = live
        .iter()
        .map(|&i| {
            Reverse(Node {
                p: pmf[i].clone(),
                min_id: i,
                id: i,
            })
        })
        .collect();
    let mut next = pmf.len();
    while heap.len() > 1 {
        let Reverse(a) = heap.pop().expect("two nodes");
        let Reverse(b) = heap.pop().expect("two nodes");
        children.insert(next, (a.id, b.id));
        heap.push(Reverse(Node {
            p: a.p + b.p,
            min_id: a.min_id.min(b.min_id),
            id: next,
        }));
        next += 1;
    }
    let root = heap.pop().expect("root").0.id;
    let mut codewords = vec![None; pmf.len()];
    let mut stack = vec![(root, Vec::new())];
    while let Some((id, prefix)) = stack.pop() {
        match children.get(&id) {
            Some(&(zero, one)) => {
                let mut z = prefix.clone();
                z.push(false);
                let mut o = prefix;
                o.push(true);
                stack.push((zero, z));
                stack.push((one, o));
            }
            None => codewords[id] = Some(prefix),
        }
    }
    let average = live
        .iter()
        .map(|&i| pmf[i].clone() * Q::from_integer((codewords[i].as_ref().expect("live").len() as i64).into()))
        .sum();
    Ok(HuffmanCode { codewords, average })
}

impl HuffmanCode {
    pub fn lengths(&self) -> Vec<Option<usize>> {
        self.codewords.iter().map(|c| c.as_ref().map(Vec::len)).collect()
    }

    pub fn average_f64(&self) -> f64 {
        rational::to_f64(&self.average)
    }

    pub fn encode(&self, symbol: usize, out: &mut Vec<bool>) -> Result<()> {
        let w = self
            .codewords
            .get(symbol)
            .and_then(Option::as_ref)
            .ok_or_else(|| Error::Unsupported(format!("color {symbol} has no codeword")))?;
        out.extend_from_slice(w);
        Ok(())
    }

    /// Decodes exactly `count` symbols from the front of `bits`, returning
    /// them and the number of bits consumed.
    pub fn decode(&self, bits: &[bool], count: usize) -> Result<(Vec<usize>, usize)> {
        let table: HashMap<&[bool], usize> = self
            .codewords
            .iter()
            .enumerate()
            .filter_map(|(i, w)| w.as_ref().map(|w| (w.as_slice(), i)))
            .collect();
        let longest = table.keys().map(|k| k.len()).max().unwrap_or(0);
        let mut out = Vec::with_capacity(count);
        let mut pos = 0;
        while out.len() < count {
            let mut len = 0;
            loop {
                if let Some(&s) = table.get(&bits[pos..pos + len]) {
                    out.push(s);
                    pos += len;
                    break;
                }
                len += 1;
                if len > longest || pos + len > bits.len() {
                    return Err(Error::invalid("bitstream does not parse"));
                }
            }
        }
        Ok((out, pos))
    }

    pub fn to_strings(&self) -> Vec<Option<String>> {
        self.codewords
            .iter()
            .map(|w| w.as_ref().map(|w| w.iter().map(|&b| if b { '1' } else { '0' }).collect()))
            .collect()
    }
}
