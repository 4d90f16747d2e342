//! Fibonacci numbers, the binary expansion `W(k)` under the substitution
//! `0 -> 1, 1 -> 10`, and the branch enumeration of the expansion tree.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::Limits;

/// A finite word over `{0, 1}`, displayed as an ASCII string of `0`/`1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BinaryWord(pub Vec<u8>);

impl BinaryWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            f.write_str(if *b == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Domain(format!("`{other}` is not a binary letter"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(BinaryWord)
    }
}

/// `Fb(k)` with `Fb(1) = Fb(2) = 1`. Defined for `k >= 1` only.
pub fn fib(k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::Domain(
            "Fibonacci numbers are indexed from 1".to_string(),
        ));
    }
    let (mut a, mut b) = (1u64, 1u64);
    for _ in 2..k {
        let next = a
            .checked_add(b)
            .ok_or_else(|| Error::ResourceLimit(format!("fib({k}) overflows 64 bits")))?;
        a = b;
        b = next;
    }
    Ok(b)
}

/// Letterwise image under `σ(0) = 1`, `σ(1) = 10`.
pub fn sigma(w: &BinaryWord) -> BinaryWord {
    let mut out = Vec::with_capacity(2 * w.len());
    for &b in &w.0 {
        if b == 0 {
            out.push(1);
        } else {
            out.extend([1, 0]);
        }
    }
    BinaryWord(out)
}

/// `W(1) = 0`, `W(k + 1) = σ(W(k))`. `|W(k)| = Fb(k)`.
pub fn expansion(k: u32, limits: &Limits) -> Result<BinaryWord> {
    if k == 0 {
        return Err(Error::Domain(
            "expansion words are indexed from 1".to_string(),
        ));
    }
    if k > limits.max_word_index {
        return Err(Error::ResourceLimit(format!(
            "W({k}) exceeds the configured maximum index {}",
            limits.max_word_index
        )));
    }
    let mut w = BinaryWord(vec![0]);
    for _ in 1..k {
        w = sigma(&w);
    }
    Ok(w)
}

/// Checks `Fb(n + 3) <= limits.max_support` and returns the bound.
pub(crate) fn support_guard(n: usize, limits: &Limits) -> Result<u64> {
    let size = fib(n as u64 + 3).ok();
    match size {
        Some(s) if s <= limits.max_support && n <= crate::matrix::MAX_LEVEL => Ok(s),
        Some(s) => Err(Error::ResourceLimit(format!(
            "|A_{n}| = fib({}) = {s} exceeds max support {}",
            n + 3,
            limits.max_support
        ))),
        None => Err(Error::ResourceLimit(format!(
            "|A_{n}| = fib({}) exceeds 64 bits",
            n + 3
        ))),
    }
}

/// Depth-first paths of length `n + 1` below a root labeled `1`.
///
/// A node labeled `1` has children `1, 0` (in that order) and a node labeled
/// `0` has the single child `1`. The result has `Fb(n + 3)` tuples, each free
/// of adjacent zeros.
pub fn branch_sequences(n: usize, limits: &Limits) -> Result<Vec<Vec<u8>>> {
    let size = support_guard(n, limits)?;
    let mut out = Vec::with_capacity(size as usize);
    let mut path = Vec::with_capacity(n + 1);
    descend(1, n + 1, &mut path, &mut out);
    Ok(out)
}

fn descend(label: u8, remaining: usize, path: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if remaining == 0 {
        out.push(path.clone());
        return;
    }
    let children: &[u8] = if label == 1 { &[1, 0] } else { &[1] };
    for &child in children {
        path.push(child);
        descend(child, remaining - 1, path, out);
        path.pop();
    }
}
