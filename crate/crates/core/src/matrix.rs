//! The matrices `M_n = (A_n, D_n)`.
//!
//! A truth value of level `n` is a bit tuple `(x_0, ..., x_n)` in which a `0`
//! is always followed by a `1`. Designated values are those with `x_0 = 1`.
//! Negation shifts the tuple left and appends the complement of the old last
//! bit; implication depends only on the first coordinates and always returns
//! one of the two fully alternating tuples.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fibword::support_guard;
use crate::formula::Formula;
use crate::Limits;

/// Largest level representable by [`TruthValue`].
pub const MAX_LEVEL: usize = 62;

/// Largest matrix accepted by [`find_isomorphism`].
pub const MAX_ISO_SIZE: usize = 10;

/// A tuple `(x_0, ..., x_n)` over `{0, 1}` with no adjacent `0, 0`.
///
/// Coordinate `x_i` is stored at bit `n - i`, so for equal lengths the integer
/// order of `bits` is the lexicographic order of tuples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TruthValue {
    width: u8,
    bits: u64,
}

impl TruthValue {
    /// Validates `coords` against the no-adjacent-zeros rule.
    pub fn new(coords: &[u8]) -> Result<TruthValue> {
        if coords.is_empty() || coords.len() > MAX_LEVEL + 1 {
            return Err(Error::MalformedValue(format!(
                "length {} outside 1..={}",
                coords.len(),
                MAX_LEVEL + 1
            )));
        }
        let mut bits = 0u64;
        for &c in coords {
            if c > 1 {
                return Err(Error::MalformedValue(format!(
                    "coordinate {c} is not a bit"
                )));
            }
            bits = (bits << 1) | u64::from(c);
        }
        if let Some(k) = coords.windows(2).position(|w| w == [0, 0]) {
            return Err(Error::MalformedValue(format!(
                "x_{k} = 0 and x_{} = 0",
                k + 1
            )));
        }
        Ok(TruthValue {
            width: coords.len() as u8,
            bits,
        })
    }

    pub(crate) fn from_bits(width: usize, bits: u64) -> TruthValue {
        debug_assert!((1..=MAX_LEVEL + 1).contains(&width));
        TruthValue {
            width: width as u8,
            bits,
        }
    }

    /// The fully alternating tuple starting with `first`.
    pub fn alternating(level: usize, first: bool) -> TruthValue {
        let width = level + 1;
        // 1010...: bit `width - 1 - i` set for even i.
        let mut bits = 0u64;
        for i in (0..width).step_by(2) {
            bits |= 1 << (width - 1 - i);
        }
        if !first {
            bits ^= mask(width);
        }
        TruthValue::from_bits(width, bits)
    }

    /// The level `n`; the tuple has `n + 1` coordinates.
    pub fn level(&self) -> usize {
        self.width as usize - 1
    }

    pub fn len(&self) -> usize {
        self.width as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Coordinate `x_i`. Panics if `i > n`.
    pub fn get(&self, i: usize) -> u8 {
        assert!(i < self.len(), "coordinate {i} out of range");
        ((self.bits >> (self.len() - 1 - i)) & 1) as u8
    }

    pub fn is_designated(&self) -> bool {
        self.get(0) == 1
    }

    pub fn coords(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }
}

fn mask(width: usize) -> u64 {
    (1u64 << width) - 1
}

impl Ord for TruthValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.width
            .cmp(&other.width)
            .then(self.bits.cmp(&other.bits))
    }
}

impl PartialOrd for TruthValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Level-0 values print as a bare bit, others as `(x_0,...,x_n)`.
impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_coords(&self.coords()))
    }
}

pub(crate) fn render_coords(coords: &[u8]) -> String {
    if coords.len() == 1 {
        return coords[0].to_string();
    }
    let inner: Vec<String> = coords.iter().map(u8::to_string).collect();
    format!("({})", inner.join(","))
}

/// `¬(x_0, ..., x_n) = (x_1, ..., x_n, -x_n)`; for `n = 0` this is `-x_0`.
pub fn neg_op(x: &TruthValue) -> TruthValue {
    let width = x.len();
    let last = x.bits & 1;
    TruthValue::from_bits(width, ((x.bits << 1) & mask(width)) | (last ^ 1))
}

/// `x ⊃ y = (z_0, ..., z_n)` with `z_0 = x_0 → y_0` and `z_k = -z_{k-1}`.
pub fn imp_op(x: &TruthValue, y: &TruthValue) -> Result<TruthValue> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    let z0 = x.get(0) == 0 || y.get(0) == 1;
    Ok(TruthValue::alternating(x.level(), z0))
}

/// `A_n` built level by level: extend each member of `A_{n-1}` by one bit,
/// forcing a `1` after a `0`. Sorted ascending.
pub fn build_support_recursive(n: usize, limits: &Limits) -> Result<Vec<TruthValue>> {
    support_guard(n, limits)?;
    let mut level: Vec<Vec<u8>> = vec![vec![0], vec![1]];
    for _ in 1..=n {
        let mut next = Vec::with_capacity(level.len() * 2);
        for prefix in &level {
            let last = *prefix.last().expect("tuples are non-empty");
            if last == 1 {
                let mut zero = prefix.clone();
                zero.push(0);
                next.push(zero);
            }
            let mut one = prefix.clone();
            one.push(1);
            next.push(one);
        }
        level = next;
    }
    level.iter().map(|c| TruthValue::new(c)).collect()
}

/// `A_n` as the tuples of `2^{n+1}` with no adjacent zeros. Sorted ascending.
pub fn build_support_direct(n: usize, limits: &Limits) -> Result<Vec<TruthValue>> {
    support_guard(n, limits)?;
    let width = n + 1;
    Ok((0..1u64 << width)
        .filter(|bits| {
            let zeros = !bits & mask(width);
            zeros & (zeros >> 1) == 0
        })
        .map(|bits| TruthValue::from_bits(width, bits))
        .collect())
}

/// `D_n`: the members of `A_n` whose first coordinate is `1`.
pub fn designated_set(n: usize, limits: &Limits) -> Result<Vec<TruthValue>> {
    Ok(build_support_recursive(n, limits)?
        .into_iter()
        .filter(TruthValue::is_designated)
        .collect())
}

/// The matrix `M_n` with operations computed on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicMatrix {
    n: usize,
    values: Vec<TruthValue>,
}

impl LogicMatrix {
    pub fn level(&self) -> usize {
        self.n
    }

    /// `A_n` in ascending lexicographic order.
    pub fn values(&self) -> &[TruthValue] {
        &self.values
    }

    pub fn size(&self) -> usize {
        self.values.len()
    }

    pub fn designated(&self) -> impl Iterator<Item = &TruthValue> {
        self.values.iter().filter(|v| v.is_designated())
    }

    pub fn index_of(&self, x: &TruthValue) -> Option<usize> {
        self.values.binary_search(x).ok()
    }

    pub fn neg(&self, x: &TruthValue) -> TruthValue {
        neg_op(x)
    }

    pub fn imp(&self, x: &TruthValue, y: &TruthValue) -> Result<TruthValue> {
        imp_op(x, y)
    }
}

pub fn build_matrix(n: usize, limits: &Limits) -> Result<LogicMatrix> {
    Ok(LogicMatrix {
        n,
        values: build_support_recursive(n, limits)?,
    })
}

/// A finite `{¬, ⊃}`-matrix given by explicit index tables.
///
/// Serializes to the matrix JSON schema with keys in the order
/// `n, values, designated, neg, imp`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenericMatrix {
    pub n: usize,
    /// Element labels; `values[i]` names element `i`.
    pub values: Vec<Vec<u8>>,
    /// Indices of designated elements, ascending.
    pub designated: Vec<usize>,
    pub neg: Vec<usize>,
    /// `imp[i][j]` is the index of `values[i] ⊃ values[j]`.
    pub imp: Vec<Vec<usize>>,
}

impl GenericMatrix {
    pub fn size(&self) -> usize {
        self.values.len()
    }

    pub fn is_designated(&self, i: usize) -> bool {
        self.designated.binary_search(&i).is_ok()
    }

    /// Checks that every table entry is a valid index and labels are distinct.
    pub fn validate(&self) -> Result<()> {
        let size = self.size();
        let bad = |msg: String| Err(Error::MalformedMatrix(msg));
        if size == 0 {
            return bad("matrix has no values".into());
        }
        let width = self.values[0].len();
        for (i, v) in self.values.iter().enumerate() {
            if v.is_empty() || v.len() != width || v.iter().any(|&b| b > 1) {
                return bad(format!("value {i} is not a bit tuple of length {width}"));
            }
        }
        let mut labels = self.values.clone();
        labels.sort();
        labels.dedup();
        if labels.len() != size {
            return bad("duplicate value labels".into());
        }
        if self.designated.windows(2).any(|w| w[0] >= w[1]) {
            return bad("designated indices must be strictly ascending".into());
        }
        if self.designated.iter().any(|&d| d >= size) {
            return bad("designated index out of range".into());
        }
        if self.neg.len() != size || self.neg.iter().any(|&x| x >= size) {
            return bad(format!("neg table must hold {size} indices below {size}"));
        }
        if self.imp.len() != size
            || self
                .imp
                .iter()
                .any(|row| row.len() != size || row.iter().any(|&x| x >= size))
        {
            return bad(format!(
                "imp table must be {size}x{size} with indices below {size}"
            ));
        }
        Ok(())
    }

    /// Moves element `i` to position `perm[i]`; labels travel with their elements.
    pub fn relabel(&self, perm: &[usize]) -> Result<GenericMatrix> {
        let size = self.size();
        let mut seen = vec![false; size];
        if perm.len() != size
            || perm
                .iter()
                .any(|&p| p >= size || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::Domain(format!("not a permutation of 0..{size}")));
        }
        let mut values = vec![Vec::new(); size];
        let mut neg = vec![0; size];
        let mut imp = vec![vec![0; size]; size];
        for i in 0..size {
            values[perm[i]] = self.values[i].clone();
            neg[perm[i]] = perm[self.neg[i]];
            for j in 0..size {
                imp[perm[i]][perm[j]] = perm[self.imp[i][j]];
            }
        }
        let mut designated: Vec<usize> = self.designated.iter().map(|&d| perm[d]).collect();
        designated.sort_unstable();
        Ok(GenericMatrix {
            n: self.n,
            values,
            designated,
            neg,
            imp,
        })
    }

    /// Value index of `f` under an assignment of atoms to element indices.
    pub fn eval(&self, assignment: &BTreeMap<String, usize>, f: &Formula) -> Result<usize> {
        match f {
            Formula::Atom(name) => assignment
                .get(name)
                .copied()
                .ok_or_else(|| Error::UnboundAtom(name.clone())),
            Formula::Neg(body) => Ok(self.neg[self.eval(assignment, body)?]),
            Formula::Imp(l, r) => {
                Ok(self.imp[self.eval(assignment, l)?][self.eval(assignment, r)?])
            }
        }
    }

    /// Compact JSON in the fixed key order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<GenericMatrix> {
        let m: GenericMatrix =
            serde_json::from_str(text).map_err(|e| Error::MalformedMatrix(e.to_string()))?;
        m.validate()?;
        Ok(m)
    }

    /// Aligned text tables: `¬` as a two-row table and `⊃` as a square grid
    /// with the antecedent on rows. Cells are right-aligned to a common width.
    pub fn to_table_text(&self) -> String {
        let labels: Vec<String> = self.values.iter().map(|v| render_coords(v)).collect();
        let width = labels.iter().map(|l| l.len()).max().unwrap_or(0).max(2);
        let row = |head: &str, cells: &mut dyn Iterator<Item = &str>| {
            let mut line = format!("{head:>width$} |");
            for c in cells {
                line.push_str(&format!(" {c:>width$}"));
            }
            line
        };
        let mut out = vec![
            row("~", &mut labels.iter().map(String::as_str)),
            row("", &mut self.neg.iter().map(|&i| labels[i].as_str())),
            String::new(),
            row("->", &mut labels.iter().map(String::as_str)),
        ];
        for (i, r) in self.imp.iter().enumerate() {
            out.push(row(&labels[i], &mut r.iter().map(|&j| labels[j].as_str())));
        }
        let designated: Vec<&str> = self
            .designated
            .iter()
            .map(|&i| labels[i].as_str())
            .collect();
        out.push(String::new());
        out.push(format!("designated: {}", designated.join(" ")));
        let mut text = out.join("\n");
        text.push('\n');
        text
    }
}

/// Explicit index tables for `m`, guarded by `limits.max_table` cells.
pub fn materialize(m: &LogicMatrix, limits: &Limits) -> Result<GenericMatrix> {
    let size = m.size() as u64;
    let cells = size.saturating_mul(size);
    if cells > limits.max_table {
        return Err(Error::ResourceLimit(format!(
            "materializing M_{} needs {size}^2 = {cells} table cells, limit {}",
            m.level(),
            limits.max_table
        )));
    }
    let index = |x: &TruthValue| m.index_of(x).expect("operations are closed on A_n");
    let neg = m.values().iter().map(|x| index(&neg_op(x))).collect();
    let imp = m
        .values()
        .iter()
        .map(|x| {
            m.values()
                .iter()
                .map(|y| index(&imp_op(x, y).expect("same level")))
                .collect()
        })
        .collect();
    let designated = (0..m.size())
        .filter(|&i| m.values()[i].is_designated())
        .collect();
    Ok(GenericMatrix {
        n: m.level(),
        values: m.values().iter().map(TruthValue::coords).collect(),
        designated,
        neg,
        imp,
    })
}

pub fn export_json(m: &GenericMatrix) -> String {
    m.to_json()
}

/// First bijection `f` (as `f[i]` = image of element `i`), in lexicographic
/// order of the image sequence, that preserves both tables and designation.
pub fn find_isomorphism(a: &GenericMatrix, b: &GenericMatrix) -> Result<Option<Vec<usize>>> {
    if a.size() != b.size() || a.designated.len() != b.designated.len() {
        return Ok(None);
    }
    if a.size() > MAX_ISO_SIZE {
        return Err(Error::ResourceLimit(format!(
            "isomorphism search over {} elements exceeds the limit of {MAX_ISO_SIZE}",
            a.size()
        )));
    }
    let mut search = IsoSearch {
        a,
        b,
        image: Vec::with_capacity(a.size()),
        used: vec![false; a.size()],
    };
    Ok(search.extend().then_some(search.image))
}

struct IsoSearch<'m> {
    a: &'m GenericMatrix,
    b: &'m GenericMatrix,
    image: Vec<usize>,
    used: Vec<bool>,
}

impl IsoSearch<'_> {
    fn extend(&mut self) -> bool {
        let i = self.image.len();
        if i == self.a.size() {
            return true;
        }
        for target in 0..self.b.size() {
            if self.used[target] {
                continue;
            }
            self.image.push(target);
            self.used[target] = true;
            if self.consistent(i) && self.extend() {
                return true;
            }
            self.used[target] = false;
            self.image.pop();
        }
        false
    }

    /// Checks every constraint whose elements are all mapped and one of which is `i`.
    fn consistent(&self, i: usize) -> bool {
        let (a, b, f) = (self.a, self.b, &self.image);
        let mapped = |x: usize| f.get(x).copied();
        if a.is_designated(i) != b.is_designated(f[i]) {
            return false;
        }
        for j in 0..=i {
            if let Some(img) = mapped(a.neg[j]) {
                if (j == i || a.neg[j] == i) && b.neg[f[j]] != img {
                    return false;
                }
            }
            for k in 0..=i {
                if j != i && k != i && a.imp[j][k] != i {
                    continue;
                }
                if let Some(img) = mapped(a.imp[j][k]) {
                    if b.imp[f[j]][f[k]] != img {
                        return false;
                    }
                }
            }
        }
        true
    }
}
