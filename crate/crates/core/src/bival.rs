//! Canonical bivaluations.
//!
//! A bivaluation of level `n` is fixed by the values it gives to the towers
//! `α, ¬α, ..., ¬^n α` of every atom. Those `n + 1` bits form a seed tuple, and
//! the admissible seed tuples are exactly the truth values of `A_n`, so a
//! [`BivalSeed`] and a [`MatrixValuation`] share the same carrier. What differs
//! is how a formula is evaluated: [`eval_bival`] computes a single bit with the
//! scalar rules, [`MatrixValuation::extend`] computes a whole tuple through the
//! matrix operations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::fibword::{fib, support_guard};
use crate::formula::{neg_decompose, Formula};
use crate::matrix::{imp_op, neg_op, TruthValue};
use crate::Limits;

/// Per-atom seed tuples `(v(α), v(¬α), ..., v(¬^n α))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BivalSeed {
    n: usize,
    assignment: BTreeMap<String, TruthValue>,
}

/// Per-atom truth values of `M_n`, extended homomorphically to formulas.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixValuation {
    n: usize,
    assignment: BTreeMap<String, TruthValue>,
}

fn check_levels(n: usize, assignment: &BTreeMap<String, TruthValue>) -> Result<()> {
    match assignment.values().find(|t| t.level() != n) {
        Some(t) => Err(Error::LengthMismatch(n + 1, t.len())),
        None => Ok(()),
    }
}

fn write_assignment(
    f: &mut fmt::Formatter<'_>,
    assignment: &BTreeMap<String, TruthValue>,
) -> fmt::Result {
    for (i, (atom, value)) in assignment.iter().enumerate() {
        if i > 0 {
            f.write_str("\n")?;
        }
        write!(f, "{atom} = {value}")?;
    }
    Ok(())
}

macro_rules! assignment_carrier {
    ($ty:ident) => {
        impl $ty {
            /// Fails if some tuple does not have `n + 1` coordinates.
            pub fn new(n: usize, assignment: BTreeMap<String, TruthValue>) -> Result<Self> {
                check_levels(n, &assignment)?;
                Ok($ty { n, assignment })
            }

            pub fn level(&self) -> usize {
                self.n
            }

            pub fn assignment(&self) -> &BTreeMap<String, TruthValue> {
                &self.assignment
            }

            pub fn get(&self, atom: &str) -> Result<&TruthValue> {
                self.assignment
                    .get(atom)
                    .ok_or_else(|| Error::UnboundAtom(atom.to_string()))
            }
        }

        /// One `atom = value` line per atom.
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_assignment(f, &self.assignment)
            }
        }
    };
}

assignment_carrier!(BivalSeed);
assignment_carrier!(MatrixValuation);

impl MatrixValuation {
    /// The homomorphic extension `w(f)`.
    pub fn extend(&self, f: &Formula) -> Result<TruthValue> {
        match f {
            Formula::Atom(name) => self.get(name).copied(),
            Formula::Neg(body) => Ok(neg_op(&self.extend(body)?)),
            Formula::Imp(l, r) => imp_op(&self.extend(l)?, &self.extend(r)?),
        }
    }

    pub fn designates(&self, f: &Formula) -> Result<bool> {
        Ok(self.extend(f)?.is_designated())
    }
}

impl BivalSeed {
    pub fn eval(&self, f: &Formula) -> Result<bool> {
        eval_bival(self, f)
    }
}

/// `v(f)` for the canonical bivaluation generated by `seed`.
///
/// * `¬^k α` with `k <= n` reads bit `k` of the seed tuple of `α`;
/// * any other negation `¬ψ` is `1 - v(ψ)`;
/// * `ψ ⊃ θ` is `v(ψ) → v(θ)`.
///
/// A negation tower is collapsed in one step: past the seed it just flips
/// parity, so evaluation is linear in the size of `f`.
pub fn eval_bival(seed: &BivalSeed, f: &Formula) -> Result<bool> {
    let tower = neg_decompose(f);
    let flips = |base: bool, times: usize| base ^ (times % 2 == 1);
    match tower.core {
        Formula::Atom(name) => {
            let tuple = seed.get(name)?;
            if tower.k <= seed.n {
                Ok(tuple.get(tower.k) == 1)
            } else {
                Ok(flips(tuple.get(seed.n) == 1, tower.k - seed.n))
            }
        }
        Formula::Imp(l, r) => {
            let value = !eval_bival(seed, l)? || eval_bival(seed, r)?;
            Ok(flips(value, tower.k))
        }
        Formula::Neg(_) => unreachable!("tower core is never a negation"),
    }
}

/// The matrix valuation `w_v` with `w_v(α) = (v(α), v(¬α), ..., v(¬^n α))`.
pub fn to_matrix_valuation(seed: &BivalSeed) -> MatrixValuation {
    MatrixValuation {
        n: seed.n,
        assignment: seed.assignment.clone(),
    }
}

/// The seed of the bivaluation `v_w` induced by `w`.
pub fn from_matrix_valuation(w: &MatrixValuation) -> BivalSeed {
    BivalSeed {
        n: w.n,
        assignment: w.assignment.clone(),
    }
}

/// Admissible seed tuples of level `n`: raw `(n+1)`-bit tuples in which
/// `v(¬^k α) = 0` forces `v(¬^{k+1} α) = 1`. Ascending order.
fn seed_tuples(n: usize) -> Vec<TruthValue> {
    let width = n + 1;
    let mut out = Vec::new();
    let mut raw = vec![0u8; width];
    for code in 0u64..(1u64 << width) {
        for (i, bit) in raw.iter_mut().enumerate() {
            *bit = ((code >> (width - 1 - i)) & 1) as u8;
        }
        let admissible = (0..n).all(|k| raw[k] == 1 || raw[k + 1] == 1);
        if admissible {
            out.push(TruthValue::new(&raw).expect("admissible tuples are truth values"));
        }
    }
    out
}

/// `|A_n|^m`, or `None` on overflow.
pub(crate) fn assignment_count(n: usize, atoms: usize) -> Option<u128> {
    let per_atom = u128::from(fib(n as u64 + 3).ok()?);
    per_atom.checked_pow(u32::try_from(atoms).ok()?)
}

pub(crate) fn evaluation_guard(n: usize, atoms: usize, limits: &Limits) -> Result<u64> {
    let exceeded = |bound: String| {
        Err(Error::ResourceLimit(format!(
            "enumeration needs fib({})^{atoms} = {bound} valuations, max evals {}",
            n + 3,
            limits.max_evals
        )))
    };
    if n > crate::matrix::MAX_LEVEL {
        return exceeded("more than 2^64".into());
    }
    match assignment_count(n, atoms) {
        Some(total) if total <= u128::from(limits.max_evals) => Ok(total as u64),
        Some(total) => exceeded(total.to_string()),
        None => exceeded("more than 2^128".into()),
    }
}

/// All seeds over a fixed atom list, in lexicographic order: the first atom
/// varies slowest, each atom runs through its tuples in ascending order.
#[derive(Debug, Clone)]
pub struct SeedSpace {
    n: usize,
    atoms: Vec<String>,
    tuples: Vec<TruthValue>,
    total: u64,
}

impl SeedSpace {
    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    /// The seed at position `index` of the enumeration.
    pub fn get(&self, index: u64) -> BivalSeed {
        assert!(index < self.total, "seed index {index} out of range");
        let base = self.tuples.len() as u64;
        let mut rest = index;
        let mut digits = vec![0usize; self.atoms.len()];
        for d in digits.iter_mut().rev() {
            *d = (rest % base) as usize;
            rest /= base;
        }
        BivalSeed {
            n: self.n,
            assignment: self
                .atoms
                .iter()
                .cloned()
                .zip(digits.into_iter().map(|d| self.tuples[d]))
                .collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = BivalSeed> + '_ {
        (0..self.total).map(move |i| self.get(i))
    }
}

/// Every seed of level `n` over `atoms` (deduplicated, sorted).
pub fn enumerate_seeds<S: AsRef<str>>(n: usize, atoms: &[S], limits: &Limits) -> Result<SeedSpace> {
    let atoms: Vec<String> = atoms
        .iter()
        .map(|a| a.as_ref().to_string())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    support_guard(n, limits)?;
    let total = evaluation_guard(n, atoms.len(), limits)?;
    Ok(SeedSpace {
        n,
        atoms,
        tuples: seed_tuples(n),
        total,
    })
}

/// One of the four closure conditions a bivaluation must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// `v(¬φ) = 0` implies `v(φ) = 1`.
    NegationGap,
    /// `v(¬^{n+1} φ) = 1` implies `v(¬^n φ) = 0`.
    TowerTop(usize),
    /// `v(¬(φ ⊃ ψ)) = 1` implies `v(φ ⊃ ψ) = 0`.
    NegatedImplication,
    /// `v(φ ⊃ ψ) = 1` iff `v(φ) = 0` or `v(ψ) = 1`.
    Implication,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::NegationGap => f.write_str("(1)"),
            Condition::TowerTop(n) => write!(f, "(2.{n})"),
            Condition::NegatedImplication => f.write_str("(3)"),
            Condition::Implication => f.write_str("(4)"),
        }
    }
}

/// A failed instance of a [`Condition`], witnessed by its largest formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub formula: Formula,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition {} fails at {}", self.condition, self.formula)
    }
}

/// Checks every instance of the closure conditions whose formulas all lie in
/// `formulas`, evaluating with [`eval_bival`].
pub fn audit_conditions(seed: &BivalSeed, formulas: &BTreeSet<Formula>) -> Result<Vec<Violation>> {
    audit_with(seed.n, formulas, |f| eval_bival(seed, f))
}

/// [`audit_conditions`] against an arbitrary evaluator.
pub fn audit_with<E>(n: usize, formulas: &BTreeSet<Formula>, mut eval: E) -> Result<Vec<Violation>>
where
    E: FnMut(&Formula) -> Result<bool>,
{
    let mut out = Vec::new();
    let mut report = |condition, formula: &Formula| {
        out.push(Violation {
            condition,
            formula: formula.clone(),
        })
    };
    for f in formulas {
        match f {
            Formula::Neg(body) => {
                if formulas.contains(body.as_ref()) && !eval(f)? && !eval(body)? {
                    report(Condition::NegationGap, f);
                }
                if let Formula::Imp(..) = body.as_ref() {
                    if formulas.contains(body.as_ref()) && eval(f)? && eval(body)? {
                        report(Condition::NegatedImplication, f);
                    }
                }
                if neg_decompose(f).k > n
                    && formulas.contains(body.as_ref())
                    && eval(f)?
                    && eval(body)?
                {
                    report(Condition::TowerTop(n), f);
                }
            }
            Formula::Imp(l, r) => {
                if formulas.contains(l.as_ref()) && formulas.contains(r.as_ref()) {
                    let expected = !eval(l)? || eval(r)?;
                    if eval(f)? != expected {
                        report(Condition::Implication, f);
                    }
                }
            }
            Formula::Atom(_) => {}
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn tv(c: &[u8]) -> TruthValue {
        TruthValue::new(c).unwrap()
    }

    fn seed(n: usize, pairs: &[(&str, &[u8])]) -> BivalSeed {
        BivalSeed::new(
            n,
            pairs.iter().map(|(a, c)| (a.to_string(), tv(c))).collect(),
        )
        .unwrap()
    }

    #[test]
    fn seed_enumeration_examples() {
        let l = Limits::default();
        let space = enumerate_seeds(2, &["p"], &l).unwrap();
        assert_eq!(space.len(), 5);
        let tuples: Vec<Vec<u8>> = space.iter().map(|s| s.get("p").unwrap().coords()).collect();
        assert_eq!(
            tuples,
            [[0, 1, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0], [1, 1, 1]]
        );
        assert_eq!(enumerate_seeds(0, &["p", "q"], &l).unwrap().len(), 4);
        assert_eq!(enumerate_seeds(2, &["p", "q"], &l).unwrap().len(), 25);
    }

    #[test]
    fn seed_order_is_lexicographic_by_atom() {
        let l = Limits::default();
        let space = enumerate_seeds(1, &["q", "p"], &l).unwrap();
        assert_eq!(space.atoms(), ["p", "q"]);
        let first = space.get(0);
        let second = space.get(1);
        assert_eq!(first.get("p").unwrap(), second.get("p").unwrap());
        assert_eq!(second.get("q").unwrap(), &tv(&[1, 0]));
        assert_eq!(space.get(3).get("p").unwrap(), &tv(&[1, 0]));
    }

    #[test]
    fn seed_guard_reports_bound() {
        let l = Limits {
            max_evals: 100,
            ..Limits::default()
        };
        let err = enumerate_seeds(2, &["p", "q", "r"], &l).unwrap_err();
        assert!(err.to_string().contains("fib(5)^3 = 125"), "{err}");
    }

    #[test]
    fn seed_level_mismatch_rejected() {
        let assignment = BTreeMap::from([("p".to_string(), tv(&[1, 1]))]);
        assert!(BivalSeed::new(2, assignment).is_err());
    }

    #[test]
    fn eval_examples() {
        let s = seed(2, &[("p", &[1, 1, 0])]);
        assert!(!eval_bival(&s, &parse("~~p").unwrap()).unwrap());
        assert!(eval_bival(&s, &parse("~~~p").unwrap()).unwrap());

        let s = seed(2, &[("p", &[1, 1, 1]), ("q", &[0, 1, 1])]);
        assert!(eval_bival(&s, &parse("~(p -> q)").unwrap()).unwrap());
        assert_eq!(
            eval_bival(&s, &parse("r").unwrap()).unwrap_err(),
            Error::UnboundAtom("r".into())
        );
    }

    #[test]
    fn eval_follows_the_step_rules() {
        // ¬^{k+1} α with k >= n complements ¬^k α; ¬ of an implication complements it.
        let s = seed(1, &[("p", &[1, 1]), ("q", &[0, 1])]);
        for k in 1..8 {
            let lower = eval_bival(&s, &Formula::neg_k(k, Formula::atom("p"))).unwrap();
            let upper = eval_bival(&s, &Formula::neg_k(k + 1, Formula::atom("p"))).unwrap();
            assert_eq!(upper, !lower, "k = {k}");
        }
        let imp = parse("q -> p").unwrap();
        assert!(eval_bival(&s, &imp).unwrap());
        assert!(!eval_bival(&s, &Formula::neg(imp.clone())).unwrap());
        assert!(eval_bival(&s, &Formula::neg_k(2, imp)).unwrap());
    }

    #[test]
    fn valuation_transforms_are_identities() {
        let s = seed(2, &[("p", &[1, 0, 1])]);
        let w = to_matrix_valuation(&s);
        assert_eq!(w.get("p").unwrap(), &tv(&[1, 0, 1]));
        assert_eq!(from_matrix_valuation(&w), s);

        let empty = BivalSeed::new(3, BTreeMap::new()).unwrap();
        assert!(to_matrix_valuation(&empty).assignment().is_empty());

        let s = seed(1, &[("p", &[0, 1]), ("q", &[1, 1])]);
        assert_eq!(to_matrix_valuation(&s).assignment(), s.assignment());

        let w =
            MatrixValuation::new(2, BTreeMap::from([("p".to_string(), tv(&[1, 1, 0]))])).unwrap();
        assert_eq!(from_matrix_valuation(&w).get("p").unwrap(), &tv(&[1, 1, 0]));
    }

    #[test]
    fn first_coordinate_matches_bival() {
        let l = Limits::default();
        let formulas = [
            "~~p -> q",
            "~(p -> ~q)",
            "~~~~p",
            "(p -> q) -> ~p",
            "~~(q -> ~~~q)",
        ];
        for n in 0..=3 {
            for s in enumerate_seeds(n, &["p", "q"], &l).unwrap().iter() {
                let w = to_matrix_valuation(&s);
                for text in formulas {
                    let f = parse(text).unwrap();
                    assert_eq!(
                        w.extend(&f).unwrap().get(0) == 1,
                        eval_bival(&s, &f).unwrap(),
                        "n = {n}, {f}, seed {s}"
                    );
                }
            }
        }
    }

    #[test]
    fn audit_is_empty_for_canonical_seeds() {
        let l = Limits::default();
        let f = parse("~~~p").unwrap();
        let set = f.subformulas();
        assert_eq!(set.len(), 4);
        let s = seed(2, &[("p", &[1, 1, 1])]);
        assert_eq!(audit_conditions(&s, &set).unwrap(), vec![]);

        let g = parse("~~(~~~p -> ~(q -> ~~~~q))").unwrap();
        let set = g.subformulas();
        for n in 0..=3 {
            for s in enumerate_seeds(n, &["p", "q"], &l).unwrap().iter() {
                assert_eq!(audit_conditions(&s, &set).unwrap(), vec![]);
            }
        }
    }

    #[test]
    fn audit_catches_corrupted_evaluator() {
        let s = seed(2, &[("p", &[0, 1, 0])]);
        let not_p = parse("~p").unwrap();
        let set = not_p.subformulas();
        let violations = audit_with(2, &set, |f| {
            if *f == not_p {
                Ok(false)
            } else {
                eval_bival(&s, f)
            }
        })
        .unwrap();
        assert_eq!(
            violations,
            vec![Violation {
                condition: Condition::NegationGap,
                formula: not_p.clone()
            }]
        );
        assert_eq!(violations[0].to_string(), "condition (1) fails at ~p");
    }

    #[test]
    fn audit_flags_each_condition() {
        let p = parse("p").unwrap();
        let imp = parse("p -> p").unwrap();
        let neg_imp = Formula::neg(imp.clone());
        let tower = Formula::neg_k(2, p.clone());
        let set: BTreeSet<Formula> = [
            p.clone(),
            Formula::neg(p.clone()),
            tower.clone(),
            imp.clone(),
            neg_imp.clone(),
        ]
        .into_iter()
        .collect();
        // Everything true: breaks (2.1), (3), but not (1) or (4).
        let violations = audit_with(1, &set, |_| Ok(true)).unwrap();
        let mut conditions: Vec<Condition> = violations.iter().map(|v| v.condition).collect();
        conditions.sort();
        assert_eq!(
            conditions,
            vec![Condition::TowerTop(1), Condition::NegatedImplication]
        );
        // p -> p false while p true: breaks (4).
        let violations = audit_with(1, &set, |f| Ok(*f != imp)).unwrap();
        assert!(violations
            .iter()
            .any(|v| v.condition == Condition::Implication));
    }
}
