//! Deciding `Γ ⊨ φ` in the matrix `M_n` and over canonical bivaluations.
//!
//! Both deciders walk the same enumeration order: atoms sorted by name, the
//! first atom varying slowest, each atom running through `A_n` in ascending
//! order. The countermodel of a failed entailment is the first failing
//! assignment in that order, whatever the number of worker threads.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use crate::bival::{enumerate_seeds, evaluation_guard, BivalSeed, MatrixValuation};
use crate::error::{Error, Result};
use crate::formula::{substitute, Formula, Sequent};
use crate::matrix::{build_matrix, GenericMatrix, TruthValue};
use crate::sample::Sampler;
use crate::Limits;

/// A valuation designating every premise but not the conclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Countermodel {
    Matrix(MatrixValuation),
    Bival(BivalSeed),
}

impl Countermodel {
    /// Re-evaluates `s`: true iff all premises hold and the conclusion fails.
    pub fn refutes(&self, s: &Sequent) -> Result<bool> {
        let holds = |f: &Formula| match self {
            Countermodel::Matrix(w) => w.designates(f),
            Countermodel::Bival(v) => v.eval(f),
        };
        for p in &s.premises {
            if !holds(p)? {
                return Ok(false);
            }
        }
        Ok(!holds(&s.conclusion)?)
    }

    /// The per-atom tuples, shared by both kinds.
    pub fn assignment(&self) -> &BTreeMap<String, TruthValue> {
        match self {
            Countermodel::Matrix(w) => w.assignment(),
            Countermodel::Bival(v) => v.assignment(),
        }
    }
}

impl fmt::Display for Countermodel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Countermodel::Matrix(w) => write!(f, "{w}"),
            Countermodel::Bival(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntailmentVerdict {
    pub holds: bool,
    /// Present iff `holds` is false.
    pub countermodel: Option<Countermodel>,
    /// Position of the countermodel in the enumeration plus one, or the size
    /// of the whole space when the entailment holds.
    pub examined: u64,
}

/// Smallest index in `0..total` for which `fails` is true.
///
/// With `jobs > 1` the range is split into contiguous chunks; workers stop as
/// soon as a smaller failing index is known, and the minimum wins.
fn first_failure<F>(total: u64, jobs: usize, fails: F) -> Result<Option<u64>>
where
    F: Fn(u64) -> Result<bool> + Sync,
{
    let jobs = (jobs.max(1) as u64).min(total.max(1));
    if jobs == 1 {
        for i in 0..total {
            if fails(i)? {
                return Ok(Some(i));
            }
        }
        return Ok(None);
    }
    let best = AtomicU64::new(u64::MAX);
    let error: Mutex<Option<Error>> = Mutex::new(None);
    let chunk = total.div_ceil(jobs);
    std::thread::scope(|scope| {
        for w in 0..jobs {
            let (best, error, fails) = (&best, &error, &fails);
            scope.spawn(move || {
                let start = w * chunk;
                let end = (start + chunk).min(total);
                for i in start..end {
                    if i >= best.load(Ordering::Relaxed) {
                        return;
                    }
                    match fails(i) {
                        Ok(true) => {
                            best.fetch_min(i, Ordering::Relaxed);
                            return;
                        }
                        Ok(false) => {}
                        Err(e) => {
                            error.lock().expect("poisoned").get_or_insert(e);
                            return;
                        }
                    }
                }
            });
        }
    });
    if let Some(e) = error.into_inner().expect("poisoned") {
        return Err(e);
    }
    let best = best.into_inner();
    Ok((best != u64::MAX).then_some(best))
}

fn verdict(
    total: u64,
    failure: Option<u64>,
    model: impl FnOnce(u64) -> Countermodel,
) -> EntailmentVerdict {
    match failure {
        Some(i) => EntailmentVerdict {
            holds: false,
            countermodel: Some(model(i)),
            examined: i + 1,
        },
        None => EntailmentVerdict {
            holds: true,
            countermodel: None,
            examined: total,
        },
    }
}

/// `Γ ⊨_{M_n} φ` by enumerating every assignment of atoms into `A_n`.
pub fn entails_matrix(n: usize, s: &Sequent, limits: &Limits) -> Result<EntailmentVerdict> {
    let atoms: Vec<String> = s.atoms().into_iter().collect();
    let total = evaluation_guard(n, atoms.len(), limits)?;
    let matrix = build_matrix(n, limits)?;
    let premises = s.distinct_premises();
    let base = matrix.size() as u64;
    let valuation = |index: u64| {
        let mut rest = index;
        let mut assignment = BTreeMap::new();
        for atom in atoms.iter().rev() {
            assignment.insert(atom.clone(), matrix.values()[(rest % base) as usize]);
            rest /= base;
        }
        MatrixValuation::new(n, assignment).expect("values of A_n have level n")
    };
    let failure = first_failure(total, limits.jobs, |i| {
        let w = valuation(i);
        for p in &premises {
            if !w.designates(p)? {
                return Ok(false);
            }
        }
        Ok(!w.designates(&s.conclusion)?)
    })?;
    Ok(verdict(total, failure, |i| {
        Countermodel::Matrix(valuation(i))
    }))
}

/// `Γ ⊨_{S_n} φ` over the canonical bivaluations.
pub fn entails_bival(n: usize, s: &Sequent, limits: &Limits) -> Result<EntailmentVerdict> {
    let atoms: Vec<String> = s.atoms().into_iter().collect();
    let seeds = enumerate_seeds(n, &atoms, limits)?;
    let premises = s.distinct_premises();
    let failure = first_failure(seeds.len(), limits.jobs, |i| {
        let v = seeds.get(i);
        for p in &premises {
            if !v.eval(p)? {
                return Ok(false);
            }
        }
        Ok(!v.eval(&s.conclusion)?)
    })?;
    Ok(verdict(seeds.len(), failure, |i| {
        Countermodel::Bival(seeds.get(i))
    }))
}

/// `Γ ⊨ φ` in an arbitrary table-given matrix.
pub fn entails_generic(m: &GenericMatrix, s: &Sequent, limits: &Limits) -> Result<bool> {
    let atoms: Vec<String> = s.atoms().into_iter().collect();
    let base = m.size() as u128;
    let total = base
        .checked_pow(atoms.len() as u32)
        .filter(|&t| t <= u128::from(limits.max_evals))
        .ok_or_else(|| {
            Error::ResourceLimit(format!(
                "enumeration needs {base}^{} valuations, max evals {}",
                atoms.len(),
                limits.max_evals
            ))
        })? as u64;
    let premises = s.distinct_premises();
    let failure = first_failure(total, limits.jobs, |index| {
        let mut rest = index;
        let mut assignment = BTreeMap::new();
        for atom in atoms.iter().rev() {
            assignment.insert(atom.clone(), (rest % base as u64) as usize);
            rest /= base as u64;
        }
        for p in &premises {
            if !m.is_designated(m.eval(&assignment, p)?) {
                return Ok(false);
            }
        }
        Ok(!m.is_designated(m.eval(&assignment, &s.conclusion)?))
    })?;
    Ok(failure.is_none())
}

/// Both verdicts for one sequent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck {
    pub matrix: EntailmentVerdict,
    pub bival: EntailmentVerdict,
}

impl CrossCheck {
    pub fn agree(&self) -> bool {
        self.matrix.holds == self.bival.holds
    }
}

pub fn cross_check(n: usize, s: &Sequent, limits: &Limits) -> Result<CrossCheck> {
    Ok(CrossCheck {
        matrix: entails_matrix(n, s, limits)?,
        bival: entails_bival(n, s, limits)?,
    })
}

/// `⊨_{M_n} f`.
pub fn is_tautology(n: usize, f: &Formula, limits: &Limits) -> Result<EntailmentVerdict> {
    entails_matrix(n, &Sequent::new(Vec::new(), f.clone()), limits)
}

/// A sequent that holds at the higher level but not at the lower one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HierarchyViolation {
    pub sequent: Sequent,
    pub low: usize,
    pub high: usize,
}

/// Checks that every sample holding at `n_high` also holds at `n_low`.
pub fn hierarchy_check(
    n_low: usize,
    n_high: usize,
    samples: &[Sequent],
    limits: &Limits,
) -> Result<Vec<HierarchyViolation>> {
    if n_low > n_high {
        return Err(Error::Domain(format!(
            "hierarchy check needs n_low <= n_high, got {n_low} > {n_high}"
        )));
    }
    let mut out = Vec::new();
    for s in samples {
        if entails_matrix(n_high, s, limits)?.holds && !entails_matrix(n_low, s, limits)?.holds {
            out.push(HierarchyViolation {
                sequent: s.clone(),
                low: n_low,
                high: n_high,
            });
        }
    }
    Ok(out)
}

/// Outcome counts for one sampled property.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub passed: usize,
    pub failed: usize,
    /// Trials whose hypothesis did not hold.
    pub vacuous: usize,
}

impl Tally {
    fn record(&mut self, hypothesis: bool, conclusion: bool) {
        match (hypothesis, conclusion) {
            (false, _) => self.vacuous += 1,
            (true, true) => self.passed += 1,
            (true, false) => self.failed += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetatheoryReport {
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
    pub extension: Tally,
    pub monotonicity: Tally,
    pub transitivity: Tally,
    pub structurality: Tally,
    pub reflexivity: Tally,
}

impl MetatheoryReport {
    pub fn all_pass(&self) -> bool {
        self.rows().iter().all(|(_, t)| t.failed == 0)
    }

    fn rows(&self) -> [(&'static str, Tally); 5] {
        [
            ("Ext", self.extension),
            ("Mon", self.monotonicity),
            ("Tran", self.transitivity),
            ("Str", self.structurality),
            ("p->p", self.reflexivity),
        ]
    }
}

impl fmt::Display for MetatheoryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "n = {}, trials = {}, seed = {}",
            self.n, self.trials, self.seed
        )?;
        for (name, t) in self.rows() {
            writeln!(
                f,
                "{name:<5} passed {:>4}  failed {:>4}  vacuous {:>4}",
                t.passed, t.failed, t.vacuous
            )?;
        }
        Ok(())
    }
}

/// Randomized checks of the abstract consequence properties at level `n`.
///
/// Sequents range over atoms `p, q` with depth at most 3; substitutions map
/// them to formulas over `p, q, r`.
pub fn metatheory_sample(
    n: usize,
    trials: usize,
    seed: u64,
    limits: &Limits,
) -> Result<MetatheoryReport> {
    use rand::Rng;

    let mut sampler = Sampler::new(seed, &["p", "q"]);
    let mut wide = Sampler::new(seed.wrapping_add(1), &["p", "q", "r"]);
    let holds = |s: &Sequent| -> Result<bool> { Ok(entails_matrix(n, s, limits)?.holds) };
    let mut report = MetatheoryReport {
        n,
        seed,
        trials,
        extension: Tally::default(),
        monotonicity: Tally::default(),
        transitivity: Tally::default(),
        structurality: Tally::default(),
        reflexivity: Tally::default(),
    };
    for _ in 0..trials {
        // Ext: a premise is a consequence.
        let mut premises: Vec<Formula> = (0..sampler.rng().gen_range(1..=3))
            .map(|_| sampler.formula(3))
            .collect();
        let pick = sampler.rng().gen_range(0..premises.len());
        let s = Sequent::new(premises.clone(), premises[pick].clone());
        report.extension.record(true, holds(&s)?);

        // Mon: extra premises preserve consequence.
        let s = sampler.sequent(3, 2);
        let base = holds(&s)?;
        let mut widened = s.clone();
        widened.premises.push(sampler.formula(3));
        report.monotonicity.record(base, !base || holds(&widened)?);

        // Tran: Γ ⊨ ψ and Γ, ψ ⊨ φ give Γ ⊨ φ.
        let lemma = sampler.formula(2);
        let goal = sampler.formula(3);
        premises.truncate(2);
        let first = holds(&Sequent::new(premises.clone(), lemma.clone()))?;
        let mut with_lemma = premises.clone();
        with_lemma.push(lemma);
        let second = first && holds(&Sequent::new(with_lemma, goal.clone()))?;
        report.transitivity.record(
            first && second,
            !second || holds(&Sequent::new(premises, goal))?,
        );

        // Str: substitution instances of a consequence are consequences.
        let s = sampler.sequent(3, 2);
        let base = holds(&s)?;
        let map: BTreeMap<String, Formula> = ["p", "q"]
            .iter()
            .map(|a| (a.to_string(), wide.formula(2)))
            .collect();
        let instance = Sequent::new(
            s.premises.iter().map(|p| substitute(p, &map)).collect(),
            substitute(&s.conclusion, &map),
        );
        report
            .structurality
            .record(base, !base || holds(&instance)?);

        // φ ⊃ φ is a tautology.
        let f = sampler.formula(3);
        let taut = is_tautology(n, &Formula::imp(f.clone(), f), limits)?;
        report.reflexivity.record(true, taut.holds);
    }
    Ok(report)
}

/// Verdicts for explosion `p, ~p |- q` and double negation `p |- ~~p` at one level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParaconsistencyRow {
    pub n: usize,
    pub explosion: EntailmentVerdict,
    pub dne: EntailmentVerdict,
}

impl ParaconsistencyRow {
    /// Both hold at level 0 and both fail above it.
    pub fn as_expected(&self) -> bool {
        let classical = self.n == 0;
        self.explosion.holds == classical && self.dne.holds == classical
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParaconsistencyReport {
    pub rows: Vec<ParaconsistencyRow>,
}

impl ParaconsistencyReport {
    pub fn as_expected(&self) -> bool {
        self.rows.iter().all(ParaconsistencyRow::as_expected)
    }
}

fn holds_word(v: &EntailmentVerdict) -> &'static str {
    if v.holds {
        "holds"
    } else {
        "fails"
    }
}

impl fmt::Display for ParaconsistencyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>3}  {:<9}  dne", "n", "explosion")?;
        for row in &self.rows {
            writeln!(
                f,
                "{:>3}  {:<9}  {}",
                row.n,
                holds_word(&row.explosion),
                holds_word(&row.dne)
            )?;
        }
        Ok(())
    }
}

pub fn explosion_sequent() -> Sequent {
    let p = Formula::atom("p");
    Sequent::new(vec![p.clone(), Formula::neg(p)], Formula::atom("q"))
}

pub fn dne_sequent() -> Sequent {
    let p = Formula::atom("p");
    Sequent::new(vec![p.clone()], Formula::neg_k(2, p))
}

pub fn paraconsistency_report(n_max: usize, limits: &Limits) -> Result<ParaconsistencyReport> {
    let (explosion, dne) = (explosion_sequent(), dne_sequent());
    let rows = (0..=n_max)
        .map(|n| {
            Ok(ParaconsistencyRow {
                n,
                explosion: entails_matrix(n, &explosion, limits)?,
                dne: entails_matrix(n, &dne, limits)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ParaconsistencyReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, parse_sequent};

    fn tv(c: &[u8]) -> TruthValue {
        TruthValue::new(c).unwrap()
    }

    fn seq(text: &str) -> Sequent {
        parse_sequent(text).unwrap()
    }

    #[test]
    fn explosion_fails_at_level_one() {
        let l = Limits::default();
        let v = entails_matrix(1, &seq("p, ~p |- q"), &l).unwrap();
        assert!(!v.holds);
        let cm = v.countermodel.unwrap();
        assert_eq!(cm.assignment()["p"], tv(&[1, 1]));
        assert_eq!(cm.assignment()["q"], tv(&[0, 1]));
        assert_eq!(cm.to_string(), "p = (1,1)\nq = (0,1)");
        assert!(entails_matrix(0, &seq("p, ~p |- q"), &l).unwrap().holds);
    }

    #[test]
    fn dne_countermodel_at_level_two() {
        let l = Limits::default();
        let v = entails_matrix(2, &seq("p |- ~~p"), &l).unwrap();
        assert!(!v.holds);
        assert_eq!(v.countermodel.unwrap().assignment()["p"], tv(&[1, 1, 0]));
        assert_eq!(v.examined, 4);
    }

    #[test]
    fn bival_examples() {
        let l = Limits::default();
        assert!(!entails_bival(1, &seq("p, ~p |- q"), &l).unwrap().holds);
        assert!(entails_bival(0, &seq("|- p -> p"), &l).unwrap().holds);
        let v = entails_bival(3, &seq("p |- ~~p"), &l).unwrap();
        assert!(!v.holds);
        let cm = v.countermodel.unwrap();
        assert!(cm.refutes(&seq("p |- ~~p")).unwrap());
        // (1,0,1,0) and (1,0,1,1) keep ~~p true; (1,1,0,1) is the first to refute it.
        assert_eq!(cm.assignment()["p"], tv(&[1, 1, 0, 1]));
    }

    #[test]
    fn cross_check_examples() {
        let l = Limits::default();
        assert!(cross_check(2, &seq("p, ~p |- q"), &l).unwrap().agree());
        let c = cross_check(3, &seq("~~(p -> q) |- p -> q"), &l).unwrap();
        assert!(c.agree() && c.matrix.holds && c.bival.holds);
        for s in Sampler::new(3, &["p", "q"]).sequents(50, 4, 3) {
            assert!(cross_check(0, &s, &l).unwrap().agree(), "{s}");
        }
    }

    #[test]
    fn tautology_examples() {
        let l = Limits::default();
        assert!(
            is_tautology(5, &parse("p -> p").unwrap(), &l)
                .unwrap()
                .holds
        );
        assert!(
            !is_tautology(1, &parse("p -> ~~p").unwrap(), &l)
                .unwrap()
                .holds
        );
        assert!(
            is_tautology(0, &parse("p -> ~~p").unwrap(), &l)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn duplicate_premises_are_ignored() {
        let l = Limits::default();
        let a = entails_matrix(2, &seq("p, p, ~p |- q"), &l).unwrap();
        let b = entails_matrix(2, &seq("p, ~p |- q"), &l).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn guard_reports_bound() {
        let l = Limits {
            max_evals: 1000,
            ..Limits::default()
        };
        let err = entails_matrix(3, &seq("p, q, r, s |- p"), &l).unwrap_err();
        assert!(err.to_string().contains("fib(6)^4 = 4096"), "{err}");
        assert!(entails_bival(3, &seq("p, q, r, s |- p"), &l).is_err());
    }

    #[test]
    fn parallel_search_is_deterministic() {
        let serial = Limits::default();
        let parallel = Limits {
            jobs: 4,
            ..Limits::default()
        };
        for s in Sampler::new(11, &["p", "q", "r"]).sequents(40, 4, 3) {
            for n in [1, 2, 3] {
                assert_eq!(
                    entails_matrix(n, &s, &serial).unwrap(),
                    entails_matrix(n, &s, &parallel).unwrap()
                );
                assert_eq!(
                    entails_bival(n, &s, &serial).unwrap(),
                    entails_bival(n, &s, &parallel).unwrap()
                );
            }
        }
    }

    #[test]
    fn generic_decider_matches_matrix_decider() {
        let l = Limits::default();
        for n in 0..=2 {
            let m = crate::matrix::materialize(&build_matrix(n, &l).unwrap(), &l).unwrap();
            for s in Sampler::new(9, &["p", "q"]).sequents(60, 4, 2) {
                assert_eq!(
                    entails_generic(&m, &s, &l).unwrap(),
                    entails_matrix(n, &s, &l).unwrap().holds,
                    "n = {n}: {s}"
                );
            }
        }
    }

    #[test]
    fn hierarchy_examples() {
        let l = Limits::default();
        assert!(hierarchy_check(0, 1, &[seq("p, ~p |- q")], &l)
            .unwrap()
            .is_empty());
        assert!(hierarchy_check(1, 2, &[seq("|- p -> p")], &l)
            .unwrap()
            .is_empty());
        let samples = Sampler::new(5, &["p", "q"]).sequents(200, 4, 2);
        assert!(hierarchy_check(0, 3, &samples, &l).unwrap().is_empty());
        assert!(hierarchy_check(2, 1, &samples, &l).is_err());
    }

    #[test]
    fn metatheory_passes() {
        let l = Limits::default();
        for n in [0, 2] {
            let r = metatheory_sample(n, 100, 42, &l).unwrap();
            assert!(r.all_pass(), "{r}");
            assert_eq!(r.extension.passed, 100);
            assert_eq!(r.reflexivity.passed, 100);
            assert!(r.to_string().contains("seed = 42"));
        }
    }

    #[test]
    fn paraconsistency_examples() {
        let l = Limits::default();
        let r = paraconsistency_report(3, &l).unwrap();
        let explosion: Vec<bool> = r.rows.iter().map(|row| row.explosion.holds).collect();
        assert_eq!(explosion, [true, false, false, false]);
        assert!(r.as_expected());

        let r = paraconsistency_report(0, &l).unwrap();
        assert!(r.rows[0].explosion.holds && r.rows[0].dne.holds);

        let r = paraconsistency_report(4, &l).unwrap();
        let dne: Vec<bool> = r.rows.iter().map(|row| row.dne.holds).collect();
        assert_eq!(dne, [true, false, false, false, false]);
    }
}
