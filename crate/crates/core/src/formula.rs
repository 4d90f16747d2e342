//! Formulas of the language over `{¬, ⊃}`: representation, parsing and printing.
//!
//! Input grammar (whitespace is insignificant):
//!
//! ```text
//! sequent  := [formula ("," formula)*] "|-" formula
//! formula  := unary ["->" formula]          -- right associative
//! unary    := ("~" | "¬") unary | primary
//! primary  := atom | "(" formula ")"
//! atom     := [a-z][a-z0-9_]*
//! ```
//!
//! `⊃` is accepted as a synonym of `->`. Output always uses `~` and `->`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// A formula: an atom, a negation or an implication.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Neg(Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
}

impl Formula {
    /// Panics if `name` does not match `[a-z][a-z0-9_]*`.
    pub fn atom(name: &str) -> Formula {
        assert!(is_atom_name(name), "invalid atom name `{name}`");
        Formula::Atom(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(body: Formula) -> Formula {
        Formula::Neg(Box::new(body))
    }

    pub fn imp(left: Formula, right: Formula) -> Formula {
        Formula::Imp(Box::new(left), Box::new(right))
    }

    /// `¬^k body`.
    pub fn neg_k(k: usize, body: Formula) -> Formula {
        (0..k).fold(body, |f, _| Formula::neg(f))
    }

    /// Number of constructors in the tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Neg(b) => 1 + b.size(),
            Formula::Imp(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Nesting height; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Neg(b) => 1 + b.depth(),
            Formula::Imp(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// All subformulas, including `self`, without duplicates.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        if !out.insert(self.clone()) {
            return;
        }
        match self {
            Formula::Atom(_) => {}
            Formula::Neg(b) => b.collect_subformulas(out),
            Formula::Imp(l, r) => {
                l.collect_subformulas(out);
                r.collect_subformulas(out);
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(name) => f.write_str(name),
            Formula::Neg(body) => match **body {
                Formula::Imp(..) => write!(f, "~({body})"),
                _ => write!(f, "~{body}"),
            },
            Formula::Imp(left, right) => match **left {
                Formula::Imp(..) => write!(f, "({left}) -> {right}"),
                _ => write!(f, "{left} -> {right}"),
            },
        }
    }
}

/// A formula split as `¬^k core` with `core` not a negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegTower<'a> {
    pub k: usize,
    pub core: &'a Formula,
}

impl NegTower<'_> {
    pub fn recompose(&self) -> Formula {
        Formula::neg_k(self.k, self.core.clone())
    }
}

/// Strip the maximal run of leading negations.
pub fn neg_decompose(f: &Formula) -> NegTower<'_> {
    let mut k = 0;
    let mut core = f;
    while let Formula::Neg(body) = core {
        k += 1;
        core = body;
    }
    NegTower { k, core }
}

/// Membership in `K_n^*`: `f = ¬^k α` with `α` atomic and `k < n`.
pub fn in_k_star(f: &Formula, n: usize) -> bool {
    let tower = neg_decompose(f);
    matches!(tower.core, Formula::Atom(_)) && tower.k < n
}

/// Distinct atoms of `f`, sorted.
pub fn atoms_of(f: &Formula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    collect_atoms(f, &mut out);
    out
}

fn collect_atoms(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::Atom(name) => {
            out.insert(name.clone());
        }
        Formula::Neg(b) => collect_atoms(b, out),
        Formula::Imp(l, r) => {
            collect_atoms(l, out);
            collect_atoms(r, out);
        }
    }
}

/// Simultaneous substitution; atoms missing from `map` are left in place.
pub fn substitute(f: &Formula, map: &BTreeMap<String, Formula>) -> Formula {
    match f {
        Formula::Atom(name) => map.get(name).cloned().unwrap_or_else(|| f.clone()),
        Formula::Neg(b) => Formula::neg(substitute(b, map)),
        Formula::Imp(l, r) => Formula::imp(substitute(l, map), substitute(r, map)),
    }
}

/// `render(f)` is the minimally parenthesized form; `parse(render(f)) == f`.
pub fn render(f: &Formula) -> String {
    f.to_string()
}

/// A finite premise list and a conclusion.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub premises: Vec<Formula>,
    pub conclusion: Formula,
}

impl Sequent {
    pub fn new(premises: Vec<Formula>, conclusion: Formula) -> Self {
        Sequent {
            premises,
            conclusion,
        }
    }

    /// Atoms of every premise and of the conclusion, sorted.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = atoms_of(&self.conclusion);
        for p in &self.premises {
            collect_atoms(p, &mut out);
        }
        out
    }

    /// Premises with duplicates removed, first occurrence kept.
    pub fn distinct_premises(&self) -> Vec<&Formula> {
        let mut seen = BTreeSet::new();
        self.premises.iter().filter(|p| seen.insert(*p)).collect()
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.premises.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        if self.premises.is_empty() {
            write!(f, "|- {}", self.conclusion)
        } else {
            write!(f, " |- {}", self.conclusion)
        }
    }
}

pub(crate) fn is_atom_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some('a'..='z'))
        && chars.all(|c| matches!(c, 'a'..='z' | '0'..='9' | '_'))
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Atom(String),
    Not,
    Imp,
    LParen,
    RParen,
    Comma,
    Turnstile,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Atom(name) => format!("atom `{name}`"),
            Token::Not => "`~`".into(),
            Token::Imp => "`->`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::Comma => "`,`".into(),
            Token::Turnstile => "`|-`".into(),
            Token::End => "end of input".into(),
        }
    }
}

fn syntax(offset: usize, expected: &str, found: String) -> Error {
    Error::Syntax {
        offset,
        expected: expected.to_string(),
        found,
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let mut out = Vec::new();
    let mut iter = text.char_indices().peekable();
    while let Some(&(at, c)) = iter.peek() {
        if c.is_whitespace() {
            iter.next();
            continue;
        }
        let token = match c {
            '~' | '¬' => Token::Not,
            '⊃' => Token::Imp,
            '(' => Token::LParen,
            ')' => Token::RParen,
            ',' => Token::Comma,
            '-' | '|' => {
                iter.next();
                match iter.peek() {
                    Some(&(_, '>')) if c == '-' => Token::Imp,
                    Some(&(_, '-')) if c == '|' => Token::Turnstile,
                    _ => {
                        let want = if c == '-' { "`->`" } else { "`|-`" };
                        return Err(syntax(at, want, format!("`{c}`")));
                    }
                }
            }
            'a'..='z' => {
                let mut end = at;
                while let Some(&(i, ch)) = iter.peek() {
                    if matches!(ch, 'a'..='z' | '0'..='9' | '_') {
                        end = i + ch.len_utf8();
                        iter.next();
                    } else {
                        break;
                    }
                }
                out.push((at, Token::Atom(text[at..end].to_string())));
                continue;
            }
            other => {
                return Err(syntax(
                    at,
                    "atom, `~`, `->`, `(` or `)`",
                    format!("`{other}`"),
                ))
            }
        };
        iter.next();
        out.push((at, token));
    }
    out.push((text.len(), Token::End));
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].1.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> Error {
        syntax(self.offset(), expected, self.peek().describe())
    }

    fn formula(&mut self) -> Result<Formula> {
        let left = self.unary()?;
        if *self.peek() == Token::Imp {
            self.bump();
            let right = self.formula()?;
            return Ok(Formula::imp(left, right));
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula> {
        let mut k = 0;
        while *self.peek() == Token::Not {
            self.bump();
            k += 1;
        }
        let core = self.primary()?;
        Ok(Formula::neg_k(k, core))
    }

    fn primary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Token::Atom(name) => {
                self.bump();
                Ok(Formula::Atom(name))
            }
            Token::LParen => {
                self.bump();
                let inner = self.formula()?;
                if *self.peek() != Token::RParen {
                    return Err(self.error("`)` or `->`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error("atom, `~` or `(`")),
        }
    }

    fn expect_end(&self, expected: &str) -> Result<()> {
        if *self.peek() == Token::End {
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }
}

/// Parse a single formula.
pub fn parse(text: &str) -> Result<Formula> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
    };
    let f = parser.formula()?;
    parser.expect_end("`->` or end of input")?;
    Ok(f)
}

/// Parse `premise, ..., premise |- conclusion`. The premise list may be empty.
pub fn parse_sequent(text: &str) -> Result<Sequent> {
    let tokens = tokenize(text)?;
    let turnstiles = tokens
        .iter()
        .filter(|(_, t)| *t == Token::Turnstile)
        .count();
    if turnstiles > 1 {
        return Err(Error::MultipleTurnstiles(turnstiles));
    }
    let mut parser = Parser { tokens, pos: 0 };
    let mut premises = Vec::new();
    if *parser.peek() != Token::Turnstile {
        loop {
            premises.push(parser.formula()?);
            match parser.peek() {
                Token::Comma => {
                    parser.bump();
                }
                Token::Turnstile => break,
                _ => return Err(parser.error("`,`, `->` or `|-`")),
            }
        }
    }
    parser.bump();
    let conclusion = parser.formula()?;
    parser.expect_end("`->` or end of input")?;
    Ok(Sequent::new(premises, conclusion))
}
