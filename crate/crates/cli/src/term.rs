//! The term language: generators combined by `;` (diagrammatic composition)
//! and `+` (tensor, binding tighter).
//!
//! ```text
//! term := sum (";" sum)*
//! sum  := atom ("+" atom)*
//! atom := "id(" nat ")" | "m" | "u" | "op(" term ")" | "g(" labels ")"
//!       | "s(" nat ")" | "f(" nat ")" | "tw(" nat ")" | "(" term ")"
//! ```
//!
//! `s(i)` crosses strands `i` and `i+1` of `i+1` strands; `f(i)` flags and
//! `tw(i)` twists the last of `i` strands.

use std::fmt;
use std::sync::Arc;

use eqprop_core::composites::CompositeMorphism;
use eqprop_core::crossed::{Element, Family};
use eqprop_core::groups::{FiniteGroup, GroupTuple};
use eqprop_core::ordmaps::OrderedMap;
use eqprop_core::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Id(usize),
    Mult,
    Unit,
    Op(Box<Term>),
    Labels(Vec<String>),
    Cross(usize),
    Flag(usize),
    Twist(usize),
    Seq(Box<Term>, Box<Term>),
    Tensor(Box<Term>, Box<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermError {
    Syntax { line: usize, column: usize, message: String },
    Arity { subterm: String, message: String },
}

impl fmt::Display for TermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermError::Syntax { line, column, message } => {
                write!(f, "syntax error at line {line}, column {column}: {message}")
            }
            TermError::Arity { subterm, message } => write!(f, "arity error in `{subterm}`: {message}"),
        }
    }
}

impl std::error::Error for TermError {}

impl Term {
    /// `(domain, codomain)`, or the innermost ill-typed subterm.
    pub fn arity(&self) -> Result<(usize, usize), TermError> {
        Ok(match self {
            Term::Id(n) => (*n, *n),
            Term::Mult => (2, 1),
            Term::Unit => (0, 1),
            Term::Op(t) => {
                let (a, b) = t.arity()?;
                (b, a)
            }
            Term::Labels(ls) => (ls.len(), ls.len()),
            Term::Cross(i) => (i + 1, i + 1),
            Term::Flag(i) | Term::Twist(i) => (*i, *i),
            Term::Seq(a, b) => {
                let (n, m) = a.arity()?;
                let (m2, k) = b.arity()?;
                if m != m2 {
                    return Err(TermError::Arity {
                        subterm: self.to_string(),
                        message: format!("`{a}` has codomain {m} but `{b}` has domain {m2}"),
                    });
                }
                (n, k)
            }
            Term::Tensor(a, b) => {
                let (n, m) = a.arity()?;
                let (n2, m2) = b.arity()?;
                (n + n2, m + m2)
            }
        })
    }

    fn fmt_at(&self, prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Id(n) => write!(f, "id({n})"),
            Term::Mult => write!(f, "m"),
            Term::Unit => write!(f, "u"),
            Term::Op(t) => write!(f, "op({t})"),
            Term::Labels(ls) => write!(f, "g({})", ls.join(",")),
            Term::Cross(i) => write!(f, "s({i})"),
            Term::Flag(i) => write!(f, "f({i})"),
            Term::Twist(i) => write!(f, "tw({i})"),
            Term::Seq(a, b) => {
                if prec > 0 {
                    write!(f, "(")?;
                }
                a.fmt_at(0, f)?;
                write!(f, ";")?;
                b.fmt_at(1, f)?;
                if prec > 0 {
                    write!(f, ")")?;
                }
                Ok(())
            }
            Term::Tensor(a, b) => {
                if prec > 1 {
                    write!(f, "(")?;
                }
                a.fmt_at(1, f)?;
                write!(f, "+")?;
                b.fmt_at(2, f)?;
                if prec > 1 {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }

    /// The canonical triple this term denotes.
    pub fn evaluate(&self, family: Family, group: &Arc<FiniteGroup>) -> Result<CompositeMorphism, Error> {
        let elt = |e: Element| CompositeMorphism::from_elt(e);
        let require = |wanted: Family| {
            if family == wanted {
                Ok(())
            } else {
                Err(Error::FamilyMismatch {
                    expected: wanted.name(),
                    found: family.name(),
                })
            }
        };
        Ok(match self {
            Term::Id(n) => CompositeMorphism::identity(family, group, *n),
            Term::Mult => CompositeMorphism::from_mono(family, group, OrderedMap::mult()),
            Term::Unit => CompositeMorphism::from_mono(family, group, OrderedMap::unit()),
            Term::Op(t) => t.evaluate(family, group)?.op(),
            Term::Labels(names) => {
                let ids = names
                    .iter()
                    .map(|n| {
                        group
                            .element(n)
                            .ok_or_else(|| Error::InvalidGroup(format!("unknown group element {n:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                elt(Element::from_labels(family, GroupTuple::new(group, ids)?))
            }
            Term::Cross(i) => elt(Element::crossing(family, group, i + 1, i - 1)?),
            Term::Flag(i) => {
                require(Family::Hyperoctahedral)?;
                elt(Element::flag(group, *i, i - 1)?)
            }
            Term::Twist(i) => {
                require(Family::Ribbon)?;
                elt(Element::twist(group, *i, i - 1)?)
            }
            Term::Seq(a, b) => b.evaluate(family, group)?.compose(&a.evaluate(family, group)?)?,
            Term::Tensor(a, b) => a.evaluate(family, group)?.tensor(&b.evaluate(family, group)?)?,
        })
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(0, f)
    }
}

/// Parses and arity-checks a term.
pub fn parse(text: &str) -> Result<Term, TermError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let t = p.term()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected {:?}", p.chars[p.pos])));
    }
    t.arity()?;
    Ok(t)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> TermError {
        let before = &self.chars[..self.pos.min(self.chars.len())];
        let line = before.iter().filter(|&&c| c == '\n').count() + 1;
        let column = before.iter().rev().take_while(|&&c| c != '\n').count() + 1;
        TermError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), TermError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(match self.chars.get(self.pos) {
                Some(found) => format!("expected {c:?}, found {found:?}"),
                None => format!("expected {c:?}, found end of input"),
            }))
        }
    }

    fn term(&mut self) -> Result<Term, TermError> {
        let mut t = self.sum()?;
        while self.eat(';') {
            t = Term::Seq(Box::new(t), Box::new(self.sum()?));
        }
        Ok(t)
    }

    fn sum(&mut self) -> Result<Term, TermError> {
        let mut t = self.atom()?;
        while self.eat('+') {
            t = Term::Tensor(Box::new(t), Box::new(self.atom()?));
        }
        Ok(t)
    }

    fn nat(&mut self) -> Result<usize, TermError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        if digits.is_empty() {
            return Err(self.error("expected a natural number"));
        }
        digits.parse().map_err(|_| {
            self.pos = start;
            self.error("number too large")
        })
    }

    fn positive(&mut self) -> Result<usize, TermError> {
        let start = self.pos;
        let n = self.nat()?;
        if n == 0 {
            self.pos = start;
            self.skip_ws();
            return Err(self.error("strand indices start at 1"));
        }
        Ok(n)
    }

    fn labels(&mut self) -> Result<Vec<String>, TermError> {
        self.skip_ws();
        let mut labels = Vec::new();
        let mut current = String::new();
        let mut depth = 0usize;
        loop {
            let Some(&c) = self.chars.get(self.pos) else {
                return Err(self.error("unclosed label list"));
            };
            match c {
                ')' if depth == 0 => break,
                ',' if depth == 0 => {
                    labels.push(std::mem::take(&mut current));
                    self.pos += 1;
                    continue;
                }
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            current.push(c);
            self.pos += 1;
        }
        labels.push(current);
        let labels: Vec<String> = labels.into_iter().map(|l| l.trim().to_string()).collect();
        if labels.len() == 1 && labels[0].is_empty() {
            return Ok(Vec::new());
        }
        if labels.iter().any(String::is_empty) {
            return Err(self.error("empty group label"));
        }
        Ok(labels)
    }

    fn atom(&mut self) -> Result<Term, TermError> {
        self.skip_ws();
        if self.eat('(') {
            let t = self.term()?;
            self.expect(')')?;
            return Ok(t);
        }
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_lowercase) {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        let t = match name.as_str() {
            "m" => Term::Mult,
            "u" => Term::Unit,
            "id" => {
                self.expect('(')?;
                Term::Id(self.nat()?)
            }
            "s" => {
                self.expect('(')?;
                Term::Cross(self.positive()?)
            }
            "f" => {
                self.expect('(')?;
                Term::Flag(self.positive()?)
            }
            "tw" => {
                self.expect('(')?;
                Term::Twist(self.positive()?)
            }
            "g" => {
                self.expect('(')?;
                Term::Labels(self.labels()?)
            }
            "op" => {
                self.expect('(')?;
                let inner = self.term()?;
                if matches!(inner, Term::Op(_)) {
                    self.pos = start;
                    return Err(self.error("op cannot wrap another op"));
                }
                self.expect(')')?;
                return Ok(Term::Op(Box::new(inner)));
            }
            "" => {
                return Err(self.error(match self.chars.get(self.pos) {
                    Some(c) => format!("expected a term, found {c:?}"),
                    None => "expected a term, found end of input".to_string(),
                }))
            }
            other => {
                self.pos = start;
                return Err(self.error(format!("unknown generator {other:?}")));
            }
        };
        if !matches!(t, Term::Mult | Term::Unit) {
            self.expect(')')?;
        }
        Ok(t)
    }
}
