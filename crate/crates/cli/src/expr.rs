//! Parser for algebra elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | primary ('^' INT)?
//! primary:= 'a0_'INT | 'a1_'INT | 's_'INT | 'w[' ('s_'INT)+ ']'
//!         | INT ('/' INT)? | 'nu' ('_'INT)? | '(' expr ')'
//! ```
//!
//! Generator, reflection and coupling indices are 1-based.

use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use calogero_core::algebra::{Algebra, AlgebraElement, AlgebraError};
use calogero_core::scalar::{format_rational, parse_rational, NuPoly, Rational};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at {}..{}: {message}", span.start, span.end)]
    Syntax { span: Range<usize>, message: String },
    #[error("unknown generator `{name}` at {}..{}", span.start, span.end)]
    UnknownGenerator { span: Range<usize>, name: String },
    #[error("`nu` is ambiguous with {classes} coupling constants; use nu_1..nu_{classes}")]
    AmbiguousNu { span: Range<usize>, classes: usize },
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    /// Terms with their signs (`true` for subtraction).
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Generator { alpha: usize, index: usize },
    Reflection(usize),
    Word(Vec<usize>),
    Number(Rational),
    Nu(Option<usize>),
}

/// A node with the byte range it was parsed from. Equality ignores spans.
#[derive(Debug, Clone, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Range<usize>,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Expr {
    fn new(kind: ExprKind, span: Range<usize>) -> Expr {
        Expr { kind, span }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.text[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn error<T>(&self, start: usize, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax { span: start..self.pos.max(start + 1).min(self.text.len().max(start)), message: message.into() })
    }

    fn integer(&mut self) -> Result<(u64, Range<usize>), ExprError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.text[start..].bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return self.error(start, "expected an integer");
        }
        self.pos += len;
        match self.text[start..self.pos].parse() {
            Ok(v) => Ok((v, start..self.pos)),
            Err(_) => self.error(start, "integer out of range"),
        }
    }

    fn index(&mut self) -> Result<usize, ExprError> {
        let (v, span) = self.integer()?;
        if v == 0 {
            return Err(ExprError::Syntax { span, message: "indices start at 1".into() });
        }
        Ok(v as usize)
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        let first = self.term()?;
        let mut terms = vec![(false, first)];
        loop {
            let negative = if self.eat("+") {
                false
            } else if self.eat("-") {
                true
            } else {
                break;
            };
            terms.push((negative, self.term()?));
        }
        if terms.len() == 1 && !terms[0].0 {
            return Ok(terms.pop().expect("one term").1);
        }
        Ok(Expr::new(ExprKind::Sum(terms), start..self.pos))
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        self.skip_ws();
        let start = self.pos;
        let mut factors = vec![self.factor()?];
        while self.eat("*") {
            factors.push(self.factor()?);
        }
        if factors.len() == 1 {
            return Ok(factors.pop().expect("one factor"));
        }
        Ok(Expr::new(ExprKind::Product(factors), start..self.pos))
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("-") {
            let inner = self.factor()?;
            return Ok(Expr::new(ExprKind::Neg(Box::new(inner)), start..self.pos));
        }
        let base = self.primary()?;
        if self.eat("^") {
            let (e, span) = self.integer()?;
            let e = u32::try_from(e).map_err(|_| ExprError::Syntax { span, message: "exponent too large".into() })?;
            return Ok(Expr::new(ExprKind::Pow(Box::new(base), e), start..self.pos));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("(") {
            let inner = self.expr()?;
            if !self.eat(")") {
                return self.error(start, "unbalanced parenthesis");
            }
            return Ok(Expr { kind: inner.kind, span: start..self.pos });
        }
        for (prefix, alpha) in [("a0_", 0), ("a1_", 1)] {
            if self.eat(prefix) {
                let index = self.index()?;
                return Ok(Expr::new(ExprKind::Generator { alpha, index }, start..self.pos));
            }
        }
        if self.eat("s_") {
            let k = self.index()?;
            return Ok(Expr::new(ExprKind::Reflection(k), start..self.pos));
        }
        if self.eat("w[") {
            let mut word = Vec::new();
            while self.eat("s_") {
                word.push(self.index()?);
            }
            if word.is_empty() || !self.eat("]") {
                return self.error(start, "expected `w[s_i s_j ...]`");
            }
            return Ok(Expr::new(ExprKind::Word(word), start..self.pos));
        }
        if self.eat("nu") {
            let k = if self.eat("_") { Some(self.index()?) } else { None };
            return Ok(Expr::new(ExprKind::Nu(k), start..self.pos));
        }
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let (_, num) = self.integer()?;
            let mut end = num.end;
            if self.text[self.pos..].starts_with('/') {
                self.pos += 1;
                end = self.integer()?.1.end;
            }
            let q = parse_rational(&self.text[num.start..end]).map_err(|e| ExprError::Syntax { span: num.start..end, message: e.to_string() })?;
            return Ok(Expr::new(ExprKind::Number(q), start..self.pos));
        }
        match self.peek() {
            None => self.error(start, "unexpected end of input"),
            Some(c) if c.is_ascii_alphabetic() => {
                let len = self.text[start..].bytes().take_while(|b| b.is_ascii_alphanumeric() || *b == b'_').count();
                Err(ExprError::UnknownGenerator { span: start..start + len, name: self.text[start..start + len].to_string() })
            }
            Some(c) => {
                self.pos += c.len_utf8();
                self.error(start, format!("unexpected `{c}`"))
            }
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, ExprError> {
    let mut p = Parser { text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        let start = p.pos;
        p.pos = text.len();
        return p.error(start, "trailing input");
    }
    Ok(e)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Sum(terms) => {
                write!(f, "(")?;
                for (i, (neg, t)) in terms.iter().enumerate() {
                    match (i, neg) {
                        (0, false) => write!(f, "{t}")?,
                        (0, true) => write!(f, "-{t}")?,
                        (_, false) => write!(f, " + {t}")?,
                        (_, true) => write!(f, " - {t}")?,
                    }
                }
                write!(f, ")")
            }
            ExprKind::Product(fs) => {
                let parts: Vec<String> = fs
                    .iter()
                    .map(|x| match x.kind {
                        ExprKind::Product(_) => format!("({x})"),
                        _ => x.to_string(),
                    })
                    .collect();
                write!(f, "{}", parts.join("*"))
            }
            ExprKind::Neg(x) => match x.kind {
                ExprKind::Product(_) => write!(f, "-({x})"),
                _ => write!(f, "-{x}"),
            },
            ExprKind::Pow(x, e) => match x.kind {
                ExprKind::Product(_) | ExprKind::Neg(_) | ExprKind::Pow(..) => write!(f, "({x})^{e}"),
                _ => write!(f, "{x}^{e}"),
            },
            ExprKind::Generator { alpha, index } => write!(f, "a{alpha}_{index}"),
            ExprKind::Reflection(k) => write!(f, "s_{k}"),
            ExprKind::Word(w) => {
                let parts: Vec<String> = w.iter().map(|k| format!("s_{k}")).collect();
                write!(f, "w[{}]", parts.join(" "))
            }
            ExprKind::Number(q) => write!(f, "{}", format_rational(q)),
            ExprKind::Nu(None) => write!(f, "nu"),
            ExprKind::Nu(Some(k)) => write!(f, "nu_{k}"),
        }
    }
}

/// Builds the algebra element an expression denotes.
pub fn to_element(e: &Expr, alg: &Arc<Algebra>) -> Result<AlgebraElement, ExprError> {
    let unknown = |name: String| ExprError::UnknownGenerator { span: e.span.clone(), name };
    Ok(match &e.kind {
        ExprKind::Sum(terms) => {
            let mut acc = alg.zero();
            for (neg, t) in terms {
                let x = to_element(t, alg)?;
                acc = if *neg { acc.sub(&x)? } else { acc.add(&x)? };
            }
            acc
        }
        ExprKind::Product(fs) => {
            let mut acc = alg.one();
            for x in fs {
                acc = alg.multiply(&acc, &to_element(x, alg)?)?;
            }
            acc
        }
        ExprKind::Neg(x) => to_element(x, alg)?.neg(),
        ExprKind::Pow(x, k) => {
            let base = to_element(x, alg)?;
            let mut acc = alg.one();
            for _ in 0..*k {
                acc = alg.multiply(&acc, &base)?;
            }
            acc
        }
        ExprKind::Generator { alpha, index } => {
            if *index > alg.rank() {
                return Err(unknown(format!("a{alpha}_{index}")));
            }
            alg.generator(*alpha, index - 1)?
        }
        ExprKind::Reflection(k) => reflection(alg, *k).ok_or_else(|| unknown(format!("s_{k}")))?,
        ExprKind::Word(w) => {
            let mut acc = alg.one();
            for &k in w {
                let s = reflection(alg, k).ok_or_else(|| unknown(format!("s_{k}")))?;
                acc = alg.multiply(&acc, &s)?;
            }
            acc
        }
        ExprKind::Number(q) => alg.scalar(NuPoly::from_rational(q.clone(), alg.nvars())),
        ExprKind::Nu(k) => {
            let nvars = alg.nvars();
            let index = match k {
                None if nvars == 1 => 0,
                None => return Err(ExprError::AmbiguousNu { span: e.span.clone(), classes: nvars }),
                Some(k) if *k <= nvars => k - 1,
                Some(k) => return Err(unknown(format!("nu_{k}"))),
            };
            alg.scalar(NuPoly::var(index, nvars))
        }
    })
}

fn reflection(alg: &Arc<Algebra>, k: usize) -> Option<AlgebraElement> {
    if k == 0 || k > alg.group().generators().len() {
        return None;
    }
    alg.simple_reflection(k - 1).ok()
}
