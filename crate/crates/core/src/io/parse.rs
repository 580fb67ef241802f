//! Polynomial expressions and the line-oriented derivation spec format.
//!
//! ```text
//! # comment
//! ring <ident>
//! vars <ident>+
//! rel <expr>                 (any number)
//! der <ident> = <expr>       (exactly one per variable)
//! ```
//!
//! Expressions use rational literals (`3`, `1/2`), identifiers, `+ - * ^`
//! and parentheses. `^` binds tightest (its exponent is a non-negative
//! integer literal), then `*`, then `+`/`-`. Unary minus is allowed, implicit
//! multiplication is not.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::arith::{MonomialOrder, Polynomial, Q};
use crate::derivation::{Derivation, DerivationError, RingPresentation};

/// Names that cannot be ring variables: they denote the group parameters in
/// printed orbits.
pub const RESERVED_NAMES: [&str; 2] = ["s", "t"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UndeclaredVariable(String),
    DuplicateDer(String),
    MissingDer(String),
    DuplicateVariable(String),
    ReservedName(String),
    MissingDeclaration(&'static str),
    DuplicateDeclaration(&'static str),
    Invalid(String),
}

/// Error with a 1-based line and column (column 0 when it refers to the
/// whole input).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match &self.kind {
            ParseErrorKind::Syntax(m) => m.clone(),
            ParseErrorKind::UndeclaredVariable(v) => format!("undeclared variable `{v}`"),
            ParseErrorKind::DuplicateDer(v) => format!("duplicate `der` for `{v}`"),
            ParseErrorKind::MissingDer(v) => format!("missing `der` for `{v}`"),
            ParseErrorKind::DuplicateVariable(v) => format!("variable `{v}` declared twice"),
            ParseErrorKind::ReservedName(v) => format!("`{v}` is reserved for the group parameter"),
            ParseErrorKind::MissingDeclaration(d) => format!("missing `{d}` line"),
            ParseErrorKind::DuplicateDeclaration(d) => format!("duplicate `{d}` line"),
            ParseErrorKind::Invalid(m) => m.clone(),
        };
        write!(f, "{}:{}: {}", self.line, self.column, msg)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Q),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    col_offset: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn tokenize(src: &str, line: usize, col_offset: usize) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut lx = Lexer { chars: src.chars().enumerate().collect(), pos: 0, line, col_offset };
    let mut out = Vec::new();
    while lx.pos < lx.chars.len() {
        let (col, c) = lx.chars[lx.pos];
        let column = col + 1 + lx.col_offset;
        let line = lx.line;
        let err = |m: String| ParseError { line, column, kind: ParseErrorKind::Syntax(m) };
        match c {
            ' ' | '\t' | '\r' => {
                lx.pos += 1;
            }
            '+' | '-' | '*' | '^' | '(' | ')' => {
                lx.pos += 1;
                out.push((
                    column,
                    match c {
                        '+' => Tok::Plus,
                        '-' => Tok::Minus,
                        '*' => Tok::Star,
                        '^' => Tok::Caret,
                        '(' => Tok::LParen,
                        _ => Tok::RParen,
                    },
                ));
            }
            d if d.is_ascii_digit() => {
                let num = lx.take_while(|c| c.is_ascii_digit());
                let mut value = Q::from_integer(num.parse::<BigInt>().unwrap());
                if lx.peek() == Some('/') && lx.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
                    lx.pos += 1;
                    let den = lx.take_while(|c| c.is_ascii_digit()).parse::<BigInt>().unwrap();
                    if den == BigInt::from(0) {
                        return Err(err("zero denominator in literal".into()));
                    }
                    value /= Q::from_integer(den);
                }
                if lx.peek().is_some_and(is_ident_start) {
                    return Err(err("implicit multiplication is not allowed; use `*`".into()));
                }
                out.push((column, Tok::Num(value)));
            }
            c if is_ident_start(c) => {
                let name = lx.take_while(is_ident_char);
                out.push((column, Tok::Ident(name)));
            }
            '/' => return Err(err("`/` is only allowed inside rational literals such as `1/2`".into())),
            other => return Err(err(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

impl Lexer {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).map(|c| c.1)
    }

    fn take_while<F: Fn(char) -> bool>(&mut self, f: F) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|&c| f(c)) {
            s.push(c);
            self.pos += 1;
        }
        s
    }
}

struct ExprParser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    line: usize,
    end_column: usize,
    names: &'a [String],
    order: MonomialOrder,
}

impl ExprParser<'_> {
    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_column, |t| t.0)
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.line, column: self.column(), kind }
    }

    fn syntax(&self, msg: &str) -> ParseError {
        self.error(ParseErrorKind::Syntax(msg.to_string()))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek() {
                Some(Tok::Num(q)) if q.is_integer() => {
                    let e: u32 = q.to_integer().try_into().map_err(|_| self.syntax("exponent too large"))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.syntax("expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let n = self.names.len();
        match self.peek().cloned() {
            Some(Tok::Num(q)) => {
                self.pos += 1;
                Ok(Polynomial::constant(n, self.order, q))
            }
            Some(Tok::Ident(name)) => match self.names.iter().position(|v| *v == name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Polynomial::var(n, self.order, i))
                }
                None => Err(self.error(ParseErrorKind::UndeclaredVariable(name))),
            },
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.syntax("expected `)`")),
                }
            }
            Some(_) => Err(self.syntax("expected a number, variable or `(`")),
            None => Err(self.syntax("unexpected end of expression")),
        }
    }
}

fn parse_expr_at(
    src: &str,
    names: &[String],
    order: MonomialOrder,
    line: usize,
    col_offset: usize,
) -> Result<Polynomial, ParseError> {
    let toks = tokenize(src, line, col_offset)?;
    let end_column = col_offset + src.trim_end().chars().count() + 1;
    let mut p = ExprParser { toks, pos: 0, line, end_column, names, order };
    let value = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.syntax("unexpected token"));
    }
    Ok(value)
}

/// Parses one expression over the given variables.
pub fn parse_polynomial(src: &str, names: &[String], order: MonomialOrder) -> Result<Polynomial, ParseError> {
    parse_expr_at(src, names, order, 1, 0)
}

/// Parses a `;`-separated list of expressions. Empty entries are skipped.
pub fn parse_polynomial_list(src: &str, names: &[String], order: MonomialOrder) -> Result<Vec<Polynomial>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in src.split(';') {
        if !part.trim().is_empty() {
            out.push(parse_expr_at(part, names, order, 1, offset)?);
        }
        offset += part.chars().count() + 1;
    }
    Ok(out)
}

/// Parsed contents of a derivation spec file.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivationSpec {
    pub ring_name: String,
    pub vars: Vec<String>,
    pub relations: Vec<Polynomial>,
    /// `images[i]` is the image of `vars[i]`.
    pub images: Vec<Polynomial>,
}

impl DerivationSpec {
    pub fn ring(&self) -> Result<RingPresentation, DerivationError> {
        RingPresentation::new(self.vars.clone(), self.relations.clone())
    }

    pub fn derivation(&self) -> Result<Derivation, DerivationError> {
        Derivation::new(Arc::new(self.ring()?), self.images.clone())
    }
}

fn valid_ident(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(is_ident_start) && cs.all(is_ident_char)
}

/// Parses a derivation spec file.
pub fn parse_spec(text: &str) -> Result<DerivationSpec, ParseError> {
    let order = MonomialOrder::DegRevLex;
    let mut ring_name: Option<String> = None;
    let mut vars: Option<Vec<String>> = None;
    let mut relations = Vec::new();
    let mut images: Vec<Option<Polynomial>> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap();
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = content.len() - trimmed.len();
        let (keyword, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let rest_offset = indent + keyword.len() + 1;
        let at = |column: usize, kind: ParseErrorKind| ParseError { line, column, kind };
        match keyword {
            "ring" => {
                if ring_name.is_some() {
                    return Err(at(indent + 1, ParseErrorKind::DuplicateDeclaration("ring")));
                }
                let name = rest.trim();
                if !valid_ident(name) {
                    return Err(at(rest_offset + 1, ParseErrorKind::Syntax("expected a ring name".into())));
                }
                ring_name = Some(name.to_string());
            }
            "vars" => {
                if vars.is_some() {
                    return Err(at(indent + 1, ParseErrorKind::DuplicateDeclaration("vars")));
                }
                let mut names: Vec<String> = Vec::new();
                let mut col = rest_offset;
                for piece in rest.split(' ') {
                    col += 1;
                    let tok = piece.trim();
                    if !tok.is_empty() {
                        if !valid_ident(tok) {
                            return Err(at(col, ParseErrorKind::Syntax(format!("invalid variable name `{tok}`"))));
                        }
                        if RESERVED_NAMES.contains(&tok) {
                            return Err(at(col, ParseErrorKind::ReservedName(tok.into())));
                        }
                        if names.iter().any(|n| n == tok) {
                            return Err(at(col, ParseErrorKind::DuplicateVariable(tok.into())));
                        }
                        names.push(tok.to_string());
                    }
                    col += piece.len();
                }
                if names.is_empty() {
                    return Err(at(rest_offset + 1, ParseErrorKind::Syntax("expected at least one variable".into())));
                }
                images = vec![None; names.len()];
                vars = Some(names);
            }
            "rel" | "der" => {
                let Some(names) = vars.as_ref() else {
                    return Err(at(indent + 1, ParseErrorKind::MissingDeclaration("vars")));
                };
                if keyword == "rel" {
                    relations.push(parse_expr_at(rest, names, order, line, rest_offset)?);
                    continue;
                }
                let Some((lhs, rhs)) = rest.split_once('=') else {
                    return Err(at(
                        rest_offset + rest.trim_end().len() + 1,
                        ParseErrorKind::Syntax("expected `=`".into()),
                    ));
                };
                let var = lhs.trim();
                let var_col = rest_offset + (lhs.len() - lhs.trim_start().len()) + 1;
                let Some(i) = names.iter().position(|n| n == var) else {
                    return Err(at(var_col, ParseErrorKind::UndeclaredVariable(var.into())));
                };
                if images[i].is_some() {
                    return Err(at(var_col, ParseErrorKind::DuplicateDer(var.into())));
                }
                let rhs_offset = rest_offset + lhs.len() + 1;
                if rhs.trim().is_empty() {
                    return Err(at(
                        rhs_offset + rhs.len() + 1,
                        ParseErrorKind::Syntax("expected an expression after `=`".into()),
                    ));
                }
                images[i] = Some(parse_expr_at(rhs, names, order, line, rhs_offset)?);
            }
            other => {
                return Err(at(indent + 1, ParseErrorKind::Syntax(format!("unknown keyword `{other}`"))));
            }
        }
    }

    let end = |kind| ParseError { line: last_line, column: 0, kind };
    let ring_name = ring_name.ok_or_else(|| end(ParseErrorKind::MissingDeclaration("ring")))?;
    let vars = vars.ok_or_else(|| end(ParseErrorKind::MissingDeclaration("vars")))?;
    let images = images
        .into_iter()
        .zip(&vars)
        .map(|(img, v)| img.ok_or_else(|| end(ParseErrorKind::MissingDer(v.clone()))))
        .collect::<Result<Vec<_>, _>>()?;
    let spec = DerivationSpec { ring_name, vars, relations, images };
    spec.ring().map_err(|e| end(ParseErrorKind::Invalid(e.to_string())))?;
    Ok(spec)
}
