//! Tokenizer and recursive-descent parser for the expression language.
//!
//! ```text
//! sum     := ['+' | '-'] tensor (('+' | '-') tensor)*
//! tensor  := product ('(x)' product)*
//! product := power (('*' | '/')? power)*
//! power   := primary ('^' ['+' | '-'] integer)?
//! primary := number | atom | '(' sum ')'
//! ```
//!
//! A `*` written directly after `a`, `g` or `z` (no space) is the star of
//! that generator, so `a*g` reads as `a* g` while `a * g` is a product.

use std::fmt;

/// Byte range in the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    fn join(self, o: Span) -> Span {
        Span { start: self.start.min(o.start), end: self.end.max(o.end) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Atom {
    A,
    AStar,
    G,
    GStar,
    Z,
    ZStar,
    R,
    V,
    Q,
    Qb,
    Zeta,
    I,
}

impl Atom {
    fn from_ident(s: &str, starred: bool) -> Option<Atom> {
        Some(match (s, starred) {
            ("a" | "α", false) => Atom::A,
            ("a" | "α", true) => Atom::AStar,
            ("g" | "γ", false) => Atom::G,
            ("g" | "γ", true) => Atom::GStar,
            ("z", false) => Atom::Z,
            ("z", true) => Atom::ZStar,
            ("r", false) => Atom::R,
            ("v", false) => Atom::V,
            ("q", false) => Atom::Q,
            ("qb", false) => Atom::Qb,
            ("zeta" | "ζ", false) => Atom::Zeta,
            ("i", false) => Atom::I,
            _ => return None,
        })
    }

    fn takes_star(s: &str) -> bool {
        matches!(s, "a" | "g" | "z" | "α" | "γ")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Atom(Atom, Span),
    /// Decimal literal, kept as written.
    Number(String, Span),
    Neg(Box<Expr>, Span),
    Add(Box<Expr>, Box<Expr>, Span),
    Sub(Box<Expr>, Box<Expr>, Span),
    Mul(Box<Expr>, Box<Expr>, Span),
    Div(Box<Expr>, Box<Expr>, Span),
    Pow(Box<Expr>, i64, Span),
    Tensor(Vec<Expr>, Span),
}

impl Expr {
    pub fn span(&self) -> Span {
        match self {
            Expr::Atom(_, s)
            | Expr::Number(_, s)
            | Expr::Neg(_, s)
            | Expr::Add(_, _, s)
            | Expr::Sub(_, _, s)
            | Expr::Mul(_, _, s)
            | Expr::Div(_, _, s)
            | Expr::Pow(_, _, s)
            | Expr::Tensor(_, s) => *s,
        }
    }
}

/// Error in an expression at a 1-based character column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for SyntaxError {}

/// Column of a byte offset, counted in characters.
pub fn column(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].chars().count() + 1
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String, bool),
    Number(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Tensor,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s, true) => write!(f, "'{s}*'"),
            Tok::Ident(s, false) => write!(f, "'{s}'"),
            Tok::Number(s) => write!(f, "'{s}'"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Slash => write!(f, "'/'"),
            Tok::Caret => write!(f, "'^'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::Tensor => write!(f, "'(x)'"),
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphabetic() || matches!(c, 'α' | 'γ' | 'ζ')
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Span)>, SyntaxError> {
    let err = |at: usize, message: String| SyntaxError { column: column(text, at), message };
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(start, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        if is_ident_char(c) {
            let mut end = start;
            while let Some(&(i, d)) = it.peek() {
                if !is_ident_char(d) {
                    break;
                }
                end = i + d.len_utf8();
                it.next();
            }
            let name = &text[start..end];
            let starred = Atom::takes_star(name) && text[end..].starts_with('*');
            if starred {
                it.next();
                end += 1;
            }
            out.push((Tok::Ident(name.to_string(), starred), Span { start, end }));
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            let mut end = start;
            let mut dots = 0;
            while let Some(&(i, d)) = it.peek() {
                if d == '.' {
                    dots += 1;
                } else if !d.is_ascii_digit() {
                    break;
                }
                end = i + 1;
                it.next();
            }
            let lit = &text[start..end];
            if dots > 1 || lit == "." {
                return Err(err(start, format!("malformed number '{lit}'")));
            }
            out.push((Tok::Number(lit.to_string()), Span { start, end }));
            continue;
        }
        if c == '⊗' {
            it.next();
            out.push((Tok::Tensor, Span { start, end: start + c.len_utf8() }));
            continue;
        }
        if text[start..].starts_with("(x)") {
            it.next();
            it.next();
            it.next();
            out.push((Tok::Tensor, Span { start, end: start + 3 }));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(err(start, format!("unexpected character '{c}'"))),
        };
        it.next();
        out.push((tok, Span { start, end: start + c.len_utf8() }));
    }
    Ok(out)
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.text.len(), |(_, s)| s.start)
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        self.pos += 1;
        t
    }

    fn error(&self, at: usize, message: impl Into<String>) -> SyntaxError {
        SyntaxError { column: column(self.text, at), message: message.into() }
    }

    fn unexpected(&self, wanted: &str) -> SyntaxError {
        match self.peek() {
            Some(t) => self.error(self.here(), format!("expected {wanted}, found {t}")),
            None => self.error(self.here(), format!("expected {wanted}, found end of input")),
        }
    }

    fn sum(&mut self) -> Result<Expr, SyntaxError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                let (_, s) = self.bump();
                let t = self.tensor()?;
                let span = s.join(t.span());
                Expr::Neg(Box::new(t), span)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.tensor()?
            }
            _ => self.tensor()?,
        };
        loop {
            let neg = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => return Ok(acc),
            };
            self.bump();
            let rhs = self.tensor()?;
            let span = acc.span().join(rhs.span());
            acc = if neg {
                Expr::Sub(Box::new(acc), Box::new(rhs), span)
            } else {
                Expr::Add(Box::new(acc), Box::new(rhs), span)
            };
        }
    }

    fn tensor(&mut self) -> Result<Expr, SyntaxError> {
        let first = self.product()?;
        if self.peek() != Some(&Tok::Tensor) {
            return Ok(first);
        }
        let mut legs = vec![first];
        while self.peek() == Some(&Tok::Tensor) {
            self.bump();
            legs.push(self.product()?);
        }
        let span = legs[0].span().join(legs[legs.len() - 1].span());
        Ok(Expr::Tensor(legs, span))
    }

    fn starts_primary(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(..) | Tok::Number(_) | Tok::LParen))
    }

    fn product(&mut self) -> Result<Expr, SyntaxError> {
        let mut acc = self.power()?;
        loop {
            let div = match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    false
                }
                Some(Tok::Slash) => {
                    self.bump();
                    true
                }
                _ if self.starts_primary() => false,
                _ => return Ok(acc),
            };
            let rhs = self.power()?;
            let span = acc.span().join(rhs.span());
            acc = if div {
                Expr::Div(Box::new(acc), Box::new(rhs), span)
            } else {
                Expr::Mul(Box::new(acc), Box::new(rhs), span)
            };
        }
    }

    fn power(&mut self) -> Result<Expr, SyntaxError> {
        let base = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let neg = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        let at = self.here();
        match self.peek() {
            Some(Tok::Number(n)) if n.bytes().all(|b| b.is_ascii_digit()) => {
                let e: i64 = n.parse().map_err(|_| self.error(at, format!("exponent '{n}' is too large")))?;
                let (_, s) = self.bump();
                let span = base.span().join(s);
                Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }, span))
            }
            _ => Err(self.unexpected("an integer exponent")),
        }
    }

    fn primary(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek() {
            Some(Tok::Number(_)) => {
                let (t, s) = self.bump();
                let Tok::Number(n) = t else { unreachable!() };
                Ok(Expr::Number(n, s))
            }
            Some(Tok::Ident(..)) => {
                let (t, s) = self.bump();
                let Tok::Ident(name, starred) = t else { unreachable!() };
                Atom::from_ident(&name, starred).map(|a| Expr::Atom(a, s)).ok_or_else(|| {
                    let shown = if starred { format!("{name}*") } else { name };
                    self.error(s.start, format!("unknown symbol '{shown}'"))
                })
            }
            Some(Tok::LParen) => {
                let (_, open) = self.bump();
                let inner = self.sum()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.unexpected("')'"));
                }
                let (_, close) = self.bump();
                Ok(match inner {
                    Expr::Tensor(legs, _) => Expr::Tensor(legs, open.join(close)),
                    other => other,
                })
            }
            _ => Err(self.unexpected("an operand")),
        }
    }
}

/// Parses a whole expression.
pub fn parse(text: &str) -> Result<Expr, SyntaxError> {
    let toks = tokenize(text)?;
    let mut p = Parser { text, toks, pos: 0 };
    if p.peek().is_none() {
        return Err(p.error(0, "empty expression"));
    }
    let e = p.sum()?;
    if p.peek().is_some() {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(e: &Expr) -> String {
        match e {
            Expr::Atom(a, _) => format!("{a:?}"),
            Expr::Number(n, _) => n.clone(),
            Expr::Neg(x, _) => format!("-({})", shape(x)),
            Expr::Add(a, b, _) => format!("({} + {})", shape(a), shape(b)),
            Expr::Sub(a, b, _) => format!("({} - {})", shape(a), shape(b)),
            Expr::Mul(a, b, _) => format!("({} {})", shape(a), shape(b)),
            Expr::Div(a, b, _) => format!("({} / {})", shape(a), shape(b)),
            Expr::Pow(a, e, _) => format!("{}^{e}", shape(a)),
            Expr::Tensor(legs, _) => format!("[{}]", legs.iter().map(shape).collect::<Vec<_>>().join(", ")),
        }
    }

    #[test]
    fn precedence() {
        assert_eq!(shape(&parse("a g^2 + q g*").unwrap()), "((A G^2) + (Q GStar))");
        assert_eq!(shape(&parse("a (x) g - q g* (x) a").unwrap()), "([A, G] - [(Q GStar), A])");
        assert_eq!(shape(&parse("-a^2 (x) 1").unwrap()), "-([A^2, 1])");
        assert_eq!(shape(&parse("1/2 q^-1 a").unwrap()), "(((1 / 2) Q^-1) A)");
    }

    #[test]
    fn star_suffix_binds_to_generator() {
        assert_eq!(shape(&parse("a*g").unwrap()), "(AStar G)");
        assert_eq!(shape(&parse("a * g").unwrap()), "(A G)");
        assert_eq!(shape(&parse("q*g*").unwrap()), "(Q GStar)");
        assert_eq!(shape(&parse("α γ*").unwrap()), "(A GStar)");
    }

    #[test]
    fn parenthesised_tensor_is_a_factor() {
        assert_eq!(shape(&parse("(a (x) a) - q (g* (x) g)").unwrap()), "([A, A] - (Q [GStar, G]))");
        assert_eq!(shape(&parse("a ⊗ g").unwrap()), "[A, G]");
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse("a + ").unwrap_err();
        assert_eq!(e.column, 5);
        let e = parse("a + b").unwrap_err();
        assert_eq!((e.column, e.message.as_str()), (5, "unknown symbol 'b'"));
        let e = parse("(a g").unwrap_err();
        assert_eq!(e.column, 5);
        let e = parse("a ^ g").unwrap_err();
        assert_eq!(e.column, 5);
        let e = parse("a # g").unwrap_err();
        assert_eq!(e.column, 3);
        assert_eq!(parse("  ").unwrap_err().column, 1);
        assert_eq!(parse("γ + x").unwrap_err().column, 5);
    }

    #[test]
    fn whitespace_is_insignificant_between_tokens() {
        assert_eq!(parse("a g^2").unwrap().span(), Span { start: 0, end: 5 });
        assert_eq!(shape(&parse("a   g ^ 2").unwrap()), shape(&parse("a g^2").unwrap()));
    }
}
