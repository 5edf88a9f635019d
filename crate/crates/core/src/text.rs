//! Textual syntax for ordinals and space expressions.
//!
//! Ordinal grammar (whitespace ignored, precedence `^` > `*` > `+`,
//! `^` right-associative):
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' factor)?
//! base   := NAT | 'w' | 'W' NAT | '(' expr ')'
//! ```
//!
//! `w` is omega and `W1`, `W2`, ... are the atoms. The Unicode spellings
//! `ω` and `Ω` (with plain or subscript digits) are accepted on input but
//! never emitted.
//!
//! Space-expression grammar, with `(+)` left-associative and lowest
//! precedence:
//!
//! ```text
//! S := 'C(' expr ')' | 'C0(' expr ')' | 'c0(' expr ',' S ')' | S '(+)' S
//! ```

use crate::error::{Error, Result};
use crate::ordinal::Ordinal;
use crate::space::SpaceExpr;

struct Lexer<'a> {
    src: &'a [u8],
    text: &'a str,
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Nat(u64),
    Omega,
    Atom(u32),
    Plus,
    Star,
    Caret,
    LParen,
    RParen,
    Eof,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Lexer<'a> {
        Lexer { src: text.as_bytes(), text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn nat(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.text[start..self.pos]
            .parse::<u64>()
            .map_err(|_| Error::overflow(format!("literal `{}` exceeds u64", &self.text[start..self.pos])))
    }

    fn subscript_nat(&mut self) -> Option<u64> {
        // subscript digits U+2080..U+2089
        let mut out: Option<u64> = None;
        while let Some(c) = self.text[self.pos..].chars().next() {
            let d = match c {
                '\u{2080}'..='\u{2089}' => c as u32 - 0x2080,
                _ => break,
            };
            out = Some(out.unwrap_or(0) * 10 + d as u64);
            self.pos += c.len_utf8();
        }
        out
    }

    fn next(&mut self) -> Result<(usize, Tok)> {
        self.skip_ws();
        let at = self.pos;
        if self.pos >= self.src.len() {
            return Ok((at, Tok::Eof));
        }
        let c = self.text[self.pos..].chars().next().unwrap();
        let tok = match c {
            '0'..='9' => Tok::Nat(self.nat()?),
            'w' | '\u{3c9}' => {
                self.pos += c.len_utf8();
                Tok::Omega
            }
            'W' | '\u{3a9}' => {
                self.pos += c.len_utf8();
                self.skip_ws();
                let k = if self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.nat()?
                } else if let Some(k) = self.subscript_nat() {
                    k
                } else {
                    return Err(Error::syntax(self.pos, "expected atom index after 'W'"));
                };
                let k: u32 = k
                    .try_into()
                    .map_err(|_| Error::overflow(format!("atom index {k} exceeds u32")))?;
                if k == 0 {
                    return Err(Error::syntax(at, "atom index must be >= 1"));
                }
                Tok::Atom(k)
            }
            '+' => {
                self.pos += 1;
                Tok::Plus
            }
            '*' => {
                self.pos += 1;
                Tok::Star
            }
            '^' => {
                self.pos += 1;
                Tok::Caret
            }
            '(' => {
                self.pos += 1;
                Tok::LParen
            }
            ')' => {
                self.pos += 1;
                Tok::RParen
            }
            other => return Err(Error::syntax(at, format!("unexpected character `{other}`"))),
        };
        Ok((at, tok))
    }
}

struct OrdParser<'a> {
    lexer: Lexer<'a>,
    look: (usize, Tok),
}

impl<'a> OrdParser<'a> {
    fn new(text: &'a str) -> Result<OrdParser<'a>> {
        let mut lexer = Lexer::new(text);
        let look = lexer.next()?;
        Ok(OrdParser { lexer, look })
    }

    fn bump(&mut self) -> Result<(usize, Tok)> {
        let prev = std::mem::replace(&mut self.look, self.lexer.next()?);
        Ok(prev)
    }

    fn expr(&mut self) -> Result<Ordinal> {
        let mut acc = self.term()?;
        while self.look.1 == Tok::Plus {
            self.bump()?;
            let rhs = self.term()?;
            acc = acc.add(&rhs)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ordinal> {
        let mut acc = self.factor()?;
        while self.look.1 == Tok::Star {
            self.bump()?;
            let rhs = self.factor()?;
            acc = acc.mul(&rhs)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Ordinal> {
        let base = self.base()?;
        if self.look.1 == Tok::Caret {
            self.bump()?;
            let exp = self.factor()?; // right-associative
            base.pow(&exp)
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Ordinal> {
        let (at, tok) = self.bump()?;
        match tok {
            Tok::Nat(n) => Ok(Ordinal::finite(n)),
            Tok::Omega => Ok(Ordinal::omega()),
            Tok::Atom(k) => Ok(Ordinal::eps(k)),
            Tok::LParen => {
                let inner = self.expr()?;
                let (at, tok) = self.bump()?;
                if tok != Tok::RParen {
                    return Err(Error::syntax(at, "expected `)`"));
                }
                Ok(inner)
            }
            other => Err(Error::syntax(at, format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses an ordinal expression and evaluates it to canonical form.
pub fn parse_ordinal(text: &str) -> Result<Ordinal> {
    let mut p = OrdParser::new(text)?;
    let value = p.expr()?;
    let (at, tok) = p.bump()?;
    if tok != Tok::Eof {
        return Err(Error::syntax(at, format!("unexpected trailing token {tok:?}")));
    }
    Ok(value)
}

/// True when an exponent renders without internal `+`/`*`/`^`, so it may
/// follow `^` unparenthesized.
fn atomic_exponent(e: &Ordinal) -> bool {
    e.is_finite() || *e == Ordinal::omega() || matches!(e, Ordinal::EpsAtom(_))
}

fn format_term(e: &Ordinal, c: u64, out: &mut String) {
    if e.is_zero() {
        out.push_str(&c.to_string());
        return;
    }
    match e {
        Ordinal::EpsAtom(k) => out.push_str(&format!("W{k}")),
        _ if *e == Ordinal::one() => out.push('w'),
        _ if atomic_exponent(e) => {
            out.push_str("w^");
            out.push_str(&format_ordinal(e));
        }
        _ => {
            out.push_str("w^(");
            out.push_str(&format_ordinal(e));
            out.push(')');
        }
    }
    if c > 1 {
        out.push_str(&format!("*{c}"));
    }
}

/// Canonical rendering; `parse_ordinal(format_ordinal(a)) == a`.
pub fn format_ordinal(a: &Ordinal) -> String {
    match a {
        Ordinal::Zero => "0".to_string(),
        Ordinal::EpsAtom(k) => format!("W{k}"),
        Ordinal::Cnf(terms) => {
            let mut out = String::new();
            for (i, (e, c)) in terms.iter().enumerate() {
                if i > 0 {
                    out.push_str(" + ");
                }
                format_term(e, *c, &mut out);
            }
            out
        }
    }
}

/// Parses a space expression (grammar in the module docs).
pub fn parse_space(text: &str) -> Result<SpaceExpr> {
    let (expr, rest) = parse_space_at(text, 0)?;
    let tail = skip_ws_from(text, rest);
    if tail < text.len() {
        return Err(Error::syntax(tail, "unexpected trailing input"));
    }
    Ok(expr)
}

fn skip_ws_from(text: &str, mut pos: usize) -> usize {
    let b = text.as_bytes();
    while pos < b.len() && b[pos].is_ascii_whitespace() {
        pos += 1;
    }
    pos
}

/// Parses one space expression starting at `pos`; returns it and the
/// position past its end.
fn parse_space_at(text: &str, pos: usize) -> Result<(SpaceExpr, usize)> {
    let (first, mut pos) = parse_space_atom(text, pos)?;
    let mut parts = vec![first];
    loop {
        let p = skip_ws_from(text, pos);
        if text[p..].starts_with("(+)") {
            let (next, np) = parse_space_atom(text, p + 3)?;
            parts.push(next);
            pos = np;
        } else {
            break;
        }
    }
    let expr = if parts.len() == 1 {
        parts.into_iter().next().unwrap()
    } else {
        SpaceExpr::direct_sum(parts)?
    };
    Ok((expr, pos))
}

fn parse_space_atom(text: &str, pos: usize) -> Result<(SpaceExpr, usize)> {
    let pos = skip_ws_from(text, pos);
    let rest = &text[pos..];
    if let Some(tail) = rest.strip_prefix("C0(") {
        let (alpha, after) = parse_ordinal_group(text, pos + (rest.len() - tail.len()))?;
        Ok((SpaceExpr::c0(alpha)?, after))
    } else if let Some(tail) = rest.strip_prefix("C(") {
        let (alpha, after) = parse_ordinal_group(text, pos + (rest.len() - tail.len()))?;
        Ok((SpaceExpr::c(alpha)?, after))
    } else if rest.starts_with("c0(") {
        let open = pos + 2; // index of '('
        let comma = top_level_comma(text, open)?;
        let kappa = parse_ordinal(&text[open + 1..comma])
            .map_err(|e| shift_syntax(e, open + 1))?;
        let (inner, after_inner) = parse_space_at(text, comma + 1)?;
        let close = skip_ws_from(text, after_inner);
        if !text[close..].starts_with(')') {
            return Err(Error::syntax(close, "expected `)` closing c0(...)"));
        }
        Ok((SpaceExpr::c0_sum(kappa, inner)?, close + 1))
    } else {
        Err(Error::syntax(pos, "expected `C(`, `C0(` or `c0(`"))
    }
}

/// Parses the ordinal inside `C(...)`/`C0(...)`; `open` is the index of
/// the opening parenthesis. Returns the ordinal and the position past the
/// closing parenthesis.
fn parse_ordinal_group(text: &str, prefix_end: usize) -> Result<(Ordinal, usize)> {
    let open = prefix_end - 1;
    let close = matching_paren(text, open)?;
    let alpha = parse_ordinal(&text[open + 1..close]).map_err(|e| shift_syntax(e, open + 1))?;
    Ok((alpha, close + 1))
}

fn matching_paren(text: &str, open: usize) -> Result<usize> {
    let b = text.as_bytes();
    let mut depth = 0usize;
    for i in open..b.len() {
        match b[i] {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth == 0 {
                    return Ok(i);
                }
            }
            _ => {}
        }
    }
    Err(Error::syntax(open, "unbalanced parentheses"))
}

fn top_level_comma(text: &str, open: usize) -> Result<usize> {
    let b = text.as_bytes();
    let mut depth = 0usize;
    for i in open..b.len() {
        match b[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b',' if depth == 1 => return Ok(i),
            _ => {}
        }
    }
    Err(Error::syntax(open, "expected `,` inside c0(...)"))
}

fn shift_syntax(e: Error, by: usize) -> Error {
    match e {
        Error::Syntax { pos, msg } => Error::Syntax { pos: pos + by, msg },
        other => other,
    }
}

/// Canonical rendering of a space expression.
pub fn format_space(s: &SpaceExpr) -> String {
    match s {
        SpaceExpr::C(a) => format!("C({})", format_ordinal(a)),
        SpaceExpr::C0(a) => format!("C0({})", format_ordinal(a)),
        SpaceExpr::DirectSum(parts) => parts
            .iter()
            .map(format_space)
            .collect::<Vec<_>>()
            .join(" (+) "),
        SpaceExpr::C0Sum(kappa, inner) => {
            format!("c0({}, {})", format_ordinal(kappa), format_space(inner))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let a = parse_ordinal("w^(w^2)*3 + w*5 + 7").unwrap();
        let expect = Ordinal::omega_pow(&Ordinal::omega_pow(&Ordinal::finite(2)))
            .mul(&Ordinal::finite(3))
            .unwrap()
            .add(&Ordinal::omega().mul(&Ordinal::finite(5)).unwrap())
            .unwrap()
            .add(&Ordinal::finite(7))
            .unwrap();
        assert_eq!(a, expect);
        assert_eq!(parse_ordinal("1 + w").unwrap(), Ordinal::omega());
        let err = parse_ordinal("w^^2").unwrap_err();
        assert!(matches!(err, Error::Syntax { pos: 2, .. }), "{err:?}");
    }

    #[test]
    fn parse_unicode_spellings() {
        assert_eq!(parse_ordinal("\u{3c9}").unwrap(), Ordinal::omega());
        assert_eq!(parse_ordinal("\u{3a9}\u{2081}").unwrap(), Ordinal::eps(1));
        assert_eq!(parse_ordinal("\u{3a9}2").unwrap(), Ordinal::eps(2));
    }

    #[test]
    fn format_examples() {
        let a = parse_ordinal("w^(w^2)*3 + w*5 + 7").unwrap();
        assert_eq!(format_ordinal(&a), "w^(w^2)*3 + w*5 + 7");
        assert_eq!(format_ordinal(&Ordinal::zero()), "0");
        assert_eq!(format_ordinal(&Ordinal::eps(1)), "W1");
        assert_eq!(format_ordinal(&parse_ordinal("w^w*2").unwrap()), "w^w*2");
        assert_eq!(format_ordinal(&parse_ordinal("W1*2 + 3").unwrap()), "W1*2 + 3");
        assert_eq!(format_ordinal(&parse_ordinal("W1 + 1").unwrap()), "W1 + 1");
        assert_eq!(format_ordinal(&parse_ordinal("w^(W1 + 1)").unwrap()), "w^(W1 + 1)");
    }

    #[test]
    fn literal_overflow() {
        let err = parse_ordinal("99999999999999999999999").unwrap_err();
        assert!(matches!(err, Error::Overflow(_)));
    }

    #[test]
    fn space_round_trip() {
        let s = parse_space("C0(w^2) (+) c0(w, C0(w) (+) C(w^w))").unwrap();
        assert_eq!(format_space(&s), "C0(w^2) (+) c0(w, C0(w) (+) C(w^w))");
        let err = parse_space("c0(w C0(w))").unwrap_err();
        assert!(matches!(err, Error::Syntax { .. }));
    }
}
