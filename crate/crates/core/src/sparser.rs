//! The closed-form series expression language.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ('^' NAT)?
//! atom   := '(' expr ')' | 'inv' '(' expr ')' | CONST | 'z'
//! ```
//!
//! `CONST` is an integer literal; over the Gaussian integers also an imaginary
//! literal `bi` or `i` (so `4+3i` is the sum of `4` and `3i`); over `Q[y]`
//! also a bracketed polynomial such as `[1/2 + y^2]` or `[(1+y)^8]`.
//! Whitespace is insignificant.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rings::{Gaussian, QPoly, RingElem, RingTag};
use crate::series::Series;

/// Largest accepted exponent.
pub const MAX_EXPONENT: u32 = 65_535;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Const(RingElem),
    Z,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Inv(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Imag(BigInt),
    Poly(QPoly),
    Z,
    Inv,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Caret,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "'{n}'"),
            Tok::Imag(n) => write!(f, "'{n}i'"),
            Tok::Poly(p) => write!(f, "'[{p}]'"),
            Tok::Z => write!(f, "'z'"),
            Tok::Inv => write!(f, "'inv'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Caret => write!(f, "'^'"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            b'+' => out.push((Tok::Plus, start)),
            b'-' => out.push((Tok::Minus, start)),
            b'*' => out.push((Tok::Star, start)),
            b'^' => out.push((Tok::Caret, start)),
            b'[' => {
                let close = match text[i..].find(']') {
                    Some(off) => i + off,
                    None => return err(start, "unterminated '[' polynomial literal"),
                };
                let poly = PolyParser::parse(&text[i + 1..close], i + 1)?;
                out.push((Tok::Poly(poly), start));
                i = close + 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("ascii digits");
                let word_end = word_end(bytes, i);
                if &text[i..word_end] == "i" {
                    out.push((Tok::Imag(n), start));
                    i = word_end;
                } else {
                    out.push((Tok::Num(n), start));
                }
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                i = word_end(bytes, i);
                let tok = match &text[start..i] {
                    "z" => Tok::Z,
                    "inv" => Tok::Inv,
                    "i" => Tok::Imag(BigInt::from(1)),
                    w => return err(start, format!("unknown identifier '{w}'")),
                };
                out.push((tok, start));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().expect("in bounds");
                return err(start, format!("unexpected character '{ch}'"));
            }
        }
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

fn word_end(bytes: &[u8], mut i: usize) -> usize {
    while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
        i += 1;
    }
    i
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    ring: RingTag,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        let (t, pos) = self.bump();
        if t == want {
            Ok(())
        } else {
            err(pos, format!("expected {want}, found {t}"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (t, pos) = self.bump();
        match t {
            Tok::Num(n) => match n.to_u32().filter(|&e| e <= MAX_EXPONENT) {
                Some(e) => Ok(Expr::Pow(Box::new(base), e)),
                None => err(pos, format!("exponent {n} exceeds {MAX_EXPONENT}")),
            },
            other => err(
                pos,
                format!("exponent must be a nonnegative integer literal, found {other}"),
            ),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let (t, pos) = self.bump();
        match t {
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Inv => {
                self.expect(Tok::LParen)?;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(Expr::Inv(Box::new(e)))
            }
            Tok::Z => Ok(Expr::Z),
            Tok::Num(n) => Ok(Expr::Const(RingElem::from_int(self.ring, n))),
            Tok::Imag(b) => match self.ring {
                RingTag::Gauss => Ok(Expr::Const(RingElem::Gauss(Gaussian::new(0, b)))),
                ring => err(pos, format!("imaginary literal is not valid in ring {ring}")),
            },
            Tok::Poly(p) => match self.ring {
                RingTag::Polyq => Ok(Expr::Const(RingElem::Poly(p))),
                ring => err(pos, format!("polynomial literal is not valid in ring {ring}")),
            },
            other => err(pos, format!("expected a constant, 'z', 'inv' or '(', found {other}")),
        }
    }
}

/// Parses `text` with constants interpreted in `ring`.
pub fn parse(text: &str, ring: RingTag) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        ring,
    };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        t => err(p.pos(), format!("unexpected {t} after expression")),
    }
}

/// Builds the series described by `e` over `ring`.
pub fn eval(e: &Expr, ring: RingTag) -> Result<Series> {
    Ok(match e {
        Expr::Const(c) => {
            if c.tag() != ring {
                return Err(Error::RingMismatch {
                    left: ring,
                    right: c.tag(),
                });
            }
            Series::constant(c.clone())
        }
        Expr::Z => Series::z(ring),
        Expr::Add(a, b) => eval(a, ring)?.add(&eval(b, ring)?)?,
        Expr::Sub(a, b) => eval(a, ring)?.sub(&eval(b, ring)?)?,
        Expr::Mul(a, b) => eval(a, ring)?.mul(&eval(b, ring)?)?,
        Expr::Neg(a) => eval(a, ring)?.neg(),
        Expr::Pow(a, n) => eval(a, ring)?.pow(*n),
        Expr::Inv(a) => eval(a, ring)?.invert()?,
    })
}

/// `parse` followed by `eval`.
pub fn parse_series(text: &str, ring: RingTag) -> Result<Series> {
    eval(&parse(text, ring)?, ring)
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Const(c) if !const_is_atomic(c) => 0,
            Expr::Const(_) | Expr::Z | Expr::Inv(_) => 5,
        }
    }
}

fn const_is_atomic(c: &RingElem) -> bool {
    match c {
        RingElem::Int(n) => !n.is_negative(),
        RingElem::Gauss(g) => (g.im.is_zero() && !g.re.is_negative()) || (g.re.is_zero() && !g.im.is_negative()),
        RingElem::Poly(_) => true,
    }
}

fn write_const(f: &mut fmt::Formatter<'_>, c: &RingElem) -> fmt::Result {
    match c {
        RingElem::Int(n) => write!(f, "{n}"),
        RingElem::Gauss(g) if g.im.is_zero() => write!(f, "{}", g.re),
        RingElem::Gauss(g) if g.re.is_zero() => write!(f, "{}i", g.im),
        RingElem::Gauss(g) => write!(f, "{}", g),
        RingElem::Poly(p) => match p.degree() {
            None => write!(f, "0"),
            Some(0) if p.coeffs()[0].is_integer() && !p.coeffs()[0].is_negative() => {
                write!(f, "{}", p.coeffs()[0].numer())
            }
            _ => write!(f, "[{p}]"),
        },
    }
}

impl fmt::Display for Expr {
    /// Minimal-parenthesis rendering that reparses to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let child = |f: &mut fmt::Formatter<'_>, e: &Expr, min: u8| -> fmt::Result {
            if e.prec() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Const(c) => write_const(f, c),
            Expr::Z => write!(f, "z"),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                child(f, a, 1)?;
                write!(f, "{}", if matches!(self, Expr::Add(..)) { "+" } else { "-" })?;
                child(f, b, 2)
            }
            Expr::Mul(a, b) => {
                child(f, a, 2)?;
                write!(f, "*")?;
                child(f, b, 3)
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                child(f, a, 3)
            }
            Expr::Pow(a, n) => {
                child(f, a, 5)?;
                write!(f, "^{n}")
            }
            Expr::Inv(a) => write!(f, "inv({a})"),
        }
    }
}

/// Parser for the contents of a `[...]` polynomial literal over `Q[y]`:
/// sums, products, `/` by nonzero constants, `^ NAT`, parentheses, unary
/// minus, integer literals and `y`.
struct PolyParser<'a> {
    text: &'a [u8],
    at: usize,
    offset: usize,
}

impl<'a> PolyParser<'a> {
    fn parse(text: &'a str, offset: usize) -> Result<QPoly> {
        let mut p = PolyParser {
            text: text.as_bytes(),
            at: 0,
            offset,
        };
        let v = p.sum()?;
        p.skip_ws();
        if p.at < p.text.len() {
            return err(p.pos(), "unexpected character in polynomial literal");
        }
        Ok(v)
    }

    fn pos(&self) -> usize {
        self.offset + self.at
    }

    fn skip_ws(&mut self) {
        while self.at < self.text.len() && self.text[self.at].is_ascii_whitespace() {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.at).copied()
    }

    fn sum(&mut self) -> Result<QPoly> {
        let mut acc = self.product()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.at += 1;
            let rhs = self.product()?;
            acc = if c == b'+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<QPoly> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.at += 1;
            let pos = self.pos();
            let rhs = self.unary()?;
            if c == b'*' {
                acc = acc.mul(&rhs);
            } else if rhs.is_unit() {
                acc = acc.scale(&rhs.coeffs()[0].recip());
            } else {
                return err(pos, "division in a polynomial literal needs a nonzero constant divisor");
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<QPoly> {
        if self.peek() == Some(b'-') {
            self.at += 1;
            return Ok(self.unary()?.neg());
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.at += 1;
            self.skip_ws();
            let pos = self.pos();
            let start = self.at;
            while self.at < self.text.len() && self.text[self.at].is_ascii_digit() {
                self.at += 1;
            }
            if start == self.at {
                return err(pos, "exponent must be a nonnegative integer literal");
            }
            let e: u64 = std::str::from_utf8(&self.text[start..self.at])
                .expect("ascii")
                .parse()
                .unwrap_or(u64::MAX);
            if e > MAX_EXPONENT as u64 {
                return err(pos, format!("exponent exceeds {MAX_EXPONENT}"));
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<QPoly> {
        let pos = self.pos();
        match self.peek() {
            Some(b'(') => {
                self.at += 1;
                let v = self.sum()?;
                if self.peek() != Some(b')') {
                    return err(self.pos(), "expected ')' in polynomial literal");
                }
                self.at += 1;
                Ok(v)
            }
            Some(b'y') => {
                self.at += 1;
                Ok(QPoly::y())
            }
            Some(b'0'..=b'9') => {
                let start = self.at;
                while self.at < self.text.len() && self.text[self.at].is_ascii_digit() {
                    self.at += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.text[start..self.at])
                    .expect("ascii")
                    .parse()
                    .expect("digits");
                Ok(QPoly::constant(BigRational::from_integer(n)))
            }
            Some(_) => err(pos, "expected a number, 'y' or '(' in polynomial literal"),
            None => err(pos, "unexpected end of polynomial literal"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(n: i64) -> Box<Expr> {
        Box::new(Expr::Const(RingElem::int(n)))
    }

    fn z() -> Box<Expr> {
        Box::new(Expr::Z)
    }

    fn ints(s: &Series, n: usize) -> Vec<i64> {
        s.prefix(n)
            .unwrap()
            .iter()
            .map(|c| c.as_int().unwrap().try_into().unwrap())
            .collect()
    }

    #[test]
    fn ast_examples() {
        assert_eq!(
            parse("(2-z)^3", RingTag::Int).unwrap(),
            Expr::Pow(Box::new(Expr::Sub(c(2), z())), 3)
        );
        assert_eq!(
            parse("(8+z^2)*inv(1-z)", RingTag::Int).unwrap(),
            Expr::Mul(
                Box::new(Expr::Add(c(8), Box::new(Expr::Pow(z(), 2)))),
                Box::new(Expr::Inv(Box::new(Expr::Sub(c(1), z()))))
            )
        );
        let e = parse("inv(2+z)", RingTag::Int).unwrap();
        assert!(matches!(eval(&e, RingTag::Int), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn precedence() {
        assert_eq!(
            ints(&parse_series("1+2*z^2", RingTag::Int).unwrap(), 4),
            vec![1, 0, 2, 0]
        );
        assert_eq!(ints(&parse_series("-z^2", RingTag::Int).unwrap(), 3), vec![0, 0, -1]);
        assert_eq!(ints(&parse_series("2-z-z", RingTag::Int).unwrap(), 2), vec![2, -2]);
        assert_eq!(ints(&parse_series("- 3 * -z", RingTag::Int).unwrap(), 2), vec![0, 3]);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(ints(&parse_series("(2-z)^2", RingTag::Int).unwrap(), 3), vec![4, -4, 1]);
        assert_eq!(ints(&parse_series("inv(1-z)", RingTag::Int).unwrap(), 10), vec![1; 10]);
        let f4 = parse_series("8 + 8*z + 4*z^2 + 2*z^3 + z^4*inv(1-z)", RingTag::Int).unwrap();
        assert_eq!(ints(&f4, 8), vec![8, 8, 4, 2, 1, 1, 1, 1]);
    }

    #[test]
    fn gaussian_literals() {
        let s = parse_series("(19^3)*(4+3i) + 4*z^2 + z^3", RingTag::Gauss).unwrap();
        assert_eq!(s.coeff(0), RingElem::gauss(19 * 19 * 19 * 4, 19 * 19 * 19 * 3));
        assert_eq!(s.coeff(2), RingElem::gauss(4, 0));
        let u = parse_series("i*z - 2i", RingTag::Gauss).unwrap();
        assert_eq!(u.coeff(0), RingElem::gauss(0, -2));
        assert_eq!(u.coeff(1), RingElem::gauss(0, 1));
        assert!(matches!(parse("3i", RingTag::Int), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn polynomial_literals() {
        let s = parse_series("[(1+y)^8] + [(1+y)^4]*z + [1/2*y - 3]*z^2", RingTag::Polyq).unwrap();
        let one_plus_y = QPoly::from_int(1).add(&QPoly::y());
        assert_eq!(s.coeff(0), RingElem::Poly(one_plus_y.pow(8)));
        assert_eq!(s.coeff(1), RingElem::Poly(one_plus_y.pow(4)));
        assert_eq!(s.coeff(2).to_string(), "-3+1/2*y");
        assert!(matches!(parse("[1+y]", RingTag::Int), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(
            parse("[1+y", RingTag::Polyq),
            Err(Error::Parse { pos: 0, .. })
        ));
        assert!(matches!(
            parse("[y/y]", RingTag::Polyq),
            Err(Error::Parse { pos: 3, .. })
        ));
    }

    #[test]
    fn error_positions() {
        let cases: &[(&str, usize)] = &[
            ("", 0),
            ("2+", 2),
            ("(2-z", 4),
            ("z^-1", 2),
            ("z^x", 2),
            ("2 $ z", 2),
            ("foo(z)", 0),
            ("z^99999999999", 2),
            ("2 z", 2),
            ("inv 2", 4),
        ];
        for &(text, pos) in cases {
            match parse(text, RingTag::Int) {
                Err(Error::Parse { pos: p, .. }) => assert_eq!(p, pos, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn printing() {
        for text in [
            "(2-z)^3",
            "(8+z^2)*inv(1-z)",
            "-z^2",
            "(-z)^2",
            "1-(2-z)",
            "2*(3*z)",
            "(z^2)^3",
            "--z",
        ] {
            let e = parse(text, RingTag::Int).unwrap();
            assert_eq!(e.to_string(), text);
        }
        let e = parse("[1/2+y]*z + 3i", RingTag::Polyq);
        assert!(e.is_err());
        let e = parse("[1/2+y]*z + 3", RingTag::Polyq).unwrap();
        assert_eq!(e.to_string(), "[1/2+y]*z+3");
    }

    fn expr_text() -> impl Strategy<Value = String> {
        let leaf = prop_oneof![
            (0u32..50).prop_map(|n| n.to_string()),
            Just("z".to_string()),
            (0u32..5).prop_map(|n| format!("{n}i")),
        ];
        leaf.prop_recursive(4, 24, 3, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) + ({b})")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} - {b}")),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a}*{b}")),
                inner.clone().prop_map(|a| format!("-{a}")),
                (inner.clone(), 0u32..4).prop_map(|(a, n)| format!("({a})^{n}")),
                inner.prop_map(|a| format!("inv({a})")),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(text in expr_text()) {
            if let Ok(e) = parse(&text, RingTag::Gauss) {
                let printed = e.to_string();
                prop_assert_eq!(parse(&printed, RingTag::Gauss).unwrap(), e, "{}", printed);
            }
        }

        #[test]
        fn fuzzed_input_never_panics(text in "[-+*^()zinv0-9i\\[\\]y/ ]{0,24}") {
            for ring in [RingTag::Int, RingTag::Gauss, RingTag::Polyq] {
                match parse(&text, ring) {
                    Ok(_) => {}
                    Err(Error::Parse { pos, .. }) => prop_assert!(pos <= text.len()),
                    Err(other) => prop_assert!(false, "non-parse error {:?}", other),
                }
            }
        }

        #[test]
        fn arbitrary_bytes_never_panic(text in ".{0,32}") {
            let _ = parse(&text, RingTag::Polyq);
        }
    }
}
