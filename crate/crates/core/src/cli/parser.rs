//! Polynomial expressions over `Q(i)` in `x, y, s, t`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | 'i' | VAR | '(' expr ')'
//! ```
//!
//! `/` only joins two integer literals; juxtaposition is an error.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{GaussRational, Polynomial, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unknown variable `{name}` at line {line}, column {column} (expected x, y, s, t or i)")]
    UnknownVariable { name: String, line: usize, column: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            k += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().collect();
            column += k - start;
            out.push(Spanned { tok: Tok::Int(digits.parse().expect("ascii digits")), line: l0, column: c0 });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            let name: String = chars[start..k].iter().collect();
            column += k - start;
            out.push(Spanned { tok: Tok::Ident(name), line: l0, column: c0 });
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
            other => {
                return Err(ParseError::Syntax { line, column, message: format!("unexpected character `{other}`") })
            }
        };
        out.push(Spanned { tok, line: l0, column: c0 });
        column += 1;
        k += 1;
    }
    out.push(Spanned { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, at: &Spanned, message: String) -> ParseError {
        ParseError::Syntax { line: at.line, column: at.column, message }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.bump();
        match &at.tok {
            Tok::Int(n) => {
                let e: u32 = n
                    .try_into()
                    .map_err(|_| self.error(&at, "exponent too large".into()))?;
                Ok(base.pow(e))
            }
            other => Err(self.error(&at, format!("expected a nonnegative integer exponent, found {}", other.describe()))),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let at = self.bump();
        match &at.tok {
            Tok::Int(n) => {
                if self.peek().tok == Tok::Slash {
                    self.bump();
                    let den_at = self.bump();
                    let Tok::Int(d) = &den_at.tok else {
                        return Err(self.error(&den_at, format!("`/` must join two integers, found {}", den_at.tok.describe())));
                    };
                    if d.is_zero() {
                        return Err(self.error(&den_at, "zero denominator".into()));
                    }
                    let q = BigRational::new(n.clone(), d.clone());
                    return Ok(Polynomial::constant(GaussRational::from_real(q)));
                }
                Ok(Polynomial::constant(GaussRational::from_real(BigRational::from_integer(n.clone()))))
            }
            Tok::Ident(name) => {
                if name == "i" {
                    return Ok(Polynomial::constant(GaussRational::i()));
                }
                match Var::from_name(name) {
                    Some(v) => Ok(Polynomial::var(v)),
                    None => Err(ParseError::UnknownVariable { name: name.clone(), line: at.line, column: at.column }),
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(self.error(&close, format!("expected `)`, found {}", close.tok.describe())));
                }
                Ok(inner)
            }
            other => Err(self.error(&at, format!("expected a number, variable or `(`, found {}", other.describe()))),
        }
    }
}

pub fn parse_polynomial(text: &str) -> Result<Polynomial, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let out = p.expr()?;
    let rest = p.peek().clone();
    if rest.tok != Tok::End {
        let message = match rest.tok {
            Tok::Ident(_) | Tok::Int(_) | Tok::LParen => {
                format!("expected an operator before {} (write `*` explicitly)", rest.tok.describe())
            }
            ref other => format!("unexpected {}", other.describe()),
        };
        return Err(p.error(&rest, message));
    }
    Ok(out)
}

/// A constant expression such as `1/2` or `3-1/4*i`.
pub fn parse_constant(text: &str) -> Result<GaussRational, ParseError> {
    let p = parse_polynomial(text)?;
    if !p.is_constant() {
        return Err(ParseError::Syntax { line: 1, column: 1, message: format!("`{}` is not a constant", text.trim()) });
    }
    Ok(p.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::vars;

    #[test]
    fn examples() {
        let (x, y, s, t) = vars();
        assert_eq!(parse_polynomial("x*s - y + t").unwrap(), &(&(&x * &s) - &y) + &t);
        let unit = &(&(&x - &s).pow(2) + &(&y - &t).pow(2)) - &Polynomial::one();
        assert_eq!(parse_polynomial("(x-s)^2 + (y-t)^2 - 1").unwrap(), unit);
        let mixed = parse_polynomial("(1/2)*x + i*t").unwrap();
        assert_eq!(mixed.coefficient(&crate::algebra::Monomial::var(Var::X)), GaussRational::from_fraction(1, 2));
        assert_eq!(mixed.coefficient(&crate::algebra::Monomial::var(Var::T)), GaussRational::i());
        assert_eq!(parse_polynomial("-x^2").unwrap(), -x.pow(2));
        assert_eq!(parse_polynomial("2/4").unwrap(), Polynomial::constant(GaussRational::from_fraction(1, 2)));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_polynomial("2x"),
            Err(ParseError::Syntax {
                line: 1,
                column: 2,
                message: "expected an operator before `x` (write `*` explicitly)".into()
            })
        );
        assert!(matches!(parse_polynomial("x +\n  z"), Err(ParseError::UnknownVariable { line: 2, column: 3, .. })));
        assert!(matches!(parse_polynomial("(x"), Err(ParseError::Syntax { column: 3, .. })));
        assert!(matches!(parse_polynomial("x/2"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_polynomial("1/0"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_polynomial("x^y"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_polynomial(""), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_polynomial("x $ y"), Err(ParseError::Syntax { column: 3, .. })));
    }

    #[test]
    fn round_trip_of_printed_forms() {
        for text in ["(1+i)*x - i*y^2*s + 1/2", "-x*s + 3/7*t^3 - (2-5*i)", "i", "-1/2*i*x"] {
            let p = parse_polynomial(text).unwrap();
            assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p, "{text} -> {p}");
        }
        assert_eq!(parse_constant(" 1/2 - 3/4*i ").unwrap().to_string(), "1/2-3/4*i");
        assert!(parse_constant("x").is_err());
    }
}
