//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | variable | '(' expr ')'
//! ```
//!
//! Variables are `a0`..`a9` (likewise `b`, `c`, `d`), `a{12}` for longer
//! indices, `x`, `X` and `Y`. Whitespace is ignored.

use num_bigint::BigInt;
use num_traits::Zero;

use super::polynomial::Polynomial;
use super::rational::Rational;
use super::variable::{Series, Variable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("unknown variable {name:?} at line {line}, column {col}")]
    UnknownVariable { name: String, line: usize, col: usize },
    #[error("index of {name} exceeds the declared maximum {max} (line {line}, column {col})")]
    IndexOutOfRange { name: String, max: u32, line: usize, col: usize },
}

pub fn parse(text: &str) -> Result<Polynomial, ParseError> {
    parse_with_limit(text, None)
}

/// Parses and additionally rejects coefficient indices above `max_index`.
pub fn parse_with_limit(text: &str, max_index: Option<u32>) -> Result<Polynomial, ParseError> {
    let mut parser = Parser { src: text, pos: 0, max_index };
    parser.skip_ws();
    if parser.peek().is_none() {
        return Err(parser.syntax("empty expression"));
    }
    let p = parser.expr()?;
    parser.skip_ws();
    match parser.peek() {
        None => Ok(p),
        Some(c) => Err(parser.syntax(&format!("unexpected {c:?}"))),
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    max_index: Option<u32>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn eat(&mut self, want: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(want) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn location(&self, at: usize) -> (usize, usize) {
        let before = &self.src[..at];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, col)
    }

    fn syntax(&self, message: &str) -> ParseError {
        self.syntax_at(self.pos, message)
    }

    fn syntax_at(&self, at: usize, message: &str) -> ParseError {
        let (line, col) = self.location(at);
        ParseError::Syntax { line, col, message: message.to_string() }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc += self.term()?;
            } else if self.eat('-') {
                acc -= self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.syntax("expected a non-negative integer exponent"));
        }
        let exp: u32 = digits
            .parse()
            .map_err(|_| self.syntax_at(start, "exponent too large"))?;
        Ok(base.pow(exp))
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        &self.src[start..self.pos]
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.syntax("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.variable(start),
            Some(c) => Err(self.syntax(&format!("unexpected {c:?}"))),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Polynomial, ParseError> {
        let numer: BigInt = self.digits().parse().expect("digit run");
        let save = self.pos;
        self.skip_ws();
        if self.peek() != Some('/') {
            self.pos = save;
            return Ok(Polynomial::constant(Rational::from_integer(numer)));
        }
        self.bump();
        self.skip_ws();
        let at = self.pos;
        let text = self.digits();
        if text.is_empty() {
            return Err(self.syntax("expected an integer denominator"));
        }
        let denom: BigInt = text.parse().expect("digit run");
        if denom.is_zero() {
            return Err(self.syntax_at(at, "zero denominator"));
        }
        Ok(Polynomial::constant(Rational::new(numer, denom)))
    }

    fn variable(&mut self, start: usize) -> Result<Polynomial, ParseError> {
        let (line, col) = self.location(start);
        let head = self.bump().expect("peeked");
        match head {
            'x' if !self.continues_name() => return Ok(Polynomial::var(Variable::X)),
            'X' if !self.continues_name() => return Ok(Polynomial::var(Variable::CovX)),
            'Y' if !self.continues_name() => return Ok(Polynomial::var(Variable::CovY)),
            _ => {}
        }
        let Some(series) = Series::from_letter(head) else {
            return Err(self.unknown(start, line, col));
        };
        let index: u32 = match self.peek() {
            Some('{') => {
                self.bump();
                let text = self.digits().to_string();
                if text.is_empty() || self.bump() != Some('}') {
                    return Err(self.syntax("expected a braced index such as a{12}"));
                }
                text.parse().map_err(|_| self.syntax_at(start, "index too large"))?
            }
            Some(c) if c.is_ascii_digit() => {
                self.bump();
                if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    return Err(self.syntax("multi-digit indices must be braced, e.g. a{12}"));
                }
                c.to_digit(10).expect("digit")
            }
            _ => return Err(self.unknown(start, line, col)),
        };
        if self.continues_name() {
            return Err(self.unknown(start, line, col));
        }
        let v = series.at(index);
        if let Some(max) = self.max_index {
            if index > max {
                return Err(ParseError::IndexOutOfRange { name: v.plain_name(), max, line, col });
            }
        }
        Ok(Polynomial::var(v))
    }

    fn continues_name(&self) -> bool {
        self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
    }

    fn unknown(&mut self, start: usize, line: usize, col: usize) -> ParseError {
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || "_{}".contains(c)) {
            self.bump();
        }
        ParseError::UnknownVariable { name: self.src[start..self.pos].to_string(), line, col }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::rational::{int, rat};

    fn a(i: u32) -> Polynomial {
        Polynomial::var(Series::A.at(i))
    }

    #[test]
    fn basic_expressions() {
        let h = &(&a(0) * &a(2)) - &a(1).pow(2);
        assert_eq!(parse("a0*a2 - a1^2").unwrap(), h);
        let x = Polynomial::var(Variable::X);
        assert_eq!(parse("3/2*x^2").unwrap(), x.pow(2).scale(&rat(3, 2)));
        assert_eq!(parse("(x - 1/2)^2").unwrap(), parse("x^2 - x + 1/4").unwrap());
        assert_eq!(parse("-x^2").unwrap(), -x.pow(2));
        assert_eq!(parse(" 2 * ( a{12} + X*Y ) ").unwrap().len(), 2);
        assert_eq!(parse("7").unwrap(), Polynomial::constant(int(7)));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse("a0 +\n  * a1"),
            Err(ParseError::Syntax { line: 2, col: 3, message: "unexpected '*'".into() })
        );
        assert!(matches!(parse("e1"), Err(ParseError::UnknownVariable { name, .. }) if name == "e1"));
        assert!(matches!(parse("xy"), Err(ParseError::UnknownVariable { .. })));
        assert!(matches!(parse("a12"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("1/0"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("x^-1"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("(a0"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse(""), Err(ParseError::Syntax { .. })));
        assert_eq!(
            parse_with_limit("a0 + a3", Some(2)),
            Err(ParseError::IndexOutOfRange { name: "a3".into(), max: 2, line: 1, col: 6 })
        );
    }
}
