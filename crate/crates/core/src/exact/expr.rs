//! Text form of constructible numbers.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | decimal | 'sqrt' '(' expr ')' | '(' expr ')'
//! ```
//!
//! `format_elem` only emits this grammar, and parsing its output yields the
//! same value (the tower may differ when a radicand turns out to be a square).

use std::str::FromStr;

use num_traits::Signed;

use super::elem::Elem;
use super::number::ConstructibleNumber;
use super::tower::FieldTower;
use super::{parse_decimal, rational_to_string, ExactError, Rational};

fn format_rational_factor(r: &Rational) -> String {
    if r.is_integer() && !r.is_negative() {
        rational_to_string(r)
    } else {
        format!("({})", rational_to_string(r))
    }
}

pub(crate) fn format_elem(rads: &[Elem], x: &Elem) -> String {
    match x {
        Elem::Rat(r) => rational_to_string(r),
        Elem::Quad { level, a, b } => {
            let root = format!("sqrt({})", format_elem(rads, &rads[level - 1]));
            let (neg, b_abs) = match &**b {
                Elem::Rat(r) if r.is_negative() => (true, Elem::Rat(-r)),
                other => (false, other.clone()),
            };
            let scaled = match &b_abs {
                Elem::Rat(r) if r == &Rational::from_integer(1.into()) => root,
                Elem::Rat(r) => format!("{}*{}", format_rational_factor(r), root),
                other => format!("({})*{}", format_elem(rads, other), root),
            };
            if a.is_zero() {
                if neg {
                    format!("-{scaled}")
                } else {
                    scaled
                }
            } else {
                let op = if neg { '-' } else { '+' };
                format!("{} {} {}", format_elem(rads, a), op, scaled)
            }
        }
    }
}

struct Parser<'s> {
    src: &'s str,
    pos: usize,
    tower: FieldTower,
}

impl<'s> Parser<'s> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ExactError> {
        Err(ExactError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ConstructibleNumber, ExactError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ConstructibleNumber, ExactError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.factor()?;
                acc = acc.checked_div(&d).map_err(|_| ExactError::Parse {
                    pos: at,
                    msg: "division by zero".into(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<ConstructibleNumber, ExactError> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                let len = self.src[start..]
                    .find(|c: char| !(c.is_ascii_digit() || c == '.'))
                    .unwrap_or(self.src.len() - start);
                self.pos += len;
                let r = parse_decimal(&self.src[start..self.pos]).map_err(|_| ExactError::Parse {
                    pos: start,
                    msg: "malformed number".into(),
                })?;
                Ok(ConstructibleNumber::from_rational(r))
            }
            Some('s') if self.src[self.pos..].starts_with("sqrt") => {
                self.pos += 4;
                if !self.eat('(') {
                    return self.err("expected '(' after sqrt");
                }
                let at = self.pos;
                let v = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                let (tower, root) = v.sqrt_extend_in(&self.tower).map_err(|e| ExactError::Parse {
                    pos: at,
                    msg: e.to_string(),
                })?;
                self.tower = tower;
                Ok(root)
            }
            Some(c) => self.err(format!("unexpected character {c:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse `src`, adjoining any new square roots on top of `tower`.
///
/// Returns the extended tower with the value; parsing several numbers in
/// sequence through the returned tower keeps them in one tower.
pub fn parse_in(src: &str, tower: &FieldTower) -> Result<(FieldTower, ConstructibleNumber), ExactError> {
    let mut p = Parser {
        src,
        pos: 0,
        tower: tower.clone(),
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return p.err("trailing input");
    }
    let v = v.lift_to(&p.tower);
    Ok((p.tower, v))
}

impl FromStr for ConstructibleNumber {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_in(s, &FieldTower::rationals()).map(|(_, v)| v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_then_parse() {
        let x: ConstructibleNumber = "1/2 + sqrt(3)/2".parse().unwrap();
        let text = x.to_string();
        let y: ConstructibleNumber = text.parse().unwrap();
        assert_eq!(x, y);
        let z: ConstructibleNumber = "sqrt(2 + sqrt(3)) - 7/3*sqrt(3)".parse().unwrap();
        assert_eq!(z, z.to_string().parse::<ConstructibleNumber>().unwrap());
    }

    #[test]
    fn parse_errors_report_position() {
        assert!(matches!(
            "1 + ".parse::<ConstructibleNumber>(),
            Err(ExactError::Parse { pos: 4, .. })
        ));
        assert!("sqrt(-1)".parse::<ConstructibleNumber>().is_err());
        assert!("1/0".parse::<ConstructibleNumber>().is_err());
    }
}
