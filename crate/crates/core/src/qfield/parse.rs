//! Exact number literals.
//!
//! ```text
//! expr     := term (("+"|"-") term)*
//! term     := factor (("*"|"/") factor)*
//! factor   := rational | "sqrt" "(" uint ")" | "(" expr ")" | "-" factor
//! rational := int ("/" uint)?
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{split_square, FieldTag, QuadraticNumber};
use crate::error::{Error, Result};

enum Node {
    Rational(BigRational),
    /// `scale * sqrt(d)` after square extraction
    Sqrt { scale: u64, d: u64 },
    Neg(Box<Node>),
    Binary(char, Box<Node>, Box<Node>),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected '{}'", c as char))
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected digits");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digit string"))
    }

    fn expr(&mut self) -> Result<Node> {
        let mut node = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            node = Node::Binary(op as char, Box::new(node), Box::new(rhs));
        }
        Ok(node)
    }

    fn term(&mut self) -> Result<Node> {
        let mut node = self.factor()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            node = Node::Binary(op as char, Box::new(node), Box::new(rhs));
        }
        Ok(node)
    }

    fn factor(&mut self) -> Result<Node> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Node::Neg(Box::new(self.factor()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b's') => {
                if !self.src[self.pos..].starts_with(b"sqrt") {
                    return self.error("unknown identifier");
                }
                self.pos += 4;
                self.expect(b'(')?;
                let n = self.digits()?;
                self.expect(b')')?;
                let n: u64 = match n.try_into() {
                    Ok(v) => v,
                    Err(_) => return self.error("radicand too large"),
                };
                let (scale, d) = split_square(n);
                Ok(Node::Sqrt { scale: if n == 0 { 0 } else { scale }, d })
            }
            Some(c) if c.is_ascii_digit() => {
                let numer = self.digits()?;
                // "int / uint" is a single rational only when a digit follows
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                        let denom = self.digits()?;
                        if denom.is_zero() {
                            return Err(Error::DivisionByZero);
                        }
                        return Ok(Node::Rational(BigRational::new(numer, denom)));
                    }
                    self.pos = save;
                }
                Ok(Node::Rational(BigRational::from_integer(numer)))
            }
            Some(_) => self.error("unexpected character"),
            None => self.error("unexpected end of input"),
        }
    }
}

fn collect_radicands(node: &Node, out: &mut Vec<u64>) {
    match node {
        Node::Rational(_) => {}
        Node::Sqrt { d, scale } => {
            if *d > 1 && *scale > 0 && !out.contains(d) {
                out.push(*d);
            }
        }
        Node::Neg(inner) => collect_radicands(inner, out),
        Node::Binary(_, l, r) => {
            collect_radicands(l, out);
            collect_radicands(r, out);
        }
    }
}

fn eval(node: &Node, field: FieldTag) -> Result<QuadraticNumber> {
    match node {
        Node::Rational(r) => Ok(QuadraticNumber::new(r.clone(), BigRational::zero(), field)),
        Node::Sqrt { scale, d } => {
            let s = BigRational::from_integer(BigInt::from(*scale));
            if *d == 1 {
                Ok(QuadraticNumber::new(s, BigRational::zero(), field))
            } else {
                Ok(QuadraticNumber::new(BigRational::zero(), s, field))
            }
        }
        Node::Neg(inner) => Ok(-eval(inner, field)?),
        Node::Binary(op, l, r) => {
            let l = eval(l, field)?;
            let r = eval(r, field)?;
            match op {
                '+' => l.checked_add(&r),
                '-' => l.checked_sub(&r),
                '*' => l.checked_mul(&r),
                _ => l.checked_div(&r),
            }
        }
    }
}

/// Parses an exact literal such as `"1/5*sqrt(5) - 1/5"`.
///
/// Square factors are extracted from radicands, so `sqrt(8)` is `2*sqrt(2)`.
/// A purely rational literal is placed in `expected` when one is given.
pub fn parse_exact(text: &str, expected: Option<FieldTag>) -> Result<QuadraticNumber> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let node = parser.expr()?;
    if parser.peek().is_some() {
        return parser.error("trailing input");
    }
    let mut radicands = Vec::new();
    collect_radicands(&node, &mut radicands);
    if radicands.len() > 1 {
        return Err(Error::MixedFields {
            first: radicands[0],
            second: radicands[1],
        });
    }
    let field = match (radicands.first(), expected) {
        (Some(&d), Some(tag)) if d != tag.radicand() => {
            return Err(Error::FieldMismatch {
                left: d,
                right: tag.radicand(),
            })
        }
        (Some(&d), _) => FieldTag::new(d)?,
        (None, Some(tag)) => tag,
        (None, None) => FieldTag::RATIONAL,
    };
    eval(&node, field)
}
