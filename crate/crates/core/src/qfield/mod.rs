//! Exact arithmetic in a real quadratic field `Q(sqrt(d))`.
//!
//! Every point, parameter and interval endpoint handled by the crate is a
//! [`QuadraticNumber`]. Comparisons are decided with rational arithmetic only,
//! so membership in half-open intervals is bit-exact.

mod lattice;
mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use lattice::{lattice_membership, q_independent, LatticeWitness};
pub use parse::parse_exact;

/// The radicand `d` of the ambient field `Q(sqrt(d))`. Always square-free;
/// `d = 1` stands for the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FieldTag(u64);

impl FieldTag {
    pub const RATIONAL: FieldTag = FieldTag(1);

    pub fn new(d: u64) -> Result<Self> {
        if d == 0 || !is_square_free(d) {
            return Err(Error::NotSquareFree(d));
        }
        Ok(FieldTag(d))
    }

    pub fn radicand(self) -> u64 {
        self.0
    }

    pub fn is_rational(self) -> bool {
        self.0 == 1
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 1 {
            write!(f, "Q")
        } else {
            write!(f, "Q(sqrt({}))", self.0)
        }
    }
}

pub(crate) fn is_square_free(d: u64) -> bool {
    let mut p = 2u64;
    while p.saturating_mul(p) <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Splits `n = s^2 * d` with `d` square-free.
pub(crate) fn split_square(n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut d = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= d {
        while d.is_multiple_of(p * p) {
            d /= p * p;
            s *= p;
        }
        p += 1;
    }
    (s, d)
}

/// An element `a + b*sqrt(d)` of a real quadratic field.
///
/// Rationals are stored in lowest terms. A value with `b = 0` is rational and
/// combines with numbers from any field; two irrational values only combine
/// when their radicands agree.
#[derive(Clone, Debug)]
pub struct QuadraticNumber {
    a: BigRational,
    b: BigRational,
    field: FieldTag,
}

impl QuadraticNumber {
    pub fn new(a: BigRational, b: BigRational, field: FieldTag) -> Self {
        if field.is_rational() {
            QuadraticNumber {
                a: a + b,
                b: BigRational::zero(),
                field,
            }
        } else {
            QuadraticNumber { a, b, field }
        }
    }

    pub fn rational(a: BigRational) -> Self {
        QuadraticNumber {
            a,
            b: BigRational::zero(),
            field: FieldTag::RATIONAL,
        }
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    /// `(a_num/a_den) + (b_num/b_den)*sqrt(d)`; panics if `d` is not square-free.
    pub fn from_parts(a: (i64, i64), b: (i64, i64), d: u64) -> Self {
        let field = FieldTag::new(d).expect("square-free radicand");
        Self::new(
            BigRational::new(a.0.into(), a.1.into()),
            BigRational::new(b.0.into(), b.1.into()),
            field,
        )
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Re-tags a value into `field`; fails if it is irrational in another field.
    pub fn in_field(mut self, field: FieldTag) -> Result<Self> {
        if self.is_rational() || self.field == field {
            self.field = field;
            Ok(self)
        } else {
            Err(Error::FieldMismatch {
                left: self.field.0,
                right: field.0,
            })
        }
    }

    fn join(&self, other: &Self) -> Result<FieldTag> {
        if self.field == other.field || other.is_rational() {
            Ok(self.field)
        } else if self.is_rational() {
            Ok(other.field)
        } else {
            Err(Error::FieldMismatch {
                left: self.field.0,
                right: other.field.0,
            })
        }
    }

    fn d(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.field.0))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let field = self.join(other)?;
        Ok(QuadraticNumber {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            field,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let field = self.join(other)?;
        Ok(QuadraticNumber {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            field,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let field = self.join(other)?;
        let d = BigRational::from_integer(BigInt::from(field.0));
        Ok(QuadraticNumber {
            a: &self.a * &other.a + &self.b * &other.b * d,
            b: &self.a * &other.b + &self.b * &other.a,
            field,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let inv = other.recip()?;
        self.checked_mul(&inv)
    }

    /// Field norm `a^2 - d*b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * self.d()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(QuadraticNumber {
            a: &self.a / &n,
            b: -(&self.b / &n),
            field: self.field,
        })
    }

    /// The Galois conjugate `a - b*sqrt(d)`.
    pub fn galois_conjugate(&self) -> Self {
        QuadraticNumber {
            a: self.a.clone(),
            b: -self.b.clone(),
            field: self.field,
        }
    }

    /// Exact sign in {-1, 0, 1}, decided by comparing `a^2` with `d*b^2`.
    pub fn signum(&self) -> i32 {
        let sa = rat_sign(&self.a);
        let sb = rat_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // opposite signs: the term with the larger square wins
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * self.d();
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact comparison; fails only when the operands live in different fields.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        Ok(self.checked_sub(other)?.signum().cmp(&0))
    }

    /// Integer power (non-negative exponent).
    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = QuadraticNumber::one().in_field(self.field).expect("rational");
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Midpoint of `self` and `other`.
    pub fn midpoint(&self, other: &Self) -> Self {
        let half = QuadraticNumber::from_ratio(1, 2);
        &(self + other) * &half
    }

    /// Nearest double, computed from an exact decimal expansion so that
    /// cancellation between the two parts does not lose precision.
    pub fn to_f64(&self) -> f64 {
        self.to_decimal(25).parse().unwrap_or(f64::NAN)
    }

    /// Decimal expansion truncated to `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let d = BigInt::from(self.field.0);
        let mut k: u32 = digits as u32 + 10;
        loop {
            let scale = BigInt::from(10u32).pow(k);
            let a_scaled = floor_rat(&(&self.a * BigRational::from_integer(scale.clone())));
            // sqrt(d) * 10^k, truncated
            let root = (&d * &scale * &scale).sqrt();
            let b_scaled = floor_rat(&(&self.b * BigRational::from_integer(root)));
            let n = a_scaled + b_scaled;
            let text = n.abs().to_string();
            if text.len() >= digits + 5 || k > 4000 {
                return format_scaled(n.sign() == Sign::Minus, &text, k as usize, digits);
            }
            k += 2 * digits as u32;
        }
    }
}

fn rat_sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn floor_rat(r: &BigRational) -> BigInt {
    r.numer().div_floor(r.denom())
}

fn format_scaled(negative: bool, digits_text: &str, scale: usize, sig: usize) -> String {
    let padded = if digits_text.len() <= scale {
        format!("{}{}", "0".repeat(scale + 1 - digits_text.len()), digits_text)
    } else {
        digits_text.to_string()
    };
    let split = padded.len() - scale;
    let (int_part, frac_part) = padded.split_at(split);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(int_part);
    let int_sig = int_part.trim_start_matches('0').len();
    if int_sig >= sig {
        return out;
    }
    let leading_frac_zeros = if int_sig == 0 {
        frac_part.len() - frac_part.trim_start_matches('0').len()
    } else {
        0
    };
    let keep = (sig - int_sig + leading_frac_zeros).min(frac_part.len());
    let frac = frac_part[..keep].trim_end_matches('0');
    if !frac.is_empty() {
        out.push('.');
        out.push_str(frac);
    }
    out
}

impl PartialEq for QuadraticNumber {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.field == other.field)
    }
}

impl Eq for QuadraticNumber {}

impl Hash for QuadraticNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        if !self.b.is_zero() {
            self.b.hash(state);
            self.field.hash(state);
        }
    }
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order on a single field. Comparing irrational numbers from different
/// fields panics; use [`QuadraticNumber::try_cmp`] when that can happen.
impl Ord for QuadraticNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.try_cmp(other)
            .expect("comparison of numbers from different quadratic fields")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a QuadraticNumber> for &'a QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: &'a QuadraticNumber) -> QuadraticNumber {
                self.$checked(rhs).expect(concat!("QuadraticNumber::", stringify!($method)))
            }
        }
        impl $trait<QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: &'a QuadraticNumber) -> QuadraticNumber {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<QuadraticNumber> for &'a QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber {
            a: -self.a.clone(),
            b: -self.b.clone(),
            field: self.field,
        }
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        -&self
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Canonical rendering `a + b*sqrt(d)`, omitting zero parts.
impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write_rational(f, &self.a);
        }
        let negative_b = self.b.is_negative();
        let mag = self.b.abs();
        if !self.a.is_zero() {
            write_rational(f, &self.a)?;
            write!(f, " {} ", if negative_b { "-" } else { "+" })?;
        } else if negative_b {
            write!(f, "-")?;
        }
        if !mag.is_one() {
            write_rational(f, &mag)?;
            write!(f, "*")?;
        }
        write!(f, "sqrt({})", self.field.0)
    }
}

impl FromStr for QuadraticNumber {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_exact(s, None)
    }
}

impl Serialize for QuadraticNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QuadraticNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_exact(&text, None).map_err(serde::de::Error::custom)
    }
}

impl From<i64> for QuadraticNumber {
    fn from(n: i64) -> Self {
        QuadraticNumber::from_integer(n)
    }
}
