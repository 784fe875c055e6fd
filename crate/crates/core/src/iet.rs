//! The symmetric exchange of three intervals with permutation (321).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qfield::{lattice_membership, q_independent, FieldTag, QuadraticNumber};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    A,
    B,
    C,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::A, Letter::B, Letter::C];

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::B => 'B',
            Letter::C => 'C',
        }
    }

    pub fn from_char(c: char) -> Result<Letter> {
        match c {
            'A' => Ok(Letter::A),
            'B' => Ok(Letter::B),
            'C' => Ok(Letter::C),
            other => Err(Error::UnknownLetter(other)),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A finite word over `{A, B, C}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct TernaryWord(Vec<Letter>);

impl TernaryWord {
    pub fn new() -> Self {
        TernaryWord(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        TernaryWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &TernaryWord) -> TernaryWord {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        TernaryWord(letters)
    }

    /// The mirror image `w̄`.
    pub fn reversed(&self) -> TernaryWord {
        TernaryWord(self.0.iter().rev().copied().collect())
    }

    pub fn is_palindrome(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    /// Letter counts `(|w|_A, |w|_B, |w|_C)`.
    pub fn counts(&self) -> [usize; 3] {
        let mut out = [0; 3];
        for l in &self.0 {
            out[*l as usize] += 1;
        }
        out
    }
}

impl fmt::Display for TernaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for TernaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars().map(Letter::from_char).collect::<Result<Vec<_>>>().map(TernaryWord)
    }
}

impl TryFrom<String> for TernaryWord {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<TernaryWord> for String {
    fn from(w: TernaryWord) -> String {
        w.to_string()
    }
}

/// Half-open interval `[gamma, delta)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawInterval")]
pub struct Interval {
    gamma: QuadraticNumber,
    delta: QuadraticNumber,
}

#[derive(Deserialize)]
struct RawInterval {
    gamma: QuadraticNumber,
    delta: QuadraticNumber,
}

impl TryFrom<RawInterval> for Interval {
    type Error = Error;

    fn try_from(raw: RawInterval) -> Result<Self> {
        Interval::new(raw.gamma, raw.delta)
    }
}

impl Interval {
    pub fn new(gamma: QuadraticNumber, delta: QuadraticNumber) -> Result<Self> {
        if gamma.try_cmp(&delta)?.is_lt() {
            Ok(Interval { gamma, delta })
        } else {
            Err(Error::InvalidInterval(format!("[{gamma}, {delta}) is empty")))
        }
    }

    pub fn unit() -> Self {
        Interval {
            gamma: QuadraticNumber::zero(),
            delta: QuadraticNumber::one(),
        }
    }

    pub fn gamma(&self) -> &QuadraticNumber {
        &self.gamma
    }

    pub fn delta(&self) -> &QuadraticNumber {
        &self.delta
    }

    pub fn length(&self) -> QuadraticNumber {
        &self.delta - &self.gamma
    }

    pub fn midpoint(&self) -> QuadraticNumber {
        self.gamma.midpoint(&self.delta)
    }

    pub fn contains(&self, x: &QuadraticNumber) -> bool {
        &self.gamma <= x && x < &self.delta
    }

    /// `[1 - delta, 1 - gamma)`.
    pub fn mirror(&self) -> Interval {
        let one = QuadraticNumber::one();
        Interval {
            gamma: &one - &self.delta,
            delta: &one - &self.gamma,
        }
    }

    pub fn translate(&self, by: &QuadraticNumber) -> Interval {
        Interval {
            gamma: &self.gamma + by,
            delta: &self.delta + by,
        }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let gamma = std::cmp::max(&self.gamma, &other.gamma).clone();
        let delta = std::cmp::min(&self.delta, &other.delta).clone();
        (gamma < delta).then_some(Interval { gamma, delta })
    }

    pub fn is_within_unit(&self) -> bool {
        !self.gamma.is_negative() && self.delta <= QuadraticNumber::one()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.gamma, self.delta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

/// `T(x) = x + c_X` on `J_A = [0, α)`, `J_B = [α, β)`, `J_C = [β, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawIet")]
pub struct ThreeIET {
    alpha: QuadraticNumber,
    beta: QuadraticNumber,
    minimal: bool,
    nondegenerate: bool,
}

#[derive(Deserialize)]
struct RawIet {
    alpha: QuadraticNumber,
    beta: QuadraticNumber,
}

impl TryFrom<RawIet> for ThreeIET {
    type Error = Error;

    fn try_from(raw: RawIet) -> Result<Self> {
        ThreeIET::new(raw.alpha, raw.beta)
    }
}

impl ThreeIET {
    pub fn new(alpha: QuadraticNumber, beta: QuadraticNumber) -> Result<Self> {
        let zero = QuadraticNumber::zero();
        let one = QuadraticNumber::one();
        if !(alpha.try_cmp(&zero)?.is_gt()
            && alpha.try_cmp(&beta)?.is_lt()
            && beta.try_cmp(&one)?.is_lt())
        {
            return Err(Error::OrderViolation);
        }
        let u = &one - &alpha;
        let minimal = q_independent(&u, &beta)?;
        let nondegenerate = minimal && lattice_membership(&u, &beta, &one)?.is_none();
        Ok(ThreeIET {
            alpha,
            beta,
            minimal,
            nondegenerate,
        })
    }

    pub fn alpha(&self) -> &QuadraticNumber {
        &self.alpha
    }

    pub fn beta(&self) -> &QuadraticNumber {
        &self.beta
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.nondegenerate
    }

    pub fn field(&self) -> FieldTag {
        if self.alpha.is_rational() {
            self.beta.field()
        } else {
            self.alpha.field()
        }
    }

    pub fn require_minimal(&self) -> Result<()> {
        if self.minimal {
            Ok(())
        } else {
            Err(Error::NotMinimal)
        }
    }

    /// `J_X`.
    pub fn interval(&self, letter: Letter) -> Interval {
        let (gamma, delta) = match letter {
            Letter::A => (QuadraticNumber::zero(), self.alpha.clone()),
            Letter::B => (self.alpha.clone(), self.beta.clone()),
            Letter::C => (self.beta.clone(), QuadraticNumber::one()),
        };
        Interval { gamma, delta }
    }

    /// `T(J_X)`.
    pub fn image(&self, letter: Letter) -> Interval {
        self.interval(letter).translate(&self.translation(letter))
    }

    /// `c_X`.
    pub fn translation(&self, letter: Letter) -> QuadraticNumber {
        let one = QuadraticNumber::one();
        match letter {
            Letter::A => &one - &self.alpha,
            Letter::B => &(&one - &self.alpha) - &self.beta,
            Letter::C => -&self.beta,
        }
    }

    /// Sum of `c_X` over the letters of `w`, i.e. `T^{|w|}(x) - x` on `[w]`.
    pub fn displacement(&self, w: &TernaryWord) -> QuadraticNumber {
        let [a, b, c] = w.counts();
        let mut out = QuadraticNumber::zero();
        for (letter, count) in Letter::ALL.into_iter().zip([a, b, c]) {
            if count > 0 {
                out = &out + &(&self.translation(letter) * &QuadraticNumber::from(count as i64));
            }
        }
        out
    }

    fn check_domain(&self, x: &QuadraticNumber) -> Result<()> {
        if x.is_negative() || x >= &QuadraticNumber::one() {
            Err(Error::OutOfDomain(x.to_string()))
        } else {
            x.clone().in_field(self.field()).map(|_| ())
        }
    }

    /// The letter `X` with `x ∈ J_X`.
    pub fn letter(&self, x: &QuadraticNumber) -> Result<Letter> {
        self.check_domain(x)?;
        Ok(self.letter_unchecked(x))
    }

    pub(crate) fn letter_unchecked(&self, x: &QuadraticNumber) -> Letter {
        if x < &self.alpha {
            Letter::A
        } else if x < &self.beta {
            Letter::B
        } else {
            Letter::C
        }
    }

    pub(crate) fn forward_unchecked(&self, x: &QuadraticNumber) -> QuadraticNumber {
        x + &self.translation(self.letter_unchecked(x))
    }

    pub(crate) fn backward_unchecked(&self, y: &QuadraticNumber) -> QuadraticNumber {
        // image intervals in order: T(J_C) = [0, 1-β), T(J_B), T(J_A) = [1-α, 1)
        let one = QuadraticNumber::one();
        let letter = if y < &(&one - &self.beta) {
            Letter::C
        } else if y < &(&one - &self.alpha) {
            Letter::B
        } else {
            Letter::A
        };
        y - &self.translation(letter)
    }

    pub fn forward(&self, x: &QuadraticNumber) -> Result<QuadraticNumber> {
        self.check_domain(x)?;
        Ok(self.forward_unchecked(x))
    }

    pub fn backward(&self, y: &QuadraticNumber) -> Result<QuadraticNumber> {
        self.check_domain(y)?;
        Ok(self.backward_unchecked(y))
    }

    pub fn step(&self, x: &QuadraticNumber, direction: Direction) -> Result<QuadraticNumber> {
        match direction {
            Direction::Forward => self.forward(x),
            Direction::Backward => self.backward(x),
        }
    }

    /// `[x, T(x), ..., T^n(x)]`, or the inverse iterates.
    pub fn orbit(
        &self,
        x: &QuadraticNumber,
        n: usize,
        direction: Direction,
    ) -> Result<Vec<QuadraticNumber>> {
        self.check_domain(x)?;
        let mut out = Vec::with_capacity(n + 1);
        out.push(x.clone());
        for _ in 0..n {
            let last = out.last().expect("nonempty");
            let next = match direction {
                Direction::Forward => self.forward_unchecked(last),
                Direction::Backward => self.backward_unchecked(last),
            };
            out.push(next);
        }
        Ok(out)
    }

    /// `u_0 ... u_{n-1}` with `T^k(rho) ∈ J_{u_k}`.
    pub fn code_prefix(&self, rho: &QuadraticNumber, n: usize) -> Result<TernaryWord> {
        self.check_domain(rho)?;
        let mut x = rho.clone();
        let mut word = TernaryWord::new();
        for _ in 0..n {
            let letter = self.letter_unchecked(&x);
            word.push(letter);
            x = &x + &self.translation(letter);
        }
        Ok(word)
    }

    /// The cylinder `[w]`, absent when `w` is not a factor.
    pub fn cylinder(&self, w: &TernaryWord) -> Option<Interval> {
        let letters = w.letters();
        let Some((&first, rest)) = letters.split_first() else {
            return Some(Interval::unit());
        };
        let mut current = self.interval(first);
        let mut shift = QuadraticNumber::zero();
        let mut prev = first;
        for &letter in rest {
            let c = self.translation(prev);
            shift = &shift + &c;
            current = current.translate(&c).intersect(&self.interval(letter))?;
            prev = letter;
        }
        Some(current.translate(&-shift))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadraticNumber {
        s.parse().unwrap()
    }

    fn example() -> ThreeIET {
        ThreeIET::new(q("1/5*sqrt(5) - 1/5"), q("2/3 - sqrt(5)/6")).unwrap()
    }

    fn w(s: &str) -> TernaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn flags() {
        let t = example();
        assert!(t.is_minimal() && t.is_nondegenerate());
        let labbe = ThreeIET::new(q("1/2"), q("(3-sqrt(2))/2")).unwrap();
        assert!(labbe.is_minimal());
        assert!(!labbe.is_nondegenerate());
        let rational = ThreeIET::new(q("1/3"), q("2/3")).unwrap();
        assert!(!rational.is_minimal());
        assert_eq!(ThreeIET::new(q("2/3"), q("1/3")), Err(Error::OrderViolation));
        assert_eq!(ThreeIET::new(q("0"), q("1/3")), Err(Error::OrderViolation));
    }

    #[test]
    fn steps_at_branch_points() {
        let t = example();
        assert_eq!(t.forward(&q("0")).unwrap(), &QuadraticNumber::one() - t.alpha());
        assert_eq!(t.forward(t.beta()).unwrap(), QuadraticNumber::zero());
        assert!(matches!(t.forward(&q("1")), Err(Error::OutOfDomain(_))));
        assert!(matches!(t.backward(&q("-1/2")), Err(Error::OutOfDomain(_))));
        assert!(matches!(t.forward(&q("sqrt(2)/2")), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn images_are_mirrored_letter_intervals() {
        let t = example();
        for l in Letter::ALL {
            assert_eq!(t.image(l), t.interval(l).mirror());
        }
        assert!(t.image(Letter::C).delta() <= t.image(Letter::B).gamma());
        assert!(t.image(Letter::B).delta() <= t.image(Letter::A).gamma());
    }

    #[test]
    fn orbit_reaches_d_hat() {
        let t = example();
        let delta = q("99/100");
        let orbit = t.orbit(&delta, 2, Direction::Backward).unwrap();
        let inside = |x: &QuadraticNumber| x > &q("29/100") && x < &delta;
        assert!(!inside(&orbit[1]));
        assert!(inside(&orbit[2]));
        assert_eq!(t.orbit(&delta, 0, Direction::Forward).unwrap(), vec![delta]);
    }

    #[test]
    fn coding_boundaries() {
        let t = example();
        assert_eq!(t.code_prefix(&q("0"), 1).unwrap(), w("A"));
        assert_eq!(t.code_prefix(t.beta(), 1).unwrap(), w("C"));
    }

    #[test]
    fn coding_of_alpha_for_the_substitution_parameters() {
        let t = ThreeIET::new(q("(2*sqrt(2) - 1)/7"), q("(4*sqrt(2) - 2)/7")).unwrap();
        let u = t.code_prefix(t.alpha(), 32).unwrap();
        assert_eq!(u, w("BBCACBCACBBCACBCACBCACACBCACBCAC"));
    }

    #[test]
    fn cylinders() {
        let t = example();
        assert_eq!(t.cylinder(&w("A")), Some(t.interval(Letter::A)));
        assert_eq!(t.cylinder(&w("AA")), None);
        assert_eq!(t.cylinder(&w("")), Some(Interval::unit()));
    }

    #[test]
    fn serde_roundtrip() {
        let t = example();
        let json = serde_json::to_string(&t).unwrap();
        assert!(json.contains("\"alpha\":\"-1/5 + 1/5*sqrt(5)\""));
        let back: ThreeIET = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        let bad = r#"{"alpha":"1/2","beta":"1/3"}"#;
        assert!(serde_json::from_str::<ThreeIET>(bad).is_err());
        let i: Interval = serde_json::from_str(r#"{"gamma":"1/4","delta":"3/4"}"#).unwrap();
        assert_eq!(i.length(), q("1/2"));
        assert_eq!(serde_json::to_string(&w("CAB")).unwrap(), "\"CAB\"");
    }
}
