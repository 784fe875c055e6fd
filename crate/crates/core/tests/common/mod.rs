#![allow(dead_code)]

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use triet_core::{Interval, QuadraticNumber, ThreeIET};

pub fn q(s: &str) -> QuadraticNumber {
    s.parse().unwrap()
}

pub fn table_iet() -> ThreeIET {
    ThreeIET::new(q("1/5*sqrt(5) - 1/5"), q("1/3 + sqrt(5)/6")).unwrap()
}

pub fn literal_iet() -> ThreeIET {
    ThreeIET::new(q("1/5*sqrt(5) - 1/5"), q("2/3 - sqrt(5)/6")).unwrap()
}

/// Reference rows: (gamma, delta, ordering, lengths).
pub const TABLE1: [(&str, &str, &str, [usize; 5]); 12] = [
    ("6/25", "99/100", "a<b<d<c", [2, 1, 2, 3, 1]),
    ("29/100", "71/100", "d<c<a<b", [1, 15, 14, 13, 14]),
    ("77/100", "4/5", "b<a<d<c", [88, 89, 88, 109, 21]),
    ("7/25", "3/4", "d<c<b<a", [1, 13, 12, 13, 12]),
    ("1/100", "3/4", "a<d<b<c", [2, 1, 2, 3, 1]),
    ("1/100", "29/100", "d<a<c<b", [2, 14, 13, 11, 12]),
    ("1/4", "99/100", "b<d<a<c", [1, 2, 3, 2, 1]),
    ("71/100", "99/100", "d<b<c<a", [2, 13, 14, 12, 11]),
    ("1/25", "37/50", "a<d<c<b", [2, 1, 4, 2, 3]),
    ("29/100", "99/100", "b<d<c<a", [1, 2, 4, 3, 2]),
    ("1/100", "99/100", "d<a<b<c", [1, 2, 1, 2, 1]),
    ("1/4", "3/4", "d<b<a<c", [1, 12, 13, 12, 11]),
];

fn rational(rng: &mut ChaCha8Rng, height: i64) -> (i64, i64) {
    let den = rng.gen_range(1..=height);
    let num = rng.gen_range(-height..=height);
    (num, den)
}

/// Random minimal 3iet over Q(sqrt(d)) with coefficients of height <= 100.
pub fn random_iet(rng: &mut ChaCha8Rng, d: u64) -> ThreeIET {
    loop {
        let alpha = QuadraticNumber::from_parts(rational(rng, 100), rational(rng, 100), d);
        let beta = QuadraticNumber::from_parts(rational(rng, 100), rational(rng, 100), d);
        if let Ok(t) = ThreeIET::new(alpha, beta) {
            if t.is_minimal() {
                return t;
            }
        }
    }
}

pub fn random_nondegenerate(rng: &mut ChaCha8Rng, d: u64) -> ThreeIET {
    loop {
        let t = random_iet(rng, d);
        if t.is_nondegenerate() {
            return t;
        }
    }
}

/// Random `[γ, δ) ⊂ (0, 1)` with denominators <= 100.
pub fn random_interval(rng: &mut ChaCha8Rng) -> Interval {
    loop {
        let g = rng.gen_range(1..100);
        let d = rng.gen_range(1..100);
        if g < d {
            return Interval::new(
                QuadraticNumber::from_ratio(g, 100),
                QuadraticNumber::from_ratio(d, 100),
            )
            .unwrap();
        }
    }
}

/// Fixed-point numbers `X / 2^bits` carrying an absolute error bound in units
/// of `2^-bits`.
#[derive(Clone, Debug)]
pub struct Fx {
    pub value: BigInt,
    pub err: BigInt,
}

impl Fx {
    pub fn from_exact(x: &QuadraticNumber, bits: u32) -> Fx {
        let scale = BigInt::from(1) << bits;
        let a = x.rational_part();
        let b = x.irrational_part();
        let d = BigInt::from(x.field().radicand());
        let a_fx = (a.numer() * &scale).div_floor(a.denom());
        // floor(sqrt(d) * 2^bits), off by at most one
        let root = (&d * &scale * &scale).sqrt();
        let b_fx = (b.numer() * &root).div_floor(b.denom());
        let b_bound = b.numer().abs().div_ceil(b.denom());
        Fx {
            value: a_fx + b_fx,
            err: BigInt::from(2) + b_bound,
        }
    }

    pub fn add(&self, other: &Fx) -> Fx {
        Fx {
            value: &self.value + &other.value,
            err: &self.err + &other.err,
        }
    }

    pub fn sub(&self, other: &Fx) -> Fx {
        Fx {
            value: &self.value - &other.value,
            err: &self.err + &other.err,
        }
    }

    /// Certified comparison, or `None` when the error bounds overlap.
    pub fn cmp(&self, other: &Fx) -> Option<Ordering> {
        let diff = &self.value - &other.value;
        if diff.abs() > &self.err + &other.err {
            Some(if diff.is_positive() { Ordering::Greater } else { Ordering::Less })
        } else {
            None
        }
    }

    pub fn sign(&self) -> Option<i32> {
        if self.value.abs() > self.err {
            Some(if self.value.is_positive() { 1 } else { -1 })
        } else if self.value.is_zero() && self.err.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn midpoint(&self, other: &Fx) -> Fx {
        Fx {
            value: (&self.value + &other.value) >> 1,
            err: &self.err + &other.err + 1,
        }
    }
}

/// Floating-point re-implementation of the induction, used as an oracle.
/// Returns `None` when some decision is too close to call.
pub struct FloatIet {
    alpha: Fx,
    beta: Fx,
    one: Fx,
    c: [Fx; 3],
}

impl FloatIet {
    pub fn new(t: &ThreeIET, bits: u32) -> Self {
        let alpha = Fx::from_exact(t.alpha(), bits);
        let beta = Fx::from_exact(t.beta(), bits);
        let one = Fx {
            value: BigInt::from(1) << bits,
            err: BigInt::zero(),
        };
        let c = [
            one.sub(&alpha),
            one.sub(&alpha).sub(&beta),
            Fx {
                value: -&beta.value,
                err: beta.err.clone(),
            },
        ];
        FloatIet { alpha, beta, one, c }
    }

    fn letter(&self, x: &Fx) -> Option<usize> {
        if x.cmp(&self.alpha)? == Ordering::Less {
            Some(0)
        } else if x.cmp(&self.beta)? == Ordering::Less {
            Some(1)
        } else {
            Some(2)
        }
    }

    fn backward(&self, y: &Fx) -> Option<Fx> {
        let one_minus_beta = self.one.sub(&self.beta);
        let one_minus_alpha = self.one.sub(&self.alpha);
        let k = if y.cmp(&one_minus_beta)? == Ordering::Less {
            2
        } else if y.cmp(&one_minus_alpha)? == Ordering::Less {
            1
        } else {
            0
        };
        Some(y.sub(&self.c[k]))
    }

    fn inside_open(x: &Fx, g: &Fx, d: &Fx) -> Option<bool> {
        Some(x.cmp(g)? == Ordering::Greater && x.cmp(d)? == Ordering::Less)
    }

    fn inside(x: &Fx, g: &Fx, d: &Fx) -> Option<bool> {
        Some(x.cmp(g)? != Ordering::Less && x.cmp(d)? == Ordering::Less)
    }

    /// Itinerary words of the pieces of `[γ, δ)`, left to right.
    pub fn itineraries(&self, gamma: &Fx, delta: &Fx, cap: usize) -> Option<Vec<String>> {
        let mut cuts = vec![gamma.clone(), delta.clone()];
        for (start, k0) in [(&self.alpha, 0), (&self.beta, 0), (gamma, 1), (delta, 1)] {
            let mut x = start.clone();
            let mut k = 0;
            while k < k0 || !Self::inside_open(&x, gamma, delta)? {
                x = self.backward(&x)?;
                k += 1;
                if k > cap {
                    return None;
                }
            }
            cuts.push(x);
        }
        // sort with certified comparisons, merging values closer than their bounds
        // only when they are exactly equal is impossible to certify, so give up
        let mut sorted: Vec<Fx> = Vec::new();
        for x in cuts {
            let mut pos = sorted.len();
            for (i, y) in sorted.iter().enumerate() {
                match x.cmp(y) {
                    Some(Ordering::Less) => {
                        pos = i;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        if x.value == y.value {
                            pos = usize::MAX;
                            break;
                        }
                        return None;
                    }
                }
            }
            if pos != usize::MAX {
                sorted.insert(pos, x);
            }
        }
        let mut words = Vec::new();
        for pair in sorted.windows(2) {
            let mut x = pair[0].midpoint(&pair[1]);
            let mut word = String::new();
            loop {
                let l = self.letter(&x)?;
                word.push(['A', 'B', 'C'][l]);
                x = x.add(&self.c[l]);
                if Self::inside(&x, gamma, delta)? {
                    break;
                }
                if word.len() > cap {
                    return None;
                }
            }
            words.push(word);
        }
        Some(words)
    }
}
