//! Morphisms of free monoids over small declared alphabets.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A non-erasing morphism, written `"A=ABA,B=C,C=BAC"`.
///
/// The declaration order of the letters is the alphabet order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    alphabet: Vec<char>,
    images: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// For `Side::Left`, `φ(a)·word = word·ψ(a)` for every letter, where `ψ` is
/// the conjugate; for `Side::Right`, `ψ(a)·word = word·φ(a)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyCertificate {
    pub word: String,
    pub side: Side,
}

impl ConjugacyCertificate {
    pub fn holds(&self, phi: &Morphism, psi: &Morphism) -> bool {
        if phi.alphabet != psi.alphabet {
            return false;
        }
        phi.images.iter().zip(&psi.images).all(|(p, s)| match self.side {
            Side::Left => format!("{p}{}", self.word) == format!("{}{s}", self.word),
            Side::Right => format!("{s}{}", self.word) == format!("{}{p}", self.word),
        })
    }
}

/// `φ(a) = p·p_a` with `p` and every `p_a` palindromes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassPCertificate {
    pub p: String,
    pub parts: Vec<(char, String)>,
}

/// `M[i][j] = |φ(a_i)|_{a_j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncidenceMatrix {
    pub letters: Vec<char>,
    pub entries: Vec<Vec<u64>>,
}

impl IncidenceMatrix {
    pub fn transpose(&self) -> IncidenceMatrix {
        let k = self.letters.len();
        let entries = (0..k).map(|i| (0..k).map(|j| self.entries[j][i]).collect()).collect();
        IncidenceMatrix {
            letters: self.letters.clone(),
            entries,
        }
    }
}

pub fn is_palindrome(w: &str) -> bool {
    w.chars().eq(w.chars().rev())
}

pub fn reverse(w: &str) -> String {
    w.chars().rev().collect()
}

impl Morphism {
    pub fn new(pairs: Vec<(char, String)>) -> Result<Self> {
        let mut alphabet = Vec::new();
        let mut images = Vec::new();
        for (letter, image) in pairs {
            if !valid_letter(letter) {
                return Err(Error::MorphismSyntax(format!("invalid letter {letter:?}")));
            }
            if alphabet.contains(&letter) {
                return Err(Error::MorphismSyntax(format!("letter {letter} declared twice")));
            }
            if image.is_empty() {
                return Err(Error::MorphismSyntax(format!("image of {letter} is empty")));
            }
            if let Some(bad) = image.chars().find(|c| !valid_letter(*c)) {
                return Err(Error::MorphismSyntax(format!("invalid letter {bad:?} in image of {letter}")));
            }
            alphabet.push(letter);
            images.push(image);
        }
        if alphabet.is_empty() {
            return Err(Error::MorphismSyntax("no letters".into()));
        }
        Ok(Morphism { alphabet, images })
    }

    pub fn identity(alphabet: &[char]) -> Result<Self> {
        Morphism::new(alphabet.iter().map(|&c| (c, c.to_string())).collect())
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn images(&self) -> &[String] {
        &self.images
    }

    pub fn image(&self, letter: char) -> Result<&str> {
        self.alphabet
            .iter()
            .position(|&c| c == letter)
            .map(|i| self.images[i].as_str())
            .ok_or(Error::UnknownLetter(letter))
    }

    pub fn total_length(&self) -> usize {
        self.images.iter().map(String::len).sum()
    }

    pub fn is_endomorphism(&self) -> bool {
        self.images
            .iter()
            .all(|img| img.chars().all(|c| self.alphabet.contains(&c)))
    }

    pub fn apply(&self, w: &str) -> Result<String> {
        let mut out = String::new();
        for c in w.chars() {
            out.push_str(self.image(c)?);
        }
        Ok(out)
    }

    /// `self ∘ other`: `a ↦ self(other(a))`.
    pub fn compose(&self, other: &Morphism) -> Result<Morphism> {
        let pairs = other
            .alphabet
            .iter()
            .zip(&other.images)
            .map(|(&a, img)| Ok((a, self.apply(img)?)))
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(pairs)
    }

    pub fn power(&self, k: u32) -> Result<Morphism> {
        if !self.is_endomorphism() {
            return Err(Error::NotEndomorphism);
        }
        let mut out = Morphism::identity(&self.alphabet)?;
        for _ in 0..k {
            out = self.compose(&out)?;
        }
        Ok(out)
    }

    pub fn incidence(&self) -> Result<IncidenceMatrix> {
        if !self.is_endomorphism() {
            return Err(Error::NotEndomorphism);
        }
        let entries = self
            .images
            .iter()
            .map(|img| {
                self.alphabet
                    .iter()
                    .map(|&b| img.chars().filter(|&c| c == b).count() as u64)
                    .collect()
            })
            .collect();
        Ok(IncidenceMatrix {
            letters: self.alphabet.clone(),
            entries,
        })
    }

    /// Some power of the incidence matrix is positive; checked at the
    /// Wielandt exponent `(k-1)^2 + 1`.
    pub fn is_primitive(&self) -> Result<bool> {
        let m = self.incidence()?;
        let k = m.letters.len();
        let base: Vec<Vec<bool>> = m
            .entries
            .iter()
            .map(|row| row.iter().map(|&x| x > 0).collect())
            .collect();
        let mut acc = base.clone();
        for _ in 1..((k - 1) * (k - 1) + 1) {
            acc = (0..k)
                .map(|i| (0..k).map(|j| (0..k).any(|l| acc[i][l] && base[l][j])).collect())
                .collect();
        }
        Ok(acc.iter().all(|row| row.iter().all(|&x| x)))
    }

    /// Letterwise reversal of the images.
    pub fn mirror(&self) -> Morphism {
        Morphism {
            alphabet: self.alphabet.clone(),
            images: self.images.iter().map(|w| reverse(w)).collect(),
        }
    }

    /// One conjugation step: on the left, `a ↦ z⁻¹φ(a)z` when all images
    /// start with `z`; on the right, `a ↦ zφ(a)z⁻¹` when all end with `z`.
    pub fn conjugate_step(&self, side: Side) -> Option<(Morphism, char)> {
        let ends: Vec<char> = self
            .images
            .iter()
            .map(|w| match side {
                Side::Left => w.chars().next(),
                Side::Right => w.chars().next_back(),
            })
            .collect::<Option<_>>()?;
        let z = ends[0];
        if ends.iter().any(|&c| c != z) {
            return None;
        }
        let images = self
            .images
            .iter()
            .map(|w| match side {
                Side::Left => format!("{}{z}", &w[z.len_utf8()..]),
                Side::Right => format!("{z}{}", &w[..w.len() - z.len_utf8()]),
            })
            .collect();
        Some((
            Morphism {
                alphabet: self.alphabet.clone(),
                images,
            },
            z,
        ))
    }

    /// The leftmost (or rightmost) conjugate and the word relating it to `self`.
    pub fn extreme_conjugate(&self, side: Side) -> Result<(Morphism, ConjugacyCertificate)> {
        let bound = 1 + self.total_length();
        let mut seen = HashSet::from([self.clone()]);
        let mut current = self.clone();
        let mut word = String::new();
        while let Some((next, z)) = current.conjugate_step(side) {
            if !seen.insert(next.clone()) || seen.len() > bound {
                return Err(Error::PeriodicCycle);
            }
            match side {
                Side::Left => word.push(z),
                Side::Right => word.insert(0, z),
            }
            current = next;
        }
        Ok((current, ConjugacyCertificate { word, side }))
    }

    /// The whole conjugacy chain from the leftmost to the rightmost conjugate,
    /// with the letter moved at each right step.
    pub fn conjugate_chain(&self) -> Result<(Vec<Morphism>, Vec<char>)> {
        let (leftmost, _) = self.extreme_conjugate(Side::Left)?;
        let bound = 1 + self.total_length();
        let mut chain = vec![leftmost];
        let mut moved = Vec::new();
        while let Some((next, z)) = chain.last().expect("nonempty").conjugate_step(Side::Right) {
            if chain.contains(&next) || chain.len() > bound {
                return Err(Error::PeriodicCycle);
            }
            chain.push(next);
            moved.push(z);
        }
        Ok((chain, moved))
    }

    /// `φ = p·p_a` with palindromes `p`, `p_a`.
    pub fn class_p(&self) -> Option<ClassPCertificate> {
        let shortest = self.images.iter().map(String::len).min()?;
        let first = &self.images[0];
        (0..=shortest).find_map(|len| {
            let p = &first[..len];
            if !is_palindrome(p) || !self.images.iter().all(|w| w.starts_with(p)) {
                return None;
            }
            let parts: Vec<(char, String)> = self
                .alphabet
                .iter()
                .zip(&self.images)
                .map(|(&a, w)| (a, w[len..].to_string()))
                .collect();
            parts
                .iter()
                .all(|(_, part)| is_palindrome(part))
                .then(|| ClassPCertificate { p: p.to_string(), parts })
        })
    }

    /// Decides whether `φ` is conjugate to its mirror, i.e. lies in class P′.
    pub fn class_p_prime(&self) -> Result<Option<ConjugacyCertificate>> {
        let (chain, moved) = self.conjugate_chain()?;
        let mirror = self.mirror();
        let Some(i) = chain.iter().position(|m| m == self) else {
            return Ok(None);
        };
        let Some(j) = chain.iter().position(|m| *m == mirror) else {
            return Ok(None);
        };
        // chain[k+1](a)·z_k = z_k·chain[k](a)
        let (lo, hi, side) = if j >= i { (i, j, Side::Right) } else { (j, i, Side::Left) };
        let word: String = moved[lo..hi].iter().rev().collect();
        Ok(Some(ConjugacyCertificate { word, side }))
    }

    /// First `n` letters of `lim φ^k(seed)`.
    pub fn fixed_point_prefix(&self, seed: char, n: usize) -> Result<String> {
        let image = self.image(seed)?;
        if !image.starts_with(seed) || image.chars().count() < 2 {
            return Err(Error::NotASubstitutionSeed(seed));
        }
        let mut word: Vec<char> = vec![seed];
        while word.len() < n {
            let mut next = Vec::with_capacity(n);
            for &c in &word {
                next.extend(self.image(c)?.chars());
                if next.len() >= n {
                    break;
                }
            }
            word = next;
        }
        word.truncate(n);
        Ok(word.into_iter().collect())
    }
}

fn valid_letter(c: char) -> bool {
    c.is_ascii_uppercase() || c.is_ascii_digit()
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, img)) in self.alphabet.iter().zip(&self.images).enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}={img}")?;
        }
        Ok(())
    }
}

impl FromStr for Morphism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let pairs = s
            .split(',')
            .map(|entry| {
                let (lhs, rhs) = entry
                    .split_once('=')
                    .ok_or_else(|| Error::MorphismSyntax(format!("missing '=' in {entry:?}")))?;
                let mut chars = lhs.trim().chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => Ok((c, rhs.trim().to_string())),
                    _ => Err(Error::MorphismSyntax(format!("expected one letter before '=' in {entry:?}"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(pairs)
    }
}

impl Serialize for Morphism {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Morphism {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Morphism {
        s.parse().unwrap()
    }

    const ETA: &str = "A=BCACAC,B=BCACBBCAC,C=BCAC";
    const ETA_L: &str = "A=ACBCAC,B=BBCACBCAC,C=BCAC";
    const LABBE: &str = "A=ABA,B=C,C=BAC";

    #[test]
    fn parse_and_render() {
        assert_eq!(m(LABBE).to_string(), LABBE);
        assert!(matches!("A=,B=C".parse::<Morphism>(), Err(Error::MorphismSyntax(_))));
        assert!(matches!("A=B,A=C".parse::<Morphism>(), Err(Error::MorphismSyntax(_))));
        assert!(matches!("AB=C".parse::<Morphism>(), Err(Error::MorphismSyntax(_))));
        assert!(matches!("A=b".parse::<Morphism>(), Err(Error::MorphismSyntax(_))));
    }

    #[test]
    fn application() {
        assert_eq!(m(LABBE).apply("A").unwrap(), "ABA");
        assert_eq!(m("A=0,B=01,C=1").apply("ABC").unwrap(), "0011");
        assert_eq!(Morphism::identity(&['A', 'B']).unwrap().apply("ABBA").unwrap(), "ABBA");
        assert_eq!(m(LABBE).apply("D"), Err(Error::UnknownLetter('D')));
    }

    #[test]
    fn incidence_and_primitivity() {
        let eta = m(ETA);
        assert_eq!(eta.incidence().unwrap().entries, vec![vec![2, 1, 3], vec![2, 3, 4], vec![1, 1, 2]]);
        assert!(m(LABBE).is_primitive().unwrap());
        assert!(!m("A=A,B=B").is_primitive().unwrap());
        assert_eq!(m("A=0,B=1").incidence(), Err(Error::NotEndomorphism));
    }

    #[test]
    fn conjugation() {
        let eta = m(ETA);
        let (step, z) = eta.conjugate_step(Side::Left).unwrap();
        assert_eq!(z, 'B');
        assert_eq!(step.conjugate_step(Side::Right).unwrap().0, eta);
        assert!(m("A=AB,B=BA").conjugate_step(Side::Left).is_none());

        let (left, cert) = eta.extreme_conjugate(Side::Left).unwrap();
        assert_eq!(left, m(ETA_L));
        assert_eq!(cert.word, "BCAC");
        assert!(cert.holds(&eta, &left));
        assert_eq!(left.incidence(), eta.incidence());

        let (same, cert) = left.extreme_conjugate(Side::Left).unwrap();
        assert_eq!(same, left);
        assert!(cert.word.is_empty());

        let (right, cert) = eta.extreme_conjugate(Side::Right).unwrap();
        assert!(cert.holds(&eta, &right));
        assert_eq!(right.mirror(), left);
    }

    #[test]
    fn periodic_chain() {
        assert_eq!(m("A=AB,B=AB").extreme_conjugate(Side::Left), Err(Error::PeriodicCycle));
    }

    #[test]
    fn mirrors() {
        assert_eq!(m(ETA).mirror(), m("A=CACACB,B=CACBBCACB,C=CACB"));
        assert_eq!(m(LABBE).mirror().mirror(), m(LABBE));
        assert_eq!(m("A=ABA,B=B").mirror(), m("A=ABA,B=B"));
    }

    #[test]
    fn class_p_decisions() {
        assert_eq!(m(LABBE).class_p_prime().unwrap(), None);
        let eta = m(ETA);
        let cert = eta.class_p_prime().unwrap().expect("eta is conjugate to its mirror");
        assert!(cert.holds(&eta, &eta.mirror()));
        let one = m("A=A").class_p().unwrap();
        assert_eq!(one.p, "");
        let pal = m("A=ABA,B=AB");
        assert!(pal.class_p().is_none() || pal.class_p_prime().unwrap().is_some());
        let c = m("A=ABAB,B=AC").class_p().unwrap();
        assert_eq!(c.p, "A");
        assert_eq!(c.parts, vec![('A', "BAB".to_string()), ('B', "C".to_string())]);
        assert!(m("A=ABAB,B=AC").class_p_prime().unwrap().is_some());
    }

    #[test]
    fn fixed_points() {
        let eta_l = m(ETA_L);
        assert_eq!(
            eta_l.fixed_point_prefix('A', 33).unwrap(),
            "ACBCACBCACBBCACBCACBCACACBCACBCAC"
        );
        assert_eq!(
            eta_l.fixed_point_prefix('B', 32).unwrap(),
            "BBCACBCACBBCACBCACBCACACBCACBCAC"
        );
        assert_eq!(eta_l.fixed_point_prefix('C', 5), Err(Error::NotASubstitutionSeed('C')));
        assert_eq!(m("A=A,B=B").fixed_point_prefix('A', 3), Err(Error::NotASubstitutionSeed('A')));
    }

    #[test]
    fn powers() {
        let labbe = m(LABBE);
        assert_eq!(labbe.power(0).unwrap(), Morphism::identity(&['A', 'B', 'C']).unwrap());
        assert_eq!(labbe.power(2).unwrap().apply("B").unwrap(), "BAC");
    }
}
