//! Factors, return words, bispecials, frequencies and gap/distance statistics.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::iet::{Interval, Letter, TernaryWord, ThreeIET};
use crate::induct::{itineraries, return_time_set, CaseTag};
use crate::qfield::QuadraticNumber;

/// Every factor of length `n` with its cylinder, ordered along `[0, 1)`.
pub fn factors(t: &ThreeIET, n: usize) -> Result<Vec<(TernaryWord, Interval)>> {
    t.require_minimal()?;
    let mut cuts = vec![QuadraticNumber::zero(), QuadraticNumber::one()];
    for start in [t.alpha(), t.beta()] {
        let mut x = start.clone();
        for i in 0..n {
            if i > 0 {
                x = t.backward_unchecked(&x);
            }
            cuts.push(x.clone());
        }
    }
    cuts.sort();
    cuts.dedup();
    let mut out: Vec<(TernaryWord, Interval)> = Vec::new();
    for pair in cuts.windows(2) {
        let piece = Interval::new(pair[0].clone(), pair[1].clone()).expect("sorted distinct");
        let word = t.code_prefix(&piece.midpoint(), n)?;
        match out.last_mut() {
            Some((w, cyl)) if *w == word => {
                *cyl = Interval::new(cyl.gamma().clone(), piece.delta().clone()).expect("adjacent");
            }
            _ => out.push((word, piece)),
        }
    }
    Ok(out)
}

/// Number of factors of length `n`.
pub fn complexity(t: &ThreeIET, n: usize) -> Result<usize> {
    let words: BTreeSet<TernaryWord> = factors(t, n)?.into_iter().map(|(w, _)| w).collect();
    Ok(words.len())
}

/// Cylinder lengths of the factors of length `n`, i.e. their frequencies.
pub fn frequencies(t: &ThreeIET, n: usize) -> Result<Vec<QuadraticNumber>> {
    Ok(factors(t, n)?.into_iter().map(|(_, cyl)| cyl.length()).collect())
}

/// Return words to `w` together with the case realised by the induction
/// on its cylinder (`None` for the empty word).
pub fn return_word_structure(
    t: &ThreeIET,
    w: &TernaryWord,
    cap: usize,
) -> Result<(Vec<TernaryWord>, Option<CaseTag>)> {
    let cylinder = t.cylinder(w).ok_or_else(|| Error::NotAFactor(w.to_string()))?;
    if w.is_empty() {
        return Ok((Letter::ALL.map(|l| TernaryWord::from_letters(vec![l])).to_vec(), None));
    }
    if cylinder.delta() < &QuadraticNumber::one() {
        let result = itineraries(t, &cylinder, cap)?;
        let words = result.pieces.into_iter().map(|p| p.word).collect();
        return Ok((words, Some(result.case_tag)));
    }
    // [w] ends at 1: the reversed cylinder [w̄] is its mirror image shifted,
    // so induce on the mirror interval and reverse
    let result = itineraries(t, &cylinder.mirror(), cap)?;
    let mut words: Vec<TernaryWord> = result.pieces.iter().map(|p| p.word.reversed()).collect();
    words.reverse();
    Ok((words, Some(result.case_tag.mirror())))
}

pub fn return_words(t: &ThreeIET, w: &TernaryWord, cap: usize) -> Result<BTreeSet<TernaryWord>> {
    Ok(return_word_structure(t, w, cap)?.0.into_iter().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BispecialCase {
    PI,
    PII,
    NPIII,
    NPIV,
    NPV,
    NPVI,
}

impl BispecialCase {
    fn from_tag(tag: CaseTag) -> Option<Self> {
        Some(match tag {
            CaseTag::T3i => BispecialCase::PI,
            CaseTag::T3ii => BispecialCase::PII,
            CaseTag::T3iii => BispecialCase::NPIII,
            CaseTag::T3iv => BispecialCase::NPIV,
            CaseTag::T3v => BispecialCase::NPV,
            CaseTag::T3vi => BispecialCase::NPVI,
            _ => return None,
        })
    }

    pub fn is_palindromic_case(self) -> bool {
        matches!(self, BispecialCase::PI | BispecialCase::PII)
    }
}

impl fmt::Display for BispecialCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BispecialCase::PI => "P-i",
            BispecialCase::PII => "P-ii",
            BispecialCase::NPIII => "NP-iii",
            BispecialCase::NPIV => "NP-iv",
            BispecialCase::NPV => "NP-v",
            BispecialCase::NPVI => "NP-vi",
        })
    }
}

impl Serialize for BispecialCase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bispecial {
    pub word: TernaryWord,
    pub palindromic: bool,
    pub case: Option<BispecialCase>,
    #[serde(rename = "returnWords")]
    pub return_words: Vec<TernaryWord>,
}

fn extension_count(t: &ThreeIET, w: &TernaryWord, left: bool) -> usize {
    Letter::ALL
        .into_iter()
        .filter(|&l| {
            let single = TernaryWord::from_letters(vec![l]);
            let extended = if left { single.concat(w) } else { w.concat(&single) };
            t.cylinder(&extended).is_some()
        })
        .count()
}

pub fn is_bispecial(t: &ThreeIET, w: &TernaryWord) -> bool {
    extension_count(t, w, true) >= 2 && extension_count(t, w, false) >= 2
}

/// Bispecial factors of length at most `max_len`, shortest first.
pub fn bispecials(t: &ThreeIET, max_len: usize, cap: usize) -> Result<Vec<Bispecial>> {
    let mut out = Vec::new();
    for n in 0..=max_len {
        for (w, _) in factors(t, n)? {
            if !is_bispecial(t, &w) {
                continue;
            }
            let (return_words, tag) = return_word_structure(t, &w, cap)?;
            out.push(Bispecial {
                palindromic: w.is_palindrome(),
                case: tag.and_then(BispecialCase::from_tag),
                word: w,
                return_words,
            });
        }
    }
    Ok(out)
}

/// Distinct gap or distance values, with two generators when they exist.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub values: Vec<QuadraticNumber>,
    pub basis: Option<(QuadraticNumber, QuadraticNumber)>,
}

impl GapReport {
    /// Basis `(v1, v2)` with every value in `{v1, v2, v1 + v2}`.
    fn three_value(values: Vec<QuadraticNumber>) -> GapReport {
        let basis = match values.as_slice() {
            [v1, v2] => Some((v1.clone(), v2.clone())),
            [v1, v2, v3] if &(v1 + v2) == v3 => Some((v1.clone(), v2.clone())),
            _ => None,
        };
        GapReport { values, basis }
    }

    pub fn within_three(&self) -> bool {
        match self.values.len() {
            0..=2 => true,
            3 => self.basis.is_some(),
            _ => false,
        }
    }
}

fn distinct_sorted(values: impl IntoIterator<Item = QuadraticNumber>) -> Vec<QuadraticNumber> {
    values.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

/// Distances between neighbours of `{T^k(rho) : k < n}`.
pub fn three_distance(t: &ThreeIET, rho: &QuadraticNumber, n: usize) -> Result<GapReport> {
    t.require_minimal()?;
    let mut points = t.orbit(rho, n.saturating_sub(1), crate::iet::Direction::Forward)?;
    points.sort();
    let gaps = points.windows(2).map(|w| &w[1] - &w[0]);
    Ok(GapReport::three_value(distinct_sorted(gaps)))
}

fn rotate(alpha: &QuadraticNumber, x: &QuadraticNumber) -> QuadraticNumber {
    let y = x + alpha;
    if y >= QuadraticNumber::one() {
        &y - &QuadraticNumber::one()
    } else {
        y
    }
}

fn check_rotation(alpha: &QuadraticNumber, rho: &QuadraticNumber) -> Result<()> {
    let one = QuadraticNumber::one();
    if alpha.is_rational() || alpha.is_negative() || alpha >= &one {
        return Err(Error::OutOfDomain(format!("rotation number {alpha}")));
    }
    if rho.is_negative() || rho >= &one {
        return Err(Error::OutOfDomain(rho.to_string()));
    }
    alpha.checked_add(rho).map(|_| ())
}

/// Gaps between consecutive visits `n < count` of `{rho + n*alpha}` to `I`.
pub fn rotation_gaps(
    alpha: &QuadraticNumber,
    rho: &QuadraticNumber,
    i: &Interval,
    count: usize,
) -> Result<GapReport> {
    check_rotation(alpha, rho)?;
    let mut x = rho.clone();
    let mut visits = Vec::new();
    for k in 0..count {
        if i.contains(&x) {
            visits.push(k);
        }
        x = rotate(alpha, &x);
    }
    let gaps = visits.windows(2).map(|w| QuadraticNumber::from((w[1] - w[0]) as i64));
    Ok(GapReport::three_value(distinct_sorted(gaps)))
}

/// Distances between neighbours of `{rho + n*alpha}`, `n < count`, on the circle.
pub fn rotation_distances(alpha: &QuadraticNumber, rho: &QuadraticNumber, count: usize) -> Result<GapReport> {
    check_rotation(alpha, rho)?;
    let mut points = Vec::with_capacity(count);
    let mut x = rho.clone();
    for _ in 0..count {
        points.push(x.clone());
        x = rotate(alpha, &x);
    }
    points.sort();
    let mut gaps: Vec<QuadraticNumber> = points.windows(2).map(|w| &w[1] - &w[0]).collect();
    if let (Some(first), Some(last)) = (points.first(), points.last()) {
        gaps.push(&(&QuadraticNumber::one() - last) + first);
    }
    Ok(GapReport::three_value(distinct_sorted(gaps)))
}

/// Visit gaps of a 3iet orbit to `I`; the basis is the `(r1, r2)` of the
/// return-time set, and every gap lies in one of its five-element patterns.
pub fn iet_gaps(
    t: &ThreeIET,
    rho: &QuadraticNumber,
    i: &Interval,
    count: usize,
    cap: usize,
) -> Result<GapReport> {
    let times = return_time_set(t, i, cap)?;
    let orbit = t.orbit(rho, count.saturating_sub(1), crate::iet::Direction::Forward)?;
    let visits: Vec<usize> = orbit
        .iter()
        .enumerate()
        .filter(|(_, x)| i.contains(x))
        .map(|(k, _)| k)
        .collect();
    let gaps = visits.windows(2).map(|w| QuadraticNumber::from((w[1] - w[0]) as i64));
    Ok(GapReport {
        values: distinct_sorted(gaps),
        basis: Some((
            QuadraticNumber::from(times.r1 as i64),
            QuadraticNumber::from(times.r2 as i64),
        )),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::induct::DEFAULT_CAP;

    fn q(s: &str) -> QuadraticNumber {
        s.parse().unwrap()
    }

    fn w(s: &str) -> TernaryWord {
        s.parse().unwrap()
    }

    fn example() -> ThreeIET {
        ThreeIET::new(q("1/5*sqrt(5) - 1/5"), q("2/3 - sqrt(5)/6")).unwrap()
    }

    #[test]
    fn small_complexities() {
        let t = example();
        assert_eq!(complexity(&t, 1).unwrap(), 3);
        assert_eq!(complexity(&t, 5).unwrap(), 11);
        assert_eq!(complexity(&t, 0).unwrap(), 1);
    }

    #[test]
    fn degenerate_complexity_drops() {
        let t = ThreeIET::new(q("1/2"), q("(3-sqrt(2))/2")).unwrap();
        assert!((1..=12).any(|n| complexity(&t, n).unwrap() < 2 * n + 1));
    }

    #[test]
    fn letter_frequencies() {
        let t = example();
        let mut f = frequencies(&t, 1).unwrap();
        f.sort();
        let mut expected = vec![t.alpha().clone(), t.beta() - t.alpha(), &QuadraticNumber::one() - t.beta()];
        expected.sort();
        assert_eq!(f, expected);
    }

    #[test]
    fn empty_word_returns_letters() {
        let t = example();
        assert_eq!(return_words(&t, &w(""), DEFAULT_CAP).unwrap().len(), 3);
        assert!(matches!(
            return_words(&t, &w("AA"), DEFAULT_CAP),
            Err(Error::NotAFactor(_))
        ));
    }

    #[test]
    fn return_words_of_short_factors() {
        let t = example();
        for n in 1..=6 {
            for (f, _) in factors(&t, n).unwrap() {
                assert_eq!(return_words(&t, &f, DEFAULT_CAP).unwrap().len(), 3, "{f}");
            }
        }
    }

    #[test]
    fn bispecial_cases_follow_palindromicity() {
        let t = example();
        let list = bispecials(&t, 10, DEFAULT_CAP).unwrap();
        assert_eq!(list[0].word, w(""));
        assert!(list[0].case.is_none());
        for b in &list[1..] {
            let case = b.case.expect("classified");
            assert_eq!(case.is_palindromic_case(), b.palindromic, "{}", b.word);
        }
    }

    #[test]
    fn distances() {
        let t = example();
        let r = three_distance(&t, &q("0"), 50).unwrap();
        assert!(r.within_three());
        let golden = q("(sqrt(5)-1)/2");
        let g = rotation_gaps(&golden, &q("0"), &Interval::new(q("0"), q("1/2")).unwrap(), 200).unwrap();
        assert!(g.within_three());
        let all = rotation_gaps(&golden, &q("0"), &Interval::unit(), 20).unwrap();
        assert_eq!(all.values, vec![QuadraticNumber::one()]);
        for n in 2..=40 {
            assert!(rotation_distances(&golden, &q("0"), n).unwrap().within_three());
        }
    }
}
