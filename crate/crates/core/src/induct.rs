//! First return to a subinterval `I = [γ, δ)`.
//!
//! The backward orbits of `α`, `β`, `γ`, `δ` first land in `(γ, δ)` at the
//! Keane points `â`, `b̂`, `ĉ`, `d̂`. Between consecutive Keane points the
//! `I`-itinerary is constant, there are at most five of them and their
//! lengths take at most five values built from two integers `r1`, `r2`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::iet::{Interval, Letter, TernaryWord, ThreeIET};
use crate::qfield::QuadraticNumber;

pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KeanePoints {
    pub a_hat: QuadraticNumber,
    pub b_hat: QuadraticNumber,
    pub c_hat: QuadraticNumber,
    pub d_hat: QuadraticNumber,
    pub k_alpha: usize,
    pub k_beta: usize,
    pub k_gamma: usize,
    pub k_delta: usize,
}

impl KeanePoints {
    fn labelled(&self) -> [(char, &QuadraticNumber); 4] {
        [
            ('a', &self.a_hat),
            ('b', &self.b_hat),
            ('c', &self.c_hat),
            ('d', &self.d_hat),
        ]
    }

    /// Labels grouped by equal value, in increasing order.
    pub fn groups(&self) -> Vec<Vec<char>> {
        let mut labelled = self.labelled().to_vec();
        labelled.sort_by(|x, y| x.1.cmp(y.1).then(x.0.cmp(&y.0)));
        let mut out: Vec<(Vec<char>, &QuadraticNumber)> = Vec::new();
        for (label, value) in labelled {
            match out.last_mut() {
                Some((labels, v)) if *v == value => labels.push(label),
                _ => out.push((vec![label], value)),
            }
        }
        out.into_iter().map(|(labels, _)| labels).collect()
    }

    /// Ordering such as `"b<d<c<a"` or `"b=d<a=c"`.
    pub fn ordering(&self) -> String {
        self.groups()
            .iter()
            .map(|g| g.iter().map(char::to_string).collect::<Vec<_>>().join("="))
            .collect::<Vec<_>>()
            .join("<")
    }

    fn labels_at(&self, x: &QuadraticNumber) -> Vec<char> {
        self.labelled()
            .into_iter()
            .filter(|(_, v)| *v == x)
            .map(|(l, _)| l)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    X,
    XI,
    XII,
    T3i,
    T3ii,
    T3iii,
    T3iv,
    T3v,
    T3vi,
    Four,
}

impl CaseTag {
    const NAMES: [(CaseTag, &'static str); 19] = [
        (CaseTag::I, "i"),
        (CaseTag::II, "ii"),
        (CaseTag::III, "iii"),
        (CaseTag::IV, "iv"),
        (CaseTag::V, "v"),
        (CaseTag::VI, "vi"),
        (CaseTag::VII, "vii"),
        (CaseTag::VIII, "viii"),
        (CaseTag::IX, "ix"),
        (CaseTag::X, "x"),
        (CaseTag::XI, "xi"),
        (CaseTag::XII, "xii"),
        (CaseTag::T3i, "T3-i"),
        (CaseTag::T3ii, "T3-ii"),
        (CaseTag::T3iii, "T3-iii"),
        (CaseTag::T3iv, "T3-iv"),
        (CaseTag::T3v, "T3-v"),
        (CaseTag::T3vi, "T3-vi"),
        (CaseTag::Four, "FOUR"),
    ];

    pub fn name(self) -> &'static str {
        Self::NAMES.iter().find(|(t, _)| *t == self).expect("named").1
    }

    fn from_groups(groups: &[Vec<char>]) -> CaseTag {
        if groups.len() == 4 {
            let order: String = groups.iter().map(|g| g[0]).collect();
            return match order.as_str() {
                "abdc" => CaseTag::I,
                "dcab" => CaseTag::II,
                "badc" => CaseTag::III,
                "dcba" => CaseTag::IV,
                "adbc" => CaseTag::V,
                "dacb" => CaseTag::VI,
                "bdac" => CaseTag::VII,
                "dbca" => CaseTag::VIII,
                "adcb" => CaseTag::IX,
                "bdca" => CaseTag::X,
                "dabc" => CaseTag::XI,
                "dbac" => CaseTag::XII,
                _ => CaseTag::Four,
            };
        }
        let key: Vec<String> = groups.iter().map(|g| g.iter().collect()).collect();
        let key: Vec<&str> = key.iter().map(String::as_str).collect();
        match key.as_slice() {
            ["bd", "ac"] => CaseTag::T3i,
            ["ad", "bc"] => CaseTag::T3ii,
            ["b", "acd"] => CaseTag::T3iii,
            ["bcd", "a"] => CaseTag::T3iv,
            ["acd", "b"] => CaseTag::T3v,
            ["a", "bcd"] => CaseTag::T3vi,
            _ => CaseTag::Four,
        }
    }

    /// The palindromic counterpart under `I ↦ Ī`.
    /// The case realised on the mirror interval `[1-δ, 1-γ)`.
    pub fn mirror(self) -> CaseTag {
        use CaseTag::*;
        match self {
            V => VII,
            VII => V,
            VI => VIII,
            VIII => VI,
            IX => X,
            X => IX,
            T3iii => T3vi,
            T3vi => T3iii,
            T3iv => T3v,
            T3v => T3iv,
            other => other,
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::NAMES
            .iter()
            .find(|(_, n)| *n == s)
            .map(|(t, _)| *t)
            .ok_or_else(|| Error::Syntax {
                position: 0,
                message: format!("unknown case tag {s:?}"),
            })
    }
}

impl Serialize for CaseTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Which five-element set contains the return times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Pattern {
    /// `{r1, r1+1, r2, r1+r2, r1+r2+1}`
    P1,
    /// `{r1, r1+1, r2, r2+1, r1+r2+1}`
    P2,
}

impl Pattern {
    pub fn values(self, r1: usize, r2: usize) -> [usize; 5] {
        match self {
            Pattern::P1 => [r1, r1 + 1, r2, r1 + r2, r1 + r2 + 1],
            Pattern::P2 => [r1, r1 + 1, r2, r2 + 1, r1 + r2 + 1],
        }
    }

    /// First pattern (P1 before P2) containing every length.
    pub fn detect(lengths: &BTreeSet<usize>, r1: usize, r2: usize) -> Option<Pattern> {
        [Pattern::P1, Pattern::P2]
            .into_iter()
            .find(|p| lengths.iter().all(|l| p.values(r1, r2).contains(l)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub interval: Interval,
    pub word: TernaryWord,
}

impl Piece {
    pub fn length(&self) -> usize {
        self.word.len()
    }
}

impl Serialize for Piece {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            gamma: &'a QuadraticNumber,
            delta: &'a QuadraticNumber,
            word: &'a TernaryWord,
            length: usize,
        }
        Repr {
            gamma: self.interval.gamma(),
            delta: self.interval.delta(),
            word: &self.word,
            length: self.length(),
        }
        .serialize(s)
    }
}

/// `Φ(x) = λx + μ` conjugating `T` with the induced map; `center` is its fixed point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Homothety {
    pub lambda: QuadraticNumber,
    pub mu: QuadraticNumber,
    pub center: QuadraticNumber,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InductionResult {
    pub interval: Interval,
    pub keane: KeanePoints,
    pub pieces: Vec<Piece>,
    pub case_tag: CaseTag,
    pub r1: usize,
    pub r2: usize,
    pub pattern: Option<Pattern>,
    pub homothety: Option<Homothety>,
}

impl InductionResult {
    pub fn words(&self) -> Vec<&TernaryWord> {
        self.pieces.iter().map(|p| &p.word).collect()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.pieces.iter().map(Piece::length).collect()
    }

    pub fn length_set(&self) -> BTreeSet<usize> {
        self.pieces.iter().map(Piece::length).collect()
    }

    /// `R1 = R(d̂ - ε)`.
    pub fn r1_word(&self) -> &TernaryWord {
        let piece = self
            .pieces
            .iter()
            .find(|p| p.interval.delta() == &self.keane.d_hat)
            .expect("d_hat is interior");
        &piece.word
    }

    /// `R2 = R(ĉ + ε)`.
    pub fn r2_word(&self) -> &TernaryWord {
        let piece = self
            .pieces
            .iter()
            .find(|p| p.interval.gamma() == &self.keane.c_hat)
            .expect("c_hat is interior");
        &piece.word
    }
}

fn check_target(t: &ThreeIET, i: &Interval) -> Result<()> {
    t.require_minimal()?;
    let one = QuadraticNumber::one();
    for end in [i.gamma(), i.delta()] {
        end.clone().in_field(t.field())?;
    }
    if i.gamma().is_negative() || i.delta() >= &one {
        return Err(Error::InvalidInterval(format!(
            "{i} must satisfy 0 <= gamma < delta < 1"
        )));
    }
    Ok(())
}

fn cap_exceeded(cap: usize, state: String) -> Error {
    Error::CapExceeded { cap, state }
}

pub fn keane_points(t: &ThreeIET, i: &Interval, cap: usize) -> Result<KeanePoints> {
    check_target(t, i)?;
    let inside = |x: &QuadraticNumber| i.gamma() < x && x < i.delta();
    let search = |name: &str, start: &QuadraticNumber, k0: usize| -> Result<(QuadraticNumber, usize)> {
        let mut x = start.clone();
        let mut k = 0;
        while k < k0 || !inside(&x) {
            if k >= cap {
                return Err(cap_exceeded(
                    cap,
                    format!("searching the backward orbit of {name}, last point {x}"),
                ));
            }
            x = t.backward_unchecked(&x);
            k += 1;
        }
        Ok((x, k))
    };
    let (a_hat, k_alpha) = search("alpha", t.alpha(), 0)?;
    let (b_hat, k_beta) = search("beta", t.beta(), 0)?;
    let (c_hat, k_gamma) = search("gamma", i.gamma(), 1)?;
    let (d_hat, k_delta) = search("delta", i.delta(), 1)?;
    Ok(KeanePoints {
        a_hat,
        b_hat,
        c_hat,
        d_hat,
        k_alpha,
        k_beta,
        k_gamma,
        k_delta,
    })
}

/// The `I`-itinerary of `x ∈ I`.
pub fn itinerary(t: &ThreeIET, i: &Interval, x: &QuadraticNumber, cap: usize) -> Result<TernaryWord> {
    let mut word = TernaryWord::new();
    let mut y = x.clone();
    loop {
        let letter = t.letter_unchecked(&y);
        word.push(letter);
        y = &y + &t.translation(letter);
        if i.contains(&y) {
            return Ok(word);
        }
        if word.len() >= cap {
            return Err(cap_exceeded(cap, format!("following the orbit of {x} into {i}")));
        }
    }
}

fn split_at_points(i: &Interval, cuts: &[&QuadraticNumber]) -> Vec<Interval> {
    let mut points: Vec<QuadraticNumber> = vec![i.gamma().clone(), i.delta().clone()];
    points.extend(cuts.iter().map(|x| (*x).clone()));
    points.sort();
    points.dedup();
    points
        .windows(2)
        .map(|w| Interval::new(w[0].clone(), w[1].clone()).expect("sorted distinct"))
        .collect()
}

pub fn itineraries(t: &ThreeIET, i: &Interval, cap: usize) -> Result<InductionResult> {
    let keane = keane_points(t, i, cap)?;
    let cuts = [&keane.a_hat, &keane.b_hat, &keane.c_hat, &keane.d_hat];
    let pieces = split_at_points(i, &cuts)
        .into_iter()
        .map(|interval| {
            let word = itinerary(t, i, &interval.midpoint(), cap)?;
            Ok(Piece { interval, word })
        })
        .collect::<Result<Vec<_>>>()?;
    let case_tag = CaseTag::from_groups(&keane.groups());
    let mut result = InductionResult {
        interval: i.clone(),
        keane,
        pieces,
        case_tag,
        r1: 0,
        r2: 0,
        pattern: None,
        homothety: None,
    };
    let (r1, r2) = decompose(&result);
    result.r1 = r1;
    result.r2 = r2;
    let lengths = result.length_set();
    result.pattern = Pattern::detect(&lengths, result.r1, result.r2);
    result.homothety = homothety(t, &induced_from(t, &result));
    Ok(result)
}

fn decompose(result: &InductionResult) -> (usize, usize) {
    let t1 = result.r1_word().len();
    let t2 = result.r2_word().len();
    let shifts = match case_table(result.case_tag) {
        Some((_, s1, s2)) => vec![(s1, s2)],
        None => vec![(0, 0), (1, 0), (0, 1), (1, 1)],
    };
    // Cases iv, vi and viii only fit a pattern with r1 and r2 exchanged, and a
    // shift can leave r1 = 0; fall back to any positive pair in those cases.
    let lengths = result.length_set();
    let max = *lengths.iter().max().expect("nonempty");
    let from_case = shifts
        .into_iter()
        .filter(|(s1, s2)| t1 > *s1 && t2 > *s2)
        .map(|(s1, s2)| (t1 - s1, t2 - s2))
        .flat_map(|(r1, r2)| [(r1, r2), (r2, r1)]);
    let all = (1..=max).flat_map(|r1| (1..=max).map(move |r2| (r1, r2)));
    from_case
        .chain(all)
        .find(|&(r1, r2)| Pattern::detect(&lengths, r1, r2).is_some())
        .unwrap_or((t1, t2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    AcToB,
    CaToB,
    BToAc,
    BToCa,
}

impl Rule {
    fn parts(self) -> (&'static [Letter], &'static [Letter]) {
        use Letter::*;
        match self {
            Rule::AcToB => (&[A, C], &[B]),
            Rule::CaToB => (&[C, A], &[B]),
            Rule::BToAc => (&[B], &[A, C]),
            Rule::BToCa => (&[B], &[C, A]),
        }
    }

    pub fn inverse(self) -> Rule {
        match self {
            Rule::AcToB => Rule::BToAc,
            Rule::CaToB => Rule::BToCa,
            Rule::BToAc => Rule::AcToB,
            Rule::BToCa => Rule::CaToB,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (from, to) = self.parts();
        let show = |w: &[Letter]| w.iter().map(|l| l.as_char()).collect::<String>();
        write!(f, "{}->{}", show(from), show(to))
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('→', "->").as_str() {
            "AC->B" => Ok(Rule::AcToB),
            "CA->B" => Ok(Rule::CaToB),
            "B->AC" => Ok(Rule::BToAc),
            "B->CA" => Ok(Rule::BToCa),
            _ => Err(Error::Syntax {
                position: 0,
                message: format!("unknown rewriting rule {s:?}"),
            }),
        }
    }
}

/// `ω_{X→Y}(w)`: every word obtained by rewriting one occurrence of `X` into `Y`.
pub fn omega_rewrite(w: &TernaryWord, rule: Rule) -> BTreeSet<TernaryWord> {
    let (from, to) = rule.parts();
    let letters = w.letters();
    let mut out = BTreeSet::new();
    if letters.len() < from.len() {
        return out;
    }
    for start in 0..=letters.len() - from.len() {
        if &letters[start..start + from.len()] == from {
            let mut v = letters[..start].to_vec();
            v.extend_from_slice(to);
            v.extend_from_slice(&letters[start + from.len()..]);
            out.insert(TernaryWord::from_letters(v));
        }
    }
    out
}

#[derive(Clone)]
enum Expr {
    R1,
    R2,
    Cat(Box<Expr>, Box<Expr>),
    Omega(Rule, Box<Expr>),
    Meet(Box<Expr>, Box<Expr>),
}

fn cat(a: Expr, b: Expr) -> Expr {
    Expr::Cat(Box::new(a), Box::new(b))
}

fn om(rule: Rule, e: Expr) -> Expr {
    Expr::Omega(rule, Box::new(e))
}

impl Expr {
    fn eval(&self, r1: &TernaryWord, r2: &TernaryWord) -> BTreeSet<TernaryWord> {
        match self {
            Expr::R1 => BTreeSet::from([r1.clone()]),
            Expr::R2 => BTreeSet::from([r2.clone()]),
            Expr::Cat(a, b) => {
                let right = b.eval(r1, r2);
                a.eval(r1, r2)
                    .iter()
                    .flat_map(|x| right.iter().map(move |y| x.concat(y)))
                    .collect()
            }
            Expr::Omega(rule, e) => e
                .eval(r1, r2)
                .iter()
                .flat_map(|w| omega_rewrite(w, *rule))
                .collect(),
            Expr::Meet(a, b) => {
                let right = b.eval(r1, r2);
                a.eval(r1, r2).intersection(&right).cloned().collect()
            }
        }
    }
}

/// Piece expressions from left to right, and the shifts `t1 - r1`, `t2 - r2`.
fn case_table(tag: CaseTag) -> Option<(Vec<Expr>, usize, usize)> {
    use CaseTag::*;
    use Expr::{R1, R2};
    use Rule::*;
    let r1r2 = || cat(R1, R2);
    let r2r1 = || cat(R2, R1);
    Some(match tag {
        I => (vec![om(BToAc, om(CaToB, R1)), om(CaToB, R1), R1, r1r2(), R2], 1, 0),
        II => (vec![R1, r2r1(), R2, om(AcToB, R2), om(BToCa, om(AcToB, R2))], 0, 1),
        III => (vec![om(CaToB, om(BToAc, R1)), om(BToAc, R1), R1, r1r2(), R2], 0, 0),
        IV => (vec![R1, r2r1(), R2, om(BToCa, R2), om(AcToB, om(BToCa, R2))], 0, 0),
        V => (vec![om(BToAc, R1), R1, r1r2(), cat(R2, om(BToAc, R1)), R2], 0, 0),
        VI => (vec![R1, cat(R1, om(BToCa, R2)), r2r1(), R2, om(BToCa, R2)], 0, 0),
        VII => (vec![om(CaToB, R1), R1, r1r2(), cat(R2, om(CaToB, R1)), R2], 1, 0),
        VIII => (vec![R1, cat(R1, om(AcToB, R2)), r2r1(), R2, om(AcToB, R2)], 0, 1),
        IX => (vec![om(BToAc, R1), R1, cat(R1, om(BToCa, R2)), R2, om(BToCa, R2)], 0, 0),
        X => (vec![om(CaToB, R1), R1, cat(R1, om(AcToB, R2)), R2, om(AcToB, R2)], 1, 1),
        XI => (vec![R1, r1r2(), om(CaToB, r2r1()), r2r1(), R2], 1, 0),
        XII => (vec![R1, r1r2(), om(BToAc, r2r1()), r2r1(), R2], 0, 0),
        T3i => (
            vec![
                R1,
                Expr::Meet(Box::new(om(BToCa, r1r2())), Box::new(om(BToAc, r2r1()))),
                R2,
            ],
            0,
            0,
        ),
        T3ii => (
            vec![
                R1,
                Expr::Meet(Box::new(om(AcToB, r1r2())), Box::new(om(CaToB, r2r1()))),
                R2,
            ],
            1,
            0,
        ),
        T3iii => (vec![om(CaToB, R1), R1, R2], 1, 0),
        T3iv => (vec![R1, R2, om(AcToB, R2)], 0, 1),
        T3v => (vec![R1, R2, om(BToCa, R2)], 0, 0),
        T3vi => (vec![om(BToAc, R1), R1, R2], 0, 0),
        Four => return None,
    })
}

/// Checks every piece against the relations predicted by the case tag.
pub fn verify_case_relations(result: &InductionResult) -> bool {
    let lengths_ok = result.pieces.len() <= 5
        && result.pattern.is_some()
        && result.pattern.is_some_and(|p| {
            Pattern::detect(&result.length_set(), result.r1, result.r2) == Some(p)
        });
    if !lengths_ok {
        return false;
    }
    let r1 = result.r1_word();
    let r2 = result.r2_word();
    match case_table(result.case_tag) {
        Some((exprs, _, _)) => {
            exprs.len() == result.pieces.len()
                && exprs
                    .iter()
                    .zip(&result.pieces)
                    .all(|(e, p)| e.eval(r1, r2).contains(&p.word))
        }
        None => boundary_relations_hold(result),
    }
}

/// Relations across a shared boundary, read from the right piece to the left
/// piece: `â` rewrites `B→AC`, `b̂` rewrites `CA→B`, `ĉ` appends the first
/// piece's word, `d̂` strips the last piece's word.
fn boundary_relations_hold(result: &InductionResult) -> bool {
    let first = &result.pieces[0].word;
    let last = &result.pieces[result.pieces.len() - 1].word;
    let apply = |label: char, words: BTreeSet<TernaryWord>| -> BTreeSet<TernaryWord> {
        words
            .iter()
            .flat_map(|w| -> Vec<TernaryWord> {
                match label {
                    'a' => omega_rewrite(w, Rule::BToAc).into_iter().collect(),
                    'b' => omega_rewrite(w, Rule::CaToB).into_iter().collect(),
                    'c' => vec![w.concat(first)],
                    _ => {
                        let l = w.letters();
                        let s = last.letters();
                        if l.len() >= s.len() && &l[l.len() - s.len()..] == s {
                            vec![TernaryWord::from_letters(l[..l.len() - s.len()].to_vec())]
                        } else {
                            vec![]
                        }
                    }
                }
            })
            .collect()
    };
    result.pieces.windows(2).all(|pair| {
        let labels = result.keane.labels_at(pair[1].interval.gamma());
        permutations(&labels).into_iter().any(|order| {
            let mut words = BTreeSet::from([pair[1].word.clone()]);
            for label in order {
                words = apply(label, words);
            }
            words.contains(&pair[0].word)
        })
    })
}

fn permutations(items: &[char]) -> Vec<Vec<char>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (idx, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(idx);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// A piece of the first return map and its translation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExchangePiece {
    pub domain: Interval,
    pub translation: QuadraticNumber,
}

/// The first return map `T_I` as an exchange of two or three intervals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InducedMap {
    pub interval: Interval,
    pub pieces: Vec<ExchangePiece>,
    /// Image order of the pieces, e.g. `[3, 2, 1]`.
    pub permutation: Vec<usize>,
}

impl InducedMap {
    pub fn discontinuities(&self) -> Vec<&QuadraticNumber> {
        self.pieces[1..].iter().map(|p| p.domain.gamma()).collect()
    }

    pub fn apply(&self, x: &QuadraticNumber) -> Option<QuadraticNumber> {
        self.pieces
            .iter()
            .find(|p| p.domain.contains(x))
            .map(|p| x + &p.translation)
    }

    /// True iff the images tile the interval without overlap.
    pub fn is_bijective(&self) -> bool {
        let mut images: Vec<Interval> = self
            .pieces
            .iter()
            .map(|p| p.domain.translate(&p.translation))
            .collect();
        images.sort_by(|x, y| x.gamma().cmp(y.gamma()));
        images.first().map(|i| i.gamma()) == Some(self.interval.gamma())
            && images.last().map(|i| i.delta()) == Some(self.interval.delta())
            && images.windows(2).all(|w| w[0].delta() == w[1].gamma())
    }
}

fn image_order(pieces: &[ExchangePiece]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pieces.len()).collect();
    idx.sort_by(|&x, &y| {
        let ix = pieces[x].domain.gamma() + &pieces[x].translation;
        let iy = pieces[y].domain.gamma() + &pieces[y].translation;
        ix.cmp(&iy)
    });
    // permutation[k] = position of piece k's image, 1-based
    let mut perm = vec![0; pieces.len()];
    for (pos, &k) in idx.iter().enumerate() {
        perm[k] = pos + 1;
    }
    perm
}

fn induced_from(t: &ThreeIET, result: &InductionResult) -> InducedMap {
    let k = &result.keane;
    let cuts: Vec<&QuadraticNumber> = vec![&k.d_hat, &k.c_hat];
    let pieces: Vec<ExchangePiece> = split_at_points(&result.interval, &cuts)
        .into_iter()
        .map(|domain| {
            let piece = result
                .pieces
                .iter()
                .find(|p| p.interval.gamma() == domain.gamma())
                .expect("induced pieces are unions of itinerary pieces");
            ExchangePiece {
                translation: t.displacement(&piece.word),
                domain,
            }
        })
        .collect();
    let permutation = image_order(&pieces);
    InducedMap {
        interval: result.interval.clone(),
        pieces,
        permutation,
    }
}

pub fn induced_map(t: &ThreeIET, i: &Interval, cap: usize) -> Result<InducedMap> {
    if i == &Interval::unit() {
        t.require_minimal()?;
        let pieces: Vec<ExchangePiece> = Letter::ALL
            .into_iter()
            .map(|l| ExchangePiece {
                domain: t.interval(l),
                translation: t.translation(l),
            })
            .collect();
        return Ok(InducedMap {
            interval: i.clone(),
            permutation: image_order(&pieces),
            pieces,
        });
    }
    let result = itineraries(t, i, cap)?;
    Ok(induced_from(t, &result))
}

fn homothety(t: &ThreeIET, map: &InducedMap) -> Option<Homothety> {
    if map.permutation != [3, 2, 1] {
        return None;
    }
    let lambda = map.interval.length();
    let proportional = Letter::ALL
        .into_iter()
        .zip(&map.pieces)
        .all(|(l, p)| p.domain.length() == &lambda * &t.interval(l).length());
    if !proportional {
        return None;
    }
    let mu = map.interval.gamma().clone();
    let center = &mu / &(&QuadraticNumber::one() - &lambda);
    Some(Homothety { lambda, mu, center })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReturnTimes {
    pub lengths: BTreeSet<usize>,
    pub r1: usize,
    pub r2: usize,
    pub pattern: Option<Pattern>,
}

pub fn return_time_set(t: &ThreeIET, i: &Interval, cap: usize) -> Result<ReturnTimes> {
    let result = itineraries(t, i, cap)?;
    Ok(ReturnTimes {
        lengths: result.length_set(),
        r1: result.r1,
        r2: result.r2,
        pattern: result.pattern,
    })
}

/// Compares the induction on `Ī = [1-δ, 1-γ)` with the reversed itineraries of `I`.
pub fn mirror_check(t: &ThreeIET, i: &Interval, cap: usize) -> Result<bool> {
    let direct = itineraries(t, i, cap)?;
    let mirrored = itineraries(t, &i.mirror(), cap)?;
    Ok(mirror_matches(t, &direct, &mirrored))
}

pub(crate) fn mirror_matches(t: &ThreeIET, direct: &InductionResult, mirrored: &InductionResult) -> bool {
    let mut expected: Vec<(Interval, TernaryWord)> = direct
        .pieces
        .iter()
        .map(|p| {
            let image = p.interval.translate(&t.displacement(&p.word));
            (image.mirror(), p.word.reversed())
        })
        .collect();
    let mut actual: Vec<(Interval, TernaryWord)> = mirrored
        .pieces
        .iter()
        .map(|p| (p.interval.clone(), p.word.clone()))
        .collect();
    expected.sort_by(|x, y| x.0.gamma().cmp(y.0.gamma()));
    actual.sort_by(|x, y| x.0.gamma().cmp(y.0.gamma()));
    expected == actual
}
