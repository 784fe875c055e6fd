//! Sturmian pairs, ternarization, and the parameters of 3iet words fixed by
//! a substitution.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::iet::{Interval, Letter, TernaryWord, ThreeIET};
use crate::induct::{itineraries, omega_rewrite, Rule, DEFAULT_CAP};
use crate::morph::{Morphism, Side};
use crate::qfield::{split_square, FieldTag, QuadraticNumber};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SigmaVariant {
    /// `A ↦ 0, B ↦ 01, C ↦ 1`
    S01,
    /// `A ↦ 0, B ↦ 10, C ↦ 1`
    S10,
}

pub fn sigma(w: &TernaryWord, variant: SigmaVariant) -> String {
    let b = match variant {
        SigmaVariant::S01 => "01",
        SigmaVariant::S10 => "10",
    };
    w.letters()
        .iter()
        .map(|l| match l {
            Letter::A => "0",
            Letter::B => b,
            Letter::C => "1",
        })
        .collect()
}

/// The unique `w` with `u = σ01(w)` and `v = σ10(w)`, if any.
pub fn ternarize_words(u: &str, v: &str) -> Option<TernaryWord> {
    let u = u.as_bytes();
    let v = v.as_bytes();
    if u.len() != v.len() {
        return None;
    }
    let mut out = TernaryWord::new();
    let mut k = 0;
    while k < u.len() {
        match (u[k], v[k]) {
            (b'0', b'0') => out.push(Letter::A),
            (b'1', b'1') => out.push(Letter::C),
            (b'0', b'1') => {
                if u.get(k + 1) != Some(&b'1') || v.get(k + 1) != Some(&b'0') {
                    return None;
                }
                out.push(Letter::B);
                k += 1;
            }
            _ => return None,
        }
        k += 1;
    }
    Some(out)
}

fn binary_parts(m: &Morphism) -> Option<(&str, &str)> {
    (m.alphabet() == ['0', '1']).then(|| (m.images()[0].as_str(), m.images()[1].as_str()))
}

fn ternary_parts(m: &Morphism) -> Option<[TernaryWord; 3]> {
    if m.alphabet() != ['A', 'B', 'C'] {
        return None;
    }
    let words: Vec<TernaryWord> = m.images().iter().map(|w| w.parse().ok()).collect::<Option<_>>()?;
    words.try_into().ok()
}

fn ternary_morphism(images: [&TernaryWord; 3]) -> Morphism {
    Morphism::new(
        ['A', 'B', 'C']
            .into_iter()
            .zip(images)
            .map(|(a, w)| (a, w.to_string()))
            .collect(),
    )
    .expect("nonempty ternary images")
}

/// `η(A) = ter(φ(0), ψ(0))`, `η(B) = ter(φ(01), ψ(10))`, `η(C) = ter(φ(1), ψ(1))`.
pub fn ternarize_morphisms(phi: &Morphism, psi: &Morphism) -> Option<Morphism> {
    let (phi0, phi1) = binary_parts(phi)?;
    let (psi0, psi1) = binary_parts(psi)?;
    let a = ternarize_words(phi0, psi0)?;
    let c = ternarize_words(phi1, psi1)?;
    let b = ternarize_words(&format!("{phi0}{phi1}"), &format!("{psi1}{psi0}"))?;
    if a.is_empty() || b.is_empty() || c.is_empty() {
        return None;
    }
    Some(ternary_morphism([&a, &b, &c]))
}

/// Inverse of [`ternarize_morphisms`].
pub fn split_ternary(eta: &Morphism) -> Option<(Morphism, Morphism)> {
    let [a, b, c] = ternary_parts(eta)?;
    let phi = Morphism::new(vec![
        ('0', sigma(&a, SigmaVariant::S01)),
        ('1', sigma(&c, SigmaVariant::S01)),
    ])
    .ok()?;
    let psi = Morphism::new(vec![
        ('0', sigma(&a, SigmaVariant::S10)),
        ('1', sigma(&c, SigmaVariant::S10)),
    ])
    .ok()?;
    (ternarize_morphisms(&phi, &psi)?.images()[1] == b.to_string()).then_some((phi, psi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtaChoice {
    Xi,
    XiSquared,
}

impl fmt::Display for EtaChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EtaChoice::Xi => "xi",
            EtaChoice::XiSquared => "xi_squared",
        })
    }
}

impl Serialize for EtaChoice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RecoveredParameters {
    pub alpha: QuadraticNumber,
    pub beta: QuadraticNumber,
    pub rho: QuadraticNumber,
    pub lambda: QuadraticNumber,
    pub eta_choice: EtaChoice,
    pub eta: Morphism,
    pub eta_left: Morphism,
    pub conjugacy_word: String,
    pub conjugacy_word_length: usize,
    pub interval: Interval,
    /// `+1` or `-1`: the eigenvalue of `(1, -1, 1)`.
    pub structural_eigenvalue: i64,
}

impl RecoveredParameters {
    pub fn iet(&self) -> ThreeIET {
        ThreeIET::new(self.alpha.clone(), self.beta.clone()).expect("validated on recovery")
    }
}

fn degenerate(reason: impl Into<String>) -> Error {
    Error::Degenerate {
        reason: reason.into(),
        witness: None,
    }
}

fn qn(n: i64) -> QuadraticNumber {
    QuadraticNumber::from(n)
}

/// Null vector of a rank-2 3x3 matrix, from the cross product of two rows.
fn null_vector(rows: &[[QuadraticNumber; 3]; 3]) -> Option<[QuadraticNumber; 3]> {
    let cross = |u: &[QuadraticNumber; 3], v: &[QuadraticNumber; 3]| {
        [
            &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
            &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
            &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
        ]
    };
    [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .map(|(i, j)| cross(&rows[i], &rows[j]))
        .find(|c| c.iter().any(|x| !x.is_zero()))
}

/// Recovers `α`, `β`, the intercept `ρ` and the ratio `λ` of the 3iet word
/// fixed by `xi`.
pub fn recover_parameters(xi: &Morphism) -> Result<RecoveredParameters> {
    if xi.alphabet() != ['A', 'B', 'C'] || !xi.is_endomorphism() {
        return Err(Error::NotEndomorphism);
    }
    if !xi.is_primitive()? {
        return Err(Error::NotPrimitive);
    }
    let m = xi.incidence()?.entries;
    let m: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();

    // (1, -1, 1) must be an eigenvector of the transpose
    let v: [i64; 3] = std::array::from_fn(|j| m[0][j] - m[1][j] + m[2][j]);
    let s = match v {
        [1, -1, 1] => 1,
        [-1, 1, -1] => -1,
        _ => {
            return Err(Error::Degenerate {
                reason: format!(
                    "(1,-1,1) is not an eigenvector of the transposed incidence matrix: image {v:?}"
                ),
                witness: Some(v),
            })
        }
    };

    // characteristic polynomial x^3 + a2 x^2 + a1 x + a0, divided by (x - s)
    let trace = m[0][0] + m[1][1] + m[2][2];
    let minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0]
        + m[1][1] * m[2][2]
        - m[1][2] * m[2][1];
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    let (a2, a1, a0) = (-trace, minors, -det);
    let b1 = a2 + s;
    let b0 = a1 + s * b1;
    debug_assert_eq!(a0 + s * b0, 0);
    let disc = b1 * b1 - 4 * b0;
    if disc <= 0 {
        return Err(Error::FieldEscape(format!(
            "quadratic factor x^2 + {b1}x + {b0} has discriminant {disc}"
        )));
    }
    let (scale, d) = split_square(disc as u64);
    let field = FieldTag::new(d)?;
    let root = |sign: i64| {
        QuadraticNumber::new(
            num_rational::BigRational::new((-b1).into(), 2.into()),
            num_rational::BigRational::new((sign * scale as i64).into(), 2.into()),
            field,
        )
    };
    let theta = root(1);
    let small = root(-1);
    let (eta_choice, lambda) = if small.is_positive() && small < qn(1) {
        (EtaChoice::Xi, small.clone())
    } else if small.is_negative() && small > qn(-1) {
        (EtaChoice::XiSquared, &small * &small)
    } else {
        return Err(degenerate(format!("no eigenvalue of modulus below 1 besides {s}: {small}")));
    };
    let eta = match eta_choice {
        EtaChoice::Xi => xi.clone(),
        EtaChoice::XiSquared => xi.power(2)?,
    };

    // letter frequencies: M^T f = θ f
    let rows: [[QuadraticNumber; 3]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let entry = qn(m[j][i]);
            if i == j {
                &entry - &theta
            } else {
                entry
            }
        })
    });
    let f = null_vector(&rows).ok_or_else(|| degenerate("dominant eigenvalue is not simple"))?;
    let total = &(&f[0] + &f[1]) + &f[2];
    let f: Vec<QuadraticNumber> = f.iter().map(|x| x / &total).collect();
    if f.iter().any(|x| !x.is_positive()) {
        return Err(degenerate("dominant eigenvector is not positive"));
    }
    let alpha = f[0].clone();
    let beta = &f[0] + &f[1];
    let t = ThreeIET::new(alpha.clone(), beta.clone())?;
    if !t.is_nondegenerate() {
        return Err(degenerate("recovered transformation is degenerate"));
    }

    let (eta_left, cert) = eta.extreme_conjugate(Side::Left)?;
    let rho_left = match eta_left.images()[0].chars().next() {
        Some('A') => alpha.clone(),
        Some('B') => beta.clone(),
        _ => return Err(degenerate("leftmost conjugate image of A starts with C")),
    };
    let w: TernaryWord = cert.word.parse()?;
    let one_minus_lambda = &qn(1) - &lambda;
    let rho = &rho_left - &(&t.displacement(&w) / &one_minus_lambda);
    if rho.is_negative() || rho >= qn(1) {
        return Err(degenerate(format!("intercept {rho} outside [0, 1)")));
    }
    let gamma = &rho * &one_minus_lambda;
    let delta = &gamma + &lambda;
    Ok(RecoveredParameters {
        interval: Interval::new(gamma, delta)?,
        alpha,
        beta,
        rho,
        lambda,
        eta_choice,
        eta,
        eta_left,
        conjugacy_word_length: w.len(),
        conjugacy_word: cert.word,
        structural_eigenvalue: s,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InvarianceChecks {
    pub prefix_fixed: bool,
    pub itineraries_match: bool,
}

impl InvarianceChecks {
    pub fn all(&self) -> bool {
        self.prefix_fixed && self.itineraries_match
    }
}

/// Checks that `η` fixes the coding of `ρ` up to length `n`, and that the
/// induction on the recovered interval yields the images of `η` with
/// homothety centre `ρ` and ratio `λ`.
pub fn verify_invariance(params: &RecoveredParameters, n: usize) -> Result<InvarianceChecks> {
    let t = params.iet();
    let prefix = t.code_prefix(&params.rho, n)?.to_string();
    let image = params.eta.apply(&prefix)?;
    let longer = t.code_prefix(&params.rho, image.len())?.to_string();
    let prefix_fixed = image == longer;

    let result = itineraries(&t, &params.interval, DEFAULT_CAP)?;
    let mut words: Vec<String> = result.pieces.iter().map(|p| p.word.to_string()).collect();
    let mut images: Vec<String> = params.eta.images().to_vec();
    words.sort();
    images.sort();
    let homothety_ok = result
        .homothety
        .as_ref()
        .is_some_and(|h| h.center == params.rho && h.lambda == params.lambda);
    Ok(InvarianceChecks {
        prefix_fixed,
        itineraries_match: words == images && homothety_ok,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StructuralRelation {
    /// `η(B) = ω_{AC→B}(η(AC)) = ω_{CA→B}(η(CA))`
    ACtoB,
    /// `η(B) = ω_{B→CA}(η(AC)) = ω_{B→AC}(η(CA))`
    BtoCA,
    None,
}

pub fn structural_relation(eta: &Morphism) -> StructuralRelation {
    let Some([a, b, c]) = ternary_parts(eta) else {
        return StructuralRelation::None;
    };
    let ac = a.concat(&c);
    let ca = c.concat(&a);
    let holds = |r1: Rule, r2: Rule| omega_rewrite(&ac, r1).contains(&b) && omega_rewrite(&ca, r2).contains(&b);
    if holds(Rule::AcToB, Rule::CaToB) {
        StructuralRelation::ACtoB
    } else if holds(Rule::BToCa, Rule::BToAc) {
        StructuralRelation::BtoCA
    } else {
        StructuralRelation::None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HksReport {
    pub xi_in_p_prime: bool,
    pub xi2_in_p_prime: bool,
    pub fixes_nondegenerate: bool,
    pub theorem_witness: bool,
}

/// If `ξ` fixes a non-degenerate 3iet word then `ξ` or `ξ²` is in class P′.
pub fn hks_check(xi: &Morphism) -> Result<HksReport> {
    let xi_in_p_prime = xi.class_p_prime()?.is_some();
    let xi2_in_p_prime = xi.power(2)?.class_p_prime()?.is_some();
    let fixes_nondegenerate = match recover_parameters(xi) {
        Ok(params) => verify_invariance(&params, 200)?.all(),
        Err(_) => false,
    };
    Ok(HksReport {
        xi_in_p_prime,
        xi2_in_p_prime,
        fixes_nondegenerate,
        theorem_witness: !fixes_nondegenerate || xi_in_p_prime || xi2_in_p_prime,
    })
}
