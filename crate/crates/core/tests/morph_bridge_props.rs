use proptest::prelude::*;
use triet_core::bridge::{
    recover_parameters, sigma, split_ternary, structural_relation, ternarize_morphisms, ternarize_words,
    verify_invariance, SigmaVariant, StructuralRelation,
};
use triet_core::morph::{is_palindrome, reverse, Morphism, Side};
use triet_core::{Direction, QuadraticNumber, TernaryWord};

const ETA: &str = "A=BCACAC,B=BCACBBCAC,C=BCAC";

fn ternary_word(max: usize) -> impl Strategy<Value = String> {
    proptest::collection::vec(prop_oneof![Just('A'), Just('B'), Just('C')], 1..=max)
        .prop_map(|v| v.into_iter().collect())
}

fn ternary_morphism() -> impl Strategy<Value = Morphism> {
    (ternary_word(6), ternary_word(6), ternary_word(6)).prop_map(|(a, b, c)| {
        Morphism::new(vec![('A', a), ('B', b), ('C', c)]).unwrap()
    })
}

fn palindrome(max: usize) -> impl Strategy<Value = String> {
    (ternary_word(max), any::<bool>()).prop_map(|(w, odd)| {
        let r = reverse(&w);
        if odd {
            format!("{w}{}", &r[1..])
        } else {
            format!("{w}{r}")
        }
    })
}

fn class_p_morphism() -> impl Strategy<Value = Morphism> {
    (
        prop_oneof![Just(String::new()), palindrome(3)],
        palindrome(3),
        palindrome(3),
        palindrome(3),
    )
        .prop_map(|(p, a, b, c)| {
            Morphism::new(vec![('A', format!("{p}{a}")), ('B', format!("{p}{b}")), ('C', format!("{p}{c}"))])
                .unwrap()
        })
}

proptest! {
    #[test]
    fn sigma_round_trip(w in ternary_word(40)) {
        let w: TernaryWord = w.parse().unwrap();
        let u = sigma(&w, SigmaVariant::S01);
        let v = sigma(&w, SigmaVariant::S10);
        prop_assert_eq!(ternarize_words(&u, &v), Some(w));
    }

    #[test]
    fn mirror_is_an_involution(phi in ternary_morphism()) {
        prop_assert_eq!(phi.mirror().mirror(), phi.clone());
        prop_assert_eq!(phi.mirror().incidence().unwrap(), phi.incidence().unwrap());
        prop_assert_eq!(phi.mirror().is_primitive().unwrap(), phi.is_primitive().unwrap());
    }

    #[test]
    fn conjugates_share_incidence(phi in ternary_morphism()) {
        for side in [Side::Left, Side::Right] {
            if let Ok((psi, cert)) = phi.extreme_conjugate(side) {
                prop_assert!(cert.holds(&phi, &psi));
                prop_assert_eq!(psi.incidence().unwrap(), phi.incidence().unwrap());
                prop_assert!(psi.conjugate_step(side).is_none());
            }
        }
    }

    #[test]
    fn class_p_lies_in_class_p_prime(phi in class_p_morphism()) {
        let cert = phi.class_p().expect("built in class P");
        prop_assert!(is_palindrome(&cert.p));
        if let Ok(found) = phi.class_p_prime() {
            let c = found.expect("class P is inside class P'");
            prop_assert!(c.holds(&phi, &phi.mirror()) || c.holds(&phi.mirror(), &phi));
        }
    }

    #[test]
    fn split_inverts_ternarize(eta in ternary_morphism()) {
        if let Some((phi, psi)) = split_ternary(&eta) {
            if let Some(back) = ternarize_morphisms(&phi, &psi) {
                prop_assert_eq!(split_ternary(&back), Some((phi.clone(), psi.clone())));
                // amicable pairs have the same incidence matrix
                prop_assert_eq!(phi.incidence().unwrap(), psi.incidence().unwrap());
            }
        }
    }
}

#[test]
fn ternarization_respects_composition() {
    let eta: Morphism = ETA.parse().unwrap();
    let (phi, psi) = split_ternary(&eta).unwrap();
    assert_eq!(ternarize_morphisms(&phi, &psi), Some(eta.clone()));
    let square = ternarize_morphisms(&phi.compose(&phi).unwrap(), &psi.compose(&psi).unwrap()).unwrap();
    assert_eq!(square, eta.compose(&eta).unwrap());
    assert_eq!(phi.incidence().unwrap(), psi.incidence().unwrap());
}

#[test]
fn left_part_is_the_mirror_of_the_right_extreme() {
    let eta: Morphism = ETA.parse().unwrap();
    let p = recover_parameters(&eta).unwrap();
    let (right, _) = eta.extreme_conjugate(Side::Right).unwrap();
    assert_eq!(p.eta_left, right.mirror());
    let bar = recover_parameters(&eta.mirror()).unwrap();
    assert_eq!(bar.rho, &QuadraticNumber::one() - &p.rho);
    assert_eq!(structural_relation(&eta), StructuralRelation::ACtoB);
}

#[test]
fn conjugate_intercepts_move_along_the_orbit() {
    let eta: Morphism = ETA.parse().unwrap();
    let base = recover_parameters(&eta).unwrap();
    let t = base.iet();
    let scale = &QuadraticNumber::one() - &base.lambda;
    let start = &scale * &base.rho;
    let (chain, _) = eta.conjugate_chain().unwrap();
    let at = chain.iter().position(|m| *m == eta).unwrap();
    let mut checked = 0;
    for (k, conj) in chain.iter().enumerate() {
        // the intercept can land on 1 at a chain position; nothing to compare there
        let Ok(p) = recover_parameters(conj) else { continue };
        assert_eq!(p.lambda, base.lambda);
        assert_eq!((p.alpha.clone(), p.beta.clone()), (base.alpha.clone(), base.beta.clone()));
        let (n, dir) = if k <= at { (at - k, Direction::Forward) } else { (k - at, Direction::Backward) };
        let moved = t.orbit(&start, n, dir).unwrap().pop().unwrap();
        assert_eq!(&scale * &p.rho, moved, "chain position {k}");
        assert!(verify_invariance(&p, 300).unwrap().all());
        checked += 1;
    }
    assert!(checked >= chain.len() - 1);
}
