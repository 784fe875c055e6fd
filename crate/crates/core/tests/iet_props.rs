mod common;

use std::collections::BTreeSet;

use common::{literal_iet, q, random_iet, random_nondegenerate, table_iet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use triet_core::wordstat::{complexity, factors};
use triet_core::{Direction, Interval, Letter, QuadraticNumber, TernaryWord, ThreeIET};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_point(rng: &mut ChaCha8Rng, d: u64) -> QuadraticNumber {
    // rational points plus a few field points in [0, 1)
    loop {
        let x = QuadraticNumber::from_parts(
            (rng.gen_range(0..1000), 1000),
            (rng.gen_range(-30..=30), rng.gen_range(1..=60)),
            d,
        );
        if !x.is_negative() && x < QuadraticNumber::one() {
            return x;
        }
    }
}

#[test]
fn forward_is_a_bijection_on_sampled_points() {
    let mut r = rng(1);
    for _ in 0..5 {
        let d = [2, 3, 5][r.gen_range(0..3)];
        let t = random_iet(&mut r, d);
        let points: BTreeSet<QuadraticNumber> = (0..200).map(|_| random_point(&mut r, d)).collect();
        let images: BTreeSet<QuadraticNumber> = points.iter().map(|x| t.forward(x).unwrap()).collect();
        assert_eq!(points.len(), images.len());
        for (x, y) in points.iter().zip(points.iter().map(|x| t.forward(x).unwrap())) {
            assert!(!y.is_negative() && y < QuadraticNumber::one());
            assert_eq!(&t.backward(&y).unwrap(), x);
        }
    }
}

#[test]
fn inverse_iterates_are_mirrored_forward_iterates() {
    let mut r = rng(2);
    let one = QuadraticNumber::one();
    for _ in 0..20 {
        let d = [2, 3, 5][r.gen_range(0..3)];
        let t = random_iet(&mut r, d);
        let y = random_point(&mut r, d);
        // T^{-1}(y) = 1 - T(1 - y) away from the finitely many discontinuity orbits
        let back = t.orbit(&y, 20, Direction::Backward).unwrap();
        if y.is_zero() {
            continue;
        }
        let fwd = t.orbit(&(&one - &y), 20, Direction::Forward);
        let Ok(fwd) = fwd else { continue };
        for (i, (b, f)) in back.iter().zip(&fwd).enumerate() {
            assert_eq!(b, &(&one - f), "i = {i}, y = {y}");
        }
    }
}

#[test]
fn cylinders_of_reversed_words_are_mirrored_images() {
    for t in [table_iet(), literal_iet()] {
        for n in 1..=8 {
            for (w, cyl) in factors(&t, n).unwrap() {
                let image = cyl.translate(&t.displacement(&w));
                let rev = t.cylinder(&w.reversed()).expect("reversal of a factor is a factor");
                assert_eq!(rev, image.mirror(), "{w}");
                assert_eq!(t.cylinder(&w), Some(cyl));
            }
        }
    }
}

#[test]
fn cylinders_partition_the_unit_interval() {
    let mut r = rng(3);
    let mut instances = vec![table_iet()];
    instances.extend((0..3).map(|k| random_nondegenerate(&mut r, [2, 3, 5][k])));
    for t in &instances {
        for n in 1..=40 {
            let cylinders = factors(t, n).unwrap();
            assert_eq!(cylinders.len(), 2 * n + 1, "n = {n}");
            assert_eq!(complexity(t, n).unwrap(), 2 * n + 1);
            let mut pieces: Vec<&Interval> = cylinders.iter().map(|(_, c)| c).collect();
            pieces.sort_by(|a, b| a.gamma().cmp(b.gamma()));
            assert!(pieces[0].gamma().is_zero());
            assert_eq!(pieces.last().unwrap().delta(), &QuadraticNumber::one());
            for pair in pieces.windows(2) {
                assert_eq!(pair[0].delta(), pair[1].gamma());
            }
        }
    }
}

#[test]
fn images_are_in_reverse_order_and_symmetric() {
    let mut r = rng(4);
    for _ in 0..50 {
        let d = [2, 3, 5][r.gen_range(0..3)];
        let t = random_iet(&mut r, d);
        let img = |l| t.image(l);
        assert!(img(Letter::C).gamma().is_zero());
        assert_eq!(img(Letter::C).delta(), img(Letter::B).gamma());
        assert_eq!(img(Letter::B).delta(), img(Letter::A).gamma());
        assert_eq!(img(Letter::A).delta(), &QuadraticNumber::one());
        for l in Letter::ALL {
            assert_eq!(t.interval(l).translate(&t.translation(l)), img(l));
        }
        // the exchange is its own conjugate by x -> 1 - x
        assert_eq!(t.interval(Letter::A).mirror(), img(Letter::A));
        assert_eq!(t.interval(Letter::C).mirror(), img(Letter::C));
    }
}

#[test]
fn coding_follows_the_orbit() {
    let t = table_iet();
    let rho = q("1/3");
    let word = t.code_prefix(&rho, 50).unwrap();
    let orbit = t.orbit(&rho, 49, Direction::Forward).unwrap();
    for (x, l) in orbit.iter().zip(word.letters()) {
        assert_eq!(t.letter(x).unwrap(), *l);
    }
    let cyl = t.cylinder(&word).unwrap();
    assert!(cyl.contains(&rho));
    assert_eq!("ABC".parse::<TernaryWord>().unwrap().to_string(), "ABC");
}

#[test]
fn rejects_out_of_order_parameters() {
    assert!(ThreeIET::new(q("1/2"), q("1/3")).is_err());
    assert!(ThreeIET::new(q("0"), q("1/3")).is_err());
}
