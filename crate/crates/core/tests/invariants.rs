//! Exhaustive cross-module invariants at desk scale.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use penney::automaton::enumerate_omega;
use penney::properties::{all_e_witnesses, phi_inverse, phi_map};
use penney::ratfunc::RatFunc;
use penney::search::{
    argmax_win, property_r_density, symmetry_census, verify_length_gap_bound, verify_longer_by_one,
    DensityOptions,
};
use penney::winprob::{classify_symmetry, is_valid_pair, win_probability, zero_limit_combinatorial};
use penney::words::{OmegaClass, Word};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn complementarity_duality_and_zero_limit_up_to_eight() {
    let words: Vec<Word> = (1..=8).flat_map(Word::all_of_length).collect();
    let tiny = rat(1, 1_000_000_000);
    for v in &words {
        for w in words.iter().filter(|w| is_valid_pair(v, w)) {
            let f = win_probability(v, w).unwrap();
            let g = win_probability(w, v).unwrap();
            assert_eq!(&f + &g, RatFunc::one(), "{v} {w}");
            let flipped = win_probability(&v.bitflip(), &w.bitflip()).unwrap();
            assert_eq!(f.reflect(), flipped, "{v} {w}");
            let limit = f.limit_at_zero().unwrap();
            assert_eq!(zero_limit_combinatorial(v, w).unwrap().to_rational(), limit, "{v} {w}");
            if v.len() <= 6 && w.len() <= 6 {
                let near = f.evaluate(&tiny).unwrap().to_f64().unwrap();
                assert!((near - limit.to_f64().unwrap()).abs() < 1e-6, "{v} {w}");
            }
        }
    }
}

#[test]
fn complementarity_on_random_longer_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 10_000 {
        let (n, m) = (rng.gen_range(9..=20), rng.gen_range(9..=20));
        let v = Word::from_bits(rng.gen_range(0..1u64 << n), n).unwrap();
        let w = Word::from_bits(rng.gen_range(0..1u64 << m), m).unwrap();
        if !is_valid_pair(&v, &w) {
            continue;
        }
        let f = win_probability(&v, &w).unwrap();
        let g = win_probability(&w, &v).unwrap();
        assert_eq!(&f + &g, RatFunc::one(), "{v} {w}");
        checked += 1;
    }
}

#[test]
fn e_witnesses_are_constant_and_phi_round_trips() {
    let mut found = 0;
    for n in 2..=10 {
        for v in Word::all_of_length(n) {
            for split in 1..n {
                let w = v.suffix(n - split).concat(&v.prefix(split)).unwrap();
                if w == v {
                    continue;
                }
                let witnesses = all_e_witnesses(&v, &w).unwrap();
                let Some(wit) = witnesses.first() else { continue };
                found += 1;
                assert!(classify_symmetry(&v, &w).unwrap().constant, "{v} {w}");
                if n > 8 {
                    continue;
                }
                for (z, class) in enumerate_omega(&v, &w, 20).unwrap() {
                    if class == OmegaClass::InOmegaV {
                        let image = phi_map(&z, wit, &v, &w).unwrap();
                        assert_eq!(phi_inverse(&image, wit, &v, &w).unwrap(), z, "{v} {w}");
                    }
                }
            }
        }
    }
    assert!(found > 0);
}

#[test]
fn theorem_checks_pass_at_every_parameter() {
    for n in 2..=12 {
        assert!(verify_longer_by_one(n).unwrap().passed(), "n = {n}");
    }
    for n in 2..=10 {
        for k in 0..=4 {
            assert!(verify_length_gap_bound(n, k).unwrap().passed(), "n = {n}, k = {k}");
        }
    }
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            vec![
                verify_longer_by_one(7).unwrap().canonical_json(),
                verify_length_gap_bound(6, 2).unwrap().canonical_json(),
                argmax_win(6, 1, &rat(1, 4)).unwrap().canonical_json(),
                property_r_density(8, &DensityOptions::default()).unwrap().canonical_json(),
                symmetry_census(6).unwrap().canonical_json(),
            ]
        })
    };
    assert_eq!(run(1), run(3));
}
