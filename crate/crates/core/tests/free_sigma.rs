mod common;

use std::collections::BTreeMap;

use common::*;
use num_traits::Zero;
use proptest::prelude::*;
use sigmalaw_core::matrix::trial_rng;
use sigmalaw_core::{
    amitsur_expand, ch_polynomial, char_coeffs, eval_nc_poly, eval_sigma_poly, kernel_relations, polarize, sigma_of,
    t_substitute, Assignment, ExactMatrix, NCPoly, SigmaPoly, Slot, Truncation, Word,
};

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn s(i: u32, x: &str) -> SigmaPoly {
    SigmaPoly::sigma(i, x)
}

#[test]
fn degree_two_expansion() {
    let slots = [Slot::param(0, w("x")), Slot::param(1, w("y"))];
    let got = amitsur_expand(2, &slots, Truncation::Unbounded).unwrap();
    let t1 = SigmaPoly::param(0);
    let t2 = SigmaPoly::param(1);
    let want = &(&(&(&t1 * &t1) * &s(2, "x")) + &(&(&t2 * &t2) * &s(2, "y")))
        + &(&(&t1 * &t2) * &(&(&s(1, "x") * &s(1, "y")) - &s(1, "xy")));
    assert_eq!(got, want);
}

#[test]
fn rational_oracle_with_parameters() {
    for n in 1..=3usize {
        let slots: Vec<Slot> = ["a", "b", "ab"]
            .iter()
            .enumerate()
            .map(|(k, x)| Slot::param(k, w(x)))
            .collect();
        let p = amitsur_expand(n, &slots, Truncation::Level(n)).unwrap();
        for trial in 0..20 {
            let mut rng = trial_rng(500 + n as u64, trial);
            let a = random_matrix(&mut rng, n);
            let b = random_matrix(&mut rng, n);
            let ts: Vec<Q> = (0..3).map(|_| random_rational(&mut rng)).collect();
            let combo = a.scale(&ts[0]).add(&b.scale(&ts[1])).add(&a.mul(&b).scale(&ts[2]));
            let mut asg = Assignment::with_matrices(vec![a, b]).unwrap();
            for (k, t) in ts.iter().enumerate() {
                asg.set_param(k, t.clone());
            }
            assert_eq!(eval_sigma_poly(&p, &asg).unwrap(), char_coeffs(&combo)[n - 1]);
        }
    }
}

#[test]
fn polarization_matches_full_expansion() {
    let slots = [Slot::param(0, w("a")), Slot::param(1, w("b")), Slot::param(2, w("ab"))];
    for m in 1..=4usize {
        let full = amitsur_expand(m, &slots, Truncation::Level(3)).unwrap();
        for (exps, coeff) in full.by_params() {
            let mut idx = exps.clone();
            idx.resize(3, 0);
            assert_eq!(
                polarize(m, &slots, Truncation::Level(3), &idx).unwrap(),
                coeff,
                "{idx:?}"
            );
        }
    }
}

#[test]
fn cayley_hamilton_on_sums() {
    for n in 1..=3usize {
        let f = &(&NCPoly::var(0) + &(&NCPoly::var(1) * &NCPoly::var(0))) + &NCPoly::var(1);
        let ch = ch_polynomial(n, &f).unwrap();
        for trial in 0..5 {
            let mut rng = trial_rng(900 + n as u64, trial);
            let asg = Assignment::with_matrices(vec![random_matrix(&mut rng, n), random_matrix(&mut rng, n)]).unwrap();
            assert!(eval_nc_poly(&ch, &asg).unwrap().is_zero());
        }
    }
}

#[test]
fn kernel_relations_vanish_for_n_one_and_three() {
    for n in [1usize, 3] {
        let rels = kernel_relations(n, &[w("a"), w("ab")], &[w("b")]).unwrap();
        assert!(!rels.is_empty());
        for trial in 0..5 {
            let mut rng = trial_rng(1200 + n as u64, trial);
            let asg = Assignment::with_matrices(vec![random_matrix(&mut rng, n), random_matrix(&mut rng, n)]).unwrap();
            for r in &rels {
                assert!(eval_sigma_poly(&r.phi, &asg).unwrap().is_zero());
            }
        }
    }
    let one = kernel_relations(1, &[w("a")], &[w("b")]).unwrap();
    assert_eq!(one.len(), 1);
    let bbd = &s(1, "ab") - &(&s(1, "a") * &s(1, "b"));
    assert!(one[0].phi == bbd || one[0].phi == -&bbd);
    assert!(kernel_relations(2, &[w("a")], &[w("a")]).unwrap().is_empty());
}

#[test]
fn substitution_commutes_with_evaluation() {
    let trunc = Truncation::Level(2);
    let f = &(&NCPoly::var(0) * &NCPoly::var(1)).scale(&s(1, "a")) + &NCPoly::constant(s(2, "ab"));
    let mut images = BTreeMap::new();
    images.insert(0, &NCPoly::var(0) + &(&NCPoly::var(1) * &NCPoly::var(1)));
    images.insert(1, &NCPoly::var(0) * &NCPoly::var(1));
    let g = t_substitute(&f, &images, trunc).unwrap();
    for trial in 0..10 {
        let mut rng = trial_rng(1300, trial);
        let a = random_matrix(&mut rng, 2);
        let b = random_matrix(&mut rng, 2);
        let asg = Assignment::with_matrices(vec![a.clone(), b.clone()]).unwrap();
        let imgs: Vec<ExactMatrix<Q>> = (0..2).map(|v| eval_nc_poly(&images[&v], &asg).unwrap()).collect();
        let moved = Assignment::with_matrices(imgs).unwrap();
        assert_eq!(eval_nc_poly(&g, &asg).unwrap(), eval_nc_poly(&f, &moved).unwrap());
    }
    let mut bad = BTreeMap::new();
    bad.insert(0, &NCPoly::var(0) + &NCPoly::one());
    assert!(t_substitute(&f, &bad, trunc).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn homogeneity(m in 1usize..=4, words in prop::collection::vec(prop::collection::vec(0u32..2, 1..=2), 1..=3)) {
        let slots: Vec<Slot> = words.iter().enumerate().map(|(k, x)| Slot::param(k, Word::new(x.clone()))).collect();
        let p = amitsur_expand(m, &slots, Truncation::Unbounded).unwrap();
        for (exps, coeff) in p.by_params() {
            prop_assert_eq!(exps.iter().sum::<u32>() as usize, m);
            let mut want = vec![0u32; 2];
            for (k, e) in exps.iter().enumerate() {
                for (v, d) in Word::new(words[k].clone()).multidegree().iter().enumerate() {
                    want[v] += d * e;
                }
            }
            for mut md in coeff.term_multidegrees() {
                md.resize(2, 0);
                prop_assert_eq!(&md, &want);
            }
        }
    }

    #[test]
    fn sigma_of_matches_matrices(coeffs in prop::collection::vec(-4i64..=4, 3), i in 1u32..=3, seed in any::<u64>()) {
        let n = 3;
        let words = ["a", "ba", "abb"];
        let mut f = NCPoly::zero();
        for (c, x) in coeffs.iter().zip(words) {
            f = &f + &NCPoly::term(SigmaPoly::integer(*c), w(x));
        }
        let p = sigma_of(i, &f, Truncation::Level(n)).unwrap();
        let mut rng = trial_rng(seed, 0);
        let asg = Assignment::with_matrices(vec![random_matrix(&mut rng, n), random_matrix(&mut rng, n)]).unwrap();
        let fm = eval_nc_poly(&f, &asg).unwrap();
        prop_assert_eq!(eval_sigma_poly(&p, &asg).unwrap(), char_coeffs(&fm)[i as usize - 1].clone());
    }
}
