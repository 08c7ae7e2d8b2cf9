use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use filiform::algebra::{gradation_type, is_filiform, leibniz_defect, GradedType, Vector};
use filiform::families::{extract_params, FamilyParams};
use filiform::isomorphism::{
    compose_witnesses, decide_iso, invariant_certificates, oracle_transform, search_witness, transform_params,
    verify_approximate, SearchConfig, Witness,
};
use filiform::random;
use filiform::scalars::{Field, GaussianRational};
use filiform::transforms::{apply_elementary, pushforward, Elementary};

fn draw(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn build_then_extract_is_identity(seed in any::<u64>(), family in 1u8..=2, n in 3usize..=8) {
        let mut r = draw(seed);
        let p = random::params(&mut r, family, n, 5);
        let t = p.table();
        prop_assert_eq!(extract_params(&t).unwrap(), p);
        prop_assert!(is_filiform(&t));
        let expected = if family == 1 { GradedType::Ngf1 } else { GradedType::Ngf2 };
        prop_assert_eq!(gradation_type(&t), expected);
        prop_assert!(leibniz_defect(&t).is_empty());
    }

    #[test]
    fn first_family_double_right_multiplication(seed in any::<u64>(), n in 3usize..=8) {
        let mut r = draw(seed);
        let t = random::params(&mut r, 1, n, 5).table();
        let (e0, e1) = (Vector::basis(n + 1, 0), Vector::basis(n + 1, 1));
        let left = t.multiply(&t.multiply(&e0, &e1).unwrap(), &e1).unwrap();
        let right = t.multiply(&t.multiply(&e1, &e1).unwrap(), &e1).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn pushforward_is_invertible(seed in any::<u64>(), n in 3usize..=7) {
        let mut r = draw(seed);
        let p = random::params(&mut r, 2, n, 3);
        let t = p.table();
        let d = random::nonzero_gaussian_rational(&mut r, 3);
        let a = random::nonzero_gaussian_rational(&mut r, 3);
        let b = random::gaussian_rational(&mut r, 3);
        let images = apply_elementary(&t, &Elementary::Delta { a, b, d }).unwrap();
        let moved = pushforward(&t, &images).unwrap();
        prop_assert_eq!(pushforward(&moved, &images.inverse()).unwrap(), t);
    }

    #[test]
    fn witnesses_compose_as_a_group_action(seed in any::<u64>(), family in 1u8..=2, n in 3usize..=6) {
        let mut r = draw(seed);
        let p = random::params(&mut r, family, n, 3);
        let w1 = random::witness(&mut r, family, 3);
        let w2 = random::witness(&mut r, family, 3);
        let composed = compose_witnesses(&p, &w1, &w2).unwrap();
        let stepwise = transform_params(&transform_params(&p, &w1).unwrap(), &w2).unwrap();
        prop_assert_eq!(transform_params(&p, &composed).unwrap(), stepwise);
        prop_assert_eq!(transform_params(&p, &Witness::identity(family)).unwrap(), p);
    }

    #[test]
    fn pure_scaling_divides_by_powers(seed in any::<u64>(), n in 3usize..=8) {
        let mut r = draw(seed);
        let p = random::params(&mut r, 1, n, 5);
        let a = random::nonzero_gaussian_rational(&mut r, 4);
        let w = Witness::family1(a.clone(), GaussianRational::zero());
        let (FamilyParams::One(p1), FamilyParams::One(q1)) = (&p, transform_params(&p, &w).unwrap()) else {
            unreachable!()
        };
        for t in 3..=n {
            let expected = p1.alpha(t).clone() * Field::pow(&a, t as u32 - 2).inverse().unwrap();
            prop_assert_eq!(q1.alpha(t), &expected);
        }
        prop_assert_eq!(&q1.theta, &(p1.theta.clone() * Field::pow(&a, n as u32 - 2).inverse().unwrap()));
        prop_assert_eq!(oracle_transform(&p, &w).unwrap(), FamilyParams::One(q1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn decide_iso_is_reflexive_and_symmetric(seed in any::<u64>(), family in 1u8..=2, n in 3usize..=5) {
        let mut r = draw(seed);
        let p = random::params(&mut r, family, n, 3);
        let w = random::witness(&mut r, family, 2);
        let q = transform_params(&p, &w).unwrap();
        let cfg = SearchConfig::default();
        prop_assert!(decide_iso(&p, &p, &cfg).unwrap().is_isomorphic());
        prop_assert!(decide_iso(&p, &q, &cfg).unwrap().is_isomorphic());
        prop_assert!(decide_iso(&q, &p, &cfg).unwrap().is_isomorphic());
    }
}

#[test]
fn certified_pairs_defeat_the_search() {
    let mut r = draw(11);
    let cfg = SearchConfig { starts: 16, ..SearchConfig::default() };
    let mut tried = 0;
    while tried < 50 {
        let family = 1 + (tried % 2) as u8;
        let n = 3 + tried % 4;
        let p = random::params(&mut r, family, n, 3);
        let q = random::params(&mut r, family, n, 3);
        let p = zero_first(p);
        if invariant_certificates(&p, &q).unwrap().is_none() {
            continue;
        }
        tried += 1;
        let out = search_witness(&p, &q, &cfg).unwrap();
        assert!(out.exact.is_none(), "exact witness for certified pair {p:?} / {q:?}");
        if let Some(w) = &out.best {
            if out.best_residual < cfg.tol {
                let residual = verify_approximate(&p, &q, w).unwrap_or(f64::INFINITY);
                assert!(residual >= cfg.tol, "approximate witness for certified pair {p:?} / {q:?}");
            }
        }
    }
}

// Sets alpha_3 (beta_3) to zero, and gamma too for every second-family draw.
fn zero_first(p: FamilyParams) -> FamilyParams {
    match p {
        FamilyParams::One(mut p) => {
            p.alpha[0] = GaussianRational::zero();
            p.into()
        }
        FamilyParams::Two(mut p) => {
            p.beta[0] = GaussianRational::zero();
            p.gamma = GaussianRational::zero();
            p.into()
        }
    }
}
