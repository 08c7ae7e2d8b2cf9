//! Seeded random draws of scalars, parameters and witnesses.

use rand::Rng;

use crate::families::{Family1Params, Family2Params, FamilyParams};
use crate::isomorphism::Witness;
use crate::scalars::GaussianRational;

/// Gaussian rational with numerators in `[-bound, bound]` and denominators
/// in `[1, bound]`.
pub fn gaussian_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> GaussianRational {
    let bound = bound.max(1);
    GaussianRational::from_parts(
        rng.gen_range(-bound..=bound),
        rng.gen_range(1..=bound),
        rng.gen_range(-bound..=bound),
        rng.gen_range(1..=bound),
    )
}

/// Like [`gaussian_rational`] but never zero.
pub fn nonzero_gaussian_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> GaussianRational {
    loop {
        let z = gaussian_rational(rng, bound);
        if !z.is_zero() {
            return z;
        }
    }
}

/// Random parameters of the given family (1 or 2) and `n >= 3`.
pub fn params<R: Rng + ?Sized>(rng: &mut R, family: u8, n: usize, bound: i64) -> FamilyParams {
    let seq: Vec<_> = (3..=n).map(|_| gaussian_rational(rng, bound)).collect();
    let last = gaussian_rational(rng, bound);
    match family {
        1 => Family1Params::new(n, seq, last).expect("valid shape").into(),
        _ => Family2Params::new(n, seq, last).expect("valid shape").into(),
    }
}

/// Random admissible witness for the given family.
pub fn witness<R: Rng + ?Sized>(rng: &mut R, family: u8, bound: i64) -> Witness {
    loop {
        let w = match family {
            1 => Witness::family1(gaussian_rational(rng, bound), gaussian_rational(rng, bound)),
            _ => Witness::family2(
                gaussian_rational(rng, bound),
                gaussian_rational(rng, bound),
                gaussian_rational(rng, bound),
            ),
        };
        if w.check_admissible(family).is_ok() {
            return w;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn draws_are_reproducible_and_admissible() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        assert_eq!(params(&mut a, 2, 6, 3), params(&mut b, 2, 6, 3));
        for _ in 0..50 {
            assert!(witness(&mut a, 1, 2).check_admissible(1).is_ok());
            assert!(witness(&mut a, 2, 2).check_admissible(2).is_ok());
            assert!(!nonzero_gaussian_rational(&mut a, 1).is_zero());
        }
    }
}
