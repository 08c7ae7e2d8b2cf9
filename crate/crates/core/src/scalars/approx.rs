use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::{Field, GaussianRational, Rational};

/// Double precision complex number. Only the witness search uses it.
pub type ApproxComplex = Complex64;

impl Field for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn from_i64(value: i64) -> Self {
        Complex64::new(value as f64, 0.0)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn inverse(&self) -> Option<Self> {
        if Field::is_zero(self) {
            None
        } else {
            Some(self.inv())
        }
    }

    fn pivot_weight(&self) -> f64 {
        self.norm()
    }
}

fn rational_to_f64(value: &Rational) -> f64 {
    // Scale large operands down so the quotient survives the conversion.
    let (num, den) = (value.numer(), value.denom());
    match (num.to_f64(), den.to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let shift = num.bits().max(den.bits()).saturating_sub(1000);
            let n = (num >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (den >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

pub fn to_approx(value: &GaussianRational) -> ApproxComplex {
    Complex64::new(rational_to_f64(value.re()), rational_to_f64(value.im()))
}

/// Best rational approximation of `x` with denominator at most
/// `max_denominator`, via continued-fraction convergents and the final
/// semiconvergent.
pub fn best_rational(x: f64, max_denominator: u64) -> Option<Rational> {
    if !x.is_finite() || x.abs() > 1e15 || max_denominator == 0 {
        return None;
    }
    let max_den = i128::from(max_denominator);
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        let a_int = a as i128;
        let q2 = a_int.checked_mul(q1).and_then(|v| v.checked_add(q0))?;
        if q2 > max_den {
            // largest admissible semiconvergent
            let k = (max_den - q0) / q1;
            let (ps, qs) = (p0 + k * p1, q0 + k * q1);
            let err_conv = (x - p1 as f64 / q1 as f64).abs();
            let err_semi = (x - ps as f64 / qs as f64).abs();
            let (p, q) = if k > 0 && err_semi < err_conv { (ps, qs) } else { (p1, q1) };
            return Some(Rational::new(BigInt::from(p), BigInt::from(q)));
        }
        let p2 = a_int.checked_mul(p1).and_then(|v| v.checked_add(p0))?;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = rest - a;
        if frac.abs() < 1e-300 || (x - p1 as f64 / q1 as f64) == 0.0 {
            break;
        }
        rest = frac.recip();
    }
    Some(Rational::new(BigInt::from(p1), BigInt::from(q1)))
}

/// Rounds `x` to a nearby Gaussian rational whose component denominators do
/// not exceed `max_denominator`, if one lies within `tol` in each component.
pub fn is_near_gaussian_rational(
    x: ApproxComplex,
    max_denominator: u64,
    tol: f64,
) -> Option<GaussianRational> {
    let re = best_rational(x.re, max_denominator)?;
    let im = best_rational(x.im, max_denominator)?;
    let close = |r: &Rational, v: f64| (rational_to_f64(r) - v).abs() <= tol;
    if close(&re, x.re) && close(&im, x.im) {
        Some(GaussianRational::new(re, im))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn converts_exact_values() {
        let half = GaussianRational::from_frac(1, 2);
        assert_eq!(to_approx(&half), Complex64::new(0.5, 0.0));
        let z = GaussianRational::from_parts(-3, 4, 5, 2);
        assert_eq!(to_approx(&z), Complex64::new(-0.75, 2.5));
    }

    #[test]
    fn recovers_nearby_rationals() {
        let got = is_near_gaussian_rational(Complex64::new(0.5000000001, 0.0), 10, 1e-6);
        assert_eq!(got, Some(GaussianRational::from_frac(1, 2)));
        let got = is_near_gaussian_rational(Complex64::new(-1.0 / 3.0, 2.25), 100, 1e-12);
        assert_eq!(got, Some(GaussianRational::from_parts(-1, 3, 9, 4)));
    }

    #[test]
    fn rejects_irrational_values() {
        assert_eq!(is_near_gaussian_rational(Complex64::new(0.7071, 0.0), 10, 1e-9), None);
        let sqrt2 = std::f64::consts::SQRT_2;
        assert_eq!(is_near_gaussian_rational(Complex64::new(sqrt2, 0.0), 1_000_000, 1e-13), None);
    }

    #[test]
    fn best_rational_respects_the_bound() {
        let pi = best_rational(std::f64::consts::PI, 1000).unwrap();
        assert_eq!(pi, Rational::new(355.into(), 113.into()));
        let r = best_rational(-2.5, 10).unwrap();
        assert_eq!(r, Rational::new((-5).into(), 2.into()));
    }

    #[test]
    fn huge_rationals_still_convert() {
        let big = Rational::new(BigInt::from(3) << 2000, BigInt::from(1) << 2000);
        assert_eq!(rational_to_f64(&big), 3.0);
    }
}
