use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Field, Rational};
use crate::{Error, Result};

/// An element `re + im*i` of the field `Q(i)`.
///
/// Both components are kept in lowest terms by [`Rational`], so derived
/// equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: Rational,
    im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_real(Rational::one())
    }

    pub fn from_real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn from_int(value: i64) -> Self {
        Self::from_real(Rational::from_integer(BigInt::from(value)))
    }

    /// `num/den` as a real Gaussian rational. Panics if `den == 0`.
    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::from_real(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `(re_num/re_den) + (im_num/im_den) i`. Panics on a zero denominator.
    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Self::new(
            Rational::new(BigInt::from(re_num), BigInt::from(re_den)),
            Rational::new(BigInt::from(im_num), BigInt::from(im_den)),
        )
    }

    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|^2 = re^2 + im^2`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let norm = self.norm_sqr();
        Ok(Self::new(&self.re / &norm, -(&self.im / &norm)))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        Field::pow(self, exp)
    }

    /// Largest of the component denominators, used to judge how "simple" a
    /// reconstructed witness is.
    pub fn max_denominator(&self) -> BigInt {
        self.re.denom().clone().max(self.im.denom().clone())
    }
}

/// `C(s, t)` for `0 <= t <= s`, and zero outside that range.
pub fn binomial(s: u32, t: i64) -> GaussianRational {
    if t < 0 || t > i64::from(s) {
        return GaussianRational::zero();
    }
    let t = t as u32;
    let t = t.min(s - t);
    let mut acc = BigInt::one();
    for step in 0..t {
        acc = acc * BigInt::from(s - step) / BigInt::from(step + 1);
    }
    GaussianRational::from_real(Rational::from_integer(acc))
}

impl Field for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }

    fn one() -> Self {
        Self::from_real(Rational::one())
    }

    fn from_i64(value: i64) -> Self {
        Self::from_int(value)
    }

    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }

    fn inverse(&self) -> Option<Self> {
        self.recip().ok()
    }

    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;

    fn add(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;

    fn sub(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;

    fn mul(self, rhs: &'a GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::from_real(&self.re * &rhs.re);
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;

    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Add for GaussianRational {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        GaussianRational::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        GaussianRational::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Neg for GaussianRational {
    type Output = Self;

    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl From<i64> for GaussianRational {
    fn from(value: i64) -> Self {
        Self::from_int(value)
    }
}

impl From<Rational> for GaussianRational {
    fn from(value: Rational) -> Self {
        Self::from_real(value)
    }
}

// Canonical text form: "p/q", "r/s*i", "p/q+r/s*i" or "p/q-r/s*i", with
// integer components written without a denominator.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}*i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}-{}*i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}*i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(text: &str, whole: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("invalid scalar {whole:?}"));
    let digits_ok = |s: &str| {
        let s = s.strip_prefix('-').unwrap_or(s);
        !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
    };
    match text.split_once('/') {
        Some((num, den)) => {
            if !digits_ok(num) || den.is_empty() || !den.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let num: BigInt = num.parse().map_err(|_| bad())?;
            let den: BigInt = den.parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(num, den))
        }
        None => {
            if !digits_ok(text) {
                return Err(bad());
            }
            Ok(Rational::from_integer(text.parse().map_err(|_| bad())?))
        }
    }
}

fn parse_imaginary(text: &str, whole: &str) -> Result<Rational> {
    // `text` is the imaginary term without its trailing "i", e.g. "-3/4*" or "-"
    match text {
        "" | "+" => Ok(Rational::one()),
        "-" => Ok(-Rational::one()),
        _ => {
            let body = text
                .strip_suffix('*')
                .ok_or_else(|| Error::Parse(format!("invalid scalar {whole:?}")))?;
            parse_rational(body.strip_prefix('+').unwrap_or(body), whole)
        }
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || s.chars().any(char::is_whitespace) {
            return Err(Error::Parse(format!("invalid scalar {s:?}")));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Self::from_real(parse_rational(s, s)?));
        };
        // split before the sign that starts the imaginary term
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(idx, _)| idx)
            .last();
        match split {
            Some(idx) => {
                let re = parse_rational(&body[..idx], s)?;
                let im = parse_imaginary(&body[idx..], s)?;
                Ok(Self::new(re, im))
            }
            None => Ok(Self::new(Rational::zero(), parse_imaginary(body, s)?)),
        }
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn product_with_conjugate_is_norm() {
        let z = GaussianRational::from_parts(1, 2, 1, 1);
        assert_eq!(&z * &z.conj(), g("5/4"));
    }

    #[test]
    fn identities() {
        let x = g("3/7-2*i");
        assert_eq!(&x + &GaussianRational::zero(), x);
        assert_eq!(g("2/3").div(&g("2/3")).unwrap(), GaussianRational::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(g("1").div(&GaussianRational::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn powers() {
        assert_eq!(g("2").pow(3), g("8"));
        assert_eq!(g("1+1*i").pow(2), g("2*i"));
        assert_eq!(GaussianRational::zero().pow(0), GaussianRational::one());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), g("6"));
        assert_eq!(binomial(3, 0), g("1"));
        assert_eq!(binomial(2, 5), GaussianRational::zero());
        assert_eq!(binomial(2, -1), GaussianRational::zero());
        assert_eq!(binomial(10, 7), g("120"));
    }

    #[test]
    fn canonical_text() {
        for (input, canonical) in [
            ("1/2", "1/2"),
            ("2/4", "1/2"),
            ("-6/3", "-2"),
            ("0", "0"),
            ("1/2+1/3*i", "1/2+1/3*i"),
            ("1/2-1/3*i", "1/2-1/3*i"),
            ("-3*i", "-3*i"),
            ("i", "1*i"),
            ("-i", "-1*i"),
            ("2+i", "2+1*i"),
            ("0+2*i", "2*i"),
            ("5+0*i", "5"),
        ] {
            assert_eq!(g(input).to_string(), canonical, "{input}");
        }
    }

    #[test]
    fn rejects_malformed_text() {
        for bad in ["", "1/0", "a", "1 /2", "1/2*i*i", "--1", "1/", "/2", "1+2", "1.5"] {
            assert!(bad.parse::<GaussianRational>().is_err(), "{bad:?}");
        }
    }
}
