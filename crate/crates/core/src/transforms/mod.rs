//! Right multiplication operators, adapted changes of basis and their
//! factorization into elementary transformations.

mod closed_form;

use serde::{Deserialize, Serialize};

use crate::algebra::linalg::Matrix;
use crate::algebra::{StructureTable, Vector};
use crate::families::{extract_params, FamilyParams};
use crate::scalars::{Field, GaussianRational};
use crate::{Error, Result};

pub use closed_form::{
    chain_sum, right_power_closed_form, transformed_basis_closed_form1, transformed_basis_closed_form2,
};
pub(crate) use closed_form::binomial_in;

/// `R_{e_1}^m(x) = [[...[x, e_1], ...], e_1]`, by direct multiplication.
pub fn right_power_e1<S: Field>(t: &StructureTable<S>, x: &Vector<S>, m: usize) -> Result<Vector<S>> {
    right_power(t, x, 1, m)
}

/// `R_{e_0}^m(x)`.
pub fn right_power_e0<S: Field>(t: &StructureTable<S>, x: &Vector<S>, m: usize) -> Result<Vector<S>> {
    right_power(t, x, 0, m)
}

fn right_power<S: Field>(t: &StructureTable<S>, x: &Vector<S>, by: usize, m: usize) -> Result<Vector<S>> {
    let e = Vector::basis(t.dim(), by);
    let mut current = x.clone();
    for _ in 0..m {
        if current.is_zero() {
            break;
        }
        current = t.multiply(&current, &e)?;
    }
    Ok(current)
}

/// Checks `R_{e_1}^m(e_p) = R_{e_0}^{p-1}(R_{e_1}^m(e_0))` on an adapted table.
///
/// Valid inputs are `2 <= p <= n` for either family, and additionally
/// `p = 1` with `m >= 2` for the first family.
pub fn shift_identity_check<S: Field>(t: &StructureTable<S>, m: usize, p: usize) -> Result<bool> {
    let params = extract_params(t)?;
    let n = t.n();
    let valid = match params {
        FamilyParams::One(_) => (2..=n).contains(&p) || (p == 1 && m >= 2),
        FamilyParams::Two(_) => (2..=n).contains(&p),
    };
    if !valid {
        return Err(Error::OutOfRange(format!("index p = {p} with m = {m} is outside the valid range")));
    }
    let dim = t.dim();
    let left = right_power_e1(t, &Vector::basis(dim, p), m)?;
    let inner = right_power_e1(t, &Vector::basis(dim, 0), m)?;
    let right = right_power_e0(t, &inner, p - 1)?;
    Ok(left == right)
}

/// Checks `[[e_s, e_1], e_0] = [e_{s+1}, e_1]` for `2 <= s <= n`, reading
/// `e_{n+1}` as zero.
pub fn successor_identity_check<S: Field>(t: &StructureTable<S>, s: usize) -> Result<bool> {
    extract_params(t)?;
    let n = t.n();
    if !(2..=n).contains(&s) {
        return Err(Error::OutOfRange(format!("index s = {s} must satisfy 2 <= s <= {n}")));
    }
    let dim = t.dim();
    let (e0, e1) = (Vector::basis(dim, 0), Vector::basis(dim, 1));
    let left = t.multiply(&t.multiply(&Vector::basis(dim, s), &e1)?, &e0)?;
    let right = if s < n { t.multiply(&Vector::basis(dim, s + 1), &e1)? } else { Vector::zero(dim) };
    Ok(left == right)
}

/// Images `f(e_0), ..., f(e_n)` of a change of basis, in old coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisImages<S = GaussianRational> {
    images: Vec<Vector<S>>,
}

impl<S: Field> BasisImages<S> {
    /// Fails with [`Error::SingularBasis`] unless the images form a basis.
    pub fn new(images: Vec<Vector<S>>) -> Result<Self> {
        let dim = images.len();
        if let Some(bad) = images.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.dim() });
        }
        Matrix::from_columns(&images).inverse()?;
        Ok(Self { images })
    }

    pub fn identity(dim: usize) -> Self {
        Self { images: (0..dim).map(|i| Vector::basis(dim, i)).collect() }
    }

    pub fn images(&self) -> &[Vector<S>] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Vector<S> {
        &self.images[i]
    }

    pub fn matrix(&self) -> Matrix<S> {
        Matrix::from_columns(&self.images)
    }

    /// The basis obtained by applying `next`, written relative to the basis
    /// `self`, on top of `self`.
    pub fn then(&self, next: &Self) -> Self {
        Self { images: self.matrix().mul(&next.matrix()).columns() }
    }

    /// The inverse change of basis.
    pub fn inverse(&self) -> Self {
        let inv = self.matrix().inverse().expect("checked at construction");
        Self { images: inv.columns() }
    }
}

/// Structure constants of `t` in the basis `b`.
pub fn pushforward<S: Field>(t: &StructureTable<S>, b: &BasisImages<S>) -> Result<StructureTable<S>> {
    t.change_basis(b.images())
}

/// Builds `f(e_2) = [f(e_0), f(e_0)]`, `f(e_{i+1}) = [f(e_i), f(e_0)]`.
fn complete_images(t: &StructureTable, f0: Vector, f1: Vector) -> Result<BasisImages> {
    let n = t.n();
    let mut images = Vec::with_capacity(n + 1);
    let mut current = t.multiply(&f0, &f0)?;
    images.push(f0.clone());
    images.push(f1);
    for _ in 2..n {
        let next = t.multiply(&current, &f0)?;
        images.push(current);
        current = next;
    }
    images.push(current);
    BasisImages::new(images)
}

fn vector_of(dim: usize, terms: &[(usize, GaussianRational)]) -> Vector {
    let mut coords = vec![GaussianRational::zero(); dim];
    for (i, c) in terms {
        coords[*i] = coords[*i].clone() + c.clone();
    }
    Vector::from_coords(coords)
}

/// The five types of elementary adapted transformations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum Elementary {
    /// `f(e_0) = e_0 + a e_k`, `f(e_1) = e_1 + b e_k`; first family.
    Tau { a: GaussianRational, b: GaussianRational, k: usize },
    /// `f(e_0) = a e_0 + b e_1`, `f(e_1) = (a+b) e_1 + b(theta - alpha_n) e_{n-1}`; first family.
    Vartheta { a: GaussianRational, b: GaussianRational },
    /// `f(e_0) = e_0`, `f(e_1) = e_1 + b e_n`; second family.
    Sigma { b: GaussianRational },
    /// `f(e_0) = e_0 + a e_k`, `f(e_1) = e_1`; second family.
    Eta { a: GaussianRational, k: usize },
    /// `f(e_0) = a e_0 + b e_1`, `f(e_1) = d e_1 - (b d gamma / a) e_{n-1}`; second family.
    Delta { a: GaussianRational, b: GaussianRational, d: GaussianRational },
}

impl Elementary {
    fn family(&self) -> u8 {
        match self {
            Self::Tau { .. } | Self::Vartheta { .. } => 1,
            Self::Sigma { .. } | Self::Eta { .. } | Self::Delta { .. } => 2,
        }
    }
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if !(2..=n).contains(&k) {
        return Err(Error::InvalidTransform(format!("index k = {k} must satisfy 2 <= k <= {n}")));
    }
    Ok(())
}

fn require_family(params: &FamilyParams, family: u8) -> Result<()> {
    if params.family() != family {
        return Err(Error::NotAdapted(format!(
            "transformation needs a family {family} table, found family {}",
            params.family()
        )));
    }
    Ok(())
}

/// Images of an elementary transformation of the adapted table `t`.
pub fn apply_elementary(t: &StructureTable, e: &Elementary) -> Result<BasisImages> {
    let params = extract_params(t)?;
    require_family(&params, e.family())?;
    let n = t.n();
    let dim = t.dim();
    let (f0, f1) = match (e, &params) {
        (Elementary::Tau { a, b, k }, _) => {
            check_k(*k, n)?;
            if *k < n && a != b {
                return Err(Error::InvalidTransform(format!("tau with k = {k} < n needs a = b")));
            }
            let one = GaussianRational::one();
            (vector_of(dim, &[(0, one.clone()), (*k, a.clone())]), vector_of(dim, &[(1, one), (*k, b.clone())]))
        }
        (Elementary::Vartheta { a, b }, FamilyParams::One(p)) => {
            if (a.clone() * (a.clone() + b.clone())).is_zero() {
                return Err(Error::InvalidTransform("vartheta needs a(a+b) != 0".into()));
            }
            let shift = b.clone() * (p.theta.clone() - p.alpha(n).clone());
            (
                vector_of(dim, &[(0, a.clone()), (1, b.clone())]),
                vector_of(dim, &[(1, a.clone() + b.clone()), (n - 1, shift)]),
            )
        }
        (Elementary::Sigma { b }, _) => {
            let one = GaussianRational::one();
            (Vector::basis(dim, 0), vector_of(dim, &[(1, one), (n, b.clone())]))
        }
        (Elementary::Eta { a, k }, _) => {
            check_k(*k, n)?;
            (vector_of(dim, &[(0, GaussianRational::one()), (*k, a.clone())]), Vector::basis(dim, 1))
        }
        (Elementary::Delta { a, b, d }, FamilyParams::Two(p)) => {
            if (a.clone() * d.clone()).is_zero() {
                return Err(Error::InvalidTransform("delta needs a d != 0".into()));
            }
            let shift = (b.clone() * d.clone() * p.gamma.clone()).div(a)?;
            (vector_of(dim, &[(0, a.clone()), (1, b.clone())]), vector_of(dim, &[(1, d.clone()), (n - 1, -shift)]))
        }
        _ => unreachable!("family checked above"),
    };
    complete_images(t, f0, f1)
}

/// General adapted transformation of a first-family algebra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneralAdapted1 {
    /// Coordinates of `f(e_0)`.
    pub a: Vec<GaussianRational>,
    pub b_n: GaussianRational,
}

/// General adapted transformation of a second-family algebra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneralAdapted2 {
    /// Coordinates of `f(e_0)`.
    pub a: Vec<GaussianRational>,
    pub b_1: GaussianRational,
    pub b_n: GaussianRational,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GeneralAdapted {
    One(GeneralAdapted1),
    Two(GeneralAdapted2),
}

impl GeneralAdapted {
    fn family(&self) -> u8 {
        match self {
            Self::One(_) => 1,
            Self::Two(_) => 2,
        }
    }

    fn a(&self) -> &[GaussianRational] {
        match self {
            Self::One(g) => &g.a,
            Self::Two(g) => &g.a,
        }
    }
}

/// Images of a general adapted transformation of the adapted table `t`.
pub fn apply_general(t: &StructureTable, g: &GeneralAdapted) -> Result<BasisImages> {
    let params = extract_params(t)?;
    require_family(&params, g.family())?;
    let n = t.n();
    let dim = t.dim();
    let a = g.a();
    if a.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: a.len() });
    }
    let f0 = Vector::from_coords(a.to_vec());
    let f1 = match (g, &params) {
        (GeneralAdapted::One(g), FamilyParams::One(p)) => {
            let b1 = a[0].clone() + a[1].clone();
            if (a[0].clone() * b1.clone()).is_zero() {
                return Err(Error::InvalidTransform("general map needs a_0 (a_0 + a_1) != 0".into()));
            }
            let mut terms = vec![(1, b1)];
            terms.extend((2..=n.saturating_sub(2)).map(|i| (i, a[i].clone())));
            terms.push((n - 1, a[n - 1].clone() + a[1].clone() * (p.theta.clone() - p.alpha(n).clone())));
            terms.push((n, g.b_n.clone()));
            vector_of(dim, &terms)
        }
        (GeneralAdapted::Two(g), FamilyParams::Two(p)) => {
            if (a[0].clone() * g.b_1.clone()).is_zero() {
                return Err(Error::InvalidTransform("general map needs a_0 b_1 != 0".into()));
            }
            let shift = (a[1].clone() * g.b_1.clone() * p.gamma.clone()).div(&a[0])?;
            vector_of(dim, &[(1, g.b_1.clone()), (n - 1, -shift), (n, g.b_n.clone())])
        }
        _ => unreachable!("family checked above"),
    };
    complete_images(t, f0, f1)
}

/// Applies elementary factors in order, each relative to the basis produced
/// by the previous ones, and returns the combined images in the basis of `t`.
pub fn apply_sequence(t: &StructureTable, factors: &[Elementary]) -> Result<BasisImages> {
    let mut total = BasisImages::identity(t.dim());
    let mut current = t.clone();
    for e in factors {
        let step = apply_elementary(&current, e)?;
        current = pushforward(&current, &step)?;
        total = total.then(&step);
    }
    Ok(total)
}

/// Elementary factors of `g` in application order: `vartheta` then a chain
/// of `tau` (first family), or `delta`, an `eta` chain and `sigma` (second
/// family). Each factor coefficient is chosen so that the coordinates of
/// `f(e_0)` and the `e_n` coordinate of `f(e_1)` come out right.
pub fn decompose(t: &StructureTable, g: &GeneralAdapted) -> Result<Vec<Elementary>> {
    let n = t.n();
    let a = g.a();
    if a.len() != n + 1 {
        return Err(Error::DimensionMismatch { expected: n + 1, found: a.len() });
    }
    let mut factors = vec![match g {
        GeneralAdapted::One(_) => Elementary::Vartheta { a: a[0].clone(), b: a[1].clone() },
        GeneralAdapted::Two(g) => Elementary::Delta { a: a[0].clone(), b: a[1].clone(), d: g.b_1.clone() },
    }];
    let mut total = apply_sequence(t, &factors)?;
    let mut current = pushforward(t, &total)?;
    for k in 2..=n {
        // f(e_k) = lead * e_k + higher terms, so adding c f(e_k) only moves coordinates >= k
        let lead = total.image(k)[k].clone();
        let c = (a[k].clone() - total.image(0)[k].clone()).div(&lead)?;
        let factor = match g {
            GeneralAdapted::One(g) if k == n => {
                let d = (g.b_n.clone() - total.image(1)[n].clone()).div(&lead)?;
                Elementary::Tau { a: c, b: d, k }
            }
            GeneralAdapted::One(_) => Elementary::Tau { a: c.clone(), b: c, k },
            GeneralAdapted::Two(_) => Elementary::Eta { a: c, k },
        };
        let step = apply_elementary(&current, &factor)?;
        current = pushforward(&current, &step)?;
        total = total.then(&step);
        factors.push(factor);
    }
    if let GeneralAdapted::Two(g) = g {
        let lead = total.image(n)[n].clone();
        let b = (g.b_n.clone() - total.image(1)[n].clone()).div(&lead)?;
        factors.push(Elementary::Sigma { b });
    }
    Ok(factors)
}

/// Any transformation accepted in a transform file.
#[derive(Clone, Debug, PartialEq)]
pub enum Transform {
    Elementary(Elementary),
    General(GeneralAdapted),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum GeneralRecord {
    General1(GeneralAdapted1),
    General2(GeneralAdapted2),
}

impl Serialize for Transform {
    fn serialize<Ser: serde::Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        match self {
            Self::Elementary(e) => e.serialize(serializer),
            Self::General(GeneralAdapted::One(g)) => GeneralRecord::General1(g.clone()).serialize(serializer),
            Self::General(GeneralAdapted::Two(g)) => GeneralRecord::General2(g.clone()).serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for Transform {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        let kind = value.get("type").and_then(|v| v.as_str()).unwrap_or_default();
        if kind.starts_with("general") {
            let record = GeneralRecord::deserialize(value).map_err(serde::de::Error::custom)?;
            Ok(Self::General(match record {
                GeneralRecord::General1(g) => GeneralAdapted::One(g),
                GeneralRecord::General2(g) => GeneralAdapted::Two(g),
            }))
        } else {
            Elementary::deserialize(value).map(Self::Elementary).map_err(serde::de::Error::custom)
        }
    }
}

/// Images of any transformation.
pub fn apply_transform(t: &StructureTable, transform: &Transform) -> Result<BasisImages> {
    match transform {
        Transform::Elementary(e) => apply_elementary(t, e),
        Transform::General(g) => apply_general(t, g),
    }
}
