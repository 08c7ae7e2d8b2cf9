//! The parameter maps induced by the essential change of basis, and the
//! isomorphism decision built on them.

pub mod search;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::families::{extract_params, Family1Params, Family2Params, FamilyParams};
use crate::scalars::{to_approx, ApproxComplex, Field, GaussianRational, Rational};
use crate::transforms::{apply_general, binomial_in, chain_sum, pushforward, BasisImages};
use crate::transforms::{GeneralAdapted, GeneralAdapted1, GeneralAdapted2};
use crate::{Error, Result};

pub use search::{search_witness, SearchConfig, SearchOutcome};

/// Coefficients of `e'_0 = A e_0 + B e_1` and, for the second family,
/// `e'_1 = D e_1 - (B D gamma / A) e_{n-1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Witness<S = GaussianRational> {
    #[serde(rename = "A")]
    pub a: S,
    #[serde(rename = "B")]
    pub b: S,
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub d: Option<S>,
}

impl<S: Field> Witness<S> {
    pub fn family1(a: S, b: S) -> Self {
        Self { a, b, d: None }
    }

    pub fn family2(a: S, b: S, d: S) -> Self {
        Self { a, b, d: Some(d) }
    }

    /// The witness that leaves every algebra unchanged.
    pub fn identity(family: u8) -> Self {
        match family {
            1 => Self::family1(S::one(), S::zero()),
            _ => Self::family2(S::one(), S::zero(), S::one()),
        }
    }

    /// Checks the shape against the family and `A(A+B) != 0`, resp. `A D != 0`.
    pub fn check_admissible(&self, family: u8) -> Result<()> {
        match (family, &self.d) {
            (1, None) => {
                if (self.a.clone() * (self.a.clone() + self.b.clone())).is_zero() {
                    return Err(Error::InadmissibleWitness("A(A+B) must be nonzero".into()));
                }
                Ok(())
            }
            (2, Some(d)) => {
                if (self.a.clone() * d.clone()).is_zero() {
                    return Err(Error::InadmissibleWitness("A D must be nonzero".into()));
                }
                Ok(())
            }
            (1, Some(_)) => Err(Error::InadmissibleWitness("family 1 witnesses take only A and B".into())),
            _ => Err(Error::InadmissibleWitness("family 2 witnesses need A, B and D".into())),
        }
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T) -> Witness<T> {
        Witness { a: f(&self.a), b: f(&self.b), d: self.d.as_ref().map(f) }
    }
}

// sum_{i=1}^{k-1} C(k-1, i) A^{k-1-i} B^i [e_t] R^i(e_{k-i})
fn correction<S: Field>(eta: &[S], a: &S, b: &S, k: usize, t: usize) -> S {
    let mut acc = S::zero();
    let mut b_pow = S::one();
    for i in 1..k {
        b_pow = b_pow * b.clone();
        let chain = chain_sum(eta, k - i, i, t);
        if chain.is_zero() {
            continue;
        }
        acc = acc + binomial_in::<S>(k - 1, i) * a.pow((k - 1 - i) as u32) * b_pow.clone() * chain;
    }
    acc
}

// Solves sum_{k=3}^{t} x_k (A^{k-1} [k = t] + E(k, t)) = rhs_t for x_t.
fn triangular_step<S: Field>(eta: &[S], a: &S, b: &S, solved: &[S], t: usize, rhs: S) -> S {
    let mut acc = rhs;
    for (offset, x) in solved.iter().enumerate() {
        let k = offset + 3;
        if k >= t || x.is_zero() {
            continue;
        }
        acc = acc - correction(eta, a, b, k, t) * x.clone();
    }
    acc.checked_div(&a.pow(t as u32 - 1)).expect("A is nonzero")
}

/// Parameters of a first-family algebra in the basis `e'_0 = A e_0 + B e_1`,
/// `e'_1 = (A+B) e_1 + B(theta - alpha_n) e_{n-1}`, via the triangular
/// recurrence in `alpha'_3, ..., alpha'_n, theta'`.
pub fn transform_params1<S: Field>(p: &Family1Params<S>, a: &S, b: &S) -> Result<Family1Params<S>> {
    Witness::family1(a.clone(), b.clone()).check_admissible(1)?;
    let n = p.n;
    let sum = a.clone() + b.clone();
    let mut alpha: Vec<S> = Vec::with_capacity(n - 2);
    for t in 3..=n {
        let next = triangular_step(&p.alpha, a, b, &alpha, t, sum.clone() * p.alpha(t).clone());
        alpha.push(next);
    }
    let rhs = a.clone() * p.theta.clone() + b.clone() * p.alpha(n).clone();
    // theta' balances the e_n coordinate of [e'_0, e'_1], which involves alpha'_3 .. alpha'_{n-1} only
    let theta = triangular_step(&p.alpha, a, b, &alpha[..n - 3], n, rhs);
    Family1Params::new(n, alpha, theta)
}

/// Parameters of a second-family algebra in the basis `e'_0 = A e_0 + B e_1`,
/// `e'_1 = D e_1 - (B D gamma / A) e_{n-1}`.
pub fn transform_params2<S: Field>(p: &Family2Params<S>, a: &S, b: &S, d: &S) -> Result<Family2Params<S>> {
    Witness::family2(a.clone(), b.clone(), d.clone()).check_admissible(2)?;
    let n = p.n;
    let mut beta: Vec<S> = Vec::with_capacity(n - 2);
    for t in 3..=n {
        let mut rhs = d.clone() * p.beta(t).clone();
        if t == n {
            let extra = (b.clone() * d.clone() * p.gamma.clone()).checked_div(a).expect("A is nonzero");
            rhs = rhs + extra;
        }
        let next = triangular_step(&p.beta, a, b, &beta, t, rhs);
        beta.push(next);
    }
    let gamma = (d.clone() * d.clone() * p.gamma.clone()).checked_div(&a.pow(n as u32)).expect("A is nonzero");
    Family2Params::new(n, beta, gamma)
}

/// Dispatches to [`transform_params1`] or [`transform_params2`].
pub fn transform_params<S: Field>(p: &FamilyParams<S>, w: &Witness<S>) -> Result<FamilyParams<S>> {
    w.check_admissible(p.family())?;
    match (p, &w.d) {
        (FamilyParams::One(p), None) => Ok(transform_params1(p, &w.a, &w.b)?.into()),
        (FamilyParams::Two(p), Some(d)) => Ok(transform_params2(p, &w.a, &w.b, d)?.into()),
        _ => unreachable!("shape checked by check_admissible"),
    }
}

fn witness_images(p: &FamilyParams, w: &Witness) -> Result<BasisImages> {
    w.check_admissible(p.family())?;
    let n = p.n();
    let mut a = vec![GaussianRational::zero(); n + 1];
    a[0] = w.a.clone();
    a[1] = w.b.clone();
    let general = match &w.d {
        None => GeneralAdapted::One(GeneralAdapted1 { a, b_n: GaussianRational::zero() }),
        Some(d) => GeneralAdapted::Two(GeneralAdapted2 { a, b_1: d.clone(), b_n: GaussianRational::zero() }),
    };
    apply_general(&p.table(), &general)
}

/// Transformed parameters by brute force: build the table, apply the general
/// adapted map with `f(e_0) = A e_0 + B e_1`, rewrite the table in the new
/// basis and read the parameters back.
pub fn oracle_transform(p: &FamilyParams, w: &Witness) -> Result<FamilyParams> {
    let images = witness_images(p, w)?;
    let moved = pushforward(&p.table(), &images)?;
    extract_params(&moved)
}

/// The witness of the basis change "`w1`, then `w2` relative to the new
/// basis", read off the combined basis images.
pub fn compose_witnesses(p: &FamilyParams, w1: &Witness, w2: &Witness) -> Result<Witness> {
    let first = witness_images(p, w1)?;
    let middle = oracle_transform(p, w1)?;
    let second = witness_images(&middle, w2)?;
    let total = first.then(&second);
    let (f0, f1) = (total.image(0), total.image(1));
    Ok(Witness { a: f0[0].clone(), b: f0[1].clone(), d: w1.d.as_ref().map(|_| f1[1].clone()) })
}

/// Names an invariant separating `p` from `q`: the vanishing of `alpha_3`
/// for the first family, of `gamma` or of `beta_3` for the second. The
/// latter is used for `n = 3` only when `gamma = 0`.
pub fn invariant_certificates(p: &FamilyParams, q: &FamilyParams) -> Result<Option<&'static str>> {
    if !p.same_shape(q) {
        return Err(Error::FamilyMismatch);
    }
    let differ = |x: &GaussianRational, y: &GaussianRational| x.is_zero() != y.is_zero();
    Ok(match (p, q) {
        (FamilyParams::One(p), FamilyParams::One(q)) => differ(p.alpha(3), q.alpha(3)).then_some("alpha3-vanishing"),
        (FamilyParams::Two(p), FamilyParams::Two(q)) => {
            // for n = 3, beta_3 is also beta_n and absorbs a gamma term
            let beta3_invariant = p.n > 3 || (p.gamma.is_zero() && q.gamma.is_zero());
            if differ(&p.gamma, &q.gamma) {
                Some("gamma-vanishing")
            } else if beta3_invariant && differ(p.beta(3), q.beta(3)) {
                Some("beta3-vanishing")
            } else {
                None
            }
        }
        _ => unreachable!("same family"),
    })
}

/// Witness found by the decision procedure.
#[derive(Clone, Debug, PartialEq)]
pub enum IsoWitness {
    Exact(Witness),
    /// A floating point witness whose image was re-verified within tolerance.
    Approximate(Witness<ApproxComplex>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum IsoVerdict {
    Isomorphic { witness: IsoWitness, residual: f64 },
    NotIsomorphic { certificate: String },
    Unknown { starts: usize, best_residual: f64 },
}

fn format_approx(z: ApproxComplex) -> String {
    match (z.re == 0.0, z.im == 0.0) {
        (_, true) => format!("{}", z.re),
        (true, false) => format!("{}*i", z.im),
        (false, false) if z.im < 0.0 => format!("{}-{}*i", z.re, -z.im),
        _ => format!("{}+{}*i", z.re, z.im),
    }
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, Self::Isomorphic { .. })
    }

    /// CLI-facing JSON form.
    pub fn to_json(&self) -> Value {
        match self {
            Self::Isomorphic { witness: IsoWitness::Exact(w), residual } => json!({
                "verdict": "isomorphic",
                "witness": w,
                "residual": if *residual == 0.0 { "0".to_string() } else { residual.to_string() },
            }),
            Self::Isomorphic { witness: IsoWitness::Approximate(w), residual } => {
                let mut witness = serde_json::Map::new();
                witness.insert("A".into(), format_approx(w.a).into());
                witness.insert("B".into(), format_approx(w.b).into());
                if let Some(d) = w.d {
                    witness.insert("D".into(), format_approx(d).into());
                }
                json!({
                    "verdict": "isomorphic",
                    "approximate": true,
                    "witness": witness,
                    "residual": format!("{residual:e}"),
                })
            }
            Self::NotIsomorphic { certificate } => json!({"verdict": "not_isomorphic", "certificate": certificate}),
            Self::Unknown { starts, best_residual } => {
                json!({"verdict": "unknown", "starts": starts, "best_residual": best_residual})
            }
        }
    }
}

/// `max |x - y| / (1 + max |y|)` over the parameter lists.
pub fn relative_residual(x: &[ApproxComplex], y: &[ApproxComplex]) -> f64 {
    let scale = 1.0 + y.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let err = x.iter().zip(y).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    err / scale
}

fn exact_from_float(z: ApproxComplex) -> Option<GaussianRational> {
    Some(GaussianRational::new(Rational::from_float(z.re)?, Rational::from_float(z.im)?))
}

/// Residual of a floating point witness, evaluated exactly through the
/// oracle at the binary value of each coordinate.
pub fn verify_approximate(p: &FamilyParams, q: &FamilyParams, w: &Witness<ApproxComplex>) -> Option<f64> {
    let exact = Witness {
        a: exact_from_float(w.a)?,
        b: exact_from_float(w.b)?,
        d: match w.d {
            Some(d) => Some(exact_from_float(d)?),
            None => None,
        },
    };
    let image = oracle_transform(p, &exact).ok()?;
    let got: Vec<_> = image.values().iter().map(to_approx).collect();
    let want: Vec<_> = q.values().iter().map(to_approx).collect();
    Some(relative_residual(&got, &want))
}

/// Decides whether `p` and `q` describe isomorphic algebras.
///
/// Vanishing-pattern certificates prove non-isomorphism. Otherwise a seeded
/// multistart search looks for a witness, which is reconstructed exactly if
/// possible and re-verified either way. Search failure gives `Unknown`.
pub fn decide_iso(p: &FamilyParams, q: &FamilyParams, cfg: &SearchConfig) -> Result<IsoVerdict> {
    cfg.validate()?;
    if !p.same_shape(q) {
        return Err(Error::FamilyMismatch);
    }
    if p == q {
        return Ok(IsoVerdict::Isomorphic { witness: IsoWitness::Exact(Witness::identity(p.family())), residual: 0.0 });
    }
    if let Some(name) = invariant_certificates(p, q)? {
        return Ok(IsoVerdict::NotIsomorphic { certificate: name.to_string() });
    }
    let outcome = search_witness(p, q, cfg)?;
    if let Some(w) = outcome.exact {
        return Ok(IsoVerdict::Isomorphic { witness: IsoWitness::Exact(w), residual: 0.0 });
    }
    if let Some(w) = &outcome.best {
        if outcome.best_residual < cfg.tol {
            if let Some(res) = verify_approximate(p, q, w) {
                if res < cfg.tol {
                    return Ok(IsoVerdict::Isomorphic { witness: IsoWitness::Approximate(w.clone()), residual: res });
                }
            }
        }
    }
    Ok(IsoVerdict::Unknown { starts: cfg.starts, best_residual: outcome.best_residual })
}

/// Partition of a parameter list into isomorphism classes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DedupReport {
    /// Indices into the input list; the first index of each class is its representative.
    pub classes: Vec<Vec<usize>>,
    /// `(representative, element)` pairs the search could not decide.
    pub unresolved: Vec<(usize, usize)>,
}

/// Greedy partition: each element joins the first class whose
/// representative is proved isomorphic to it, otherwise starts a new class.
pub fn dedup(list: &[FamilyParams], cfg: &SearchConfig) -> Result<DedupReport> {
    cfg.validate()?;
    if let Some(first) = list.first() {
        if list.iter().any(|p| !p.same_shape(first)) {
            return Err(Error::FamilyMismatch);
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut unresolved = Vec::new();
    for (i, p) in list.iter().enumerate() {
        let mut placed = false;
        for class in classes.iter_mut() {
            let rep = class[0];
            match decide_iso(&list[rep], p, cfg)? {
                IsoVerdict::Isomorphic { .. } => {
                    class.push(i);
                    placed = true;
                    break;
                }
                IsoVerdict::Unknown { .. } => unresolved.push((rep, i)),
                IsoVerdict::NotIsomorphic { .. } => {}
            }
        }
        if !placed {
            classes.push(vec![i]);
        }
    }
    Ok(DedupReport { classes, unresolved })
}
