//! The two adapted families and conversion between parameters and tables.

use serde::{Deserialize, Serialize};

use crate::algebra::StructureTable;
use crate::scalars::{Field, GaussianRational};
use crate::{Error, Result};

/// Parameters `(alpha_3, ..., alpha_n, theta)` of the first family.
#[derive(Clone, Debug, PartialEq)]
pub struct Family1Params<S = GaussianRational> {
    pub n: usize,
    /// `alpha[k - 3]` holds `alpha_k`.
    pub alpha: Vec<S>,
    pub theta: S,
}

/// Parameters `(beta_3, ..., beta_n, gamma)` of the second family.
#[derive(Clone, Debug, PartialEq)]
pub struct Family2Params<S = GaussianRational> {
    pub n: usize,
    /// `beta[k - 3]` holds `beta_k`.
    pub beta: Vec<S>,
    pub gamma: S,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FamilyParams<S = GaussianRational> {
    One(Family1Params<S>),
    Two(Family2Params<S>),
}

fn check_shape(n: usize, len: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::DimensionTooSmall(n));
    }
    if len != n - 2 {
        return Err(Error::DimensionMismatch { expected: n - 2, found: len });
    }
    Ok(())
}

impl<S: Field> Family1Params<S> {
    pub fn new(n: usize, alpha: Vec<S>, theta: S) -> Result<Self> {
        check_shape(n, alpha.len())?;
        Ok(Self { n, alpha, theta })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, vec![S::zero(); n.saturating_sub(2)], S::zero())
    }

    /// `alpha_k` for `3 <= k <= n`.
    pub fn alpha(&self, k: usize) -> &S {
        &self.alpha[k - 3]
    }

    pub fn table(&self) -> StructureTable<S> {
        family1_table(self.n, &self.alpha, &self.theta)
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T) -> Family1Params<T> {
        Family1Params { n: self.n, alpha: self.alpha.iter().map(&f).collect(), theta: f(&self.theta) }
    }
}

impl<S: Field> Family2Params<S> {
    pub fn new(n: usize, beta: Vec<S>, gamma: S) -> Result<Self> {
        check_shape(n, beta.len())?;
        Ok(Self { n, beta, gamma })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, vec![S::zero(); n.saturating_sub(2)], S::zero())
    }

    /// `beta_k` for `3 <= k <= n`.
    pub fn beta(&self, k: usize) -> &S {
        &self.beta[k - 3]
    }

    pub fn table(&self) -> StructureTable<S> {
        family2_table(self.n, &self.beta, &self.gamma)
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T) -> Family2Params<T> {
        Family2Params { n: self.n, beta: self.beta.iter().map(&f).collect(), gamma: f(&self.gamma) }
    }
}

impl<S: Field> FamilyParams<S> {
    pub fn n(&self) -> usize {
        match self {
            Self::One(p) => p.n,
            Self::Two(p) => p.n,
        }
    }

    /// 1 or 2.
    pub fn family(&self) -> u8 {
        match self {
            Self::One(_) => 1,
            Self::Two(_) => 2,
        }
    }

    pub fn table(&self) -> StructureTable<S> {
        match self {
            Self::One(p) => p.table(),
            Self::Two(p) => p.table(),
        }
    }

    /// All parameters in file order: the sequence followed by theta or gamma.
    pub fn values(&self) -> Vec<S> {
        match self {
            Self::One(p) => p.alpha.iter().chain([&p.theta]).cloned().collect(),
            Self::Two(p) => p.beta.iter().chain([&p.gamma]).cloned().collect(),
        }
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T) -> FamilyParams<T> {
        match self {
            Self::One(p) => FamilyParams::One(p.map(f)),
            Self::Two(p) => FamilyParams::Two(p.map(f)),
        }
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.family() == other.family() && self.n() == other.n()
    }
}

impl<S> From<Family1Params<S>> for FamilyParams<S> {
    fn from(p: Family1Params<S>) -> Self {
        Self::One(p)
    }
}

impl<S> From<Family2Params<S>> for FamilyParams<S> {
    fn from(p: Family2Params<S>) -> Self {
        Self::Two(p)
    }
}

/// First-family table; `alpha[k - 3] = alpha_k`.
pub(crate) fn family1_table<S: Field>(n: usize, alpha: &[S], theta: &S) -> StructureTable<S> {
    let mut entries = vec![(0, 0, 2, S::one())];
    entries.extend((1..n).map(|i| (i, 0, i + 1, S::one())));
    entries.extend((3..n).map(|k| (0, 1, k, alpha[k - 3].clone())));
    entries.push((0, 1, n, theta.clone()));
    for j in 1..=n.saturating_sub(2) {
        entries.extend((3..=n + 1 - j).map(|k| (j, 1, j + k - 1, alpha[k - 3].clone())));
    }
    StructureTable::from_entries(n, entries).expect("indices within range")
}

/// Second-family table; `beta[k - 3] = beta_k`.
pub(crate) fn family2_table<S: Field>(n: usize, beta: &[S], gamma: &S) -> StructureTable<S> {
    let mut entries = vec![(0, 0, 2, S::one())];
    entries.extend((2..n).map(|i| (i, 0, i + 1, S::one())));
    entries.extend((3..=n).map(|k| (0, 1, k, beta[k - 3].clone())));
    entries.push((1, 1, n, gamma.clone()));
    for j in 2..=n.saturating_sub(2) {
        entries.extend((3..=n + 1 - j).map(|k| (j, 1, j + k - 1, beta[k - 3].clone())));
    }
    StructureTable::from_entries(n, entries).expect("indices within range")
}

pub fn build_family1<S: Field>(p: &Family1Params<S>) -> StructureTable<S> {
    p.table()
}

pub fn build_family2<S: Field>(p: &Family2Params<S>) -> StructureTable<S> {
    p.table()
}

fn first_difference<S: Field>(found: &StructureTable<S>, expected: &StructureTable<S>) -> String {
    let dim = found.dim();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                if found.get(i, j, k) != expected.get(i, j, k) {
                    return format!(
                        "coefficient of e_{k} in [e_{i}, e_{j}] is {:?}, the family pattern requires {:?}",
                        found.get(i, j, k),
                        expected.get(i, j, k)
                    );
                }
            }
        }
    }
    String::new()
}

/// Reads the family parameters off an adapted table, checking every
/// product against the family pattern.
pub fn extract_params<S: Field>(table: &StructureTable<S>) -> Result<FamilyParams<S>> {
    let n = table.n();
    if n < 3 {
        return Err(Error::DimensionTooSmall(n));
    }
    let link = table.get(1, 0, 2);
    let (params, rebuilt) = if *link == S::one() {
        let alpha: Vec<S> = (3..=n).map(|k| table.get(1, 1, k).clone()).collect();
        let p = Family1Params::new(n, alpha, table.get(0, 1, n).clone())?;
        let t = p.table();
        (FamilyParams::One(p), t)
    } else if link.is_zero() {
        let beta: Vec<S> = (3..=n).map(|k| table.get(0, 1, k).clone()).collect();
        let p = Family2Params::new(n, beta, table.get(1, 1, n).clone())?;
        let t = p.table();
        (FamilyParams::Two(p), t)
    } else {
        return Err(Error::NotAdapted(format!("[e_1, e_0] has coefficient {link:?} at e_2, expected 0 or 1")));
    };
    if rebuilt != *table {
        return Err(Error::NotAdapted(first_difference(table, &rebuilt)));
    }
    Ok(params)
}

// JSON form: {"family": 1, "n": 5, "alpha": [...], "theta": "..."} or
// {"family": 2, "n": 5, "beta": [...], "gamma": "..."}.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsRecord {
    family: u8,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<Vec<GaussianRational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta: Option<GaussianRational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    beta: Option<Vec<GaussianRational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gamma: Option<GaussianRational>,
}

impl TryFrom<ParamsRecord> for FamilyParams {
    type Error = Error;

    fn try_from(r: ParamsRecord) -> Result<Self> {
        let missing = |field: &str| Error::Parse(format!("family {} parameters need \"{field}\"", r.family));
        match r.family {
            1 => {
                if r.beta.is_some() || r.gamma.is_some() {
                    return Err(Error::Parse("family 1 parameters take alpha and theta".into()));
                }
                let alpha = r.alpha.clone().ok_or_else(|| missing("alpha"))?;
                let theta = r.theta.clone().ok_or_else(|| missing("theta"))?;
                Ok(Self::One(Family1Params::new(r.n, alpha, theta)?))
            }
            2 => {
                if r.alpha.is_some() || r.theta.is_some() {
                    return Err(Error::Parse("family 2 parameters take beta and gamma".into()));
                }
                let beta = r.beta.clone().ok_or_else(|| missing("beta"))?;
                let gamma = r.gamma.clone().ok_or_else(|| missing("gamma"))?;
                Ok(Self::Two(Family2Params::new(r.n, beta, gamma)?))
            }
            other => Err(Error::Parse(format!("unknown family {other}"))),
        }
    }
}

impl From<&FamilyParams> for ParamsRecord {
    fn from(p: &FamilyParams) -> Self {
        match p {
            FamilyParams::One(p) => ParamsRecord {
                family: 1,
                n: p.n,
                alpha: Some(p.alpha.clone()),
                theta: Some(p.theta.clone()),
                beta: None,
                gamma: None,
            },
            FamilyParams::Two(p) => ParamsRecord {
                family: 2,
                n: p.n,
                alpha: None,
                theta: None,
                beta: Some(p.beta.clone()),
                gamma: Some(p.gamma.clone()),
            },
        }
    }
}

impl Serialize for FamilyParams {
    fn serialize<Ser: serde::Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        ParamsRecord::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FamilyParams {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let record = ParamsRecord::deserialize(deserializer)?;
        FamilyParams::try_from(record).map_err(serde::de::Error::custom)
    }
}
