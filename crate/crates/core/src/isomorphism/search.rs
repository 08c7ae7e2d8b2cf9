//! Seeded multistart Levenberg-Marquardt search for witnesses.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{transform_params, Witness};
use crate::algebra::linalg::Matrix;
use crate::algebra::Vector;
use crate::families::FamilyParams;
use crate::scalars::{is_near_gaussian_rational, to_approx, ApproxComplex};
use crate::{Error, Result};

/// Settings of the numeric witness search.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    /// Acceptance bound on the relative residual.
    pub tol: f64,
    pub starts: usize,
    pub seed: u64,
    /// Iteration cap per start.
    pub max_iter: usize,
    /// Denominator bound for exact reconstruction.
    pub max_denominator: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { tol: 1e-9, starts: 64, seed: 0, max_iter: 200, max_denominator: 1_000_000 }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(Error::InvalidConfig(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.starts == 0 {
            return Err(Error::InvalidConfig("at least one start is required".into()));
        }
        if self.max_iter == 0 || self.max_denominator == 0 {
            return Err(Error::InvalidConfig("iteration cap and denominator bound must be positive".into()));
        }
        Ok(())
    }
}

/// Result of [`search_witness`].
#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    /// A reconstructed witness that maps `p` to `q` exactly.
    pub exact: Option<Witness>,
    /// The best floating point witness, by `(residual, start index)`.
    pub best: Option<Witness<ApproxComplex>>,
    pub best_residual: f64,
}

type C = ApproxComplex;

const GUARD: f64 = 1e-8;

// Unknowns after using the t = 3 condition when both alpha_3 (beta_3) are nonzero.
// For n = 3 the second family's beta_3 carries a gamma term, so it is only used when gamma = 0.
#[derive(Clone, Copy)]
enum Reduction {
    Full1,
    // B = ratio A^2 - A
    Eliminated1 { ratio: C },
    Full2,
    // D = ratio A^2
    Eliminated2 { ratio: C },
}

impl Reduction {
    fn unknowns(self) -> usize {
        match self {
            Self::Eliminated1 { .. } => 1,
            Self::Full1 | Self::Eliminated2 { .. } => 2,
            Self::Full2 => 3,
        }
    }

    fn witness(self, z: &[C]) -> Witness<C> {
        match self {
            Self::Full1 => Witness::family1(z[0], z[1]),
            Self::Eliminated1 { ratio } => Witness::family1(z[0], ratio * z[0] * z[0] - z[0]),
            Self::Full2 => Witness::family2(z[0], z[1], z[2]),
            Self::Eliminated2 { ratio } => Witness::family2(z[0], z[1], ratio * z[0] * z[0]),
        }
    }

    fn identity(self) -> Vec<C> {
        let one = C::new(1.0, 0.0);
        let zero = C::new(0.0, 0.0);
        match self {
            Self::Full1 => vec![one, zero],
            Self::Eliminated1 { .. } => vec![one],
            Self::Full2 => vec![one, zero, one],
            Self::Eliminated2 { .. } => vec![one, zero],
        }
    }
}

fn reduction(p: &FamilyParams<C>, q: &FamilyParams<C>) -> Reduction {
    match (p, q) {
        (FamilyParams::One(p), FamilyParams::One(q)) => {
            let (x, y) = (*p.alpha(3), *q.alpha(3));
            if x.norm() > 0.0 && y.norm() > 0.0 {
                Reduction::Eliminated1 { ratio: y / x }
            } else {
                Reduction::Full1
            }
        }
        (FamilyParams::Two(p), FamilyParams::Two(q)) => {
            let (x, y) = (*p.beta(3), *q.beta(3));
            let plain = p.n > 3 || p.gamma.norm() == 0.0;
            if plain && x.norm() > 0.0 && y.norm() > 0.0 {
                Reduction::Eliminated2 { ratio: y / x }
            } else {
                Reduction::Full2
            }
        }
        _ => unreachable!("same family"),
    }
}

struct Problem {
    p: FamilyParams<C>,
    target: Vec<C>,
    scale: f64,
    reduction: Reduction,
}

impl Problem {
    /// Residual vector divided by `1 + max |q|`; `None` near inadmissible witnesses.
    fn residual(&self, z: &[C]) -> Option<Vec<C>> {
        let w = self.reduction.witness(z);
        let det = match w.d {
            None => w.a.norm() * (w.a + w.b).norm(),
            Some(d) => w.a.norm() * d.norm(),
        };
        if !(det > GUARD) || z.iter().any(|x| !x.is_finite()) {
            return None;
        }
        let image = transform_params(&self.p, &w).ok()?;
        let r: Vec<C> = image.values().iter().zip(&self.target).map(|(x, y)| (x - y) / self.scale).collect();
        r.iter().all(|x| x.is_finite()).then_some(r)
    }
}

fn norm_sqr(r: &[C]) -> f64 {
    r.iter().map(|x| x.norm_sqr()).sum()
}

fn max_abs(r: &[C]) -> f64 {
    r.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

// Central differences; the residual is holomorphic so a real step suffices.
fn jacobian(problem: &Problem, z: &[C], r: &[C]) -> Option<Vec<Vec<C>>> {
    let mut cols = Vec::with_capacity(z.len());
    for j in 0..z.len() {
        let h = 1e-6 * (1.0 + z[j].norm());
        let mut plus = z.to_vec();
        let mut minus = z.to_vec();
        plus[j] += h;
        minus[j] -= h;
        let col = match (problem.residual(&plus), problem.residual(&minus)) {
            (Some(a), Some(b)) => a.iter().zip(&b).map(|(x, y)| (x - y) / (2.0 * h)).collect(),
            (Some(a), None) => a.iter().zip(r).map(|(x, y)| (x - y) / h).collect(),
            (None, Some(b)) => r.iter().zip(&b).map(|(x, y)| (x - y) / h).collect(),
            (None, None) => return None,
        };
        cols.push(col);
    }
    Some(cols)
}

/// Damped Gauss-Newton from `start`; returns the final point and its max residual.
fn levenberg_marquardt(problem: &Problem, start: Vec<C>, max_iter: usize) -> Option<(Vec<C>, f64)> {
    let mut z = start;
    let mut r = problem.residual(&z)?;
    let mut cost = norm_sqr(&r);
    let mut lambda = 1e-3;
    let m = z.len();
    for _ in 0..max_iter {
        if max_abs(&r) < 1e-15 {
            break;
        }
        let Some(cols) = jacobian(problem, &z, &r) else { break };
        // normal equations (J^H J + lambda diag) delta = -J^H r
        let mut normal = vec![vec![C::new(0.0, 0.0); m]; m];
        let mut rhs = vec![C::new(0.0, 0.0); m];
        for a in 0..m {
            for b in 0..m {
                normal[a][b] = cols[a].iter().zip(&cols[b]).map(|(x, y)| x.conj() * y).sum();
            }
            rhs[a] = -cols[a].iter().zip(&r).map(|(x, y)| x.conj() * y).sum::<C>();
        }
        let mut improved = false;
        while lambda < 1e14 {
            let mut damped = normal.clone();
            for (a, row) in damped.iter_mut().enumerate() {
                let weight = row[a].norm() + 1e-12;
                row[a] += lambda * weight;
            }
            let columns: Vec<Vector<C>> =
                (0..m).map(|b| Vector::from_coords(damped.iter().map(|row| row[b]).collect())).collect();
            let Ok(inv) = Matrix::from_columns(&columns).inverse() else {
                lambda *= 10.0;
                continue;
            };
            let delta = inv.mul_vector(&Vector::from_coords(rhs.clone()));
            let candidate: Vec<C> = z.iter().zip(delta.coords()).map(|(x, d)| x + d).collect();
            if let Some(r_new) = problem.residual(&candidate) {
                let cost_new = norm_sqr(&r_new);
                if cost_new < cost {
                    let step = max_abs(delta.coords());
                    z = candidate;
                    r = r_new;
                    cost = cost_new;
                    lambda = (lambda / 5.0).max(1e-15);
                    improved = step > 1e-16 * (1.0 + max_abs(&z));
                    break;
                }
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }
    Some((z, max_abs(&r)))
}

fn random_start(reduction: Reduction, seed: u64, index: usize) -> Vec<C> {
    if index == 0 {
        return reduction.identity();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let mut draw = || C::new(f64::from(rng.gen_range(-8i32..=8)) / 4.0, f64::from(rng.gen_range(-8i32..=8)) / 4.0);
    loop {
        let z: Vec<C> = (0..reduction.unknowns()).map(|_| draw()).collect();
        if z[0].norm() > 0.1 {
            return z;
        }
    }
}

fn reconstruct(w: &Witness<C>, max_den: u64) -> Option<Witness> {
    let fix = |x: &C| is_near_gaussian_rational(*x, max_den, 1e-7 * (1.0 + x.norm()));
    Some(Witness {
        a: fix(&w.a)?,
        b: fix(&w.b)?,
        d: match &w.d {
            Some(d) => Some(fix(d)?),
            None => None,
        },
    })
}

/// Multistart search for a witness carrying `p` to `q`. Starts run in
/// parallel; the outcome depends only on the configuration and inputs.
pub fn search_witness(p: &FamilyParams, q: &FamilyParams, cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    if !p.same_shape(q) {
        return Err(Error::FamilyMismatch);
    }
    let pa = p.map(to_approx);
    let qa = q.map(to_approx);
    let target = qa.values();
    let scale = 1.0 + max_abs(&target);
    let problem = Problem { reduction: reduction(&pa, &qa), p: pa, target, scale };

    let mut runs: Vec<(f64, usize, Witness<C>)> = (0..cfg.starts)
        .into_par_iter()
        .filter_map(|index| {
            let start = random_start(problem.reduction, cfg.seed, index);
            let (z, res) = levenberg_marquardt(&problem, start, cfg.max_iter)?;
            Some((res, index, problem.reduction.witness(&z)))
        })
        .collect();
    runs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));

    let mut exact = None;
    for (_, _, w) in runs.iter().take_while(|run| run.0 < 1e-6) {
        if let Some(candidate) = reconstruct(w, cfg.max_denominator) {
            if candidate.check_admissible(p.family()).is_ok()
                && transform_params(p, &candidate).as_ref() == Ok(q)
            {
                exact = Some(candidate);
                break;
            }
        }
    }
    let (best_residual, best) = match runs.first() {
        Some((res, _, w)) => (*res, Some(w.clone())),
        None => (f64::INFINITY, None),
    };
    Ok(SearchOutcome { exact, best, best_residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{Family1Params, Family2Params};
    use crate::scalars::GaussianRational;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(SearchConfig::default().validate().is_ok());
        assert!(SearchConfig { tol: -1.0, ..SearchConfig::default() }.validate().is_err());
        assert!(SearchConfig { tol: f64::NAN, ..SearchConfig::default() }.validate().is_err());
    }

    #[test]
    fn recovers_second_family_witness() {
        let p: FamilyParams =
            Family2Params::new(5, vec![g("1"), g("2"), g("-1")], g("1/2")).unwrap().into();
        let w = Witness::family2(g("2"), g("1"), g("3"));
        let q = transform_params(&p, &w).unwrap();
        let out = search_witness(&p, &q, &SearchConfig::default()).unwrap();
        let found = out.exact.expect("exact witness");
        assert_eq!(transform_params(&p, &found).unwrap(), q);
    }

    #[test]
    fn search_is_deterministic() {
        let p: FamilyParams = Family1Params::new(4, vec![g("0"), g("1")], g("2")).unwrap().into();
        let q = transform_params(&p, &Witness::family1(g("3"), g("-1"))).unwrap();
        let cfg = SearchConfig { starts: 16, ..SearchConfig::default() };
        assert_eq!(search_witness(&p, &q, &cfg).unwrap(), search_witness(&p, &q, &cfg).unwrap());
    }
}
