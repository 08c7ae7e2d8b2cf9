//! Parameter-only formulas for iterated right multiplication and for the
//! basis `e'_k` produced by the essential change of basis.

use crate::algebra::Vector;
use crate::families::{Family1Params, Family2Params, FamilyParams};
use crate::scalars::Field;
use crate::{Error, Result};

use super::right_power_e1;

/// `C(s, t)` as a field element.
pub(crate) fn binomial_in<S: Field>(s: usize, t: usize) -> S {
    if t > s {
        return S::zero();
    }
    let t = t.min(s - t);
    let mut acc: i64 = 1;
    for i in 0..t {
        acc = acc * (s - i) as i64 / (i as i64 + 1);
    }
    S::from_i64(acc)
}

/// Coefficient of `e_t` in `R_{e_1}^m(e_p)` for `p >= 1`, where the right
/// multiplication by `e_1` acts as `e_j -> sum_s eta_s e_{j+s-1}`.
///
/// `eta[s - 3]` holds `eta_s`. Terms are chains `p = c_0 < c_1 < ... < c_m = t`
/// with steps of at least two, weighted by `prod eta_{c_l - c_{l-1} + 1}`.
pub fn chain_sum<S: Field>(eta: &[S], p: usize, m: usize, t: usize) -> S {
    let n = eta.len() + 2;
    if t > n {
        return S::zero();
    }
    if m == 0 {
        return if p == t { S::one() } else { S::zero() };
    }
    // weights[j] = coefficient of e_j after the current number of steps
    let mut weights = vec![S::zero(); n + 1];
    if p <= n {
        weights[p] = S::one();
    }
    for _ in 0..m {
        let mut next = vec![S::zero(); n + 1];
        for (j, w) in weights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for target in j + 2..=n {
                let factor = &eta[target - j + 1 - 3];
                if !factor.is_zero() {
                    next[target] = next[target].clone() + w.clone() * factor.clone();
                }
            }
        }
        weights = next;
    }
    weights[t].clone()
}

/// The nested sum for `R_{e_1}^m(e_0)`:
/// `sum alpha_{i_m + 3 - i_{m-1}} ... alpha_{i_2 + 3 - i_1} alpha_{i_1 + 3 - (2m+1)} e_{i_m}`
/// over `2m+1 <= i_1 <= i_2 <= ... <= i_m <= n`.
fn nested_sum<S: Field>(eta: &[S], m: usize) -> Vec<S> {
    let n = eta.len() + 2;
    let lower = 2 * m + 1;
    let alpha = |k: usize| eta[k - 3].clone();
    // partial[i] = sum over i_1 <= ... <= i_l = i of the product so far
    let mut partial = vec![S::zero(); n + 1];
    for (i, slot) in partial.iter_mut().enumerate().skip(lower) {
        *slot = alpha(i + 3 - lower);
    }
    for _ in 1..m {
        let mut next = vec![S::zero(); n + 1];
        for (upper, slot) in next.iter_mut().enumerate().skip(lower) {
            let mut acc = S::zero();
            for (i, p) in partial.iter().enumerate().take(upper + 1).skip(lower) {
                acc = acc + alpha(upper + 3 - i) * p.clone();
            }
            *slot = acc;
        }
        partial = next;
    }
    partial
}

/// Closed form of `R_{e_1}^m(e_0)` for `2 <= m <= (n - 1) / 2`, evaluated
/// from the parameters alone.
pub fn right_power_closed_form<S: Field>(p: &FamilyParams<S>, m: usize) -> Result<Vector<S>> {
    let n = p.n();
    if m < 2 || 2 * m + 1 > n {
        return Err(Error::OutOfRange(format!("power m = {m} must satisfy 2 <= m <= (n-1)/2 for n = {n}")));
    }
    let eta = match p {
        FamilyParams::One(p) => &p.alpha,
        FamilyParams::Two(p) => &p.beta,
    };
    Ok(Vector::from_coords(nested_sum(eta, m)))
}

fn check_range(n: usize, k: usize) -> Result<()> {
    if k > n {
        return Err(Error::OutOfRange(format!("basis index {k} exceeds n = {n}")));
    }
    Ok(())
}

// sum_{i=0}^{k-2} C(k-1, i) A^{k-1-i} B^i R^i(e_{k-i}) + B^{k-1} R^{k-1}(e_0)
fn binomial_part<S: Field>(table: &crate::StructureTable<S>, a: &S, b: &S, k: usize) -> Result<Vector<S>> {
    let dim = table.dim();
    let mut acc = right_power_e1(table, &Vector::basis(dim, 0), k - 1)?.scale(&b.pow(k as u32 - 1));
    for i in 0..=k - 2 {
        let weight = binomial_in::<S>(k - 1, i) * a.pow((k - 1 - i) as u32) * b.pow(i as u32);
        if weight.is_zero() {
            continue;
        }
        let term = right_power_e1(table, &Vector::basis(dim, k - i), i)?;
        acc = acc.add_scaled(&weight, &term);
    }
    Ok(acc)
}

/// `e'_k` for the first family under `e'_0 = A e_0 + B e_1`,
/// `e'_1 = (A+B) e_1 + B(theta - alpha_n) e_{n-1}`.
pub fn transformed_basis_closed_form1<S: Field>(p: &Family1Params<S>, a: &S, b: &S, k: usize) -> Result<Vector<S>> {
    let n = p.n;
    check_range(n, k)?;
    let sum = a.clone() + b.clone();
    if (a.clone() * sum.clone()).is_zero() {
        return Err(Error::InadmissibleWitness("A(A+B) must be nonzero".into()));
    }
    let dim = n + 1;
    let mut coords = vec![S::zero(); dim];
    match k {
        0 => {
            coords[0] = a.clone();
            coords[1] = b.clone();
        }
        1 => {
            coords[1] = sum;
            coords[n - 1] = coords[n - 1].clone() + b.clone() * (p.theta.clone() - p.alpha(n).clone());
        }
        2 => {
            coords[2] = a.clone() * sum.clone();
            for t in 3..n {
                coords[t] = b.clone() * sum.clone() * p.alpha(t).clone();
            }
            coords[n] = b.clone() * (a.clone() * p.theta.clone() + b.clone() * p.alpha(n).clone());
        }
        _ => return Ok(binomial_part(&p.table(), a, b, k)?.scale(&sum)),
    }
    Ok(Vector::from_coords(coords))
}

/// `e'_k` for the second family under `e'_0 = A e_0 + B e_1`,
/// `e'_1 = D e_1 - (B D gamma / A) e_{n-1}`.
pub fn transformed_basis_closed_form2<S: Field>(
    p: &Family2Params<S>,
    a: &S,
    b: &S,
    d: &S,
    k: usize,
) -> Result<Vector<S>> {
    let n = p.n;
    check_range(n, k)?;
    if (a.clone() * d.clone()).is_zero() {
        return Err(Error::InadmissibleWitness("A D must be nonzero".into()));
    }
    let dim = n + 1;
    let mut coords = vec![S::zero(); dim];
    match k {
        0 => {
            coords[0] = a.clone();
            coords[1] = b.clone();
        }
        1 => {
            let shift = (b.clone() * d.clone() * p.gamma.clone()).checked_div(a).expect("A is nonzero");
            coords[1] = d.clone();
            coords[n - 1] = coords[n - 1].clone() - shift;
        }
        2 => {
            coords[2] = a.clone() * a.clone();
            for t in 3..=n {
                coords[t] = a.clone() * b.clone() * p.beta(t).clone();
            }
            coords[n] = coords[n].clone() + b.clone() * b.clone() * p.gamma.clone();
        }
        _ => return Ok(binomial_part(&p.table(), a, b, k)?.scale(a)),
    }
    Ok(Vector::from_coords(coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::Family1Params;
    use crate::scalars::GaussianRational;

    fn g(v: i64) -> GaussianRational {
        GaussianRational::from_int(v)
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_in::<GaussianRational>(5, 2), g(10));
        assert_eq!(binomial_in::<GaussianRational>(3, 4), g(0));
        assert_eq!(binomial_in::<GaussianRational>(0, 0), g(1));
    }

    #[test]
    fn chain_sum_matches_hand_count() {
        // n = 6, eta_3 = 1, eta_4 = 2: e_2 -> e_4 (1), e_5 (2); two steps from e_1 reach e_5 via e_3
        let eta = vec![g(1), g(2), g(0), g(0)];
        assert_eq!(chain_sum(&eta, 2, 1, 4), g(1));
        assert_eq!(chain_sum(&eta, 2, 1, 5), g(2));
        assert_eq!(chain_sum(&eta, 1, 2, 5), g(1));
        // e_1 -> e_3 -> e_6 (2) and e_1 -> e_4 -> e_6 (2)
        assert_eq!(chain_sum(&eta, 1, 2, 6), g(4));
        assert_eq!(chain_sum(&eta, 3, 0, 3), g(1));
    }

    #[test]
    fn nested_sum_m2_in_small_dimension() {
        let p: FamilyParams = Family1Params::new(5, vec![g(1), g(0), g(0)], g(0)).unwrap().into();
        let v = right_power_closed_form(&p, 2).unwrap();
        assert_eq!(v, Vector::basis(6, 5));
        assert!(right_power_closed_form(&p, 3).is_err());
        assert!(right_power_closed_form(&p, 1).is_err());
    }

    #[test]
    fn trivial_witness_keeps_the_basis() {
        let p = Family1Params::new(5, vec![g(1), g(2), g(3)], g(4)).unwrap();
        for k in 0..=5 {
            assert_eq!(transformed_basis_closed_form1(&p, &g(1), &g(0), k).unwrap(), Vector::basis(6, k));
        }
        assert!(transformed_basis_closed_form1(&p, &g(1), &g(-1), 3).is_err());
    }
}
