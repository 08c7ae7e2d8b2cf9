use std::fmt;

use super::linalg::{in_span, pivot_columns, Matrix};
use super::series::{is_filiform, lower_series};
use super::{StructureTable, Vector};
use crate::families::{family1_table, family2_table};
use crate::scalars::Field;
use crate::{Error, Result};

/// Isomorphism type of the naturally graded algebra `gr L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GradedType {
    /// `[e_0,e_0] = e_2`, `[e_i,e_0] = e_{i+1}` for `1 <= i <= n-1`.
    Ngf1,
    /// `[e_0,e_0] = e_2`, `[e_i,e_0] = e_{i+1}` for `2 <= i <= n-1`.
    Ngf2,
    /// The graded Lie algebra. Recognition is by its degree-two bracket and
    /// whether `[gr L, gr L]` is abelian; the full table is not matched.
    NgLie { delta: u8 },
    NotFiliform,
    /// Filiform, but matching none of the three graded shapes.
    Unrecognized,
}

impl fmt::Display for GradedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Ngf1 => f.write_str("NGF1"),
            Self::Ngf2 => f.write_str("NGF2"),
            Self::NgLie { delta } => write!(f, "NGLie({delta})"),
            Self::NotFiliform => f.write_str("NotFiliform"),
            Self::Unrecognized => f.write_str("Unrecognized"),
        }
    }
}

fn degree(index: usize) -> usize {
    index.max(1)
}

/// Structure table of `gr L = L_1 + L_2 + ... + L_n`, `L_i = L^i / L^{i+1}`.
///
/// The graded basis takes the two standard basis vectors outside the pivots
/// of `L^2` as degree one, and for each `d >= 2` the first echelon vector of
/// `L^d` outside `L^{d+1}`. Index `d >= 2` of the output has degree `d`.
pub fn natural_gradation<S: Field>(table: &StructureTable<S>) -> Result<StructureTable<S>> {
    if !is_filiform(table) {
        return Err(Error::NotFiliform);
    }
    let n = table.n();
    let dim = table.dim();
    let series = lower_series(table);

    let square_pivots = pivot_columns(series.term(2));
    let mut basis: Vec<Vector<S>> = (0..dim)
        .filter(|c| !square_pivots.contains(c))
        .map(|c| Vector::basis(dim, c))
        .collect();
    debug_assert_eq!(basis.len(), 2);
    for d in 2..=n {
        let deeper = series.term(d + 1);
        let rep = series
            .term(d)
            .iter()
            .find(|v| !in_span(deeper, v))
            .ok_or(Error::NotFiliform)?;
        basis.push(rep.clone());
    }

    let to_graded = Matrix::from_columns(&basis).inverse()?;
    let mut entries = Vec::new();
    for a in 0..dim {
        for b in 0..dim {
            let target = degree(a) + degree(b);
            let product = table.multiply(&basis[a], &basis[b])?;
            let coords = to_graded.mul_vector(&product);
            if (0..dim).any(|m| degree(m) < target && !coords[m].is_zero()) {
                return Err(Error::GradingViolation { left: a, right: b });
            }
            if target <= n && !coords[target].is_zero() {
                entries.push((a, b, target, coords[target].clone()));
            }
        }
    }
    StructureTable::from_entries(n, entries)
}

/// Recognizes which graded algebra `gr L` is isomorphic to.
pub fn gradation_type<S: Field>(table: &StructureTable<S>) -> GradedType {
    if !is_filiform(table) {
        return GradedType::NotFiliform;
    }
    let Ok(graded) = natural_gradation(table) else {
        return GradedType::Unrecognized;
    };
    classify_graded(&graded)
}

// Bilinear form of the degree-one bracket, valued in the degree-two line.
struct DegreeTwoForm<S> {
    m: [[S; 2]; 2],
}

impl<S: Field> DegreeTwoForm<S> {
    fn eval(&self, x: &[S; 2], y: &[S; 2]) -> S {
        let mut acc = S::zero();
        for a in 0..2 {
            for b in 0..2 {
                acc = acc + x[a].clone() * self.m[a][b].clone() * y[b].clone();
            }
        }
        acc
    }

    fn det(&self) -> S {
        self.m[0][0].clone() * self.m[1][1].clone() - self.m[0][1].clone() * self.m[1][0].clone()
    }

    fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(Field::is_zero)
    }

    fn is_symmetric(&self) -> bool {
        self.m[0][1] == self.m[1][0]
    }

    fn is_antisymmetric(&self) -> bool {
        self.m[0][0].is_zero() && self.m[1][1].is_zero() && (self.m[0][1].clone() + self.m[1][0].clone()).is_zero()
    }

    /// Nonzero `r` with `M r = 0`; only meaningful for rank one.
    fn right_kernel(&self) -> [S; 2] {
        let row = if self.m[0].iter().any(|x| !x.is_zero()) { &self.m[0] } else { &self.m[1] };
        [row[1].clone(), -row[0].clone()]
    }
}

fn classify_graded<S: Field>(graded: &StructureTable<S>) -> GradedType {
    let n = graded.n();
    let form = DegreeTwoForm {
        m: [
            [graded.get(0, 0, 2).clone(), graded.get(0, 1, 2).clone()],
            [graded.get(1, 0, 2).clone(), graded.get(1, 1, 2).clone()],
        ],
    };
    if form.is_zero() {
        return GradedType::Unrecognized;
    }
    if form.is_antisymmetric() {
        let dim = graded.dim();
        let derived_abelian = (2..dim).all(|a| (2..dim).all(|b| graded.basis_product(a, b).is_empty()));
        let delta = u8::from(!derived_abelian);
        if delta == 1 && n % 2 == 0 {
            return GradedType::Unrecognized;
        }
        return GradedType::NgLie { delta };
    }
    if !form.det().is_zero() {
        return GradedType::Unrecognized;
    }
    let symmetric = form.is_symmetric();
    if normalized_matches(graded, &form, symmetric) {
        if symmetric {
            GradedType::Ngf2
        } else {
            GradedType::Ngf1
        }
    } else {
        GradedType::Unrecognized
    }
}

/// Builds the candidate basis `e_0' = s`, `e_1' = c r`, `e_2' = [s, s]`,
/// `e_{k+1}' = [e_k', s]` and compares the rewritten table with the model.
fn normalized_matches<S: Field>(graded: &StructureTable<S>, form: &DegreeTwoForm<S>, symmetric: bool) -> bool {
    let n = graded.n();
    let dim = graded.dim();
    let r = form.right_kernel();
    let candidates: [[i64; 2]; 6] = [[1, 0], [0, 1], [1, 1], [1, -1], [1, 2], [2, 1]];
    let model = if symmetric {
        family2_table(n, &vec![S::zero(); n - 2], &S::zero())
    } else {
        family1_table(n, &vec![S::zero(); n - 2], &S::zero())
    };
    let lift = |x: &[S; 2]| {
        let mut coords = vec![S::zero(); dim];
        coords[0] = x[0].clone();
        coords[1] = x[1].clone();
        Vector::from_coords(coords)
    };

    for cand in candidates {
        let s = [S::from_i64(cand[0]), S::from_i64(cand[1])];
        let independent = !(s[0].clone() * r[1].clone() - s[1].clone() * r[0].clone()).is_zero();
        let self_square = form.eval(&s, &s);
        if !independent || self_square.is_zero() {
            continue;
        }
        let scale = if symmetric {
            S::one()
        } else {
            match self_square.checked_div(&form.eval(&r, &s)) {
                Some(c) => c,
                None => continue,
            }
        };
        let e0 = lift(&s);
        let e1 = lift(&[r[0].clone() * scale.clone(), r[1].clone() * scale]);
        let mut images = vec![e0.clone(), e1];
        let Ok(mut current) = graded.multiply(&e0, &e0) else { return false };
        images.push(current.clone());
        for _ in 3..=n {
            let Ok(next) = graded.multiply(&current, &e0) else { return false };
            images.push(next.clone());
            current = next;
        }
        return match graded.change_basis(&images) {
            Ok(rewritten) => rewritten == model,
            Err(_) => false,
        };
    }
    false
}
