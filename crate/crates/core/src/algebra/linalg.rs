//! Row reduction and inversion over any [`Field`].

use super::Vector;
use crate::scalars::Field;
use crate::{Error, Result};

/// Reduced row echelon basis of the span of `vectors`, leading entries one,
/// rows ordered by pivot column. Equal subspaces give identical output.
pub fn echelon_basis<S: Field>(dim: usize, vectors: impl IntoIterator<Item = Vector<S>>) -> Vec<Vector<S>> {
    let mut rows: Vec<Vec<S>> = vectors
        .into_iter()
        .map(|v| {
            assert_eq!(v.dim(), dim, "vector dimensions differ");
            v.into_coords()
        })
        .filter(|c| c.iter().any(|x| !x.is_zero()))
        .collect();
    let mut rank = 0;
    for col in 0..dim {
        if rank == rows.len() {
            break;
        }
        let pivot = (rank..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .max_by(|&a, &b| {
                rows[a][col]
                    .pivot_weight()
                    .partial_cmp(&rows[b][col].pivot_weight())
                    .unwrap_or(std::cmp::Ordering::Equal)
                    .then(b.cmp(&a))
            });
        let Some(pivot) = pivot else { continue };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inverse().expect("nonzero pivot");
        for x in rows[rank].iter_mut().skip(col) {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x = x.clone() - factor.clone() * p.clone();
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows.into_iter().map(Vector::from_coords).collect()
}

/// Pivot columns of an echelon basis produced by [`echelon_basis`].
pub fn pivot_columns<S: Field>(basis: &[Vector<S>]) -> Vec<usize> {
    basis.iter().filter_map(Vector::leading_index).collect()
}

/// Whether `v` lies in the span of an echelon basis.
pub fn in_span<S: Field>(basis: &[Vector<S>], v: &Vector<S>) -> bool {
    let mut rest = v.clone();
    for row in basis {
        let Some(p) = row.leading_index() else { continue };
        if !rest[p].is_zero() {
            let factor = -rest[p].clone();
            rest = rest.add_scaled(&factor, row);
        }
    }
    rest.is_zero()
}

/// A square matrix stored by rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: Vec<Vec<S>>,
}

impl<S: Field> Matrix<S> {
    pub fn identity(dim: usize) -> Self {
        Self {
            rows: (0..dim)
                .map(|r| (0..dim).map(|c| if r == c { S::one() } else { S::zero() }).collect())
                .collect(),
        }
    }

    /// Matrix whose `c`-th column is `columns[c]`.
    pub fn from_columns(columns: &[Vector<S>]) -> Self {
        let dim = columns.len();
        Self {
            rows: (0..dim).map(|r| columns.iter().map(|col| col[r].clone()).collect()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn column(&self, c: usize) -> Vector<S> {
        Vector::from_coords(self.rows.iter().map(|row| row[c].clone()).collect())
    }

    pub fn columns(&self) -> Vec<Vector<S>> {
        (0..self.dim()).map(|c| self.column(c)).collect()
    }

    pub fn mul_vector(&self, v: &Vector<S>) -> Vector<S> {
        Vector::from_coords(
            self.rows
                .iter()
                .map(|row| {
                    row.iter().zip(v.coords()).fold(S::zero(), |acc, (a, b)| {
                        if a.is_zero() || b.is_zero() {
                            acc
                        } else {
                            acc + a.clone() * b.clone()
                        }
                    })
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cols: Vec<Vector<S>> = other.columns().iter().map(|c| self.mul_vector(c)).collect();
        Self::from_columns(&cols)
    }

    /// Gauss-Jordan inverse; [`Error::SingularBasis`] when not invertible.
    pub fn inverse(&self) -> Result<Self> {
        let dim = self.dim();
        let mut work: Vec<Vec<S>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let mut ext = row.clone();
                ext.extend((0..dim).map(|c| if r == c { S::one() } else { S::zero() }));
                ext
            })
            .collect();
        for col in 0..dim {
            let pivot = (col..dim)
                .filter(|&r| !work[r][col].is_zero())
                .max_by(|&a, &b| {
                    work[a][col]
                        .pivot_weight()
                        .partial_cmp(&work[b][col].pivot_weight())
                        .unwrap_or(std::cmp::Ordering::Equal)
                        .then(b.cmp(&a))
                })
                .ok_or(Error::SingularBasis)?;
            work.swap(col, pivot);
            let inv = work[col][col].inverse().ok_or(Error::SingularBasis)?;
            for x in work[col].iter_mut() {
                *x = x.clone() * inv.clone();
            }
            let pivot_row = work[col].clone();
            for (r, row) in work.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x = x.clone() - factor.clone() * p.clone();
                    }
                }
            }
        }
        Ok(Self { rows: work.into_iter().map(|row| row[dim..].to_vec()).collect() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::GaussianRational;

    fn v(c: &[i64]) -> Vector<GaussianRational> {
        Vector::from_coords(c.iter().map(|&x| GaussianRational::from_int(x)).collect())
    }

    #[test]
    fn echelon_form_is_canonical() {
        let a = echelon_basis(3, [v(&[1, 2, 3]), v(&[2, 4, 7])]);
        let b = echelon_basis(3, [v(&[0, 0, 5]), v(&[3, 6, 0]), v(&[1, 2, 3])]);
        assert_eq!(a, b);
        assert_eq!(a, vec![v(&[1, 2, 0]), v(&[0, 0, 1])]);
        assert_eq!(pivot_columns(&a), vec![0, 2]);
    }

    #[test]
    fn span_membership() {
        let basis = echelon_basis(3, [v(&[1, 1, 0]), v(&[0, 1, 1])]);
        assert!(in_span(&basis, &v(&[1, 3, 2])));
        assert!(!in_span(&basis, &v(&[0, 0, 1])));
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_columns(&[v(&[1, 0, 2]), v(&[1, 1, 0]), v(&[0, 3, 1])]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
    }

    #[test]
    fn singular_matrix_is_reported() {
        let m = Matrix::from_columns(&[v(&[1, 2]), v(&[2, 4])]);
        assert_eq!(m.inverse(), Err(Error::SingularBasis));
    }
}
