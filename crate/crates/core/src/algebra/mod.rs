//! Structure constants, bilinear multiplication and the structural
//! invariants computed from them.

mod grading;
mod leibniz;
pub mod linalg;
mod series;

use std::ops::Index;

pub use grading::{gradation_type, natural_gradation, GradedType};
pub use leibniz::{leibniz_defect, LeibnizDefect};
pub use series::{is_filiform, lower_series, FlagSeries};

use crate::scalars::{Field, GaussianRational};
use crate::{Error, Result};

/// Coordinates of an element in the basis `e_0, ..., e_n`.
#[derive(Clone, PartialEq, Debug)]
pub struct Vector<S = GaussianRational> {
    coords: Vec<S>,
}

impl<S: Field> Vector<S> {
    pub fn zero(dim: usize) -> Self {
        Self { coords: vec![S::zero(); dim] }
    }

    /// The basis vector `e_index` of a `dim`-dimensional space.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zero(dim);
        v.coords[index] = S::one();
        v
    }

    pub fn from_coords(coords: Vec<S>) -> Self {
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<S> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Field::is_zero)
    }

    pub fn scale(&self, factor: &S) -> Self {
        Self::from_coords(self.coords.iter().map(|c| c.clone() * factor.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "vector dimensions differ");
        Self::from_coords(
            self.coords.iter().zip(&other.coords).map(|(a, b)| a.clone() + b.clone()).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "vector dimensions differ");
        Self::from_coords(
            self.coords.iter().zip(&other.coords).map(|(a, b)| a.clone() - b.clone()).collect(),
        )
    }

    /// `self + factor * other`
    pub fn add_scaled(&self, factor: &S, other: &Self) -> Self {
        if factor.is_zero() {
            return self.clone();
        }
        self.add(&other.scale(factor))
    }

    /// Index of the first nonzero coordinate.
    pub fn leading_index(&self) -> Option<usize> {
        self.coords.iter().position(|c| !c.is_zero())
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T) -> Vector<T> {
        Vector::from_coords(self.coords.iter().map(f).collect())
    }
}

impl<S> Index<usize> for Vector<S> {
    type Output = S;

    fn index(&self, index: usize) -> &S {
        &self.coords[index]
    }
}

/// Dense structure constants `c[i][j][k]` with `[e_i, e_j] = sum_k c[i][j][k] e_k`.
///
/// `n` is the largest basis index, so the algebra has dimension `n + 1`.
/// A sparse view of every product `[e_i, e_j]` is cached at construction
/// because all tables of interest have few nonzero constants.
#[derive(Clone, Debug)]
pub struct StructureTable<S = GaussianRational> {
    n: usize,
    constants: Vec<S>,
    products: Vec<Vec<(usize, S)>>,
}

impl<S: Field> PartialEq for StructureTable<S> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.constants == other.constants
    }
}

impl<S: Field> StructureTable<S> {
    pub fn zero(n: usize) -> Self {
        let dim = n + 1;
        Self { n, constants: vec![S::zero(); dim * dim * dim], products: vec![Vec::new(); dim * dim] }
    }

    /// Builds a table from `(i, j, k, c)` entries; repeated positions add up.
    pub fn from_entries(n: usize, entries: impl IntoIterator<Item = (usize, usize, usize, S)>) -> Result<Self> {
        let dim = n + 1;
        let mut constants = vec![S::zero(); dim * dim * dim];
        for (i, j, k, c) in entries {
            if i > n || j > n || k > n {
                return Err(Error::OutOfRange(format!(
                    "structure constant index ({i}, {j}, {k}) exceeds n = {n}"
                )));
            }
            let slot = &mut constants[(i * dim + j) * dim + k];
            *slot = slot.clone() + c;
        }
        Ok(Self::from_dense(n, constants))
    }

    fn from_dense(n: usize, constants: Vec<S>) -> Self {
        let dim = n + 1;
        let products = (0..dim * dim)
            .map(|ij| {
                (0..dim)
                    .filter_map(|k| {
                        let c = &constants[ij * dim + k];
                        (!c.is_zero()).then(|| (k, c.clone()))
                    })
                    .collect()
            })
            .collect();
        Self { n, constants, products }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n + 1
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &S {
        let dim = self.dim();
        &self.constants[(i * dim + j) * dim + k]
    }

    /// Nonzero coordinates of `[e_i, e_j]`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, S)] {
        &self.products[i * self.dim() + j]
    }

    /// `[e_i, e_j]` as a vector.
    pub fn basis_product_vector(&self, i: usize, j: usize) -> Vector<S> {
        let mut out = Vector::zero(self.dim());
        for (k, c) in self.basis_product(i, j) {
            out.coords[*k] = c.clone();
        }
        out
    }

    /// All nonzero constants in `(i, j, k)` order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &S)> + '_ {
        let dim = self.dim();
        self.products.iter().enumerate().flat_map(move |(ij, row)| {
            row.iter().map(move |(k, c)| (ij / dim, ij % dim, *k, c))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.products.iter().all(Vec::is_empty)
    }

    /// Bilinear product `[x, y]`.
    pub fn multiply(&self, x: &Vector<S>, y: &Vector<S>) -> Result<Vector<S>> {
        let dim = self.dim();
        for v in [x, y] {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.dim() });
            }
        }
        let mut out = vec![S::zero(); dim];
        for (i, xi) in x.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let row = self.basis_product(i, j);
                if row.is_empty() {
                    continue;
                }
                let weight = xi.clone() * yj.clone();
                for (k, c) in row {
                    out[*k] = out[*k].clone() + weight.clone() * c.clone();
                }
            }
        }
        Ok(Vector::from_coords(out))
    }

    /// Structure constants of the same algebra in the basis whose `i`-th
    /// vector has old coordinates `images[i]`.
    pub fn change_basis(&self, images: &[Vector<S>]) -> Result<Self> {
        let dim = self.dim();
        if images.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: images.len() });
        }
        if let Some(bad) = images.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.dim() });
        }
        let to_new = linalg::Matrix::from_columns(images).inverse()?;
        let mut constants = Vec::with_capacity(dim * dim * dim);
        for x in images {
            for y in images {
                let product = self.multiply(x, y)?;
                constants.extend(to_new.mul_vector(&product).into_coords());
            }
        }
        Ok(Self::from_dense(self.n, constants))
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T) -> StructureTable<T> {
        StructureTable::from_dense(self.n, self.constants.iter().map(f).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: i64) -> GaussianRational {
        GaussianRational::from_int(v)
    }

    #[test]
    fn multiply_is_bilinear() {
        // [e_0, e_0] = e_2, [e_1, e_0] = 3 e_2
        let t = StructureTable::from_entries(3, [(0, 0, 2, g(1)), (1, 0, 2, g(3))]).unwrap();
        let x = Vector::from_coords(vec![g(2), g(1), g(0), g(0)]);
        let y = Vector::basis(4, 0);
        assert_eq!(t.multiply(&x, &y).unwrap(), Vector::from_coords(vec![g(0), g(0), g(5), g(0)]));
        assert!(t.multiply(&x, &Vector::zero(4)).unwrap().is_zero());
    }

    #[test]
    fn multiply_checks_dimensions() {
        let t = StructureTable::<GaussianRational>::zero(3);
        let err = t.multiply(&Vector::zero(4), &Vector::zero(3)).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 4, found: 3 });
    }

    #[test]
    fn entries_out_of_range_are_rejected() {
        assert!(StructureTable::from_entries(3, [(0, 0, 4, g(1))]).is_err());
    }

    #[test]
    fn cancelling_entries_leave_no_sparse_residue() {
        let t = StructureTable::from_entries(3, [(0, 0, 2, g(1)), (0, 0, 2, g(-1))]).unwrap();
        assert!(t.is_zero());
        assert_eq!(t, StructureTable::zero(3));
    }
}
