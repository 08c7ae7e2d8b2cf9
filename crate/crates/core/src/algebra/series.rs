use super::linalg::echelon_basis;
use super::{StructureTable, Vector};
use crate::scalars::Field;

/// Echelon bases of the lower series `L^1 = L`, `L^{k+1} = [L^k, L]`.
///
/// Entry `k - 1` spans `L^k`. The series ends with the zero subspace for
/// nilpotent algebras, otherwise with the first repeated term.
#[derive(Clone, Debug, PartialEq)]
pub struct FlagSeries<S> {
    subspaces: Vec<Vec<Vector<S>>>,
}

impl<S: Field> FlagSeries<S> {
    pub fn subspaces(&self) -> &[Vec<Vector<S>>] {
        &self.subspaces
    }

    /// Echelon basis of `L^k` for `k >= 1`; terms past the end are the
    /// stable last term.
    pub fn term(&self, k: usize) -> &[Vector<S>] {
        assert!(k >= 1, "the lower series starts at L^1");
        let idx = (k - 1).min(self.subspaces.len() - 1);
        &self.subspaces[idx]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.subspaces.iter().map(Vec::len).collect()
    }
}

pub fn lower_series<S: Field>(table: &StructureTable<S>) -> FlagSeries<S> {
    let dim = table.dim();
    let mut current: Vec<Vector<S>> = (0..dim).map(|i| Vector::basis(dim, i)).collect();
    let mut subspaces = vec![current.clone()];
    while !current.is_empty() {
        let products = current.iter().flat_map(|v| {
            (0..dim).map(move |j| {
                table.multiply(v, &Vector::basis(dim, j)).expect("dimensions agree")
            })
        });
        let next = echelon_basis(dim, products.collect::<Vec<_>>());
        if next.len() == current.len() {
            break;
        }
        subspaces.push(next.clone());
        current = next;
    }
    FlagSeries { subspaces }
}

/// `dim L^k = (n + 1) - k` for `2 <= k <= n + 1`, where `dim L = n + 1`.
pub fn is_filiform<S: Field>(table: &StructureTable<S>) -> bool {
    let dim = table.dim();
    let expected: Vec<usize> = std::iter::once(dim).chain((0..dim - 1).rev()).collect();
    lower_series(table).dims() == expected
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::GaussianRational;

    #[test]
    fn zero_table_collapses_immediately() {
        let series = lower_series(&StructureTable::<GaussianRational>::zero(5));
        assert_eq!(series.dims(), vec![6, 0]);
        assert!(!is_filiform(&StructureTable::<GaussianRational>::zero(5)));
    }

    #[test]
    fn non_nilpotent_series_stops_when_stable() {
        // [e_0, e_0] = e_0 never shrinks
        let one = GaussianRational::from_int(1);
        let t = StructureTable::from_entries(3, [(0, 0, 0, one)]).unwrap();
        assert_eq!(lower_series(&t).dims(), vec![4, 1]);
        assert!(!is_filiform(&t));
    }
}
