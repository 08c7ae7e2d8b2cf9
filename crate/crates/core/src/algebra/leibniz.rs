use super::{StructureTable, Vector};
use crate::scalars::Field;

/// A basis triple violating the Leibniz identity together with the value of
/// `[e_i,[e_j,e_k]] - [[e_i,e_j],e_k] + [[e_i,e_k],e_j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LeibnizDefect<S> {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub defect: Vector<S>,
}

/// Checks `[x,[y,z]] = [[x,y],z] - [[x,z],y]` on every basis triple.
///
/// The identity is trilinear, so an empty result means the table defines a
/// Leibniz algebra.
pub fn leibniz_defect<S: Field>(table: &StructureTable<S>) -> Vec<LeibnizDefect<S>> {
    let dim = table.dim();
    // sum over l of c[j][k][l] [e_i, e_l]
    let left_of = |i: usize, outer: &[(usize, S)], out: &mut [S], sign: bool| {
        for (l, c) in outer {
            for (m, d) in table.basis_product(i, *l) {
                let term = c.clone() * d.clone();
                out[*m] = if sign { out[*m].clone() + term } else { out[*m].clone() - term };
            }
        }
    };
    // sum over l of c[i][j][l] [e_l, e_k]
    let right_of = |outer: &[(usize, S)], k: usize, out: &mut [S], sign: bool| {
        for (l, c) in outer {
            for (m, d) in table.basis_product(*l, k) {
                let term = c.clone() * d.clone();
                out[*m] = if sign { out[*m].clone() + term } else { out[*m].clone() - term };
            }
        }
    };

    let mut defects = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let mut out = vec![S::zero(); dim];
                left_of(i, table.basis_product(j, k), &mut out, true);
                right_of(table.basis_product(i, j), k, &mut out, false);
                right_of(table.basis_product(i, k), j, &mut out, true);
                if out.iter().any(|x| !x.is_zero()) {
                    defects.push(LeibnizDefect { i, j, k, defect: Vector::from_coords(out) });
                }
            }
        }
    }
    defects
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::GaussianRational;

    fn g(v: i64) -> GaussianRational {
        GaussianRational::from_int(v)
    }

    #[test]
    fn abelian_algebra_has_no_defect() {
        assert!(leibniz_defect(&StructureTable::<GaussianRational>::zero(4)).is_empty());
    }

    #[test]
    fn agrees_with_direct_products() {
        // a non-Leibniz table: [e_0,e_0] = e_1, [e_1,e_0] = e_0
        let t = StructureTable::from_entries(2, [(0, 0, 1, g(1)), (1, 0, 0, g(1))]).unwrap();
        let defects = leibniz_defect(&t);
        assert!(!defects.is_empty());
        for d in &defects {
            let e = |idx| Vector::basis(3, idx);
            let lhs = t.multiply(&e(d.i), &t.multiply(&e(d.j), &e(d.k)).unwrap()).unwrap();
            let a = t.multiply(&t.multiply(&e(d.i), &e(d.j)).unwrap(), &e(d.k)).unwrap();
            let b = t.multiply(&t.multiply(&e(d.i), &e(d.k)).unwrap(), &e(d.j)).unwrap();
            assert_eq!(d.defect, lhs.sub(&a).add(&b));
        }
    }
}
