use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{IntMatrix, LatticeVector};

/// The row lattice of an integer matrix, kept in row Hermite normal form.
///
/// Pivots are positive and entries above a pivot are reduced into
/// `[0, pivot)`, so the form is unique for a given lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowLattice {
    cols: usize,
    rows: Vec<LatticeVector>,
    pivots: Vec<usize>,
}

impl RowLattice {
    pub fn new(a: &IntMatrix) -> Self {
        let mut h = a.clone();
        let (m, n) = (h.rows(), h.cols());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            loop {
                let best = (r..m)
                    .filter(|&i| !h[(i, c)].is_zero())
                    .min_by(|&x, &y| h[(x, c)].abs().cmp(&h[(y, c)].abs()));
                let Some(p) = best else { break };
                h.swap_rows(r, p);
                let mut clean = true;
                for i in r + 1..m {
                    if h[(i, c)].is_zero() {
                        continue;
                    }
                    let q = &h[(i, c)] / &h[(r, c)];
                    h.add_row_multiple(i, r, &-q);
                    clean &= h[(i, c)].is_zero();
                }
                if clean {
                    break;
                }
            }
            if h[(r, c)].is_zero() {
                continue;
            }
            if h[(r, c)].is_negative() {
                h.negate_row(r);
            }
            for i in 0..r {
                let q = h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row_multiple(i, r, &-q);
            }
            pivots.push(c);
            r += 1;
        }
        RowLattice {
            cols: n,
            rows: (0..r).map(|i| h.row(i)).collect(),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[LatticeVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Whether `v` is an integer combination of the rows.
    pub fn contains(&self, v: &LatticeVector) -> bool {
        assert_eq!(v.len(), self.cols, "vector length");
        let mut rest = v.clone();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let (q, r) = rest.coords()[c].div_rem(&row.coords()[c]);
            if !r.is_zero() {
                return false;
            }
            rest = &rest - &row.scale(&q);
        }
        rest.is_zero()
    }

    /// Reduced representative of `v` modulo the lattice (zero iff contained).
    pub fn reduce(&self, v: &LatticeVector) -> LatticeVector {
        let mut rest = v.clone();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let q: BigInt = rest.coords()[c].div_floor(&row.coords()[c]);
            rest = &rest - &row.scale(&q);
        }
        rest
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::smith_normal_form;
    use proptest::prelude::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(c)
    }

    #[test]
    fn echelon_shape() {
        let h = RowLattice::new(&IntMatrix::from_i64(3, 3, &[2, 4, 4, -6, 6, 12, 10, -4, -16]));
        assert_eq!(h.rank(), 3);
        for (k, row) in h.basis().iter().enumerate() {
            let p = h.pivots()[k];
            assert!(row.coords()[p].is_positive());
            assert!(row.coords()[..p].iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn membership() {
        let h = RowLattice::new(&IntMatrix::from_i64(2, 3, &[1, 0, -1, 0, 1, -1]));
        assert!(h.contains(&lv(&[3, -2, -1])));
        assert!(!h.contains(&lv(&[1, 0, 0])));
        let h2 = RowLattice::new(&IntMatrix::from_i64(1, 2, &[2, 4]));
        assert!(h2.contains(&lv(&[-2, -4])));
        assert!(!h2.contains(&lv(&[1, 2])));
    }

    proptest! {
        // HNF rank agrees with the independent Smith route
        #[test]
        fn rank_agrees_with_smith(entries in prop::collection::vec(-9i64..9, 12)) {
            let a = IntMatrix::from_i64(3, 4, &entries);
            prop_assert_eq!(RowLattice::new(&a).rank(), smith_normal_form(&a).rank());
        }

        #[test]
        fn rows_and_combinations_are_members(
            entries in prop::collection::vec(-9i64..9, 12),
            coeffs in prop::collection::vec(-5i64..5, 3),
        ) {
            let a = IntMatrix::from_i64(3, 4, &entries);
            let h = RowLattice::new(&a);
            let mut v = LatticeVector::zero(4);
            for (i, c) in coeffs.iter().enumerate() {
                v = &v + &a.row(i).scale(&BigInt::from(*c));
            }
            prop_assert!(h.contains(&v));
            prop_assert!(h.reduce(&v).is_zero());
        }
    }
}
