use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `left * A * right = diagonal` with `left`, `right` unimodular and the
/// diagonal entries `d_1 | d_2 | ... | d_r > 0` followed by zeros.
#[derive(Debug, Clone)]
pub struct SmithForm {
    left: IntMatrix,
    diagonal: IntMatrix,
    right: IntMatrix,
    rank: usize,
}

impl SmithForm {
    pub fn left(&self) -> &IntMatrix {
        &self.left
    }

    pub fn diagonal(&self) -> &IntMatrix {
        &self.diagonal
    }

    pub fn right(&self) -> &IntMatrix {
        &self.right
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.diagonal[(i, i)].clone()).collect()
    }

    pub fn into_parts(self) -> (IntMatrix, IntMatrix, IntMatrix) {
        (self.left, self.diagonal, self.right)
    }
}

/// Smith normal form with smallest-entry pivoting.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut left = IntMatrix::identity(m);
    let mut right = IntMatrix::identity(n);
    let mut t = 0;

    while t < m.min(n) {
        let Some((pi, pj)) = smallest_entry(&d, t..m, t..n) else {
            break;
        };
        move_to_pivot(&mut d, &mut left, &mut right, t, pi, pj);

        loop {
            let mut remainder = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = &d[(i, t)] / &d[(t, t)];
                d.add_row_multiple(i, t, &-&q);
                left.add_row_multiple(i, t, &-&q);
                remainder |= !d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = &d[(t, j)] / &d[(t, t)];
                d.add_column_multiple(j, t, &-&q);
                right.add_column_multiple(j, t, &-&q);
                remainder |= !d[(t, j)].is_zero();
            }
            if remainder {
                // a strictly smaller entry now sits in row or column t
                let row = smallest_entry(&d, t..t + 1, t..n);
                let col = smallest_entry(&d, t..m, t..t + 1);
                let (pi, pj) = match (row, col) {
                    (Some(r), Some(c)) => {
                        if d[r].abs() <= d[c].abs() {
                            r
                        } else {
                            c
                        }
                    }
                    (Some(r), None) => r,
                    (None, Some(c)) => c,
                    (None, None) => unreachable!("pivot row and column cannot both vanish"),
                };
                move_to_pivot(&mut d, &mut left, &mut right, t, pi, pj);
                continue;
            }
            let pivot = d[(t, t)].clone();
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    d.add_row_multiple(t, i, &BigInt::from(1));
                    left.add_row_multiple(t, i, &BigInt::from(1));
                }
                None => break,
            }
        }

        if d[(t, t)].is_negative() {
            d.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }

    SmithForm {
        left,
        diagonal: d,
        right,
        rank: t,
    }
}

fn smallest_entry(
    d: &IntMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let e = &d[(i, j)];
            if e.is_zero() {
                continue;
            }
            if best.is_none_or(|b| e.abs() < d[b].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn move_to_pivot(
    d: &mut IntMatrix,
    left: &mut IntMatrix,
    right: &mut IntMatrix,
    t: usize,
    i: usize,
    j: usize,
) {
    d.swap_rows(t, i);
    left.swap_rows(t, i);
    d.swap_columns(t, j);
    right.swap_columns(t, j);
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn check(a: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(&(s.left() * a) * s.right(), *s.diagonal());
        assert!(s.left().is_unimodular());
        assert!(s.right().is_unimodular());
        let d = s.diagonal();
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i != j || i >= s.rank() {
                    assert!(d[(i, j)].is_zero(), "off-diagonal or tail entry");
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]), "divisibility chain {f:?}");
        }
        assert!(f.iter().all(|x| x.is_positive()));
        s
    }

    #[test]
    fn identity() {
        let s = check(&IntMatrix::identity(2));
        assert_eq!(*s.diagonal(), IntMatrix::identity(2));
    }

    #[test]
    fn two_by_two_example() {
        // hand reduction: gcd of entries is 2, determinant is -8, so diag(2, 4)
        let s = check(&IntMatrix::from_i64(2, 2, &[2, 4, 6, 8]));
        assert_eq!(*s.diagonal(), IntMatrix::from_i64(2, 2, &[2, 0, 0, 4]));
    }

    #[test]
    fn zero_matrix() {
        let s = check(&IntMatrix::zeros(2, 2));
        assert_eq!(*s.diagonal(), IntMatrix::zeros(2, 2));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn empty_shapes() {
        let s = check(&IntMatrix::zeros(0, 3));
        assert_eq!(s.right().rows(), 3);
        let s = check(&IntMatrix::zeros(2, 0));
        assert_eq!(s.left().rows(), 2);
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(2, 3) is not in Smith form; the answer is diag(1, 6)
        let s = check(&IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]));
        assert_eq!(s.invariant_factors(), vec![BigInt::one(), BigInt::from(6)]);
    }

    #[test]
    fn large_entries_stay_exact() {
        let big = BigInt::from(1u64 << 62) * BigInt::from(1u64 << 62);
        let a = IntMatrix::from_entries(
            2,
            2,
            vec![big.clone(), BigInt::from(3), BigInt::from(5), big.clone() + 1],
        );
        check(&a);
    }

    proptest! {
        #[test]
        fn random_small_matrices(
            rows in 0usize..5,
            cols in 0usize..5,
            seed in prop::collection::vec(-20i64..20, 25),
        ) {
            let a = IntMatrix::from_i64(rows, cols, &seed[..rows * cols]);
            check(&a);
        }
    }
}
