//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Everything here is a pure function of its inputs. Matrices act on column
//! vectors, so an `r x c` matrix is a lattice map `Z^c -> Z^r`.

mod hermite;
mod matrix;
mod smith;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use hermite::RowLattice;
pub use matrix::IntMatrix;
pub use smith::{smith_normal_form, SmithForm};

/// A point of `Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(Vec<BigInt>);

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LatticeVector(coords)
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![BigInt::zero(); rank])
    }

    /// The `i`-th standard basis vector of `Z^rank`.
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = BigInt::one();
        v
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Non-negative gcd of the coordinates (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn dot(&self, other: &LatticeVector) -> BigInt {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn scale(&self, k: &BigInt) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| c * k).collect())
    }

    /// Concatenation `(self, other)` in `Z^(n+m)`.
    pub fn concat(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().chain(&other.0).cloned().collect())
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        Self::from_i64s(&v)
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A non-negative integer or infinity, e.g. the order of a cokernel.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtendedNat {
    Finite(BigUint),
    Infinite,
}

impl ExtendedNat {
    pub fn finite(n: u64) -> Self {
        ExtendedNat::Finite(BigUint::from(n))
    }

    pub fn as_finite(&self) -> Option<&BigUint> {
        match self {
            ExtendedNat::Finite(n) => Some(n),
            ExtendedNat::Infinite => None,
        }
    }
}

impl fmt::Display for ExtendedNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedNat::Finite(n) => write!(f, "{n}"),
            ExtendedNat::Infinite => write!(f, "infinite"),
        }
    }
}

/// `v / gcd(v)`.
pub fn primitive(v: &LatticeVector) -> Result<LatticeVector> {
    let g = v.content();
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(LatticeVector(v.0.iter().map(|c| c / &g).collect()))
}

/// Order of `Z^rows / A Z^cols`.
pub fn cokernel_order(a: &IntMatrix) -> ExtendedNat {
    let snf = smith_normal_form(a);
    if snf.rank() < a.rows() {
        return ExtendedNat::Infinite;
    }
    let product = snf
        .invariant_factors()
        .iter()
        .fold(BigInt::one(), |acc, d| acc * d);
    ExtendedNat::Finite(product.magnitude().clone())
}

/// Index of the lattice spanned by `basis` inside `Z^ambient_rank`; infinite
/// unless the vectors span a full-rank sublattice.
pub fn sublattice_index(basis: &[LatticeVector], ambient_rank: usize) -> Result<ExtendedNat> {
    for v in basis {
        if v.len() != ambient_rank {
            return Err(Error::DimensionMismatch {
                expected: ambient_rank,
                found: v.len(),
            });
        }
    }
    Ok(cokernel_order(&IntMatrix::from_columns(ambient_rank, basis)))
}

pub fn rank(a: &IntMatrix) -> usize {
    RowLattice::new(a).rank()
}

/// A Z-basis of `{x in Z^cols : A x = 0}`.
pub fn kernel_basis(a: &IntMatrix) -> Vec<LatticeVector> {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    (r..a.cols()).map(|j| snf.right().column(j)).collect()
}

/// A Z-basis of `span_R(vectors) ∩ Z^rank`.
pub fn saturation_basis(vectors: &[LatticeVector], rank: usize) -> Vec<LatticeVector> {
    let gens = IntMatrix::from_rows(rank, vectors);
    let orthogonal = kernel_basis(&gens);
    kernel_basis(&IntMatrix::from_rows(rank, &orthogonal))
}

/// Quotient map `Z^rank -> Z^rank / (span(vectors) ∩ Z^rank) ≅ Z^(rank - d)`.
///
/// The rows of the returned matrix are a basis of the annihilator of
/// `vectors` in the dual lattice, so the same matrix read row by row is a
/// basis of `span(vectors)^⊥ ∩ M`.
pub fn quotient_map(vectors: &[LatticeVector], rank: usize) -> IntMatrix {
    let gens = IntMatrix::from_rows(rank, vectors);
    IntMatrix::from_rows(rank, &kernel_basis(&gens))
}

pub(crate) fn sign_of(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(c)
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&lv(&[2, 4])).unwrap(), lv(&[1, 2]));
        assert_eq!(primitive(&lv(&[-3, 0])).unwrap(), lv(&[-1, 0]));
        assert_eq!(primitive(&lv(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn cokernel_order_examples() {
        assert_eq!(
            cokernel_order(&IntMatrix::from_i64(1, 1, &[2])),
            ExtendedNat::finite(2)
        );
        assert_eq!(cokernel_order(&IntMatrix::identity(2)), ExtendedNat::finite(1));
        assert_eq!(
            cokernel_order(&IntMatrix::from_i64(2, 1, &[1, 1])),
            ExtendedNat::Infinite
        );
        // map to the rank-0 lattice
        assert_eq!(cokernel_order(&IntMatrix::zeros(0, 3)), ExtendedNat::finite(1));
    }

    #[test]
    fn sublattice_index_examples() {
        assert_eq!(
            sublattice_index(&[lv(&[1, 0]), lv(&[0, 2])], 2).unwrap(),
            ExtendedNat::finite(2)
        );
        assert_eq!(
            sublattice_index(&[lv(&[1, 0]), lv(&[1, 2])], 2).unwrap(),
            ExtendedNat::finite(2)
        );
        assert_eq!(
            sublattice_index(&[lv(&[1, 1])], 2).unwrap(),
            ExtendedNat::Infinite
        );
        assert!(sublattice_index(&[lv(&[1, 1, 1])], 2).is_err());
    }

    #[test]
    fn saturation_and_quotient() {
        let sat = saturation_basis(&[lv(&[2, 2, 0])], 3);
        assert_eq!(sat.len(), 1);
        assert_eq!(primitive(&sat[0]).unwrap().content(), BigInt::one());
        assert!(sat[0] == lv(&[1, 1, 0]) || sat[0] == lv(&[-1, -1, 0]));

        let q = quotient_map(&[lv(&[1, 0])], 2);
        assert_eq!(q.rows(), 1);
        assert!(q.mul_vec(&lv(&[1, 0])).is_zero());
        assert_eq!(q.mul_vec(&lv(&[0, 1])).content(), BigInt::one());
    }

    #[test]
    fn kernel_of_empty_matrix_is_everything() {
        let k = kernel_basis(&IntMatrix::zeros(0, 2));
        assert_eq!(k.len(), 2);
        assert_eq!(
            sublattice_index(&k, 2).unwrap(),
            ExtendedNat::finite(1)
        );
    }

    fn small_vec(n: usize) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-50i64..50, n)
    }

    proptest! {
        #[test]
        fn primitive_is_idempotent(c in small_vec(3)) {
            let v = lv(&c);
            prop_assume!(!v.is_zero());
            let p = primitive(&v).unwrap();
            prop_assert!(p.is_primitive());
            prop_assert_eq!(primitive(&p).unwrap(), p.clone());
            // same direction
            let g = v.content();
            prop_assert_eq!(p.scale(&g), v);
        }

        #[test]
        fn kernel_vectors_are_annihilated(entries in small_vec(6)) {
            let a = IntMatrix::from_i64(2, 3, &entries);
            let kernel = kernel_basis(&a);
            prop_assert_eq!(kernel.len(), 3 - rank(&a));
            for k in &kernel {
                prop_assert!(a.mul_vec(k).is_zero());
            }
        }

        #[test]
        fn cokernel_order_invariant_under_unimodular_ops(
            entries in small_vec(9),
            mult in -5i64..5,
            i in 0usize..3,
            j in 0usize..3,
        ) {
            prop_assume!(i != j);
            let a = IntMatrix::from_i64(3, 3, &entries);
            let mut b = a.clone();
            b.add_row_multiple(i, j, &BigInt::from(mult));
            b.swap_columns(0, 2);
            b.add_column_multiple(j, i, &BigInt::from(-mult));
            b.negate_row(1);
            prop_assert_eq!(cokernel_order(&a), cokernel_order(&b));
        }
    }
}
