//! Torus-invariant cycles, proper pushforward, and Chow groups presented by
//! orbit closures modulo divisors of characters.
//!
//! `A_k(X)` is generated by the classes `[V(σ)]` with `dim σ = n - k`. For
//! every cone τ of dimension `n - k - 1` and every `m ∈ τ^⊥ ∩ M` there is a
//! relation
//!
//! ```text
//!     Σ_{σ ⊃ τ, dim σ = dim τ + 1} ⟨m, n_{σ,τ}⟩ [V(σ)] = 0
//! ```
//!
//! where `n_{σ,τ}` is the lattice point of σ generating `N_σ / N_τ ≅ Z`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cone_map::impl_cone_map;
use crate::constructible::{orbit_map, OrbitMap};
use crate::error::{Error, Result};
use crate::fan::{same_fan, ConeId, Fan, ToricMorphism};
use crate::lattice::{primitive, quotient_map, smith_normal_form, IntMatrix, LatticeVector, RowLattice};

/// `Σ_σ m_σ [V(σ)]`; the term at σ has dimension `n - dim σ`.
#[derive(Debug, Clone)]
pub struct TCycle {
    fan: Arc<Fan>,
    coeffs: Vec<BigInt>,
}

impl_cone_map!(TCycle);

impl TCycle {
    /// The fundamental class `[X] = [V(0)]`.
    pub fn fundamental(fan: Arc<Fan>) -> Self {
        let zero = fan.zero_cone();
        Self::basis(fan, zero)
    }

    /// Dimension of `V(σ)`.
    pub fn cycle_dim(&self, sigma: ConeId) -> usize {
        self.fan.rank() - self.fan.cone(sigma).dim()
    }

    /// The part of dimension `k`.
    pub fn graded_part(&self, k: usize) -> TCycle {
        let n = self.fan.rank();
        let coeffs = self
            .fan
            .cones()
            .iter()
            .zip(&self.coeffs)
            .map(|(c, m)| {
                if n - c.dim() == k {
                    m.clone()
                } else {
                    BigInt::zero()
                }
            })
            .collect();
        TCycle {
            fan: self.fan.clone(),
            coeffs,
        }
    }

    /// `Some(k)` if every nonzero term has dimension `k`.
    pub fn homogeneous_dim(&self) -> Option<usize> {
        let mut dims = self.terms().map(|(c, _)| self.cycle_dim(c));
        let first = dims.next()?;
        dims.all(|d| d == first).then_some(first)
    }

    /// Coefficient vector of the dimension-`k` part over the generators of
    /// `A_k`.
    fn graded_vector(&self, presentation: &ChowPresentation) -> LatticeVector {
        LatticeVector::new(
            presentation
                .generators
                .iter()
                .map(|c| self.coeffs[c.index()].clone())
                .collect(),
        )
    }

    /// Sum of the coefficients of the 0-dimensional orbit closures.
    pub fn point_sum(&self) -> BigInt {
        self.fan
            .cones_of_dim(self.fan.rank())
            .map(|c| &self.coeffs[c.index()])
            .sum()
    }
}

impl fmt::Display for TCycle {
    /// Graded parts from the top dimension down, e.g.
    /// `dim 1: [V{0}] + 2[V{1}]`; terms follow the canonical cone order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.fan.rank();
        let mut first = true;
        for k in (0..=n).rev() {
            let terms: Vec<String> = self
                .terms()
                .filter(|(c, _)| self.cycle_dim(*c) == k)
                .map(|(c, m)| {
                    let label = format!("[V{}]", self.fan.cone_label(c));
                    if m.is_one() {
                        label
                    } else if *m == BigInt::from(-1) {
                        format!("-{label}")
                    } else {
                        format!("{m}{label}")
                    }
                })
                .collect();
            if terms.is_empty() {
                continue;
            }
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "dim {k}: {}", terms.join(" + ").replace("+ -", "- "))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Generators and relations of `A_k(X)`.
#[derive(Debug, Clone)]
pub struct ChowPresentation {
    k: usize,
    generators: Vec<ConeId>,
    relation_cones: Vec<ConeId>,
    relations: IntMatrix,
    lattice: RowLattice,
}

/// `Z^free_rank ⊕ ⊕ Z/t_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for GroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl ChowPresentation {
    fn build(fan: &Fan, k: usize) -> ChowPresentation {
        let n = fan.rank();
        let gen_dim = n - k;
        let generators: Vec<ConeId> = fan.cones_of_dim(gen_dim).collect();
        let mut rows: Vec<LatticeVector> = Vec::new();
        let mut relation_cones = Vec::new();
        if gen_dim > 0 {
            for tau in fan.cones_of_dim(gen_dim - 1) {
                let quotient = quotient_map(&fan.generators(tau), n);
                let mut block = vec![vec![BigInt::zero(); generators.len()]; quotient.rows()];
                for sigma in fan.cofacets(tau) {
                    let extra = fan
                        .cone(sigma)
                        .rays()
                        .iter()
                        .copied()
                        .find(|r| !fan.cone(tau).contains_ray(*r))
                        .expect("a cofacet has a ray outside its facet");
                    let image = quotient.mul_vec(fan.ray(extra));
                    let normal = primitive(&image).expect("ray outside the facet span");
                    let col = generators
                        .iter()
                        .position(|&g| g == sigma)
                        .expect("cofacet is a generator");
                    for (j, w) in normal.coords().iter().enumerate() {
                        block[j][col] = w.clone();
                    }
                }
                for row in block {
                    rows.push(LatticeVector::new(row));
                    relation_cones.push(tau);
                }
            }
        }
        let relations = IntMatrix::from_rows(generators.len(), &rows);
        let lattice = RowLattice::new(&relations);
        ChowPresentation {
            k,
            generators,
            relation_cones,
            relations,
            lattice,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generators(&self) -> &[ConeId] {
        &self.generators
    }

    /// Rows are relations, columns follow [`ChowPresentation::generators`].
    pub fn relation_matrix(&self) -> &IntMatrix {
        &self.relations
    }

    /// The cone τ each relation row comes from.
    pub fn relation_cones(&self) -> &[ConeId] {
        &self.relation_cones
    }

    pub fn group_invariants(&self) -> GroupInvariants {
        let snf = smith_normal_form(&self.relations);
        GroupInvariants {
            free_rank: self.generators.len() - snf.rank(),
            torsion: snf
                .invariant_factors()
                .into_iter()
                .filter(|d| !d.is_one())
                .collect(),
        }
    }

    /// Whether a coefficient vector over the generators is a relation.
    pub fn is_relation(&self, v: &LatticeVector) -> bool {
        self.lattice.contains(v)
    }
}

/// `A_k(X)` presented by orbit closures; cached on the fan.
pub fn chow_presentation(fan: &Fan, k: usize) -> Result<&ChowPresentation> {
    let n = fan.rank();
    if k > n {
        return Err(Error::BadDimension { k, rank: n });
    }
    let all = fan
        .chow_cache()
        .get_or_init(|| (0..=n).map(|k| ChowPresentation::build(fan, k)).collect());
    Ok(&all[k])
}

/// Invariants of `A_k(X)` for `k = 0..=n`.
pub fn chow_group_invariants(fan: &Fan) -> Vec<GroupInvariants> {
    (0..=fan.rank())
        .map(|k| {
            chow_presentation(fan, k)
                .expect("k within range")
                .group_invariants()
        })
        .collect()
}

/// Rational equivalence, decided grade by grade by lattice membership.
pub fn equivalent(z1: &TCycle, z2: &TCycle) -> Result<bool> {
    let diff = z1.checked_sub(z2)?;
    let fan = z1.fan();
    for k in 0..=fan.rank() {
        let p = chow_presentation(fan, k)?;
        if !p.is_relation(&diff.graded_vector(p)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Proper pushforward of invariant cycles.
///
/// Accepted morphisms: any morphism from a complete fan, and
/// support-preserving refinements.
pub fn pushforward_cycle(fm: &ToricMorphism, z: &TCycle) -> Result<TCycle> {
    if !same_fan(fm.source(), z.fan()) {
        return Err(Error::FanMismatch);
    }
    if !(fm.source().is_complete() || fm.is_refinement()) {
        return Err(Error::NotProper);
    }
    let (source, target) = (fm.source(), fm.target());
    let mut out = TCycle::zero(target.clone());
    for (sigma, m) in z.terms() {
        let tau = fm.image_cone(sigma);
        let dim_source = source.rank() - source.cone(sigma).dim();
        let dim_target = target.rank() - target.cone(tau).dim();
        if dim_source != dim_target {
            continue;
        }
        if let OrbitMap::Finite(degree) = orbit_map(fm, sigma) {
            out.coeffs[tau.index()] += m * degree;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn free_ranks(fan: &Fan) -> Vec<usize> {
        chow_group_invariants(fan).iter().map(|g| g.free_rank).collect()
    }

    fn cycle(fan: &Arc<Fan>, terms: &[(&[usize], i64)]) -> TCycle {
        TCycle::from_ray_sets(fan.clone(), terms).unwrap()
    }

    #[test]
    fn projective_plane_presentations() {
        let p2 = corpus::projective_plane();
        let a1 = chow_presentation(&p2, 1).unwrap();
        assert_eq!(a1.generators().len(), 3);
        assert_eq!(a1.relation_matrix().rows(), 2);
        assert_eq!(crate::lattice::rank(a1.relation_matrix()), 2);
        assert_eq!(free_ranks(&p2), vec![1, 1, 1]);
        assert!(chow_group_invariants(&p2).iter().all(|g| g.torsion.is_empty()));
        assert_eq!(
            chow_presentation(&p2, 3).unwrap_err(),
            Error::BadDimension { k: 3, rank: 2 }
        );
    }

    #[test]
    fn small_group_invariants() {
        assert_eq!(free_ranks(&corpus::p1_times_p1()), vec![1, 2, 1]);
        assert_eq!(free_ranks(&corpus::projective_line()), vec![1, 1]);
        assert_eq!(free_ranks(&corpus::affine_plane()), vec![0, 0, 1]);
        let a0 = &chow_group_invariants(&corpus::affine_plane())[0];
        assert_eq!(a0.torsion, Vec::<BigInt>::new());
    }

    #[test]
    fn weighted_projective_plane_has_torsion_free_a1_but_lattice_index_shows() {
        // P(1,1,2): rays (1,0), (0,1), (-1,-2); A_1 ≅ Z, A_0 ≅ Z
        let fan = Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -2]], &[&[0, 1], &[1, 2], &[0, 2]])
            .unwrap();
        let inv = chow_group_invariants(&fan);
        assert_eq!(inv[1].free_rank, 1);
        assert_eq!(inv[0].free_rank, 1);
    }

    #[test]
    fn rational_equivalence_examples() {
        let p2 = corpus::projective_plane();
        let a = cycle(&p2, &[(&[0, 1], 1)]);
        let b = cycle(&p2, &[(&[1, 2], 1)]);
        assert!(equivalent(&a, &b).unwrap());
        assert!(equivalent(&a, &a).unwrap());
        assert!(!equivalent(&a, &a.scaled(&BigInt::from(2))).unwrap());

        let sq = corpus::p1_times_p1();
        let r1 = cycle(&sq, &[(&[0], 1)]);
        let r2 = cycle(&sq, &[(&[1], 1)]);
        assert!(!equivalent(&r1, &r2).unwrap());
        // opposite rulings are equivalent
        assert!(equivalent(&r1, &cycle(&sq, &[(&[2], 1)])).unwrap());

        let other = TCycle::zero(corpus::projective_line());
        assert_eq!(equivalent(&a, &other), Err(Error::FanMismatch));
    }

    #[test]
    fn lines_on_projective_plane() {
        let p2 = corpus::projective_plane();
        let l0 = cycle(&p2, &[(&[0], 1)]);
        let l2 = cycle(&p2, &[(&[2], 1)]);
        assert!(equivalent(&l0, &l2).unwrap());
    }

    #[test]
    fn blow_down_cycles() {
        let bl = corpus::hirzebruch_f1();
        let p2 = corpus::projective_plane();
        let fm = ToricMorphism::new(IntMatrix::identity(2), bl.clone(), p2.clone()).unwrap();
        let exceptional = cycle(&bl, &[(&[3], 1)]);
        assert!(pushforward_cycle(&fm, &exceptional).unwrap().is_zero());
        let patch = cycle(&bl, &[(&[0, 3], 1)]);
        assert_eq!(
            pushforward_cycle(&fm, &patch).unwrap(),
            cycle(&p2, &[(&[0, 1], 1)])
        );
    }

    #[test]
    fn doubling_map_cycles() {
        let p1 = corpus::projective_line();
        let fm = ToricMorphism::new(IntMatrix::from_i64(1, 1, &[2]), p1.clone(), p1.clone()).unwrap();
        let whole = TCycle::fundamental(p1.clone());
        assert_eq!(pushforward_cycle(&fm, &whole).unwrap(), whole.scaled(&BigInt::from(2)));
        let pt = cycle(&p1, &[(&[0], 1)]);
        assert_eq!(pushforward_cycle(&fm, &pt).unwrap(), pt);
    }

    #[test]
    fn identity_pushforward() {
        let fan = corpus::hirzebruch_f1();
        let z = cycle(&fan, &[(&[], 2), (&[1], -1), (&[1, 2], 5)]);
        let id = ToricMorphism::identity(fan);
        assert_eq!(pushforward_cycle(&id, &z).unwrap(), z);
    }

    #[test]
    fn open_inclusion_is_not_proper() {
        let a1 = corpus::affine_line();
        let p1 = corpus::projective_line();
        let fm = ToricMorphism::new(IntMatrix::identity(1), a1.clone(), p1).unwrap();
        assert_eq!(
            pushforward_cycle(&fm, &TCycle::fundamental(a1)),
            Err(Error::NotProper)
        );
    }

    #[test]
    fn display_is_graded() {
        let p1 = corpus::projective_line();
        let z = cycle(&p1, &[(&[], 1), (&[0], 2), (&[1], -1)]);
        assert_eq!(z.to_string(), "dim 1: [V{}]\ndim 0: -[V{1}] + 2[V{0}]");
        assert_eq!(TCycle::zero(p1).to_string(), "0");
    }
}
