use std::collections::BTreeMap;
use std::sync::Arc;

use super::{same_fan, ConeId, Fan};
use crate::error::{Error, Result};
use crate::lattice::{IntMatrix, LatticeVector};

/// A torus-equivariant morphism given by a lattice map compatible with the
/// fans. `image[σ]` is the smallest target cone containing the image of σ.
#[derive(Debug, Clone)]
pub struct ToricMorphism {
    matrix: IntMatrix,
    source: Arc<Fan>,
    target: Arc<Fan>,
    image: Vec<ConeId>,
}

impl ToricMorphism {
    pub fn new(matrix: IntMatrix, source: Arc<Fan>, target: Arc<Fan>) -> Result<ToricMorphism> {
        if matrix.cols() != source.rank() {
            return Err(Error::DimensionMismatch {
                expected: source.rank(),
                found: matrix.cols(),
            });
        }
        if matrix.rows() != target.rank() {
            return Err(Error::DimensionMismatch {
                expected: target.rank(),
                found: matrix.rows(),
            });
        }
        let mut image = Vec::with_capacity(source.num_cones());
        for sigma in source.cone_ids() {
            let pushed: Vec<LatticeVector> = source
                .generators(sigma)
                .iter()
                .map(|g| matrix.mul_vec(g))
                .collect();
            match target.smallest_cone_containing(&pushed) {
                Some(tau) => image.push(tau),
                None => {
                    return Err(Error::Incompatible {
                        cone: source.cone_vectors_label(sigma),
                    })
                }
            }
        }
        Ok(ToricMorphism {
            matrix,
            source,
            target,
            image,
        })
    }

    pub fn identity(fan: Arc<Fan>) -> ToricMorphism {
        let n = fan.rank();
        ToricMorphism::new(IntMatrix::identity(n), fan.clone(), fan)
            .expect("identity is always compatible")
    }

    /// The unique morphism to the point.
    pub fn to_point(fan: Arc<Fan>) -> ToricMorphism {
        let n = fan.rank();
        ToricMorphism::new(IntMatrix::zeros(0, n), fan, Arc::new(Fan::point()))
            .expect("every fan maps to the point")
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn source(&self) -> &Arc<Fan> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Fan> {
        &self.target
    }

    pub fn image_cone(&self, sigma: ConeId) -> ConeId {
        self.image[sigma.0]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ToricMorphism) -> Result<ToricMorphism> {
        if !same_fan(&self.target, &next.source) {
            return Err(Error::FanMismatch);
        }
        ToricMorphism::new(
            &next.matrix * &self.matrix,
            self.source.clone(),
            next.target.clone(),
        )
    }

    /// Identity lattice map whose source fan subdivides the target fan with
    /// the same support.
    ///
    /// Support equality is checked cone by cone: the full-dimensional source
    /// cones landing in a maximal target cone τ must close up, i.e. each of
    /// their facets that is not on the boundary of τ is shared by exactly two
    /// of them.
    pub fn is_refinement(&self) -> bool {
        if !self.matrix.is_identity() {
            return false;
        }
        let (src, tgt) = (&*self.source, &*self.target);
        for tau in tgt.maximal_cones() {
            let dim = tgt.cone(tau).dim();
            let pieces: Vec<ConeId> = src
                .cone_ids()
                .filter(|&s| self.image[s.0] == tau && src.cone(s).dim() == dim)
                .collect();
            if pieces.is_empty() {
                return false;
            }
            let mut facet_count: BTreeMap<ConeId, usize> = BTreeMap::new();
            for &s in &pieces {
                for f in src.facets_of(s) {
                    *facet_count.entry(f).or_default() += 1;
                }
            }
            let closed = facet_count
                .iter()
                .all(|(&f, &count)| self.image[f.0] != tau || count == 2);
            if !closed {
                return false;
            }
        }
        true
    }
}
