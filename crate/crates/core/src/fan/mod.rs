//! Rational polyhedral fans, the combinatorial model of toric varieties.
//!
//! A [`Fan`] keeps its rays in the order they were given and its cones in a
//! canonical order: by dimension, then lexicographically by the sorted list
//! of their ray vectors. Cones are addressed by [`ConeId`], an index into
//! that order, so the zero cone is always `ConeId(0)`.

mod geometry;
mod morphism;
mod surface;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::chow::ChowPresentation;
use crate::error::{Error, Result};
use crate::lattice::{smith_normal_form, LatticeVector};

pub use geometry::ConeGeometry;
pub use morphism::ToricMorphism;
pub use surface::{complete_fan_2d, hirzebruch_jung_rays, smooth_refine_2d};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConeId(pub usize);

impl ConeId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A cone of a fan: the sorted indices of its rays and its dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    rays: Vec<usize>,
    dim: usize,
}

impl Cone {
    pub fn rays(&self) -> &[usize] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Whether `self` is a face of `other` (ray containment; cones of one fan).
    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.rays.iter().all(|r| other.rays.binary_search(r).is_ok())
    }

    pub fn contains_ray(&self, ray: usize) -> bool {
        self.rays.binary_search(&ray).is_ok()
    }
}

/// A validated fan in `N = Z^rank`.
#[derive(Debug, Clone)]
pub struct Fan {
    rank: usize,
    rays: Vec<LatticeVector>,
    cones: Vec<Cone>,
    lookup: BTreeMap<Vec<usize>, ConeId>,
    geometry: Vec<ConeGeometry>,
    chow: OnceLock<Vec<ChowPresentation>>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.rays == other.rays && self.cones == other.cones
    }
}

impl Eq for Fan {}

impl Fan {
    /// Validates rays and the listed cones, then closes under faces.
    ///
    /// Listed cones need not be maximal. Every ray must be used by some cone.
    pub fn new(rank: usize, rays: Vec<LatticeVector>, cones: Vec<Vec<usize>>) -> Result<Fan> {
        for (index, ray) in rays.iter().enumerate() {
            if ray.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: ray.len(),
                });
            }
            if ray.is_zero() {
                return Err(Error::ZeroRay { index });
            }
            if !ray.is_primitive() {
                return Err(Error::NotPrimitiveRay { index });
            }
            if let Some(first) = rays[..index].iter().position(|r| r == ray) {
                return Err(Error::DuplicateRay { index, first });
            }
        }

        let mut listed: Vec<Vec<usize>> = Vec::new();
        for cone in cones {
            let set: BTreeSet<usize> = cone.into_iter().collect();
            if let Some(&index) = set.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::RayIndexOutOfRange { index });
            }
            let set: Vec<usize> = set.into_iter().collect();
            if !listed.contains(&set) {
                listed.push(set);
            }
        }

        let mut listed_geometry = Vec::with_capacity(listed.len());
        for cone in &listed {
            let gens: Vec<LatticeVector> = cone.iter().map(|&i| rays[i].clone()).collect();
            let g = ConeGeometry::new(&gens, rank);
            if !g.is_strongly_convex() {
                return Err(Error::NotStronglyConvex { cone: cone.clone() });
            }
            if let Some(&ray) = cone.iter().find(|&&i| !g.is_extreme(&rays[i])) {
                return Err(Error::NotExtremeRay {
                    ray,
                    cone: cone.clone(),
                });
            }
            listed_geometry.push(g);
        }

        for i in 0..listed.len() {
            for j in i + 1..listed.len() {
                if !meet_in_common_face(
                    &rays,
                    (&listed[i], &listed_geometry[i]),
                    (&listed[j], &listed_geometry[j]),
                ) {
                    return Err(Error::BadIntersection {
                        first: listed[i].clone(),
                        second: listed[j].clone(),
                    });
                }
            }
        }

        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        all.insert(Vec::new());
        for (cone, g) in listed.iter().zip(&listed_geometry) {
            let gens: Vec<LatticeVector> = cone.iter().map(|&i| rays[i].clone()).collect();
            for face in g.faces(&gens) {
                all.insert(face.into_iter().map(|k| cone[k]).collect());
            }
        }
        let used: BTreeSet<usize> = all.iter().flatten().copied().collect();
        if let Some(index) = (0..rays.len()).find(|i| !used.contains(i)) {
            return Err(Error::UnusedRay { index });
        }

        Ok(Fan::assemble(rank, rays, all))
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rank: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Result<Fan> {
        Fan::new(
            rank,
            rays.iter().map(|r| LatticeVector::from_i64s(r)).collect(),
            cones.iter().map(|c| c.to_vec()).collect(),
        )
    }

    /// Builds a fan from an already face-closed, valid set of cones.
    pub(crate) fn assemble(
        rank: usize,
        rays: Vec<LatticeVector>,
        cones: impl IntoIterator<Item = Vec<usize>>,
    ) -> Fan {
        let mut keyed: Vec<((usize, Vec<LatticeVector>), Cone, ConeGeometry)> = cones
            .into_iter()
            .map(|set| {
                let gens: Vec<LatticeVector> = set.iter().map(|&i| rays[i].clone()).collect();
                let geometry = ConeGeometry::new(&gens, rank);
                let mut sorted = gens;
                sorted.sort();
                let cone = Cone {
                    dim: geometry.dim(),
                    rays: set,
                };
                ((cone.dim, sorted), cone, geometry)
            })
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let lookup = keyed
            .iter()
            .enumerate()
            .map(|(i, (_, c, _))| (c.rays.clone(), ConeId(i)))
            .collect();
        let (cones, geometry) = keyed.into_iter().map(|(_, c, g)| (c, g)).unzip();
        Fan {
            rank,
            rays,
            cones,
            lookup,
            geometry,
            chow: OnceLock::new(),
        }
    }

    /// The fan of a point (rank 0).
    pub fn point() -> Fan {
        Fan::assemble(0, Vec::new(), [Vec::new()])
    }

    /// The fan of the torus `(k^*)^rank`: only the zero cone.
    pub fn torus(rank: usize) -> Fan {
        Fan::assemble(rank, Vec::new(), [Vec::new()])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &LatticeVector {
        &self.rays[i]
    }

    pub fn ray_index(&self, v: &LatticeVector) -> Option<usize> {
        self.rays.iter().position(|r| r == v)
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn num_cones(&self) -> usize {
        self.cones.len()
    }

    pub fn cone(&self, id: ConeId) -> &Cone {
        &self.cones[id.0]
    }

    pub fn cone_ids(&self) -> impl Iterator<Item = ConeId> + '_ {
        (0..self.cones.len()).map(ConeId)
    }

    pub fn zero_cone(&self) -> ConeId {
        ConeId(0)
    }

    /// Cone with exactly these rays, if present.
    pub fn cone_id(&self, rays: &[usize]) -> Option<ConeId> {
        let mut key = rays.to_vec();
        key.sort_unstable();
        key.dedup();
        self.lookup.get(&key).copied()
    }

    /// Like [`Fan::cone_id`] but reports a missing cone as an error.
    pub fn require_cone(&self, rays: &[usize]) -> Result<ConeId> {
        self.cone_id(rays).ok_or_else(|| {
            let mut cone = rays.to_vec();
            cone.sort_unstable();
            Error::ConeNotInFan { cone }
        })
    }

    /// Looks a cone up by its ray vectors rather than indices.
    pub fn cone_by_vectors(&self, vectors: &[LatticeVector]) -> Option<ConeId> {
        let indices: Option<Vec<usize>> = vectors.iter().map(|v| self.ray_index(v)).collect();
        self.cone_id(&indices?)
    }

    pub fn generators(&self, id: ConeId) -> Vec<LatticeVector> {
        self.cones[id.0]
            .rays
            .iter()
            .map(|&i| self.rays[i].clone())
            .collect()
    }

    pub fn geometry(&self, id: ConeId) -> &ConeGeometry {
        &self.geometry[id.0]
    }

    pub fn cones_of_dim(&self, dim: usize) -> impl Iterator<Item = ConeId> + '_ {
        self.cone_ids().filter(move |&c| self.cones[c.0].dim == dim)
    }

    pub fn maximal_cones(&self) -> Vec<ConeId> {
        self.cone_ids()
            .filter(|&c| {
                !self
                    .cones
                    .iter()
                    .any(|other| other.rays.len() > self.cones[c.0].rays.len() && self.cones[c.0].is_face_of(other))
            })
            .collect()
    }

    /// Cones having `id` as a face (its star), including `id` itself.
    pub fn star(&self, id: ConeId) -> Vec<ConeId> {
        let c = &self.cones[id.0];
        self.cone_ids()
            .filter(|&o| c.is_face_of(&self.cones[o.0]))
            .collect()
    }

    /// Cones of dimension `dim(id) + 1` having `id` as a facet.
    pub fn cofacets(&self, id: ConeId) -> Vec<ConeId> {
        let c = &self.cones[id.0];
        self.cone_ids()
            .filter(|&o| {
                let other = &self.cones[o.0];
                other.dim == c.dim + 1 && c.is_face_of(other)
            })
            .collect()
    }

    pub fn facets_of(&self, id: ConeId) -> Vec<ConeId> {
        let c = &self.cones[id.0];
        self.cone_ids()
            .filter(|&o| {
                let other = &self.cones[o.0];
                other.dim + 1 == c.dim && other.is_face_of(c)
            })
            .collect()
    }

    /// Number of cones of each dimension `0..=rank`.
    pub fn cone_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.rank + 1];
        for c in &self.cones {
            counts[c.dim] += 1;
        }
        counts
    }

    /// Smallest cone containing `v`, if `v` is in the support.
    pub fn smallest_cone_containing(&self, vectors: &[LatticeVector]) -> Option<ConeId> {
        // cones are sorted by dimension, so the first hit is the smallest
        self.cone_ids()
            .find(|&c| vectors.iter().all(|v| self.geometry[c.0].contains(v)))
    }

    pub fn support_contains(&self, v: &LatticeVector) -> bool {
        self.smallest_cone_containing(std::slice::from_ref(v)).is_some()
    }

    /// Every maximal cone is full-dimensional and every facet of a maximal
    /// cone lies on exactly two maximal cones.
    pub fn is_complete(&self) -> bool {
        if self.rank == 0 {
            return true;
        }
        let maximal = self.maximal_cones();
        if maximal.iter().any(|&c| self.cones[c.0].dim != self.rank) {
            return false;
        }
        self.cones_of_dim(self.rank - 1).all(|facet| {
            let f = &self.cones[facet.0];
            maximal
                .iter()
                .filter(|&&m| f.is_face_of(&self.cones[m.0]))
                .count()
                == 2
        })
    }

    /// Every cone's generators extend to a basis of `N`.
    pub fn is_smooth(&self) -> bool {
        self.cone_ids().all(|c| self.is_smooth_cone(c))
    }

    pub fn is_smooth_cone(&self, id: ConeId) -> bool {
        let gens = self.generators(id);
        if gens.is_empty() {
            return true;
        }
        let snf = smith_normal_form(&crate::lattice::IntMatrix::from_rows(self.rank, &gens));
        snf.rank() == gens.len() && snf.invariant_factors().iter().all(|d| *d == 1.into())
    }

    /// Smooth and complete: the boundary is then simple normal crossings,
    /// which is what a good completion requires.
    pub fn is_good_completion(&self) -> bool {
        self.is_smooth() && self.is_complete()
    }

    /// Orbit-cone correspondence: each cone with the dimension of its orbit.
    pub fn orbits(&self) -> Vec<(ConeId, usize)> {
        self.cone_ids()
            .map(|c| (c, self.rank - self.cones[c.0].dim))
            .collect()
    }

    /// Every cone of `self` is a cone of `other`, comparing ray vectors.
    pub fn is_subfan(&self, other: &Fan) -> bool {
        self.rank == other.rank
            && self
                .cone_ids()
                .all(|c| other.cone_by_vectors(&self.generators(c)).is_some())
    }

    /// Transports a cone of `self` to the cone with the same rays in `other`.
    pub fn transport_cone(&self, id: ConeId, other: &Fan) -> Option<ConeId> {
        other.cone_by_vectors(&self.generators(id))
    }

    /// Star subdivision at a new primitive ray in the support.
    pub fn star_subdivision(&self, ray: &LatticeVector) -> Result<Fan> {
        if ray.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: ray.len(),
            });
        }
        if ray.is_zero() {
            return Err(Error::ZeroVector);
        }
        if !ray.is_primitive() {
            return Err(Error::NotPrimitiveRay {
                index: self.rays.len(),
            });
        }
        if self.ray_index(ray).is_some() {
            return Err(Error::RayAlreadyPresent {
                ray: ray.to_string(),
            });
        }
        let containing: Vec<bool> = self
            .geometry
            .iter()
            .map(|g| g.contains(ray))
            .collect();
        if !containing.iter().any(|&b| b) {
            return Err(Error::RayOutsideSupport {
                ray: ray.to_string(),
            });
        }
        let new_index = self.rays.len();
        let mut cones: Vec<Vec<usize>> = Vec::new();
        for (i, cone) in self.cones.iter().enumerate() {
            if containing[i] {
                continue;
            }
            cones.push(cone.rays.clone());
            let under_star = self
                .cones
                .iter()
                .enumerate()
                .any(|(j, other)| containing[j] && cone.is_face_of(other));
            if under_star {
                let mut joined = cone.rays.clone();
                joined.push(new_index);
                cones.push(joined);
            }
        }
        let mut rays = self.rays.clone();
        rays.push(ray.clone());
        Fan::new(self.rank, rays, maximal_sets(cones))
    }

    /// Display label of a cone: its ray indices, e.g. `{0,2}`.
    pub fn cone_label(&self, id: ConeId) -> String {
        let parts: Vec<String> = self.cones[id.0].rays.iter().map(|r| r.to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Display of a cone by its generators, e.g. `cone((1,0),(0,1))`.
    pub fn cone_vectors_label(&self, id: ConeId) -> String {
        let parts: Vec<String> = self.generators(id).iter().map(|v| v.to_string()).collect();
        format!("cone({})", parts.join(","))
    }

    pub(crate) fn chow_cache(&self) -> &OnceLock<Vec<ChowPresentation>> {
        &self.chow
    }

    pub fn into_arc(self) -> Arc<Fan> {
        Arc::new(self)
    }
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::print_fan(self))
    }
}

/// Same fan, comparing by pointer first.
pub(crate) fn same_fan(a: &Arc<Fan>, b: &Arc<Fan>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Keeps only the sets not contained in another set of the list.
pub(crate) fn maximal_sets(mut sets: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for s in &mut sets {
        s.sort_unstable();
    }
    sets.sort();
    sets.dedup();
    let is_subset = |a: &Vec<usize>, b: &Vec<usize>| a.iter().all(|x| b.binary_search(x).is_ok());
    sets.iter()
        .filter(|s| !sets.iter().any(|t| t.len() > s.len() && is_subset(s, t)))
        .cloned()
        .collect()
}

fn meet_in_common_face(
    rays: &[LatticeVector],
    (a, ga): (&Vec<usize>, &ConeGeometry),
    (b, gb): (&Vec<usize>, &ConeGeometry),
) -> bool {
    let common: Vec<usize> = a.iter().copied().filter(|i| b.contains(i)).collect();
    let local = |cone: &Vec<usize>| -> Vec<usize> {
        common
            .iter()
            .map(|r| cone.iter().position(|x| x == r).expect("common ray"))
            .collect()
    };
    let gens_a: Vec<LatticeVector> = a.iter().map(|&i| rays[i].clone()).collect();
    let gens_b: Vec<LatticeVector> = b.iter().map(|&i| rays[i].clone()).collect();
    if !ga.is_face(&gens_a, &local(a)) || !gb.is_face(&gens_b, &local(b)) {
        return false;
    }
    let mut expected: Vec<LatticeVector> = common.iter().map(|&i| rays[i].clone()).collect();
    expected.sort();
    ga.intersection_rays(gb) == expected
}
