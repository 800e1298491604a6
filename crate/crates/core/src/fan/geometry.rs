//! Exact half-space descriptions of rational polyhedral cones.

use crate::lattice::{kernel_basis, primitive, rank, sign_of, IntMatrix, LatticeVector};

/// A cone in `Z^n` described by linear equations cutting out its span and
/// inward facet normals inside that span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeGeometry {
    ambient: usize,
    dim: usize,
    equations: Vec<LatticeVector>,
    facets: Vec<LatticeVector>,
}

impl ConeGeometry {
    pub fn new(generators: &[LatticeVector], ambient: usize) -> Self {
        let gens = IntMatrix::from_rows(ambient, generators);
        let equations = kernel_basis(&gens);
        let span = kernel_basis(&IntMatrix::from_rows(ambient, &equations));
        let dim = span.len();

        let mut facets: Vec<LatticeVector> = Vec::new();
        if dim > 0 {
            for subset in combinations(generators.len(), dim - 1) {
                // functionals on the span, written in the span basis
                let restricted: Vec<LatticeVector> = subset
                    .iter()
                    .map(|&i| {
                        LatticeVector::new(span.iter().map(|b| generators[i].dot(b)).collect())
                    })
                    .collect();
                let kernel = kernel_basis(&IntMatrix::from_rows(dim, &restricted));
                if kernel.len() != 1 {
                    continue;
                }
                let mut normal = LatticeVector::zero(ambient);
                for (c, b) in kernel[0].coords().iter().zip(&span) {
                    normal = &normal + &b.scale(c);
                }
                let Ok(mut normal) = primitive(&normal) else {
                    continue;
                };
                let signs: Vec<i8> = generators.iter().map(|g| sign_of(&normal.dot(g))).collect();
                let has_pos = signs.contains(&1);
                let has_neg = signs.contains(&-1);
                if has_pos && has_neg {
                    continue;
                }
                if has_neg {
                    normal = -&normal;
                }
                if !facets.contains(&normal) {
                    facets.push(normal);
                }
            }
        }
        facets.sort();

        ConeGeometry {
            ambient,
            dim,
            equations,
            facets,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[LatticeVector] {
        &self.facets
    }

    pub fn equations(&self) -> &[LatticeVector] {
        &self.equations
    }

    /// No line inside the cone: the facet normals must span the dual of the span.
    pub fn is_strongly_convex(&self) -> bool {
        self.dim == 0 || rank(&IntMatrix::from_rows(self.ambient, &self.facets)) == self.dim
    }

    pub fn contains(&self, x: &LatticeVector) -> bool {
        self.equations.iter().all(|e| e.dot(x) == 0.into())
            && self.facets.iter().all(|u| sign_of(&u.dot(x)) >= 0)
    }

    /// Whether `x` lies in the relative interior.
    pub fn contains_in_interior(&self, x: &LatticeVector) -> bool {
        self.equations.iter().all(|e| e.dot(x) == 0.into())
            && self.facets.iter().all(|u| sign_of(&u.dot(x)) > 0)
    }

    /// Whether the generator `g` spans an extreme ray (assumes strong convexity).
    pub fn is_extreme(&self, g: &LatticeVector) -> bool {
        if self.dim == 0 {
            return false;
        }
        let tight: Vec<LatticeVector> = self
            .facets
            .iter()
            .filter(|u| sign_of(&u.dot(g)) == 0)
            .cloned()
            .collect();
        rank(&IntMatrix::from_rows(self.ambient, &tight)) == self.dim - 1
    }

    /// Smallest face containing the generators indexed by `subset`, as a
    /// sorted list of generator indices.
    pub fn face_closure(&self, generators: &[LatticeVector], subset: &[usize]) -> Vec<usize> {
        let tight: Vec<&LatticeVector> = self
            .facets
            .iter()
            .filter(|u| subset.iter().all(|&i| sign_of(&u.dot(&generators[i])) == 0))
            .collect();
        (0..generators.len())
            .filter(|&i| tight.iter().all(|u| sign_of(&u.dot(&generators[i])) == 0))
            .collect()
    }

    pub fn is_face(&self, generators: &[LatticeVector], subset: &[usize]) -> bool {
        let mut s = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        self.face_closure(generators, &s) == s
    }

    /// All faces, as sorted generator-index lists (including the empty face
    /// and the cone itself).
    pub fn faces(&self, generators: &[LatticeVector]) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..generators.len()).collect();
        let mut found = vec![all.clone()];
        let mut queue = vec![all];
        while let Some(face) = queue.pop() {
            for u in &self.facets {
                let sub: Vec<usize> = face
                    .iter()
                    .copied()
                    .filter(|&i| sign_of(&u.dot(&generators[i])) == 0)
                    .collect();
                if sub.len() < face.len() && !found.contains(&sub) {
                    found.push(sub.clone());
                    queue.push(sub);
                }
            }
        }
        if !found.iter().any(Vec::is_empty) {
            found.push(Vec::new());
        }
        found
    }

    /// Primitive extreme rays of the intersection of two pointed cones.
    pub fn intersection_rays(&self, other: &ConeGeometry) -> Vec<LatticeVector> {
        let n = self.ambient;
        let equations: Vec<LatticeVector> = self
            .equations
            .iter()
            .chain(&other.equations)
            .cloned()
            .collect();
        let inequalities: Vec<LatticeVector> =
            self.facets.iter().chain(&other.facets).cloned().collect();
        let eq_rank = rank(&IntMatrix::from_rows(n, &equations));
        if eq_rank >= n {
            return Vec::new();
        }
        let feasible = |v: &LatticeVector| inequalities.iter().all(|u| sign_of(&u.dot(v)) >= 0);

        let mut rays: Vec<LatticeVector> = Vec::new();
        let need = n - 1 - eq_rank;
        for size in need..=need.min(inequalities.len()) {
            for subset in combinations(inequalities.len(), size) {
                let mut rows = equations.clone();
                rows.extend(subset.iter().map(|&i| inequalities[i].clone()));
                let kernel = kernel_basis(&IntMatrix::from_rows(n, &rows));
                if kernel.len() != 1 {
                    continue;
                }
                let v = &kernel[0];
                let candidate = if feasible(v) {
                    v.clone()
                } else if feasible(&-v) {
                    -v
                } else {
                    continue;
                };
                let candidate = primitive(&candidate).expect("kernel vector is nonzero");
                if !rays.contains(&candidate) {
                    rays.push(candidate);
                }
            }
        }
        rays.sort();
        rays
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(c)
    }

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3).len(), 0);
        assert_eq!(combinations(5, 5).len(), 1);
    }

    #[test]
    fn quadrant() {
        let gens = [lv(&[1, 0]), lv(&[0, 1])];
        let g = ConeGeometry::new(&gens, 2);
        assert_eq!(g.dim(), 2);
        assert!(g.is_strongly_convex());
        assert_eq!(g.facets().len(), 2);
        assert!(g.contains(&lv(&[3, 5])));
        assert!(!g.contains(&lv(&[-1, 5])));
        assert!(g.contains_in_interior(&lv(&[1, 1])));
        assert!(!g.contains_in_interior(&lv(&[1, 0])));
        assert_eq!(g.faces(&gens).len(), 4);
    }

    #[test]
    fn half_plane_is_not_strongly_convex() {
        let gens = [lv(&[1, 0]), lv(&[-1, 0]), lv(&[0, 1])];
        assert!(!ConeGeometry::new(&gens, 2).is_strongly_convex());
        let line = [lv(&[1, 0]), lv(&[-1, 0])];
        assert!(!ConeGeometry::new(&line, 2).is_strongly_convex());
    }

    #[test]
    fn square_cone_faces_and_extreme_rays() {
        let gens = [lv(&[1, 0, 1]), lv(&[0, 1, 1]), lv(&[-1, 0, 1]), lv(&[0, -1, 1])];
        let g = ConeGeometry::new(&gens, 3);
        assert_eq!(g.facets().len(), 4);
        assert!(gens.iter().all(|x| g.is_extreme(x)));
        // a diagonal pair is not a face
        assert!(!g.is_face(&gens, &[0, 2]));
        assert!(g.is_face(&gens, &[0, 1]));
        // 1 + 4 + 4 + 1
        assert_eq!(g.faces(&gens).len(), 10);
        // non-extreme generator
        let with_mid = [lv(&[1, 0, 1]), lv(&[0, 1, 1]), lv(&[1, 1, 2])];
        let h = ConeGeometry::new(&with_mid, 3);
        assert!(!h.is_extreme(&with_mid[2]));
    }

    #[test]
    fn intersections() {
        let a = ConeGeometry::new(&[lv(&[1, 0]), lv(&[1, 2])], 2);
        let b = ConeGeometry::new(&[lv(&[1, 1]), lv(&[0, 1])], 2);
        assert_eq!(a.intersection_rays(&b), vec![lv(&[1, 1]), lv(&[1, 2])]);
        let c = ConeGeometry::new(&[lv(&[-1, 0])], 2);
        assert!(a.intersection_rays(&c).is_empty());
    }
}
