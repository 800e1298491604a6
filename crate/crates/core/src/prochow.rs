//! Finite diagrams of completions of a toric variety `U`, families of cycle
//! classes over them, and the compatibility condition `π_* ρ^j = ρ^i` along
//! every edge.
//!
//! Nodes are complete fans containing the base fan of `U` as a subfan, and
//! edges are refinements over the identity lattice map, so every edge
//! automatically commutes with the inclusions of `U`.

use std::fmt;
use std::sync::Arc;

use crate::chow::{equivalent, pushforward_cycle, TCycle};
use crate::constructible::{one_x, ConstructibleFunction};
use crate::csm::{indent, Comparison};
use crate::error::{Error, Result};
use crate::fan::{complete_fan_2d, same_fan, ConeId, Fan, ToricMorphism};
use crate::lattice::{IntMatrix, LatticeVector};

#[derive(Debug, Clone)]
pub struct DiagramEdge {
    pub source: usize,
    pub target: usize,
    pub morphism: ToricMorphism,
}

#[derive(Debug, Clone)]
pub struct CompletionDiagram {
    base: Arc<Fan>,
    names: Vec<String>,
    nodes: Vec<Arc<Fan>>,
    edges: Vec<DiagramEdge>,
}

/// Validates a diagram of completions of `base`. Edges are given as
/// `(source, target)` node names and must be refinements.
pub fn build_diagram(base: Arc<Fan>, nodes: Vec<(String, Arc<Fan>)>, edges: &[(&str, &str)]) -> Result<CompletionDiagram> {
    for (name, fan) in &nodes {
        if !fan.is_complete() {
            return Err(Error::NodeNotComplete { node: name.clone() });
        }
        if !base.is_subfan(fan) {
            return Err(Error::BaseNotSubfan { node: name.clone() });
        }
    }
    let (names, nodes): (Vec<String>, Vec<Arc<Fan>>) = nodes.into_iter().unzip();
    let find = |name: &str| {
        names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownNode(name.to_string()))
    };
    let mut built = Vec::new();
    for &(s, t) in edges {
        let (source, target) = (find(s)?, find(t)?);
        let not_refinement = || Error::EdgeNotRefinement {
            source_node: s.to_string(),
            target_node: t.to_string(),
        };
        let n = base.rank();
        let morphism = ToricMorphism::new(IntMatrix::identity(n), nodes[source].clone(), nodes[target].clone())
            .map_err(|_| not_refinement())?;
        if !morphism.is_refinement() {
            return Err(not_refinement());
        }
        built.push(DiagramEdge {
            source,
            target,
            morphism,
        });
    }
    Ok(CompletionDiagram {
        base,
        names,
        nodes,
        edges: built,
    })
}

/// Rank ≤ 2: the gap-rule completion of `base` as node `Z0`, followed by
/// star subdivisions `Z1, Z2, ...` at the given rays, each with an edge to
/// its predecessor.
pub fn auto_diagram(base: Arc<Fan>, subdivisions: &[LatticeVector]) -> Result<CompletionDiagram> {
    if base.rank() > 2 {
        return Err(Error::RankTooHigh(base.rank()));
    }
    let mut current = Arc::new(complete_fan_2d(&base)?);
    let mut nodes = vec![("Z0".to_string(), current.clone())];
    for (i, ray) in subdivisions.iter().enumerate() {
        current = Arc::new(current.star_subdivision(ray)?);
        nodes.push((format!("Z{}", i + 1), current.clone()));
    }
    let names: Vec<String> = nodes.iter().map(|(n, _)| n.clone()).collect();
    let edges: Vec<(&str, &str)> = names
        .windows(2)
        .map(|w| (w[1].as_str(), w[0].as_str()))
        .collect();
    build_diagram(base, nodes, &edges)
}

impl CompletionDiagram {
    pub fn base(&self) -> &Arc<Fan> {
        &self.base
    }

    pub fn node_names(&self) -> &[String] {
        &self.names
    }

    pub fn nodes(&self) -> &[Arc<Fan>] {
        &self.nodes
    }

    pub fn node(&self, name: &str) -> Result<&Arc<Fan>> {
        Ok(&self.nodes[self.node_index(name)?])
    }

    pub fn node_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownNode(name.to_string()))
    }

    pub fn edges(&self) -> &[DiagramEdge] {
        &self.edges
    }

    /// The cone of node `i` with the same rays as the base cone σ.
    fn transport(&self, sigma: ConeId, i: usize) -> ConeId {
        self.base
            .transport_cone(sigma, &self.nodes[i])
            .expect("base is a subfan of every node")
    }
}

/// One cycle per node of a diagram.
#[derive(Debug, Clone)]
pub struct ProChowFamily<'d> {
    diagram: &'d CompletionDiagram,
    classes: Vec<TCycle>,
}

impl<'d> ProChowFamily<'d> {
    pub fn diagram(&self) -> &'d CompletionDiagram {
        self.diagram
    }

    pub fn classes(&self) -> &[TCycle] {
        &self.classes
    }

    pub fn class(&self, node: &str) -> Result<&TCycle> {
        Ok(&self.classes[self.diagram.node_index(node)?])
    }

    /// Replaces the class at one node.
    pub fn set_class(&mut self, node: &str, z: TCycle) -> Result<()> {
        let i = self.diagram.node_index(node)?;
        if !same_fan(&self.diagram.nodes[i], z.fan()) {
            return Err(Error::FanMismatch);
        }
        self.classes[i] = z;
        Ok(())
    }

    /// Node-wise exact equality.
    pub fn same_cycles(&self, other: &ProChowFamily<'_>) -> bool {
        self.classes == other.classes
    }
}

/// `[V(σ)]` at every node, for a cone σ of the base.
pub fn distinguished_class<'d>(rays: &[usize], d: &'d CompletionDiagram) -> Result<ProChowFamily<'d>> {
    let sigma = d.base.cone_id(rays).ok_or(Error::ConeNotInBase { cone: rays.to_vec() })?;
    let classes = (0..d.nodes.len())
        .map(|i| TCycle::basis(d.nodes[i].clone(), d.transport(sigma, i)))
        .collect();
    Ok(ProChowFamily { diagram: d, classes })
}

/// The class of α at each node: its orbit coefficients reread on the node,
/// where the open inclusion keeps every base orbit.
pub fn procsm_family<'d>(alpha: &ConstructibleFunction, d: &'d CompletionDiagram) -> Result<ProChowFamily<'d>> {
    if !same_fan(alpha.fan(), &d.base) {
        return Err(Error::FanMismatch);
    }
    let classes = (0..d.nodes.len())
        .map(|i| {
            TCycle::from_terms(
                d.nodes[i].clone(),
                alpha.terms().map(|(c, m)| (d.transport(c, i), m.clone())),
            )
        })
        .collect();
    Ok(ProChowFamily { diagram: d, classes })
}

/// Per-edge comparisons of `π_*(class at source)` with the class at target.
#[derive(Debug, Clone)]
pub struct CompatibilityReport {
    pub edges: Vec<(String, String, Comparison)>,
}

impl CompatibilityReport {
    pub fn holds(&self) -> bool {
        self.edges.iter().all(|(_, _, c)| c.holds)
    }
}

impl fmt::Display for CompatibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, t, cmp) in &self.edges {
            if !first {
                writeln!(f)?;
            }
            first = false;
            if cmp.holds {
                write!(f, "edge {s} -> {t}: compatible")?;
            } else {
                write!(f, "edge {s} -> {t}: pushforward of the class at {s} vs class at {t}\n{}", indent(&cmp.to_string()))?;
            }
        }
        if first {
            write!(f, "no edges")?;
        }
        Ok(())
    }
}

pub fn verify_compatibility(fam: &ProChowFamily<'_>) -> Result<CompatibilityReport> {
    let d = fam.diagram;
    let mut edges = Vec::new();
    for e in &d.edges {
        let left = pushforward_cycle(&e.morphism, &fam.classes[e.source])?;
        let right = fam.classes[e.target].clone();
        let holds = equivalent(&left, &right)?;
        edges.push((
            d.names[e.source].clone(),
            d.names[e.target].clone(),
            Comparison { left, right, holds },
        ));
    }
    Ok(CompatibilityReport { edges })
}

/// The family of `one_X(U)`, checked node-wise against the sum of the
/// distinguished classes of all base orbits.
pub fn procsm_of_base<'d>(alpha: &ConstructibleFunction, d: &'d CompletionDiagram) -> Result<ProChowFamily<'d>> {
    if !same_fan(alpha.fan(), &d.base) {
        return Err(Error::FanMismatch);
    }
    if *alpha != one_x(d.base.clone()) {
        return Err(Error::NotConstantOne);
    }
    let fam = procsm_family(alpha, d)?;
    for (i, name) in d.names.iter().enumerate() {
        let mut sum = TCycle::zero(d.nodes[i].clone());
        for sigma in d.base.cone_ids() {
            let dc = distinguished_class(d.base.cone(sigma).rays(), d)?;
            sum = &sum + &dc.classes[i];
        }
        if sum != fam.classes[i] {
            return Err(Error::DistinguishedSumMismatch { node: name.clone() });
        }
    }
    Ok(fam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::csm::csm;

    fn torus_diagram() -> CompletionDiagram {
        build_diagram(
            corpus::torus(2),
            vec![
                ("P2".into(), corpus::projective_plane()),
                ("Bl".into(), corpus::hirzebruch_f1()),
            ],
            &[("Bl", "P2")],
        )
        .unwrap()
    }

    fn affine_plane_diagram() -> CompletionDiagram {
        auto_diagram(corpus::affine_plane(), &[LatticeVector::from_i64s(&[-1, 1])]).unwrap()
    }

    #[test]
    fn diagram_validation() {
        let d = torus_diagram();
        assert_eq!(d.edges().len(), 1);
        assert_eq!(affine_plane_diagram().nodes().len(), 2);

        let err = build_diagram(
            corpus::projective_line(),
            vec![("A1".into(), corpus::affine_line())],
            &[],
        );
        assert_eq!(err.unwrap_err(), Error::NodeNotComplete { node: "A1".into() });

        let err = build_diagram(
            corpus::hirzebruch_f1(),
            vec![("P2".into(), corpus::projective_plane())],
            &[],
        );
        assert_eq!(err.unwrap_err(), Error::BaseNotSubfan { node: "P2".into() });

        let wrong_way = build_diagram(
            corpus::torus(2),
            vec![
                ("P2".into(), corpus::projective_plane()),
                ("Bl".into(), corpus::hirzebruch_f1()),
            ],
            &[("P2", "Bl")],
        );
        assert_eq!(
            wrong_way.unwrap_err(),
            Error::EdgeNotRefinement {
                source_node: "P2".into(),
                target_node: "Bl".into()
            }
        );
        let unknown = build_diagram(corpus::torus(2), vec![], &[("X", "Y")]);
        assert_eq!(unknown.unwrap_err(), Error::UnknownNode("X".into()));
    }

    #[test]
    fn distinguished_classes() {
        let d = build_diagram(
            corpus::affine_line(),
            vec![("P1".into(), corpus::projective_line())],
            &[],
        )
        .unwrap();
        let whole = distinguished_class(&[], &d).unwrap();
        assert_eq!(whole.classes()[0], TCycle::fundamental(corpus::projective_line()));
        assert_eq!(
            distinguished_class(&[1], &d).unwrap_err(),
            Error::ConeNotInBase { cone: vec![1] }
        );

        let d = affine_plane_diagram();
        let axis = distinguished_class(&[0], &d).unwrap();
        for (i, z) in axis.classes().iter().enumerate() {
            let (cone, _) = z.terms().next().unwrap();
            assert_eq!(d.nodes()[i].generators(cone), vec![LatticeVector::from_i64s(&[1, 0])]);
        }
        assert!(verify_compatibility(&axis).unwrap().holds());
    }

    #[test]
    fn families_on_the_torus() {
        let d = torus_diagram();
        let open = one_x(d.base().clone());
        let fam = procsm_family(&open, &d).unwrap();
        assert_eq!(fam.class("P2").unwrap(), &TCycle::fundamental(corpus::projective_plane()));
        assert!(verify_compatibility(&fam).unwrap().holds());
        let of_base = procsm_of_base(&open, &d).unwrap();
        assert!(of_base.same_cycles(&fam));
    }

    #[test]
    fn affine_plane_family() {
        let d = affine_plane_diagram();
        let fam = procsm_of_base(&one_x(d.base().clone()), &d).unwrap();
        let z0 = fam.class("Z0").unwrap();
        assert_eq!(z0.terms().count(), 4);
        assert_eq!(z0.graded_part(1).terms().count(), 2);
        assert!(verify_compatibility(&fam).unwrap().holds());
    }

    #[test]
    fn complete_base_collapses_to_csm() {
        let p2 = corpus::projective_plane();
        let d = build_diagram(p2.clone(), vec![("P2".into(), p2.clone())], &[]).unwrap();
        let alpha = one_x(p2.clone());
        let fam = procsm_family(&alpha, &d).unwrap();
        assert_eq!(fam.classes()[0], csm(&alpha));
    }

    #[test]
    fn punctured_plane() {
        let base = corpus::projective_plane_minus_point();
        let blown_up = Arc::new(
            corpus::projective_plane()
                .star_subdivision(&LatticeVector::from_i64s(&[1, 1]))
                .unwrap(),
        );
        let d = build_diagram(
            base.clone(),
            vec![("P2".into(), corpus::projective_plane()), ("Bl".into(), blown_up)],
            &[("Bl", "P2")],
        )
        .unwrap();
        let fam = procsm_of_base(&one_x(base), &d).unwrap();
        assert!(verify_compatibility(&fam).unwrap().holds());
    }

    #[test]
    fn corrupted_family_fails_with_witness() {
        let d = torus_diagram();
        let mut fam = procsm_family(&one_x(d.base().clone()), &d).unwrap();
        let bl = d.node("Bl").unwrap().clone();
        let shifted = &fam.class("Bl").unwrap().clone() + &TCycle::from_ray_sets(bl, &[(&[0, 3], 1)]).unwrap();
        fam.set_class("Bl", shifted).unwrap();
        let report = verify_compatibility(&fam).unwrap();
        assert!(!report.holds());
        assert!(report.to_string().contains("FAILS"));
    }

    #[test]
    fn procsm_of_base_requires_one() {
        let d = torus_diagram();
        let two = one_x(d.base().clone()).scaled(&2.into());
        assert_eq!(procsm_of_base(&two, &d).unwrap_err(), Error::NotConstantOne);
    }
}
