//! Chern-Schwartz-MacPherson classes of invariant constructible functions.
//!
//! On a toric variety the class of an orbit is the fundamental class of its
//! closure, so `csm(Σ m_σ 1_{O(σ)}) = Σ m_σ [V(σ)]`. In particular the class
//! of the variety is the sum of all orbit closures.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::chow::{equivalent, pushforward_cycle, TCycle};
use crate::constructible::{pushforward, ConstructibleFunction};
use crate::error::{Error, Result};
use crate::fan::{same_fan, ConeId, Fan, ToricMorphism};
use std::sync::Arc;

pub fn csm(alpha: &ConstructibleFunction) -> TCycle {
    alpha.to_cycle()
}

/// Degree of the 0-dimensional part. All fixed points of a complete toric
/// variety are rationally equivalent, so this is well defined on classes.
pub fn degree_zero_part(z: &TCycle) -> Result<BigInt> {
    if !z.fan().is_complete() {
        return Err(Error::NotComplete);
    }
    Ok(z.point_sum())
}

/// Two cycles on one fan and whether they agree under some notion of
/// equality. Displays the witness when they do not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub left: TCycle,
    pub right: TCycle,
    pub holds: bool,
}

impl Comparison {
    pub fn difference(&self) -> TCycle {
        &self.left - &self.right
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", if self.holds { "holds" } else { "FAILS" })?;
        writeln!(f, "left:\n{}", indent(&self.left.to_string()))?;
        writeln!(f, "right:\n{}", indent(&self.right.to_string()))?;
        write!(f, "left - right:\n{}", indent(&self.difference().to_string()))
    }
}

pub(crate) fn indent(s: &str) -> String {
    s.lines().map(|l| format!("  {l}")).collect::<Vec<_>>().join("\n")
}

/// `f_* csm(α)` against `csm(f_* α)`, modulo rational equivalence on the
/// target.
pub fn verify_naturality(fm: &ToricMorphism, alpha: &ConstructibleFunction) -> Result<Comparison> {
    let left = pushforward_cycle(fm, &csm(alpha))?;
    let right = csm(&pushforward(fm, alpha)?);
    let holds = equivalent(&left, &right)?;
    Ok(Comparison { left, right, holds })
}

/// A summand in a decomposition of a constructible function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Term {
    /// `1_{O(σ)}`
    Orbit(ConeId),
    /// `1_{V(σ)}`
    Closure(ConeId),
}

pub type Decomposition = Vec<(Term, BigInt)>;

fn expand_function(fan: &Arc<Fan>, d: &[(Term, BigInt)]) -> ConstructibleFunction {
    let mut out = ConstructibleFunction::zero(fan.clone());
    for (term, m) in d {
        let piece = match *term {
            Term::Orbit(c) => ConstructibleFunction::orbit_indicator(fan.clone(), c),
            Term::Closure(c) => ConstructibleFunction::closure_indicator(fan.clone(), c),
        };
        out = &out + &piece.scaled(m);
    }
    out
}

/// Class assigned summand by summand: an orbit gets `[V(σ)]`, and a closure
/// `V(σ)`, itself a toric variety with fan the star of σ, gets the sum of
/// its orbit closures.
fn class_by_terms(fan: &Arc<Fan>, d: &[(Term, BigInt)]) -> TCycle {
    let mut out = TCycle::zero(fan.clone());
    for (term, m) in d {
        let cones = match *term {
            Term::Orbit(c) => vec![c],
            Term::Closure(c) => fan.star(c),
        };
        for c in cones {
            let v = out.coeff(c) + m;
            out.set_coeff(c, v);
        }
    }
    out
}

/// Two decompositions of one function must give the same class.
///
/// Fails with `NotSameFunction` when the decompositions expand to different
/// functions; otherwise compares the termwise classes exactly.
pub fn verify_independence(fan: &Arc<Fan>, first: &[(Term, BigInt)], second: &[(Term, BigInt)]) -> Result<Comparison> {
    let (f1, f2) = (expand_function(fan, first), expand_function(fan, second));
    if f1 != f2 {
        return Err(Error::NotSameFunction);
    }
    let left = class_by_terms(fan, first);
    let right = class_by_terms(fan, second);
    let holds = left == right && left == csm(&f1);
    Ok(Comparison { left, right, holds })
}

/// A decomposition with unit coefficients.
pub fn unit_terms(terms: &[Term]) -> Decomposition {
    terms.iter().map(|t| (*t, BigInt::one())).collect()
}

/// `csm(α + β) = csm(α) + csm(β)` on a common fan.
pub fn is_additive_on(alpha: &ConstructibleFunction, beta: &ConstructibleFunction) -> Result<bool> {
    if !same_fan(alpha.fan(), beta.fan()) {
        return Err(Error::FanMismatch);
    }
    Ok(csm(&(alpha + beta)) == &csm(alpha) + &csm(beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructible::{indicator_closure, one_x};
    use crate::corpus;
    use crate::lattice::IntMatrix;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn csm_of_projective_plane() {
        let p2 = corpus::projective_plane();
        let c = csm(&one_x(p2.clone()));
        assert_eq!(c.terms().count(), 7);
        assert_eq!(c.graded_part(1).terms().count(), 3);
        assert_eq!(degree_zero_part(&c).unwrap(), big(3));
        let zero = csm(&ConstructibleFunction::zero(p2.clone()));
        assert!(zero.is_zero());
        assert_eq!(degree_zero_part(&zero).unwrap(), big(0));
        let open_orbit = ConstructibleFunction::orbit_indicator(p2.clone(), p2.zero_cone());
        assert_eq!(csm(&open_orbit), TCycle::fundamental(p2));
    }

    #[test]
    fn degree_needs_completeness() {
        let c = csm(&one_x(corpus::affine_plane()));
        assert_eq!(degree_zero_part(&c), Err(Error::NotComplete));
        let sq = csm(&one_x(corpus::p1_times_p1()));
        assert_eq!(degree_zero_part(&sq).unwrap(), big(4));
    }

    #[test]
    fn naturality_examples() {
        let bl = corpus::hirzebruch_f1();
        let p2 = corpus::projective_plane();
        let down = ToricMorphism::new(IntMatrix::identity(2), bl.clone(), p2.clone()).unwrap();
        let cmp = verify_naturality(&down, &one_x(bl)).unwrap();
        assert!(cmp.holds, "{cmp}");
        assert_eq!(degree_zero_part(&cmp.left).unwrap(), big(4));

        let p1 = corpus::projective_line();
        let double =
            ToricMorphism::new(IntMatrix::from_i64(1, 1, &[2]), p1.clone(), p1.clone()).unwrap();
        let cmp = verify_naturality(&double, &one_x(p1.clone())).unwrap();
        assert!(cmp.holds);
        let expected = TCycle::from_ray_sets(p1.clone(), &[(&[], 2), (&[0], 1), (&[1], 1)]).unwrap();
        assert_eq!(cmp.right, expected);

        let id = ToricMorphism::identity(p1.clone());
        let alpha = indicator_closure(p1, &[1]).unwrap();
        assert!(verify_naturality(&id, &alpha).unwrap().holds);
    }

    #[test]
    fn independence_examples() {
        let p1 = corpus::projective_line();
        let zero = p1.zero_cone();
        let plus = p1.cone_id(&[0]).unwrap();
        let minus = p1.cone_id(&[1]).unwrap();
        let first = unit_terms(&[Term::Orbit(zero), Term::Orbit(plus), Term::Orbit(minus)]);
        let second = unit_terms(&[Term::Closure(plus), Term::Orbit(zero), Term::Orbit(minus)]);
        assert!(verify_independence(&p1, &first, &second).unwrap().holds);

        let p2 = corpus::projective_plane();
        let e1 = p2.cone_id(&[0]).unwrap();
        let orbits: Vec<Term> = p2.star(e1).into_iter().map(Term::Orbit).collect();
        assert!(
            verify_independence(&p2, &unit_terms(&[Term::Closure(e1)]), &unit_terms(&orbits))
                .unwrap()
                .holds
        );

        assert_eq!(
            verify_independence(&p1, &unit_terms(&[Term::Orbit(zero)]), &unit_terms(&[Term::Orbit(plus)])),
            Err(Error::NotSameFunction)
        );
    }

    #[test]
    fn additivity() {
        let fan = corpus::hirzebruch_f1();
        let a = indicator_closure(fan.clone(), &[3]).unwrap();
        let b = one_x(fan.clone()).scaled(&big(-2));
        assert!(is_additive_on(&a, &b).unwrap());
        assert_eq!(
            is_additive_on(&a, &one_x(corpus::projective_plane())),
            Err(Error::FanMismatch)
        );
    }

    #[test]
    fn witness_lists_both_sides() {
        let p1 = corpus::projective_line();
        let cmp = Comparison {
            left: TCycle::fundamental(p1.clone()),
            right: TCycle::zero(p1),
            holds: false,
        };
        let text = cmp.to_string();
        assert!(text.starts_with("FAILS"));
        assert!(text.contains("left - right:\n  dim 1: [V{}]"));
    }
}
