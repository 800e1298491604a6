//! Constructible functions in the span of torus-orbit indicators, and their
//! pushforward by fiberwise Euler characteristic.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::cone_map::impl_cone_map;
use crate::error::{Error, Result};
use crate::fan::{same_fan, ConeId, Fan, ToricMorphism};
use crate::lattice::{cokernel_order, quotient_map, rank, ExtendedNat};

/// `Σ_σ m_σ · 1_{O(σ)}`, one coefficient per cone of the fan.
///
/// Orbits partition the variety, so this representation is unique and
/// equality is coefficient-wise.
#[derive(Debug, Clone)]
pub struct ConstructibleFunction {
    fan: Arc<Fan>,
    coeffs: Vec<BigInt>,
}

impl_cone_map!(ConstructibleFunction);

impl ConstructibleFunction {
    /// The constant function 1.
    pub fn one(fan: Arc<Fan>) -> Self {
        let n = fan.num_cones();
        ConstructibleFunction {
            fan,
            coeffs: vec![BigInt::one(); n],
        }
    }

    /// `1_{O(σ)}`.
    pub fn orbit_indicator(fan: Arc<Fan>, sigma: ConeId) -> Self {
        Self::basis(fan, sigma)
    }

    /// `1_{V(σ)}`: ones on the star of σ.
    pub fn closure_indicator(fan: Arc<Fan>, sigma: ConeId) -> Self {
        let star = fan.star(sigma);
        Self::from_terms(fan, star.into_iter().map(|c| (c, BigInt::one())))
    }

    /// Value at any point of the orbit `O(σ)`.
    pub fn evaluate(&self, sigma: ConeId) -> Result<BigInt> {
        self.coeffs
            .get(sigma.index())
            .cloned()
            .ok_or(Error::ConeNotInFan { cone: Vec::new() })
    }

    /// `χ(X, α)`: only the fixed points (orbits of dimension 0) contribute.
    pub fn euler_characteristic(&self) -> BigInt {
        self.fan
            .cones_of_dim(self.fan.rank())
            .map(|c| &self.coeffs[c.index()])
            .sum()
    }
}

pub fn one_x(fan: Arc<Fan>) -> ConstructibleFunction {
    ConstructibleFunction::one(fan)
}

/// `1_{V(σ)}` for a cone given by its ray indices.
pub fn indicator_closure(fan: Arc<Fan>, rays: &[usize]) -> Result<ConstructibleFunction> {
    let sigma = fan.require_cone(rays)?;
    Ok(ConstructibleFunction::closure_indicator(fan, sigma))
}

/// How a source orbit maps onto the orbit of its image cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum OrbitMap {
    /// Surjective with finite fibers of this cardinality.
    Finite(BigInt),
    /// Surjective with positive-dimensional torus fibers.
    TorusFibers,
    /// Image is a proper subtorus of the target orbit.
    NotDominant,
}

/// Classifies `O(σ) -> O(τ(σ))` through the induced map of quotient lattices
/// `N₁/N_σ -> N₂/N_τ`.
pub(crate) fn orbit_map(fm: &ToricMorphism, sigma: ConeId) -> OrbitMap {
    let (source, target) = (fm.source(), fm.target());
    let tau = fm.image_cone(sigma);
    let quotient = quotient_map(&target.generators(tau), target.rank());
    let induced = &quotient * fm.matrix();
    let orbit_dim_source = source.rank() - source.cone(sigma).dim();
    let orbit_dim_target = target.rank() - target.cone(tau).dim();
    if rank(&induced) < orbit_dim_target {
        return OrbitMap::NotDominant;
    }
    if orbit_dim_source > orbit_dim_target {
        return OrbitMap::TorusFibers;
    }
    match cokernel_order(&induced) {
        ExtendedNat::Finite(k) => OrbitMap::Finite(k.into()),
        ExtendedNat::Infinite => OrbitMap::NotDominant,
    }
}

/// Pushforward by fiberwise Euler characteristic, `f_*(α)(y) = χ(f⁻¹(y), α)`.
pub fn pushforward(fm: &ToricMorphism, alpha: &ConstructibleFunction) -> Result<ConstructibleFunction> {
    if !same_fan(fm.source(), &alpha.fan) {
        return Err(Error::FanMismatch);
    }
    let mut out = ConstructibleFunction::zero(fm.target().clone());
    for (sigma, m) in alpha.terms() {
        match orbit_map(fm, sigma) {
            OrbitMap::NotDominant => {
                return Err(Error::NotOrbitRepresentable {
                    cone: alpha.fan.cone(sigma).rays().to_vec(),
                })
            }
            OrbitMap::TorusFibers => {}
            OrbitMap::Finite(k) => {
                let tau = fm.image_cone(sigma);
                out.coeffs[tau.index()] += m * k;
            }
        }
    }
    Ok(out)
}

impl ConstructibleFunction {
    /// Reinterprets the coefficients as a cycle `Σ m_σ [V(σ)]`.
    pub(crate) fn to_cycle(&self) -> crate::chow::TCycle {
        crate::chow::TCycle::from_terms(
            self.fan.clone(),
            self.terms().map(|(c, m)| (c, m.clone())),
        )
    }

    /// Whether every coefficient is zero outside the given cones.
    pub fn is_supported_on(&self, cones: &[ConeId]) -> bool {
        self.terms().all(|(c, _)| cones.contains(&c))
    }
}
