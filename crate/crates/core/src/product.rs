//! Products of toric varieties: product fans, external products of
//! functions and cycles, and the product formula for CSM classes.

use std::sync::Arc;

use crate::chow::TCycle;
use crate::constructible::ConstructibleFunction;
use crate::csm::{csm, Comparison};
use crate::error::{Error, Result};
use crate::fan::{same_fan, ConeId, Fan, ToricMorphism};
use crate::lattice::{IntMatrix, LatticeVector};

/// `f1 × f2` together with the index `(σ, τ) ↦ σ × τ`.
#[derive(Debug, Clone)]
pub struct ProductFan {
    first: Arc<Fan>,
    second: Arc<Fan>,
    fan: Arc<Fan>,
    pairing: Vec<Vec<ConeId>>,
}

impl ProductFan {
    pub fn first(&self) -> &Arc<Fan> {
        &self.first
    }

    pub fn second(&self) -> &Arc<Fan> {
        &self.second
    }

    pub fn fan(&self) -> &Arc<Fan> {
        &self.fan
    }

    pub fn pair(&self, sigma: ConeId, tau: ConeId) -> ConeId {
        self.pairing[sigma.index()][tau.index()]
    }

    /// First projection, `(x, y) ↦ x`.
    pub fn first_projection(&self) -> ToricMorphism {
        let (n1, n2) = (self.first.rank(), self.second.rank());
        let matrix = IntMatrix::identity(n1).direct_sum(&IntMatrix::zeros(0, n2));
        ToricMorphism::new(matrix, self.fan.clone(), self.first.clone())
            .expect("projections are compatible")
    }

    /// Second projection, `(x, y) ↦ y`.
    pub fn second_projection(&self) -> ToricMorphism {
        let (n1, n2) = (self.first.rank(), self.second.rank());
        let matrix = IntMatrix::zeros(0, n1).direct_sum(&IntMatrix::identity(n2));
        ToricMorphism::new(matrix, self.fan.clone(), self.second.clone())
            .expect("projections are compatible")
    }
}

/// Rays of `f1` come first as `(u, 0)`, then those of `f2` as `(0, w)`.
pub fn product_fan(f1: &Arc<Fan>, f2: &Arc<Fan>) -> ProductFan {
    let (n1, n2) = (f1.rank(), f2.rank());
    let r1 = f1.rays().len();
    let rays: Vec<LatticeVector> = f1
        .rays()
        .iter()
        .map(|u| u.concat(&LatticeVector::zero(n2)))
        .chain(f2.rays().iter().map(|w| LatticeVector::zero(n1).concat(w)))
        .collect();
    let joined = |sigma: ConeId, tau: ConeId| -> Vec<usize> {
        let mut set = f1.cone(sigma).rays().to_vec();
        set.extend(f2.cone(tau).rays().iter().map(|r| r + r1));
        set.sort_unstable();
        set
    };
    let sets: Vec<Vec<usize>> = f1
        .cone_ids()
        .flat_map(|s| f2.cone_ids().map(move |t| (s, t)))
        .map(|(s, t)| joined(s, t))
        .collect();
    let fan = Arc::new(Fan::assemble(n1 + n2, rays, sets));
    let pairing = f1
        .cone_ids()
        .map(|s| {
            f2.cone_ids()
                .map(|t| fan.cone_id(&joined(s, t)).expect("product cone"))
                .collect()
        })
        .collect();
    ProductFan {
        first: f1.clone(),
        second: f2.clone(),
        fan,
        pairing,
    }
}

fn check_factors(p: &ProductFan, a: &Arc<Fan>, b: &Arc<Fan>) -> Result<()> {
    if same_fan(a, &p.first) && same_fan(b, &p.second) {
        Ok(())
    } else {
        Err(Error::FanMismatch)
    }
}

/// `α ⊗ β`, with coefficient `m_σ n_τ` on the orbit `O(σ × τ)`.
pub fn external_product_function(
    p: &ProductFan,
    alpha: &ConstructibleFunction,
    beta: &ConstructibleFunction,
) -> Result<ConstructibleFunction> {
    check_factors(p, alpha.fan(), beta.fan())?;
    let terms = alpha
        .terms()
        .flat_map(|(s, m)| beta.terms().map(move |(t, n)| (p.pair(s, t), m * n)));
    Ok(ConstructibleFunction::from_terms(p.fan.clone(), terms))
}

/// `z1 × z2`, with `[V(σ)] × [V(τ)] = [V(σ × τ)]`.
pub fn external_product_cycle(p: &ProductFan, z1: &TCycle, z2: &TCycle) -> Result<TCycle> {
    check_factors(p, z1.fan(), z2.fan())?;
    let terms = z1
        .terms()
        .flat_map(|(s, m)| z2.terms().map(move |(t, n)| (p.pair(s, t), m * n)));
    Ok(TCycle::from_terms(p.fan.clone(), terms))
}

/// `csm(α ⊗ β)` against `csm(α) × csm(β)`, compared exactly.
pub fn verify_product_formula(alpha: &ConstructibleFunction, beta: &ConstructibleFunction) -> Result<Comparison> {
    let p = product_fan(alpha.fan(), beta.fan());
    let left = csm(&external_product_function(&p, alpha, beta)?);
    let right = external_product_cycle(&p, &csm(alpha), &csm(beta))?;
    let holds = left == right;
    Ok(Comparison { left, right, holds })
}

/// `f × g` between product fans, with the block-diagonal matrix.
pub fn product_morphism(f: &ToricMorphism, g: &ToricMorphism, source: &ProductFan, target: &ProductFan) -> Result<ToricMorphism> {
    check_factors(source, f.source(), g.source())?;
    check_factors(target, f.target(), g.target())?;
    ToricMorphism::new(
        f.matrix().direct_sum(g.matrix()),
        source.fan.clone(),
        target.fan.clone(),
    )
}
