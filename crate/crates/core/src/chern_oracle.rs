//! Total Chern class of the tangent bundle of a smooth complete toric
//! variety, `c(TX) ∩ [X] = Π_ρ (1 + D_ρ) ∩ [X]`, by repeated intersection
//! with invariant divisors. Serves as an independent check on the orbit sum.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::chow::{equivalent, TCycle};
use crate::constructible::one_x;
use crate::csm::{csm, Comparison};
use crate::error::{Error, Result};
use crate::fan::{ConeId, Fan};
use crate::lattice::{smith_normal_form, IntMatrix, LatticeVector};
use std::sync::Arc;

fn require_smooth_complete(fan: &Fan) -> Result<()> {
    if !fan.is_smooth() {
        return Err(Error::NotSmooth);
    }
    if !fan.is_complete() {
        return Err(Error::NotComplete);
    }
    Ok(())
}

/// The character `m` with `⟨m, u_ρ⟩ = 1` and `⟨m, u⟩ = 0` on the other rays
/// of a smooth cone σ.
fn dual_character(fan: &Fan, sigma: ConeId, ray: usize) -> LatticeVector {
    let rays = fan.cone(sigma).rays();
    let gens = fan.generators(sigma);
    let snf = smith_normal_form(&IntMatrix::from_rows(fan.rank(), &gens));
    let (left, _, right) = snf.into_parts();
    let pos = rays.iter().position(|&r| r == ray).expect("ray lies in the cone");
    let mut padded = left.column(pos).into_coords();
    padded.resize(fan.rank(), BigInt::zero());
    right.mul_vec(&LatticeVector::new(padded))
}

/// `D_ρ · [V(σ)]` for a single orbit closure of positive dimension.
fn intersect_orbit(fan: &Fan, ray: usize, sigma: ConeId) -> Vec<(ConeId, BigInt)> {
    let cone = fan.cone(sigma);
    let joined = |extra: usize| {
        let mut rays = cone.rays().to_vec();
        rays.push(extra);
        fan.cone_id(&rays)
    };
    if !cone.contains_ray(ray) {
        return joined(ray).map(|c| vec![(c, BigInt::from(1))]).unwrap_or_default();
    }
    let m = dual_character(fan, sigma, ray);
    (0..fan.rays().len())
        .filter(|r| !cone.contains_ray(*r))
        .filter_map(|r| {
            let tau = joined(r)?;
            let pairing = m.dot(fan.ray(r));
            (!pairing.is_zero()).then(|| (tau, -pairing))
        })
        .collect()
}

/// `D_ρ · z` for a homogeneous cycle of positive dimension.
pub fn intersect_divisor(fan: &Arc<Fan>, ray: usize, z: &TCycle) -> Result<TCycle> {
    require_smooth_complete(fan)?;
    if !crate::fan::same_fan(fan, z.fan()) {
        return Err(Error::FanMismatch);
    }
    if ray >= fan.rays().len() {
        return Err(Error::RayIndexOutOfRange { index: ray });
    }
    match z.homogeneous_dim() {
        None if z.is_zero() => return Ok(TCycle::zero(fan.clone())),
        Some(k) if k >= 1 => {}
        _ => return Err(Error::BadGrade),
    }
    let mut out = TCycle::zero(fan.clone());
    for (sigma, m) in z.terms() {
        for (tau, c) in intersect_orbit(fan, ray, sigma) {
            let v = out.coeff(tau) + m * c;
            out.set_coeff(tau, v);
        }
    }
    Ok(out)
}

/// `Π_ρ (1 + D_ρ) ∩ [X]`, with all graded parts.
pub fn tangent_chern_class(fan: &Arc<Fan>) -> Result<TCycle> {
    require_smooth_complete(fan)?;
    let mut total = TCycle::fundamental(fan.clone());
    for ray in 0..fan.rays().len() {
        let mut next = total.clone();
        for k in 1..=fan.rank() {
            let part = total.graded_part(k);
            if !part.is_zero() {
                next = &next + &intersect_divisor(fan, ray, &part)?;
            }
        }
        total = next;
    }
    Ok(total)
}

/// The tangent Chern class against the orbit-closure sum.
pub fn verify_dagger(fan: &Arc<Fan>) -> Result<Comparison> {
    let left = tangent_chern_class(fan)?;
    let right = csm(&one_x(fan.clone()));
    let holds = equivalent(&left, &right)?;
    Ok(Comparison { left, right, holds })
}
