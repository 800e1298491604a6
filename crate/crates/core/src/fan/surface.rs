//! Completion and resolution of fans in rank at most 2.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{maximal_sets, Fan};
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;

fn det2(u: &LatticeVector, v: &LatticeVector) -> BigInt {
    let (a, b) = (u.coords(), v.coords());
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn upper_half(v: &LatticeVector) -> bool {
    let c = v.coords();
    c[1].is_positive() || (c[1].is_zero() && c[0].is_positive())
}

/// Counter-clockwise order starting from the positive x-axis.
fn angular_cmp(u: &LatticeVector, v: &LatticeVector) -> Ordering {
    match (upper_half(u), upper_half(v)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => det2(v, u).sign().cmp(&num_bigint::Sign::NoSign),
    }
}

/// Completes a fan of rank at most 2 by closing every angular gap.
///
/// Gaps wider than a half-turn receive the negations of both bounding rays,
/// a gap of exactly a half-turn receives the bounding ray rotated by a
/// quarter turn, and a single ray receives its negation. The remaining gaps
/// are then filled with the two-dimensional cone of their bounding rays.
pub fn complete_fan_2d(fan: &Fan) -> Result<Fan> {
    match fan.rank() {
        0 => Ok(fan.clone()),
        1 => {
            let mut rays = fan.rays().to_vec();
            for c in [1i64, -1] {
                let v = LatticeVector::from_i64s(&[c]);
                if !rays.contains(&v) {
                    rays.push(v);
                }
            }
            let cones = (0..rays.len()).map(|i| vec![i]).collect();
            Fan::new(1, rays, cones)
        }
        2 => complete_rank_two(fan),
        r => Err(Error::RankTooHigh(r)),
    }
}

fn complete_rank_two(fan: &Fan) -> Result<Fan> {
    let mut rays = fan.rays().to_vec();
    if rays.is_empty() {
        rays.push(LatticeVector::unit(2, 0));
    }
    // a gap from i to j (counter-clockwise) is already a cone of the fan
    let is_cone = |rays: &[LatticeVector], i: usize, j: usize| {
        det2(&rays[i], &rays[j]).is_positive()
            && fan.cone_by_vectors(&[rays[i].clone(), rays[j].clone()]).is_some()
    };

    let order = loop {
        let mut order: Vec<usize> = (0..rays.len()).collect();
        order.sort_by(|&a, &b| angular_cmp(&rays[a], &rays[b]));
        if order.len() == 1 {
            let neg = -&rays[order[0]];
            rays.push(neg);
            continue;
        }
        let mut insert: Vec<LatticeVector> = Vec::new();
        for k in 0..order.len() {
            let (i, j) = (order[k], order[(k + 1) % order.len()]);
            if is_cone(&rays, i, j) {
                continue;
            }
            let d = det2(&rays[i], &rays[j]);
            if d.is_negative() {
                insert.push(-&rays[i]);
                insert.push(-&rays[j]);
            } else if d.is_zero() {
                let c = rays[i].coords();
                insert.push(LatticeVector::new(vec![-&c[1], c[0].clone()]));
            }
            if !insert.is_empty() {
                break;
            }
        }
        if insert.is_empty() {
            break order;
        }
        rays.extend(insert);
    };

    let mut cones: Vec<Vec<usize>> = fan.cones().iter().map(|c| c.rays().to_vec()).collect();
    for k in 0..order.len() {
        cones.push(vec![order[k], order[(k + 1) % order.len()]]);
    }
    Fan::new(2, rays, maximal_sets(cones))
}

/// Rays of the minimal resolution of the two-dimensional cone spanned by
/// `u` and `v`, listed from `u` towards `v` (empty if already smooth).
pub fn hirzebruch_jung_rays(u: &LatticeVector, v: &LatticeVector) -> Vec<LatticeVector> {
    let (mut a, b) = if det2(u, v).is_negative() {
        (v.clone(), u.clone())
    } else {
        (u.clone(), v.clone())
    };
    let mut out = Vec::new();
    loop {
        let d = det2(&a, &b);
        if d <= BigInt::one() {
            break;
        }
        // w0 with det(a, w0) = 1
        let c = a.coords();
        let g = c[0].extended_gcd(&c[1]);
        let (x, y) = if g.gcd.is_negative() {
            (-g.x, -g.y)
        } else {
            (g.x, g.y)
        };
        let w0 = LatticeVector::new(vec![-y, x]);
        debug_assert!(det2(&a, &w0).is_one());
        // smallest t with det(w0 + t a, b) >= 0
        let t = (-det2(&w0, &b)).div_ceil(&d);
        let w = &w0 + &a.scale(&t);
        out.push(w.clone());
        a = w;
    }
    if det2(u, v).is_negative() {
        out.reverse();
    }
    out
}

/// Minimal smooth refinement of a fan of rank at most 2 with the same support.
pub fn smooth_refine_2d(fan: &Fan) -> Result<Fan> {
    match fan.rank() {
        0 | 1 => return Ok(fan.clone()),
        2 => {}
        r => return Err(Error::RankTooHigh(r)),
    }
    if fan.is_smooth() {
        return Ok(fan.clone());
    }
    let mut rays = fan.rays().to_vec();
    let mut cones: Vec<Vec<usize>> = Vec::new();
    for id in fan.cone_ids() {
        let cone = fan.cone(id);
        if cone.dim() < 2 {
            cones.push(cone.rays().to_vec());
            continue;
        }
        let (i, j) = (cone.rays()[0], cone.rays()[1]);
        let inserted = hirzebruch_jung_rays(&rays[i], &rays[j]);
        let mut chain = vec![i];
        for w in inserted {
            chain.push(rays.len());
            rays.push(w);
        }
        chain.push(j);
        for pair in chain.windows(2) {
            cones.push(pair.to_vec());
        }
    }
    Fan::new(2, rays, maximal_sets(cones))
}
