//! Small named fans used throughout the tests, the CLI and the docs.

use std::sync::Arc;

use crate::fan::Fan;

fn build(rank: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Arc<Fan> {
    Arc::new(Fan::from_i64(rank, rays, cones).expect("corpus fans are valid"))
}

/// A^1: the ray (1).
pub fn affine_line() -> Arc<Fan> {
    build(1, &[&[1]], &[&[0]])
}

/// P^1: rays (1) and (-1).
pub fn projective_line() -> Arc<Fan> {
    build(1, &[&[1], &[-1]], &[&[0], &[1]])
}

/// A^2: the positive quadrant.
pub fn affine_plane() -> Arc<Fan> {
    build(2, &[&[1, 0], &[0, 1]], &[&[0, 1]])
}

/// P^2: rays e1, e2, -e1-e2.
pub fn projective_plane() -> Arc<Fan> {
    build(
        2,
        &[&[1, 0], &[0, 1], &[-1, -1]],
        &[&[0, 1], &[1, 2], &[0, 2]],
    )
}

/// P^1 x P^1: rays ±e1, ±e2.
pub fn p1_times_p1() -> Arc<Fan> {
    build(
        2,
        &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]],
        &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]],
    )
}

/// Hirzebruch surface F1, the blow-up of P^2 at the fixed point of cone(e1, e2).
pub fn hirzebruch_f1() -> Arc<Fan> {
    build(
        2,
        &[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]],
        &[&[0, 3], &[3, 1], &[1, 2], &[0, 2]],
    )
}

/// P^1 x P^1 blown up at the fixed point of cone(e1, e2).
pub fn p1_times_p1_blown_up() -> Arc<Fan> {
    build(
        2,
        &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1], &[1, 1]],
        &[&[0, 4], &[4, 1], &[1, 2], &[2, 3], &[0, 3]],
    )
}

/// P^2 with the fixed point of cone(e1, e2) removed.
pub fn projective_plane_minus_point() -> Arc<Fan> {
    build(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[1, 2], &[0, 2]])
}

/// The torus of the given rank.
pub fn torus(rank: usize) -> Arc<Fan> {
    Arc::new(Fan::torus(rank))
}

/// The smooth complete fans of the corpus, by name.
pub fn smooth_complete() -> Vec<(&'static str, Arc<Fan>)> {
    vec![
        ("P1", projective_line()),
        ("P2", projective_plane()),
        ("P1xP1", p1_times_p1()),
        ("F1", hirzebruch_f1()),
        ("Bl(P1xP1)", p1_times_p1_blown_up()),
    ]
}
