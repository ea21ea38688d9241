//! Exact points used by the certificates.

use crate::exact::ConstructibleNumber;
use crate::udg::ExactPoint;

/// Vertices of the unit regular hexagon, counterclockwise from (1, 0).
pub fn hexagon() -> Vec<ExactPoint> {
    let h = ConstructibleNumber::from_integer(3)
        .sqrt()
        .expect("3 > 0")
        .scale(&ConstructibleNumber::from_ratio(1, 2).as_rational().expect("rational"));
    let half = ConstructibleNumber::from_ratio(1, 2);
    let one = ConstructibleNumber::one();
    let zero = ConstructibleNumber::zero();
    vec![
        ExactPoint::new(one.clone(), zero.clone()),
        ExactPoint::new(half.clone(), h.clone()),
        ExactPoint::new(-&half, h.clone()),
        ExactPoint::new(-&one, zero),
        ExactPoint::new(-&half, -&h),
        ExactPoint::new(half, -&h),
    ]
}

/// Rational unit vectors from Pythagorean triples. None of their angles,
/// nor any difference of two of them, is a multiple of 60 degrees.
pub fn offsets() -> Vec<ExactPoint> {
    [(3, 4, 5), (5, 12, 13), (8, 15, 17), (20, 21, 29), (7, 24, 25), (12, 35, 37)]
        .iter()
        .map(|&(a, b, c)| ExactPoint::from_ratios((a, c), (b, c)))
        .collect()
}

/// Offsets used to sample the free angle of a second chain: the vectors
/// above, their mirror images and their reverses.
pub fn sample_offsets() -> Vec<ExactPoint> {
    let mut out = Vec::new();
    for &(a, b, c) in &[(3i64, 4i64, 5i64), (5, 12, 13), (8, 15, 17), (20, 21, 29)] {
        for (x, y) in [(a, b), (b, a), (-a, -b), (a, -b), (-b, a)] {
            out.push(ExactPoint::from_ratios((x, c), (y, c)));
        }
    }
    out
}

/// Complex product `p * w`.
pub fn rotate(p: &ExactPoint, w: &ExactPoint) -> ExactPoint {
    ExactPoint::new(&(&p.x * &w.x) - &(&p.y * &w.y), &(&p.x * &w.y) + &(&p.y * &w.x))
}
