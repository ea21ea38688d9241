//! The arc multigraph of a unit distance graph: each unit circle around a
//! vertex is cut into arcs at the points lying on it.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::Serialize;

use super::DrawingError;
use crate::exact::{ConstructibleNumber, Sign};
use crate::udg::{circle_intersections, DegreeStats, ExactPoint, UnitDistanceGraph};

/// An arc of the unit circle around `circle` between two consecutive points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub circle: usize,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArcMultigraph {
    pub n: usize,
    pub m: usize,
    pub arcs: Vec<Arc>,
    /// Counterclockwise order of the points on each circle.
    pub circle_orders: Vec<Vec<usize>>,
    pub multiplicity: BTreeMap<(usize, usize), usize>,
    pub max_multiplicity: usize,
    /// Circles carrying fewer than two points; they contribute no arcs.
    pub sparse_circles: Vec<usize>,
    /// False when some vertex has degree below 3, which voids the
    /// multiplicity-2 guarantee.
    pub min_degree_ok: bool,
    pub arc_count_is_2m: bool,
    pub stats: CircleCrossingStats,
}

impl ArcMultigraph {
    /// Edges of the multigraph, one per arc.
    pub fn edge_count(&self) -> usize {
        self.arcs.len()
    }
}

fn half(p: &ExactPoint) -> u8 {
    match (p.y.sign(), p.x.sign()) {
        (Sign::Positive, _) | (Sign::Zero, Sign::Positive) => 0,
        _ => 1,
    }
}

/// Counterclockwise angle order of nonzero vectors, starting at direction (1, 0).
fn angle_cmp(a: &ExactPoint, b: &ExactPoint) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| match a.cross(b).sign() {
        Sign::Positive => Ordering::Less,
        Sign::Negative => Ordering::Greater,
        Sign::Zero => Ordering::Equal,
    })
}

fn exact_points(g: &UnitDistanceGraph) -> Result<&[ExactPoint], DrawingError> {
    g.points().as_exact().ok_or(DrawingError::NotExact)
}

pub fn build_arc_multigraph(g: &UnitDistanceGraph) -> Result<ArcMultigraph, DrawingError> {
    let pts = exact_points(g)?;
    let n = pts.len();
    let mut arcs = Vec::new();
    let mut orders = Vec::with_capacity(n);
    let mut sparse = Vec::new();
    for v in 0..n {
        let mut on: Vec<usize> = g.graph().neighbors(v);
        on.sort_by(|&a, &b| angle_cmp(&pts[a].sub(&pts[v]), &pts[b].sub(&pts[v])));
        // distinct points on one circle never share a direction from its center
        debug_assert!(on
            .windows(2)
            .all(|w| angle_cmp(&pts[w[0]].sub(&pts[v]), &pts[w[1]].sub(&pts[v])) == Ordering::Less));
        if on.len() < 2 {
            sparse.push(v);
        } else {
            for i in 0..on.len() {
                arcs.push(Arc {
                    circle: v,
                    from: on[i],
                    to: on[(i + 1) % on.len()],
                });
            }
        }
        orders.push(on);
    }
    let mut multiplicity = BTreeMap::new();
    for a in &arcs {
        *multiplicity.entry((a.from.min(a.to), a.from.max(a.to))).or_insert(0) += 1;
    }
    let stats = circle_crossing_stats(g)?;
    Ok(ArcMultigraph {
        n,
        m: g.m(),
        max_multiplicity: multiplicity.values().copied().max().unwrap_or(0),
        multiplicity,
        arc_count_is_2m: arcs.len() == 2 * g.m(),
        arcs,
        circle_orders: orders,
        sparse_circles: sparse,
        min_degree_ok: g.degree_stats().min_degree >= 3,
        stats,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircleCrossingStats {
    /// Circle pairs meeting in two points.
    pub secant_pairs: u64,
    /// Circle pairs touching in one point (center distance exactly 2).
    pub tangent_pairs: u64,
    /// Secants count 2, tangencies 1.
    pub total_points: u64,
    /// Intersection points that are input vertices, per circle pair.
    pub at_vertices: u64,
    /// `sum_v C(deg v, 2)`.
    pub degree_pairs: u64,
    /// Transversal crossings away from vertices; tangencies count 0.
    pub crossings: u64,
    pub n_squared_minus_n: u64,
}

impl CircleCrossingStats {
    pub fn vertex_identity_holds(&self) -> bool {
        self.at_vertices == self.degree_pairs
    }
}

/// Intersection points of all pairs of unit circles around the vertices,
/// computed geometrically and matched against the vertex set.
pub fn circle_crossing_stats(g: &UnitDistanceGraph) -> Result<CircleCrossingStats, DrawingError> {
    let pts = exact_points(g)?;
    let n = pts.len();
    let tower = g.points().tower();
    let one = ConstructibleNumber::one().lift_to(&tower);
    let four = ConstructibleNumber::from_integer(4);
    let mut s = CircleCrossingStats {
        secant_pairs: 0,
        tangent_pairs: 0,
        total_points: 0,
        at_vertices: 0,
        degree_pairs: g.degree_stats().sum_pairs,
        crossings: 0,
        n_squared_minus_n: (n * n - n) as u64,
    };
    let approx: Vec<(f64, f64)> = pts.iter().map(ExactPoint::to_f64).collect();
    for i in 0..n {
        for j in i + 1..n {
            if pts[i].dist2(&pts[j]) > four {
                continue;
            }
            let (_, meet) =
                circle_intersections(&pts[i], &one, &pts[j], &one, &tower).map_err(|e| DrawingError::Format(e.to_string()))?;
            let hits = meet
                .iter()
                .filter(|x| {
                    let (fx, fy) = x.to_f64();
                    // exact test only for vertices that are close in floating point
                    pts.iter()
                        .zip(&approx)
                        .any(|(p, &(px, py))| (px - fx).hypot(py - fy) < 1e-6 && p.dist2(x).is_zero())
                })
                .count() as u64;
            s.at_vertices += hits;
            s.total_points += meet.len() as u64;
            match meet.len() {
                2 => {
                    s.secant_pairs += 1;
                    s.crossings += 2 - hits;
                }
                1 => s.tangent_pairs += 1,
                _ => {}
            }
        }
    }
    Ok(s)
}

/// Both sides of `n^2 - n >= 4m - 12n + 24 + sum_v C(deg v, 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropositionReport {
    pub n: u64,
    pub m: u64,
    pub lhs: i128,
    pub rhs: i128,
    pub slack: i128,
    pub holds: bool,
    /// The inequality is only claimed when every degree is at least 3.
    pub min_degree_ok: bool,
}

pub fn proposition_for_degrees(n: u64, stats: &DegreeStats) -> PropositionReport {
    let m = (stats.degree_sum() / 2) as u64;
    let lhs = (n * n) as i128 - n as i128;
    let rhs = 4 * m as i128 - 12 * n as i128 + 24 + stats.sum_pairs as i128;
    PropositionReport {
        n,
        m,
        lhs,
        rhs,
        slack: lhs - rhs,
        holds: lhs >= rhs,
        min_degree_ok: stats.min_degree >= 3,
    }
}

pub fn check_proposition_inequality(g: &UnitDistanceGraph) -> PropositionReport {
    proposition_for_degrees(g.n() as u64, &g.degree_stats())
}
