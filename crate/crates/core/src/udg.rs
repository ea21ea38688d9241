//! Points, unit distance graphs and the small forbidden-subgraph checks.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{common_tower, ConstructibleNumber, ExactError, FieldTower, Rational, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UdgError {
    #[error("points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),
    #[error("points {0} and {1} are closer than the tolerance allows")]
    IndistinctPoints(usize, usize),
    #[error("the two centers coincide, so the circles share infinitely many points")]
    SameCenter,
    #[error("negative radius")]
    NegativeRadius,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPoint {
    pub x: ConstructibleNumber,
    pub y: ConstructibleNumber,
}

impl ExactPoint {
    pub fn new(x: ConstructibleNumber, y: ConstructibleNumber) -> Self {
        ExactPoint { x, y }
    }

    pub fn from_ratios(x: (i64, i64), y: (i64, i64)) -> Self {
        ExactPoint::new(
            ConstructibleNumber::from_ratio(x.0, x.1),
            ConstructibleNumber::from_ratio(y.0, y.1),
        )
    }

    pub fn origin() -> Self {
        ExactPoint::new(ConstructibleNumber::zero(), ConstructibleNumber::zero())
    }

    pub fn add(&self, o: &ExactPoint) -> ExactPoint {
        ExactPoint::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &ExactPoint) -> ExactPoint {
        ExactPoint::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn scale(&self, c: &ConstructibleNumber) -> ExactPoint {
        ExactPoint::new(&self.x * c, &self.y * c)
    }

    /// Counterclockwise quarter turn.
    pub fn perp(&self) -> ExactPoint {
        ExactPoint::new(-&self.y, self.x.clone())
    }

    pub fn dot(&self, o: &ExactPoint) -> ConstructibleNumber {
        &(&self.x * &o.x) + &(&self.y * &o.y)
    }

    pub fn cross(&self, o: &ExactPoint) -> ConstructibleNumber {
        &(&self.x * &o.y) - &(&self.y * &o.x)
    }

    pub fn norm2(&self) -> ConstructibleNumber {
        self.dot(self)
    }

    pub fn dist2(&self, o: &ExactPoint) -> ConstructibleNumber {
        self.sub(o).norm2()
    }

    pub fn lift_to(&self, t: &FieldTower) -> ExactPoint {
        ExactPoint::new(self.x.lift_to(t), self.y.lift_to(t))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

/// A point whose coordinates are exact decimals standing in for an
/// unknown true position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxPoint {
    pub x: Rational,
    pub y: Rational,
}

impl ApproxPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        ApproxPoint { x, y }
    }

    pub fn dist2(&self, o: &ApproxPoint) -> Rational {
        let dx = &self.x - &o.x;
        let dy = &self.y - &o.y;
        &dx * &dx + &dy * &dy
    }
}

#[derive(Clone, Debug)]
pub enum PointSet {
    /// All coordinates live in one shared tower.
    Exact(Vec<ExactPoint>),
    Approximate(Vec<ApproxPoint>),
}

impl PointSet {
    pub fn exact(points: Vec<ExactPoint>) -> PointSet {
        let tower = common_tower(points.iter().flat_map(|p| [&p.x, &p.y]));
        PointSet::Exact(points.iter().map(|p| p.lift_to(&tower)).collect())
    }

    pub fn approximate(points: Vec<ApproxPoint>) -> PointSet {
        PointSet::Approximate(points)
    }

    pub fn len(&self) -> usize {
        match self {
            PointSet::Exact(p) => p.len(),
            PointSet::Approximate(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_exact(&self) -> Option<&[ExactPoint]> {
        match self {
            PointSet::Exact(p) => Some(p),
            PointSet::Approximate(_) => None,
        }
    }

    pub fn tower(&self) -> FieldTower {
        match self {
            PointSet::Exact(p) if !p.is_empty() => p[0].x.tower().clone(),
            _ => FieldTower::rationals(),
        }
    }
}

pub fn default_band() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(200))
}

#[derive(Clone, Debug)]
pub enum Mode {
    Exact,
    /// `tol` bounds the distance error of a true edge; non-edges within
    /// `band` of unit length are reported as ambiguous.
    Approximate { tol: Rational, band: Rational },
}

impl Mode {
    pub fn approximate(tol: Rational) -> Mode {
        Mode::Approximate {
            tol,
            band: default_band(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EdgeCertificate {
    Exact,
    Approximate {
        #[serde(serialize_with = "crate::exact::serde_rational")]
        tolerance: Rational,
    },
}

/// Undirected simple graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<bool>>,
}

impl SimpleGraph {
    /// Loops are dropped, duplicate edges merged; stored pairs are `(min, max)`, sorted.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> SimpleGraph {
        let mut adj = vec![vec![false; n]; n];
        let mut list = Vec::new();
        for (a, b) in edges {
            assert!(a < n && b < n, "edge ({a},{b}) out of range for n={n}");
            if a == b || adj[a][b] {
                continue;
            }
            adj[a][b] = true;
            adj[b][a] = true;
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        SimpleGraph { n, edges: list, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a][b]
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| self.adj[v][u]).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&b| b).count()
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        DegreeStats::from_degrees(degrees)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeStats {
    pub degrees: Vec<usize>,
    pub min_degree: usize,
    pub max_degree: usize,
    /// Sum over vertices of `C(deg, 2)`.
    pub sum_pairs: u64,
}

impl DegreeStats {
    pub fn from_degrees(degrees: Vec<usize>) -> DegreeStats {
        let min_degree = degrees.iter().copied().min().unwrap_or(0);
        let max_degree = degrees.iter().copied().max().unwrap_or(0);
        let sum_pairs = degrees.iter().map(|&d| choose2(d as u64)).sum();
        DegreeStats {
            degrees,
            min_degree,
            max_degree,
            sum_pairs,
        }
    }

    pub fn degree_sum(&self) -> usize {
        self.degrees.iter().sum()
    }
}

pub(crate) fn choose2(d: u64) -> u64 {
    d * d.saturating_sub(1) / 2
}

#[derive(Clone, Debug)]
pub struct UnitDistanceGraph {
    points: PointSet,
    graph: SimpleGraph,
    certificates: Vec<EdgeCertificate>,
    ambiguous: Vec<(usize, usize)>,
}

impl UnitDistanceGraph {
    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        self.graph.edges()
    }

    /// Parallel to [`edges`](Self::edges).
    pub fn certificates(&self) -> &[EdgeCertificate] {
        &self.certificates
    }

    /// Pairs the approximate mode refused to classify.
    pub fn ambiguous(&self) -> &[(usize, usize)] {
        &self.ambiguous
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.points, PointSet::Exact(_))
    }

    pub fn degree_stats(&self) -> DegreeStats {
        self.graph.degree_stats()
    }
}

/// Build the unit distance graph of `points`.
///
/// Exact mode: `{i, j}` is an edge iff the squared distance is exactly 1.
/// Approximate mode: an edge iff `|d^2 - 1| <= 2 tol + tol^2`; any other pair
/// with `|d - 1| <= band` is listed as ambiguous instead of as a non-edge.
pub fn unit_distance_graph(points: &PointSet, mode: &Mode) -> Result<UnitDistanceGraph, UdgError> {
    let n = points.len();
    let one = Rational::one();
    let mut edges = Vec::new();
    let mut certificates = Vec::new();
    let mut ambiguous = Vec::new();
    match (points, mode) {
        (PointSet::Exact(ps), _) => {
            // an exact point set is classified exactly whatever the mode
            let ps = match PointSet::exact(ps.clone()) {
                PointSet::Exact(v) => v,
                PointSet::Approximate(_) => unreachable!(),
            };
            for i in 0..n {
                for j in i + 1..n {
                    let d2 = ps[i].dist2(&ps[j]);
                    if d2.is_zero() {
                        return Err(UdgError::DuplicatePoints(i, j));
                    }
                    if d2.is_one() {
                        edges.push((i, j));
                    }
                }
            }
            certificates.resize(edges.len(), EdgeCertificate::Exact);
            let graph = SimpleGraph::new(n, edges);
            return Ok(UnitDistanceGraph {
                points: PointSet::Exact(ps),
                graph,
                certificates,
                ambiguous,
            });
        }
        (PointSet::Approximate(ps), Mode::Approximate { tol, band }) => {
            let two = Rational::from_integer(BigInt::from(2));
            let edge_slack = &two * tol + tol * tol;
            let min_sep2 = &two * tol * (&two * tol);
            let band_lo = (&one - band) * (&one - band);
            let band_hi = (&one + band) * (&one + band);
            for i in 0..n {
                for j in i + 1..n {
                    let d2 = ps[i].dist2(&ps[j]);
                    if d2 <= min_sep2 {
                        return Err(UdgError::IndistinctPoints(i, j));
                    }
                    if (&d2 - &one).abs() <= edge_slack {
                        edges.push((i, j));
                    } else if band_lo <= d2 && d2 <= band_hi {
                        ambiguous.push((i, j));
                    }
                }
            }
            certificates.resize(edges.len(), EdgeCertificate::Approximate { tolerance: tol.clone() });
        }
        (PointSet::Approximate(_), Mode::Exact) => {
            // decimals are exact rationals, so the exact rule still applies
            let ps = points_as_exact(points);
            return unit_distance_graph(&PointSet::Exact(ps), &Mode::Exact);
        }
    }
    let graph = SimpleGraph::new(n, edges);
    Ok(UnitDistanceGraph {
        points: points.clone(),
        graph,
        certificates,
        ambiguous,
    })
}

fn points_as_exact(points: &PointSet) -> Vec<ExactPoint> {
    match points {
        PointSet::Exact(p) => p.clone(),
        PointSet::Approximate(p) => p
            .iter()
            .map(|q| {
                ExactPoint::new(
                    ConstructibleNumber::from_rational(q.x.clone()),
                    ConstructibleNumber::from_rational(q.y.clone()),
                )
            })
            .collect(),
    }
}

/// Intersection of the circle around `p` with squared radius `r1sq` and the
/// circle around `q` with squared radius `r2sq`, inside (an extension of)
/// `tower`. When there are two points, the first lies to the left of the
/// directed line `p -> q`.
pub fn circle_intersections(
    p: &ExactPoint,
    r1sq: &ConstructibleNumber,
    q: &ExactPoint,
    r2sq: &ConstructibleNumber,
    tower: &FieldTower,
) -> Result<(FieldTower, Vec<ExactPoint>), UdgError> {
    if r1sq.sign() == Sign::Negative || r2sq.sign() == Sign::Negative {
        return Err(UdgError::NegativeRadius);
    }
    let pq = q.sub(p);
    let d2 = pq.norm2();
    if d2.is_zero() {
        return Err(UdgError::SameCenter);
    }
    let inv = d2.recip()?;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let t = (&(&d2 + r1sq) - r2sq).scale(&half) * &inv;
    let s2 = &(r1sq * &inv) - &t.square();
    let base = p.add(&pq.scale(&t));
    match s2.sign() {
        Sign::Negative => Ok((tower.clone(), Vec::new())),
        Sign::Zero => Ok((tower.clone(), vec![base])),
        Sign::Positive => {
            let anchor = ConstructibleNumber::zero().lift_to(tower);
            let tower = common_tower([&s2, &anchor]);
            let (tower, s) = s2.sqrt_extend_in(&tower)?;
            let off = pq.perp().scale(&s);
            let a = base.add(&off).lift_to(&tower);
            let b = base.sub(&off).lift_to(&tower);
            Ok((tower, vec![a, b]))
        }
    }
}

#[derive(Clone, Debug)]
pub struct CommonNeighbors {
    pub count: usize,
    /// Points at distance exactly 1 from both inputs.
    pub witnesses: Vec<ExactPoint>,
    pub tower: FieldTower,
}

/// The points at unit distance from both `p` and `q`.
pub fn common_unit_neighbors(p: &ExactPoint, q: &ExactPoint) -> Result<CommonNeighbors, UdgError> {
    let one = ConstructibleNumber::one();
    let tower = common_tower([&p.x, &p.y, &q.x, &q.y]);
    let (tower, witnesses) = circle_intersections(p, &one, q, &one, &tower)?;
    Ok(CommonNeighbors {
        count: witnesses.len(),
        witnesses,
        tower,
    })
}

/// Two vertices with three common neighbours: `(a, b, [c1, c2, c3])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct K23Witness {
    pub pair: (usize, usize),
    pub common: [usize; 3],
}

pub fn contains_k23(g: &SimpleGraph) -> Option<K23Witness> {
    for a in 0..g.n() {
        for b in a + 1..g.n() {
            let common: Vec<usize> = (0..g.n())
                .filter(|&c| g.has_edge(a, c) && g.has_edge(b, c))
                .take(3)
                .collect();
            if common.len() == 3 {
                return Some(K23Witness {
                    pair: (a, b),
                    common: [common[0], common[1], common[2]],
                });
            }
        }
    }
    None
}

pub fn contains_k4(g: &SimpleGraph) -> Option<[usize; 4]> {
    let n = g.n();
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_edge(a, b) {
                continue;
            }
            for c in b + 1..n {
                if !(g.has_edge(a, c) && g.has_edge(b, c)) {
                    continue;
                }
                for d in c + 1..n {
                    if g.has_edge(a, d) && g.has_edge(b, d) && g.has_edge(c, d) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

/// Minimum of `sum C(d_i, 2)` over degree sequences of length `n` summing to `2m`.
pub fn jensen_degree_floor(n: u64, m: u64) -> u128 {
    assert!(n >= 1, "jensen_degree_floor needs n >= 1");
    let (q, r) = ((2 * m) / n, (2 * m) % n);
    let c = |d: u64| -> u128 { choose2(d) as u128 };
    (n - r) as u128 * c(q) + r as u128 * c(q + 1)
}
