//! Straight-line and abstract drawings with their crossing statistics.

mod arcs;

pub use arcs::{
    build_arc_multigraph, check_proposition_inequality, circle_crossing_stats, proposition_for_degrees, Arc,
    ArcMultigraph, CircleCrossingStats, PropositionReport,
};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::exact::{parse_in, ConstructibleNumber, ExactError, FieldTower, Rational, Sign};
use crate::udg::{ExactPoint, PointSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DrawingError {
    #[error("vertices {0} and {1} coincide")]
    DuplicateVertices(usize, usize),
    #[error("edge {0:?} is a loop or names a missing vertex")]
    BadEdge((usize, usize)),
    #[error("vertex {vertex} lies inside edge {edge:?}")]
    VertexOnEdge { vertex: usize, edge: (usize, usize) },
    #[error("edges {0:?} and {1:?} overlap in a segment")]
    Overlap((usize, usize), (usize, usize)),
    #[error("edges {0:?}, {1:?} and {2:?} pass through one interior point")]
    TripleCrossing((usize, usize), (usize, usize), (usize, usize)),
    #[error("crossing pair ({0}, {1}) is a self-pair or out of range")]
    BadCrossingPair(usize, usize),
    #[error("edges {0} and {1} are parallel copies and may not cross")]
    ParallelCrossing(usize, usize),
    #[error("thickening factor must be at least 1")]
    ZeroThickness,
    #[error("the unit distance graph has approximate points")]
    NotExact,
    #[error("malformed drawing: {0}")]
    Format(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

fn orient(a: &ExactPoint, b: &ExactPoint, c: &ExactPoint) -> Sign {
    b.sub(a).cross(&c.sub(a)).sign()
}

/// `v` strictly between `a` and `b` on their segment.
fn inside_segment(v: &ExactPoint, a: &ExactPoint, b: &ExactPoint) -> bool {
    orient(a, b, v) == Sign::Zero
        && v.sub(a).dot(&b.sub(a)).sign() == Sign::Positive
        && v.sub(b).dot(&a.sub(b)).sign() == Sign::Positive
}

/// Vertices at exact positions joined by segments, validated on construction.
#[derive(Clone, Debug)]
pub struct StraightLineDrawing {
    points: Vec<ExactPoint>,
    edges: Vec<(usize, usize)>,
}

impl StraightLineDrawing {
    /// Edges are normalized to `a < b` and deduplicated.
    pub fn new(points: PointSet, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, DrawingError> {
        let set = PointSet::exact(match points {
            PointSet::Exact(p) => p,
            PointSet::Approximate(p) => p
                .into_iter()
                .map(|q| {
                    ExactPoint::new(ConstructibleNumber::from_rational(q.x), ConstructibleNumber::from_rational(q.y))
                })
                .collect(),
        });
        let points = set.as_exact().expect("exact").to_vec();
        let n = points.len();
        let mut es: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            if a == b || a >= n || b >= n {
                return Err(DrawingError::BadEdge((a, b)));
            }
            es.push((a.min(b), a.max(b)));
        }
        es.sort_unstable();
        es.dedup();
        for i in 0..n {
            for j in i + 1..n {
                if points[i].dist2(&points[j]).is_zero() {
                    return Err(DrawingError::DuplicateVertices(i, j));
                }
            }
        }
        let d = StraightLineDrawing { points, edges: es };
        d.check_overlaps()?;
        for &(a, b) in &d.edges {
            for v in 0..n {
                if v != a && v != b && inside_segment(&d.points[v], &d.points[a], &d.points[b]) {
                    return Err(DrawingError::VertexOnEdge { vertex: v, edge: (a, b) });
                }
            }
        }
        Ok(d)
    }

    fn check_overlaps(&self) -> Result<(), DrawingError> {
        let p = &self.points;
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            let dir = p[b].sub(&p[a]);
            let len2 = dir.norm2();
            for &(c, d) in &self.edges[i + 1..] {
                if orient(&p[a], &p[b], &p[c]) != Sign::Zero || orient(&p[a], &p[b], &p[d]) != Sign::Zero {
                    continue;
                }
                // project onto ab: [0, |ab|^2] against [tc, td]
                let tc = p[c].sub(&p[a]).dot(&dir);
                let td = p[d].sub(&p[a]).dot(&dir);
                let (lo, hi) = if tc <= td { (tc, td) } else { (td, tc) };
                let zero = ConstructibleNumber::zero();
                let start = if lo > zero { lo } else { zero };
                let end = if hi < len2 { hi } else { len2.clone() };
                if start < end {
                    return Err(DrawingError::Overlap((a, b), (c, d)));
                }
            }
        }
        Ok(())
    }

    /// Reads `{"positions": [[x, y], ...], "edges": [[a, b], ...]}`; coordinates
    /// are numbers or strings in expression syntax such as `"sqrt(3)/2"`.
    pub fn from_json(text: &str) -> Result<Self, DrawingError> {
        let v: Value = serde_json::from_str(text).map_err(|e| DrawingError::Format(e.to_string()))?;
        let pos = v
            .get("positions")
            .and_then(Value::as_array)
            .ok_or_else(|| DrawingError::Format("missing array `positions`".into()))?;
        let mut tower = FieldTower::rationals();
        let mut coord = |c: &Value| -> Result<ConstructibleNumber, DrawingError> {
            let s = match c {
                Value::String(s) => s.clone(),
                Value::Number(x) => x.to_string(),
                other => return Err(DrawingError::Format(format!("bad coordinate {other}"))),
            };
            let (t, x) = parse_in(&s, &tower)?;
            tower = t;
            Ok(x)
        };
        let mut points = Vec::new();
        for p in pos {
            let xy = p
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| DrawingError::Format(format!("position {p} is not a pair")))?;
            let x = coord(&xy[0])?;
            let y = coord(&xy[1])?;
            points.push(ExactPoint::new(x, y));
        }
        let edges = v
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| DrawingError::Format("missing array `edges`".into()))?
            .iter()
            .map(|e| {
                let ab = e.as_array().filter(|a| a.len() == 2);
                match ab.map(|a| (a[0].as_u64(), a[1].as_u64())) {
                    Some((Some(a), Some(b))) => Ok((a as usize, b as usize)),
                    _ => Err(DrawingError::Format(format!("edge {e} is not a pair of indices"))),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        StraightLineDrawing::new(PointSet::exact(points), edges)
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn points(&self) -> &[ExactPoint] {
        &self.points
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossingCount {
    pub total: u64,
    /// `x(e)`, indexed like the drawing's edges.
    pub per_edge: Vec<u64>,
    /// Crossing edge pairs by edge index, `i < j`.
    pub pairs: Vec<(usize, usize)>,
}

/// Proper crossings between non-adjacent edges, checking that no interior
/// point is shared by three edges.
pub fn count_crossings_straightline(d: &StraightLineDrawing) -> Result<CrossingCount, DrawingError> {
    let p = &d.points;
    let e = &d.edges;
    let mut pairs = Vec::new();
    let mut per_edge = vec![0u64; e.len()];
    // crossing parameters along each edge, for the triple check
    let mut along: Vec<Vec<(ConstructibleNumber, usize)>> = vec![Vec::new(); e.len()];
    for i in 0..e.len() {
        let (a, b) = e[i];
        for j in i + 1..e.len() {
            let (c, dd) = e[j];
            if a == c || a == dd || b == c || b == dd {
                continue;
            }
            let s1 = orient(&p[a], &p[b], &p[c]) * orient(&p[a], &p[b], &p[dd]);
            let s2 = orient(&p[c], &p[dd], &p[a]) * orient(&p[c], &p[dd], &p[b]);
            if s1 != Sign::Negative || s2 != Sign::Negative {
                continue;
            }
            pairs.push((i, j));
            per_edge[i] += 1;
            per_edge[j] += 1;
            let u = p[b].sub(&p[a]);
            let w = p[dd].sub(&p[c]);
            let denom = u.cross(&w);
            let ti = p[c].sub(&p[a]).cross(&w).checked_div(&denom)?;
            let tj = p[c].sub(&p[a]).cross(&u).checked_div(&denom)?;
            for (k, t, other) in [(i, ti, j), (j, tj, i)] {
                if let Some((_, third)) = along[k].iter().find(|(s, _)| *s == t) {
                    return Err(DrawingError::TripleCrossing(e[k], e[*third], e[other]));
                }
                along[k].push((t, other));
            }
        }
    }
    Ok(CrossingCount {
        total: pairs.len() as u64,
        per_edge,
        pairs,
    })
}

/// `sum 1/(x(e)+1)`.
pub fn harmonic_sum(per_edge: &[u64]) -> Rational {
    per_edge
        .iter()
        .map(|&x| Rational::new(BigInt::from(1), BigInt::from(x + 1)))
        .fold(Rational::from_integer(BigInt::from(0)), |s, t| s + t)
}

/// Random-order planarization: an edge survives when it comes before every
/// edge it crosses.
#[derive(Clone, Debug)]
pub struct CaroWei {
    partners: Vec<Vec<usize>>,
}

impl CaroWei {
    pub fn new(m: usize, crossings: &CrossingCount) -> Self {
        let mut partners = vec![Vec::new(); m];
        for &(i, j) in &crossings.pairs {
            partners[i].push(j);
            partners[j].push(i);
        }
        CaroWei { partners }
    }

    /// Surviving edge indices, ascending.
    pub fn sample(&self, seed: u64) -> Vec<usize> {
        let m = self.partners.len();
        let mut order: Vec<usize> = (0..m).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let mut rank = vec![0usize; m];
        for (r, &e) in order.iter().enumerate() {
            rank[e] = r;
        }
        (0..m)
            .filter(|&e| self.partners[e].iter().all(|&f| rank[e] < rank[f]))
            .collect()
    }

    /// Mean and sample standard deviation of the surviving count; trial `i`
    /// uses a seed derived from `root` and `i`.
    pub fn monte_carlo(&self, trials: u64, root: u64) -> (f64, f64) {
        let sizes: Vec<f64> = (0..trials).map(|i| self.sample(trial_seed(root, i)).len() as f64).collect();
        let n = sizes.len().max(1) as f64;
        let mean = sizes.iter().sum::<f64>() / n;
        let var = sizes.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
        (mean, var.sqrt())
    }
}

/// Independent per-trial seeds from one root.
pub fn trial_seed(root: u64, i: u64) -> u64 {
    let mut z = root.wrapping_add(i.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Edges of `d` kept by one seeded random order.
pub fn caro_wei_planar_subgraph(d: &StraightLineDrawing, seed: u64) -> Result<Vec<(usize, usize)>, DrawingError> {
    let cr = count_crossings_straightline(d)?;
    Ok(CaroWei::new(d.m(), &cr).sample(seed).into_iter().map(|i| d.edges[i]).collect())
}

/// A multigraph drawing known only through which edges cross how often.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbstractDrawing {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    /// Edge-index pairs `i < j` with a positive crossing count.
    pub crossings: BTreeMap<(usize, usize), u64>,
}

impl AbstractDrawing {
    pub fn new(
        n: usize,
        edges: Vec<(usize, usize)>,
        crossings: impl IntoIterator<Item = ((usize, usize), u64)>,
    ) -> Result<Self, DrawingError> {
        for &(a, b) in &edges {
            if a == b || a >= n || b >= n {
                return Err(DrawingError::BadEdge((a, b)));
            }
        }
        let mut map = BTreeMap::new();
        for ((i, j), c) in crossings {
            if i == j || i >= edges.len() || j >= edges.len() {
                return Err(DrawingError::BadCrossingPair(i, j));
            }
            if c > 0 {
                *map.entry((i.min(j), i.max(j))).or_insert(0) += c;
            }
        }
        Ok(AbstractDrawing { n, edges, crossings: map })
    }

    pub fn from_straightline(d: &StraightLineDrawing, cr: &CrossingCount) -> Self {
        AbstractDrawing {
            n: d.n(),
            edges: d.edges.clone(),
            crossings: cr.pairs.iter().map(|&p| (p, 1)).collect(),
        }
    }

    pub fn total_crossings(&self) -> u64 {
        self.crossings.values().sum()
    }

    /// Number of parallel copies per unordered vertex pair.
    pub fn multiplicities(&self) -> BTreeMap<(usize, usize), usize> {
        let mut m = BTreeMap::new();
        for &(a, b) in &self.edges {
            *m.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
        m
    }

    pub fn max_multiplicity(&self) -> usize {
        self.multiplicities().values().copied().max().unwrap_or(0)
    }

    fn same_class(&self, i: usize, j: usize) -> bool {
        let key = |(a, b): (usize, usize)| (a.min(b), a.max(b));
        key(self.edges[i]) == key(self.edges[j])
    }
}

/// Replaces edge `i` by copies `i*k .. i*k+k` drawn alongside it: copies of
/// one edge never cross each other, and each crossing of `e` and `f`
/// becomes a crossing of every copy of `e` with every copy of `f`.
pub fn thicken(a: &AbstractDrawing, k: usize) -> Result<AbstractDrawing, DrawingError> {
    if k == 0 {
        return Err(DrawingError::ZeroThickness);
    }
    if let Some((&(i, j), _)) = a.crossings.iter().find(|(&(i, j), _)| a.same_class(i, j)) {
        return Err(DrawingError::ParallelCrossing(i, j));
    }
    let edges: Vec<(usize, usize)> = a.edges.iter().flat_map(|&e| std::iter::repeat_n(e, k)).collect();
    let mut crossings = BTreeMap::new();
    for (&(i, j), &c) in &a.crossings {
        for s in 0..k {
            for t in 0..k {
                crossings.insert((i * k + s, j * k + t), c);
            }
        }
    }
    Ok(AbstractDrawing { n: a.n, edges, crossings })
}
