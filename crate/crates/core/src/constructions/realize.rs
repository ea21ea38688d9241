//! Exact realization of a drawing from its claimed edges.
//!
//! Rigid bodies start as the claimed edges. In each round, every claimed edge
//! seeds a closure: a vertex joins once two distinct vertices already in the
//! closure have known exact distances to it through some current body. The
//! maximal closures are the next round's bodies. At the fixpoint, a body that
//! covers every vertex is realized exactly by two-circle intersections, using
//! distances read off the (recursively realized) smaller bodies.

use std::collections::HashMap;
use std::rc::Rc;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::ConstructionRecord;
use crate::exact::{ConstructibleNumber, FieldTower, Sign};
use crate::udg::{circle_intersections, unit_distance_graph, ExactPoint, Mode, PointSet, UnitDistanceGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RealizationStatus {
    ExactCertified,
    ApproximateOnly,
    Failed,
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizationResult {
    pub id: String,
    pub status: RealizationStatus,
    #[serde(skip)]
    pub exact_points: Option<Vec<ExactPoint>>,
    /// Order in which the covering body placed its vertices.
    pub placement_order: Vec<usize>,
    /// Vertices outside the largest rigid body.
    pub flexible: Vec<usize>,
    pub seed_edge: Option<(usize, usize)>,
    /// Vertices whose side could not be read off the figure; the
    /// lexicographically smaller candidate was taken.
    pub tie_breaks: Vec<usize>,
    pub derived_edge_count: Option<usize>,
    /// Exact unit distances not among the claimed edges.
    pub bonus_edges: Vec<(usize, usize)>,
    pub failure: Option<String>,
    /// Largest distance between an exact point and the figure point after
    /// aligning both on the seed edge (diagnostic).
    pub max_deviation: Option<f64>,
    pub tower_depth: usize,
    pub rounds: usize,
    #[serde(skip)]
    pub derived: Option<UnitDistanceGraph>,
}

impl RealizationResult {
    fn new(id: &str) -> Self {
        RealizationResult {
            id: id.to_string(),
            status: RealizationStatus::Failed,
            exact_points: None,
            placement_order: Vec::new(),
            flexible: Vec::new(),
            seed_edge: None,
            tie_breaks: Vec::new(),
            derived_edge_count: None,
            bonus_edges: Vec::new(),
            failure: None,
            max_deviation: None,
            tower_depth: 0,
            rounds: 0,
            derived: None,
        }
    }

    /// Exact coordinates in expression syntax.
    pub fn exact_strings(&self) -> Option<Vec<(String, String)>> {
        self.exact_points
            .as_ref()
            .map(|ps| ps.iter().map(|p| (p.x.to_string(), p.y.to_string())).collect())
    }
}

#[derive(Clone, Debug)]
struct Step {
    v: usize,
    p: usize,
    q: usize,
    /// Bodies holding the distances `v-p` and `v-q`.
    bp: usize,
    bq: usize,
}

#[derive(Clone, Debug)]
enum Recipe {
    Edge(usize, usize),
    Closure { seed: (usize, usize), steps: Vec<Step> },
}

#[derive(Clone, Debug)]
struct Body {
    members: Vec<bool>,
    size: usize,
    recipe: Recipe,
}

impl Body {
    fn order(&self) -> Vec<usize> {
        match &self.recipe {
            Recipe::Edge(a, b) => vec![*a, *b],
            Recipe::Closure { seed, steps } => {
                let mut o = vec![seed.0, seed.1];
                o.extend(steps.iter().map(|s| s.v));
                o
            }
        }
    }
}

type Fig = Vec<(f64, f64)>;

fn fig_coords(rec: &ConstructionRecord) -> Fig {
    rec.coords
        .iter()
        .map(|p| (p.x.to_f64().unwrap_or(f64::NAN), p.y.to_f64().unwrap_or(f64::NAN)))
        .collect()
}

fn fig_cross(fig: &Fig, p: usize, q: usize, v: usize) -> f64 {
    let (px, py) = fig[p];
    let (qx, qy) = fig[q];
    let (vx, vy) = fig[v];
    (qx - px) * (vy - py) - (qy - py) * (vx - px)
}

/// Rounding allowance for `fig_cross`.
fn fig_margin(fig: &Fig, p: usize, q: usize, v: usize) -> f64 {
    let l1 = |a: usize, b: usize| (fig[a].0 - fig[b].0).abs() + (fig[a].1 - fig[b].1).abs();
    0.02 * (l1(q, p) + l1(v, p)) + 0.0002
}

fn closure(n: usize, seed: (usize, usize), bodies: &[usize], arena: &[Body], fig: &Fig) -> (Vec<bool>, Vec<Step>) {
    let mut placed = vec![false; n];
    placed[seed.0] = true;
    placed[seed.1] = true;
    let containing: Vec<Vec<usize>> = (0..n)
        .map(|v| bodies.iter().copied().filter(|&b| arena[b].members[v]).collect())
        .collect();
    let mut steps = Vec::new();
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..n {
            if placed[v] {
                continue;
            }
            // first body found for each placed anchor
            let mut anchors: Vec<(usize, usize)> = Vec::new();
            for &b in &containing[v] {
                for (p, &inside) in arena[b].members.iter().enumerate() {
                    if inside && placed[p] && p != v && !anchors.iter().any(|&(x, _)| x == p) {
                        anchors.push((p, b));
                    }
                }
            }
            if anchors.len() < 2 {
                continue;
            }
            anchors.sort_unstable();
            let mut best: Option<(f64, usize, usize)> = None;
            for i in 0..anchors.len() {
                for j in i + 1..anchors.len() {
                    let c = fig_cross(fig, anchors[i].0, anchors[j].0, v).abs();
                    if best.is_none_or(|(bc, _, _)| c > bc) {
                        best = Some((c, i, j));
                    }
                }
            }
            let (_, i, j) = best.expect("two anchors");
            steps.push(Step {
                v,
                p: anchors[i].0,
                q: anchors[j].0,
                bp: anchors[i].1,
                bq: anchors[j].1,
            });
            placed[v] = true;
            changed = true;
        }
    }
    (placed, steps)
}

struct Rigidity {
    arena: Vec<Body>,
    top: usize,
    rounds: usize,
}

fn rigid_bodies(rec: &ConstructionRecord, fig: &Fig) -> Rigidity {
    let n = rec.n;
    let mut arena: Vec<Body> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    for &(a, b) in &rec.claimed_edges {
        let mut members = vec![false; n];
        members[a] = true;
        members[b] = true;
        arena.push(Body {
            members,
            size: 2,
            recipe: Recipe::Edge(a, b),
        });
        current.push(arena.len() - 1);
    }
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut next: Vec<usize> = Vec::new();
        let mut by_set: HashMap<Vec<bool>, usize> =
            current.iter().map(|&b| (arena[b].members.clone(), b)).collect();
        let mut fresh: Vec<Body> = Vec::new();
        let mut fresh_index: HashMap<Vec<bool>, usize> = HashMap::new();
        for &(a, b) in &rec.claimed_edges {
            let (members, steps) = closure(n, (a, b), &current, &arena, fig);
            if by_set.contains_key(&members) || fresh_index.contains_key(&members) {
                continue;
            }
            let size = members.iter().filter(|&&x| x).count();
            fresh_index.insert(members.clone(), fresh.len());
            fresh.push(Body {
                members,
                size,
                recipe: Recipe::Closure { seed: (a, b), steps },
            });
        }
        // collect every distinct closure, old or new, then keep the maximal ones
        let mut candidates: Vec<(Vec<bool>, Option<usize>, Option<usize>)> = Vec::new();
        for &(a, b) in &rec.claimed_edges {
            let members = {
                let (m, _) = closure(n, (a, b), &current, &arena, fig);
                m
            };
            if candidates.iter().any(|(m, _, _)| *m == members) {
                continue;
            }
            let old = by_set.get(&members).copied();
            let new = fresh_index.get(&members).copied();
            candidates.push((members, old, new));
        }
        let subset = |x: &[bool], y: &[bool]| x.iter().zip(y).all(|(&a, &b)| !a || b) && x != y;
        let maximal: Vec<_> = candidates
            .iter()
            .filter(|(m, _, _)| !candidates.iter().any(|(o, _, _)| subset(m, o)))
            .cloned()
            .collect();
        let mut new_bodies = false;
        for (members, old, new) in maximal {
            let idx = match (old, new) {
                (Some(i), _) => i,
                (None, Some(j)) => {
                    new_bodies = true;
                    arena.push(fresh[j].clone());
                    let i = arena.len() - 1;
                    by_set.insert(members, i);
                    i
                }
                (None, None) => unreachable!(),
            };
            if !next.contains(&idx) {
                next.push(idx);
            }
        }
        let same = next.len() == current.len() && next.iter().all(|b| current.contains(b));
        current = next;
        if same || !new_bodies || rounds > rec.n + 2 {
            break;
        }
    }
    let top = current
        .iter()
        .copied()
        .max_by(|&a, &b| arena[a].size.cmp(&arena[b].size).then(b.cmp(&a)))
        .unwrap_or(0);
    Rigidity { arena, top, rounds }
}

struct Realized {
    pts: Vec<Option<ExactPoint>>,
    tower: FieldTower,
}

impl Realized {
    fn dist2(&self, a: usize, b: usize) -> ConstructibleNumber {
        let pa = self.pts[a].as_ref().expect("member");
        let pb = self.pts[b].as_ref().expect("member");
        pa.dist2(pb).trimmed()
    }
}

struct Realizer<'a> {
    n: usize,
    arena: &'a [Body],
    fig: &'a Fig,
    memo: Vec<Option<Rc<Realized>>>,
    ties: Vec<usize>,
}

impl Realizer<'_> {
    fn realize(&mut self, b: usize) -> Result<Rc<Realized>, String> {
        if let Some(r) = &self.memo[b] {
            return Ok(r.clone());
        }
        let mut pts: Vec<Option<ExactPoint>> = vec![None; self.n];
        let mut tower = FieldTower::rationals();
        let (seed, steps) = match &self.arena[b].recipe {
            Recipe::Edge(a, c) => ((*a, *c), &[][..]),
            Recipe::Closure { seed, steps } => (*seed, &steps[..]),
        };
        pts[seed.0] = Some(ExactPoint::origin());
        pts[seed.1] = Some(ExactPoint::from_ratios((1, 1), (0, 1)));
        for st in steps {
            let r1 = self.realize(st.bp)?.dist2(st.v, st.p);
            let r2 = self.realize(st.bq)?.dist2(st.v, st.q);
            tower = tower.extend_with(r1.tower()).extend_with(r2.tower());
            let r1 = r1.lift_to(&tower);
            let r2 = r2.lift_to(&tower);
            let p = pts[st.p].clone().expect("anchor placed");
            let q = pts[st.q].clone().expect("anchor placed");
            let (t, cands) = circle_intersections(&p, &r1, &q, &r2, &tower).map_err(|e| e.to_string())?;
            tower = t;
            let chosen = match cands.len() {
                0 => {
                    return Err(format!(
                        "circles around {} and {} do not meet when placing {}",
                        st.p, st.q, st.v
                    ))
                }
                1 => cands[0].clone(),
                _ => {
                    let c = fig_cross(self.fig, st.p, st.q, st.v);
                    let tau = fig_margin(self.fig, st.p, st.q, st.v);
                    if c > tau {
                        cands[0].clone()
                    } else if c < -tau {
                        cands[1].clone()
                    } else {
                        self.ties.push(st.v);
                        let first_smaller = match (&cands[0].x - &cands[1].x).sign() {
                            Sign::Zero => (&cands[0].y - &cands[1].y).sign() == Sign::Negative,
                            s => s == Sign::Negative,
                        };
                        if first_smaller {
                            cands[0].clone()
                        } else {
                            cands[1].clone()
                        }
                    }
                }
            };
            pts[st.v] = Some(chosen);
        }
        let r = Rc::new(Realized { pts, tower });
        self.memo[b] = Some(r.clone());
        Ok(r)
    }
}

/// Claimed edge at the leftmost figure vertex whose printed length is closest to 1.
fn seed_edge(rec: &ConstructionRecord, fig: &Fig) -> Option<(usize, usize)> {
    let left = (0..rec.n).min_by(|&a, &b| {
        fig[a]
            .0
            .partial_cmp(&fig[b].0)
            .unwrap()
            .then(fig[a].1.partial_cmp(&fig[b].1).unwrap())
            .then(a.cmp(&b))
    })?;
    rec.claimed_edges
        .iter()
        .filter(|&&(a, b)| a == left || b == left)
        .map(|&(a, b)| if a == left { (a, b) } else { (b, a) })
        .min_by(|&(a, b), &(c, d)| {
            let len = |x: usize, y: usize| ((fig[x].0 - fig[y].0).hypot(fig[x].1 - fig[y].1) - 1.0).abs();
            len(a, b).partial_cmp(&len(c, d)).unwrap().then(b.cmp(&d))
        })
}

fn max_deviation(points: &[ExactPoint], fig: &Fig, seed: (usize, usize)) -> f64 {
    let (ax, ay) = fig[seed.0];
    let (bx, by) = fig[seed.1];
    let theta = (by - ay).atan2(bx - ax);
    let (c, s) = (theta.cos(), theta.sin());
    points
        .iter()
        .zip(fig)
        .map(|(p, &(x, y))| {
            let (dx, dy) = (x - ax, y - ay);
            let (fx, fy) = (c * dx + s * dy, -s * dx + c * dy);
            let (ex, ey) = p.to_f64();
            (ex - fx).hypot(ey - fy)
        })
        .fold(0.0, f64::max)
}

/// Exact coordinates for `rec`, when its claimed edges make it rigid.
pub fn realize_exact(rec: &ConstructionRecord) -> RealizationResult {
    let mut res = RealizationResult::new(&rec.id);
    let fig = fig_coords(rec);
    if rec.n == 1 {
        let pts = vec![ExactPoint::origin()];
        let g = unit_distance_graph(&PointSet::exact(pts.clone()), &Mode::Exact).expect("one point");
        res.status = RealizationStatus::ExactCertified;
        res.placement_order = vec![0];
        res.derived_edge_count = Some(0);
        res.exact_points = Some(pts);
        res.max_deviation = Some(0.0);
        res.derived = Some(g);
        return res;
    }
    if rec.claimed_edges.is_empty() {
        res.status = RealizationStatus::ApproximateOnly;
        res.flexible = (0..rec.n).collect();
        return res;
    }
    let rig = rigid_bodies(rec, &fig);
    res.rounds = rig.rounds;
    let top = &rig.arena[rig.top];
    res.placement_order = top.order();
    if top.size < rec.n {
        res.status = RealizationStatus::ApproximateOnly;
        res.flexible = (0..rec.n).filter(|&v| !top.members[v]).collect();
        return res;
    }
    let mut realizer = Realizer {
        n: rec.n,
        arena: &rig.arena,
        fig: &fig,
        memo: vec![None; rig.arena.len()],
        ties: Vec::new(),
    };
    let realized = match realizer.realize(rig.top) {
        Ok(r) => r,
        Err(msg) => {
            res.tie_breaks = realizer.ties;
            res.failure = Some(msg);
            return res;
        }
    };
    res.tie_breaks = realizer.ties.clone();
    res.tower_depth = realized.tower.depth();
    let local: Vec<ExactPoint> = realized.pts.iter().map(|p| p.clone().expect("covering body")).collect();

    // rigid motion putting the seed edge on (0,0)-(1,0)
    let seed = seed_edge(rec, &fig).expect("edges exist");
    res.seed_edge = Some(seed);
    let origin = local[seed.0].clone();
    let u = local[seed.1].sub(&origin);
    if !u.norm2().is_one() {
        res.failure = Some(format!("seed edge {seed:?} is not unit length after realization"));
        return res;
    }
    let points: Vec<ExactPoint> = local
        .iter()
        .map(|z| {
            let w = z.sub(&origin);
            ExactPoint::new(w.dot(&u), u.cross(&w))
        })
        .collect();
    let set = PointSet::exact(points);
    let points = set.as_exact().expect("exact").to_vec();
    res.max_deviation = Some(max_deviation(&points, &fig, seed));
    res.exact_points = Some(points);

    let g = match unit_distance_graph(&set, &Mode::Exact) {
        Ok(g) => g,
        Err(e) => {
            res.failure = Some(format!("realized points are not distinct: {e}"));
            return res;
        }
    };
    res.derived_edge_count = Some(g.m());
    for &(a, b) in &rec.claimed_edges {
        if !g.graph().has_edge(a, b) {
            res.failure = Some(format!("claimed edge ({a}, {b}) is not a unit distance"));
            res.derived = Some(g);
            return res;
        }
    }
    let claimed: std::collections::HashSet<(usize, usize)> =
        rec.claimed_edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    res.bonus_edges = g.edges().iter().copied().filter(|e| !claimed.contains(e)).collect();
    res.status = RealizationStatus::ExactCertified;
    res.derived = Some(g);
    res
}
