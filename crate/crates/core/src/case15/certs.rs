//! Exact-coordinate certificates for the four possible neighbourhood graphs.
//!
//! Each certificate instantiates the configuration around the degree-6
//! vertex `o` at the origin and records facts that are recomputed from the
//! listed coordinates alone. Where the configuration has a free angle (the
//! offset of the second chain), every fact is checked at each sampled offset;
//! that is evidence at the sampled angles, not a symbolic proof.

use serde::Serialize;

use super::geometry::{hexagon, rotate, sample_offsets};
use super::gn::type_label;
use super::gn::Component;
use super::profile::IntegerFact;
use super::CaseError;
use crate::exact::{parse_in, ConstructibleNumber, FieldTower, Rational};
use crate::udg::{common_unit_neighbors, unit_distance_graph, ExactPoint, Mode, PointSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseLabel {
    C6,
    P5P1,
    P4P2,
    P3P3,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 4] = [CaseLabel::C6, CaseLabel::P5P1, CaseLabel::P4P2, CaseLabel::P3P3];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::C6 => "C6",
            CaseLabel::P5P1 => "P5+P1",
            CaseLabel::P4P2 => "P4+P2",
            CaseLabel::P3P3 => "P3+P3",
        }
    }
}

impl std::str::FromStr for CaseLabel {
    type Err = CaseError;

    fn from_str(s: &str) -> Result<Self, CaseError> {
        let key: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_lowercase();
        match key.as_str() {
            "c6" => Ok(CaseLabel::C6),
            "p5p1" => Ok(CaseLabel::P5P1),
            "p4p2" => Ok(CaseLabel::P4P2),
            "p3p3" => Ok(CaseLabel::P3P3),
            _ => Err(CaseError::UnknownCase(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Eq,
    Ne,
    Gt,
    Lt,
}

impl Relation {
    fn test(self, ord: std::cmp::Ordering) -> bool {
        use std::cmp::Ordering::*;
        match self {
            Relation::Eq => ord == Equal,
            Relation::Ne => ord != Equal,
            Relation::Gt => ord == Greater,
            Relation::Lt => ord == Less,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactKind {
    /// `|a - b|^2 <relation> value`.
    SquaredDistance {
        a: String,
        b: String,
        relation: Relation,
        value: String,
    },
    /// `sum |a - b|^2 == value` over the pairs.
    SquaredDistanceSum { pairs: Vec<(String, String)>, value: String },
    /// The points at unit distance from both `a` and `b` are exactly the
    /// named points `witnesses`.
    CommonUnitNeighbors { a: String, b: String, witnesses: Vec<String> },
    /// Pairwise distinct points.
    Distinct { points: Vec<String> },
    /// The unit distances among `points` form exactly the listed graph.
    InducedGraph {
        points: Vec<String>,
        edges: Vec<(String, String)>,
        label: String,
    },
    /// Assumed for contradiction; not a consequence of the coordinates.
    Hypothesis { a: String, b: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct Fact {
    pub statement: String,
    #[serde(flatten)]
    pub kind: FactKind,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedPoint {
    pub name: String,
    pub x: String,
    pub y: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Instance {
    /// The free chain offset as a unit vector, when the case has one.
    pub offset: Option<(String, String)>,
    pub points: Vec<NamedPoint>,
    pub facts: Vec<Fact>,
    #[serde(skip)]
    pub exact: Vec<ExactPoint>,
}

impl Instance {
    pub fn holds(&self) -> bool {
        self.facts.iter().all(|f| f.holds)
    }

    pub fn point(&self, name: &str) -> Option<&ExactPoint> {
        self.points.iter().position(|p| p.name == name).map(|i| &self.exact[i])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Every recorded fact holds, so the case is contradictory.
    Contradiction,
    Failure,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseCertificate {
    pub case: CaseLabel,
    pub label: &'static str,
    pub instances: Vec<Instance>,
    pub counting: Vec<IntegerFact>,
    /// Steps carried by argument rather than by a recorded fact.
    pub prose_steps: Vec<String>,
    pub verdict: Verdict,
}

impl CaseCertificate {
    fn new(case: CaseLabel, instances: Vec<Instance>, counting: Vec<IntegerFact>, prose: &[&str]) -> Self {
        let ok = !instances.is_empty() && instances.iter().all(Instance::holds) && counting.iter().all(|f| f.holds);
        CaseCertificate {
            case,
            label: case.as_str(),
            instances,
            counting,
            prose_steps: prose.iter().map(|s| s.to_string()).collect(),
            verdict: if ok { Verdict::Contradiction } else { Verdict::Failure },
        }
    }
}

struct Builder {
    names: Vec<String>,
    pts: Vec<ExactPoint>,
    facts: Vec<Fact>,
}

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

impl Builder {
    fn new() -> Self {
        let mut b = Builder {
            names: Vec::new(),
            pts: Vec::new(),
            facts: Vec::new(),
        };
        b.add("o", ExactPoint::origin());
        b
    }

    fn add(&mut self, name: &str, p: ExactPoint) {
        assert!(!self.names.iter().any(|n| n == name), "duplicate point name {name}");
        self.names.push(name.to_string());
        self.pts.push(p);
    }

    fn get(&self, name: &str) -> &ExactPoint {
        let i = self.names.iter().position(|n| n == name).unwrap_or_else(|| panic!("unknown point {name}"));
        &self.pts[i]
    }

    fn name_of(&self, p: &ExactPoint) -> Option<String> {
        self.names
            .iter()
            .zip(&self.pts)
            .find(|(_, q)| q.dist2(p).is_zero())
            .map(|(n, _)| n.clone())
    }

    fn push(&mut self, statement: String, kind: FactKind, holds: bool) {
        self.facts.push(Fact { statement, kind, holds });
    }

    fn dist2(&mut self, a: &str, b: &str, relation: Relation, value: Rational) {
        let d = self.get(a).dist2(self.get(b));
        let holds = relation.test(d.cmp_rational(&value));
        let sym = match relation {
            Relation::Eq => "=",
            Relation::Ne => "!=",
            Relation::Gt => ">",
            Relation::Lt => "<",
        };
        let value_s = crate::exact::rational_to_string(&value);
        self.push(
            format!("|{a} - {b}|^2 {sym} {value_s}"),
            FactKind::SquaredDistance {
                a: a.into(),
                b: b.into(),
                relation,
                value: value_s,
            },
            holds,
        );
    }

    /// Fact: the common unit neighbours of `a` and `b` are exactly `expected`.
    fn common(&mut self, a: &str, b: &str, expected: &[&str]) {
        let found = common_unit_neighbors(self.get(a), self.get(b)).expect("distinct centres");
        let names: Vec<Option<String>> = found.witnesses.iter().map(|w| self.name_of(w)).collect();
        let mut got: Vec<String> = names.iter().flatten().cloned().collect();
        got.sort();
        let mut want: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
        want.sort();
        let holds = names.iter().all(Option::is_some) && got == want;
        self.push(
            format!("common unit neighbours of {a} and {b} are {{{}}}", want.join(", ")),
            FactKind::CommonUnitNeighbors {
                a: a.into(),
                b: b.into(),
                witnesses: want,
            },
            holds,
        );
    }

    fn distinct(&mut self, names: &[&str]) {
        let holds = names
            .iter()
            .enumerate()
            .all(|(i, a)| names[i + 1..].iter().all(|b| !self.get(a).dist2(self.get(b)).is_zero()));
        self.push(
            format!("{} are pairwise distinct", names.join(", ")),
            FactKind::Distinct {
                points: names.iter().map(|s| s.to_string()).collect(),
            },
            holds,
        );
    }

    /// Fact: the unit distances among `names` are exactly the expected graph
    /// (given by index pairs into `names`) of type `label`.
    fn induced(&mut self, names: &[&str], expected: &[(usize, usize)], label: &str) {
        let set = PointSet::exact(names.iter().map(|n| self.get(n).clone()).collect());
        let holds = match unit_distance_graph(&set, &Mode::Exact) {
            Ok(g) => {
                let mut want: Vec<(usize, usize)> = expected.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
                want.sort_unstable();
                g.edges() == want.as_slice()
            }
            Err(_) => false,
        };
        self.push(
            format!("unit distances among {} form {label}", names.join(", ")),
            FactKind::InducedGraph {
                points: names.iter().map(|s| s.to_string()).collect(),
                edges: expected.iter().map(|&(a, b)| (names[a].to_string(), names[b].to_string())).collect(),
                label: label.into(),
            },
            holds,
        );
    }

    fn hypothesis(&mut self, a: &str, b: &str, why: &str) {
        self.push(
            format!("assume {a} ~ {b} ({why})"),
            FactKind::Hypothesis {
                a: a.into(),
                b: b.into(),
            },
            true,
        );
    }

    /// The common unit neighbour of `a` and `b` other than `o`.
    fn cherry(&self, a: &str, b: &str) -> ExactPoint {
        let found = common_unit_neighbors(self.get(a), self.get(b)).expect("distinct centres");
        found
            .witnesses
            .into_iter()
            .find(|w| !w.norm2().is_zero())
            .unwrap_or_else(|| panic!("{a} and {b} have no common unit neighbour besides o"))
    }

    fn finish(self, offset: Option<&ExactPoint>) -> Instance {
        let set = PointSet::exact(self.pts);
        let exact = set.as_exact().expect("exact").to_vec();
        Instance {
            offset: offset.map(|w| (w.x.to_string(), w.y.to_string())),
            points: self
                .names
                .iter()
                .zip(&exact)
                .map(|(n, p)| NamedPoint {
                    name: n.clone(),
                    x: p.x.to_string(),
                    y: p.y.to_string(),
                })
                .collect(),
            facts: self.facts,
            exact,
        }
    }
}

fn check_offset(w: &ExactPoint) -> Result<(), CaseError> {
    if !w.norm2().is_one() {
        return Err(CaseError::BadOffset("offset is not a unit vector".into()));
    }
    Ok(())
}

fn path_edges(start: usize, len: usize) -> Vec<(usize, usize)> {
    (start..start + len - 1).map(|i| (i, i + 1)).collect()
}

/// Regular hexagon around `o`; `r` closes a cherry on `v1, v2`.
pub fn certify_case_c6() -> CaseCertificate {
    let hex = hexagon();
    let mut b = Builder::new();
    for (k, h) in hex.iter().enumerate() {
        b.add(&format!("v{}", k + 1), h.clone());
    }
    b.induced(&["v1", "v2", "v3", "v4", "v5", "v6"], &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)], "C6");
    let r = b.cherry("v1", "v2");
    b.add("r", r);
    b.dist2("r", "v1", Relation::Eq, rat(1, 1));
    b.dist2("r", "v2", Relation::Eq, rat(1, 1));
    b.dist2("r", "v3", Relation::Eq, rat(4, 1));
    b.dist2("r", "v6", Relation::Eq, rat(4, 1));
    b.dist2("r", "v4", Relation::Gt, rat(4, 1));
    b.dist2("r", "v5", Relation::Gt, rat(4, 1));
    b.common("r", "v3", &["v2"]);
    b.common("r", "v6", &["v1"]);
    b.common("r", "v4", &[]);
    b.common("r", "v5", &[]);
    // non-adjacent hexagon vertices share no neighbour outside o and N
    for (x, y, expect) in [
        ("v3", "v5", vec!["o", "v4"]),
        ("v3", "v6", vec!["o"]),
        ("v4", "v6", vec!["o", "v5"]),
    ] {
        b.common(x, y, &expect);
    }
    let counting = vec![
        IntegerFact::new("n_to_r_edges", "30 - 6 - 2 * 6", 30 - 6 - 2 * 6, 12),
        IntegerFact::at_least("pigeonhole", "12 - 8 (edges beyond one per R vertex)", 12 - 8, 1),
        IntegerFact::new("edges_v3_to_v6_into_r", "4 * (5 - 1 - 2)", 4 * (5 - 1 - 2), 8),
        IntegerFact::at_least(
            "r_vertices_met_by_v3_to_v6",
            "8 - 3 (at most one shared R neighbour per adjacent pair v3v4, v4v5, v5v6)",
            8 - 3,
            5,
        ),
        IntegerFact::new("r_degree_cap", "2 + (8 - 1 - 5)", 2 + (8 - 1 - 5), 4),
        IntegerFact::at_least("r_degree_deficit", "5 - 4", 5 - 4, 1),
    ];
    CaseCertificate::new(
        CaseLabel::C6,
        vec![b.finish(None)],
        counting,
        &[
            "by symmetry the cherry lies on v1, v2",
            "an R vertex adjacent to r and to one of v3..v6 would be a common neighbour of r and that vertex, which the listed common-neighbour facts exclude",
            "each R vertex joined to two of v3..v6 is a cherry on an adjacent pair, and each pair carries at most one cherry",
        ],
    )
}

/// Path `v1..v5` on the hexagon, isolated `u1` at a sampled offset.
pub fn certify_case_p5p1() -> CaseCertificate {
    let instances = sample_offsets()
        .iter()
        .filter_map(|w| p5p1_instance(w).ok())
        .collect();
    let counting = vec![
        IntegerFact::new("n_to_r_edges", "30 - 6 - 2 * 4", 30 - 6 - 2 * 4, 16),
        IntegerFact::new("v1_cherries_needed", "5 - 1 - 1", 5 - 1 - 1, 3),
        IntegerFact::at_least("v1_cherry_shortfall", "3 - |{v2, u1}|", 3 - 2, 1),
    ];
    CaseCertificate::new(
        CaseLabel::P5P1,
        instances,
        counting,
        &["every R vertex has exactly two N neighbours, so each R neighbour of v1 is a cherry with another N vertex"],
    )
}

pub fn p5p1_instance(w: &ExactPoint) -> Result<Instance, CaseError> {
    check_offset(w)?;
    let hex = hexagon();
    let mut b = Builder::new();
    for k in 0..5 {
        b.add(&format!("v{}", k + 1), hex[k].clone());
    }
    b.add("u1", w.clone());
    b.add("h6", hex[5].clone());
    let n = ["v1", "v2", "v3", "v4", "v5", "u1"];
    b.induced(&n, &path_edges(0, 5), "P5+P1");
    if !b.facts.last().expect("fact").holds {
        return Err(CaseError::BadOffset("offset adds unit distances".into()));
    }
    b.common("v1", "v3", &["o", "v2"]);
    b.common("v1", "v4", &["o"]);
    // the cherry vertex on v1, v5 is the sixth hexagon vertex, a seventh neighbour of o
    b.common("v1", "v5", &["o", "h6"]);
    b.dist2("h6", "o", Relation::Eq, rat(1, 1));
    Ok(b.finish(Some(w)))
}

/// Path `v1..v4` on the hexagon, edge `u1 u2` at a sampled offset.
pub fn certify_case_p4p2() -> CaseCertificate {
    certify_case_p4p2_with(&sample_offsets())
}

pub fn certify_case_p4p2_with(offsets: &[ExactPoint]) -> CaseCertificate {
    let instances = offsets.iter().filter_map(|w| p4p2_instance(w).ok()).collect();
    let counting = vec![
        IntegerFact::new("n_to_r_edges", "30 - 6 - 2 * 4", 30 - 6 - 2 * 4, 16),
        IntegerFact::new("cherries_at_v1_and_v4", "3 + 3", 6, 6),
        IntegerFact::new("r_possible_r_neighbours", "8 - 1 - 5", 8 - 1 - 5, 2),
        IntegerFact::new("r_degree_cap", "2 + 2", 4, 4),
        IntegerFact::at_least("r_degree_deficit", "5 - 4", 1, 1),
    ];
    CaseCertificate::new(
        CaseLabel::P4P2,
        instances,
        counting,
        &[
            "v1 needs three cherries and v3, v4 are excluded, so its partners are v2, u1, u2; likewise v4 with v3, u1, u2",
            "an R neighbour of r that is a cherry on v1 would be the second common neighbour of v1 and r",
        ],
    )
}

pub fn p4p2_instance(w: &ExactPoint) -> Result<Instance, CaseError> {
    check_offset(w)?;
    let hex = hexagon();
    let mut b = Builder::new();
    for k in 0..4 {
        b.add(&format!("v{}", k + 1), hex[k].clone());
    }
    b.add("u1", w.clone());
    b.add("u2", rotate(&hex[1], w));
    let n = ["v1", "v2", "v3", "v4", "u1", "u2"];
    let mut edges = path_edges(0, 4);
    edges.push((4, 5));
    b.induced(&n, &edges, "P4+P2");
    if !b.facts.last().expect("fact").holds {
        return Err(CaseError::BadOffset("offset adds unit distances".into()));
    }
    b.common("v1", "v3", &["o", "v2"]);
    b.common("v1", "v4", &["o"]);
    b.dist2("v1", "v4", Relation::Eq, rat(4, 1));
    b.common("v4", "v2", &["o", "v3"]);
    for (name, x, y) in [
        ("r", "v1", "v2"),
        ("c_v1u1", "v1", "u1"),
        ("c_v1u2", "v1", "u2"),
        ("c_v4v3", "v4", "v3"),
        ("c_v4u1", "v4", "u1"),
        ("c_v4u2", "v4", "u2"),
    ] {
        let c = b.cherry(x, y);
        b.add(name, c);
    }
    b.distinct(&["r", "c_v1u1", "c_v1u2", "c_v4v3", "c_v4u1", "c_v4u2"]);
    for c in ["c_v4v3", "c_v4u1", "c_v4u2"] {
        b.dist2("r", c, Relation::Gt, rat(1, 1));
    }
    // the second common neighbour of v1 and r, and its distance to the rest of N
    let p = {
        let found = common_unit_neighbors(b.get("v1"), b.get("r")).expect("distinct");
        found
            .witnesses
            .into_iter()
            .find(|x| !x.dist2(b.get("v2")).is_zero())
            .expect("two common neighbours")
    };
    b.add("p", p);
    b.common("v1", "r", &["v2", "p"]);
    for x in ["v2", "v3", "v4", "u1", "u2"] {
        b.dist2("p", x, Relation::Gt, rat(1, 1));
    }
    Ok(b.finish(Some(w)))
}

/// Paths `v1 v2 v3` on the hexagon and `u1 u2 u3` at a sampled offset.
pub fn certify_case_p3p3() -> CaseCertificate {
    certify_case_p3p3_with(&sample_offsets())
}

pub fn certify_case_p3p3_with(offsets: &[ExactPoint]) -> CaseCertificate {
    let instances = offsets.iter().filter_map(|w| p3p3_instance(w).ok()).collect();
    let counting = vec![
        IntegerFact::new("n_to_r_edges", "30 - 6 - 2 * 4", 16, 16),
        IntegerFact::new("r_degree_towards_r", "5 - 2", 3, 3),
        IntegerFact::new("w_count", "(3 * 4 + 2 * 2) / 2", (3 * 4 + 2 * 2) / 2, 8),
        IntegerFact::new("rhombus_diagonal_squares", "d1^2 + d2^2 = 4 * 3", 12, 12),
    ];
    CaseCertificate::new(
        CaseLabel::P3P3,
        instances,
        counting,
        &[
            "v1, v3 (and u1, u3) have no common neighbour outside o and N, so R consists of w's, v12, v23, u12, u23",
            "if any of v12, v23, u12, u23 lay in R they would be pairwise adjacent and form a K4",
            "the four diagonals of C from w11, w13, w33, w31 reach their third or fourth neighbour; by symmetry w13 ~ w32",
        ],
    )
}

pub fn p3p3_instance(w: &ExactPoint) -> Result<Instance, CaseError> {
    check_offset(w)?;
    let hex = hexagon();
    let mut b = Builder::new();
    for i in 0..3 {
        b.add(&format!("v{}", i + 1), hex[i].clone());
    }
    for j in 0..3 {
        b.add(&format!("u{}", j + 1), rotate(&hex[j], w));
    }
    let n = ["v1", "v2", "v3", "u1", "u2", "u3"];
    b.induced(&n, &[(0, 1), (1, 2), (3, 4), (4, 5)], "P3+P3");
    if !b.facts.last().expect("fact").holds {
        return Err(CaseError::BadOffset("offset adds unit distances".into()));
    }
    b.common("v1", "v3", &["o", "v2"]);
    b.common("u1", "u3", &["o", "u2"]);
    // w_ij = v_i + u_j is the common neighbour of v_i and u_j besides o
    for i in 1..=3 {
        for j in 1..=3 {
            let (vi, uj) = (format!("v{i}"), format!("u{j}"));
            let sum = b.get(&vi).add(b.get(&uj));
            let name = format!("w{i}{j}");
            b.add(&name, sum);
            b.common(&vi, &uj, &["o", &name]);
        }
    }
    // v12 and friends: cherries inside one chain
    for (name, x, y) in [("v12", "v1", "v2"), ("v23", "v2", "v3"), ("u12", "u1", "u2"), ("u23", "u2", "u3")] {
        let c = b.cherry(x, y);
        b.add(name, c);
    }
    b.add("v1x", b.get("v1").scale(&ConstructibleNumber::from_integer(2)));
    b.add("v2x", b.get("v2").scale(&ConstructibleNumber::from_integer(2)));
    b.common("v12", "v3", &["v2"]);
    b.common("v1", "v12", &["v2", "v1x"]);
    b.common("v2", "v12", &["v1", "v2x"]);
    b.dist2("v1x", "o", Relation::Eq, rat(4, 1));
    b.common("o", "v1x", &["v1"]);
    b.dist2("v2x", "o", Relation::Eq, rat(4, 1));
    b.common("o", "v2x", &["v2"]);

    for (a, c) in [("w11", "w13"), ("w13", "w33"), ("w33", "w31"), ("w31", "w11")] {
        b.dist2(a, c, Relation::Eq, rat(3, 1));
    }
    let d = |b: &Builder, x: &str, y: &str| b.get(x).dist2(b.get(y));
    let sum = &d(&b, "w11", "w33") + &d(&b, "w13", "w31");
    b.push(
        "|w11 - w33|^2 + |w13 - w31|^2 = 12, so the diagonals are not both 1".into(),
        FactKind::SquaredDistanceSum {
            pairs: vec![("w11".into(), "w33".into()), ("w13".into(), "w31".into())],
            value: "12".into(),
        },
        sum.eq_rational(&rat(12, 1)),
    );
    let cycle = ["w11", "w12", "w13", "w23", "w33", "w32", "w31", "w21"];
    for k in 0..8 {
        b.dist2(cycle[k], cycle[(k + 1) % 8], Relation::Eq, rat(1, 1));
    }
    // K_{2,3}: parts {w13, w33} and {w23, u3, w32}
    b.hypothesis("w13", "w32", "diagonal of C chosen by symmetry");
    for (x, y) in [("w13", "w23"), ("w13", "u3"), ("w33", "w23"), ("w33", "u3"), ("w33", "w32")] {
        b.dist2(x, y, Relation::Eq, rat(1, 1));
    }
    b.common("w13", "w33", &["w23", "u3"]);
    Ok(b.finish(Some(w)))
}

pub fn certify_case(case: CaseLabel) -> CaseCertificate {
    match case {
        CaseLabel::C6 => certify_case_c6(),
        CaseLabel::P5P1 => certify_case_p5p1(),
        CaseLabel::P4P2 => certify_case_p4p2(),
        CaseLabel::P3P3 => certify_case_p3p3(),
    }
}

/// Recomputes every geometric fact of `inst` from its coordinate strings.
pub fn recheck_instance(inst: &Instance) -> Result<Vec<bool>, CaseError> {
    let mut tower = FieldTower::rationals();
    let mut pts = Vec::new();
    for p in &inst.points {
        let (t, x) = parse_in(&p.x, &tower)?;
        let (t, y) = parse_in(&p.y, &t)?;
        tower = t;
        pts.push(ExactPoint::new(x, y));
    }
    let pts = PointSet::exact(pts).as_exact().expect("exact").to_vec();
    let get = |n: &str| -> Result<&ExactPoint, CaseError> {
        inst.points
            .iter()
            .position(|p| p.name == n)
            .map(|i| &pts[i])
            .ok_or_else(|| CaseError::Inconsistent(format!("unknown point {n}")))
    };
    let parse_value = |s: &str| -> Result<ConstructibleNumber, CaseError> { Ok(parse_in(s, &FieldTower::rationals())?.1) };
    let mut out = Vec::new();
    for f in &inst.facts {
        let ok = match &f.kind {
            FactKind::SquaredDistance { a, b, relation, value } => {
                relation.test(get(a)?.dist2(get(b)?).cmp(&parse_value(value)?))
            }
            FactKind::SquaredDistanceSum { pairs, value } => {
                let mut s = ConstructibleNumber::zero();
                for (a, b) in pairs {
                    s = &s + &get(a)?.dist2(get(b)?);
                }
                s == parse_value(value)?
            }
            FactKind::CommonUnitNeighbors { a, b, witnesses } => {
                let c = common_unit_neighbors(get(a)?, get(b)?).map_err(|e| CaseError::Inconsistent(e.to_string()))?;
                c.count == witnesses.len()
                    && witnesses
                        .iter()
                        .map(|n| get(n))
                        .collect::<Result<Vec<_>, _>>()?
                        .iter()
                        .all(|p| c.witnesses.iter().any(|q| q.dist2(p).is_zero()))
            }
            FactKind::Distinct { points } => {
                let ps = points.iter().map(|n| get(n)).collect::<Result<Vec<_>, _>>()?;
                (0..ps.len()).all(|i| (i + 1..ps.len()).all(|j| !ps[i].dist2(ps[j]).is_zero()))
            }
            FactKind::InducedGraph { points, edges, .. } => {
                let ps: Vec<ExactPoint> =
                    points.iter().map(|n| get(n).cloned()).collect::<Result<Vec<_>, _>>()?;
                let g = unit_distance_graph(&PointSet::exact(ps), &Mode::Exact)
                    .map_err(|e| CaseError::Inconsistent(e.to_string()))?;
                let idx = |n: &String| points.iter().position(|p| p == n).expect("listed");
                let mut want: Vec<(usize, usize)> = edges
                    .iter()
                    .map(|(a, b)| (idx(a).min(idx(b)), idx(a).max(idx(b))))
                    .collect();
                want.sort_unstable();
                g.edges() == want.as_slice()
            }
            FactKind::Hypothesis { .. } => true,
        };
        out.push(ok);
    }
    Ok(out)
}

/// Label of the induced graph on six points, by component structure.
pub fn neighborhood_label(points: &[ExactPoint]) -> Result<String, CaseError> {
    let g = unit_distance_graph(&PointSet::exact(points.to_vec()), &Mode::Exact)
        .map_err(|e| CaseError::Inconsistent(e.to_string()))?;
    let n = points.len();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut stack = vec![s];
        seen[s] = true;
        let (mut verts, mut degs) = (0, 0);
        while let Some(v) = stack.pop() {
            verts += 1;
            degs += g.graph().degree(v);
            for w in g.graph().neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comps.push(if degs / 2 == verts { Component::Cycle(verts) } else { Component::Path(verts) });
    }
    Ok(type_label(&comps))
}
