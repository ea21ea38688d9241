//! Degree profile of a hypothetical 15-point graph with 38 unit distances,
//! and the integer accounting around the neighbourhood of its degree-6 vertex.

use std::collections::BTreeMap;

use serde::Serialize;

use super::CaseError;
use crate::udg::common_unit_neighbors;
use crate::udg::ExactPoint;

const N: u64 = 15;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub u14: u64,
    pub m: u64,
    /// `floor(15/13 * u14)`.
    pub schade_bound: u64,
    /// Smallest degree allowed in the enumeration.
    pub min_degree: u64,
    /// Smallest degree forced by deleting a vertex: `m - u14`.
    pub forced_min_degree: u64,
    /// Every degree multiset (degree -> count) with the right sum.
    pub profiles: Vec<BTreeMap<u64, u64>>,
    /// Set when `min_degree` is below the forced value, so ruling out the
    /// extra profiles needs the deletion argument.
    pub requires_deletion_argument: bool,
}

impl DegreeProfile {
    pub fn unique(&self) -> Option<&BTreeMap<u64, u64>> {
        match self.profiles.as_slice() {
            [p] => Some(p),
            _ => None,
        }
    }
}

/// Degree multisets of a graph on 15 vertices with `assumed_m15` edges, given
/// `u(14) = u14`. `min_degree` defaults to the forced bound `m - u14`.
pub fn derive_degree_profile(u14: u64, assumed_m15: u64, min_degree: Option<u64>) -> Result<DegreeProfile, CaseError> {
    let schade_bound = N * u14 / (N - 2);
    if assumed_m15 > schade_bound {
        return Err(CaseError::Rejected(format!(
            "{assumed_m15} edges exceed floor(15/13 * {u14}) = {schade_bound}"
        )));
    }
    if assumed_m15 <= u14 {
        return Err(CaseError::Inconsistent(format!(
            "assumed edge count {assumed_m15} does not exceed u(14) = {u14}"
        )));
    }
    let forced = assumed_m15 - u14;
    let dmin = min_degree.unwrap_or(forced);
    let sum = 2 * assumed_m15;
    if dmin * N > sum {
        return Err(CaseError::Inconsistent(format!("degree sum {sum} is below 15 * {dmin}")));
    }
    let mut profiles = Vec::new();
    let mut parts = Vec::new();
    partitions(sum - dmin * N, N as usize, N - 1 - dmin, &mut parts, &mut profiles, dmin);
    Ok(DegreeProfile {
        u14,
        m: assumed_m15,
        schade_bound,
        min_degree: dmin,
        forced_min_degree: forced,
        profiles,
        requires_deletion_argument: dmin < forced,
    })
}

/// Spreads `extra` over at most `slots` vertices (non-increasing, each at most `cap`).
fn partitions(
    extra: u64,
    slots: usize,
    cap: u64,
    parts: &mut Vec<u64>,
    out: &mut Vec<BTreeMap<u64, u64>>,
    dmin: u64,
) {
    if extra == 0 {
        let mut profile = BTreeMap::new();
        for &p in parts.iter() {
            *profile.entry(dmin + p).or_insert(0) += 1;
        }
        let rest = N - parts.len() as u64;
        if rest > 0 {
            *profile.entry(dmin).or_insert(0) += rest;
        }
        out.push(profile);
        return;
    }
    if slots == 0 {
        return;
    }
    for p in (1..=cap.min(extra)).rev() {
        parts.push(p);
        partitions(extra - p, slots - 1, p, parts, out, dmin);
        parts.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegerFact {
    pub name: String,
    pub expression: String,
    pub value: i64,
    pub expected: i64,
    pub holds: bool,
}

impl IntegerFact {
    pub fn new(name: &str, expression: &str, value: i64, expected: i64) -> Self {
        IntegerFact {
            name: name.to_string(),
            expression: expression.to_string(),
            value,
            expected,
            holds: value == expected,
        }
    }

    /// `value >= bound`.
    pub fn at_least(name: &str, expression: &str, value: i64, bound: i64) -> Self {
        IntegerFact {
            holds: value >= bound,
            ..IntegerFact::new(name, expression, value, bound)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ObservationReport {
    pub facts: Vec<IntegerFact>,
    /// Geometric inputs, each with the exact check backing it.
    pub geometric_inputs: Vec<(String, bool)>,
    pub all_hold: bool,
}

impl ObservationReport {
    pub fn get(&self, name: &str) -> Option<&IntegerFact> {
        self.facts.iter().find(|f| f.name == name)
    }
}

/// Degree 6 at `o`, 6 vertices in `N`, 8 in `R`, every other degree 5.
pub fn verify_observation_chain() -> ObservationReport {
    let (deg_n, r_size, n_size) = (5i64, 8i64, 6i64);
    let n_degree_sum = deg_n * n_size;
    let cap = r_size * 2;
    let mut facts = vec![
        IntegerFact::new("recursion_cap_15", "floor(15 * 33 / 13)", 15 * 33 / 13, 38),
        IntegerFact::new("n_to_r_cap", "8 * 2", cap, 16),
        IntegerFact::new("min_gn_edges", "(30 - 6 - 16) / 2", (n_degree_sum - n_size - cap) / 2, 4),
    ];
    for e in [4i64, 6] {
        facts.push(IntegerFact::new(
            &format!("n_to_r_at_{e}"),
            &format!("30 - 6 - 2 * {e}"),
            n_degree_sum - n_size - 2 * e,
            if e == 4 { 16 } else { 12 },
        ));
    }
    // with 4 edges in G[N] the 16-edge cap is met, so every R vertex is saturated
    facts.push(IntegerFact::new(
        "r_two_each",
        "(30 - 6 - 2 * 4) / 8",
        (n_degree_sum - n_size - 8) / r_size,
        2,
    ));
    facts.push(IntegerFact::new("degree_sum", "14 * 5 + 6", 14 * 5 + 6, 2 * 38));

    // two points have at most two common unit neighbours, which excludes K_{2,3}
    let a = ExactPoint::from_ratios((0, 1), (0, 1));
    let close = ExactPoint::from_ratios((1, 1), (0, 1));
    let far = ExactPoint::from_ratios((3, 1), (0, 1));
    let cap_ok = [&close, &far]
        .iter()
        .all(|b| common_unit_neighbors(&a, b).map(|c| c.count <= 2).unwrap_or(false));
    let geometric_inputs = vec![
        (
            "two distinct points share at most two unit neighbours (common_unit_neighbors)".to_string(),
            cap_ok,
        ),
        (
            "G[N] has maximum degree 2: a point on the unit circle has two points of that circle at unit distance"
                .to_string(),
            common_unit_neighbors(&a, &close).map(|c| c.count == 2).unwrap_or(false),
        ),
    ];
    let all_hold = facts.iter().all(|f| f.holds) && geometric_inputs.iter().all(|g| g.1);
    ObservationReport {
        facts,
        geometric_inputs,
        all_hold,
    }
}
