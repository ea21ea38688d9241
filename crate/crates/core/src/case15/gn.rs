//! Graphs induced by unit distances among six points of a unit circle.
//!
//! Two points of the unit circle are at distance 1 exactly when their central
//! angle is 60 degrees. Grouping the points by angle modulo 60 degrees, each
//! group is a subset of the six vertices of one rotated regular hexagon, and
//! unit distances only occur inside a group between cyclically consecutive
//! hexagon vertices. Enumerating group subsets therefore covers every
//! configuration.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::geometry::{hexagon, offsets, rotate};
use crate::udg::{unit_distance_graph, ExactPoint, Mode, PointSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Component {
    Cycle(usize),
    Path(usize),
}

impl Component {
    fn edges(self) -> usize {
        match self {
            Component::Cycle(k) => k,
            Component::Path(k) => k - 1,
        }
    }
}

/// Canonical label such as `P4+P2`: cycles first, then longer paths first.
pub fn type_label(components: &[Component]) -> String {
    let mut c = components.to_vec();
    c.sort_by_key(|x| match x {
        Component::Cycle(k) => (0, usize::MAX - k),
        Component::Path(k) => (1, usize::MAX - k),
    });
    c.iter()
        .map(|x| match x {
            Component::Cycle(k) => format!("C{k}"),
            Component::Path(k) => format!("P{k}"),
        })
        .collect::<Vec<_>>()
        .join("+")
}

/// Components induced by a subset of hexagon vertices (bit `k` = vertex `k`).
fn class_components(mask: u8) -> Vec<Component> {
    if mask == 0b11_1111 {
        return vec![Component::Cycle(6)];
    }
    let on = |k: usize| mask >> (k % 6) & 1 == 1;
    // start scanning just after a gap so that runs do not wrap
    let gap = (0..6).find(|&k| !on(k)).expect("not full");
    let mut out = Vec::new();
    let mut run = 0;
    for i in 1..=6 {
        if on(gap + i) {
            run += 1;
        } else if run > 0 {
            out.push(Component::Path(run));
            run = 0;
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct NeighborhoodConfiguration {
    pub label: String,
    /// Exact coordinates in expression syntax.
    pub positions: Vec<(String, String)>,
    pub edges: Vec<(usize, usize)>,
    /// Hexagon-vertex subsets, one per angle class.
    pub classes: Vec<u8>,
    #[serde(skip)]
    pub points: Vec<ExactPoint>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GnType {
    pub label: String,
    pub components: Vec<Component>,
    pub edges: usize,
    pub witness: NeighborhoodConfiguration,
}

#[derive(Clone, Debug, Serialize)]
pub struct GnEnumeration {
    pub types: Vec<GnType>,
    /// Class-subset combinations examined, by induced edge count.
    pub configurations_by_edges: BTreeMap<usize, usize>,
    /// Every type that occurs at all, regardless of edge count.
    pub all_labels: Vec<String>,
}

impl GnEnumeration {
    pub fn labels(&self) -> BTreeSet<String> {
        self.types.iter().map(|t| t.label.clone()).collect()
    }

    pub fn count_with_edges(&self, e: usize) -> usize {
        self.configurations_by_edges.get(&e).copied().unwrap_or(0)
    }
}

/// Nondecreasing sequences of nonempty masks whose sizes sum to 6.
fn class_choices(left: u32, min_mask: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    for mask in min_mask.max(1)..64u8 {
        let k = mask.count_ones();
        if k <= left {
            cur.push(mask);
            class_choices(left - k, mask, cur, out);
            cur.pop();
        }
    }
}

fn witness(classes: &[u8], label: &str) -> NeighborhoodConfiguration {
    let hex = hexagon();
    let rots = offsets();
    let mut points = Vec::new();
    for (c, &mask) in classes.iter().enumerate() {
        // class 0 is the unrotated hexagon; the others use generic offsets
        let w = if c == 0 { None } else { Some(&rots[c - 1]) };
        for (k, h) in hex.iter().enumerate() {
            if mask >> k & 1 == 1 {
                points.push(match w {
                    None => h.clone(),
                    Some(w) => rotate(h, w),
                });
            }
        }
    }
    let set = PointSet::exact(points);
    let g = unit_distance_graph(&set, &Mode::Exact).expect("distinct positions");
    let points = set.as_exact().expect("exact").to_vec();
    NeighborhoodConfiguration {
        label: label.to_string(),
        positions: points.iter().map(|p| (p.x.to_string(), p.y.to_string())).collect(),
        edges: g.edges().to_vec(),
        classes: classes.to_vec(),
        points,
    }
}

/// All induced types with 4 to 6 edges, each with an exact witness whose
/// unit distances are recomputed and must agree with the chain model.
pub fn enumerate_gn_types() -> GnEnumeration {
    let mut choices = Vec::new();
    class_choices(6, 1, &mut Vec::new(), &mut choices);
    let mut by_edges = BTreeMap::new();
    let mut first: BTreeMap<String, (Vec<Component>, Vec<u8>)> = BTreeMap::new();
    let mut all = BTreeSet::new();
    for classes in &choices {
        let comps: Vec<Component> = classes.iter().flat_map(|&m| class_components(m)).collect();
        let edges: usize = comps.iter().map(|c| c.edges()).sum();
        *by_edges.entry(edges).or_insert(0) += 1;
        let label = type_label(&comps);
        all.insert(label.clone());
        if (4..=6).contains(&edges) {
            first.entry(label).or_insert_with(|| (comps, classes.clone()));
        }
    }
    let types = first
        .into_iter()
        .map(|(label, (components, classes))| {
            let w = witness(&classes, &label);
            let edges = components.iter().map(|c| c.edges()).sum();
            assert_eq!(w.edges.len(), edges, "exact witness disagrees with the chain model for {label}");
            GnType {
                label,
                components,
                edges,
                witness: w,
            }
        })
        .collect();
    GnEnumeration {
        types,
        configurations_by_edges: by_edges,
        all_labels: all.into_iter().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn runs() {
        assert_eq!(class_components(0b11_1111), vec![Component::Cycle(6)]);
        assert_eq!(class_components(0b10_0001), vec![Component::Path(2)]);
        assert_eq!(class_components(0b01_0101).len(), 3);
        assert_eq!(type_label(&[Component::Path(2), Component::Path(4)]), "P4+P2");
    }
}
