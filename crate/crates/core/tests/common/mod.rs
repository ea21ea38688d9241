use std::collections::{BTreeMap, BTreeSet};

// Independent oracle: labeled graphs on 6 vertices, max degree 2, 4..=6
// edges, realizable on a circle with 60-degree steps: the only cycle is C6
// and no path has 6 vertices (it would close up).
pub fn gn_oracle() -> (BTreeSet<String>, usize) {
    let pairs: Vec<(usize, usize)> = (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).collect();
    let mut labels = BTreeSet::new();
    let mut five = 0;
    for mask in 0u32..1 << 15 {
        let es: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        if !(4..=6).contains(&es.len()) {
            continue;
        }
        let mut deg = [0; 6];
        for &(a, b) in &es {
            deg[a] += 1;
            deg[b] += 1;
        }
        if deg.iter().any(|&d| d > 2) {
            continue;
        }
        // components via union-find
        let mut parent: Vec<usize> = (0..6).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for &(a, b) in &es {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let mut comp: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for v in 0..6 {
            let r = find(&mut parent, v);
            comp.entry(r).or_default().0 += 1;
        }
        for &(a, _) in &es {
            let r = find(&mut parent, a);
            comp.get_mut(&r).unwrap().1 += 1;
        }
        let mut cycles = Vec::new();
        let mut paths = Vec::new();
        for &(v, e) in comp.values() {
            if e == v {
                cycles.push(v);
            } else {
                paths.push(v);
            }
        }
        if cycles.iter().any(|&c| c != 6) || paths.contains(&6) {
            continue;
        }
        if es.len() == 5 {
            five += 1;
        }
        cycles.sort_unstable_by(|a, b| b.cmp(a));
        paths.sort_unstable_by(|a, b| b.cmp(a));
        let label: Vec<String> = cycles
            .iter()
            .map(|c| format!("C{c}"))
            .chain(paths.iter().map(|p| format!("P{p}")))
            .collect();
        labels.insert(label.join("+"));
    }
    (labels, five)
}
