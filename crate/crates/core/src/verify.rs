//! Independent certification of claimed minor models.
//!
//! The checks use only hypercube adjacency, never the constructor's
//! internals, so a passing report certifies the model on its own terms:
//! connected, pairwise disjoint branch sets; exactly one simple connecting
//! path per guest edge, with endpoints in the right branch sets, internal
//! vertices outside every branch set, and no vertex shared between two
//! paths.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::cube::CubeVertex;
use crate::embed::MinorModel;
use crate::graph::GuestGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationCode {
    BadVertexWidth,
    BranchDisconnected,
    BranchOverlap,
    PathNotPath,
    PathEndpointWrong,
    PathInternalHitsBranch,
    PathsIntersect,
    EdgeMissing,
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ViolationCode::BadVertexWidth => "BadVertexWidth",
            ViolationCode::BranchDisconnected => "BranchDisconnected",
            ViolationCode::BranchOverlap => "BranchOverlap",
            ViolationCode::PathNotPath => "PathNotPath",
            ViolationCode::PathEndpointWrong => "PathEndpointWrong",
            ViolationCode::PathInternalHitsBranch => "PathInternalHitsBranch",
            ViolationCode::PathsIntersect => "PathsIntersect",
            ViolationCode::EdgeMissing => "EdgeMissing",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug)]
pub struct Violation {
    pub code: ViolationCode,
    pub detail: String,
}

/// Outcome of one verification run; valid iff no violations were found.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }
}

// Width mismatches are reported separately as BadVertexWidth; here they just
// mean "not adjacent".
fn adjacent(u: &CubeVertex, v: &CubeVertex) -> bool {
    crate::cube::is_cube_edge(u, v).unwrap_or(false)
}

/// Checks every minor-model invariant and returns all violations found.
/// Malformed models yield violations, never panics.
pub fn verify(g: &GuestGraph, model: &MinorModel) -> VerifyReport {
    let mut violations: Vec<Violation> = Vec::new();
    let mut push = |code: ViolationCode, detail: String| {
        violations.push(Violation { code, detail });
    };
    let d = model.d;

    for (&v, set) in &model.branch_sets {
        for x in set {
            if x.width() != d {
                push(
                    ViolationCode::BadVertexWidth,
                    format!(
                        "branch set {v} vertex {x} has width {}, host is Q_{d}",
                        x.width()
                    ),
                );
            }
        }
    }
    for (idx, path) in model.paths.iter().enumerate() {
        for x in &path.vertices {
            if x.width() != d {
                push(
                    ViolationCode::BadVertexWidth,
                    format!(
                        "path {idx} vertex {x} has width {}, host is Q_{d}",
                        x.width()
                    ),
                );
            }
        }
    }

    // Branch sets: one nonempty connected set per guest vertex, pairwise
    // disjoint; sets for non-guest ids are rejected outright.
    for v in 0..g.n_vertices() {
        match model.branch_sets.get(&v) {
            None => push(
                ViolationCode::BranchDisconnected,
                format!("branch set for vertex {v} is missing"),
            ),
            Some(set) if set.is_empty() => push(
                ViolationCode::BranchDisconnected,
                format!("branch set for vertex {v} is empty"),
            ),
            Some(set) => {
                let members: HashSet<CubeVertex> = set.iter().copied().collect();
                let mut seen: HashSet<CubeVertex> = HashSet::new();
                let mut queue = VecDeque::new();
                queue.push_back(set[0]);
                seen.insert(set[0]);
                while let Some(cur) = queue.pop_front() {
                    for next in &members {
                        if !seen.contains(next) && adjacent(&cur, next) {
                            seen.insert(*next);
                            queue.push_back(*next);
                        }
                    }
                }
                if seen.len() != members.len() {
                    push(
                        ViolationCode::BranchDisconnected,
                        format!("branch set for vertex {v} is not connected"),
                    );
                }
            }
        }
    }
    for &v in model.branch_sets.keys() {
        if v >= g.n_vertices() {
            push(
                ViolationCode::BranchOverlap,
                format!("branch set for non-guest vertex {v}"),
            );
        }
    }
    let mut owner: HashMap<CubeVertex, usize> = HashMap::new();
    for (&v, set) in &model.branch_sets {
        for x in set {
            if let Some(&w) = owner.get(x) {
                if w != v {
                    push(
                        ViolationCode::BranchOverlap,
                        format!("vertex {x} lies in branch sets {w} and {v}"),
                    );
                }
            } else {
                owner.insert(*x, v);
            }
        }
    }

    // Exactly one path per guest edge.
    let mut per_edge: HashMap<(usize, usize), usize> = HashMap::new();
    for path in &model.paths {
        let (u, v) = path.edge;
        let e = (u.min(v), u.max(v));
        *per_edge.entry(e).or_insert(0) += 1;
        if u == v || !g.has_edge(e.0, e.1) {
            push(
                ViolationCode::EdgeMissing,
                format!("path for ({u}, {v}) which is not a guest edge"),
            );
        }
    }
    for &(u, v) in g.edges() {
        match per_edge.get(&(u, v)) {
            None => push(
                ViolationCode::EdgeMissing,
                format!("no path for guest edge ({u}, {v})"),
            ),
            Some(1) => {}
            Some(k) => push(
                ViolationCode::EdgeMissing,
                format!("{k} paths for guest edge ({u}, {v})"),
            ),
        }
    }

    // Each path: a simple path in the host with endpoints in the two correct
    // branch sets and internal vertices outside every branch set.
    for (idx, path) in model.paths.iter().enumerate() {
        let vs = &path.vertices;
        if vs.is_empty() {
            push(ViolationCode::PathNotPath, format!("path {idx} is empty"));
            continue;
        }
        let distinct: HashSet<CubeVertex> = vs.iter().copied().collect();
        if distinct.len() != vs.len() {
            push(
                ViolationCode::PathNotPath,
                format!("path {idx} repeats a vertex"),
            );
        }
        for w in vs.windows(2) {
            if !adjacent(&w[0], &w[1]) {
                push(
                    ViolationCode::PathNotPath,
                    format!("path {idx} step {} -> {} is not a host edge", w[0], w[1]),
                );
            }
        }
        let (u, v) = path.edge;
        let in_branch = |vertex: &CubeVertex, owner_id: usize| {
            model
                .branch_sets
                .get(&owner_id)
                .is_some_and(|set| set.contains(vertex))
        };
        let first = &vs[0];
        let last = &vs[vs.len() - 1];
        let straight = in_branch(first, u) && in_branch(last, v);
        let reversed = in_branch(first, v) && in_branch(last, u);
        if !(straight || reversed) {
            push(
                ViolationCode::PathEndpointWrong,
                format!("path {idx} endpoints are not in branch sets {u} and {v}"),
            );
        }
        if vs.len() >= 2 {
            for x in &vs[1..vs.len() - 1] {
                if let Some(&w) = owner.get(x) {
                    push(
                        ViolationCode::PathInternalHitsBranch,
                        format!("path {idx} internal vertex {x} lies in branch set {w}"),
                    );
                }
            }
        }
    }

    // No vertex may be shared between two paths, endpoints included: ports
    // are never shared, so the strictest reading applies.
    let mut path_vertex: HashMap<CubeVertex, usize> = HashMap::new();
    for (idx, path) in model.paths.iter().enumerate() {
        let distinct: HashSet<CubeVertex> = path.vertices.iter().copied().collect();
        for x in distinct {
            if let Some(&other) = path_vertex.get(&x) {
                push(
                    ViolationCode::PathsIntersect,
                    format!("vertex {x} lies on paths {other} and {idx}"),
                );
            } else {
                path_vertex.insert(x, idx);
            }
        }
    }

    violations.sort_by(|a, b| a.code.cmp(&b.code).then_with(|| a.detail.cmp(&b.detail)));
    VerifyReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::{embed, EdgePath};
    use std::collections::BTreeMap;

    fn v(text: &str) -> CubeVertex {
        text.parse().unwrap()
    }

    fn k2_model() -> (GuestGraph, MinorModel) {
        let g = GuestGraph::new(vec![(0, 1)]).unwrap();
        let mut branch_sets = BTreeMap::new();
        branch_sets.insert(0, vec![v("0")]);
        branch_sets.insert(1, vec![v("1")]);
        let model = MinorModel {
            d: 1,
            branch_sets,
            paths: vec![EdgePath {
                edge: (0, 1),
                vertices: vec![v("0"), v("1")],
            }],
        };
        (g, model)
    }

    fn codes(report: &VerifyReport) -> Vec<ViolationCode> {
        report.violations().iter().map(|x| x.code).collect()
    }

    #[test]
    fn smallest_valid_model() {
        let (g, model) = k2_model();
        let report = verify(&g, &model);
        assert!(report.valid(), "{:?}", report.violations());
    }

    #[test]
    fn overlap_is_flagged() {
        let (g, mut model) = k2_model();
        model.branch_sets.insert(1, vec![v("0")]);
        let report = verify(&g, &model);
        assert!(!report.valid());
        assert!(codes(&report).contains(&ViolationCode::BranchOverlap));
    }

    #[test]
    fn width_mismatch_is_flagged() {
        let (g, mut model) = k2_model();
        model.branch_sets.insert(1, vec![v("10")]);
        let report = verify(&g, &model);
        assert!(codes(&report).contains(&ViolationCode::BadVertexWidth));
    }

    #[test]
    fn disconnected_branch_is_flagged() {
        let g = GuestGraph::new(vec![(0, 1)]).unwrap();
        let mut branch_sets = BTreeMap::new();
        branch_sets.insert(0, vec![v("000"), v("011")]);
        branch_sets.insert(1, vec![v("111")]);
        let model = MinorModel {
            d: 3,
            branch_sets,
            paths: vec![EdgePath {
                edge: (0, 1),
                vertices: vec![v("000"), v("100"), v("110"), v("111")],
            }],
        };
        let report = verify(&g, &model);
        assert!(codes(&report).contains(&ViolationCode::BranchDisconnected));
    }

    #[test]
    fn missing_and_extra_paths_are_flagged() {
        let (g, mut model) = k2_model();
        let path = model.paths[0].clone();
        model.paths.clear();
        let report = verify(&g, &model);
        assert!(codes(&report).contains(&ViolationCode::EdgeMissing));

        model.paths = vec![path.clone(), path];
        let report = verify(&g, &model);
        assert!(codes(&report).contains(&ViolationCode::EdgeMissing));
        assert!(codes(&report).contains(&ViolationCode::PathsIntersect));
    }

    #[test]
    fn broken_paths_are_flagged() {
        let g = GuestGraph::new(vec![(0, 1)]).unwrap();
        let mut branch_sets = BTreeMap::new();
        branch_sets.insert(0, vec![v("00")]);
        branch_sets.insert(1, vec![v("11")]);
        // Not a host edge between consecutive vertices.
        let model = MinorModel {
            d: 2,
            branch_sets: branch_sets.clone(),
            paths: vec![EdgePath {
                edge: (0, 1),
                vertices: vec![v("00"), v("11")],
            }],
        };
        assert!(codes(&verify(&g, &model)).contains(&ViolationCode::PathNotPath));

        // Repeated vertex.
        let model = MinorModel {
            d: 2,
            branch_sets: branch_sets.clone(),
            paths: vec![EdgePath {
                edge: (0, 1),
                vertices: vec![v("00"), v("10"), v("00"), v("01"), v("11")],
            }],
        };
        assert!(codes(&verify(&g, &model)).contains(&ViolationCode::PathNotPath));

        // Wrong endpoint.
        let model = MinorModel {
            d: 2,
            branch_sets: branch_sets.clone(),
            paths: vec![EdgePath {
                edge: (0, 1),
                vertices: vec![v("10"), v("11")],
            }],
        };
        assert!(codes(&verify(&g, &model)).contains(&ViolationCode::PathEndpointWrong));

        // Internal vertex inside a branch set.
        let mut wide = branch_sets;
        wide.insert(0, vec![v("00"), v("10")]);
        let model = MinorModel {
            d: 2,
            branch_sets: wide,
            paths: vec![EdgePath {
                edge: (0, 1),
                vertices: vec![v("00"), v("10"), v("11")],
            }],
        };
        assert!(codes(&verify(&g, &model)).contains(&ViolationCode::PathInternalHitsBranch));
    }

    #[test]
    fn intersecting_paths_are_flagged() {
        let g = GuestGraph::new(vec![(0, 1), (2, 3)]).unwrap();
        let mut branch_sets = BTreeMap::new();
        branch_sets.insert(0, vec![v("000")]);
        branch_sets.insert(1, vec![v("011")]);
        branch_sets.insert(2, vec![v("100")]);
        branch_sets.insert(3, vec![v("111")]);
        let model = MinorModel {
            d: 3,
            branch_sets,
            paths: vec![
                EdgePath {
                    edge: (0, 1),
                    vertices: vec![v("000"), v("001"), v("011")],
                },
                EdgePath {
                    edge: (2, 3),
                    vertices: vec![v("100"), v("101"), v("001"), v("011")],
                },
            ],
        };
        let report = verify(&g, &model);
        assert!(codes(&report).contains(&ViolationCode::PathsIntersect));
    }

    #[test]
    fn constructor_output_is_accepted() {
        let g = GuestGraph::new(vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        let model = embed(&g, None).unwrap();
        assert!(verify(&g, &model).valid());
    }

    #[test]
    fn report_is_sorted_by_code_then_detail() {
        let (g, mut model) = k2_model();
        model.branch_sets.insert(0, vec![v("10")]);
        model.branch_sets.insert(7, vec![v("1")]);
        let report = verify(&g, &model);
        let cs = codes(&report);
        let mut sorted = cs.clone();
        sorted.sort();
        assert_eq!(cs, sorted);
    }

    /// Minor-model definition re-checked from scratch, for the completeness
    /// test below. Deliberately shares no code with `verify`.
    fn model_ok_by_definition(g: &GuestGraph, m: &MinorModel) -> bool {
        let d = m.d;
        let adj = |a: &CubeVertex, b: &CubeVertex| {
            a.width() == b.width() && (a.bits() ^ b.bits()).count_ones() == 1
        };
        let key = |x: &CubeVertex| (x.bits(), x.width());

        if m.branch_sets.keys().any(|&v| v >= g.n_vertices()) {
            return false;
        }
        let mut owner = std::collections::HashMap::new();
        for v in 0..g.n_vertices() {
            let Some(set) = m.branch_sets.get(&v) else {
                return false;
            };
            if set.is_empty() || set.iter().any(|x| x.width() != d) {
                return false;
            }
            let mut reached = vec![false; set.len()];
            reached[0] = true;
            loop {
                let before = reached.iter().filter(|&&r| r).count();
                for i in 0..set.len() {
                    if !reached[i] && (0..set.len()).any(|j| reached[j] && adj(&set[i], &set[j])) {
                        reached[i] = true;
                    }
                }
                if reached.iter().filter(|&&r| r).count() == before {
                    break;
                }
            }
            if reached.contains(&false) {
                return false;
            }
            for x in set {
                if owner.insert(key(x), v).is_some_and(|w| w != v) {
                    return false;
                }
            }
        }
        let mut counts = std::collections::HashMap::new();
        for p in &m.paths {
            let (a, b) = p.edge;
            if a == b || !g.has_edge(a.min(b), a.max(b)) {
                return false;
            }
            *counts.entry((a.min(b), a.max(b))).or_insert(0usize) += 1;
        }
        if g.edges().iter().any(|e| counts.get(e) != Some(&1)) {
            return false;
        }
        let mut seen_anywhere = HashSet::new();
        for p in &m.paths {
            let vs = &p.vertices;
            if vs.is_empty() || vs.iter().any(|x| x.width() != d) {
                return false;
            }
            let distinct: HashSet<_> = vs.iter().map(key).collect();
            if distinct.len() != vs.len() || vs.windows(2).any(|w| !adj(&w[0], &w[1])) {
                return false;
            }
            let (a, b) = p.edge;
            let inside = |id: usize, x: &CubeVertex| m.branch_sets[&id].contains(x);
            let (first, last) = (&vs[0], &vs[vs.len() - 1]);
            if !((inside(a, first) && inside(b, last)) || (inside(b, first) && inside(a, last))) {
                return false;
            }
            if vs.len() >= 2
                && vs[1..vs.len() - 1]
                    .iter()
                    .any(|x| owner.contains_key(&key(x)))
            {
                return false;
            }
            for k in distinct {
                if !seen_anywhere.insert(k) {
                    return false;
                }
            }
        }
        true
    }

    /// Completeness on small hosts: for hand-built valid models in Q_d with
    /// d <= 3 and at most 4 guest vertices, replace every single vertex by
    /// every other vertex of width 1..=3 and check that the verifier's
    /// verdict always equals the definition's.
    #[test]
    fn every_breaking_single_vertex_mutation_is_detected() {
        let p3 = GuestGraph::new(vec![(0, 1), (1, 2)]).unwrap();
        let mut p3_sets = BTreeMap::new();
        p3_sets.insert(0, vec![v("00")]);
        p3_sets.insert(1, vec![v("01"), v("11")]);
        p3_sets.insert(2, vec![v("10")]);
        let p3_model = MinorModel {
            d: 2,
            branch_sets: p3_sets,
            paths: vec![
                EdgePath {
                    edge: (0, 1),
                    vertices: vec![v("00"), v("01")],
                },
                EdgePath {
                    edge: (1, 2),
                    vertices: vec![v("11"), v("10")],
                },
            ],
        };

        let k3 = GuestGraph::new(vec![(0, 1), (0, 2), (1, 2)]).unwrap();
        let mut k3_sets = BTreeMap::new();
        k3_sets.insert(0, vec![v("000"), v("001")]);
        k3_sets.insert(1, vec![v("010"), v("011")]);
        k3_sets.insert(2, vec![v("100"), v("101")]);
        let k3_model = MinorModel {
            d: 3,
            branch_sets: k3_sets,
            paths: vec![
                EdgePath {
                    edge: (0, 1),
                    vertices: vec![v("000"), v("010")],
                },
                EdgePath {
                    edge: (0, 2),
                    vertices: vec![v("001"), v("101")],
                },
                EdgePath {
                    edge: (1, 2),
                    vertices: vec![v("011"), v("111"), v("110"), v("100")],
                },
            ],
        };

        let all_vertices: Vec<CubeVertex> = (1..=3usize)
            .flat_map(|w| (0..1u64 << w).map(move |bits| CubeVertex::new(bits, w).unwrap()))
            .collect();

        let k2 = k2_model();
        for (g, model) in [&k2, &(p3, p3_model), &(k3, k3_model)] {
            assert!(verify(g, model).valid());
            assert!(model_ok_by_definition(g, model));

            let branch_slots: Vec<(usize, usize)> = model
                .branch_sets
                .iter()
                .flat_map(|(&id, set)| (0..set.len()).map(move |i| (id, i)))
                .collect();
            let mut breaking = 0usize;
            for replacement in &all_vertices {
                for &(id, i) in &branch_slots {
                    let mut mutant = model.clone();
                    mutant.branch_sets.get_mut(&id).unwrap()[i] = *replacement;
                    let expected = model_ok_by_definition(g, &mutant);
                    assert_eq!(verify(g, &mutant).valid(), expected);
                    breaking += usize::from(!expected);
                }
                for p in 0..model.paths.len() {
                    for i in 0..model.paths[p].vertices.len() {
                        let mut mutant = model.clone();
                        mutant.paths[p].vertices[i] = *replacement;
                        let expected = model_ok_by_definition(g, &mutant);
                        assert_eq!(verify(g, &mutant).valid(), expected);
                        breaking += usize::from(!expected);
                    }
                }
            }
            assert!(breaking > 0);
        }
    }
}
