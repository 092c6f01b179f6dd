//! Regular bipartite multigraphs and their decomposition into perfect
//! matchings by repeated augmenting-path matching.

use crate::error::{Error, Result};

/// One edge of a bipartite multigraph. Tags distinguish parallel copies and
/// survive the matching decomposition unchanged.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TaggedEdge {
    pub left: usize,
    pub right: usize,
    pub tag: usize,
}

/// An `r`-regular bipartite multigraph on two equally sized vertex classes.
#[derive(Clone, Debug)]
pub struct RegularBipartiteMultigraph {
    side: usize,
    degree: usize,
    edges: Vec<TaggedEdge>,
}

impl RegularBipartiteMultigraph {
    pub fn new(left_size: usize, right_size: usize, edges: Vec<TaggedEdge>) -> Result<Self> {
        if left_size == 0 || left_size != right_size {
            return Err(Error::NotRegular(format!(
                "vertex classes must be equal and nonempty, got {left_size} and {right_size}"
            )));
        }
        let side = left_size;
        if edges.len() % side != 0 {
            return Err(Error::NotRegular(format!(
                "{} edges cannot form a regular multigraph on {side}+{side} vertices",
                edges.len()
            )));
        }
        let degree = edges.len() / side;
        let mut left_deg = vec![0usize; side];
        let mut right_deg = vec![0usize; side];
        let mut tags: Vec<usize> = Vec::with_capacity(edges.len());
        for e in &edges {
            if e.left >= side || e.right >= side {
                return Err(Error::NotRegular(format!(
                    "edge ({}, {}) out of range for side {side}",
                    e.left, e.right
                )));
            }
            left_deg[e.left] += 1;
            right_deg[e.right] += 1;
            tags.push(e.tag);
        }
        tags.sort_unstable();
        if tags.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotRegular("edge tags must be distinct".into()));
        }
        for u in 0..side {
            if left_deg[u] != degree || right_deg[u] != degree {
                return Err(Error::NotRegular(format!(
                    "vertex {u} has degrees {}/{}, expected {degree}",
                    left_deg[u], right_deg[u]
                )));
            }
        }
        Ok(RegularBipartiteMultigraph {
            side,
            degree,
            edges,
        })
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn edges(&self) -> &[TaggedEdge] {
        &self.edges
    }

    /// Splits the edge multiset into `degree` perfect matchings.
    ///
    /// Removing a perfect matching from an `r`-regular remainder leaves it
    /// `(r-1)`-regular, so a perfect matching exists at every round; failure
    /// to find one is a bug, not an input condition.
    pub fn split_into_matchings(&self) -> Vec<Vec<TaggedEdge>> {
        let mut rem: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.side];
        for e in &self.edges {
            rem[e.left].push((e.right, e.tag));
        }
        let mut out = Vec::with_capacity(self.degree);
        for _ in 0..self.degree {
            let pairing = perfect_matching(self.side, &rem);
            let mut matching = Vec::with_capacity(self.side);
            for (u, &v) in pairing.iter().enumerate() {
                let idx = rem[u]
                    .iter()
                    .position(|&(w, _)| w == v)
                    .expect("matched edge must be present");
                let (w, tag) = rem[u].remove(idx);
                matching.push(TaggedEdge {
                    left: u,
                    right: w,
                    tag,
                });
            }
            out.push(matching);
        }
        out
    }
}

/// Kuhn's augmenting-path matching with a greedy start. Returns, for each
/// left vertex, its matched right vertex; panics if no perfect matching
/// exists (impossible for regular remainders).
fn perfect_matching(side: usize, adj: &[Vec<(usize, usize)>]) -> Vec<usize> {
    let mut match_left: Vec<Option<usize>> = vec![None; side];
    let mut match_right: Vec<Option<usize>> = vec![None; side];
    for u in 0..side {
        for &(v, _) in &adj[u] {
            if match_right[v].is_none() {
                match_right[v] = Some(u);
                match_left[u] = Some(v);
                break;
            }
        }
    }
    let mut seen = vec![false; side];
    for u in 0..side {
        if match_left[u].is_some() {
            continue;
        }
        seen.iter_mut().for_each(|s| *s = false);
        let found = augment(u, adj, &mut seen, &mut match_left, &mut match_right);
        assert!(
            found,
            "regular bipartite multigraph must admit a perfect matching"
        );
    }
    match_left
        .into_iter()
        .map(|v| v.expect("matching is perfect"))
        .collect()
}

fn augment(
    u: usize,
    adj: &[Vec<(usize, usize)>],
    seen: &mut [bool],
    match_left: &mut [Option<usize>],
    match_right: &mut [Option<usize>],
) -> bool {
    for &(v, _) in &adj[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        let free = match match_right[v] {
            None => true,
            Some(w) => augment(w, adj, seen, match_left, match_right),
        };
        if free {
            match_right[v] = Some(u);
            match_left[u] = Some(v);
            return true;
        }
    }
    false
}
