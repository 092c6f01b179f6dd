//! Simple undirected guest graphs in edge-list form.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A simple undirected graph with no isolated vertices, vertex ids
/// `0..n_vertices`. Edges are stored with the smaller endpoint first, in
/// input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuestGraph {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl GuestGraph {
    pub fn new(edges: Vec<(usize, usize)>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::InvalidGraph("at least one edge is required".into()));
        }
        let mut normalized = Vec::with_capacity(edges.len());
        let mut seen = BTreeSet::new();
        let mut max_id = 0usize;
        for &(u, v) in &edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({}, {})",
                    e.0, e.1
                )));
            }
            max_id = max_id.max(e.1);
            normalized.push(e);
        }
        let n_vertices = max_id + 1;
        let mut adj = vec![Vec::new(); n_vertices];
        for &(u, v) in &normalized {
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, nbrs) in adj.iter_mut().enumerate() {
            if nbrs.is_empty() {
                return Err(Error::InvalidGraph(format!(
                    "vertex {v} is isolated (ids must cover 0..=max)"
                )));
            }
            nbrs.sort_unstable();
        }
        Ok(GuestGraph {
            n_vertices,
            edges: normalized,
            adj,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbors of `v` in increasing id order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|n| n.len()).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n_vertices && self.adj[u].binary_search(&v).is_ok()
    }
}
