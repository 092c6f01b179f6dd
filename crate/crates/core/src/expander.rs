//! Counting-bound toolkit in exact arithmetic: random cubic graphs,
//! brute-force vertex expansion, the subdivision vertex-count bound over
//! coordinate cuts, the Hamming-weight tail, and the closing inequality.

use std::collections::BTreeSet;

use num::rational::Ratio;
use num::{BigInt, BigRational, BigUint, One};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cube::CubeVertex;
use crate::error::{Error, Result};
use crate::graph::GuestGraph;

/// Brute-force expansion checks enumerate all small vertex subsets; this is
/// the largest graph for which that stays exact and fast.
pub const EXPANSION_VERTEX_LIMIT: usize = 28;

/// Resampling budget of the configuration-model generator.
pub const GEN_CUBIC_MAX_ATTEMPTS: usize = 1000;

/// The expansion ratio the counting argument needs, as an exact rational.
pub fn default_beta() -> Ratio<i64> {
    Ratio::new(9, 50)
}

/// A simple 3-regular graph on an even number of vertices.
#[derive(Clone, Debug)]
pub struct CubicGraph {
    two_n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl CubicGraph {
    pub fn new(edges: Vec<(usize, usize)>) -> Result<Self> {
        let guest = GuestGraph::new(edges)?;
        Self::from_guest(&guest)
    }

    pub fn from_guest(g: &GuestGraph) -> Result<Self> {
        for v in 0..g.n_vertices() {
            if g.degree(v) != 3 {
                return Err(Error::InvalidGraph(format!(
                    "vertex {v} has degree {}, expected 3",
                    g.degree(v)
                )));
            }
        }
        Ok(CubicGraph {
            two_n: g.n_vertices(),
            edges: g.edges().to_vec(),
            adj: (0..g.n_vertices())
                .map(|v| g.neighbors(v).to_vec())
                .collect(),
        })
    }

    pub fn two_n(&self) -> usize {
        self.two_n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn to_guest(&self) -> GuestGraph {
        GuestGraph::new(self.edges.clone()).expect("cubic graphs are valid guests")
    }
}

/// Samples a simple 3-regular graph via the configuration model: pair up
/// three stubs per vertex uniformly, rejecting pairings with loops or
/// parallel edges. Deterministic for a fixed seed.
pub fn gen_cubic(two_n: usize, seed: u64) -> Result<CubicGraph> {
    if two_n < 4 || two_n % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "vertex count must be even and at least 4, got {two_n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..two_n).flat_map(|v| [v, v, v]).collect();
    for _ in 0..GEN_CUBIC_MAX_ATTEMPTS {
        stubs.shuffle(&mut rng);
        let mut edges = BTreeSet::new();
        let mut simple = true;
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || !edges.insert((u.min(v), u.max(v))) {
                simple = false;
                break;
            }
        }
        if simple {
            return CubicGraph::new(edges.into_iter().collect());
        }
    }
    Err(Error::RetryExhausted(GEN_CUBIC_MAX_ATTEMPTS))
}

/// Outcome of an exact expansion check at ratio `beta`.
#[derive(Clone, Debug)]
pub struct ExpansionReport {
    pub passes: bool,
    pub beta: Ratio<i64>,
    pub worst_ratio: Ratio<i64>,
    pub worst_set: Vec<usize>,
}

/// Exhaustively minimizes `|N(S)| / |S|` over all nonempty `S` with
/// `|S| <= n`, in exact rational arithmetic.
pub fn check_expansion(g: &CubicGraph, beta: Ratio<i64>) -> Result<ExpansionReport> {
    let two_n = g.two_n();
    if two_n > EXPANSION_VERTEX_LIMIT {
        return Err(Error::SizeLimit(format!(
            "expansion brute force is limited to {EXPANSION_VERTEX_LIMIT} vertices, got {two_n}"
        )));
    }
    let adj: Vec<u32> = (0..two_n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let n = two_n / 2;

    // best = (|N(S)|, |S|, S); strict ratio improvements only, so the first
    // minimizer in enumeration order wins ties.
    let mut best: (u64, u64, u32) = (u64::MAX, 1, 0);
    let mut stack: Vec<(usize, u32, u32, usize)> = vec![(0, 0, 0, 0)];
    while let Some((from, s_mask, nb, size)) = stack.pop() {
        for v in from..two_n {
            let s2 = s_mask | 1 << v;
            let nb2 = nb | adj[v];
            let size2 = size + 1;
            let outside = u64::from((nb2 & !s2).count_ones());
            if outside * best.1 < best.0 * size2 as u64 {
                best = (outside, size2 as u64, s2);
            }
            if size2 < n {
                stack.push((v + 1, s2, nb2, size2));
            }
        }
    }

    let worst_ratio = Ratio::new(best.0 as i64, best.1 as i64);
    let worst_set = (0..two_n).filter(|&v| best.2 >> v & 1 == 1).collect();
    Ok(ExpansionReport {
        passes: worst_ratio >= beta,
        beta,
        worst_ratio,
        worst_set,
    })
}

/// An injective assignment of guest vertices to host vertices of width `d`.
#[derive(Clone, Debug)]
pub struct Placement {
    width: usize,
    assignment: Vec<CubeVertex>,
}

impl Placement {
    pub fn new(assignment: Vec<CubeVertex>) -> Result<Self> {
        let width = match assignment.first() {
            None => {
                return Err(Error::InvalidParameter(
                    "placement must cover at least one vertex".into(),
                ))
            }
            Some(v) => v.width(),
        };
        let mut seen = BTreeSet::new();
        for v in &assignment {
            if v.width() != width {
                return Err(Error::DimensionMismatch(v.width(), width));
            }
            if !seen.insert(v.bits()) {
                return Err(Error::InvalidParameter(format!(
                    "placement is not injective: {v} repeats"
                )));
            }
        }
        Ok(Placement { width, assignment })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn get(&self, v: usize) -> CubeVertex {
        self.assignment[v]
    }
}

/// Per-coordinate cut statistics of a placed guest graph, plus the
/// subdivision vertex-count lower bound they imply.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub hamming_sum: u64,
    pub lower_bound: i64,
    pub cut_sizes: Vec<u64>,
    pub side_sizes: Vec<u64>,
    pub host_capacity: u64,
}

/// Computes all cut statistics for `g` placed in `Q_d`. The identity
/// "sum of per-coordinate cuts = sum of edge Hamming distances" is asserted
/// on every call.
pub fn bound_report(g: &GuestGraph, p: &Placement, d: usize) -> Result<BoundReport> {
    if d == 0 || d > 63 {
        return Err(Error::InvalidParameter(format!(
            "bound reports support host dimensions 1..=63, got {d}"
        )));
    }
    if p.width() != d {
        return Err(Error::DimensionMismatch(p.width(), d));
    }
    if p.len() != g.n_vertices() {
        return Err(Error::InvalidParameter(format!(
            "placement covers {} vertices, guest has {}",
            p.len(),
            g.n_vertices()
        )));
    }
    if g.n_vertices() % 2 != 0 {
        return Err(Error::InvalidParameter(
            "the counting bound needs an even number of guest vertices".into(),
        ));
    }

    let mut hamming_sum = 0u64;
    let mut cut_sizes = vec![0u64; d];
    for &(u, v) in g.edges() {
        let diff = p.get(u).bits() ^ p.get(v).bits();
        hamming_sum += u64::from(diff.count_ones());
        for (i, cut) in cut_sizes.iter_mut().enumerate() {
            *cut += diff >> i & 1;
        }
    }
    assert_eq!(
        cut_sizes.iter().sum::<u64>(),
        hamming_sum,
        "every edge contributes its Hamming distance to the cut total"
    );

    let total = g.n_vertices() as u64;
    let side_sizes = (0..d)
        .map(|i| {
            let ones = (0..g.n_vertices())
                .filter(|&v| p.get(v).bits() >> i & 1 == 1)
                .count() as u64;
            ones.min(total - ones)
        })
        .collect();

    Ok(BoundReport {
        hamming_sum,
        lower_bound: hamming_sum as i64 - (total / 2) as i64,
        cut_sizes,
        side_sizes,
        host_capacity: 1u64 << d,
    })
}

/// Outcome of the brute-force non-minor certificate.
#[derive(Clone, Debug)]
pub struct CertificateReport {
    pub certified: bool,
    pub min_lower_bound: Option<i64>,
    pub host_capacity: u64,
    pub placements: u64,
}

/// Certifies that a subcubic guest is not a minor of `Q_d` by showing that
/// every injective placement forces more subdivision vertices than the host
/// has. One-sided: `certified = false` is inconclusive.
pub fn subcubic_nonminor_certificate(g: &GuestGraph, d: usize) -> Result<CertificateReport> {
    if g.max_degree() > 3 {
        return Err(Error::InvalidParameter(format!(
            "certificate needs max degree <= 3 (minor implies subdivision), got {}",
            g.max_degree()
        )));
    }
    if g.n_vertices() % 2 != 0 {
        return Err(Error::InvalidParameter(
            "the counting bound needs an even number of guest vertices".into(),
        ));
    }
    if g.n_vertices() > 6 || d == 0 || d > 4 {
        return Err(Error::SizeLimit(format!(
            "brute-force budget is |V| <= 6 and d <= 4, got |V| = {}, d = {d}",
            g.n_vertices()
        )));
    }

    let n = g.n_vertices();
    let hosts = 1usize << d;
    let host_capacity = hosts as u64;
    if n > hosts {
        // No injective placement exists, so no subdivision either.
        return Ok(CertificateReport {
            certified: true,
            min_lower_bound: None,
            host_capacity,
            placements: 0,
        });
    }

    // Depth-first over injective placements with incremental Hamming sums.
    let mut assigned: Vec<Option<u64>> = vec![None; n];
    let mut used = vec![false; hosts];
    let mut best: Option<u64> = None;
    let mut placements = 0u64;

    fn rec(
        v: usize,
        g: &GuestGraph,
        hosts: usize,
        assigned: &mut Vec<Option<u64>>,
        used: &mut Vec<bool>,
        partial: u64,
        best: &mut Option<u64>,
        placements: &mut u64,
    ) {
        if v == g.n_vertices() {
            *placements += 1;
            if best.map_or(true, |b| partial < b) {
                *best = Some(partial);
            }
            return;
        }
        for h in 0..hosts {
            if used[h] {
                continue;
            }
            let mut add = 0u64;
            for &w in g.neighbors(v) {
                if let Some(bits) = assigned[w] {
                    add += u64::from((bits ^ h as u64).count_ones());
                }
            }
            used[h] = true;
            assigned[v] = Some(h as u64);
            rec(
                v + 1,
                g,
                hosts,
                assigned,
                used,
                partial + add,
                best,
                placements,
            );
            assigned[v] = None;
            used[h] = false;
        }
    }
    rec(
        0,
        g,
        hosts,
        &mut assigned,
        &mut used,
        0,
        &mut best,
        &mut placements,
    );

    let min_sum = best.expect("at least one placement exists");
    let min_lower_bound = min_sum as i64 - (n / 2) as i64;
    Ok(CertificateReport {
        certified: min_lower_bound > host_capacity as i64,
        min_lower_bound: Some(min_lower_bound),
        host_capacity,
        placements,
    })
}

/// Exact count of binary strings of length `d` with at most `d/4` ones.
pub fn weight_tail(d: usize) -> BigUint {
    let mut sum = BigUint::one();
    let mut binom = BigUint::one();
    for w in 1..=d / 4 {
        binom = binom * BigUint::from(d - w + 1) / BigUint::from(w);
        sum += &binom;
    }
    sum
}

/// Exact evaluation of the closing inequality at dimension `d`.
#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub d: usize,
    /// `(9/50 * 45/8 - 25/d) * 2^d`, exactly.
    pub lhs: BigRational,
    /// `2^d`.
    pub rhs: BigUint,
    /// Whether `lhs > rhs`.
    pub holds: bool,
    /// `weight_tail(d)`.
    pub tail: BigUint,
    /// Whether the tail is below half of `45 * 2^d / d`.
    pub tail_ok: bool,
}

/// Evaluates both conditions of the counting argument at dimension `d` in
/// exact rational arithmetic: the main inequality
/// `(81/80 - 25/d) * 2^d > 2^d` and the prerequisite
/// `weight_tail(d) < 45 * 2^d / (2d)`.
pub fn theorem_inequality(d: usize) -> TheoremReport {
    assert!(d >= 1);
    let pow = BigUint::one() << d;
    let pow_int = BigInt::from(pow.clone());
    let lhs = BigRational::new(
        (BigInt::from(81) * BigInt::from(d) - BigInt::from(2000)) * &pow_int,
        BigInt::from(80) * BigInt::from(d),
    );
    let holds = lhs > BigRational::from(pow_int);
    let tail = weight_tail(d);
    let tail_ok = &tail * BigUint::from(2 * d) < BigUint::from(45u32) * &pow;
    TheoremReport {
        d,
        lhs,
        rhs: pow,
        holds,
        tail,
        tail_ok,
    }
}
