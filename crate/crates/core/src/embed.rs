//! Explicit minor models of guest graphs inside hypercubes.
//!
//! The host `Q_d` is split into a grid block `Q_a` (coordinates `1..=a`), a
//! temporal block carrying an even cycle of length `L = 2a` (the next `k_t`
//! coordinates), four spare coordinates at the top, and unused coordinates
//! pinned to zero. Each guest vertex owns an arc of the Gray cycle of the
//! grid block, with one port vertex per incident edge. The involution that
//! swaps the two ports of every guest edge is factored into `2a - 1`
//! one-dimensional passes; each guest edge then sends one token from its
//! lower port to its upper port, advancing one temporal label per pass and
//! moving inside the grid block as the pass dictates. A pair of tokens that
//! would swap places in one pass is routed through two distinct
//! spare-coordinate copies of the block, alternating the spare pair with the
//! parity of the pass so consecutive passes never share detour copies.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::cube::{self, CubeVertex};
use crate::error::{Error, Result};
use crate::graph::GuestGraph;
use crate::grid::{GridPerm, GridShape};

/// Coordinate budget for one embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbedParams {
    d: usize,
    a: usize,
    cycle_len: usize,
    k_t: usize,
}

impl EmbedParams {
    /// Host dimension `d`.
    pub fn host_dim(&self) -> usize {
        self.d
    }

    /// Grid block dimension `a`.
    pub fn grid_dim(&self) -> usize {
        self.a
    }

    /// Temporal cycle length `L = 2a`.
    pub fn cycle_len(&self) -> usize {
        self.cycle_len
    }

    /// Number of temporal coordinates.
    pub fn temporal_dim(&self) -> usize {
        self.k_t
    }

    /// Smallest host dimension these block sizes fit into.
    pub fn minimal_d(&self) -> usize {
        self.a + self.k_t + 4
    }

    pub fn grid_mask(&self) -> u64 {
        (1u64 << self.a) - 1
    }

    pub fn temporal_mask(&self) -> u64 {
        ((1u64 << self.k_t) - 1) << self.a
    }

    pub fn spare_mask(&self) -> u64 {
        0b1111u64 << (self.d - 4)
    }

    /// Bits a routed vertex may use at all.
    pub fn used_bits_mask(&self) -> u64 {
        self.grid_mask() | self.temporal_mask() | self.spare_mask()
    }

    /// Bit indexes of the spare pair assigned to a routing pass: the top two
    /// coordinates on odd passes, the two below on even passes.
    pub fn spare_pair_bits(&self, step: usize) -> (usize, usize) {
        if step % 2 == 1 {
            (self.d - 2, self.d - 1)
        } else {
            (self.d - 4, self.d - 3)
        }
    }
}

/// Computes block sizes for a guest with `m` edges: `a = max(2, ceil(log2 2m))`,
/// `L = 2a`, `k_t = ceil(log2 L)`. With `d_opt` given, validates
/// `a + k_t + 4 <= d`; otherwise returns the minimal feasible `d`.
pub fn feasible_params(m: usize, d_opt: Option<usize>) -> Result<EmbedParams> {
    if m == 0 {
        return Err(Error::InvalidGraph(
            "guest graph needs at least one edge".into(),
        ));
    }
    let a = ceil_log2(2 * m).max(2);
    if a > cube::MAX_GRAY_DIM {
        return Err(Error::SizeLimit(format!(
            "guest with {m} edges needs a grid block of dimension {a} > {}",
            cube::MAX_GRAY_DIM
        )));
    }
    let cycle_len = 2 * a;
    let k_t = ceil_log2(cycle_len);
    let minimal = a + k_t + 4;
    let d = match d_opt {
        None => minimal,
        Some(d) if d < minimal => {
            return Err(Error::Infeasible {
                requested: d,
                minimal,
            })
        }
        Some(d) => d,
    };
    if d > cube::MAX_WIDTH {
        return Err(Error::SizeLimit(format!(
            "host dimension {d} exceeds the supported width {}",
            cube::MAX_WIDTH
        )));
    }
    Ok(EmbedParams {
        d,
        a,
        cycle_len,
        k_t,
    })
}

fn ceil_log2(x: usize) -> usize {
    debug_assert!(x >= 1);
    (usize::BITS - (x - 1).leading_zeros()) as usize
}

/// Gray-cycle arcs for every guest vertex, with one port vertex per incident
/// edge: `port(v, x)` is the vertex of `v`'s arc reserved for the edge to `x`.
#[derive(Clone, Debug)]
pub struct PortAssignment {
    grid_dim: usize,
    arcs: Vec<Vec<CubeVertex>>,
    ports: BTreeMap<(usize, usize), CubeVertex>,
}

impl PortAssignment {
    pub fn grid_dim(&self) -> usize {
        self.grid_dim
    }

    pub fn arcs(&self) -> &[Vec<CubeVertex>] {
        &self.arcs
    }

    pub fn arc(&self, v: usize) -> &[CubeVertex] {
        &self.arcs[v]
    }

    pub fn port(&self, v: usize, x: usize) -> Option<CubeVertex> {
        self.ports.get(&(v, x)).copied()
    }

    pub fn ports(&self) -> &BTreeMap<(usize, usize), CubeVertex> {
        &self.ports
    }
}

/// Walks the Gray cycle of the grid block once, carving one arc of
/// `deg(v)` consecutive vertices per guest vertex in increasing id order;
/// within an arc, ports go to the neighbors in increasing id order.
pub fn assign_ports(g: &GuestGraph, params: &EmbedParams) -> Result<PortAssignment> {
    let a = params.grid_dim();
    let needed = 2 * g.num_edges();
    if needed > 1usize << a {
        return Err(Error::InvalidParameter(format!(
            "grid block Q_{a} has {} vertices but {needed} ports are needed",
            1usize << a
        )));
    }
    let gray = cube::gray_cycle(a)?;
    let mut cursor = 0usize;
    let mut arcs = Vec::with_capacity(g.n_vertices());
    let mut ports = BTreeMap::new();
    for v in 0..g.n_vertices() {
        let deg = g.degree(v);
        let arc = gray.order()[cursor..cursor + deg].to_vec();
        for (k, &x) in g.neighbors(v).iter().enumerate() {
            ports.insert((v, x), arc[k]);
        }
        cursor += deg;
        arcs.push(arc);
    }
    Ok(PortAssignment {
        grid_dim: a,
        arcs,
        ports,
    })
}

/// The involution of the grid block that swaps the two ports of every guest
/// edge and fixes every non-port vertex.
pub fn target_involution(ports: &PortAssignment, params: &EmbedParams) -> GridPerm {
    let a = params.grid_dim();
    let shape = binary_shape(a);
    let mut image: Vec<usize> = (0..shape.total()).collect();
    for (&(v, x), port) in ports.ports() {
        let partner = ports.port(x, v).expect("port map is symmetric");
        image[rank_of_grid_bits(port.bits(), a)] = rank_of_grid_bits(partner.bits(), a);
    }
    GridPerm::new(shape, image).expect("port swaps form a bijection")
}

/// Branch sets plus connecting paths certifying that a guest graph is a
/// minor of `Q_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorModel {
    pub d: usize,
    pub branch_sets: BTreeMap<usize, Vec<CubeVertex>>,
    pub paths: Vec<EdgePath>,
}

/// One connecting path, from a port of `edge.0` to a port of `edge.1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePath {
    pub edge: (usize, usize),
    pub vertices: Vec<CubeVertex>,
}

/// One spare-copy detour taken by a colliding token pair.
#[derive(Clone, Debug)]
pub(crate) struct DetourRecord {
    pub(crate) step: usize,
    pub(crate) spare_bits: (usize, usize),
    pub(crate) low_segment: Vec<CubeVertex>,
    pub(crate) high_segment: Vec<CubeVertex>,
}

/// Routes one token per guest edge through the factored involution and
/// assembles the minor model. Panics on any internal disjointness violation;
/// such a violation is a bug, and the verifier re-checks the result anyway.
pub fn route_paths(sigma: &GridPerm, ports: &PortAssignment, params: &EmbedParams) -> MinorModel {
    route_paths_traced(sigma, ports, params).0
}

pub(crate) fn route_paths_traced(
    sigma: &GridPerm,
    ports: &PortAssignment,
    params: &EmbedParams,
) -> (MinorModel, Vec<DetourRecord>) {
    let a = params.grid_dim();
    let d = params.host_dim();
    let shape = binary_shape(a);
    assert_eq!(
        sigma.shape(),
        &shape,
        "involution must live on the grid block"
    );
    for r in 0..shape.total() {
        assert_eq!(
            sigma.apply_rank(sigma.apply_rank(r)),
            r,
            "target permutation must be an involution"
        );
    }
    let factors = sigma.decompose();
    assert_eq!(factors.len(), params.cycle_len() - 1);
    let temporal = cube::even_cycle_embedding(params.cycle_len(), params.temporal_dim())
        .expect("embed parameters admit the temporal cycle");

    let lift = |rank: usize, label: usize, spare: u64| -> CubeVertex {
        let bits = grid_bits_of_rank(rank, a) | temporal.vertex_of(label).bits() << a | spare;
        CubeVertex::new(bits, d).expect("lifted vertex stays within width")
    };

    let mut used: HashSet<CubeVertex> = HashSet::new();
    let mut branch_sets = BTreeMap::new();
    for (v, arc) in ports.arcs().iter().enumerate() {
        let lifted: Vec<CubeVertex> = arc
            .iter()
            .map(|p| CubeVertex::new(p.bits(), d).expect("grid vertex lifts to host width"))
            .collect();
        for x in &lifted {
            assert!(used.insert(*x), "branch sets must be disjoint");
        }
        branch_sets.insert(v, lifted);
    }

    struct Token {
        edge: (usize, usize),
        pos: usize,
        dest: usize,
        path: Vec<CubeVertex>,
    }

    let mut edge_set: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(v, x) in ports.ports().keys() {
        edge_set.insert((v.min(x), v.max(x)));
    }
    let mut tokens: Vec<Token> = Vec::with_capacity(edge_set.len());
    for &(u, w) in &edge_set {
        let p_uw = ports.port(u, w).expect("port exists for every edge end");
        let p_wu = ports.port(w, u).expect("port exists for every edge end");
        let (start, dest) = if p_uw.bits() <= p_wu.bits() {
            (p_uw, p_wu)
        } else {
            (p_wu, p_uw)
        };
        let pos = rank_of_grid_bits(start.bits(), a);
        let start_lift = lift(pos, 0, 0);
        assert!(
            used.contains(&start_lift),
            "start port must be a branch vertex"
        );
        tokens.push(Token {
            edge: (u, w),
            pos,
            dest: rank_of_grid_bits(dest.bits(), a),
            path: vec![start_lift],
        });
    }

    let mut detours = Vec::new();
    for step in 1..params.cycle_len() {
        let factor = &factors[step - 1];
        let prev_label = step - 1;
        let label = step;
        let nxt: Vec<usize> = tokens.iter().map(|t| factor.apply_rank(t.pos)).collect();
        let occupied: HashMap<usize, usize> =
            tokens.iter().enumerate().map(|(i, t)| (t.pos, i)).collect();
        assert_eq!(
            occupied.len(),
            tokens.len(),
            "token positions must stay pairwise distinct"
        );

        // A moving token collides only with the token occupying its target,
        // and on binary lines that collision is a mutual swap.
        let mut partner: Vec<Option<usize>> = vec![None; tokens.len()];
        for i in 0..tokens.len() {
            if nxt[i] != tokens[i].pos {
                if let Some(&j) = occupied.get(&nxt[i]) {
                    assert_eq!(nxt[j], tokens[i].pos, "collisions must be mutual swaps");
                    partner[i] = Some(j);
                }
            }
        }

        let spare_pair = params.spare_pair_bits(step);
        let mut appended: Vec<Vec<CubeVertex>> = vec![Vec::new(); tokens.len()];
        for i in 0..tokens.len() {
            let pos = tokens[i].pos;
            let seg = &mut appended[i];
            match partner[i] {
                None => {
                    seg.push(lift(pos, label, 0));
                    if nxt[i] != pos {
                        seg.push(lift(nxt[i], label, 0));
                    }
                }
                Some(j) => {
                    // The pair rides two distinct spare copies of the block;
                    // the lower grid position takes the first spare.
                    let mine = grid_bits_of_rank(pos, a);
                    let other = grid_bits_of_rank(tokens[j].pos, a);
                    let spare_bit = if mine < other {
                        spare_pair.0
                    } else {
                        spare_pair.1
                    };
                    let mask = 1u64 << spare_bit;
                    seg.push(lift(pos, prev_label, mask));
                    seg.push(lift(pos, label, mask));
                    seg.push(lift(nxt[i], label, mask));
                    seg.push(lift(nxt[i], label, 0));
                }
            }
        }
        for i in 0..tokens.len() {
            if let Some(j) = partner[i] {
                if i < j {
                    let (low, high) = if grid_bits_of_rank(tokens[i].pos, a)
                        < grid_bits_of_rank(tokens[j].pos, a)
                    {
                        (i, j)
                    } else {
                        (j, i)
                    };
                    detours.push(DetourRecord {
                        step,
                        spare_bits: spare_pair,
                        low_segment: appended[low].clone(),
                        high_segment: appended[high].clone(),
                    });
                }
            }
        }
        for (i, seg) in appended.into_iter().enumerate() {
            for v in seg {
                assert!(used.insert(v), "routing vertices must be pairwise fresh");
                tokens[i].path.push(v);
            }
            tokens[i].pos = nxt[i];
        }
    }

    debug_assert!(detours.iter().all(|e| {
        e.step >= 1
            && e.spare_bits.0 + 1 == e.spare_bits.1
            && e.low_segment.len() == 4
            && e.high_segment.len() == 4
    }));

    let mut paths = Vec::with_capacity(tokens.len());
    for t in tokens {
        assert_eq!(t.pos, t.dest, "factor composition must deliver every token");
        let end = lift(t.dest, 0, 0);
        assert!(
            used.contains(&end),
            "destination port must be a branch vertex"
        );
        let mut vertices = t.path;
        vertices.push(end);
        paths.push(EdgePath {
            edge: t.edge,
            vertices,
        });
    }

    (
        MinorModel {
            d,
            branch_sets,
            paths,
        },
        detours,
    )
}

/// Full pipeline: parameters, ports, involution, routing. The result passes
/// the independent verifier for every accepted guest.
pub fn embed(g: &GuestGraph, d_opt: Option<usize>) -> Result<MinorModel> {
    let params = feasible_params(g.num_edges(), d_opt)?;
    let ports = assign_ports(g, &params)?;
    let sigma = target_involution(&ports, &params);
    Ok(route_paths(&sigma, &ports, &params))
}

fn binary_shape(a: usize) -> GridShape {
    GridShape::new(vec![2; a]).expect("binary shape is valid")
}

/// Grid ranks are row-major with the last coordinate fastest while integer
/// forms put coordinate 1 in the lowest bit, so the two differ by a bit
/// reversal.
fn grid_bits_of_rank(rank: usize, a: usize) -> u64 {
    let mut bits = 0u64;
    for i in 0..a {
        if rank >> (a - 1 - i) & 1 == 1 {
            bits |= 1 << i;
        }
    }
    bits
}

fn rank_of_grid_bits(bits: u64, a: usize) -> usize {
    let mut rank = 0usize;
    for i in 0..a {
        rank = rank << 1 | (bits >> i & 1) as usize;
    }
    rank
}
