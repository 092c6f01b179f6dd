//! Bit-level hypercube vertices, reflected Gray cycles, and even-cycle
//! embeddings. Everything else in the crate builds on these.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported vertex width, in coordinates.
pub const MAX_WIDTH: usize = 64;

/// Largest dimension for which a full Gray cycle is materialized.
pub const MAX_GRAY_DIM: usize = 20;

/// A vertex of the hypercube `Q_d`: `d` binary coordinates.
///
/// Coordinate `i` (1-based) is bit `i - 1` of the integer form and character
/// `i` (left to right) of the textual form. So at width 2 the vertex `"10"`
/// has integer form 1, and `"01"` has integer form 2.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeVertex {
    width: u8,
    bits: u64,
}

impl CubeVertex {
    pub fn new(bits: u64, width: usize) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::InvalidParameter(format!(
                "vertex width must be in 1..={MAX_WIDTH}, got {width}"
            )));
        }
        if width < 64 && bits >> width != 0 {
            return Err(Error::InvalidParameter(format!(
                "integer form {bits} does not fit in width {width}"
            )));
        }
        Ok(CubeVertex {
            width: width as u8,
            bits,
        })
    }

    /// Integer form: coordinate 1 is the least significant bit.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    /// Value of coordinate `i + 1`, i.e. bit `i` of the integer form.
    pub fn bit(&self, i: usize) -> bool {
        debug_assert!(i < self.width());
        self.bits >> i & 1 == 1
    }

    /// Same vertex with bit `i` flipped.
    pub fn flip(&self, i: usize) -> Self {
        assert!(i < self.width(), "bit {i} out of range");
        CubeVertex {
            width: self.width,
            bits: self.bits ^ (1 << i),
        }
    }

    /// Number of coordinates in which `self` and `other` differ.
    pub fn hamming(&self, other: &Self) -> Result<usize> {
        if self.width != other.width {
            return Err(Error::DimensionMismatch(self.width(), other.width()));
        }
        Ok((self.bits ^ other.bits).count_ones() as usize)
    }

    /// Canonical textual form: coordinate 1 leftmost.
    pub fn text(&self) -> String {
        (0..self.width())
            .map(|i| if self.bit(i) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Display for CubeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl fmt::Debug for CubeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CubeVertex({})", self.text())
    }
}

impl FromStr for CubeVertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || s.len() > MAX_WIDTH {
            return Err(Error::InvalidParameter(format!(
                "vertex string must have 1..={MAX_WIDTH} characters, got {}",
                s.len()
            )));
        }
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "vertex string may contain only '0'/'1', got {other:?}"
                    )))
                }
            }
        }
        CubeVertex::new(bits, s.len())
    }
}

pub fn hamming(u: &CubeVertex, v: &CubeVertex) -> Result<usize> {
    u.hamming(v)
}

/// True iff `u` and `v` are adjacent in the hypercube (Hamming distance one).
pub fn is_cube_edge(u: &CubeVertex, v: &CubeVertex) -> Result<bool> {
    Ok(u.hamming(v)? == 1)
}

/// A Hamiltonian cycle of `Q_k` in reflected Gray order.
#[derive(Clone, Debug)]
pub struct GrayCycle {
    k: usize,
    order: Vec<CubeVertex>,
}

impl GrayCycle {
    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> &[CubeVertex] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// The standard reflected Gray order of all `2^k` vertices of `Q_k`.
///
/// `k = 1` yields the degenerate 2-cycle `[0, 1]`; consumers that need a
/// genuine cycle must require length at least four.
pub fn gray_cycle(k: usize) -> Result<GrayCycle> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "gray_cycle requires k >= 1 (Q_0 has a single vertex and no cycle)".into(),
        ));
    }
    if k > MAX_GRAY_DIM {
        return Err(Error::SizeLimit(format!(
            "gray_cycle materializes 2^k vertices; k = {k} exceeds the cap {MAX_GRAY_DIM}"
        )));
    }
    let order = (0..1u64 << k)
        .map(|i| CubeVertex {
            width: k as u8,
            bits: i ^ (i >> 1),
        })
        .collect();
    Ok(GrayCycle { k, order })
}

/// An even cycle `C_L` realized on distinct vertices of `Q_k`, one vertex per
/// label `0..L`, cyclically adjacent.
#[derive(Clone, Debug)]
pub struct CycleEmbedding {
    length: usize,
    dim: usize,
    label_to_vertex: Vec<CubeVertex>,
}

impl CycleEmbedding {
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_of(&self, label: usize) -> CubeVertex {
        self.label_to_vertex[label]
    }

    pub fn vertices(&self) -> &[CubeVertex] {
        &self.label_to_vertex
    }
}

/// Embeds the even cycle `C_length` into `Q_k` by mirroring a Gray prefix:
/// the first `length/2` entries of the Gray order of `Q_{k-1}`, followed by
/// the same entries reversed with the top coordinate set.
pub fn even_cycle_embedding(length: usize, k: usize) -> Result<CycleEmbedding> {
    if k == 0 || k > MAX_GRAY_DIM {
        return Err(Error::InvalidParameter(format!(
            "cycle host dimension must be in 1..={MAX_GRAY_DIM}, got {k}"
        )));
    }
    if length % 2 != 0 || length < 4 {
        return Err(Error::InvalidParameter(format!(
            "cycle length must be even and at least 4, got {length}"
        )));
    }
    if (length as u128) > 1u128 << k {
        return Err(Error::InvalidParameter(format!(
            "cycle length {length} exceeds 2^{k} vertices"
        )));
    }
    let gray = gray_cycle(k - 1)?;
    let half = length / 2;
    let top = 1u64 << (k - 1);
    let mut label_to_vertex = Vec::with_capacity(length);
    for g in &gray.order()[..half] {
        label_to_vertex.push(CubeVertex::new(g.bits(), k)?);
    }
    for g in gray.order()[..half].iter().rev() {
        label_to_vertex.push(CubeVertex::new(g.bits() | top, k)?);
    }
    Ok(CycleEmbedding {
        length,
        dim: k,
        label_to_vertex,
    })
}
