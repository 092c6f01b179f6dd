//! Permutations of mixed-radix grids and their decomposition into `2d - 1`
//! one-dimensional factors.
//!
//! A permutation is *one-dimensional in direction j* if it moves every point
//! only along coordinate `j`. Any permutation of `[n_1] x ... x [n_d]`
//! factors into `2d - 1` such permutations with direction pattern
//! `d, d-1, ..., 1, ..., d-1, d`: view the grid as columns (coordinate `d`)
//! over horizontal layers, route each point vertically to a layer in which
//! all images live in distinct columns (a perfect-matching split of the
//! column multigraph), recurse inside the layers, and finish with one more
//! vertical pass.

use crate::bipartite::{RegularBipartiteMultigraph, TaggedEdge};
use crate::error::{Error, Result};

/// Extents `(n_1, ..., n_d)` of a mixed-radix grid.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GridShape {
    dims: Vec<usize>,
    total: usize,
}

impl GridShape {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidParameter(
                "grid shape needs at least one dimension".into(),
            ));
        }
        if let Some(i) = dims.iter().position(|&n| n == 0) {
            return Err(Error::InvalidParameter(format!(
                "grid extent n_{} must be positive",
                i + 1
            )));
        }
        let total = dims
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::InvalidParameter("grid size overflows a machine word".into()))?;
        Ok(GridShape { dims, total })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_dims(&self) -> usize {
        self.dims.len()
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn extent(&self, direction: usize) -> usize {
        self.dims[direction - 1]
    }

    /// Units of rank per step along `direction`; the last coordinate varies
    /// fastest.
    fn stride(&self, direction: usize) -> usize {
        self.dims[direction..].iter().product()
    }

    /// Row-major rank of a point, last coordinate fastest.
    pub fn rank(&self, point: &GridPoint) -> Result<usize> {
        if point.coords.len() != self.dims.len() {
            return Err(Error::DimensionMismatch(
                point.coords.len(),
                self.dims.len(),
            ));
        }
        let mut rank = 0usize;
        for (x, &n) in point.coords.iter().zip(&self.dims) {
            if *x >= n {
                return Err(Error::InvalidParameter(format!(
                    "coordinate value {x} out of range 0..{n}"
                )));
            }
            rank = rank * n + x;
        }
        Ok(rank)
    }

    pub fn point(&self, rank: usize) -> GridPoint {
        assert!(rank < self.total, "rank {rank} out of range");
        let mut coords = vec![0usize; self.dims.len()];
        let mut rest = rank;
        for i in (0..self.dims.len()).rev() {
            coords[i] = rest % self.dims[i];
            rest /= self.dims[i];
        }
        GridPoint { coords }
    }

    /// Number of lines parallel to `direction`.
    pub fn line_count(&self, direction: usize) -> usize {
        self.total / self.extent(direction)
    }

    /// Line index (row-major over the fixed coordinates, last fastest) and
    /// position along the line of the point with this rank.
    fn line_and_pos(&self, rank: usize, direction: usize) -> (usize, usize) {
        let stride = self.stride(direction);
        let n = self.extent(direction);
        let pos = rank / stride % n;
        let line = rank / (stride * n) * stride + rank % stride;
        (line, pos)
    }

    fn rank_on_line(&self, line: usize, direction: usize, pos: usize) -> usize {
        let stride = self.stride(direction);
        let n = self.extent(direction);
        let hi = line / stride;
        let lo = line % stride;
        hi * stride * n + pos * stride + lo
    }
}

/// A grid point with 0-based coordinate values.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GridPoint {
    coords: Vec<usize>,
}

impl GridPoint {
    pub fn new(coords: Vec<usize>) -> Self {
        GridPoint { coords }
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }
}

/// An arbitrary permutation of a grid, stored as the image of every rank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GridPerm {
    shape: GridShape,
    image: Vec<usize>,
}

impl GridPerm {
    pub fn new(shape: GridShape, image: Vec<usize>) -> Result<Self> {
        if image.len() != shape.total() {
            return Err(Error::MalformedPermutation(format!(
                "image has {} entries, shape has {} points",
                image.len(),
                shape.total()
            )));
        }
        let mut seen = vec![false; image.len()];
        for &y in &image {
            if y >= image.len() || seen[y] {
                return Err(Error::MalformedPermutation(format!(
                    "image is not a bijection (value {y})"
                )));
            }
            seen[y] = true;
        }
        Ok(GridPerm { shape, image })
    }

    pub fn identity(shape: GridShape) -> Self {
        let image = (0..shape.total()).collect();
        GridPerm { shape, image }
    }

    pub fn shape(&self) -> &GridShape {
        &self.shape
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply_rank(&self, rank: usize) -> usize {
        self.image[rank]
    }

    pub fn apply(&self, point: &GridPoint) -> Result<GridPoint> {
        let rank = self.shape.rank(point)?;
        Ok(self.shape.point(self.image[rank]))
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &y)| i == y)
    }

    /// Factors the permutation into exactly `2d - 1` one-dimensional
    /// permutations, applied first-to-last; factor `i` (1-based) has
    /// direction `|d - i| + 1`.
    pub fn decompose(&self) -> Vec<OneDimPerm> {
        let d = self.shape.num_dims();
        let total = self.shape.total();
        if d == 1 {
            return vec![OneDimPerm {
                shape: self.shape.clone(),
                direction: 1,
                line_perms: vec![self.image.clone()],
            }];
        }
        let n_last = self.shape.extent(d);
        let column_count = total / n_last;
        let column_shape =
            GridShape::new(self.shape.dims()[..d - 1].to_vec()).expect("prefix shape is valid");

        // One edge per point, joining its column to the column of its image;
        // the point's own rank is the tag.
        let edges: Vec<TaggedEdge> = (0..total)
            .map(|x| TaggedEdge {
                left: x / n_last,
                right: self.image[x] / n_last,
                tag: x,
            })
            .collect();
        let column_graph = RegularBipartiteMultigraph::new(column_count, column_count, edges)
            .expect("column multigraph of a permutation is regular");
        let matchings = column_graph.split_into_matchings();

        let mut layer = vec![0usize; total];
        for (l, matching) in matchings.iter().enumerate() {
            for e in matching {
                layer[e.tag] = l;
            }
        }

        // First pass: move every point vertically to its matching's layer.
        let mut first_lines = vec![vec![0usize; n_last]; column_count];
        for x in 0..total {
            first_lines[x / n_last][x % n_last] = layer[x];
        }

        // Within each layer, the matching induces a permutation of columns;
        // decompose those recursively.
        let mut layer_images = vec![vec![0usize; column_count]; n_last];
        for x in 0..total {
            layer_images[layer[x]][x / n_last] = self.image[x] / n_last;
        }
        let sub: Vec<Vec<OneDimPerm>> = layer_images
            .into_iter()
            .map(|img| {
                GridPerm::new(column_shape.clone(), img)
                    .expect("layer map is a permutation")
                    .decompose()
            })
            .collect();

        let mut factors = Vec::with_capacity(2 * d - 1);
        factors.push(OneDimPerm {
            shape: self.shape.clone(),
            direction: d,
            line_perms: first_lines,
        });
        // Middle passes act layer by layer: a line of the full grid in
        // direction j is a line of one layer, indexed by (layer line, layer).
        for r in 0..2 * (d - 1) - 1 {
            let direction = sub[0][r].direction;
            let layer_lines = column_shape.line_count(direction);
            let mut lines = vec![Vec::new(); layer_lines * n_last];
            for (l, layer_factors) in sub.iter().enumerate() {
                for (yl, perm) in layer_factors[r].line_perms.iter().enumerate() {
                    lines[yl * n_last + l] = perm.clone();
                }
            }
            factors.push(OneDimPerm {
                shape: self.shape.clone(),
                direction,
                line_perms: lines,
            });
        }
        // Last pass: every point sits over its final column; fix its height.
        let mut last_lines = vec![vec![0usize; n_last]; column_count];
        for x in 0..total {
            last_lines[self.image[x] / n_last][layer[x]] = self.image[x] % n_last;
        }
        factors.push(OneDimPerm {
            shape: self.shape.clone(),
            direction: d,
            line_perms: last_lines,
        });
        factors
    }
}

/// A permutation that moves points only along one coordinate axis: an
/// independent permutation of `{0..n_j}` for every line in that direction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OneDimPerm {
    shape: GridShape,
    direction: usize,
    line_perms: Vec<Vec<usize>>,
}

impl OneDimPerm {
    pub fn new(shape: GridShape, direction: usize, line_perms: Vec<Vec<usize>>) -> Result<Self> {
        if direction == 0 || direction > shape.num_dims() {
            return Err(Error::InvalidParameter(format!(
                "direction {direction} out of range 1..={}",
                shape.num_dims()
            )));
        }
        if line_perms.len() != shape.line_count(direction) {
            return Err(Error::MalformedPermutation(format!(
                "expected {} line permutations, got {}",
                shape.line_count(direction),
                line_perms.len()
            )));
        }
        let n = shape.extent(direction);
        for perm in &line_perms {
            if perm.len() != n {
                return Err(Error::MalformedPermutation(format!(
                    "line permutation has {} entries, expected {n}",
                    perm.len()
                )));
            }
            let mut seen = vec![false; n];
            for &y in perm {
                if y >= n || seen[y] {
                    return Err(Error::MalformedPermutation(
                        "line permutation is not a bijection".into(),
                    ));
                }
                seen[y] = true;
            }
        }
        Ok(OneDimPerm {
            shape,
            direction,
            line_perms,
        })
    }

    pub fn shape(&self) -> &GridShape {
        &self.shape
    }

    pub fn direction(&self) -> usize {
        self.direction
    }

    pub fn line_perms(&self) -> &[Vec<usize>] {
        &self.line_perms
    }

    pub fn apply_rank(&self, rank: usize) -> usize {
        let (line, pos) = self.shape.line_and_pos(rank, self.direction);
        self.shape
            .rank_on_line(line, self.direction, self.line_perms[line][pos])
    }

    pub fn apply(&self, point: &GridPoint) -> Result<GridPoint> {
        let rank = self.shape.rank(point)?;
        Ok(self.shape.point(self.apply_rank(rank)))
    }

    pub fn is_identity(&self) -> bool {
        self.line_perms
            .iter()
            .all(|p| p.iter().enumerate().all(|(i, &y)| i == y))
    }

    /// Materializes the factor as a plain grid permutation.
    pub fn to_grid_perm(&self) -> GridPerm {
        let image = (0..self.shape.total())
            .map(|r| self.apply_rank(r))
            .collect();
        GridPerm {
            shape: self.shape.clone(),
            image,
        }
    }
}

/// True iff applying `factors` first-to-last reproduces `sigma` on every
/// point of the grid.
pub fn compose_equals(factors: &[OneDimPerm], sigma: &GridPerm) -> Result<bool> {
    for f in factors {
        if f.shape != sigma.shape {
            return Err(Error::InvalidParameter(format!(
                "factor shape {:?} does not match permutation shape {:?}",
                f.shape.dims(),
                sigma.shape.dims()
            )));
        }
    }
    for rank in 0..sigma.shape.total() {
        let mut cur = rank;
        for f in factors {
            cur = f.apply_rank(cur);
        }
        if cur != sigma.image[rank] {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn shape(dims: &[usize]) -> GridShape {
        GridShape::new(dims.to_vec()).unwrap()
    }

    /// A factor is one-dimensional iff every point moves only along its
    /// direction; checked pointwise from coordinates.
    fn assert_one_dimensional(f: &OneDimPerm) {
        for rank in 0..f.shape().total() {
            let p = f.shape().point(rank);
            let q = f.shape().point(f.apply_rank(rank));
            for (i, (a, b)) in p.coords().iter().zip(q.coords()).enumerate() {
                if i + 1 != f.direction() {
                    assert_eq!(a, b, "moved along coordinate {}", i + 1);
                }
            }
        }
    }

    fn random_perm(sh: &GridShape, rng: &mut ChaCha8Rng) -> GridPerm {
        let mut image: Vec<usize> = (0..sh.total()).collect();
        image.shuffle(rng);
        GridPerm::new(sh.clone(), image).unwrap()
    }

    #[test]
    fn rank_round_trip() {
        let sh = shape(&[2, 3, 4]);
        for rank in 0..sh.total() {
            let p = sh.point(rank);
            assert_eq!(sh.rank(&p).unwrap(), rank);
        }
        // Last coordinate varies fastest.
        assert_eq!(sh.rank(&GridPoint::new(vec![0, 0, 1])).unwrap(), 1);
        assert_eq!(sh.rank(&GridPoint::new(vec![0, 1, 0])).unwrap(), 4);
        assert_eq!(sh.rank(&GridPoint::new(vec![1, 0, 0])).unwrap(), 12);
    }

    #[test]
    fn shape_validation() {
        assert!(GridShape::new(vec![]).is_err());
        assert!(GridShape::new(vec![2, 0]).is_err());
        assert!(shape(&[3]).rank(&GridPoint::new(vec![3])).is_err());
        assert!(shape(&[3]).rank(&GridPoint::new(vec![0, 0])).is_err());
    }

    #[test]
    fn perm_validation() {
        let sh = shape(&[2, 2]);
        assert!(GridPerm::new(sh.clone(), vec![0, 1, 2]).is_err());
        assert!(GridPerm::new(sh.clone(), vec![0, 1, 2, 2]).is_err());
        assert!(GridPerm::new(sh.clone(), vec![0, 1, 2, 4]).is_err());
        assert!(GridPerm::new(sh, vec![0, 1, 2, 3]).is_ok());
    }

    #[test]
    fn one_dim_apply_moves_single_coordinate() {
        let sh = shape(&[2, 2]);
        // Swap along direction 2 on both lines.
        let f = OneDimPerm::new(sh.clone(), 2, vec![vec![1, 0], vec![1, 0]]).unwrap();
        let moved = f.apply(&GridPoint::new(vec![1, 0])).unwrap();
        assert_eq!(moved, GridPoint::new(vec![1, 1]));
        assert_one_dimensional(&f);
    }

    #[test]
    fn decompose_base_case() {
        let sh = shape(&[5]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let sigma = random_perm(&sh, &mut rng);
        let factors = sigma.decompose();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].direction(), 1);
        assert!(compose_equals(&factors, &sigma).unwrap());
    }

    #[test]
    fn decompose_direction_pattern_d3() {
        let sh = shape(&[2, 3, 2]);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let sigma = random_perm(&sh, &mut rng);
        let factors = sigma.decompose();
        let dirs: Vec<usize> = factors.iter().map(|f| f.direction()).collect();
        assert_eq!(dirs, vec![3, 2, 1, 2, 3]);
    }

    #[test]
    fn decompose_four_cycle_on_square() {
        // The 4-cycle (0,0) -> (0,1) -> (1,1) -> (1,0) -> (0,0).
        let sh = shape(&[2, 2]);
        let sigma = GridPerm::new(sh.clone(), vec![1, 3, 0, 2]).unwrap();
        let factors = sigma.decompose();
        assert_eq!(factors.len(), 3);
        for f in &factors {
            assert_one_dimensional(f);
        }
        // Composition reproduces sigma on all four points.
        for rank in 0..4 {
            let mut cur = rank;
            for f in &factors {
                cur = f.apply_rank(cur);
            }
            assert_eq!(cur, sigma.apply_rank(rank));
        }
    }

    #[test]
    fn compose_equals_trivial_cases() {
        let sh = shape(&[2, 2]);
        let id = GridPerm::identity(sh.clone());
        assert!(compose_equals(&[], &id).unwrap());
        let swap = OneDimPerm::new(sh.clone(), 2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(!compose_equals(&[swap], &id).unwrap());

        let other = GridPerm::identity(shape(&[4]));
        let f = OneDimPerm::new(sh, 1, vec![vec![0, 1], vec![0, 1]]).unwrap();
        assert!(compose_equals(&[f], &other).is_err());
    }

    #[test]
    fn decompose_random_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let shapes = [
            vec![2],
            vec![4, 4],
            vec![2, 2, 2],
            vec![3, 1, 5],
            vec![2, 3, 2, 2],
            vec![1, 6],
            vec![2, 2, 2, 2, 2],
        ];
        for dims in &shapes {
            let sh = shape(dims);
            let d = sh.num_dims();
            for _ in 0..20 {
                let sigma = random_perm(&sh, &mut rng);
                let factors = sigma.decompose();
                assert_eq!(factors.len(), 2 * d - 1);
                for (i, f) in factors.iter().enumerate() {
                    let expected = (d as isize - (i + 1) as isize).unsigned_abs() + 1;
                    assert_eq!(f.direction(), expected);
                    assert_one_dimensional(f);
                }
                assert!(compose_equals(&factors, &sigma).unwrap());
            }
        }
    }

    #[test]
    fn to_grid_perm_matches_apply() {
        let sh = shape(&[3, 2]);
        let f = OneDimPerm::new(sh, 1, vec![vec![2, 0, 1], vec![1, 2, 0]]).unwrap();
        let g = f.to_grid_perm();
        for rank in 0..6 {
            assert_eq!(g.apply_rank(rank), f.apply_rank(rank));
        }
    }
}
