use std::sync::Arc;

use crate::error::{Error, Result};
use crate::map::VertexMap;
use crate::space::Space;
use crate::vertex::Vertex;

/// The discrete cube `I_m^n = {0..m}^n` with the product of canonical
/// integer structures: two points are close iff they differ by at most one
/// in every coordinate.
///
/// Points are indexed in mixed radix with the first coordinate most
/// significant, which agrees with the natural order of the `a1,...,an`
/// vertex names of [`Cube::space`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cube {
    n: usize,
    m: usize,
}

impl Cube {
    pub fn new(n: usize, m: usize) -> Result<Cube> {
        if n == 0 {
            return Err(Error::input("cube dimension must be at least 1"));
        }
        Ok(Cube { n, m })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> usize {
        self.m
    }

    pub fn with_side(&self, m: usize) -> Cube {
        Cube { n: self.n, m }
    }

    /// Number of points, `(m+1)^n`.
    pub fn len(&self) -> usize {
        (self.m + 1).pow(self.n as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, mut idx: usize) -> Vec<usize> {
        let base = self.m + 1;
        let mut coords = vec![0; self.n];
        for c in coords.iter_mut().rev() {
            *c = idx % base;
            idx /= base;
        }
        coords
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.n);
        coords.iter().fold(0, |acc, &c| acc * (self.m + 1) + c)
    }

    pub fn contains(&self, coords: &[isize]) -> bool {
        coords.len() == self.n && coords.iter().all(|&c| c >= 0 && c as usize <= self.m)
    }

    /// Closed sup-distance-1 neighbourhood of every point, sorted.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.len()).map(|i| self.neighbors(i)).collect()
    }

    pub fn neighbors(&self, idx: usize) -> Vec<usize> {
        let p = self.point(idx);
        let mut out = Vec::with_capacity(3usize.pow(self.n as u32));
        let mut offset = vec![-1isize; self.n];
        loop {
            let q: Vec<isize> = p.iter().zip(&offset).map(|(&a, &d)| a as isize + d).collect();
            if self.contains(&q) {
                let q: Vec<usize> = q.into_iter().map(|c| c as usize).collect();
                out.push(self.index(&q));
            }
            let mut k = self.n;
            loop {
                if k == 0 {
                    out.sort_unstable();
                    return out;
                }
                k -= 1;
                if offset[k] < 1 {
                    offset[k] += 1;
                    break;
                }
                offset[k] = -1;
            }
        }
    }

    pub fn space(&self) -> Space {
        let names: Vec<Vertex> = (0..self.len()).map(|i| Vertex::coords(&self.point(i))).collect();
        let adj = self.adjacency();
        let pairs: Vec<(usize, usize)> = adj
            .iter()
            .enumerate()
            .flat_map(|(i, l)| l.iter().map(move |&j| (i, j)))
            .collect();
        Space::from_sorted(names, pairs)
    }

    /// Points with some coordinate equal to `0` or `m`.
    pub fn boundary(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.point(i).iter().any(|&c| c == 0 || c == self.m))
            .collect()
    }

    /// The open box `J^{n-1}_m`: boundary points, except those on the face
    /// `x_n = 0` that touch no other boundary face.
    pub fn open_box(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| {
                let p = self.point(i);
                let on_other = p[..self.n - 1].iter().any(|&c| c == 0 || c == self.m);
                let last = p[self.n - 1];
                if last == 0 {
                    on_other
                } else {
                    on_other || last == self.m
                }
            })
            .collect()
    }

    /// The retraction onto `I_m^n` clamping every coordinate to `m`.
    pub fn clamp_point(&self, coords: &[usize]) -> Vec<usize> {
        coords.iter().map(|&c| c.min(self.m)).collect()
    }
}

/// `cube_space(n, m)`: the space `(I_m^n, Z_m^n)`.
pub fn cube_space(n: usize, m: usize) -> Result<Space> {
    Ok(Cube::new(n, m)?.space())
}

/// A map from a discrete cube into a space, stored as target vertex indices
/// in cube point order. Constructors reject maps that are not bornologous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeMap {
    cube: Cube,
    target: Arc<Space>,
    grid: Vec<usize>,
}

impl CubeMap {
    pub fn new(cube: Cube, target: Arc<Space>, grid: Vec<usize>) -> Result<CubeMap> {
        let map = CubeMap::unchecked(cube, target, grid)?;
        if let Some((a, b)) = map.bornologous_witness() {
            return Err(Error::precondition(
                "cube map is not bornologous",
                format!(
                    "points {} and {} are adjacent but map to unrelated {} and {}",
                    Vertex::coords(&cube.point(a)),
                    Vertex::coords(&cube.point(b)),
                    map.target.vertex(map.grid[a]),
                    map.target.vertex(map.grid[b]),
                ),
            ));
        }
        Ok(map)
    }

    /// Shape-checked but not bornologous-checked; for candidate maps read
    /// from files.
    pub fn unchecked(cube: Cube, target: Arc<Space>, grid: Vec<usize>) -> Result<CubeMap> {
        if grid.len() != cube.len() {
            return Err(Error::input(format!(
                "cube I_{}^{} has {} points but {} values were given",
                cube.m,
                cube.n,
                cube.len(),
                grid.len()
            )));
        }
        if let Some(&bad) = grid.iter().find(|&&v| v >= target.len()) {
            return Err(Error::input(format!("vertex index {bad} is out of range")));
        }
        Ok(CubeMap { cube, target, grid })
    }

    /// A path `I_k -> X` through the given target vertex indices.
    pub fn path(target: Arc<Space>, values: &[usize]) -> Result<CubeMap> {
        if values.is_empty() {
            return Err(Error::input("a path needs at least one point"));
        }
        CubeMap::new(Cube::new(1, values.len() - 1)?, target, values.to_vec())
    }

    pub fn path_of(target: Arc<Space>, names: &[Vertex]) -> Result<CubeMap> {
        let values = names
            .iter()
            .map(|v| target.require_index(v))
            .collect::<Result<Vec<_>>>()?;
        CubeMap::path(target, &values)
    }

    pub fn constant(cube: Cube, target: Arc<Space>, value: usize) -> Result<CubeMap> {
        CubeMap::new(cube, target, vec![value; cube.len()])
    }

    pub fn cube(&self) -> Cube {
        self.cube
    }

    pub fn target(&self) -> &Arc<Space> {
        &self.target
    }

    pub fn grid(&self) -> &[usize] {
        &self.grid
    }

    pub fn at(&self, coords: &[usize]) -> usize {
        self.grid[self.cube.index(coords)]
    }

    pub fn values(&self) -> Vec<&Vertex> {
        self.grid.iter().map(|&v| self.target.vertex(v)).collect()
    }

    pub fn is_bornologous(&self) -> bool {
        self.bornologous_witness().is_none()
    }

    /// First adjacent pair of cube points with unrelated images.
    pub fn bornologous_witness(&self) -> Option<(usize, usize)> {
        for i in 0..self.cube.len() {
            for j in self.cube.neighbors(i) {
                if !self.target.related(self.grid[i], self.grid[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn to_vertex_map(&self) -> VertexMap {
        VertexMap::from_indices(Arc::new(self.cube.space()), self.target.clone(), self.grid.clone())
            .expect("grid is shape-checked")
    }

    /// Extension to side `m_new` by precomposing with the clamping retraction.
    pub fn clamp(&self, m_new: usize) -> Result<CubeMap> {
        if m_new < self.cube.m {
            return Err(Error::input(format!(
                "cannot clamp side {} down to {m_new}",
                self.cube.m
            )));
        }
        let big = self.cube.with_side(m_new);
        let grid = (0..big.len())
            .map(|i| self.at(&self.cube.clamp_point(&big.point(i))))
            .collect();
        Ok(CubeMap { cube: big, target: self.target.clone(), grid })
    }

    /// The ⋆-product: `self` (clamped) on `0 <= x_1 <= m`, `other` shifted by
    /// `m` along the first axis (clamped) beyond.
    pub fn star(&self, other: &CubeMap) -> Result<CubeMap> {
        if self.cube.n != other.cube.n {
            return Err(Error::input("⋆ needs cube maps of the same dimension"));
        }
        if *self.target != *other.target {
            return Err(Error::input("⋆ needs cube maps into the same space"));
        }
        let (m, m2) = (self.cube.m, other.cube.m);
        let big = self.cube.with_side(m + m2);
        let value = |p: &[usize]| -> usize {
            if p[0] <= m {
                self.at(&self.cube.clamp_point(p))
            } else {
                let mut q = p.to_vec();
                q[0] -= m;
                other.at(&other.cube.clamp_point(&q))
            }
        };
        // Gluing face x_1 = m of the clamped self against x_1 = 0 of the
        // clamped other, over the whole product cube.
        for i in 0..big.len() {
            let p = big.point(i);
            if p[0] != m {
                continue;
            }
            let left = self.at(&self.cube.clamp_point(&p));
            let mut q = p.clone();
            q[0] = 0;
            let right = other.at(&other.cube.clamp_point(&q));
            if left != right {
                return Err(Error::precondition(
                    "⋆ gluing condition fails",
                    format!(
                        "at {} the left map gives {} and the right map gives {}",
                        Vertex::coords(&p),
                        self.target.vertex(left),
                        self.target.vertex(right)
                    ),
                ));
            }
        }
        let grid: Vec<usize> = (0..big.len()).map(|i| value(&big.point(i))).collect();
        CubeMap::new(big, self.target.clone(), grid)
    }

    /// Reversal along the only axis of a path.
    pub fn inverse_path(&self) -> Result<CubeMap> {
        if self.cube.n != 1 {
            return Err(Error::input("inverse_path is defined for paths (n = 1) only"));
        }
        let mut grid = self.grid.clone();
        grid.reverse();
        Ok(CubeMap { cube: self.cube, target: self.target.clone(), grid })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Arc<Space> {
        Arc::new(Space::cyclic(4, 1))
    }

    #[test]
    fn cube_space_examples() {
        let s = cube_space(1, 1).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.is_complete());
        let s = cube_space(1, 4).unwrap();
        assert_eq!(s.len(), 5);
        assert_eq!(s.roof_size(), 4 * 2 + 5);
        let s = cube_space(2, 1).unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.is_complete());
        assert!(cube_space(0, 3).is_err());
    }

    #[test]
    fn cube_indices_match_space_order() {
        let cube = Cube::new(2, 11).unwrap();
        let s = cube.space();
        for i in 0..cube.len() {
            assert_eq!(s.vertex(i), &Vertex::coords(&cube.point(i)));
            assert_eq!(cube.index(&cube.point(i)), i);
            assert_eq!(s.neighbors(i), cube.neighbors(i).as_slice());
        }
    }

    #[test]
    fn cube_boundary_and_open_box() {
        let cube = Cube::new(2, 2).unwrap();
        assert_eq!(cube.boundary().len(), 8);
        // (1,0) is the only boundary point missing from J
        let j = cube.open_box();
        assert_eq!(j.len(), 7);
        assert!(!j.contains(&cube.index(&[1, 0])));
        let path = Cube::new(1, 4).unwrap();
        assert_eq!(path.boundary(), vec![0, 4]);
        assert_eq!(path.open_box(), vec![4]);
    }

    #[test]
    fn clamp_examples() {
        let c = CubeMap::path(c4(), &[0, 1, 2, 3, 0]).unwrap();
        assert_eq!(c.clamp(4).unwrap(), c);
        let ext = c.clamp(6).unwrap();
        assert_eq!(ext.grid(), &[0, 1, 2, 3, 0, 0, 0]);
        let k = CubeMap::constant(Cube::new(2, 1).unwrap(), c4(), 2).unwrap();
        assert_eq!(k.clamp(3).unwrap(), CubeMap::constant(Cube::new(2, 3).unwrap(), c4(), 2).unwrap());
        assert!(c.clamp(3).is_err());
    }

    #[test]
    fn star_examples() {
        let c = CubeMap::path(c4(), &[0, 1, 2, 3, 0]).unwrap();
        let tail = CubeMap::constant(Cube::new(1, 2).unwrap(), c4(), 0).unwrap();
        let s = c.star(&tail).unwrap();
        assert_eq!(s.grid(), &[0, 1, 2, 3, 0, 0, 0]);
        let cc = c.star(&c).unwrap();
        assert_eq!(cc.cube().side(), 8);
        assert_eq!(cc.grid(), &[0, 1, 2, 3, 0, 1, 2, 3, 0]);
        let bad = CubeMap::path(c4(), &[1, 2]).unwrap();
        assert!(matches!(c.star(&bad), Err(Error::Precondition { .. })));
    }

    #[test]
    fn star_of_squares_respects_clamped_gluing() {
        let cube = Cube::new(2, 1).unwrap();
        let f = CubeMap::constant(cube, c4(), 0).unwrap();
        let g = CubeMap::constant(cube.with_side(2), c4(), 0).unwrap();
        let s = f.star(&g).unwrap();
        assert_eq!(s.cube(), cube.with_side(3));
        assert!(s.is_bornologous());
    }

    #[test]
    fn inverse_path_examples() {
        let k = CubeMap::path(c4(), &[2, 2, 2]).unwrap();
        assert_eq!(k.inverse_path().unwrap(), k);
        let c = CubeMap::path(c4(), &[0, 1, 2, 3, 0]).unwrap();
        let inv = c.inverse_path().unwrap();
        assert_eq!(inv.grid(), &[0, 3, 2, 1, 0]);
        assert_eq!(inv.inverse_path().unwrap(), c);
        let sq = CubeMap::constant(Cube::new(2, 1).unwrap(), c4(), 0).unwrap();
        assert!(sq.inverse_path().is_err());
    }

    #[test]
    fn constructors_reject_non_bornologous() {
        let err = CubeMap::path(c4(), &[0, 2]).unwrap_err();
        assert!(err.witness().unwrap().contains("unrelated"));
    }
}
