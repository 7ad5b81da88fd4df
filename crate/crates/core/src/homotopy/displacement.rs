//! Plate and block displacement moves on cube maps.
//!
//! A plate move copies a one-layer-thick plate one step along its axis and
//! keeps the original. A block move slides a whole block `k` steps, leaving
//! a copy of its trailing face in every position it passes. Block moves are
//! carried out as a chain of plate moves (leading layer first), so every
//! intermediate map is certified by the plate hypothesis.

use std::fmt;

use crate::error::{Error, Result};
use crate::homotopy::cube::{Cube, CubeMap};
use crate::homotopy::relation::{Anchors, Homotopy};
use crate::vertex::Vertex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Left,
    Right,
}

impl Direction {
    pub fn sign(self) -> isize {
        match self {
            Direction::Left => -1,
            Direction::Right => 1,
        }
    }
}

/// An axis-aligned box of cube points with a distinguished axis and direction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    bounds: Vec<(usize, usize)>,
    axis: usize,
    direction: Direction,
}

impl Block {
    /// `bounds[i] = (lo, hi)` per axis; `axis` is zero-based.
    pub fn new(bounds: Vec<(usize, usize)>, axis: usize, direction: Direction) -> Result<Block> {
        if axis >= bounds.len() {
            return Err(Error::input(format!("axis {axis} is out of range for a {}-dimensional block", bounds.len())));
        }
        if let Some(i) = bounds.iter().position(|&(lo, hi)| lo > hi) {
            return Err(Error::input(format!("block bounds on axis {i} are reversed")));
        }
        Ok(Block { bounds, axis, direction })
    }

    /// The plate at `layer` on `axis` spanning the whole cube in the other axes.
    pub fn full_plate(cube: Cube, axis: usize, layer: usize, direction: Direction) -> Result<Block> {
        let mut bounds = vec![(0, cube.side()); cube.dim()];
        if axis < bounds.len() {
            bounds[axis] = (layer, layer);
        }
        Block::new(bounds, axis, direction)
    }

    pub fn bounds(&self) -> &[(usize, usize)] {
        &self.bounds
    }

    pub fn axis(&self) -> usize {
        self.axis
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn is_plate(&self) -> bool {
        let (lo, hi) = self.bounds[self.axis];
        lo == hi
    }

    /// Axis coordinate of the face that moves first.
    pub fn leading(&self) -> usize {
        let (lo, hi) = self.bounds[self.axis];
        match self.direction {
            Direction::Left => lo,
            Direction::Right => hi,
        }
    }

    /// Axis coordinate of the face left behind as the wake.
    pub fn trailing(&self) -> usize {
        let (lo, hi) = self.bounds[self.axis];
        match self.direction {
            Direction::Left => hi,
            Direction::Right => lo,
        }
    }

    fn layer(&self, at: usize) -> Block {
        let mut bounds = self.bounds.clone();
        bounds[self.axis] = (at, at);
        Block { bounds, axis: self.axis, direction: self.direction }
    }

    fn check_fits(&self, cube: Cube) -> Result<()> {
        if self.bounds.len() != cube.dim() {
            return Err(Error::input(format!(
                "block has {} axes but the cube has dimension {}",
                self.bounds.len(),
                cube.dim()
            )));
        }
        if self.bounds.iter().any(|&(_, hi)| hi > cube.side()) {
            return Err(Error::input("block extends outside the cube"));
        }
        Ok(())
    }

    /// Cube indices of the block's points, in index order.
    pub fn points(&self, cube: Cube) -> Vec<usize> {
        (0..cube.len())
            .filter(|&i| {
                cube.point(i)
                    .iter()
                    .zip(&self.bounds)
                    .all(|(&c, &(lo, hi))| lo <= c && c <= hi)
            })
            .collect()
    }
}

/// Why a plate may not be moved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlateViolation {
    /// `alpha` would be copied outside the cube.
    OutOfCube { alpha: Vec<usize> },
    /// `beta` is adjacent to the shifted `alpha`, but `f(alpha)` and `f(beta)`
    /// are unrelated.
    Unrelated { alpha: Vec<usize>, beta: Vec<usize>, f_alpha: usize, f_beta: usize },
}

impl PlateViolation {
    fn describe(&self, f: &CubeMap) -> String {
        match self {
            PlateViolation::OutOfCube { alpha } => {
                format!("the plate point {} would leave the cube", Vertex::coords(alpha))
            }
            PlateViolation::Unrelated { alpha, beta, f_alpha, f_beta } => format!(
                "alpha = {}, beta = {}: f(alpha) = {} and f(beta) = {} are unrelated",
                Vertex::coords(alpha),
                Vertex::coords(beta),
                f.target().vertex(*f_alpha),
                f.target().vertex(*f_beta)
            ),
        }
    }
}

impl fmt::Display for PlateViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlateViolation::OutOfCube { alpha } => write!(out, "{} shifts out of the cube", Vertex::coords(alpha)),
            PlateViolation::Unrelated { alpha, beta, .. } => {
                write!(out, "alpha = {}, beta = {}", Vertex::coords(alpha), Vertex::coords(beta))
            }
        }
    }
}

fn shifted(cube: Cube, p: &[usize], axis: usize, by: isize) -> Option<Vec<usize>> {
    let mut q: Vec<isize> = p.iter().map(|&c| c as isize).collect();
    q[axis] += by;
    cube.contains(&q).then(|| q.into_iter().map(|c| c as usize).collect())
}

/// First failure of the plate hypothesis, in cube index order.
pub fn plate_violation(f: &CubeMap, plate: &Block) -> Result<Option<PlateViolation>> {
    let cube = f.cube();
    plate.check_fits(cube)?;
    if !plate.is_plate() {
        return Err(Error::input("a plate must be one layer thick along its axis"));
    }
    let target = f.target();
    let rho = plate.direction.sign();
    for a in plate.points(cube) {
        let alpha = cube.point(a);
        let Some(moved) = shifted(cube, &alpha, plate.axis, rho) else {
            return Ok(Some(PlateViolation::OutOfCube { alpha }));
        };
        let f_alpha = f.grid()[a];
        for b in cube.neighbors(cube.index(&moved)) {
            let f_beta = f.grid()[b];
            if !target.related(f_alpha, f_beta) {
                return Ok(Some(PlateViolation::Unrelated { alpha, beta: cube.point(b), f_alpha, f_beta }));
            }
        }
    }
    Ok(None)
}

/// Copy the plate one step along its axis, keeping the original in place.
pub fn plate_move(f: &CubeMap, plate: &Block) -> Result<CubeMap> {
    if let Some(v) = plate_violation(f, plate)? {
        return Err(Error::precondition("plate move hypothesis fails", v.describe(f)));
    }
    Ok(apply_plate(f, plate))
}

fn apply_plate(f: &CubeMap, plate: &Block) -> CubeMap {
    let cube = f.cube();
    let rho = plate.direction.sign();
    let mut grid = f.grid().to_vec();
    for a in plate.points(cube) {
        let alpha = cube.point(a);
        let moved = shifted(cube, &alpha, plate.axis, rho).expect("hypothesis checked");
        grid[cube.index(&moved)] = f.grid()[a];
    }
    CubeMap::new(cube, f.target().clone(), grid).expect("plate moves preserve bornologousness")
}

/// A failed block move: the plate hypothesis broke at `step` (1-based) while
/// moving the layer at axis coordinate `layer` of the partially moved map
/// `state`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockViolation {
    pub step: usize,
    pub layer: usize,
    pub state: CubeMap,
    pub violation: PlateViolation,
}

/// Axis coordinates of the plates moved during block step `step` (0-based),
/// leading layer first. Earlier steps have already checked that these layers
/// lie inside the cube.
fn step_layers(block: &Block, step: usize) -> Vec<usize> {
    let (lo, hi) = block.bounds[block.axis];
    match block.direction {
        Direction::Right => (lo..=hi).rev().map(|l| l + step).collect(),
        Direction::Left => (lo..=hi).map(|l| l - step).collect(),
    }
}

/// The certified slice chain of a `k`-step block move, or its first failure.
fn run_block(f: &CubeMap, block: &Block, k: usize) -> Result<std::result::Result<Vec<CubeMap>, BlockViolation>> {
    block.check_fits(f.cube())?;
    let mut chain = vec![f.clone()];
    let mut cur = f.clone();
    for step in 0..k {
        for layer in step_layers(block, step) {
            let plate = block.layer(layer);
            if let Some(violation) = plate_violation(&cur, &plate)? {
                return Ok(Err(BlockViolation { step: step + 1, layer, state: cur, violation }));
            }
            cur = apply_plate(&cur, &plate);
            chain.push(cur.clone());
        }
    }
    Ok(Ok(chain))
}

/// First failure of a `k`-step block move, if any.
pub fn block_violation(f: &CubeMap, block: &Block, k: usize) -> Result<Option<BlockViolation>> {
    Ok(run_block(f, block, k)?.err())
}

/// The homotopy from `f` to the `k`-step block move of `f`, one slice per
/// plate move.
pub fn block_move_chain(f: &CubeMap, block: &Block, k: usize) -> Result<Homotopy> {
    match run_block(f, block, k)? {
        Ok(chain) => Homotopy::from_cube_maps(chain, Anchors::Free),
        Err(v) => Err(Error::precondition(
            "block move hypothesis fails",
            format!("step {}, layer {}: {}", v.step, v.layer, v.violation.describe(&v.state)),
        )),
    }
}

/// Slide `block` by `k` steps along its axis, leaving a copy of the trailing
/// face in every position it passes.
pub fn block_move(f: &CubeMap, block: &Block, k: usize) -> Result<CubeMap> {
    let chain = block_move_chain(f, block, k)?;
    Ok(chain.cube_slice(chain.len() - 1).expect("cube homotopy"))
}

/// Closed form of the `k`-step block move, without any hypothesis check.
/// Positions outside the cube are ignored.
pub fn block_move_formula(f: &CubeMap, block: &Block, k: usize) -> Result<CubeMap> {
    let cube = f.cube();
    block.check_fits(cube)?;
    let rho = block.direction.sign();
    let axis = block.axis;
    let mut grid = f.grid().to_vec();
    for i in 0..cube.len() {
        let beta = cube.point(i);
        let source = |v: usize| shifted(cube, &beta, axis, -(v as isize) * rho);
        let inside_other = beta
            .iter()
            .zip(&block.bounds)
            .enumerate()
            .all(|(j, (&c, &(lo, hi)))| j == axis || (lo <= c && c <= hi));
        if !inside_other {
            continue;
        }
        let (lo, hi) = block.bounds[axis];
        let c = beta[axis] as isize;
        let shifted_lo = lo as isize + k as isize * rho;
        let shifted_hi = hi as isize + k as isize * rho;
        if k > 0 && shifted_lo <= c && c <= shifted_hi {
            if let Some(src) = source(k) {
                grid[i] = f.at(&src);
            }
            continue;
        }
        let trail = block.trailing() as isize;
        for v in 1..k {
            if c == trail + v as isize * rho {
                if let Some(src) = source(v) {
                    grid[i] = f.at(&src);
                }
            }
        }
    }
    CubeMap::unchecked(cube, f.target().clone(), grid)
}
