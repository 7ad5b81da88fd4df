//! Fundamental groups of cyclic spaces `C_n^m`, path lifting to the integers
//! and unidirectional reduction of paths.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homotopy::cube::{Cube, CubeMap};
use crate::homotopy::relation::{verify_homotopy, Anchors, Homotopy};
use crate::space::Space;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    Integers,
    Trivial,
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupDescriptor::Integers => "Z",
            GroupDescriptor::Trivial => "trivial",
        })
    }
}

/// `π_1` of `C_n^m`: the integers when `⌈n/m⌉ >= 4`, trivial otherwise.
pub fn pi1_cyclic(n: usize, m: usize) -> Result<GroupDescriptor> {
    if n == 0 || m == 0 {
        return Err(Error::input(format!("pi1 of C_n^m needs n >= 1 and m >= 1 (got n = {n}, m = {m})")));
    }
    Ok(if n.div_ceil(m) >= 4 { GroupDescriptor::Integers } else { GroupDescriptor::Trivial })
}

/// The lift of a path in `C_n^m` to the integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindingCertificate {
    pub n: usize,
    pub m: usize,
    /// `lift[0] = 0` and `lift[i] ≡ f(i) mod n`.
    pub lift: Vec<i64>,
    /// `lift[k] - lift[0]`.
    pub displacement: i64,
    /// `displacement / n` when the path is a loop, `None` otherwise.
    pub winding: Option<i64>,
}

impl WindingCertificate {
    /// Re-check every stated property against the path.
    pub fn verify(&self, path: &[usize]) -> bool {
        let n = self.n as i64;
        let m = self.m as i64;
        self.lift.len() == path.len()
            && self.lift.first() == Some(&0)
            && self.lift.iter().zip(path).all(|(&l, &p)| l.rem_euclid(n) == p as i64)
            && self.lift.windows(2).all(|w| (w[1] - w[0]).abs() <= m)
            && self.displacement == self.lift.last().unwrap() - self.lift[0]
            && match self.winding {
                Some(w) => path.first() == path.last() && w * n == self.displacement,
                None => path.first() != path.last(),
            }
    }
}

/// Unique representative of `d mod n` in `[-m, m]`, if any.
fn step(d: i64, n: i64, m: i64) -> Option<i64> {
    let r = d.rem_euclid(n);
    if r <= m {
        Some(r)
    } else if n - r <= m {
        Some(r - n)
    } else {
        None
    }
}

/// Lift a path `f: I_k -> C_n^m` with `f(0) = 0` to the integers.
///
/// The target must be exactly `Space::cyclic(n, m)` with `n > 2m`, so that
/// every step has a unique representative in `[-m, m]`. Spaces with
/// `⌈n/m⌉ < 4` are rejected unless `allow_small_cycle` is set: their
/// fundamental group is trivial, so lifts there are still unique but do not
/// detect homotopy classes.
pub fn lift_path(f: &CubeMap, m: usize, allow_small_cycle: bool) -> Result<WindingCertificate> {
    let n = f.target().len();
    if f.cube().dim() != 1 {
        return Err(Error::input("lifting is defined for paths (n = 1) only"));
    }
    if m == 0 || 2 * m >= n {
        return Err(Error::Unsupported(format!(
            "lifting C_{n}^{m} needs n > 2m so steps have unique representatives"
        )));
    }
    if n.div_ceil(m) < 4 && !allow_small_cycle {
        return Err(Error::Unsupported(format!(
            "winding numbers on C_{n}^{m} are not homotopy invariants (⌈n/m⌉ < 4); pass the unsafe small-cycle flag to lift anyway"
        )));
    }
    if **f.target() != Space::cyclic(n, m) {
        return Err(Error::input(format!("target is not the standard cyclic space C_{n}^{m}")));
    }
    let grid = f.grid();
    if grid[0] != 0 {
        return Err(Error::input(format!(
            "path starts at {} rather than 0; translate it first",
            f.target().vertex(grid[0])
        )));
    }
    let (ni, mi) = (n as i64, m as i64);
    let mut lift = Vec::with_capacity(grid.len());
    lift.push(0i64);
    for (i, w) in grid.windows(2).enumerate() {
        let d = w[1] as i64 - w[0] as i64;
        let s = step(d, ni, mi).ok_or_else(|| {
            Error::precondition(
                "path is not bornologous",
                format!("positions {i} and {} map to unrelated {} and {}", i + 1, w[0], w[1]),
            )
        })?;
        lift.push(lift[i] + s);
    }
    let displacement = lift[lift.len() - 1];
    let winding = (grid[0] == grid[grid.len() - 1]).then(|| displacement / ni);
    Ok(WindingCertificate { n, m, lift, displacement, winding })
}

/// Why a point was removed during reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionKind {
    /// `f(i) = f(i+1)`.
    Stutter,
    /// `f(i)` is related to `f(i+2)`: `f(i+1)` is first overwritten by
    /// `f(i+2)`, then dropped.
    Shortcut,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionStep {
    pub kind: ReductionKind,
    /// Index `i` of the pattern in the path before the step; `i+1` is removed.
    pub at: usize,
    /// Based homotopy from the path before the step to the path after it,
    /// clamped to the earlier side.
    pub certificate: Homotopy,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reduction {
    pub result: CubeMap,
    pub steps: Vec<ReductionStep>,
}

fn find_step(target: &Space, p: &[usize]) -> Option<(ReductionKind, usize)> {
    if let Some(i) = p.windows(2).position(|w| w[0] == w[1]) {
        return Some((ReductionKind::Stutter, i));
    }
    p.windows(3)
        .position(|w| target.related(w[0], w[2]))
        .map(|i| (ReductionKind::Shortcut, i))
}

/// Based homotopy from `p` to `p` with index `del` removed and the result
/// clamped back to the side of `p`. Every slice overwrites one position with
/// its right neighbour, which is one-step related whenever the values on both
/// sides are related.
fn deletion_chain(p: &[usize], del: usize) -> Vec<Vec<usize>> {
    let k = p.len() - 1;
    let mut cur = p.to_vec();
    let mut chain = vec![cur.clone()];
    for pos in del..k {
        if cur[pos] != cur[pos + 1] {
            cur[pos] = cur[pos + 1];
            chain.push(cur.clone());
        }
    }
    chain
}

/// Reduce a path by deleting stutters and shortcuts until it is
/// unidirectional (no `f(i)` related to `f(i+2)`), recording a certificate
/// for every step.
pub fn unidirectional_reduce_trace(f: &CubeMap) -> Result<Reduction> {
    if f.cube().dim() != 1 {
        return Err(Error::input("reduction is defined for paths (n = 1) only"));
    }
    let target = f.target().clone();
    let mut path = f.grid().to_vec();
    let mut steps = Vec::new();
    while let Some((kind, i)) = find_step(&target, &path) {
        let mut chain = Vec::new();
        if kind == ReductionKind::Shortcut {
            chain.push(path.clone());
            path[i + 1] = path[i + 2];
        }
        chain.extend(deletion_chain(&path, i + 1));
        let cube = Cube::new(1, path.len() - 1)?;
        let certificate = Homotopy::from_grids(Arc::new(cube.space()), target.clone(), Some(cube), Anchors::Boundary, chain);
        debug_assert!(verify_homotopy(&certificate));
        path.remove(i + 1);
        steps.push(ReductionStep { kind, at: i, certificate });
    }
    let result = CubeMap::path(target, &path)?;
    Ok(Reduction { result, steps })
}

pub fn unidirectional_reduce(f: &CubeMap) -> Result<CubeMap> {
    Ok(unidirectional_reduce_trace(f)?.result)
}

/// No index `i` with `f(i)` related to `f(i+2)`.
pub fn is_unidirectional(f: &CubeMap) -> bool {
    f.cube().dim() == 1 && f.grid().windows(3).all(|w| !f.target().related(w[0], w[2]))
}

/// An identification of a space with a standard cyclic space `C_n^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicModel {
    pub n: usize,
    pub m: usize,
    /// `residue[i]` is the standard label of vertex `i`.
    pub residue: Vec<usize>,
}

impl CyclicModel {
    /// Find an isomorphism onto `C_n^m`, preferring the identity labelling.
    pub fn recognize(space: &Space) -> Result<CyclicModel> {
        let n = space.len();
        if n == 0 {
            return Err(Error::Unsupported("the empty space is not cyclic".into()));
        }
        let d = space.neighbors(0).len();
        if (0..n).any(|i| space.neighbors(i).len() != d) {
            return Err(Error::Unsupported("vertices have different neighbourhood sizes; not a cyclic space".into()));
        }
        if space.is_complete() {
            return Err(Error::Unsupported(format!(
                "the complete space on {n} vertices is C_{n}^m for every m >= {}; no unique step bound",
                n / 2
            )));
        }
        if d.is_multiple_of(2) {
            return Err(Error::Unsupported("even neighbourhood size; not a cyclic space".into()));
        }
        let m = (d - 1) / 2;
        if m == 0 {
            return Err(Error::Unsupported("discrete space; not a cyclic space".into()));
        }
        let model = Space::cyclic(n, m);
        if *space == model {
            return Ok(CyclicModel { n, m, residue: (0..n).collect() });
        }
        let residue = find_isomorphism(space, &model)
            .ok_or_else(|| Error::Unsupported(format!("space is not isomorphic to C_{n}^{m}")))?;
        Ok(CyclicModel { n, m, residue })
    }

    /// Like [`CyclicModel::recognize`], but also identifies a complete space
    /// on an odd number `n >= 3` of vertices with `C_n^{(n-1)/2}`, the only
    /// reading under which steps lift uniquely. Its fundamental group is
    /// trivial, so this is meant for the unsafe small-cycle mode only.
    pub fn recognize_allowing_small(space: &Space) -> Result<CyclicModel> {
        let n = space.len();
        if space.is_complete() && n >= 3 && n % 2 == 1 {
            return Ok(CyclicModel { n, m: (n - 1) / 2, residue: (0..n).collect() });
        }
        CyclicModel::recognize(space)
    }

    /// The standard space `C_n^m`.
    pub fn space(&self) -> Space {
        Space::cyclic(self.n, self.m)
    }

    /// Transport a path into `C_n^m`, rotated so that it starts at 0.
    pub fn normalize_path(&self, f: &CubeMap) -> Result<CubeMap> {
        if f.target().len() != self.n {
            return Err(Error::input("path target does not match the recognised space"));
        }
        let start = self.residue[f.grid()[0]];
        let grid: Vec<usize> = f
            .grid()
            .iter()
            .map(|&v| (self.residue[v] + self.n - start) % self.n)
            .collect();
        CubeMap::new(f.cube(), Arc::new(self.space()), grid)
    }
}

/// Backtracking isomorphism search from `space` to `model`, assigning
/// vertices in breadth-first order from vertex 0, which is sent to 0 (the
/// model is vertex-transitive).
fn find_isomorphism(space: &Space, model: &Space) -> Option<Vec<usize>> {
    let n = space.len();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    seen[0] = true;
    order.push(0);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &w in space.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
    }
    if order.len() != n {
        return None;
    }
    let mut label = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(pos: usize, order: &[usize], space: &Space, model: &Space, label: &mut [usize], used: &mut [bool]) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        let choices: Vec<usize> = if pos == 0 { vec![0] } else { (0..model.len()).collect() };
        for c in choices {
            if used[c] {
                continue;
            }
            let consistent = order[..pos]
                .iter()
                .all(|&u| space.related(u, v) == model.related(label[u], c));
            if consistent {
                label[v] = c;
                used[c] = true;
                if extend(pos + 1, order, space, model, label, used) {
                    return true;
                }
                used[c] = false;
                label[v] = usize::MAX;
            }
        }
        false
    }
    extend(0, &order, space, model, &mut label, &mut used).then_some(label)
}
