//! Homotopies as finite chains of one-step related maps.
//!
//! A homotopy `H: X × ℤ -> Y` is bornologous for the product structure, whose
//! roof relates `(x, t)` and `(y, s)` iff `x ~ y` and `|t - s| <= 1`. Between
//! consecutive slices `f = H(·, t)` and `g = H(·, t+1)` this means
//! `f(x) ~ g(y)` for every roof pair `(x, y)` of the domain, including the
//! diagonal ones. Outside the stored window the homotopy is constant.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homotopy::cube::{Cube, CubeMap};
use crate::map::VertexMap;
use crate::space::Space;
use crate::vertex::Vertex;

/// Which domain points a homotopy must hold in place.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Anchors {
    /// No constraint.
    #[default]
    Free,
    /// The listed domain points keep their value.
    Pinned(BTreeSet<usize>),
    /// Cube domains only: the boundary `∂I_m^n` keeps its value (based maps).
    Boundary,
    /// Cube domains only, maps of triples `(I, ∂I, J) -> (X, A, *)`: the
    /// boundary stays inside `A` (target indices), `J` keeps its value.
    Triple(BTreeSet<usize>),
}

/// [`Anchors`] resolved against a concrete domain.
#[derive(Debug, Clone, Default)]
pub struct Resolved {
    pub pinned: Vec<bool>,
    /// Per domain point, the allowed target indices (`None` = anything).
    pub confined: Vec<Option<Arc<BTreeSet<usize>>>>,
}

impl Anchors {
    pub fn based() -> Anchors {
        Anchors::Boundary
    }

    pub fn resolve(&self, domain_len: usize, cube: Option<Cube>) -> Result<Resolved> {
        let mut pinned = vec![false; domain_len];
        let mut confined = vec![None; domain_len];
        match self {
            Anchors::Free => {}
            Anchors::Pinned(points) => {
                for &p in points {
                    if p >= domain_len {
                        return Err(Error::input(format!("anchored point {p} is outside the domain")));
                    }
                    pinned[p] = true;
                }
            }
            Anchors::Boundary => {
                let cube = cube.ok_or_else(|| Error::input("boundary anchors need a cube domain"))?;
                for p in cube.boundary() {
                    pinned[p] = true;
                }
            }
            Anchors::Triple(a) => {
                let cube = cube.ok_or_else(|| Error::input("triple anchors need a cube domain"))?;
                let a = Arc::new(a.clone());
                for p in cube.boundary() {
                    confined[p] = Some(a.clone());
                }
                for p in cube.open_box() {
                    pinned[p] = true;
                }
            }
        }
        Ok(Resolved { pinned, confined })
    }

    /// Whether the anchors mean the same thing at every cube side.
    pub fn is_side_independent(&self) -> bool {
        !matches!(self, Anchors::Pinned(_))
    }
}

impl Resolved {
    pub fn free(domain_len: usize) -> Resolved {
        Resolved { pinned: vec![false; domain_len], confined: vec![None; domain_len] }
    }

    pub fn allows(&self, point: usize, value: usize) -> bool {
        self.confined[point].as_ref().is_none_or(|set| set.contains(&value))
    }
}

/// Why two slices fail to be one-step related.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepFailure {
    /// `f(x)` and `g(y)` are unrelated although `x ~ y`.
    Unrelated { x: usize, y: usize },
    /// A pinned point changed value.
    Moved { x: usize },
    /// A confined point left its allowed set.
    Escaped { x: usize },
}

/// First failure of the one-step relation between `f` and `g` over `domain`.
pub fn step_failure(domain: &Space, target: &Space, f: &[usize], g: &[usize], anchors: &Resolved) -> Option<StepFailure> {
    for x in 0..domain.len() {
        if anchors.pinned[x] && f[x] != g[x] {
            return Some(StepFailure::Moved { x });
        }
        if !anchors.allows(x, f[x]) || !anchors.allows(x, g[x]) {
            return Some(StepFailure::Escaped { x });
        }
    }
    for (x, y) in domain.roof_indices() {
        if !target.related(f[x], g[y]) {
            return Some(StepFailure::Unrelated { x, y });
        }
    }
    None
}

/// One-step relation between two cube maps with the given anchors.
pub fn one_step_related(f: &CubeMap, g: &CubeMap, anchors: &Anchors) -> Result<bool> {
    if f.cube() != g.cube() || *f.target() != *g.target() {
        return Err(Error::input("one-step comparison needs the same cube and target"));
    }
    let cube = f.cube();
    let resolved = anchors.resolve(cube.len(), Some(cube))?;
    Ok(step_failure(&cube.space(), f.target(), f.grid(), g.grid(), &resolved).is_none())
}

/// One-step relation between two vertex maps on the same source and target.
pub fn one_step_related_maps(f: &VertexMap, g: &VertexMap, anchors: &Anchors) -> Result<bool> {
    if *f.source() != *g.source() || *f.target() != *g.target() {
        return Err(Error::input("one-step comparison needs the same source and target"));
    }
    let resolved = anchors.resolve(f.source().len(), None)?;
    Ok(step_failure(f.source(), f.target(), f.table(), g.table(), &resolved).is_none())
}

/// A finite homotopy certificate: slices `H(·, 0), ..., H(·, T)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Homotopy {
    domain: Arc<Space>,
    target: Arc<Space>,
    cube: Option<Cube>,
    anchors: Anchors,
    slices: Vec<Vec<usize>>,
}

/// Location of the first broken link in a homotopy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyFailure {
    /// Either a slice index that is not bornologous (`next == None`), or the
    /// pair `(slice, slice + 1)` that is not one-step related.
    pub slice: usize,
    pub next: Option<usize>,
    pub detail: String,
}

impl Homotopy {
    pub fn from_cube_maps(slices: Vec<CubeMap>, anchors: Anchors) -> Result<Homotopy> {
        let first = slices.first().ok_or_else(|| Error::input("a homotopy needs at least one slice"))?;
        let (cube, target) = (first.cube(), first.target().clone());
        for (k, s) in slices.iter().enumerate() {
            if s.cube() != cube {
                return Err(Error::input(format!("slice {k} lives on a different cube")));
            }
            if **s.target() != *target {
                return Err(Error::input(format!("slice {k} maps into a different space")));
            }
        }
        anchors.resolve(cube.len(), Some(cube))?;
        Ok(Homotopy {
            domain: Arc::new(cube.space()),
            target,
            cube: Some(cube),
            anchors,
            slices: slices.into_iter().map(|s| s.grid().to_vec()).collect(),
        })
    }

    pub fn from_vertex_maps(slices: Vec<VertexMap>, anchors: Anchors) -> Result<Homotopy> {
        let first = slices.first().ok_or_else(|| Error::input("a homotopy needs at least one slice"))?;
        let (domain, target) = (first.source().clone(), first.target().clone());
        for (k, s) in slices.iter().enumerate() {
            if **s.source() != *domain || **s.target() != *target {
                return Err(Error::input(format!("slice {k} has a different source or target")));
            }
        }
        anchors.resolve(domain.len(), None)?;
        Ok(Homotopy {
            domain,
            target,
            cube: None,
            anchors,
            slices: slices.into_iter().map(|s| s.table().to_vec()).collect(),
        })
    }

    pub(crate) fn from_grids(
        domain: Arc<Space>,
        target: Arc<Space>,
        cube: Option<Cube>,
        anchors: Anchors,
        slices: Vec<Vec<usize>>,
    ) -> Homotopy {
        Homotopy { domain, target, cube, anchors, slices }
    }

    pub fn len(&self) -> usize {
        self.slices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty()
    }

    pub fn cube(&self) -> Option<Cube> {
        self.cube
    }

    pub fn domain(&self) -> &Arc<Space> {
        &self.domain
    }

    pub fn target(&self) -> &Arc<Space> {
        &self.target
    }

    pub fn anchors(&self) -> &Anchors {
        &self.anchors
    }

    pub fn grids(&self) -> &[Vec<usize>] {
        &self.slices
    }

    pub fn cube_slice(&self, k: usize) -> Option<CubeMap> {
        let cube = self.cube?;
        CubeMap::unchecked(cube, self.target.clone(), self.slices[k].clone()).ok()
    }

    pub fn vertex_slice(&self, k: usize) -> VertexMap {
        VertexMap::from_indices(self.domain.clone(), self.target.clone(), self.slices[k].clone())
            .expect("slices are shape-checked")
    }

    /// First broken link, or `None` for a valid certificate.
    pub fn first_failure(&self) -> Option<HomotopyFailure> {
        let resolved = self
            .anchors
            .resolve(self.domain.len(), self.cube)
            .expect("anchors validated at construction");
        let name = |x: usize| -> &Vertex { self.domain.vertex(x) };
        let value = |s: usize, x: usize| -> &Vertex { self.target.vertex(self.slices[s][x]) };
        for (k, s) in self.slices.iter().enumerate() {
            if let Some((x, y)) = self.domain.roof_indices().find(|&(x, y)| !self.target.related(s[x], s[y])) {
                return Some(HomotopyFailure {
                    slice: k,
                    next: None,
                    detail: format!(
                        "slice {k} is not bornologous: {} ~ {} map to unrelated {} and {}",
                        name(x),
                        name(y),
                        value(k, x),
                        value(k, y)
                    ),
                });
            }
        }
        for k in 0..self.slices.len().saturating_sub(1) {
            let fail = step_failure(&self.domain, &self.target, &self.slices[k], &self.slices[k + 1], &resolved);
            if let Some(fail) = fail {
                let detail = match fail {
                    StepFailure::Unrelated { x, y } => format!(
                        "slice {k} at {} gives {}, slice {} at {} gives {}; these are unrelated",
                        name(x),
                        value(k, x),
                        k + 1,
                        name(y),
                        value(k + 1, y)
                    ),
                    StepFailure::Moved { x } => format!(
                        "anchored point {} moves from {} to {}",
                        name(x),
                        value(k, x),
                        value(k + 1, x)
                    ),
                    StepFailure::Escaped { x } => format!("point {} leaves its allowed subspace", name(x)),
                };
                return Some(HomotopyFailure { slice: k, next: Some(k + 1), detail });
            }
        }
        None
    }
}

/// True iff every slice is bornologous and consecutive slices are one-step
/// related under the declared anchors.
pub fn verify_homotopy(h: &Homotopy) -> bool {
    h.first_failure().is_none()
}
