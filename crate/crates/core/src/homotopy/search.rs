//! Breadth-first search for homotopies at a fixed domain.
//!
//! States are bornologous maps respecting the anchors; edges are the one-step
//! relation. Neighbours are generated in lexicographic grid order, so the
//! certificate returned for given inputs is always the same shortest chain.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homotopy::cube::CubeMap;
use crate::homotopy::relation::{step_failure, Anchors, Homotopy, Resolved};
use crate::map::VertexMap;
use crate::space::Space;

pub const DEFAULT_NODE_BUDGET: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of distinct maps visited.
    pub node_budget: usize,
    /// After a `Distinct` verdict on cube maps, repeat the search with both
    /// maps clamped to twice the side.
    pub revalidate: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { node_budget: DEFAULT_NODE_BUDGET, revalidate: true }
    }
}

impl SearchOptions {
    pub fn fixed_side(node_budget: usize) -> Self {
        SearchOptions { node_budget, revalidate: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Revalidation {
    NotRequested,
    /// The doubled side was searched exhaustively without a connection.
    Confirmed { side: usize },
    /// The doubled side exceeded the budget.
    Inconclusive { side: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum SearchOutcome {
    /// A verified chain from the first map to the second. For cube maps the
    /// chain may live on a doubled side if found during revalidation.
    Homotopic(Homotopy),
    /// The whole reachable component was enumerated without meeting the goal.
    Distinct { visited: usize, revalidation: Revalidation },
    /// The node budget ran out first.
    Exhausted { visited: usize },
}

impl SearchOutcome {
    pub fn certificate(&self) -> Option<&Homotopy> {
        match self {
            SearchOutcome::Homotopic(h) => Some(h),
            _ => None,
        }
    }
}

/// Search for a homotopy between two cube maps under the given anchors.
pub fn homotopic_search(f: &CubeMap, g: &CubeMap, anchors: &Anchors, options: SearchOptions) -> Result<SearchOutcome> {
    if f.cube() != g.cube() || *f.target() != *g.target() {
        return Err(Error::input("search needs maps on the same cube into the same space"));
    }
    let cube = f.cube();
    let domain = Arc::new(cube.space());
    let resolved = anchors.resolve(cube.len(), Some(cube))?;
    let outcome = search_grids(&domain, f.target(), f.grid(), g.grid(), &resolved, options.node_budget)?;
    let outcome = match outcome {
        Found(slices) => {
            return Ok(SearchOutcome::Homotopic(Homotopy::from_grids(
                domain,
                f.target().clone(),
                Some(cube),
                anchors.clone(),
                slices,
            )))
        }
        NotFound(visited) => visited,
        OutOfBudget(visited) => return Ok(SearchOutcome::Exhausted { visited }),
    };
    if !options.revalidate || !anchors.is_side_independent() {
        return Ok(SearchOutcome::Distinct { visited: outcome, revalidation: Revalidation::NotRequested });
    }
    let side = (2 * cube.side()).max(1);
    let (f2, g2) = (f.clamp(side)?, g.clamp(side)?);
    let inner = SearchOptions { revalidate: false, ..options };
    Ok(match homotopic_search(&f2, &g2, anchors, inner)? {
        found @ SearchOutcome::Homotopic(_) => found,
        SearchOutcome::Distinct { .. } => SearchOutcome::Distinct {
            visited: outcome,
            revalidation: Revalidation::Confirmed { side },
        },
        SearchOutcome::Exhausted { .. } => SearchOutcome::Distinct {
            visited: outcome,
            revalidation: Revalidation::Inconclusive { side },
        },
    })
}

/// Search for a homotopy between two vertex maps with a shared source.
pub fn homotopic_search_maps(f: &VertexMap, g: &VertexMap, anchors: &Anchors, node_budget: usize) -> Result<SearchOutcome> {
    if *f.source() != *g.source() || *f.target() != *g.target() {
        return Err(Error::input("search needs maps with the same source and target"));
    }
    let resolved = anchors.resolve(f.source().len(), None)?;
    Ok(match search_grids(f.source(), f.target(), f.table(), g.table(), &resolved, node_budget)? {
        Found(slices) => SearchOutcome::Homotopic(Homotopy::from_grids(
            f.source().clone(),
            f.target().clone(),
            None,
            anchors.clone(),
            slices,
        )),
        NotFound(visited) => SearchOutcome::Distinct { visited, revalidation: Revalidation::NotRequested },
        OutOfBudget(visited) => SearchOutcome::Exhausted { visited },
    })
}

enum Raw {
    Found(Vec<Vec<usize>>),
    NotFound(usize),
    OutOfBudget(usize),
}
use Raw::*;

fn search_grids(
    domain: &Space,
    target: &Space,
    start: &[usize],
    goal: &[usize],
    anchors: &Resolved,
    budget: usize,
) -> Result<Raw> {
    if budget == 0 {
        return Err(Error::input("node budget must be positive"));
    }
    for (name, map) in [("first", start), ("second", goal)] {
        if let Some((x, y)) = domain.roof_indices().find(|&(x, y)| !target.related(map[x], map[y])) {
            return Err(Error::precondition(
                format!("{name} map is not bornologous"),
                format!("{} ~ {} map to unrelated vertices", domain.vertex(x), domain.vertex(y)),
            ));
        }
    }
    for x in 0..domain.len() {
        if anchors.pinned[x] && start[x] != goal[x] {
            return Err(Error::precondition(
                "maps disagree on an anchored point",
                format!("{}", domain.vertex(x)),
            ));
        }
        if !anchors.allows(x, start[x]) || !anchors.allows(x, goal[x]) {
            return Err(Error::precondition(
                "a map leaves its allowed subspace",
                format!("{}", domain.vertex(x)),
            ));
        }
    }
    if start == goal {
        return Ok(Found(vec![start.to_vec()]));
    }

    let mut parent: Vec<usize> = vec![usize::MAX];
    let mut states: Vec<Box<[usize]>> = vec![start.into()];
    let mut seen: HashMap<Box<[usize]>, usize> = HashMap::from([(Box::from(start), 0)]);
    let mut queue = VecDeque::from([0usize]);
    let mut buffer = Vec::new();
    let mut enumerator = NeighborEnumerator::new(domain, target, anchors);

    while let Some(cur) = queue.pop_front() {
        if step_failure(domain, target, &states[cur], goal, anchors).is_none() {
            let mut chain = vec![goal.to_vec()];
            let mut k = cur;
            while k != usize::MAX {
                chain.push(states[k].to_vec());
                k = parent[k];
            }
            chain.reverse();
            return Ok(Found(chain));
        }
        buffer.clear();
        enumerator.all(&states[cur], &mut buffer);
        for next in buffer.drain(..) {
            if seen.contains_key(&next) {
                continue;
            }
            if states.len() >= budget {
                return Ok(OutOfBudget(states.len()));
            }
            let id = states.len();
            seen.insert(next.clone(), id);
            states.push(next);
            parent.push(cur);
            queue.push_back(id);
        }
    }
    Ok(NotFound(states.len()))
}

/// Enumerates, in lexicographic order, every bornologous map one-step related
/// to a given map and compatible with the anchors.
pub(crate) struct NeighborEnumerator<'a> {
    domain: &'a Space,
    target: &'a Space,
    anchors: &'a Resolved,
    // Earlier-indexed domain neighbours of each point.
    before: Vec<Vec<usize>>,
}

impl<'a> NeighborEnumerator<'a> {
    pub(crate) fn new(domain: &'a Space, target: &'a Space, anchors: &'a Resolved) -> Self {
        let before = (0..domain.len())
            .map(|x| domain.neighbors(x).iter().copied().filter(|&y| y < x).collect())
            .collect();
        NeighborEnumerator { domain, target, anchors, before }
    }

    fn candidates(&self, f: &[usize], x: usize) -> Vec<usize> {
        if self.anchors.pinned[x] {
            return vec![f[x]];
        }
        let mut cands: Vec<usize> = self.target.neighbors(f[x]).to_vec();
        for &y in self.domain.neighbors(x) {
            let ny = self.target.neighbors(f[y]);
            cands.retain(|c| ny.binary_search(c).is_ok());
        }
        cands.retain(|&c| self.anchors.allows(x, c));
        cands
    }

    pub(crate) fn all(&mut self, f: &[usize], out: &mut Vec<Box<[usize]>>) {
        let n = self.domain.len();
        let cands: Vec<Vec<usize>> = (0..n).map(|x| self.candidates(f, x)).collect();
        if cands.iter().any(Vec::is_empty) {
            return;
        }
        let mut g = vec![0usize; n];
        let mut choice = vec![0usize; n];
        let mut x = 0;
        // Iterative backtracking over positions in index order.
        loop {
            if x == n {
                out.push(g.clone().into_boxed_slice());
                if n == 0 {
                    return;
                }
                x -= 1;
                choice[x] += 1;
                continue;
            }
            let mut placed = false;
            while choice[x] < cands[x].len() {
                let c = cands[x][choice[x]];
                if self.before[x].iter().all(|&y| self.target.related(g[y], c)) {
                    g[x] = c;
                    placed = true;
                    break;
                }
                choice[x] += 1;
            }
            if placed {
                x += 1;
                if x < n {
                    choice[x] = 0;
                }
            } else {
                if x == 0 {
                    return;
                }
                x -= 1;
                choice[x] += 1;
            }
        }
    }
}
