//! Finite roofed semi-coarse spaces.
//!
//! A finite roofed semi-coarse structure is the power set of its roof, and the
//! roof of a finite structure is a reflexive symmetric relation. [`Space`]
//! stores exactly that relation, as sorted neighbourhood lists over the
//! naturally ordered vertex set. Every constructor re-establishes the
//! diagonal and symmetry, so the invariants hold for every value of the type.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::vertex::Vertex;

#[derive(Clone)]
pub struct Space {
    vertices: Vec<Vertex>,
    index: HashMap<Vertex, usize>,
    // Sorted; each list contains the vertex itself.
    nbrs: Vec<Vec<usize>>,
}

/// Result of [`Space::coarse_completion`].
#[derive(Debug, Clone, PartialEq)]
pub struct Completion {
    pub space: Space,
    /// Number of `R <- R ∪ R∘R` rounds that strictly enlarged the roof.
    pub iterations: usize,
}

impl Space {
    /// Builds the roofed space whose roof is `pairs` closed under inverses and
    /// the diagonal.
    pub fn new<V, P>(vertices: V, pairs: P) -> Result<Space>
    where
        V: IntoIterator,
        V::Item: Into<Vertex>,
        P: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let names: BTreeSet<Vertex> = vertices.into_iter().map(Into::into).collect();
        let names: Vec<Vertex> = names.into_iter().collect();
        let index: HashMap<Vertex, usize> =
            names.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let mut idx_pairs = Vec::new();
        for (u, v) in pairs {
            let iu = *index
                .get(&u)
                .ok_or_else(|| Error::input(format!("pair ({u}, {v}) references unknown vertex {u}")))?;
            let iv = *index
                .get(&v)
                .ok_or_else(|| Error::input(format!("pair ({u}, {v}) references unknown vertex {v}")))?;
            idx_pairs.push((iu, iv));
        }
        Ok(Space::from_parts(names, index, idx_pairs))
    }

    /// The space generated by a graph: vertices are the edge endpoints plus
    /// `isolated`, the roof is the symmetrised edge set plus the diagonal.
    pub fn from_graph<E, I>(edges: E, isolated: I) -> Space
    where
        E: IntoIterator<Item = (Vertex, Vertex)>,
        I: IntoIterator<Item = Vertex>,
    {
        let edges: Vec<(Vertex, Vertex)> = edges.into_iter().collect();
        let mut names: BTreeSet<Vertex> = isolated.into_iter().collect();
        for (u, v) in &edges {
            names.insert(u.clone());
            names.insert(v.clone());
        }
        Space::new(names, edges).expect("every edge endpoint is a vertex")
    }

    /// Builds from pre-sorted unique names and index pairs.
    pub(crate) fn from_sorted(names: Vec<Vertex>, pairs: impl IntoIterator<Item = (usize, usize)>) -> Space {
        debug_assert!(names.windows(2).all(|w| w[0] < w[1]));
        let index = names.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        Space::from_parts(names, index, pairs)
    }

    fn from_parts(
        vertices: Vec<Vertex>,
        index: HashMap<Vertex, usize>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Space {
        let n = vertices.len();
        let mut nbrs: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        for (u, v) in pairs {
            nbrs[u].push(v);
            nbrs[v].push(u);
        }
        for list in &mut nbrs {
            list.sort_unstable();
            list.dedup();
        }
        Space { vertices, index, nbrs }
    }

    /// Diagonal-only structure on `vertices`.
    pub fn discrete<V>(vertices: V) -> Space
    where
        V: IntoIterator,
        V::Item: Into<Vertex>,
    {
        Space::new(vertices, std::iter::empty()).expect("no pairs")
    }

    /// Complete relation on `vertices`; the maximal (coarse, connected) structure.
    pub fn complete<V>(vertices: V) -> Space
    where
        V: IntoIterator,
        V::Item: Into<Vertex>,
    {
        let names: BTreeSet<Vertex> = vertices.into_iter().map(Into::into).collect();
        let n = names.len();
        let pairs = (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
        Space::from_sorted(names.into_iter().collect(), pairs)
    }

    /// The cyclic space `C_n^m` on vertices `0..n`: `k` is related to every
    /// `k ± i mod n` for `1 <= i <= m`.
    pub fn cyclic(n: usize, m: usize) -> Space {
        let mut edges = Vec::new();
        for k in 0..n {
            for i in 1..=m {
                edges.push((Vertex::from(k), Vertex::from((k + i) % n)));
            }
        }
        Space::from_graph(edges, (0..n).map(Vertex::from))
    }

    /// Path graph `0 - 1 - ... - len`.
    pub fn path(len: usize) -> Space {
        let edges = (0..len).map(|k| (Vertex::from(k), Vertex::from(k + 1)));
        Space::from_graph(edges, std::iter::once(Vertex::from(0usize)))
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub fn index_of(&self, v: &Vertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub(crate) fn require_index(&self, v: &Vertex) -> Result<usize> {
        self.index_of(v)
            .ok_or_else(|| Error::input(format!("unknown vertex {v}")))
    }

    /// Closed neighbourhood of `i` in the roof, sorted, including `i`.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.nbrs[i]
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.nbrs[i].binary_search(&j).is_ok()
    }

    pub fn contains_pair(&self, u: &Vertex, v: &Vertex) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(i), Some(j)) => self.related(i, j),
            _ => false,
        }
    }

    /// Roof pairs in lexicographic order of indices (= natural vertex order).
    pub fn roof_indices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.nbrs
            .iter()
            .enumerate()
            .flat_map(|(i, list)| list.iter().map(move |&j| (i, j)))
    }

    pub fn roof(&self) -> impl Iterator<Item = (&Vertex, &Vertex)> + '_ {
        self.roof_indices()
            .map(|(i, j)| (&self.vertices[i], &self.vertices[j]))
    }

    pub fn roof_size(&self) -> usize {
        self.nbrs.iter().map(Vec::len).sum()
    }

    /// Undirected off-diagonal edges `(i, j)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.roof_indices().filter(|(i, j)| i < j)
    }

    pub fn is_complete(&self) -> bool {
        self.nbrs.iter().all(|l| l.len() == self.len())
    }

    /// Restriction of the roof to `subset`.
    pub fn subspace<'a, S>(&self, subset: S) -> Result<Space>
    where
        S: IntoIterator<Item = &'a Vertex>,
    {
        let mut keep = BTreeSet::new();
        for v in subset {
            keep.insert(self.require_index(v)?);
        }
        let old: Vec<usize> = keep.into_iter().collect();
        let mut new_of = vec![usize::MAX; self.len()];
        for (k, &i) in old.iter().enumerate() {
            new_of[i] = k;
        }
        let names = old.iter().map(|&i| self.vertices[i].clone()).collect();
        let mut pairs = Vec::new();
        for (k, &i) in old.iter().enumerate() {
            for &j in &self.nbrs[i] {
                if new_of[j] != usize::MAX {
                    pairs.push((k, new_of[j]));
                }
            }
        }
        Ok(Space::from_sorted(names, pairs))
    }

    /// Categorical product: vertices `u|v`, roof `roof(X) ⊠ roof(Y)`.
    pub fn product(&self, other: &Space) -> Space {
        let mut cells: Vec<(Vertex, usize, usize)> = Vec::with_capacity(self.len() * other.len());
        for (a, u) in self.vertices.iter().enumerate() {
            for (b, v) in other.vertices.iter().enumerate() {
                cells.push((Vertex::pair(u, v), a, b));
            }
        }
        // "u|v" names need not sort like the index pairs do.
        cells.sort_by(|x, y| x.0.cmp(&y.0));
        let mut pos = vec![0usize; self.len() * other.len()];
        for (k, (_, a, b)) in cells.iter().enumerate() {
            pos[a * other.len() + b] = k;
        }
        let mut pairs = Vec::with_capacity(self.roof_size() * other.roof_size());
        for (k, (_, a, b)) in cells.iter().enumerate() {
            for &c in &self.nbrs[*a] {
                for &d in &other.nbrs[*b] {
                    pairs.push((k, pos[c * other.len() + d]));
                }
            }
        }
        Space::from_sorted(cells.into_iter().map(|c| c.0).collect(), pairs)
    }

    /// Quotient by `g`, onto its image.
    pub fn quotient(&self, g: &BTreeMap<Vertex, Vertex>) -> Result<Space> {
        self.quotient_onto(g, None)
    }

    /// Quotient structure on `codomain` induced by `g`: roof `(g×g)(roof(X))`.
    /// With an explicit codomain, `g` must be surjective onto it.
    pub fn quotient_onto(&self, g: &BTreeMap<Vertex, Vertex>, codomain: Option<&[Vertex]>) -> Result<Space> {
        let mut image = Vec::with_capacity(self.len());
        for v in &self.vertices {
            let w = g
                .get(v)
                .ok_or_else(|| Error::input(format!("quotient map is not defined on {v}")))?;
            image.push(w.clone());
        }
        for k in g.keys() {
            if self.index_of(k).is_none() {
                return Err(Error::input(format!("quotient map is defined on unknown vertex {k}")));
            }
        }
        let targets: BTreeSet<Vertex> = match codomain {
            Some(cod) => {
                let cod: BTreeSet<Vertex> = cod.iter().cloned().collect();
                for w in &image {
                    if !cod.contains(w) {
                        return Err(Error::input(format!("quotient map value {w} is outside the codomain")));
                    }
                }
                let hit: BTreeSet<&Vertex> = image.iter().collect();
                if let Some(missed) = cod.iter().find(|w| !hit.contains(w)) {
                    return Err(Error::input(format!("quotient map is not surjective: {missed} has no preimage")));
                }
                cod
            }
            None => image.iter().cloned().collect(),
        };
        let names: Vec<Vertex> = targets.into_iter().collect();
        let index: HashMap<&Vertex, usize> = names.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let img: Vec<usize> = image.iter().map(|w| index[w]).collect();
        let pairs: Vec<(usize, usize)> = self.roof_indices().map(|(i, j)| (img[i], img[j])).collect();
        Ok(Space::from_sorted(names, pairs))
    }

    /// Disjoint union; the `i`-th summand's vertices are tagged `i:u`.
    pub fn disjoint_union(spaces: &[Space]) -> Space {
        let mut names = Vec::new();
        let mut pairs_by_name = Vec::new();
        for (tag, s) in spaces.iter().enumerate() {
            let tagged: Vec<Vertex> = s.vertices.iter().map(|v| Vertex::tagged(tag, v)).collect();
            for (i, j) in s.roof_indices() {
                pairs_by_name.push((tagged[i].clone(), tagged[j].clone()));
            }
            names.extend(tagged);
        }
        Space::new(names, pairs_by_name).expect("tagged pairs reference tagged vertices")
    }

    /// One round of the set product extension: roof ∘ roof.
    pub fn set_product_extension(&self) -> Space {
        let rows = BitRows::from_space(self);
        let composed = rows.compose(&rows);
        Space::from_sorted(self.vertices.clone(), composed.pairs())
    }

    /// Least fixpoint of the set product extension containing the roof,
    /// iterating `R <- R ∪ R∘R`.
    pub fn coarse_completion(&self) -> Completion {
        let mut rows = BitRows::from_space(self);
        let mut iterations = 0;
        loop {
            let next = rows.union(&rows.compose(&rows));
            if next == rows {
                break;
            }
            rows = next;
            iterations += 1;
        }
        Completion {
            space: Space::from_sorted(self.vertices.clone(), rows.pairs()),
            iterations,
        }
    }

    /// True iff the roof is closed under composition, i.e. the structure is coarse.
    pub fn is_coarse(&self) -> bool {
        let rows = BitRows::from_space(self);
        rows.compose(&rows) == rows
    }

    /// Connected components of the roof as an undirected graph, each sorted,
    /// ordered by their least vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.component_indices()
            .into_iter()
            .map(|c| c.into_iter().map(|i| self.vertices[i].clone()).collect())
            .collect()
    }

    pub fn component_indices(&self) -> Vec<Vec<usize>> {
        let labels = self.component_labels();
        let count = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); count];
        for (i, &c) in labels.iter().enumerate() {
            out[c].push(i);
        }
        out
    }

    /// Component label per vertex; labels are numbered by least member.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.len()];
        let mut next = 0;
        for start in 0..self.len() {
            if label[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            label[start] = next;
            while let Some(i) = stack.pop() {
                for &j in &self.nbrs[i] {
                    if label[j] == usize::MAX {
                        label[j] = next;
                        stack.push(j);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// A shortest roof path from `from` to `to`, endpoints included.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.len()];
        let mut queue = std::collections::VecDeque::from([from]);
        prev[from] = from;
        while let Some(i) = queue.pop_front() {
            if i == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &j in &self.nbrs[i] {
                if prev[j] == usize::MAX {
                    prev[j] = i;
                    queue.push_back(j);
                }
            }
        }
        None
    }
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.nbrs == other.nbrs
    }
}

impl Eq for Space {}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .edges()
            .map(|(i, j)| format!("{}~{}", self.vertices[i], self.vertices[j]))
            .collect();
        f.debug_struct("Space")
            .field("vertices", &self.vertices)
            .field("edges", &pairs)
            .finish()
    }
}

/// Dense boolean relation used for composition closures.
#[derive(Clone, PartialEq, Eq)]
struct BitRows {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitRows {
    fn from_space(space: &Space) -> BitRows {
        let n = space.len();
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        for (i, j) in space.roof_indices() {
            bits[i * words + j / 64] |= 1 << (j % 64);
        }
        BitRows { n, words, bits }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// `{(x, z) : ∃y. (x, y) ∈ self, (y, z) ∈ other}`
    fn compose(&self, other: &BitRows) -> BitRows {
        let mut out = BitRows { n: self.n, words: self.words, bits: vec![0; self.bits.len()] };
        for x in 0..self.n {
            for y in 0..self.n {
                if self.get(x, y) {
                    let src = other.row(y);
                    let dst = &mut out.bits[x * self.words..(x + 1) * self.words];
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d |= *s;
                    }
                }
            }
        }
        out
    }

    fn union(&self, other: &BitRows) -> BitRows {
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect();
        BitRows { n: self.n, words: self.words, bits }
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}
