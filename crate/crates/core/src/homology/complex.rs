//! Clique complexes of roofs and their integral homology.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::homology::matrix::IntegerMatrix;
use crate::space::Space;

pub const DEFAULT_MAX_DIM: usize = 3;

/// Ascending vertex-index tuples of the cliques of a roof, per dimension.
#[derive(Debug, Clone)]
pub struct CliqueComplex {
    space: Arc<Space>,
    max_dim: usize,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl CliqueComplex {
    /// All cliques of the off-diagonal roof with at most `max_dim + 1`
    /// vertices, each dimension in lexicographic order.
    pub fn build(space: Arc<Space>, max_dim: usize) -> CliqueComplex {
        let mut simplices = vec![Vec::new(); max_dim + 1];
        let higher: Vec<Vec<usize>> = (0..space.len())
            .map(|v| space.neighbors(v).iter().copied().filter(|&w| w > v).collect())
            .collect();
        // Depth-first expansion in ascending order visits tuples in
        // lexicographic order within each dimension.
        fn expand(
            clique: &mut Vec<usize>,
            cands: &[usize],
            higher: &[Vec<usize>],
            max_dim: usize,
            out: &mut [Vec<Vec<usize>>],
        ) {
            out[clique.len() - 1].push(clique.clone());
            if clique.len() > max_dim {
                return;
            }
            for (i, &w) in cands.iter().enumerate() {
                let next: Vec<usize> = cands[i + 1..]
                    .iter()
                    .copied()
                    .filter(|x| higher[w].binary_search(x).is_ok())
                    .collect();
                clique.push(w);
                expand(clique, &next, higher, max_dim, out);
                clique.pop();
            }
        }
        for v in 0..space.len() {
            let mut clique = vec![v];
            expand(&mut clique, &higher[v], &higher, max_dim, &mut simplices);
        }
        let index = simplices
            .iter()
            .map(|s| s.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect())
            .collect();
        CliqueComplex { space, max_dim, simplices, index }
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// The `q`-simplices, or an empty slice beyond the cap.
    pub fn simplices(&self, q: usize) -> &[Vec<usize>] {
        self.simplices.get(q).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, q: usize) -> usize {
        self.simplices(q).len()
    }

    /// Position of an ascending tuple in its dimension's basis.
    pub fn position(&self, simplex: &[usize]) -> Option<usize> {
        let q = simplex.len().checked_sub(1)?;
        self.index.get(q)?.get(simplex).copied()
    }

    /// Matrix of `∂_q: C_q -> C_{q-1}` in the lexicographic bases.
    pub fn boundary(&self, q: usize) -> Result<IntegerMatrix> {
        if q == 0 || q > self.max_dim {
            return Err(Error::input(format!(
                "boundary ∂_{q} is defined for 1 <= q <= {}",
                self.max_dim
            )));
        }
        Ok(self.boundary_unchecked(q))
    }

    fn boundary_unchecked(&self, q: usize) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.count(q - 1), self.count(q));
        for (c, s) in self.simplices(q).iter().enumerate() {
            let mut face = Vec::with_capacity(q);
            for i in 0..=q {
                face.clear();
                face.extend(s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v));
                let r = self.position(&face).expect("faces of cliques are cliques");
                m.add_to(r, c, if i % 2 == 0 { 1 } else { -1 });
            }
        }
        m
    }
}

/// `H_q ≅ Z^betti ⊕ ⊕ Z/t` for `t` in `torsion`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub dim: usize,
    pub betti: usize,
    pub torsion: Vec<BigInt>,
    /// At the cap dimension `∂_{q+1}` is not computed, so `betti` is an upper
    /// bound and torsion is not reported.
    pub cap_limited: bool,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// Homology in dimensions `0..=max_dim` from the ranks and invariant
/// factors of the boundary matrices. `counts[q]` is the rank of `C_q` and
/// `factors[q]` the invariant factors of `∂_q` (`factors[0]` unused).
pub(crate) fn groups_from_factors(counts: &[usize], factors: &[Vec<BigInt>], max_dim: usize, exact_top: bool) -> Vec<HomologyGroup> {
    (0..=max_dim)
        .map(|q| {
            let rank_out = if q == 0 { 0 } else { factors[q].len() };
            let into = factors.get(q + 1);
            let rank_in = into.map_or(0, Vec::len);
            let torsion = into
                .map(|f| f.iter().filter(|x| !x.is_one()).cloned().collect())
                .unwrap_or_default();
            HomologyGroup {
                dim: q,
                betti: counts[q] - rank_out - rank_in,
                torsion,
                cap_limited: q == max_dim && !exact_top,
            }
        })
        .collect()
}

/// Integral homology of the clique complex of the roof, dimensions
/// `0..=max_dim`. The top dimension is flagged as cap-limited.
pub fn homology(space: &Space, max_dim: usize) -> Vec<HomologyGroup> {
    homology_of(&CliqueComplex::build(Arc::new(space.clone()), max_dim))
}

pub fn homology_of(complex: &CliqueComplex) -> Vec<HomologyGroup> {
    let max_dim = complex.max_dim();
    let counts: Vec<usize> = (0..=max_dim).map(|q| complex.count(q)).collect();
    let mut factors = vec![Vec::new()];
    for q in 1..=max_dim {
        factors.push(complex.boundary_unchecked(q).invariant_factors());
    }
    groups_from_factors(&counts, &factors, max_dim, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex::Vertex;

    fn bettis(space: &Space, d: usize) -> Vec<usize> {
        homology(space, d).iter().map(|g| g.betti).collect()
    }

    #[test]
    fn simplex_counts() {
        let k3 = CliqueComplex::build(Arc::new(Space::complete(["a", "b", "c"])), 2);
        assert_eq!((k3.count(0), k3.count(1), k3.count(2)), (3, 3, 1));
        let c4 = CliqueComplex::build(Arc::new(Space::cyclic(4, 1)), 2);
        assert_eq!((c4.count(0), c4.count(1), c4.count(2)), (4, 4, 0));
        let d = CliqueComplex::build(Arc::new(Space::discrete(["a", "b"])), 3);
        assert_eq!((d.count(0), d.count(1)), (2, 0));
    }

    #[test]
    fn lexicographic_order() {
        let k4 = CliqueComplex::build(Arc::new(Space::complete(["0", "1", "2", "3"])), 3);
        assert_eq!(k4.simplices(1), &[vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(k4.simplices(2), &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
    }

    #[test]
    fn edge_boundary_sign() {
        let e = CliqueComplex::build(Arc::new(Space::path(1)), 1);
        let d1 = e.boundary(1).unwrap();
        assert_eq!(d1, IntegerMatrix::from_rows(1, &[vec![-1], vec![1]]));
        assert!(e.boundary(0).is_err());
        assert!(e.boundary(2).is_err());
    }

    #[test]
    fn boundary_squares_to_zero_on_k4() {
        let k4 = CliqueComplex::build(Arc::new(Space::complete(["a", "b", "c", "d"])), 3);
        for q in 2..=3 {
            assert!(k4.boundary(q - 1).unwrap().mul(&k4.boundary(q).unwrap()).is_zero());
        }
    }

    #[test]
    fn c4_boundary_rank() {
        let c4 = CliqueComplex::build(Arc::new(Space::cyclic(4, 1)), 2);
        assert_eq!(c4.boundary(1).unwrap().rank(), 3);
    }

    #[test]
    fn homology_examples() {
        assert_eq!(bettis(&Space::discrete(["p"]), 3), vec![1, 0, 0, 0]);
        assert_eq!(bettis(&Space::cyclic(4, 1), 2), vec![1, 1, 0]);
        assert_eq!(bettis(&Space::complete(["0", "1", "2", "3"]), 3), vec![1, 0, 0, 0]);
        assert_eq!(bettis(&Space::complete(["a", "b", "c"]), 2), vec![1, 0, 0]);
        let two = Space::disjoint_union(&[Space::cyclic(4, 1), Space::cyclic(4, 1)]);
        assert_eq!(bettis(&two, 2), vec![2, 2, 0]);
        let h = homology(&Space::cyclic(5, 1), 1);
        assert!(h[1].cap_limited && !h[0].cap_limited);
        assert!(h.iter().all(|g| g.torsion.is_empty()));
    }

    #[test]
    fn octahedron_has_second_homology() {
        // Suspension of C4: the octahedron boundary, a 2-sphere.
        let mut edges = vec![];
        for k in 0..4usize {
            edges.push((Vertex::from(k), Vertex::from((k + 1) % 4)));
            edges.push((Vertex::from(k), Vertex::from("n")));
            edges.push((Vertex::from(k), Vertex::from("s")));
        }
        let s = Space::from_graph(edges, []);
        assert_eq!(bettis(&s, 3), vec![1, 0, 1, 0]);
    }
}
