mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use common::{graph, greedy_bornologous, space_strategy};
use proptest::prelude::*;
use semicoarse::{roof_foundation_roundtrip, Space, Vertex, VertexMap};

fn reflexive_symmetric(s: &Space) -> bool {
    (0..s.len()).all(|i| s.related(i, i)) && s.roof_indices().all(|(i, j)| s.related(j, i))
}

/// Closure of the roof under composition by Warshall's algorithm.
fn warshall(s: &Space) -> Vec<Vec<bool>> {
    let n = s.len();
    let mut r: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| s.related(i, j)).collect()).collect();
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn constructors_are_reflexive_and_symmetric(a in space_strategy(1, 6), b in space_strategy(1, 4)) {
        prop_assert!(reflexive_symmetric(&a));
        prop_assert!(reflexive_symmetric(&a.product(&b)));
        prop_assert!(reflexive_symmetric(&Space::disjoint_union(&[a.clone(), b.clone()])));
        prop_assert!(reflexive_symmetric(&a.coarse_completion().space));
        prop_assert!(reflexive_symmetric(&a.set_product_extension()));
    }

    #[test]
    fn subspace_restricts_roof(s in space_strategy(1, 7), mask in prop::collection::vec(any::<bool>(), 7)) {
        let keep: Vec<Vertex> = s.vertices().iter().zip(&mask).filter(|(_, &k)| k).map(|(v, _)| v.clone()).collect();
        let sub = s.subspace(keep.iter()).unwrap();
        prop_assert_eq!(sub.len(), keep.len());
        for u in &keep {
            for v in &keep {
                prop_assert_eq!(sub.contains_pair(u, v), s.contains_pair(u, v));
            }
        }
    }

    #[test]
    fn product_roof_is_coordinatewise(a in space_strategy(1, 4), b in space_strategy(1, 4)) {
        let p = a.product(&b);
        prop_assert_eq!(p.len(), a.len() * b.len());
        prop_assert_eq!(p.roof_size(), a.roof_size() * b.roof_size());
        for (x, u) in a.vertices().iter().enumerate() {
            for (y, v) in b.vertices().iter().enumerate() {
                for (x2, u2) in a.vertices().iter().enumerate() {
                    for (y2, v2) in b.vertices().iter().enumerate() {
                        let related = p.contains_pair(&Vertex::pair(u, v), &Vertex::pair(u2, v2));
                        prop_assert_eq!(related, a.related(x, x2) && b.related(y, y2));
                    }
                }
            }
        }
    }

    #[test]
    fn product_is_associative(a in space_strategy(1, 3), b in space_strategy(1, 3), c in space_strategy(1, 3)) {
        prop_assert_eq!(a.product(&b).product(&c), a.product(&b.product(&c)));
    }

    #[test]
    fn union_keeps_summands_apart(a in space_strategy(1, 5), b in space_strategy(1, 5)) {
        let u = Space::disjoint_union(&[a.clone(), b.clone()]);
        prop_assert_eq!(u.len(), a.len() + b.len());
        prop_assert_eq!(u.roof_size(), a.roof_size() + b.roof_size());
        for v in a.vertices() {
            for w in b.vertices() {
                prop_assert!(!u.contains_pair(&Vertex::tagged(0, v), &Vertex::tagged(1, w)));
            }
        }
    }

    #[test]
    fn quotient_universal_property(
        s in space_strategy(2, 6),
        fibre in prop::collection::vec(0usize..3, 6),
        values in prop::collection::vec(0usize..4, 3),
    ) {
        let n = s.len();
        let g: BTreeMap<Vertex, Vertex> = (0..n)
            .map(|i| (s.vertex(i).clone(), Vertex::from(format!("q{}", fibre[i]))))
            .collect();
        let q = Arc::new(s.quotient(&g).unwrap());
        let s = Arc::new(s);
        let g_map = VertexMap::new(s.clone(), q.clone(), &g).unwrap();
        prop_assert!(g_map.is_bornologous());
        // h is constant on the fibres of g by construction.
        let z = Arc::new(Space::cyclic(4, 1));
        let h_table: Vec<usize> = (0..n).map(|i| values[fibre[i]]).collect();
        let h = VertexMap::from_indices(s.clone(), z.clone(), h_table).unwrap();
        let induced: BTreeMap<Vertex, Vertex> = (0..n)
            .map(|i| (g[s.vertex(i)].clone(), z.vertex(h.apply(i)).clone()))
            .collect();
        let h_bar = VertexMap::new(q, z, &induced).unwrap();
        prop_assert_eq!(h_bar.is_bornologous(), h.is_bornologous());
        let composed = g_map.then(&h_bar).unwrap();
        prop_assert_eq!(composed.table(), h.table());
    }

    #[test]
    fn bornologous_maps_compose(
        a in space_strategy(1, 5),
        b in space_strategy(1, 5),
        c in space_strategy(1, 5),
        ch in prop::collection::vec(0usize..8, 10),
    ) {
        let (a, b, c) = (Arc::new(a), Arc::new(b), Arc::new(c));
        let f = greedy_bornologous(&a, &b, &ch);
        let g = greedy_bornologous(&b, &c, &ch[5..]);
        prop_assert!(f.is_bornologous() && g.is_bornologous());
        prop_assert!(f.then(&g).unwrap().is_bornologous());
    }

    #[test]
    fn completion_matches_transitive_closure(s in space_strategy(1, 8)) {
        let done = s.coarse_completion();
        let oracle = warshall(&s);
        for i in 0..s.len() {
            for j in 0..s.len() {
                prop_assert_eq!(done.space.related(i, j), oracle[i][j]);
            }
        }
        prop_assert!(done.space.is_coarse());
        prop_assert_eq!(done.space.coarse_completion().iterations, 0);
        prop_assert_eq!(done.space.coarse_completion().space, done.space.clone());
        // Each round at least squares reach, so the rounds are logarithmic.
        prop_assert!(done.iterations <= 3);
        // The completion dominates every iterate of the set product extension.
        let mut it = s.clone();
        for _ in 0..3 {
            it = it.set_product_extension();
            prop_assert!(it.roof_indices().all(|(i, j)| done.space.related(i, j)));
        }
        // Complete on each component.
        for comp in s.component_indices() {
            for &i in &comp {
                for &j in &comp {
                    prop_assert!(done.space.related(i, j));
                }
            }
        }
    }

    #[test]
    fn roof_foundation_roundtrip_is_identity(s in space_strategy(1, 8)) {
        prop_assert_eq!(roof_foundation_roundtrip(&s), s);
    }

    #[test]
    fn components_partition_vertices(s in space_strategy(1, 8)) {
        let comps = s.component_indices();
        let all: BTreeSet<usize> = comps.iter().flatten().copied().collect();
        prop_assert_eq!(all.len(), s.len());
        prop_assert_eq!(comps.iter().map(Vec::len).sum::<usize>(), s.len());
        for comp in &comps {
            for &i in comp {
                for &j in comp {
                    prop_assert!(s.shortest_path(i, j).is_some());
                }
            }
        }
    }
}

#[test]
fn cyclic_indexing_matches_residues() {
    let c = Space::cyclic(10, 2);
    for i in 0..10 {
        assert_eq!(c.vertex(i), &Vertex::from(i));
        for j in 0..10 {
            let d = (i as i64 - j as i64).rem_euclid(10).min((j as i64 - i as i64).rem_euclid(10));
            assert_eq!(c.related(i, j), d <= 2);
        }
    }
}

#[test]
fn graph_helper_indexes_naturally() {
    let g = graph(12, &[true; 66]);
    assert!(g.is_complete());
    assert_eq!(g.vertex(11), &Vertex::from(11usize));
}
