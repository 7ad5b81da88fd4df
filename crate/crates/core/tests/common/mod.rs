#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use semicoarse::homotopy::{Cube, CubeMap};
use semicoarse::{Space, Vertex, VertexMap};

/// Graph on `0..n` with the edges selected by `bits` (upper triangle, row by row).
pub fn graph(n: usize, bits: &[bool]) -> Space {
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if bits.get(k).copied().unwrap_or(false) {
                edges.push((Vertex::from(i), Vertex::from(j)));
            }
            k += 1;
        }
    }
    Space::from_graph(edges, (0..n).map(Vertex::from))
}

pub fn space_strategy(min: usize, max: usize) -> impl Strategy<Value = Space> {
    (min..=max).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| graph(n, &bits))
    })
}

/// A bornologous map built greedily: each vertex in order picks, from the
/// candidates compatible with its already-placed neighbours, the one at
/// position `choice % len`. Falls back to a constant map if stuck.
pub fn greedy_bornologous(source: &Arc<Space>, target: &Arc<Space>, choices: &[usize]) -> VertexMap {
    let n = source.len();
    let mut table = vec![usize::MAX; n];
    for x in 0..n {
        let cands: Vec<usize> = (0..target.len())
            .filter(|&c| {
                source
                    .neighbors(x)
                    .iter()
                    .all(|&y| table[y] == usize::MAX || target.related(table[y], c))
            })
            .collect();
        if cands.is_empty() {
            return VertexMap::constant(source.clone(), target.clone(), 0).unwrap();
        }
        table[x] = cands[choices.get(x).copied().unwrap_or(0) % cands.len()];
    }
    VertexMap::from_indices(source.clone(), target.clone(), table).unwrap()
}

pub fn c(n: usize) -> Arc<Space> {
    Arc::new(Space::cyclic(n, 1))
}

/// Based loop in `target` through `steps` (each -1, 0 or +1 modulo n) that
/// is closed up by the shortest way back to 0.
pub fn loop_from_steps(target: &Arc<Space>, steps: &[i8]) -> CubeMap {
    let n = target.len() as i64;
    let mut path = vec![0i64];
    for &s in steps {
        path.push((path.last().unwrap() + s as i64).rem_euclid(n));
    }
    let mut last = *path.last().unwrap();
    while last != 0 {
        last = if last <= n / 2 { last - 1 } else { (last + 1) % n };
        path.push(last);
    }
    let values: Vec<usize> = path.into_iter().map(|v| v as usize).collect();
    CubeMap::path(target.clone(), &values).unwrap()
}

pub fn cube_map_identity_table(cube: Cube) -> BTreeMap<Vertex, Vertex> {
    (0..cube.len())
        .map(|i| {
            let v = Vertex::coords(&cube.point(i));
            (v.clone(), v)
        })
        .collect()
}
