//! Homology from ordered chains, used to cross-check the oriented clique
//! complex.
//!
//! The chain group `C_q` is generated by tuples `(v_0, ..., v_q)` of pairwise
//! related vertices. Tuples with two equal consecutive entries are
//! degenerate and set to zero; they span an acyclic subcomplex, so the
//! quotient computes the same homology. Non-consecutive repeats such as
//! `(a, b, a)` are kept.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::homology::complex::{groups_from_factors, HomologyGroup};
use crate::homology::matrix::IntegerMatrix;
use crate::space::Space;

pub const ORACLE_MAX_VERTICES: usize = 6;
pub const ORACLE_MAX_DIM: usize = 2;

fn ordered_tuples(space: &Space, q: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..space.len()).map(|v| vec![v]).collect();
    for _ in 0..q {
        let mut next = Vec::new();
        for t in &out {
            let last = *t.last().expect("nonempty tuple");
            for w in 0..space.len() {
                if w != last && t.iter().all(|&u| space.related(u, w)) {
                    let mut e = t.clone();
                    e.push(w);
                    next.push(e);
                }
            }
        }
        out = next;
    }
    out
}

/// Homology in dimensions `0..=max_dim` from ordered chains. Every
/// reported dimension is exact: the complex is built one dimension higher.
pub fn ordered_chain_oracle(space: &Space, max_dim: usize) -> Result<Vec<HomologyGroup>> {
    if space.len() > ORACLE_MAX_VERTICES {
        return Err(Error::input(format!(
            "the ordered-chain oracle handles at most {ORACLE_MAX_VERTICES} vertices, got {}",
            space.len()
        )));
    }
    if max_dim > ORACLE_MAX_DIM {
        return Err(Error::input(format!("the ordered-chain oracle handles max_dim <= {ORACLE_MAX_DIM}")));
    }
    let bases: Vec<Vec<Vec<usize>>> = (0..=max_dim + 1).map(|q| ordered_tuples(space, q)).collect();
    let index: Vec<HashMap<&[usize], usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect())
        .collect();
    let mut factors = vec![Vec::new()];
    for q in 1..=max_dim + 1 {
        let mut m = IntegerMatrix::zeros(bases[q - 1].len(), bases[q].len());
        for (c, t) in bases[q].iter().enumerate() {
            for i in 0..=q {
                let face: Vec<usize> = t.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
                if face.windows(2).any(|w| w[0] == w[1]) {
                    continue;
                }
                let r = index[q - 1][face.as_slice()];
                m.add_to(r, c, if i % 2 == 0 { 1 } else { -1 });
            }
        }
        factors.push(m.invariant_factors());
    }
    let counts: Vec<usize> = bases.iter().map(Vec::len).collect();
    Ok(groups_from_factors(&counts, &factors, max_dim, true))
}
