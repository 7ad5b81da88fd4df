//! Cemented semi-uniform structures and their correspondence with roofed
//! semi-coarse spaces.
//!
//! On a finite set a cemented semi-uniform structure is the principal filter
//! of all supersets of its foundation. Going up from a semi-coarse space
//! takes the filter of supersets of the union of the controlled sets; going
//! down takes every subset of the intersection of the filter.

use crate::space::Space;

/// Principal filter `{U ⊆ X×X : foundation ⊆ U}`, stored as its foundation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CementedUniformity {
    carrier: Space,
    // The foundation is a reflexive symmetric relation, so the `Space`
    // neighbourhood representation doubles as its storage.
}

impl CementedUniformity {
    /// Up-conversion: the filter of supersets of the roof.
    pub fn from_semi_coarse(space: &Space) -> CementedUniformity {
        CementedUniformity { carrier: space.clone() }
    }

    /// Filter membership of the relation given by `pairs`.
    pub fn contains(&self, pairs: &[(usize, usize)]) -> bool {
        let mut held = vec![Vec::new(); self.carrier.len()];
        for &(u, v) in pairs {
            held[u].push(v);
        }
        for list in &mut held {
            list.sort_unstable();
        }
        self.carrier
            .roof_indices()
            .all(|(u, v)| held[u].binary_search(&v).is_ok())
    }

    /// Intersection of all filter members. For a principal filter this is the
    /// generator itself.
    pub fn foundation(&self) -> Vec<(usize, usize)> {
        self.carrier.roof_indices().collect()
    }

    /// Down-conversion: the semi-coarse structure of all subsets of the
    /// foundation, which is roofed with the foundation as roof.
    pub fn to_semi_coarse(&self) -> Space {
        Space::from_sorted(self.carrier.vertices().to_vec(), self.foundation())
    }
}

/// Up then down; the identity on roofed spaces.
pub fn roof_foundation_roundtrip(space: &Space) -> Space {
    CementedUniformity::from_semi_coarse(space).to_semi_coarse()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_is_identity_on_examples() {
        for s in [Space::cyclic(4, 1), Space::complete(["a", "b", "c"]), Space::discrete(["x"])] {
            assert_eq!(roof_foundation_roundtrip(&s), s);
        }
    }

    #[test]
    fn filter_contains_exactly_supersets_of_roof() {
        let s = Space::path(1);
        let u = CementedUniformity::from_semi_coarse(&s);
        let roof: Vec<(usize, usize)> = s.roof_indices().collect();
        assert!(u.contains(&roof));
        assert!(!u.contains(&roof[1..]));
        let mut bigger = roof.clone();
        bigger.push((0, 0));
        assert!(u.contains(&bigger));
    }
}
