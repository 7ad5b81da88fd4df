use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::space::Space;
use crate::vertex::Vertex;

/// A total function between the vertex sets of two spaces.
///
/// Bornologousness is a property checked on demand, not an invariant of the
/// type: [`VertexMap`] also carries candidate maps that fail the check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    source: Arc<Space>,
    target: Arc<Space>,
    table: Vec<usize>,
}

impl VertexMap {
    pub fn new(source: Arc<Space>, target: Arc<Space>, table: &BTreeMap<Vertex, Vertex>) -> Result<VertexMap> {
        let mut idx = Vec::with_capacity(source.len());
        for v in source.vertices() {
            let w = table
                .get(v)
                .ok_or_else(|| Error::input(format!("map is not defined on {v}")))?;
            let j = target
                .index_of(w)
                .ok_or_else(|| Error::input(format!("map sends {v} to {w}, which is not a target vertex")))?;
            idx.push(j);
        }
        if let Some(extra) = table.keys().find(|k| source.index_of(k).is_none()) {
            return Err(Error::input(format!("map is defined on unknown source vertex {extra}")));
        }
        Ok(VertexMap { source, target, table: idx })
    }

    /// Map from an index table (`table[i]` is the image of source vertex `i`).
    pub fn from_indices(source: Arc<Space>, target: Arc<Space>, table: Vec<usize>) -> Result<VertexMap> {
        if table.len() != source.len() {
            return Err(Error::input(format!(
                "index table has {} entries for {} source vertices",
                table.len(),
                source.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&j| j >= target.len()) {
            return Err(Error::input(format!("index {bad} is out of range for the target")));
        }
        Ok(VertexMap { source, target, table })
    }

    pub fn identity(space: Arc<Space>) -> VertexMap {
        let table = (0..space.len()).collect();
        VertexMap { source: space.clone(), target: space, table }
    }

    pub fn constant(source: Arc<Space>, target: Arc<Space>, value: usize) -> Result<VertexMap> {
        let table = vec![value; source.len()];
        VertexMap::from_indices(source, target, table)
    }

    pub fn source(&self) -> &Arc<Space> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Space> {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn apply_vertex(&self, v: &Vertex) -> Option<&Vertex> {
        self.source.index_of(v).map(|i| self.target.vertex(self.table[i]))
    }

    /// `(f×f)` maps the source roof into the target roof.
    pub fn is_bornologous(&self) -> bool {
        self.bornologous_witness().is_none()
    }

    /// First source roof pair whose image leaves the target roof.
    pub fn bornologous_witness(&self) -> Option<(usize, usize)> {
        self.source
            .roof_indices()
            .find(|&(u, v)| !self.target.related(self.table[u], self.table[v]))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &VertexMap) -> Result<VertexMap> {
        if *self.target != *next.source {
            return Err(Error::input("maps are not composable: target and source differ"));
        }
        let table = self.table.iter().map(|&j| next.table[j]).collect();
        Ok(VertexMap { source: self.source.clone(), target: next.target.clone(), table })
    }

    pub fn to_table(&self) -> BTreeMap<Vertex, Vertex> {
        self.source
            .vertices()
            .iter()
            .zip(&self.table)
            .map(|(v, &j)| (v.clone(), self.target.vertex(j).clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Arc<Space> {
        Arc::new(Space::cyclic(4, 1))
    }

    fn map(images: &[usize]) -> VertexMap {
        VertexMap::from_indices(c4(), c4(), images.to_vec()).unwrap()
    }

    #[test]
    fn identity_and_constants_are_bornologous() {
        assert!(VertexMap::identity(c4()).is_bornologous());
        for k in 0..4 {
            assert!(VertexMap::constant(c4(), c4(), k).unwrap().is_bornologous());
        }
    }

    #[test]
    fn folding_map_is_bornologous() {
        assert!(map(&[0, 1, 0, 1]).is_bornologous());
    }

    #[test]
    fn jump_map_is_not_bornologous() {
        let f = map(&[0, 2, 0, 0]);
        assert!(!f.is_bornologous());
        let (u, v) = f.bornologous_witness().unwrap();
        assert!(c4().related(u, v));
        assert!(!c4().related(f.apply(u), f.apply(v)));
    }

    #[test]
    fn totality_is_enforced() {
        let mut t: BTreeMap<Vertex, Vertex> = (0..3usize).map(|k| (Vertex::from(k), Vertex::from(k))).collect();
        assert!(VertexMap::new(c4(), c4(), &t).is_err());
        t.insert(Vertex::from(3usize), Vertex::from("nope"));
        assert!(VertexMap::new(c4(), c4(), &t).is_err());
        assert!(VertexMap::from_indices(c4(), c4(), vec![0, 1, 2]).is_err());
    }

    #[test]
    fn composition() {
        let rot = map(&[1, 2, 3, 0]);
        let twice = rot.then(&rot).unwrap();
        assert_eq!(twice.table(), &[2, 3, 0, 1]);
        assert!(twice.is_bornologous());
    }
}
