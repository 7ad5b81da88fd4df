//! Finite semi-coarse spaces.
//!
//! A finite roofed semi-coarse space is determined by its roof, a reflexive
//! symmetric relation on the vertex set; [`Space`] stores exactly that. On
//! top of it the crate provides the categorical constructions, bornologous
//! maps, discrete homotopy of cube maps, and integral homology of the clique
//! complex of the roof.

pub mod cloud;
pub mod error;
pub mod homology;
pub mod homotopy;
pub mod map;
pub mod space;
pub mod uniform;
pub mod vertex;

pub use cloud::{from_distance_matrix, from_point_cloud, PointCloud};
pub use error::{Error, Result};
pub use map::VertexMap;
pub use space::{Completion, Space};
pub use uniform::{roof_foundation_roundtrip, CementedUniformity};
pub use vertex::Vertex;
