//! Integral homology of the clique complex of a roof.

pub mod chain_map;
pub mod complex;
pub mod matrix;
pub mod ordered;

pub use chain_map::{agree_on_homology, induced_map, prism_homotopy, ChainMap, Prism};
pub use complex::{homology, homology_of, CliqueComplex, HomologyGroup, DEFAULT_MAX_DIM};
pub use matrix::{smith_normal_form, IntegerMatrix, SmithForm};
pub use ordered::ordered_chain_oracle;
