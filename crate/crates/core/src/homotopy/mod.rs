//! Discrete cubes, cube maps and homotopies into finite semi-coarse spaces.

pub mod coarse;
pub mod cube;
pub mod cyclic;
pub mod displacement;
pub mod relation;
pub mod search;

pub use coarse::{coarse_triviality_check, TrivialityFailure, TrivialityOptions, TrivialityReport};
pub use cube::{cube_space, Cube, CubeMap};
pub use cyclic::{
    is_unidirectional, lift_path, pi1_cyclic, unidirectional_reduce, unidirectional_reduce_trace, CyclicModel,
    GroupDescriptor, Reduction, ReductionKind, ReductionStep, WindingCertificate,
};
pub use displacement::{
    block_move, block_move_chain, block_move_formula, block_violation, plate_move, plate_violation, Block,
    BlockViolation, Direction, PlateViolation,
};
pub use relation::{
    one_step_related, one_step_related_maps, step_failure, verify_homotopy, Anchors, Homotopy, HomotopyFailure,
    Resolved, StepFailure,
};
pub use search::{
    homotopic_search, homotopic_search_maps, Revalidation, SearchOptions, SearchOutcome, DEFAULT_NODE_BUDGET,
};
