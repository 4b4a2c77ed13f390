//! Comonoids in chain complexes: construction, verification, the interval
//! and cylinders, the subcoalgebra lattice, and lifting by extension.

pub mod coalgebra;
pub mod lift;
pub mod sub;

pub use coalgebra::{
    check_cocommutative, check_comonoid, check_comonoid_map, coproduct, cylinder_comonoid,
    group_like, interval_coalgebra, matrix_coalgebra, primitive_exterior, simplicial_chains,
    tensor_comonoid, unit_coalgebra, zero_coalgebra, Coalgebra, CoalgebraMap, Coproduct,
    CylinderData,
};
pub use lift::{
    extend_lift_over_subcoalgebras, ChainLevelOracle, ComonLiftingProblem, ExtensionOutcome,
    LiftOracle, OracleOutcome, RefusingOracle, StuckReport,
};
pub use sub::{
    decompose_into_subcoalgebras, glue, image_subcoalgebra, intersect_subcoalgebras,
    intersection_cube, subcoalgebra_generated_by, union_subcoalgebras, verify_tensor_intersection,
    IntersectionCube, Subcoalgebra,
};
