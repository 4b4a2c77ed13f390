//! Exact linear algebra and the category of finitely supported chain
//! complexes.

pub mod complex;
pub mod field;
pub mod homology;
pub mod limits;
pub mod linalg;
pub mod system;
pub mod tensor;

pub use complex::{ChainComplex, ChainMap, Degree, Element};
pub use field::{Field, Scalar};
pub use homology::{homology, is_cof, is_epi, is_iso, is_mono, is_quasi_iso};
pub use limits::{
    cokernel, cone_of_identity, direct_sum, image_factorization, kernel, mapping_cone, pullback,
    pushout, pushout_product, GradedSubspace,
};
pub use linalg::{Matrix, SparseVec, Subspace};
pub use tensor::{tensor, tensor_map};
