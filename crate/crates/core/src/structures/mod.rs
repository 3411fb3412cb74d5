//! Classical and generalized almost contact structures.

pub mod classical;
pub mod explicit;
pub mod generalized;
pub mod sasaki;
pub mod twoone;

pub use classical::{
    check_almcont, check_almost_contact, check_clasmetric, check_classical_crf, check_classical_crf_f, check_cr_type,
    check_crf0, check_crf_lie, check_f_structure, check_fmetric, check_kernel_nabla, check_nijenhuis_zero,
    check_normal_classical, check_normal_via_j, check_parallel, check_projection_algebra, eigen_projections,
    nijenhuis_classical, projections_of, AlmostContact, Projections,
};
pub use explicit::*;
pub use generalized::*;
pub use sasaki::*;
pub use twoone::*;
