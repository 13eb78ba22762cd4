//! States, measurement bases, observables and the KD construction.

mod basis;
mod johansen;
pub(crate) mod kd;
mod state;

pub use basis::{Observable, PvmBasis, DEGENERATE_NORM_TOL, ORTHONORMAL_TOL};
pub use johansen::{
    johansen_decomposition, nonselective_binary_update, rotated_basis, rotated_ket, rotated_projector, JohansenTerms,
    RealTable,
};
pub use kd::{fingerprint, kd_distribution, weak_value, KdDistribution, Provenance, POSTSELECTION_TOL};
pub use state::{DensityOperator, STATE_TOL};
