//! Dense complex linear algebra for small dimensions.

mod eigen;
mod matrix;
mod norms;
mod random;

pub use eigen::{eig_hermitian, EigenSystem, HERMITIAN_TOL};
pub use matrix::{inner, vector_norm, ComplexMatrix, C64};
pub use norms::{operator_norm, singular_values, trace_norm};
pub use random::{ginibre, haar_random_unitary, haar_unitary_with, random_density, random_density_with, seeded_rng};
