//! Channel constructors and the operations every channel supports.
//!
//! All families are built as explicit Kraus sets. Applying a channel uses a
//! cached sparsity pattern of each operator, so the matrix-unit noise terms
//! and Weyl operators cost O(d) per entry rather than O(d²).

mod common_eigen;
mod family;
mod kraus;
mod qubit;
mod weyl;

pub use common_eigen::{common_eigenvectors, phase_residual};
pub use family::{
    build_contraction, build_depolarizing, build_diagonal, build_doubly_depolarizing, build_generalized,
    build_qutrit, build_successive, build_weyl_channel, depolarizing_weyl_coefficients, diagonal_unitary,
    doubly_depolarizing_weights, normalize_qutrit_weights, qutrit_unitaries, FamilySpec, UNITARY_TOL,
};
pub use kraus::{check_covariance, KrausChannel, KRAUS_TOL};
pub use qubit::{qubit_lambdas, QubitUnitalParams};
pub use weyl::{clock, direct_sum, pauli, shift, weyl_operators};
