//! Dense complex linear algebra: the numerical substrate for everything else.
//!
//! Dimensions in this crate stay small (at most 16 for tensor squares), so
//! the eigensolver is a plain cyclic Jacobi iteration and every matrix is
//! dense.

mod eigen;
mod matrix;
mod spectral;

pub use eigen::{
    hermitian_eigen, hermitian_eigenvalues, HermitianEigen, DEFAULT_HERMITIAN_TOL, MAX_SWEEPS,
    OFF_DIAGONAL_THRESHOLD,
};
pub use matrix::{basis_vector, inner, kron_vec, normalized, vec_norm, ComplexMatrix, ONE, ZERO};
pub use spectral::{
    matrix_fn_psd, psd_eigen, schatten_norm, schatten_norm_of_spectrum, SpectralFn,
    NEGATIVE_SPECTRUM_TOL, ZERO_EIGENVALUE,
};
pub(crate) use spectral::check_exponent;

/// Kronecker product A ⊗ B.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

/// Transpose on the second factor of a (d1·d2)-dimensional operator.
pub fn partial_transpose(m: &ComplexMatrix, d1: usize, d2: usize) -> crate::Result<ComplexMatrix> {
    m.partial_transpose(d1, d2)
}
