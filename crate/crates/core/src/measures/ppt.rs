use crate::error::{Error, Result};
use crate::matcore::{hermitian_eigenvalues, ComplexMatrix, DEFAULT_HERMITIAN_TOL};

/// Smallest eigenvalue of the partial transpose still counted as PSD.
pub const PPT_TOL: f64 = 1e-11;

/// Minimum eigenvalue of the partial transpose (second factor) of a
/// (d1·d2)-dimensional operator.
pub fn min_partial_transpose_eigenvalue(m: &ComplexMatrix, d1: usize, d2: usize) -> Result<f64> {
    if !m.is_square() || m.rows() != d1 * d2 {
        return Err(Error::DimensionMismatch { expected: d1 * d2, got: m.rows() });
    }
    let pt = m.partial_transpose(d1, d2)?;
    let vals = hermitian_eigenvalues(&pt, DEFAULT_HERMITIAN_TOL)?;
    Ok(*vals.last().expect("non-empty"))
}

/// Positive partial transpose test on a Choi matrix.
pub fn is_ppt(choi: &ComplexMatrix, d1: usize, d2: usize) -> Result<bool> {
    Ok(min_partial_transpose_eigenvalue(choi, d1, d2)? >= -PPT_TOL)
}
