//! Spectral calculus on Hermitian PSD matrices.

use super::eigen::{hermitian_eigen, HermitianEigen, DEFAULT_HERMITIAN_TOL};
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Eigenvalues at or below this are treated as exact zeros in entropic sums
/// (0·log 0 = 0).
pub const ZERO_EIGENVALUE: f64 = 1e-15;

/// Most negative eigenvalue (relative to the spectral scale) still accepted
/// as round-off on a PSD matrix.
pub const NEGATIVE_SPECTRUM_TOL: f64 = 1e-10;

/// Spectral functions used by the entropy and norm machinery.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpectralFn {
    Log2,
    Power(f64),
}

/// Eigendecomposition of a matrix required to be PSD, with tiny negative
/// eigenvalues clamped to zero.
pub fn psd_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let mut e = hermitian_eigen(m, DEFAULT_HERMITIAN_TOL * m.frobenius_norm().max(1.0))?;
    let scale = e.values.first().copied().unwrap_or(0.0).abs().max(1.0);
    if let Some(&min) = e.values.last() {
        if min < -NEGATIVE_SPECTRUM_TOL * scale {
            return Err(Error::NegativeSpectrum(min));
        }
    }
    for x in &mut e.values {
        if *x < 0.0 {
            *x = 0.0;
        }
    }
    Ok(e)
}

/// U f(Λ) U† for PSD `m`. For `Log2`, eigenvalues below `eigfloor` are first
/// raised to `eigfloor`; `Power(p)` is applied to the clamped spectrum as is.
pub fn matrix_fn_psd(m: &ComplexMatrix, f: SpectralFn, eigfloor: f64) -> Result<ComplexMatrix> {
    let e = psd_eigen(m)?;
    Ok(match f {
        SpectralFn::Log2 => e.apply_fn(|x| x.max(eigfloor).log2()),
        SpectralFn::Power(p) => e.apply_fn(|x| if x == 0.0 { 0.0f64.powf(p) } else { x.powf(p) }),
    })
}

/// Schatten p-norm (Σ λ_i^p)^{1/p} of a PSD matrix; `p = f64::INFINITY`
/// gives the largest eigenvalue.
pub fn schatten_norm(m: &ComplexMatrix, p: f64) -> Result<f64> {
    check_exponent(p)?;
    let e = psd_eigen(m)?;
    Ok(schatten_norm_of_spectrum(&e.values, p))
}

/// Schatten norm from a non-negative spectrum.
pub fn schatten_norm_of_spectrum(values: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        return values.iter().copied().fold(0.0, f64::max);
    }
    let max = values.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return 0.0;
    }
    // Factor out the largest eigenvalue so large p does not underflow.
    let s: f64 = values.iter().map(|&x| (x.max(0.0) / max).powf(p)).sum();
    max * s.powf(1.0 / p)
}

pub(crate) fn check_exponent(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::BadExponent(p));
    }
    Ok(())
}
