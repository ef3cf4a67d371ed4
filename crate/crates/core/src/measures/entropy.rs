use crate::capacity::check_state;
use crate::error::{Error, Result};
use crate::matcore::{hermitian_eigen, psd_eigen, ComplexMatrix, DEFAULT_HERMITIAN_TOL, ZERO_EIGENVALUE};

use super::spectrum::entropy_of_spectrum;

/// Inputs to the entropic functions must be states within this tolerance.
pub const STATE_TOL: f64 = 1e-9;

/// Largest ρ-weight tolerated on the kernel of γ in the relative entropy.
pub const SUPPORT_TOL: f64 = 1e-9;

/// Von Neumann entropy S(ρ) = −Tr ρ log2 ρ in bits.
pub fn entropy(rho: &ComplexMatrix) -> Result<f64> {
    check_state(rho, STATE_TOL)?;
    Ok(entropy_of_spectrum(&psd_eigen(rho)?.values))
}

/// H(ρ, γ) = Tr ρ(log2 ρ − log2 γ) in bits.
///
/// Returns `SupportViolation` (the value would be +∞) when ρ puts weight
/// above 1e-9 on the kernel of γ.
pub fn relative_entropy(rho: &ComplexMatrix, gamma: &ComplexMatrix) -> Result<f64> {
    check_state(rho, STATE_TOL)?;
    check_state(gamma, STATE_TOL)?;
    if rho.rows() != gamma.rows() {
        return Err(Error::DimensionMismatch { expected: gamma.rows(), got: rho.rows() });
    }
    let neg_entropy = -entropy_of_spectrum(&psd_eigen(rho)?.values);
    let eg = hermitian_eigen(gamma, DEFAULT_HERMITIAN_TOL)?;
    let mut cross = 0.0;
    for k in 0..eg.dim() {
        let g = eg.vector(k);
        let weight = crate::matcore::inner(&g, &rho.mat_vec(&g)).re;
        let mu = eg.values[k];
        if mu <= ZERO_EIGENVALUE {
            if weight > SUPPORT_TOL {
                return Err(Error::SupportViolation(weight));
            }
            continue;
        }
        cross += weight * mu.log2();
    }
    Ok(neg_entropy - cross)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::basis_vector;
    use crate::sample::{random_density_matrix, random_pure_state, stream_rng};

    #[test]
    fn entropy_extremes() {
        let mixed = ComplexMatrix::identity(4).scale(0.25);
        assert!((entropy(&mixed).unwrap() - 2.0).abs() < 1e-14);
        let pure = random_pure_state(3, &mut stream_rng(1, 0));
        assert!(entropy(&pure).unwrap().abs() < 1e-12);
    }

    #[test]
    fn depolarizing_output_entropy() {
        let rho = ComplexMatrix::from_real_diag(&[11.0 / 15.0, 2.0 / 15.0, 2.0 / 15.0]);
        let expected = -(11.0f64 / 15.0) * (11.0f64 / 15.0).log2() - 2.0 * (2.0f64 / 15.0) * (2.0f64 / 15.0).log2();
        assert!((entropy(&rho).unwrap() - expected).abs() < 1e-14);
    }

    #[test]
    fn not_a_state() {
        assert!(matches!(entropy(&ComplexMatrix::identity(2)), Err(Error::NotAState(_))));
    }

    #[test]
    fn relative_entropy_examples() {
        let rho = random_density_matrix(3, &mut stream_rng(2, 0));
        assert!(relative_entropy(&rho, &rho).unwrap().abs() < 1e-12);
        let mixed = ComplexMatrix::identity(3).scale(1.0 / 3.0);
        let h = relative_entropy(&rho, &mixed).unwrap();
        assert!((h - (3f64.log2() - entropy(&rho).unwrap())).abs() < 1e-12);

        let zero = ComplexMatrix::outer(&basis_vector(2, 0));
        let gamma = ComplexMatrix::from_real_diag(&[0.75, 0.25]);
        assert!((relative_entropy(&zero, &gamma).unwrap() + 0.75f64.log2()).abs() < 1e-14);
    }

    #[test]
    fn support_violation() {
        let rho = ComplexMatrix::from_real_diag(&[0.5, 0.5]);
        let gamma = ComplexMatrix::outer(&basis_vector(2, 0));
        assert!(matches!(relative_entropy(&rho, &gamma), Err(Error::SupportViolation(_))));
        // Support inclusion is fine even when γ is singular.
        assert!(relative_entropy(&gamma, &gamma).unwrap().abs() < 1e-14);
    }
}
