use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{psd_eigen, ComplexMatrix, ZERO_EIGENVALUE};

/// Tolerance on partial sums in the majorization predicates.
pub const MAJORIZATION_TOL: f64 = 1e-12;

/// Non-negative reals sorted non-increasing, typically a state's eigenvalues.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Sorts the values; entries in [−1e-12, 0) are clamped to zero and
    /// anything more negative is rejected.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|x| !x.is_finite() || **x < -1e-12) {
            return Err(Error::NegativeSpectrum(bad));
        }
        for x in &mut values {
            *x = x.max(0.0);
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Spectrum { values })
    }

    /// Eigenvalues of a PSD matrix.
    pub fn of(m: &ComplexMatrix) -> Result<Self> {
        Self::new(psd_eigen(m)?.values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Extended with zeros to length `n` (no-op if already that long).
    pub fn padded(&self, n: usize) -> Self {
        let mut values = self.values.clone();
        values.resize(n.max(values.len()), 0.0);
        Spectrum { values }
    }

    /// −Σ x log2 x, with x ≤ 1e-15 contributing nothing.
    pub fn entropy(&self) -> f64 {
        entropy_of_spectrum(&self.values)
    }

    /// Σ x^p.
    pub fn power_sum(&self, p: f64) -> f64 {
        self.values.iter().map(|x| x.powf(p)).sum()
    }

    pub fn p_norm(&self, p: f64) -> f64 {
        crate::matcore::schatten_norm_of_spectrum(&self.values, p)
    }
}

/// −Σ x log2 x over a non-negative sequence (0·log 0 = 0).
pub fn entropy_of_spectrum(values: &[f64]) -> f64 {
    values
        .iter()
        .filter(|&&x| x > ZERO_EIGENVALUE)
        .map(|&x| -x * x.log2())
        .sum()
}

fn partial_sums_dominate(x: &Spectrum, y: &Spectrum) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    let (mut sx, mut sy) = (0.0, 0.0);
    for (a, b) in x.values.iter().zip(&y.values) {
        sx += a;
        sy += b;
        if sx < sy - MAJORIZATION_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// x ≻ y: every partial sum of x dominates the one of y, totals equal.
pub fn majorizes(x: &Spectrum, y: &Spectrum) -> Result<bool> {
    Ok(partial_sums_dominate(x, y)? && (x.total() - y.total()).abs() <= MAJORIZATION_TOL)
}

/// x ≻_w y: every partial sum of x dominates the one of y; totals may
/// differ. Pad with [`Spectrum::padded`] to compare different lengths.
pub fn submajorizes(x: &Spectrum, y: &Spectrum) -> Result<bool> {
    partial_sums_dominate(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec()).unwrap()
    }

    #[test]
    fn majorization_examples() {
        assert!(majorizes(&s(&[1.0, 0.0, 0.0]), &s(&[0.5, 0.3, 0.2])).unwrap());
        assert!(majorizes(&s(&[0.6, 0.3, 0.1]), &s(&[0.5, 0.3, 0.2])).unwrap());
        assert!(!majorizes(&s(&[0.5, 0.3, 0.2]), &s(&[0.6, 0.3, 0.1])).unwrap());
        assert!(majorizes(&s(&[0.5, 0.5]), &s(&[0.5, 0.5])).unwrap());
    }

    #[test]
    fn submajorization_examples() {
        let x = s(&[0.5, 0.2]);
        let y = s(&[0.6, 0.3]);
        assert!(submajorizes(&x, &x).unwrap());
        assert!(!submajorizes(&x, &y).unwrap());
        assert!(submajorizes(&y, &x).unwrap());
        assert!(!majorizes(&y, &x).unwrap());
    }

    #[test]
    fn length_mismatch_and_padding() {
        let x = s(&[0.7, 0.3]);
        let y = s(&[0.5, 0.3, 0.2]);
        assert!(matches!(majorizes(&x, &y), Err(Error::LengthMismatch(2, 3))));
        assert!(majorizes(&x.padded(3), &y).unwrap());
    }

    #[test]
    fn construction_sorts_and_clamps() {
        let sp = s(&[0.2, -1e-13, 0.8]);
        assert_eq!(sp.values(), &[0.8, 0.2, 0.0]);
        assert!(Spectrum::new(vec![0.5, -0.1]).is_err());
    }

    #[test]
    fn entropy_skips_zeros() {
        assert_eq!(entropy_of_spectrum(&[1.0, 0.0, 0.0]), 0.0);
        assert!((entropy_of_spectrum(&[0.5, 0.5]) - 1.0).abs() < 1e-15);
    }
}
