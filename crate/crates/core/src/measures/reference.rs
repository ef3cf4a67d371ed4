use crate::error::{Error, Result};
use crate::matcore::schatten_norm_of_spectrum;

use super::spectrum::entropy_of_spectrum;

/// Which extremal quantity of the depolarizing channel to evaluate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DepolMeasure {
    /// Maximal output p-norm ν_p; `f64::INFINITY` allowed.
    PNorm(f64),
    /// Minimal output entropy in bits.
    Entropy,
}

/// Output spectrum of any pure input: [a + (1−a)/d, (1−a)/d, …].
pub fn depol_output_spectrum(d: usize, a: f64) -> Result<Vec<f64>> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("dimension must be at least 2, got {d}")));
    }
    let lower = -1.0 / ((d * d - 1) as f64);
    if !(a.is_finite() && a >= lower - 1e-15 && a <= 1.0) {
        return Err(Error::OutOfRange(format!("a = {a} outside [{lower}, 1]")));
    }
    let n = (1.0 - a) / d as f64;
    let mut s = vec![n; d];
    s[0] = (a + n).max(0.0);
    Ok(s)
}

/// ν_p or S_min of the depolarizing channel from its closed-form spectrum.
pub fn depol_reference(d: usize, a: f64, measure: DepolMeasure) -> Result<f64> {
    let s = depol_output_spectrum(d, a)?;
    match measure {
        DepolMeasure::PNorm(p) => {
            crate::matcore::check_exponent(p)?;
            Ok(schatten_norm_of_spectrum(&s, p))
        }
        DepolMeasure::Entropy => Ok(entropy_of_spectrum(&s)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limits() {
        for p in [1.5, 2.0, 3.0, f64::INFINITY] {
            assert!((depol_reference(3, 1.0, DepolMeasure::PNorm(p)).unwrap() - 1.0).abs() < 1e-15);
            let expected = if p.is_infinite() { 1.0 / 3.0 } else { 3f64.powf(1.0 / p - 1.0) };
            assert!((depol_reference(3, 0.0, DepolMeasure::PNorm(p)).unwrap() - expected).abs() < 1e-15);
        }
        assert_eq!(depol_reference(3, 1.0, DepolMeasure::Entropy).unwrap(), 0.0);
        assert!((depol_reference(3, 0.0, DepolMeasure::Entropy).unwrap() - 3f64.log2()).abs() < 1e-15);
    }

    #[test]
    fn arithmetic_example() {
        let expected = -(11.0f64 / 15.0) * (11.0f64 / 15.0).log2() - 2.0 * (2.0f64 / 15.0) * (2.0f64 / 15.0).log2();
        assert!((depol_reference(3, 0.6, DepolMeasure::Entropy).unwrap() - expected).abs() < 1e-15);
        let nu2 = ((11.0f64 / 15.0).powi(2) + 2.0 * (2.0f64 / 15.0).powi(2)).sqrt();
        assert!((depol_reference(3, 0.6, DepolMeasure::PNorm(2.0)).unwrap() - nu2).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        assert!(matches!(depol_reference(3, 1.5, DepolMeasure::Entropy), Err(Error::OutOfRange(_))));
        assert!(matches!(depol_reference(3, 0.5, DepolMeasure::PNorm(0.5)), Err(Error::BadExponent(_))));
    }
}
