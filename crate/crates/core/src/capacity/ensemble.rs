use serde::{Deserialize, Serialize};

use crate::channels::KrausChannel;
use crate::error::{Error, Result};
use crate::matcore::{psd_eigen, ComplexMatrix};

use crate::measures::entropy_of_spectrum as spectrum_entropy;

/// Probability-weighted collection of input states {π_j, ρ_j}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ensemble {
    weights: Vec<f64>,
    states: Vec<ComplexMatrix>,
}

impl Ensemble {
    pub fn new(weights: Vec<f64>, states: Vec<ComplexMatrix>) -> Result<Self> {
        if weights.len() != states.len() || weights.is_empty() {
            return Err(Error::LengthMismatch(weights.len(), states.len()));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::WeightsInvalid(format!("ensemble weights {weights:?}")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::WeightsInvalid(format!("ensemble weights sum to {total}")));
        }
        let d = states[0].rows();
        for s in &states {
            check_state(s, 1e-10)?;
            if s.rows() != d {
                return Err(Error::DimensionMismatch { expected: d, got: s.rows() });
            }
        }
        Ok(Ensemble { weights, states })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn states(&self) -> &[ComplexMatrix] {
        &self.states
    }

    pub fn dim(&self) -> usize {
        self.states[0].rows()
    }

    /// ρ_av = Σ π_j ρ_j.
    pub fn average(&self) -> ComplexMatrix {
        let mut avg = ComplexMatrix::zeros(self.dim(), self.dim());
        for (w, s) in self.weights.iter().zip(&self.states) {
            avg.add_scaled((*w).into(), s);
        }
        avg
    }

    /// The ensemble {π_j ⊗ π_k, ρ_j ⊗ ρ_k}.
    pub fn tensor_square(&self) -> Ensemble {
        let mut weights = Vec::new();
        let mut states = Vec::new();
        for (wi, si) in self.weights.iter().zip(&self.states) {
            for (wj, sj) in self.weights.iter().zip(&self.states) {
                weights.push(wi * wj);
                states.push(si.kron(sj));
            }
        }
        Ensemble { weights, states }
    }
}

/// Rejects anything that is not Hermitian, PSD and of unit trace within `tol`.
pub(crate) fn check_state(rho: &ComplexMatrix, tol: f64) -> Result<()> {
    if !rho.is_square() {
        return Err(Error::NotAState("matrix is not square".into()));
    }
    let h = rho.hermitian_residual();
    if h > tol {
        return Err(Error::NotAState(format!("Hermitian residual {h:e}")));
    }
    let tr = rho.trace().re;
    if (tr - 1.0).abs() > tol {
        return Err(Error::NotAState(format!("trace {tr}")));
    }
    let e = psd_eigen(rho).map_err(|_| Error::NotAState("negative eigenvalue".into()))?;
    if e.values.last().is_some_and(|&m| m < -tol) {
        return Err(Error::NotAState("negative eigenvalue".into()));
    }
    Ok(())
}

fn output_entropy(channel: &KrausChannel, rho: &ComplexMatrix) -> Result<f64> {
    let out = channel.apply(rho)?.hermitian_part();
    Ok(spectrum_entropy(&psd_eigen(&out)?.values))
}

/// Holevo quantity χ = S[Φ(ρ_av)] − Σ π_j S[Φ(ρ_j)] in bits.
pub fn holevo_chi(channel: &KrausChannel, ensemble: &Ensemble) -> Result<f64> {
    let mut chi = output_entropy(channel, &ensemble.average())?;
    for (w, s) in ensemble.weights.iter().zip(&ensemble.states) {
        if *w > 0.0 {
            chi -= w * output_entropy(channel, s)?;
        }
    }
    Ok(chi)
}
