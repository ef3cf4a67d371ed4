//! Unital qubit channels ρ ↦ Σ_k α_k σ_k ρ σ_k in Pauli-weight and
//! Bloch-contraction coordinates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QubitUnitalParams {
    pub alphas: [f64; 4],
    pub lambdas: [f64; 3],
}

impl QubitUnitalParams {
    pub fn new(alphas: [f64; 4]) -> Result<Self> {
        Ok(QubitUnitalParams { alphas, lambdas: qubit_lambdas(alphas)? })
    }

    /// Reorders so that α_0 is the largest weight and α_1 the largest of the
    /// rest; the λ_i follow their α_i.
    pub fn normalized(&self) -> Self {
        let mut idx = [0usize, 1, 2, 3];
        idx.sort_by(|&i, &j| self.alphas[j].total_cmp(&self.alphas[i]));
        let alphas = idx.map(|i| self.alphas[i]);
        let lambdas = [1, 2, 3].map(|k| 2.0 * (alphas[0] + alphas[k]) - 1.0);
        QubitUnitalParams { alphas, lambdas }
    }

    /// Output eigenvalues ½(1 ± λ_i) for the input with Bloch vector along axis i.
    pub fn axis_output_spectrum(&self, i: usize) -> [f64; 2] {
        let l = self.lambdas[i];
        [(1.0 + l.abs()) / 2.0, (1.0 - l.abs()) / 2.0]
    }
}

/// λ_i = 2(α_0 + α_i) − 1 for i = 1, 2, 3.
pub fn qubit_lambdas(alphas: [f64; 4]) -> Result<[f64; 3]> {
    if alphas.iter().any(|a| !a.is_finite() || *a < 0.0) {
        return Err(Error::WeightsInvalid(format!("negative Pauli weight in {alphas:?}")));
    }
    let total: f64 = alphas.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::WeightsInvalid(format!("Pauli weights sum to {total}")));
    }
    Ok([1, 2, 3].map(|k| 2.0 * (alphas[0] + alphas[k]) - 1.0))
}
