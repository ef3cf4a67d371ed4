//! Reduction to a classical channel: the CQ matrix g_jk = ⟨e_j|Φ(|e_k⟩⟨e_k|)|e_j⟩
//! and its Shannon capacity.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::KrausChannel;
use crate::error::{Error, Result};
use crate::matcore::{basis_vector, inner, ComplexMatrix};

/// Default gap between the Blahut–Arimoto upper and lower bounds.
pub const BA_TOL: f64 = 1e-14;

const BA_MAX_ITER: usize = 5_000_000;

/// Column-stochastic matrix with `g[j][k]` = probability of output j given input k.
pub type StochasticMatrix = Vec<Vec<f64>>;

/// CQ matrix in the standard basis.
pub fn cq_matrix(channel: &KrausChannel) -> StochasticMatrix {
    let d = channel.dim();
    let basis: Vec<_> = (0..d).map(|j| basis_vector(d, j)).collect();
    cq_matrix_in_basis(channel, &basis).expect("standard basis has channel dimension")
}

/// g_jk = ⟨b_j|Φ(|b_k⟩⟨b_k|)|b_j⟩ for an orthonormal basis {b_j}.
pub fn cq_matrix_in_basis(channel: &KrausChannel, basis: &[Vec<Complex64>]) -> Result<StochasticMatrix> {
    let d = channel.dim();
    if basis.len() != d || basis.iter().any(|b| b.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, got: basis.len() });
    }
    let mut g = vec![vec![0.0; d]; d];
    for (k, bk) in basis.iter().enumerate() {
        let out = channel.apply(&ComplexMatrix::outer(bk))?;
        for (j, bj) in basis.iter().enumerate() {
            g[j][k] = inner(bj, &out.mat_vec(bj)).re;
        }
    }
    Ok(g)
}

/// Result of [`classical_capacity`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassicalCapacity {
    /// Mutual information of the returned distribution (a lower bound).
    pub capacity: f64,
    /// max_k D(g_·k ‖ q), an upper bound on the capacity.
    pub upper_bound: f64,
    pub distribution: Vec<f64>,
    pub iterations: usize,
}

fn check_stochastic(g: &[Vec<f64>]) -> Result<usize> {
    let n_out = g.len();
    let n_in = g.first().map_or(0, Vec::len);
    if n_out == 0 || n_in == 0 || g.iter().any(|row| row.len() != n_in) {
        return Err(Error::NotStochastic("matrix must be non-empty and rectangular".into()));
    }
    if g.iter().flatten().any(|&x| !x.is_finite() || x < -1e-12) {
        return Err(Error::NotStochastic("negative entry".into()));
    }
    for k in 0..n_in {
        let col: f64 = g.iter().map(|row| row[k]).sum();
        if (col - 1.0).abs() > 1e-10 {
            return Err(Error::NotStochastic(format!("column {k} sums to {col}")));
        }
    }
    Ok(n_in)
}

/// Relative entropies D_k = Σ_j g_jk log2(g_jk / q_j) with q = G p.
fn divergences(g: &[Vec<f64>], p: &[f64]) -> Vec<f64> {
    let q: Vec<f64> = g.iter().map(|row| row.iter().zip(p).map(|(x, y)| x * y).sum()).collect();
    (0..p.len())
        .map(|k| {
            g.iter()
                .zip(&q)
                .filter(|(row, _)| row[k] > 0.0)
                .map(|(row, &qj)| row[k] * (row[k] / qj).log2())
                .sum()
        })
        .collect()
}

/// Shannon capacity of the classical channel G by Blahut–Arimoto
/// iteration, stopped once the upper and lower bounds are within `tol`.
pub fn classical_capacity(g: &[Vec<f64>], tol: f64) -> Result<ClassicalCapacity> {
    let n = check_stochastic(g)?;
    let mut p = vec![1.0 / n as f64; n];
    for iterations in 0..BA_MAX_ITER {
        let dk = divergences(g, &p);
        let lower: f64 = p.iter().zip(&dk).map(|(a, b)| a * b).sum();
        let upper = dk.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if upper - lower <= tol {
            return Ok(ClassicalCapacity { capacity: lower, upper_bound: upper, distribution: p, iterations });
        }
        let mut z = 0.0;
        for (pk, d) in p.iter_mut().zip(&dk) {
            *pk *= (d - upper).exp2();
            z += *pk;
        }
        p.iter_mut().for_each(|pk| *pk /= z);
    }
    Err(Error::NoConvergence { what: "Blahut-Arimoto iteration", iterations: BA_MAX_ITER })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{build_doubly_depolarizing, KrausChannel};

    #[test]
    fn noiseless_channel() {
        let g = cq_matrix(&KrausChannel::identity(3));
        assert_eq!(g, vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]);
        let c = classical_capacity(&g, 1e-13).unwrap();
        assert!((c.capacity - 3f64.log2()).abs() < 1e-12);
        assert!(c.distribution.iter().all(|p| (p - 1.0 / 3.0).abs() < 1e-12));
    }

    #[test]
    fn useless_channel() {
        let g = vec![vec![1.0 / 3.0; 3]; 3];
        assert!(classical_capacity(&g, 1e-13).unwrap().capacity.abs() < 1e-13);
    }

    #[test]
    fn binary_symmetric_channel() {
        let e: f64 = 0.1;
        let g = vec![vec![1.0 - e, e], vec![e, 1.0 - e]];
        let h = -e * e.log2() - (1.0 - e) * (1.0 - e).log2();
        assert!((classical_capacity(&g, 1e-13).unwrap().capacity - (1.0 - h)).abs() < 1e-12);
    }

    #[test]
    fn doubly_depolarizing_entries() {
        let (a, b) = (0.7, 0.6);
        let g = cq_matrix(&build_doubly_depolarizing(4, 2, a, b).unwrap());
        assert!((g[0][0] - (a + (1.0 - a) / 4.0)).abs() < 1e-14);
        assert!((g[2][2] - (a * b + a * (1.0 - b) / 2.0 + (1.0 - a) / 4.0)).abs() < 1e-14);
        for k in 0..4 {
            let col: f64 = (0..4).map(|j| g[j][k]).sum();
            let row: f64 = g[k].iter().sum();
            assert!((col - 1.0).abs() < 1e-12 && (row - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_stochastic() {
        assert!(matches!(
            classical_capacity(&[vec![0.5, 0.5], vec![0.4, 0.5]], 1e-12),
            Err(Error::NotStochastic(_))
        ));
    }
}
