//! Monotone fixed-point ascent for ω ↦ H[Φ(ω), A].
//!
//! The map ω ↦ H[Φ(ω), A] is convex, and its linearization at ρ is
//! ω ↦ Tr ω Φ̂[log Φ(ρ) − log A] up to a constant. Replacing ρ by the top
//! eigenvector ψ of that operator therefore never decreases the objective;
//! a state that reproduces itself is stationary:
//! Φ̂[log Φ(ψψ†) − log A] ψ = λψ.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::KrausChannel;
use crate::error::{Error, Result};
use crate::measures::entropy_of_spectrum as spectrum_entropy;
use crate::matcore::{
    hermitian_eigen, psd_eigen, vec_norm, ComplexMatrix, HermitianEigen, DEFAULT_HERMITIAN_TOL, ZERO_EIGENVALUE,
};

/// Floor applied before taking log2 of a possibly singular output.
pub const LOG_FLOOR: f64 = 1e-300;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AscentOptions {
    pub max_iter: usize,
    /// Objective increment below which a step counts as stalled.
    pub tol: f64,
    /// Stationarity residual required to declare convergence.
    pub residual_tol: f64,
}

impl Default for AscentOptions {
    fn default() -> Self {
        AscentOptions {
            max_iter: 2000,
            tol: 1e-13,
            residual_tol: 1e-8,
        }
    }
}

/// Outcome of one ascent run.
#[derive(Clone, Debug)]
pub struct StationaryReport {
    pub vector: Vec<Complex64>,
    pub state: ComplexMatrix,
    /// H[Φ(ω), A] at the final state, in bits.
    pub objective: f64,
    pub top_eigenvalue: f64,
    /// ‖Mψ − λψ‖ at the final state.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Objective at the start and after every step.
    pub trace: Vec<f64>,
}

/// Ascent for a fixed channel and reference state A; log2 A is computed once.
pub struct RelativeEntropyAscent<'a> {
    channel: &'a KrausChannel,
    log_reference: ComplexMatrix,
}

impl<'a> RelativeEntropyAscent<'a> {
    /// Fails with `SupportViolation` unless A has full support.
    pub fn new(channel: &'a KrausChannel, reference: &ComplexMatrix) -> Result<Self> {
        if reference.rows() != channel.dim() || !reference.is_square() {
            return Err(Error::DimensionMismatch {
                expected: channel.dim(),
                got: reference.rows(),
            });
        }
        let e = psd_eigen(reference)?;
        let min = e.values.last().copied().unwrap_or(0.0);
        if min <= ZERO_EIGENVALUE {
            return Err(Error::SupportViolation(min));
        }
        Ok(RelativeEntropyAscent {
            channel,
            log_reference: e.apply_fn(f64::log2),
        })
    }

    /// H[Φ(ρ), A] and the gradient operator Φ̂[log2 Φ(ρ) − log2 A].
    fn evaluate(&self, rho: &ComplexMatrix) -> Result<(f64, ComplexMatrix)> {
        let out = self.channel.apply(rho)?.hermitian_part();
        let e: HermitianEigen = psd_eigen(&out)?;
        let neg_entropy = -spectrum_entropy(&e.values);
        let cross = out.trace_product(&self.log_reference).re;
        let log_out = e.apply_fn(|x| x.max(LOG_FLOOR).log2());
        let grad = self
            .channel
            .adjoint_apply(&(&log_out - &self.log_reference))?
            .hermitian_part();
        Ok((neg_entropy - cross, grad))
    }

    /// Objective H[Φ(ρ), A] alone.
    pub fn objective(&self, rho: &ComplexMatrix) -> Result<f64> {
        Ok(self.evaluate(rho)?.0)
    }

    /// Runs the iteration from `start` (any state; pure starts may be passed
    /// as their projector).
    pub fn run(&self, start: &ComplexMatrix, opts: &AscentOptions) -> Result<StationaryReport> {
        let mut rho = start.clone();
        let mut psi: Option<Vec<Complex64>> = pure_vector(start);
        let mut trace = Vec::new();
        let mut iterations = 0;
        loop {
            let (obj, grad) = self.evaluate(&rho)?;
            let eg = hermitian_eigen(&grad, DEFAULT_HERMITIAN_TOL * grad.frobenius_norm().max(1.0))?;
            let (lambda, top) = eg.top();
            let residual = psi.as_ref().map_or(f64::INFINITY, |v| eigen_residual(&grad, v, lambda));
            let stalled = trace.last().is_some_and(|&prev: &f64| obj - prev < opts.tol);
            trace.push(obj);
            let stationary = residual <= opts.residual_tol && (stalled || iterations == 0);
            if stationary || iterations >= opts.max_iter {
                let vector = psi.unwrap_or(top);
                return Ok(StationaryReport {
                    state: ComplexMatrix::outer(&vector),
                    vector,
                    objective: obj,
                    top_eigenvalue: lambda,
                    residual,
                    iterations,
                    converged: stationary,
                    trace,
                });
            }
            rho = ComplexMatrix::outer(&top);
            psi = Some(top);
            iterations += 1;
        }
    }
}

/// ‖Mv − λv‖.
pub(crate) fn eigen_residual(m: &ComplexMatrix, v: &[Complex64], lambda: f64) -> f64 {
    let mv = m.mat_vec(v);
    let r: Vec<Complex64> = mv.iter().zip(v).map(|(a, b)| a - b * lambda).collect();
    vec_norm(&r)
}

/// The unit vector ψ with ρ = ψψ†, when ρ is (numerically) pure.
fn pure_vector(rho: &ComplexMatrix) -> Option<Vec<Complex64>> {
    let e = psd_eigen(rho).ok()?;
    let tr: f64 = e.values.iter().sum();
    if (e.values[0] - tr).abs() <= 1e-12 && (tr - 1.0).abs() <= 1e-10 {
        Some(e.vector(0))
    } else {
        None
    }
}

/// One ascent of H[Φ(ω), A] from `start`.
pub fn shor_ascent(
    channel: &KrausChannel,
    reference: &ComplexMatrix,
    start: &ComplexMatrix,
    max_iter: usize,
    tol: f64,
) -> Result<StationaryReport> {
    let opts = AscentOptions {
        max_iter,
        tol,
        ..AscentOptions::default()
    };
    RelativeEntropyAscent::new(channel, reference)?.run(start, &opts)
}
