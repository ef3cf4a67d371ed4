//! Maximal output p-norm and minimal output entropy by multi-start ascent.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::capacity::{eigen_residual, run_starts, AscentOptions, RelativeEntropyAscent, SearchOptions, StartRecipe};
use crate::channels::KrausChannel;
use crate::error::Result;
use crate::matcore::{
    check_exponent, hermitian_eigen, psd_eigen, schatten_norm_of_spectrum, ComplexMatrix, DEFAULT_HERMITIAN_TOL,
};

/// Exponent used in place of p = ∞.
pub const INFINITY_SURROGATE: f64 = 64.0;

/// One start of a multi-start search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StartTrace {
    pub start: usize,
    pub recipe: StartRecipe,
    /// The ascended objective after each step (non-decreasing).
    pub objective: Vec<f64>,
    /// The reported quantity at the final state.
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Best value over all starts together with the pure state achieving it.
#[derive(Clone, Debug)]
pub struct PurityReport {
    pub value: f64,
    pub argmax_vector: Vec<Complex64>,
    pub argmax_state: ComplexMatrix,
    pub best_start: usize,
    pub starts_used: usize,
    pub traces: Vec<StartTrace>,
}

impl PurityReport {
    pub fn non_converged(&self) -> usize {
        self.traces.iter().filter(|t| !t.converged).count()
    }

    /// Picks the start with the best value; ties go to the lowest index.
    fn assemble(results: Vec<(StartTrace, Vec<Complex64>)>, better: impl Fn(f64, f64) -> bool) -> Self {
        let mut best = 0;
        for (i, (t, _)) in results.iter().enumerate() {
            if better(t.value, results[best].0.value) {
                best = i;
            }
        }
        let argmax_vector = results[best].1.clone();
        PurityReport {
            value: results[best].0.value,
            argmax_state: ComplexMatrix::outer(&argmax_vector),
            argmax_vector,
            best_start: best,
            starts_used: results.len(),
            traces: results.into_iter().map(|(t, _)| t).collect(),
        }
    }
}

struct PNormRun {
    trace: Vec<f64>,
    vector: Vec<Complex64>,
    output: ComplexMatrix,
    iterations: usize,
    converged: bool,
}

/// ψ ← top eigenvector of Φ̂(Φ(ψψ†)^{q−1}). Tr Φ(ω)^q is convex in ω, so
/// each step maximizes a lower bound touching at the current point.
fn p_norm_ascent(channel: &KrausChannel, q: f64, start: Vec<Complex64>, opts: &AscentOptions) -> Result<PNormRun> {
    let mut psi = start;
    let mut trace: Vec<f64> = Vec::new();
    let mut iterations = 0;
    loop {
        let out = channel.apply(&ComplexMatrix::outer(&psi))?.hermitian_part();
        let e = psd_eigen(&out)?;
        let obj = schatten_norm_of_spectrum(&e.values, q);
        let grad = channel.adjoint_apply(&e.apply_fn(|x| x.powf(q - 1.0)))?.hermitian_part();
        let eg = hermitian_eigen(&grad, DEFAULT_HERMITIAN_TOL * grad.frobenius_norm().max(1.0))?;
        let (lambda, top) = eg.top();
        let residual = eigen_residual(&grad, &psi, lambda) / lambda.abs().max(f64::MIN_POSITIVE);
        let stalled = trace.last().is_some_and(|&prev| obj - prev < opts.tol);
        trace.push(obj);
        let stationary = residual <= opts.residual_tol && (stalled || iterations == 0);
        if stationary || iterations >= opts.max_iter {
            return Ok(PNormRun { trace, vector: psi, output: out, iterations, converged: stationary });
        }
        psi = top;
        iterations += 1;
    }
}

/// ν_p(Φ) = sup ‖Φ(ψψ†)‖_p with default starts: random pure states on a
/// single system, the entangled recipes on a tensor product of two.
pub fn max_output_p_norm(channel: &KrausChannel, p: f64, starts: usize, seed: u64) -> Result<PurityReport> {
    max_output_p_norm_with(channel, p, &SearchOptions::for_factors(starts, seed, channel.factors()))
}

/// ν_p with explicit search settings. For p = ∞ the ascent runs with
/// exponent 64 and the reported value is the largest output eigenvalue.
pub fn max_output_p_norm_with(channel: &KrausChannel, p: f64, opts: &SearchOptions) -> Result<PurityReport> {
    check_exponent(p)?;
    let q = if p.is_infinite() { INFINITY_SURROGATE } else { p };
    let results = run_starts(opts, channel.factors(), |s, recipe, v| {
        let run = p_norm_ascent(channel, q, v, &opts.ascent)?;
        let value = if p.is_infinite() {
            psd_eigen(&run.output)?.values[0]
        } else {
            *run.trace.last().expect("non-empty trace")
        };
        Ok((
            StartTrace {
                start: s,
                recipe,
                objective: run.trace,
                value,
                iterations: run.iterations,
                converged: run.converged,
            },
            run.vector,
        ))
    })?;
    Ok(PurityReport::assemble(results, |a, b| a > b))
}

/// S_min(Φ) = min S[Φ(ψψ†)] with default starts (see [`max_output_p_norm`]).
pub fn min_output_entropy(channel: &KrausChannel, starts: usize, seed: u64) -> Result<PurityReport> {
    min_output_entropy_with(channel, &SearchOptions::for_factors(starts, seed, channel.factors()))
}

/// S_min by maximizing H[Φ(ω), I/d] = log2 d − S[Φ(ω)]; the traces record
/// that ascended quantity, the report value is the entropy.
pub fn min_output_entropy_with(channel: &KrausChannel, opts: &SearchOptions) -> Result<PurityReport> {
    let d = channel.dim();
    let mixed = ComplexMatrix::identity(d).scale(1.0 / d as f64);
    let ascent = RelativeEntropyAscent::new(channel, &mixed)?;
    let log_d = (d as f64).log2();
    let results = run_starts(opts, channel.factors(), |s, recipe, v| {
        let r = ascent.run(&ComplexMatrix::outer(&v), &opts.ascent)?;
        Ok((
            StartTrace {
                start: s,
                recipe,
                value: (log_d - r.objective).max(0.0),
                objective: r.trace,
                iterations: r.iterations,
                converged: r.converged,
            },
            r.vector,
        ))
    })?;
    Ok(PurityReport::assemble(results, |a, b| a < b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{build_depolarizing, build_qutrit};
    use crate::measures::{depol_reference, DepolMeasure};

    #[test]
    fn identity_channel_is_pure() {
        let id = KrausChannel::identity(3);
        let r = max_output_p_norm(&id, 2.0, 3, 1).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        let r = min_output_entropy(&id, 3, 1).unwrap();
        assert!(r.value.abs() < 1e-9);
    }

    #[test]
    fn depolarizing_two_norm() {
        let ch = build_depolarizing(3, 0.6).unwrap();
        let r = max_output_p_norm(&ch, 2.0, 4, 2).unwrap();
        let expected = ((0.6f64 + 0.4 / 3.0).powi(2) + 2.0 * (0.4f64 / 3.0).powi(2)).sqrt();
        assert!((r.value - expected).abs() < 1e-12);
    }

    #[test]
    fn qutrit_matches_depolarizing_reference() {
        let w = [0.3, 0.15, 0.1, 0.05];
        let a: f64 = w.iter().sum();
        let ch = build_qutrit(0.5, w).unwrap();
        for p in [1.5, 2.0, f64::INFINITY] {
            let r = max_output_p_norm(&ch, p, 10, 7).unwrap();
            let reference = depol_reference(3, a, DepolMeasure::PNorm(p)).unwrap();
            assert!((r.value - reference).abs() < 1e-8, "p = {p}: {} vs {reference}", r.value);
            assert!(r.traces.iter().all(|t| t.objective.windows(2).all(|w| w[1] >= w[0] - 1e-12)));
        }
        let r = min_output_entropy(&ch, 10, 7).unwrap();
        let reference = depol_reference(3, a, DepolMeasure::Entropy).unwrap();
        assert!((r.value - reference).abs() < 1e-8);
        assert!((r.argmax_vector[0].norm() - 1.0).abs() < 1e-4);
    }

    #[test]
    fn reproducible_for_fixed_seed() {
        let ch = build_qutrit(0.1, [0.3, 0.2, 0.1, 0.05]).unwrap();
        let a = min_output_entropy(&ch, 6, 11).unwrap();
        let b = min_output_entropy(&ch, 6, 11).unwrap();
        assert_eq!(a.traces, b.traces);
    }
}
