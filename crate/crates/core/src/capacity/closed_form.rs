//! Optimal ensembles for the families whose signal states are known: the
//! successive minimal-entropy inputs, with weights fixed by a 1-D
//! stationarity condition.

use num_complex::Complex64;

use crate::channels::{normalize_qutrit_weights, FamilySpec};
use crate::error::{Error, Result};
use crate::matcore::{basis_vector, ComplexMatrix};
use crate::measures::{depol_output_spectrum, depol_reference, entropy_of_spectrum, DepolMeasure};

use super::classical::{classical_capacity, cq_matrix, BA_TOL};
use super::ensemble::{holevo_chi, Ensemble};

/// Closed-form optimum for the qutrit family.
#[derive(Clone, Debug)]
pub struct QutritOptimum {
    pub a: f64,
    pub lambda1: f64,
    /// S[Φ(e_±)] − S[Φ(e_0)].
    pub delta_s: f64,
    /// Weight on each of e_+ and e_−.
    pub x: f64,
    pub s_min: f64,
    pub c_star: f64,
    pub ensemble: Ensemble,
    pub avg_output: ComplexMatrix,
}

/// Total weight a and λ_1 = 2(a_0 + a_1)/a − 1 after sorting the weights.
pub fn qutrit_lambda1(weights: [f64; 4]) -> Result<(f64, f64)> {
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::WeightsInvalid(format!("qutrit weights {weights:?}")));
    }
    let (w, _) = normalize_qutrit_weights(weights);
    let a: f64 = w.iter().sum();
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::OutOfRange(format!("total weight {a} must lie in (0, 1)")));
    }
    Ok((a, 2.0 * (w[0] + w[1]) / a - 1.0))
}

/// Output spectra of e_0 and of e_± for the qutrit family.
pub fn qutrit_signal_spectra(a: f64, lambda1: f64) -> ([f64; 3], [f64; 3]) {
    let n = (1.0 - a) / 3.0;
    (
        [a + n, n, n],
        [a * (1.0 + lambda1) / 2.0 + n, a * (1.0 - lambda1) / 2.0 + n, n],
    )
}

/// x = [(1+2a)r − (1−a)] / [3a(1 + 2r)] with r = 2^{−ΔS/a}, evaluated as
/// 1/3 − (1−r)/[3a(1+2r)] so that ΔS = 0 gives exactly 1/3.
pub fn qutrit_x(a: f64, delta_s: f64) -> f64 {
    let e = -delta_s / a;
    let r = e.exp2();
    let one_minus_r = -(e * std::f64::consts::LN_2).exp_m1();
    1.0 / 3.0 - one_minus_r / (3.0 * a * (1.0 + 2.0 * r))
}

/// The states e_0, e_+ = (e_1 + e_2)/√2, e_− = (e_1 − e_2)/√2.
pub fn qutrit_signal_basis() -> Vec<Vec<Complex64>> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    vec![
        basis_vector(3, 0),
        vec![z, Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
        vec![z, Complex64::new(h, 0.0), Complex64::new(-h, 0.0)],
    ]
}

/// Optimal ensemble {(1−2x) e_0, x e_+, x e_−} and its capacity value.
pub fn qutrit_optimal_ensemble(weights: [f64; 4]) -> Result<QutritOptimum> {
    let (a, lambda1) = qutrit_lambda1(weights)?;
    let (s0_spec, s1_spec) = qutrit_signal_spectra(a, lambda1);
    let s0 = entropy_of_spectrum(&s0_spec);
    let s1 = entropy_of_spectrum(&s1_spec);
    let delta_s = s1 - s0;
    let x = qutrit_x(a, delta_s);
    if !(0.0..=1.0 / 3.0 + 1e-15).contains(&x) {
        return Err(Error::OutOfRange(format!("optimal weight x = {x} outside [0, 1/3]")));
    }
    let x = x.min(1.0 / 3.0);
    let n = (1.0 - a) / 3.0;
    let avg = [a * (1.0 - 2.0 * x) + n, a * x + n, a * x + n];
    let c_star = entropy_of_spectrum(&avg) - (1.0 - 2.0 * x) * s0 - 2.0 * x * s1;
    let states = qutrit_signal_basis().iter().map(|v| ComplexMatrix::outer(v)).collect();
    Ok(QutritOptimum {
        a,
        lambda1,
        delta_s,
        x,
        s_min: s0,
        c_star,
        ensemble: Ensemble::new(vec![1.0 - 2.0 * x, x, x], states)?,
        avg_output: ComplexMatrix::from_real_diag(&avg),
    })
}

/// Closed-form optimum for the doubly depolarizing family.
#[derive(Clone, Debug)]
pub struct DoublyDepolOptimum {
    /// Weight on each of e_1 … e_m.
    pub t: f64,
    /// Weight on each of e_{m+1} … e_d.
    pub t_perp: f64,
    /// S[Φ(e_d)] − S[Φ(e_1)].
    pub delta_s: f64,
    pub s_min: f64,
    pub c_star: f64,
    pub ensemble: Ensemble,
    pub avg_output: ComplexMatrix,
}

fn check_doubly(d: usize, m: usize, a: f64, b: f64) -> Result<()> {
    if m == 0 || m + 1 >= d {
        return Err(Error::BadPartition { d, m });
    }
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::OutOfRange(format!("a = {a} must lie in (0, 1)")));
    }
    if !(0.0..=1.0).contains(&b) {
        return Err(Error::OutOfRange(format!("b = {b} must lie in [0, 1]")));
    }
    Ok(())
}

/// Output spectra of e_1 (inside E_m) and e_d (inside E_m^⊥).
pub fn doubly_depol_signal_spectra(d: usize, m: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let n = (1.0 - a) / d as f64;
    let spread = a * (1.0 - b) / (d - m) as f64;
    let mut first = vec![n; d];
    first[0] += a;
    let mut last = vec![n; d];
    for v in last.iter_mut().take(d - m) {
        *v += spread;
    }
    last[0] += a * b;
    (first, last)
}

/// Solves a·log2[(a d t⊥ + 1 − a)/(a d t + 1 − a)] = −ΔS with
/// m t + (d − m) t⊥ = 1. Closed form when d = 2m, bisection otherwise.
pub fn doubly_depol_t_perp(d: usize, m: usize, a: f64, delta_s: f64) -> f64 {
    let df = d as f64;
    let r = (-delta_s / a).exp2();
    if d == 2 * m {
        return (a * (1.0 + r) - (1.0 - r)) / (a * df * (1.0 + r));
    }
    let (mf, kf) = (m as f64, (d - m) as f64);
    let f = |tp: f64| {
        let t = (1.0 - kf * tp) / mf;
        a * ((a * df * tp + 1.0 - a) / (a * df * t + 1.0 - a)).log2() + delta_s
    };
    // f is increasing in t⊥, f(1/d) = ΔS ≥ 0.
    let (mut lo, mut hi) = (0.0, 1.0 / df);
    if f(lo) >= 0.0 {
        return 0.0;
    }
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Optimal ensemble {t on e_1..e_m, t⊥ on e_{m+1}..e_d} and its capacity.
pub fn doubly_depol_optimal_ensemble(d: usize, m: usize, a: f64, b: f64) -> Result<DoublyDepolOptimum> {
    check_doubly(d, m, a, b)?;
    let (first, last) = doubly_depol_signal_spectra(d, m, a, b);
    let s1 = entropy_of_spectrum(&first);
    let sd = entropy_of_spectrum(&last);
    let delta_s = sd - s1;
    let t_perp = doubly_depol_t_perp(d, m, a, delta_s);
    let t = (1.0 - (d - m) as f64 * t_perp) / m as f64;
    if t_perp < 0.0 || t < 0.0 {
        return Err(Error::OutOfRange(format!("weights t = {t}, t_perp = {t_perp}")));
    }
    let n = (1.0 - a) / d as f64;
    let avg: Vec<f64> = (0..d).map(|j| if j < m { a * t + n } else { a * t_perp + n }).collect();
    let c_star = entropy_of_spectrum(&avg) - m as f64 * t * s1 - (d - m) as f64 * t_perp * sd;
    let weights: Vec<f64> = (0..d).map(|j| if j < m { t } else { t_perp }).collect();
    let states = (0..d).map(|j| ComplexMatrix::outer(&basis_vector(d, j))).collect();
    Ok(DoublyDepolOptimum {
        t,
        t_perp,
        delta_s,
        s_min: s1,
        c_star,
        ensemble: Ensemble::new(weights, states)?,
        avg_output: ComplexMatrix::from_real_diag(&avg),
    })
}

/// log2 d − S_min of the depolarizing channel with the same a: the capacity
/// of every channel whose V_k are simultaneously diagonal.
pub fn diagonal_family_capacity(d: usize, a: f64) -> Result<f64> {
    Ok((d as f64).log2() - depol_reference(d, a, DepolMeasure::Entropy)?)
}

/// A candidate optimal ensemble with its average output and capacity value.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub ensemble: Ensemble,
    pub avg_output: ComplexMatrix,
    pub capacity: f64,
    /// Minimal output entropy of the channel (closed form where known).
    pub s_min: f64,
}

/// Candidate for every family with a known signal ensemble.
///
/// Depolarizing and diagonal channels use the uniform basis ensemble. For
/// the successive family the basis ensemble is weighted by the optimal
/// input of the classical channel given by the CQ matrix.
pub fn closed_form_candidate(spec: &FamilySpec) -> Result<Candidate> {
    match spec {
        FamilySpec::Qutrit { weights, .. } => {
            let o = qutrit_optimal_ensemble(*weights)?;
            Ok(Candidate { ensemble: o.ensemble, avg_output: o.avg_output, capacity: o.c_star, s_min: o.s_min })
        }
        FamilySpec::DoublyDepolarizing { d, m, a, b } => {
            let o = doubly_depol_optimal_ensemble(*d, *m, *a, *b)?;
            Ok(Candidate { ensemble: o.ensemble, avg_output: o.avg_output, capacity: o.c_star, s_min: o.s_min })
        }
        FamilySpec::Depolarizing { d, a } => uniform_basis_candidate(*d, *a),
        FamilySpec::Diagonal { d, weights, .. } => uniform_basis_candidate(*d, weights.iter().sum()),
        FamilySpec::Successive { d, x } => {
            let ch = spec.build()?;
            let cc = classical_capacity(&cq_matrix(&ch), BA_TOL)?;
            let states = (0..*d).map(|j| ComplexMatrix::outer(&basis_vector(*d, j))).collect();
            let ensemble = Ensemble::new(cc.distribution.clone(), states)?;
            let capacity = holevo_chi(&ch, &ensemble)?;
            let avg_output = ch.apply(&ensemble.average())?.hermitian_part();
            let s_min = depol_reference(*d, x[0], DepolMeasure::Entropy)?;
            Ok(Candidate { ensemble, avg_output, capacity, s_min })
        }
        other => Err(Error::ConfigInvalid(format!(
            "no closed-form capacity candidate for the {} family",
            other.tag()
        ))),
    }
}

fn uniform_basis_candidate(d: usize, a: f64) -> Result<Candidate> {
    let states = (0..d).map(|j| ComplexMatrix::outer(&basis_vector(d, j))).collect();
    let out = depol_output_spectrum(d, a)?;
    Ok(Candidate {
        ensemble: Ensemble::new(vec![1.0 / d as f64; d], states)?,
        avg_output: ComplexMatrix::identity(d).scale(1.0 / d as f64),
        capacity: diagonal_family_capacity(d, a)?,
        s_min: entropy_of_spectrum(&out),
    })
}
