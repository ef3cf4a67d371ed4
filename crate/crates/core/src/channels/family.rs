//! Channel families of the form
//! Φ(ρ) = Σ_k a_k V_k ρ V_k† + (1 − a)(Tr ρ) I/d and their relatives.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::kraus::KrausChannel;
use super::weyl::{direct_sum, pauli, weyl_operators};
use crate::error::{Error, Result};
use crate::matcore::{hermitian_eigenvalues, ComplexMatrix, DEFAULT_HERMITIAN_TOL};

/// Unitarity tolerance for user-supplied V_k.
pub const UNITARY_TOL: f64 = 1e-10;

/// Parameter record for every channel family the crate can build.
///
/// Serializes as a JSON object tagged by `"family"`; angles are radians.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    /// Γ(ρ) = aρ + (1 − a)(Tr ρ) I/d with −1/(d²−1) ≤ a ≤ 1.
    Depolarizing { d: usize, a: f64 },
    /// Arbitrary unitaries V_k with weights a_k, Σ a_k = a < 1.
    Generalized {
        d: usize,
        weights: Vec<f64>,
        unitaries: Vec<ComplexMatrix>,
    },
    /// Σ_mn c_mn X^mZ^n ρ (X^mZ^n)†, `coefficients[m][n] = c_mn`.
    Weyl { d: usize, coefficients: Vec<Vec<f64>> },
    /// V_k = diag(e^{iφ_k1}, …, e^{iφ_kd}); `phases[k]` is row k.
    Diagonal {
        d: usize,
        weights: Vec<f64>,
        phases: Vec<Vec<f64>>,
    },
    /// d = 3 with V_k = e^{iθ}|e_0⟩⟨e_0| ⊕ σ_k, weights (a_0, a_1, a_2, a_3).
    Qutrit {
        #[serde(default)]
        theta: f64,
        weights: [f64; 4],
    },
    /// V_k = E_m ⊕ W_k with W_k the (d−m)-dimensional Weyl operators.
    DoublyDepolarizing { d: usize, m: usize, a: f64, b: f64 },
    /// Successively depolarizing channel with parameters x_1 … x_{d−1}.
    Successive { d: usize, x: Vec<f64> },
    /// CP (not trace-preserving) variant with contractions in place of unitaries.
    Contraction {
        d: usize,
        weights: Vec<f64>,
        contractions: Vec<ComplexMatrix>,
    },
}

impl FamilySpec {
    pub fn tag(&self) -> &'static str {
        match self {
            FamilySpec::Depolarizing { .. } => "depolarizing",
            FamilySpec::Generalized { .. } => "generalized",
            FamilySpec::Weyl { .. } => "weyl",
            FamilySpec::Diagonal { .. } => "diagonal",
            FamilySpec::Qutrit { .. } => "qutrit",
            FamilySpec::DoublyDepolarizing { .. } => "doubly_depolarizing",
            FamilySpec::Successive { .. } => "successive",
            FamilySpec::Contraction { .. } => "contraction",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            FamilySpec::Qutrit { .. } => 3,
            FamilySpec::Depolarizing { d, .. }
            | FamilySpec::Generalized { d, .. }
            | FamilySpec::Weyl { d, .. }
            | FamilySpec::Diagonal { d, .. }
            | FamilySpec::DoublyDepolarizing { d, .. }
            | FamilySpec::Successive { d, .. }
            | FamilySpec::Contraction { d, .. } => *d,
        }
    }

    /// Weight a of the unitary part (Σ a_k), where the family has one.
    pub fn mixing_weight(&self) -> Option<f64> {
        match self {
            FamilySpec::Depolarizing { a, .. } | FamilySpec::DoublyDepolarizing { a, .. } => Some(*a),
            FamilySpec::Generalized { weights, .. }
            | FamilySpec::Diagonal { weights, .. }
            | FamilySpec::Contraction { weights, .. } => Some(weights.iter().sum()),
            FamilySpec::Qutrit { weights, .. } => Some(weights.iter().sum()),
            FamilySpec::Successive { x, .. } => x.first().copied(),
            FamilySpec::Weyl { .. } => None,
        }
    }

    /// Canonical form: qutrit weights sorted non-increasing, everything else
    /// unchanged.
    pub fn normalized(&self) -> FamilySpec {
        match self {
            FamilySpec::Qutrit { theta, weights } => FamilySpec::Qutrit {
                theta: *theta,
                weights: normalize_qutrit_weights(*weights).0,
            },
            other => other.clone(),
        }
    }

    /// Flattened scalar parameters, in a fixed order per family.
    pub fn params(&self) -> Vec<(String, f64)> {
        let mut out = vec![("d".to_string(), self.dim() as f64)];
        let indexed = |prefix: &str, vals: &[f64], out: &mut Vec<(String, f64)>| {
            for (k, v) in vals.iter().enumerate() {
                out.push((format!("{prefix}{k}"), *v));
            }
        };
        match self {
            FamilySpec::Depolarizing { a, .. } => out.push(("a".into(), *a)),
            FamilySpec::Generalized { weights, .. } | FamilySpec::Contraction { weights, .. } => {
                out.push(("a".into(), weights.iter().sum()));
                indexed("a", weights, &mut out);
            }
            FamilySpec::Weyl { coefficients, .. } => {
                for (m, row) in coefficients.iter().enumerate() {
                    for (n, c) in row.iter().enumerate() {
                        out.push((format!("c{m}{n}"), *c));
                    }
                }
            }
            FamilySpec::Diagonal { weights, .. } => {
                out.push(("a".into(), weights.iter().sum()));
                indexed("a", weights, &mut out);
            }
            FamilySpec::Qutrit { theta, weights } => {
                out.push(("theta".into(), *theta));
                out.push(("a".into(), weights.iter().sum()));
                indexed("a", weights, &mut out);
            }
            FamilySpec::DoublyDepolarizing { m, a, b, .. } => {
                out.push(("m".into(), *m as f64));
                out.push(("a".into(), *a));
                out.push(("b".into(), *b));
            }
            FamilySpec::Successive { x, .. } => {
                for (k, v) in x.iter().enumerate() {
                    out.push((format!("x{}", k + 1), *v));
                }
            }
        }
        out
    }

    /// Builds the Kraus representation. The resulting channel carries the
    /// normalized spec as its family tag.
    pub fn build(&self) -> Result<KrausChannel> {
        match self {
            FamilySpec::Depolarizing { d, a } => build_depolarizing(*d, *a),
            FamilySpec::Generalized { d, weights, unitaries } => build_generalized(*d, weights, unitaries),
            FamilySpec::Weyl { d, coefficients } => build_weyl_channel(*d, coefficients),
            FamilySpec::Diagonal { d, weights, phases } => build_diagonal(*d, weights, phases),
            FamilySpec::Qutrit { theta, weights } => build_qutrit(*theta, *weights),
            FamilySpec::DoublyDepolarizing { d, m, a, b } => build_doubly_depolarizing(*d, *m, *a, *b),
            FamilySpec::Successive { d, x } => build_successive(*d, x),
            FamilySpec::Contraction { d, weights, contractions } => {
                build_contraction(*d, weights, contractions)
            }
        }
    }
}

/// Sorts qutrit weights non-increasing. Returns the sorted weights and the
/// permutation: `perm[i]` is the original index now in position i.
pub fn normalize_qutrit_weights(weights: [f64; 4]) -> ([f64; 4], [usize; 4]) {
    let mut perm = [0, 1, 2, 3];
    perm.sort_by(|&i, &j| weights[j].total_cmp(&weights[i]));
    (perm.map(|i| weights[i]), perm)
}

/// Checks weights are finite and non-negative with total in (0, 1).
fn mixing_total(weights: &[f64]) -> Result<f64> {
    if weights.is_empty() {
        return Err(Error::WeightsInvalid("no weights".into()));
    }
    if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
        return Err(Error::WeightsInvalid(format!("weight {w} is negative or not finite")));
    }
    let a: f64 = weights.iter().sum();
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::WeightsInvalid(format!("total weight {a} must lie in (0, 1)")));
    }
    Ok(a)
}

/// Noise Kraus set {√(w/d)|i⟩⟨j|} realizing ρ ↦ w (Tr ρ) I/d.
fn noise_ops(d: usize, w: f64) -> Vec<ComplexMatrix> {
    if w <= 0.0 {
        return Vec::new();
    }
    let s = (w / d as f64).sqrt();
    let mut ops = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            ops.push(ComplexMatrix::unit(d, i, j).scale(s));
        }
    }
    ops
}

/// Kraus set {√a_k V_k} ∪ noise for Σ a_k V_k ρ V_k† + (1 − a)(Tr ρ) I/d.
fn mixture_plus_noise(d: usize, weights: &[f64], unitaries: &[ComplexMatrix]) -> Vec<ComplexMatrix> {
    let a: f64 = weights.iter().sum();
    let mut ops: Vec<ComplexMatrix> = weights
        .iter()
        .zip(unitaries)
        .filter(|(w, _)| **w > 0.0)
        .map(|(w, v)| v.scale(w.sqrt()))
        .collect();
    ops.extend(noise_ops(d, 1.0 - a));
    ops
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::OutOfRange(format!("dimension must be at least 2, got {d}")));
    }
    Ok(())
}

/// The depolarizing channel aρ + (1 − a)(Tr ρ) I/d.
///
/// For a ≥ 0 the Kraus set is {√a I} ∪ {√((1−a)/d)|i⟩⟨j|}; for negative a
/// the Weyl-coefficient form is used instead.
pub fn build_depolarizing(d: usize, a: f64) -> Result<KrausChannel> {
    check_dim(d)?;
    let lower = -1.0 / ((d * d - 1) as f64);
    if !(a.is_finite() && a >= lower - 1e-15 && a <= 1.0) {
        return Err(Error::OutOfRange(format!(
            "depolarizing parameter {a} outside [{lower}, 1] for d = {d}"
        )));
    }
    let ops = if a >= 0.0 {
        let mut ops = vec![ComplexMatrix::identity(d).scale(a.sqrt())];
        ops.extend(noise_ops(d, 1.0 - a));
        ops
    } else {
        let coeffs = depolarizing_weyl_coefficients(d, a);
        weyl_kraus(d, &coeffs)
    };
    Ok(KrausChannel::from_kraus(ops)?.with_family(FamilySpec::Depolarizing { d, a }))
}

/// Weyl coefficients of the depolarizing channel: c_00 = a + (1−a)/d²,
/// every other c_mn = (1−a)/d².
pub fn depolarizing_weyl_coefficients(d: usize, a: f64) -> Vec<Vec<f64>> {
    let off = (1.0 - a) / (d * d) as f64;
    let mut c = vec![vec![off; d]; d];
    c[0][0] = (a + off).max(0.0);
    c
}

fn weyl_kraus(d: usize, c: &[Vec<f64>]) -> Vec<ComplexMatrix> {
    weyl_operators(d)
        .into_iter()
        .enumerate()
        .filter_map(|(k, w)| {
            let cmn = c[k / d][k % d];
            (cmn > 0.0).then(|| w.scale(cmn.sqrt()))
        })
        .collect()
}

/// Σ_k a_k V_k ρ V_k† + (1 − a)(Tr ρ) I/d for arbitrary unitaries V_k.
pub fn build_generalized(d: usize, weights: &[f64], unitaries: &[ComplexMatrix]) -> Result<KrausChannel> {
    check_dim(d)?;
    if weights.len() != unitaries.len() {
        return Err(Error::WeightsInvalid(format!(
            "{} weights for {} unitaries",
            weights.len(),
            unitaries.len()
        )));
    }
    mixing_total(weights)?;
    for v in unitaries {
        if v.rows() != d || !v.is_square() {
            return Err(Error::DimensionMismatch { expected: d, got: v.rows() });
        }
        let r = v.unitary_residual();
        if r > UNITARY_TOL {
            return Err(Error::NotUnitary(r));
        }
    }
    let ops = mixture_plus_noise(d, weights, unitaries);
    Ok(KrausChannel::from_kraus(ops)?.with_family(FamilySpec::Generalized {
        d,
        weights: weights.to_vec(),
        unitaries: unitaries.to_vec(),
    }))
}

/// Weyl-covariant channel Σ_mn c_mn X^mZ^n ρ (X^mZ^n)†.
pub fn build_weyl_channel(d: usize, c: &[Vec<f64>]) -> Result<KrausChannel> {
    check_dim(d)?;
    if c.len() != d || c.iter().any(|row| row.len() != d) {
        return Err(Error::WeightsInvalid(format!("coefficients must be {d}x{d}")));
    }
    if c.iter().flatten().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(Error::WeightsInvalid("negative Weyl coefficient".into()));
    }
    let total: f64 = c.iter().flatten().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::WeightsInvalid(format!("Weyl coefficients sum to {total}")));
    }
    Ok(KrausChannel::from_kraus(weyl_kraus(d, c))?.with_family(FamilySpec::Weyl {
        d,
        coefficients: c.to_vec(),
    }))
}

/// Channel with simultaneously diagonal unitaries V_k = diag(e^{iφ_km}).
pub fn build_diagonal(d: usize, weights: &[f64], phases: &[Vec<f64>]) -> Result<KrausChannel> {
    check_dim(d)?;
    if weights.len() != phases.len() || phases.iter().any(|row| row.len() != d) {
        return Err(Error::WeightsInvalid(format!(
            "need one phase row of length {d} per weight"
        )));
    }
    mixing_total(weights)?;
    let unitaries: Vec<ComplexMatrix> = phases.iter().map(|row| diagonal_unitary(row)).collect();
    let ops = mixture_plus_noise(d, weights, &unitaries);
    Ok(KrausChannel::from_kraus(ops)?.with_family(FamilySpec::Diagonal {
        d,
        weights: weights.to_vec(),
        phases: phases.to_vec(),
    }))
}

pub fn diagonal_unitary(phases: &[f64]) -> ComplexMatrix {
    let diag: Vec<Complex64> = phases.iter().map(|&p| Complex64::from_polar(1.0, p)).collect();
    ComplexMatrix::from_diag(&diag)
}

/// The unitaries e^{iθ}|e_0⟩⟨e_0| ⊕ σ_k, k = 0..3.
pub fn qutrit_unitaries(theta: f64) -> Vec<ComplexMatrix> {
    let phase = ComplexMatrix::from_diag(&[Complex64::from_polar(1.0, theta)]);
    (0..4).map(|k| direct_sum(&phase, &pauli(k))).collect()
}

/// Qutrit family with V_k = e^{iθ}|e_0⟩⟨e_0| ⊕ σ_k. Weights are sorted
/// non-increasing before assignment to σ_0..σ_3.
pub fn build_qutrit(theta: f64, weights: [f64; 4]) -> Result<KrausChannel> {
    mixing_total(&weights)?;
    if !theta.is_finite() {
        return Err(Error::OutOfRange("theta must be finite".into()));
    }
    let (sorted, _) = normalize_qutrit_weights(weights);
    let ops = mixture_plus_noise(3, &sorted, &qutrit_unitaries(theta));
    Ok(KrausChannel::from_kraus(ops)?.with_family(FamilySpec::Qutrit {
        theta,
        weights: sorted,
    }))
}

/// Weights (a_0, a_k≠0) of the doubly depolarizing construction:
/// a_0 = a[b(d−m)² + (1−b)]/(d−m)², every other a(1−b)/(d−m)².
pub fn doubly_depolarizing_weights(d: usize, m: usize, a: f64, b: f64) -> Vec<f64> {
    let k = ((d - m) * (d - m)) as f64;
    let mut w = vec![a * (1.0 - b) / k; (d - m) * (d - m)];
    w[0] = a * (b * k + (1.0 - b)) / k;
    w
}

/// Doubly depolarizing channel: V_k = E_m ⊕ W_k with W_k the Weyl operators
/// of the (d−m)-dimensional complement.
pub fn build_doubly_depolarizing(d: usize, m: usize, a: f64, b: f64) -> Result<KrausChannel> {
    check_dim(d)?;
    if m == 0 || m + 1 >= d {
        return Err(Error::BadPartition { d, m });
    }
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::OutOfRange(format!("a = {a} must lie in (0, 1)")));
    }
    if !(0.0..=1.0).contains(&b) {
        return Err(Error::OutOfRange(format!("b = {b} must lie in [0, 1]")));
    }
    let e_m = ComplexMatrix::identity(m);
    let unitaries: Vec<ComplexMatrix> = weyl_operators(d - m)
        .iter()
        .map(|w| direct_sum(&e_m, w))
        .collect();
    let weights = doubly_depolarizing_weights(d, m, a, b);
    let ops = mixture_plus_noise(d, &weights, &unitaries);
    Ok(KrausChannel::from_kraus(ops)?.with_family(FamilySpec::DoublyDepolarizing { d, m, a, b }))
}

/// Unitary mixture on n dimensions used by the successive construction:
/// M_2 = identity, and M_n = 1 ⊕ (Γ_y ∘ M_{n−1}) where Γ_y is the
/// (n−1)-dimensional depolarizing channel written with Weyl operators.
/// `params` holds y for levels n, n−1, …, 3.
fn successive_mixture(n: usize, params: &[f64]) -> Vec<(f64, ComplexMatrix)> {
    if n <= 2 {
        return vec![(1.0, ComplexMatrix::identity(n))];
    }
    let inner = successive_mixture(n - 1, &params[1..]);
    let y = params[0];
    let k = ((n - 1) * (n - 1)) as f64;
    let one = ComplexMatrix::identity(1);
    let mut out = Vec::with_capacity(inner.len() * (n - 1) * (n - 1));
    for (idx, p) in weyl_operators(n - 1).iter().enumerate() {
        let wp = if idx == 0 { y + (1.0 - y) / k } else { (1.0 - y) / k };
        for (v, w) in &inner {
            out.push((wp * v, direct_sum(&one, &(p * w))));
        }
    }
    out
}

/// Successively depolarizing channel with parameters x_1 … x_{d−1} in (0, 1).
pub fn build_successive(d: usize, x: &[f64]) -> Result<KrausChannel> {
    check_dim(d)?;
    if x.len() != d - 1 {
        return Err(Error::OutOfRange(format!(
            "successive channel in d = {d} needs {} parameters, got {}",
            d - 1,
            x.len()
        )));
    }
    if let Some(v) = x.iter().find(|v| !(**v > 0.0 && **v < 1.0)) {
        return Err(Error::OutOfRange(format!("parameter {v} outside (0, 1)")));
    }
    let mixture = successive_mixture(d, &x[1..]);
    let (weights, unitaries): (Vec<f64>, Vec<ComplexMatrix>) =
        mixture.into_iter().map(|(w, u)| (w * x[0], u)).unzip();
    let ops = mixture_plus_noise(d, &weights, &unitaries);
    Ok(KrausChannel::from_kraus(ops)?.with_family(FamilySpec::Successive { d, x: x.to_vec() }))
}

/// Operator norm of V via the largest eigenvalue of V†V.
fn operator_norm(v: &ComplexMatrix) -> Result<f64> {
    let vals = hermitian_eigenvalues(&(&v.adjoint() * v), DEFAULT_HERMITIAN_TOL)?;
    Ok(vals[0].max(0.0).sqrt())
}

/// CP map Σ_k (a_k/a) V_k [aρ + (1−a)(Tr ρ) I/d] V_k† with contractions V_k.
pub fn build_contraction(d: usize, weights: &[f64], contractions: &[ComplexMatrix]) -> Result<KrausChannel> {
    check_dim(d)?;
    if weights.len() != contractions.len() {
        return Err(Error::WeightsInvalid(format!(
            "{} weights for {} operators",
            weights.len(),
            contractions.len()
        )));
    }
    let a = mixing_total(weights)?;
    let mut ops = Vec::new();
    for (&w, v) in weights.iter().zip(contractions) {
        if v.rows() != d || !v.is_square() {
            return Err(Error::DimensionMismatch { expected: d, got: v.rows() });
        }
        let norm = operator_norm(v)?;
        if norm > 1.0 + UNITARY_TOL {
            return Err(Error::OutOfRange(format!("operator norm {norm} exceeds 1")));
        }
        if w == 0.0 {
            continue;
        }
        ops.push(v.scale(w.sqrt()));
        let s = (w * (1.0 - a) / (a * d as f64)).sqrt();
        for i in 0..d {
            for j in 0..d {
                ops.push((v * &ComplexMatrix::unit(d, i, j)).scale(s));
            }
        }
    }
    Ok(KrausChannel::from_kraus(ops)?.with_family(FamilySpec::Contraction {
        d,
        weights: weights.to_vec(),
        contractions: contractions.to_vec(),
    }))
}
