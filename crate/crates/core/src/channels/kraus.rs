use num_complex::Complex64;

use super::family::FamilySpec;
use crate::error::{Error, Result};
use crate::matcore::{ComplexMatrix, ZERO};
use crate::sample::{random_density_matrix, stream_rng};

/// Completeness/unitality tolerance used to set the channel flags.
pub const KRAUS_TOL: f64 = 1e-10;

type Pattern = Vec<(usize, usize, Complex64)>;

/// A completely positive map ρ ↦ Σ_k A_k ρ A_k† on d×d matrices.
///
/// Kraus operators are stored dense. Their nonzero entries are cached as
/// well, which makes application cheap for the highly structured operators
/// of the families in this crate (matrix units, Weyl operators and their
/// tensor products).
#[derive(Clone, Debug)]
pub struct KrausChannel {
    dim: usize,
    factors: Vec<usize>,
    ops: Vec<ComplexMatrix>,
    pattern: Vec<Pattern>,
    trace_preserving: bool,
    unital: bool,
    family: Option<FamilySpec>,
}

impl KrausChannel {
    /// Builds a channel from Kraus operators. Operators that are identically
    /// zero are dropped. The trace-preserving and unital flags are derived
    /// from the completeness residuals.
    pub fn from_kraus(ops: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = ops.first().map(ComplexMatrix::rows).ok_or_else(|| {
            Error::WeightsInvalid("a channel needs at least one Kraus operator".into())
        })?;
        for op in &ops {
            if !op.is_square() || op.rows() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: op.rows().max(op.cols()),
                });
            }
        }
        let ops: Vec<ComplexMatrix> = ops.into_iter().filter(|op| op.max_abs() > 0.0).collect();
        if ops.is_empty() {
            return Err(Error::WeightsInvalid("all Kraus operators vanish".into()));
        }
        let pattern = ops.iter().map(nonzero_pattern).collect();
        let mut ch = KrausChannel {
            dim,
            factors: vec![dim],
            ops,
            pattern,
            trace_preserving: false,
            unital: false,
            family: None,
        };
        ch.trace_preserving = ch.completeness_residual() <= KRAUS_TOL;
        ch.unital = ch.unitality_residual() <= KRAUS_TOL;
        Ok(ch)
    }

    pub fn identity(d: usize) -> Self {
        Self::from_kraus(vec![ComplexMatrix::identity(d)]).expect("identity is a valid channel")
    }

    pub(crate) fn with_family(mut self, spec: FamilySpec) -> Self {
        self.family = Some(spec);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimensions of the tensor factors (a single entry unless built by
    /// [`KrausChannel::tensor`]).
    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn kraus_ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn is_trace_preserving(&self) -> bool {
        self.trace_preserving
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    /// The family this channel was built from, if any.
    pub fn family(&self) -> Option<&FamilySpec> {
        self.family.as_ref()
    }

    /// ‖Σ A_k†A_k − I‖_F.
    pub fn completeness_residual(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.dim, self.dim);
        for op in &self.ops {
            sum = &sum + &(&op.adjoint() * op);
        }
        (&sum - &ComplexMatrix::identity(self.dim)).frobenius_norm()
    }

    /// ‖Σ A_kA_k† − I‖_F.
    pub fn unitality_residual(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.dim, self.dim);
        for op in &self.ops {
            sum = &sum + &(op * &op.adjoint());
        }
        (&sum - &ComplexMatrix::identity(self.dim)).frobenius_norm()
    }

    fn check_input(&self, m: &ComplexMatrix) -> Result<()> {
        if !m.is_square() || m.rows() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: m.rows(),
            });
        }
        Ok(())
    }

    /// Φ(ρ) = Σ A_k ρ A_k†. Accepts any square matrix of the right size
    /// (the linear extension of the channel).
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_input(rho)?;
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n, n);
        let mut tmp = ComplexMatrix::zeros(n, n);
        for pat in &self.pattern {
            // tmp = A ρ
            zero(&mut tmp);
            for &(i, j, v) in pat {
                for l in 0..n {
                    tmp[(i, l)] += v * rho[(j, l)];
                }
            }
            // out += tmp A†
            for &(m, l, v) in pat {
                let vc = v.conj();
                for r in 0..n {
                    out[(r, m)] += tmp[(r, l)] * vc;
                }
            }
        }
        Ok(out)
    }

    /// Φ̂(X) = Σ A_k† X A_k, the Hilbert–Schmidt adjoint.
    pub fn adjoint_apply(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_input(x)?;
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n, n);
        let mut tmp = ComplexMatrix::zeros(n, n);
        for pat in &self.pattern {
            // tmp = X A
            zero(&mut tmp);
            for &(i, j, v) in pat {
                for r in 0..n {
                    tmp[(r, j)] += x[(r, i)] * v;
                }
            }
            // out += A† tmp
            for &(i, j, v) in pat {
                let vc = v.conj();
                for c in 0..n {
                    out[(j, c)] += vc * tmp[(i, c)];
                }
            }
        }
        Ok(out)
    }

    /// Φ ⊗ Ω with Kraus set {A_i ⊗ B_j}.
    pub fn tensor(&self, other: &KrausChannel) -> KrausChannel {
        let mut ops = Vec::with_capacity(self.ops.len() * other.ops.len());
        for a in &self.ops {
            for b in &other.ops {
                ops.push(a.kron(b));
            }
        }
        let pattern = ops.iter().map(nonzero_pattern).collect();
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        KrausChannel {
            dim: self.dim * other.dim,
            factors,
            ops,
            pattern,
            trace_preserving: self.trace_preserving && other.trace_preserving,
            unital: self.unital && other.unital,
            family: None,
        }
    }

    /// Choi matrix (I ⊗ Φ)(|β⟩⟨β|) with |β⟩ = d^{-1/2} Σ_i |ii⟩.
    pub fn choi_matrix(&self) -> ComplexMatrix {
        let d = self.dim;
        let mut choi = ComplexMatrix::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                let block = self
                    .apply(&ComplexMatrix::unit(d, i, j))
                    .expect("matrix unit has channel dimension");
                for k in 0..d {
                    for l in 0..d {
                        choi[(i * d + k, j * d + l)] = block[(k, l)] / d as f64;
                    }
                }
            }
        }
        choi
    }
}

fn zero(m: &mut ComplexMatrix) {
    let n = m.rows();
    for i in 0..n {
        for j in 0..m.cols() {
            m[(i, j)] = ZERO;
        }
    }
}

fn nonzero_pattern(op: &ComplexMatrix) -> Pattern {
    let mut pat = Vec::new();
    for i in 0..op.rows() {
        for j in 0..op.cols() {
            let v = op[(i, j)];
            if v != ZERO {
                pat.push((i, j, v));
            }
        }
    }
    pat
}

/// Largest ‖Φ(UρU†) − U′Φ(ρ)U′†‖_F over paired group elements and
/// `samples` random states drawn from `seed`.
pub fn check_covariance(
    channel: &KrausChannel,
    group_in: &[ComplexMatrix],
    group_out: &[ComplexMatrix],
    samples: usize,
    seed: u64,
) -> Result<f64> {
    if group_in.len() != group_out.len() {
        return Err(Error::DimensionMismatch {
            expected: group_in.len(),
            got: group_out.len(),
        });
    }
    let d = channel.dim();
    let mut worst: f64 = 0.0;
    for s in 0..samples {
        let rho = random_density_matrix(d, &mut stream_rng(seed, s as u64));
        let out = channel.apply(&rho)?;
        for (u, v) in group_in.iter().zip(group_out) {
            if u.rows() != d || v.rows() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: u.rows().max(v.rows()),
                });
            }
            let lhs = channel.apply(&(&(u * &rho) * &u.adjoint()))?;
            let rhs = &(v * &out) * &v.adjoint();
            worst = worst.max((&lhs - &rhs).frobenius_norm());
        }
    }
    Ok(worst)
}
