//! Randomized invariant checks, one seed per case. Each returns the margin
//! by which the invariant held (or a description of the violation), so the
//! proptest suite and the acceptance runner share the same generators.

use num_complex::Complex64;
use qchan::capacity::shor_ascent;
use qchan::channels::*;
use qchan::matcore::{normalized, ComplexMatrix};
use qchan::measures::*;
use qchan::sample::*;
use rand::Rng;
use rand_chacha::ChaCha20Rng;

pub type Check = Result<f64, String>;

fn rng(seed: u64) -> ChaCha20Rng {
    stream_rng(seed, 0)
}

/// [a + n, n, …, n] with n = (1−a)/d, written out.
pub fn extremal(d: usize, a: f64) -> Vec<f64> {
    let n = (1.0 - a) / d as f64;
    let mut v = vec![n; d];
    v[0] += a;
    v
}

/// Minimum over k of Σ_{i≤k} x_i − Σ_{i≤k} y_i (both sorted descending).
pub fn partial_sum_margin(x: &[f64], y: &[f64]) -> f64 {
    let sort = |v: &[f64]| {
        let mut v = v.to_vec();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    };
    let (x, y) = (sort(x), sort(y));
    let (mut sx, mut sy, mut m) = (0.0, 0.0, f64::INFINITY);
    for (a, b) in x.iter().zip(&y) {
        sx += a;
        sy += b;
        m = m.min(sx - sy);
    }
    m
}

fn random_probability(d: usize, rng: &mut impl Rng) -> Vec<f64> {
    let raw: Vec<f64> = (0..d).map(|_| -rng.gen_range(1e-9..1.0f64).ln()).collect();
    let s: f64 = raw.iter().sum();
    raw.iter().map(|x| x / s).collect()
}

/// A random channel Σ a_k U_k ρ U_k† + (1−a) Tr ρ I/d with 1–3 unitaries.
pub fn random_generalized(d: usize, rng: &mut impl Rng) -> KrausChannel {
    let k = rng.gen_range(1..=3);
    let a = rng.gen_range(0.05..0.95);
    let w: Vec<f64> = random_probability(k, rng).iter().map(|x| x * a).collect();
    let us: Vec<_> = (0..k).map(|_| random_unitary(d, rng)).collect();
    build_generalized(d, &w, &us).unwrap()
}

fn spectrum(m: &ComplexMatrix) -> Result<Spectrum, String> {
    Spectrum::of(m).map_err(|e| e.to_string())
}

/// x ≻ y (with y = Dx, D unistochastic) implies Σx^p ≥ Σy^p for p > 1,
/// max x ≥ max y and S(x) ≤ S(y).
pub fn majorization_implies_orderings(seed: u64) -> Check {
    let mut rng = rng(seed);
    let d = rng.gen_range(2..=6);
    let x = random_probability(d, &mut rng);
    let u = random_unitary(d, &mut rng);
    let y: Vec<f64> = (0..d).map(|i| (0..d).map(|j| u[(i, j)].norm_sqr() * x[j]).sum()).collect();
    let (sx, sy) = (Spectrum::new(x).unwrap(), Spectrum::new(y).unwrap());
    if !majorizes(&sx, &sy).unwrap() {
        return Err(format!("{:?} does not majorize {:?}", sx.values(), sy.values()));
    }
    let mut margin = f64::INFINITY;
    for p in [1.1, 1.5, 2.0, 3.0, 7.0] {
        margin = margin.min(sx.power_sum(p) - sy.power_sum(p));
    }
    margin = margin.min(sx.values()[0] - sy.values()[0]);
    margin = margin.min(sy.entropy() - sx.entropy());
    if margin < -1e-12 {
        return Err(format!("ordering violated by {margin:e}"));
    }
    Ok(margin)
}

/// A channel whose common-eigenvector subspace is known, and a pure state at
/// angle θ ∈ [0.1, π/2] from that subspace. Returns (channel, a, ψ).
fn off_common_case(seed: u64) -> (KrausChannel, f64, Vec<Complex64>) {
    let mut rng = rng(seed);
    let theta = rng.gen_range(0.1..=std::f64::consts::FRAC_PI_2);
    let (ch, a, common, d) = if seed.is_multiple_of(2) {
        let w: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.02..0.24));
        let ch = build_qutrit(rng.gen_range(-3.0..3.0), w).unwrap();
        (ch, w.iter().sum::<f64>(), 1, 3)
    } else {
        let (a, b) = (rng.gen_range(0.1..0.95), rng.gen_range(0.0..0.95));
        (build_doubly_depolarizing(4, 2, a, b).unwrap(), a, 2, 4)
    };
    let mut inside = vec![Complex64::new(0.0, 0.0); d];
    let mut outside = inside.clone();
    for j in 0..d {
        let z = random_complex(&mut rng);
        if j < common {
            inside[j] = z;
        } else {
            outside[j] = z;
        }
    }
    let (inside, outside) = (normalized(&inside).unwrap(), normalized(&outside).unwrap());
    let psi: Vec<Complex64> = inside
        .iter()
        .zip(&outside)
        .map(|(u, w)| u * theta.cos() + w * theta.sin())
        .collect();
    (ch, a, psi)
}

/// Pure states away from the common-eigenvector subspace have outputs
/// strictly majorized by the depolarizing extremal spectrum: purity drops
/// and entropy rises by more than 1e-9.
pub fn strict_majorization_off_common(seed: u64) -> Check {
    let (ch, a, psi) = off_common_case(seed);
    let d = ch.dim();
    let out = spectrum(&ch.apply(&ComplexMatrix::outer(&psi)).unwrap())?;
    let ext = Spectrum::new(extremal(d, a)).unwrap();
    if !majorizes(&ext, &out).unwrap() {
        return Err(format!("extremal does not majorize {:?}", out.values()));
    }
    let margin = (ext.power_sum(2.0) - out.power_sum(2.0)).min(out.entropy() - ext.entropy());
    if margin <= 1e-9 {
        return Err(format!("gap {margin:e} not strict"));
    }
    Ok(margin)
}

/// Outputs of Σ (a_k/a) V_k Γ(ρ) V_k† with contractions V_k are
/// submajorized by the spectrum of Γ on a pure state.
pub fn contraction_submajorization(seed: u64) -> Check {
    let mut rng = rng(seed);
    let d = rng.gen_range(2..=4);
    let k = rng.gen_range(1..=3);
    let a = rng.gen_range(0.05..0.95);
    let w: Vec<f64> = random_probability(k, &mut rng).iter().map(|x| x * a).collect();
    let vs: Vec<ComplexMatrix> = (0..k)
        .map(|_| {
            let s: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..=1.0)).collect();
            let (u, v) = (random_unitary(d, &mut rng), random_unitary(d, &mut rng));
            &(&u * &ComplexMatrix::from_real_diag(&s)) * &v
        })
        .collect();
    let ch = build_contraction(d, &w, &vs).map_err(|e| e.to_string())?;
    let rho = if rng.gen_bool(0.5) {
        random_pure_state(d, &mut rng)
    } else {
        random_density_matrix(d, &mut rng)
    };
    let out = spectrum(&ch.apply(&rho).unwrap())?;
    let ext = Spectrum::new(extremal(d, a)).unwrap();
    if !submajorizes(&ext, &out).unwrap() {
        return Err(format!("{:?} not submajorized by {:?}", out.values(), ext.values()));
    }
    Ok(partial_sum_margin(ext.values(), out.values()))
}

/// Every step of the relative-entropy ascent is non-decreasing.
pub fn ascent_is_monotone(seed: u64) -> Check {
    let mut rng = rng(seed);
    let ch = match seed % 3 {
        0 => {
            let w: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.0..0.24));
            build_qutrit(rng.gen_range(-3.0..3.0), w).unwrap()
        }
        1 => build_doubly_depolarizing(4, 2, rng.gen_range(0.05..0.95), rng.gen_range(0.0..=1.0)).unwrap(),
        _ => {
            let d = rng.gen_range(2..=4);
            random_generalized(d, &mut rng)
        }
    };
    let d = ch.dim();
    let reference = ch.apply(&random_density_matrix(d, &mut rng)).unwrap();
    let start = random_pure_state(d, &mut rng);
    let r = shor_ascent(&ch, &reference, &start, 100, 0.0).map_err(|e| e.to_string())?;
    let worst = r.trace.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    if worst < -1e-12 {
        return Err(format!("objective dropped by {:e}", -worst));
    }
    Ok(worst)
}

/// H(ρ, σ) ≥ 0, with equality at ρ = σ.
pub fn klein_inequality(seed: u64) -> Check {
    let mut rng = rng(seed);
    let d = rng.gen_range(2..=5);
    let rho = if rng.gen_bool(0.3) {
        random_pure_state(d, &mut rng)
    } else {
        random_density_matrix(d, &mut rng)
    };
    let sigma = random_density_matrix(d, &mut rng);
    let h = relative_entropy(&rho, &sigma).map_err(|e| e.to_string())?;
    let own = relative_entropy(&sigma, &sigma).map_err(|e| e.to_string())?;
    if h < -1e-12 || own.abs() > 1e-10 {
        return Err(format!("H(ρ,σ) = {h:e}, H(σ,σ) = {own:e}"));
    }
    Ok(h)
}

/// Tr Φ(ρ) X = Tr ρ Φ̂(X).
pub fn adjoint_duality(seed: u64) -> Check {
    let mut rng = rng(seed);
    let d = rng.gen_range(2..=4);
    let ch = random_generalized(d, &mut rng);
    let rho = random_density_matrix(d, &mut rng);
    let x = random_hermitian(d, &mut rng);
    let lhs = ch.apply(&rho).unwrap().trace_product(&x);
    let rhs = rho.trace_product(&ch.adjoint_apply(&x).unwrap());
    let err = (lhs - rhs).norm();
    if err > 1e-11 * x.frobenius_norm().max(1.0) {
        return Err(format!("duality off by {err:e}"));
    }
    Ok(-err)
}
