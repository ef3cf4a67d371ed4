//! Seeded random states, unitaries and matrices.
//!
//! Complex entries are drawn with real and imaginary parts uniform on
//! [−1, 1]. Every consumer that fans out over starts derives its stream from
//! `(seed, index)` through [`stream_rng`], so results do not depend on the
//! order in which workers run.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::matcore::{hermitian_eigen, normalized, ComplexMatrix, DEFAULT_HERMITIAN_TOL};

/// Independent RNG stream `index` of the generator seeded with `seed`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
}

/// Unit vector obtained by normalizing independent random complex entries.
pub fn random_pure_vector(d: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..d).map(|_| random_complex(rng)).collect();
        if let Some(u) = normalized(&v) {
            return u;
        }
    }
}

pub fn random_pure_state(d: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::outer(&random_pure_vector(d, rng))
}

pub fn random_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| random_complex(rng))
}

pub fn random_hermitian(d: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = random_matrix(d, d, rng);
    (&g + &g.adjoint()).scale(0.5)
}

/// Full-rank density matrix G G† / Tr(G G†).
pub fn random_density_matrix(d: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = random_matrix(d, d, rng);
    let p = &g * &g.adjoint();
    let tr = p.trace().re;
    p.scale(1.0 / tr).hermitian_part()
}

/// Unitary e^{iH} for a random Hermitian H.
pub fn random_unitary(d: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let h = random_hermitian(d, rng).scale(std::f64::consts::PI);
    let e = hermitian_eigen(&h, DEFAULT_HERMITIAN_TOL).expect("Hermitian by construction");
    let n = d;
    let u = &e.vectors;
    ComplexMatrix::from_fn(n, n, |i, j| {
        (0..n)
            .map(|k| u[(i, k)] * Complex64::from_polar(1.0, e.values[k]) * u[(j, k)].conj())
            .sum()
    })
}
