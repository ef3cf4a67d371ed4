//! Generalized Pauli (Weyl) operators and qubit Pauli matrices.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::matcore::{ComplexMatrix, ONE, ZERO};

/// Cyclic shift X|e_ℓ⟩ = |e_{ℓ+1 mod d}⟩.
pub fn shift(d: usize) -> ComplexMatrix {
    let mut x = ComplexMatrix::zeros(d, d);
    for l in 0..d {
        x[((l + 1) % d, l)] = ONE;
    }
    x
}

/// Clock Z|e_ℓ⟩ = e^{2πiℓ/d}|e_ℓ⟩.
pub fn clock(d: usize) -> ComplexMatrix {
    let diag: Vec<Complex64> = (0..d)
        .map(|l| Complex64::from_polar(1.0, 2.0 * PI * l as f64 / d as f64))
        .collect();
    ComplexMatrix::from_diag(&diag)
}

/// The d² unitaries X^m Z^n, ordered with index m·d + n.
pub fn weyl_operators(d: usize) -> Vec<ComplexMatrix> {
    let x = shift(d);
    let z = clock(d);
    let mut xm = ComplexMatrix::identity(d);
    let mut out = Vec::with_capacity(d * d);
    for _ in 0..d {
        let mut op = xm.clone();
        for _ in 0..d {
            out.push(op.clone());
            op = &op * &z;
        }
        xm = &xm * &x;
    }
    out
}

/// Pauli matrix σ_k with σ_0 = I.
pub fn pauli(k: usize) -> ComplexMatrix {
    let i = Complex64::new(0.0, 1.0);
    let entries = match k {
        0 => [ONE, ZERO, ZERO, ONE],
        1 => [ZERO, ONE, ONE, ZERO],
        2 => [ZERO, -i, i, ZERO],
        3 => [ONE, ZERO, ZERO, -ONE],
        _ => panic!("Pauli index {k} out of range"),
    };
    ComplexMatrix::new(2, 2, entries.to_vec()).expect("2x2")
}

/// Direct sum A ⊕ B as a block-diagonal matrix.
pub fn direct_sum(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (p, q) = (a.rows(), b.rows());
    let mut out = ComplexMatrix::zeros(p + q, p + q);
    for i in 0..p {
        for j in 0..p {
            out[(i, j)] = a[(i, j)];
        }
    }
    for i in 0..q {
        for j in 0..q {
            out[(p + i, p + j)] = b[(i, j)];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{random_matrix, stream_rng};

    fn pow(m: &ComplexMatrix, k: usize) -> ComplexMatrix {
        (0..k).fold(ComplexMatrix::identity(m.rows()), |acc, _| &acc * m)
    }

    #[test]
    fn qutrit_order_d_cyclicity() {
        let id = ComplexMatrix::identity(3);
        assert!((&pow(&shift(3), 3) - &id).max_abs() < 1e-14);
        assert!((&pow(&clock(3), 3) - &id).max_abs() < 1e-14);
    }

    #[test]
    fn qubit_weyl_set_is_pauli_set_up_to_phase() {
        let ops = weyl_operators(2);
        // X^0Z^0 = I, X^0Z^1 = σ3, X^1Z^0 = σ1, X^1Z^1 = σ1σ3 = −iσ2.
        let expected = [pauli(0), pauli(3), pauli(1), &pauli(1) * &pauli(3)];
        for (op, e) in ops.iter().zip(&expected) {
            assert!((op - e).max_abs() < 1e-15);
        }
        let y = pauli(2).scale_complex(Complex64::new(0.0, -1.0));
        assert!((&ops[3] - &y).max_abs() < 1e-15);
    }

    #[test]
    fn weyl_operators_unitary() {
        for d in 2..=5 {
            let ops = weyl_operators(d);
            assert_eq!(ops.len(), d * d);
            assert!(ops.iter().all(|u| u.unitary_residual() < 1e-13));
        }
    }

    #[test]
    fn full_twirl_of_random_matrix() {
        let d = 4;
        let a = random_matrix(d, d, &mut stream_rng(13, 0));
        let mut twirl = ComplexMatrix::zeros(d, d);
        for w in weyl_operators(d) {
            twirl = &twirl + &(&(&w * &a) * &w.adjoint());
        }
        let twirl = twirl.scale(1.0 / (d * d) as f64);
        let expected = ComplexMatrix::identity(d).scale_complex(a.trace() / d as f64);
        assert!((&twirl - &expected).max_abs() < 1e-12);
    }
}
