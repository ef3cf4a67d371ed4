//! Common eigenvectors of a collection of unitaries.
//!
//! The search keeps a list of mutually orthogonal candidate subspaces. Each
//! unitary in turn first shrinks every candidate to its largest invariant
//! subspace, then splits it into eigenspaces of the (normal) restriction.
//! Whatever survives all unitaries is acted on by each V_k as a phase.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::{hermitian_eigen, inner, vec_norm, ComplexMatrix, DEFAULT_HERMITIAN_TOL};

/// Eigenvalues of restricted operators closer than this are one eigenspace.
const CLUSTER_TOL: f64 = 1e-6;

/// Orthonormal basis of the largest subspace on which every V_k acts as a
/// phase. The number of returned vectors is the number of mutually
/// orthogonal common eigenvectors.
pub fn common_eigenvectors(vs: &[ComplexMatrix], tol: f64) -> Result<Vec<Vec<Complex64>>> {
    let Some(first) = vs.first() else {
        return Ok(Vec::new());
    };
    let n = first.rows();
    for v in vs {
        if !v.is_square() || v.rows() != n {
            return Err(Error::DimensionMismatch { expected: n, got: v.rows() });
        }
        let r = v.unitary_residual();
        if r > tol {
            return Err(Error::NotUnitary(r));
        }
    }

    let mut spaces = vec![ComplexMatrix::identity(n)];
    for v in vs {
        let mut next = Vec::new();
        for q in &spaces {
            let Some(q) = invariant_part(v, q, tol)? else {
                continue;
            };
            next.extend(split_eigenspaces(v, &q)?);
        }
        spaces = next;
        if spaces.is_empty() {
            break;
        }
    }

    let mut out = Vec::new();
    for q in &spaces {
        for j in 0..q.cols() {
            let col = q.column(j);
            if vs.iter().all(|v| phase_residual(v, &col) <= 10.0 * tol) {
                out.push(col);
            }
        }
    }
    Ok(out)
}

/// ‖Vv − (v†Vv)v‖.
pub fn phase_residual(v: &ComplexMatrix, x: &[Complex64]) -> f64 {
    let vx = v.mat_vec(x);
    let lambda = inner(x, &vx);
    let r: Vec<Complex64> = vx.iter().zip(x).map(|(a, b)| a - lambda * b).collect();
    vec_norm(&r)
}

/// Largest V-invariant subspace inside span(Q), as orthonormal columns.
fn invariant_part(v: &ComplexMatrix, q: &ComplexMatrix, tol: f64) -> Result<Option<ComplexMatrix>> {
    let n = q.rows();
    let mut q = q.clone();
    loop {
        let r = q.cols();
        let proj = &ComplexMatrix::identity(n) - &(&q * &q.adjoint());
        let leak = &proj * &(v * &q);
        let g = &leak.adjoint() * &leak;
        let e = hermitian_eigen(&g, DEFAULT_HERMITIAN_TOL)?;
        let keep: Vec<usize> = (0..r).filter(|&k| e.values[k] <= tol * tol).collect();
        if keep.is_empty() {
            return Ok(None);
        }
        if keep.len() == r {
            return Ok(Some(q));
        }
        let cols: Vec<Vec<Complex64>> = keep.iter().map(|&k| q.mat_vec(&e.vector(k))).collect();
        q = ComplexMatrix::from_columns(&cols);
    }
}

/// Splits span(Q) (V-invariant) into eigenspaces of V restricted to it.
fn split_eigenspaces(v: &ComplexMatrix, q: &ComplexMatrix) -> Result<Vec<ComplexMatrix>> {
    let b = &(&q.adjoint() * v) * q;
    let i = Complex64::new(0.0, 1.0);
    let re = (&b + &b.adjoint()).scale(0.5);
    let mut out = Vec::new();
    for cluster in clusters(&re)? {
        let bc = &(&cluster.adjoint() * &b) * &cluster;
        let im = (&bc - &bc.adjoint()).scale_complex(-i * 0.5);
        for sub in clusters(&im)? {
            out.push(&(q * &cluster) * &sub);
        }
    }
    Ok(out)
}

/// Eigenvector blocks of a Hermitian matrix grouped by nearly equal eigenvalue.
fn clusters(h: &ComplexMatrix) -> Result<Vec<ComplexMatrix>> {
    let e = hermitian_eigen(&h.hermitian_part(), DEFAULT_HERMITIAN_TOL)?;
    let mut groups: Vec<Vec<Vec<Complex64>>> = Vec::new();
    let mut last = f64::NAN;
    for k in 0..e.dim() {
        if groups.is_empty() || (last - e.values[k]).abs() > CLUSTER_TOL {
            groups.push(Vec::new());
        }
        last = e.values[k];
        groups.last_mut().unwrap().push(e.vector(k));
    }
    Ok(groups.iter().map(|g| ComplexMatrix::from_columns(g)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{clock, direct_sum, pauli, qutrit_unitaries, weyl_operators};
    use crate::sample::{random_unitary, stream_rng};

    #[test]
    fn qutrit_family_has_one_common_eigenvector() {
        let vs = qutrit_unitaries(0.4);
        let found = common_eigenvectors(&vs, 1e-8).unwrap();
        assert_eq!(found.len(), 1);
        assert!((found[0][0].norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn doubly_depolarizing_spans_first_block() {
        let e2 = ComplexMatrix::identity(2);
        let vs: Vec<_> = (0..4).map(|k| direct_sum(&e2, &pauli(k))).collect();
        let found = common_eigenvectors(&vs, 1e-8).unwrap();
        assert_eq!(found.len(), 2);
        for v in &found {
            assert!(v[2].norm() < 1e-10 && v[3].norm() < 1e-10);
        }
    }

    #[test]
    fn clock_powers_share_full_basis() {
        let z = clock(3);
        let vs = vec![ComplexMatrix::identity(3), z.clone(), &z * &z];
        assert_eq!(common_eigenvectors(&vs, 1e-8).unwrap().len(), 3);
    }

    #[test]
    fn weyl_group_has_none() {
        assert!(common_eigenvectors(&weyl_operators(3), 1e-8).unwrap().is_empty());
    }

    #[test]
    fn conjugated_block_structure_is_recovered() {
        let mut rng = stream_rng(77, 0);
        let w = random_unitary(4, &mut rng);
        let one = ComplexMatrix::from_diag(&[Complex64::from_polar(1.0, 0.3)]);
        let vs: Vec<_> = (0..3)
            .map(|_| {
                let inner = random_unitary(3, &mut rng);
                &(&w * &direct_sum(&one, &inner)) * &w.adjoint()
            })
            .collect();
        let found = common_eigenvectors(&vs, 1e-8).unwrap();
        assert_eq!(found.len(), 1);
        let w0 = w.column(0);
        assert!((inner(&w0, &found[0]).norm() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn rejects_non_unitary() {
        let m = ComplexMatrix::identity(2).scale(2.0);
        assert!(matches!(common_eigenvectors(&[m], 1e-8), Err(Error::NotUnitary(_))));
    }
}
