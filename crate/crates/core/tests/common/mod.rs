//! Independent oracles shared by the integration tests and the acceptance
//! runner. Nothing here calls into the closed-form code under test.

#![allow(dead_code)]

/// −Σ p log2 p with 0·log 0 = 0.
pub fn shannon(p: &[f64]) -> f64 {
    p.iter().filter(|x| **x > 0.0).map(|x| -x * x.log2()).sum()
}

/// Maximizer of a unimodal f on [lo, hi]: a uniform scan at `resolution`,
/// then golden-section search on the bracketing cell down to `tol`.
pub fn argmax_1d(f: impl Fn(f64) -> f64, lo: f64, hi: f64, resolution: f64, tol: f64) -> f64 {
    let n = ((hi - lo) / resolution).ceil() as usize;
    let grid = |k: usize| (lo + k as f64 * resolution).min(hi);
    let best = (0..=n).max_by(|&i, &j| f(grid(i)).total_cmp(&f(grid(j)))).unwrap();
    let (mut a, mut b) = (grid(best.saturating_sub(1)), grid((best + 1).min(n)));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    while b - a > tol {
        if f(c) > f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - g * (b - a);
        d = a + g * (b - a);
    }
    (a + b) / 2.0
}

/// Objective of the qutrit signal ensemble {1−2x on e_0, x on e_±},
/// written out from its output spectra:
/// S(diag(a(1−2x)+n, ax+n, ax+n)) − (1−2x)S_0 − 2x S_1 with n = (1−a)/3.
pub fn qutrit_objective(a: f64, lambda1: f64, x: f64) -> f64 {
    let n = (1.0 - a) / 3.0;
    let s0 = shannon(&[a + n, n, n]);
    let s1 = shannon(&[a * (1.0 + lambda1) / 2.0 + n, a * (1.0 - lambda1) / 2.0 + n, n]);
    shannon(&[a * (1.0 - 2.0 * x) + n, a * x + n, a * x + n]) - (1.0 - 2.0 * x) * s0 - 2.0 * x * s1
}

/// Doubly depolarizing (d, m) objective with weight t⊥ on each of the d−m
/// block-two states and t = (1 − (d−m)t⊥)/m on each of the first m.
pub fn doubly_depol_objective(d: usize, m: usize, a: f64, b: f64, t_perp: f64) -> f64 {
    let df = d as f64;
    let k = (d - m) as f64;
    let n = (1.0 - a) / df;
    let t = (1.0 - k * t_perp) / m as f64;
    let mut s1 = vec![a + n];
    s1.extend(std::iter::repeat_n(n, d - 1));
    let spread = a * (1.0 - b) / k;
    let mut s2 = vec![a * b + spread + n];
    s2.extend(std::iter::repeat_n(spread + n, d - m - 1));
    s2.extend(std::iter::repeat_n(n, m));
    let mut avg: Vec<f64> = vec![a * t + n; m];
    avg.extend(std::iter::repeat_n(a * t_perp + n, d - m));
    shannon(&avg) - m as f64 * t * shannon(&s1) - k * t_perp * shannon(&s2)
}

/// The qutrit λ_1 from weights in any order.
pub fn lambda1(weights: [f64; 4]) -> f64 {
    let mut w = weights;
    w.sort_by(|x, y| y.total_cmp(x));
    let a: f64 = w.iter().sum();
    2.0 * (w[0] + w[1]) / a - 1.0
}

pub mod props;
