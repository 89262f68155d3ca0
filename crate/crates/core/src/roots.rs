// Copyright 2026 The cavent Authors
// SPDX-License-Identifier: Apache-2.0

//! Scalar root finding on an interval.

const BISECTION_MAX_ITERATIONS: usize = 200;

/// Bisection on a bracket with `f(a) f(b) ≤ 0`, to an interval width of
/// `tol`.
pub fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut fa = f(a);
    if fa == 0.0 {
        return a;
    }
    if f(b) == 0.0 {
        return b;
    }
    for _ in 0..BISECTION_MAX_ITERATIONS {
        if (b - a).abs() <= tol {
            break;
        }
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Sub-intervals of `[a, b]` on which `f` changes sign, found on a grid of
/// `samples` uniform points. Grid points where `f` is exactly zero produce
/// degenerate brackets `(x, x)`.
pub fn sign_change_brackets(f: impl Fn(f64) -> f64, a: f64, b: f64, samples: usize) -> Vec<(f64, f64)> {
    let samples = samples.max(2);
    let xs: Vec<f64> = (0..samples)
        .map(|i| a + (b - a) * i as f64 / (samples - 1) as f64)
        .collect();
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut out = Vec::new();
    for i in 0..samples {
        if ys[i] == 0.0 {
            out.push((xs[i], xs[i]));
        } else if i + 1 < samples && ys[i + 1] != 0.0 && (ys[i] < 0.0) != (ys[i + 1] < 0.0) {
            out.push((xs[i], xs[i + 1]));
        }
    }
    out
}

/// All sign-change roots of `f` on `[a, b]`.
pub fn find_roots(f: impl Fn(f64) -> f64, a: f64, b: f64, samples: usize, tol: f64) -> Vec<f64> {
    sign_change_brackets(&f, a, b, samples)
        .into_iter()
        .map(|(l, r)| if l == r { l } else { bisect(&f, l, r, tol) })
        .collect()
}

/// Minimiser of a unimodal `f` on `[a, b]` by golden-section search.
pub fn golden_minimize(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..BISECTION_MAX_ITERATIONS {
        if (b - a).abs() <= tol {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}
