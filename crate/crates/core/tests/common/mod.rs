//! Reference computations used as test oracles. None of them call into the
//! library's distance or support code.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};

pub fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(p, q)| p - q).collect()
}

/// Distance from `x` to `conv(s)` when the projection onto the affine hull of
/// `s` lands inside the simplex, `None` otherwise.
fn affine_projection_distance(x: &[f64], s: &[&Vec<f64>]) -> Option<f64> {
    let k = s.len();
    if k == 1 {
        return Some(norm(&sub(x, s[0])));
    }
    let edges: Vec<Vec<f64>> = s[1..].iter().map(|p| sub(p, s[0])).collect();
    let g = DMatrix::<f64>::from_fn(k - 1, k - 1, |i, j| dot(&edges[i], &edges[j]));
    let rel = sub(x, s[0]);
    let rhs = DVector::<f64>::from_fn(k - 1, |i, _| dot(&edges[i], &rel));
    let lam: DVector<f64> = g.lu().solve(&rhs)?;
    let first = 1.0 - lam.sum();
    if first < -1e-12 || lam.iter().any(|&l| l < -1e-12) {
        return None;
    }
    let mut p = s[0].clone();
    for (l, e) in lam.iter().zip(&edges) {
        for (pi, ei) in p.iter_mut().zip(e) {
            *pi += l * ei;
        }
    }
    Some(norm(&sub(x, &p)))
}

fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        if (mask.count_ones() as usize) <= max {
            out.push((0..n).filter(|i| mask & (1 << i) != 0).collect());
        }
    }
    out
}

/// Distance from `x` to the convex hull of `pts` by enumerating all simplices
/// with at most `dim + 1` vertices.
pub fn polytope_distance(x: &[f64], pts: &[Vec<f64>]) -> f64 {
    let dim = x.len();
    subsets(pts.len(), dim + 1)
        .into_iter()
        .filter_map(|idx| {
            let s: Vec<&Vec<f64>> = idx.iter().map(|&i| &pts[i]).collect();
            affine_projection_distance(x, &s)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Hausdorff distance between two polytopes given by point lists.
pub fn polytope_hausdorff(p: &[Vec<f64>], q: &[Vec<f64>]) -> f64 {
    let one = |a: &[Vec<f64>], b: &[Vec<f64>]| a.iter().map(|v| polytope_distance(v, b)).fold(0.0, f64::max);
    one(p, q).max(one(q, p))
}

/// Distance from `x` to `{y : scale·y₂ ≥ y₁²}` by a dense scan of the boundary
/// followed by local refinement.
pub fn parabola_distance(scale: f64, x: &[f64]) -> f64 {
    if scale * x[1] >= x[0] * x[0] {
        return 0.0;
    }
    let f = |s: f64| (s - x[0]).powi(2) + (s * s / scale - x[1]).powi(2);
    let span = 2.0 * (x[0].abs() + x[1].abs() + scale + 1.0);
    let steps = 20000;
    let mut best = (f64::INFINITY, 0.0);
    for k in 0..=steps {
        let s = -span + 2.0 * span * k as f64 / steps as f64;
        let v = f(s);
        if v < best.0 {
            best = (v, s);
        }
    }
    let mut h = 2.0 * span / steps as f64;
    let mut s = best.1;
    while h > 1e-14 {
        for cand in [s - h, s + h] {
            if f(cand) < f(s) {
                s = cand;
            }
        }
        h *= 0.5;
    }
    f(s).sqrt()
}

/// `σ(d)` for `{y : scale·y₂ ≥ y₁²}` by maximizing over the boundary curve.
pub fn parabola_support_scan(scale: f64, d: &[f64]) -> f64 {
    assert!(d[1] < 0.0);
    let g = |s: f64| d[0] * s + d[1] * s * s / scale;
    let mut lo = -1e6;
    let mut hi = 1e6;
    for _ in 0..400 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if g(m1) < g(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    g(0.5 * (lo + hi))
}
