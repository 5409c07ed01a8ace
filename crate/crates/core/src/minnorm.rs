//! Wolfe's minimum-norm-point method: nearest point of a compact convex set
//! given only a linear maximization oracle.

use nalgebra::{DMatrix, DVector};

use crate::error::Result;
use crate::numerics::{dot, Vector};

/// Distance from `x` to `conv(oracle)`, where `oracle(d)` returns a
/// maximizer of `dᵀa` over the set.
///
/// `gap_tol` bounds the Frank–Wolfe gap relative to the current distance.
pub(crate) fn nearest_point<F>(x: &Vector, mut oracle: F, gap_tol: f64, max_iter: usize) -> Result<f64>
where
    F: FnMut(&[f64]) -> Result<Vector>,
{
    let n = x.dim();
    let shift = |a: &Vector| -> Vec<f64> { a.iter().zip(x.iter()).map(|(p, q)| p - q).collect() };
    let start: Vec<f64> = x.iter().map(|v| -v).collect();
    let first = oracle(&start)?;
    let mut atoms: Vec<Vec<f64>> = vec![shift(&first)];
    let mut weights: Vec<f64> = vec![1.0];
    let mut y = atoms[0].clone();

    for _ in 0..max_iter {
        let yy = dot(&y, &y);
        let norm = yy.sqrt();
        if norm <= 1e-14 * (1.0 + x.norm()) {
            break;
        }
        let neg: Vec<f64> = y.iter().map(|v| -v).collect();
        let a = shift(&oracle(&neg)?);
        let gap = yy - dot(&y, &a);
        if gap <= gap_tol * norm.max(1e-12) || atoms.iter().any(|b| b == &a) {
            break;
        }
        atoms.push(a);
        weights.push(0.0);

        // minor cycles
        for _ in 0..(4 * atoms.len() + 8) {
            let alpha = affine_minimizer(&atoms);
            if alpha.iter().all(|&w| w > 1e-14) {
                weights = alpha;
                break;
            }
            let mut theta = 1.0_f64;
            for (w, al) in weights.iter().zip(&alpha) {
                if *al < *w && *al <= 1e-14 {
                    theta = theta.min(w / (w - al));
                }
            }
            for (w, al) in weights.iter_mut().zip(&alpha) {
                *w += theta * (al - *w);
            }
            let mut k = 0;
            while k < atoms.len() {
                if weights[k] <= 1e-14 {
                    atoms.swap_remove(k);
                    weights.swap_remove(k);
                } else {
                    k += 1;
                }
            }
            let total: f64 = weights.iter().sum();
            weights.iter_mut().for_each(|w| *w /= total);
            if atoms.len() <= 1 {
                break;
            }
        }
        let mut next = vec![0.0; n];
        for (w, atom) in weights.iter().zip(&atoms) {
            for (acc, v) in next.iter_mut().zip(atom) {
                *acc += w * v;
            }
        }
        if dot(&next, &next) > yy * (1.0 + 1e-15) {
            break;
        }
        y = next;
    }
    Ok(dot(&y, &y).sqrt())
}

/// Weights `α` with `Σα = 1` minimizing `‖Σ αᵢ aᵢ‖`, solved as a least-squares
/// problem so that affinely dependent atoms are tolerated.
fn affine_minimizer(atoms: &[Vec<f64>]) -> Vec<f64> {
    let k = atoms.len();
    if k == 1 {
        return vec![1.0];
    }
    let n = atoms[0].len();
    // α = e₁ + Nβ with N spanning {Σα = 0}: columns eⱼ − e₁.
    let m = DMatrix::from_fn(n, k - 1, |i, j| atoms[j + 1][i] - atoms[0][i]);
    let rhs = DVector::from_fn(n, |i, _| -atoms[0][i]);
    let beta = match m.clone().svd(true, true).solve(&rhs, 1e-13) {
        Ok(b) => b,
        Err(_) => DVector::zeros(k - 1),
    };
    let mut alpha = vec![0.0; k];
    alpha[0] = 1.0 - beta.iter().sum::<f64>();
    for j in 0..k - 1 {
        alpha[j + 1] = beta[j];
    }
    alpha
}
