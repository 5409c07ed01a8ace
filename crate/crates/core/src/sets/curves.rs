//! Planar boundary curves and the small one-dimensional solvers built on them.

/// Evaluates a polynomial with ascending coefficients.
fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs.iter().enumerate().skip(1).map(|(i, &c)| i as f64 * c).collect()
}

fn trimmed(coeffs: &[f64]) -> &[f64] {
    let scale = coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    let mut n = coeffs.len();
    while n > 0 && coeffs[n - 1].abs() <= 1e-300_f64.max(scale * 1e-15) {
        n -= 1;
    }
    &coeffs[..n]
}

fn bisect(coeffs: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = horner(coeffs, lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = horner(coeffs, mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Real roots in `[lo, hi]` (either end may be infinite), plus the real
/// critical points where the polynomial nearly vanishes, so tangential
/// roots are not lost.
pub(crate) fn real_roots(coeffs: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let c = trimmed(coeffs);
    if c.len() <= 1 {
        return Vec::new();
    }
    let lead = c[c.len() - 1];
    let cauchy = 1.0 + c[..c.len() - 1].iter().fold(0.0_f64, |m, a| m.max((a / lead).abs()));
    let lo = lo.max(-cauchy);
    let hi = hi.min(cauchy);
    if lo > hi {
        return Vec::new();
    }
    if c.len() == 2 {
        let r = -c[0] / c[1];
        return if r >= lo && r <= hi { vec![r] } else { Vec::new() };
    }
    let crit = real_roots(&derivative(c), lo, hi);
    let mut knots = Vec::with_capacity(crit.len() + 2);
    knots.push(lo);
    knots.extend(crit.iter().copied().filter(|&x| x > lo && x < hi));
    knots.push(hi);
    let scale = c.iter().fold(0.0_f64, |m, a| m.max(a.abs()));
    let mut roots = Vec::new();
    for w in knots.windows(2) {
        let (u, v) = (w[0], w[1]);
        let (fu, fv) = (horner(c, u), horner(c, v));
        if fu == 0.0 {
            roots.push(u);
        } else if (fu < 0.0) != (fv < 0.0) && fv != 0.0 {
            roots.push(bisect(c, u, v));
        }
    }
    if horner(c, hi) == 0.0 {
        roots.push(hi);
    }
    for &x in &crit {
        if horner(c, x).abs() <= 1e-9 * scale * (1.0 + x.abs()).powi(c.len() as i32 - 1) {
            roots.push(x);
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup();
    roots
}

/// Golden-section search for the minimizer of a unimodal function on `[lo, hi]`.
pub(crate) fn golden_min<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if hi - lo <= 1e-13 * (1.0 + lo.abs().max(hi.abs())) {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let mut best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    for x in [lo, hi] {
        let v = f(x);
        if v < best.1 {
            best = (x, v);
        }
    }
    best
}

/// A piece of the boundary of a planar convex set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum Piece {
    /// `(s, s²/alpha)` for `s ∈ [lo, hi]`.
    Parabola { alpha: f64, lo: f64, hi: f64 },
    /// `(s, 1/s)` for `s ∈ [lo, hi] ⊆ (0, ∞]`.
    Hyperbola { lo: f64, hi: f64 },
    /// `origin + τ·dir` for `τ ≥ 0`, with `dir` a unit vector.
    Ray { origin: [f64; 2], dir: [f64; 2] },
}

impl Piece {
    /// Nearest point of the piece to `x`.
    pub(crate) fn nearest(&self, x: [f64; 2]) -> [f64; 2] {
        let [a, b] = x;
        let best_of = |cands: Vec<f64>, point: &dyn Fn(f64) -> [f64; 2]| {
            cands
                .into_iter()
                .filter(|s| s.is_finite())
                .map(point)
                .min_by(|p, q| dist2(*p, x).total_cmp(&dist2(*q, x)))
        };
        match *self {
            Piece::Parabola { alpha, lo, hi } => {
                let coeffs = [-a, 1.0 - 2.0 * b / alpha, 0.0, 2.0 / (alpha * alpha)];
                let mut cands = real_roots(&coeffs, lo, hi);
                cands.push(lo);
                cands.push(hi);
                best_of(cands, &|s| [s, s * s / alpha]).expect("parabola piece has a stationary point")
            }
            Piece::Hyperbola { lo, hi } => {
                let coeffs = [-1.0, b, 0.0, -a, 1.0];
                let mut cands: Vec<f64> = real_roots(&coeffs, lo, hi).into_iter().filter(|&s| s > 0.0).collect();
                cands.push(lo);
                cands.push(hi);
                best_of(cands.into_iter().filter(|&s| s > 0.0).collect(), &|s| [s, 1.0 / s])
                    .expect("hyperbola piece has a stationary point")
            }
            Piece::Ray { origin, dir } => {
                let t = ((a - origin[0]) * dir[0] + (b - origin[1]) * dir[1]).max(0.0);
                [origin[0] + t * dir[0], origin[1] + t * dir[1]]
            }
        }
    }

    /// `count` points spread along the piece; unbounded parts are sampled
    /// geometrically out to `reach`.
    pub(crate) fn samples(&self, count: usize, reach: f64) -> Vec<[f64; 2]> {
        let count = count.max(2);
        match *self {
            Piece::Parabola { alpha, lo, hi } => spread(lo, hi, count, reach)
                .into_iter()
                .map(|s| [s, s * s / alpha])
                .collect(),
            Piece::Hyperbola { lo, hi } => {
                let lo = if lo > 0.0 { lo } else { 1.0 / reach };
                let hi = if hi.is_finite() { hi } else { reach };
                (0..count)
                    .map(|k| {
                        let u = k as f64 / (count - 1) as f64;
                        let s = (lo.ln() + u * (hi.ln() - lo.ln())).exp();
                        [s, 1.0 / s]
                    })
                    .collect()
            }
            Piece::Ray { origin, dir } => (0..count)
                .map(|k| {
                    let t = if k == 0 {
                        0.0
                    } else {
                        reach.powf(k as f64 / (count - 1) as f64) - 1.0
                    };
                    [origin[0] + t * dir[0], origin[1] + t * dir[1]]
                })
                .collect(),
        }
    }
}

/// Points of `[lo, hi]`, dense near zero and geometric towards infinite ends.
fn spread(lo: f64, hi: f64, count: usize, reach: f64) -> Vec<f64> {
    let lo = lo.max(-reach);
    let hi = hi.min(reach);
    (0..count)
        .map(|k| {
            let u = k as f64 / (count - 1) as f64;
            let s = lo + u * (hi - lo);
            // stretch so that large |s| is reached without starving the middle
            let m = lo.abs().max(hi.abs()).max(1e-300);
            if m > 10.0 {
                let v = s / m;
                v.signum() * m * (v.abs().powi(3))
            } else {
                s
            }
        })
        .collect()
}

pub(crate) fn dist2(p: [f64; 2], q: [f64; 2]) -> f64 {
    (p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)
}

/// Nearest point to `x` over a union of pieces.
pub(crate) fn nearest_on_pieces(pieces: &[Piece], x: [f64; 2]) -> [f64; 2] {
    pieces
        .iter()
        .map(|p| p.nearest(x))
        .min_by(|p, q| dist2(*p, x).total_cmp(&dist2(*q, x)))
        .expect("at least one boundary piece")
}

/// Maximizer of `dᵀx` over `{x₂ ≥ x₁²/alpha} ∩ rho·B`.
pub(crate) fn parabola_disk_argmax(alpha: f64, rho: f64, d: [f64; 2]) -> [f64; 2] {
    let [d1, d2] = d;
    if rho <= 0.0 || (d1 == 0.0 && d2 == 0.0) {
        return [0.0, 0.0];
    }
    if d2 < 0.0 {
        let p = [-alpha * d1 / (2.0 * d2), alpha * d1 * d1 / (4.0 * d2 * d2)];
        if p[0].hypot(p[1]) <= rho {
            return p;
        }
    }
    let n = d1.hypot(d2);
    let c = [rho * d1 / n, rho * d2 / n];
    if c[1] >= c[0] * c[0] / alpha {
        return c;
    }
    let x2 = 2.0 * rho * rho / (alpha + (alpha * alpha + 4.0 * rho * rho).sqrt());
    let s = (alpha * x2).sqrt();
    if d1 >= 0.0 {
        [s, x2]
    } else {
        [-s, x2]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn cubic_roots() {
        // (x - 1)(x + 2)(x - 3) = x³ - 2x² - 5x + 6
        let r = real_roots(&[6.0, -5.0, -2.0, 1.0], f64::NEG_INFINITY, f64::INFINITY);
        assert_eq!(r.len(), 3);
        for (got, want) in r.iter().zip([-2.0, 1.0, 3.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
        let r = real_roots(&[6.0, -5.0, -2.0, 1.0], 0.0, 2.0);
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn double_root_found() {
        // (x - 1)² (x + 1)
        let r = real_roots(&[1.0, -1.0, -1.0, 1.0], -5.0, 5.0);
        assert!(r.iter().any(|x| (x - 1.0).abs() < 1e-6));
        assert!(r.iter().any(|x| (x + 1.0).abs() < 1e-12));
    }

    #[test]
    fn parabola_nearest_origin() {
        let p = Piece::Parabola {
            alpha: 1.0,
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        };
        let q = p.nearest([0.0, -1.0]);
        assert_abs_diff_eq!(q[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(q[1], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn hyperbola_nearest_origin() {
        let p = Piece::Hyperbola {
            lo: 0.0,
            hi: f64::INFINITY,
        };
        let q = p.nearest([0.0, 0.0]);
        assert_abs_diff_eq!(q[0], 1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(q[1], 1.0, epsilon = 1e-8);
    }

    #[test]
    fn golden_finds_quadratic_minimum() {
        let (x, v) = golden_min(|t| (t - 0.3).powi(2) + 2.0, 0.0, 5.0);
        assert_abs_diff_eq!(x, 0.3, epsilon = 1e-7);
        assert_abs_diff_eq!(v, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn disk_argmax_cases() {
        // parabola maximizer inside the disk
        let p = parabola_disk_argmax(1.0, 5.0, [1.0, -1.0]);
        assert_abs_diff_eq!(p[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(p[1], 0.25, epsilon = 1e-15);
        // circle maximizer inside the epigraph
        let p = parabola_disk_argmax(1.0, 2.0, [0.0, 1.0]);
        assert_abs_diff_eq!(p[1], 2.0, epsilon = 1e-15);
        // corner: x₂ + x₂² = 4
        let p = parabola_disk_argmax(1.0, 2.0, [1.0, 0.0]);
        let x2 = (-1.0 + 17.0_f64.sqrt()) / 2.0;
        assert_abs_diff_eq!(p[1], x2, epsilon = 1e-14);
        assert_abs_diff_eq!(p[0], x2.sqrt(), epsilon = 1e-14);
    }
}
