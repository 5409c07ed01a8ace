//! Dense vectors, tolerance policy, deterministic direction sampling and a small
//! derivative-free maximizer for low-dimensional concave objectives.

use std::f64::consts::PI;
use std::ops::{Add, Deref, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point or direction in ℝⁿ. Always non-empty with finite coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyVector);
        }
        if let Some((index, &value)) = coords.iter().enumerate().find(|(_, x)| !x.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Vector(coords))
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        Self::new(coords.to_vec())
    }

    /// Internal constructor for values produced by arithmetic on valid vectors.
    pub(crate) fn from_raw(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty());
        Vector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![0.0; dim.max(1)])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = vec![0.0; dim.max(1)];
        v[axis] = 1.0;
        Vector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        dot(&self.0, &other.0)
    }

    pub fn norm(&self) -> f64 {
        euclidean_norm(self)
    }

    pub fn scaled(&self, factor: f64) -> Vector {
        Vector(self.0.iter().map(|x| x * factor).collect())
    }

    /// `None` for the zero vector.
    pub fn normalized(&self) -> Option<Vector> {
        let n = self.norm();
        (n > 0.0).then(|| self.scaled(1.0 / n))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0.0)
    }

    pub fn distance(&self, other: &Vector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// `self + t * dir`
    pub fn axpy(&self, t: f64, dir: &Vector) -> Vector {
        Vector(self.0.iter().zip(&dir.0).map(|(a, b)| a + t * b).collect())
    }
}

impl TryFrom<Vec<f64>> for Vector {
    type Error = Error;

    fn try_from(value: Vec<f64>) -> Result<Self> {
        Vector::new(value)
    }
}

impl From<Vector> for Vec<f64> {
    fn from(v: Vector) -> Self {
        v.0
    }
}

impl Deref for Vector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl Add for &Vector {
    type Output = Vector;

    fn add(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;

    fn sub(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn euclidean_norm(v: &Vector) -> f64 {
    v.0.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Numeric tolerances shared by every query.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eps_feasibility: f64,
    pub eps_geometry: f64,
    pub eps_classify: f64,
    pub max_refinement_rounds: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps_feasibility: 1e-9,
            eps_geometry: 1e-6,
            eps_classify: 1e-4,
            max_refinement_rounds: 40,
        }
    }
}

impl Tolerance {
    pub fn validate(&self) -> Result<()> {
        let eps = [self.eps_feasibility, self.eps_geometry, self.eps_classify];
        if eps.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
            return Err(Error::InvalidTolerance(
                "all epsilons must be finite and strictly positive".into(),
            ));
        }
        if !(self.eps_feasibility <= self.eps_geometry && self.eps_geometry <= self.eps_classify) {
            return Err(Error::InvalidTolerance(
                "expected eps_feasibility <= eps_geometry <= eps_classify".into(),
            ));
        }
        if self.max_refinement_rounds == 0 {
            return Err(Error::InvalidTolerance("max_refinement_rounds must be positive".into()));
        }
        Ok(())
    }
}

/// Settings for direction sampling.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub seed: u64,
    pub count: usize,
    pub refinement_rounds: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            seed: 7,
            count: 2000,
            refinement_rounds: 5,
        }
    }
}

impl SampleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::InvalidArgument("sample count must be at least 1".into()));
        }
        Ok(())
    }
}

const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653; // π(3 − √5)

/// `count` unit vectors in ℝ^dim, fixed by the seed.
///
/// 1D alternates between +1 and −1, 2D uses equally spaced angles with a seeded
/// phase, 3D a Fibonacci lattice with a seeded azimuth; higher dimensions fall
/// back to normalized Gaussian draws.
pub fn sample_unit_sphere(dim: usize, cfg: &SampleConfig) -> Result<Vec<Vector>> {
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.count;
    let out = match dim {
        1 => (0..n)
            .map(|i| Vector(vec![if i % 2 == 0 { 1.0 } else { -1.0 }]))
            .collect(),
        2 => {
            let phase: f64 = rng.random();
            (0..n)
                .map(|i| {
                    let t = 2.0 * PI * (i as f64 + phase) / n as f64;
                    Vector(vec![t.cos(), t.sin()])
                })
                .collect()
        }
        3 => {
            let offset: f64 = rng.random::<f64>() * 2.0 * PI;
            (0..n)
                .map(|i| {
                    let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
                    let rho = (1.0 - z * z).max(0.0).sqrt();
                    let phi = offset + GOLDEN_ANGLE * i as f64;
                    Vector(vec![rho * phi.cos(), rho * phi.sin(), z])
                })
                .collect()
        }
        _ => (0..n).map(|_| gaussian_unit(dim, &mut rng)).collect(),
    };
    Ok(out)
}

fn gaussian_unit(dim: usize, rng: &mut ChaCha8Rng) -> Vector {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            return Vector(v.into_iter().map(|x| x / n).collect());
        }
    }
}

/// Unit vectors within Euclidean distance `radius` of the unit vector `center`.
pub fn refine_directions(center: &Vector, radius: f64, cfg: &SampleConfig) -> Result<Vec<Vector>> {
    cfg.validate()?;
    if !(radius > 0.0 && radius <= 2.0) {
        return Err(Error::InvalidArgument(format!(
            "refinement radius must lie in (0, 2], got {radius}"
        )));
    }
    let cn = center.norm();
    if (cn - 1.0).abs() > 1e-6 {
        return Err(Error::InvalidArgument(format!(
            "refinement center must be a unit vector (norm {cn})"
        )));
    }
    let c = center.scaled(1.0 / cn);
    // Largest angle whose chord stays within the radius.
    let theta_max = 2.0 * (radius / 2.0).min(1.0).asin();
    let n = cfg.count;
    let out = match c.dim() {
        1 => (0..n)
            .map(|i| {
                if radius >= 2.0 && i % 2 == 1 {
                    c.scaled(-1.0)
                } else {
                    c.clone()
                }
            })
            .collect(),
        2 => (0..n)
            .map(|j| {
                let phi = if n == 1 {
                    0.0
                } else {
                    theta_max * (2.0 * j as f64 / (n - 1) as f64 - 1.0)
                };
                let (s, co) = phi.sin_cos();
                Vector(vec![co * c[0] - s * c[1], s * c[0] + co * c[1]])
            })
            .collect(),
        dim => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e37_79b9_7f4a_7c15);
            let cos_max = theta_max.cos();
            (0..n)
                .map(|_| {
                    let w = loop {
                        let g = gaussian_unit(dim, &mut rng);
                        let proj = g.dot(&c);
                        let w = g.axpy(-proj, &c);
                        if let Some(w) = w.normalized() {
                            break w;
                        }
                    };
                    let u: f64 = rng.random();
                    let cos_t = 1.0 - u * (1.0 - cos_max);
                    let theta = cos_t.clamp(-1.0, 1.0).acos();
                    let v = c.scaled(theta.cos()).axpy(theta.sin(), &w);
                    v.normalized().unwrap_or_else(|| c.clone())
                })
                .collect()
        }
    };
    Ok(out)
}

/// Grid-shrink maximization of `f` over the box `[lower, upper]` (dimension ≤ 3).
///
/// Each round evaluates a regular grid, then recenters a box of two grid
/// spacings around the best point. For concave `f` the maximizer stays inside
/// the shrinking box, so the returned value converges to the true maximum.
pub fn maximize_over_box<F>(mut f: F, lower: &Vector, upper: &Vector, tol: &Tolerance) -> Result<(Vector, f64)>
where
    F: FnMut(&[f64]) -> f64,
{
    let dim = lower.dim();
    if upper.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: upper.dim(),
        });
    }
    if dim > 3 {
        return Err(Error::Unsupported(format!(
            "box maximization is limited to dimension 3, got {dim}"
        )));
    }
    if lower.iter().zip(upper.iter()).any(|(l, u)| l > u) {
        return Err(Error::InvalidArgument("box lower bound exceeds upper bound".into()));
    }
    let per_axis: usize = match dim {
        1 => 17,
        2 => 9,
        _ => 7,
    };
    let mut lo = lower.0.clone();
    let mut hi = upper.0.clone();
    let mut best_x = lo.iter().zip(&hi).map(|(l, h)| 0.5 * (l + h)).collect::<Vec<_>>();
    let mut best_v = sanitize(f(&best_x));
    let mut point = vec![0.0; dim];
    let total = per_axis.pow(dim as u32);

    for _ in 0..tol.max_refinement_rounds {
        let mut round_x = best_x.clone();
        let mut round_v = best_v;
        for idx in 0..total {
            let mut rest = idx;
            for k in 0..dim {
                let j = rest % per_axis;
                rest /= per_axis;
                point[k] = lo[k] + (hi[k] - lo[k]) * j as f64 / (per_axis - 1) as f64;
            }
            let v = sanitize(f(&point));
            if v > round_v {
                round_v = v;
                round_x.copy_from_slice(&point);
            }
        }
        best_x = round_x;
        best_v = round_v;
        let mut done = true;
        for k in 0..dim {
            let h = (hi[k] - lo[k]) / (per_axis - 1) as f64;
            lo[k] = (best_x[k] - h).max(lower[k]);
            hi[k] = (best_x[k] + h).min(upper[k]);
            if hi[k] - lo[k] > 1e-15 * (1.0 + best_x[k].abs()) {
                done = false;
            }
        }
        if done {
            break;
        }
    }
    Ok((Vector(best_x), best_v))
}

fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::NEG_INFINITY
    } else {
        v
    }
}
