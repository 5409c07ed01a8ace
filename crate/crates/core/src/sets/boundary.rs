use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::lp::{solve, LinearProgram, LpOutcome};
use crate::numerics::{sample_unit_sphere, SampleConfig, Tolerance, Vector};

use super::curves::Piece;
use super::ConvexSet;

/// How far unbounded boundary parts are followed.
const REACH: f64 = 1e4;
const RAY_STEPS: usize = 12;

fn from_pieces(pieces: &[Piece], count: usize) -> Vec<Vector> {
    let per = (count / pieces.len()).max(2);
    pieces
        .iter()
        .flat_map(|p| p.samples(per, REACH))
        .map(|q| Vector::from_raw(q.to_vec()))
        .collect()
}

fn ray_offsets(base: &[Vector], rays: &[Vector]) -> Vec<Vector> {
    let mut out = Vec::new();
    for p in base {
        for r in rays {
            for k in 1..=RAY_STEPS {
                let t = REACH.powf(k as f64 / RAY_STEPS as f64);
                out.push(p.axpy(t, r));
            }
        }
    }
    out
}

impl ConvexSet {
    /// Points on (or near) the boundary of the set, about `cfg.count` in total,
    /// used to test inclusions pointwise.
    pub fn boundary_samples(&self, tol: &Tolerance, cfg: &SampleConfig) -> Result<Vec<Vector>> {
        let count = cfg.count.max(8);
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        Ok(match self {
            ConvexSet::HyperbolaEpigraph => from_pieces(
                &[Piece::Hyperbola {
                    lo: 0.0,
                    hi: f64::INFINITY,
                }],
                count,
            ),
            ConvexSet::ParabolaEpigraph { scale } => from_pieces(
                &[Piece::Parabola {
                    alpha: *scale,
                    lo: f64::NEG_INFINITY,
                    hi: f64::INFINITY,
                }],
                count,
            ),
            ConvexSet::ConeLift3D => {
                let side = (count as f64).sqrt().ceil() as usize;
                let mut out = Vec::with_capacity(side * side);
                for i in 0..side {
                    let t = if i == 0 {
                        0.0
                    } else {
                        REACH.sqrt().powf(i as f64 / (side - 1) as f64) - 1.0
                    };
                    for j in 0..side {
                        let u = -1.0 + 2.0 * j as f64 / (side - 1) as f64;
                        let s = u * u.abs() * 100.0;
                        out.push(Vector::from_raw(vec![s, s * s / (1.0 + t), t]));
                    }
                }
                out
            }
            ConvexSet::VPolyhedron(v) => {
                let verts = v.vertices();
                let mut out: Vec<Vector> = verts.to_vec();
                if verts.len() > 1 {
                    while out.len() < count {
                        let i = rng.random_range(0..verts.len());
                        let j = rng.random_range(0..verts.len());
                        let lam: f64 = rng.random();
                        out.push(verts[i].axpy(lam, &(&verts[j] - &verts[i])));
                    }
                }
                let rays: Vec<Vector> = v.rays().iter().filter_map(|r| r.normalized()).collect();
                let offsets = ray_offsets(verts, &rays);
                out.extend(offsets);
                out
            }
            ConvexSet::HPolyhedron(h) => {
                let mut out = Vec::new();
                let mut rays = Vec::new();
                for d in sample_unit_sphere(h.dim(), &SampleConfig { count, ..*cfg })? {
                    let lp = LinearProgram::new(d.into_inner(), h.matrix().to_vec(), h.rhs().to_vec())?;
                    match solve(&lp, tol)? {
                        LpOutcome::Optimal { point, .. } => out.push(point),
                        LpOutcome::Unbounded { feasible_point, ray } => {
                            out.push(feasible_point);
                            rays.push(ray);
                        }
                        LpOutcome::Infeasible => {}
                    }
                }
                dedup(&mut out);
                dedup(&mut rays);
                let offsets = ray_offsets(&out, &rays);
                out.extend(offsets);
                out
            }
            ConvexSet::Truncation(t) => {
                t.require_nonempty()?;
                if let Some(pieces) = t.pieces() {
                    return Ok(from_pieces(&pieces, count));
                }
                let cone = t.base().recession_cone();
                let mut out = Vec::new();
                for d in sample_unit_sphere(self.dim(), &SampleConfig { count, ..*cfg })? {
                    out.push(t.compact_argmax(&d, tol)?.0);
                }
                dedup(&mut out);
                let offsets = ray_offsets(&out, &cone.sample_directions());
                out.extend(offsets);
                out
            }
        })
    }
}

fn dedup(points: &mut Vec<Vector>) {
    let mut kept: Vec<Vector> = Vec::with_capacity(points.len());
    for p in points.drain(..) {
        if kept.iter().all(|q| q.distance(&p) > 1e-9 * (1.0 + p.norm())) {
            kept.push(p);
        }
    }
    *points = kept;
}
