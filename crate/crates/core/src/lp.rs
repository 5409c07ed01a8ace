//! Dense two-phase simplex with Bland's rule.
//!
//! Problems are stated as `max cᵀx s.t. Ax ≤ b` with free variables; internally
//! each variable is split as `x = x⁺ − x⁻` and every row gets a slack.

use crate::error::{Error, Result};
use crate::numerics::{dot, Tolerance, Vector};
use crate::sets::SupportValue;

const MAX_PIVOTS: usize = 100_000;

/// `max objectiveᵀx` subject to `constraint_matrix · x ≤ rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram {
    objective: Vec<f64>,
    matrix: Vec<Vec<f64>>,
    rhs: Vec<f64>,
}

impl LinearProgram {
    pub fn new(objective: Vec<f64>, matrix: Vec<Vec<f64>>, rhs: Vec<f64>) -> Result<Self> {
        let n = objective.len();
        if n == 0 {
            return Err(Error::EmptyVector);
        }
        if matrix.len() != rhs.len() {
            return Err(Error::DimensionMismatch {
                expected: matrix.len(),
                found: rhs.len(),
            });
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: row.len(),
            });
        }
        let finite = objective
            .iter()
            .chain(rhs.iter())
            .chain(matrix.iter().flatten())
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::InvalidArgument("linear program data must be finite".into()));
        }
        Ok(LinearProgram { objective, matrix, rhs })
    }

    pub fn dim(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn constraints(&self) -> (&[Vec<f64>], &[f64]) {
        (&self.matrix, &self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal {
        point: Vector,
        value: f64,
    },
    /// `feasible_point + t·ray` stays feasible for all `t ≥ 0` and the objective grows along `ray`.
    Unbounded {
        feasible_point: Vector,
        ray: Vector,
    },
    Infeasible,
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    ncols: usize,
}

enum Phase {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.rows[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            *x /= p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * p;
                }
                row[c] = 0.0;
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost · z` from the current basic feasible solution.
    fn optimize(&mut self, cost: &[f64], allowed: usize, eps: f64) -> Result<Phase> {
        let m = self.rows.len();
        for _ in 0..MAX_PIVOTS {
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let reduced = cost[j] - (0..m).map(|i| cost[self.basis[i]] * self.rows[i][j]).sum::<f64>();
                if reduced > eps {
                    entering = Some(j);
                    break;
                }
            }
            let Some(q) = entering else {
                return Ok(Phase::Optimal);
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..m {
                let a = self.rows[i][q];
                if a > eps {
                    let ratio = self.rhs(i) / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((li, lr)) => {
                            let tie = (ratio - lr).abs() <= 1e-12 * (1.0 + lr.abs());
                            if (ratio < lr && !tie) || (tie && self.basis[i] < self.basis[li]) {
                                Some((i, ratio))
                            } else {
                                Some((li, lr))
                            }
                        }
                    };
                }
            }
            match leave {
                None => return Ok(Phase::Unbounded(q)),
                Some((r, _)) => self.pivot(r, q),
            }
        }
        Err(Error::Unsupported("simplex pivot limit reached".into()))
    }

    fn primal(&self) -> Vec<f64> {
        let mut z = vec![0.0; self.ncols];
        for (i, &b) in self.basis.iter().enumerate() {
            z[b] = self.rhs(i);
        }
        z
    }
}

/// Solves the program; identical inputs always produce identical pivots.
pub fn solve(lp: &LinearProgram, tol: &Tolerance) -> Result<LpOutcome> {
    let n = lp.dim();
    let m = lp.matrix.len();
    let eps = tol.eps_feasibility;
    let n_art = lp.rhs.iter().filter(|&&b| b < 0.0).count();
    let ncols = 2 * n + m + n_art;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut art = 2 * n + m;
    for i in 0..m {
        let sign = if lp.rhs[i] < 0.0 { -1.0 } else { 1.0 };
        let mut row = vec![0.0; ncols + 1];
        for j in 0..n {
            row[j] = sign * lp.matrix[i][j];
            row[n + j] = -sign * lp.matrix[i][j];
        }
        row[2 * n + i] = sign;
        row[ncols] = sign * lp.rhs[i];
        if sign < 0.0 {
            row[art] = 1.0;
            basis.push(art);
            art += 1;
        } else {
            basis.push(2 * n + i);
        }
        rows.push(row);
    }
    let mut tab = Tableau { rows, basis, ncols };
    let first_art = 2 * n + m;

    if n_art > 0 {
        let mut cost = vec![0.0; ncols];
        for c in cost.iter_mut().skip(first_art) {
            *c = -1.0;
        }
        tab.optimize(&cost, ncols, eps)?;
        let infeas: f64 = tab
            .basis
            .iter()
            .enumerate()
            .filter(|(_, &b)| b >= first_art)
            .map(|(i, _)| tab.rhs(i))
            .sum();
        let scale = lp.rhs.iter().fold(1.0_f64, |a, b| a.max(b.abs()));
        if infeas > eps * scale {
            return Ok(LpOutcome::Infeasible);
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] >= first_art {
                match (0..first_art).find(|&j| tab.rows[i][j].abs() > eps) {
                    Some(j) => {
                        tab.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        tab.rows.remove(i);
                        tab.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }

    let mut cost = vec![0.0; ncols];
    for j in 0..n {
        cost[j] = lp.objective[j];
        cost[n + j] = -lp.objective[j];
    }
    let phase = tab.optimize(&cost, first_art, eps)?;
    let z = tab.primal();
    let point: Vec<f64> = (0..n).map(|j| z[j] - z[n + j]).collect();
    match phase {
        Phase::Optimal => {
            let value = dot(&lp.objective, &point);
            Ok(LpOutcome::Optimal {
                point: Vector::from_raw(point),
                value,
            })
        }
        Phase::Unbounded(q) => {
            let mut dz = vec![0.0; ncols];
            dz[q] = 1.0;
            for (i, &b) in tab.basis.iter().enumerate() {
                dz[b] = -tab.rows[i][q];
            }
            let ray: Vec<f64> = (0..n).map(|j| dz[j] - dz[n + j]).collect();
            let norm = ray.iter().map(|x| x * x).sum::<f64>().sqrt();
            let ray = ray.into_iter().map(|x| x / norm).collect();
            Ok(LpOutcome::Unbounded {
                feasible_point: Vector::from_raw(point),
                ray: Vector::from_raw(ray),
            })
        }
    }
}

/// Maximizer of `dᵀx` over `{x : Ax ≤ b}`; `Ok(None)` when unbounded.
pub(crate) fn argmax_h_polyhedron(
    a: &[Vec<f64>],
    b: &[f64],
    d: &[f64],
    tol: &Tolerance,
) -> Result<Option<(Vector, f64)>> {
    let lp = LinearProgram::new(d.to_vec(), a.to_vec(), b.to_vec())?;
    match solve(&lp, tol)? {
        LpOutcome::Optimal { point, value } => Ok(Some((point, value))),
        LpOutcome::Unbounded { .. } => Ok(None),
        LpOutcome::Infeasible => Err(Error::EmptySet),
    }
}

/// Support function of `{x : Ax ≤ b}` in direction `d`.
pub fn support_h_polyhedron(a: &[Vec<f64>], b: &[f64], d: &Vector, tol: &Tolerance) -> Result<SupportValue> {
    Ok(match argmax_h_polyhedron(a, b, d, tol)? {
        Some((_, value)) => SupportValue::Finite(value),
        None => SupportValue::PlusInfinity,
    })
}

/// Whether `y` lies in the polar of the cone `{x : Ax ≤ 0}`.
///
/// Solves `max yᵀx` over the cone intersected with the unit ∞-ball, which is
/// bounded and has the same sign as the unrestricted supremum.
pub fn cone_polar_membership_h(a: &[Vec<f64>], y: &Vector, tol: &Tolerance) -> Result<bool> {
    let n = y.dim();
    let mut rows: Vec<Vec<f64>> = a.to_vec();
    let mut rhs = vec![0.0; a.len()];
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        rows.push(e.clone());
        e[j] = -1.0;
        rows.push(e);
        rhs.push(1.0);
        rhs.push(1.0);
    }
    let lp = LinearProgram::new(y.to_vec(), rows, rhs)?;
    let scale = y.iter().fold(1.0_f64, |acc, v| acc.max(v.abs()));
    match solve(&lp, tol)? {
        LpOutcome::Optimal { value, .. } => Ok(value <= tol.eps_feasibility * scale),
        // The box keeps the program bounded and the origin is feasible.
        _ => Err(Error::Unsupported("bounded cone program reported no optimum".into())),
    }
}
