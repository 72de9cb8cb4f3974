//! Dense two-phase primal simplex for small equality-form problems
//! `min c^T t  s.t.  A t = b,  t >= 0`.
//!
//! Pricing is Dantzig's rule (most negative reduced cost). After a run of
//! degenerate pivots the solver switches permanently to Bland's least-index
//! rule, which cannot cycle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const PIVOT_TOL: f64 = 1e-11;
const COST_TOL: f64 = 1e-10;
const DEGENERATE_RUN: usize = 50;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LPProblem {
    pub objective: Vec<f64>,
    /// Row-major constraint matrix, one inner vector per equality row.
    pub constraints: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible { phase_one_residual: f64 },
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub value: f64,
    /// Multipliers `y` of the equality rows; `A^T y <= c` at optimality.
    pub duals: Vec<f64>,
    pub basis: Vec<usize>,
    pub pivots: usize,
}

impl LPProblem {
    pub fn new(objective: Vec<f64>, constraints: Vec<Vec<f64>>, rhs: Vec<f64>) -> Result<Self> {
        let p = LPProblem {
            objective,
            constraints,
            rhs,
        };
        p.validate()?;
        Ok(p)
    }

    /// Builds the problem from columns, which is how dictionaries are stored.
    pub fn from_columns(objective: Vec<f64>, columns: &[&[f64]], rhs: Vec<f64>) -> Result<Self> {
        let rows = rhs.len();
        let constraints = (0..rows)
            .map(|i| columns.iter().map(|c| c[i]).collect())
            .collect();
        Self::new(objective, constraints, rhs)
    }

    pub fn rows(&self) -> usize {
        self.rhs.len()
    }

    pub fn cols(&self) -> usize {
        self.objective.len()
    }

    fn validate(&self) -> Result<()> {
        let n = self.cols();
        if self.constraints.len() != self.rows() {
            return Err(Error::Input("LP row count differs from rhs length".into()));
        }
        if self.constraints.iter().any(|r| r.len() != n) {
            return Err(Error::Input("LP constraint rows must match objective length".into()));
        }
        let finite = self
            .objective
            .iter()
            .chain(self.rhs.iter())
            .chain(self.constraints.iter().flatten())
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::Input("LP entries must be finite".into()));
        }
        Ok(())
    }
}

struct Tableau {
    rows: usize,
    cols: usize,
    width: usize,
    data: Vec<f64>,
    cost: Vec<f64>,
    basis: Vec<usize>,
    pivots: usize,
    bland: bool,
    degenerate_run: usize,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.width + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.data[i * self.width + self.width - 1]
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let w = self.width;
        let p = self.data[r * w + e];
        for v in &mut self.data[r * w..(r + 1) * w] {
            *v /= p;
        }
        let (before, rest) = self.data.split_at_mut(r * w);
        let (prow, after) = rest.split_at_mut(w);
        for row in before.chunks_mut(w).chain(after.chunks_mut(w)) {
            let f = row[e];
            if f != 0.0 {
                for (v, pv) in row.iter_mut().zip(prow.iter()) {
                    *v -= f * pv;
                }
                row[e] = 0.0;
            }
        }
        let f = self.cost[e];
        if f != 0.0 {
            for (v, pv) in self.cost.iter_mut().zip(prow.iter()) {
                *v -= f * pv;
            }
            self.cost[e] = 0.0;
        }
        self.basis[r] = e;
        self.pivots += 1;
    }

    fn entering(&self) -> Option<usize> {
        let scale = 1.0 + self.cost[..self.cols].iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let tol = COST_TOL * scale;
        if self.bland {
            (0..self.cols).find(|&j| self.cost[j] < -tol)
        } else {
            let mut best = None;
            let mut most = -tol;
            for j in 0..self.cols {
                if self.cost[j] < most {
                    most = self.cost[j];
                    best = Some(j);
                }
            }
            best
        }
    }

    fn leaving(&self, e: usize) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..self.rows {
            let a = self.at(i, e);
            if a > PIVOT_TOL {
                let ratio = self.rhs(i).max(0.0) / a;
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        let better = ratio < br - 1e-14
                            || (ratio <= br + 1e-14 && self.basis[i] < self.basis[bi]);
                        if better {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
        }
        best.map(|(i, _)| i)
    }

    fn run(&mut self) -> Step {
        let limit = 200 * (self.rows + self.cols) + 1000;
        loop {
            let Some(e) = self.entering() else {
                return Step::Optimal;
            };
            let Some(r) = self.leaving(e) else {
                return Step::Unbounded;
            };
            if self.rhs(r).abs() <= 1e-13 {
                self.degenerate_run += 1;
                if self.degenerate_run >= DEGENERATE_RUN {
                    self.bland = true;
                }
            } else {
                self.degenerate_run = 0;
            }
            self.pivot(r, e);
            if self.pivots > limit {
                // Bland's rule terminates; reaching here means numerical
                // trouble rather than cycling.
                self.bland = true;
                if self.pivots > 2 * limit {
                    return Step::Optimal;
                }
            }
        }
    }
}

/// Solves the problem. Infeasibility and unboundedness are verdicts, not
/// errors.
pub fn lp_solve(p: &LPProblem) -> LpOutcome {
    let m = p.rows();
    let n = p.cols();
    let width = n + m + 1;
    let mut data = vec![0.0; m * width];
    let mut sign = vec![1.0; m];
    for i in 0..m {
        if p.rhs[i] < 0.0 {
            sign[i] = -1.0;
        }
        let row = &mut data[i * width..(i + 1) * width];
        for (r, c) in row[..n].iter_mut().zip(&p.constraints[i]) {
            *r = sign[i] * c;
        }
        row[n + i] = 1.0;
        row[width - 1] = sign[i] * p.rhs[i];
    }
    // Phase one: minimize the sum of artificials.
    let mut cost = vec![0.0; width];
    for i in 0..m {
        for j in 0..n {
            cost[j] -= data[i * width + j];
        }
        cost[width - 1] -= data[i * width + width - 1];
    }
    let mut t = Tableau {
        rows: m,
        cols: n,
        width,
        data,
        cost,
        basis: (n..n + m).collect(),
        pivots: 0,
        bland: false,
        degenerate_run: 0,
    };
    t.run();
    let residual = -t.cost[width - 1];
    let b_scale = 1.0 + p.rhs.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if residual > 1e-9 * b_scale {
        return LpOutcome::Infeasible {
            phase_one_residual: residual,
        };
    }
    // Drive zero-level artificials out of the basis where possible.
    for i in 0..m {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| t.at(i, j).abs() > 1e-9) {
                t.pivot(i, j);
            }
        }
    }
    // Phase two.
    t.cost = vec![0.0; width];
    t.cost[..n].copy_from_slice(&p.objective);
    for i in 0..m {
        let b = t.basis[i];
        let cb = if b < n { p.objective[b] } else { 0.0 };
        if cb != 0.0 {
            for j in 0..width {
                t.cost[j] -= cb * t.data[i * width + j];
            }
        }
    }
    t.degenerate_run = 0;
    if let Step::Unbounded = t.run() {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![0.0; n];
    for i in 0..m {
        if t.basis[i] < n {
            x[t.basis[i]] = t.rhs(i).max(0.0);
        }
    }
    let value = p.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    let duals = (0..m).map(|k| -sign[k] * t.cost[n + k]).collect();
    LpOutcome::Optimal(LpSolution {
        x,
        value,
        duals,
        basis: t.basis.clone(),
        pivots: t.pivots,
    })
}

/// True when `A t = b` has a solution `t >= 0` (phase one only).
pub fn is_feasible(p: &LPProblem) -> bool {
    let zero = LPProblem {
        objective: vec![0.0; p.cols()],
        ..p.clone()
    };
    matches!(lp_solve(&zero), LpOutcome::Optimal(_))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn optimal(o: LpOutcome) -> LpSolution {
        match o {
            LpOutcome::Optimal(s) => s,
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn two_variable_example() {
        let p = LPProblem::new(vec![1.0, 1.0], vec![vec![1.0, -1.0]], vec![1.0]).unwrap();
        let s = optimal(lp_solve(&p));
        assert!((s.value - 1.0).abs() < 1e-12);
        assert!((s.x[0] - 1.0).abs() < 1e-12 && s.x[1].abs() < 1e-12);
        // Dual feasibility: A^T y <= c.
        assert!(s.duals[0] <= 1.0 + 1e-12 && -s.duals[0] <= 1.0 + 1e-12);
        assert!((s.duals[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn infeasible_verdict() {
        let p = LPProblem::new(vec![1.0], vec![vec![0.0]], vec![1.0]).unwrap();
        assert!(matches!(lp_solve(&p), LpOutcome::Infeasible { .. }));
    }

    #[test]
    fn unbounded_verdict() {
        let p = LPProblem::new(vec![-1.0, 0.0], vec![vec![1.0, -1.0]], vec![0.0]).unwrap();
        assert_eq!(lp_solve(&p), LpOutcome::Unbounded);
    }

    #[test]
    fn negative_rhs_and_duals() {
        // min 2a + 3b  s.t.  -a - b = -4,  a - b = 0  ->  a = b = 2.
        let p = LPProblem::new(
            vec![2.0, 3.0],
            vec![vec![-1.0, -1.0], vec![1.0, -1.0]],
            vec![-4.0, 0.0],
        )
        .unwrap();
        let s = optimal(lp_solve(&p));
        assert!((s.value - 10.0).abs() < 1e-12);
        let dual_value: f64 = s.duals.iter().zip(&p.rhs).map(|(y, b)| y * b).sum();
        assert!((dual_value - s.value).abs() < 1e-10);
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let p = LPProblem::new(
            vec![1.0, 2.0, 0.5],
            vec![vec![1.0, 1.0, 1.0], vec![2.0, 2.0, 2.0]],
            vec![1.0, 2.0],
        )
        .unwrap();
        let s = optimal(lp_solve(&p));
        assert!((s.value - 0.5).abs() < 1e-12);
    }

    #[test]
    fn degenerate_problem_terminates() {
        // Classic Beale-style cycling example rewritten in equality form with
        // slacks.
        let p = LPProblem::new(
            vec![-0.75, 150.0, -0.02, 6.0, 0.0, 0.0, 0.0],
            vec![
                vec![0.25, -60.0, -0.04, 9.0, 1.0, 0.0, 0.0],
                vec![0.5, -90.0, -0.02, 3.0, 0.0, 1.0, 0.0],
                vec![0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0],
            ],
            vec![0.0, 0.0, 1.0],
        )
        .unwrap();
        let s = optimal(lp_solve(&p));
        assert!((s.value + 0.05).abs() < 1e-9);
    }

    #[test]
    fn rejects_malformed() {
        assert!(LPProblem::new(vec![1.0], vec![vec![1.0, 2.0]], vec![1.0]).is_err());
        assert!(LPProblem::new(vec![f64::NAN], vec![vec![1.0]], vec![1.0]).is_err());
    }
}
