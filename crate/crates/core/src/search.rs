//! Derivative-free local search: a poll-based pattern search whose poll set
//! is `+-` the columns of a fresh random orthonormal (Householder) basis at
//! every iteration. Random bases let the poll find descent directions at
//! kinks where any fixed coordinate set can stall.

use rand::Rng;

use crate::vector;

#[derive(Debug, Clone, Copy)]
pub struct PatternOptions {
    pub initial_step: f64,
    pub min_step: f64,
    pub max_step: f64,
    pub max_evals: usize,
}

#[derive(Debug, Clone)]
pub struct PatternResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    pub final_step: f64,
}

pub fn pattern_search<F, R>(mut f: F, x0: Vec<f64>, opts: PatternOptions, rng: &mut R) -> PatternResult
where
    F: FnMut(&[f64]) -> f64,
    R: Rng + ?Sized,
{
    let k = x0.len();
    let mut x = x0;
    let mut fx = f(&x);
    let mut evals = 1;
    let mut step = opts.initial_step;
    let mut trial = vec![0.0; k];
    let mut last_success: Option<Vec<f64>> = None;

    while step >= opts.min_step && evals < opts.max_evals && k > 0 {
        let mut improved = false;
        // Retry the last successful direction first.
        if let Some(d) = &last_success {
            for (t, (xi, di)) in trial.iter_mut().zip(x.iter().zip(d)) {
                *t = xi + step * di;
            }
            let ft = f(&trial);
            evals += 1;
            if ft < fx {
                x.copy_from_slice(&trial);
                fx = ft;
                improved = true;
            }
        }
        if !improved {
            let v = vector::random_unit(rng, k);
            'poll: for col in 0..k {
                for sign in [1.0, -1.0] {
                    // Column `col` of I - 2 v v^T.
                    for (i, t) in trial.iter_mut().enumerate() {
                        let e = if i == col { 1.0 } else { 0.0 };
                        *t = x[i] + sign * step * (e - 2.0 * v[i] * v[col]);
                    }
                    let ft = f(&trial);
                    evals += 1;
                    if ft < fx {
                        let d: Vec<f64> = (0..k)
                            .map(|i| {
                                let e = if i == col { 1.0 } else { 0.0 };
                                sign * (e - 2.0 * v[i] * v[col])
                            })
                            .collect();
                        x.copy_from_slice(&trial);
                        fx = ft;
                        last_success = Some(d);
                        improved = true;
                        break 'poll;
                    }
                }
            }
        }
        if improved {
            step = (step * 2.0).min(opts.max_step);
        } else {
            last_success = None;
            step *= 0.5;
        }
    }
    PatternResult {
        x,
        value: fx,
        evals,
        final_step: step,
    }
}
