//! Best-first Lipschitz branch and bound over cubes.
//!
//! The caller supplies, for a cube with a given center and half-width, the
//! objective value at the center and a lower bound valid on the whole cube
//! (typically `f(center) - L * radius`). Cubes are bisected along every axis
//! until the cube with the smallest lower bound is at the finest resolution;
//! that lower bound is then a certified lower bound of the infimum over all
//! roots. Every cube of the final partition is at least as fine as the cube
//! that terminated the search or has a larger lower bound, so the result is
//! never weaker than enumerating the full grid at the finest step.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Largest cube dimension the search supports.
pub const MAX_DIM: usize = 6;

#[derive(Debug, Clone)]
pub struct Root {
    pub tag: usize,
    pub center: Vec<f64>,
}

#[derive(Debug, Clone, Copy)]
pub struct BnbOptions {
    /// Cubes are refined until their side is at most this.
    pub finest_side: f64,
    /// Stop as soon as the smallest lower bound reaches this value.
    pub goal: Option<f64>,
    pub max_cells: usize,
}

#[derive(Debug, Clone)]
pub struct BnbResult {
    pub bound: f64,
    pub best_value: f64,
    pub best_point: Vec<f64>,
    pub best_tag: usize,
    pub cells_evaluated: usize,
    /// Side of the finest cubes actually produced.
    pub finest_side: f64,
    pub reached_goal: bool,
}

#[derive(Clone, Copy)]
struct Cell {
    lb: f64,
    half: f64,
    tag: usize,
    center: [f64; MAX_DIM],
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Cell {}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cell {
    // Reversed so the max-heap pops the smallest lower bound; ties go to the
    // coarser cube, then the lower tag, for determinism.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .lb
            .total_cmp(&self.lb)
            .then(self.half.total_cmp(&other.half))
            .then(other.tag.cmp(&self.tag))
            .then_with(|| {
                for (a, b) in other.center.iter().zip(&self.center) {
                    match a.total_cmp(b) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
    }
}

/// Minimizes over the union of cubes `center +- half` (all roots share
/// `half`). `eval(tag, center, half)` returns `(value, lower_bound)`.
pub fn minimize<F>(
    roots: &[Root],
    dim: usize,
    half: f64,
    opts: BnbOptions,
    mut eval: F,
) -> Result<BnbResult>
where
    F: FnMut(usize, &[f64], f64) -> (f64, f64),
{
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::CertificationInfeasible(format!(
            "branch and bound supports 1..={MAX_DIM} dimensions, got {dim}"
        )));
    }
    if !(opts.finest_side > 0.0 && half > 0.0) {
        return Err(Error::Input("cube sizes must be positive".into()));
    }
    let mut heap = BinaryHeap::new();
    let mut evaluated = 0usize;
    let mut best_value = f64::INFINITY;
    let mut best_point = vec![0.0; dim];
    let mut best_tag = 0;
    let mut pruned_min = f64::INFINITY;

    let mut push = |heap: &mut BinaryHeap<Cell>,
                    tag: usize,
                    center: [f64; MAX_DIM],
                    half: f64,
                    best_value: &mut f64,
                    best_point: &mut Vec<f64>,
                    best_tag: &mut usize,
                    pruned_min: &mut f64| {
        let (value, lb) = eval(tag, &center[..dim], half);
        evaluated += 1;
        if value < *best_value {
            *best_value = value;
            best_point.copy_from_slice(&center[..dim]);
            *best_tag = tag;
        }
        if lb > *best_value {
            // Never popped before termination; only its bound matters.
            *pruned_min = pruned_min.min(lb);
        } else {
            heap.push(Cell {
                lb,
                half,
                tag,
                center,
            });
        }
        evaluated
    };

    for root in roots {
        let mut c = [0.0; MAX_DIM];
        c[..dim].copy_from_slice(&root.center);
        push(
            &mut heap,
            root.tag,
            c,
            half,
            &mut best_value,
            &mut best_point,
            &mut best_tag,
            &mut pruned_min,
        );
    }

    let mut finest = 2.0 * half;
    while finest > opts.finest_side {
        finest *= 0.5;
    }

    loop {
        let Some(cell) = heap.pop() else {
            return Ok(BnbResult {
                bound: pruned_min,
                best_value,
                best_point,
                best_tag,
                cells_evaluated: evaluated,
                finest_side: finest,
                reached_goal: opts.goal.is_some_and(|g| pruned_min >= g),
            });
        };
        let reached_goal = opts.goal.is_some_and(|g| cell.lb >= g);
        if 2.0 * cell.half <= opts.finest_side || reached_goal {
            return Ok(BnbResult {
                bound: cell.lb.min(pruned_min),
                best_value,
                best_point,
                best_tag,
                cells_evaluated: evaluated,
                finest_side: finest,
                reached_goal,
            });
        }
        if cell.lb > best_value {
            pruned_min = pruned_min.min(cell.lb);
            continue;
        }
        let h = 0.5 * cell.half;
        for mask in 0..(1usize << dim) {
            let mut c = cell.center;
            for (k, ck) in c.iter_mut().enumerate().take(dim) {
                *ck += if mask >> k & 1 == 1 { h } else { -h };
            }
            let count = push(
                &mut heap,
                cell.tag,
                c,
                h,
                &mut best_value,
                &mut best_point,
                &mut best_tag,
                &mut pruned_min,
            );
            if count > opts.max_cells {
                return Err(Error::CertificationInfeasible(format!(
                    "branch and bound exceeded {} cells",
                    opts.max_cells
                )));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(finest: f64) -> BnbOptions {
        BnbOptions {
            finest_side: finest,
            goal: None,
            max_cells: 10_000_000,
        }
    }

    #[test]
    fn certified_bound_for_abs_sum() {
        // f(x) = |x0 - 0.3| + |x1 + 0.2| + 1, Lipschitz sqrt(2).
        let f = |x: &[f64]| (x[0] - 0.3).abs() + (x[1] + 0.2).abs() + 1.0;
        let roots = [Root {
            tag: 0,
            center: vec![0.0, 0.0],
        }];
        let r = minimize(&roots, 2, 1.0, opts(1e-3), |_, c, h| {
            let v = f(c);
            (v, v - 2f64.sqrt() * 2f64.sqrt() * h)
        })
        .unwrap();
        assert!(r.bound <= 1.0);
        assert!(r.bound > 1.0 - 3e-3);
        assert!(r.best_value >= 1.0 && r.best_value < 1.0 + 2e-3);
        assert!(r.finest_side <= 1e-3);
    }

    #[test]
    fn goal_stops_early() {
        let roots = [Root {
            tag: 0,
            center: vec![0.0],
        }];
        let r = minimize(
            &roots,
            1,
            1.0,
            BnbOptions {
                goal: Some(0.5),
                ..opts(1e-9)
            },
            |_, c, h| {
                let v = 2.0 + c[0];
                (v, v - h)
            },
        )
        .unwrap();
        assert!(r.reached_goal);
        assert!(r.bound >= 0.5);
        assert!(r.cells_evaluated < 10);
    }

    #[test]
    fn cell_budget_is_enforced() {
        let roots = [Root {
            tag: 0,
            center: vec![0.0; 3],
        }];
        let r = minimize(
            &roots,
            3,
            1.0,
            BnbOptions {
                max_cells: 100,
                ..opts(1e-6)
            },
            |_, _, h| (0.0, -h),
        );
        assert!(matches!(r, Err(Error::CertificationInfeasible(_))));
    }
}
