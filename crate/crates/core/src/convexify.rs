//! The gauge of the convex hull, computed two independent ways.
//!
//! From above: a linear program over a finite dictionary of unit-gauge atoms,
//! `min sum t_i  s.t.  sum t_i a_i = X, t >= 0`, whose value is the gauge of
//! the convex hull of the (balanced closure of the) dictionary and decreases
//! towards the hull gauge as the dictionary grows.
//!
//! From below: weak duality with the polar gauge
//! `h°(xi) = sup { <a, xi> : h(a) <= 1 }`. For any direction `xi`,
//! `<X, xi> / h°(xi) <= h_hull(X)`, so a certified *upper* bound of `h°(xi)`
//! yields a certified lower bound of the hull gauge.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bnb::{self, BnbOptions, Root};
use crate::counterexample;
use crate::decompose::{self, caratheodory_reduce, Decomposition, MAX_CERTIFIED_CELLS};
use crate::error::{Error, Result};
use crate::gauges::{Family, GaugeSpec, Homogeneity, LipschitzEstimate, DEGENERACY_TOL};
use crate::lp::{lp_solve, LPProblem, LpOutcome};
use crate::rng;
use crate::search::{pattern_search, PatternOptions};
use crate::vector::{self, Vector};

/// Phase rotations `e^{i k pi / 4}` added for every atom of a balanced gauge.
pub const PHASE_ROTATIONS: usize = 8;

/// Dictionary sizes tried by [`hull_gauge_schedule`].
pub const SCHEDULE_START: usize = 64;
pub const SCHEDULE_MAX: usize = 8192;
pub const SCHEDULE_TOL: f64 = 1e-4;

/// Largest real dimension for the certified polar bound.
pub const CERTIFIED_MAX_DIM: usize = 6;

/// A finite set of atoms on the unit gauge sphere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomDictionary {
    pub gauge: GaugeSpec,
    pub atoms: Vec<Vector>,
    pub seed: u64,
    /// Number of sampled directions (excluding exact atoms and rotations).
    pub count: usize,
    /// Leading atoms that are exact (with their rotations).
    pub exact: usize,
    /// Atoms contributed by each sampled direction.
    pub group: usize,
}

impl AtomDictionary {
    /// The dictionary restricted to its exact atoms and first `count`
    /// sampled directions.
    pub fn prefix(&self, count: usize) -> AtomDictionary {
        let count = count.min(self.count);
        AtomDictionary {
            atoms: self.atoms[..self.exact + count * self.group].to_vec(),
            count,
            ..self.clone()
        }
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    fn columns(&self, upto: usize) -> Vec<&[f64]> {
        self.atoms[..upto].iter().map(Vector::coords).collect()
    }

    fn prefix_len(&self, count: usize) -> usize {
        self.exact + count.min(self.count) * self.group
    }
}

fn orbit(g: &GaugeSpec, a: &[f64]) -> Vec<Vec<f64>> {
    let rotations = if g.homogeneity() == Homogeneity::ComplexAbsolute {
        PHASE_ROTATIONS
    } else {
        1
    };
    (0..rotations)
        .map(|k| {
            let theta = k as f64 * std::f64::consts::PI / 4.0;
            let r = if k == 0 {
                a.to_vec()
            } else {
                vector::rotate(a, theta)
            };
            let h = g.eval_raw(&r);
            r.into_iter().map(|c| c / h).collect()
        })
        .collect()
}

/// `count` random directions normalized to unit gauge, each with its phase
/// orbit for balanced gauges. For `dn` the exact atoms of
/// `{z_1 = 1} ∩ ∂D_n` come first.
pub fn build_dictionary(g: &GaugeSpec, count: usize, seed: u64) -> Result<AtomDictionary> {
    let (min, _) = g.sphere_extremes(2048, rng::split_seed(seed, 0xDE6));
    if min <= DEGENERACY_TOL {
        return Err(Error::DegenerateGauge { min });
    }
    let mode = g.mode();
    let mut atoms: Vec<Vector> = Vec::new();
    if let Family::Dn { n } = g.family() {
        for a in counterexample::f_atoms(*n)? {
            atoms.extend(orbit(g, a.coords()).into_iter().map(|c| Vector::from_raw(mode, c)));
        }
    }
    let exact = atoms.len();
    let group = if g.homogeneity() == Homogeneity::ComplexAbsolute {
        PHASE_ROTATIONS
    } else {
        1
    };
    let mut rng = rng::stream(seed, 0);
    for _ in 0..count {
        let u = vector::random_unit(&mut rng, g.real_dim());
        atoms.extend(orbit(g, &u).into_iter().map(|c| Vector::from_raw(mode, c)));
    }
    Ok(AtomDictionary {
        gauge: g.clone(),
        atoms,
        seed,
        count,
        exact,
        group,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullLp {
    pub value: f64,
    /// Active atoms scaled by their LP weights, reduced to at most
    /// `real_dim` independent atoms.
    pub active: Decomposition,
    /// Optimal LP multipliers; `<a, y> <= 1` for every dictionary atom.
    pub dual_direction: Vector,
    pub atoms_used: usize,
}

/// Upper bound of the hull gauge at `x` from the full dictionary.
pub fn hull_gauge_lp(dict: &AtomDictionary, x: &Vector) -> Result<HullLp> {
    hull_lp_upto(dict, x, dict.len())
}

fn hull_lp_upto(dict: &AtomDictionary, x: &Vector, upto: usize) -> Result<HullLp> {
    let g = &dict.gauge;
    g.check_vector(x)?;
    if x.is_zero() {
        return Err(Error::Input("hull LP target must be nonzero".into()));
    }
    let cols = dict.columns(upto);
    let d = g.real_dim();
    if span_rank(&cols, d) < d {
        return Err(Error::Infeasible(format!(
            "dictionary of {} atoms does not span R^{d}",
            cols.len()
        )));
    }
    let problem = LPProblem::from_columns(vec![1.0; cols.len()], &cols, x.coords().to_vec())?;
    match lp_solve(&problem) {
        LpOutcome::Optimal(sol) => {
            let atoms: Vec<Vec<f64>> = sol
                .x
                .iter()
                .enumerate()
                .filter(|(_, &t)| t > 0.0)
                .map(|(i, &t)| cols[i].iter().map(|c| c * t).collect())
                .collect();
            let raw = Decomposition::from_raw(g, x, atoms);
            let active = caratheodory_reduce(g, &raw)?;
            Ok(HullLp {
                value: sol.value,
                active,
                dual_direction: Vector::from_raw(g.mode(), sol.duals),
                atoms_used: cols.len(),
            })
        }
        LpOutcome::Infeasible { phase_one_residual } => Err(Error::Infeasible(format!(
            "target outside the dictionary cone (residual {phase_one_residual:e})"
        ))),
        LpOutcome::Unbounded => Err(Error::Infeasible("hull LP reported unbounded".into())),
    }
}

fn span_rank(cols: &[&[f64]], d: usize) -> usize {
    let mut gram = nalgebra::DMatrix::<f64>::zeros(d, d);
    for c in cols {
        let n2 = vector::dot(c, c);
        if n2 == 0.0 {
            continue;
        }
        for i in 0..d {
            for j in 0..d {
                gram[(i, j)] += c[i] * c[j] / n2;
            }
        }
    }
    let eig = gram.symmetric_eigenvalues();
    let top = eig.iter().cloned().fold(0.0, f64::max);
    eig.iter().filter(|&&e| e > 1e-12 * top.max(1e-300)).count()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullSchedule {
    pub value: f64,
    pub converged: bool,
    /// `(sampled directions, LP value)` per dictionary size tried.
    pub history: Vec<(usize, f64)>,
    pub last: HullLp,
}

/// Runs the LP on dictionary prefixes of 64, 128, ... sampled directions
/// until successive values differ by less than [`SCHEDULE_TOL`] or the
/// dictionary is exhausted. The stopping rule is heuristic.
pub fn hull_gauge_schedule(dict: &AtomDictionary, x: &Vector) -> Result<HullSchedule> {
    let mut history = Vec::new();
    let mut count = SCHEDULE_START.min(dict.count);
    let mut prev: Option<f64> = None;
    loop {
        let lp = hull_lp_upto(dict, x, dict.prefix_len(count))?;
        history.push((count, lp.value));
        let converged = prev.is_some_and(|p| (p - lp.value).abs() < SCHEDULE_TOL);
        if converged || count >= dict.count {
            return Ok(HullSchedule {
                value: lp.value,
                converged,
                history,
                last: lp,
            });
        }
        prev = Some(lp.value);
        count = (count * 2).min(dict.count);
    }
}

/// Certified upper bound of `h°(xi) = sup { <a, xi> : h(a) <= 1 }`.
///
/// `<a, xi> / h(a)` is 0-homogeneous, so its supremum over the boundary of
/// `[-1, 1]^d` is the global one. On a face cell of half-width `s` the
/// numerator rises by at most `s |xi|_1` over the free axes and the
/// denominator falls by at most `L r`, `r` the cell radius.
pub fn polar_support_upper(
    g: &GaugeSpec,
    xi: &Vector,
    grid_step: f64,
    lipschitz: &LipschitzEstimate,
) -> Result<f64> {
    g.check_vector(xi)?;
    let d = g.real_dim();
    if d > CERTIFIED_MAX_DIM {
        return Err(Error::CertificationInfeasible(format!(
            "real dimension {d} exceeds {CERTIFIED_MAX_DIM}; use polar_support_estimate (heuristic)"
        )));
    }
    if !(grid_step > 0.0 && grid_step.is_finite()) {
        return Err(Error::Input("grid_step must be positive".into()));
    }
    if xi.is_zero() {
        return Ok(0.0);
    }
    let xi = xi.coords();
    if d == 1 {
        let up = |a: f64| a * xi[0] / g.eval_raw(&[a]);
        return Ok(up(1.0).max(up(-1.0)));
    }
    let xi_l1: f64 = xi.iter().map(|v| v.abs()).sum();
    let l = lipschitz.constant;
    let face_radius = ((d - 1) as f64).sqrt();
    let roots: Vec<Root> = (0..2 * d)
        .map(|tag| Root {
            tag,
            center: vec![0.0; d - 1],
        })
        .collect();
    let mut point = vec![0.0; d];
    let res = bnb::minimize(
        &roots,
        d - 1,
        1.0,
        BnbOptions {
            finest_side: grid_step,
            goal: None,
            max_cells: MAX_CERTIFIED_CELLS,
        },
        |tag, c, half| {
            decompose::embed_face(tag, c, 1.0, &mut point);
            let p = vector::dot(&point, xi);
            let q = g.eval_raw(&point);
            let r = face_radius * half;
            let p_hi = p + half * (xi_l1 - xi[tag / 2].abs());
            let (q_lo, q_hi) = (q - l * r, q + l * r);
            let ub = if q_lo <= 0.0 {
                f64::INFINITY
            } else if p_hi >= 0.0 {
                p_hi / q_lo
            } else {
                p_hi / q_hi
            };
            (-p / q, -ub)
        },
    )?;
    Ok(-res.bound)
}

/// Heuristic estimate (from below) of `h°(xi)`: sphere sampling followed by
/// pattern-search refinement of the best samples. Not a certified bound.
pub fn polar_support_estimate(g: &GaugeSpec, xi: &Vector, samples: usize, seed: u64) -> Result<f64> {
    Ok(polar_maximizers(g, xi, samples, seed, &[])?
        .first()
        .map_or(0.0, |(v, _)| *v))
}

/// Local maximizers of `<a, xi> / h(a)` from the best of `samples` random
/// starts and `extra` starts, sorted by value (largest first), each
/// normalized to `h(a) = 1`.
fn polar_maximizers(
    g: &GaugeSpec,
    xi: &Vector,
    samples: usize,
    seed: u64,
    extra: &[&[f64]],
) -> Result<Vec<(f64, Vec<f64>)>> {
    g.check_vector(xi)?;
    if xi.is_zero() {
        return Ok(Vec::new());
    }
    let d = g.real_dim();
    let xi = xi.coords();
    let ratio = |a: &[f64]| {
        let h = g.eval_raw(a);
        if h > 0.0 {
            vector::dot(a, xi) / h
        } else {
            f64::NEG_INFINITY
        }
    };
    let mut rng = rng::stream(seed, 0);
    let mut pool: Vec<(f64, Vec<f64>)> = (0..samples.max(1))
        .map(|_| {
            let u = vector::random_unit(&mut rng, d);
            (ratio(&u), u)
        })
        .collect();
    pool.push((ratio(xi), xi.to_vec()));
    pool.sort_by(|a, b| b.0.total_cmp(&a.0));
    pool.truncate(8);
    pool.extend(extra.iter().map(|a| (ratio(a), a.to_vec())));
    let mut found: Vec<(f64, Vec<f64>)> = pool
        .into_par_iter()
        .enumerate()
        .map(|(i, (_, u))| {
            let mut rng = rng::stream(seed, 1 + i as u64);
            let res = pattern_search(
                |a| -ratio(a),
                u,
                PatternOptions {
                    initial_step: 0.05,
                    min_step: 1e-12,
                    max_step: 0.5,
                    max_evals: 20_000 * d,
                },
                &mut rng,
            );
            let h = g.eval_raw(&res.x);
            (-res.value, res.x.iter().map(|c| c / h).collect())
        })
        .collect();
    found.sort_by(|a, b| b.0.total_cmp(&a.0));
    Ok(found)
}

/// Pricing stops once no atom beats the dual direction by more than this.
pub const PRICING_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnGeneration {
    pub value: f64,
    pub lp: HullLp,
    pub rounds: usize,
    pub atoms_added: usize,
    /// Best `<a, y> / h(a)` found at the final dual `y`; 1 means no
    /// improving atom was found.
    pub pricing_ratio: f64,
    pub converged: bool,
}

/// Column generation on the hull LP: atoms maximizing `<a, y> / h(a)` at
/// the current dual `y` (found by local search) join the dictionary until
/// none improves or `max_rounds` pass. Every added atom lies on the
/// boundary, so `value` stays a valid upper bound throughout.
pub fn hull_gauge_column_generation(
    dict: &AtomDictionary,
    x: &Vector,
    max_rounds: usize,
    samples: usize,
    seed: u64,
) -> Result<ColumnGeneration> {
    let g = &dict.gauge;
    let mut work = dict.clone();
    let mut added = 0;
    let mut lp = hull_lp_upto(&work, x, work.len())?;
    for round in 0..max_rounds {
        let y = lp.dual_direction.coords();
        let mut ranked: Vec<(f64, &[f64])> = work
            .atoms
            .iter()
            .map(|a| (vector::dot(a.coords(), y), a.coords()))
            .collect();
        ranked.sort_by(|a, b| b.0.total_cmp(&a.0));
        let starts: Vec<&[f64]> = ranked.iter().take(8).map(|r| r.1).collect();
        let found = polar_maximizers(
            g,
            &lp.dual_direction,
            samples,
            rng::split_seed(seed, round as u64),
            &starts,
        )?;
        let best = found.first().map_or(0.0, |(v, _)| *v);
        if best <= 1.0 + PRICING_TOL {
            return Ok(ColumnGeneration {
                value: lp.value,
                lp,
                rounds: round,
                atoms_added: added,
                pricing_ratio: best,
                converged: true,
            });
        }
        for (_, a) in found.into_iter().filter(|(v, _)| *v > 1.0 + PRICING_TOL) {
            for c in orbit(g, &a) {
                work.atoms.push(Vector::from_raw(g.mode(), c));
                added += 1;
            }
        }
        lp = hull_lp_upto(&work, x, work.len())?;
    }
    let pricing_ratio = polar_support_estimate(g, &lp.dual_direction, samples, seed)?;
    Ok(ColumnGeneration {
        value: lp.value,
        lp,
        rounds: max_rounds,
        atoms_added: added,
        pricing_ratio,
        converged: pricing_ratio <= 1.0 + PRICING_TOL,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMode {
    Certified,
    Heuristic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullLower {
    pub value: f64,
    pub direction: Vector,
    pub polar_bound: f64,
    pub directions_tried: usize,
    pub mode: BoundMode,
}

/// Certified lower bound of the hull gauge at `x`:
/// `max_xi <X, xi> / polar_support_upper(xi)`.
pub fn hull_gauge_lower(
    g: &GaugeSpec,
    x: &Vector,
    directions: &[Vector],
    grid_step: f64,
    lipschitz: &LipschitzEstimate,
) -> Result<HullLower> {
    lower_from(g, x, directions, BoundMode::Certified, |xi| {
        polar_support_upper(g, xi, grid_step, lipschitz)
    })
}

/// As [`hull_gauge_lower`] with the heuristic polar estimate; the result is
/// labeled [`BoundMode::Heuristic`].
pub fn hull_gauge_lower_heuristic(
    g: &GaugeSpec,
    x: &Vector,
    directions: &[Vector],
    samples: usize,
    seed: u64,
) -> Result<HullLower> {
    lower_from(g, x, directions, BoundMode::Heuristic, |xi| {
        polar_support_estimate(g, xi, samples, seed)
    })
}

fn lower_from<F>(
    g: &GaugeSpec,
    x: &Vector,
    directions: &[Vector],
    mode: BoundMode,
    polar: F,
) -> Result<HullLower>
where
    F: Fn(&Vector) -> Result<f64> + Sync,
{
    g.check_vector(x)?;
    if x.is_zero() {
        return Ok(HullLower {
            value: 0.0,
            direction: x.clone(),
            polar_bound: 0.0,
            directions_tried: 0,
            mode,
        });
    }
    let owned;
    let directions = if directions.is_empty() {
        owned = vec![x.clone()];
        &owned[..]
    } else {
        directions
    };
    let results: Vec<Result<Option<(f64, f64, usize)>>> = directions
        .par_iter()
        .enumerate()
        .map(|(i, xi)| {
            g.check_vector(xi)?;
            let num = vector::dot(x.coords(), xi.coords());
            if num <= 0.0 {
                return Ok(None);
            }
            let up = polar(xi)?;
            Ok((up > 0.0 && up.is_finite()).then(|| (num / up, up, i)))
        })
        .collect();
    let mut best: Option<(f64, f64, usize)> = None;
    for r in results {
        if let Some(c) = r? {
            if best.is_none_or(|b| c.0 > b.0) {
                best = Some(c);
            }
        }
    }
    let (value, polar_bound, i) = best.ok_or_else(|| {
        Error::Input("every direction gave a degenerate polar bound".into())
    })?;
    Ok(HullLower {
        value,
        direction: directions[i].clone(),
        polar_bound,
        directions_tried: directions.len(),
        mode,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullBracket {
    pub upper: ColumnGeneration,
    pub lower: HullLower,
}

impl HullBracket {
    pub fn width(&self) -> f64 {
        self.upper.value - self.lower.value
    }
}

/// Both hull bounds at `x`: the dictionary schedule refined by column
/// generation from above, and the polar bound from below (certified when
/// `real_dim <= 6`, heuristic otherwise).
pub fn hull_bracket(
    g: &GaugeSpec,
    x: &Vector,
    count: usize,
    grid_step: f64,
    lipschitz_samples: usize,
    seed: u64,
) -> Result<HullBracket> {
    let dict = build_dictionary(g, count, seed)?;
    let schedule = hull_gauge_schedule(&dict, x)?;
    let base = dict.prefix(schedule.history.last().map_or(dict.count, |h| h.0));
    let upper = hull_gauge_column_generation(&base, x, 40, 2000, seed)?;
    let dirs = default_directions(x, Some(&upper.lp.dual_direction), 4, seed);
    let lower = if g.real_dim() <= CERTIFIED_MAX_DIM {
        let l = crate::gauges::estimate_lipschitz(g, lipschitz_samples, seed)?;
        hull_gauge_lower(g, x, &dirs, grid_step, &l)?
    } else {
        hull_gauge_lower_heuristic(g, x, &dirs, lipschitz_samples, seed)?
    };
    Ok(HullBracket { upper, lower })
}

/// Default directions for the lower bound: `x` itself, the LP dual direction
/// when available, and `random` perturbations of it.
pub fn default_directions(x: &Vector, dual: Option<&Vector>, random: usize, seed: u64) -> Vec<Vector> {
    let mut out = vec![x.clone()];
    let base = dual.unwrap_or(x);
    if let Some(y) = dual {
        if !y.is_zero() {
            out.push(y.clone());
        }
    }
    let mut rng = rng::stream(seed, 0);
    let scale = base.norm();
    for _ in 0..random {
        let eps: f64 = rng.gen_range(0.01..0.2);
        let w = vector::random_unit(&mut rng, base.real_dim());
        let c: Vec<f64> = base
            .coords()
            .iter()
            .zip(&w)
            .map(|(b, n)| b + eps * scale * n)
            .collect();
        out.push(Vector::from_raw(base.mode(), c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauges::estimate_lipschitz;
    use crate::Mode;

    fn e1c() -> Vector {
        Vector::complex(&[(1.0, 0.0), (0.0, 0.0)]).unwrap()
    }

    #[test]
    fn exact_dn_dictionary() {
        let g = GaugeSpec::dn(2).unwrap();
        let dict = build_dictionary(&g, 0, 1).unwrap();
        assert_eq!(dict.exact, 3 * PHASE_ROTATIONS);
        assert_eq!(dict.len(), 24);
        for a in &dict.atoms {
            assert!((g.eval(a).unwrap() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn sampled_dictionary_is_normalized() {
        let g = GaugeSpec::pnorm_real(2.0, 3).unwrap();
        let dict = build_dictionary(&g, 100, 1).unwrap();
        assert_eq!(dict.len(), 100);
        assert!(dict.atoms.iter().all(|a| (a.norm() - 1.0).abs() < 1e-10));
    }

    #[test]
    fn hull_at_centroid_is_one() {
        let g = GaugeSpec::dn(2).unwrap();
        let dict = build_dictionary(&g, 0, 1).unwrap();
        let lp = hull_gauge_lp(&dict, &e1c()).unwrap();
        assert!((lp.value - 1.0).abs() < 1e-9, "value {}", lp.value);
        assert_eq!(lp.active.len(), 3);
        for a in &lp.active.atoms {
            assert!((g.eval(a).unwrap() - 1.0 / 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn lp_is_homogeneous_on_atoms() {
        let g = GaugeSpec::dn(2).unwrap();
        let dict = build_dictionary(&g, 64, 2).unwrap();
        let x = dict.atoms[0].scaled(2.0);
        let lp = hull_gauge_lp(&dict, &x).unwrap();
        assert!((lp.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn euclidean_hull_is_the_ball() {
        let g = GaugeSpec::pnorm(2.0, 2).unwrap();
        let dict = build_dictionary(&g, 1024, 3).unwrap();
        let lp = hull_gauge_lp(&dict, &e1c()).unwrap();
        assert!((1.0..=1.01).contains(&lp.value), "value {}", lp.value);
    }

    #[test]
    fn non_spanning_dictionary_is_infeasible() {
        let g = GaugeSpec::pnorm_real(2.0, 2).unwrap();
        let mut dict = build_dictionary(&g, 1, 3).unwrap();
        dict.atoms.truncate(1);
        let x = Vector::real(&[0.3, 0.4]).unwrap();
        assert!(matches!(hull_gauge_lp(&dict, &x), Err(Error::Infeasible(_))));
    }

    #[test]
    fn polar_of_ball_and_origin() {
        let g = GaugeSpec::pnorm_real(2.0, 2).unwrap();
        let l = LipschitzEstimate::analytic(1.0);
        let xi = Vector::real(&[1.0, 0.0]).unwrap();
        let up = polar_support_upper(&g, &xi, 0.01, &l).unwrap();
        assert!((1.0..1.03).contains(&up), "up {up}");
        let zero = Vector::zeros(Mode::Real, 2);
        assert_eq!(polar_support_upper(&g, &zero, 0.01, &l).unwrap(), 0.0);
    }

    #[test]
    fn polar_of_dn_is_at_least_one() {
        let g = GaugeSpec::dn(2).unwrap();
        let l = estimate_lipschitz(&g, 4000, 0).unwrap();
        let up = polar_support_upper(&g, &e1c(), 0.05, &l).unwrap();
        assert!(up >= 1.0 && up.is_finite());
    }

    #[test]
    fn polar_rejects_high_dimension() {
        let g = GaugeSpec::pnorm(2.0, 4).unwrap();
        let xi = Vector::complex(&[(1.0, 0.0); 4]).unwrap();
        assert!(matches!(
            polar_support_upper(&g, &xi, 0.1, &LipschitzEstimate::analytic(1.0)),
            Err(Error::CertificationInfeasible(_))
        ));
        assert!(polar_support_estimate(&g, &xi, 200, 0).unwrap() > 0.99 * xi.norm());
    }

    #[test]
    fn lower_bound_of_ball() {
        let g = GaugeSpec::pnorm(2.0, 2).unwrap();
        let l = LipschitzEstimate::analytic(1.0);
        let lower = hull_gauge_lower(&g, &e1c(), &[], 0.01, &l).unwrap();
        assert!(lower.value <= 1.0 && lower.value >= 0.99, "lower {}", lower.value);
        let zero = Vector::zeros(Mode::Complex, 2);
        assert_eq!(hull_gauge_lower(&g, &zero, &[], 0.02, &l).unwrap().value, 0.0);
    }

    #[test]
    fn column_generation_closes_the_bracket() {
        let g = GaugeSpec::dn(2).unwrap();
        let x = Vector::complex(&[(0.7, 0.2), (-0.3, 0.5)]).unwrap();
        let dict = build_dictionary(&g, 64, 5).unwrap();
        let plain = hull_gauge_lp(&dict, &x).unwrap();
        let cg = hull_gauge_column_generation(&dict, &x, 40, 2000, 5).unwrap();
        assert!(cg.value <= plain.value);
        assert!(cg.atoms_added > 0);
        let b = hull_bracket(&g, &x, 64, 1e-3, 4000, 5).unwrap();
        assert!(b.lower.value <= b.upper.value);
        assert!(b.width() < 5e-3, "width {}", b.width());
    }

    #[test]
    fn schedule_stops() {
        let g = GaugeSpec::pnorm(2.0, 1).unwrap();
        let dict = build_dictionary(&g, 512, 3).unwrap();
        let x = Vector::complex(&[(0.3, -0.4)]).unwrap();
        let s = hull_gauge_schedule(&dict, &x).unwrap();
        assert!(s.history.len() >= 2);
        for w in s.history.windows(2) {
            assert!(w[1].1 <= w[0].1 + 1e-9);
        }
    }
}
