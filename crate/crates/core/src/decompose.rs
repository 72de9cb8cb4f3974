//! The m-th decomposition gauge
//! `h^(m)(X) = inf { h(X_1) + ... + h(X_m) : X_1 + ... + X_m = X }`.
//!
//! Upper bounds come from multi-start pattern search over the free atoms
//! `X_1, ..., X_{m-1}` (the last atom is fixed by the constraint). Lower
//! bounds come from a Lipschitz branch and bound over a box that provably
//! contains every useful decomposition. [`caratheodory_reduce`] turns any
//! decomposition into one with at most `real_dim` linearly independent
//! atoms without increasing its value.

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bnb::{self, BnbOptions, Root};
use crate::convexify;
use crate::error::{Error, Result};
use crate::gauges::{GaugeSpec, LipschitzEstimate, DEGENERACY_TOL};
use crate::rng;
use crate::search::{pattern_search, PatternOptions};
use crate::vector::{self, Vector};

/// Atoms whose gauge is below this fraction of `h(target)` are folded away.
pub const ZERO_ATOM_REL: f64 = 1e-12;

/// Largest `(m - 1) * real_dim` the certified grid accepts.
pub const CERTIFIED_MAX_FREE_DIM: usize = 6;

pub const DEFAULT_GRID_STEP: f64 = 0.02;

/// Cell budget for one certified lower bound.
pub const MAX_CERTIFIED_CELLS: usize = 100_000_000;

/// A list of atoms summing to `target`, with the sum of their gauge values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub target: Vector,
    pub atoms: Vec<Vector>,
    pub value: f64,
}

impl Decomposition {
    /// Builds a decomposition against `g`, folding near-zero atoms into the
    /// largest remaining atom so the sum is preserved.
    pub fn new(g: &GaugeSpec, target: Vector, atoms: Vec<Vector>) -> Result<Self> {
        g.check_vector(&target)?;
        for a in &atoms {
            g.check_vector(a)?;
        }
        let raw: Vec<Vec<f64>> = atoms.into_iter().map(Vector::into_coords).collect();
        Ok(Self::from_raw(g, &target, raw))
    }

    pub(crate) fn from_raw(g: &GaugeSpec, target: &Vector, atoms: Vec<Vec<f64>>) -> Self {
        let mode = target.mode();
        let d = target.real_dim();
        let cutoff = ZERO_ATOM_REL * g.eval_raw(target.coords());
        let mut kept: Vec<(Vec<f64>, f64)> = Vec::new();
        let mut dropped = vec![0.0; d];
        for a in atoms {
            let v = g.eval_raw(&a);
            if v <= cutoff {
                for (s, c) in dropped.iter_mut().zip(&a) {
                    *s += c;
                }
            } else {
                kept.push((a, v));
            }
        }
        if kept.is_empty() {
            let v = g.eval_raw(target.coords());
            kept.push((target.coords().to_vec(), v));
        } else if dropped.iter().any(|&c| c != 0.0) {
            let big = (0..kept.len())
                .max_by(|&i, &j| kept[i].1.total_cmp(&kept[j].1))
                .unwrap();
            for (c, s) in kept[big].0.iter_mut().zip(&dropped) {
                *c += s;
            }
            kept[big].1 = g.eval_raw(&kept[big].0);
        }
        let value = kept.iter().map(|(_, v)| v).sum();
        Decomposition {
            target: target.clone(),
            atoms: kept
                .into_iter()
                .map(|(a, _)| Vector::from_raw(mode, a))
                .collect(),
            value,
        }
    }

    /// Checks the decomposition invariants against `g`.
    pub fn validate(&self, g: &GaugeSpec) -> Result<()> {
        g.check_vector(&self.target)?;
        if self.atoms.is_empty() {
            return Err(Error::Input("decomposition needs at least one atom".into()));
        }
        let mut sum = vec![0.0; self.target.real_dim()];
        let mut value = 0.0;
        for a in &self.atoms {
            g.check_vector(a)?;
            if a.is_zero() {
                return Err(Error::Input("decomposition contains a zero atom".into()));
            }
            for (s, c) in sum.iter_mut().zip(a.coords()) {
                *s += c;
            }
            value += g.eval_raw(a.coords());
        }
        let err: Vec<f64> = sum
            .iter()
            .zip(self.target.coords())
            .map(|(s, t)| s - t)
            .collect();
        if vector::norm(&err) > 1e-9 * (1.0 + self.target.norm()) {
            return Err(Error::Input("decomposition atoms do not sum to the target".into()));
        }
        if (value - self.value).abs() > 1e-9 * value.max(1.0) {
            return Err(Error::Input(format!(
                "decomposition value {} differs from the atom gauge sum {value}",
                self.value
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    MthLower,
    HullLower,
}

/// A machine-checkable lower bound: under the recorded Lipschitz assumption
/// the infimum is at least `bound`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub bound: f64,
    /// Side of the finest grid cells actually used.
    pub grid_step: f64,
    pub lipschitz: LipschitzEstimate,
    /// Sup-norm radius of the box searched for each free atom.
    pub region_radius: f64,
    pub m: usize,
    /// Bound over the box interior.
    pub box_bound: f64,
    /// Lower bound of the gauge on the box boundary; any decomposition with
    /// an atom outside the box costs at least this much.
    pub boundary_bound: f64,
    pub cells_evaluated: usize,
}

fn check_target(g: &GaugeSpec, x: &Vector) -> Result<f64> {
    g.check_vector(x)?;
    if x.is_zero() {
        return Err(Error::Input("target vector must be nonzero".into()));
    }
    Ok(g.eval_raw(x.coords()))
}

fn check_definite(g: &GaugeSpec, seed: u64) -> Result<f64> {
    let (min, _) = g.sphere_extremes(4096, rng::split_seed(seed, 0xDEF));
    if min <= DEGENERACY_TOL {
        return Err(Error::DegenerateGauge { min });
    }
    Ok(min)
}

/// Sum of `h` over the free atoms packed in `free` plus the eliminated atom
/// `target - sum(free)`.
fn objective(g: &GaugeSpec, target: &[f64], free: &[f64], last: &mut [f64]) -> f64 {
    let d = target.len();
    last.copy_from_slice(target);
    let mut total = 0.0;
    for atom in free.chunks(d) {
        total += g.eval_raw(atom);
        for (l, a) in last.iter_mut().zip(atom) {
            *l -= a;
        }
    }
    total + g.eval_raw(last)
}

/// Merges atom pairs (cheapest first) until at most `m` remain, then pads
/// with zero atoms to exactly `m`.
fn fit_to_m(g: &GaugeSpec, mut atoms: Vec<Vec<f64>>, m: usize, d: usize) -> Vec<Vec<f64>> {
    while atoms.len() > m {
        let mut best = (0, 1, f64::INFINITY);
        for i in 0..atoms.len() {
            for j in i + 1..atoms.len() {
                let merged: Vec<f64> = atoms[i].iter().zip(&atoms[j]).map(|(a, b)| a + b).collect();
                let cost =
                    g.eval_raw(&merged) - g.eval_raw(&atoms[i]) - g.eval_raw(&atoms[j]);
                if cost < best.2 {
                    best = (i, j, cost);
                }
            }
        }
        let removed = atoms.swap_remove(best.1);
        for (a, b) in atoms[best.0].iter_mut().zip(&removed) {
            *a += b;
        }
    }
    while atoms.len() < m {
        atoms.push(vec![0.0; d]);
    }
    atoms
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UpperBound {
    pub value: f64,
    pub best: Decomposition,
    pub starts: usize,
}

/// Best value of `sum h(X_j)` found over decompositions of `x` into `m`
/// atoms. Always at most `h(x)`.
pub fn mth_gauge_upper(
    g: &GaugeSpec,
    m: usize,
    x: &Vector,
    restarts: usize,
    seed: u64,
) -> Result<UpperBound> {
    mth_gauge_upper_seeded(g, m, x, restarts, seed, &[])
}

/// As [`mth_gauge_upper`], with extra starting decompositions (merged or
/// zero-padded to `m` atoms).
pub fn mth_gauge_upper_seeded(
    g: &GaugeSpec,
    m: usize,
    x: &Vector,
    restarts: usize,
    seed: u64,
    seeds: &[Decomposition],
) -> Result<UpperBound> {
    if m < 1 {
        return Err(Error::Input("m must be at least 1".into()));
    }
    let hx = check_target(g, x)?;
    let c_min = check_definite(g, seed)?;
    if m == 1 {
        let best = Decomposition::from_raw(g, x, vec![x.coords().to_vec()]);
        return Ok(UpperBound {
            value: hx,
            best,
            starts: 1,
        });
    }
    let d = g.real_dim();
    let target = x.coords();
    let scale = x.norm();

    // Seeded starts: trivial split, caller seeds, and an LP hull decomposition.
    let mut seeded: Vec<Vec<Vec<f64>>> = vec![fit_to_m(g, vec![target.to_vec()], m, d)];
    for s in seeds {
        if s.target.coords() == target {
            let atoms = s.atoms.iter().map(|a| a.coords().to_vec()).collect();
            seeded.push(fit_to_m(g, atoms, m, d));
        }
    }
    let dict = convexify::build_dictionary(g, 256, rng::split_seed(seed, 0xD1C))?;
    if let Ok(hull) = convexify::hull_gauge_lp(&dict, x) {
        let atoms = hull.active.atoms.iter().map(|a| a.coords().to_vec()).collect();
        seeded.push(fit_to_m(g, atoms, m, d));
    }

    let dict_atoms: Vec<&[f64]> = dict.atoms.iter().map(|a| a.coords()).collect();
    let box_radius = hx / c_min;
    let random_start = |r: usize, rng: &mut rand_chacha::ChaCha8Rng| -> Vec<Vec<f64>> {
        if r.is_multiple_of(2) {
            // Random convex combination of dictionary atoms scaled to h(x).
            let weights: Vec<f64> = (0..m).map(|_| -rng.gen::<f64>().ln()).collect();
            let total: f64 = weights.iter().sum();
            let mut atoms: Vec<Vec<f64>> = (0..m - 1)
                .map(|j| {
                    let a = dict_atoms.choose(rng).unwrap();
                    a.iter().map(|c| c * hx * weights[j] / total).collect()
                })
                .collect();
            let mut last = target.to_vec();
            for a in &atoms {
                for (l, c) in last.iter_mut().zip(a) {
                    *l -= c;
                }
            }
            atoms.push(last);
            atoms
        } else {
            let mut atoms: Vec<Vec<f64>> = (0..m - 1)
                .map(|_| (0..d).map(|_| rng.gen_range(-box_radius..box_radius)).collect())
                .collect();
            atoms.push(vec![0.0; d]);
            atoms
        }
    };

    let free_dim = (m - 1) * d;
    let base_opts = PatternOptions {
        initial_step: 0.1 * scale,
        min_step: 1e-10 * scale,
        max_step: scale,
        max_evals: 3000 * free_dim.max(4),
    };
    let total_starts = seeded.len() + restarts;
    let results: Vec<(f64, usize, Vec<f64>)> = (0..total_starts)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng::stream(seed, 1_000_000 + i as u64);
            let (start, opts) = if i < seeded.len() {
                (
                    seeded[i].clone(),
                    PatternOptions {
                        initial_step: 0.02 * scale,
                        ..base_opts
                    },
                )
            } else {
                (random_start(i - seeded.len(), &mut rng), base_opts)
            };
            let free: Vec<f64> = start[..m - 1].iter().flatten().copied().collect();
            let mut last = vec![0.0; d];
            let res = pattern_search(
                |z| objective(g, target, z, &mut last),
                free,
                opts,
                &mut rng,
            );
            let value = objective(g, target, &res.x, &mut last);
            (value, i, res.x)
        })
        .collect();
    let (_, _, free) = results
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
        .expect("at least the trivial start");
    let mut atoms: Vec<Vec<f64>> = free.chunks(d).map(<[f64]>::to_vec).collect();
    let mut last = target.to_vec();
    for a in &atoms {
        for (l, c) in last.iter_mut().zip(a) {
            *l -= c;
        }
    }
    atoms.push(last);
    let best = Decomposition::from_raw(g, x, atoms);
    Ok(UpperBound {
        value: best.value,
        best,
        starts: total_starts,
    })
}

/// Certified lower bound of `h^(m)(x)` by Lipschitz branch and bound down to
/// cells of side `grid_step`.
///
/// Any decomposition with value below `h(x)` has free atoms in the sublevel
/// set `{h <= h(x)}`, which the box of sup-radius `1.5 h(x) / min_sphere h`
/// contains; decompositions with a free atom outside the box are bounded by
/// a second branch and bound over the box boundary (by homogeneity the
/// gauge outside the box is at least its minimum on the boundary).
///
/// Cell bounds subtract `L * 2 (m - 1) * sqrt(d) * half`: each free atom
/// moves at most `sqrt(d) * half` within its cell and the eliminated atom
/// moves by at most the sum of those.
pub fn mth_gauge_lower_certified(
    g: &GaugeSpec,
    m: usize,
    x: &Vector,
    grid_step: f64,
    lipschitz: &LipschitzEstimate,
) -> Result<Certificate> {
    if m < 1 {
        return Err(Error::Input("m must be at least 1".into()));
    }
    if !(grid_step > 0.0 && grid_step.is_finite()) {
        return Err(Error::Input("grid_step must be positive".into()));
    }
    let hx = check_target(g, x)?;
    let d = g.real_dim();
    let free_dim = (m - 1) * d;
    if free_dim > CERTIFIED_MAX_FREE_DIM {
        return Err(Error::CertificationInfeasible(format!(
            "(m - 1) * real_dim = {free_dim} exceeds {CERTIFIED_MAX_FREE_DIM}"
        )));
    }
    if m == 1 {
        return Ok(Certificate {
            kind: CertificateKind::MthLower,
            bound: hx,
            grid_step,
            lipschitz: *lipschitz,
            region_radius: 0.0,
            m,
            box_bound: hx,
            boundary_bound: hx,
            cells_evaluated: 1,
        });
    }
    let c_min = check_definite(g, 0)?;
    let radius = 1.5 * hx / c_min;
    let l = lipschitz.constant;
    let target = x.coords();
    let per_atom = (d as f64).sqrt();

    let opts = BnbOptions {
        finest_side: grid_step,
        goal: None,
        max_cells: MAX_CERTIFIED_CELLS,
    };
    let roots = [Root {
        tag: 0,
        center: vec![0.0; free_dim],
    }];
    let mut last = vec![0.0; d];
    let inner = bnb::minimize(&roots, free_dim, radius, opts, |_, c, half| {
        let v = objective(g, target, c, &mut last);
        (v, v - l * 2.0 * (m - 1) as f64 * per_atom * half)
    })?;

    let boundary = boundary_minimum(g, d, radius, grid_step, l, Some(inner.bound))?;
    Ok(Certificate {
        kind: CertificateKind::MthLower,
        bound: inner.bound.min(boundary.0),
        grid_step: inner.finest_side,
        lipschitz: *lipschitz,
        region_radius: radius,
        m,
        box_bound: inner.bound,
        boundary_bound: boundary.0,
        cells_evaluated: inner.cells_evaluated + boundary.1,
    })
}

/// Certified lower bound of `h` on the boundary of `[-r, r]^d`, stopping
/// early once `goal` is reached.
fn boundary_minimum(
    g: &GaugeSpec,
    d: usize,
    r: f64,
    grid_step: f64,
    l: f64,
    goal: Option<f64>,
) -> Result<(f64, usize)> {
    let mut point = vec![0.0; d];
    if d == 1 {
        let v = g.eval_raw(&[r]).min(g.eval_raw(&[-r]));
        return Ok((v, 2));
    }
    let roots: Vec<Root> = (0..2 * d)
        .map(|tag| Root {
            tag,
            center: vec![0.0; d - 1],
        })
        .collect();
    let face_radius = ((d - 1) as f64).sqrt();
    let res = bnb::minimize(
        &roots,
        d - 1,
        r,
        BnbOptions {
            finest_side: grid_step,
            goal,
            max_cells: MAX_CERTIFIED_CELLS,
        },
        |tag, c, half| {
            embed_face(tag, c, r, &mut point);
            let v = g.eval_raw(&point);
            (v, v - l * face_radius * half)
        },
    )?;
    Ok((res.bound, res.cells_evaluated))
}

/// Places face coordinates `c` on face `tag` of `[-r, r]^d`: axis `tag / 2`
/// is pinned to `+r` (even tag) or `-r` (odd tag).
pub(crate) fn embed_face(tag: usize, c: &[f64], r: f64, out: &mut [f64]) {
    let axis = tag / 2;
    let sign = if tag.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut k = 0;
    for (i, o) in out.iter_mut().enumerate() {
        if i == axis {
            *o = sign * r;
        } else {
            *o = c[k];
            k += 1;
        }
    }
}

/// Reduces a decomposition to at most `real_dim` linearly independent atoms
/// without increasing its value.
///
/// Writing each atom as `t_j * A_j` with `h(A_j) = 1`, a linear dependence
/// `sum c_j A_j = 0` lets the weights move along `t - s c` with the target
/// unchanged; moving in the direction where `sum c_j` does not increase the
/// value until a weight reaches zero removes one atom.
pub fn caratheodory_reduce(g: &GaugeSpec, d: &Decomposition) -> Result<Decomposition> {
    d.validate(g)?;
    let dim = g.real_dim();
    let mut weights: Vec<f64> = d.atoms.iter().map(|a| g.eval_raw(a.coords())).collect();
    let mut units: Vec<Vec<f64>> = d
        .atoms
        .iter()
        .zip(&weights)
        .map(|(a, w)| a.coords().iter().map(|c| c / w).collect())
        .collect();
    let mut changed = false;
    loop {
        let count = units.len();
        let Some(null) = dependence(&units, dim) else {
            break;
        };
        changed = true;
        // Coefficients for the unnormalized units.
        let mut c: Vec<f64> = null
            .iter()
            .zip(&units)
            .map(|(v, u)| v / vector::norm(u))
            .collect();
        if c.iter().sum::<f64>() < 0.0 {
            c.iter_mut().for_each(|v| *v = -*v);
        }
        let (hit, step) = c
            .iter()
            .enumerate()
            .filter(|(_, &cj)| cj > 1e-14)
            .map(|(j, &cj)| (j, weights[j] / cj))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("a null vector with nonnegative sum has a positive entry");
        for j in 0..count {
            weights[j] -= step * c[j];
        }
        weights[hit] = 0.0;
        let total: f64 = weights.iter().sum();
        let mut j = 0;
        while j < units.len() {
            if weights[j] <= 1e-15 * total {
                weights.swap_remove(j);
                units.swap_remove(j);
            } else {
                j += 1;
            }
        }
    }
    if !changed {
        return Ok(d.clone());
    }
    let mode = d.target.mode();
    let mut atoms: Vec<Vec<f64>> = units
        .iter()
        .zip(&weights)
        .map(|(u, w)| u.iter().map(|c| c * w).collect())
        .collect();
    // Absorb floating drift into the heaviest atom.
    let mut residual = d.target.coords().to_vec();
    for a in &atoms {
        for (r, c) in residual.iter_mut().zip(a) {
            *r -= c;
        }
    }
    let heavy = (0..atoms.len())
        .max_by(|&i, &j| weights[i].total_cmp(&weights[j]))
        .unwrap();
    for (c, r) in atoms[heavy].iter_mut().zip(&residual) {
        *c += r;
    }
    let value = atoms.iter().map(|a| g.eval_raw(a)).sum();
    Ok(Decomposition {
        target: d.target.clone(),
        atoms: atoms.into_iter().map(|a| Vector::from_raw(mode, a)).collect(),
        value,
    })
}

/// Minimum singular value threshold (column-normalized) for independence.
pub const INDEPENDENCE_TOL: f64 = 1e-10;

/// A null vector of the column-normalized atom matrix if the atoms are
/// linearly dependent.
fn dependence(units: &[Vec<f64>], dim: usize) -> Option<Vec<f64>> {
    let count = units.len();
    if count <= 1 {
        return None;
    }
    let size = count.max(dim);
    // Zero rows keep the matrix square so the SVD returns a full V.
    let mut a = DMatrix::<f64>::zeros(size, count);
    for (j, u) in units.iter().enumerate() {
        let n = vector::norm(u);
        for i in 0..dim {
            a[(i, j)] = u[i] / n;
        }
    }
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let (k, &smin) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .unwrap();
    if count <= dim && smin > INDEPENDENCE_TOL {
        return None;
    }
    Some(v_t.row(k).iter().copied().collect())
}

/// Smallest singular value of the column-normalized atom matrix.
pub fn min_singular_value(atoms: &[Vector]) -> f64 {
    if atoms.is_empty() {
        return 0.0;
    }
    let dim = atoms[0].real_dim();
    let mut a = DMatrix::<f64>::zeros(dim, atoms.len());
    for (j, u) in atoms.iter().enumerate() {
        let n = u.norm();
        for i in 0..dim {
            a[(i, j)] = u.coords()[i] / n;
        }
    }
    if atoms.len() > dim {
        return 0.0;
    }
    a.singular_values().iter().copied().fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainEntry {
    pub m: usize,
    pub value: f64,
    pub best: Decomposition,
}

/// `h^(1)(x), ..., h^(m_max)(x)` upper bounds, each level seeded with the
/// previous level's best decomposition so the values never increase.
pub fn gauge_chain(
    g: &GaugeSpec,
    x: &Vector,
    m_max: usize,
    restarts: usize,
    seed: u64,
) -> Result<Vec<ChainEntry>> {
    gauge_chain_seeded(g, x, m_max, restarts, seed, &[])
}

/// As [`gauge_chain`], with `extra` decompositions offered as starts at
/// every level.
pub fn gauge_chain_seeded(
    g: &GaugeSpec,
    x: &Vector,
    m_max: usize,
    restarts: usize,
    seed: u64,
    extra: &[Decomposition],
) -> Result<Vec<ChainEntry>> {
    if m_max < 1 {
        return Err(Error::Input("m_max must be at least 1".into()));
    }
    let mut chain: Vec<ChainEntry> = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let mut seeds: Vec<Decomposition> = chain.last().map(|e| e.best.clone()).into_iter().collect();
        seeds.extend(extra.iter().cloned());
        let up = mth_gauge_upper_seeded(g, m, x, restarts, rng::split_seed(seed, m as u64), &seeds)?;
        let entry = match chain.last() {
            Some(prev) if prev.value < up.value => ChainEntry {
                m,
                value: prev.value,
                best: prev.best.clone(),
            },
            _ => ChainEntry {
                m,
                value: up.value,
                best: up.best,
            },
        };
        chain.push(entry);
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauges::estimate_lipschitz;
    use crate::vector::cube_root_of_unity;

    fn e1() -> Vector {
        Vector::complex(&[(1.0, 0.0), (0.0, 0.0)]).unwrap()
    }

    #[test]
    fn m_equals_one_is_the_gauge() {
        let g = GaugeSpec::dn(2).unwrap();
        let up = mth_gauge_upper(&g, 1, &e1(), 4, 1).unwrap();
        assert!((up.value - 1.5f64.cbrt()).abs() < 1e-12);
    }

    #[test]
    fn m_zero_rejected() {
        let g = GaugeSpec::dn(2).unwrap();
        assert!(matches!(mth_gauge_upper(&g, 0, &e1(), 4, 1), Err(Error::Input(_))));
        assert!(mth_gauge_upper(&g, 2, &Vector::zeros(crate::Mode::Complex, 2), 4, 1).is_err());
    }

    #[test]
    fn symmetric_three_atom_witness() {
        let g = GaugeSpec::dn(2).unwrap();
        let atoms: Vec<Vector> = (0..3)
            .map(|k| {
                let (re, im) = cube_root_of_unity(k);
                Vector::complex(&[(1.0 / 3.0, 0.0), (re / 3.0, im / 3.0)]).unwrap()
            })
            .collect();
        let d = Decomposition::new(&g, e1(), atoms).unwrap();
        d.validate(&g).unwrap();
        assert!((d.value - 1.0).abs() < 1e-12);
        let up = mth_gauge_upper(&g, 3, &e1(), 8, 3).unwrap();
        assert!(up.value <= 1.0 + 1e-6, "value {}", up.value);
        up.best.validate(&g).unwrap();
    }

    #[test]
    fn splitting_never_helps_a_norm() {
        let g = GaugeSpec::pnorm(2.0, 2).unwrap();
        let x = Vector::complex(&[(0.3, -1.1), (0.7, 0.2)]).unwrap();
        let up = mth_gauge_upper(&g, 4, &x, 4, 5).unwrap();
        assert!((up.value - x.norm()).abs() < 1e-6);
    }

    #[test]
    fn zero_atoms_are_folded() {
        let g = GaugeSpec::pnorm(2.0, 1).unwrap();
        let x = Vector::complex(&[(1.0, 0.0)]).unwrap();
        let d = Decomposition::new(
            &g,
            x.clone(),
            vec![x.clone(), Vector::zeros(crate::Mode::Complex, 1)],
        )
        .unwrap();
        assert_eq!(d.len(), 1);
        d.validate(&g).unwrap();
    }

    #[test]
    fn validate_catches_bad_sum() {
        let g = GaugeSpec::pnorm(2.0, 1).unwrap();
        let d = Decomposition {
            target: Vector::complex(&[(1.0, 0.0)]).unwrap(),
            atoms: vec![Vector::complex(&[(0.5, 0.0)]).unwrap()],
            value: 0.5,
        };
        assert!(d.validate(&g).is_err());
    }

    #[test]
    fn parallel_atoms_merge() {
        let g = GaugeSpec::pnorm_real(2.0, 2).unwrap();
        let half = Vector::real(&[0.5, 0.0]).unwrap();
        let d = Decomposition::new(&g, Vector::real(&[1.0, 0.0]).unwrap(), vec![half.clone(), half])
            .unwrap();
        let r = caratheodory_reduce(&g, &d).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r.atoms[0].coords()[0] - 1.0).abs() < 1e-12);
        assert!(r.value <= d.value + 1e-9);
    }

    #[test]
    fn independent_input_is_a_fixed_point() {
        let g = GaugeSpec::dn(2).unwrap();
        let atoms = vec![
            Vector::complex(&[(0.5, 0.0), (0.5, 0.0)]).unwrap(),
            Vector::complex(&[(0.5, 0.0), (-0.5, 0.0)]).unwrap(),
        ];
        let d = Decomposition::new(&g, e1(), atoms).unwrap();
        assert_eq!(caratheodory_reduce(&g, &d).unwrap(), d);
    }

    #[test]
    fn certified_lower_for_euclidean_norm() {
        let g = GaugeSpec::pnorm_real(2.0, 2).unwrap();
        let x = Vector::real(&[1.0, 0.0]).unwrap();
        let l = LipschitzEstimate::analytic(1.0);
        let coarse = mth_gauge_lower_certified(&g, 2, &x, 0.05, &l).unwrap();
        let fine = mth_gauge_lower_certified(&g, 2, &x, 0.005, &l).unwrap();
        assert!(coarse.bound <= 1.0 && fine.bound <= 1.0);
        assert!(fine.bound >= coarse.bound - 1e-12);
        assert!(fine.bound > 0.98, "bound {}", fine.bound);
    }

    #[test]
    fn certified_lower_refuses_large_problems() {
        let g = GaugeSpec::dn(2).unwrap();
        let l = estimate_lipschitz(&g, 1000, 0).unwrap();
        assert!(matches!(
            mth_gauge_lower_certified(&g, 3, &e1(), 0.02, &l),
            Err(Error::CertificationInfeasible(_))
        ));
    }

    #[test]
    fn chain_is_monotone() {
        let g = GaugeSpec::dn(2).unwrap();
        let x = Vector::complex(&[(0.4, 0.9), (-0.3, 0.2)]).unwrap();
        let chain = gauge_chain(&g, &x, 4, 4, 7).unwrap();
        for w in chain.windows(2) {
            assert!(w[1].value <= w[0].value + 1e-9);
        }
    }
}
