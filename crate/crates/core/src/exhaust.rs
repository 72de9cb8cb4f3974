//! Exhaustion of a balanced domain `B` by bounded balanced domains
//!
//! `B_j = { z : |z| < j,  closed_ball(z, |z|^2 / j) ⊂ B }`,
//!
//! whose gauges decrease pointwise to `h_B` as `j` grows. The construction
//! assumes `B` contains the unit Euclidean ball; a gauge whose sampled
//! maximum on the unit sphere exceeds 1 is first rescaled to `h / c` with
//! `c` that maximum, the exhaustion is built for `cB`, and results are mapped
//! back by `h_{B_j}(X) = c * h_{(cB)_j}(X)`.
//!
//! Ball inclusion is tested on a structured sphere sample. With a Lipschitz
//! estimate the test adds a covering cushion and is certified; without one it
//! is a heuristic and reported as such.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauges::{GaugeSpec, LipschitzEstimate};
use crate::rng;
use crate::vector::{self, Vector};

pub const DEFAULT_SPHERE_SAMPLES: usize = 4000;
pub const DEFAULT_BISECTION_TOL: f64 = 1e-8;
pub const MAX_BISECTION_STEPS: usize = 200;

/// Unit-sphere sample built from cell centers of a grid on each face of
/// `[-1, 1]^d`, radially projected. Radial projection onto the ball is
/// 1-Lipschitz, so every unit vector lies within `covering_radius` of a
/// sample.
#[derive(Debug, Clone)]
pub struct SphereGrid {
    pub points: Vec<Vec<f64>>,
    pub covering_radius: f64,
}

impl SphereGrid {
    pub fn new(d: usize, samples: usize) -> Self {
        if d == 1 {
            return SphereGrid {
                points: vec![vec![1.0], vec![-1.0]],
                covering_radius: 0.0,
            };
        }
        let faces = 2 * d;
        let per_face = (samples / faces).max(1) as f64;
        let mut k = per_face.powf(1.0 / (d - 1) as f64).floor().max(1.0) as usize;
        // Odd k puts a sample at every face center.
        if k.is_multiple_of(2) {
            k = k.saturating_sub(1).max(1);
        }
        let mut points = Vec::with_capacity(faces * k.pow((d - 1) as u32));
        let mut idx = vec![0usize; d - 1];
        for face in 0..faces {
            idx.iter_mut().for_each(|i| *i = 0);
            loop {
                let face_coords: Vec<f64> = idx
                    .iter()
                    .map(|&i| -1.0 + (2 * i + 1) as f64 / k as f64)
                    .collect();
                let mut p = vec![0.0; d];
                crate::decompose::embed_face(face, &face_coords, 1.0, &mut p);
                let r = vector::norm(&p);
                points.push(p.into_iter().map(|c| c / r).collect());
                // Odometer increment.
                let mut pos = 0;
                while pos < d - 1 {
                    idx[pos] += 1;
                    if idx[pos] < k {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == d - 1 {
                    break;
                }
            }
        }
        SphereGrid {
            points,
            covering_radius: ((d - 1) as f64).sqrt() / k as f64,
        }
    }
}

/// One level `B_j` of the exhaustion.
#[derive(Debug, Clone)]
pub struct ExhaustionLevel {
    pub j: usize,
    pub base: GaugeSpec,
    /// Normalizing factor `c >= 1` (see module docs).
    pub scale: f64,
    pub lipschitz: Option<LipschitzEstimate>,
    sphere: SphereGrid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub member: bool,
    /// True when the Lipschitz cushion was applied.
    pub certified: bool,
}

/// Normalizing factor making the unit ball part of the scaled domain.
pub fn normalization_scale(base: &GaugeSpec) -> f64 {
    let (_, max) = base.sphere_extremes(20_000, rng::split_seed(rng::DEFAULT_SEED, 0x5CA));
    if max <= 1.0 + 1e-9 {
        1.0
    } else {
        max
    }
}

impl ExhaustionLevel {
    pub fn new(base: &GaugeSpec, j: usize, sphere_samples: usize) -> Result<Self> {
        Self::with_scale(base, j, sphere_samples, normalization_scale(base))
    }

    pub fn with_scale(base: &GaugeSpec, j: usize, sphere_samples: usize, scale: f64) -> Result<Self> {
        if j < 1 {
            return Err(Error::Input("exhaustion level j must be at least 1".into()));
        }
        if !(scale >= 1.0 && scale.is_finite()) {
            return Err(Error::Input("normalization scale must be >= 1".into()));
        }
        Ok(ExhaustionLevel {
            j,
            base: base.clone(),
            scale,
            lipschitz: None,
            sphere: SphereGrid::new(base.real_dim(), sphere_samples),
        })
    }

    /// Enables the certified membership test.
    pub fn certified(mut self, lipschitz: LipschitzEstimate) -> Self {
        self.lipschitz = Some(lipschitz);
        self
    }

    pub fn sphere(&self) -> &SphereGrid {
        &self.sphere
    }

    /// Membership of `z` (original units) in `B_j`.
    pub fn member(&self, z: &Vector) -> Result<Membership> {
        self.base.check_vector(z)?;
        Ok(self.member_raw(z.coords()))
    }

    fn member_raw(&self, z: &[f64]) -> Membership {
        let certified = self.lipschitz.is_some();
        let c = self.scale;
        let w: Vec<f64> = z.iter().map(|v| c * v).collect();
        let norm = vector::norm(&w);
        let j = self.j as f64;
        if norm == 0.0 {
            return Membership {
                member: true,
                certified,
            };
        }
        if norm >= j {
            return Membership {
                member: false,
                certified,
            };
        }
        let r = norm * norm / j;
        let cushion = self
            .lipschitz
            .map_or(0.0, |l| l.constant / c * r * self.sphere.covering_radius);
        let mut p = vec![0.0; w.len()];
        for u in &self.sphere.points {
            for ((pi, wi), ui) in p.iter_mut().zip(&w).zip(u) {
                *pi = wi + r * ui;
            }
            if self.base.eval_raw(&p) / c + cushion >= 1.0 {
                return Membership {
                    member: false,
                    certified,
                };
            }
        }
        Membership {
            member: true,
            certified,
        }
    }

    /// Gauge of `B_j` at `x` by bisection along the ray through `x`.
    pub fn gauge(&self, x: &Vector, tol: f64) -> Result<f64> {
        self.base.check_vector(x)?;
        if x.is_zero() {
            return Err(Error::Input("level_gauge needs a nonzero vector".into()));
        }
        let coords = x.coords();
        let at = |t: f64| -> Vec<f64> { coords.iter().map(|v| v / t).collect() };
        // X / h_B(X) lies on the boundary of B, hence outside B_j.
        let mut lo = self.base.eval_raw(coords);
        let mut hi = 2.0 * lo;
        let mut doublings = 0;
        while !self.member_raw(&at(hi)).member {
            lo = hi;
            hi *= 2.0;
            doublings += 1;
            if doublings > MAX_BISECTION_STEPS || !hi.is_finite() {
                return Err(Error::Bracket(format!(
                    "no member found along the ray up to t = {hi:e}"
                )));
            }
        }
        for _ in 0..MAX_BISECTION_STEPS {
            if hi - lo <= tol * hi {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if self.member_raw(&at(mid)).member {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }
}

/// Membership of `z` in `B_j`; certified when `lipschitz` is given.
pub fn level_member(
    level: &ExhaustionLevel,
    z: &Vector,
    sphere_samples: usize,
    lipschitz: Option<&LipschitzEstimate>,
) -> Result<Membership> {
    let mut probe =
        ExhaustionLevel::with_scale(&level.base, level.j, sphere_samples, level.scale)?;
    probe.lipschitz = lipschitz.copied();
    probe.member(z)
}

pub fn level_gauge(level: &ExhaustionLevel, x: &Vector, tol: f64) -> Result<f64> {
    level.gauge(x, tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub j: usize,
    pub value: f64,
}

/// `h_{B_j}(x)` for each `j` in `j_list` (heuristic membership, default
/// sphere sample).
pub fn convergence_scan(base: &GaugeSpec, x: &Vector, j_list: &[usize]) -> Result<Vec<ScanRow>> {
    base.check_vector(x)?;
    let scale = normalization_scale(base);
    let sphere = SphereGrid::new(base.real_dim(), DEFAULT_SPHERE_SAMPLES);
    let mut rows = Vec::with_capacity(j_list.len());
    for &j in j_list {
        if x.is_zero() {
            rows.push(ScanRow { j, value: 0.0 });
            continue;
        }
        let mut level = ExhaustionLevel::with_scale(base, j, 2, scale)?;
        level.sphere = sphere.clone();
        rows.push(ScanRow {
            j,
            value: level.gauge(x, DEFAULT_BISECTION_TOL)?,
        });
    }
    Ok(rows)
}

/// CSV with header `j,value`.
pub fn scan_to_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from("j,value\n");
    for r in rows {
        out.push_str(&format!("{},{:.12}\n", r.j, r.value));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Mode;

    fn ball() -> GaugeSpec {
        GaugeSpec::pnorm(2.0, 2).unwrap()
    }

    fn e1(t: f64) -> Vector {
        Vector::complex(&[(t, 0.0), (0.0, 0.0)]).unwrap()
    }

    #[test]
    fn sphere_grid_covers() {
        let s = SphereGrid::new(3, 600);
        assert!(s.points.iter().all(|p| (vector::norm(p) - 1.0).abs() < 1e-12));
        // Face centers are present.
        assert!(s.points.iter().any(|p| (p[0] - 1.0).abs() < 1e-12));
        let mut rng = rng::stream(4, 0);
        for _ in 0..2000 {
            let u = vector::random_unit(&mut rng, 3);
            let nearest = s
                .points
                .iter()
                .map(|p| vector::norm(&p.iter().zip(&u).map(|(a, b)| a - b).collect::<Vec<_>>()))
                .fold(f64::INFINITY, f64::min);
            assert!(nearest <= s.covering_radius + 1e-12);
        }
    }

    #[test]
    fn membership_examples() {
        let level = ExhaustionLevel::new(&ball(), 1, 2000).unwrap();
        assert_eq!(level.scale, 1.0);
        assert!(level.member(&e1(0.5)).unwrap().member);
        assert!(!level.member(&e1(0.7)).unwrap().member);
        let origin = Vector::zeros(Mode::Complex, 2);
        for j in [1, 5, 50] {
            let l = ExhaustionLevel::new(&ball(), j, 100).unwrap();
            assert!(l.member(&origin).unwrap().member);
        }
    }

    #[test]
    fn certified_flag() {
        let level = ExhaustionLevel::new(&ball(), 1, 2000)
            .unwrap()
            .certified(LipschitzEstimate::analytic(1.0));
        let m = level.member(&e1(0.5)).unwrap();
        assert!(m.certified && m.member);
        let free = level_member(&level, &e1(0.5), 2000, None).unwrap();
        assert!(!free.certified && free.member);
    }

    #[test]
    fn level_gauge_examples() {
        let l1 = ExhaustionLevel::new(&ball(), 1, DEFAULT_SPHERE_SAMPLES).unwrap();
        let golden = (5f64.sqrt() + 1.0) / 2.0;
        assert!((l1.gauge(&e1(1.0), 1e-10).unwrap() - golden).abs() < 1e-6);
        let l10 = ExhaustionLevel::new(&ball(), 10, DEFAULT_SPHERE_SAMPLES).unwrap();
        // s + s^2 / 10 = 1.
        let s = (-1.0 + (1.0f64 + 0.4).sqrt()) / 0.2;
        let g10 = l10.gauge(&e1(1.0), 1e-10).unwrap();
        assert!((g10 - 1.0 / s).abs() < 1e-6);
        assert!((g10 - 1.0916).abs() < 1e-4);
        let doubled = l10.gauge(&e1(2.0), 1e-10).unwrap();
        assert!((doubled - 2.0 * g10).abs() < 1e-6);
    }

    #[test]
    fn scan_of_origin_is_zero() {
        let rows = convergence_scan(&ball(), &Vector::zeros(Mode::Complex, 2), &[1, 2, 4]).unwrap();
        assert!(rows.iter().all(|r| r.value == 0.0));
        assert!(scan_to_csv(&rows).starts_with("j,value\n1,0."));
    }

    #[test]
    fn zero_level_rejected() {
        assert!(ExhaustionLevel::new(&ball(), 0, 10).is_err());
    }
}
