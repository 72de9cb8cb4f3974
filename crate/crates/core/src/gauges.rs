//! Gauge (Minkowski function) families and gauge-level utilities.
//!
//! A gauge `h` is a nonnegative, positively homogeneous function; its open
//! unit sublevel set is the starlike domain it describes. Families declared
//! `complex-absolute` additionally satisfy `h(lambda X) = |lambda| h(X)` for
//! complex `lambda`, i.e. they describe balanced domains.
//!
//! The domain `D_n = { z : sum_{j>=2} (2|z_1^3 - z_j^3| + |z_1^3 + z_j^3|) < 2(n-1) }`
//! has a defining function that is absolutely homogeneous of degree 3, so its
//! gauge is the cube root of the normalized defining sum. Since `D_n` is
//! pseudoconvex and balanced, this gauge also equals the Kobayashi-Royden
//! metric of `D_n` at the origin; the crate only ever works with the gauge.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bnb::{self, BnbOptions, Root};
use crate::error::{Error, Result};
use crate::rng;
use crate::vector::{self, Mode, Vector};

/// Inflation applied to sampled Lipschitz quotients.
pub const LIPSCHITZ_INFLATION: f64 = 1.5;

/// Sampled sphere minima at or below this are treated as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Homogeneity {
    ComplexAbsolute,
    PositiveReal,
}

impl Homogeneity {
    pub fn mode(self) -> Mode {
        match self {
            Homogeneity::ComplexAbsolute => Mode::Complex,
            Homogeneity::PositiveReal => Mode::Real,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompositeOp {
    /// Gauge of the union of the parts' domains.
    Min,
    /// Gauge of the intersection of the parts' domains.
    Max,
    Sum,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedGauge {
    pub weight: f64,
    pub gauge: GaugeSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "kebab-case")]
pub enum Family {
    /// `(sum |x_k|^p)^{1/p}`; moduli of complex coordinates in complex mode.
    Pnorm { p: f64, dim: usize },
    /// `max_i |l_i(X)|` for linear functionals `l_i`, given by coefficient
    /// rows laid out like a [`Vector`]'s coordinates.
    LinearSup {
        functionals: Vec<Vec<f64>>,
        dim: usize,
    },
    /// The gauge of `D_n`.
    Dn { n: usize },
    /// `min_k max(|x_k|, max_{j != k} |x_j| / delta)` on `R^N`: a union of
    /// thin slabs around the coordinate axes.
    CrossStar { delta: f64, dim: usize },
    CustomComposite {
        op: CompositeOp,
        parts: Vec<WeightedGauge>,
    },
}

/// A validated, immutable gauge description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGaugeSpec")]
pub struct GaugeSpec {
    #[serde(flatten)]
    family: Family,
    homogeneity: Homogeneity,
}

#[derive(Deserialize)]
struct RawGaugeSpec {
    #[serde(flatten)]
    family: Family,
    homogeneity: Homogeneity,
}

impl TryFrom<RawGaugeSpec> for GaugeSpec {
    type Error = Error;

    fn try_from(raw: RawGaugeSpec) -> Result<Self> {
        GaugeSpec::new(raw.family, raw.homogeneity)
    }
}

impl GaugeSpec {
    pub fn new(family: Family, homogeneity: Homogeneity) -> Result<Self> {
        let spec = GaugeSpec {
            family,
            homogeneity,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn dn(n: usize) -> Result<Self> {
        Self::new(Family::Dn { n }, Homogeneity::ComplexAbsolute)
    }

    /// Complex `p`-norm on `C^dim`.
    pub fn pnorm(p: f64, dim: usize) -> Result<Self> {
        Self::new(Family::Pnorm { p, dim }, Homogeneity::ComplexAbsolute)
    }

    pub fn pnorm_real(p: f64, dim: usize) -> Result<Self> {
        Self::new(Family::Pnorm { p, dim }, Homogeneity::PositiveReal)
    }

    pub fn cross_star(delta: f64, dim: usize) -> Result<Self> {
        Self::new(Family::CrossStar { delta, dim }, Homogeneity::PositiveReal)
    }

    pub fn linear_sup(functionals: Vec<Vec<f64>>, homogeneity: Homogeneity) -> Result<Self> {
        let len = functionals.first().map_or(0, Vec::len);
        let dim = match homogeneity {
            Homogeneity::ComplexAbsolute => len / 2,
            Homogeneity::PositiveReal => len,
        };
        Self::new(Family::LinearSup { functionals, dim }, homogeneity)
    }

    pub fn composite(op: CompositeOp, parts: Vec<WeightedGauge>) -> Result<Self> {
        let homogeneity = parts
            .first()
            .map_or(Homogeneity::PositiveReal, |p| p.gauge.homogeneity);
        Self::new(Family::CustomComposite { op, parts }, homogeneity)
    }

    /// Same family, re-declared homogeneity. Used to test claims that do not
    /// hold (a real starlike family declared balanced, for instance).
    pub fn with_homogeneity(&self, homogeneity: Homogeneity) -> Result<Self> {
        Self::new(self.family.clone(), homogeneity)
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn homogeneity(&self) -> Homogeneity {
        self.homogeneity
    }

    pub fn mode(&self) -> Mode {
        self.homogeneity.mode()
    }

    pub fn family_name(&self) -> &'static str {
        match self.family {
            Family::Pnorm { .. } => "pnorm",
            Family::LinearSup { .. } => "linear-sup",
            Family::Dn { .. } => "dn",
            Family::CrossStar { .. } => "cross-star",
            Family::CustomComposite { .. } => "custom-composite",
        }
    }

    /// Number of real coordinates of the vectors this gauge accepts.
    pub fn real_dim(&self) -> usize {
        let per_coord = match self.homogeneity {
            Homogeneity::ComplexAbsolute => 2,
            Homogeneity::PositiveReal => 1,
        };
        match &self.family {
            Family::Pnorm { dim, .. } | Family::LinearSup { dim, .. } => per_coord * dim,
            Family::Dn { n } => 2 * n,
            Family::CrossStar { dim, .. } => *dim,
            Family::CustomComposite { parts, .. } => parts[0].gauge.real_dim(),
        }
    }

    /// Dimension in the units of [`Vector::dim`].
    pub fn dim(&self) -> usize {
        match self.mode() {
            Mode::Complex => self.real_dim() / 2,
            Mode::Real => self.real_dim(),
        }
    }

    /// Whether the family is positive definite by construction. Linear-sup
    /// families are definite only when their functionals span, which is
    /// checked by sampling instead.
    pub fn is_definite_family(&self) -> bool {
        match &self.family {
            Family::Pnorm { .. } | Family::Dn { .. } | Family::CrossStar { .. } => true,
            Family::LinearSup { .. } => false,
            Family::CustomComposite { op, parts } => match op {
                CompositeOp::Min => parts.iter().all(|p| p.gauge.is_definite_family()),
                CompositeOp::Max | CompositeOp::Sum => {
                    parts.iter().any(|p| p.gauge.is_definite_family())
                }
            },
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Input(msg));
        match &self.family {
            Family::Pnorm { p, dim } => {
                if !(p.is_finite() && *p > 0.0) {
                    return bad(format!("pnorm exponent must be finite and positive, got {p}"));
                }
                if *dim == 0 {
                    return bad("pnorm dimension must be positive".into());
                }
            }
            Family::LinearSup { functionals, dim } => {
                if *dim == 0 || functionals.is_empty() {
                    return bad("linear-sup needs at least one functional".into());
                }
                let len = self.real_dim();
                if functionals.iter().any(|f| f.len() != len) {
                    return bad(format!("every linear-sup functional needs {len} coefficients"));
                }
                if functionals.iter().flatten().any(|c| !c.is_finite()) {
                    return bad("linear-sup coefficients must be finite".into());
                }
            }
            Family::Dn { n } => {
                if *n < 2 {
                    return bad(format!("dn requires n >= 2, got {n}"));
                }
                if self.homogeneity != Homogeneity::ComplexAbsolute {
                    return bad("dn is a complex family and must be complex-absolute".into());
                }
            }
            Family::CrossStar { delta, dim } => {
                if !(delta.is_finite() && *delta > 0.0 && *delta <= 1.0) {
                    return bad(format!("cross-star delta must lie in (0, 1], got {delta}"));
                }
                if *dim < 2 {
                    return bad("cross-star dimension must be at least 2".into());
                }
                if self.homogeneity == Homogeneity::ComplexAbsolute && dim % 2 != 0 {
                    return bad("cross-star read as complex needs an even dimension".into());
                }
            }
            Family::CustomComposite { parts, .. } => {
                let Some(first) = parts.first() else {
                    return bad("custom-composite needs at least one part".into());
                };
                for part in parts {
                    if !(part.weight.is_finite() && part.weight > 0.0) {
                        return bad("composite weights must be positive".into());
                    }
                    if part.gauge.real_dim() != first.gauge.real_dim()
                        || part.gauge.homogeneity != self.homogeneity
                    {
                        return bad("composite parts must share dimension and homogeneity".into());
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks that `x` is a finite vector of the right mode and dimension.
    pub fn check_vector(&self, x: &Vector) -> Result<()> {
        if x.mode() != self.mode() {
            return Err(Error::Input(format!(
                "{} gauge expects {:?} vectors, got {:?}",
                self.family_name(),
                self.mode(),
                x.mode()
            )));
        }
        if x.real_dim() != self.real_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.real_dim(),
                got: x.real_dim(),
            });
        }
        Ok(())
    }

    pub fn eval(&self, x: &Vector) -> Result<f64> {
        self.check_vector(x)?;
        Ok(self.eval_raw(x.coords()))
    }

    /// Evaluates on raw coordinates of length [`real_dim`](Self::real_dim).
    pub fn eval_raw(&self, x: &[f64]) -> f64 {
        if x.iter().all(|&c| c == 0.0) {
            return 0.0;
        }
        let complex = self.homogeneity == Homogeneity::ComplexAbsolute;
        match &self.family {
            Family::Pnorm { p, .. } => {
                if *p == 2.0 {
                    return vector::norm(x);
                }
                let moduli: Vec<f64> = if complex {
                    x.chunks(2).map(|c| c[0].hypot(c[1])).collect()
                } else {
                    x.iter().map(|c| c.abs()).collect()
                };
                if *p == 1.0 {
                    return moduli.iter().sum();
                }
                // Scale by the largest modulus to keep powers in range.
                let big = moduli.iter().cloned().fold(0.0, f64::max);
                big * moduli
                    .iter()
                    .map(|v| (v / big).powf(*p))
                    .sum::<f64>()
                    .powf(1.0 / p)
            }
            Family::LinearSup { functionals, .. } => functionals
                .iter()
                .map(|row| {
                    if complex {
                        let (mut re, mut im) = (0.0, 0.0);
                        for (a, z) in row.chunks(2).zip(x.chunks(2)) {
                            re += a[0] * z[0] - a[1] * z[1];
                            im += a[0] * z[1] + a[1] * z[0];
                        }
                        re.hypot(im)
                    } else {
                        vector::dot(row, x).abs()
                    }
                })
                .fold(0.0, f64::max),
            Family::Dn { n } => dn_gauge(x, *n),
            Family::CrossStar { delta, .. } => {
                let mut best = f64::INFINITY;
                for k in 0..x.len() {
                    let off = x
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != k)
                        .map(|(_, c)| c.abs())
                        .fold(0.0, f64::max);
                    best = best.min(x[k].abs().max(off / delta));
                }
                best
            }
            Family::CustomComposite { op, parts } => {
                let values = parts.iter().map(|p| p.weight * p.gauge.eval_raw(x));
                match op {
                    CompositeOp::Min => values.fold(f64::INFINITY, f64::min),
                    CompositeOp::Max => values.fold(0.0, f64::max),
                    CompositeOp::Sum => values.sum(),
                }
            }
        }
    }

    /// A provable global Lipschitz constant (Euclidean metric), when the
    /// family admits a simple one.
    pub fn analytic_lipschitz(&self) -> Option<f64> {
        match &self.family {
            Family::Pnorm { p, dim } => {
                if *p >= 2.0 {
                    Some(1.0)
                } else if *p >= 1.0 {
                    Some((*dim as f64).powf(1.0 / p - 0.5))
                } else {
                    None
                }
            }
            Family::LinearSup { functionals, .. } => {
                Some(functionals.iter().map(|f| vector::norm(f)).fold(0.0, f64::max))
            }
            Family::CrossStar { delta, .. } => Some(1.0f64.max(1.0 / delta)),
            Family::Dn { n } => dn_lipschitz(*n),
            Family::CustomComposite { op, parts } => {
                let constants: Option<Vec<f64>> = parts
                    .iter()
                    .map(|p| p.gauge.analytic_lipschitz().map(|l| p.weight * l))
                    .collect();
                let constants = constants?;
                Some(match op {
                    CompositeOp::Min | CompositeOp::Max => {
                        constants.into_iter().fold(0.0, f64::max)
                    }
                    CompositeOp::Sum => constants.into_iter().sum(),
                })
            }
        }
    }

    /// Sampled `(min, max)` of the gauge over the Euclidean unit sphere.
    pub fn sphere_extremes(&self, samples: usize, seed: u64) -> (f64, f64) {
        let d = self.real_dim();
        let chunks = chunk_count(samples);
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut rng = rng::stream(seed, c as u64);
                let mut lo = f64::INFINITY;
                let mut hi: f64 = 0.0;
                for _ in chunk_range(samples, chunks, c) {
                    let u = vector::random_unit(&mut rng, d);
                    let v = self.eval_raw(&u);
                    lo = lo.min(v);
                    hi = hi.max(v);
                }
                (lo, hi)
            })
            .reduce(
                || (f64::INFINITY, 0.0),
                |a, b| (a.0.min(b.0), a.1.max(b.1)),
            )
    }
}

fn dn_gauge(x: &[f64], n: usize) -> f64 {
    let cube = |re: f64, im: f64| {
        let (r2, i2) = (re * re - im * im, 2.0 * re * im);
        (r2 * re - i2 * im, r2 * im + i2 * re)
    };
    let (a_re, a_im) = cube(x[0], x[1]);
    let mut sum = 0.0;
    for j in 1..n {
        let (b_re, b_im) = cube(x[2 * j], x[2 * j + 1]);
        sum += 2.0 * (a_re - b_re).hypot(a_im - b_im) + (a_re + b_re).hypot(a_im + b_im);
    }
    (sum / (2.0 * (n as f64 - 1.0))).cbrt()
}

/// Finest face cell used when bounding `min h` of `D_2` on the sphere.
const DN_MIN_STEP: f64 = 1.0 / 64.0;

/// Provable Lipschitz constant of the `D_n` gauge; computed for `n = 2`
/// only, where the face search is three-dimensional.
///
/// With `phi = h^3`, every directional derivative of `phi` at `X` is at most
/// `4.5 |X|^2` (each cube contributes `3 |z|^2` per unit move of `z`), so
/// `|dh| = |dphi| / (3 h^2) <= 1.5 / m^2` with `m = min h` on the unit
/// sphere. `m` is bounded from below by branch and bound of `phi / |x|^3`
/// over the faces of the cube.
fn dn_lipschitz(n: usize) -> Option<f64> {
    static CACHE: OnceLock<Option<f64>> = OnceLock::new();
    if n != 2 {
        return None;
    }
    *CACHE.get_or_init(|| {
        let m = dn_sphere_min_lower(n, DN_MIN_STEP)?;
        Some(1.5 / (m * m))
    })
}

fn dn_sphere_min_lower(n: usize, step: f64) -> Option<f64> {
    let d = 2 * n;
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
            finest_side: step,
            goal: None,
            max_cells: 50_000_000,
        },
        |tag, c, half| {
            crate::decompose::embed_face(tag, c, 1.0, &mut point);
            let r = face_radius * half;
            let norm = vector::norm(&point);
            let phi = dn_gauge(&point, n).powi(3);
            let outer = norm + r;
            let lb = (phi - 4.5 * outer * outer * r) / outer.powi(3);
            (phi / norm.powi(3), lb)
        },
    )
    .ok()?;
    (res.bound > 0.0).then(|| res.bound.cbrt())
}

/// Evaluates `g` at `x`.
pub fn eval_gauge(g: &GaugeSpec, x: &Vector) -> Result<f64> {
    g.eval(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LipschitzMethod {
    Sampled,
    AnalyticOverride,
}

/// A Lipschitz constant for a gauge with respect to the Euclidean metric.
///
/// Sampled constants are the maximum observed difference quotient times
/// [`LIPSCHITZ_INFLATION`]; certificates built on them are valid under that
/// assumption, which is why `inflation` travels with the constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LipschitzEstimate {
    pub constant: f64,
    pub sphere_samples: usize,
    pub method: LipschitzMethod,
    pub sampled_max: f64,
    pub inflation: f64,
}

impl LipschitzEstimate {
    /// A constant known analytically, e.g. for the Euclidean norm.
    pub fn analytic(constant: f64) -> Self {
        LipschitzEstimate {
            constant,
            sphere_samples: 0,
            method: LipschitzMethod::AnalyticOverride,
            sampled_max: constant,
            inflation: 1.0,
        }
    }

    /// The same assumption for the gauge `h / scale`.
    pub fn rescaled(&self, scale: f64) -> Self {
        LipschitzEstimate {
            constant: self.constant / scale,
            sampled_max: self.sampled_max / scale,
            ..*self
        }
    }
}

pub fn estimate_lipschitz(g: &GaugeSpec, samples: usize, seed: u64) -> Result<LipschitzEstimate> {
    if samples == 0 {
        return Err(Error::Input("Lipschitz estimation needs samples > 0".into()));
    }
    let (min, _) = g.sphere_extremes(samples, rng::split_seed(seed, 0xA11));
    if min <= DEGENERACY_TOL {
        return Err(Error::DegenerateGauge { min });
    }
    if let Some(constant) = g.analytic_lipschitz() {
        return Ok(LipschitzEstimate {
            sphere_samples: samples,
            ..LipschitzEstimate::analytic(constant)
        });
    }
    let d = g.real_dim();
    let chunks = chunk_count(samples);
    let sampled_max = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = rng::stream(seed, c as u64);
            let mut best: f64 = 0.0;
            let mut probe = vec![0.0; d];
            for _ in chunk_range(samples, chunks, c) {
                let u = vector::random_unit(&mut rng, d);
                let hu = g.eval_raw(&u);
                let v = vector::random_unit(&mut rng, d);
                best = best.max(quotient(hu, g.eval_raw(&v), &u, &v));
                let w = vector::random_unit(&mut rng, d);
                for eps in [1e-2, 1e-4, 1e-6] {
                    for (p, (a, b)) in probe.iter_mut().zip(u.iter().zip(&w)) {
                        *p = a + eps * b;
                    }
                    // Off-sphere step (radial component included) ...
                    best = best.max((g.eval_raw(&probe) - hu).abs() / eps);
                    // ... and its projection back to the sphere.
                    let r = vector::norm(&probe);
                    probe.iter_mut().for_each(|p| *p /= r);
                    best = best.max(quotient(hu, g.eval_raw(&probe), &u, &probe));
                }
            }
            best
        })
        .reduce(|| 0.0, f64::max);
    Ok(LipschitzEstimate {
        constant: LIPSCHITZ_INFLATION * sampled_max,
        sphere_samples: samples,
        method: LipschitzMethod::Sampled,
        sampled_max,
        inflation: LIPSCHITZ_INFLATION,
    })
}

fn quotient(hu: f64, hv: f64, u: &[f64], v: &[f64]) -> f64 {
    let dist: f64 = u
        .iter()
        .zip(v)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    if dist < 1e-12 {
        0.0
    } else {
        (hu - hv).abs() / dist
    }
}

fn chunk_count(samples: usize) -> usize {
    samples.div_ceil(1024).max(1)
}

fn chunk_range(samples: usize, chunks: usize, c: usize) -> std::ops::Range<usize> {
    let lo = samples * c / chunks;
    let hi = samples * (c + 1) / chunks;
    lo..hi
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomogeneityReport {
    pub homogeneity: Homogeneity,
    pub trials: usize,
    pub passed: bool,
    /// Largest `|h(lambda X) - |lambda| h(X)| / (1 + h(X))` observed.
    pub worst_violation: f64,
    pub tol: f64,
}

/// Samples `(X, lambda)` pairs and tests the declared homogeneity.
pub fn check_homogeneity(g: &GaugeSpec, trials: usize, seed: u64, tol: f64) -> HomogeneityReport {
    use rand::Rng;

    let mut rng = rng::stream(seed, 0);
    let d = g.real_dim();
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let x = vector::random_gaussian(&mut rng, d);
        let hx = g.eval_raw(&x);
        let r: f64 = rng.gen_range(0.05..3.0);
        let lambda_x: Vec<f64> = match g.homogeneity {
            Homogeneity::ComplexAbsolute => {
                let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                vector::rotate(&x, theta).into_iter().map(|c| r * c).collect()
            }
            Homogeneity::PositiveReal => x.iter().map(|c| r * c).collect(),
        };
        let violation = (g.eval_raw(&lambda_x) - r * hx).abs() / (1.0 + hx);
        worst = worst.max(violation);
    }
    HomogeneityReport {
        homogeneity: g.homogeneity,
        trials,
        passed: worst <= tol,
        worst_violation: worst,
        tol,
    }
}

/// Parses the short command-line gauge syntax:
/// `dn:N`, `pnorm:P:DIM` (complex), `pnorm-real:P:DIM`, `cross-star:DELTA:DIM`.
/// Anything starting with `{` is read as JSON.
pub fn parse_gauge(text: &str) -> Result<GaugeSpec> {
    let text = text.trim();
    if text.starts_with('{') {
        return Ok(serde_json::from_str(text)?);
    }
    let parts: Vec<&str> = text.split(':').collect();
    let num = |s: &str| {
        s.parse::<f64>()
            .map_err(|e| Error::Input(format!("bad gauge parameter {s:?}: {e}")))
    };
    let int = |s: &str| {
        s.parse::<usize>()
            .map_err(|e| Error::Input(format!("bad gauge dimension {s:?}: {e}")))
    };
    match parts.as_slice() {
        ["dn", n] => GaugeSpec::dn(int(n)?),
        ["pnorm", p, dim] => GaugeSpec::pnorm(num(p)?, int(dim)?),
        ["pnorm-real", p, dim] => GaugeSpec::pnorm_real(num(p)?, int(dim)?),
        ["cross-star", delta, dim] => GaugeSpec::cross_star(num(delta)?, int(dim)?),
        _ => Err(Error::Input(format!(
            "unrecognised gauge {text:?}; expected dn:N, pnorm:P:DIM, pnorm-real:P:DIM, cross-star:DELTA:DIM or JSON"
        ))),
    }
}
