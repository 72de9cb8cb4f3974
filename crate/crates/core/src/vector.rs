//! Points of `C^n` (stored as `2n` interleaved real/imaginary parts) or of
//! `R^N`.

use std::fmt;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Complex,
    Real,
}

/// A finite point of `C^n` or `R^N`.
///
/// In complex mode coordinate `k` occupies `coords[2k]` (real part) and
/// `coords[2k + 1]` (imaginary part).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawVector", into = "RawVector")]
pub struct Vector {
    mode: Mode,
    coords: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawVector {
    mode: Mode,
    dim: usize,
    coords: Vec<f64>,
}

impl TryFrom<RawVector> for Vector {
    type Error = Error;

    fn try_from(raw: RawVector) -> Result<Self> {
        let v = Vector::new(raw.mode, raw.coords)?;
        if v.dim() != raw.dim {
            return Err(Error::Input(format!(
                "vector declares dim {} but carries {} coordinates",
                raw.dim,
                v.coords.len()
            )));
        }
        Ok(v)
    }
}

impl From<Vector> for RawVector {
    fn from(v: Vector) -> Self {
        RawVector {
            mode: v.mode,
            dim: v.dim(),
            coords: v.coords,
        }
    }
}

impl Vector {
    pub fn new(mode: Mode, coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Input("vector must have at least one coordinate".into()));
        }
        if mode == Mode::Complex && !coords.len().is_multiple_of(2) {
            return Err(Error::Input(format!(
                "complex vector needs an even number of real coordinates, got {}",
                coords.len()
            )));
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::Input(format!("non-finite coordinate {bad}")));
        }
        Ok(Vector { mode, coords })
    }

    /// Complex vector from `(re, im)` pairs.
    pub fn complex(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            Mode::Complex,
            pairs.iter().flat_map(|&(re, im)| [re, im]).collect(),
        )
    }

    pub fn real(coords: &[f64]) -> Result<Self> {
        Self::new(Mode::Real, coords.to_vec())
    }

    pub fn zeros(mode: Mode, dim: usize) -> Self {
        let len = match mode {
            Mode::Complex => 2 * dim,
            Mode::Real => dim,
        };
        Vector {
            mode,
            coords: vec![0.0; len],
        }
    }

    /// Wraps raw coordinates produced internally; callers guarantee finiteness.
    pub(crate) fn from_raw(mode: Mode, coords: Vec<f64>) -> Self {
        debug_assert!(coords.iter().all(|c| c.is_finite()));
        Vector { mode, coords }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Complex dimension in complex mode, real dimension otherwise.
    pub fn dim(&self) -> usize {
        match self.mode {
            Mode::Complex => self.coords.len() / 2,
            Mode::Real => self.coords.len(),
        }
    }

    pub fn real_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    /// The `k`-th complex coordinate as `(re, im)`.
    pub fn complex_coord(&self, k: usize) -> (f64, f64) {
        (self.coords[2 * k], self.coords[2 * k + 1])
    }

    pub fn norm(&self) -> f64 {
        norm(&self.coords)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0.0)
    }

    pub fn scaled(&self, t: f64) -> Vector {
        Vector {
            mode: self.mode,
            coords: self.coords.iter().map(|c| c * t).collect(),
        }
    }

    /// Multiplies every complex coordinate by `e^{i theta}`.
    pub fn rotated(&self, theta: f64) -> Vector {
        Vector {
            mode: self.mode,
            coords: rotate(&self.coords, theta),
        }
    }

    /// Parses the command-line syntax: semicolon-separated coordinates, each
    /// `re,im` in complex mode; real coordinates may use either separator.
    pub fn parse(text: &str, mode: Mode) -> Result<Self> {
        let mut coords = Vec::new();
        for item in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let parts: Vec<&str> = item.split(',').map(str::trim).collect();
            match (mode, parts.as_slice()) {
                (Mode::Complex, [re, im]) => {
                    coords.push(parse_f64(re)?);
                    coords.push(parse_f64(im)?);
                }
                (Mode::Complex, [re]) => {
                    coords.push(parse_f64(re)?);
                    coords.push(0.0);
                }
                (Mode::Real, xs) if !xs.is_empty() => {
                    for x in xs {
                        coords.push(parse_f64(x)?);
                    }
                }
                _ => {
                    return Err(Error::Input(format!(
                        "cannot parse coordinate {item:?} in {mode:?} mode"
                    )))
                }
            }
        }
        Self::new(mode, coords)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mode {
            Mode::Complex => {
                let items: Vec<String> = self
                    .coords
                    .chunks(2)
                    .map(|c| format!("{},{}", c[0], c[1]))
                    .collect();
                write!(f, "{}", items.join(";"))
            }
            Mode::Real => {
                let items: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
                write!(f, "{}", items.join(";"))
            }
        }
    }
}

fn parse_f64(s: &str) -> Result<f64> {
    s.parse::<f64>()
        .map_err(|e| Error::Input(format!("bad number {s:?}: {e}")))
}

pub(crate) fn norm(x: &[f64]) -> f64 {
    x.iter().map(|c| c * c).sum::<f64>().sqrt()
}

pub(crate) fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub(crate) fn rotate(x: &[f64], theta: f64) -> Vec<f64> {
    let (s, c) = theta.sin_cos();
    x.chunks(2)
        .flat_map(|p| [c * p[0] - s * p[1], s * p[0] + c * p[1]])
        .collect()
}

/// Uniform point on the Euclidean unit sphere of `R^len`.
pub(crate) fn random_unit<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..len).map(|_| rng.sample(StandardNormal)).collect();
        let r = norm(&v);
        if r > 1e-12 {
            return v.into_iter().map(|c| c / r).collect();
        }
    }
}

pub(crate) fn random_gaussian<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.sample(StandardNormal)).collect()
}

/// `e^{2 pi i k / 3}` as `(re, im)`.
pub fn cube_root_of_unity(k: usize) -> (f64, f64) {
    match k % 3 {
        0 => (1.0, 0.0),
        1 => (-0.5, 3f64.sqrt() / 2.0),
        _ => (-0.5, -(3f64.sqrt() / 2.0)),
    }
}
