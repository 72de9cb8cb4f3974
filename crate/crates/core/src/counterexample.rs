//! Geometry of `D_n` on the complex line `L_n = {z_1 = 1}` and the two
//! results it supports.
//!
//! `∂D_n ∩ L_n` is the finite set `F_n = {1} × Ω^{n-1}` (`Ω` the cube roots
//! of unity) and the face of the convex hull on `L_n` is
//! `F̂_n = {1} × Δ^{n-1}`, `Δ` the triangle spanned by `Ω`. The hull gauge is
//! 1 on `F̂_n`. An optimal decomposition of `Y ∈ F̂_n` with value 1 has its
//! normalized atoms in `F_n` and `Y` in their convex hull, so if `Y` lies in
//! no hull of at most `2n - 2` points of `F_n`, then
//! `h^(2n-2)(Y) > 1 = h_hull(Y)`. [`witness_check`] decides that condition
//! with small LPs and [`certify_gap`] bounds the gap numerically at `n = 2`.

use serde::{Deserialize, Serialize};

use crate::convexify::{self, BoundMode};
use crate::decompose::{self, Certificate};
use crate::error::{Error, Result};
use crate::gauges::{estimate_lipschitz, GaugeSpec, LipschitzEstimate};
use crate::lp::{self, LPProblem};
use crate::rng;
use crate::vector::{cube_root_of_unity, Mode, Vector};

const LINE_TOL: f64 = 1e-12;

/// The `3^{n-1}` points `(1, ω^{k_2}, ..., ω^{k_n})`.
pub fn f_atoms(n: usize) -> Result<Vec<Vector>> {
    if n < 2 {
        return Err(Error::Input(format!("f_atoms requires n >= 2, got {n}")));
    }
    let count = 3usize.pow((n - 1) as u32);
    Ok((0..count)
        .map(|mut code| {
            let mut coords = vec![1.0, 0.0];
            for _ in 1..n {
                let (re, im) = cube_root_of_unity(code % 3);
                coords.push(re);
                coords.push(im);
                code /= 3;
            }
            Vector::from_raw(Mode::Complex, coords)
        })
        .collect())
}

fn in_triangle(re: f64, im: f64) -> bool {
    let v: Vec<(f64, f64)> = (0..3).map(cube_root_of_unity).collect();
    // Vertices are counter-clockwise; stay left of every edge.
    (0..3).all(|k| {
        let (a, b) = (v[k], v[(k + 1) % 3]);
        (b.0 - a.0) * (im - a.1) - (b.1 - a.1) * (re - a.0) >= -LINE_TOL
    })
}

/// Whether `y ∈ {1} × Δ^{n-1}`.
pub fn hat_f_member(n: usize, y: &Vector) -> Result<bool> {
    if y.mode() != Mode::Complex || y.dim() != n {
        return Err(Error::Input(format!("expected a vector of C^{n}")));
    }
    let (re, im) = y.complex_coord(0);
    if (re - 1.0).abs() > LINE_TOL || im.abs() > LINE_TOL {
        return Ok(false);
    }
    Ok((1..n).all(|k| {
        let (re, im) = y.complex_coord(k);
        in_triangle(re, im)
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub witness: bool,
    pub subsets_checked: usize,
    /// Indices into [`f_atoms`] of a subset whose hull contains `y`.
    pub containing_subset: Option<Vec<usize>>,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// True iff `y` lies in the real convex hull of no subset of at most
/// `2n - 2` points of `F_n`. Each subset is one LP feasibility problem
/// (nonnegative weights summing to 1).
pub fn witness_check(n: usize, y: &Vector) -> Result<WitnessCheck> {
    if !hat_f_member(n, y)? {
        return Err(Error::Precondition(format!("{y} is not in the hull face F̂_{n}")));
    }
    let atoms = f_atoms(n)?;
    let mut checked = 0;
    for size in 1..=(2 * n - 2) {
        for subset in combinations(atoms.len(), size) {
            checked += 1;
            let mut rows: Vec<Vec<f64>> = (0..2 * n)
                .map(|i| subset.iter().map(|&a| atoms[a].coords()[i]).collect())
                .collect();
            rows.push(vec![1.0; size]);
            let mut rhs = y.coords().to_vec();
            rhs.push(1.0);
            let problem = LPProblem::new(vec![0.0; size], rows, rhs)?;
            if lp::is_feasible(&problem) {
                return Ok(WitnessCheck {
                    witness: false,
                    subsets_checked: checked,
                    containing_subset: Some(subset),
                });
            }
        }
    }
    Ok(WitnessCheck {
        witness: true,
        subsets_checked: checked,
        containing_subset: None,
    })
}

/// The fixed witness for `n = 2`: the centroid `(1, 0)` of `{1} × Δ`.
pub fn centroid(n: usize) -> Vector {
    let mut coords = vec![0.0; 2 * n];
    coords[0] = 1.0;
    Vector::from_raw(Mode::Complex, coords)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifyOptions {
    pub grid_step: f64,
    /// Finest cell side for the polar bound behind the hull lower bound.
    pub polar_step: f64,
    pub lipschitz_samples: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            grid_step: 0.01,
            polar_step: 2.5e-4,
            lipschitz_samples: 50_000,
            restarts: 32,
            seed: rng::DEFAULT_SEED,
        }
    }
}

/// Tolerances the certified report is checked against.
pub const HULL_UPPER_TOL: f64 = 1e-9;
pub const HULL_LOWER_TOL: f64 = 1e-3;
pub const UPPER_2N_MINUS_1_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub n: usize,
    pub y: Vector,
    pub in_hat_f: bool,
    pub excluded_subsets: usize,
    pub mode: BoundMode,
    pub hull_upper: f64,
    pub hull_lower: Option<f64>,
    pub gap_certificate: Option<Certificate>,
    /// `bound - 1` of the gap certificate.
    pub delta: Option<f64>,
    /// Best `h^(2n-2)` upper bound found by search.
    pub upper_2n_minus_2: f64,
    pub upper_2n_minus_1: f64,
    pub lipschitz: LipschitzEstimate,
    pub passed: bool,
}

/// Certifies `h^(2)(y) > 1 = h_hull(y)` for `D_2` at a witness `y`.
pub fn certify_gap(n: usize, y: &Vector, opts: &CertifyOptions) -> Result<WitnessReport> {
    if n != 2 {
        return Err(Error::Precondition(
            "certified gap needs n = 2 (4 real dimensions per free atom)".into(),
        ));
    }
    let check = witness_check(n, y)?;
    if !check.witness {
        return Err(Error::Precondition(format!("{y} is not a witness")));
    }
    let g = GaugeSpec::dn(n)?;
    let lipschitz = estimate_lipschitz(&g, opts.lipschitz_samples, opts.seed)?;

    let exact = convexify::build_dictionary(&g, 0, opts.seed)?;
    let hull = convexify::hull_gauge_lp(&exact, y)?;
    let directions = convexify::default_directions(y, Some(&hull.dual_direction), 0, opts.seed);
    let lower = convexify::hull_gauge_lower(&g, y, &directions, opts.polar_step, &lipschitz);

    let m = 2 * n - 2;
    let upper_gap = decompose::mth_gauge_upper(&g, m, y, opts.restarts, opts.seed)?;
    let upper_next = decompose::mth_gauge_upper(&g, m + 1, y, opts.restarts, opts.seed)?;

    let (mode, certificate) =
        match decompose::mth_gauge_lower_certified(&g, m, y, opts.grid_step, &lipschitz) {
            Ok(c) => (BoundMode::Certified, Some(c)),
            Err(Error::CertificationInfeasible(_)) => (BoundMode::Heuristic, None),
            Err(e) => return Err(e),
        };
    let hull_lower = match lower {
        Ok(l) => Some(l.value),
        Err(Error::CertificationInfeasible(_)) => None,
        Err(e) => return Err(e),
    };
    let delta = certificate.as_ref().map(|c| c.bound - 1.0);
    let gap_certificate = certificate.filter(|c| c.bound > 1.0);
    let passed = mode == BoundMode::Certified
        && gap_certificate.is_some()
        && hull.value <= 1.0 + HULL_UPPER_TOL
        && hull_lower.is_some_and(|l| l >= 1.0 - HULL_LOWER_TOL)
        && upper_next.value <= 1.0 + UPPER_2N_MINUS_1_TOL;
    Ok(WitnessReport {
        n,
        y: y.clone(),
        in_hat_f: true,
        excluded_subsets: check.subsets_checked,
        mode,
        hull_upper: hull.value,
        hull_lower,
        gap_certificate,
        delta,
        upper_2n_minus_2: upper_gap.value,
        upper_2n_minus_1: upper_next.value,
        lipschitz,
        passed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub restarts: usize,
    pub dictionary: usize,
    /// Polar grid step for the certified lower bound (`n <= 2`).
    pub polar_step: f64,
    pub lipschitz_samples: usize,
    pub polar_samples: usize,
    pub pricing_rounds: usize,
}

impl VerifyOptions {
    pub fn for_dimension(n: usize) -> Self {
        VerifyOptions {
            restarts: if n >= 3 { 12 } else { 16 },
            dictionary: if n >= 3 { 2048 } else { 512 },
            polar_step: 1e-3,
            lipschitz_samples: 20_000,
            polar_samples: 2000,
            pricing_rounds: 40,
        }
    }

    /// Allowed distance between `v_{2n-1}` and the hull bracket.
    pub fn tolerance(n: usize) -> f64 {
        if n >= 3 {
            1e-2
        } else {
            5e-3
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub x: Vector,
    /// `v_m` for `m = 1..=2n`.
    pub chain: Vec<f64>,
    pub hull_upper: f64,
    pub hull_lower: f64,
    /// Column generation found no improving atom.
    pub hull_converged: bool,
    pub pricing_rounds: usize,
    /// Distance from `v_{2n-1}` to `[hull_lower, hull_upper]`.
    pub distance: f64,
    pub equal_ok: bool,
    pub monotone_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub n: usize,
    pub gauge: GaugeSpec,
    pub mode: BoundMode,
    pub tolerance: f64,
    pub rows: Vec<VerifyRow>,
    pub passed: bool,
}

/// Compares `h^(2n-1)` with the hull gauge of `D_n` on random points.
///
/// For `n = 1` the domain is a disc (every balanced domain in `C` is one)
/// and the chain is constant.
pub fn verify_theorem(n: usize, samples: usize, seed: u64, opts: &VerifyOptions) -> Result<TheoremReport> {
    if n == 0 {
        return Err(Error::Input("n must be positive".into()));
    }
    let g = if n == 1 {
        GaugeSpec::pnorm(2.0, 1)?
    } else {
        GaugeSpec::dn(n)?
    };
    let d = g.real_dim();
    let certified = d <= 4;
    let mode = if certified {
        BoundMode::Certified
    } else {
        BoundMode::Heuristic
    };
    let lipschitz = estimate_lipschitz(&g, opts.lipschitz_samples, seed)?;
    let dict = convexify::build_dictionary(&g, opts.dictionary, rng::split_seed(seed, 1))?;
    let tolerance = VerifyOptions::tolerance(n);
    let mut rng = rng::stream(seed, 2);
    let mut rows = Vec::with_capacity(samples);
    for s in 0..samples {
        let x = Vector::from_raw(Mode::Complex, crate::vector::random_gaussian(&mut rng, d));
        let row_seed = rng::split_seed(seed, 100 + s as u64);
        let schedule = convexify::hull_gauge_schedule(&dict, &x)?;
        let base = dict.prefix(schedule.history.last().map_or(dict.count, |h| h.0));
        let first = convexify::hull_gauge_column_generation(
            &base,
            &x,
            opts.pricing_rounds,
            opts.polar_samples,
            row_seed,
        )?;
        let chain_entries = decompose::gauge_chain_seeded(
            &g,
            &x,
            2 * n,
            opts.restarts,
            row_seed,
            std::slice::from_ref(&first.lp.active),
        )?;
        let chain: Vec<f64> = chain_entries.iter().map(|e| e.value).collect();
        // Normalized atoms of any decomposition are boundary points, so they
        // may join the dictionary; the LP then never exceeds the chain.
        let mut augmented = base;
        let atoms = first.lp.active.atoms.iter().chain(chain_entries.iter().flat_map(|e| &e.best.atoms));
        for a in atoms {
            augmented.atoms.push(a.scaled(1.0 / g.eval(a)?));
        }
        let hull = convexify::hull_gauge_column_generation(
            &augmented,
            &x,
            opts.pricing_rounds,
            opts.polar_samples,
            rng::split_seed(row_seed, 1),
        )?;
        let directions = convexify::default_directions(&x, Some(&hull.lp.dual_direction), 2, row_seed);
        let lower = if certified {
            convexify::hull_gauge_lower(&g, &x, &directions, opts.polar_step, &lipschitz)?
        } else {
            convexify::hull_gauge_lower_heuristic(&g, &x, &directions, opts.polar_samples, row_seed)?
        };
        let v = chain[2 * n - 2];
        let distance = if v < lower.value {
            lower.value - v
        } else if v > hull.value {
            v - hull.value
        } else {
            0.0
        };
        let monotone_ok = n == 1 || v <= chain[2 * n - 3] + 1e-9;
        rows.push(VerifyRow {
            x,
            chain,
            hull_upper: hull.value,
            hull_lower: lower.value,
            hull_converged: hull.converged,
            pricing_rounds: hull.rounds,
            distance,
            equal_ok: distance <= tolerance,
            monotone_ok,
        });
    }
    let passed = rows.iter().all(|r| r.equal_ok && r.monotone_ok);
    Ok(TheoremReport {
        n,
        gauge: g,
        mode,
        tolerance,
        rows,
        passed,
    })
}

impl WitnessReport {
    pub fn table(&self) -> String {
        let opt = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.9}"));
        let mut out = format!("witness        {}  (n = {})\n", self.y, self.n);
        out.push_str(&format!("mode           {:?}\n", self.mode));
        out.push_str(&format!("subsets        {} excluded\n", self.excluded_subsets));
        out.push_str(&format!("hull upper     {:.12}\n", self.hull_upper));
        out.push_str(&format!("hull lower     {}\n", opt(self.hull_lower)));
        out.push_str(&format!(
            "h^({}) lower    {}\n",
            2 * self.n - 2,
            opt(self.gap_certificate.as_ref().map(|c| c.bound))
        ));
        out.push_str(&format!("delta          {}\n", opt(self.delta)));
        out.push_str(&format!("h^({}) upper    {:.9}\n", 2 * self.n - 2, self.upper_2n_minus_2));
        out.push_str(&format!("h^({}) upper    {:.9}\n", 2 * self.n - 1, self.upper_2n_minus_1));
        out.push_str(&format!("passed         {}\n", self.passed));
        out
    }
}

impl TheoremReport {
    /// Columns `row,v1,...,v2n,hull_lower,hull_upper,distance,ok`.
    pub fn csv(&self) -> String {
        let mut out = String::from("row");
        for k in 1..=2 * self.n {
            out.push_str(&format!(",v{k}"));
        }
        out.push_str(",hull_lower,hull_upper,distance,ok\n");
        for (i, r) in self.rows.iter().enumerate() {
            out.push_str(&i.to_string());
            for v in &r.chain {
                out.push_str(&format!(",{v:.12}"));
            }
            out.push_str(&format!(
                ",{:.12},{:.12},{:.3e},{}\n",
                r.hull_lower,
                r.hull_upper,
                r.distance,
                r.equal_ok && r.monotone_ok
            ));
        }
        out
    }

    pub fn table(&self) -> String {
        let mut out = format!(
            "n = {}  mode = {:?}  tolerance = {:e}\n",
            self.n, self.mode, self.tolerance
        );
        let m = 2 * self.n;
        let mut header = String::from("row");
        for k in 1..=m {
            header.push_str(&format!("  {:>10}", format!("v{k}")));
        }
        header.push_str("  hull_lower  hull_upper    distance  ok\n");
        out.push_str(&header);
        for (i, r) in self.rows.iter().enumerate() {
            let mut line = format!("{i:>3}");
            for v in &r.chain {
                line.push_str(&format!("  {v:>10.6}"));
            }
            line.push_str(&format!(
                "  {:>10.6}  {:>10.6}  {:>10.2e}  {}\n",
                r.hull_lower,
                r.hull_upper,
                r.distance,
                if r.equal_ok && r.monotone_ok { "yes" } else { "NO" }
            ));
            out.push_str(&line);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atom_counts_and_values() {
        assert!(f_atoms(1).is_err());
        let g2 = GaugeSpec::dn(2).unwrap();
        let a2 = f_atoms(2).unwrap();
        assert_eq!(a2.len(), 3);
        for a in &a2 {
            assert!((g2.eval(a).unwrap() - 1.0).abs() < 1e-12);
            assert_eq!(a.complex_coord(0), (1.0, 0.0));
        }
        let g3 = GaugeSpec::dn(3).unwrap();
        let a3 = f_atoms(3).unwrap();
        assert_eq!(a3.len(), 9);
        assert!(a3.iter().all(|a| (g3.eval(a).unwrap() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn hat_f_examples() {
        assert!(hat_f_member(2, &centroid(2)).unwrap());
        assert!(hat_f_member(2, &Vector::complex(&[(1.0, 0.0), (1.0, 0.0)]).unwrap()).unwrap());
        assert!(!hat_f_member(2, &Vector::complex(&[(1.0, 0.0), (1.2, 0.0)]).unwrap()).unwrap());
        assert!(!hat_f_member(2, &Vector::complex(&[(0.9, 0.0), (0.0, 0.0)]).unwrap()).unwrap());
    }

    #[test]
    fn witness_examples_n2() {
        let c = witness_check(2, &centroid(2)).unwrap();
        assert!(c.witness);
        assert_eq!(c.subsets_checked, 6);
        for a in f_atoms(2).unwrap() {
            assert!(!witness_check(2, &a).unwrap().witness);
        }
        let atoms = f_atoms(2).unwrap();
        for i in 0..3 {
            for j in i + 1..3 {
                let mid: Vec<f64> = atoms[i]
                    .coords()
                    .iter()
                    .zip(atoms[j].coords())
                    .map(|(a, b)| 0.5 * (a + b))
                    .collect();
                let mid = Vector::new(Mode::Complex, mid).unwrap();
                assert!(!witness_check(2, &mid).unwrap().witness);
            }
        }
    }

    #[test]
    fn non_member_is_a_precondition_error() {
        let y = Vector::complex(&[(1.0, 0.0), (1.2, 0.0)]).unwrap();
        assert!(matches!(witness_check(2, &y), Err(Error::Precondition(_))));
        let atom = Vector::complex(&[(1.0, 0.0), (1.0, 0.0)]).unwrap();
        assert!(matches!(
            certify_gap(2, &atom, &CertifyOptions::default()),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            certify_gap(3, &centroid(3), &CertifyOptions::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn verify_on_the_disc() {
        let r = verify_theorem(1, 2, 3, &VerifyOptions::for_dimension(1)).unwrap();
        assert!(r.passed);
        for row in &r.rows {
            assert!((row.chain[0] - row.chain[1]).abs() < 1e-9);
        }
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(9, 4).len(), 126);
        assert_eq!(combinations(3, 2).len(), 3);
    }
}
