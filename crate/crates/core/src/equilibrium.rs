//! Green–Fekete points by projected coordinate descent, the Robin constant
//! and discrete approximations of the Green equilibrium measure.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{green_gradient_raw, green_raw, ComplexPoint};
use crate::potentials::{inf_over_set, DiscreteMeasure};
use crate::sets::{CompactSet, SetShape};

pub const MIN_RESTARTS: usize = 8;
pub const MAX_SWEEPS: usize = 5000;
/// A sweep decreasing the energy by less than this ends a descent.
pub const ENERGY_STOP: f64 = 1e-12;
/// Restart energies further apart than this flag nonconvergence.
pub const RESTART_AGREEMENT: f64 = 1e-6;
/// Allowed decrease of normalized energies along a sweep.
pub const MONOTONE_TOL: f64 = 1e-9;
/// Largest subset count enumerated exhaustively for point clouds.
const EXHAUSTIVE_LIMIT: u128 = 200_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeketeResult {
    pub n: usize,
    pub points: Vec<ComplexPoint>,
    /// `Σ_{j<k} g(ξ_j, ξ_k)`.
    pub energy: f64,
    /// `2 · energy / (n (n - 1))`.
    pub normalized_energy: f64,
    /// `inf_{z∈E} (1/n) Σ g(z, ξ_k)`.
    pub min_potential: f64,
    pub restarts_used: usize,
    pub restart_energies: Vec<f64>,
    /// Set when the two best restarts disagree by more than [`RESTART_AGREEMENT`].
    pub nonconverged: bool,
}

impl FeketeResult {
    pub fn counting_measure(&self) -> DiscreteMeasure {
        DiscreteMeasure::normalized_counting(&self.points).expect("Fekete points lie in the disk")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeketeSweep {
    pub results: Vec<FeketeResult>,
    /// Consecutive `(n_prev, n)` pairs whose normalized energy decreased by
    /// more than [`MONOTONE_TOL`].
    pub monotonicity_violations: Vec<(usize, usize)>,
}

impl FeketeSweep {
    pub fn healthy(&self) -> bool {
        self.monotonicity_violations.is_empty() && self.results.iter().all(|r| !r.nonconverged)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EquilibriumSource {
    /// Uniform measure on the circle `|z| = radius`.
    ClosedForm { radius: f64 },
    /// Normalized counting measure of `n` Fekete points.
    FeketeLimit { n: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumResult {
    pub measure: DiscreteMeasure,
    /// Robin constant `V_E` (estimate for Fekete-based results).
    pub robin: f64,
    pub source: EquilibriumSource,
    /// Normalized Fekete energy at the same `n`, when Fekete-based.
    pub normalized_energy: Option<f64>,
}

impl EquilibriumResult {
    /// Equilibrium potential at `z`: exact for closed-form results, the
    /// discrete potential of the Fekete measure otherwise.
    pub fn potential(&self, z: ComplexPoint) -> f64 {
        match self.source {
            EquilibriumSource::ClosedForm { radius } => -(z.norm().max(radius)).ln(),
            EquilibriumSource::FeketeLimit { .. } => self.measure.potential_raw(z),
        }
    }
}

fn pair_energy(points: &[ComplexPoint]) -> f64 {
    let mut e = 0.0;
    for j in 0..points.len() {
        for k in j + 1..points.len() {
            e += green_raw(points[j], points[k]);
        }
    }
    e
}

fn point_energy(points: &[ComplexPoint], j: usize, z: ComplexPoint) -> f64 {
    points
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != j)
        .map(|(_, &p)| green_raw(z, p))
        .sum()
}

fn point_gradient(points: &[ComplexPoint], j: usize) -> ComplexPoint {
    points
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != j)
        .map(|(_, &p)| green_gradient_raw(points[j], p))
        .sum()
}

/// One projected coordinate-descent run from the given start.
fn descend(set: &CompactSet, mut points: Vec<ComplexPoint>) -> (Vec<ComplexPoint>, f64) {
    let n = points.len();
    let spacing = (set.boundary_length() / n as f64).max(1e-6);
    let mut steps = vec![f64::NAN; n];
    for _ in 0..MAX_SWEEPS {
        let mut decrease = 0.0;
        for j in 0..n {
            let grad = point_gradient(&points, j);
            let gnorm = grad.norm();
            if !(gnorm.is_finite() && gnorm > 0.0) {
                continue;
            }
            if steps[j].is_nan() {
                steps[j] = 0.25 * spacing / gnorm;
            }
            let current = point_energy(&points, j, points[j]);
            let mut accepted = false;
            for _ in 0..40 {
                let cand = set.project(points[j] - grad * steps[j]);
                let e = point_energy(&points, j, cand);
                if e < current {
                    decrease += current - e;
                    points[j] = cand;
                    steps[j] *= 1.5;
                    accepted = true;
                    break;
                }
                steps[j] *= 0.5;
                if steps[j] * gnorm < 1e-15 {
                    break;
                }
            }
            if !accepted {
                // next sweep starts from a fresh step estimate
                steps[j] = f64::NAN;
            }
        }
        if decrease < ENERGY_STOP {
            break;
        }
    }
    let e = pair_energy(&points);
    (points, e)
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > EXHAUSTIVE_LIMIT {
            return acc;
        }
    }
    acc
}

/// Fekete subset of a finite cloud: exhaustive when small, otherwise greedy
/// insertion followed by single-swap improvement.
fn cloud_fekete(atoms: &[ComplexPoint], n: usize) -> Vec<ComplexPoint> {
    let m = atoms.len();
    if binomial(m, n) <= EXHAUSTIVE_LIMIT {
        let mut idx: Vec<usize> = (0..n).collect();
        let mut best_idx = idx.clone();
        let mut best = f64::INFINITY;
        loop {
            let pts: Vec<_> = idx.iter().map(|&i| atoms[i]).collect();
            let e = pair_energy(&pts);
            if e < best {
                best = e;
                best_idx = idx.clone();
            }
            // next combination in lexicographic order
            let mut i = n;
            loop {
                if i == 0 {
                    return best_idx.iter().map(|&i| atoms[i]).collect();
                }
                i -= 1;
                if idx[i] < m - n + i {
                    idx[i] += 1;
                    for k in i + 1..n {
                        idx[k] = idx[k - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; m];
    let (mut a0, mut b0, mut best) = (0, 1, f64::INFINITY);
    for i in 0..m {
        for j in i + 1..m {
            let g = green_raw(atoms[i], atoms[j]);
            if g < best {
                (a0, b0, best) = (i, j, g);
            }
        }
    }
    for i in [a0, b0] {
        chosen.push(i);
        used[i] = true;
    }
    while chosen.len() < n {
        let (mut pick, mut cost) = (usize::MAX, f64::INFINITY);
        for i in (0..m).filter(|&i| !used[i]) {
            let c: f64 = chosen.iter().map(|&k| green_raw(atoms[i], atoms[k])).sum();
            if c < cost {
                (pick, cost) = (i, c);
            }
        }
        chosen.push(pick);
        used[pick] = true;
    }
    let energy_of = |c: &[usize]| pair_energy(&c.iter().map(|&i| atoms[i]).collect::<Vec<_>>());
    let mut current = energy_of(&chosen);
    loop {
        let mut improved = false;
        for slot in 0..n {
            for cand in 0..m {
                if used[cand] {
                    continue;
                }
                let old = chosen[slot];
                chosen[slot] = cand;
                let e = energy_of(&chosen);
                if e < current - 1e-15 {
                    used[old] = false;
                    used[cand] = true;
                    current = e;
                    improved = true;
                } else {
                    chosen[slot] = old;
                }
            }
        }
        if !improved {
            break;
        }
    }
    chosen.iter().map(|&i| atoms[i]).collect()
}

/// `inf_{z∈E} (1/n) Σ g(z, ξ_k)`, with at least eight boundary samples per point.
pub fn min_potential(set: &CompactSet, points: &[ComplexPoint]) -> Result<f64> {
    let tau = DiscreteMeasure::normalized_counting(points)?;
    let fine = if set.is_regular() && set.boundary_resolution() < 8 * points.len() {
        set.with_resolution(8 * points.len())?
    } else {
        set.clone()
    };
    Ok(inf_over_set(&tau, &fine).0)
}

/// Discrete Green energy minimizer of `n` points in `E`.
///
/// Each restart `k` starts from `n` boundary points at parameters
/// `j/n + k/(restarts·n)` and runs projected coordinate descent with the
/// analytic gradient of the Green function; the best restart is returned.
pub fn fekete_solve(set: &CompactSet, n: usize, restarts: usize) -> Result<FeketeResult> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "Fekete problem needs n >= 2, got {n}"
        )));
    }
    if set.is_singleton() {
        return Err(Error::SingletonSet);
    }
    let (points, restart_energies) = match set.shape() {
        SetShape::PointCloud(atoms) => {
            if atoms.len() < n {
                return Err(Error::InvalidArgument(format!(
                    "point cloud has {} points, fewer than n = {n}",
                    atoms.len()
                )));
            }
            let pts = cloud_fekete(atoms, n);
            let e = pair_energy(&pts);
            (pts, vec![e])
        }
        _ => {
            if restarts < MIN_RESTARTS {
                return Err(Error::InvalidArgument(format!(
                    "at least {MIN_RESTARTS} restarts required, got {restarts}"
                )));
            }
            let runs: Vec<(Vec<ComplexPoint>, f64)> = (0..restarts)
                .into_par_iter()
                .map(|k| {
                    let offset = k as f64 / (restarts * n) as f64;
                    let start = (0..n)
                        .map(|j| set.boundary_point(j as f64 / n as f64 + offset))
                        .collect();
                    descend(set, start)
                })
                .collect();
            let energies: Vec<f64> = runs.iter().map(|r| r.1).collect();
            let best = (0..runs.len())
                .min_by(|&a, &b| energies[a].total_cmp(&energies[b]))
                .unwrap();
            (runs[best].0.clone(), energies)
        }
    };
    let energy = pair_energy(&points);
    let mut sorted = restart_energies.clone();
    sorted.sort_by(f64::total_cmp);
    let nonconverged = sorted.len() >= 2 && (sorted[1] - sorted[0]).abs() > RESTART_AGREEMENT;
    Ok(FeketeResult {
        n,
        normalized_energy: 2.0 * energy / (n * (n - 1)) as f64,
        min_potential: min_potential(set, &points)?,
        energy,
        restarts_used: restart_energies.len(),
        restart_energies,
        nonconverged,
        points,
    })
}

/// Fekete solutions along an increasing list of sizes, audited for
/// monotone normalized energies.
pub fn fekete_sweep(set: &CompactSet, n_list: &[usize], restarts: usize) -> Result<FeketeSweep> {
    if n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(
            "n_list must be strictly increasing".into(),
        ));
    }
    let results = n_list
        .iter()
        .map(|&n| fekete_solve(set, n, restarts))
        .collect::<Result<Vec<_>>>()?;
    let monotonicity_violations = results
        .windows(2)
        .filter(|w| w[1].normalized_energy < w[0].normalized_energy - MONOTONE_TOL)
        .map(|w| (w[0].n, w[1].n))
        .collect();
    Ok(FeketeSweep {
        results,
        monotonicity_violations,
    })
}

/// Equilibrium measure of `|z| ≤ r`: uniform on `resolution` points of the
/// circle, Robin constant `-log r`.
pub fn equilibrium_disk(r: f64, resolution: usize) -> Result<EquilibriumResult> {
    let set = CompactSet::concentric_disk(r, resolution)?;
    let sample = set.boundary_sample();
    Ok(EquilibriumResult {
        measure: DiscreteMeasure::normalized_counting(&sample.points)?,
        robin: -r.ln(),
        source: EquilibriumSource::ClosedForm { radius: r },
        normalized_energy: None,
    })
}

/// Equilibrium measure approximated by `n` Fekete points; the Robin constant
/// is taken from the minimum of their potential over `E`.
pub fn equilibrium_general(
    set: &CompactSet,
    n: usize,
    restarts: usize,
) -> Result<EquilibriumResult> {
    if !set.is_regular() {
        return Err(Error::IrregularSet);
    }
    if n < 16 {
        return Err(Error::InvalidArgument(format!(
            "equilibrium approximation needs n >= 16, got {n}"
        )));
    }
    let fekete = fekete_solve(set, n, restarts)?;
    Ok(EquilibriumResult {
        measure: fekete.counting_measure(),
        robin: fekete.min_potential,
        source: EquilibriumSource::FeketeLimit { n },
        normalized_energy: Some(fekete.normalized_energy),
    })
}

/// Closed form for concentric disks, Fekete approximation with `n` points otherwise.
pub fn equilibrium(set: &CompactSet, n: usize, restarts: usize) -> Result<EquilibriumResult> {
    match set.disk_radius() {
        Some(r) => equilibrium_disk(r, set.boundary_resolution()),
        None => equilibrium_general(set, n, restarts),
    }
}

/// Moment discrepancy between two unit measures: the largest of
/// `|∫ z^k dτ - ∫ z^k dμ|` for `0 ≤ k ≤ K` and `|∫ |z|^{2k} dτ - ∫ |z|^{2k} dμ|`
/// for `1 ≤ k ≤ K`.
pub fn weak_star_distance(
    tau: &DiscreteMeasure,
    eq: &EquilibriumResult,
    max_order: usize,
) -> Result<f64> {
    tau.require_unit()?;
    eq.measure.require_unit()?;
    let mu = &eq.measure;
    let mut worst: f64 = 0.0;
    for k in 0..=max_order as i32 {
        let mt: ComplexPoint = tau.atoms().iter().map(|a| a.point.powi(k) * a.mass).sum();
        let mm: ComplexPoint = mu.atoms().iter().map(|a| a.point.powi(k) * a.mass).sum();
        worst = worst.max((mt - mm).norm());
        if k > 0 {
            let at = tau.integrate(|z| z.norm_sqr().powi(k));
            let am = mu.integrate(|z| z.norm_sqr().powi(k));
            worst = worst.max((at - am).abs());
        }
    }
    Ok(worst)
}
