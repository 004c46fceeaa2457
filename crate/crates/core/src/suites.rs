//! Seeded randomized verification suites for the inequalities.
//!
//! Every trial draws from its own ChaCha stream (`seed`, stream = trial
//! index), so results do not depend on evaluation order or thread count.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blaschke::{verify_product_inequality, BlaschkeProduct};
use crate::constants::{verify_sharp_inequality, ConstantsReport};
use crate::equilibrium::EquilibriumResult;
use crate::error::Result;
use crate::geometry::ComplexPoint;
use crate::potentials::{gap_given_inf, inf_over_set, Atom, DiscreteMeasure};
use crate::sets::CompactSet;

/// Random atoms are drawn uniformly (by area) from `|z| ≤ SAMPLE_RADIUS`.
pub const SAMPLE_RADIUS: f64 = 0.95;
pub const MAX_ATOMS: usize = 64;
/// Degree of the random products split into factors.
pub const PRODUCT_DEGREE: usize = 20;

pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Uniform point of `|z| ≤ radius`.
pub fn random_disk_point<R: Rng>(rng: &mut R, radius: f64) -> ComplexPoint {
    let rho = radius * rng.random::<f64>().sqrt();
    ComplexPoint::from_polar(rho, std::f64::consts::TAU * rng.random::<f64>())
}

/// Flat-Dirichlet weights summing to one.
pub fn dirichlet_weights<R: Rng>(rng: &mut R, k: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..k).map(|_| Exp1.sample(rng)).collect::<Vec<f64>>();
    let total: f64 = raw.iter().sum();
    raw.iter().map(|w| w / total).collect()
}

/// Random split of `items` into between 1 and `items.len()` nonempty groups.
fn random_groups<R: Rng, T: Clone>(rng: &mut R, items: &[T]) -> Vec<Vec<T>> {
    let m = rng.random_range(1..=items.len());
    let mut groups: Vec<Vec<T>> = vec![Vec::new(); m];
    for it in items {
        groups[rng.random_range(0..m)].push(it.clone());
    }
    groups.retain(|g| !g.is_empty());
    groups
}

/// Family `ν_1, …, ν_m` whose sum is a unit measure with 1 to 64 atoms.
pub fn random_measure_family<R: Rng>(rng: &mut R) -> Vec<DiscreteMeasure> {
    let atoms = rng.random_range(1..=MAX_ATOMS);
    let masses = dirichlet_weights(rng, atoms);
    let list: Vec<Atom> = masses
        .into_iter()
        .map(|mass| Atom {
            point: random_disk_point(rng, SAMPLE_RADIUS),
            mass,
        })
        .collect();
    random_groups(rng, &list)
        .into_iter()
        .map(|g| DiscreteMeasure::new(g).expect("sampled atoms are valid"))
        .collect()
}

/// A single unit measure with 1 to 64 atoms.
pub fn random_unit_measure<R: Rng>(rng: &mut R) -> DiscreteMeasure {
    let atoms = rng.random_range(1..=MAX_ATOMS);
    let masses = dirichlet_weights(rng, atoms);
    let list = masses
        .into_iter()
        .map(|mass| Atom {
            point: random_disk_point(rng, SAMPLE_RADIUS),
            mass,
        })
        .collect();
    DiscreteMeasure::new(list).expect("sampled atoms are valid")
}

/// A degree-`degree` zero set split into random factors.
pub fn random_factorization<R: Rng>(rng: &mut R, degree: usize) -> Vec<BlaschkeProduct> {
    let zeros: Vec<ComplexPoint> = (0..degree)
        .map(|_| random_disk_point(rng, SAMPLE_RADIUS))
        .collect();
    random_groups(rng, &zeros)
        .into_iter()
        .map(|g| BlaschkeProduct::from_zeros(g).expect("sampled zeros are valid"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub trial: usize,
    /// Number of measures or factors in the trial.
    pub parts: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub trials: usize,
    pub tol: f64,
    pub violations: usize,
    pub min_slack: f64,
    pub rows: Vec<TrialRow>,
}

impl SuiteSummary {
    fn from_rows(rows: Vec<TrialRow>, tol: f64) -> Self {
        let violations = rows.iter().filter(|r| r.slack < -tol).count();
        let min_slack = rows.iter().map(|r| r.slack).fold(f64::INFINITY, f64::min);
        Self {
            trials: rows.len(),
            tol,
            violations,
            min_slack,
            rows,
        }
    }
}

/// Random families checked against the sharp infimum inequality.
pub fn sharp_inequality_suite(
    set: &CompactSet,
    report: &ConstantsReport,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<SuiteSummary> {
    let rows = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let family = random_measure_family(&mut rng);
            let chk = verify_sharp_inequality(&family, set, report)?;
            Ok(TrialRow {
                trial: t,
                parts: family.len(),
                lhs: chk.lhs,
                rhs: chk.rhs,
                slack: chk.slack,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteSummary::from_rows(rows, tol))
}

/// Random factorizations checked against the Blaschke product inequality.
pub fn blaschke_suite(
    set: &CompactSet,
    report: &ConstantsReport,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<SuiteSummary> {
    let rows = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let factors = random_factorization(&mut rng, PRODUCT_DEGREE);
            let chk = verify_product_inequality(&factors, set, report)?;
            Ok(TrialRow {
                trial: t,
                parts: factors.len(),
                lhs: chk.lhs,
                rhs: chk.rhs,
                slack: chk.slack,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteSummary::from_rows(rows, tol))
}

/// Bernstein–Walsh gaps for `measures` random unit measures, each at
/// `points` random points of `|z| ≤ 0.95`; one row per measure holding the
/// smallest gap as its slack.
pub fn bernstein_walsh_suite(
    set: &CompactSet,
    eq: &EquilibriumResult,
    measures: usize,
    points: usize,
    seed: u64,
    tol: f64,
) -> Result<SuiteSummary> {
    let rows = (0..measures)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let mu = random_unit_measure(&mut rng);
            let inf_e = inf_over_set(&mu, set).0;
            let worst = (0..points)
                .map(|_| {
                    let z = random_disk_point(&mut rng, SAMPLE_RADIUS);
                    gap_given_inf(mu.potential_raw(z), inf_e, z, eq)
                })
                .fold(f64::INFINITY, f64::min);
            TrialRow {
                trial: t,
                parts: mu.atoms().len(),
                lhs: inf_e,
                rhs: eq.robin,
                slack: worst,
            }
        })
        .collect();
    Ok(SuiteSummary::from_rows(rows, tol))
}
