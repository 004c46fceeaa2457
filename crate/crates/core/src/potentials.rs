//! Discrete measures, their Green potentials, extremization over compact
//! sets and the farthest-point distance function.

use serde::{Deserialize, Serialize};

use crate::equilibrium::EquilibriumResult;
use crate::error::{Error, Result};
use crate::geometry::{check_disk, green_raw, ComplexPoint, GreenValue};
use crate::sets::{CompactSet, MAX_MODULUS};

/// Tolerance on the total mass of measures required to be probability measures.
pub const UNIT_MASS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub point: ComplexPoint,
    pub mass: f64,
}

/// Finite positive combination of point masses in the disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteMeasure {
    atoms: Vec<Atom>,
    total_mass: f64,
}

impl DiscreteMeasure {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        for a in &atoms {
            crate::geometry::check_finite(a.point)?;
            if a.point.norm() > MAX_MODULUS {
                return Err(Error::InvalidMeasure(format!(
                    "atom {} has modulus above 1 - 1e-9",
                    a.point
                )));
            }
            if !(a.mass.is_finite() && a.mass > 0.0) {
                return Err(Error::InvalidMeasure(format!("atom mass {}", a.mass)));
            }
        }
        let total_mass = atoms.iter().map(|a| a.mass).sum();
        Ok(Self { atoms, total_mass })
    }

    pub fn point_mass(point: ComplexPoint, mass: f64) -> Result<Self> {
        Self::new(vec![Atom { point, mass }])
    }

    /// `(1/n) Σ δ_{p}` over the given points.
    pub fn normalized_counting(points: &[ComplexPoint]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidMeasure("no points".into()));
        }
        let m = 1.0 / points.len() as f64;
        Self::new(
            points
                .iter()
                .map(|&point| Atom { point, mass: m })
                .collect(),
        )
    }

    /// Counting measure with explicit weights (e.g. `(1/n) δ_{ξ}` pieces).
    pub fn weighted(points: &[ComplexPoint], masses: &[f64]) -> Result<Self> {
        if points.len() != masses.len() {
            return Err(Error::InvalidMeasure(
                "points and masses differ in length".into(),
            ));
        }
        Self::new(
            points
                .iter()
                .zip(masses)
                .map(|(&point, &mass)| Atom { point, mass })
                .collect(),
        )
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    pub fn is_unit(&self) -> bool {
        (self.total_mass - 1.0).abs() <= UNIT_MASS_TOL
    }

    pub fn require_unit(&self) -> Result<()> {
        if self.is_unit() {
            Ok(())
        } else {
            Err(Error::MassNotUnit {
                found: self.total_mass,
            })
        }
    }

    /// Sum of the masses times `f(point)`.
    pub fn integrate<F: Fn(ComplexPoint) -> f64>(&self, f: F) -> f64 {
        self.atoms.iter().map(|a| a.mass * f(a.point)).sum()
    }

    /// Green potential without argument checks; `+∞` at an atom.
    pub(crate) fn potential_raw(&self, z: ComplexPoint) -> f64 {
        self.atoms
            .iter()
            .map(|a| a.mass * green_raw(z, a.point))
            .sum()
    }

    /// Sum of two measures (atoms concatenated).
    pub fn merged(&self, other: &DiscreteMeasure) -> DiscreteMeasure {
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&other.atoms);
        DiscreteMeasure {
            total_mass: self.total_mass + other.total_mass,
            atoms,
        }
    }
}

/// `U^μ(z) = Σ mass · g(z, atom)`.
pub fn green_potential(mu: &DiscreteMeasure, z: ComplexPoint) -> Result<GreenValue> {
    check_disk(z)?;
    let u = mu.potential_raw(z);
    Ok(if u.is_finite() {
        GreenValue::Finite(u)
    } else {
        GreenValue::Infinite
    })
}

/// Infimum of `U^μ` over `E` and a point attaining it. Only the boundary is
/// searched: the potential is superharmonic, so its minimum over a set with
/// interior sits on the boundary.
pub fn inf_over_set(mu: &DiscreteMeasure, set: &CompactSet) -> (f64, ComplexPoint) {
    set.boundary_argmin(|z| mu.potential_raw(z))
}

/// `inf_{ζ∈E} g(z, ζ) = -log d_E(z)`.
pub fn neg_log_farthest(set: &CompactSet, z: ComplexPoint) -> Result<f64> {
    check_disk(z)?;
    Ok(neg_log_farthest_raw(set, z))
}

pub(crate) fn neg_log_farthest_raw(set: &CompactSet, z: ComplexPoint) -> f64 {
    set.boundary_argmin(|zeta| green_raw(z, zeta)).0
}

/// Pseudohyperbolic farthest-point distance `d_E(z) = sup_{ζ∈E} δ(z, ζ)`.
pub fn farthest_point_distance(set: &CompactSet, z: ComplexPoint) -> Result<f64> {
    Ok((-neg_log_farthest(set, z)?).exp())
}

/// `[U^μ(z) - inf_E U^μ] - [U^{μ_E}(z) - V_E]`, nonnegative for unit `μ`.
pub fn bernstein_walsh_gap(
    mu: &DiscreteMeasure,
    set: &CompactSet,
    z: ComplexPoint,
    eq: &EquilibriumResult,
) -> Result<f64> {
    mu.require_unit()?;
    check_disk(z)?;
    let u = mu.potential_raw(z);
    if u.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let (inf_e, _) = inf_over_set(mu, set);
    Ok(gap_given_inf(u, inf_e, z, eq))
}

/// Gap with `U^μ(z)` and `inf_E U^μ` already known.
pub(crate) fn gap_given_inf(
    u_at_z: f64,
    inf_e: f64,
    z: ComplexPoint,
    eq: &EquilibriumResult,
) -> f64 {
    if u_at_z.is_infinite() {
        return f64::INFINITY;
    }
    (u_at_z - inf_e) - (eq.potential(z) - eq.robin)
}
