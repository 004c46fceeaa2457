//! The sharp additive constant of the infimum inequality, computed along two
//! independent routes, and the inequality check itself.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::equilibrium::{
    equilibrium_disk, equilibrium_general, EquilibriumResult, EquilibriumSource,
};
use crate::error::{Error, Result};
use crate::geometry::ComplexPoint;
use crate::potentials::{inf_over_set, neg_log_farthest_raw, DiscreteMeasure, UNIT_MASS_TOL};
use crate::quadrature::CompositeRule;
use crate::riesz::{
    mass_radial_derivative, sigma_numeric, sigma_total_mass_disk, GridDensity, GridSpec,
};
use crate::sets::CompactSet;

/// Largest accepted disagreement between the two routes.
pub const ROUTE_AGREEMENT: f64 = 1e-3;
/// Base tolerance of the inequality suites.
pub const INEQUALITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsReport {
    /// Robin constant `V_E`.
    pub robin: f64,
    /// Total Riesz mass `σ_E(D)`.
    pub sigma_mass: f64,
    /// `∫ -log d_E dμ_E - V σ(D)`.
    pub c_route_a: f64,
    /// `∫ (U^{μ_E} - V) dσ`.
    pub c_route_b: f64,
    /// `log((1+r²)/(2r)) + ((1-r)/(1+r)) log r` for concentric disks.
    pub c_closed: Option<f64>,
    pub discrepancy: f64,
    /// Boundary quadrature budget of the set, added to inequality tolerances.
    pub quadrature_budget: f64,
}

impl ConstantsReport {
    /// The constant used downstream: the closed form when known, route a otherwise.
    pub fn c(&self) -> f64 {
        self.c_closed.unwrap_or(self.c_route_a)
    }

    /// Sign, route-agreement and closed-form checks.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let tol = INEQUALITY_TOL + self.quadrature_budget;
        if self.c_route_a > tol {
            out.push(format!("route a constant {} is positive", self.c_route_a));
        }
        if self.c_route_b > tol {
            out.push(format!("route b constant {} is positive", self.c_route_b));
        }
        if self.discrepancy >= ROUTE_AGREEMENT {
            out.push(format!(
                "route discrepancy {} not below {ROUTE_AGREEMENT}",
                self.discrepancy
            ));
        }
        if let Some(cc) = self.c_closed {
            if (self.c_route_a - cc).abs() >= ROUTE_AGREEMENT {
                out.push(format!(
                    "route a {} differs from closed form {cc}",
                    self.c_route_a
                ));
            }
            if (self.c_route_b - cc).abs() >= ROUTE_AGREEMENT {
                out.push(format!(
                    "route b {} differs from closed form {cc}",
                    self.c_route_b
                ));
            }
        }
        out
    }
}

/// Source of the Riesz measure for the second route.
#[derive(Debug, Clone, Copy)]
pub enum SigmaSource<'a> {
    /// Closed-form radial measure of `{|z| ≤ radius}`.
    DiskClosedForm {
        radius: f64,
    },
    Grid(&'a GridDensity),
}

/// Closed form of the constant for the concentric disk `|z| ≤ r`.
pub fn c_constant_disk(r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidArgument(format!("radius {r} outside (0, 1)")));
    }
    Ok(((1.0 + r * r) / (2.0 * r)).ln() + (1.0 - r) / (1.0 + r) * r.ln())
}

/// `∫ inf_{z∈E} g(z, ζ) dμ_E(ζ) - V_E · mass`.
pub fn c_constant_route_a(set: &CompactSet, eq: &EquilibriumResult, mass: f64) -> Result<f64> {
    eq.measure.require_unit()?;
    let inner = eq.measure.integrate(|zeta| neg_log_farthest_raw(set, zeta));
    Ok(inner - eq.robin * mass)
}

/// `∫ (U^{μ_E}(z) - V_E) dσ_E(z)`.
pub fn c_constant_route_b(eq: &EquilibriumResult, sigma: SigmaSource<'_>) -> Result<f64> {
    eq.measure.require_unit()?;
    match sigma {
        SigmaSource::DiskClosedForm { radius } => {
            // angular average of the deficit; exact for the closed-form potential
            let angles = match eq.source {
                EquilibriumSource::ClosedForm { .. } => 1,
                EquilibriumSource::FeketeLimit { .. } => 256,
            };
            let deficit = |rho: f64| -> f64 {
                (0..angles)
                    .map(|k| {
                        eq.potential(ComplexPoint::from_polar(
                            rho,
                            TAU * (k as f64 + 0.5) / angles as f64,
                        ))
                    })
                    .sum::<f64>()
                    / angles as f64
                    - eq.robin
            };
            let integrand = |rho: f64| deficit(rho) * mass_radial_derivative(radius, rho);
            let inner = CompositeRule::new(0.0, radius, 16, 16).integrate(integrand);
            let outer = CompositeRule::new(radius, 1.0, 32, 16).integrate(integrand);
            Ok(inner + outer)
        }
        SigmaSource::Grid(grid) => Ok(grid.integrate(|z| eq.potential(z) - eq.robin)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantsOptions {
    /// Fekete points used for sets without a closed-form equilibrium measure.
    pub fekete_n: usize,
    pub restarts: usize,
    pub grid_h: f64,
}

impl Default for ConstantsOptions {
    fn default() -> Self {
        Self {
            fekete_n: 128,
            restarts: 8,
            grid_h: 1.0 / 256.0,
        }
    }
}

/// Everything needed to state the sharp inequality for `E`, together with
/// the equilibrium data it was computed from.
pub fn constants_report(
    set: &CompactSet,
    opts: &ConstantsOptions,
) -> Result<(ConstantsReport, EquilibriumResult)> {
    if !set.is_regular() {
        return Err(Error::IrregularSet);
    }
    let (report, eq) = match set.disk_radius() {
        Some(r) => {
            let eq = equilibrium_disk(r, set.boundary_resolution())?;
            let mass = sigma_total_mass_disk(r)?;
            let a = c_constant_route_a(set, &eq, mass)?;
            let b = c_constant_route_b(&eq, SigmaSource::DiskClosedForm { radius: r })?;
            let report = ConstantsReport {
                robin: eq.robin,
                sigma_mass: mass,
                c_route_a: a,
                c_route_b: b,
                c_closed: Some(c_constant_disk(r)?),
                discrepancy: (a - b).abs(),
                quadrature_budget: set.quadrature_tolerance(),
            };
            (report, eq)
        }
        None => {
            let eq = equilibrium_general(set, opts.fekete_n, opts.restarts)?;
            let grid = sigma_numeric(set, GridSpec::Cartesian { h: opts.grid_h })?;
            let a = c_constant_route_a(set, &eq, grid.mass)?;
            let b = c_constant_route_b(&eq, SigmaSource::Grid(&grid))?;
            let report = ConstantsReport {
                robin: eq.robin,
                sigma_mass: grid.mass,
                c_route_a: a,
                c_route_b: b,
                c_closed: None,
                discrepancy: (a - b).abs(),
                quadrature_budget: set.quadrature_tolerance(),
            };
            (report, eq)
        }
    };
    Ok((report, eq))
}

/// Left side, right side and slack of an inequality check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs - rhs`, or `log rhs - log lhs` for multiplicative forms.
    pub slack: f64,
}

/// `Σ inf_E U^{ν_k} ≥ C + σ(D) inf_E Σ U^{ν_k}` for measures of total mass 1.
pub fn verify_sharp_inequality(
    measures: &[DiscreteMeasure],
    set: &CompactSet,
    report: &ConstantsReport,
) -> Result<InequalityCheck> {
    let total: f64 = measures.iter().map(|m| m.total_mass()).sum();
    if (total - 1.0).abs() > UNIT_MASS_TOL {
        return Err(Error::MassNotUnit { found: total });
    }
    let lhs: f64 = measures.iter().map(|m| inf_over_set(m, set).0).sum();
    let merged = measures
        .iter()
        .skip(1)
        .fold(measures[0].clone(), |acc, m| acc.merged(m));
    let inf_total = inf_over_set(&merged, set).0;
    let rhs = report.c() + report.sigma_mass * inf_total;
    Ok(InequalityCheck {
        lhs,
        rhs,
        slack: lhs - rhs,
    })
}

/// The weaker bound `Σ inf_E U^{ν_k} ≥ 0 ≥ -V + inf_E Σ U^{ν_k}` as a slack pair
/// `(Σ inf_E U^{ν_k}, V - inf_E Σ U^{ν_k})`; both entries are nonnegative.
pub fn basic_bound(measures: &[DiscreteMeasure], set: &CompactSet, robin: f64) -> (f64, f64) {
    let lhs: f64 = measures.iter().map(|m| inf_over_set(m, set).0).sum();
    let merged = measures
        .iter()
        .skip(1)
        .fold(measures[0].clone(), |acc, m| acc.merged(m));
    (lhs, robin - inf_over_set(&merged, set).0)
}

/// Splits the Fekete counting measure into `n` pieces `(1/n) δ_{ξ_k}`.
pub fn fekete_split(points: &[ComplexPoint]) -> Result<Vec<DiscreteMeasure>> {
    let m = 1.0 / points.len() as f64;
    points
        .iter()
        .map(|&p| DiscreteMeasure::point_mass(p, m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::fekete_solve;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::new(re, im)
    }

    #[test]
    fn closed_form_values() {
        // log 1.25 - (1/3) log 2
        let expected = 1.25f64.ln() - 2f64.ln() / 3.0;
        assert_abs_diff_eq!(c_constant_disk(0.5).unwrap(), expected, epsilon = 1e-15);
        assert_abs_diff_eq!(c_constant_disk(0.5).unwrap(), -0.0079055089, epsilon = 1e-9);
        assert_abs_diff_eq!(c_constant_disk(0.1).unwrap(), -0.2645450146, epsilon = 1e-9);
        assert!(c_constant_disk(1.0 - 1e-6).unwrap().abs() < 1e-9);
        assert!(c_constant_disk(0.0).is_err());
    }

    #[test]
    fn routes_agree_on_disks() {
        for r in [0.1, 0.5, 0.9] {
            let e = CompactSet::concentric_disk(r, 256).unwrap();
            let (rep, _) = constants_report(&e, &ConstantsOptions::default()).unwrap();
            let cc = c_constant_disk(r).unwrap();
            assert_abs_diff_eq!(rep.c_route_a, cc, epsilon = 1e-10);
            assert_abs_diff_eq!(rep.c_route_b, cc, epsilon = 1e-10);
            assert!(rep.violations().is_empty());
        }
    }

    #[test]
    fn route_b_deficit_vanishes_inside() {
        // the closed-form deficit is zero on |z| ≤ r, so only r < |z| < 1 contributes
        let r = 0.5;
        let eq = equilibrium_disk(r, 64).unwrap();
        for rho in [0.0, 0.2, 0.49] {
            assert_eq!(eq.potential(c(rho, 0.0)) - eq.robin, 0.0);
        }
        assert!(eq.potential(c(0.7, 0.0)) - eq.robin < 0.0);
    }

    #[test]
    fn single_measure_reduction() {
        let e = CompactSet::concentric_disk(0.5, 256).unwrap();
        let (rep, _) = constants_report(&e, &ConstantsOptions::default()).unwrap();
        let mu = DiscreteMeasure::weighted(&[c(0.7, 0.1), c(-0.2, 0.6)], &[0.4, 0.6]).unwrap();
        let chk = verify_sharp_inequality(std::slice::from_ref(&mu), &e, &rep).unwrap();
        let inf = inf_over_set(&mu, &e).0;
        assert_abs_diff_eq!(
            chk.slack,
            (1.0 - rep.sigma_mass) * inf - rep.c(),
            epsilon = 1e-14
        );
        assert!(chk.slack >= 0.0);
    }

    #[test]
    fn mass_must_be_one() {
        let e = CompactSet::concentric_disk(0.5, 64).unwrap();
        let (rep, _) = constants_report(&e, &ConstantsOptions::default()).unwrap();
        let mu = DiscreteMeasure::point_mass(c(0.1, 0.0), 0.9).unwrap();
        assert!(matches!(
            verify_sharp_inequality(&[mu], &e, &rep),
            Err(Error::MassNotUnit { .. })
        ));
    }

    #[test]
    fn basic_bound_inside_e() {
        let e = CompactSet::concentric_disk(0.5, 256).unwrap();
        let parts = vec![
            DiscreteMeasure::point_mass(c(0.1, 0.1), 0.5).unwrap(),
            DiscreteMeasure::point_mass(c(-0.3, 0.0), 0.5).unwrap(),
        ];
        let (lhs, gap) = basic_bound(&parts, &e, 2f64.ln());
        assert!(lhs >= 0.0);
        assert!(gap >= -1e-12);
    }

    #[test]
    fn fekete_split_slack_shrinks() {
        let e = CompactSet::concentric_disk(0.5, 256).unwrap();
        let (rep, _) = constants_report(&e, &ConstantsOptions::default()).unwrap();
        let mut prev = f64::INFINITY;
        for n in [4, 8, 16, 32] {
            let f = fekete_solve(&e, n, 8).unwrap();
            let chk = verify_sharp_inequality(&fekete_split(&f.points).unwrap(), &e, &rep).unwrap();
            assert!(chk.slack >= -1e-9);
            assert!(chk.slack < prev);
            prev = chk.slack;
        }
    }

    #[test]
    fn irregular_sets_have_no_report() {
        let cloud = CompactSet::point_cloud(vec![c(0.1, 0.0), c(0.2, 0.0)], 16).unwrap();
        assert!(matches!(
            constants_report(&cloud, &ConstantsOptions::default()),
            Err(Error::IrregularSet)
        ));
    }
}
