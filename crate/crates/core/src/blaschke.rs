//! Finite Blaschke products, their sup norms over compact sets, the product
//! inequality and extremal arrays built from Fekete zeros.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::{ConstantsReport, InequalityCheck};
use crate::equilibrium::{fekete_solve, weak_star_distance, EquilibriumResult};
use crate::error::{Error, Result};
use crate::geometry::{check_finite, ComplexPoint};
use crate::potentials::{inf_over_set, DiscreteMeasure};
use crate::report::fmt12;
use crate::sets::{CompactSet, MAX_MODULUS};

/// Degree from which products are evaluated through their log-modulus.
pub const LOG_FORM_DEGREE: usize = 32;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeProduct {
    theta: f64,
    zeros: Vec<ComplexPoint>,
}

impl BlaschkeProduct {
    pub fn new(theta: f64, zeros: Vec<ComplexPoint>) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::InvalidArgument(format!("rotation angle {theta}")));
        }
        for &z in &zeros {
            check_finite(z)?;
            if z.norm() > MAX_MODULUS {
                return Err(Error::InvalidArgument(format!(
                    "zero {z} too close to the unit circle"
                )));
            }
        }
        Ok(Self { theta, zeros })
    }

    /// Product with the given zeros and `θ = 0`.
    pub fn from_zeros(zeros: Vec<ComplexPoint>) -> Result<Self> {
        Self::new(0.0, zeros)
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn zeros(&self) -> &[ComplexPoint] {
        &self.zeros
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `e^{iθ} Π (z - z_j)/(1 - z̄_j z)`.
    pub fn eval(&self, z: ComplexPoint) -> Complex64 {
        let mut acc = Complex64::from_polar(1.0, self.theta);
        for &a in &self.zeros {
            acc *= (z - a) / (1.0 - a.conj() * z);
        }
        acc
    }

    /// `log |B(z)|` as a sum of factor log-moduli.
    pub fn log_abs(&self, z: ComplexPoint) -> f64 {
        self.zeros
            .iter()
            .map(|&a| ((z - a).norm() / (1.0 - a.conj() * z).norm()).ln())
            .sum()
    }

    /// `|B(z)|`, through the log-modulus for large degrees.
    pub fn abs(&self, z: ComplexPoint) -> f64 {
        if self.degree() >= LOG_FORM_DEGREE {
            self.log_abs(z).exp()
        } else {
            self.eval(z).norm()
        }
    }

    /// Normalized counting measure of the zeros.
    pub fn zero_measure(&self) -> Result<DiscreteMeasure> {
        DiscreteMeasure::normalized_counting(&self.zeros)
    }

    /// Product of several Blaschke products (rotations add).
    pub fn product(factors: &[BlaschkeProduct]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptyFactors);
        }
        let theta = factors.iter().map(|b| b.theta).sum();
        let zeros = factors
            .iter()
            .flat_map(|b| b.zeros.iter().copied())
            .collect();
        Self::new(theta, zeros)
    }
}

/// `B(z)` for a disk point.
pub fn blaschke_eval(b: &BlaschkeProduct, z: ComplexPoint) -> Complex64 {
    b.eval(z)
}

/// `log ‖B‖_E`. Computed as `-n inf_E U^ν` with `ν` the zero counting
/// measure, so the maximum is searched on the boundary and refined.
pub fn log_sup_norm(b: &BlaschkeProduct, set: &CompactSet) -> f64 {
    if b.degree() == 0 {
        return 0.0;
    }
    let nu = b.zero_measure().expect("zeros lie in the disk");
    -(b.degree() as f64) * inf_over_set(&nu, set).0
}

/// `‖B‖_E = sup_{z∈E} |B(z)|`.
pub fn sup_norm(b: &BlaschkeProduct, set: &CompactSet) -> f64 {
    log_sup_norm(b, set).exp()
}

/// `(2 r^{2r/(r+1)} / (1 + r²))`, the per-degree constant of the product
/// inequality on `|z| ≤ r`.
pub fn disk_product_constant(r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidArgument(format!("radius {r} outside (0, 1)")));
    }
    Ok(2.0 * r.powf(2.0 * r / (r + 1.0)) / (1.0 + r * r))
}

/// `Π ‖B_k‖_E ≤ e^{-nC} ‖Π B_k‖_E^{σ(D)}`, reported in logarithms:
/// `lhs = Σ log ‖B_k‖`, `rhs = -nC + σ log ‖Π B_k‖`, `slack = rhs - lhs`.
pub fn verify_product_inequality(
    factors: &[BlaschkeProduct],
    set: &CompactSet,
    report: &ConstantsReport,
) -> Result<InequalityCheck> {
    if factors.is_empty() {
        return Err(Error::EmptyFactors);
    }
    let product = BlaschkeProduct::product(factors)?;
    let n = product.degree();
    if n == 0 {
        return Err(Error::InvalidArgument(
            "total degree must be at least 1".into(),
        ));
    }
    let lhs: f64 = factors.iter().map(|b| log_sup_norm(b, set)).sum();
    let rhs = -(n as f64) * report.c() + report.sigma_mass * log_sup_norm(&product, set);
    Ok(InequalityCheck {
        lhs,
        rhs,
        slack: rhs - lhs,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalSweepRow {
    pub n: usize,
    /// `‖Π b_k‖_E`.
    pub product_norm: f64,
    /// `Π ‖b_k‖_E`.
    pub factor_norm_product: f64,
    /// `(Π ‖b_k‖ / ‖Π b_k‖^σ)^{1/n}`.
    pub ratio: f64,
    /// `e^{-C}`.
    pub target_e_minus_c: f64,
    /// Moment discrepancy of the zero counting measure from `μ_E`.
    pub moment_gap: f64,
    pub nonconverged: bool,
}

impl ExtremalSweepRow {
    pub const CSV_HEADER: [&'static str; 6] = [
        "n",
        "product_norm",
        "factor_norm_product",
        "ratio",
        "target_e_minus_C",
        "moment_gap",
    ];

    pub fn csv_record(&self) -> [String; 6] {
        [
            self.n.to_string(),
            fmt12(self.product_norm),
            fmt12(self.factor_norm_product),
            fmt12(self.ratio),
            fmt12(self.target_e_minus_c),
            fmt12(self.moment_gap),
        ]
    }
}

/// Moment order used for the sweep's weak-* discrepancy.
pub const SWEEP_MOMENT_ORDER: usize = 4;

/// Single-zero factors at the `n`-th Fekete points, for each `n`.
pub fn extremal_sweep(
    set: &CompactSet,
    n_list: &[usize],
    restarts: usize,
    report: &ConstantsReport,
    eq: &EquilibriumResult,
) -> Result<Vec<ExtremalSweepRow>> {
    if !set.is_regular() {
        return Err(Error::IrregularSet);
    }
    let mut sizes = n_list.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    let target = (-report.c()).exp();
    sizes
        .iter()
        .map(|&n| {
            let fekete = fekete_solve(set, n, restarts)?;
            let factors = fekete
                .points
                .iter()
                .map(|&p| BlaschkeProduct::from_zeros(vec![p]))
                .collect::<Result<Vec<_>>>()?;
            let log_factors: f64 = factors.iter().map(|b| log_sup_norm(b, set)).sum();
            let product = BlaschkeProduct::product(&factors)?;
            let log_product = log_sup_norm(&product, set);
            let nf = n as f64;
            Ok(ExtremalSweepRow {
                n,
                product_norm: log_product.exp(),
                factor_norm_product: log_factors.exp(),
                ratio: ((log_factors - report.sigma_mass * log_product) / nf).exp(),
                target_e_minus_c: target,
                moment_gap: weak_star_distance(&fekete.counting_measure(), eq, SWEEP_MOMENT_ORDER)?,
                nonconverged: fekete.nonconverged,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{constants_report, ConstantsOptions};
    use crate::potentials::green_potential;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::TAU;

    fn c(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::new(re, im)
    }

    #[test]
    fn eval_examples() {
        let b = BlaschkeProduct::from_zeros(vec![c(0.0, 0.0)]).unwrap();
        let z = c(0.3, -0.2);
        assert_abs_diff_eq!((b.eval(z) - z).norm(), 0.0, epsilon = 1e-16);
        let b = BlaschkeProduct::new(0.4, vec![c(0.5, 0.1), c(-0.3, 0.7), c(0.0, -0.9)]).unwrap();
        for k in 0..16 {
            let w = Complex64::from_polar(1.0, TAU * k as f64 / 16.0);
            assert_abs_diff_eq!(b.eval(w).norm(), 1.0, epsilon = 1e-12);
        }
        let b = BlaschkeProduct::from_zeros(vec![c(0.5, 0.0), c(-0.5, 0.0)]).unwrap();
        assert_abs_diff_eq!(b.log_abs(c(0.0, 0.0)), 0.25f64.ln(), epsilon = 1e-15);
        assert!(BlaschkeProduct::from_zeros(vec![c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn log_modulus_is_scaled_potential() {
        let b = BlaschkeProduct::from_zeros(vec![c(0.5, 0.1), c(-0.3, 0.7), c(0.2, -0.4)]).unwrap();
        let nu = b.zero_measure().unwrap();
        let z = c(0.1, 0.1);
        let u = green_potential(&nu, z).unwrap().value();
        assert_abs_diff_eq!(b.log_abs(z) + 3.0 * u, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b.eval(z).norm().ln(), b.log_abs(z), epsilon = 1e-12);
    }

    #[test]
    fn sup_norm_examples() {
        let r = 0.5;
        let e = CompactSet::concentric_disk(r, 256).unwrap();
        let b = BlaschkeProduct::from_zeros(vec![c(0.5, 0.0)]).unwrap();
        assert_abs_diff_eq!(sup_norm(&b, &e), 0.8, epsilon = 1e-12);
        let a = c(-0.2, 0.6);
        let b = BlaschkeProduct::from_zeros(vec![a]).unwrap();
        let m = a.norm();
        assert_abs_diff_eq!(sup_norm(&b, &e), (m + r) / (1.0 + r * m), epsilon = 1e-12);
        let b = BlaschkeProduct::from_zeros(vec![c(0.0, 0.0); 7]).unwrap();
        assert_abs_diff_eq!(sup_norm(&b, &e), r.powi(7), epsilon = 1e-15);
        let cloud = CompactSet::point_cloud(vec![c(0.1, 0.0), c(0.4, 0.0)], 16).unwrap();
        let b = BlaschkeProduct::from_zeros(vec![c(0.0, 0.0)]).unwrap();
        assert_abs_diff_eq!(sup_norm(&b, &cloud), 0.4, epsilon = 1e-15);
    }

    #[test]
    fn monomial_reduction() {
        let r: f64 = 0.5;
        let e = CompactSet::concentric_disk(r, 256).unwrap();
        let (rep, _) = constants_report(&e, &ConstantsOptions::default()).unwrap();
        for n in [1usize, 5, 20] {
            let b = BlaschkeProduct::from_zeros(vec![c(0.0, 0.0); n]).unwrap();
            let chk = verify_product_inequality(&[b], &e, &rep).unwrap();
            assert_abs_diff_eq!(
                chk.slack,
                n as f64 * (2.0 / (1.0 + r * r)).ln(),
                epsilon = 1e-10
            );
        }
        assert!(matches!(
            verify_product_inequality(&[], &e, &rep),
            Err(Error::EmptyFactors)
        ));
    }

    #[test]
    fn disk_constant_matches_general_form() {
        for r in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let general = (-c_disk(r)).exp();
            assert_abs_diff_eq!(disk_product_constant(r).unwrap(), general, epsilon = 1e-12);
        }
    }

    fn c_disk(r: f64) -> f64 {
        crate::constants::c_constant_disk(r).unwrap()
    }

    #[test]
    fn sweep_closed_forms_on_disk() {
        // equally spaced zeros on |z| = r: ‖Π b‖ = 2r^n/(1+r^{2n}), ‖b_k‖ = 2r/(1+r²)
        let r: f64 = 0.5;
        let e = CompactSet::concentric_disk(r, 256).unwrap();
        let (rep, eq) = constants_report(&e, &ConstantsOptions::default()).unwrap();
        let rows = extremal_sweep(&e, &[4, 16], 8, &rep, &eq).unwrap();
        for row in &rows {
            let n = row.n as i32;
            let pn = 2.0 * r.powi(n) / (1.0 + r.powi(2 * n));
            let fk = (2.0 * r / (1.0 + r * r)).powi(n);
            assert_abs_diff_eq!(row.product_norm / pn, 1.0, epsilon = 1e-9);
            assert_abs_diff_eq!(row.factor_norm_product / fk, 1.0, epsilon = 1e-9);
            let ratio = (fk / pn.powf(rep.sigma_mass)).powf(1.0 / n as f64);
            assert_abs_diff_eq!(row.ratio, ratio, epsilon = 1e-9);
        }
    }
}
