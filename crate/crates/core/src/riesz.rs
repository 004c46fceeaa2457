//! The Riesz measure of `-log d_E`: closed forms for concentric disks and a
//! finite-difference Laplacian for general sets.

use std::f64::consts::{PI, TAU};
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{check_disk, green_raw, ComplexPoint};
use crate::potentials::neg_log_farthest_raw;
use crate::quadrature::CompositeRule;
use crate::sets::CompactSet;

/// Allowed excess of the numerical mass over 1.
pub const MASS_TOL: f64 = 5e-3;
/// Largest tolerated ratio of clipped negative stencil mass to total mass.
pub const CLIP_FRACTION: f64 = 1e-3;
/// Grid spacing used by [`sigma_mass`] for sets without a closed form.
pub const DEFAULT_GRID_H: f64 = 1.0 / 256.0;
pub const DEFAULT_N_THETA: usize = 64;

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("radius {r} outside (0, 1)")))
    }
}

/// Density of the Riesz measure of `E = {|z| ≤ r}` with respect to area:
/// `r(1-r²)(1-|z|²) / (2π|z|(r|z|+1)²(r+|z|)²)`.
pub fn sigma_density_disk(r: f64, z: ComplexPoint) -> Result<f64> {
    check_radius(r)?;
    check_disk(z)?;
    let rho = z.norm();
    if rho == 0.0 {
        return Err(Error::Pole);
    }
    Ok(density_radial(r, rho))
}

fn density_radial(r: f64, rho: f64) -> f64 {
    r * (1.0 - r * r) * (1.0 - rho * rho)
        / (2.0 * PI * rho * (r * rho + 1.0).powi(2) * (r + rho).powi(2))
}

/// Mass of the disk-case Riesz measure inside `|z| < R`:
/// `R(1-r²) / ((rR+1)(r+R))`.
pub fn sigma_mass_radial(r: f64, big_r: f64) -> Result<f64> {
    check_radius(r)?;
    if !(0.0..1.0).contains(&big_r) {
        return Err(Error::InvalidArgument(format!(
            "radius {big_r} outside [0, 1)"
        )));
    }
    Ok(mass_radial(r, big_r))
}

fn mass_radial(r: f64, big_r: f64) -> f64 {
    big_r * (1.0 - r * r) / ((r * big_r + 1.0) * (r + big_r))
}

/// `d/dR` of [`sigma_mass_radial`], i.e. `2πR` times the density.
pub(crate) fn mass_radial_derivative(r: f64, rho: f64) -> f64 {
    r * (1.0 - r * r) * (1.0 - rho * rho) / ((r * rho + 1.0).powi(2) * (r + rho).powi(2))
}

/// Total mass `(1-r)/(1+r)` for the concentric disk.
pub fn sigma_total_mass_disk(r: f64) -> Result<f64> {
    check_radius(r)?;
    Ok((1.0 - r) / (1.0 + r))
}

/// Quadrature of `∫ g(z, ζ) dσ(ζ)` against the closed-form density of the
/// disk case. Radial composite Gauss–Legendre split at `|z|`, periodic
/// trapezoid in angle.
pub fn disk_sigma_potential(
    r: f64,
    z: ComplexPoint,
    radial_panels: usize,
    angles: usize,
) -> Result<f64> {
    check_radius(r)?;
    check_disk(z)?;
    let rz = z.norm();
    let dphi = TAU / angles as f64;
    let ring = |rho: f64| -> f64 {
        let mean: f64 = (0..angles)
            .map(|k| green_raw(z, ComplexPoint::from_polar(rho, (k as f64 + 0.5) * dphi)))
            .sum::<f64>()
            * dphi;
        // ρ · density · ∫ g dφ
        rho * density_radial(r, rho) * mean
    };
    let mut total = 0.0;
    if rz > 0.0 {
        total += CompositeRule::new(0.0, rz, radial_panels, 8).integrate(ring);
    }
    total += CompositeRule::new(rz, 1.0, radial_panels, 8).integrate(ring);
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GridSpec {
    /// Radial spacing `h`, `n_theta` equal angular steps.
    Polar { h: f64, n_theta: usize },
    /// Square cells of side `h` centered off the origin.
    Cartesian { h: f64 },
}

impl GridSpec {
    /// Polar grid for concentric disks, Cartesian otherwise.
    pub fn for_set(set: &CompactSet, h: f64) -> Self {
        if set.disk_radius().is_some() {
            GridSpec::Polar {
                h,
                n_theta: DEFAULT_N_THETA,
            }
        } else {
            GridSpec::Cartesian { h }
        }
    }

    pub fn spacing(&self) -> f64 {
        match *self {
            GridSpec::Polar { h, .. } | GridSpec::Cartesian { h } => h,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridCell {
    pub point: ComplexPoint,
    /// Density with respect to area, clipped at zero.
    pub density: f64,
    pub area: f64,
}

/// Numerical Riesz density on a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridDensity {
    pub spec: GridSpec,
    pub cells: Vec<GridCell>,
    /// Area-weighted sum of the clipped density.
    pub mass: f64,
    /// Total mass of the negative stencil values removed by clipping.
    pub clipped: f64,
}

impl GridDensity {
    /// Mass of the cells whose centers lie in `|z| ≤ radius`, per radius.
    pub fn cumulative_radial_mass(&self, radii: &[f64]) -> Vec<f64> {
        radii
            .iter()
            .map(|&rad| {
                self.cells
                    .iter()
                    .filter(|c| c.point.norm() <= rad)
                    .map(|c| c.density * c.area)
                    .sum()
            })
            .collect()
    }

    /// `Σ density · area · f(center)`.
    pub fn integrate<F: Fn(ComplexPoint) -> f64 + Sync>(&self, f: F) -> f64 {
        let parts: Vec<f64> = self
            .cells
            .par_iter()
            .map(|c| {
                if c.density > 0.0 {
                    c.density * c.area * f(c.point)
                } else {
                    0.0
                }
            })
            .collect();
        parts.iter().sum()
    }

    /// CSV with a `#`-prefixed metadata line, then `re,im,density,cell_area`.
    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut out = out;
        let meta = match self.spec {
            GridSpec::Polar { h, n_theta } => {
                format!("# grid=polar,h={},n_theta={}", fmt12(h), n_theta)
            }
            GridSpec::Cartesian { h } => format!("# grid=cartesian,h={}", fmt12(h)),
        };
        writeln!(
            out,
            "{meta},mass={},clipped={}",
            fmt12(self.mass),
            fmt12(self.clipped)
        )?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["re", "im", "density", "cell_area"])?;
        for c in &self.cells {
            w.write_record([
                fmt12(c.point.re),
                fmt12(c.point.im),
                fmt12(c.density),
                fmt12(c.area),
            ])?;
        }
        w.flush()
    }
}

pub(crate) use crate::report::fmt12;

/// Riesz density of `u = -log d_E` by a 5-point Laplacian:
/// `σ = -Δu / 2π`, clipped at zero, with the clipped mass reported.
pub fn sigma_numeric(set: &CompactSet, spec: GridSpec) -> Result<GridDensity> {
    if set.is_singleton() {
        return Err(Error::SingletonSet);
    }
    let h = spec.spacing();
    if !(h > 0.0 && h <= 0.125) {
        return Err(Error::InvalidArgument(format!(
            "grid spacing {h} outside (0, 1/8]"
        )));
    }
    let feature = set.feature_size();
    if h > feature / 4.0 {
        return Err(Error::Resolution {
            spacing: h,
            feature,
        });
    }
    let (cells, clipped) = match spec {
        GridSpec::Polar { h, n_theta } => polar_laplacian(set, h, n_theta)?,
        GridSpec::Cartesian { h } => cartesian_laplacian(set, h),
    };
    let mass: f64 = cells.iter().map(|c| c.density * c.area).sum();
    if clipped > CLIP_FRACTION * mass {
        return Err(Error::ExcessClipping { clipped, mass });
    }
    Ok(GridDensity {
        spec,
        cells,
        mass,
        clipped,
    })
}

fn clip(raw: f64, area: f64, clipped: &mut f64) -> f64 {
    if raw < 0.0 {
        *clipped += -raw * area;
        0.0
    } else {
        raw
    }
}

fn polar_laplacian(set: &CompactSet, h: f64, n_theta: usize) -> Result<(Vec<GridCell>, f64)> {
    if n_theta < 8 {
        return Err(Error::InvalidArgument(format!("n_theta {n_theta} below 8")));
    }
    let n = (1.0 / h).round() as usize;
    let dth = TAU / n_theta as f64;
    let node = |i: usize, j: usize| ComplexPoint::from_polar((i as f64 + 0.5) * h, j as f64 * dth);
    let u: Vec<f64> = (0..n * n_theta)
        .into_par_iter()
        .map(|k| neg_log_farthest_raw(set, node(k / n_theta, k % n_theta)))
        .collect();
    let at = |i: usize, j: usize| u[i * n_theta + j % n_theta];
    let mut cells = Vec::with_capacity((n - 1) * n_theta);
    let mut clipped = 0.0;
    for i in 0..n - 1 {
        let rho = (i as f64 + 0.5) * h;
        let area = rho * h * dth;
        for j in 0..n_theta {
            let c = at(i, j);
            let outer = (rho + 0.5 * h) * (at(i + 1, j) - c);
            let inner = if i == 0 {
                0.0
            } else {
                (rho - 0.5 * h) * (c - at(i - 1, j))
            };
            let radial = (outer - inner) / (rho * h * h);
            let angular =
                (at(i, j + 1) - 2.0 * c + at(i, j + n_theta - 1)) / (rho * rho * dth * dth);
            let raw = -(radial + angular) / TAU;
            cells.push(GridCell {
                point: node(i, j),
                density: clip(raw, area, &mut clipped),
                area,
            });
        }
    }
    Ok((cells, clipped))
}

fn cartesian_laplacian(set: &CompactSet, h: f64) -> (Vec<GridCell>, f64) {
    let side = (2.0 / h).round() as usize;
    let coord = |i: usize| -1.0 + (i as f64 + 0.5) * h;
    let u: Vec<f64> = (0..side * side)
        .into_par_iter()
        .map(|k| {
            let z = ComplexPoint::new(coord(k % side), coord(k / side));
            if z.norm() < 1.0 - 1e-12 {
                neg_log_farthest_raw(set, z)
            } else {
                f64::NAN
            }
        })
        .collect();
    let at = |ix: usize, iy: usize| u[iy * side + ix];
    let area = h * h;
    let mut cells = Vec::new();
    let mut clipped = 0.0;
    for iy in 1..side - 1 {
        for ix in 1..side - 1 {
            let z = ComplexPoint::new(coord(ix), coord(iy));
            if z.norm() + h >= 1.0 {
                continue;
            }
            let lap = (at(ix + 1, iy) + at(ix - 1, iy) + at(ix, iy + 1) + at(ix, iy - 1)
                - 4.0 * at(ix, iy))
                / area;
            let raw = -lap / TAU;
            cells.push(GridCell {
                point: z,
                density: clip(raw, area, &mut clipped),
                area,
            });
        }
    }
    (cells, clipped)
}

/// Total Riesz mass: closed form for concentric disks, otherwise the mass of
/// [`sigma_numeric`] on a Cartesian grid of spacing [`DEFAULT_GRID_H`]
/// (refined when the set has small features).
pub fn sigma_mass(set: &CompactSet) -> Result<f64> {
    if let Some(r) = set.disk_radius() {
        return sigma_total_mass_disk(r);
    }
    if set.is_singleton() {
        return Err(Error::SingletonSet);
    }
    let h = DEFAULT_GRID_H.min(set.feature_size() / 4.0);
    Ok(sigma_numeric(set, GridSpec::Cartesian { h })?.mass)
}
