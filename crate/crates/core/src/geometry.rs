//! Pointwise formulas on the unit disk: the Green function, the
//! pseudohyperbolic metric, disk automorphisms and the half-plane map.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the plane. Disk-valued arguments are checked at the API
/// boundary rather than by a separate type.
pub type ComplexPoint = Complex64;

/// Separation below which two points are treated as coincident.
pub const POLE_RADIUS: f64 = 1e-15;

/// Value of a Green function or potential, which is `+∞` at a pole.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GreenValue {
    Finite(f64),
    Infinite,
}

impl GreenValue {
    /// The value as an extended real, with `Infinite` mapped to `f64::INFINITY`.
    pub fn value(self) -> f64 {
        match self {
            GreenValue::Finite(v) => v,
            GreenValue::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, GreenValue::Infinite)
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            GreenValue::Finite(v) => Some(v),
            GreenValue::Infinite => None,
        }
    }
}

pub(crate) fn check_finite(z: ComplexPoint) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(z))
    }
}

/// Errors unless `z` lies in the open unit disk.
pub fn check_disk(z: ComplexPoint) -> Result<()> {
    check_finite(z)?;
    if z.norm_sqr() < 1.0 {
        Ok(())
    } else {
        Err(Error::OutsideDisk(z))
    }
}

/// `|z - ζ| / |1 - ζ̄ z|` with no argument checks.
#[inline]
pub(crate) fn pseudo_distance_raw(z: ComplexPoint, zeta: ComplexPoint) -> f64 {
    (z - zeta).norm() / (1.0 - zeta.conj() * z).norm()
}

/// `log(|1 - ζ̄ z| / |z - ζ|)` with no argument checks; `+∞` at the pole.
#[inline]
pub(crate) fn green_raw(z: ComplexPoint, zeta: ComplexPoint) -> f64 {
    let sep = (z - zeta).norm();
    if sep < POLE_RADIUS {
        return f64::INFINITY;
    }
    ((1.0 - zeta.conj() * z).norm() / sep).ln()
}

/// Gradient of `z ↦ g(z, ζ)` as the complex number `∂x g + i ∂y g`.
#[inline]
pub(crate) fn green_gradient_raw(z: ComplexPoint, zeta: ComplexPoint) -> ComplexPoint {
    // g = log|h1| - log|h2| with h1 = 1 - ζ̄z, h2 = z - ζ; grad log|h| = conj(h'/h).
    let d = -zeta.conj() / (1.0 - zeta.conj() * z) - 1.0 / (z - zeta);
    d.conj()
}

/// Green function of the unit disk with pole at `zeta`.
pub fn green_disk(z: ComplexPoint, zeta: ComplexPoint) -> Result<GreenValue> {
    check_disk(z)?;
    check_disk(zeta)?;
    let g = green_raw(z, zeta);
    Ok(if g.is_finite() {
        GreenValue::Finite(g)
    } else {
        GreenValue::Infinite
    })
}

/// Pseudohyperbolic distance on the unit disk, `exp(-g(z, ζ))`.
pub fn pseudo_distance(z: ComplexPoint, zeta: ComplexPoint) -> Result<f64> {
    check_disk(z)?;
    check_disk(zeta)?;
    Ok(pseudo_distance_raw(z, zeta))
}

/// Disk automorphism `z ↦ e^{iθ} (z - a) / (1 - ā z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MoebiusMap {
    a: ComplexPoint,
    theta: f64,
}

impl MoebiusMap {
    pub fn new(a: ComplexPoint, theta: f64) -> Result<Self> {
        check_disk(a)?;
        if !theta.is_finite() {
            return Err(Error::InvalidArgument(format!("rotation angle {theta}")));
        }
        Ok(Self { a, theta })
    }

    pub fn identity() -> Self {
        Self {
            a: ComplexPoint::new(0.0, 0.0),
            theta: 0.0,
        }
    }

    /// The point sent to the origin.
    pub fn center(&self) -> ComplexPoint {
        self.a
    }

    pub fn rotation(&self) -> f64 {
        self.theta
    }

    pub fn apply(&self, z: ComplexPoint) -> Result<ComplexPoint> {
        check_disk(z)?;
        Ok(self.apply_raw(z))
    }

    pub fn invert(&self, w: ComplexPoint) -> Result<ComplexPoint> {
        check_disk(w)?;
        let u = w * ComplexPoint::from_polar(1.0, -self.theta);
        Ok((u + self.a) / (1.0 + self.a.conj() * u))
    }

    fn apply_raw(&self, z: ComplexPoint) -> ComplexPoint {
        ComplexPoint::from_polar(1.0, self.theta) * (z - self.a) / (1.0 - self.a.conj() * z)
    }
}

/// Apply a disk automorphism to a disk point.
pub fn apply_moebius(m: &MoebiusMap, z: ComplexPoint) -> Result<ComplexPoint> {
    m.apply(z)
}

/// Cayley map of the upper half-plane onto the disk, `w ↦ (w - i)/(w + i)`.
pub fn halfplane_to_disk(w: ComplexPoint) -> Result<ComplexPoint> {
    check_finite(w)?;
    if w.im <= 0.0 {
        return Err(Error::OutsideHalfPlane(w));
    }
    let i = ComplexPoint::i();
    Ok((w - i) / (w + i))
}

/// Inverse of [`halfplane_to_disk`].
pub fn disk_to_halfplane(z: ComplexPoint) -> Result<ComplexPoint> {
    check_disk(z)?;
    let i = ComplexPoint::i();
    Ok(i * (1.0 + z) / (1.0 - z))
}

/// Modulus of the half-plane Blaschke factor `(w - w0)/(w - w̄0)`.
pub fn halfplane_factor_modulus(w: ComplexPoint, w0: ComplexPoint) -> Result<f64> {
    check_finite(w)?;
    if w.im <= 0.0 {
        return Err(Error::OutsideHalfPlane(w));
    }
    if w0.im <= 0.0 {
        return Err(Error::OutsideHalfPlane(w0));
    }
    Ok((w - w0).norm() / (w - w0.conj()).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::new(re, im)
    }

    #[test]
    fn green_examples() {
        let g = green_disk(c(0.0, 0.0), c(0.5, 0.0)).unwrap().value();
        assert_abs_diff_eq!(g, 2f64.ln(), epsilon = 1e-15);
        assert!(green_disk(c(0.3, 0.1), c(0.3, 0.1)).unwrap().is_infinite());
        // log(|1 + 0.25i| / |0.5 - 0.5i|)
        let g = green_disk(c(0.5, 0.0), c(0.0, 0.5)).unwrap().value();
        let expected = (1.0625f64.sqrt() / 0.5f64.sqrt()).ln();
        assert_abs_diff_eq!(g, expected, epsilon = 1e-15);
        assert_abs_diff_eq!(g, 0.3768859012, epsilon = 1e-9);
    }

    #[test]
    fn green_rejects_outside_points() {
        assert!(matches!(
            green_disk(c(1.0, 0.0), c(0.0, 0.0)),
            Err(Error::OutsideDisk(_))
        ));
        assert!(green_disk(c(0.0, 0.0), c(0.0, -1.2)).is_err());
        assert!(matches!(
            green_disk(c(f64::NAN, 0.0), c(0.0, 0.0)),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn pseudo_distance_examples() {
        let zeta = c(0.3, -0.4);
        assert_abs_diff_eq!(
            pseudo_distance(c(0.0, 0.0), zeta).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        assert_eq!(pseudo_distance(zeta, zeta).unwrap(), 0.0);
        assert_abs_diff_eq!(
            pseudo_distance(c(0.5, 0.0), c(-0.5, 0.0)).unwrap(),
            0.8,
            epsilon = 1e-15
        );
    }

    #[test]
    fn near_pole_is_infinite() {
        let z = c(0.2, 0.2);
        let g = green_disk(z, z + c(1e-16, 0.0)).unwrap();
        assert_eq!(g, GreenValue::Infinite);
    }

    #[test]
    fn moebius_examples() {
        let id = MoebiusMap::identity();
        let z = c(0.1, 0.7);
        assert_eq!(id.apply(z).unwrap(), z);
        let m = MoebiusMap::new(c(0.5, 0.0), 0.0).unwrap();
        assert_abs_diff_eq!(m.apply(c(0.5, 0.0)).unwrap().norm(), 0.0, epsilon = 1e-16);
        let (a, b) = (c(0.3, 0.0), c(0.0, 0.1));
        let g0 = green_raw(a, b);
        let g1 = green_raw(m.apply(a).unwrap(), m.apply(b).unwrap());
        assert_abs_diff_eq!(g0, g1, epsilon = 1e-10);
        let m = MoebiusMap::new(c(-0.2, 0.6), 1.3).unwrap();
        let back = m.invert(m.apply(z).unwrap()).unwrap();
        assert_abs_diff_eq!((back - z).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn halfplane_examples() {
        assert_abs_diff_eq!(
            halfplane_to_disk(c(0.0, 1.0)).unwrap().norm(),
            0.0,
            epsilon = 1e-16
        );
        let w = halfplane_to_disk(c(0.0, 2.0)).unwrap();
        assert_abs_diff_eq!((w - c(1.0 / 3.0, 0.0)).norm(), 0.0, epsilon = 1e-15);
        let w = halfplane_to_disk(c(1.0, 1.0)).unwrap();
        assert_abs_diff_eq!((w - c(0.2, -0.4)).norm(), 0.0, epsilon = 1e-15);
        assert!(matches!(
            halfplane_to_disk(c(1.0, 0.0)),
            Err(Error::OutsideHalfPlane(_))
        ));
        let z = c(0.3, -0.45);
        let back = halfplane_to_disk(disk_to_halfplane(z).unwrap()).unwrap();
        assert_abs_diff_eq!((back - z).norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let zeta = c(0.2, -0.5);
        let z = c(-0.3, 0.4);
        let h = 1e-6;
        let dx = (green_raw(z + c(h, 0.0), zeta) - green_raw(z - c(h, 0.0), zeta)) / (2.0 * h);
        let dy = (green_raw(z + c(0.0, h), zeta) - green_raw(z - c(0.0, h), zeta)) / (2.0 * h);
        let grad = green_gradient_raw(z, zeta);
        assert_abs_diff_eq!(grad.re, dx, epsilon = 1e-7);
        assert_abs_diff_eq!(grad.im, dy, epsilon = 1e-7);
    }
}
