//! Compact subsets of the unit disk and the geometric queries the
//! potential-theoretic code needs: boundary sampling, membership,
//! nearest-point projection and boundary extremization.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{check_finite, ComplexPoint};

/// Largest modulus a stored point may have.
pub const MAX_MODULUS: f64 = 1.0 - 1e-9;
pub const MIN_BOUNDARY_RESOLUTION: usize = 16;
/// Golden-section iterations used when refining a boundary extremum.
pub const REFINE_ITERATIONS: usize = 48;
/// Local minima of the boundary samples refined per search.
pub const REFINE_CANDIDATES: usize = 8;
/// Distance within which a point counts as lying on a set.
const MEMBERSHIP_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum SetShape {
    /// The closed disk `|z| ≤ radius`.
    ConcentricDisk { radius: f64 },
    /// A finite set of points.
    PointCloud(Vec<ComplexPoint>),
    /// A closed Jordan polygon with its interior, vertices positively oriented.
    JordanPolygon(Vec<ComplexPoint>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompactSet {
    shape: SetShape,
    boundary_resolution: usize,
    /// Cumulative edge lengths for polygons, `cumulative[k]` = length up to vertex `k`.
    cumulative: Vec<f64>,
}

/// Boundary points with curve-length quadrature weights.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySample {
    pub points: Vec<ComplexPoint>,
    pub weights: Vec<f64>,
    /// Normalized boundary parameters in `[0, 1)` (atom indices for point clouds).
    pub params: Vec<f64>,
}

impl CompactSet {
    pub fn concentric_disk(radius: f64, boundary_resolution: usize) -> Result<Self> {
        if !(radius > 0.0 && radius <= MAX_MODULUS) {
            return Err(Error::InvalidSet(format!(
                "disk radius {radius} outside (0, 1 - 1e-9]"
            )));
        }
        Self::build(SetShape::ConcentricDisk { radius }, boundary_resolution)
    }

    pub fn point_cloud(points: Vec<ComplexPoint>, boundary_resolution: usize) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidSet("empty point cloud".into()));
        }
        check_points(&points)?;
        Self::build(SetShape::PointCloud(points), boundary_resolution)
    }

    /// Builds a polygon from a closed vertex list. A clockwise list is
    /// reversed (keeping the first vertex) so the stored boundary is
    /// positively oriented. A repeated closing vertex is dropped.
    pub fn jordan_polygon(
        mut vertices: Vec<ComplexPoint>,
        boundary_resolution: usize,
    ) -> Result<Self> {
        if vertices.len() > 1 && vertices.first() == vertices.last() {
            vertices.pop();
        }
        if vertices.len() < 3 {
            return Err(Error::InvalidSet(
                "polygon needs at least 3 vertices".into(),
            ));
        }
        check_points(&vertices)?;
        check_simple(&vertices)?;
        let area = signed_area(&vertices);
        if area.abs() < 1e-14 {
            return Err(Error::InvalidSet(
                "degenerate polygon with zero area".into(),
            ));
        }
        if area < 0.0 {
            vertices[1..].reverse();
        }
        Self::build(SetShape::JordanPolygon(vertices), boundary_resolution)
    }

    fn build(shape: SetShape, boundary_resolution: usize) -> Result<Self> {
        if boundary_resolution < MIN_BOUNDARY_RESOLUTION {
            return Err(Error::InvalidSet(format!(
                "boundary_resolution {boundary_resolution} below {MIN_BOUNDARY_RESOLUTION}"
            )));
        }
        let cumulative = match &shape {
            SetShape::JordanPolygon(v) => {
                let mut acc = vec![0.0];
                for k in 0..v.len() {
                    let next = v[(k + 1) % v.len()];
                    acc.push(acc[k] + (next - v[k]).norm());
                }
                acc
            }
            _ => Vec::new(),
        };
        Ok(Self {
            shape,
            boundary_resolution,
            cumulative,
        })
    }

    pub fn shape(&self) -> &SetShape {
        &self.shape
    }

    pub fn boundary_resolution(&self) -> usize {
        self.boundary_resolution
    }

    /// Same set with a different boundary resolution.
    pub fn with_resolution(&self, boundary_resolution: usize) -> Result<Self> {
        Self::build(self.shape.clone(), boundary_resolution)
    }

    pub fn disk_radius(&self) -> Option<f64> {
        match self.shape {
            SetShape::ConcentricDisk { radius } => Some(radius),
            _ => None,
        }
    }

    /// Concentric disks and Jordan polygons are regular; point clouds are not.
    pub fn is_regular(&self) -> bool {
        !matches!(self.shape, SetShape::PointCloud(_))
    }

    pub fn is_singleton(&self) -> bool {
        match &self.shape {
            SetShape::PointCloud(p) => p.iter().all(|&q| q == p[0]),
            _ => false,
        }
    }

    pub fn has_interior(&self) -> bool {
        self.is_regular()
    }

    /// Length of the boundary curve (0 for point clouds).
    pub fn boundary_length(&self) -> f64 {
        match &self.shape {
            SetShape::ConcentricDisk { radius } => TAU * radius,
            SetShape::JordanPolygon(_) => *self.cumulative.last().unwrap(),
            SetShape::PointCloud(_) => 0.0,
        }
    }

    /// Smallest geometric scale of the set: radius, shortest edge, or
    /// smallest distinct-point separation.
    pub fn feature_size(&self) -> f64 {
        match &self.shape {
            SetShape::ConcentricDisk { radius } => *radius,
            SetShape::JordanPolygon(_) => self
                .cumulative
                .windows(2)
                .map(|w| w[1] - w[0])
                .fold(f64::INFINITY, f64::min),
            SetShape::PointCloud(p) => {
                let mut best = f64::INFINITY;
                for i in 0..p.len() {
                    for j in i + 1..p.len() {
                        let d = (p[i] - p[j]).norm();
                        if d > 0.0 {
                            best = best.min(d);
                        }
                    }
                }
                best
            }
        }
    }

    /// Error budget of boundary-sampled quadratures for this resolution.
    /// Trapezoid sums on a circle converge spectrally; on polygons they are
    /// second order in the sample spacing.
    pub fn quadrature_tolerance(&self) -> f64 {
        match &self.shape {
            SetShape::ConcentricDisk { .. } => 1e-9,
            SetShape::JordanPolygon(_) => {
                let h = self.boundary_length() / self.boundary_resolution as f64;
                h * h
            }
            SetShape::PointCloud(_) => 0.0,
        }
    }

    /// Boundary point at normalized parameter `s` (taken modulo 1).
    pub fn boundary_point(&self, s: f64) -> ComplexPoint {
        let s = s.rem_euclid(1.0);
        match &self.shape {
            SetShape::ConcentricDisk { radius } => ComplexPoint::from_polar(*radius, TAU * s),
            SetShape::JordanPolygon(v) => {
                let total = self.boundary_length();
                let target = s * total;
                // first k with cumulative[k+1] > target
                let k = self.cumulative[1..]
                    .partition_point(|&c| c <= target)
                    .min(v.len() - 1);
                let len = self.cumulative[k + 1] - self.cumulative[k];
                let t = if len > 0.0 {
                    (target - self.cumulative[k]) / len
                } else {
                    0.0
                };
                let a = v[k];
                let b = v[(k + 1) % v.len()];
                a + (b - a) * t
            }
            SetShape::PointCloud(p) => {
                let idx = ((s * p.len() as f64) as usize).min(p.len() - 1);
                p[idx]
            }
        }
    }

    pub fn boundary_sample(&self) -> BoundarySample {
        match &self.shape {
            SetShape::PointCloud(p) => BoundarySample {
                points: p.clone(),
                weights: vec![1.0; p.len()],
                params: (0..p.len()).map(|k| k as f64).collect(),
            },
            _ => {
                let n = self.boundary_resolution;
                let params: Vec<f64> = (0..n).map(|k| k as f64 / n as f64).collect();
                let points = params.iter().map(|&s| self.boundary_point(s)).collect();
                let w = self.boundary_length() / n as f64;
                BoundarySample {
                    points,
                    weights: vec![w; n],
                    params,
                }
            }
        }
    }

    pub fn contains(&self, z: ComplexPoint) -> bool {
        match &self.shape {
            SetShape::ConcentricDisk { radius } => z.norm() <= radius + MEMBERSHIP_SLACK,
            SetShape::PointCloud(p) => p.iter().any(|&q| (q - z).norm() <= MEMBERSHIP_SLACK),
            SetShape::JordanPolygon(v) => {
                winding_inside(v, z) || polygon_nearest(v, z).1 <= MEMBERSHIP_SLACK
            }
        }
    }

    /// Euclidean distance from `z` to the boundary of the set (to the
    /// nearest atom for point clouds).
    pub fn distance_to_boundary(&self, z: ComplexPoint) -> f64 {
        match &self.shape {
            SetShape::ConcentricDisk { radius } => (z.norm() - radius).abs(),
            SetShape::PointCloud(p) => p
                .iter()
                .map(|&q| (q - z).norm())
                .fold(f64::INFINITY, f64::min),
            SetShape::JordanPolygon(v) => polygon_nearest(v, z).1,
        }
    }

    /// Nearest point of the set; ties go to the smallest boundary parameter
    /// (smallest atom index for point clouds).
    pub fn project(&self, z: ComplexPoint) -> ComplexPoint {
        if self.contains(z) {
            return z;
        }
        match &self.shape {
            SetShape::ConcentricDisk { radius } => z * (radius / z.norm()),
            SetShape::PointCloud(p) => {
                let mut best = p[0];
                let mut best_d = (p[0] - z).norm();
                for &q in &p[1..] {
                    let d = (q - z).norm();
                    if d < best_d {
                        best = q;
                        best_d = d;
                    }
                }
                best
            }
            SetShape::JordanPolygon(v) => polygon_nearest(v, z).0,
        }
    }

    /// Minimizes `f` over the boundary: exhaustive over atoms for point
    /// clouds. Otherwise `boundary_resolution` samples are scanned, the best
    /// [`REFINE_CANDIDATES`] discrete local minima are refined by
    /// golden-section search on their parameter brackets, and polygon
    /// vertices are evaluated exactly. Returns the minimum value and where it
    /// is attained.
    pub fn boundary_argmin<F>(&self, f: F) -> (f64, ComplexPoint)
    where
        F: Fn(ComplexPoint) -> f64,
    {
        if let SetShape::PointCloud(p) = &self.shape {
            let mut best = (f(p[0]), p[0]);
            for &q in &p[1..] {
                let v = f(q);
                if v < best.0 {
                    best = (v, q);
                }
            }
            return best;
        }
        let n = self.boundary_resolution;
        let step = 1.0 / n as f64;
        let values: Vec<f64> = (0..n)
            .map(|k| f(self.boundary_point(k as f64 * step)))
            .collect();
        let mut best_k = 0;
        for k in 1..n {
            if values[k] < values[best_k] {
                best_k = k;
            }
        }
        let mut best = (values[best_k], best_k as f64 * step);

        // Discrete local minima, strict on the left so flat runs yield one candidate.
        let mut minima: Vec<usize> = (0..n)
            .filter(|&k| {
                let prev = values[(k + n - 1) % n];
                let next = values[(k + 1) % n];
                values[k] < prev && values[k] <= next
            })
            .collect();
        if minima.is_empty() {
            minima.push(best_k);
        }
        minima.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
        minima.truncate(REFINE_CANDIDATES);
        let g = |s: f64| f(self.boundary_point(s));
        for &k in &minima {
            let center = k as f64 * step;
            let (s, v) = golden_section(g, center - step, center + step, REFINE_ITERATIONS);
            if v < best.0 {
                best = (v, s.rem_euclid(1.0));
            }
        }
        if let SetShape::JordanPolygon(v) = &self.shape {
            let total = self.boundary_length();
            for (k, &vertex) in v.iter().enumerate() {
                let val = f(vertex);
                if val < best.0 {
                    best = (val, self.cumulative[k] / total);
                }
            }
        }
        (best.0, self.boundary_point(best.1))
    }

    /// Maximizes `f` over the boundary; see [`CompactSet::boundary_argmin`].
    pub fn boundary_argmax<F>(&self, f: F) -> (f64, ComplexPoint)
    where
        F: Fn(ComplexPoint) -> f64,
    {
        let (v, z) = self.boundary_argmin(|z| -f(z));
        (-v, z)
    }
}

/// Golden-section minimization on `[a, b]`; returns `(argmin, min)`.
pub(crate) fn golden_section<F: Fn(f64) -> f64>(
    f: F,
    mut a: f64,
    mut b: f64,
    iterations: usize,
) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iterations {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

fn check_points(points: &[ComplexPoint]) -> Result<()> {
    for &p in points {
        check_finite(p)?;
        if p.norm() > MAX_MODULUS {
            return Err(Error::InvalidSet(format!(
                "point {p} has modulus above 1 - 1e-9"
            )));
        }
    }
    Ok(())
}

fn signed_area(v: &[ComplexPoint]) -> f64 {
    let n = v.len();
    (0..n)
        .map(|k| {
            let (a, b) = (v[k], v[(k + 1) % n]);
            a.re * b.im - b.re * a.im
        })
        .sum::<f64>()
        / 2.0
}

fn cross(a: ComplexPoint, b: ComplexPoint) -> f64 {
    a.re * b.im - a.im * b.re
}

fn on_segment(p: ComplexPoint, a: ComplexPoint, b: ComplexPoint) -> bool {
    cross(b - a, p - a).abs() <= 1e-15
        && p.re >= a.re.min(b.re) - 1e-15
        && p.re <= a.re.max(b.re) + 1e-15
        && p.im >= a.im.min(b.im) - 1e-15
        && p.im <= a.im.max(b.im) + 1e-15
}

fn segments_intersect(a: ComplexPoint, b: ComplexPoint, c: ComplexPoint, d: ComplexPoint) -> bool {
    let d1 = cross(b - a, c - a);
    let d2 = cross(b - a, d - a);
    let d3 = cross(d - c, a - c);
    let d4 = cross(d - c, b - c);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d)
}

fn check_simple(v: &[ComplexPoint]) -> Result<()> {
    let n = v.len();
    for k in 0..n {
        if v[k] == v[(k + 1) % n] {
            return Err(Error::InvalidSet(format!("repeated vertex at index {k}")));
        }
    }
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        for j in i + 1..n {
            let (c, d) = (v[j], v[(j + 1) % n]);
            let adjacent_next = j == i + 1;
            let adjacent_wrap = i == 0 && j == n - 1;
            let hit = if adjacent_next {
                // shared vertex b == c; fold-back shows up as d on ab or a on cd
                on_segment(d, a, b) || on_segment(a, c, d)
            } else if adjacent_wrap {
                // shared vertex a == d
                on_segment(c, a, b) || on_segment(b, c, d)
            } else {
                segments_intersect(a, b, c, d)
            };
            if hit {
                return Err(Error::InvalidSet(format!(
                    "polygon edges {i} and {j} intersect"
                )));
            }
        }
    }
    Ok(())
}

fn winding_inside(v: &[ComplexPoint], z: ComplexPoint) -> bool {
    let n = v.len();
    let mut inside = false;
    for k in 0..n {
        let (a, b) = (v[k], v[(k + 1) % n]);
        if (a.im > z.im) != (b.im > z.im) {
            let x = a.re + (z.im - a.im) * (b.re - a.re) / (b.im - a.im);
            if z.re < x {
                inside = !inside;
            }
        }
    }
    inside
}

/// Nearest boundary point of a polygon and its distance; edges are scanned
/// in parameter order so the first minimizer wins ties.
fn polygon_nearest(v: &[ComplexPoint], z: ComplexPoint) -> (ComplexPoint, f64) {
    let n = v.len();
    let mut best = v[0];
    let mut best_d = f64::INFINITY;
    for k in 0..n {
        let (a, b) = (v[k], v[(k + 1) % n]);
        let ab = b - a;
        let t = (((z - a).re * ab.re + (z - a).im * ab.im) / ab.norm_sqr()).clamp(0.0, 1.0);
        let p = a + ab * t;
        let d = (z - p).norm();
        if d < best_d {
            best = p;
            best_d = d;
        }
    }
    (best, best_d)
}

/// Structured description of a set as it appears in configuration files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetSpec {
    pub kind: SetKind,
    #[serde(default)]
    pub r: Option<f64>,
    #[serde(default)]
    pub vertices: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    pub points: Option<Vec<[f64; 2]>>,
    #[serde(default = "default_resolution")]
    pub boundary_resolution: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetKind {
    ConcentricDisk,
    PointCloud,
    JordanPolygon,
}

fn default_resolution() -> usize {
    256
}

impl SetSpec {
    pub fn build(&self) -> Result<CompactSet> {
        let to_points = |list: &Vec<[f64; 2]>| -> Vec<ComplexPoint> {
            list.iter().map(|&[x, y]| ComplexPoint::new(x, y)).collect()
        };
        match self.kind {
            SetKind::ConcentricDisk => {
                let r = self
                    .r
                    .ok_or_else(|| Error::InvalidSet("concentric_disk requires `r`".into()))?;
                CompactSet::concentric_disk(r, self.boundary_resolution)
            }
            SetKind::PointCloud => {
                let p = self
                    .points
                    .as_ref()
                    .ok_or_else(|| Error::InvalidSet("point_cloud requires `points`".into()))?;
                CompactSet::point_cloud(to_points(p), self.boundary_resolution)
            }
            SetKind::JordanPolygon => {
                let v = self.vertices.as_ref().ok_or_else(|| {
                    Error::InvalidSet("jordan_polygon requires `vertices`".into())
                })?;
                CompactSet::jordan_polygon(to_points(v), self.boundary_resolution)
            }
        }
    }
}
