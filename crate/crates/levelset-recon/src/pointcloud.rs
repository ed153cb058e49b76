//! Data sets: loading, synthetic shapes, noise.
//!
//! A [`PointSet`] holds the data set `S` that the level-set evolution is
//! attracted to. Synthetic generators produce the shapes used by the
//! bundled experiments (a heart-shaped curve, a heart-shaped surface and
//! two intersecting rotated cas data sets); real data is read from plain
//! whitespace-separated text, one point per line.

use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use nalgebra::{Rotation3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::Domain;
use crate::{extract, Point};

/// An ordered set of N points in R^D.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet<const D: usize> {
    points: Vec<Point<D>>,
}

impl<const D: usize> PointSet<D> {
    /// Wraps a list of points, checking that every coordinate is finite and
    /// that there are at least D + 1 points (required downstream by the
    /// polynomial block of the RBF system).
    pub fn new(points: Vec<Point<D>>) -> Result<Self> {
        if points.len() < D + 1 {
            return Err(Error::InvalidPointSet(format!(
                "need at least {} points in {}D, got {}",
                D + 1,
                D,
                points.len()
            )));
        }
        for (i, p) in points.iter().enumerate() {
            if !p.iter().all(|v| v.is_finite()) {
                return Err(Error::InvalidPointSet(format!(
                    "point {i} has a non-finite coordinate"
                )));
            }
        }
        Ok(Self { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point<D>] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point<D>> {
        self.points.iter()
    }

    /// Axis-aligned bounding box of the points.
    pub fn bounding_box(&self) -> (Point<D>, Point<D>) {
        let mut lo = self.points[0];
        let mut hi = self.points[0];
        for p in &self.points {
            for a in 0..D {
                lo[a] = lo[a].min(p[a]);
                hi[a] = hi[a].max(p[a]);
            }
        }
        (lo, hi)
    }

    pub fn centroid(&self) -> Point<D> {
        let mut c = Point::<D>::zeros();
        for p in &self.points {
            c += p;
        }
        c / self.points.len() as f64
    }

    /// Reads a point set from a whitespace-separated text file.
    ///
    /// Empty lines and lines starting with `#` are skipped. Each remaining
    /// line must hold at least D numbers; extra columns are ignored.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut points = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut coords = [0.0f64; D];
            let mut fields = line.split_whitespace();
            for (a, slot) in coords.iter_mut().enumerate() {
                let field = fields.next().ok_or_else(|| Error::Parse {
                    path: path.to_path_buf(),
                    line: lineno + 1,
                    message: format!("expected {D} numeric fields, found {a}"),
                })?;
                let v: f64 = field.parse().map_err(|_| Error::Parse {
                    path: path.to_path_buf(),
                    line: lineno + 1,
                    message: format!("`{field}` is not a number"),
                })?;
                if !v.is_finite() {
                    return Err(Error::Parse {
                        path: path.to_path_buf(),
                        line: lineno + 1,
                        message: format!("non-finite value `{field}`"),
                    });
                }
                *slot = v;
            }
            points.push(Point::<D>::from_column_slice(&coords));
        }
        Self::new(points)
    }

    /// Writes the points in the same format [`PointSet::load`] reads.
    ///
    /// Coordinates are printed with shortest round-trip formatting, so
    /// `load(save(ps))` reproduces the set bit for bit.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut out = String::new();
        for p in &self.points {
            for a in 0..D {
                if a > 0 {
                    out.push(' ');
                }
                out.push_str(&format!("{}", p[a]));
            }
            out.push('\n');
        }
        let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
        f.write_all(out.as_bytes()).map_err(|e| Error::io(path, e))
    }

    /// Keeps every `stride`-th point (indices 0, stride, 2·stride, …).
    pub fn stride_subsample(&self, stride: usize) -> Result<Self> {
        assert!(stride >= 1, "stride must be positive");
        Self::new(self.points.iter().step_by(stride).copied().collect())
    }
}

impl<'a, const D: usize> IntoIterator for &'a PointSet<D> {
    type Item = &'a Point<D>;
    type IntoIter = std::slice::Iter<'a, Point<D>>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// Shifts every coordinate of every point by an independent uniform draw
/// from `[-eta, eta]`. Deterministic for a fixed seed; `eta = 0` is the
/// identity.
pub fn perturb<const D: usize>(ps: &PointSet<D>, eta: f64, seed: u64) -> PointSet<D> {
    assert!(eta >= 0.0, "noise amplitude must be nonnegative");
    if eta == 0.0 {
        return ps.clone();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = ps
        .iter()
        .map(|p| {
            let mut q = *p;
            for a in 0..D {
                q[a] += rng.random_range(-eta..=eta);
            }
            q
        })
        .collect();
    PointSet { points }
}

/// Names of the built-in synthetic shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Heart2d,
    Heart3d,
    Cubes3d,
}

impl Shape {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "heart2d" => Ok(Shape::Heart2d),
            "heart3d" => Ok(Shape::Heart3d),
            "cubes3d" => Ok(Shape::Cubes3d),
            other => Err(Error::UnknownShape(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Shape::Heart2d => "heart2d",
            Shape::Heart3d => "heart3d",
            Shape::Cubes3d => "cubes3d",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Shape::Heart2d => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

// ---------------------------------------------------------------------------
// 2D heart curve
// ---------------------------------------------------------------------------

/// Scale applied to the raw parametric heart curve (x range [-16, 16]).
pub const HEART2D_SCALE: f64 = 1.5 / 16.0;
/// Vertical center of the raw curve's bounding box (y range [-17, 11.9233]).
pub const HEART2D_CENTER_Y: f64 = -2.538_373_792_351_147_4;

/// Point of the heart-shaped curve at parameter `t`, already scaled to fit
/// inside `[-1.5, 1.5]^2` and centered at the origin.
pub fn heart2d_point(t: f64) -> Point<2> {
    let x = 16.0 * t.sin().powi(3);
    let y = 13.0 * t.cos() - 5.0 * (2.0 * t).cos() - 2.0 * (3.0 * t).cos() - (4.0 * t).cos();
    Point::<2>::new(HEART2D_SCALE * x, HEART2D_SCALE * (y - HEART2D_CENTER_Y))
}

/// `count` points uniformly spaced in parameter along the heart curve, in
/// curve order.
pub fn heart2d_points(count: usize) -> Result<PointSet<2>> {
    check_count(count)?;
    let pts = (0..count)
        .map(|k| heart2d_point(2.0 * std::f64::consts::PI * k as f64 / count as f64))
        .collect();
    PointSet::new(pts)
}

// ---------------------------------------------------------------------------
// 3D heart surface
// ---------------------------------------------------------------------------

/// Scale and center mapping the raw implicit surface into `[-1.5, 1.5]^3`.
pub const HEART3D_SCALE: f64 = 1.32;
pub const HEART3D_CENTER_Z: f64 = 0.12;

fn heart3d_raw(p: &Point<3>) -> f64 {
    let (x, y, z) = (p[0], p[1], p[2]);
    let a = x * x + 2.25 * y * y + z * z - 1.0;
    a * a * a - x * x * z * z * z - 0.1125 * y * y * z * z * z
}

fn heart3d_raw_gradient(p: &Point<3>) -> Point<3> {
    let (x, y, z) = (p[0], p[1], p[2]);
    let a = x * x + 2.25 * y * y + z * z - 1.0;
    let a2 = a * a;
    let z2 = z * z;
    let z3 = z2 * z;
    Point::<3>::new(
        6.0 * x * a2 - 2.0 * x * z3,
        13.5 * y * a2 - 0.225 * y * z3,
        6.0 * z * a2 - 3.0 * x * x * z2 - 0.3375 * y * y * z2,
    )
}

/// Implicit equation of the (scaled) heart surface: zero on the surface.
pub fn heart3d_implicit(p: &Point<3>) -> f64 {
    let raw = Point::<3>::new(
        p[0] / HEART3D_SCALE,
        p[1] / HEART3D_SCALE,
        p[2] / HEART3D_SCALE + HEART3D_CENTER_Z,
    );
    heart3d_raw(&raw)
}

/// `count` points approximately uniform by area on the heart surface.
///
/// A coarse triangulation of the implicit surface is sampled with
/// area-weighted triangle selection, and every sample is projected back
/// onto the exact zero set by a damped Newton iteration.
pub fn heart3d_points(count: usize, seed: u64) -> Result<PointSet<3>> {
    check_count(count)?;
    let raw_domain = Domain::new(
        Point::<3>::new(-1.3, -0.9, -1.15),
        Point::<3>::new(1.3, 0.9, 1.4),
    );
    let mesh = extract::isosurface3d_fn(&heart3d_raw, &raw_domain, 72);
    let cum_areas = mesh.cumulative_areas();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = Vec::with_capacity(count);
    while pts.len() < count {
        let raw = sample_triangle(&mesh, &cum_areas, &mut rng);
        if let Some(p) = newton_project(raw, heart3d_raw, heart3d_raw_gradient) {
            pts.push(Point::<3>::new(
                HEART3D_SCALE * p[0],
                HEART3D_SCALE * p[1],
                HEART3D_SCALE * (p[2] - HEART3D_CENTER_Z),
            ));
        }
    }
    PointSet::new(pts)
}

fn sample_triangle(mesh: &extract::TriMesh, rng: &mut ChaCha8Rng) -> Point<3> {
    // area-weighted triangle pick, uniform barycentric point
    let areas: &Vec<f64> = mesh.cumulative_areas();
    let total = *areas.last().expect("non-empty mesh");
    let r = rng.random_range(0.0..total);
    let t = areas.partition_point(|&a| a <= r).min(mesh.triangles.len() - 1);
    let [i, j, k] = mesh.triangles[t];
    let (a, b, c) = (
        mesh.vertices[i as usize],
        mesh.vertices[j as usize],
        mesh.vertices[k as usize],
    );
    let mut u: f64 = rng.random_range(0.0..1.0);
    let mut v: f64 = rng.random_range(0.0..1.0);
    if u + v > 1.0 {
        u = 1.0 - u;
        v = 1.0 - v;
    }
    a + u * (b - a) + v * (c - a)
}

fn newton_project<F, G>(mut p: Point<3>, f: F, grad: G) -> Option<Point<3>>
where
    F: Fn(&Point<3>) -> f64,
    G: Fn(&Point<3>) -> Point<3>,
{
    for _ in 0..50 {
        let v = f(&p);
        if v.abs() <= 1e-13 {
            return Some(p);
        }
        let g = grad(&p);
        let g2 = g.norm_squared();
        if g2 < 1e-12 {
            return None;
        }
        let mut step = g * (v / g2);
        let n = step.norm();
        if n > 0.1 {
            step *= 0.1 / n;
        }
        p -= step;
    }
    None
}

// ---------------------------------------------------------------------------
// Two intersecting cubes
// ---------------------------------------------------------------------------

struct RotatedCube {
    center: Point<3>,
    half: f64,
    rot: Rotation3<f64>,
}

impl RotatedCube {
    fn sdf(&self, p: &Point<3>) -> f64 {
        let q = self.rot.inverse() * (p - self.center);
        let d = q.map(|v| v.abs() - self.half);
        let outside = d.map(|v| v.max(0.0)).norm();
        let inside = d.max().min(0.0);
        outside + inside
    }

    /// Point on face `face` (0..6 = ±x, ±y, ±z) at local in-face coordinates.
    fn face_point(&self, face: usize, s: f64, t: f64) -> Point<3> {
        let axis = face / 2;
        let sign = if face % 2 == 0 { 1.0 } else { -1.0 };
        let mut local = Vector3::zeros();
        local[axis] = sign * self.half;
        local[(axis + 1) % 3] = s;
        local[(axis + 2) % 3] = t;
        self.rot * local + self.center
    }
}

fn cubes3d_pair() -> (RotatedCube, RotatedCube) {
    let a = RotatedCube {
        center: Point::<3>::new(-0.4, -0.1, -0.15),
        half: 0.7,
        rot: Rotation3::from_axis_angle(&Vector3::z_axis(), 20f64.to_radians()),
    };
    let b = RotatedCube {
        center: Point::<3>::new(0.35, 0.15, 0.2),
        half: 0.6,
        rot: Rotation3::from_axis_angle(&Vector3::y_axis(), 40f64.to_radians()),
    };
    (a, b)
}

/// Unsigned distance of `p` to the boundary of the union of the two cubes;
/// zero for points produced by [`cubes3d_points`].
pub fn cubes3d_boundary_distance(p: &Point<3>) -> f64 {
    let (a, b) = cubes3d_pair();
    a.sdf(p).min(b.sdf(p)).abs()
}

/// `count` points uniform by area on the boundary of two intersecting
/// rotated cubes (axes not aligned with the grid).
pub fn cubes3d_points(count: usize, seed: u64) -> Result<PointSet<3>> {
    check_count(count)?;
    let (a, b) = cubes3d_pair();
    let area_a = 6.0 * (2.0 * a.half) * (2.0 * a.half);
    let area_b = 6.0 * (2.0 * b.half) * (2.0 * b.half);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = Vec::with_capacity(count);
    while pts.len() < count {
        let pick_a = rng.random_range(0.0..area_a + area_b) < area_a;
        let (cube, other) = if pick_a { (&a, &b) } else { (&b, &a) };
        let face = rng.random_range(0..6usize);
        let s = rng.random_range(-cube.half..=cube.half);
        let t = rng.random_range(-cube.half..=cube.half);
        let p = cube.face_point(face, s, t);
        // keep only the part of the face on the boundary of the union
        if other.sdf(&p) > 0.0 {
            pts.push(p);
        }
    }
    PointSet::new(pts)
}

fn check_count(count: usize) -> Result<()> {
    if count < 4 {
        Err(Error::InvalidPointSet(format!(
            "shape sampling needs at least 4 points, got {count}"
        )))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn load_basic() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pts.txt");
        fs::write(&path, "0 0\n1 0\n0 1\n").unwrap();
        let ps = PointSet::<2>::load(&path).unwrap();
        assert_eq!(ps.len(), 3);
        assert_eq!(ps.points()[1], Point::<2>::new(1.0, 0.0));
    }

    #[test]
    fn load_skips_comments_and_extra_columns() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pts.txt");
        fs::write(&path, "# header\n1 2 3 99\n\n4 5 6\n0 0 0\n7 8 9\n").unwrap();
        let ps = PointSet::<3>::load(&path).unwrap();
        assert_eq!(ps.len(), 4);
        assert_eq!(ps.points()[0], Point::<3>::new(1.0, 2.0, 3.0));
    }

    #[test]
    fn load_reports_short_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pts.txt");
        fs::write(&path, "0 0 0\n1 1\n2 2 2\n3 3 3\n").unwrap();
        let err = PointSet::<3>::load(&path).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn load_rejects_non_finite() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pts.txt");
        fs::write(&path, "0 0\n1 nan\n2 2\n").unwrap();
        assert!(matches!(
            PointSet::<2>::load(&path),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn save_load_roundtrip_is_exact() {
        let ps = heart2d_points(24).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("heart.txt");
        ps.save(&path).unwrap();
        let back = PointSet::<2>::load(&path).unwrap();
        assert_eq!(ps, back);
    }

    #[test]
    fn heart2d_points_lie_on_the_curve() {
        // independent re-evaluation of the parametrization
        let n = 4;
        let ps = heart2d_points(n).unwrap();
        for (k, p) in ps.iter().enumerate() {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            let x = 16.0 * t.sin().powi(3);
            let y = 13.0 * t.cos()
                - 5.0 * (2.0 * t).cos()
                - 2.0 * (3.0 * t).cos()
                - (4.0 * t).cos();
            assert_abs_diff_eq!(p[0], HEART2D_SCALE * x, epsilon = 1e-12);
            assert_abs_diff_eq!(p[1], HEART2D_SCALE * (y - HEART2D_CENTER_Y), epsilon = 1e-12);
        }
    }

    #[test]
    fn heart2d_fits_domain() {
        let ps = heart2d_points(500).unwrap();
        for p in &ps {
            assert!(p[0].abs() <= 1.5 + 1e-12 && p[1].abs() <= 1.5 + 1e-12);
        }
    }

    #[test]
    fn heart3d_points_satisfy_implicit_equation() {
        let ps = heart3d_points(64, 3).unwrap();
        for p in &ps {
            assert!(
                heart3d_implicit(p).abs() <= 1e-10,
                "off-surface point {p:?}: F = {}",
                heart3d_implicit(p)
            );
            assert!(p.amax() <= 1.5);
        }
    }

    #[test]
    fn cubes3d_points_on_union_boundary() {
        let ps = cubes3d_points(200, 5).unwrap();
        let (a, b) = cubes3d_pair();
        for p in &ps {
            assert!(cubes3d_boundary_distance(p) <= 1e-10);
            // not strictly inside either cube
            assert!(a.sdf(p) >= -1e-10 && b.sdf(p) >= -1e-10);
        }
    }

    #[test]
    fn perturb_zero_is_identity() {
        let ps = heart2d_points(24).unwrap();
        assert_eq!(perturb(&ps, 0.0, 123), ps);
    }

    #[test]
    fn perturb_is_bounded_and_deterministic() {
        let ps = heart3d_points(32, 9).unwrap();
        let q1 = perturb(&ps, 0.05, 42);
        let q2 = perturb(&ps, 0.05, 42);
        assert_eq!(q1, q2);
        for (p, q) in ps.iter().zip(q1.iter()) {
            for a in 0..3 {
                assert!((p[a] - q[a]).abs() <= 0.05);
            }
        }
        let q3 = perturb(&ps, 0.05, 43);
        assert_ne!(q1, q3);
    }

    #[test]
    fn unknown_shape_name() {
        assert!(matches!(
            Shape::from_name("torus"),
            Err(Error::UnknownShape(_))
        ));
    }

    #[test]
    fn stride_subsample_keeps_every_fourth() {
        let ps = heart3d_points(40, 1).unwrap();
        let sub = ps.stride_subsample(4).unwrap();
        assert_eq!(sub.len(), 10);
        assert_eq!(sub.points()[1], ps.points()[4]);
    }
}
