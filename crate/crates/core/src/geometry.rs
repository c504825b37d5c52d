//! Piecewise-smooth curves, surfaces and box regions in R^3.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::algebra::Cplx;
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::frame::{Frame, Point3, Vec3, Xi};
use crate::holo::{Curve2, Segment2};

const JOIN_TOL: f64 = 1e-12;

fn joins(a: Point3, b: Point3) -> bool {
    (a - b).norm() <= JOIN_TOL * a.norm().max(b.norm()).max(1.0)
}

/// A smooth map `[0,1] -> R^3` with its derivative.
pub trait Segment3: Send + Sync + fmt::Debug {
    fn point(&self, t: f64) -> Point3;
    fn tangent(&self, t: f64) -> Vec3;
    fn describe(&self) -> String;
}

#[derive(Debug, Clone, Copy)]
pub struct LineSegment {
    pub from: Point3,
    pub to: Point3,
}

impl Segment3 for LineSegment {
    fn point(&self, t: f64) -> Point3 {
        self.from + (self.to - self.from) * t
    }
    fn tangent(&self, _t: f64) -> Vec3 {
        self.to - self.from
    }
    fn describe(&self) -> String {
        format!("line {} -> {}", self.from, self.to)
    }
}

/// `center + u cos(th) + v sin(th) + drift * t` with
/// `th = theta0 + t (theta1 - theta0)`. Circles, ellipses, arcs and helices.
#[derive(Debug, Clone, Copy)]
pub struct ArcSegment {
    pub center: Point3,
    pub u: Vec3,
    pub v: Vec3,
    pub theta0: f64,
    pub theta1: f64,
    pub drift: Vec3,
}

impl Segment3 for ArcSegment {
    fn point(&self, t: f64) -> Point3 {
        let th = self.theta0 + t * (self.theta1 - self.theta0);
        self.center + self.u * th.cos() + self.v * th.sin() + self.drift * t
    }
    fn tangent(&self, t: f64) -> Vec3 {
        let span = self.theta1 - self.theta0;
        let th = self.theta0 + t * span;
        (self.u * (-th.sin()) + self.v * th.cos()) * span + self.drift
    }
    fn describe(&self) -> String {
        format!(
            "arc center={} u={} v={} theta=[{}, {}] drift={}",
            self.center, self.u, self.v, self.theta0, self.theta1, self.drift
        )
    }
}

/// Each coordinate `c_k + A_k sin(f_k th + phi_k)` for `th = 2 pi t`.
/// Closed whenever the frequencies are integers.
#[derive(Debug, Clone, Copy)]
pub struct LissajousSegment {
    pub center: Point3,
    pub amplitude: Vec3,
    pub frequency: [f64; 3],
    pub phase: [f64; 3],
}

impl Segment3 for LissajousSegment {
    fn point(&self, t: f64) -> Point3 {
        let th = 2.0 * PI * t;
        let a = self.amplitude.to_array();
        let c: [f64; 3] = std::array::from_fn(|k| a[k] * (self.frequency[k] * th + self.phase[k]).sin());
        self.center + Point3::from(c)
    }
    fn tangent(&self, t: f64) -> Vec3 {
        let th = 2.0 * PI * t;
        let a = self.amplitude.to_array();
        Point3::from(std::array::from_fn(|k| {
            a[k] * self.frequency[k] * 2.0 * PI * (self.frequency[k] * th + self.phase[k]).cos()
        }))
    }
    fn describe(&self) -> String {
        format!(
            "lissajous center={} amplitude={} frequency={:?} phase={:?}",
            self.center, self.amplitude, self.frequency, self.phase
        )
    }
}

/// Coordinates given by expressions in `t` over `[t0, t1]`; the real part
/// of each expression is used.
#[derive(Debug, Clone)]
pub struct ExprSegment {
    coords: [Expr; 3],
    derivs: [Expr; 3],
    t0: f64,
    t1: f64,
}

pub const T_VAR: &[&str] = &["t"];

impl ExprSegment {
    pub fn parse(x: &str, y: &str, z: &str, t0: f64, t1: f64) -> Result<Self> {
        let coords = [Expr::parse(x, T_VAR)?, Expr::parse(y, T_VAR)?, Expr::parse(z, T_VAR)?];
        let derivs = [coords[0].deriv(0), coords[1].deriv(0), coords[2].deriv(0)];
        let seg = ExprSegment { coords, derivs, t0, t1 };
        for i in 0..=8 {
            let p = seg.try_point(i as f64 / 8.0)?;
            if !p.is_finite() {
                return Err(Error::InvalidGeometry("parametric curve is not finite".into()));
            }
        }
        Ok(seg)
    }

    fn try_point(&self, t: f64) -> Result<Point3> {
        let s = [Cplx::new(self.t0 + t * (self.t1 - self.t0), 0.0)];
        Ok(Point3::new(
            self.coords[0].eval(&s)?.re,
            self.coords[1].eval(&s)?.re,
            self.coords[2].eval(&s)?.re,
        ))
    }
}

impl Segment3 for ExprSegment {
    fn point(&self, t: f64) -> Point3 {
        self.try_point(t).unwrap_or(Point3::new(f64::NAN, f64::NAN, f64::NAN))
    }
    fn tangent(&self, t: f64) -> Vec3 {
        let s = [Cplx::new(self.t0 + t * (self.t1 - self.t0), 0.0)];
        let span = self.t1 - self.t0;
        let d = |k: usize| self.derivs[k].eval(&s).map(|v| v.re * span).unwrap_or(f64::NAN);
        Vec3::new(d(0), d(1), d(2))
    }
    fn describe(&self) -> String {
        format!(
            "parametric ({}, {}, {}) t=[{}, {}]",
            self.coords[0], self.coords[1], self.coords[2], self.t0, self.t1
        )
    }
}

#[derive(Debug)]
struct Reversed3(Arc<dyn Segment3>);

impl Segment3 for Reversed3 {
    fn point(&self, t: f64) -> Point3 {
        self.0.point(1.0 - t)
    }
    fn tangent(&self, t: f64) -> Vec3 {
        -self.0.tangent(1.0 - t)
    }
    fn describe(&self) -> String {
        format!("reversed({})", self.0.describe())
    }
}

/// The restriction of a segment to `[a, b]`, reparametrised to `[0, 1]`.
#[derive(Debug)]
struct SubSegment {
    inner: Arc<dyn Segment3>,
    a: f64,
    b: f64,
}

impl Segment3 for SubSegment {
    fn point(&self, t: f64) -> Point3 {
        self.inner.point(self.a + t * (self.b - self.a))
    }
    fn tangent(&self, t: f64) -> Vec3 {
        self.inner.tangent(self.a + t * (self.b - self.a)) * (self.b - self.a)
    }
    fn describe(&self) -> String {
        format!("{}[{}, {}]", self.inner.describe(), self.a, self.b)
    }
}

/// A piecewise-smooth curve in R^3.
#[derive(Debug, Clone)]
pub struct Curve3 {
    segments: Vec<Arc<dyn Segment3>>,
    closed: bool,
}

impl Curve3 {
    pub fn new(segments: Vec<Arc<dyn Segment3>>, closed: bool) -> Result<Curve3> {
        if segments.is_empty() {
            return Err(Error::InvalidGeometry("curve has no segments".into()));
        }
        for (i, w) in segments.windows(2).enumerate() {
            if !joins(w[0].point(1.0), w[1].point(0.0)) {
                return Err(Error::InvalidGeometry(format!(
                    "gap between segments {i} and {}",
                    i + 1
                )));
            }
        }
        if closed && !joins(segments[segments.len() - 1].point(1.0), segments[0].point(0.0)) {
            return Err(Error::NotClosed);
        }
        Ok(Curve3 { segments, closed })
    }

    pub fn single(segment: impl Segment3 + 'static, closed: bool) -> Result<Curve3> {
        Curve3::new(vec![Arc::new(segment)], closed)
    }

    /// Closed ellipse `center + u cos th + v sin th`, counter-clockwise in
    /// the `(u, v)` orientation. A circle when `u`, `v` are orthogonal and
    /// of equal length.
    pub fn ellipse(center: Point3, u: Vec3, v: Vec3) -> Curve3 {
        let seg = ArcSegment {
            center,
            u,
            v,
            theta0: 0.0,
            theta1: 2.0 * PI,
            drift: Vec3::ORIGIN,
        };
        Curve3 {
            segments: vec![Arc::new(seg)],
            closed: true,
        }
    }

    /// Circle of `radius` about `center`, positively oriented with respect
    /// to `normal`.
    pub fn circle(center: Point3, normal: Vec3, radius: f64) -> Result<Curve3> {
        let n = normal * (1.0 / normal.norm());
        if !n.is_finite() || radius <= 0.0 {
            return Err(Error::InvalidGeometry(
                "circle needs a nonzero normal and positive radius".into(),
            ));
        }
        let helper = if n.x.abs() < 0.9 {
            Vec3::new(1.0, 0.0, 0.0)
        } else {
            Vec3::new(0.0, 1.0, 0.0)
        };
        let u = {
            let w = helper - n * helper.dot(n);
            w * (radius / w.norm())
        };
        let v = n.cross(u);
        Ok(Curve3::ellipse(center, u, v))
    }

    pub fn polyline(points: &[Point3], closed: bool) -> Result<Curve3> {
        if points.len() < 2 {
            return Err(Error::InvalidGeometry("polyline needs at least two points".into()));
        }
        let mut segs: Vec<Arc<dyn Segment3>> = points
            .windows(2)
            .map(|w| Arc::new(LineSegment { from: w[0], to: w[1] }) as Arc<dyn Segment3>)
            .collect();
        if closed && !joins(points[0], points[points.len() - 1]) {
            segs.push(Arc::new(LineSegment {
                from: points[points.len() - 1],
                to: points[0],
            }));
        }
        Curve3::new(segs, closed)
    }

    pub fn segments(&self) -> &[Arc<dyn Segment3>] {
        &self.segments
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn start(&self) -> Point3 {
        self.segments[0].point(0.0)
    }

    pub fn end(&self) -> Point3 {
        self.segments[self.segments.len() - 1].point(1.0)
    }

    pub fn reversed(&self) -> Curve3 {
        let segments = self
            .segments
            .iter()
            .rev()
            .map(|s| Arc::new(Reversed3(s.clone())) as Arc<dyn Segment3>)
            .collect();
        Curve3 {
            segments,
            closed: self.closed,
        }
    }

    /// Same curve with every segment split at `t = frac`.
    pub fn split(&self, frac: f64) -> Curve3 {
        let segments = self
            .segments
            .iter()
            .flat_map(|s| {
                [
                    Arc::new(SubSegment {
                        inner: s.clone(),
                        a: 0.0,
                        b: frac,
                    }) as Arc<dyn Segment3>,
                    Arc::new(SubSegment {
                        inner: s.clone(),
                        a: frac,
                        b: 1.0,
                    }) as Arc<dyn Segment3>,
                ]
            })
            .collect();
        Curve3 {
            segments,
            closed: self.closed,
        }
    }

    /// Pieces `[0, frac]` and `[frac, 1]` of each segment as two open curves.
    pub fn halves(&self, frac: f64) -> (Curve3, Curve3) {
        let split = self.split(frac);
        let first: Vec<_> = split.segments.iter().step_by(2).cloned().collect();
        let second: Vec<_> = split.segments.iter().skip(1).step_by(2).cloned().collect();
        assert_eq!(self.segments.len(), 1, "halves() is defined for single-segment curves");
        (
            Curve3 {
                segments: first,
                closed: false,
            },
            Curve3 {
                segments: second,
                closed: false,
            },
        )
    }

    pub fn concat(&self, other: &Curve3) -> Result<Curve3> {
        let mut segments = self.segments.clone();
        segments.extend(other.segments.iter().cloned());
        let closed = joins(segments[segments.len() - 1].point(1.0), segments[0].point(0.0));
        Curve3::new(segments, closed)
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.segments.iter().map(|s| s.describe()).collect();
        format!(
            "{}curve[{}]",
            if self.closed { "closed " } else { "" },
            parts.join("; ")
        )
    }
}

#[derive(Debug)]
struct Projected {
    inner: Arc<dyn Segment3>,
    frame: Frame,
    k: Xi,
}

impl Segment2 for Projected {
    fn point(&self, t: f64) -> Cplx {
        self.frame.xi(self.k, self.inner.point(t))
    }
    fn deriv(&self, t: f64) -> Cplx {
        // xi_k is real-linear, so the chain rule is xi_k applied to the tangent
        self.frame.xi(self.k, self.inner.tangent(t))
    }
}

/// Image `f_k(c)` of a curve in the `xi_k` plane.
pub fn project_curve(c: &Curve3, frame: &Frame, k: Xi) -> Curve2 {
    let segs = c
        .segments
        .iter()
        .map(|s| {
            Arc::new(Projected {
                inner: s.clone(),
                frame: *frame,
                k,
            }) as Arc<dyn Segment2>
        })
        .collect();
    Curve2::new(segs, c.closed).expect("projection of a valid curve is valid")
}

/// A smooth map `[0,1]^2 -> R^3` with partial derivatives.
pub trait Patch: Send + Sync + fmt::Debug {
    fn point(&self, u: f64, v: f64) -> Point3;
    fn partials(&self, u: f64, v: f64) -> (Vec3, Vec3);
    fn describe(&self) -> String;
}

/// Bilinear interpolation of four corners; flat when they are coplanar.
#[derive(Debug, Clone, Copy)]
pub struct BilinearPatch {
    pub p00: Point3,
    pub p10: Point3,
    pub p01: Point3,
    pub p11: Point3,
}

impl BilinearPatch {
    /// Parallelogram `origin + u du + v dv`.
    pub fn parallelogram(origin: Point3, du: Vec3, dv: Vec3) -> Self {
        BilinearPatch {
            p00: origin,
            p10: origin + du,
            p01: origin + dv,
            p11: origin + du + dv,
        }
    }
}

impl Patch for BilinearPatch {
    fn point(&self, u: f64, v: f64) -> Point3 {
        self.p00 * ((1.0 - u) * (1.0 - v))
            + self.p10 * (u * (1.0 - v))
            + self.p01 * ((1.0 - u) * v)
            + self.p11 * (u * v)
    }
    fn partials(&self, u: f64, v: f64) -> (Vec3, Vec3) {
        let du = (self.p10 - self.p00) * (1.0 - v) + (self.p11 - self.p01) * v;
        let dv = (self.p01 - self.p00) * (1.0 - u) + (self.p11 - self.p10) * u;
        (du, dv)
    }
    fn describe(&self) -> String {
        format!("bilinear {} {} {} {}", self.p00, self.p10, self.p01, self.p11)
    }
}

/// Disk `center + r (cos th e1 + sin th e2)` with `r = radius u`,
/// `th = 2 pi v`. The patch boundary runs out along a radius, around the
/// rim, and back; the radial legs cancel.
#[derive(Debug, Clone, Copy)]
pub struct DiskPatch {
    pub center: Point3,
    pub e1: Vec3,
    pub e2: Vec3,
    pub radius: f64,
}

impl Patch for DiskPatch {
    fn point(&self, u: f64, v: f64) -> Point3 {
        let th = 2.0 * PI * v;
        self.center + (self.e1 * th.cos() + self.e2 * th.sin()) * (self.radius * u)
    }
    fn partials(&self, u: f64, v: f64) -> (Vec3, Vec3) {
        let th = 2.0 * PI * v;
        let radial = (self.e1 * th.cos() + self.e2 * th.sin()) * self.radius;
        let angular = (self.e1 * (-th.sin()) + self.e2 * th.cos()) * (self.radius * u * 2.0 * PI);
        (radial, angular)
    }
    fn describe(&self) -> String {
        format!(
            "disk center={} e1={} e2={} radius={}",
            self.center, self.e1, self.e2, self.radius
        )
    }
}

/// Edge `k` (0..4) of a patch, running counter-clockwise in the `(u,v)`
/// square: `(t,0)`, `(1,t)`, `(1-t,1)`, `(0,1-t)`.
#[derive(Debug)]
struct PatchEdge {
    patch: Arc<dyn Patch>,
    edge: u8,
}

impl PatchEdge {
    fn uv(&self, t: f64) -> ((f64, f64), (f64, f64)) {
        match self.edge {
            0 => ((t, 0.0), (1.0, 0.0)),
            1 => ((1.0, t), (0.0, 1.0)),
            2 => ((1.0 - t, 1.0), (-1.0, 0.0)),
            _ => ((0.0, 1.0 - t), (0.0, -1.0)),
        }
    }
}

impl Segment3 for PatchEdge {
    fn point(&self, t: f64) -> Point3 {
        let ((u, v), _) = self.uv(t);
        self.patch.point(u, v)
    }
    fn tangent(&self, t: f64) -> Vec3 {
        let ((u, v), (du, dv)) = self.uv(t);
        let (pu, pv) = self.patch.partials(u, v);
        pu * du + pv * dv
    }
    fn describe(&self) -> String {
        format!("edge {} of {}", self.edge, self.patch.describe())
    }
}

/// A patch with an orientation sign applied to its area vector.
#[derive(Debug, Clone)]
pub struct OrientedPatch {
    pub patch: Arc<dyn Patch>,
    pub positive: bool,
}

impl OrientedPatch {
    /// Oriented area vector `±(r_u x r_v) = (dydz, dzdx, dxdy)` per unit `du dv`.
    pub fn area_vector(&self, u: f64, v: f64) -> Vec3 {
        let (pu, pv) = self.patch.partials(u, v);
        let n = pu.cross(pv);
        if self.positive {
            n
        } else {
            -n
        }
    }
}

/// A piecewise-smooth oriented surface.
#[derive(Debug, Clone)]
pub struct Surface3 {
    patches: Vec<OrientedPatch>,
}

impl Surface3 {
    /// Spot-checks that every patch has a rank-2 Jacobian on a 5x5 grid of
    /// interior points.
    pub fn new(patches: Vec<OrientedPatch>) -> Result<Surface3> {
        if patches.is_empty() {
            return Err(Error::InvalidGeometry("surface has no patches".into()));
        }
        for (i, p) in patches.iter().enumerate() {
            let scale = {
                let (pu, pv) = p.patch.partials(0.5, 0.5);
                pu.norm() * pv.norm()
            };
            for a in 0..5 {
                for b in 0..5 {
                    let (u, v) = ((a as f64 + 0.5) / 5.0, (b as f64 + 0.5) / 5.0);
                    let n = p.area_vector(u, v).norm();
                    if !n.is_finite() || n <= 1e-12 * scale.max(1e-300) || scale == 0.0 {
                        return Err(Error::InvalidGeometry(format!(
                            "patch {i} is degenerate near ({u}, {v})"
                        )));
                    }
                }
            }
        }
        Ok(Surface3 { patches })
    }

    pub fn single(patch: impl Patch + 'static) -> Result<Surface3> {
        Surface3::new(vec![OrientedPatch {
            patch: Arc::new(patch),
            positive: true,
        }])
    }

    pub fn patches(&self) -> &[OrientedPatch] {
        &self.patches
    }

    pub fn flipped(&self) -> Surface3 {
        let patches = self
            .patches
            .iter()
            .map(|p| OrientedPatch {
                patch: p.patch.clone(),
                positive: !p.positive,
            })
            .collect();
        Surface3 { patches }
    }

    /// Boundary of a single-patch surface, oriented to match its normal.
    pub fn boundary(&self) -> Result<Curve3> {
        if self.patches.len() != 1 {
            return Err(Error::InvalidGeometry("boundary() needs a single-patch surface".into()));
        }
        let p = &self.patches[0];
        let segments: Vec<Arc<dyn Segment3>> = (0..4)
            .map(|edge| {
                Arc::new(PatchEdge {
                    patch: p.patch.clone(),
                    edge,
                }) as Arc<dyn Segment3>
            })
            .collect();
        let c = Curve3::new(segments, true)?;
        Ok(if p.positive { c } else { c.reversed() })
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .patches
            .iter()
            .map(|p| format!("{}{}", if p.positive { "+" } else { "-" }, p.patch.describe()))
            .collect();
        format!("surface[{}]", parts.join("; "))
    }
}

/// Axis-aligned box `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Box3 {
    pub min: Point3,
    pub max: Point3,
}

impl Box3 {
    pub fn new(min: Point3, max: Point3) -> Result<Box3> {
        if !(min.x < max.x && min.y < max.y && min.z < max.z) || !min.is_finite() || !max.is_finite() {
            return Err(Error::InvalidGeometry(format!(
                "box needs min < max componentwise, got {min} .. {max}"
            )));
        }
        Ok(Box3 { min, max })
    }

    pub fn unit() -> Box3 {
        Box3 {
            min: Point3::ORIGIN,
            max: Point3::new(1.0, 1.0, 1.0),
        }
    }

    pub fn extent(&self) -> Vec3 {
        self.max - self.min
    }

    pub fn volume(&self) -> f64 {
        let e = self.extent();
        e.x * e.y * e.z
    }

    fn overlaps(&self, o: &Box3) -> bool {
        self.min.x < o.max.x
            && o.min.x < self.max.x
            && self.min.y < o.max.y
            && o.min.y < self.max.y
            && self.min.z < o.max.z
            && o.min.z < self.max.z
    }
}

/// A union of non-overlapping boxes.
#[derive(Debug, Clone, PartialEq)]
pub struct Region3 {
    boxes: Vec<Box3>,
}

impl Region3 {
    pub fn new(boxes: Vec<Box3>) -> Result<Region3> {
        if boxes.is_empty() {
            return Err(Error::InvalidGeometry("region has no boxes".into()));
        }
        for i in 0..boxes.len() {
            for j in i + 1..boxes.len() {
                if boxes[i].overlaps(&boxes[j]) {
                    return Err(Error::InvalidGeometry(format!("boxes {i} and {j} overlap")));
                }
            }
        }
        Ok(Region3 { boxes })
    }

    pub fn cube(min: Point3, max: Point3) -> Result<Region3> {
        Ok(Region3 {
            boxes: vec![Box3::new(min, max)?],
        })
    }

    pub fn unit() -> Region3 {
        Region3 {
            boxes: vec![Box3::unit()],
        }
    }

    pub fn boxes(&self) -> &[Box3] {
        &self.boxes
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.boxes.iter().map(|b| format!("[{} .. {}]", b.min, b.max)).collect();
        format!("region[{}]", parts.join(", "))
    }
}

/// The six faces of a single-box region with outward orientation.
pub fn box_boundary(r: &Region3) -> Result<Surface3> {
    let [b] = r.boxes() else {
        return Err(Error::InvalidGeometry("box_boundary needs a single-box region".into()));
    };
    let (lo, e) = (b.min, b.extent());
    let (ex, ey, ez) = (Vec3::new(e.x, 0., 0.), Vec3::new(0., e.y, 0.), Vec3::new(0., 0., e.z));
    // (origin, du, dv) with du x dv along +axis, then the opposite face flipped
    let faces = [
        (lo + ex, ey, ez, true),
        (lo, ey, ez, false),
        (lo + ey, ez, ex, true),
        (lo, ez, ex, false),
        (lo + ez, ex, ey, true),
        (lo, ex, ey, false),
    ];
    let patches = faces
        .into_iter()
        .map(|(o, du, dv, positive)| OrientedPatch {
            patch: Arc::new(BilinearPatch::parallelogram(o, du, dv)),
            positive,
        })
        .collect();
    Surface3::new(patches)
}
