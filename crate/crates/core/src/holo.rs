//! Holomorphic functions of one complex variable and contour integration
//! in the complex plane.
//!
//! This module is deliberately independent of the quaternionic machinery:
//! it is the complex-plane oracle that the quaternionic line integrals are
//! checked against.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::algebra::Cplx;
use crate::error::{Error, Result};
use crate::expr::{self, Expr, Node};
use crate::quadrature::{Integrator, QuadratureSpec};

const XI: &[&str] = &["xi"];

/// Width of the band around integers accepted by [`winding_number`].
pub const WINDING_BAND: f64 = 0.1;

/// Default minimum distance between a curve and the point it winds around.
pub const DEFAULT_CLEARANCE: f64 = 1e-3;

/// A holomorphic function of `xi` given by an expression tree.
#[derive(Debug, Clone, PartialEq)]
pub struct HoloFn {
    expr: Expr,
}

impl HoloFn {
    /// Parses e.g. `"xi^2 + (3+1i)*exp(xi)"`.
    pub fn parse(src: &str) -> Result<HoloFn> {
        Ok(HoloFn {
            expr: Expr::parse(src, XI)?,
        })
    }

    pub fn constant(c: Cplx) -> HoloFn {
        HoloFn {
            expr: Expr::from_node(Node::Const(c), XI),
        }
    }

    pub fn zero() -> HoloFn {
        Self::constant(Cplx::new(0.0, 0.0))
    }

    pub fn identity() -> HoloFn {
        HoloFn {
            expr: Expr::from_node(Node::Var(0), XI),
        }
    }

    pub fn eval(&self, z: Cplx) -> Result<Cplx> {
        self.expr.eval(&[z])
    }

    pub fn deriv(&self) -> HoloFn {
        HoloFn {
            expr: self.expr.deriv(0),
        }
    }

    /// `self(inner(xi))`.
    pub fn compose(&self, inner: &HoloFn) -> HoloFn {
        HoloFn {
            expr: Expr::from_node(self.expr.node().substitute(0, inner.expr.node()), XI),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.expr.node().is_constant()
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.expr.node(), Node::Const(c) if *c == Cplx::new(0.0, 0.0))
    }
}

impl std::ops::Add for &HoloFn {
    type Output = HoloFn;
    fn add(self, rhs: &HoloFn) -> HoloFn {
        HoloFn {
            expr: Expr::from_node(expr::add(self.expr.node().clone(), rhs.expr.node().clone()), XI),
        }
    }
}

impl std::ops::Mul for &HoloFn {
    type Output = HoloFn;
    fn mul(self, rhs: &HoloFn) -> HoloFn {
        HoloFn {
            expr: Expr::from_node(expr::mul(self.expr.node().clone(), rhs.expr.node().clone()), XI),
        }
    }
}

impl fmt::Display for HoloFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.expr.fmt(f)
    }
}

/// A smooth path `[0,1] -> C` with its derivative.
pub trait Segment2: Send + Sync + fmt::Debug {
    fn point(&self, t: f64) -> Cplx;
    fn deriv(&self, t: f64) -> Cplx;
}

#[derive(Debug, Clone, Copy)]
pub struct Line2 {
    pub from: Cplx,
    pub to: Cplx,
}

impl Segment2 for Line2 {
    fn point(&self, t: f64) -> Cplx {
        self.from + (self.to - self.from) * t
    }
    fn deriv(&self, _t: f64) -> Cplx {
        self.to - self.from
    }
}

/// `center + radius * exp(i (theta0 + t (theta1 - theta0)))`.
#[derive(Debug, Clone, Copy)]
pub struct Arc2 {
    pub center: Cplx,
    pub radius: f64,
    pub theta0: f64,
    pub theta1: f64,
}

impl Segment2 for Arc2 {
    fn point(&self, t: f64) -> Cplx {
        let th = self.theta0 + t * (self.theta1 - self.theta0);
        self.center + Cplx::from_polar(self.radius, th)
    }
    fn deriv(&self, t: f64) -> Cplx {
        let th = self.theta0 + t * (self.theta1 - self.theta0);
        Cplx::new(0.0, 1.0) * Cplx::from_polar(self.radius, th) * (self.theta1 - self.theta0)
    }
}

#[derive(Debug)]
struct Reversed2(Arc<dyn Segment2>);

impl Segment2 for Reversed2 {
    fn point(&self, t: f64) -> Cplx {
        self.0.point(1.0 - t)
    }
    fn deriv(&self, t: f64) -> Cplx {
        -self.0.deriv(1.0 - t)
    }
}

/// A piecewise-smooth path in the complex plane.
#[derive(Debug, Clone)]
pub struct Curve2 {
    segments: Vec<Arc<dyn Segment2>>,
    closed: bool,
}

fn joins(a: Cplx, b: Cplx) -> bool {
    (a - b).norm() <= 1e-12 * a.norm().max(b.norm()).max(1.0)
}

impl Curve2 {
    /// Validates continuity at joints and, if `closed`, that the path ends
    /// where it starts.
    pub fn new(segments: Vec<Arc<dyn Segment2>>, closed: bool) -> Result<Curve2> {
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
        Ok(Curve2 { segments, closed })
    }

    /// Circle traversed counter-clockwise `turns` times (clockwise if negative).
    pub fn circle(center: Cplx, radius: f64, turns: i32) -> Curve2 {
        let seg: Arc<dyn Segment2> = Arc::new(Arc2 {
            center,
            radius,
            theta0: 0.0,
            theta1: 2.0 * PI * turns as f64,
        });
        Curve2 {
            segments: vec![seg],
            closed: true,
        }
    }

    pub fn polyline(points: &[Cplx], closed: bool) -> Result<Curve2> {
        if points.len() < 2 {
            return Err(Error::InvalidGeometry("polyline needs at least two points".into()));
        }
        let mut segs: Vec<Arc<dyn Segment2>> = points
            .windows(2)
            .map(|w| Arc::new(Line2 { from: w[0], to: w[1] }) as Arc<dyn Segment2>)
            .collect();
        if closed && !joins(points[0], points[points.len() - 1]) {
            segs.push(Arc::new(Line2 {
                from: points[points.len() - 1],
                to: points[0],
            }));
        }
        Curve2::new(segs, closed)
    }

    pub fn segments(&self) -> &[Arc<dyn Segment2>] {
        &self.segments
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn reversed(&self) -> Curve2 {
        let segments = self
            .segments
            .iter()
            .rev()
            .map(|s| Arc::new(Reversed2(s.clone())) as Arc<dyn Segment2>)
            .collect();
        Curve2 {
            segments,
            closed: self.closed,
        }
    }

    /// Joins `other` after `self`; the result is closed if its ends meet.
    pub fn concat(&self, other: &Curve2) -> Result<Curve2> {
        let mut segments = self.segments.clone();
        segments.extend(other.segments.iter().cloned());
        let closed = joins(segments[segments.len() - 1].point(1.0), segments[0].point(0.0));
        Curve2::new(segments, closed)
    }

    /// Approximate minimum distance from `z0`, by dense sampling.
    pub fn distance_to(&self, z0: Cplx) -> f64 {
        const SAMPLES: usize = 2048;
        self.segments
            .iter()
            .flat_map(|s| (0..=SAMPLES).map(move |i| (s.point(i as f64 / SAMPLES as f64) - z0).norm()))
            .fold(f64::INFINITY, f64::min)
    }
}

/// `∫_c g(z) dz` for an arbitrary integrand, segment by segment.
pub fn integrate_along<G>(g: G, c: &Curve2, q: &QuadratureSpec) -> Result<Cplx>
where
    G: Fn(Cplx) -> Result<Cplx> + Sync,
{
    let integ = Integrator::new(*q)?;
    let tol = q.tol / c.segments.len() as f64;
    let mut total = Cplx::new(0.0, 0.0);
    for seg in &c.segments {
        let est = integ.integrate_1d(tol, |t| Ok(g(seg.point(t))? * seg.deriv(t)))?;
        total += est.value;
    }
    Ok(total)
}

/// `∫_c f(z) dz`.
pub fn contour_integral(f: &HoloFn, c: &Curve2, q: &QuadratureSpec) -> Result<Cplx> {
    integrate_along(|z| f.eval(z), c, q)
}

/// Index of the closed curve `c` about `z0`.
pub fn winding_number(c: &Curve2, z0: Cplx, clearance: f64, q: &QuadratureSpec) -> Result<i64> {
    if !c.closed {
        return Err(Error::NotClosed);
    }
    let distance = c.distance_to(z0);
    if distance < clearance {
        return Err(Error::TooClose { distance, clearance });
    }
    let w = integrate_along(|z| Ok((z - z0).inv()), c, q)? / Cplx::new(0.0, 2.0 * PI);
    let n = w.re.round();
    if (w - Cplx::new(n, 0.0)).norm() > WINDING_BAND {
        return Err(Error::Ambiguous { value: w.re });
    }
    Ok(n as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Cplx {
        Cplx::new(re, im)
    }

    fn q() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn evaluation() {
        let f = HoloFn::parse("xi^2").unwrap();
        assert_eq!(f.eval(c(1., 1.)).unwrap(), c(0., 2.));
        assert_eq!(HoloFn::parse("exp(xi)").unwrap().eval(c(0., 0.)).unwrap(), c(1., 0.));
        assert!(matches!(
            HoloFn::parse("1/xi").unwrap().eval(c(0., 0.)),
            Err(Error::PoleHit { .. })
        ));
        assert!(matches!(
            HoloFn::parse("xi^-2").unwrap().eval(c(0., 0.)),
            Err(Error::PoleHit { .. })
        ));
        let g = HoloFn::parse("xi^2 + (3+1i)*exp(xi)").unwrap();
        let z = c(0.2, -0.4);
        assert!((g.eval(z).unwrap() - (z * z + c(3., 1.) * z.exp())).norm() < 1e-15);
    }

    #[test]
    fn derivatives() {
        assert_eq!(
            HoloFn::parse("xi^3").unwrap().deriv().eval(c(2., 0.)).unwrap(),
            c(12., 0.)
        );
        let e = HoloFn::parse("exp(xi)").unwrap();
        let z = c(0.3, 0.7);
        assert_eq!(e.deriv().eval(z).unwrap(), e.eval(z).unwrap());
        let k = HoloFn::parse("3 + 2i").unwrap().deriv();
        assert!(k.is_zero());
        assert_eq!(k.eval(z).unwrap(), c(0., 0.));
    }

    #[test]
    fn composition() {
        let outer = HoloFn::parse("exp(xi)").unwrap();
        let inner = HoloFn::parse("xi^2").unwrap();
        let h = outer.compose(&inner);
        let z = c(0.4, 0.1);
        assert!((h.eval(z).unwrap() - (z * z).exp()).norm() < 1e-15);
        assert!((h.deriv().eval(z).unwrap() - z * 2.0 * (z * z).exp()).norm() < 1e-14);
    }

    #[test]
    fn contour_integrals() {
        let unit = Curve2::circle(c(0., 0.), 1.0, 1);
        let inv = HoloFn::parse("1/xi").unwrap();
        assert!((contour_integral(&inv, &unit, &q()).unwrap() - c(0., 2. * PI)).norm() < 1e-12);
        let shifted = HoloFn::parse("1/(xi - 2)").unwrap();
        assert!(contour_integral(&shifted, &unit, &q()).unwrap().norm() < 1e-12);
        let square = Curve2::polyline(&[c(-1., -1.), c(2., -1.), c(2., 3.), c(-1., 3.)], true).unwrap();
        let id = HoloFn::identity();
        for curve in [&unit, &square] {
            assert!(contour_integral(&id, curve, &q()).unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn winding_numbers() {
        let unit = Curve2::circle(c(0., 0.), 1.0, 1);
        assert_eq!(winding_number(&unit, c(0., 0.), DEFAULT_CLEARANCE, &q()).unwrap(), 1);
        assert_eq!(winding_number(&unit, c(3., 0.), DEFAULT_CLEARANCE, &q()).unwrap(), 0);
        let twice = Curve2::circle(c(0., 0.), 1.0, 2);
        assert_eq!(winding_number(&twice, c(0., 0.), DEFAULT_CLEARANCE, &q()).unwrap(), 2);
        assert_eq!(
            winding_number(&unit.reversed(), c(0.2, 0.1), DEFAULT_CLEARANCE, &q()).unwrap(),
            -1
        );
        assert!(matches!(
            winding_number(&unit, c(1.0, 1e-5), DEFAULT_CLEARANCE, &q()),
            Err(Error::TooClose { .. })
        ));
        let open = Curve2::polyline(&[c(0., 0.), c(1., 0.)], false).unwrap();
        assert_eq!(
            winding_number(&open, c(0., 1.), DEFAULT_CLEARANCE, &q()),
            Err(Error::NotClosed)
        );
    }

    #[test]
    fn ambiguous_winding_detected() {
        // a coarse, non-refining rule cannot resolve a point hugging the curve
        let spec = QuadratureSpec {
            nodes_per_segment: 2,
            tol: 10.0,
            max_subdivisions: 1,
            parallel: false,
        };
        let unit = Curve2::circle(c(0., 0.), 1.0, 1);
        let r = winding_number(&unit, c(0.9, 0.0), 1e-6, &spec);
        assert!(matches!(r, Err(Error::Ambiguous { .. })), "{r:?}");
    }

    #[test]
    fn construction_checks() {
        let open = Curve2::polyline(&[c(0., 0.), c(1., 0.), c(1., 1.)], false).unwrap();
        assert!(!open.is_closed());
        let a: Arc<dyn Segment2> = Arc::new(Line2 {
            from: c(0., 0.),
            to: c(1., 0.),
        });
        let b: Arc<dyn Segment2> = Arc::new(Line2 {
            from: c(2., 0.),
            to: c(3., 0.),
        });
        assert!(matches!(
            Curve2::new(vec![a.clone(), b], false),
            Err(Error::InvalidGeometry(_))
        ));
        assert_eq!(Curve2::new(vec![a], true).unwrap_err(), Error::NotClosed);
    }
}
