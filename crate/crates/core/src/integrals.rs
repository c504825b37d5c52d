//! Line, surface and volume integrals of H(C)-valued fields.
//!
//! The multiplication order matters: `∫ dζ Ψ` multiplies the form on the
//! left, `∫ Ψ dζ` on the right, and likewise for `σ`.

use serde::Serialize;

use crate::algebra::HQ;
use crate::error::Result;
use crate::field::Field;
use crate::frame::{Frame, Point3};
use crate::geometry::{Curve3, Region3, Surface3};
use crate::quadrature::{Integrator, QuadratureSpec};

/// Side on which the differential form multiplies the field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormSide {
    /// `dζ Ψ` or `σ Ψ`.
    Left,
    /// `Ψ dζ` or `Ψ σ`.
    Right,
}

impl FormSide {
    pub fn apply(self, form: HQ, value: HQ) -> HQ {
        match self {
            FormSide::Left => form * value,
            FormSide::Right => value * form,
        }
    }
}

/// `∫_c dζ Ψ` (`FormSide::Left`) or `∫_c Ψ dζ` (`FormSide::Right`).
pub fn line_integral<F: Field + ?Sized>(
    side: FormSide,
    field: &F,
    c: &Curve3,
    frame: &Frame,
    q: &QuadratureSpec,
) -> Result<HQ> {
    line_integral_with(|p, dz| Ok(side.apply(dz, field.value(p)?)), c, frame, q)
}

/// Line integral of an integrand that receives the point and `dζ(γ')`;
/// used for the resolvent-weighted integrals of the Cauchy formula.
pub fn line_integral_with<G>(g: G, c: &Curve3, frame: &Frame, q: &QuadratureSpec) -> Result<HQ>
where
    G: Fn(Point3, HQ) -> Result<HQ> + Sync,
{
    let integ = Integrator::new(*q)?;
    let tol = q.tol / c.segments().len() as f64;
    let mut parts = Vec::with_capacity(c.segments().len());
    for seg in c.segments() {
        let est = integ.integrate_1d(tol, |t| g(seg.point(t), frame.dzeta(seg.tangent(t))))?;
        parts.push(est.value);
    }
    Ok(crate::quadrature::compensated_sum(parts.iter()))
}

/// `∫_s σ Ψ` (`FormSide::Left`) or `∫_s Ψ σ` (`FormSide::Right`).
pub fn surface_integral<F: Field + ?Sized>(
    side: FormSide,
    field: &F,
    s: &Surface3,
    frame: &Frame,
    q: &QuadratureSpec,
) -> Result<HQ> {
    let integ = Integrator::new(*q)?;
    let tol = q.tol / s.patches().len() as f64;
    let mut parts = Vec::with_capacity(s.patches().len());
    for patch in s.patches() {
        let est = integ.integrate_2d(tol, |u, v| {
            let sigma = frame.sigma(patch.area_vector(u, v));
            Ok(side.apply(sigma, field.value(patch.patch.point(u, v))?))
        })?;
        parts.push(est.value);
    }
    Ok(crate::quadrature::compensated_sum(parts.iter()))
}

/// Surface integral of an integrand that sees the point and the oriented
/// area vector `(dydz, dzdx, dxdy)` directly.
pub fn surface_integral_with<G>(g: G, s: &Surface3, q: &QuadratureSpec) -> Result<HQ>
where
    G: Fn(Point3, crate::frame::Vec3) -> Result<HQ> + Sync,
{
    let integ = Integrator::new(*q)?;
    let tol = q.tol / s.patches().len() as f64;
    let mut parts = Vec::with_capacity(s.patches().len());
    for patch in s.patches() {
        let est = integ.integrate_2d(tol, |u, v| g(patch.patch.point(u, v), patch.area_vector(u, v)))?;
        parts.push(est.value);
    }
    Ok(crate::quadrature::compensated_sum(parts.iter()))
}

/// `∫_r Ψ dx dy dz`.
pub fn volume_integral<F: Field + ?Sized>(field: &F, r: &Region3, q: &QuadratureSpec) -> Result<HQ> {
    volume_integral_with(|p| field.value(p), r, q)
}

pub fn volume_integral_with<G>(g: G, r: &Region3, q: &QuadratureSpec) -> Result<HQ>
where
    G: Fn(Point3) -> Result<HQ> + Sync,
{
    let integ = Integrator::new(*q)?;
    let tol = q.tol / r.boxes().len() as f64;
    let mut parts = Vec::with_capacity(r.boxes().len());
    for b in r.boxes() {
        let e = b.extent();
        let jac = b.volume();
        let est = integ.integrate_3d(tol / jac.max(1.0), |u, v, w| {
            let p = Point3::new(b.min.x + u * e.x, b.min.y + v * e.y, b.min.z + w * e.z);
            Ok(g(p)?.scale_real(jac))
        })?;
        parts.push(est.value);
    }
    Ok(crate::quadrature::compensated_sum(parts.iter()))
}
