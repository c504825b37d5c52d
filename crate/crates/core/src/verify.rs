//! Executable checks of the integral theorems for G-monogenic mappings.
//!
//! Every check computes the two sides of an identity independently and
//! reports the H(C)-norm of their difference as the residual.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::algebra::{Cplx, HQ};
use crate::error::{Error, Result};
use crate::field::DiffField;
use crate::frame::{Frame, Point3, Xi};
use crate::geometry::{box_boundary, project_curve, Curve3, Region3, Surface3};
use crate::holo::{contour_integral, winding_number, DEFAULT_CLEARANCE};
use crate::integrals::{
    line_integral, line_integral_with, surface_integral, surface_integral_with, volume_integral_with, FormSide,
};
use crate::monogenic::{GMonogenicMap, Handedness};
use crate::quadrature::QuadratureSpec;

/// Default absolute acceptance tolerance on residuals.
pub const DEFAULT_THEOREM_TOL: f64 = 1e-8;

/// Laplace defect below which a frame counts as harmonic.
pub const HARMONIC_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TheoremId {
    #[serde(rename = "T1_curve")]
    T1Curve,
    #[serde(rename = "T2_homotopy_instance")]
    T2HomotopyInstance,
    Lemma,
    #[serde(rename = "T3_formula_right")]
    T3FormulaRight,
    #[serde(rename = "T3_formula_left")]
    T3FormulaLeft,
    #[serde(rename = "Stokes_r")]
    StokesR,
    #[serde(rename = "Stokes_l")]
    StokesL,
    #[serde(rename = "GaussOstr_r")]
    GaussOstrR,
    #[serde(rename = "GaussOstr_l")]
    GaussOstrL,
    #[serde(rename = "T4_surface")]
    T4Surface,
    Corollary,
}

impl TheoremId {
    pub const ALL: [TheoremId; 11] = [
        TheoremId::T1Curve,
        TheoremId::T2HomotopyInstance,
        TheoremId::Lemma,
        TheoremId::T3FormulaRight,
        TheoremId::T3FormulaLeft,
        TheoremId::StokesR,
        TheoremId::StokesL,
        TheoremId::GaussOstrR,
        TheoremId::GaussOstrL,
        TheoremId::T4Surface,
        TheoremId::Corollary,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::T1Curve => "T1_curve",
            TheoremId::T2HomotopyInstance => "T2_homotopy_instance",
            TheoremId::Lemma => "Lemma",
            TheoremId::T3FormulaRight => "T3_formula_right",
            TheoremId::T3FormulaLeft => "T3_formula_left",
            TheoremId::StokesR => "Stokes_r",
            TheoremId::StokesL => "Stokes_l",
            TheoremId::GaussOstrR => "GaussOstr_r",
            TheoremId::GaussOstrL => "GaussOstr_l",
            TheoremId::T4Surface => "T4_surface",
            TheoremId::Corollary => "Corollary",
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            TheoremId::T1Curve => "closed-curve integral of a G-monogenic map vanishes",
            TheoremId::T2HomotopyInstance => "homotopic closed curves give equal integrals",
            TheoremId::Lemma => "quaternionic line integral reduces to complex contour integrals",
            TheoremId::T3FormulaRight => "Cauchy integral formula, right-G-monogenic",
            TheoremId::T3FormulaLeft => "Cauchy integral formula, left-G-monogenic",
            TheoremId::StokesR => "Stokes analogue for the dzeta*Psi order",
            TheoremId::StokesL => "Stokes analogue for the Psi*dzeta order",
            TheoremId::GaussOstrR => "Gauss-Ostrogradsky analogue for the sigma*Psi order",
            TheoremId::GaussOstrL => "Gauss-Ostrogradsky analogue for the Psi*sigma order",
            TheoremId::T4Surface => {
                "surface integral equals (1 + i2^2 + i3^2)-weighted volume integral of the derivative"
            }
            TheoremId::Corollary => "surface integrals vanish for a harmonic frame",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown theorem id `{s}`"))
    }
}

/// Numerical settings for one check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifySettings {
    pub quadrature: QuadratureSpec,
    /// Acceptance threshold on the residual.
    pub tol: f64,
    /// Minimum distance between projected curves and `xi_k(p0)`.
    pub clearance: f64,
}

impl Default for VerifySettings {
    fn default() -> Self {
        VerifySettings {
            quadrature: QuadratureSpec::default(),
            tol: DEFAULT_THEOREM_TOL,
            clearance: DEFAULT_CLEARANCE,
        }
    }
}

/// Outcome of one check. `passed` holds exactly when `residual <= tol`.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub theorem_id: TheoremId,
    pub residual: f64,
    pub tol: f64,
    pub passed: bool,
    /// The two compared quantities (for the corollary: both surface integrals).
    pub sides: [HQ; 2],
    pub frame: Frame,
    pub map: String,
    pub geometry: String,
    pub quadrature: QuadratureSpec,
    pub wall_time_ms: f64,
}

struct Pending {
    id: TheoremId,
    started: Instant,
    frame: Frame,
    map: String,
    geometry: String,
}

impl Pending {
    fn start(id: TheoremId, frame: &Frame, map: String, geometry: String) -> Pending {
        Pending {
            id,
            started: Instant::now(),
            frame: *frame,
            map,
            geometry,
        }
    }

    fn finish(self, sides: [HQ; 2], residual: f64, tol: f64, s: &VerifySettings) -> VerificationReport {
        VerificationReport {
            theorem_id: self.id,
            residual,
            tol,
            passed: residual <= tol,
            sides,
            frame: self.frame,
            map: self.map,
            geometry: self.geometry,
            quadrature: s.quadrature,
            wall_time_ms: self.started.elapsed().as_secs_f64() * 1e3,
        }
    }

    fn compare(self, lhs: HQ, rhs: HQ, tol: f64, s: &VerifySettings) -> VerificationReport {
        let residual = (lhs - rhs).norm();
        self.finish([lhs, rhs], residual, tol, s)
    }
}

/// The form side that annihilates maps of the given handedness.
pub fn natural_side(h: Handedness) -> FormSide {
    match h {
        Handedness::Right => FormSide::Left,
        Handedness::Left => FormSide::Right,
    }
}

/// `∮ dζ Φ = 0` for right maps, `∮ Φ̂ dζ = 0` for left maps.
pub fn verify_cauchy_curve(m: &GMonogenicMap, c: &Curve3, s: &VerifySettings) -> Result<VerificationReport> {
    if !c.is_closed() {
        return Err(Error::NotClosed);
    }
    let job = Pending::start(TheoremId::T1Curve, m.frame(), m.to_string(), c.describe());
    let v = line_integral(natural_side(m.handedness()), m, c, m.frame(), &s.quadrature)?;
    Ok(job.compare(v, HQ::ZERO, s.tol, s))
}

/// Integrals over two closed curves that are homotopic in the domain of
/// the map agree; accepted within `2 * tol`.
pub fn verify_homotopy_instance(
    m: &GMonogenicMap,
    a: &Curve3,
    b: &Curve3,
    s: &VerifySettings,
) -> Result<VerificationReport> {
    if !a.is_closed() || !b.is_closed() {
        return Err(Error::NotClosed);
    }
    let geometry = format!("{} ~ {}", a.describe(), b.describe());
    let job = Pending::start(TheoremId::T2HomotopyInstance, m.frame(), m.to_string(), geometry);
    let side = natural_side(m.handedness());
    let ia = line_integral(side, m, a, m.frame(), &s.quadrature)?;
    let ib = line_integral(side, m, b, m.frame(), &s.quadrature)?;
    Ok(job.compare(ia, ib, 2.0 * s.tol, s))
}

/// `sum_n e_n ∫_{γ_{k(n)}} F_n(ξ) dξ` where `k(n)` follows `pattern`,
/// computed with complex contour integrals on the projected curves.
pub fn lemma_reduction(
    components: &[crate::holo::HoloFn; 4],
    pattern: [Xi; 4],
    c: &Curve3,
    frame: &Frame,
    q: &QuadratureSpec,
) -> Result<HQ> {
    let gamma = [project_curve(c, frame, Xi::Xi1), project_curve(c, frame, Xi::Xi2)];
    let mut out = HQ::ZERO;
    for k in 0..4 {
        if components[k].is_zero() {
            continue;
        }
        out.c[k] = contour_integral(&components[k], &gamma[pattern[k].index() as usize - 1], q)?;
    }
    Ok(out)
}

/// Quaternionic line integral versus its reduction to contour integrals,
/// using the index pattern implied by the map's handedness.
pub fn verify_lemma(m: &GMonogenicMap, c: &Curve3, s: &VerifySettings) -> Result<VerificationReport> {
    let job = Pending::start(TheoremId::Lemma, m.frame(), m.to_string(), c.describe());
    let lhs = line_integral(natural_side(m.handedness()), m, c, m.frame(), &s.quadrature)?;
    let rhs = lemma_reduction(m.components(), m.handedness().pattern(), c, m.frame(), &s.quadrature)?;
    Ok(job.compare(lhs, rhs, s.tol, s))
}

/// Checks that `c` embraces the translated lines once: both projections
/// wind exactly once, positively, about `xi_k(p0)`.
pub fn check_embraces(c: &Curve3, frame: &Frame, p0: Point3, s: &VerifySettings) -> Result<()> {
    if !c.is_closed() {
        return Err(Error::NotClosed);
    }
    for k in [Xi::Xi1, Xi::Xi2] {
        let g = project_curve(c, frame, k);
        let w = winding_number(&g, frame.xi(k, p0), s.clearance, &s.quadrature)?;
        if w != 1 {
            return Err(Error::NotEmbracing {
                k: k.index(),
                winding: w,
            });
        }
    }
    Ok(())
}

/// `(1/2πi) ∮ (ζ-ζ0)^{-1} dζ Φ(ζ)` for right maps and
/// `(1/2πi) ∮ Φ̂(ζ) (ζ-ζ0)^{-1} dζ` for left maps.
pub fn cauchy_formula_value(m: &GMonogenicMap, p0: Point3, c: &Curve3, q: &QuadratureSpec) -> Result<HQ> {
    let frame = m.frame();
    let zeta0 = frame.embed(p0);
    let integral = line_integral_with(
        |p, dz| {
            let kernel = (frame.embed(p) - zeta0).inv_e3()?;
            let phi = m.eval_map(p)?;
            Ok(match m.handedness() {
                Handedness::Right => kernel * dz * phi,
                Handedness::Left => phi * kernel * dz,
            })
        },
        c,
        frame,
        q,
    )?;
    Ok(integral.scale(Cplx::new(0.0, 2.0 * PI).inv()))
}

pub fn verify_cauchy_formula(
    m: &GMonogenicMap,
    p0: Point3,
    c: &Curve3,
    s: &VerifySettings,
) -> Result<VerificationReport> {
    check_embraces(c, m.frame(), p0, s)?;
    let id = match m.handedness() {
        Handedness::Right => TheoremId::T3FormulaRight,
        Handedness::Left => TheoremId::T3FormulaLeft,
    };
    let job = Pending::start(id, m.frame(), m.to_string(), format!("p0={p0}; {}", c.describe()));
    let reconstructed = cauchy_formula_value(m, p0, c, &s.quadrature)?;
    let exact = m.eval_map(p0)?;
    Ok(job.compare(reconstructed, exact, s.tol, s))
}

/// Integrand of the surface side of the Stokes analogue, as the
/// coefficients of `dxdy`, `dydz`, `dzdx` paired with the area vector.
fn stokes_density(side: FormSide, frame: &Frame, d: [HQ; 3], area: crate::frame::Vec3) -> HQ {
    let (i2, i3) = (frame.i2(), frame.i3());
    let [px, py, pz] = d;
    let (dxdy, dydz, dzdx) = match side {
        FormSide::Left => (i2 * px - py, i3 * py - i2 * pz, pz - i3 * px),
        FormSide::Right => (px * i2 - py, py * i3 - pz * i2, pz - px * i3),
    };
    dydz.scale_real(area.x) + dzdx.scale_real(area.y) + dxdy.scale_real(area.z)
}

/// Curve side `∮_{∂Σ} dζ Ψ` (or `Ψ dζ`) against the surface side of the
/// Stokes analogue over a single-patch surface.
pub fn verify_stokes<F: DiffField + ?Sized>(
    field: &F,
    surface: &Surface3,
    frame: &Frame,
    side: FormSide,
    s: &VerifySettings,
) -> Result<VerificationReport> {
    let edge = surface.boundary()?;
    verify_stokes_with_edge(field, surface, &edge, frame, side, s)
}

/// As [`verify_stokes`] with an explicitly supplied edge curve.
pub fn verify_stokes_with_edge<F: DiffField + ?Sized>(
    field: &F,
    surface: &Surface3,
    edge: &Curve3,
    frame: &Frame,
    side: FormSide,
    s: &VerifySettings,
) -> Result<VerificationReport> {
    let id = match side {
        FormSide::Left => TheoremId::StokesR,
        FormSide::Right => TheoremId::StokesL,
    };
    let job = Pending::start(id, frame, field.describe(), surface.describe());
    let curve_side = line_integral(side, field, edge, frame, &s.quadrature)?;
    let surface_side = surface_integral_with(
        |p, area| Ok(stokes_density(side, frame, field.partials(p)?, area)),
        surface,
        &s.quadrature,
    )?;
    Ok(job.compare(curve_side, surface_side, s.tol, s))
}

fn divergence(side: FormSide, frame: &Frame, d: [HQ; 3]) -> HQ {
    let [px, py, pz] = d;
    match side {
        FormSide::Left => px + frame.i2() * py + frame.i3() * pz,
        FormSide::Right => px + py * frame.i2() + pz * frame.i3(),
    }
}

/// `∫_{∂Ω} σ Ψ` against `∫_Ω (∂xΨ + i2 ∂yΨ + i3 ∂zΨ)` (and the
/// right-multiplied variant) over a box.
pub fn verify_gauss_ostr<F: DiffField + ?Sized>(
    field: &F,
    r: &Region3,
    frame: &Frame,
    side: FormSide,
    s: &VerifySettings,
) -> Result<VerificationReport> {
    let id = match side {
        FormSide::Left => TheoremId::GaussOstrR,
        FormSide::Right => TheoremId::GaussOstrL,
    };
    let job = Pending::start(id, frame, field.describe(), r.describe());
    let boundary = box_boundary(r)?;
    let surface_side = surface_integral(side, field, &boundary, frame, &s.quadrature)?;
    let volume_side = volume_integral_with(|p| Ok(divergence(side, frame, field.partials(p)?)), r, &s.quadrature)?;
    Ok(job.compare(surface_side, volume_side, s.tol, s))
}

/// `∫_{∂Ω} σ Φ = ∫_Ω (1 + i2² + i3²) Φ'` for right maps and
/// `∫_{∂Ω} Φ̂ σ = ∫_Ω Φ̂' (1 + i2² + i3²)` for left maps.
pub fn verify_surface_theorem(m: &GMonogenicMap, r: &Region3, s: &VerifySettings) -> Result<VerificationReport> {
    let job = Pending::start(TheoremId::T4Surface, m.frame(), m.to_string(), r.describe());
    let boundary = box_boundary(r)?;
    let side = natural_side(m.handedness());
    let surface_side = surface_integral(side, m, &boundary, m.frame(), &s.quadrature)?;
    let defect = m.frame().laplace_defect();
    let deriv = m.map_derivative();
    let volume_side = if defect.norm() == 0.0 {
        HQ::ZERO
    } else {
        volume_integral_with(
            |p| {
                let d = deriv.eval_map(p)?;
                Ok(match m.handedness() {
                    Handedness::Right => defect * d,
                    Handedness::Left => d * defect,
                })
            },
            r,
            &s.quadrature,
        )?
    };
    Ok(job.compare(surface_side, volume_side, s.tol, s))
}

/// For a harmonic frame both `∫ σΦ` and `∫ Φ̂σ` over the box boundary
/// vanish. `m` supplies one handedness; its mirror supplies the other.
pub fn verify_corollary(m: &GMonogenicMap, r: &Region3, s: &VerifySettings) -> Result<VerificationReport> {
    let defect = m.frame().laplace_defect().norm();
    if defect > HARMONIC_TOL {
        return Err(Error::FrameNotHarmonic { defect });
    }
    let job = Pending::start(TheoremId::Corollary, m.frame(), m.to_string(), r.describe());
    let boundary = box_boundary(r)?;
    let mirror = m.mirrored();
    let (right, left) = match m.handedness() {
        Handedness::Right => (m, &mirror),
        Handedness::Left => (&mirror, m),
    };
    let sigma_phi = surface_integral(FormSide::Left, right, &boundary, m.frame(), &s.quadrature)?;
    let phi_sigma = surface_integral(FormSide::Right, left, &boundary, m.frame(), &s.quadrature)?;
    let residual = sigma_phi.norm().max(phi_sigma.norm());
    Ok(job.finish([sigma_phi, phi_sigma], residual, s.tol, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ConstField, ExprField};
    use crate::frame::Vec3;
    use crate::geometry::{BilinearPatch, DiskPatch};
    use crate::holo::HoloFn;

    fn c(re: f64, im: f64) -> Cplx {
        Cplx::new(re, im)
    }

    fn frame_a() -> Frame {
        Frame::new(c(0., 1.), c(0., 1.), c(0., 1.), c(0., -1.)).unwrap()
    }

    fn frame_h() -> Frame {
        Frame::new(c(0., 1.), c(0., 0.), c(0., 0.), c(0., 1.)).unwrap()
    }

    fn h(src: &str) -> HoloFn {
        HoloFn::parse(src).unwrap()
    }

    fn xy_circle() -> Curve3 {
        Curve3::ellipse(Point3::ORIGIN, Vec3::new(1., 0., 0.), Vec3::new(0., 1., 0.))
    }

    fn settings() -> VerifySettings {
        VerifySettings::default()
    }

    #[test]
    fn theorem_ids_roundtrip() {
        for t in TheoremId::ALL {
            assert_eq!(t.as_str().parse::<TheoremId>().unwrap(), t);
        }
        assert!("T9".parse::<TheoremId>().is_err());
    }

    #[test]
    fn cauchy_curve_instances() {
        let id = GMonogenicMap::right([h("xi"), h("xi"), h("0"), h("0")], frame_a());
        let r = verify_cauchy_curve(&id, &xy_circle(), &settings()).unwrap();
        assert!(r.passed && r.residual < 1e-9, "{}", r.residual);

        let k = GMonogenicMap::left([h("1"), h("2i"), h("3"), h("-1")], frame_a());
        let poly = Curve3::polyline(
            &[
                Point3::ORIGIN,
                Point3::new(1., 0., 0.),
                Point3::new(1., 1., 1.),
                Point3::new(0., 1., -1.),
            ],
            true,
        )
        .unwrap();
        let r = verify_cauchy_curve(&k, &poly, &settings()).unwrap();
        assert!(r.residual < 1e-12);

        let e = GMonogenicMap::right(
            [h("exp(xi)"), h("exp(-xi)"), h("exp(2*xi)"), h("1i*exp(xi)")],
            frame_a(),
        );
        let tilted = Curve3::circle(Point3::new(0.1, -0.2, 0.3), Vec3::new(1., 1., 1.), 0.9).unwrap();
        let r = verify_cauchy_curve(&e, &tilted, &settings()).unwrap();
        assert!(r.residual < 1e-8, "{}", r.residual);
    }

    #[test]
    fn cauchy_curve_negative_controls() {
        let open = Curve3::polyline(&[Point3::ORIGIN, Point3::new(1., 0., 0.)], false).unwrap();
        let id = GMonogenicMap::right([h("xi"), h("xi"), h("0"), h("0")], frame_a());
        assert_eq!(
            verify_cauchy_curve(&id, &open, &settings()).unwrap_err(),
            Error::NotClosed
        );

        // F3 fed with xi2 in a right map
        let broken = GMonogenicMap::right([h("0"), h("0"), h("xi"), h("0")], frame_a()).with_argument_pattern([
            Xi::Xi1,
            Xi::Xi2,
            Xi::Xi2,
            Xi::Xi2,
        ]);
        let tilted = Curve3::circle(Point3::ORIGIN, Vec3::new(0., 1., 1.), 1.0).unwrap();
        let r = verify_cauchy_curve(&broken, &tilted, &settings()).unwrap();
        assert!(!r.passed && r.residual > 100.0 * r.tol, "{}", r.residual);
    }

    #[test]
    fn lemma_instances() {
        let helix = Curve3::single(
            crate::geometry::ArcSegment {
                center: Point3::ORIGIN,
                u: Vec3::new(1., 0., 0.),
                v: Vec3::new(0., 1., 0.),
                theta0: 0.0,
                theta1: 5.0,
                drift: Vec3::new(0., 0., 1.5),
            },
            false,
        )
        .unwrap();
        let r = GMonogenicMap::right([h("0"), h("0"), h("xi"), h("0")], frame_a());
        let rep = verify_lemma(&r, &helix, &settings()).unwrap();
        assert!(rep.residual < 1e-8 && rep.sides[0].norm() > 0.1);

        let zero = GMonogenicMap::right([h("0"), h("0"), h("0"), h("0")], frame_a());
        assert_eq!(verify_lemma(&zero, &helix, &settings()).unwrap().residual, 0.0);

        let l = GMonogenicMap::left([h("0"), h("0"), h("0"), h("xi^2")], frame_a());
        let rep = verify_lemma(&l, &helix, &settings()).unwrap();
        assert!(rep.residual < 1e-8);
        // swapping the index pattern must be detected
        let wrong = lemma_reduction(
            l.components(),
            Handedness::Right.pattern(),
            &helix,
            l.frame(),
            &settings().quadrature,
        )
        .unwrap();
        assert!((wrong - rep.sides[0]).norm() > 1e-2);
    }

    #[test]
    fn cauchy_formula_instances() {
        let m = GMonogenicMap::right([h("xi^2"), h("xi^2"), h("0"), h("0")], frame_a());
        let rep = verify_cauchy_formula(&m, Point3::new(0.1, 0.2, 0.), &xy_circle(), &settings()).unwrap();
        assert!(rep.residual < 1e-8, "{}", rep.residual);
        assert_eq!(rep.theorem_id, TheoremId::T3FormulaRight);

        let k = GMonogenicMap::left([h("2"), h("1i"), h("3 - 1i"), h("-4")], frame_a());
        let rep = verify_cauchy_formula(&k, Point3::new(-0.2, 0.1, 0.1), &xy_circle(), &settings()).unwrap();
        assert!(rep.residual < 1e-10);
        assert_eq!(rep.theorem_id, TheoremId::T3FormulaLeft);

        let outside = verify_cauchy_formula(&m, Point3::new(3.0, 0., 0.), &xy_circle(), &settings());
        assert!(matches!(outside, Err(Error::NotEmbracing { winding: 0, .. })));
        let reversed = verify_cauchy_formula(&m, Point3::new(0.1, 0.2, 0.), &xy_circle().reversed(), &settings());
        assert!(matches!(reversed, Err(Error::NotEmbracing { winding: -1, .. })));
        let near = verify_cauchy_formula(&m, Point3::new(1.0 - 1e-5, 0., 0.), &xy_circle(), &settings());
        assert!(matches!(near, Err(Error::TooClose { .. })));
    }

    #[test]
    fn stokes_instances() {
        let f = frame_a();
        let square = Surface3::single(BilinearPatch::parallelogram(
            Point3::ORIGIN,
            Vec3::new(1., 0., 0.),
            Vec3::new(0., 1., 0.),
        ))
        .unwrap();
        for side in [FormSide::Left, FormSide::Right] {
            let r = verify_stokes(&ConstField(HQ::ONE), &square, &f, side, &settings()).unwrap();
            assert!(r.sides[0].norm() < 1e-14 && r.sides[1].norm() < 1e-14);
            let xe1 = ExprField::parse(["x", "0", "0", "0"]).unwrap();
            let r = verify_stokes(&xe1, &square, &f, side, &settings()).unwrap();
            assert!(r.residual < 1e-9);
        }
        let m = GMonogenicMap::right([h("exp(xi)"), h("xi^3"), h("xi^2"), h("1/(xi - 4)")], f);
        let disk = Surface3::single(DiskPatch {
            center: Point3::new(0.1, 0.2, 0.3),
            e1: Vec3::new(1., 0., 0.),
            e2: Vec3::new(0., 0.6, 0.8),
            radius: 0.9,
        })
        .unwrap();
        let r = verify_stokes(&m, &disk, &f, FormSide::Left, &settings()).unwrap();
        assert!(r.sides[1].norm() < 1e-12 && r.residual < 1e-9, "{:?}", r.sides);
    }

    #[test]
    fn stokes_negative_control_with_wrong_edge() {
        let f = frame_a();
        let square = Surface3::single(BilinearPatch::parallelogram(
            Point3::ORIGIN,
            Vec3::new(1., 0., 0.),
            Vec3::new(0., 1., 0.),
        ))
        .unwrap();
        let field = ExprField::parse(["x*y", "y^2", "0", "x"]).unwrap();
        let wrong = square.boundary().unwrap().reversed();
        let r = verify_stokes_with_edge(&field, &square, &wrong, &f, FormSide::Left, &settings()).unwrap();
        assert!(r.residual > 100.0 * r.tol);
    }

    #[test]
    fn gauss_ostrogradsky_instances() {
        let f = frame_a();
        let unit = Region3::unit();
        for side in [FormSide::Left, FormSide::Right] {
            let r = verify_gauss_ostr(&ConstField(HQ::ONE), &unit, &f, side, &settings()).unwrap();
            assert!(r.residual < 1e-14);
        }
        let psi = ExprField::parse(["x", "x", "0", "0"]).unwrap();
        let r = verify_gauss_ostr(&psi, &unit, &f, FormSide::Left, &settings()).unwrap();
        assert!((r.sides[0] - HQ::ONE).norm() < 1e-9 && (r.sides[1] - HQ::ONE).norm() < 1e-9);
        let ye3 = ExprField::parse(["0", "0", "y", "0"]).unwrap();
        let r = verify_gauss_ostr(&ye3, &unit, &f, FormSide::Left, &settings()).unwrap();
        let expected = f.i2() * HQ::e(3);
        assert!(r.residual < 1e-9 && (r.sides[1] - expected).norm() < 1e-9);
    }

    #[test]
    fn surface_theorem_instances() {
        let f = frame_a();
        let id = GMonogenicMap::right([h("xi"), h("xi"), h("0"), h("0")], f);
        let r = verify_surface_theorem(&id, &Region3::unit(), &settings()).unwrap();
        assert!(r.residual < 1e-9);
        assert!((r.sides[1] + HQ::ONE).norm() < 1e-12);

        let k = GMonogenicMap::left([h("1"), h("2"), h("3"), h("4")], f);
        let r = verify_surface_theorem(&k, &Region3::unit(), &settings()).unwrap();
        assert!(r.sides[0].norm() < 1e-13 && r.sides[1].norm() < 1e-13);

        let harm = GMonogenicMap::left([h("xi^3"), h("exp(xi)"), h("xi^2"), h("1/(xi + 3)")], frame_h());
        let r = verify_surface_theorem(&harm, &Region3::unit(), &settings()).unwrap();
        assert_eq!(r.sides[1], HQ::ZERO);
        assert!(r.residual < 1e-8);
    }

    #[test]
    fn surface_theorem_wrong_side_fails() {
        // a left map checked with the right-map form does not satisfy it
        let f = frame_a();
        let l = GMonogenicMap::left([h("0"), h("0"), h("xi^2"), h("xi^2")], f);
        let as_right = GMonogenicMap::right(l.components().clone(), f).with_argument_pattern(l.pattern());
        let r = verify_surface_theorem(&as_right, &Region3::unit(), &settings()).unwrap();
        assert!(r.residual > 100.0 * r.tol, "{}", r.residual);
    }

    #[test]
    fn corollary_instances() {
        let m = GMonogenicMap::right([h("xi^3"), h("xi^3"), h("xi^3"), h("xi^3")], frame_h());
        let r = verify_corollary(&m, &Region3::unit(), &settings()).unwrap();
        assert!(r.residual < 1e-8);
        let k = GMonogenicMap::right([h("1"), h("1"), h("1"), h("1")], frame_h());
        assert!(verify_corollary(&k, &Region3::unit(), &settings()).unwrap().residual < 1e-13);
        let bad = GMonogenicMap::right([h("xi^3"), h("0"), h("0"), h("0")], frame_a());
        assert!(matches!(
            verify_corollary(&bad, &Region3::unit(), &settings()),
            Err(Error::FrameNotHarmonic { .. })
        ));
    }

    #[test]
    fn passed_iff_within_tolerance() {
        let m = GMonogenicMap::right([h("xi"), h("xi"), h("0"), h("0")], frame_a());
        let s = VerifySettings { tol: 0.0, ..settings() };
        let r = verify_surface_theorem(&m, &Region3::unit(), &s).unwrap();
        assert_eq!(r.passed, r.residual <= r.tol);
    }
}
