//! Ready-made frames, maps, fields and curves used by tests, benches and
//! the default configuration.

use crate::algebra::Cplx;
use crate::field::ExprField;
use crate::frame::{Frame, Point3, Vec3};
use crate::geometry::{Curve3, LissajousSegment};
use crate::holo::HoloFn;
use crate::monogenic::GMonogenicMap;

fn c(re: f64, im: f64) -> Cplx {
    Cplx::new(re, im)
}

fn holo(srcs: [&str; 4]) -> [HoloFn; 4] {
    srcs.map(|s| HoloFn::parse(s).expect("stock expression parses"))
}

/// `(a1, a2, b1, b2) = (i, i, i, -i)`; Laplace defect `-1`.
pub fn frame_a() -> Frame {
    Frame::new(c(0., 1.), c(0., 1.), c(0., 1.), c(0., -1.)).expect("valid frame")
}

/// `(a1, a2, b1, b2) = (i, 0, 0, i)`; Laplace defect `0`.
pub fn frame_harmonic() -> Frame {
    Frame::new(c(0., 1.), c(0., 0.), c(0., 0.), c(0., 1.)).expect("valid frame")
}

/// Pole of the rational stock maps, far from the unit-size geometry.
pub const STOCK_POLE: &str = "(4 + 4i)";

/// Component expressions of the stock maps, with their handedness.
pub fn stock_map_sources() -> Vec<(&'static str, bool, [&'static str; 4])> {
    vec![
        (
            "cubic_right",
            true,
            ["xi^3", "xi^3 - 2*xi", "1i*xi^3 + xi^2", "0.5*xi^4"],
        ),
        ("exp_right", true, ["exp(xi)", "exp(-xi)", "exp(2*xi)", "1i*exp(xi)"]),
        (
            "pole_right",
            true,
            ["1/(xi - (4 + 4i))", "xi^3", "1/(xi - (4 + 4i))^2", "exp(xi/2)"],
        ),
        ("cubic_left", false, ["2*xi^3", "xi^3 + 1i", "xi^4", "xi^3 - xi"]),
        (
            "mixed_left",
            false,
            ["exp(xi)", "1/(xi - (4 + 4i))", "xi^3", "exp(-xi)*xi"],
        ),
    ]
}

/// Five G-monogenic maps over `frame` whose third derivatives do not vanish.
pub fn stock_maps(frame: Frame) -> Vec<(&'static str, GMonogenicMap)> {
    stock_map_sources()
        .into_iter()
        .map(|(name, right, srcs)| {
            let comps = holo(srcs);
            let m = if right {
                GMonogenicMap::right(comps, frame)
            } else {
                GMonogenicMap::left(comps, frame)
            };
            (name, m)
        })
        .collect()
}

/// `Φ(ζ) = ζ` as a right map.
pub fn identity_map(frame: Frame) -> GMonogenicMap {
    GMonogenicMap::right(holo(["xi", "xi", "0", "0"]), frame)
}

/// Polynomial fields that are not G-monogenic for any stock frame.
pub fn stock_fields() -> Vec<(&'static str, ExprField)> {
    [
        ("xy_e1", ["x*y", "0", "0", "0"]),
        ("quadratic", ["x^2 - y*z", "1i*y", "z^2", "x*z"]),
        ("cubic_mix", ["x^3", "y^2*z", "1i*x*y*z", "z - x"]),
        ("linear_skew", ["y", "-x", "2i*z", "x + y + z"]),
    ]
    .into_iter()
    .map(|(n, s)| (n, ExprField::parse(s).expect("stock field parses")))
    .collect()
}

/// Unit circle in the plane `z = 0`.
pub fn xy_circle() -> Curve3 {
    Curve3::ellipse(Point3::ORIGIN, Vec3::new(1., 0., 0.), Vec3::new(0., 1., 0.))
}

/// `(cos t, sin t, 0.5 sin t)`: its projections wind once around the
/// origin for both stock frames.
pub fn tilted_circle() -> Curve3 {
    Curve3::ellipse(Point3::ORIGIN, Vec3::new(1., 0., 0.), Vec3::new(0., 1., 0.5))
}

/// Closed square with corners `(±1, ±1, 0)`, counter-clockwise seen from `+z`.
pub fn square() -> Curve3 {
    Curve3::polyline(
        &[
            Point3::new(1., -1., 0.),
            Point3::new(1., 1., 0.),
            Point3::new(-1., 1., 0.),
            Point3::new(-1., -1., 0.),
        ],
        true,
    )
    .expect("valid polyline")
}

/// A closed space curve with frequencies `(1, 1, 2)`.
pub fn lissajous() -> Curve3 {
    Curve3::single(
        LissajousSegment {
            center: Point3::new(0.1, 0.0, 0.2),
            amplitude: Vec3::new(1.0, 0.8, 0.5),
            frequency: [1.0, 1.0, 2.0],
            phase: [std::f64::consts::FRAC_PI_2, 0.0, 0.3],
        },
        true,
    )
    .expect("valid curve")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Xi;
    use crate::holo::HoloFn;

    #[test]
    fn frames_have_expected_defects() {
        assert!((frame_a().laplace_defect() + crate::algebra::HQ::ONE).norm() < 1e-15);
        assert_eq!(frame_harmonic().laplace_defect().norm(), 0.0);
    }

    #[test]
    fn stock_maps_have_nonvanishing_third_derivative() {
        for (name, m) in stock_maps(frame_a()) {
            let third: Vec<HoloFn> = m.components().iter().map(|f| f.deriv().deriv().deriv()).collect();
            assert!(third.iter().any(|f| !f.is_zero()), "{name}");
            assert!(m.has_canonical_pattern());
        }
        assert_eq!(stock_maps(frame_a()).len(), 5);
        assert_eq!(stock_fields().len(), 4);
    }

    #[test]
    fn stock_curves_are_closed() {
        for c in [xy_circle(), tilted_circle(), square(), lissajous()] {
            assert!(c.is_closed());
            assert!((c.start() - c.end()).norm() < 1e-12);
        }
    }

    #[test]
    fn pole_is_away_from_unit_geometry() {
        let pole = Cplx::new(4., 4.);
        for f in [frame_a(), frame_harmonic()] {
            for k in [Xi::Xi1, Xi::Xi2] {
                let p = Point3::new(1., 1., 1.);
                assert!((f.xi(k, p) - pole).norm() > 2.0);
            }
        }
    }
}
