use hcmono::geometry::{BilinearPatch, DiskPatch};
use hcmono::stock::{self, frame_a, frame_harmonic};
use hcmono::verify::{self, VerificationReport, VerifySettings};
use hcmono::{
    Cplx, Curve3, Error, FormSide, Frame, GMonogenicMap, HoloFn, Point3, QuadratureSpec, Region3, Surface3, Vec3, Xi,
};
use proptest::prelude::*;

fn settings(qtol: f64) -> VerifySettings {
    VerifySettings {
        quadrature: QuadratureSpec::default().with_tol(qtol),
        ..VerifySettings::default()
    }
}

fn disk() -> Surface3 {
    Surface3::single(DiskPatch {
        center: Point3::new(0.1, 0.2, 0.3),
        e1: Vec3::new(1., 0., 0.),
        e2: Vec3::new(0., 0.6, 0.8),
        radius: 0.9,
    })
    .unwrap()
}

fn slab() -> Region3 {
    Region3::cube(Point3::new(-0.5, 0., 0.2), Point3::new(1., 0.3, 2.2)).unwrap()
}

/// Every kind of check on a fixed instance, at a given quadrature tolerance.
fn all_reports(frame: Frame, s: &VerifySettings) -> Vec<VerificationReport> {
    let maps = stock::stock_maps(frame);
    let field = &stock::stock_fields()[1].1;
    let mut out = Vec::new();
    for (_, m) in &maps {
        out.push(verify::verify_cauchy_curve(m, &stock::lissajous(), s).unwrap());
        out.push(verify::verify_homotopy_instance(m, &stock::xy_circle(), &stock::square(), s).unwrap());
        out.push(verify::verify_lemma(m, &stock::tilted_circle(), s).unwrap());
        out.push(verify::verify_cauchy_formula(m, Point3::new(0.1, 0.05, 0.02), &stock::tilted_circle(), s).unwrap());
        out.push(verify::verify_stokes(m, &disk(), &frame, FormSide::Left, s).unwrap());
        out.push(verify::verify_gauss_ostr(m, &slab(), &frame, FormSide::Right, s).unwrap());
        out.push(verify::verify_surface_theorem(m, &Region3::unit(), s).unwrap());
        if frame.is_harmonic(1e-12) {
            out.push(verify::verify_corollary(m, &slab(), s).unwrap());
        }
    }
    out.push(verify::verify_stokes(field, &disk(), &frame, FormSide::Right, s).unwrap());
    out.push(verify::verify_gauss_ostr(field, &Region3::unit(), &frame, FormSide::Left, s).unwrap());
    out
}

#[test]
fn passed_flag_matches_residual_everywhere() {
    for frame in [frame_a(), frame_harmonic()] {
        for r in all_reports(frame, &settings(1e-9)) {
            assert_eq!(r.passed, r.residual <= r.tol, "{:?}", r.theorem_id);
            assert!(r.passed, "{:?} residual {:e}", r.theorem_id, r.residual);
        }
    }
}

#[test]
fn tightening_quadrature_does_not_inflate_residuals() {
    // residuals at the level of rounding noise are compared against a floor
    const FLOOR: f64 = 1e-13;
    for frame in [frame_a(), frame_harmonic()] {
        let loose = all_reports(frame, &settings(1e-8));
        let tight = all_reports(frame, &settings(1e-9));
        for (a, b) in loose.iter().zip(&tight) {
            assert_eq!(a.theorem_id, b.theorem_id);
            assert!(
                b.residual <= 2.0 * a.residual.max(FLOOR),
                "{:?}: {:e} -> {:e}",
                a.theorem_id,
                a.residual,
                b.residual
            );
        }
    }
}

#[test]
fn negative_controls() {
    let s = settings(1e-9);
    let f = frame_a();
    let fails = |r: VerificationReport| {
        assert!(
            !r.passed && r.residual > 100.0 * r.tol,
            "{:?}: {:e}",
            r.theorem_id,
            r.residual
        )
    };

    let broken = GMonogenicMap::right(
        [
            HoloFn::zero(),
            HoloFn::zero(),
            HoloFn::parse("xi").unwrap(),
            HoloFn::zero(),
        ],
        f,
    )
    .with_argument_pattern([Xi::Xi1, Xi::Xi2, Xi::Xi2, Xi::Xi2]);
    fails(verify::verify_cauchy_curve(&broken, &stock::tilted_circle(), &s).unwrap());
    fails(verify::verify_lemma(&broken, &stock::tilted_circle(), &s).unwrap());
    fails(verify::verify_cauchy_formula(&broken, Point3::new(0.1, 0.1, 0.), &stock::tilted_circle(), &s).unwrap());

    let open = Curve3::polyline(&[Point3::ORIGIN, Point3::new(1., 1., 0.)], false).unwrap();
    let good = stock::identity_map(f);
    assert_eq!(
        verify::verify_cauchy_curve(&good, &open, &s).unwrap_err(),
        Error::NotClosed
    );
    assert_eq!(
        verify::verify_homotopy_instance(&good, &open, &stock::square(), &s).unwrap_err(),
        Error::NotClosed
    );
    assert!(matches!(
        verify::verify_cauchy_formula(&good, Point3::new(5., 0., 0.), &stock::tilted_circle(), &s),
        Err(Error::NotEmbracing { .. })
    ));

    // Stokes against the wrongly oriented edge
    let square = Surface3::single(BilinearPatch::parallelogram(
        Point3::ORIGIN,
        Vec3::new(1., 0., 0.),
        Vec3::new(0., 1., 0.),
    ))
    .unwrap();
    let field = &stock::stock_fields()[0].1;
    let edge = square.boundary().unwrap().reversed();
    fails(verify::verify_stokes_with_edge(field, &square, &edge, &f, FormSide::Left, &s).unwrap());

    // a quadratic map written with the wrong argument pattern breaks the
    // surface theorem and the harmonic corollary
    let sq = HoloFn::parse("xi^2").unwrap();
    let wrong = GMonogenicMap::left([HoloFn::zero(), HoloFn::zero(), sq.clone(), sq.clone()], f)
        .with_argument_pattern([Xi::Xi1, Xi::Xi2, Xi::Xi1, Xi::Xi2]);
    fails(verify::verify_surface_theorem(&wrong, &Region3::unit(), &s).unwrap());
    let wrong_h = GMonogenicMap::right(
        [HoloFn::zero(), HoloFn::zero(), sq.clone(), HoloFn::zero()],
        frame_harmonic(),
    )
    .with_argument_pattern([Xi::Xi1, Xi::Xi2, Xi::Xi2, Xi::Xi2]);
    fails(verify::verify_corollary(&wrong_h, &Region3::unit(), &s).unwrap());
    assert!(matches!(
        verify::verify_corollary(&good, &Region3::unit(), &s),
        Err(Error::FrameNotHarmonic { .. })
    ));

    // the divergence form with the wrong multiplication order
    let e3y = hcmono::ExprField::parse(["0", "0", "y", "0"]).unwrap();
    let g = Frame::new(
        Cplx::new(0., 1.),
        Cplx::new(0., -1.),
        Cplx::new(0., 1.),
        Cplx::new(0., 2.),
    )
    .unwrap();
    let left = verify::verify_gauss_ostr(&e3y, &Region3::unit(), &g, FormSide::Left, &s).unwrap();
    let right = verify::verify_gauss_ostr(&e3y, &Region3::unit(), &g, FormSide::Right, &s).unwrap();
    assert!(left.passed && right.passed);
    assert!((left.sides[0] - right.sides[1]).norm() > 1.0);
}

#[test]
fn parallel_and_serial_are_bitwise_equal() {
    let serial = settings(1e-9);
    let parallel = VerifySettings {
        quadrature: serial.quadrature.with_parallel(true),
        ..serial
    };
    for frame in [frame_a(), frame_harmonic()] {
        for (a, b) in all_reports(frame, &serial).iter().zip(all_reports(frame, &parallel)) {
            assert_eq!(a.sides, b.sides, "{:?}", a.theorem_id);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_circles_give_vanishing_integrals(
        cx in -0.5f64..0.5, cy in -0.5f64..0.5, cz in -0.5f64..0.5,
        nx in -1f64..1., ny in -1f64..1., nz in 0.2f64..1.,
        radius in 0.1f64..1.5,
        which in 0usize..5,
    ) {
        let c = Curve3::circle(Point3::new(cx, cy, cz), Vec3::new(nx, ny, nz), radius).unwrap();
        for frame in [frame_a(), frame_harmonic()] {
            let m = &stock::stock_maps(frame)[which].1;
            let r = verify::verify_cauchy_curve(m, &c, &settings(1e-9)).unwrap();
            prop_assert!(r.residual < 1e-8, "{:e}", r.residual);
        }
    }

    #[test]
    fn random_interior_points_are_reconstructed(
        x in -0.25f64..0.25, y in -0.25f64..0.25, z in -0.1f64..0.1,
        which in 0usize..5,
    ) {
        for frame in [frame_a(), frame_harmonic()] {
            let m = &stock::stock_maps(frame)[which].1;
            let r = verify::verify_cauchy_formula(m, Point3::new(x, y, z), &stock::tilted_circle(), &settings(1e-9)).unwrap();
            prop_assert!(r.residual < 1e-8, "{:e}", r.residual);
        }
    }

    #[test]
    fn random_boxes_satisfy_surface_theorem(
        x0 in -1f64..0.5, y0 in -1f64..0.5, z0 in -1f64..0.5,
        dx in 0.05f64..1.5, dy in 0.05f64..1.5, dz in 0.05f64..1.5,
        which in 0usize..5,
    ) {
        let r = Region3::cube(Point3::new(x0, y0, z0), Point3::new(x0 + dx, y0 + dy, z0 + dz)).unwrap();
        for frame in [frame_a(), frame_harmonic()] {
            let m = &stock::stock_maps(frame)[which].1;
            let rep = verify::verify_surface_theorem(m, &r, &settings(1e-9)).unwrap();
            prop_assert!(rep.residual < 1e-8, "{:e}", rep.residual);
        }
    }
}
