//! TOML run configuration: named frames, maps, fields and geometry plus a
//! list of checks referring to them by name.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use hcmono::geometry::{ArcSegment, BilinearPatch, DiskPatch, ExprSegment, LissajousSegment, Segment3};
use hcmono::{
    Box3, Cplx, Curve3, ExprField, Frame, GMonogenicMap, Handedness, HoloFn, Point3, QuadratureSpec, Region3, Surface3,
    TheoremId, Xi,
};
use serde::Deserialize;

use crate::error::CliError;

/// A complex number written as a real number, an `[re, im]` pair, or a
/// string such as `"2 - 0.5i"`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum NumSpec {
    Real(f64),
    Pair([f64; 2]),
    Text(String),
}

impl NumSpec {
    pub fn value(&self) -> Result<Cplx, String> {
        match self {
            NumSpec::Real(x) => Ok(Cplx::new(*x, 0.0)),
            NumSpec::Pair([re, im]) => Ok(Cplx::new(*re, *im)),
            NumSpec::Text(s) => {
                let e = hcmono::expr::Expr::parse(s, &[]).map_err(|e| format!("bad number `{s}`: {e}"))?;
                e.eval(&[]).map_err(|e| format!("bad number `{s}`: {e}"))
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameSpec {
    pub a1: NumSpec,
    pub a2: NumSpec,
    pub b1: NumSpec,
    pub b2: NumSpec,
}

impl FrameSpec {
    pub fn params(&self) -> Result<[Cplx; 4], String> {
        Ok([self.a1.value()?, self.a2.value()?, self.b1.value()?, self.b2.value()?])
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub frame: String,
    pub handedness: Handedness,
    pub components: [String; 4],
    /// Overrides which of `xi1`/`xi2` feeds each component (values 1 or 2).
    pub pattern: Option<[u8; 4]>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub components: [String; 4],
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveSpec {
    Circle {
        center: [f64; 3],
        normal: [f64; 3],
        radius: f64,
    },
    Ellipse {
        center: [f64; 3],
        u: [f64; 3],
        v: [f64; 3],
    },
    Arc {
        center: [f64; 3],
        u: [f64; 3],
        v: [f64; 3],
        theta0: f64,
        theta1: f64,
        #[serde(default)]
        drift: Option<[f64; 3]>,
    },
    Polyline {
        points: Vec<[f64; 3]>,
        #[serde(default)]
        closed: bool,
    },
    Lissajous {
        center: [f64; 3],
        amplitude: [f64; 3],
        frequency: [f64; 3],
        #[serde(default)]
        phase: [f64; 3],
    },
    Parametric {
        x: String,
        y: String,
        z: String,
        t0: f64,
        t1: f64,
        #[serde(default)]
        closed: bool,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SurfaceSpec {
    /// Bilinear patch through four corners `p00, p10, p01, p11`.
    Patch { corners: [[f64; 3]; 4] },
    Parallelogram {
        origin: [f64; 3],
        du: [f64; 3],
        dv: [f64; 3],
    },
    Disk {
        center: [f64; 3],
        e1: [f64; 3],
        e2: [f64; 3],
        radius: f64,
    },
    /// Outward boundary of a named single-box region.
    BoxBoundary { region: String },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionSpec {
    /// Boxes as `[min, max]` corner pairs.
    pub boxes: Vec<[[f64; 3]; 2]>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureOverrides {
    pub nodes_per_segment: Option<usize>,
    pub tol: Option<f64>,
    pub max_subdivisions: Option<u32>,
    pub parallel: Option<bool>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub tol: Option<f64>,
    pub clearance: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSpec {
    pub theorem: String,
    #[serde(default)]
    pub label: Option<String>,
    #[serde(default)]
    pub map: Option<String>,
    #[serde(default)]
    pub field: Option<String>,
    #[serde(default)]
    pub frame: Option<String>,
    #[serde(default)]
    pub curve: Option<String>,
    #[serde(default)]
    pub curves: Option<[String; 2]>,
    #[serde(default)]
    pub surface: Option<String>,
    #[serde(default)]
    pub region: Option<String>,
    /// Interior points for the Cauchy formula.
    #[serde(default)]
    pub points: Vec<[f64; 3]>,
    /// Additional interior points drawn uniformly from a ball.
    #[serde(default)]
    pub random_points: Option<RandomPoints>,
    #[serde(default)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomPoints {
    pub count: usize,
    #[serde(default)]
    pub center: [f64; 3],
    pub radius: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    #[serde(default)]
    pub output: Option<String>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub quadrature: QuadratureOverrides,
    #[serde(default)]
    pub settings: Settings,
    #[serde(default)]
    pub frames: BTreeMap<String, FrameSpec>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapSpec>,
    #[serde(default)]
    pub fields: BTreeMap<String, FieldSpec>,
    #[serde(default)]
    pub curves: BTreeMap<String, CurveSpec>,
    #[serde(default)]
    pub surfaces: BTreeMap<String, SurfaceSpec>,
    #[serde(default)]
    pub regions: BTreeMap<String, RegionSpec>,
    #[serde(default)]
    pub checks: Vec<CheckSpec>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<RawConfig, CliError> {
        toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }
}

/// What a Stokes or Gauss-Ostrogradsky check integrates.
#[derive(Debug, Clone)]
pub enum Integrand {
    Map(String),
    Field(String),
}

/// One resolved check, still referring to specs by name.
#[derive(Debug, Clone)]
pub struct Check {
    pub index: usize,
    pub theorem: TheoremId,
    pub label: Option<String>,
    pub map: Option<String>,
    pub integrand: Option<Integrand>,
    pub frame: Option<String>,
    pub curves: Vec<String>,
    pub surface: Option<String>,
    pub region: Option<String>,
    pub points: Vec<Point3>,
    pub random_points: Option<RandomPoints>,
    pub tol: Option<f64>,
}

/// A fully validated configuration.
pub struct Suite {
    pub output: Option<String>,
    pub seed: Option<u64>,
    pub quadrature: QuadratureSpec,
    pub tol: f64,
    pub clearance: f64,
    pub frames: BTreeMap<String, Frame>,
    pub maps: BTreeMap<String, GMonogenicMap>,
    pub fields: BTreeMap<String, ExprField>,
    pub curves: BTreeMap<String, Curve3>,
    pub surfaces: BTreeMap<String, Surface3>,
    pub regions: BTreeMap<String, Region3>,
    pub checks: Vec<Check>,
}

fn p3(a: [f64; 3]) -> Point3 {
    Point3::from(a)
}

/// Collects every problem instead of stopping at the first.
#[derive(Default)]
struct Problems(Vec<String>);

impl Problems {
    fn push(&mut self, msg: impl fmt::Display) {
        self.0.push(msg.to_string());
    }
}

pub fn build_curve(spec: &CurveSpec) -> Result<Curve3, String> {
    let c = match spec {
        CurveSpec::Circle { center, normal, radius } => Curve3::circle(p3(*center), p3(*normal), *radius),
        CurveSpec::Ellipse { center, u, v } => Ok(Curve3::ellipse(p3(*center), p3(*u), p3(*v))),
        CurveSpec::Arc {
            center,
            u,
            v,
            theta0,
            theta1,
            drift,
        } => Curve3::single(
            ArcSegment {
                center: p3(*center),
                u: p3(*u),
                v: p3(*v),
                theta0: *theta0,
                theta1: *theta1,
                drift: p3(drift.unwrap_or([0.0; 3])),
            },
            false,
        ),
        CurveSpec::Polyline { points, closed } => {
            let pts: Vec<Point3> = points.iter().map(|p| p3(*p)).collect();
            Curve3::polyline(&pts, *closed)
        }
        CurveSpec::Lissajous {
            center,
            amplitude,
            frequency,
            phase,
        } => {
            let seg = LissajousSegment {
                center: p3(*center),
                amplitude: p3(*amplitude),
                frequency: *frequency,
                phase: *phase,
            };
            let closed = frequency.iter().all(|f| f.fract() == 0.0);
            Curve3::single(seg, closed)
        }
        CurveSpec::Parametric {
            x,
            y,
            z,
            t0,
            t1,
            closed,
        } => ExprSegment::parse(x, y, z, *t0, *t1)
            .and_then(|seg| Curve3::new(vec![Arc::new(seg) as Arc<dyn Segment3>], *closed)),
    };
    c.map_err(|e| e.to_string())
}

pub fn build_map(spec: &MapSpec, frame: Frame) -> Result<GMonogenicMap, String> {
    let mut comps = Vec::with_capacity(4);
    for (k, src) in spec.components.iter().enumerate() {
        comps.push(HoloFn::parse(src).map_err(|e| format!("component F{}: {e}", k + 1))?);
    }
    let comps: [HoloFn; 4] = comps.try_into().expect("four components");
    let mut m = GMonogenicMap::new(spec.handedness, comps, frame);
    if let Some(pat) = spec.pattern {
        let mut xs = [Xi::Xi1; 4];
        for (slot, k) in xs.iter_mut().zip(pat) {
            *slot = Xi::from_index(k).ok_or_else(|| format!("pattern entries must be 1 or 2, got {k}"))?;
        }
        m = m.with_argument_pattern(xs);
    }
    Ok(m)
}

fn build_region(spec: &RegionSpec) -> Result<Region3, String> {
    let boxes = spec
        .boxes
        .iter()
        .map(|[lo, hi]| Box3::new(p3(*lo), p3(*hi)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    Region3::new(boxes).map_err(|e| e.to_string())
}

fn build_surface(spec: &SurfaceSpec, regions: &BTreeMap<String, Region3>) -> Result<Surface3, String> {
    let s = match spec {
        SurfaceSpec::Patch { corners: [a, b, c, d] } => Surface3::single(BilinearPatch {
            p00: p3(*a),
            p10: p3(*b),
            p01: p3(*c),
            p11: p3(*d),
        }),
        SurfaceSpec::Parallelogram { origin, du, dv } => {
            Surface3::single(BilinearPatch::parallelogram(p3(*origin), p3(*du), p3(*dv)))
        }
        SurfaceSpec::Disk { center, e1, e2, radius } => Surface3::single(DiskPatch {
            center: p3(*center),
            e1: p3(*e1),
            e2: p3(*e2),
            radius: *radius,
        }),
        SurfaceSpec::BoxBoundary { region } => {
            let r = regions
                .get(region)
                .ok_or_else(|| format!("unknown region `{region}`"))?;
            hcmono::box_boundary(r)
        }
    };
    s.map_err(|e| e.to_string())
}

impl Suite {
    /// Builds every named object and validates every check. All problems
    /// are reported together.
    pub fn from_raw(raw: RawConfig) -> Result<Suite, CliError> {
        let mut bad = Problems::default();

        let defaults = QuadratureSpec::default();
        let quadrature = QuadratureSpec {
            nodes_per_segment: raw.quadrature.nodes_per_segment.unwrap_or(defaults.nodes_per_segment),
            tol: raw.quadrature.tol.unwrap_or(defaults.tol),
            max_subdivisions: raw.quadrature.max_subdivisions.unwrap_or(defaults.max_subdivisions),
            parallel: raw.quadrature.parallel.unwrap_or(defaults.parallel),
        };
        if let Err(e) = quadrature.validate() {
            bad.push(format!("quadrature: {e}"));
        }
        let vdef = hcmono::VerifySettings::default();
        let tol = raw.settings.tol.unwrap_or(vdef.tol);
        let clearance = raw.settings.clearance.unwrap_or(vdef.clearance);
        if !(tol.is_finite() && tol >= 0.0) {
            bad.push(format!("settings.tol must be a non-negative number, got {tol}"));
        }
        if !(clearance.is_finite() && clearance > 0.0) {
            bad.push(format!("settings.clearance must be positive, got {clearance}"));
        }

        let mut frames = BTreeMap::new();
        for (name, spec) in &raw.frames {
            match spec
                .params()
                .and_then(|[a1, a2, b1, b2]| Frame::new(a1, a2, b1, b2).map_err(|e| e.to_string()))
            {
                Ok(f) => {
                    frames.insert(name.clone(), f);
                }
                Err(e) => bad.push(format!("frame `{name}`: {e}")),
            }
        }

        let mut maps = BTreeMap::new();
        for (name, spec) in &raw.maps {
            let Some(frame) = frames.get(&spec.frame) else {
                if !raw.frames.contains_key(&spec.frame) {
                    bad.push(format!("map `{name}`: unknown frame `{}`", spec.frame));
                }
                continue;
            };
            match build_map(spec, *frame) {
                Ok(m) => {
                    maps.insert(name.clone(), m);
                }
                Err(e) => bad.push(format!("map `{name}`: {e}")),
            }
        }

        let mut fields = BTreeMap::new();
        for (name, spec) in &raw.fields {
            let srcs = [
                &*spec.components[0],
                &*spec.components[1],
                &*spec.components[2],
                &*spec.components[3],
            ];
            match ExprField::parse(srcs) {
                Ok(f) => {
                    fields.insert(name.clone(), f);
                }
                Err(e) => bad.push(format!("field `{name}`: {e}")),
            }
        }

        let mut curves = BTreeMap::new();
        for (name, spec) in &raw.curves {
            match build_curve(spec) {
                Ok(c) => {
                    curves.insert(name.clone(), c);
                }
                Err(e) => bad.push(format!("curve `{name}`: {e}")),
            }
        }

        let mut regions = BTreeMap::new();
        for (name, spec) in &raw.regions {
            match build_region(spec) {
                Ok(r) => {
                    regions.insert(name.clone(), r);
                }
                Err(e) => bad.push(format!("region `{name}`: {e}")),
            }
        }

        let mut surfaces = BTreeMap::new();
        for (name, spec) in &raw.surfaces {
            match build_surface(spec, &regions) {
                Ok(s) => {
                    surfaces.insert(name.clone(), s);
                }
                Err(e) => bad.push(format!("surface `{name}`: {e}")),
            }
        }

        if raw.checks.is_empty() {
            bad.push("no checks configured");
        }
        let mut checks = Vec::new();
        for (index, spec) in raw.checks.iter().enumerate() {
            let before = bad.0.len();
            let check = resolve_check(index, spec, &raw, &maps, &curves, &surfaces, &regions, &mut bad);
            if bad.0.len() == before {
                checks.push(check);
            }
        }

        if !bad.0.is_empty() {
            return Err(CliError::Invalid(bad.0));
        }
        Ok(Suite {
            output: raw.output,
            seed: raw.seed,
            quadrature,
            tol,
            clearance,
            frames,
            maps,
            fields,
            curves,
            surfaces,
            regions,
            checks,
        })
    }
}

#[allow(clippy::too_many_arguments)]
fn resolve_check(
    index: usize,
    spec: &CheckSpec,
    raw: &RawConfig,
    maps: &BTreeMap<String, GMonogenicMap>,
    curves: &BTreeMap<String, Curve3>,
    surfaces: &BTreeMap<String, Surface3>,
    regions: &BTreeMap<String, Region3>,
    bad: &mut Problems,
) -> Check {
    let at = format!("check #{} ({})", index + 1, spec.theorem);
    let theorem = match spec.theorem.parse::<TheoremId>() {
        Ok(t) => t,
        Err(e) => {
            bad.push(format!("{at}: {e}"));
            TheoremId::T1Curve
        }
    };
    let mut check = Check {
        index,
        theorem,
        label: spec.label.clone(),
        map: None,
        integrand: None,
        frame: None,
        curves: Vec::new(),
        surface: None,
        region: None,
        points: spec.points.iter().map(|p| p3(*p)).collect(),
        random_points: spec.random_points,
        tol: spec.tol,
    };

    // `Some(name)` only when the reference exists; unknown names are
    // reported once here and the invalid object itself was reported above.
    let lookup = |bad: &mut Problems, what: &str, name: &Option<String>, known: bool| -> Option<String> {
        match name {
            None => {
                bad.push(format!("{at}: missing `{what}`"));
                None
            }
            Some(n) if !known => {
                bad.push(format!("{at}: unknown {what} `{n}`"));
                None
            }
            Some(n) => Some(n.clone()),
        }
    };
    let need_map = |bad: &mut Problems| {
        let known = spec
            .map
            .as_ref()
            .is_some_and(|n| maps.contains_key(n) || raw.maps.contains_key(n));
        lookup(bad, "map", &spec.map, known)
    };
    let need_curve = |bad: &mut Problems, name: &Option<String>| {
        let known = name
            .as_ref()
            .is_some_and(|n| curves.contains_key(n) || raw.curves.contains_key(n));
        lookup(bad, "curve", name, known)
    };
    let need_region = |bad: &mut Problems| {
        let known = spec
            .region
            .as_ref()
            .is_some_and(|n| regions.contains_key(n) || raw.regions.contains_key(n));
        lookup(bad, "region", &spec.region, known)
    };

    match theorem {
        TheoremId::T1Curve | TheoremId::Lemma => {
            check.map = need_map(bad);
            if let Some(c) = need_curve(bad, &spec.curve) {
                if theorem == TheoremId::T1Curve && curves.get(&c).is_some_and(|c| !c.is_closed()) {
                    bad.push(format!("{at}: curve `{c}` is not closed"));
                }
                check.curves.push(c);
            }
        }
        TheoremId::T2HomotopyInstance => {
            check.map = need_map(bad);
            match &spec.curves {
                None => bad.push(format!("{at}: missing `curves` (a pair of closed curves)")),
                Some(pair) => {
                    for name in pair {
                        if let Some(c) = need_curve(bad, &Some(name.clone())) {
                            if curves.get(&c).is_some_and(|c| !c.is_closed()) {
                                bad.push(format!("{at}: curve `{c}` is not closed"));
                            }
                            check.curves.push(c);
                        }
                    }
                }
            }
        }
        TheoremId::T3FormulaRight | TheoremId::T3FormulaLeft => {
            check.map = need_map(bad);
            if let Some(m) = check.map.as_ref().and_then(|m| maps.get(m)) {
                let want = if theorem == TheoremId::T3FormulaRight {
                    Handedness::Right
                } else {
                    Handedness::Left
                };
                if m.handedness() != want {
                    bad.push(format!(
                        "{at}: map `{}` is {}-handed",
                        spec.map.as_deref().unwrap_or(""),
                        m.handedness()
                    ));
                }
            }
            if let Some(c) = need_curve(bad, &spec.curve) {
                if curves.get(&c).is_some_and(|c| !c.is_closed()) {
                    bad.push(format!("{at}: curve `{c}` is not closed"));
                }
                check.curves.push(c);
            }
            if spec.points.is_empty() && spec.random_points.is_none() {
                bad.push(format!("{at}: needs `points` or `random_points`"));
            }
            if let Some(r) = spec.random_points {
                if !(r.radius.is_finite() && r.radius > 0.0) {
                    bad.push(format!("{at}: random_points.radius must be positive"));
                }
            }
        }
        TheoremId::StokesR | TheoremId::StokesL | TheoremId::GaussOstrR | TheoremId::GaussOstrL => {
            check.integrand = match (&spec.map, &spec.field) {
                (Some(_), None) => need_map(bad).map(Integrand::Map),
                (None, Some(f)) => {
                    if raw.fields.contains_key(f) {
                        Some(Integrand::Field(f.clone()))
                    } else {
                        bad.push(format!("{at}: unknown field `{f}`"));
                        None
                    }
                }
                _ => {
                    bad.push(format!("{at}: exactly one of `map` or `field` is required"));
                    None
                }
            };
            match (&check.integrand, &spec.frame) {
                (Some(Integrand::Field(_)), None) => bad.push(format!("{at}: a `field` check needs a `frame`")),
                (_, Some(f)) if !raw.frames.contains_key(f) => bad.push(format!("{at}: unknown frame `{f}`")),
                (_, Some(f)) => check.frame = Some(f.clone()),
                _ => {}
            }
            if matches!(theorem, TheoremId::StokesR | TheoremId::StokesL) {
                let known = spec.surface.as_ref().is_some_and(|n| raw.surfaces.contains_key(n));
                check.surface = lookup(bad, "surface", &spec.surface, known);
                if let Some(s) = check.surface.as_ref().and_then(|s| surfaces.get(s)) {
                    if s.patches().len() != 1 {
                        bad.push(format!("{at}: Stokes checks need a single-patch surface"));
                    }
                }
            } else {
                check.region = need_region(bad);
                single_box(&at, &check.region, regions, bad);
            }
        }
        TheoremId::T4Surface | TheoremId::Corollary => {
            check.map = need_map(bad);
            check.region = need_region(bad);
            single_box(&at, &check.region, regions, bad);
            if theorem == TheoremId::Corollary {
                if let Some(m) = check.map.as_ref().and_then(|m| maps.get(m)) {
                    let d = m.frame().laplace_defect().norm();
                    if d > hcmono::verify::HARMONIC_TOL {
                        bad.push(format!(
                            "{at}: frame of map `{}` is not harmonic (defect norm {d:e})",
                            spec.map.as_deref().unwrap_or("")
                        ));
                    }
                }
            }
        }
    }
    check
}

fn single_box(at: &str, region: &Option<String>, regions: &BTreeMap<String, Region3>, bad: &mut Problems) {
    if let Some(r) = region.as_ref().and_then(|r| regions.get(r)) {
        if r.boxes().len() != 1 {
            bad.push(format!("{at}: region must be a single box"));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_in_all_spellings() {
        let cfg: BTreeMap<String, NumSpec> =
            toml::from_str("a = 2\nb = [0.5, -1]\nc = \"1 - 2i\"\nd = \"-i\"").unwrap();
        assert_eq!(cfg["a"].value().unwrap(), Cplx::new(2., 0.));
        assert_eq!(cfg["b"].value().unwrap(), Cplx::new(0.5, -1.));
        assert_eq!(cfg["c"].value().unwrap(), Cplx::new(1., -2.));
        assert_eq!(cfg["d"].value().unwrap(), Cplx::new(0., -1.));
        assert!(NumSpec::Text("1 +".into()).value().is_err());
    }

    #[test]
    fn unresolved_references_are_listed_together() {
        let raw = RawConfig::parse(
            r#"
            [frames.A]
            a1 = [0, 1]
            a2 = [0, 1]
            b1 = [0, 1]
            b2 = [0, -1]
            [maps.m]
            frame = "B"
            handedness = "right"
            components = ["xi", "xi", "0", "0"]
            [[checks]]
            theorem = "T1_curve"
            map = "nope"
            curve = "missing"
            [[checks]]
            theorem = "Bogus"
            "#,
        )
        .unwrap();
        let Err(CliError::Invalid(list)) = Suite::from_raw(raw) else {
            panic!("expected validation errors")
        };
        let text = list.join("\n");
        assert!(text.contains("unknown frame `B`"), "{text}");
        assert!(text.contains("unknown map `nope`"), "{text}");
        assert!(text.contains("unknown curve `missing`"), "{text}");
        assert!(text.contains("unknown theorem id `Bogus`"), "{text}");
    }

    #[test]
    fn open_curve_rejected_for_closed_curve_checks() {
        let raw = RawConfig::parse(
            r#"
            [frames.A]
            a1 = "i"
            a2 = "i"
            b1 = "i"
            b2 = "-i"
            [maps.m]
            frame = "A"
            handedness = "right"
            components = ["xi", "xi", "0", "0"]
            [curves.seg]
            kind = "polyline"
            points = [[0, 0, 0], [1, 0, 0]]
            [[checks]]
            theorem = "T1_curve"
            map = "m"
            curve = "seg"
            "#,
        )
        .unwrap();
        let Err(CliError::Invalid(list)) = Suite::from_raw(raw) else {
            panic!("expected validation errors")
        };
        assert!(list[0].contains("not closed"));
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = RawConfig::parse("[frames.A]\na1 = [0, 1\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }
}
