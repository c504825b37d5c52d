//! Human-readable summaries of frames and maps.

use std::fmt::Write;

use hcmono::{Cplx, Frame, Point3, Xi};

use crate::config::{build_map, RawConfig};
use crate::error::CliError;

fn cplx(z: Cplx) -> String {
    format!("{}{:+}i", z.re, z.im)
}

fn vec3(p: Point3) -> String {
    let t = |v: f64| if v == 0.0 { 0.0 } else { v };
    format!("({}, {}, {})", t(p.x), t(p.y), t(p.z))
}

/// Describes a frame given by its raw parameters, including why it is
/// rejected when it is.
pub fn describe_frame(name: &str, params: [Cplx; 4]) -> String {
    let [a1, a2, b1, b2] = params;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "frame {name}: a1={} a2={} b1={} b2={}",
        cplx(a1),
        cplx(a2),
        cplx(b1),
        cplx(b2)
    );
    match Frame::new(a1, a2, b1, b2) {
        Err(e) => {
            let _ = writeln!(out, "  valid: no ({e})");
        }
        Ok(f) => {
            let _ = writeln!(out, "  valid: yes");
            for k in [Xi::Xi1, Xi::Xi2] {
                let (a, b) = f.coeffs(k);
                let _ = writeln!(out, "  xi{} = x + ({}) y + ({}) z", k.index(), cplx(a), cplx(b));
            }
            let _ = writeln!(out, "  i2 = {}", f.i2());
            let _ = writeln!(out, "  i3 = {}", f.i3());
            for k in [Xi::Xi1, Xi::Xi2] {
                let l = f.noninvertibility_line(k);
                let _ = writeln!(out, "  L{} direction: {}", k.index(), vec3(l.direction));
            }
            let d = f.laplace_defect();
            let _ = writeln!(out, "  laplace defect: {} = {}", cplx(d.c[0]), d);
            let _ = writeln!(
                out,
                "  harmonic: {}",
                if f.is_harmonic(hcmono::verify::HARMONIC_TOL) {
                    "yes"
                } else {
                    "no"
                }
            );
        }
    }
    out
}

/// Parses `"a1,a2,b1,b2"` with each entry in the expression syntax.
pub fn parse_frame_literal(s: &str) -> Result<[Cplx; 4], CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(CliError::Usage(format!(
            "expected four comma-separated numbers, got `{s}`"
        )));
    }
    let mut out = [Cplx::new(0.0, 0.0); 4];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = crate::config::NumSpec::Text(p.to_string())
            .value()
            .map_err(CliError::Usage)?;
    }
    Ok(out)
}

/// Stock frames usable by name without a config.
pub fn builtin_frame(name: &str) -> Option<[Cplx; 4]> {
    match name {
        "frame_a" => Some(hcmono::stock::frame_a().params()),
        "frame_harmonic" => Some(hcmono::stock::frame_harmonic().params()),
        _ => None,
    }
}

/// Looks `name` up among the config's frames, then maps, then the stock frames.
pub fn describe_name(name: &str, raw: Option<&RawConfig>) -> Result<String, CliError> {
    if let Some(raw) = raw {
        if let Some(spec) = raw.frames.get(name) {
            let params = spec
                .params()
                .map_err(|e| CliError::Invalid(vec![format!("frame `{name}`: {e}")]))?;
            return Ok(describe_frame(name, params));
        }
        if let Some(spec) = raw.maps.get(name) {
            let fspec = raw
                .frames
                .get(&spec.frame)
                .ok_or_else(|| CliError::Invalid(vec![format!("map `{name}`: unknown frame `{}`", spec.frame)]))?;
            let params = fspec
                .params()
                .map_err(|e| CliError::Invalid(vec![format!("frame `{}`: {e}", spec.frame)]))?;
            let [a1, a2, b1, b2] = params;
            let frame = Frame::new(a1, a2, b1, b2)
                .map_err(|e| CliError::Invalid(vec![format!("frame `{}`: {e}", spec.frame)]))?;
            let m = build_map(spec, frame).map_err(|e| CliError::Invalid(vec![format!("map `{name}`: {e}")]))?;
            let mut out = String::new();
            let _ = writeln!(out, "map {name}: {m}");
            let _ = writeln!(out, "  frame: {} ({frame})", spec.frame);
            let _ = writeln!(
                out,
                "  canonical argument pattern: {}",
                if m.has_canonical_pattern() { "yes" } else { "no" }
            );
            let _ = writeln!(out, "  derivative: {}", m.map_derivative());
            let probe = Point3::new(0.1, 0.2, 0.3);
            match m.cr_residual_default(probe) {
                Ok((ry, rz)) => {
                    let _ = writeln!(out, "  cauchy-riemann residuals at {}: {ry:.3e}, {rz:.3e}", vec3(probe));
                }
                Err(e) => {
                    let _ = writeln!(out, "  cauchy-riemann residuals at {}: {e}", vec3(probe));
                }
            }
            return Ok(out);
        }
    }
    builtin_frame(name)
        .map(|p| describe_frame(name, p))
        .ok_or_else(|| CliError::UnknownName(name.to_string()))
}
