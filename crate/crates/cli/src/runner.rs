//! Expands validated checks into jobs, runs them and assembles the report.

use hcmono::verify::{self, VerificationReport, VerifySettings};
use hcmono::{DiffField, Error, FormSide, Point3, QuadratureSpec, TheoremId, HQ};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::{Check, Integrand, RandomPoints, Suite};

pub const REPORT_FORMAT: &str = "hcmono-report/1";

/// Run-wide overrides from the command line.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub only: Option<Vec<TheoremId>>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
}

/// One executed check as written to the report.
#[derive(Debug, Clone, Serialize)]
pub struct Entry {
    pub theorem_id: TheoremId,
    pub input_hash: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// `null` when the check raised a numerical error.
    pub residual: Option<f64>,
    pub tol: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub frame: hcmono::Frame,
    pub map: String,
    pub geometry: String,
    pub quadrature: QuadratureSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sides: Option<[HQ; 2]>,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub format: &'static str,
    pub seed: u64,
    pub config_sha256: String,
    pub summary: Summary,
    pub checks: Vec<Entry>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

/// A check that failed its preconditions while running (for example a
/// point that is not embraced); treated like a configuration error.
#[derive(Debug, Clone)]
pub struct Rejected {
    pub check: usize,
    pub theorem: TheoremId,
    pub error: Error,
}

struct Job<'a> {
    check: &'a Check,
    point: Option<Point3>,
}

fn sample_ball(rng: &mut ChaCha8Rng, r: RandomPoints) -> Point3 {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let p = Point3::from(v);
        if p.norm() <= 1.0 {
            return Point3::from(r.center) + p * r.radius;
        }
    }
}

fn expand<'a>(checks: &[&'a Check], seed: u64) -> Vec<Job<'a>> {
    let mut jobs = Vec::new();
    for check in checks {
        if matches!(check.theorem, TheoremId::T3FormulaRight | TheoremId::T3FormulaLeft) {
            for p in &check.points {
                jobs.push(Job { check, point: Some(*p) });
            }
            if let Some(r) = check.random_points {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(check.index as u64));
                for _ in 0..r.count {
                    jobs.push(Job {
                        check,
                        point: Some(sample_ball(&mut rng, r)),
                    });
                }
            }
        } else {
            jobs.push(Job { check, point: None });
        }
    }
    jobs
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn sha256_hex(data: &[u8]) -> String {
    hex(&Sha256::digest(data))
}

fn input_hash(r: &VerificationReport) -> String {
    let key = serde_json::json!({
        "theorem_id": r.theorem_id,
        "frame": r.frame,
        "map": r.map,
        "geometry": r.geometry,
        "quadrature": r.quadrature,
        "tol": r.tol,
    });
    hex(&Sha256::digest(key.to_string().as_bytes())[..8])
}

fn is_precondition(e: &Error) -> bool {
    matches!(
        e,
        Error::NotClosed
            | Error::NotEmbracing { .. }
            | Error::TooClose { .. }
            | Error::FrameNotHarmonic { .. }
            | Error::InvalidGeometry(_)
            | Error::InvalidQuadrature(_)
            | Error::Handedness(_)
            | Error::DependentBasis { .. }
            | Error::NotSurjective { .. }
    )
}

fn run_job(suite: &Suite, job: &Job, settings: &VerifySettings) -> hcmono::Result<VerificationReport> {
    let c = job.check;
    let map = || &suite.maps[c.map.as_ref().expect("validated")];
    let curve = |i: usize| &suite.curves[&c.curves[i]];
    let region = || &suite.regions[c.region.as_ref().expect("validated")];
    match c.theorem {
        TheoremId::T1Curve => verify::verify_cauchy_curve(map(), curve(0), settings),
        TheoremId::T2HomotopyInstance => verify::verify_homotopy_instance(map(), curve(0), curve(1), settings),
        TheoremId::Lemma => verify::verify_lemma(map(), curve(0), settings),
        TheoremId::T3FormulaRight | TheoremId::T3FormulaLeft => {
            verify::verify_cauchy_formula(map(), job.point.expect("expanded"), curve(0), settings)
        }
        TheoremId::StokesR | TheoremId::StokesL | TheoremId::GaussOstrR | TheoremId::GaussOstrL => {
            let side = match c.theorem {
                TheoremId::StokesR | TheoremId::GaussOstrR => FormSide::Left,
                _ => FormSide::Right,
            };
            let (field, map_frame): (&dyn DiffField, Option<hcmono::Frame>) =
                match c.integrand.as_ref().expect("validated") {
                    Integrand::Map(m) => (&suite.maps[m], Some(*suite.maps[m].frame())),
                    Integrand::Field(f) => (&suite.fields[f], None),
                };
            let frame = c
                .frame
                .as_ref()
                .map(|f| suite.frames[f])
                .or(map_frame)
                .expect("validated");
            if matches!(c.theorem, TheoremId::StokesR | TheoremId::StokesL) {
                let s = &suite.surfaces[c.surface.as_ref().expect("validated")];
                verify::verify_stokes(field, s, &frame, side, settings)
            } else {
                verify::verify_gauss_ostr(field, region(), &frame, side, settings)
            }
        }
        TheoremId::T4Surface => verify::verify_surface_theorem(map(), region(), settings),
        TheoremId::Corollary => verify::verify_corollary(map(), region(), settings),
    }
}

/// Runs every selected check. Numerical failures become failed entries;
/// precondition failures are returned together as `Err`.
pub fn execute(suite: &Suite, opts: &RunOptions, config_text: &str) -> Result<Report, Vec<Rejected>> {
    let seed = opts.seed.or(suite.seed).unwrap_or(0);
    let selected: Vec<&Check> = suite
        .checks
        .iter()
        .filter(|c| opts.only.as_ref().map_or(true, |ids| ids.contains(&c.theorem)))
        .collect();
    let jobs = expand(&selected, seed);

    let results: Vec<Result<Entry, Rejected>> = jobs
        .par_iter()
        .map(|job| {
            let tol = opts.tol.or(job.check.tol).unwrap_or(suite.tol);
            let settings = VerifySettings {
                quadrature: suite.quadrature,
                tol,
                clearance: suite.clearance,
            };
            match run_job(suite, job, &settings) {
                Ok(r) => Ok(Entry {
                    theorem_id: r.theorem_id,
                    input_hash: input_hash(&r),
                    label: job.check.label.clone(),
                    residual: Some(r.residual),
                    tol: r.tol,
                    passed: r.passed,
                    error: None,
                    frame: r.frame,
                    map: r.map,
                    geometry: r.geometry,
                    quadrature: r.quadrature,
                    sides: Some(r.sides),
                    wall_time_ms: r.wall_time_ms,
                }),
                Err(e) if is_precondition(&e) => Err(Rejected {
                    check: job.check.index,
                    theorem: job.check.theorem,
                    error: e,
                }),
                Err(e) => Ok(failed_entry(suite, job, tol, e)),
            }
        })
        .collect();

    let mut entries = Vec::with_capacity(results.len());
    let mut rejected = Vec::new();
    for r in results {
        match r {
            Ok(e) => entries.push(e),
            Err(x) => rejected.push(x),
        }
    }
    if !rejected.is_empty() {
        return Err(rejected);
    }
    entries.sort_by(|a, b| {
        (a.theorem_id, &a.input_hash, &a.label, &a.geometry).cmp(&(b.theorem_id, &b.input_hash, &b.label, &b.geometry))
    });
    let passed = entries.iter().filter(|e| e.passed).count();
    Ok(Report {
        format: REPORT_FORMAT,
        seed,
        config_sha256: sha256_hex(config_text.as_bytes()),
        summary: Summary {
            total: entries.len(),
            passed,
            failed: entries.len() - passed,
        },
        checks: entries,
    })
}

fn failed_entry(suite: &Suite, job: &Job, tol: f64, e: Error) -> Entry {
    let c = job.check;
    let frame = c
        .map
        .as_ref()
        .map(|m| *suite.maps[m].frame())
        .or_else(|| c.frame.as_ref().map(|f| suite.frames[f]))
        .or_else(|| match &c.integrand {
            Some(Integrand::Map(m)) => Some(*suite.maps[m].frame()),
            _ => None,
        })
        .expect("every check has a frame");
    let map = c
        .map
        .as_ref()
        .map(|m| suite.maps[m].to_string())
        .or_else(|| match &c.integrand {
            Some(Integrand::Map(m)) => Some(suite.maps[m].to_string()),
            Some(Integrand::Field(f)) => Some(suite.fields[f].to_string()),
            None => None,
        })
        .unwrap_or_default();
    let mut geometry: Vec<String> = c.curves.clone();
    geometry.extend(c.surface.clone());
    geometry.extend(c.region.clone());
    if let Some(p) = job.point {
        geometry.push(format!("p0={p}"));
    }
    let geometry = geometry.join("; ");
    let key = format!("{}|{frame}|{map}|{geometry}", c.theorem);
    Entry {
        theorem_id: c.theorem,
        input_hash: hex(&Sha256::digest(key.as_bytes())[..8]),
        label: c.label.clone(),
        residual: None,
        tol,
        passed: false,
        error: Some(e.to_string()),
        frame,
        map,
        geometry,
        quadrature: suite.quadrature,
        sides: None,
        wall_time_ms: 0.0,
    }
}

/// Serializes a report; wall times are the only run-dependent values.
pub fn to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// One line per entry for the terminal.
pub fn summary_lines(report: &Report) -> Vec<String> {
    report
        .checks
        .iter()
        .map(|e| {
            let status = if e.passed { "PASS" } else { "FAIL" };
            let label = e.label.as_deref().map(|l| format!(" [{l}]")).unwrap_or_default();
            match (&e.error, e.residual) {
                (Some(err), _) => format!("{status} {:<22} error: {err}{label}", e.theorem_id.as_str()),
                (None, Some(r)) => format!(
                    "{status} {:<22} residual {r:.3e} (tol {:.1e}){label}",
                    e.theorem_id.as_str(),
                    e.tol
                ),
                (None, None) => format!("{status} {}{label}", e.theorem_id.as_str()),
            }
        })
        .collect()
}
