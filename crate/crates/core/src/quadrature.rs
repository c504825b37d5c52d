//! Composite Gauss–Legendre quadrature on `[0,1]^d` with refinement by
//! uniform panel halving and Neumaier-compensated accumulation.
//!
//! At refinement level `L` each unit interval is split into `2^L`
//! panels (so `2^(dL)` cells in `d` dimensions). Levels `L` and `L+1`
//! are compared and the finer value is accepted once they differ by
//! less than the tolerance.
//!
//! Panel contributions are computed independently (optionally on the
//! rayon pool), collected in panel order and then summed serially, so a
//! parallel run reproduces the serial result bit for bit.

use std::num::NonZeroUsize;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Cplx, HQ};
use crate::error::{Error, Result};

/// Quadrature settings shared by every integral in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSpec {
    /// Gauss–Legendre nodes per panel and axis.
    pub nodes_per_segment: usize,
    /// Absolute tolerance on the difference between successive levels.
    pub tol: f64,
    /// Maximum number of halving rounds.
    pub max_subdivisions: u32,
    /// Evaluate panels on the rayon pool.
    pub parallel: bool,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            nodes_per_segment: 16,
            tol: 1e-9,
            max_subdivisions: 12,
            parallel: false,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.nodes_per_segment < 2 {
            return Err(Error::InvalidQuadrature(format!(
                "nodes_per_segment must be >= 2, got {}",
                self.nodes_per_segment
            )));
        }
        if !self.tol.is_finite() || self.tol <= 0.0 {
            return Err(Error::InvalidQuadrature(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        Ok(())
    }

    pub fn with_tol(self, tol: f64) -> Self {
        QuadratureSpec { tol, ..self }
    }

    pub fn with_nodes(self, nodes_per_segment: usize) -> Self {
        QuadratureSpec {
            nodes_per_segment,
            ..self
        }
    }

    pub fn with_parallel(self, parallel: bool) -> Self {
        QuadratureSpec { parallel, ..self }
    }
}

/// Gauss–Legendre nodes and weights mapped to `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        let n = NonZeroUsize::new(n).expect("Gauss-Legendre rule needs at least one node");
        let rule = gauss_quad::GaussLegendre::new(n);
        // map [-1, 1] -> [0, 1]
        let mut pairs: Vec<(f64, f64)> = rule
            .as_node_weight_pairs()
            .iter()
            .map(|&(x, w)| (0.5 * (1.0 + x), 0.5 * w))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (nodes, weights) = pairs.into_iter().unzip();
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Values that can be integrated: anything with up to eight real lanes.
pub trait Lanes: Copy + Send + Sync {
    fn zero() -> Self;
    fn lanes(&self) -> [f64; 8];
    fn from_lanes(l: [f64; 8]) -> Self;

    fn dist(&self, other: &Self) -> f64 {
        let (a, b) = (self.lanes(), other.lanes());
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    }

    fn scaled(&self, s: f64) -> Self {
        Self::from_lanes(self.lanes().map(|x| x * s))
    }
}

impl Lanes for HQ {
    fn zero() -> Self {
        HQ::ZERO
    }
    fn lanes(&self) -> [f64; 8] {
        self.to_reals()
    }
    fn from_lanes(l: [f64; 8]) -> Self {
        HQ::from_reals(l)
    }
}

impl Lanes for Cplx {
    fn zero() -> Self {
        Cplx::new(0.0, 0.0)
    }
    fn lanes(&self) -> [f64; 8] {
        [self.re, self.im, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]
    }
    fn from_lanes(l: [f64; 8]) -> Self {
        Cplx::new(l[0], l[1])
    }
}

impl Lanes for f64 {
    fn zero() -> Self {
        0.0
    }
    fn lanes(&self) -> [f64; 8] {
        [*self, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]
    }
    fn from_lanes(l: [f64; 8]) -> Self {
        l[0]
    }
}

/// Neumaier compensated accumulator over eight lanes.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: [f64; 8],
    comp: [f64; 8],
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add<T: Lanes>(&mut self, v: &T) {
        for (k, x) in v.lanes().into_iter().enumerate() {
            let s = self.sum[k];
            let t = s + x;
            if s.abs() >= x.abs() {
                self.comp[k] += (s - t) + x;
            } else {
                self.comp[k] += (x - t) + s;
            }
            self.sum[k] = t;
        }
    }

    pub fn total<T: Lanes>(&self) -> T {
        T::from_lanes(std::array::from_fn(|k| self.sum[k] + self.comp[k]))
    }
}

pub fn compensated_sum<'a, T: Lanes + 'a>(items: impl IntoIterator<Item = &'a T>) -> T {
    let mut acc = CompensatedSum::new();
    for v in items {
        acc.add(v);
    }
    acc.total()
}

/// Result of a refined integral.
#[derive(Debug, Clone, Copy)]
pub struct Estimate<T> {
    pub value: T,
    /// Distance between the last two levels.
    pub error: f64,
    pub level: u32,
    pub evaluations: usize,
}

/// Integrator holding a precomputed rule.
#[derive(Debug, Clone)]
pub struct Integrator {
    spec: QuadratureSpec,
    rule: GaussLegendre,
}

impl Integrator {
    pub fn new(spec: QuadratureSpec) -> Result<Self> {
        spec.validate()?;
        Ok(Integrator {
            spec,
            rule: GaussLegendre::new(spec.nodes_per_segment),
        })
    }

    pub fn spec(&self) -> &QuadratureSpec {
        &self.spec
    }

    pub fn rule(&self) -> &GaussLegendre {
        &self.rule
    }

    fn sum_cells<T, F>(&self, cells: usize, cell: F) -> Result<T>
    where
        T: Lanes,
        F: Fn(usize) -> Result<T> + Sync,
    {
        let parts: Vec<T> = if self.spec.parallel {
            (0..cells).into_par_iter().map(&cell).collect::<Result<_>>()?
        } else {
            (0..cells).map(&cell).collect::<Result<_>>()?
        };
        Ok(compensated_sum(parts.iter()))
    }

    /// Fixed-level composite rule over `[0,1]` with `2^level` panels.
    pub fn fixed_1d<T, F>(&self, level: u32, f: &F) -> Result<T>
    where
        T: Lanes,
        F: Fn(f64) -> Result<T> + Sync,
    {
        let panels = 1usize << level;
        let h = 1.0 / panels as f64;
        let rule = &self.rule;
        self.sum_cells(panels, |p| {
            let a = p as f64 * h;
            let mut acc = CompensatedSum::new();
            for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                acc.add(&f(a + h * x)?.scaled(w * h));
            }
            Ok(acc.total())
        })
    }

    pub fn fixed_2d<T, F>(&self, level: u32, f: &F) -> Result<T>
    where
        T: Lanes,
        F: Fn(f64, f64) -> Result<T> + Sync,
    {
        let panels = 1usize << level;
        let h = 1.0 / panels as f64;
        let rule = &self.rule;
        self.sum_cells(panels * panels, |c| {
            let (a, b) = ((c % panels) as f64 * h, (c / panels) as f64 * h);
            let mut acc = CompensatedSum::new();
            for (v, wv) in rule.nodes.iter().zip(&rule.weights) {
                for (u, wu) in rule.nodes.iter().zip(&rule.weights) {
                    acc.add(&f(a + h * u, b + h * v)?.scaled(wu * wv * h * h));
                }
            }
            Ok(acc.total())
        })
    }

    pub fn fixed_3d<T, F>(&self, level: u32, f: &F) -> Result<T>
    where
        T: Lanes,
        F: Fn(f64, f64, f64) -> Result<T> + Sync,
    {
        let panels = 1usize << level;
        let h = 1.0 / panels as f64;
        let rule = &self.rule;
        self.sum_cells(panels * panels * panels, |c| {
            let a = (c % panels) as f64 * h;
            let b = ((c / panels) % panels) as f64 * h;
            let d = (c / (panels * panels)) as f64 * h;
            let mut acc = CompensatedSum::new();
            for (s, ws) in rule.nodes.iter().zip(&rule.weights) {
                for (v, wv) in rule.nodes.iter().zip(&rule.weights) {
                    for (u, wu) in rule.nodes.iter().zip(&rule.weights) {
                        acc.add(&f(a + h * u, b + h * v, d + h * s)?.scaled(wu * wv * ws * h * h * h));
                    }
                }
            }
            Ok(acc.total())
        })
    }

    fn refine<T: Lanes>(&self, tol: f64, dim: u32, level_value: impl Fn(u32) -> Result<T>) -> Result<Estimate<T>> {
        let per_level = |l: u32| self.rule.len().pow(dim) << (dim * l);
        let mut prev = level_value(0)?;
        let mut evaluations = per_level(0);
        let mut error = f64::INFINITY;
        for level in 1..=self.spec.max_subdivisions {
            let next = level_value(level)?;
            evaluations += per_level(level);
            error = next.dist(&prev);
            if error < tol {
                return Ok(Estimate {
                    value: next,
                    error,
                    level,
                    evaluations,
                });
            }
            prev = next;
        }
        Err(Error::NoConvergence {
            rounds: self.spec.max_subdivisions,
            estimate: error,
            tol,
        })
    }

    /// Refined integral over `[0,1]` to absolute tolerance `tol`.
    pub fn integrate_1d<T, F>(&self, tol: f64, f: F) -> Result<Estimate<T>>
    where
        T: Lanes,
        F: Fn(f64) -> Result<T> + Sync,
    {
        self.refine(tol, 1, |l| self.fixed_1d(l, &f))
    }

    pub fn integrate_2d<T, F>(&self, tol: f64, f: F) -> Result<Estimate<T>>
    where
        T: Lanes,
        F: Fn(f64, f64) -> Result<T> + Sync,
    {
        self.refine(tol, 2, |l| self.fixed_2d(l, &f))
    }

    pub fn integrate_3d<T, F>(&self, tol: f64, f: F) -> Result<Estimate<T>>
    where
        T: Lanes,
        F: Fn(f64, f64, f64) -> Result<T> + Sync,
    {
        self.refine(tol, 3, |l| self.fixed_3d(l, &f))
    }
}
