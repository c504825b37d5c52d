//! Right- and left-G-monogenic mappings built from four holomorphic
//! components.
//!
//! A right map is `F1(xi1) e1 + F2(xi2) e2 + F3(xi1) e3 + F4(xi2) e4`; a
//! left map feeds `F3` with `xi2` and `F4` with `xi1` instead.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::HQ;
use crate::error::Result;
use crate::field::{DiffField, Field};
use crate::frame::{Frame, Point3, Vec3, Xi};
use crate::holo::HoloFn;

/// Default central-difference step.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Handedness {
    Right,
    Left,
}

impl Handedness {
    /// Which `xi_k` feeds each of `F1..F4`.
    pub fn pattern(self) -> [Xi; 4] {
        match self {
            Handedness::Right => [Xi::Xi1, Xi::Xi2, Xi::Xi1, Xi::Xi2],
            Handedness::Left => [Xi::Xi1, Xi::Xi2, Xi::Xi2, Xi::Xi1],
        }
    }

    pub fn opposite(self) -> Handedness {
        match self {
            Handedness::Right => Handedness::Left,
            Handedness::Left => Handedness::Right,
        }
    }
}

impl fmt::Display for Handedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Handedness::Right => "right",
            Handedness::Left => "left",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GMonogenicMap {
    handedness: Handedness,
    components: [HoloFn; 4],
    derivs: [HoloFn; 4],
    pattern: [Xi; 4],
    frame: Frame,
}

impl GMonogenicMap {
    pub fn new(handedness: Handedness, components: [HoloFn; 4], frame: Frame) -> Self {
        let derivs = std::array::from_fn(|k| components[k].deriv());
        GMonogenicMap {
            handedness,
            components,
            derivs,
            pattern: handedness.pattern(),
            frame,
        }
    }

    pub fn right(components: [HoloFn; 4], frame: Frame) -> Self {
        Self::new(Handedness::Right, components, frame)
    }

    pub fn left(components: [HoloFn; 4], frame: Frame) -> Self {
        Self::new(Handedness::Left, components, frame)
    }

    /// Overrides which `xi_k` feeds each component while keeping the
    /// declared handedness. Unless the pattern equals the handedness'
    /// own, the result is in general *not* G-monogenic; this exists to
    /// build negative controls.
    pub fn with_argument_pattern(mut self, pattern: [Xi; 4]) -> Self {
        self.pattern = pattern;
        self
    }

    /// The same components under the other handedness.
    pub fn mirrored(&self) -> Self {
        Self::new(self.handedness.opposite(), self.components.clone(), self.frame)
    }

    pub fn handedness(&self) -> Handedness {
        self.handedness
    }

    pub fn components(&self) -> &[HoloFn; 4] {
        &self.components
    }

    pub fn pattern(&self) -> [Xi; 4] {
        self.pattern
    }

    pub fn has_canonical_pattern(&self) -> bool {
        self.pattern == self.handedness.pattern()
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn eval_map(&self, p: Point3) -> Result<HQ> {
        let xi = [self.frame.xi(Xi::Xi1, p), self.frame.xi(Xi::Xi2, p)];
        let mut out = HQ::ZERO;
        for k in 0..4 {
            out.c[k] = self.components[k].eval(xi[self.pattern[k].index() as usize - 1])?;
        }
        Ok(out)
    }

    /// `Phi'` as the map with components `F_n'`; equal to `dPhi/dx`.
    pub fn map_derivative(&self) -> GMonogenicMap {
        GMonogenicMap::new(self.handedness, self.derivs.clone(), self.frame).with_argument_pattern(self.pattern)
    }

    /// Central-difference Cauchy–Riemann residuals
    /// `(|dPhi/dy - i2 dPhi/dx|, |dPhi/dz - i3 dPhi/dx|)` for right maps,
    /// with `i2`, `i3` multiplied on the right for left maps.
    pub fn cr_residual(&self, p: Point3, h: f64) -> Result<(f64, f64)> {
        assert!(h > 0.0, "finite-difference step must be positive");
        let d = |dir: Vec3| -> Result<HQ> {
            Ok((self.eval_map(p + dir * h)? - self.eval_map(p - dir * h)?).scale_real(0.5 / h))
        };
        let dx = d(Vec3::new(1.0, 0.0, 0.0))?;
        let dy = d(Vec3::new(0.0, 1.0, 0.0))?;
        let dz = d(Vec3::new(0.0, 0.0, 1.0))?;
        let (i2, i3) = (self.frame.i2(), self.frame.i3());
        Ok(match self.handedness {
            Handedness::Right => ((dy - i2 * dx).norm(), (dz - i3 * dx).norm()),
            Handedness::Left => ((dy - dx * i2).norm(), (dz - dx * i3).norm()),
        })
    }

    pub fn cr_residual_default(&self, p: Point3) -> Result<(f64, f64)> {
        self.cr_residual(p, DEFAULT_FD_STEP)
    }
}

impl Field for GMonogenicMap {
    fn value(&self, p: Point3) -> Result<HQ> {
        self.eval_map(p)
    }

    fn describe(&self) -> String {
        self.to_string()
    }
}

impl DiffField for GMonogenicMap {
    /// Exact partials: `d/dx F(xi_k) = F'`, `d/dy = a_k F'`, `d/dz = b_k F'`.
    fn partials(&self, p: Point3) -> Result<[HQ; 3]> {
        let mut out = [HQ::ZERO; 3];
        for k in 0..4 {
            let which = self.pattern[k];
            let (a, b) = self.frame.coeffs(which);
            let fp = self.derivs[k].eval(self.frame.xi(which, p))?;
            out[0].c[k] = fp;
            out[1].c[k] = a * fp;
            out[2].c[k] = b * fp;
        }
        Ok(out)
    }
}

impl fmt::Display for GMonogenicMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..4)
            .map(|k| {
                format!(
                    "F{}({}) = {}",
                    k + 1,
                    if self.pattern[k] == Xi::Xi1 { "xi1" } else { "xi2" },
                    self.components[k]
                )
            })
            .collect();
        write!(f, "{} map [{}]", self.handedness, parts.join(", "))?;
        if !self.has_canonical_pattern() {
            f.write_str(" (non-canonical argument pattern)")?;
        }
        Ok(())
    }
}
