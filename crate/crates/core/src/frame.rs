//! The embedding of R^3 into H(C) fixed by `i2 = a1 e1 + a2 e2` and
//! `i3 = b1 e1 + b2 e2`, together with the functionals `f1`, `f2`,
//! the differential forms `dzeta`, `sigma`, and the lines of
//! non-invertible points.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::algebra::{Cplx, HQ};
use crate::error::{Error, Result};

/// Tolerance for the rank and surjectivity tests in [`Frame::new`].
pub const FRAME_TOL: f64 = 1e-10;

/// A point (or vector) of R^3.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub type Vec3 = Point3;

impl Point3 {
    pub const ORIGIN: Point3 = Point3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<[f64; 3]> for Point3 {
    fn from([x, y, z]: [f64; 3]) -> Self {
        Point3 { x, y, z }
    }
}

impl Add for Point3 {
    type Output = Point3;
    fn add(self, o: Point3) -> Point3 {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Point3 {
    type Output = Point3;
    fn sub(self, o: Point3) -> Point3 {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Point3 {
    type Output = Point3;
    fn neg(self) -> Point3 {
        Point3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Point3 {
    type Output = Point3;
    fn mul(self, s: f64) -> Point3 {
        Point3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// A line through `point` with unit `direction`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Line3 {
    pub point: Point3,
    pub direction: Vec3,
}

/// Which of the two functionals `f1`, `f2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Xi {
    Xi1,
    Xi2,
}

impl Xi {
    pub fn index(self) -> u8 {
        match self {
            Xi::Xi1 => 1,
            Xi::Xi2 => 2,
        }
    }

    pub fn from_index(k: u8) -> Option<Xi> {
        match k {
            1 => Some(Xi::Xi1),
            2 => Some(Xi::Xi2),
            _ => None,
        }
    }
}

/// A validated choice of `(a1, a2, b1, b2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    a1: Cplx,
    a2: Cplx,
    b1: Cplx,
    b2: Cplx,
}

impl Frame {
    /// Validates that `{1, i2, i3}` is real-linearly independent and that
    /// both `f1(E3)` and `f2(E3)` cover C.
    pub fn new(a1: Cplx, a2: Cplx, b1: Cplx, b2: Cplx) -> Result<Frame> {
        if a1.im.abs() <= FRAME_TOL && b1.im.abs() <= FRAME_TOL {
            return Err(Error::NotSurjective { k: 1 });
        }
        if a2.im.abs() <= FRAME_TOL && b2.im.abs() <= FRAME_TOL {
            return Err(Error::NotSurjective { k: 2 });
        }
        let rank = real_rank(&[
            [1.0, 0.0, 1.0, 0.0],
            [a1.re, a1.im, a2.re, a2.im],
            [b1.re, b1.im, b2.re, b2.im],
        ]);
        if rank < 3 {
            return Err(Error::DependentBasis { rank });
        }
        Ok(Frame { a1, a2, b1, b2 })
    }

    pub fn params(&self) -> [Cplx; 4] {
        [self.a1, self.a2, self.b1, self.b2]
    }

    /// `(a_k, b_k)` for the chosen functional.
    pub fn coeffs(&self, k: Xi) -> (Cplx, Cplx) {
        match k {
            Xi::Xi1 => (self.a1, self.b1),
            Xi::Xi2 => (self.a2, self.b2),
        }
    }

    pub fn i2(&self) -> HQ {
        HQ::from_xi(self.a1, self.a2)
    }

    pub fn i3(&self) -> HQ {
        HQ::from_xi(self.b1, self.b2)
    }

    /// `xi_k = x + y a_k + z b_k`.
    pub fn xi(&self, k: Xi, p: Point3) -> Cplx {
        let (a, b) = self.coeffs(k);
        a * p.y + b * p.z + p.x
    }

    /// `zeta = x + y i2 + z i3 = xi1 e1 + xi2 e2`.
    pub fn embed(&self, p: Point3) -> HQ {
        HQ::from_xi(self.xi(Xi::Xi1, p), self.xi(Xi::Xi2, p))
    }

    /// `dzeta = dx + i2 dy + i3 dz` evaluated on a tangent vector.
    pub fn dzeta(&self, tangent: Vec3) -> HQ {
        self.embed(tangent)
    }

    /// `sigma = dydz + dzdx i2 + dxdy i3` evaluated on the oriented area
    /// vector `(dydz, dzdx, dxdy)`.
    pub fn sigma(&self, area: Vec3) -> HQ {
        self.embed(area)
    }

    /// The line `L^k` of points whose `xi_k` vanishes.
    pub fn noninvertibility_line(&self, k: Xi) -> Line3 {
        let (a, b) = self.coeffs(k);
        let n1 = Vec3::new(1.0, a.re, b.re);
        let n2 = Vec3::new(0.0, a.im, b.im);
        let d = n1.cross(n2);
        let mut direction = d * (1.0 / d.norm());
        let lead = direction
            .to_array()
            .into_iter()
            .find(|v| v.abs() > FRAME_TOL)
            .unwrap_or(1.0);
        if lead < 0.0 {
            direction = -direction;
        }
        Line3 {
            point: Point3::ORIGIN,
            direction,
        }
    }

    /// `1 + i2^2 + i3^2 = (1 + a1^2 + b1^2) e1 + (1 + a2^2 + b2^2) e2`.
    pub fn laplace_defect(&self) -> HQ {
        let one = Cplx::new(1.0, 0.0);
        HQ::from_xi(
            one + self.a1 * self.a1 + self.b1 * self.b1,
            one + self.a2 * self.a2 + self.b2 * self.b2,
        )
    }

    pub fn is_harmonic(&self, tol: f64) -> bool {
        self.laplace_defect().norm() <= tol
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |z: Cplx| format!("{}{:+}i", z.re, z.im);
        write!(
            f,
            "a1={} a2={} b1={} b2={}",
            c(self.a1),
            c(self.a2),
            c(self.b1),
            c(self.b2)
        )
    }
}

impl Serialize for Frame {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let p = self.params().map(|z| [z.re, z.im]);
        p.serialize(s)
    }
}

/// Rank of the row set via Gaussian elimination with partial pivoting.
fn real_rank(rows: &[[f64; 4]; 3]) -> usize {
    let mut m = *rows;
    let mut rank = 0;
    for col in 0..4 {
        if rank == 3 {
            break;
        }
        let pivot = (rank..3)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        if m[pivot][col].abs() <= FRAME_TOL {
            continue;
        }
        m.swap(rank, pivot);
        for r in rank + 1..3 {
            let f = m[r][col] / m[rank][col];
            let pivot_row = m[rank];
            for (v, p) in m[r].iter_mut().zip(pivot_row).skip(col) {
                *v -= f * p;
            }
        }
        rank += 1;
    }
    rank
}
