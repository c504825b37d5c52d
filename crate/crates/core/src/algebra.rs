//! Arithmetic in the complexified quaternion algebra H(C).
//!
//! Elements are stored in the idempotent basis `{e1, e2, e3, e4}` where
//!
//! ```text
//! e1 = (1 + iI)/2   e2 = (1 - iI)/2   e3 = (iJ - K)/2   e4 = (iJ + K)/2
//! ```
//!
//! and `i` is the imaginary unit of the scalar field. In this basis the
//! product is almost diagonal:
//!
//! ```text
//!   .  | e1  e2  e3  e4
//! -----+----------------
//!   e1 | e1  0   e3  0
//!   e2 | 0   e2  0   e4
//!   e3 | 0   e3  0   e1
//!   e4 | e4  0   e2  0
//! ```
//!
//! The standard basis `{1, I, J, K}` ([`StdQuat`]) only appears at the
//! conversion boundary.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Scalar field of the algebra.
pub type Cplx = num_complex::Complex64;

/// Default magnitude below which `xi_k` is treated as zero when inverting.
pub const DEFAULT_INVERT_EPS: f64 = 1e-12;

pub(crate) const I: Cplx = Cplx::new(0.0, 1.0);
const ZERO: Cplx = Cplx::new(0.0, 0.0);
const ONE: Cplx = Cplx::new(1.0, 0.0);

/// Index of the nonzero product `e_row * e_col`, if any (0-based).
pub const MUL_TABLE: [[Option<usize>; 4]; 4] = [
    [Some(0), None, Some(2), None],
    [None, Some(1), None, Some(3)],
    [None, Some(2), None, Some(0)],
    [Some(3), None, Some(1), None],
];

/// An element of H(C) given by its coefficients in `{e1, e2, e3, e4}`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HQ {
    pub c: [Cplx; 4],
}

impl HQ {
    pub const ZERO: HQ = HQ { c: [ZERO; 4] };
    /// The unit `1 = e1 + e2`.
    pub const ONE: HQ = HQ {
        c: [ONE, ONE, ZERO, ZERO],
    };

    pub const fn new(c1: Cplx, c2: Cplx, c3: Cplx, c4: Cplx) -> Self {
        HQ { c: [c1, c2, c3, c4] }
    }

    /// Basis element `e_k` for `k` in `1..=4`.
    pub fn e(k: usize) -> Self {
        assert!((1..=4).contains(&k), "basis index {k} out of range 1..=4");
        let mut c = [ZERO; 4];
        c[k - 1] = ONE;
        HQ { c }
    }

    /// `xi1*e1 + xi2*e2`, the form taken by every element of E3.
    pub const fn from_xi(xi1: Cplx, xi2: Cplx) -> Self {
        HQ {
            c: [xi1, xi2, ZERO, ZERO],
        }
    }

    /// Complex scalar multiple `s * self`. Scalars are central.
    pub fn scale(self, s: Cplx) -> Self {
        HQ {
            c: self.c.map(|x| s * x),
        }
    }

    pub fn scale_real(self, s: f64) -> Self {
        HQ {
            c: self.c.map(|x| x * s),
        }
    }

    /// Euclidean norm of the eight real components.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c.iter().map(|x| x.norm_sqr()).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|x| x.is_finite())
    }

    /// True when the `e3`, `e4` coefficients are exactly zero.
    pub fn is_diagonal(&self) -> bool {
        self.c[2] == ZERO && self.c[3] == ZERO
    }

    /// Inverse of `xi1*e1 + xi2*e2` using [`DEFAULT_INVERT_EPS`].
    pub fn inv_e3(&self) -> Result<HQ> {
        self.inv_e3_eps(DEFAULT_INVERT_EPS)
    }

    /// `(1/xi1) e1 + (1/xi2) e2`, defined only when both `|xi_k| > eps`.
    pub fn inv_e3_eps(&self, eps: f64) -> Result<HQ> {
        if !self.is_diagonal() {
            return Err(Error::WrongForm);
        }
        let (xi1, xi2) = (self.c[0], self.c[1]);
        if xi1.norm() <= eps || xi2.norm() <= eps {
            return Err(Error::NotInvertible {
                xi1_abs: xi1.norm(),
                xi2_abs: xi2.norm(),
                eps,
            });
        }
        Ok(HQ::from_xi(xi1.inv(), xi2.inv()))
    }

    /// Resolvent `(t - zeta)^{-1} = e1/(t - xi1) + e2/(t - xi2)`.
    pub fn resolvent(t: Cplx, zeta: &HQ) -> Result<HQ> {
        Self::resolvent_eps(t, zeta, DEFAULT_INVERT_EPS)
    }

    pub fn resolvent_eps(t: Cplx, zeta: &HQ, eps: f64) -> Result<HQ> {
        if !zeta.is_diagonal() {
            return Err(Error::WrongForm);
        }
        (HQ::ONE.scale(t) - *zeta).inv_e3_eps(eps)
    }

    pub fn to_std(&self) -> StdQuat {
        let [c1, c2, c3, c4] = self.c;
        StdQuat {
            q0: (c1 + c2) * 0.5,
            qi: I * (c1 - c2) * 0.5,
            qj: I * (c3 + c4) * 0.5,
            qk: (c4 - c3) * 0.5,
        }
    }

    pub fn from_std(s: &StdQuat) -> HQ {
        HQ {
            c: [s.q0 - I * s.qi, s.q0 + I * s.qi, -I * s.qj - s.qk, -I * s.qj + s.qk],
        }
    }

    /// Real lanes `[Re c1, Im c1, ..., Re c4, Im c4]`.
    pub fn to_reals(&self) -> [f64; 8] {
        let mut out = [0.0; 8];
        for (k, x) in self.c.iter().enumerate() {
            out[2 * k] = x.re;
            out[2 * k + 1] = x.im;
        }
        out
    }

    pub fn from_reals(r: [f64; 8]) -> HQ {
        HQ {
            c: std::array::from_fn(|k| Cplx::new(r[2 * k], r[2 * k + 1])),
        }
    }
}

impl Add for HQ {
    type Output = HQ;
    fn add(self, rhs: HQ) -> HQ {
        HQ {
            c: std::array::from_fn(|k| self.c[k] + rhs.c[k]),
        }
    }
}

impl AddAssign for HQ {
    fn add_assign(&mut self, rhs: HQ) {
        *self = *self + rhs;
    }
}

impl Sub for HQ {
    type Output = HQ;
    fn sub(self, rhs: HQ) -> HQ {
        HQ {
            c: std::array::from_fn(|k| self.c[k] - rhs.c[k]),
        }
    }
}

impl SubAssign for HQ {
    fn sub_assign(&mut self, rhs: HQ) {
        *self = *self - rhs;
    }
}

impl Neg for HQ {
    type Output = HQ;
    fn neg(self) -> HQ {
        HQ { c: self.c.map(|x| -x) }
    }
}

impl Mul for HQ {
    type Output = HQ;
    fn mul(self, b: HQ) -> HQ {
        let [a1, a2, a3, a4] = self.c;
        let [b1, b2, b3, b4] = b.c;
        HQ {
            c: [
                a1 * b1 + a3 * b4,
                a2 * b2 + a4 * b3,
                a1 * b3 + a3 * b2,
                a2 * b4 + a4 * b1,
            ],
        }
    }
}

impl Mul<Cplx> for HQ {
    type Output = HQ;
    fn mul(self, s: Cplx) -> HQ {
        self.scale(s)
    }
}

impl Mul<f64> for HQ {
    type Output = HQ;
    fn mul(self, s: f64) -> HQ {
        self.scale_real(s)
    }
}

impl fmt::Display for HQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .map(|(k, x)| format!("({}{:+}i)e{}", x.re, x.im, k + 1))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for HQ {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(4))?;
        for x in &self.c {
            seq.serialize_element(&[x.re, x.im])?;
        }
        seq.end()
    }
}

/// An element of H(C) in the standard basis `{1, I, J, K}`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StdQuat {
    pub q0: Cplx,
    pub qi: Cplx,
    pub qj: Cplx,
    pub qk: Cplx,
}

impl StdQuat {
    pub const fn new(q0: Cplx, qi: Cplx, qj: Cplx, qk: Cplx) -> Self {
        StdQuat { q0, qi, qj, qk }
    }

    pub fn norm(&self) -> f64 {
        (self.q0.norm_sqr() + self.qi.norm_sqr() + self.qj.norm_sqr() + self.qk.norm_sqr()).sqrt()
    }
}

impl Sub for StdQuat {
    type Output = StdQuat;
    fn sub(self, r: StdQuat) -> StdQuat {
        StdQuat::new(self.q0 - r.q0, self.qi - r.qi, self.qj - r.qj, self.qk - r.qk)
    }
}

/// Hamilton product with `I^2 = J^2 = K^2 = -1`, `IJ = K`, `JK = I`, `KI = J`.
impl Mul for StdQuat {
    type Output = StdQuat;
    fn mul(self, r: StdQuat) -> StdQuat {
        let (a0, a1, a2, a3) = (self.q0, self.qi, self.qj, self.qk);
        let (b0, b1, b2, b3) = (r.q0, r.qi, r.qj, r.qk);
        StdQuat {
            q0: a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            qi: a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            qj: a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            qk: a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Cplx {
        Cplx::new(re, im)
    }

    fn arb_cplx() -> impl Strategy<Value = Cplx> {
        (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(re, im)| Cplx::new(re, im))
    }

    fn arb_hq() -> impl Strategy<Value = HQ> {
        proptest::array::uniform4(arb_cplx()).prop_map(|c| HQ { c })
    }

    #[test]
    fn basis_products_match_table() {
        for i in 1..=4 {
            for j in 1..=4 {
                let expected = match MUL_TABLE[i - 1][j - 1] {
                    Some(k) => HQ::e(k + 1),
                    None => HQ::ZERO,
                };
                // bitwise: coefficients are exactly 0 or 1
                assert_eq!(HQ::e(i) * HQ::e(j), expected, "e{i} * e{j}");
            }
        }
    }

    #[test]
    fn named_products() {
        assert_eq!(HQ::e(1) * HQ::e(3), HQ::e(3));
        assert_eq!(HQ::e(3) * HQ::e(3), HQ::ZERO);
        assert_eq!(HQ::e(3) * HQ::e(4), HQ::e(1));
        assert_eq!(HQ::e(4) * HQ::e(3), HQ::e(2));
    }

    #[test]
    fn addition_and_scaling() {
        assert_eq!(HQ::e(1) + HQ::e(2), HQ::ONE);
        let q = HQ::new(c(1.0, 2.0), c(3.0, -1.0), c(0.5, 0.0), c(0.0, 7.0));
        assert_eq!(HQ::ZERO + q, q);
        assert_eq!(
            HQ::e(3).scale(c(0.0, 2.0)),
            HQ::new(c(0., 0.), c(0., 0.), c(0.0, 2.0), c(0., 0.))
        );
    }

    #[test]
    fn standard_basis_images() {
        let e1 = HQ::e(1).to_std();
        assert_eq!(e1, StdQuat::new(c(0.5, 0.0), c(0.0, 0.5), c(0.0, 0.0), c(0.0, 0.0)));

        let z = c(0.0, 0.0);
        let unit_i = HQ::from_std(&StdQuat::new(z, c(1.0, 0.0), z, z));
        assert_eq!(unit_i, HQ::new(c(0.0, -1.0), c(0.0, 1.0), z, z));
        let unit_k = HQ::from_std(&StdQuat::new(z, z, z, c(1.0, 0.0)));
        assert_eq!(unit_k, HQ::e(4) - HQ::e(3));
        let unit_j = HQ::from_std(&StdQuat::new(z, z, c(1.0, 0.0), z));
        assert_eq!(unit_j, (HQ::e(3) + HQ::e(4)).scale(c(0.0, -1.0)));
    }

    #[test]
    fn standard_quaternion_rules() {
        let z = c(0.0, 0.0);
        let one = c(1.0, 0.0);
        let qi = StdQuat::new(z, one, z, z);
        let qj = StdQuat::new(z, z, one, z);
        let qk = StdQuat::new(z, z, z, one);
        let minus_one = StdQuat::new(-one, z, z, z);
        assert_eq!(qi * qi, minus_one);
        assert_eq!(qj * qj, minus_one);
        assert_eq!(qk * qk, minus_one);
        assert_eq!(qi * qj, qk);
        assert_eq!(qj * qk, qi);
        assert_eq!(qk * qi, qj);
        assert_eq!(qj * qi, StdQuat::new(z, z, z, -one));
    }

    #[test]
    fn inverse_on_e3() {
        let zeta = HQ::from_xi(c(2.0, 0.0), c(4.0, 0.0));
        assert_eq!(zeta.inv_e3().unwrap(), HQ::from_xi(c(0.5, 0.0), c(0.25, 0.0)));
        assert_eq!(HQ::ONE.inv_e3().unwrap(), HQ::ONE);
        assert!(matches!(
            HQ::from_xi(c(1.0, 0.0), c(0.0, 0.0)).inv_e3(),
            Err(Error::NotInvertible { .. })
        ));
        assert_eq!(HQ::e(3).inv_e3(), Err(Error::WrongForm));
    }

    #[test]
    fn resolvent_values() {
        let zeta = HQ::from_xi(c(1.0, 0.0), c(2.0, 0.0));
        let r = HQ::resolvent(c(3.0, 0.0), &zeta).unwrap();
        assert_eq!(r, HQ::from_xi(c(0.5, 0.0), c(1.0, 0.0)));
        assert_eq!(HQ::resolvent(c(1.0, 0.0), &HQ::ZERO).unwrap(), HQ::ONE);
        assert!(matches!(
            HQ::resolvent(c(1.0, 0.0), &zeta),
            Err(Error::NotInvertible { .. })
        ));
    }

    #[test]
    fn norms() {
        assert_eq!(HQ::ZERO.norm(), 0.0);
        assert_eq!(HQ::e(1).norm(), 1.0);
        assert_eq!((HQ::e(1).scale_real(3.0) + HQ::e(2).scale_real(4.0)).norm(), 5.0);
    }

    proptest! {
        #[test]
        fn associative(a in arb_hq(), b in arb_hq(), d in arb_hq()) {
            prop_assert!(((a * b) * d - a * (b * d)).norm() < 1e-12 * (1.0 + a.norm() * b.norm() * d.norm()));
        }

        #[test]
        fn unit_law(q in arb_hq()) {
            prop_assert_eq!(HQ::ONE * q, q);
            prop_assert_eq!(q * HQ::ONE, q);
        }

        #[test]
        fn std_roundtrip(q in arb_hq()) {
            prop_assert!((HQ::from_std(&q.to_std()) - q).norm() < 1e-12);
        }

        #[test]
        fn products_agree_across_bases(a in arb_hq(), b in arb_hq()) {
            let via_std = HQ::from_std(&(a.to_std() * b.to_std()));
            prop_assert!((via_std - a * b).norm() < 1e-12 * (1.0 + a.norm() * b.norm()));
        }

        #[test]
        fn inverse_is_two_sided(xi1 in arb_cplx(), xi2 in arb_cplx()) {
            prop_assume!(xi1.norm() >= 1e-6 && xi2.norm() >= 1e-6);
            let zeta = HQ::from_xi(xi1, xi2);
            let inv = zeta.inv_e3().unwrap();
            prop_assert!((inv * zeta - HQ::ONE).norm() < 1e-10);
            prop_assert!((zeta * inv - HQ::ONE).norm() < 1e-10);
        }

        #[test]
        fn resolvent_inverts_shift(t in arb_cplx(), xi1 in arb_cplx(), xi2 in arb_cplx()) {
            prop_assume!((t - xi1).norm() > 1e-3 && (t - xi2).norm() > 1e-3);
            let zeta = HQ::from_xi(xi1, xi2);
            let r = HQ::resolvent(t, &zeta).unwrap();
            prop_assert!((r * (HQ::ONE.scale(t) - zeta) - HQ::ONE).norm() < 1e-9);
        }
    }
}
