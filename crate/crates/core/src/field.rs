//! H(C)-valued fields on R^3.

use std::fmt;

use crate::algebra::{Cplx, HQ};
use crate::error::Result;
use crate::expr::Expr;
use crate::frame::Point3;

pub const XYZ: &[&str] = &["x", "y", "z"];

/// A field `Psi: R^3 -> H(C)`.
pub trait Field: Send + Sync {
    fn value(&self, p: Point3) -> Result<HQ>;
    fn describe(&self) -> String;
}

/// A field with known first partial derivatives `(dPsi/dx, dPsi/dy, dPsi/dz)`.
pub trait DiffField: Field {
    fn partials(&self, p: Point3) -> Result<[HQ; 3]>;
}

impl<T: Field + ?Sized> Field for &T {
    fn value(&self, p: Point3) -> Result<HQ> {
        (**self).value(p)
    }
    fn describe(&self) -> String {
        (**self).describe()
    }
}

impl<T: DiffField + ?Sized> DiffField for &T {
    fn partials(&self, p: Point3) -> Result<[HQ; 3]> {
        (**self).partials(p)
    }
}

/// `Psi = sum_k c_k(x, y, z) e_k` with each coefficient an expression in
/// `x, y, z` (complex-valued, i.e. `U_k + i V_k`). Partials are symbolic.
#[derive(Debug, Clone, PartialEq)]
pub struct ExprField {
    comps: [Expr; 4],
    partials: [[Expr; 3]; 4],
}

impl ExprField {
    pub fn new(comps: [Expr; 4]) -> Self {
        let partials = std::array::from_fn(|k| std::array::from_fn(|v| comps[k].deriv(v)));
        ExprField { comps, partials }
    }

    pub fn parse(srcs: [&str; 4]) -> Result<Self> {
        let comps = [
            Expr::parse(srcs[0], XYZ)?,
            Expr::parse(srcs[1], XYZ)?,
            Expr::parse(srcs[2], XYZ)?,
            Expr::parse(srcs[3], XYZ)?,
        ];
        Ok(ExprField::new(comps))
    }

    pub fn components(&self) -> &[Expr; 4] {
        &self.comps
    }
}

fn args(p: Point3) -> [Cplx; 3] {
    [Cplx::new(p.x, 0.0), Cplx::new(p.y, 0.0), Cplx::new(p.z, 0.0)]
}

impl Field for ExprField {
    fn value(&self, p: Point3) -> Result<HQ> {
        let a = args(p);
        Ok(HQ::new(
            self.comps[0].eval(&a)?,
            self.comps[1].eval(&a)?,
            self.comps[2].eval(&a)?,
            self.comps[3].eval(&a)?,
        ))
    }

    fn describe(&self) -> String {
        self.to_string()
    }
}

impl DiffField for ExprField {
    fn partials(&self, p: Point3) -> Result<[HQ; 3]> {
        let a = args(p);
        let mut out = [HQ::ZERO; 3];
        for (v, slot) in out.iter_mut().enumerate() {
            for k in 0..4 {
                slot.c[k] = self.partials[k][v].eval(&a)?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ExprField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "field[{}; {}; {}; {}]",
            self.comps[0], self.comps[1], self.comps[2], self.comps[3]
        )
    }
}

/// A constant field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstField(pub HQ);

impl Field for ConstField {
    fn value(&self, _p: Point3) -> Result<HQ> {
        Ok(self.0)
    }
    fn describe(&self) -> String {
        format!("const[{}]", self.0)
    }
}

impl DiffField for ConstField {
    fn partials(&self, _p: Point3) -> Result<[HQ; 3]> {
        Ok([HQ::ZERO; 3])
    }
}

/// Wraps a closure as a field; handy in tests and benches.
pub struct FnField<F> {
    f: F,
    name: String,
}

impl<F> FnField<F>
where
    F: Fn(Point3) -> Result<HQ> + Send + Sync,
{
    pub fn new(name: impl Into<String>, f: F) -> Self {
        FnField { f, name: name.into() }
    }
}

impl<F> Field for FnField<F>
where
    F: Fn(Point3) -> Result<HQ> + Send + Sync,
{
    fn value(&self, p: Point3) -> Result<HQ> {
        (self.f)(p)
    }
    fn describe(&self) -> String {
        self.name.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expression_field_partials() {
        let f = ExprField::parse(["x*y", "0", "z^2", "1i*x*exp(y)"]).unwrap();
        let p = Point3::new(2.0, 0.5, -1.0);
        let v = f.value(p).unwrap();
        assert_eq!(v.c[0], Cplx::new(1.0, 0.0));
        assert_eq!(v.c[2], Cplx::new(1.0, 0.0));
        let [dx, dy, dz] = f.partials(p).unwrap();
        assert_eq!(dx.c[0], Cplx::new(0.5, 0.0));
        assert_eq!(dy.c[0], Cplx::new(2.0, 0.0));
        assert_eq!(dz.c[2], Cplx::new(-2.0, 0.0));
        assert!((dy.c[3] - Cplx::new(0.0, 2.0 * 0.5f64.exp())).norm() < 1e-15);
        assert_eq!(dx.c[1], Cplx::new(0.0, 0.0));
    }
}
