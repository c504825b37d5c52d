//! Complexified quaternions `H(C)`, G-monogenic mappings on `R^3` and
//! numerical checks of their integral theorems.
//!
//! Elements of `H(C)` are stored in the idempotent basis `e1..e4`, where
//! multiplication reduces to four complex bilinear forms.

pub mod algebra;
pub mod error;
pub mod expr;
pub mod field;
pub mod frame;
pub mod geometry;
pub mod holo;
pub mod integrals;
pub mod monogenic;
pub mod quadrature;
pub mod stock;
pub mod verify;

pub use algebra::{Cplx, StdQuat, HQ};
pub use error::{Error, Result};
pub use field::{ConstField, DiffField, ExprField, Field, FnField};
pub use frame::{Frame, Line3, Point3, Vec3, Xi};
pub use geometry::{box_boundary, project_curve, Box3, Curve3, Region3, Surface3};
pub use holo::{contour_integral, winding_number, Curve2, HoloFn};
pub use integrals::{line_integral, surface_integral, volume_integral, FormSide};
pub use monogenic::{GMonogenicMap, Handedness};
pub use quadrature::{Estimate, Integrator, QuadratureSpec};
pub use verify::{TheoremId, VerificationReport, VerifySettings};
