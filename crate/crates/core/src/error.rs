use thiserror::Error;

use crate::algebra::Cplx;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("element is not invertible: |xi1| = {xi1_abs:e}, |xi2| = {xi2_abs:e} (threshold {eps:e})")]
    NotInvertible { xi1_abs: f64, xi2_abs: f64, eps: f64 },

    #[error("element is not of the form xi1*e1 + xi2*e2 (e3/e4 coefficients are nonzero)")]
    WrongForm,

    #[error("i1, i2, i3 are linearly dependent over the reals (rank {rank})")]
    DependentBasis { rank: usize },

    #[error("f{k}(E3) is not all of C: a{k} and b{k} are both real")]
    NotSurjective { k: u8 },

    #[error("pole hit: denominator magnitude {magnitude:e} below {eps:e}")]
    PoleHit { magnitude: f64, eps: f64 },

    #[error("parse error at position {pos}: {message}")]
    Parse { pos: usize, message: String },

    #[error("quadrature did not converge after {rounds} refinement rounds (estimate {estimate:e}, tol {tol:e})")]
    NoConvergence { rounds: u32, estimate: f64, tol: f64 },

    #[error("point lies within {distance:e} of the curve (clearance {clearance:e})")]
    TooClose { distance: f64, clearance: f64 },

    #[error("winding integral {value} is not within 0.1 of an integer")]
    Ambiguous { value: f64 },

    #[error("curve does not embrace the point once: winding number about xi{k}(p0) is {winding}")]
    NotEmbracing { k: u8, winding: i64 },

    #[error("curve is not closed")]
    NotClosed,

    #[error("frame is not harmonic: 1 + i2^2 + i3^2 has norm {defect:e}")]
    FrameNotHarmonic { defect: f64 },

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("invalid quadrature settings: {0}")]
    InvalidQuadrature(String),

    #[error("map handedness does not match the requested check: {0}")]
    Handedness(String),
}

impl Error {
    pub(crate) fn pole(denominator: Cplx, eps: f64) -> Self {
        Error::PoleHit {
            magnitude: denominator.norm(),
            eps,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
