//! Exact scalar and polynomial arithmetic over the Gaussian rationals Q(i),
//! plus the double-precision evaluation layer.

mod bipoly;
mod gauss;
mod uni;

pub use bipoly::{BiPoly, Degrees, Exp2, Var};
pub use gauss::{GaussRat, ParseGaussRatError};
pub use uni::UniPoly;

/// Floating complex scalar used by the numeric layer.
pub type ComplexF = num_complex::Complex64;

/// A floating evaluation left the finite range of `f64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Diverged;

impl std::fmt::Display for Diverged {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("floating evaluation diverged")
    }
}

impl std::error::Error for Diverged {}
