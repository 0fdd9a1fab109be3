//! Exact symbolic and numeric toolkit for bivariate polynomial maps
//! `F = (f, g): C^2 -> C^2`.
//!
//! The pieces, bottom up:
//!
//! * [`coeff`]: Gaussian-rational scalars and sparse bivariate polynomials.
//! * [`elimination`]: tag-variable polynomials, Groebner bases, resultants.
//! * [`mapio`]: expression/map-file parser, canonical printer, JSON reports.
//! * [`classify`]: Jacobian determinant, Non-Zero Condition, good maps.
//! * [`pertinent`]: pertinent-variable families, C1/C2 recognition and the
//!   r = 1 refutation.
//! * [`asymptotic`]: parametric asymptotic curves from a recognition.
//! * [`numeric`]: diverging-sequence harness.
//! * [`dominance`]: fibers via resultants and complex root finding.
//! * [`search`]: bounded sweeps over the pertinent-variable model.
//! * [`cli`]: the `jlab` command line.

pub mod asymptotic;
pub mod classify;
pub mod cli;
pub mod coeff;
pub mod corpus;
pub mod dominance;
pub mod elimination;
pub mod error;
pub mod mapio;
pub mod numeric;
pub mod pertinent;
pub mod search;

pub use coeff::{BiPoly, ComplexF, GaussRat, UniPoly, Var};
pub use error::{Error, Result};

/// A polynomial map `F = (f, g)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMap {
    pub f: BiPoly,
    pub g: BiPoly,
}

impl PolyMap {
    pub fn new(f: BiPoly, g: BiPoly) -> Self {
        PolyMap { f, g }
    }

    /// `(g, f)`.
    pub fn swapped(&self) -> PolyMap {
        PolyMap::new(self.g.clone(), self.f.clone())
    }

    /// Both components with `x` and `y` exchanged.
    pub fn mirrored(&self) -> PolyMap {
        PolyMap::new(self.f.swap_xy(), self.g.swap_xy())
    }

    pub fn eval_complex(&self, x: ComplexF, y: ComplexF) -> Result<(ComplexF, ComplexF), coeff::Diverged> {
        Ok((self.f.eval_complex(x, y)?, self.g.eval_complex(x, y)?))
    }
}
