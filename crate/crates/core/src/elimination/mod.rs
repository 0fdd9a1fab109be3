//! Exact elimination: tag-variable polynomials, Groebner bases and normal
//! forms, Sylvester resultants, exact division.

mod groebner;
mod resultant;
mod tagpoly;

pub use groebner::{groebner_basis, is_unit_ideal, normal_form, ResourceGuard, DEFAULT_RESOURCE_CAP};
pub use resultant::{bareiss_det, exact_divide, resultant_y, sylvester_matrix_y};
pub use tagpoly::{Mono, MonomialOrder, TagPoly};
