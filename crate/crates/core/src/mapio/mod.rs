//! Text front-end: expression and map-file parsing, canonical printing and
//! JSON report serialization.

mod parse;
mod render;
pub mod report;

pub use parse::{parse_assignment, parse_map, parse_map_file, parse_poly, parse_scalar, MapFile};
pub use render::render_poly;
pub use render::render_scalar;
pub(crate) use render::signed_term;
