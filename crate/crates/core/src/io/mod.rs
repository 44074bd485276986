//! Text formats and seeded generators.

pub mod format;
pub mod gen;

pub use format::{parse_eci, parse_ppi, render_eci, render_ppi, render_roles};
pub use gen::{gen_eci, gen_ppi, GenConfig};
