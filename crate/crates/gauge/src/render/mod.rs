//! Output formats: SVG charts and text/CSV tables.

mod svg;
mod table;

pub use svg::{render_svg, RenderError, RenderSpec, Series, TICK_MM};
pub use table::{Cell, Colour, Table};
