//! Box dimension and Minkowski content of plane sets from geometry alone.

mod boxcount;
mod content;
mod fit;
pub mod generators;
mod geometry;
mod sausage;
mod spiral;

pub use boxcount::{box_count, count_cells, BoxCount, DEFAULT_OFFSETS};
pub use content::{
    content_from_areas_corrected, content_from_ratios, estimate_content, estimate_content_with,
    ContentEstimate, ContentVerdict, DEGENERATE_SLOPE, NONDEGENERATE_SLOPE,
};
pub use fit::{
    estimate_dimension, estimate_dimension_corrected, estimate_dimension_with, linear_fit, median,
    plateau_window, DimensionEstimate, DimensionMethod, LineFit, ScalingModel, PLATEAU_TOLERANCE,
};
pub use generators::{gen_astring, gen_chirp, gen_spiral, spiral_samples};
pub use geometry::{point_segment_distance, BBox, EpsilonGrid, Polyline};
pub use sausage::{estimate_dimension_sausage, sausage_area, sausage_area_rows, sausage_areas};
pub use spiral::{spiral_radial_analysis, RadiusSamples, SpiralRadialReport, DEFAULT_RAYS};
