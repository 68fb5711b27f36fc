//! Axis families in the Cayley tree, their projection complex, finite
//! truncations of the quasi-tree of spaces and the quasi-cocycles built from
//! coarse counting sets.

mod axis;
mod diagnostics;
mod graph;
mod wsets;

pub use axis::{d_axes, d_points, d_vertices, project_point, Axis, AxisFamily, CkPoint};
pub use diagnostics::{assumption_b_witness, diagnostics, measure_delta, Diagnostics};
pub use graph::{measure_xi, CkGraph, ShortestPaths, UNREACHABLE};
pub use wsets::{
    classify_path, family_truncated_sum, truncated_sum, truncated_sum_over, w_sets_in, w_sets_qt, QtCocycle, WConfig,
    WSets,
};
