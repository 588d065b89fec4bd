//! Weighted triangular-lattice networks whose non-intersecting path families
//! compute the Lambda-determinant.
//!
//! [`build_network`] lays out the graph, [`path_partition`] and
//! [`lgv_lambda_det`] evaluate it through path sums and a determinant, and
//! [`enumerate_families`] lists the families explicitly so that
//! [`family_to_sixv`] can read off their six-vertex configurations.

mod dot;
mod families;
mod graph;

pub use dot::to_dot;
pub use families::{enumerate_families, family_to_sixv, triangle_patterns, PathFamily, TrianglePattern};
pub use graph::{
    build_network, lgv_general, lgv_lambda_det, path_partition, Edge, FaceLabels, Step,
    TriangularNetwork,
};
