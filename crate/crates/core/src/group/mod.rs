//! The free group F₂ = ⟨a, b⟩ and its Cayley tree.

mod ball;
mod segment;
mod word;

pub use ball::{ball_size, enumerate_ball, enumerate_sphere, sphere_size, DEFAULT_BALL_CAP};
pub use segment::{contains_oriented, geodesic, median, OrientedSegment};
pub use word::{group_op, raw_letters, GroupOp, GroupWord, Letter};
