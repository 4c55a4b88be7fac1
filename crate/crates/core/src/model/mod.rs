//! Shared domain types, their invariants, and canonical serialization.
//!
//! Every type here is immutable after construction and safe to share across
//! worker threads. The canonical on-disk encoding is JSON Lines: UTF-8, one
//! record per line, keys in declaration order, floats in shortest
//! round-trip decimal form, so identical data always produces identical
//! bytes.

mod clips;
mod detections;
mod embedding;
mod geometry;
mod manifest;
mod narration;
pub(crate) mod validate;

pub use clips::{
    midpoint_refs, ClipKey, ClipRecord, FrameTerm, ScoredClip, DEFAULT_CLIP_LEN_S,
    DEFAULT_FRAMES_PER_CLIP, SCORE_RECOMPUTE_TOLERANCE,
};
pub use detections::{FrameDetections, HandDetection, HandSide, ObjectDetection};
pub use embedding::{EmbeddingBatch, LossReport};
pub use geometry::BoundingBox;
pub use manifest::{
    cmp_entries, DatasetManifest, Domain, DomainCounts, ManifestEntry, ManifestMeta,
    ManifestStats, MANIFEST_SCHEMA_VERSION,
};
pub use narration::{NarrationRecord, NarrationSource};
pub use validate::{Validate, Violation, Violations};

/// Monotone map from finite `f64` to `u64`: `a < b` iff
/// `total_order_bits(a) < total_order_bits(b)`. Used for sort keys and map
/// keys over timestamps, which are finite by invariant.
pub(crate) fn total_order_bits(x: f64) -> u64 {
    let bits = x.to_bits();
    if bits & 0x8000_0000_0000_0000 != 0 {
        !bits
    } else {
        bits | 0x8000_0000_0000_0000
    }
}
