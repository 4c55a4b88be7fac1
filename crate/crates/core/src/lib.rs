//! Curation engine that turns third-person (exocentric) video-language
//! corpora into egocentric-style training data.
//!
//! The pipeline mines clips rich in hand-object interaction (HOI) from
//! detector output, zooms in on the interacting region, rewrites or
//! generates action-style narrations for the selected clips, and emits a
//! deterministic, versioned training manifest. A verification module
//! provides reference implementations of the symmetric contrastive loss
//! and the retrieval metrics (mAP, nDCG, multiple-choice accuracy) used to
//! validate downstream training stacks.
//!
//! Modules follow the pipeline order:
//!
//! - [`model`]: shared domain types, invariant validation, canonical JSON
//! - [`jsonl`]: streaming JSON Lines I/O
//! - [`ingest`]: detection/narration file ingestion and corpus indexing
//! - [`curation`]: clip segmentation, frame sampling, HOI scoring, selection
//! - [`spatial`]: hand/object hull boxes and crop regions
//! - [`narrate`]: alignability/perplexity filters, few-shot rephrasing,
//!   narrator caption ingestion, per-clip merging
//! - [`assembly`]: manifest concatenation, batch sampling, manifest I/O
//! - [`verify`]: contrastive-loss and retrieval-metric oracles

pub mod assembly;
pub mod curation;
pub mod error;
pub mod ingest;
pub mod jsonl;
pub mod model;
pub mod narrate;
pub mod spatial;
pub mod verify;

pub use error::CoreError;
pub use model::{
    BoundingBox, ClipKey, ClipRecord, DatasetManifest, Domain, EmbeddingBatch, FrameDetections,
    FrameTerm, HandDetection, HandSide, LossReport, ManifestEntry, ManifestStats, NarrationRecord,
    NarrationSource, ObjectDetection, ScoredClip, Validate, Violation, Violations,
};
