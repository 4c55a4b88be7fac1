//! Ingestion of detection and narration files into a queryable corpus
//! index, plus the first-person narration preprocessing filters.

use std::collections::BTreeMap;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::jsonl;
use crate::model::{total_order_bits, FrameDetections, NarrationRecord, Validate};

/// Schema version written into index headers.
pub const INDEX_SCHEMA_VERSION: &str = "1";
/// Minimum token count for kept first-person narrations.
pub const EGO_MIN_TOKENS: usize = 4;
/// Literal uncertainty tags that disqualify a first-person narration.
pub const UNSURE_TAGS: [&str; 2] = ["#unsure", "#Unsure"];

/// Per-file ingestion accounting. `indexed + skipped_parse +
/// skipped_invalid == lines` always holds.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestStats {
    pub lines: u64,
    pub indexed: u64,
    pub skipped_parse: u64,
    pub skipped_invalid: u64,
}

fn ingest_file<T>(path: &Path, strict: bool) -> Result<(Vec<T>, IngestStats), CoreError>
where
    T: DeserializeOwned + Validate,
{
    let mut records = Vec::new();
    let mut stats = IngestStats::default();
    stats.lines = jsonl::scan_jsonl(path, |line, parsed| {
        match parsed {
            Ok(record) => match record.validate() {
                Ok(()) => {
                    stats.indexed += 1;
                    records.push(record);
                }
                Err(violations) if strict => {
                    return Err(CoreError::InvalidRecord {
                        path: path.to_path_buf(),
                        line,
                        violations,
                    });
                }
                Err(_) => stats.skipped_invalid += 1,
            },
            Err(source) if strict => {
                return Err(CoreError::MalformedLine {
                    path: path.to_path_buf(),
                    line,
                    source,
                });
            }
            Err(_) => stats.skipped_parse += 1,
        }
        Ok(())
    })?;
    Ok((records, stats))
}

/// Parses and validates a `detections.jsonl` file. In strict mode the first
/// bad line aborts; in lenient mode bad lines are counted and skipped.
pub fn ingest_detections(
    path: &Path,
    strict: bool,
) -> Result<(Vec<FrameDetections>, IngestStats), CoreError> {
    ingest_file(path, strict)
}

/// Parses and validates a `narrations.jsonl` file; same policy as
/// [`ingest_detections`].
pub fn ingest_narrations(
    path: &Path,
    strict: bool,
) -> Result<(Vec<NarrationRecord>, IngestStats), CoreError> {
    ingest_file(path, strict)
}

/// Time-sorted per-video views over one source corpus.
///
/// Per-video lists are sorted by timestamp; records sharing a timestamp are
/// ordered by their canonical serialized form, which makes the index a pure
/// function of the input record multiset (input line order never matters).
/// Exact duplicate narrations (same video, timestamp, and text) are
/// deduplicated and counted.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CorpusIndex {
    pub detections_by_video: BTreeMap<String, Vec<FrameDetections>>,
    pub narrations_by_video: BTreeMap<String, Vec<NarrationRecord>>,
    pub source_tag: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildStats {
    pub deduplicated_narrations: u64,
}

impl CorpusIndex {
    /// Merges validated records into a sorted index. Single-writer step;
    /// the per-file parsing feeding it may run concurrently.
    pub fn build(
        source_tag: impl Into<String>,
        detections: Vec<FrameDetections>,
        narrations: Vec<NarrationRecord>,
    ) -> (Self, BuildStats) {
        let mut index = CorpusIndex {
            source_tag: source_tag.into(),
            ..CorpusIndex::default()
        };
        let mut stats = BuildStats::default();

        for frame in detections {
            index
                .detections_by_video
                .entry(frame.video_id.clone())
                .or_default()
                .push(frame);
        }
        for frames in index.detections_by_video.values_mut() {
            sort_by_time_then_content(frames, |f| f.timestamp_s);
        }

        for narration in narrations {
            index
                .narrations_by_video
                .entry(narration.video_id.clone())
                .or_default()
                .push(narration);
        }
        for narrations in index.narrations_by_video.values_mut() {
            sort_by_time_then_content(narrations, |n| n.timestamp_s);
            let before = narrations.len();
            narrations.dedup_by(|a, b| {
                a.timestamp_s.to_bits() == b.timestamp_s.to_bits() && a.text == b.text
            });
            stats.deduplicated_narrations += (before - narrations.len()) as u64;
        }

        (index, stats)
    }

    pub fn videos(&self) -> Vec<&str> {
        let mut ids: Vec<&str> = self
            .detections_by_video
            .keys()
            .chain(self.narrations_by_video.keys())
            .map(String::as_str)
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    pub fn detections_for(&self, video_id: &str) -> &[FrameDetections] {
        self.detections_by_video
            .get(video_id)
            .map_or(&[], Vec::as_slice)
    }

    pub fn narrations_for(&self, video_id: &str) -> &[NarrationRecord] {
        self.narrations_by_video
            .get(video_id)
            .map_or(&[], Vec::as_slice)
    }

    pub fn detection_count(&self) -> u64 {
        self.detections_by_video
            .values()
            .map(|v| v.len() as u64)
            .sum()
    }

    pub fn narration_count(&self) -> u64 {
        self.narrations_by_video
            .values()
            .map(|v| v.len() as u64)
            .sum()
    }
}

/// Sorts by timestamp, breaking timestamp ties by canonical JSON so the
/// result is independent of input order. Serialization cost is only paid
/// inside tied runs.
fn sort_by_time_then_content<T: Serialize>(records: &mut [T], time: impl Fn(&T) -> f64) {
    records.sort_by_key(|r| total_order_bits(time(r)));
    let mut i = 0;
    while i < records.len() {
        let bits = total_order_bits(time(&records[i]));
        let mut j = i + 1;
        while j < records.len() && total_order_bits(time(&records[j])) == bits {
            j += 1;
        }
        if j - i > 1 {
            records[i..j]
                .sort_by_cached_key(|r| serde_json::to_string(r).expect("record serializes"));
        }
        i = j;
    }
}

/// Drop report for [`filter_ego_narrations`]. `kept + dropped_tag +
/// dropped_short == input` always holds.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EgoFilterStats {
    pub kept: u64,
    pub dropped_tag: u64,
    pub dropped_short: u64,
}

/// First-person narration preprocessing: drops any sentence containing an
/// `#unsure`/`#Unsure` tag, then any sentence with fewer than
/// [`EGO_MIN_TOKENS`] whitespace-delimited tokens. Punctuation is not
/// stripped before counting. Idempotent.
pub fn filter_ego_narrations(
    narrations: Vec<NarrationRecord>,
) -> (Vec<NarrationRecord>, EgoFilterStats) {
    let mut stats = EgoFilterStats::default();
    let kept = narrations
        .into_iter()
        .filter(|n| {
            if UNSURE_TAGS.iter().any(|tag| n.text.contains(tag)) {
                stats.dropped_tag += 1;
                false
            } else if n.token_count() < EGO_MIN_TOKENS {
                stats.dropped_short += 1;
                false
            } else {
                stats.kept += 1;
                true
            }
        })
        .collect();
    (kept, stats)
}

/// Header describing a persisted index directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexMeta {
    pub schema_version: String,
    pub source_tag: String,
    pub shard_count: u32,
    pub video_count: u64,
    pub detection_count: u64,
    pub narration_count: u64,
}

fn shard_of(video_id: &str, shard_count: u32) -> u32 {
    // FNV-1a; platform-stable shard assignment by video id.
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for byte in video_id.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    (hash % u64::from(shard_count)) as u32
}

fn detections_shard_path(dir: &Path, shard: u32) -> std::path::PathBuf {
    dir.join(format!("detections.{shard:03}.jsonl"))
}

fn narrations_shard_path(dir: &Path, shard: u32) -> std::path::PathBuf {
    dir.join(format!("narrations.{shard:03}.jsonl"))
}

/// Persists an index as sharded JSON Lines plus a `meta.json` header.
/// Videos are assigned to shards by a stable hash of their id.
pub fn write_index(index: &CorpusIndex, dir: &Path, shard_count: u32) -> Result<IndexMeta, CoreError> {
    if shard_count == 0 {
        return Err(CoreError::invalid_input("shard_count must be >= 1"));
    }
    std::fs::create_dir_all(dir).map_err(|e| CoreError::io(dir, e))?;
    for shard in 0..shard_count {
        let detections: Vec<&FrameDetections> = index
            .detections_by_video
            .iter()
            .filter(|(video, _)| shard_of(video, shard_count) == shard)
            .flat_map(|(_, frames)| frames.iter())
            .collect();
        jsonl::write_jsonl(&detections_shard_path(dir, shard), detections.iter().copied())?;
        let narrations: Vec<&NarrationRecord> = index
            .narrations_by_video
            .iter()
            .filter(|(video, _)| shard_of(video, shard_count) == shard)
            .flat_map(|(_, narrations)| narrations.iter())
            .collect();
        jsonl::write_jsonl(&narrations_shard_path(dir, shard), narrations.iter().copied())?;
    }
    let meta = IndexMeta {
        schema_version: INDEX_SCHEMA_VERSION.to_string(),
        source_tag: index.source_tag.clone(),
        shard_count,
        video_count: index.videos().len() as u64,
        detection_count: index.detection_count(),
        narration_count: index.narration_count(),
    };
    jsonl::write_json_pretty(&dir.join("meta.json"), &meta)?;
    Ok(meta)
}

/// Loads a persisted index, checking the header's schema version and
/// record counts.
pub fn read_index(dir: &Path) -> Result<(CorpusIndex, IndexMeta), CoreError> {
    let meta_path = dir.join("meta.json");
    let meta: IndexMeta = jsonl::read_json(&meta_path)?;
    if meta.schema_version != INDEX_SCHEMA_VERSION {
        return Err(CoreError::SchemaVersion {
            path: meta_path,
            found: meta.schema_version,
            expected: INDEX_SCHEMA_VERSION.to_string(),
        });
    }
    let mut detections = Vec::new();
    let mut narrations = Vec::new();
    for shard in 0..meta.shard_count {
        detections.extend(jsonl::read_jsonl::<FrameDetections>(&detections_shard_path(dir, shard))?);
        narrations.extend(jsonl::read_jsonl::<NarrationRecord>(&narrations_shard_path(dir, shard))?);
    }
    let (index, _) = CorpusIndex::build(meta.source_tag.clone(), detections, narrations);
    if index.detection_count() != meta.detection_count
        || index.narration_count() != meta.narration_count
    {
        return Err(CoreError::integrity(format!(
            "index {} does not match its header: {} detections and {} narrations on disk, header says {} and {}",
            dir.display(),
            index.detection_count(),
            index.narration_count(),
            meta.detection_count,
            meta.narration_count,
        )));
    }
    Ok((index, meta))
}
