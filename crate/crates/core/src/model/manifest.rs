//! The versioned training manifest: (clip, crop region, narration, domain)
//! rows in a total deterministic order, with recomputable per-domain stats.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::clips::ClipRecord;
use super::geometry::BoundingBox;
use super::narration::{NarrationRecord, NarrationSource};
use super::total_order_bits;
use super::validate::{check, join_path, Validate, Violation};

/// Schema version written into manifest and index headers.
pub const MANIFEST_SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// Native first-person data.
    Ego,
    /// Third-person data transformed into egocentric style.
    ExoEgo,
}

/// One training pair: a clip, its optional zoom-in crop, and a narration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub clip: ClipRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crop_region: Option<BoundingBox>,
    pub narration: NarrationRecord,
    pub domain: Domain,
}

/// Canonical total order over entries: `(video_id, clip start, narration
/// timestamp)` first, then the remaining fields so equal prefixes still
/// order deterministically.
pub fn cmp_entries(a: &ManifestEntry, b: &ManifestEntry) -> Ordering {
    (a.clip.video_id.as_str(), total_order_bits(a.clip.start_s))
        .cmp(&(b.clip.video_id.as_str(), total_order_bits(b.clip.start_s)))
        .then_with(|| {
            total_order_bits(a.narration.timestamp_s)
                .cmp(&total_order_bits(b.narration.timestamp_s))
        })
        .then_with(|| total_order_bits(a.clip.end_s).cmp(&total_order_bits(b.clip.end_s)))
        .then_with(|| a.domain.cmp(&b.domain))
        .then_with(|| a.narration.source.cmp(&b.narration.source))
        .then_with(|| a.narration.text.cmp(&b.narration.text))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DomainCounts {
    pub video_count: u64,
    pub pair_count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ManifestStats {
    pub ego: DomainCounts,
    pub exo_ego: DomainCounts,
}

impl ManifestStats {
    /// Recounts stats from scratch.
    pub fn compute(entries: &[ManifestEntry]) -> Self {
        let mut stats = ManifestStats::default();
        let mut ego_videos = BTreeSet::new();
        let mut exo_videos = BTreeSet::new();
        for entry in entries {
            match entry.domain {
                Domain::Ego => {
                    stats.ego.pair_count += 1;
                    ego_videos.insert(entry.clip.video_id.as_str());
                }
                Domain::ExoEgo => {
                    stats.exo_ego.pair_count += 1;
                    exo_videos.insert(entry.clip.video_id.as_str());
                }
            }
        }
        stats.ego.video_count = ego_videos.len() as u64;
        stats.exo_ego.video_count = exo_videos.len() as u64;
        stats
    }
}

/// Header written next to the manifest entries file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestMeta {
    pub schema_version: String,
    pub created_from: Vec<String>,
    pub entry_count: u64,
    pub stats: ManifestStats,
}

/// The deterministic, versioned dataset: entries in canonical order plus
/// stats that must match a from-scratch recount exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub schema_version: String,
    pub created_from: Vec<String>,
    pub entries: Vec<ManifestEntry>,
    pub stats: ManifestStats,
}

impl DatasetManifest {
    /// Sorts entries into canonical order, normalizes `created_from`, and
    /// computes stats.
    pub fn from_entries(created_from: Vec<String>, mut entries: Vec<ManifestEntry>) -> Self {
        entries.sort_by(cmp_entries);
        let mut created_from: Vec<String> = created_from;
        created_from.sort();
        created_from.dedup();
        let stats = ManifestStats::compute(&entries);
        DatasetManifest {
            schema_version: MANIFEST_SCHEMA_VERSION.to_string(),
            created_from,
            entries,
            stats,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn meta(&self) -> ManifestMeta {
        ManifestMeta {
            schema_version: self.schema_version.clone(),
            created_from: self.created_from.clone(),
            entry_count: self.entries.len() as u64,
            stats: self.stats,
        }
    }
}

impl Validate for ManifestEntry {
    fn collect_violations(&self, at: &str, out: &mut Vec<Violation>) {
        self.clip.collect_violations(&join_path(at, "clip"), out);
        self.narration
            .collect_violations(&join_path(at, "narration"), out);
        if let Some(crop) = &self.crop_region {
            crop.collect_violations(&join_path(at, "crop_region"), out);
        }
        // ASR-derived exo-ego narrations must fall inside their clip; ego
        // clip windows and generated captions are exempt.
        let asr_derived = matches!(
            self.narration.source,
            NarrationSource::OriginalAsr | NarrationSource::Rephrased
        );
        if self.domain == Domain::ExoEgo && asr_derived {
            check(
                self.clip.contains_timestamp(self.narration.timestamp_s),
                at,
                "narration",
                "narration timestamp within [clip.start_s, clip.end_s)",
                out,
            );
        }
        check(
            self.clip.video_id == self.narration.video_id,
            at,
            "narration",
            "narration video_id must match clip video_id",
            out,
        );
    }
}

impl Validate for DatasetManifest {
    fn collect_violations(&self, at: &str, out: &mut Vec<Violation>) {
        check(
            !self.schema_version.is_empty(),
            at,
            "schema_version",
            "schema_version nonempty",
            out,
        );
        for (i, entry) in self.entries.iter().enumerate() {
            entry.collect_violations(&join_path(at, &format!("entries[{i}]")), out);
        }
        let sorted = self
            .entries
            .windows(2)
            .all(|w| cmp_entries(&w[0], &w[1]) != Ordering::Greater);
        check(sorted, at, "entries", "entries in canonical sort order", out);
        check(
            self.stats == ManifestStats::compute(&self.entries),
            at,
            "stats",
            "stats must match a from-scratch recount",
            out,
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(video: &str, start: f64, ts: f64, domain: Domain) -> ManifestEntry {
        let mut narration = NarrationRecord::new(video, ts, "turn on the stove", NarrationSource::Rephrased);
        narration.alignability = Some(0.9);
        ManifestEntry {
            clip: ClipRecord::with_midpoint_refs(video, start, start + 5.0, 4),
            crop_region: None,
            narration,
            domain,
        }
    }

    #[test]
    fn from_entries_sorts_and_counts() {
        let entries = vec![
            entry("b", 5.0, 6.0, Domain::ExoEgo),
            entry("a", 0.0, 1.0, Domain::ExoEgo),
            entry("a", 0.0, 0.5, Domain::ExoEgo),
        ];
        let manifest = DatasetManifest::from_entries(vec!["exo".into()], entries);
        assert_eq!(manifest.entries[0].narration.timestamp_s, 0.5);
        assert_eq!(manifest.stats.exo_ego.pair_count, 3);
        assert_eq!(manifest.stats.exo_ego.video_count, 2);
        assert_eq!(manifest.stats.ego.pair_count, 0);
        assert!(manifest.validate().is_ok());
    }

    #[test]
    fn stale_stats_flagged() {
        let mut manifest =
            DatasetManifest::from_entries(vec![], vec![entry("a", 0.0, 1.0, Domain::ExoEgo)]);
        manifest.stats.exo_ego.pair_count = 7;
        assert!(manifest
            .violations()
            .iter()
            .any(|v| v.rule.contains("recount")));
    }

    #[test]
    fn narration_outside_clip_flagged_for_exo_asr() {
        let mut e = entry("a", 0.0, 7.0, Domain::ExoEgo);
        assert!(e.validate().is_err());
        e.narration.timestamp_s = 3.0;
        assert!(e.validate().is_ok());
    }
}
