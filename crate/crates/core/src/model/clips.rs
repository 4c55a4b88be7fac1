//! Time-bounded clips and their HOI scores.

use serde::{Deserialize, Serialize};

use super::total_order_bits;
use super::validate::{check, check_unit_interval, Validate, Violation};

/// Default clip length used by uniform segmentation, in seconds.
pub const DEFAULT_CLIP_LEN_S: f64 = 5.0;
/// Default number of frames sampled per clip.
pub const DEFAULT_FRAMES_PER_CLIP: usize = 4;
/// Tolerance for the stored-vs-recomputed HOI score check.
pub const SCORE_RECOMPUTE_TOLERANCE: f64 = 1e-12;

/// A half-open video segment `[start_s, end_s)` with its sampled frame
/// timestamps. Frames are referenced by timestamp, never loaded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClipRecord {
    pub video_id: String,
    pub start_s: f64,
    pub end_s: f64,
    pub frame_refs: Vec<f64>,
}

impl ClipRecord {
    /// Builds a clip with `k` uniform midpoint frame references,
    /// `start + (i + 0.5) * (len / k)`. Midpoints avoid sampling boundary
    /// frames shared between adjacent clips.
    pub fn with_midpoint_refs(video_id: impl Into<String>, start_s: f64, end_s: f64, k: usize) -> Self {
        ClipRecord {
            video_id: video_id.into(),
            start_s,
            end_s,
            frame_refs: midpoint_refs(start_s, end_s, k),
        }
    }

    pub fn duration_s(&self) -> f64 {
        self.end_s - self.start_s
    }

    /// Half-open membership test: `start_s <= t < end_s`.
    pub fn contains_timestamp(&self, t: f64) -> bool {
        t >= self.start_s && t < self.end_s
    }

    /// Total-order key identifying this clip's interval within its video.
    pub fn key(&self) -> ClipKey {
        ClipKey {
            video_id: self.video_id.clone(),
            start_bits: total_order_bits(self.start_s),
            end_bits: total_order_bits(self.end_s),
        }
    }
}

/// Uniform midpoint timestamps for a `[start_s, end_s)` interval.
pub fn midpoint_refs(start_s: f64, end_s: f64, k: usize) -> Vec<f64> {
    let step = (end_s - start_s) / k as f64;
    (0..k).map(|i| start_s + (i as f64 + 0.5) * step).collect()
}

/// Ordered clip identity `(video_id, start, end)` usable as a map key.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClipKey {
    pub video_id: String,
    start_bits: u64,
    end_bits: u64,
}

impl ClipKey {
    pub fn start_s(&self) -> f64 {
        from_total_order_bits(self.start_bits)
    }

    pub fn end_s(&self) -> f64 {
        from_total_order_bits(self.end_bits)
    }
}

fn from_total_order_bits(bits: u64) -> f64 {
    let bits = if bits & 0x8000_0000_0000_0000 != 0 {
        bits ^ 0x8000_0000_0000_0000
    } else {
        !bits
    };
    f64::from_bits(bits)
}

impl Validate for ClipRecord {
    fn collect_violations(&self, at: &str, out: &mut Vec<Violation>) {
        check(
            self.start_s.is_finite() && self.start_s >= 0.0,
            at,
            "start_s",
            "start_s >= 0",
            out,
        );
        check(
            self.end_s.is_finite() && self.start_s < self.end_s,
            at,
            "start_s",
            "start_s < end_s",
            out,
        );
        check(
            !self.frame_refs.is_empty(),
            at,
            "frame_refs",
            "at least one frame reference",
            out,
        );
        let increasing = self.frame_refs.windows(2).all(|w| w[0] < w[1]);
        check(
            increasing,
            at,
            "frame_refs",
            "frame_refs strictly increasing",
            out,
        );
        let in_range = self
            .frame_refs
            .iter()
            .all(|&t| t.is_finite() && t >= self.start_s && t < self.end_s);
        check(
            in_range,
            at,
            "frame_refs",
            "frame_refs within [start_s, end_s)",
            out,
        );
    }
}

/// Per-frame contribution to the HOI score.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameTerm {
    /// 1 when the frame shows a contacting hand together with an object.
    pub hoi_indicator: u8,
    /// Mean probability over all detected hands; 0 when the frame has none.
    pub avg_hand_prob: f64,
}

impl FrameTerm {
    pub fn value(&self) -> f64 {
        f64::from(self.hoi_indicator) + self.avg_hand_prob
    }
}

/// A clip and its HOI relevance score.
///
/// The score is the mean of `hoi_indicator + avg_hand_prob` over the
/// clip's sampled frames, so it always lies in `[0, 2]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredClip {
    pub clip: ClipRecord,
    pub hoi_score: f64,
    pub per_frame_terms: Vec<FrameTerm>,
}

impl ScoredClip {
    /// Recomputes the score from the stored per-frame terms.
    pub fn recomputed_score(&self) -> f64 {
        if self.per_frame_terms.is_empty() {
            return 0.0;
        }
        let sum: f64 = self.per_frame_terms.iter().map(FrameTerm::value).sum();
        sum / self.per_frame_terms.len() as f64
    }
}

impl Validate for ScoredClip {
    fn collect_violations(&self, at: &str, out: &mut Vec<Violation>) {
        self.clip
            .collect_violations(&super::validate::join_path(at, "clip"), out);
        check(
            !self.per_frame_terms.is_empty(),
            at,
            "per_frame_terms",
            "at least one frame term",
            out,
        );
        for (i, term) in self.per_frame_terms.iter().enumerate() {
            let path = super::validate::join_path(at, &format!("per_frame_terms[{i}]"));
            check(
                term.hoi_indicator <= 1,
                &path,
                "hoi_indicator",
                "hoi_indicator in {0, 1}",
                out,
            );
            check_unit_interval(term.avg_hand_prob, &path, "avg_hand_prob", out);
        }
        check(
            self.hoi_score.is_finite() && (0.0..=2.0).contains(&self.hoi_score),
            at,
            "hoi_score",
            "0 <= hoi_score <= 2",
            out,
        );
        if !self.per_frame_terms.is_empty() {
            check(
                (self.hoi_score - self.recomputed_score()).abs() <= SCORE_RECOMPUTE_TOLERANCE,
                at,
                "hoi_score",
                "hoi_score must equal the mean of per-frame terms",
                out,
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midpoints_for_default_clip() {
        let refs = midpoint_refs(0.0, 5.0, 4);
        assert_eq!(refs, vec![0.625, 1.875, 3.125, 4.375]);
    }

    #[test]
    fn single_midpoint() {
        assert_eq!(midpoint_refs(10.0, 15.0, 1), vec![12.5]);
    }

    #[test]
    fn half_open_membership() {
        let clip = ClipRecord::with_midpoint_refs("v", 5.0, 10.0, 4);
        assert!(clip.contains_timestamp(5.0));
        assert!(clip.contains_timestamp(7.2));
        assert!(!clip.contains_timestamp(10.0));
    }

    #[test]
    fn clip_key_round_trips_bounds() {
        let clip = ClipRecord::with_midpoint_refs("v", 7.5, 12.5, 4);
        let key = clip.key();
        assert_eq!(key.start_s(), 7.5);
        assert_eq!(key.end_s(), 12.5);
    }

    #[test]
    fn score_mismatch_flagged() {
        let scored = ScoredClip {
            clip: ClipRecord::with_midpoint_refs("v", 0.0, 5.0, 4),
            hoi_score: 0.5,
            per_frame_terms: vec![
                FrameTerm { hoi_indicator: 1, avg_hand_prob: 0.5 },
                FrameTerm { hoi_indicator: 0, avg_hand_prob: 0.0 },
            ],
        };
        // true mean is 0.75
        assert!(scored.validate().is_err());
    }

    #[test]
    fn nonbinary_indicator_flagged() {
        let scored = ScoredClip {
            clip: ClipRecord::with_midpoint_refs("v", 0.0, 5.0, 4),
            hoi_score: 2.0,
            per_frame_terms: vec![FrameTerm { hoi_indicator: 2, avg_hand_prob: 0.0 }],
        };
        assert!(scored
            .violations()
            .iter()
            .any(|v| v.rule == "hoi_indicator in {0, 1}"));
    }
}
