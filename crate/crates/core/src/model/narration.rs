//! Timestamped narrations and their provenance.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::validate::{check, check_unit_interval, Validate, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NarrationSource {
    /// Automatic speech transcription from the source corpus.
    OriginalAsr,
    /// ASR sentence rewritten into action-centric style.
    Rephrased,
    /// Caption produced by an external narrator model.
    NarratorGenerated,
    /// Manually annotated first-person narration.
    EgoManual,
}

/// A timestamped sentence attached to a video.
///
/// `alignability` travels with ASR-derived text (original or rephrased);
/// `perplexity` travels with narrator-generated captions. `generation_meta`
/// carries provenance such as the pre-rephrasing text or the narrator's
/// sampling settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NarrationRecord {
    pub video_id: String,
    pub timestamp_s: f64,
    pub text: String,
    pub source: NarrationSource,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alignability: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perplexity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generation_meta: Option<BTreeMap<String, serde_json::Value>>,
}

impl NarrationRecord {
    pub fn new(
        video_id: impl Into<String>,
        timestamp_s: f64,
        text: impl Into<String>,
        source: NarrationSource,
    ) -> Self {
        NarrationRecord {
            video_id: video_id.into(),
            timestamp_s,
            text: text.into(),
            source,
            alignability: None,
            perplexity: None,
            generation_meta: None,
        }
    }

    /// Whitespace-delimited token count of the trimmed text.
    pub fn token_count(&self) -> usize {
        self.text.split_whitespace().count()
    }
}

impl Validate for NarrationRecord {
    fn collect_violations(&self, at: &str, out: &mut Vec<Violation>) {
        check(
            self.timestamp_s.is_finite() && self.timestamp_s >= 0.0,
            at,
            "timestamp_s",
            "timestamp_s >= 0",
            out,
        );
        check(
            !self.text.trim().is_empty(),
            at,
            "text",
            "text nonempty after whitespace trimming",
            out,
        );

        let asr_derived = matches!(
            self.source,
            NarrationSource::OriginalAsr | NarrationSource::Rephrased
        );
        check(
            self.alignability.is_some() == asr_derived,
            at,
            "alignability",
            "alignability present iff source is original_asr or rephrased",
            out,
        );
        if let Some(score) = self.alignability {
            check_unit_interval(score, at, "alignability", out);
        }

        let generated = self.source == NarrationSource::NarratorGenerated;
        check(
            self.perplexity.is_some() == generated,
            at,
            "perplexity",
            "perplexity present iff source is narrator_generated",
            out,
        );
        if let Some(ppl) = self.perplexity {
            check(
                ppl.is_finite() && ppl > 0.0,
                at,
                "perplexity",
                "perplexity > 0",
                out,
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn asr_narration_needs_alignability() {
        let mut n = NarrationRecord::new("v", 1.0, "pour the batter", NarrationSource::OriginalAsr);
        assert!(n.validate().is_err());
        n.alignability = Some(0.7);
        assert!(n.validate().is_ok());
    }

    #[test]
    fn ego_narration_must_not_carry_scores() {
        let mut n = NarrationRecord::new("v", 1.0, "C turns on a light", NarrationSource::EgoManual);
        assert!(n.validate().is_ok());
        n.alignability = Some(0.7);
        assert!(n.validate().is_err());
    }

    #[test]
    fn generated_narration_needs_perplexity() {
        let mut n = NarrationRecord::new("v", 1.0, "wipe the blade", NarrationSource::NarratorGenerated);
        assert!(n.validate().is_err());
        n.perplexity = Some(3.2);
        assert!(n.validate().is_ok());
    }

    #[test]
    fn whitespace_only_text_rejected() {
        let mut n = NarrationRecord::new("v", 1.0, "  \t ", NarrationSource::EgoManual);
        assert!(n
            .violations()
            .iter()
            .any(|v| v.rule.contains("nonempty")));
        n.text = "opens door".into();
        assert!(n.validate().is_ok());
        assert_eq!(n.token_count(), 2);
    }
}
