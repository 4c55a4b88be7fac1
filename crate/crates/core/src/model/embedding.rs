//! Toy-scale embedding batches for verifying the contrastive objective.

use serde::{Deserialize, Serialize};

use super::validate::{check, Validate, Violation};

/// Paired video/text embeddings with the softmax temperature.
///
/// Both matrices are `B x d`, one row per sample; row `i` of each side
/// forms a positive pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingBatch {
    pub video_embeddings: Vec<Vec<f64>>,
    pub text_embeddings: Vec<Vec<f64>>,
    pub temperature: f64,
}

impl EmbeddingBatch {
    pub fn new(
        video_embeddings: Vec<Vec<f64>>,
        text_embeddings: Vec<Vec<f64>>,
        temperature: f64,
    ) -> Self {
        EmbeddingBatch {
            video_embeddings,
            text_embeddings,
            temperature,
        }
    }

    pub fn batch_size(&self) -> usize {
        self.video_embeddings.len()
    }

    pub fn dim(&self) -> usize {
        self.video_embeddings.first().map_or(0, Vec::len)
    }
}

fn matrix_violations(matrix: &[Vec<f64>], at: &str, field: &str, out: &mut Vec<Violation>) {
    let dim = matrix.first().map_or(0, Vec::len);
    let rectangular = matrix.iter().all(|row| row.len() == dim);
    check(rectangular, at, field, "rows must have equal length", out);
    let finite = matrix.iter().flatten().all(|x| x.is_finite());
    check(finite, at, field, "all entries finite", out);
}

impl Validate for EmbeddingBatch {
    fn collect_violations(&self, at: &str, out: &mut Vec<Violation>) {
        matrix_violations(&self.video_embeddings, at, "video_embeddings", out);
        matrix_violations(&self.text_embeddings, at, "text_embeddings", out);
        let same_shape = self.video_embeddings.len() == self.text_embeddings.len()
            && self.video_embeddings.first().map_or(0, Vec::len)
                == self.text_embeddings.first().map_or(0, Vec::len);
        check(
            same_shape,
            at,
            "text_embeddings",
            "video and text matrices must have the same shape",
            out,
        );
        check(
            self.temperature.is_finite() && self.temperature > 0.0,
            at,
            "temperature",
            "temperature > 0",
            out,
        );
    }
}

/// Loss value and per-side gradients for an [`EmbeddingBatch`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LossReport {
    pub loss: f64,
    pub gradient_video: Vec<Vec<f64>>,
    pub gradient_text: Vec<Vec<f64>>,
}

impl Validate for LossReport {
    fn collect_violations(&self, at: &str, out: &mut Vec<Violation>) {
        check(self.loss.is_finite(), at, "loss", "loss finite", out);
        matrix_violations(&self.gradient_video, at, "gradient_video", out);
        matrix_violations(&self.gradient_text, at, "gradient_text", out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_mismatch_flagged() {
        let batch = EmbeddingBatch::new(vec![vec![1.0, 0.0]], vec![vec![1.0]], 0.07);
        assert!(batch
            .violations()
            .iter()
            .any(|v| v.rule.contains("same shape")));
    }

    #[test]
    fn nonpositive_temperature_flagged() {
        let batch = EmbeddingBatch::new(vec![vec![1.0]], vec![vec![1.0]], 0.0);
        assert!(batch.violations().iter().any(|v| v.path == "temperature"));
    }

    #[test]
    fn ragged_matrix_flagged() {
        let batch = EmbeddingBatch::new(
            vec![vec![1.0, 2.0], vec![1.0]],
            vec![vec![1.0, 2.0], vec![1.0, 2.0]],
            0.07,
        );
        assert!(batch
            .violations()
            .iter()
            .any(|v| v.rule.contains("equal length")));
    }
}
