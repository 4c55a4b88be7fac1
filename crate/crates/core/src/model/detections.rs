//! Per-frame hand/object detector output.

use serde::{Deserialize, Serialize};

use super::geometry::BoundingBox;
use super::validate::{check, check_unit_interval, join_path, Validate, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HandSide {
    Left,
    Right,
    Unknown,
}

/// One detected hand with the detector's contact state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HandDetection {
    #[serde(rename = "box")]
    pub bbox: BoundingBox,
    pub probability: f64,
    pub side: HandSide,
    pub in_contact: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectDetection {
    #[serde(rename = "box")]
    pub bbox: BoundingBox,
    pub probability: f64,
}

/// All detections for one frame, referenced by `(video_id, timestamp_s)`.
/// Frames are never decoded here; geometry is all this pipeline needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameDetections {
    pub video_id: String,
    pub timestamp_s: f64,
    pub frame_width: f64,
    pub frame_height: f64,
    pub hands: Vec<HandDetection>,
    pub objects: Vec<ObjectDetection>,
}

impl Validate for HandDetection {
    fn collect_violations(&self, at: &str, out: &mut Vec<Violation>) {
        self.bbox.collect_violations(&join_path(at, "box"), out);
        check_unit_interval(self.probability, at, "probability", out);
    }
}

impl Validate for ObjectDetection {
    fn collect_violations(&self, at: &str, out: &mut Vec<Violation>) {
        self.bbox.collect_violations(&join_path(at, "box"), out);
        check_unit_interval(self.probability, at, "probability", out);
    }
}

impl Validate for FrameDetections {
    fn collect_violations(&self, at: &str, out: &mut Vec<Violation>) {
        check(
            self.timestamp_s.is_finite() && self.timestamp_s >= 0.0,
            at,
            "timestamp_s",
            "timestamp_s >= 0",
            out,
        );
        check(
            self.frame_width.is_finite() && self.frame_width > 0.0,
            at,
            "frame_width",
            "frame dimensions > 0",
            out,
        );
        check(
            self.frame_height.is_finite() && self.frame_height > 0.0,
            at,
            "frame_height",
            "frame dimensions > 0",
            out,
        );
        for (i, hand) in self.hands.iter().enumerate() {
            let path = join_path(at, &format!("hands[{i}]"));
            hand.collect_violations(&path, out);
            check(
                hand.bbox.within_frame(self.frame_width, self.frame_height),
                &path,
                "box",
                "box must lie within frame bounds",
                out,
            );
        }
        for (i, object) in self.objects.iter().enumerate() {
            let path = join_path(at, &format!("objects[{i}]"));
            object.collect_violations(&path, out);
            check(
                object.bbox.within_frame(self.frame_width, self.frame_height),
                &path,
                "box",
                "box must lie within frame bounds",
                out,
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame() -> FrameDetections {
        FrameDetections {
            video_id: "v".into(),
            timestamp_s: 1.0,
            frame_width: 20.0,
            frame_height: 20.0,
            hands: vec![HandDetection {
                bbox: BoundingBox::new(0.0, 0.0, 10.0, 10.0),
                probability: 0.9,
                side: HandSide::Left,
                in_contact: true,
            }],
            objects: vec![ObjectDetection {
                bbox: BoundingBox::new(5.0, 5.0, 15.0, 15.0),
                probability: 0.8,
            }],
        }
    }

    #[test]
    fn valid_frame_passes() {
        assert!(frame().validate().is_ok());
    }

    #[test]
    fn out_of_range_probability_flagged() {
        let mut f = frame();
        f.hands[0].probability = 1.2;
        let violations = f.violations();
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].path, "hands[0].probability");
        assert_eq!(violations[0].rule, "0 <= probability <= 1");
    }

    #[test]
    fn box_outside_frame_flagged() {
        let mut f = frame();
        f.objects[0].bbox.x_max = 25.0;
        assert!(f
            .violations()
            .iter()
            .any(|v| v.path == "objects[0].box" && v.rule.contains("frame bounds")));
    }
}
