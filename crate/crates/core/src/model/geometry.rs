//! Axis-aligned box geometry in continuous pixel coordinates.
//!
//! Coordinates use the frame coordinate system with the origin at the
//! top-left corner. Boxes are kept in pixels (not normalized) so that crop
//! regions stay bit-exact for a given frame size.

use serde::{Deserialize, Serialize};

use super::validate::{check, Validate, Violation};

/// Axis-aligned bounding box, `(x_min, y_min)` top-left inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub x_min: f64,
    pub y_min: f64,
    pub x_max: f64,
    pub y_max: f64,
}

impl BoundingBox {
    pub fn new(x_min: f64, y_min: f64, x_max: f64, y_max: f64) -> Self {
        BoundingBox {
            x_min,
            y_min,
            x_max,
            y_max,
        }
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    /// Smallest box covering both `self` and `other`.
    pub fn union(&self, other: &BoundingBox) -> BoundingBox {
        BoundingBox {
            x_min: self.x_min.min(other.x_min),
            y_min: self.y_min.min(other.y_min),
            x_max: self.x_max.max(other.x_max),
            y_max: self.y_max.max(other.y_max),
        }
    }

    pub fn contains_box(&self, other: &BoundingBox) -> bool {
        self.x_min <= other.x_min
            && self.y_min <= other.y_min
            && self.x_max >= other.x_max
            && self.y_max >= other.y_max
    }

    pub fn within_frame(&self, frame_width: f64, frame_height: f64) -> bool {
        self.x_min >= 0.0
            && self.y_min >= 0.0
            && self.x_max <= frame_width
            && self.y_max <= frame_height
    }
}

impl Validate for BoundingBox {
    fn collect_violations(&self, at: &str, out: &mut Vec<Violation>) {
        let coords = [
            ("x_min", self.x_min),
            ("y_min", self.y_min),
            ("x_max", self.x_max),
            ("y_max", self.y_max),
        ];
        for (name, value) in coords {
            check(value.is_finite(), at, name, "coordinate must be finite", out);
            check(
                !value.is_finite() || value >= 0.0,
                at,
                name,
                "coordinate must be >= 0",
                out,
            );
        }
        check(self.x_min <= self.x_max, at, "x_min", "x_min <= x_max", out);
        check(self.y_min <= self.y_max, at, "y_min", "y_min <= y_max", out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn well_formed_box_is_valid() {
        assert!(BoundingBox::new(0.0, 0.0, 10.0, 10.0).validate().is_ok());
    }

    #[test]
    fn inverted_box_reports_rule() {
        let violations = BoundingBox::new(10.0, 0.0, 5.0, 10.0).violations();
        assert!(violations.iter().any(|v| v.rule == "x_min <= x_max"));
    }

    #[test]
    fn nonfinite_and_negative_coordinates_flagged() {
        let violations = BoundingBox::new(-1.0, f64::NAN, 5.0, 10.0).violations();
        assert!(violations.iter().any(|v| v.path == "x_min"));
        assert!(violations.iter().any(|v| v.path == "y_min"));
    }

    #[test]
    fn union_covers_both() {
        let a = BoundingBox::new(10.0, 10.0, 50.0, 50.0);
        let b = BoundingBox::new(40.0, 40.0, 80.0, 90.0);
        let u = a.union(&b);
        assert_eq!(u, BoundingBox::new(10.0, 10.0, 80.0, 90.0));
        assert!(u.contains_box(&a) && u.contains_box(&b));
    }
}
