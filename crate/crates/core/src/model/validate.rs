//! Invariant validation over the domain types.
//!
//! Violations are data, not failures: parsing and validating are separate
//! steps so that lenient ingestion can count and skip bad records instead
//! of aborting.

use std::fmt;

/// A single broken invariant, addressed by the field path that broke it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Dotted/indexed path from the record root, e.g. `hands[0].probability`.
    pub path: String,
    /// The rule that failed, e.g. `x_min <= x_max`.
    pub rule: String,
}

impl Violation {
    pub fn new(path: impl Into<String>, rule: impl Into<String>) -> Self {
        Violation {
            path: path.into(),
            rule: rule.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.rule)
        } else {
            write!(f, "{}: {}", self.path, self.rule)
        }
    }
}

/// Nonempty list of violations, as carried by validation errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violations(pub Vec<Violation>);

impl fmt::Display for Violations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checked invariants for a domain type.
pub trait Validate {
    /// Appends this record's violations to `out`, prefixing paths with `at`.
    fn collect_violations(&self, at: &str, out: &mut Vec<Violation>);

    /// All violations for this record (empty means the record is valid).
    fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        self.collect_violations("", &mut out);
        out
    }

    /// `Ok(())` when every invariant holds.
    fn validate(&self) -> Result<(), Violations> {
        let out = self.violations();
        if out.is_empty() {
            Ok(())
        } else {
            Err(Violations(out))
        }
    }
}

pub(crate) fn join_path(at: &str, field: &str) -> String {
    if at.is_empty() {
        field.to_string()
    } else {
        format!("{at}.{field}")
    }
}

pub(crate) fn check(ok: bool, at: &str, field: &str, rule: &str, out: &mut Vec<Violation>) {
    if !ok {
        out.push(Violation::new(join_path(at, field), rule));
    }
}

pub(crate) fn check_unit_interval(value: f64, at: &str, field: &str, out: &mut Vec<Violation>) {
    check(
        value.is_finite() && (0.0..=1.0).contains(&value),
        at,
        field,
        &format!("0 <= {field} <= 1"),
        out,
    );
}
