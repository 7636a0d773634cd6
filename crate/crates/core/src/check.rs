//! Outcome of a bounded verification.

use std::fmt;

/// The first failing item of a check: where it failed and the offending
/// nonzero value in the element or operator text grammar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub location: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub passed: bool,
    pub items_checked: usize,
    /// Human-readable statement of what was covered, e.g. orders and bounds.
    pub scope: String,
    pub counterexample: Option<Counterexample>,
}

impl CheckReport {
    pub fn new(scope: impl Into<String>) -> Self {
        Self { passed: true, items_checked: 0, scope: scope.into(), counterexample: None }
    }

    /// Records one item; the first failure is kept as the counterexample.
    pub fn record(&mut self, ok: bool, location: impl FnOnce() -> String, value: impl FnOnce() -> String) {
        self.items_checked += 1;
        if !ok && self.passed {
            self.passed = false;
            self.counterexample = Some(Counterexample { location: location(), value: value() });
        }
    }

    /// Folds another report into this one.
    pub fn absorb(&mut self, other: CheckReport) {
        self.items_checked += other.items_checked;
        if !other.passed && self.passed {
            self.passed = false;
            self.counterexample = other.counterexample;
        }
    }

    pub fn with_scope(mut self, scope: impl Into<String>) -> Self {
        self.scope = scope.into();
        self
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "pass" } else { "FAIL" };
        write!(f, "{status}: {} items; {}", self.items_checked, self.scope)?;
        if let Some(c) = &self.counterexample {
            write!(f, "; first failure at {}: {}", c.location, c.value)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_wins() {
        let mut r = CheckReport::new("demo");
        r.record(true, || "a".into(), || "0".into());
        r.record(false, || "b".into(), || "1".into());
        r.record(false, || "c".into(), || "2".into());
        assert!(!r.passed);
        assert_eq!(r.items_checked, 3);
        assert_eq!(r.counterexample.as_ref().unwrap().location, "b");
        let mut total = CheckReport::new("all");
        total.absorb(r);
        assert!(!total.passed);
    }
}
