//! Violation reports shared by every checker.

use std::fmt;

use crate::scalar::Field;

/// One failed equation instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Identity tag, e.g. `Di1`, `XDi2`, `DiM3g` or `mixed(Di3,D·L·L)`.
    pub label: String,
    /// Basis indices of the arguments, in the order they appear in the identity.
    pub witness: Vec<usize>,
    /// `lhs - rhs`, rendered exactly.
    pub difference: Vec<String>,
}

impl Violation {
    pub fn new<F: Field>(label: impl Into<String>, witness: Vec<usize>, difference: &[F]) -> Self {
        Violation {
            label: label.into(),
            witness,
            difference: difference.iter().map(|x| x.to_string()).collect(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}: difference ({})", self.label, self.witness, self.difference.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violations,
    /// The comparison was run outside the hypotheses that guarantee it; its
    /// outcome is informational.
    Advisory,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violations => "violations",
            Status::Advisory => "advisory",
        }
    }
}

/// The outcome of a check: empty iff every instance held exactly.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
    pub advisory: bool,
}

impl AxiomReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    /// Records a violation when `difference` is nonzero.
    pub fn check<F: Field>(&mut self, label: &str, witness: &[usize], difference: &[F]) {
        if !difference.iter().all(F::is_zero) {
            self.push(Violation::new(label, witness.to_vec(), difference));
        }
    }

    pub fn extend(&mut self, other: AxiomReport) {
        self.violations.extend(other.violations);
        self.advisory |= other.advisory;
    }

    /// Fixes the ordering by `(label, witness)`; generation order breaks ties.
    pub fn sorted(mut self) -> Self {
        self.violations
            .sort_by(|a, b| (&a.label, &a.witness).cmp(&(&b.label, &b.witness)));
        self
    }

    pub fn status(&self) -> Status {
        if self.advisory {
            Status::Advisory
        } else if self.violations.is_empty() {
            Status::Ok
        } else {
            Status::Violations
        }
    }

    pub fn labels(&self) -> Vec<&str> {
        self.violations.iter().map(|v| v.label.as_str()).collect()
    }

    pub fn has_label(&self, label: &str) -> bool {
        self.violations.iter().any(|v| v.label == label)
    }
}
