use std::fmt;

use serde::Serialize;

/// One violated law together with the labels that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<String>,
}

/// Outcome of a law check. Empty `violations` means PASS.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub subject: String,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            subject: subject.into(),
            violations: Vec::new(),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, law: &str, witness: Vec<String>) {
        self.violations.push(Violation {
            law: law.to_string(),
            witness,
        });
    }

    /// Records `law` only if it has not been recorded yet, so reports keep
    /// the lexicographically first witness of each law.
    pub fn push_once(&mut self, law: &str, witness: impl FnOnce() -> Vec<String>) {
        if !self.violations.iter().any(|v| v.law == law) {
            self.push(law, witness());
        }
    }

    pub fn violates(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_pass() {
            return write!(f, "{}: PASS", self.subject);
        }
        write!(f, "{}: FAIL", self.subject)?;
        for v in &self.violations {
            write!(f, "\n  {} at ({})", v.law, v.witness.join(", "))?;
        }
        Ok(())
    }
}
