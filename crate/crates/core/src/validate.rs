//! Structured results of identity checks.

use std::fmt;

/// One failed identity together with the basis elements exhibiting it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: String,
    pub witness: String,
}

/// Outcome of a validation run: which identities were checked and which failed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checked: Vec<String>,
    pub failures: Vec<Violation>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn check(&mut self, identity: &str) {
        if !self.checked.iter().any(|c| c == identity) {
            self.checked.push(identity.to_string());
        }
    }

    pub fn fail(&mut self, identity: &str, witness: impl Into<String>) {
        self.check(identity);
        self.failures.push(Violation {
            identity: identity.to_string(),
            witness: witness.into(),
        });
    }

    pub fn failed(&self, identity: &str) -> bool {
        self.failures.iter().any(|v| v.identity == identity)
    }

    pub fn merge(&mut self, other: Report) {
        for c in other.checked {
            self.check(&c);
        }
        self.failures.extend(other.failures);
    }

    /// `Ok(())` if nothing failed, the report as an error otherwise.
    pub fn into_result(self) -> crate::Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(crate::Error::Validation(self))
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            return write!(f, "all {} identities hold", self.checked.len());
        }
        write!(f, "{} violation(s)", self.failures.len())?;
        for v in self.failures.iter().take(5) {
            write!(f, "; {} fails at {}", v.identity, v.witness)?;
        }
        if self.failures.len() > 5 {
            write!(f, "; …")?;
        }
        Ok(())
    }
}
