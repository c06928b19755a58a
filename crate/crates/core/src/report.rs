//! Certificate reports shared by every operation.

use std::fmt::{self, Write as _};

/// One checked claim together with the data that backs it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub name: String,
    pub passed: bool,
    pub witness: String,
}

/// Certificates produced by a single operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportBlock {
    pub operation: String,
    pub certificates: Vec<Certificate>,
}

impl ReportBlock {
    pub fn new(operation: impl Into<String>) -> Self {
        ReportBlock {
            operation: operation.into(),
            certificates: Vec::new(),
        }
    }

    pub fn push(
        &mut self,
        name: impl Into<String>,
        passed: bool,
        witness: impl Into<String>,
    ) -> bool {
        self.certificates.push(Certificate {
            name: name.into(),
            passed,
            witness: witness.into(),
        });
        passed
    }

    pub fn extend(&mut self, other: ReportBlock) {
        let prefix = other.operation;
        for c in other.certificates {
            self.certificates.push(Certificate {
                name: format!("{prefix}/{}", c.name),
                ..c
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.certificates.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&Certificate> {
        self.certificates.iter().filter(|c| !c.passed).collect()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "[{}]", self.operation);
        for c in &self.certificates {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "  {status} {}: {}", c.name, c.witness);
        }
        out
    }
}

impl fmt::Display for ReportBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn join<T: fmt::Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}
