//! Line-oriented check reports.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    Fail(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportLine {
    pub name: String,
    pub instance: String,
    pub outcome: Outcome,
}

impl ReportLine {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Ok
    }
}

impl fmt::Display for ReportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Ok => write!(f, "IDENTITY {} {} OK", self.name, self.instance),
            Outcome::Fail(w) => write!(f, "IDENTITY {} {} FAIL({})", self.name, self.instance, w),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    lines: Vec<ReportLine>,
}

/// Instances are single tokens so that lines split on whitespace.
fn token(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join("")
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: &str, instance: &str, result: Result<(), String>) {
        let outcome = match result {
            Ok(()) => Outcome::Ok,
            Err(w) => Outcome::Fail(w),
        };
        self.lines.push(ReportLine { name: name.into(), instance: token(instance), outcome });
    }

    pub fn ok(&mut self, name: &str, instance: &str) {
        self.push(name, instance, Ok(()));
    }

    pub fn fail(&mut self, name: &str, instance: &str, witness: impl Into<String>) {
        self.push(name, instance, Err(witness.into()));
    }

    pub fn extend(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }

    pub fn lines(&self) -> &[ReportLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(ReportLine::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportLine> {
        self.lines.iter().filter(|l| !l.passed())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}
