//! Line-oriented law-check reports.
//!
//! ```text
//! LAW <name> SAMPLES <n> FAILURES <k>
//!   <counterexample>
//! ```

use std::fmt;

/// Results for one law.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LawResult {
    pub name: String,
    pub samples: usize,
    pub failures: Vec<String>,
    pub undecided: Vec<String>,
    pub skipped: usize,
}

impl LawResult {
    pub fn new(name: &str) -> Self {
        LawResult { name: name.to_string(), ..Default::default() }
    }

    pub fn pass(&mut self) {
        self.samples += 1;
    }

    pub fn fail(&mut self, counterexample: String) {
        self.samples += 1;
        self.failures.push(counterexample);
    }

    /// Records a sample whose equality could not be decided within the bound.
    pub fn undecided(&mut self, what: String) {
        self.samples += 1;
        self.undecided.push(what);
    }

    /// Records a sample that fell outside a model's window.
    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    pub fn record(&mut self, ok: bool, counterexample: impl FnOnce() -> String) {
        if ok {
            self.pass();
        } else {
            self.fail(counterexample());
        }
    }
}

/// A sequence of law results plus free-form header lines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub notes: Vec<String>,
    pub laws: Vec<LawResult>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    pub fn push(&mut self, law: LawResult) {
        self.laws.push(law);
    }

    pub fn extend(&mut self, other: Report) {
        self.notes.extend(other.notes);
        self.laws.extend(other.laws);
    }

    pub fn law(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.name == name)
    }

    pub fn total_failures(&self) -> usize {
        self.laws.iter().map(|l| l.failures.len()).sum()
    }

    pub fn total_samples(&self) -> usize {
        self.laws.iter().map(|l| l.samples).sum()
    }

    pub fn total_undecided(&self) -> usize {
        self.laws.iter().map(|l| l.undecided.len()).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.total_failures() == 0
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in &self.notes {
            writeln!(f, "{n}")?;
        }
        for law in &self.laws {
            writeln!(f, "LAW {} SAMPLES {} FAILURES {}", law.name, law.samples, law.failures.len())?;
            for c in &law.failures {
                writeln!(f, "  {c}")?;
            }
            if !law.undecided.is_empty() {
                writeln!(f, "  UNDECIDED {}", law.undecided.len())?;
                for c in &law.undecided {
                    writeln!(f, "  undecided {c}")?;
                }
            }
            if law.skipped > 0 {
                writeln!(f, "  SKIPPED {}", law.skipped)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format() {
        let mut r = Report::new();
        let mut l = LawResult::new("unit");
        l.pass();
        l.fail("x != y".into());
        r.push(l);
        assert_eq!(r.to_string(), "LAW unit SAMPLES 2 FAILURES 1\n  x != y\n");
        assert!(!r.is_clean());
    }
}
