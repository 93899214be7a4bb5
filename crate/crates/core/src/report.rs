use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Verdict {
    Pass,
    Fail,
    /// The compared quantities differ, and were predicted to differ.
    ExpectedInequal,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_ok(self) -> bool {
        self != Verdict::Fail
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::ExpectedInequal => "EXPECTED-INEQUAL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Statistic {
    pub name: String,
    pub value: f64,
    /// Acceptance bound, when the statistic gates the verdict.
    pub threshold: Option<f64>,
    pub passed: bool,
}

/// Outcome of an exact or statistical check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestReport {
    pub name: String,
    pub verdict: Verdict,
    pub statistics: Vec<Statistic>,
    pub sample_sizes: Vec<usize>,
    pub seeds: Vec<u64>,
    pub notes: Vec<String>,
}

impl TestReport {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            verdict: Verdict::Pass,
            statistics: Vec::new(),
            sample_sizes: Vec::new(),
            seeds: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_ok()
    }

    /// Records a statistic that must be at least `threshold` (p-values).
    pub fn require_at_least(&mut self, name: impl Into<String>, value: f64, threshold: f64) -> bool {
        let ok = value >= threshold;
        self.push_stat(name, value, Some(threshold), ok)
    }

    /// Records a statistic that must be at most `threshold` (errors, distances).
    pub fn require_at_most(&mut self, name: impl Into<String>, value: f64, threshold: f64) -> bool {
        let ok = value <= threshold;
        self.push_stat(name, value, Some(threshold), ok)
    }

    /// Records an informational statistic.
    pub fn record(&mut self, name: impl Into<String>, value: f64) {
        self.statistics.push(Statistic { name: name.into(), value, threshold: None, passed: true });
    }

    pub fn check(&mut self, ok: bool, note: impl Into<String>) -> bool {
        if !ok {
            self.verdict = Verdict::Fail;
            self.notes.push(note.into());
        }
        ok
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Folds `other` into this report; any failure fails the whole report.
    pub fn absorb(&mut self, other: TestReport) {
        if other.verdict == Verdict::Fail {
            self.verdict = Verdict::Fail;
        }
        let prefix = other.name.clone();
        for mut s in other.statistics {
            s.name = format!("{prefix}/{}", s.name);
            self.statistics.push(s);
        }
        self.sample_sizes.extend(other.sample_sizes);
        for seed in other.seeds {
            if !self.seeds.contains(&seed) {
                self.seeds.push(seed);
            }
        }
        self.notes.extend(other.notes.into_iter().map(|n| format!("{prefix}: {n}")));
    }

    fn push_stat(&mut self, name: impl Into<String>, value: f64, threshold: Option<f64>, ok: bool) -> bool {
        if !ok {
            self.verdict = Verdict::Fail;
        }
        self.statistics.push(Statistic { name: name.into(), value, threshold, passed: ok });
        ok
    }
}

impl fmt::Display for TestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}] {}", self.verdict, self.name)?;
        for s in &self.statistics {
            match s.threshold {
                Some(t) => writeln!(
                    f,
                    "  {:<40} {:>14.6e}  (bound {:e}) {}",
                    s.name,
                    s.value,
                    t,
                    if s.passed { "ok" } else { "FAILED" }
                )?,
                None => writeln!(f, "  {:<40} {:>14.6e}", s.name, s.value)?,
            }
        }
        if !self.sample_sizes.is_empty() {
            writeln!(f, "  samples {:?}", self.sample_sizes)?;
        }
        if !self.seeds.is_empty() {
            writeln!(f, "  seeds {:?}", self.seeds)?;
        }
        for n in &self.notes {
            writeln!(f, "  - {n}")?;
        }
        Ok(())
    }
}
