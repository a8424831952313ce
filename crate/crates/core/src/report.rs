use std::collections::BTreeMap;

use serde::Serialize;

/// At most this many counterexamples are kept per check.
pub const MAX_EXAMPLES: usize = 10;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub pass: usize,
    pub fail: usize,
    /// Samples where the hypothesis of the check did not hold.
    pub vacuous: usize,
    pub counterexamples: Vec<String>,
}

pub enum Outcome {
    Pass,
    Vacuous,
    Fail(String),
}

impl Outcome {
    pub fn check(ok: bool, repro: impl FnOnce() -> String) -> Outcome {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail(repro())
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: BTreeMap<String, String>,
    pub seed: u64,
    pub samples: usize,
    pub checks: BTreeMap<String, CheckTally>,
    pub violations: usize,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64, samples: usize) -> Self {
        Self { suite: suite.into(), seed, samples, ..Default::default() }
    }

    pub fn with_config(mut self, key: &str, value: impl ToString) -> Self {
        self.config.insert(key.into(), value.to_string());
        self
    }

    pub fn record(&mut self, check: &str, outcome: Outcome) {
        let t = self.checks.entry(check.to_string()).or_default();
        match outcome {
            Outcome::Pass => t.pass += 1,
            Outcome::Vacuous => t.vacuous += 1,
            Outcome::Fail(repro) => {
                t.fail += 1;
                self.violations += 1;
                if !t.counterexamples.contains(&repro) {
                    t.counterexamples.push(repro);
                    t.counterexamples.sort();
                    t.counterexamples.truncate(MAX_EXAMPLES);
                }
            }
        }
    }

    pub fn is_clean(&self) -> bool {
        self.violations == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} seed={} samples={}", self.suite, self.seed, self.samples);
        for (k, v) in &self.config {
            s.push_str(&format!(" {k}={v}"));
        }
        s.push('\n');
        for (name, t) in &self.checks {
            let status = if t.fail == 0 { "ok" } else { "FAIL" };
            s.push_str(&format!(
                "{status:4} {name}: pass={} fail={} vacuous={}\n",
                t.pass, t.fail, t.vacuous
            ));
            for c in &t.counterexamples {
                s.push_str(&format!("     counterexample: {c}\n"));
            }
        }
        s.push_str(&format!("violations: {}\n", self.violations));
        s
    }
}
