//! Scenario reports: human text and a flat `key=value` form.

use std::fmt::Write as _;

use kmdual_core::validate::Report;

/// One named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

/// Everything a scenario produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScenarioReport {
    pub scenario: String,
    pub inputs: Vec<(String, String)>,
    pub values: Vec<(String, String)>,
    pub checks: Vec<Check>,
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

impl ScenarioReport {
    pub fn new(scenario: &str) -> Self {
        ScenarioReport {
            scenario: scenario.to_string(),
            ..Default::default()
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.push((key.to_string(), value.to_string()));
    }

    pub fn value(&mut self, key: &str, value: impl ToString) {
        self.values.push((key.to_string(), value.to_string()));
    }

    pub fn check(&mut self, name: &str, pass: bool, witness: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            witness: if pass { String::new() } else { witness.into() },
        });
    }

    /// Records a validation report as a single check.
    pub fn check_report(&mut self, name: &str, report: &Report) {
        self.check(name, report.is_ok(), report.to_string());
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        writeln!(out, "scenario={}", self.scenario).unwrap();
        for (k, v) in &self.inputs {
            writeln!(out, "input.{k}={}", one_line(v)).unwrap();
        }
        for (k, v) in &self.values {
            writeln!(out, "value.{k}={}", one_line(v)).unwrap();
        }
        for c in &self.checks {
            writeln!(out, "check.{}={}", c.name, if c.pass { "pass" } else { "fail" }).unwrap();
            if !c.pass {
                writeln!(out, "witness.{}={}", c.name, one_line(&c.witness)).unwrap();
            }
        }
        writeln!(out, "summary.checks={}", self.checks.len()).unwrap();
        writeln!(out, "summary.failed={}", self.failed()).unwrap();
        out
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        writeln!(out, "== {} ==", self.scenario).unwrap();
        for (k, v) in &self.inputs {
            writeln!(out, "  {k}: {v}").unwrap();
        }
        if !self.values.is_empty() {
            writeln!(out).unwrap();
            for (k, v) in &self.values {
                writeln!(out, "  {k} = {v}").unwrap();
            }
        }
        writeln!(out).unwrap();
        for c in &self.checks {
            writeln!(out, "  [{}] {}", if c.pass { "pass" } else { "FAIL" }, c.name).unwrap();
            if !c.pass {
                for line in c.witness.lines() {
                    writeln!(out, "        {line}").unwrap();
                }
            }
        }
        writeln!(out, "\n{} checks, {} failed", self.checks.len(), self.failed()).unwrap();
        out
    }
}
