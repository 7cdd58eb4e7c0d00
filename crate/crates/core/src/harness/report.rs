use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::HarnessError;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialOutcome {
    Success,
    Exhausted,
    /// The run stopped on an error; the message is in `TrialRecord::error`.
    Failed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    /// Seed of this trial's private stream.
    pub seed: u64,
    pub outcome: TrialOutcome,
    pub phases: usize,
    pub rounds: usize,
    pub invariant_ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Brute-force verdict when the instance is small enough.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feasible: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub series: Vec<usize>,
    /// Number of edges unsuccessful in every phase `1..=l`, indexed by `l - 1`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub unsuccessful_through: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub low: f64,
    pub high: f64,
}

/// 95% Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: usize, trials: usize) -> Interval {
    if trials == 0 {
        return Interval { low: 0.0, high: 1.0 };
    }
    let z = 1.959_963_984_540_054_f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let denom = 1.0 + z * z / n;
    let centre = (p + z * z / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    Interval { low: (centre - half).max(0.0), high: (centre + half).min(1.0) }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub experiment: String,
    pub parameters: serde_json::Value,
    pub trials: Vec<TrialRecord>,
    pub aggregate: BTreeMap<String, f64>,
    pub tolerance: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub wall_clock_ms: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

impl std::str::FromStr for OutputFormat {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "table" => Ok(OutputFormat::Table),
            other => Err(HarnessError::BadSpec(format!("unknown format {other}"))),
        }
    }
}

impl ExperimentReport {
    pub fn metric(&self, name: &str) -> Option<f64> {
        self.aggregate.get(name).copied()
    }

    /// The report with timing zeroed, for bit-identical comparisons.
    pub fn without_timing(&self) -> Self {
        Self { wall_clock_ms: 0, ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        let report: ExperimentReport = serde_json::from_str(text)?;
        if report.schema_version != REPORT_SCHEMA_VERSION {
            return Err(HarnessError::BadSpec(format!("report schema {} unsupported", report.schema_version)));
        }
        Ok(report)
    }

    /// One row per trial.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("trial,seed,outcome,phases,rounds,invariant_ok,feasible,series,unsuccessful_through\n");
        let join = |xs: &[usize]| xs.iter().map(usize::to_string).collect::<Vec<_>>().join(";");
        for t in &self.trials {
            let outcome = match t.outcome {
                TrialOutcome::Success => "success",
                TrialOutcome::Exhausted => "exhausted",
                TrialOutcome::Failed => "failed",
            };
            let feasible = t.feasible.map_or(String::new(), |f| f.to_string());
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                t.trial,
                t.seed,
                outcome,
                t.phases,
                t.rounds,
                t.invariant_ok,
                feasible,
                join(&t.series),
                join(&t.unsuccessful_through)
            )
            .unwrap();
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "experiment  {}", self.experiment).unwrap();
        writeln!(out, "trials      {}", self.trials.len()).unwrap();
        let width = self.aggregate.keys().map(String::len).max().unwrap_or(0);
        for (k, v) in &self.aggregate {
            writeln!(out, "  {k:<width$}  {v:.6}").unwrap();
        }
        writeln!(out, "tolerance   {}", self.tolerance).unwrap();
        for note in &self.notes {
            writeln!(out, "note        {note}").unwrap();
        }
        writeln!(out, "result      {}", if self.pass { "PASS" } else { "FAIL" }).unwrap();
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Table => self.to_table(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_known_values() {
        let ci = wilson_interval(50, 100);
        assert!((ci.low - 0.4038).abs() < 1e-4, "{ci:?}");
        assert!((ci.high - 0.5962).abs() < 1e-4, "{ci:?}");
        let ci = wilson_interval(0, 10);
        assert_eq!(ci.low, 0.0);
        assert!((ci.high - 0.2775).abs() < 1e-4);
        assert_eq!(wilson_interval(0, 0), Interval { low: 0.0, high: 1.0 });
    }
}
