//! Report assembly and output files.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;

use crate::config::{ExperimentConfig, Format};

/// One checked prediction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Claim {
    pub name: String,
    pub predicted: f64,
    pub empirical: f64,
    /// 95% interval around `empirical` when it is an estimate.
    pub ci: Option<[f64; 2]>,
    /// Human-readable acceptance rule.
    pub criterion: String,
    pub pass: bool,
}

impl Claim {
    pub fn new(name: &str, predicted: f64, empirical: f64, criterion: String, pass: bool) -> Self {
        Claim {
            name: name.to_string(),
            predicted,
            empirical,
            ci: None,
            criterion,
            pass,
        }
    }

    pub fn with_ci(mut self, ci: (f64, f64)) -> Self {
        self.ci = Some([ci.0, ci.1]);
        self
    }
}

/// Raw rows with a fixed header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push<I, S>(&mut self, row: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        let row: Vec<String> = row.into_iter().map(|s| s.to_string()).collect();
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::CRLF)
            .from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.into_inner().context("flushing csv")
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub claims: Vec<Claim>,
    /// Scenario-specific values copied to the top level of the summary.
    pub results: BTreeMap<String, Value>,
    pub table: Table,
}

impl Report {
    pub fn new(table: Table) -> Self {
        Report {
            claims: Vec::new(),
            results: BTreeMap::new(),
            table,
        }
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("plain data serializes");
        self.results.insert(key.to_string(), v);
    }

    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }
}

#[derive(Serialize)]
struct Summary<'a> {
    scenario: &'a str,
    seed: u64,
    passed: bool,
    #[serde(flatten)]
    results: &'a BTreeMap<String, Value>,
    claims: &'a [Claim],
    config: &'a ExperimentConfig,
}

pub fn summary_json(config: &ExperimentConfig, report: &Report) -> Result<String> {
    let summary = Summary {
        scenario: config.scenario().name(),
        seed: config.seed,
        passed: report.passed(),
        results: &report.results,
        claims: &report.claims,
        config,
    };
    let mut text = serde_json::to_string_pretty(&summary)?;
    text.push('\n');
    Ok(text)
}

/// Writes `<scenario>.csv` and/or `<scenario>.json` and returns the paths.
pub fn write(config: &ExperimentConfig, report: &Report) -> Result<Vec<PathBuf>> {
    let dir: &Path = &config.output.dir;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let stem = config.scenario().name();
    let mut written = Vec::new();
    if config.output.format != Some(Format::Json) {
        let path = dir.join(format!("{stem}.csv"));
        fs::write(&path, report.table.to_csv()?)
            .with_context(|| format!("writing {}", path.display()))?;
        written.push(path);
    }
    if config.output.format != Some(Format::Csv) {
        let path = dir.join(format!("{stem}.json"));
        fs::write(&path, summary_json(config, report)?)
            .with_context(|| format!("writing {}", path.display()))?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_and_uses_crlf() {
        let mut t = Table::new(&["a", "b"]);
        t.push(["x,y", "1"]);
        let text = String::from_utf8(t.to_csv().unwrap()).unwrap();
        assert_eq!(text, "a,b\r\n\"x,y\",1\r\n");
    }

    #[test]
    fn non_finite_predictions_become_null() {
        let c = Claim::new("c", f64::INFINITY, 1.0, String::new(), true);
        let v = serde_json::to_value(&c).unwrap();
        assert!(v["predicted"].is_null());
    }
}
