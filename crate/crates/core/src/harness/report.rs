use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use super::config::Suite;
use crate::error::Result;
use crate::scalar::Mode;

pub const SCHEMA_VERSION: u32 = 1;

/// Outcome of one suite run: a CSV table plus a JSON summary.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub suite: Suite,
    pub mode: Mode,
    pub seed: u64,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub violations: u64,
    /// Rendered as `p/q` when the constant is exact, otherwise as a decimal.
    pub fitted_c: Option<String>,
    pub summary: Map<String, Value>,
    pub elapsed_ms: u128,
}

impl ExperimentReport {
    pub fn new(suite: Suite, mode: Mode, seed: u64, header: &[&str]) -> Self {
        ExperimentReport {
            suite,
            mode,
            seed,
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
            violations: 0,
            fitted_c: None,
            summary: Map::new(),
            elapsed_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.to_string(), value.into());
    }

    /// The JSON summary. Timing is left out unless asked for, so the rest
    /// can be compared byte for byte across runs.
    pub fn summary_json(&self, with_timing: bool) -> Value {
        let mut v = json!({
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite.name(),
            "mode": self.mode.to_string(),
            "seed": self.seed,
            "passed": self.passed(),
            "violations": self.violations,
            "rows": self.rows.len(),
            "summary": Value::Object(self.summary.clone()),
        });
        if let Some(c) = &self.fitted_c {
            v["fitted_C"] = Value::String(c.clone());
        }
        if with_timing {
            v["elapsed_ms"] = json!(self.elapsed_ms as u64);
        }
        v
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut out = out;
        writeln!(out, "#schema_version={SCHEMA_VERSION}")?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut out, &self.summary_json(true))?;
        writeln!(out)?;
        Ok(())
    }
}

/// Writes the CSV to `path` and the summary next to it with a `.json`
/// extension. Returns the summary path.
pub fn emit_report(report: &ExperimentReport, path: &Path) -> Result<PathBuf> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    report.write_csv(fs::File::create(path)?)?;
    let json_path = path.with_extension("json");
    report.write_json(fs::File::create(&json_path)?)?;
    Ok(json_path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_table_is_header_only() {
        let r = ExperimentReport::new(Suite::Defect, Mode::Exact, 0, &["R", "defect"]);
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "#schema_version=1\nR,defect\n");
    }

    #[test]
    fn fitted_constant_and_schema_in_json() {
        let mut r = ExperimentReport::new(Suite::Profile, Mode::Exact, 7, &["r"]);
        r.fitted_c = Some("3/2".into());
        let v = r.summary_json(false);
        assert_eq!(v["fitted_C"], "3/2");
        assert_eq!(v["schema_version"], 1);
        assert!(v.get("elapsed_ms").is_none());
        assert_eq!(r.summary_json(true)["schema_version"], 1);
    }

    #[test]
    fn emit_writes_both_files() {
        let dir = tempfile::tempdir().unwrap();
        let mut r = ExperimentReport::new(Suite::Theta, Mode::Float, 0, &["a", "b"]);
        r.push_row(vec!["1".into(), "x,y".into()]);
        let json = emit_report(&r, &dir.path().join("out/t.csv")).unwrap();
        let csv = fs::read_to_string(dir.path().join("out/t.csv")).unwrap();
        assert_eq!(csv, "#schema_version=1\na,b\n1,\"x,y\"\n");
        let v: Value = serde_json::from_str(&fs::read_to_string(json).unwrap()).unwrap();
        assert_eq!(v["suite"], "theta");
        assert_eq!(v["mode"], "float");
    }
}
