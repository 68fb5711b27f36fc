use std::fs;
use std::path::PathBuf;

use serde_json::Value;

use crate::error::Result;

/// Directory of the frozen first-run values.
pub const FIXTURE_DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

/// Environment variable that makes [`check_fixture`] overwrite fixtures.
pub const REGEN_ENV: &str = "REGEN_FIXTURES";

#[derive(Clone, Debug, PartialEq)]
pub enum FixtureStatus {
    Matched,
    /// The fixture was missing or regeneration was requested.
    Written,
    Mismatch {
        expected: Value,
    },
}

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(FIXTURE_DIR).join(format!("{name}.json"))
}

pub fn regen_requested() -> bool {
    std::env::var(REGEN_ENV).is_ok_and(|v| v == "1")
}

/// Compares `value` with the stored fixture `name`, writing it when absent
/// or when `regen` is set.
pub fn check_fixture(name: &str, value: &Value, regen: bool) -> Result<FixtureStatus> {
    let path = fixture_path(name);
    if !regen {
        if let Ok(text) = fs::read_to_string(&path) {
            let expected: Value = serde_json::from_str(&text)?;
            return Ok(if &expected == value { FixtureStatus::Matched } else { FixtureStatus::Mismatch { expected } });
        }
    }
    fs::create_dir_all(FIXTURE_DIR)?;
    fs::write(&path, serde_json::to_string_pretty(value)? + "\n")?;
    Ok(FixtureStatus::Written)
}
