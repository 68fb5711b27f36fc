//! Configuration-driven experiment suites and their CSV/JSON reports.

mod config;
mod fixtures;
mod report;
mod suites;

pub use config::{parse_config, parse_vector_spec, parse_word_list, ExperimentConfig, Suite};
pub use fixtures::{check_fixture, fixture_path, regen_requested, FixtureStatus, FIXTURE_DIR, REGEN_ENV};
pub use report::{emit_report, ExperimentReport, SCHEMA_VERSION};
pub use suites::{run_suite, DISTANCE_DEFAULTS, PROFILE_DEFAULTS};
