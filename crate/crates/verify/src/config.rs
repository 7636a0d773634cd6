//! The `run-all` configuration and the suite matrix runner.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::params::{Bounds, Guards, Params};
use crate::report::{Report, Status};
use crate::suites::{run_suite, Suite};
use crate::VerifyError;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteEntry {
    pub name: String,
    /// `[M, N]` pairs.
    pub dims: Vec<(usize, usize)>,
    #[serde(default)]
    pub params: Bounds,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub suites: Vec<SuiteEntry>,
    /// Where the JSON report array is written; relative paths resolve
    /// against the working directory.
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Worker threads; 0 uses all cores.
    #[serde(default)]
    pub parallelism: usize,
    #[serde(default)]
    pub guards: Guards,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, VerifyError> {
        let text = std::fs::read_to_string(path).map_err(|e| VerifyError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, VerifyError> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| VerifyError::Config(e.to_string()))?;
        for entry in &cfg.suites {
            entry.name.parse::<Suite>().map_err(|e| VerifyError::Config(e.to_string()))?;
            if entry.dims.is_empty() {
                return Err(VerifyError::Config(format!("suite `{}` lists no (M, N) pairs", entry.name)));
            }
        }
        Ok(cfg)
    }

    /// The `(suite, params)` jobs whose suite name contains `filter`.
    pub fn jobs(&self, filter: Option<&str>) -> Result<Vec<(Suite, Params)>, VerifyError> {
        let mut jobs = Vec::new();
        for entry in &self.suites {
            if filter.is_some_and(|f| !entry.name.contains(f)) {
                continue;
            }
            let suite: Suite = entry.name.parse()?;
            for &(m, n) in &entry.dims {
                jobs.push((suite, Params::with(m, n, entry.params.clone())));
            }
        }
        if jobs.is_empty() {
            return Err(VerifyError::Config("no suites selected".into()));
        }
        Ok(jobs)
    }
}

/// Runs the jobs on a pool of `parallelism` threads. Reports come back sorted
/// by suite name, then parameters, whatever the schedule.
pub fn run_jobs(jobs: &[(Suite, Params)], guards: &Guards, parallelism: usize) -> Result<Vec<Report>, VerifyError> {
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(parallelism).build().map_err(|e| VerifyError::Config(format!("thread pool: {e}")))?;
    let mut reports: Vec<Report> = pool.install(|| jobs.par_iter().map(|(s, p)| run_suite(*s, p, guards)).collect());
    reports.sort_by(|a, b| {
        (a.suite.as_str(), a.params.m, a.params.n)
            .cmp(&(b.suite.as_str(), b.params.m, b.params.n))
            .then_with(|| serde_json::to_string(&a.params).unwrap_or_default().cmp(&serde_json::to_string(&b.params).unwrap_or_default()))
    });
    Ok(reports)
}

/// Exit code for a batch: 1 if anything failed or errored, else 0.
/// Skipped items are reported but do not fail a batch.
pub fn batch_exit_code(reports: &[Report]) -> i32 {
    if reports.iter().any(|r| matches!(r.status, Status::Fail | Status::Error)) {
        1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{
        "suites": [
            {"name": "berezinian-theorem", "dims": [[1, 1], [1, 0]], "params": {"order": 3}},
            {"name": "az-relation", "dims": [[0, 1], [1, 1]], "params": {"order": 3}}
        ],
        "parallelism": 2
    }"#;

    #[test]
    fn filter_and_order() {
        let cfg = RunConfig::parse(SMALL).unwrap();
        assert_eq!(cfg.jobs(None).unwrap().len(), 4);
        assert_eq!(cfg.jobs(Some("berezinian")).unwrap().len(), 2);
        assert!(cfg.jobs(Some("nothing")).is_err());
        let reports = run_jobs(&cfg.jobs(None).unwrap(), &cfg.guards, cfg.parallelism).unwrap();
        let keys: Vec<(String, usize, usize)> = reports.iter().map(|r| (r.suite.clone(), r.params.m, r.params.n)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(batch_exit_code(&reports), 0);
        assert_eq!(reports.iter().filter(|r| r.status == Status::Skipped).count(), 1);
    }

    #[test]
    fn identical_runs_give_identical_json() {
        let cfg = RunConfig::parse(SMALL).unwrap();
        let jobs = cfg.jobs(None).unwrap();
        let a: Vec<String> = run_jobs(&jobs, &cfg.guards, 1).unwrap().iter().map(Report::canonical_json).collect();
        let b: Vec<String> = run_jobs(&jobs, &cfg.guards, 3).unwrap().iter().map(Report::canonical_json).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn config_errors() {
        assert!(RunConfig::parse(r#"{"suites": [{"name": "bogus", "dims": [[1,1]]}]}"#).is_err());
        assert!(RunConfig::parse(r#"{"suites": [{"name": "l3", "dims": []}]}"#).is_err());
        assert!(RunConfig::parse(r#"{"suites": [], "colour": 1}"#).is_err());
        let empty = RunConfig::parse(r#"{"suites": []}"#).unwrap();
        assert!(empty.jobs(None).is_err());
    }
}
