//! `verify-all`: run every suite and summarize one row per command.
//!
//! Sub-suite failures are re-reported with the command name as prefix, so
//! the exit code aggregates everything.

use bergman_core::Result;

use crate::commands;
use crate::report::{row, Report};
use crate::CommonArgs;

const COLUMNS: &[&str] = &["command", "rows", "failures", "pass"];

type Runner = fn(&CommonArgs) -> Result<Report>;

pub fn run(args: &CommonArgs) -> Result<Report> {
    let mut summary = Report::new("verify-all", COLUMNS);
    let suites: [(&'static str, Runner); 6] = [
        ("verify-lemma1", commands::identities::run),
        ("berezin-eval", commands::transform::run),
        ("asymptotics", commands::growth::run),
        ("boundedness", commands::mapping::run),
        ("metric", commands::distance::run),
        ("lipschitz", commands::smoothness::run),
    ];
    for (name, runner) in suites {
        let report = runner(args)?;
        let pass = report.ok();
        for message in report.failures() {
            summary.fail(format!("{name}: {message}"));
        }
        summary.push(row![
            name,
            report.row_count() as i128,
            report.failures().len() as i128,
            pass
        ]);
    }
    Ok(summary)
}
