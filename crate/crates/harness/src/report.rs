use std::collections::BTreeMap;
use std::fmt::Write as _;

use kdq_core::quantum::KdDistribution;
use serde::Serialize;

use crate::error::Result;
use crate::suites::SuiteReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

pub const CSV_COLUMNS: [&str; 6] = ["inequality_id", "lhs", "rhs", "slack", "pass", "heuristic"];
pub const KD_CSV_COLUMNS: [&str; 6] = ["a", "b", "re", "im", "abs", "im_abs"];

/// Pretty JSON with a trailing newline. Reals are written as shortest
/// round-trip decimals.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn parse_report(text: &str) -> Result<SuiteReport> {
    Ok(serde_json::from_str(text)?)
}

/// Shortest round-trip decimal, switching to exponent form for very small or large magnitudes.
pub fn real(x: f64) -> String {
    format!("{x:?}")
}

fn csv_string(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> Result<()>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w)?;
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn to_csv(report: &SuiteReport) -> Result<String> {
    csv_string(|w| {
        w.write_record(CSV_COLUMNS)?;
        for c in &report.checks {
            w.write_record([
                c.inequality_id.clone(),
                real(c.lhs),
                real(c.rhs),
                real(c.slack),
                c.pass.to_string(),
                c.heuristic.to_string(),
            ])?;
        }
        Ok(())
    })
}

pub fn kd_to_csv(kd: &KdDistribution) -> Result<String> {
    csv_string(|w| {
        w.write_record(KD_CSV_COLUMNS)?;
        for (a, b, z) in kd.entries() {
            w.write_record([a.to_string(), b.to_string(), real(z.re), real(z.im), real(z.norm()), real(z.im.abs())])?;
        }
        Ok(())
    })
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: usize,
    trivial: usize,
    heuristic: usize,
    min_slack: f64,
}

pub fn to_text(report: &SuiteReport) -> String {
    let mut by_id: BTreeMap<&str, Tally> = BTreeMap::new();
    for c in &report.checks {
        let t = by_id.entry(&c.inequality_id).or_insert(Tally { min_slack: f64::INFINITY, ..Tally::default() });
        t.checks += 1;
        t.failures += usize::from(!c.pass);
        t.trivial += usize::from(c.trivially_satisfied);
        t.heuristic += usize::from(c.heuristic);
        t.min_slack = t.min_slack.min(c.slack);
    }
    let mut s = String::new();
    let _ = writeln!(
        s,
        "suite {}: {} instances, {} checks, {} failures",
        report.suite_name,
        report.instances,
        report.checks.len(),
        report.failures
    );
    let _ = writeln!(s, "seed {} ({})", report.seed, report.seed_source);
    if let Some(t) = report.wall_time_secs {
        let _ = writeln!(s, "wall time {t:.3} s");
    }
    for (id, t) in &by_id {
        let _ = writeln!(
            s,
            "  {id:<26} checks {:>5}  failures {:>5}  trivial {:>5}  heuristic {:>5}  min slack {:.3e}",
            t.checks, t.failures, t.trivial, t.heuristic, t.min_slack
        );
    }
    let failing: Vec<_> = report.checks.iter().filter(|c| !c.pass).collect();
    for c in failing.iter().take(20) {
        let _ = writeln!(
            s,
            "  FAIL {} lhs {:.9} rhs {:.9} slack {:.3e} [{}]",
            c.inequality_id, c.lhs, c.rhs, c.slack, c.witness
        );
    }
    if failing.len() > 20 {
        let _ = writeln!(s, "  ... {} more failures", failing.len() - 20);
    }
    s
}

pub fn emit_report(report: &SuiteReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => to_json(report),
        ReportFormat::Csv => to_csv(report),
        ReportFormat::Text => Ok(to_text(report)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suites::SuiteConfig;
    use kdq_core::BoundReport;

    fn sample() -> SuiteReport {
        let checks = vec![
            BoundReport::new("prop1", 0.75, 0.5, 1e-6).with_witness("#0 d=2, \"quoted\""),
            BoundReport::new("cor5a", 0.1 + 0.2, 1.0, 1e-6).heuristic(true),
        ];
        SuiteReport::new("mixed", SuiteConfig::default(), checks)
    }

    #[test]
    fn json_round_trip_is_exact() {
        let r = sample();
        let text = to_json(&r).unwrap();
        let back = parse_report(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(to_json(&back).unwrap(), text);
        assert!(text.contains("0.30000000000000004"));
    }

    #[test]
    fn csv_has_six_columns() {
        let text = to_csv(&sample()).unwrap();
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        assert_eq!(rd.headers().unwrap().len(), 6);
        let rows: Vec<_> = rd.records().map(|r| r.unwrap()).collect();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.len() == 6));
        assert_eq!(&rows[1][4], "false");
    }

    #[test]
    fn empty_report_has_header_only() {
        let r = SuiteReport::new("empty", SuiteConfig::default(), Vec::new());
        assert_eq!(to_csv(&r).unwrap(), "inequality_id,lhs,rhs,slack,pass,heuristic\n");
        assert!(to_text(&r).contains("0 checks, 0 failures"));
        assert_eq!(parse_report(&to_json(&r).unwrap()).unwrap(), r);
    }

    #[test]
    fn text_lists_failures() {
        let t = to_text(&sample());
        assert!(t.contains("FAIL cor5a"));
        assert!(!t.contains("FAIL prop1"));
    }
}
