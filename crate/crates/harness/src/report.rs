//! Human and machine renderings of reports.
//!
//! Machine reports are pretty-printed JSON objects with sorted keys, a
//! `schema_version` and a `command` field; they carry no timing, so equal
//! inputs give byte-identical output.

use serde::Serialize;
use serde_json::{json, Value};

use crate::run::{CheckReport, RunReport};
use crate::search::{Finding, SearchReport};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

pub fn machine<T: Serialize>(command: &str, body: &T) -> String {
    // `Value` maps are ordered by key, which fixes the key order.
    let body = serde_json::to_value(body).expect("reports serialize");
    let doc = json!({
        "schema_version": REPORT_SCHEMA_VERSION,
        "command": command,
        "report": body,
    });
    let mut out = serde_json::to_string_pretty(&doc).expect("values serialize");
    out.push('\n');
    out
}

fn num(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x:.6e}"),
        None => "-".into(),
    }
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    for row in rows {
        out.push_str(&line(row.clone()));
    }
    out
}

fn check_row(c: &CheckReport) -> Vec<String> {
    let norms = match (c.detail.get("norm_x").and_then(Value::as_f64), c.detail.get("norm_y").and_then(Value::as_f64)) {
        (Some(x), Some(y)) => format!("{x:.6} / {y:.6}"),
        _ => "-".into(),
    };
    let outcome = match (&c.outcome, &c.error) {
        (Some(o), _) => o.clone(),
        (None, Some(e)) => format!("error: {}", e.code),
        (None, None) => "-".into(),
    };
    vec![
        c.name.clone(),
        c.checker.to_string(),
        format!("{:?}", c.status).to_lowercase(),
        outcome,
        c.expect.clone().unwrap_or_else(|| "-".into()),
        norms,
        num(c.value),
        num(c.slack),
        format!("{:.1}", c.elapsed_ms),
    ]
}

const CHECK_HEADER: [&str; 9] = ["name", "checker", "status", "outcome", "expect", "norm_x / norm_y", "value", "slack", "ms"];

pub fn human_checks(r: &RunReport) -> String {
    let rows: Vec<Vec<String>> = r.checks.iter().map(check_row).collect();
    let mut out = table(&CHECK_HEADER, &rows);
    if rows.is_empty() {
        return out;
    }
    for c in r.checks.iter().filter(|c| c.error.is_some()) {
        let e = c.error.as_ref().expect("filtered");
        out.push_str(&format!("{}: {}\n", c.name, e.message));
    }
    out.push_str(&format!(
        "{} passed, {} failed, {} errors (seed {}, rel {:e}, abs {:e})\n",
        r.passed, r.failed, r.errors, r.seed, r.tolerance.rel, r.tolerance.abs
    ));
    out
}

fn finding_block(i: usize, f: &Finding) -> String {
    let fp = &f.fingerprint;
    let shrunk = serde_json::to_string(&f.shrunk).expect("instances serialize");
    format!(
        "finding {i}\n  fingerprint  statement={} seed={} trial={} generator={}\n  magnitude    {:e} ({})\n  detail       {}\n  shrunk       {} steps, magnitude {:e}\n  instance     {}\n",
        fp.statement,
        fp.seed,
        fp.trial,
        serde_json::to_string(&fp.generator).expect("config serializes"),
        f.magnitude,
        f.confidence.as_str(),
        f.detail,
        f.shrink_steps,
        f.shrunk_magnitude,
        shrunk,
    )
}

pub fn human_search(r: &SearchReport) -> String {
    let mut out = format!(
        "statement {} ({}){}\n  {}\n",
        r.statement,
        r.checker,
        if r.mutant { " [mutant]" } else { "" },
        r.summary
    );
    let mut rows = vec![
        vec!["trials".to_string(), r.trials.to_string()],
        vec!["hypothesis hits".into(), r.hypothesis_hits.to_string()],
        vec!["held".into(), r.held.to_string()],
        vec!["violations".into(), r.violations.to_string()],
    ];
    for (name, n) in &r.skipped {
        rows.push(vec![format!("skipped: {name}"), n.to_string()]);
    }
    out.push_str(&table(&["counter", "count"], &rows));
    for (i, f) in r.findings.iter().enumerate() {
        out.push_str(&finding_block(i, f));
    }
    out
}

/// Key-value listing of a JSON object, one line per top-level key.
pub fn human_object(title: &str, body: &Value) -> String {
    let mut out = format!("{title}\n");
    if let Value::Object(map) = body {
        let rows: Vec<Vec<String>> = map.iter().map(|(k, v)| vec![k.clone(), v.to_string()]).collect();
        out.push_str(&table(&["field", "value"], &rows));
    } else {
        out.push_str(&format!("{body}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use normkeep::Tolerance;

    fn empty() -> RunReport {
        RunReport {
            seed: 0,
            tolerance: Tolerance::default(),
            passed: 0,
            failed: 0,
            errors: 0,
            checks: Vec::new(),
        }
    }

    #[test]
    fn empty_report_is_header_only() {
        let out = human_checks(&empty());
        assert_eq!(out.lines().count(), 1);
        assert!(out.starts_with("name"));
    }

    #[test]
    fn machine_report_is_versioned_and_sorted() {
        let out = machine("check", &empty());
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["command"], "check");
        let keys: Vec<&String> = v["report"].as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn columns_align() {
        let t = table(&["a", "bbb"], &[vec!["long".into(), "x".into()]]);
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines[0].find("bbb"), lines[1].find('x'));
    }
}
