//! Rendering reports as canonical JSON or readable text, and writing them
//! to the report directory.

use std::path::{Path, PathBuf};

use serde_json::Value;

/// Environment variable naming a directory that receives a copy of every
/// JSON report.
pub const REPORT_DIR_VAR: &str = "GVBIMOD_REPORT_DIR";

/// Pretty-printed JSON with sorted keys and a trailing newline.
pub fn to_json(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("serializable");
    s.push('\n');
    s
}

fn scalar_fields(v: &Value) -> String {
    let Some(obj) = v.as_object() else { return String::new() };
    obj.iter()
        .filter(|(_, x)| x.is_number() || x.is_boolean() || x.is_string())
        .map(|(k, x)| format!("{k}={x}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// A short human-readable rendering of a run report.
pub fn render_run(report: &Value) -> String {
    let mut out = String::new();
    if let Some(err) = report.get("error") {
        out.push_str(&format!("{}: {}\n", report["status"].as_str().unwrap_or("error"), err["message"].as_str().unwrap_or("")));
        return out;
    }
    for t in report["tasks"].as_array().into_iter().flatten() {
        let op = t["inputs"]["op"].as_str().unwrap_or("?");
        out.push_str(&format!("[{}] task {} {}", t["status"].as_str().unwrap_or("?"), t["index"], op));
        if let Some(e) = t.get("error") {
            out.push_str(&format!(": {}", e.as_str().unwrap_or("")));
        } else {
            let fields = scalar_fields(&t["result"]);
            if !fields.is_empty() {
                out.push_str(&format!(": {fields}"));
            }
        }
        out.push('\n');
        for a in t["assertions"].as_array().into_iter().flatten() {
            if a["pass"] != Value::Bool(true) {
                out.push_str(&format!("    expected {} = {}, got {}\n", a["path"], a["expected"], a["actual"]));
            }
        }
    }
    let s = &report["summary"];
    out.push_str(&format!(
        "{}: {} tasks, {} passed, {} failed, {} errors\n",
        report["status"].as_str().unwrap_or("?"),
        s["tasks"],
        s["passed"],
        s["failed"],
        s["errors"]
    ));
    out
}

pub fn render_suite(report: &crate::suites::SuiteReport) -> String {
    let mut out = String::new();
    for c in &report.checks {
        out.push_str(&format!("[{}] {}\n", if c.pass { "pass" } else { "FAIL" }, c.id));
    }
    out.push_str(&format!("suite {} (seed {}): {}\n", report.suite, report.seed, if report.pass { "pass" } else { "fail" }));
    out
}

/// Writes `contents` to `$GVBIMOD_REPORT_DIR/<name>` when the variable is set.
pub fn write_to_report_dir(name: &str, contents: &str) -> std::io::Result<Option<PathBuf>> {
    let Some(dir) = std::env::var_os(REPORT_DIR_VAR) else { return Ok(None) };
    let dir = Path::new(&dir);
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, contents)?;
    Ok(Some(path))
}
