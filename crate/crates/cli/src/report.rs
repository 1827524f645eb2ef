use std::path::{Path, PathBuf};

use clap::Subcommand;
use serde_json::Value;

use crate::{emit, inputs, Failure, Global};

#[derive(Subcommand, Debug)]
pub enum ReportCommand {
    /// Per-level, per-weight dangerous-set counts from a drc or embed report.
    Census { file: PathBuf },
    /// Formula, substitution and value rows from a bound report.
    Bound { file: PathBuf },
    /// Success rate over several embed or reduce reports.
    Embed {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

fn load(path: &Path) -> Result<Value, Failure> {
    serde_json::from_str(&inputs::read_file(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn census(doc: &Value) -> Result<Vec<Vec<String>>, Failure> {
    let steps = doc["report"]["chain"]["steps"]
        .as_array()
        .ok_or_else(|| Failure::Usage("no chain steps in this report".into()))?;
    let mut rows = Vec::new();
    for step in steps {
        let counts = step["Yw"].as_object().cloned().unwrap_or_default();
        let bounds = step["Yw_bound"].as_object().cloned().unwrap_or_default();
        let mut weights: Vec<usize> = counts.keys().chain(bounds.keys()).filter_map(|w| w.parse().ok()).collect();
        weights.sort_unstable();
        weights.dedup();
        for w in weights {
            let key = w.to_string();
            rows.push(vec![
                text(&step["level"]),
                key.clone(),
                counts.get(&key).map_or_else(|| "0".into(), text),
                bounds.get(&key).map_or_else(String::new, text),
                text(&step["within_bounds"]),
                text(&step["audited"]),
            ]);
        }
    }
    Ok(rows)
}

fn bound(doc: &Value) -> Result<Vec<Vec<String>>, Failure> {
    let trace = doc["report"]["trace"]
        .as_array()
        .ok_or_else(|| Failure::Usage("no bound trace in this report".into()))?;
    Ok(trace
        .iter()
        .map(|t| vec![text(&t["formula"]), text(&t["substitution"]), text(&t["value"])])
        .collect())
}

fn success_rate(docs: &[(PathBuf, Value)]) -> Vec<Vec<String>> {
    let mut runs = 0u64;
    let mut successes = 0u64;
    let mut errors = 0u64;
    let mut seeds = Vec::new();
    for (_, d) in docs {
        runs += 1;
        match d["verdict"].as_str() {
            Some("success") => successes += 1,
            Some("error") => errors += 1,
            _ => {}
        }
        seeds.push(text(&d["seed"]));
    }
    let rate = if runs == 0 { 0.0 } else { successes as f64 / runs as f64 };
    vec![vec![runs.to_string(), successes.to_string(), errors.to_string(), format!("{rate:.4}"), seeds.join(" ")]]
}

pub fn report(g: &Global, cmd: ReportCommand) -> u8 {
    let out = (|| -> Result<String, Failure> {
        Ok(match &cmd {
            ReportCommand::Census { file } => emit::rows(
                &["level", "weight", "count", "ceiling", "within_bounds", "audited"],
                &census(&load(file)?)?,
                g.format,
            ),
            ReportCommand::Bound { file } => emit::rows(&["formula", "substitution", "value"], &bound(&load(file)?)?, g.format),
            ReportCommand::Embed { files } => {
                let docs = files.iter().map(|f| load(f).map(|d| (f.clone(), d))).collect::<Result<Vec<_>, _>>()?;
                emit::rows(&["runs", "successes", "errors", "success_rate", "seeds"], &success_rate(&docs), g.format)
            }
        })
    })();
    match out.and_then(|t| emit::write_out(g, &t)) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message());
            f.exit_code()
        }
    }
}
