use std::io::Write;

use anyhow::{Context, Result};
use serde_json::Value;

use crate::Global;

/// A command's report: JSON for stdout and `--json`, rows for `--csv`.
pub struct Output {
    pub report: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub violations: Vec<String>,
}

impl Output {
    pub fn new(report: Value) -> Self {
        Output { report, header: vec![], rows: vec![], violations: vec![] }
    }

    pub fn table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.header = header.iter().map(|s| s.to_string()).collect();
        self.rows = rows;
        self
    }
}

pub fn emit(g: &Global, out: &Output) -> Result<()> {
    let text = serde_json::to_string_pretty(&out.report)?;
    let mut stdout = std::io::stdout().lock();
    match writeln!(stdout, "{text}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
        r => r?,
    }
    if let Some(path) = &g.json {
        std::fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &g.csv {
        if out.header.is_empty() {
            anyhow::bail!("this command has no tabular output");
        }
        let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
        w.write_record(&out.header)?;
        for r in &out.rows {
            w.write_record(r)?;
        }
        w.flush()?;
    }
    Ok(())
}
