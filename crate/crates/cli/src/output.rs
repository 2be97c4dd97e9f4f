use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// A command's report in all three renderings, plus the failing lines.
#[derive(Debug, Default)]
pub struct Outcome {
    pub table: Vec<String>,
    pub csv: Vec<String>,
    pub json: Value,
    pub failures: Vec<String>,
}

impl Outcome {
    /// Records a CSV line; lines ending in `FAIL` are also failures.
    pub fn check_line(&mut self, line: String) {
        if line.ends_with(",FAIL") {
            self.failures.push(line.clone());
        }
        self.csv.push(line);
    }

    pub fn render(&self, format: Format) -> String {
        let lines = match format {
            Format::Table => &self.table,
            Format::Csv => &self.csv,
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json value");
                s.push('\n');
                return s;
            }
        };
        let mut out = lines.join("\n");
        if !out.is_empty() {
            out.push('\n');
        }
        out
    }
}

/// Pads columns to a common width.
pub fn align(rows: &[Vec<String>]) -> Vec<String> {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    rows.iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .map(|(c, cell)| format!("{cell:>w$}", w = widths[c]))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        })
        .collect()
}
