//! Deterministic table output: CSV with a unit-bearing header row, or the
//! same table as JSON. Floats are rendered with 17 significant digits so that
//! identical configs produce byte-identical files.

use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, mut out: impl Write) -> std::io::Result<()> {
        match format {
            Format::Csv => {
                writeln!(out, "{}", self.columns.join(","))?;
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(|v| fmt_f64(*v)).collect();
                    writeln!(out, "{}", cells.join(","))?;
                }
            }
            Format::Json => {
                writeln!(out, "{{")?;
                let cols: Vec<String> =
                    self.columns.iter().map(|c| format!("\"{c}\"")).collect();
                writeln!(out, "  \"columns\": [{}],", cols.join(", "))?;
                writeln!(out, "  \"rows\": [")?;
                for (i, row) in self.rows.iter().enumerate() {
                    let cells: Vec<String> = row.iter().map(|v| fmt_f64_json(*v)).collect();
                    let comma = if i + 1 < self.rows.len() { "," } else { "" };
                    writeln!(out, "    [{}]{comma}", cells.join(", "))?;
                }
                writeln!(out, "  ]")?;
                writeln!(out, "}}")?;
            }
        }
        Ok(())
    }
}

/// 17 significant digits, round-trippable and deterministic.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".to_string() } else { "-inf".to_string() }
    } else {
        format!("{v:.16e}")
    }
}

fn fmt_f64_json(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        // JSON has no literals for these; quote them.
        format!("\"{}\"", fmt_f64(v))
    }
}
