//! Report container and the CSV/JSON emitters.
//!
//! Both formats carry exactly the same fields: CSV as a header line plus
//! rows, JSON as an array of objects keyed by the column names. Numeric
//! cells are rounded to the requested number of significant digits before
//! either serialization, so the two formats always agree value-for-value.

use std::io::Write;

#[derive(Debug, Clone)]
pub enum Cell {
    Text(String),
    Num(f64),
    Int(i64),
    Empty,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// `digits` significant digits in scientific notation (like the exit-count
/// tables this mirrors).
pub fn format_sig(v: f64, digits: u8) -> String {
    format!("{:.*e}", digits.saturating_sub(1) as usize, v)
}

fn cell_csv(cell: &Cell, digits: u8) -> String {
    match cell {
        Cell::Text(s) => s.clone(),
        Cell::Num(v) => format_sig(*v, digits),
        Cell::Int(i) => i.to_string(),
        Cell::Empty => String::new(),
    }
}

fn cell_json(cell: &Cell, digits: u8) -> serde_json::Value {
    match cell {
        Cell::Text(s) => serde_json::Value::String(s.clone()),
        Cell::Num(v) => {
            let rounded: f64 = format_sig(*v, digits).parse().expect("formatted float");
            serde_json::Number::from_f64(rounded)
                .map(serde_json::Value::Number)
                .unwrap_or(serde_json::Value::Null)
        }
        Cell::Int(i) => serde_json::Value::Number((*i).into()),
        Cell::Empty => serde_json::Value::Null,
    }
}

pub fn write_csv(report: &Report, digits: u8, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "{}", report.columns.join(","))?;
    for row in &report.rows {
        let line: Vec<String> = row.iter().map(|c| cell_csv(c, digits)).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}

pub fn write_json(report: &Report, digits: u8, out: &mut dyn Write) -> std::io::Result<()> {
    let rows: Vec<serde_json::Value> = report
        .rows
        .iter()
        .map(|row| {
            let obj: serde_json::Map<String, serde_json::Value> = report
                .columns
                .iter()
                .zip(row)
                .map(|(name, cell)| (name.to_string(), cell_json(cell, digits)))
                .collect();
            serde_json::Value::Object(obj)
        })
        .collect();
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(&serde_json::Value::Array(rows)).expect("serializable")
    )
}
