//! Result tables and their table, JSON and CSV renderings.
//!
//! JSON is `{name, params, samples: [{column: value}], summary}`; CSV is the
//! header row followed by one row per sample, columns in the same order.

use serde_json::{Map, Value};

use crate::args::Format;

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub name: String,
    pub params: Map<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    pub summary: Map<String, Value>,
}

/// JSON number, or `null` for non-finite values.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn opt(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

impl Report {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Report {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn summary(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.summary.insert(key.to_string(), value.into());
        self
    }

    pub fn row(&mut self, values: Vec<Value>) {
        debug_assert_eq!(values.len(), self.columns.len(), "row width in {}", self.name);
        self.rows.push(values);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json(),
            Format::Csv => self.csv(),
            Format::Table => self.table(),
        }
    }

    fn json(&self) -> String {
        let samples: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let m: Map<String, Value> = self.columns.iter().cloned().zip(r.iter().cloned()).collect();
                Value::Object(m)
            })
            .collect();
        let mut top = Map::new();
        top.insert("name".into(), Value::String(self.name.clone()));
        top.insert("params".into(), Value::Object(self.params.clone()));
        top.insert("samples".into(), Value::Array(samples));
        top.insert("summary".into(), Value::Object(self.summary.clone()));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("values are serialisable");
        s.push('\n');
        s
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r.iter().map(csv_cell)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    fn table(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(table_cell).collect()).collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|i| {
                cells
                    .iter()
                    .map(|r| r[i].chars().count())
                    .chain([self.columns[i].chars().count()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        // Text columns are left-aligned, numeric ones right-aligned.
        let left: Vec<bool> = (0..self.columns.len())
            .map(|i| self.rows.iter().any(|r| r[i].is_string()))
            .collect();
        let line = |vals: &[String]| {
            let parts: Vec<String> = vals
                .iter()
                .zip(&widths)
                .zip(&left)
                .map(|((v, w), l)| if *l { format!("{v:<w$}") } else { format!("{v:>w$}") })
                .collect();
            parts.join("  ").trim_end().to_string()
        };
        let mut out = format!("# {}\n", self.name);
        if !self.columns.is_empty() {
            out.push_str(&line(&self.columns));
            out.push('\n');
            for r in &cells {
                out.push_str(&line(r));
                out.push('\n');
            }
        }
        for (k, v) in &self.summary {
            out.push_str(&format!("{k}: {}\n", table_cell(v)));
        }
        out
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn table_cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => human(x),
            _ => n.to_string(),
        },
        other => other.to_string(),
    }
}

/// Nine decimals, or scientific notation for very small or large magnitudes so
/// that residuals stay visible.
fn human(x: f64) -> String {
    if x != 0.0 && (x.abs() < 1e-4 || x.abs() >= 1e9) {
        return format!("{x:.3e}");
    }
    let s = format!("{x:.9}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}
