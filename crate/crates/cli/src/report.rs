//! Tabular run reports with deterministic CSV and JSON encodings.
//!
//! Every real number is rendered exactly once, as a 15-significant-digit
//! scientific literal that is valid in both CSV and JSON, so the two
//! encodings of the same run agree digit for digit. Non-finite values are
//! never emitted: they are replaced by an empty field (`null` in JSON) and
//! recorded as failures, which makes the process exit non-zero.

use std::fmt::Write as _;

/// Output encoding selected with `--format`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One cell of a report row.
#[derive(Debug, Clone)]
pub enum Value {
    Real(f64),
    Int(i128),
    Bool(bool),
    Text(String),
    /// Not applicable; renders as an empty CSV field and JSON `null`.
    Empty,
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Real(x)
    }
}

impl From<i128> for Value {
    fn from(n: i128) -> Self {
        Value::Int(n)
    }
}

impl From<u64> for Value {
    fn from(n: u64) -> Self {
        Value::Int(n as i128)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_owned())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

/// Build a report row from mixed cell types.
macro_rules! row {
    ($($v:expr),* $(,)?) => {
        vec![$($crate::report::Value::from($v)),*]
    };
}
pub(crate) use row;

/// An ordered table of named columns plus the list of failed checks.
#[derive(Debug)]
pub struct Report {
    command: &'static str,
    columns: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
    failures: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, columns: &[&'static str]) -> Self {
        Self { command, columns: columns.to_vec(), rows: Vec::new(), failures: Vec::new() }
    }

    pub fn command(&self) -> &'static str {
        self.command
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn failures(&self) -> &[String] {
        &self.failures
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    /// Record a failed check; the report then exits non-zero.
    pub fn fail(&mut self, message: String) {
        self.failures.push(message);
    }

    /// Record `message()` as a failure unless `ok` holds; returns `ok` so the
    /// outcome can also be pushed as the row's pass column.
    pub fn check(&mut self, ok: bool, message: impl FnOnce() -> String) -> bool {
        if !ok {
            self.fail(message());
        }
        ok
    }

    /// Append a row. Non-finite reals are replaced by [`Value::Empty`] and
    /// recorded as failures: NaN or infinity must never reach the output.
    pub fn push(&mut self, cells: Vec<Value>) {
        assert_eq!(
            cells.len(),
            self.columns.len(),
            "row arity mismatch in the '{}' report",
            self.command
        );
        let index = self.rows.len();
        let cells = cells
            .into_iter()
            .enumerate()
            .map(|(i, cell)| match cell {
                Value::Real(x) if !x.is_finite() => {
                    self.failures.push(format!(
                        "row {index}: non-finite value in column '{}'",
                        self.columns[i]
                    ));
                    Value::Empty
                }
                other => other,
            })
            .collect();
        self.rows.push(cells);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for cells in &self.rows {
            for (i, cell) in cells.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                match cell {
                    Value::Real(x) => out.push_str(&fmt_real(*x)),
                    Value::Int(n) => {
                        let _ = write!(out, "{n}");
                    }
                    Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
                    Value::Text(s) => out.push_str(&csv_field(s)),
                    Value::Empty => {}
                }
            }
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let mut out = String::from("[");
        for (r, cells) in self.rows.iter().enumerate() {
            out.push_str(if r == 0 { "\n" } else { ",\n" });
            out.push_str("  {");
            for (i, cell) in cells.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "{}: ", json_string(self.columns[i]));
                match cell {
                    Value::Real(x) => out.push_str(&fmt_real(*x)),
                    Value::Int(n) => {
                        let _ = write!(out, "{n}");
                    }
                    Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
                    Value::Text(s) => out.push_str(&json_string(s)),
                    Value::Empty => out.push_str("null"),
                }
            }
            out.push('}');
        }
        out.push_str("\n]\n");
        out
    }
}

/// The one formatting used for every real value in every encoding:
/// scientific notation with 15 significant digits, valid as a JSON number.
fn fmt_real(x: f64) -> String {
    format!("{x:.14e}")
}

/// Quote a CSV field only when it contains a delimiter, quote, or newline.
fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
