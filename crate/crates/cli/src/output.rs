//! Output conventions shared by every subcommand.
//!
//! CSV: comma-separated, one header row, LF line endings, integers
//! unformatted, reals printed with 12 significant digits. JSON: one
//! top-level envelope `{command, config, results, timing}` whose numeric
//! values are the same 12-digit-rounded reals the CSV carries, so the two
//! modes agree value for value.

use serde_json::Value;

/// A real with 12 significant digits, scientific notation.
pub fn fmt_real(x: f64) -> String {
    format!("{:.11e}", x)
}

/// The same rounded real as a JSON number.
pub fn real_value(x: f64) -> Value {
    let rounded: f64 = fmt_real(x).parse().expect("round-trip of finite real");
    serde_json::Number::from_f64(rounded)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

/// What a subcommand hands back: the CSV text and the structured results.
pub struct RunOutput {
    pub csv: String,
    pub results: Value,
}

/// Builds a CSV table from a header and rows of already-formatted cells.
pub fn csv_table(header: &str, rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
