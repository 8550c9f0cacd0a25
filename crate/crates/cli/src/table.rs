//! Deterministic table rendering: CSV and JSON with fixed 12-significant-digit
//! numeric formatting, so identical configurations produce byte-identical
//! output.

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn render_csv(&self) -> String {
        match self {
            Cell::Float(x) => fmt_f64(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn render_json(&self) -> String {
        match self {
            Cell::Float(x) => fmt_f64(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\"")),
        }
    }
}

/// 12 significant digits, scientific; stable across runs and platforms.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.11e}")
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Header line plus one line per row, newline-terminated.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::render_csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// Array of objects with the column names as keys, newline-terminated.
    pub fn to_json(&self) -> String {
        let mut out = String::from("[");
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str("\n  {");
            let fields: Vec<String> = self
                .columns
                .iter()
                .zip(row)
                .map(|(name, cell)| format!("\"{name}\":{}", cell.render_json()))
                .collect();
            out.push_str(&fields.join(","));
            out.push('}');
        }
        if !self.rows.is_empty() {
            out.push('\n');
        }
        out.push_str("]\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_twelve_significant_digits() {
        assert_eq!(fmt_f64(0.25), "2.50000000000e-1");
        assert_eq!(fmt_f64(1.0), "1.00000000000e0");
        assert_eq!(fmt_f64(-0.001234567890123), "-1.23456789012e-3");
    }

    #[test]
    fn csv_shape() {
        let mut t = Table::new(vec!["a", "b"]);
        t.push(vec![Cell::Float(1.0), Cell::Bool(true)]);
        let csv = t.to_csv();
        assert_eq!(csv, "a,b\n1.00000000000e0,true\n");
    }

    #[test]
    fn empty_table_is_header_only() {
        let t = Table::new(vec!["x"]);
        assert_eq!(t.to_csv(), "x\n");
        assert_eq!(t.to_json(), "[]\n");
    }

    #[test]
    fn json_rows_match_csv_rows() {
        let mut t = Table::new(vec!["x", "ok"]);
        t.push(vec![Cell::Float(0.5), Cell::Bool(false)]);
        t.push(vec![Cell::Float(1.5), Cell::Bool(true)]);
        let json = t.to_json();
        assert_eq!(json.matches("{\"x\"").count(), 2);
        assert!(json.ends_with("]\n"));
    }
}
