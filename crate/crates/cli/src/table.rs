//! Row tables rendered as CSV (one header row, `\n` endings) or JSON arrays of objects.

use std::fmt::Write;

use serde_json::{Map, Value};

use crate::config::Format;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    F(f64),
    U(u64),
    S(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::F(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::U(v as u64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::S(v.to_string())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

#[derive(Clone, Debug)]
pub struct Table {
    /// File name without extension.
    pub name: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, header: &[&'static str]) -> Self {
        Table {
            name: name.to_string(),
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }

    fn csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, c) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                let _ = match c {
                    Cell::F(v) => write!(out, "{v}"),
                    Cell::U(v) => write!(out, "{v}"),
                    Cell::S(s) => write!(out, "{s}"),
                    Cell::Empty => Ok(()),
                };
            }
            out.push('\n');
        }
        out
    }

    fn json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut m = Map::new();
                for (k, c) in self.header.iter().zip(row) {
                    let v = match c {
                        Cell::F(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
                        Cell::U(v) => Value::from(*v),
                        Cell::S(s) => Value::from(s.as_str()),
                        Cell::Empty => Value::Null,
                    };
                    m.insert((*k).to_string(), v);
                }
                Value::Object(m)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&rows).expect("rows serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_single_header_and_empty_cells() {
        let mut t = Table::new("t", &["a", "b"]);
        t.push(vec![1.5.into(), Cell::Empty]);
        assert_eq!(t.render(Format::Csv), "a,b\n1.5,\n");
    }

    #[test]
    fn json_keeps_header_order() {
        let mut t = Table::new("t", &["z", "a"]);
        t.push(vec![2usize.into(), "x".into()]);
        let s = t.render(Format::Json);
        assert!(s.find("\"z\"").unwrap() < s.find("\"a\"").unwrap());
    }
}
