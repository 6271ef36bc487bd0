//! Result tables and their CSV/JSON encodings.
//!
//! Float cells use Rust's shortest round-trip formatting, so output is
//! byte-reproducible and loses no precision. The column set is fixed by the
//! sweep specification before any row is computed; failed cells render
//! empty (CSV) or null (JSON) without disturbing the schema.

use serde_json::{Map, Number, Value};
use std::io::{self, Write};

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Float(f64),
    Int(u64),
    Bool(bool),
    Empty,
}

impl Field {
    fn csv(&self) -> String {
        match self {
            Field::Float(v) => format!("{v}"),
            Field::Int(v) => format!("{v}"),
            Field::Bool(v) => format!("{v}"),
            Field::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Field::Float(v) => Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Field::Int(v) => Value::Number((*v).into()),
            Field::Bool(v) => Value::Bool(*v),
            Field::Empty => Value::Null,
        }
    }
}

/// A rectangular result table with a fixed column set.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Field>>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Field>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// One header line followed by one line per row, comma-separated.
    pub fn write_csv(&self, w: &mut dyn Write) -> io::Result<()> {
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Field::csv).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }

    /// A JSON array of row objects with the same field order as the CSV.
    pub fn write_json(&self, w: &mut dyn Write) -> io::Result<()> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, field) in self.columns.iter().zip(row) {
                    obj.insert(name.clone(), field.json());
                }
                Value::Object(obj)
            })
            .collect();
        serde_json::to_writer_pretty(&mut *w, &rows)?;
        writeln!(w)
    }
}
