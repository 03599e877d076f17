//! Table, CSV and JSON-lines rendering of result rows.

use std::io::Write;

use clap::ValueEnum;
use graph_ce::DyadicRational;
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    /// One JSON object per line, same fields as the CSV columns.
    Json,
}

pub fn value(d: DyadicRational, decimal: bool) -> String {
    if decimal {
        d.to_f64().to_string()
    } else {
        d.to_string()
    }
}

enum Sink<'a, W: Write> {
    Table(&'a mut W),
    Csv(Box<csv::Writer<&'a mut W>>),
    Json(&'a mut W),
}

pub struct Emitter<'a, W: Write> {
    sink: Sink<'a, W>,
}

pub fn io_failure(e: std::io::Error) -> CliError {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        CliError::Closed
    } else {
        CliError::Failed(format!("writing output: {e}"))
    }
}

pub fn csv_failure(e: csv::Error) -> CliError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => io_failure(io),
        other => CliError::Failed(format!("writing csv: {other:?}")),
    }
}

impl<'a, W: Write> Emitter<'a, W> {
    pub fn new(format: Format, out: &'a mut W) -> Self {
        let sink = match format {
            Format::Table => Sink::Table(out),
            Format::Csv => Sink::Csv(Box::new(csv::Writer::from_writer(out))),
            Format::Json => Sink::Json(out),
        };
        Self { sink }
    }

    /// Writes one record; table mode prints `table()` instead.
    pub fn row<T: Serialize>(
        &mut self,
        row: &T,
        table: impl FnOnce() -> String,
    ) -> Result<(), CliError> {
        match &mut self.sink {
            Sink::Table(w) => writeln!(w, "{}", table()).map_err(io_failure),
            Sink::Csv(w) => w.serialize(row).map_err(csv_failure),
            Sink::Json(w) => {
                serde_json::to_writer(&mut **w, row).map_err(|e| match e.io_error_kind() {
                    Some(kind) => io_failure(kind.into()),
                    None => CliError::Failed(format!("writing json: {e}")),
                })?;
                writeln!(w).map_err(io_failure)
            }
        }
    }

    /// Writes several records; table mode prints `table()` once, if non-empty.
    pub fn rows<T: Serialize>(
        &mut self,
        rows: &[T],
        table: impl FnOnce() -> String,
    ) -> Result<(), CliError> {
        if let Sink::Table(_) = self.sink {
            let text = table();
            return if text.is_empty() {
                Ok(())
            } else {
                self.table_line(&text)
            };
        }
        for r in rows {
            self.row(r, String::new)?;
        }
        Ok(())
    }

    /// Text shown only in table mode.
    pub fn table_line(&mut self, text: &str) -> Result<(), CliError> {
        match &mut self.sink {
            Sink::Table(w) => writeln!(w, "{text}").map_err(io_failure),
            _ => Ok(()),
        }
    }

    pub fn finish(self) -> Result<(), CliError> {
        match self.sink {
            Sink::Table(w) | Sink::Json(w) => w.flush().map_err(io_failure),
            Sink::Csv(mut w) => w.flush().map_err(io_failure),
        }
    }
}
