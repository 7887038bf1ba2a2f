use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use crate::args::Format;

/// Rows of numbers under named columns; `None` is an empty CSV cell or a
/// JSON `null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Option<f64>>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// CSV with 17 significant digits, so values survive a round trip.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&self.columns)?;
        for row in &self.rows {
            out.write_record(row.iter().map(|v| match v {
                Some(v) => format!("{v:.16e}"),
                None => String::new(),
            }))?;
        }
        out.flush()?;
        Ok(())
    }

    /// `{"columns": [...], "rows": [[...], ...]}` with one row per line.
    pub fn write_json<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{{")?;
        writeln!(
            w,
            "  \"columns\": {},",
            serde_json::to_string(&self.columns)?
        )?;
        writeln!(w, "  \"rows\": [")?;
        for (i, row) in self.rows.iter().enumerate() {
            let sep = if i + 1 < self.rows.len() { "," } else { "" };
            writeln!(w, "    {}{sep}", serde_json::to_string(row)?)?;
        }
        writeln!(w, "  ]")?;
        writeln!(w, "}}")?;
        w.flush()?;
        Ok(())
    }

    pub fn write(&self, path: Option<&Path>, format: Format) -> Result<()> {
        let sink = sink(path)?;
        match format {
            Format::Csv => self.write_csv(sink),
            Format::Json => self.write_json(sink),
        }
    }

    pub fn read(path: &Path) -> Result<Self> {
        let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
        if path.extension().is_some_and(|e| e == "json") {
            return Ok(serde_json::from_reader(io::BufReader::new(file))?);
        }
        let mut rdr = csv::Reader::from_reader(file);
        let columns = rdr.headers()?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for rec in rdr.records() {
            let row = rec?
                .iter()
                .map(|c| {
                    if c.trim().is_empty() {
                        Ok(None)
                    } else {
                        c.trim()
                            .parse::<f64>()
                            .map(Some)
                            .with_context(|| format!("not a number: `{c}`"))
                    }
                })
                .collect::<Result<_>>()?;
            rows.push(row);
        }
        Ok(Table { columns, rows })
    }
}

pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn write_json<T: Serialize>(value: &T, path: Option<&Path>) -> Result<()> {
    let mut w = sink(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}
