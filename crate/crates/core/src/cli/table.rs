//! Result tables and their CSV form.
//!
//! Layout: `#`-prefixed provenance lines, one header row, then data rows.
//! Reals are written with 17 significant digits so a read reproduces them
//! bit for bit; failed cells hold `NaN` and the row's `reason` column says
//! why.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};

pub const REASON_COLUMN: &str = "reason";

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ResultTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// One entry per row; empty when every cell succeeded.
    pub reasons: Vec<String>,
    /// Comment lines written before the header, without the leading `#`.
    pub provenance: Vec<String>,
}

impl ResultTable {
    pub fn new(columns: Vec<String>) -> Self {
        Self { columns, ..Default::default() }
    }

    pub fn push_row(&mut self, row: Vec<f64>, reason: String) {
        assert_eq!(row.len(), self.columns.len(), "row width does not match header");
        self.rows.push(row);
        self.reasons.push(reason);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let io = |source| Error::Io { path: path.to_path_buf(), source };
        let file = File::create(path).map_err(io)?;
        let mut w = BufWriter::new(file);
        self.write_to(&mut w).map_err(|e| match e {
            Error::Io { source, .. } => io(source),
            Error::Csv { source, .. } => Error::Csv { path: path.to_path_buf(), source },
            other => other,
        })?;
        w.flush().map_err(io)
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("CSV output is UTF-8")
    }

    fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        let io = |source| Error::Io { path: "<stream>".into(), source };
        for line in &self.provenance {
            for part in line.split('\n') {
                write!(w, "# {}\r\n", part.trim_end_matches('\r')).map_err(io)?;
            }
        }
        let csv_err = |source| Error::Csv { path: "<stream>".into(), source };
        let mut cw = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(&mut w);
        let mut header: Vec<&str> = self.columns.iter().map(String::as_str).collect();
        header.push(REASON_COLUMN);
        cw.write_record(&header).map_err(csv_err)?;
        for (row, reason) in self.rows.iter().zip(&self.reasons) {
            let mut rec: Vec<String> = row.iter().map(|&x| format_real(x)).collect();
            rec.push(reason.clone());
            cw.write_record(&rec).map_err(csv_err)?;
        }
        cw.flush().map_err(io)?;
        Ok(())
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        let io = |source| Error::Io { path: path.to_path_buf(), source };
        let file = File::open(path).map_err(io)?;
        let mut reader = BufReader::new(file);
        let mut provenance = Vec::new();
        let mut rest = String::new();
        let mut line = String::new();
        loop {
            line.clear();
            if reader.read_line(&mut line).map_err(io)? == 0 {
                break;
            }
            if let Some(c) = line.strip_prefix('#') {
                let c = c.trim_end_matches(['\r', '\n']);
                provenance.push(c.strip_prefix(' ').unwrap_or(c).to_string());
            } else {
                rest.push_str(&line);
                std::io::Read::read_to_string(&mut reader, &mut rest).map_err(io)?;
                break;
            }
        }
        let csv_err = |source| Error::Csv { path: path.to_path_buf(), source };
        let bad = |message: String| Error::Config { location: path.display().to_string(), message };
        let mut cr = csv::ReaderBuilder::new().from_reader(rest.as_bytes());
        let header = cr.headers().map_err(csv_err)?.clone();
        let n = header.len();
        if n == 0 || &header[n - 1] != REASON_COLUMN {
            return Err(bad(format!("last column must be '{REASON_COLUMN}'")));
        }
        let mut table = ResultTable::new(header.iter().take(n - 1).map(str::to_string).collect());
        table.provenance = provenance;
        for (i, rec) in cr.records().enumerate() {
            let rec = rec.map_err(csv_err)?;
            let row = (0..n - 1)
                .map(|j| rec[j].parse::<f64>().map_err(|_| bad(format!("row {}: '{}' is not a number", i + 1, &rec[j]))))
                .collect::<Result<Vec<_>>>()?;
            table.push_row(row, rec[n - 1].to_string());
        }
        Ok(table)
    }
}

/// 17 significant digits, `NaN`, `inf` or `-inf`.
pub fn format_real(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let mut t = ResultTable::new(vec!["x".into(), "y[a=1;b=2]".into(), "z,w".into()]);
        t.provenance = vec!["config:".into(), "  [rf]".into()];
        t.push_row(vec![0.1, 1.0 / 3.0, f64::NAN], "z: domain error".into());
        t.push_row(vec![5e-324, -1.7976931348623157e308, f64::INFINITY], String::new());
        t.write_csv(&path).unwrap();
        let back = ResultTable::read_csv(&path).unwrap();
        assert_eq!(back.columns, t.columns);
        assert_eq!(back.provenance, t.provenance);
        assert_eq!(back.reasons, t.reasons);
        for (a, b) in back.rows.iter().flatten().zip(t.rows.iter().flatten()) {
            assert!(a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan()));
        }
    }

    #[test]
    fn empty_table_has_header_only() {
        let mut t = ResultTable::new(vec!["x".into()]);
        t.provenance.push("p".into());
        assert_eq!(t.to_csv_string(), "# p\r\nx,reason\r\n");
    }

    #[test]
    fn unwritable_path_names_the_path() {
        let t = ResultTable::new(vec!["x".into()]);
        let e = t.write_csv(Path::new("/nonexistent-dir/out.csv")).unwrap_err();
        assert!(e.to_string().contains("/nonexistent-dir/out.csv"));
    }
}
