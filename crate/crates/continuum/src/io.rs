//! CSV and JSON emission for experiment outputs.
//!
//! Numbers are written in Rust's shortest round-trip decimal form, so files
//! are bit-for-bit reproducible across runs on the same inputs.

use crate::{Error, Result};
use serde::Serialize;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

/// Canonical file name for a field dump:
/// `<experiment>_<field>_<N>_<h>.csv`.
pub fn experiment_file_name(experiment: &str, field: &str, n: usize, h: f64) -> String {
    format!("{experiment}_{field}_{n}_{h}.csv")
}

/// Writes a rectangular table with one header line. Every row must have as
/// many entries as the header.
pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    for (i, row) in rows.iter().enumerate() {
        if row.len() != header.len() {
            return Err(Error::InvalidArgument(format!(
                "row {i} has {} entries but the header names {} columns",
                row.len(),
                header.len()
            )));
        }
    }
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    out.flush()?;
    Ok(())
}

/// Writes any serializable value as pretty-printed JSON with a trailing
/// newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    fn scratch_dir(tag: &str) -> std::path::PathBuf {
        let dir = std::env::temp_dir().join(format!(
            "continuum-io-{tag}-{}",
            std::process::id()
        ));
        fs::create_dir_all(&dir).unwrap();
        dir
    }

    #[test]
    fn names_follow_the_reporting_convention() {
        assert_eq!(
            experiment_file_name("residual", "reduced", 256, 0.03125),
            "residual_reduced_256_0.03125.csv"
        );
    }

    #[test]
    fn csv_round_trips_through_text() {
        let dir = scratch_dir("csv");
        let path = dir.join("table.csv");
        let rows = vec![vec![0.0, 1.5], vec![0.1, -2.25e-13]];
        write_csv(&path, &["t", "value"], &rows).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("t,value"));
        for (line, row) in lines.zip(&rows) {
            let parsed: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
            assert_eq!(&parsed, row);
        }
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn csv_rejects_ragged_rows() {
        let dir = scratch_dir("ragged");
        let path = dir.join("table.csv");
        let err = write_csv(&path, &["a", "b"], &[vec![1.0]]);
        assert!(err.is_err());
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn json_is_pretty_printed_and_newline_terminated() {
        let dir = scratch_dir("json");
        let path = dir.join("report.json");
        write_json(&path, &serde_json::json!({ "slope": 4.01, "pass": true })).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.ends_with('\n'));
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["pass"], serde_json::json!(true));
        fs::remove_dir_all(&dir).unwrap();
    }
}
