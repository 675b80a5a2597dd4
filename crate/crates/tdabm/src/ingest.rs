//! CSV tables in, [`PointCloud`] and [`OutcomeVector`] out.
//!
//! The first row is a header; columns are selected by name. A cell that does
//! not parse as a finite number (empty, `NA`, `NaN`, `Inf`, text) is a
//! missing value and is handled per [`NaPolicy`]. Only the selected columns
//! are inspected.

use std::fmt::Write as _;
use std::path::Path;

use tdabm_core::{OutcomeVector, PointCloud};

use crate::error::{Error, Result};
use crate::io::write_atomic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NaPolicy {
    /// Fail on the first missing value.
    #[default]
    Error,
    /// Drop rows with a missing value in any selected column. Remaining rows
    /// keep their order and are renumbered.
    DropRow,
}

#[derive(Debug, Clone, Copy)]
pub struct LoadOptions {
    pub delimiter: u8,
    pub na_policy: NaPolicy,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self {
            delimiter: b',',
            na_policy: NaPolicy::Error,
        }
    }
}

/// Reads the named columns, in the order given, as a point cloud.
pub fn read_columns(path: &Path, columns: &[String], opts: &LoadOptions) -> Result<PointCloud> {
    for (i, c) in columns.iter().enumerate() {
        if columns[..i].contains(c) {
            return Err(Error::DuplicateColumn(c.clone()));
        }
    }
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(opts.delimiter)
        .has_headers(true)
        .from_path(path)
        .map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::io(path, io),
            other => Error::Usage(format!("{}: {other:?}", path.display())),
        })?;
    let headers = reader.headers().map_err(csv_err)?.clone();
    let positions = columns
        .iter()
        .map(|c| {
            headers
                .iter()
                .position(|h| h.trim() == c)
                .ok_or_else(|| Error::UnknownColumn {
                    path: path.to_path_buf(),
                    column: c.clone(),
                    available: headers.iter().collect::<Vec<_>>().join(", "),
                })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut values = Vec::new();
    let mut row = Vec::with_capacity(columns.len());
    for record in reader.records() {
        let record = record.map_err(csv_err)?;
        row.clear();
        let mut missing = None;
        for (&pos, name) in positions.iter().zip(columns) {
            let cell = record.get(pos).unwrap_or("").trim();
            match cell.parse::<f64>() {
                Ok(v) if v.is_finite() => row.push(v),
                _ => {
                    missing = Some((name, cell));
                    break;
                }
            }
        }
        match (missing, opts.na_policy) {
            (None, _) => values.extend_from_slice(&row),
            (Some(_), NaPolicy::DropRow) => {}
            (Some((name, cell)), NaPolicy::Error) => {
                return Err(Error::NonNumeric {
                    path: path.to_path_buf(),
                    line: record.position().map_or(0, |p| p.line()),
                    column: name.clone(),
                    value: cell.to_string(),
                })
            }
        }
    }
    if values.is_empty() {
        return Err(match opts.na_policy {
            NaPolicy::DropRow => Error::EmptyAfterDrop(path.to_path_buf()),
            NaPolicy::Error => tdabm_core::Error::EmptyCloud {
                rows: 0,
                cols: columns.len(),
            }
            .into(),
        });
    }
    Ok(PointCloud::new(columns.to_vec(), values)?)
}

/// Loads axis columns and an outcome column with rows aligned.
pub fn load_table(
    path: &Path,
    axes: &[String],
    outcome: &str,
    opts: &LoadOptions,
) -> Result<(PointCloud, OutcomeVector)> {
    if axes.is_empty() {
        return Err(Error::Usage("at least one axis column is required".into()));
    }
    let mut all = axes.to_vec();
    all.push(outcome.to_string());
    let table = read_columns(path, &all, opts)?;
    let k = axes.len();
    let mut axis_values = Vec::with_capacity(table.len() * k);
    let mut y = Vec::with_capacity(table.len());
    for r in table.rows() {
        axis_values.extend_from_slice(&r[..k]);
        y.push(r[k]);
    }
    Ok((
        PointCloud::new(axes.to_vec(), axis_values)?,
        OutcomeVector::new(outcome, y)?,
    ))
}

/// Renders the cloud (and outcome, if any) as CSV. Numbers use the shortest
/// representation that parses back to the same `f64`.
pub fn table_to_csv(pc: &PointCloud, outcome: Option<&OutcomeVector>, delimiter: char) -> String {
    let mut out = String::new();
    let mut header: Vec<&str> = pc.column_names().iter().map(String::as_str).collect();
    if let Some(y) = outcome {
        header.push(y.name());
    }
    out.push_str(&header.join(&delimiter.to_string()));
    out.push('\n');
    for (i, row) in pc.rows().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if j > 0 {
                out.push(delimiter);
            }
            let _ = write!(out, "{v}");
        }
        if let Some(y) = outcome {
            let _ = write!(out, "{delimiter}{}", y.values()[i]);
        }
        out.push('\n');
    }
    out
}

pub fn write_table(path: &Path, pc: &PointCloud, outcome: Option<&OutcomeVector>) -> Result<()> {
    write_atomic(path, table_to_csv(pc, outcome, ',').as_bytes())
}
