//! The point cloud `X` and outcome vector `Y`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// `N` points in `K` dimensions, stored row-major.
///
/// Row order is the input order and is significant: lowest-index landmark
/// selection walks rows in this order.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    values: Vec<f64>,
    rows: usize,
    column_names: Vec<String>,
}

impl PointCloud {
    /// Builds a cloud from row-major `values`; `values.len()` must be a
    /// multiple of the number of columns and every entry finite.
    pub fn new(column_names: Vec<String>, values: Vec<f64>) -> Result<Self> {
        let cols = column_names.len();
        if cols == 0 || values.is_empty() {
            return Err(Error::EmptyCloud {
                rows: values.len().checked_div(cols).unwrap_or(0),
                cols,
            });
        }
        if !values.len().is_multiple_of(cols) {
            return Err(Error::LengthMismatch {
                expected: (values.len() / cols + 1) * cols,
                actual: values.len(),
            });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / cols,
                col: pos % cols,
            });
        }
        let rows = values.len() / cols;
        Ok(Self {
            values,
            rows,
            column_names,
        })
    }

    pub fn from_rows(column_names: Vec<String>, rows: &[Vec<f64>]) -> Result<Self> {
        let cols = column_names.len();
        let mut values = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    actual: row.len(),
                });
            }
            values.extend_from_slice(row);
        }
        Self::new(column_names, values)
    }

    /// Number of points `N`.
    pub fn len(&self) -> usize {
        self.rows
    }

    /// Always false: a valid cloud has at least one row.
    pub fn is_empty(&self) -> bool {
        self.rows == 0
    }

    /// Number of axes `K`.
    pub fn dim(&self) -> usize {
        self.column_names.len()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let k = self.dim();
        &self.values[i * k..(i + 1) * k]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.values.chunks_exact(self.dim())
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().skip(j).step_by(self.dim()).copied()
    }

    pub fn column_names(&self) -> &[String] {
        &self.column_names
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.column_names.iter().position(|c| c == name)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Same points with rows reordered so that new row `i` is old row `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                actual: order.len(),
            });
        }
        let mut values = Vec::with_capacity(self.values.len());
        for &i in order {
            if i >= self.rows {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: self.rows,
                });
            }
            values.extend_from_slice(self.row(i));
        }
        Self::new(self.column_names.clone(), values)
    }
}

/// One finite real per row of the cloud.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeVector {
    name: String,
    values: Vec<f64>,
}

impl OutcomeVector {
    pub fn new(name: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        if let Some(row) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row, col: 0 });
        }
        Ok(Self {
            name: name.into(),
            values,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Column rescaling applied before covering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    #[default]
    None,
    /// `(x - min) / (max - min)`; constant columns become 0.
    MinMax,
    /// `(x - mean) / sd` with the sample (N-1) standard deviation; constant
    /// columns and single-row clouds become 0.
    ZScore,
}

pub fn normalize(pc: &PointCloud, method: Normalization) -> PointCloud {
    let k = pc.dim();
    let n = pc.len();
    let mut out = pc.values.clone();
    match method {
        Normalization::None => {}
        Normalization::MinMax => {
            for j in 0..k {
                let (lo, hi) = pc
                    .column(j)
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                        (lo.min(v), hi.max(v))
                    });
                let range = hi - lo;
                for i in 0..n {
                    let v = &mut out[i * k + j];
                    *v = if range > 0.0 { (*v - lo) / range } else { 0.0 };
                }
            }
        }
        Normalization::ZScore => {
            for j in 0..k {
                let mean = pc.column(j).sum::<f64>() / n as f64;
                let sd = if n > 1 {
                    let ss: f64 = pc.column(j).map(|v| (v - mean) * (v - mean)).sum();
                    libm::sqrt(ss / (n - 1) as f64)
                } else {
                    0.0
                };
                for i in 0..n {
                    let v = &mut out[i * k + j];
                    *v = if sd > 0.0 { (*v - mean) / sd } else { 0.0 };
                }
            }
        }
    }
    PointCloud {
        values: out,
        rows: n,
        column_names: pc.column_names.clone(),
    }
}

/// `sqrt(Σ (a_k - b_k)²)`, summed in axis order.
///
/// Every membership test in the crate goes through this function so that the
/// brute-force and grid paths agree bit for bit.
#[inline]
pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    let mut sum = 0.0;
    for (x, y) in a.iter().zip(b) {
        let d = x - y;
        sum += d * d;
    }
    libm::sqrt(sum)
}
