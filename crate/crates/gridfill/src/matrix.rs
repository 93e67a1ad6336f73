//! Dense integer matrices (completion outputs) and the constraint validator.

use crate::instance::Instance;
use crate::Error;

/// Dense row-major matrix of nonnegative integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self, Error> {
        let n = rows.len();
        let t = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n * t);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != t {
                return Err(Error::DimensionMismatch(format!(
                    "matrix row {} has length {}, expected {}",
                    i + 1,
                    row.len(),
                    t
                )));
            }
            data.extend_from_slice(row);
        }
        Ok(Self { rows: n, cols: t, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: u32) {
        self.data[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[u32] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn row_sum(&self, row: usize) -> u64 {
        self.row(row).iter().map(|&v| v as u64).sum()
    }

    pub fn col_sum(&self, col: usize) -> u64 {
        (0..self.rows).map(|n| self.get(n, col) as u64).sum()
    }

    pub fn total(&self) -> u64 {
        self.data.iter().map(|&v| v as u64).sum()
    }

    /// One CSV line per row, entries comma-separated, with a trailing newline
    /// (empty string for a zero-row matrix).
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for n in 0..self.rows {
            let line: Vec<String> = self.row(n).iter().map(u32::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

/// How a validated matrix must meet the instance sums: exactly, or from below.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumMode {
    Exact,
    AtMost,
}

/// Checks a candidate against an instance: entries must sit inside the pattern
/// and below the per-row ceiling, row sums must match the demand per
/// `row_mode`, column sums the supply per `col_mode`.
pub fn validate_member(
    inst: &Instance,
    m: &IntMatrix,
    row_mode: SumMode,
    col_mode: SumMode,
) -> Result<(), Error> {
    if m.rows() != inst.n_rows() || m.cols() != inst.n_cols() {
        return Err(Error::ConstraintViolation(format!(
            "matrix is {}x{}, instance is {}x{}",
            m.rows(),
            m.cols(),
            inst.n_rows(),
            inst.n_cols()
        )));
    }
    for n in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m.get(n, j);
            if v > 0 && !inst.pattern().get(n, j) {
                return Err(Error::ConstraintViolation(format!(
                    "entry ({}, {}) is {} but the pattern forbids it",
                    n + 1,
                    j + 1,
                    v
                )));
            }
            if v > inst.ceiling(n) {
                return Err(Error::ConstraintViolation(format!(
                    "entry ({}, {}) is {}, above the row ceiling {}",
                    n + 1,
                    j + 1,
                    v,
                    inst.ceiling(n)
                )));
            }
        }
    }
    for n in 0..m.rows() {
        let sum = m.row_sum(n);
        let want = inst.demand()[n] as u64;
        let ok = match row_mode {
            SumMode::Exact => sum == want,
            SumMode::AtMost => sum <= want,
        };
        if !ok {
            return Err(Error::ConstraintViolation(format!(
                "row {} sums to {}, demand is {}",
                n + 1,
                sum,
                want
            )));
        }
    }
    for j in 0..m.cols() {
        let sum = m.col_sum(j);
        let want = inst.supply()[j] as u64;
        let ok = match col_mode {
            SumMode::Exact => sum == want,
            SumMode::AtMost => sum <= want,
        };
        if !ok {
            return Err(Error::ConstraintViolation(format!(
                "column {} sums to {}, supply is {}",
                j + 1,
                sum,
                want
            )));
        }
    }
    Ok(())
}
