//! (0,1) pattern matrices, their block descriptions, and construction from
//! service windows.
//!
//! A pattern matrix marks which cells of a completion may be nonzero. All
//! feasibility machinery relies on its columns being identical within
//! contiguous blocks; [`describe`] finds the minimal such block structure for
//! an arbitrary matrix.

use std::ops::Range;

use crate::instance::Instance;
use crate::matrix::IntMatrix;
use crate::Error;

/// Dense row-major (0,1) matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl PatternMatrix {
    /// Builds a pattern from explicit rows; every entry must be 0 or 1 and the
    /// rows must have equal length.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self, Error> {
        let n = rows.len();
        let t = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n * t);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != t {
                return Err(Error::DimensionMismatch(format!(
                    "pattern row {} has length {}, expected {}",
                    i + 1,
                    row.len(),
                    t
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v > 1 {
                    return Err(Error::InvalidEntry(format!(
                        "pattern entry ({}, {}) is {}, must be 0 or 1",
                        i + 1,
                        j + 1,
                        v
                    )));
                }
                data.push(v);
            }
        }
        Ok(Self { rows: n, cols: t, data })
    }

    /// The all-zero pattern.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    /// The all-one pattern (no support restriction).
    pub fn ones(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![1; rows * cols] }
    }

    /// Builds the pattern of a family of service windows over shared special
    /// times `0 = T₀ < T₁ < … < T_λ`: row `n` has ones exactly in columns
    /// `T_arrival+1 ..= T_deadline` (1-based).
    pub fn from_services(specs: &[ServiceSpec], special_times: &[usize]) -> Result<Self, Error> {
        check_special_times(special_times)?;
        let lambda = special_times.len() - 1;
        let t = *special_times.last().unwrap();
        let mut rows = Vec::with_capacity(specs.len());
        for (n, spec) in specs.iter().enumerate() {
            if spec.arrival >= spec.deadline || spec.deadline > lambda {
                return Err(Error::InvalidService(format!(
                    "load {}: window must satisfy arrival < deadline <= {}, got ({}, {})",
                    n + 1,
                    lambda,
                    spec.arrival,
                    spec.deadline
                )));
            }
            let mut row = vec![0u8; t];
            row[special_times[spec.arrival]..special_times[spec.deadline]].fill(1);
            rows.push(row);
        }
        if rows.is_empty() {
            return Ok(Self::zeros(0, t));
        }
        Self::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at 0-based (row, col).
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.data[row * self.cols + col] == 1
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: u8) {
        debug_assert!(value <= 1);
        self.data[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    /// Number of ones in the whole matrix.
    pub fn ones_count(&self) -> u64 {
        self.data.iter().map(|&v| v as u64).sum()
    }

    /// Number of ones in a row.
    pub fn row_ones(&self, row: usize) -> u64 {
        self.row(row).iter().map(|&v| v as u64).sum()
    }

    /// Number of ones in a column.
    pub fn col_ones(&self, col: usize) -> u64 {
        (0..self.rows).filter(|&n| self.get(n, col)).count() as u64
    }

    fn cols_equal(&self, a: usize, b: usize) -> bool {
        (0..self.rows).all(|n| self.get(n, a) == self.get(n, b))
    }
}

fn check_special_times(special_times: &[usize]) -> Result<(), Error> {
    let ok = special_times.first() == Some(&0)
        && special_times.windows(2).all(|w| w[0] < w[1])
        && special_times.len() >= 2;
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidService(format!(
            "special times must start at 0 and strictly increase, got {special_times:?}"
        )))
    }
}

/// One deferrable service request: `duration` units wanted somewhere in the
/// window spanning blocks `arrival+1 ..= deadline` of a shared set of special
/// times, at most `ceiling` units per slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ServiceSpec {
    pub duration: u32,
    pub arrival: usize,
    pub deadline: usize,
    pub ceiling: u32,
}

impl ServiceSpec {
    /// Unit-rate request.
    pub fn new(duration: u32, arrival: usize, deadline: usize) -> Self {
        Self { duration, arrival, deadline, ceiling: 1 }
    }

    pub fn with_ceiling(duration: u32, arrival: usize, deadline: usize, ceiling: u32) -> Self {
        Self { duration, arrival, deadline, ceiling }
    }
}

/// Block boundaries `0 = T₀ < T₁ < … < T_λ = T` such that the columns of the
/// described pattern are identical within each block `(T_{i−1}, T_i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternDescription {
    special: Vec<usize>,
}

impl PatternDescription {
    /// The special column indices, starting with 0 and ending with `T`.
    pub fn special_indices(&self) -> &[usize] {
        &self.special
    }

    /// Number of blocks.
    pub fn lambda(&self) -> usize {
        self.special.len() - 1
    }

    /// 0-based column range of block `i`.
    pub fn block(&self, i: usize) -> Range<usize> {
        self.special[i]..self.special[i + 1]
    }

    pub fn width(&self, i: usize) -> usize {
        self.special[i + 1] - self.special[i]
    }

    /// Block containing 0-based column `col`.
    pub fn block_of(&self, col: usize) -> usize {
        debug_assert!(col < *self.special.last().unwrap());
        match self.special.binary_search(&(col + 1)) {
            Ok(i) => i - 1,
            Err(i) => i - 1,
        }
    }
}

/// Minimal block description of `pattern`: a boundary sits exactly where
/// adjacent columns differ.
pub fn describe(pattern: &PatternMatrix) -> PatternDescription {
    let t = pattern.cols();
    let mut special = vec![0];
    for j in 1..t {
        if !pattern.cols_equal(j - 1, j) {
            special.push(j);
        }
    }
    if t > 0 {
        special.push(t);
    }
    PatternDescription { special }
}

/// Column relabeling produced by [`normalize_blocks`]: `to_original(j)` is the
/// original position of normalized column `j`. Applying it to a solution of
/// the normalized instance yields a solution of the original one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnPermutation {
    to_original: Vec<usize>,
}

impl ColumnPermutation {
    pub fn identity(len: usize) -> Self {
        Self { to_original: (0..len).collect() }
    }

    pub fn to_original(&self, normalized_col: usize) -> usize {
        self.to_original[normalized_col]
    }

    /// Rearranges the columns of a normalized-instance matrix back into the
    /// original column order.
    pub fn restore_columns(&self, m: &IntMatrix) -> IntMatrix {
        let mut out = IntMatrix::zeros(m.rows(), m.cols());
        for n in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(n, self.to_original[j], m.get(n, j));
            }
        }
        out
    }

    /// Rearranges a per-column vector (supply, purchase profile) back into the
    /// original column order.
    pub fn restore_vector(&self, v: &[u32]) -> Vec<u32> {
        let mut out = vec![0; v.len()];
        for (j, &val) in v.iter().enumerate() {
            out[self.to_original[j]] = val;
        }
        out
    }
}

/// Sorts the supply non-increasingly inside every block, leaving the pattern
/// untouched — columns within a block are identical, so the classes of the
/// two instances are related by the returned column permutation.
pub fn normalize_blocks(inst: &Instance) -> (Instance, ColumnPermutation) {
    let desc = inst.description();
    let supply = inst.supply();
    let mut perm = Vec::with_capacity(supply.len());
    for i in 0..desc.lambda() {
        let block = desc.block(i);
        let mut idx: Vec<usize> = block.collect();
        // stable: equal supplies keep their original relative order
        idx.sort_by_key(|&j| std::cmp::Reverse(supply[j]));
        perm.extend(idx);
    }
    let new_supply: Vec<u32> = perm.iter().map(|&j| supply[j]).collect();
    (inst.replace_supply(new_supply), ColumnPermutation { to_original: perm })
}

/// Forces the given cells to one and removes them from the problem: each fixed
/// one decrements its row and column sum and zeroes its pattern cell. Adding
/// the fixed ones back to any member of the reduced class gives exactly the
/// members of the original class that contain them.
pub fn reduce_fixed_ones(
    supply: &[u32],
    demand: &[u32],
    pattern: &PatternMatrix,
    ones: &PatternMatrix,
) -> Result<Instance, Error> {
    if ones.rows() != pattern.rows() || ones.cols() != pattern.cols() {
        return Err(Error::DimensionMismatch(format!(
            "fixed ones are {}x{}, pattern is {}x{}",
            ones.rows(),
            ones.cols(),
            pattern.rows(),
            pattern.cols()
        )));
    }
    let mut new_supply = supply.to_vec();
    let mut new_demand = demand.to_vec();
    let mut new_pattern = pattern.clone();
    for (n, dem) in new_demand.iter_mut().enumerate() {
        for (j, sup) in new_supply.iter_mut().enumerate() {
            if !ones.get(n, j) {
                continue;
            }
            if !pattern.get(n, j) {
                return Err(Error::InvalidFixedOnes(format!(
                    "cell ({}, {}) is outside the pattern",
                    n + 1,
                    j + 1
                )));
            }
            if *dem == 0 {
                return Err(Error::InvalidFixedOnes(format!(
                    "row {} has more fixed ones than its row sum",
                    n + 1
                )));
            }
            if *sup == 0 {
                return Err(Error::InvalidFixedOnes(format!(
                    "column {} has more fixed ones than its column sum",
                    j + 1
                )));
            }
            *dem -= 1;
            *sup -= 1;
            new_pattern.set(n, j, 0);
        }
    }
    Instance::new(new_supply, new_demand, new_pattern)
}
