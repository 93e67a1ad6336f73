//! Problem instances: supply, demand, pattern, and optional per-row ceilings.

use crate::pattern::{describe, normalize_blocks, ColumnPermutation, PatternDescription, PatternMatrix, ServiceSpec};
use crate::Error;

/// Default cap on dense structure-tensor elements (count, not bytes).
pub const DEFAULT_TENSOR_CAP: u64 = 100_000_000;

/// One completion problem: find an N×T integer matrix with row sums `demand`,
/// column sums equal to (or bounded by) `supply`, support inside `pattern`,
/// and entries at most the per-row ceiling (1 when absent, i.e. a
/// (0,1)-matrix).
#[derive(Debug, Clone)]
pub struct Instance {
    supply: Vec<u32>,
    demand: Vec<u32>,
    pattern: PatternMatrix,
    ceilings: Option<Vec<u32>>,
    description: PatternDescription,
    tensor_cap: u64,
}

impl Instance {
    /// Unit-ceiling instance: members are (0,1)-matrices.
    pub fn new(supply: Vec<u32>, demand: Vec<u32>, pattern: PatternMatrix) -> Result<Self, Error> {
        Self::build(supply, demand, pattern, None)
    }

    /// Instance with per-row entry ceilings (all must be ≥ 1).
    pub fn with_ceilings(
        supply: Vec<u32>,
        demand: Vec<u32>,
        pattern: PatternMatrix,
        ceilings: Vec<u32>,
    ) -> Result<Self, Error> {
        if ceilings.len() != pattern.rows() {
            return Err(Error::DimensionMismatch(format!(
                "{} ceilings for {} rows",
                ceilings.len(),
                pattern.rows()
            )));
        }
        if let Some(n) = ceilings.iter().position(|&c| c == 0) {
            return Err(Error::InvalidEntry(format!(
                "ceiling of row {} is 0, must be at least 1",
                n + 1
            )));
        }
        let trivial = ceilings.iter().all(|&c| c == 1);
        Self::build(supply, demand, pattern, if trivial { None } else { Some(ceilings) })
    }

    /// Builds the instance of a family of service requests over shared special
    /// times: the pattern rows are the service windows, demands the requested
    /// durations, ceilings the per-slot rates. Fails fast if any single load
    /// could not be served even with unlimited supply (more units requested
    /// than `ceiling × window` slots can hold).
    pub fn from_services(
        specs: &[ServiceSpec],
        special_times: &[usize],
        supply: Vec<u32>,
    ) -> Result<Self, Error> {
        let pattern = PatternMatrix::from_services(specs, special_times)?;
        for (n, spec) in specs.iter().enumerate() {
            if spec.ceiling == 0 {
                return Err(Error::InvalidEntry(format!(
                    "ceiling of load {} is 0, must be at least 1",
                    n + 1
                )));
            }
            let window = pattern.row_ones(n);
            if (spec.duration as u64) > spec.ceiling as u64 * window {
                return Err(Error::InstanceUnsatisfiable { load: n + 1 });
            }
        }
        let demand = specs.iter().map(|s| s.duration).collect();
        let ceilings = specs.iter().map(|s| s.ceiling).collect();
        Self::with_ceilings(supply, demand, pattern, ceilings)
    }

    fn build(
        supply: Vec<u32>,
        demand: Vec<u32>,
        pattern: PatternMatrix,
        ceilings: Option<Vec<u32>>,
    ) -> Result<Self, Error> {
        if supply.len() != pattern.cols() {
            return Err(Error::DimensionMismatch(format!(
                "supply has {} entries, pattern has {} columns",
                supply.len(),
                pattern.cols()
            )));
        }
        if demand.len() != pattern.rows() {
            return Err(Error::DimensionMismatch(format!(
                "demand has {} entries, pattern has {} rows",
                demand.len(),
                pattern.rows()
            )));
        }
        let description = describe(&pattern);
        Ok(Self { supply, demand, pattern, ceilings, description, tensor_cap: DEFAULT_TENSOR_CAP })
    }

    /// Overrides the dense-tensor element cap for everything derived from this
    /// instance.
    pub fn with_tensor_cap(mut self, cap: u64) -> Self {
        self.tensor_cap = cap;
        self
    }

    pub fn tensor_cap(&self) -> u64 {
        self.tensor_cap
    }

    pub fn n_rows(&self) -> usize {
        self.pattern.rows()
    }

    pub fn n_cols(&self) -> usize {
        self.pattern.cols()
    }

    /// Column sums (time-slot supply), length T.
    pub fn supply(&self) -> &[u32] {
        &self.supply
    }

    /// Row sums (per-load demand), length N.
    pub fn demand(&self) -> &[u32] {
        &self.demand
    }

    pub fn pattern(&self) -> &PatternMatrix {
        &self.pattern
    }

    /// Minimal block description of the pattern, computed at construction.
    pub fn description(&self) -> &PatternDescription {
        &self.description
    }

    /// Per-row entry ceiling (1 unless set explicitly).
    pub fn ceiling(&self, row: usize) -> u32 {
        self.ceilings.as_ref().map_or(1, |c| c[row])
    }

    /// True when every ceiling is 1, i.e. members are (0,1)-matrices.
    pub fn has_unit_ceilings(&self) -> bool {
        self.ceilings.is_none()
    }

    pub fn supply_total(&self) -> u64 {
        self.supply.iter().map(|&v| v as u64).sum()
    }

    pub fn demand_total(&self) -> u64 {
        self.demand.iter().map(|&v| v as u64).sum()
    }

    /// Largest column sum any member can reach in column `j`:
    /// Σₙ ceilingₙ · F(n, j).
    pub fn col_capacity(&self, j: usize) -> u64 {
        (0..self.n_rows())
            .filter(|&n| self.pattern.get(n, j))
            .map(|n| self.ceiling(n) as u64)
            .sum()
    }

    /// Largest row sum any member can reach in row `n`:
    /// ceilingₙ · (ones in pattern row n).
    pub fn row_capacity(&self, n: usize) -> u64 {
        self.ceiling(n) as u64 * self.pattern.row_ones(n)
    }

    /// True when the supply is non-increasing inside every pattern block —
    /// the form the tensor formula is stated for.
    pub fn is_block_normalized(&self) -> bool {
        (0..self.description.lambda()).all(|i| {
            let block = self.description.block(i);
            self.supply[block].windows(2).all(|w| w[0] >= w[1])
        })
    }

    /// See [`normalize_blocks`].
    pub fn normalized(&self) -> (Instance, ColumnPermutation) {
        normalize_blocks(self)
    }

    /// Same instance with a different supply vector (same length).
    pub(crate) fn replace_supply(&self, supply: Vec<u32>) -> Instance {
        debug_assert_eq!(supply.len(), self.supply.len());
        Instance { supply, ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_checks() {
        let f = PatternMatrix::ones(2, 3);
        assert!(Instance::new(vec![1, 1], vec![1, 1], f.clone()).is_err());
        assert!(Instance::new(vec![1, 1, 1], vec![1], f.clone()).is_err());
        assert!(Instance::new(vec![1, 1, 1], vec![1, 2], f).is_ok());
    }

    #[test]
    fn ceilings_must_be_positive() {
        let f = PatternMatrix::ones(2, 2);
        assert!(Instance::with_ceilings(vec![1, 1], vec![1, 1], f.clone(), vec![1, 0]).is_err());
        let inst = Instance::with_ceilings(vec![1, 1], vec![1, 1], f, vec![2, 1]).unwrap();
        assert_eq!(inst.ceiling(0), 2);
        assert_eq!(inst.ceiling(1), 1);
        assert!(!inst.has_unit_ceilings());
    }

    #[test]
    fn all_unit_ceilings_collapse_to_none() {
        let f = PatternMatrix::ones(2, 2);
        let inst = Instance::with_ceilings(vec![1, 1], vec![1, 1], f, vec![1, 1]).unwrap();
        assert!(inst.has_unit_ceilings());
    }

    #[test]
    fn from_services_fails_fast_on_unservable_load() {
        // window of 2 slots at rate 2 holds at most 4 units
        let specs = [ServiceSpec::with_ceiling(5, 0, 1, 2)];
        let err = Instance::from_services(&specs, &[0, 2], vec![3, 3]).unwrap_err();
        assert_eq!(err, Error::InstanceUnsatisfiable { load: 1 });
        let specs = [ServiceSpec::with_ceiling(4, 0, 1, 2)];
        assert!(Instance::from_services(&specs, &[0, 2], vec![3, 3]).is_ok());
    }

    #[test]
    fn capacities() {
        let f = PatternMatrix::from_rows(&[vec![1, 1, 0], vec![1, 0, 0]]).unwrap();
        let inst =
            Instance::with_ceilings(vec![1, 1, 1], vec![2, 1], f, vec![3, 2]).unwrap();
        assert_eq!(inst.col_capacity(0), 5);
        assert_eq!(inst.col_capacity(1), 3);
        assert_eq!(inst.col_capacity(2), 0);
        assert_eq!(inst.row_capacity(0), 6);
        assert_eq!(inst.row_capacity(1), 2);
    }
}
