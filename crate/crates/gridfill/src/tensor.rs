//! The structure tensor: one element per way of discarding the `kᵢ`
//! best-supplied slots of each pattern block.
//!
//! For block boundaries `0 = T₀ < … < T_λ = T` and an index
//! `k = (k₁, …, k_λ)` with `kᵢ ∈ 0..=Tᵢ−Tᵢ₋₁`, the element is
//!
//! ```text
//! W_k = Σᵢ Σ_{j > Tᵢ₋₁+kᵢ}^{Tᵢ} h_j  −  Σₙ [rₙ − r̄ₙ · Σᵢ kᵢ F(n, Tᵢ)]⁺
//! ```
//!
//! i.e. the supply kept after the discard minus the demand that the discarded
//! slots could not have served anyway. The class of completions is nonempty
//! exactly when every element is nonnegative (plus equal totals for exact
//! column sums); the most negative element measures the shortfall. The
//! formulas assume the supply is non-increasing inside each block — see
//! [`crate::pattern::normalize_blocks`]; evaluation uses the instance as
//! given.
//!
//! Evaluation groups rows by (block membership, ceiling) and reads each
//! group's demand from histogram suffix sums, so one element costs
//! `O(λ + groups)` instead of `O(N)`.

use std::collections::HashMap;

use crate::instance::Instance;
use crate::Error;

/// Dense structure tensor in row-major order (first index slowest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTensor {
    dims: Vec<usize>,
    values: Vec<i64>,
    min_value: i64,
    min_index: Vec<usize>,
}

impl StructureTensor {
    /// Per-block extents `Tᵢ − Tᵢ₋₁ + 1`.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// All elements, row-major.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Element at a multi-index, if in range.
    pub fn get(&self, index: &[usize]) -> Option<i64> {
        if index.len() != self.dims.len() {
            return None;
        }
        let mut flat = 0usize;
        for (i, (&k, &d)) in index.iter().zip(&self.dims).enumerate() {
            if k >= d {
                return None;
            }
            let _ = i;
            flat = flat * d + k;
        }
        self.values.get(flat).copied()
    }

    pub fn min_value(&self) -> i64 {
        self.min_value
    }

    /// Lexicographically smallest index attaining the minimum.
    pub fn min_index(&self) -> &[usize] {
        &self.min_index
    }

    pub fn is_nonnegative(&self) -> bool {
        self.min_value >= 0
    }
}

/// Rows with the same block membership and ceiling share one demand histogram.
struct Group {
    member: Vec<bool>,
    ceiling: u64,
    /// count_ge[x] = rows in the group with demand ≥ x; sum_ge likewise sums
    /// their demands. Indexed 0..=max_demand+1.
    count_ge: Vec<u64>,
    sum_ge: Vec<u64>,
}

impl Group {
    /// Σ over the group of [r − ceiling·s_raw]⁺ where s_raw = Σ kᵢ over
    /// member blocks.
    #[inline]
    fn demand_tail(&self, s_raw: u64) -> u64 {
        let s = self.ceiling.saturating_mul(s_raw);
        let top = (self.count_ge.len() - 1) as u64;
        let idx = (s + 1).min(top) as usize;
        self.sum_ge[idx] - s * self.count_ge[idx]
    }
}

/// Reusable element evaluator; supply tails can be swapped per block, which
/// the purchase algorithms use to re-evaluate the gap after raising one block.
pub(crate) struct Evaluator {
    dims: Vec<usize>,
    /// tails[i][k] = supply kept in block i after discarding its first k slots.
    tails: Vec<Vec<u64>>,
    groups: Vec<Group>,
    cap: u64,
}

fn suffix_sums(values: &[u32]) -> Vec<u64> {
    let mut tails = vec![0u64; values.len() + 1];
    for k in (0..values.len()).rev() {
        tails[k] = tails[k + 1] + values[k] as u64;
    }
    tails
}

impl Evaluator {
    pub(crate) fn new(inst: &Instance) -> Self {
        let desc = inst.description();
        let lambda = desc.lambda();
        let mut dims = Vec::with_capacity(lambda);
        let mut tails = Vec::with_capacity(lambda);
        for i in 0..lambda {
            let block = desc.block(i);
            dims.push(block.len() + 1);
            tails.push(suffix_sums(&inst.supply()[block]));
        }
        let max_demand = inst.demand().iter().copied().max().unwrap_or(0) as usize;
        // group rows by (membership at each block's last column, ceiling)
        let mut index: HashMap<(Vec<bool>, u64), usize> = HashMap::new();
        let mut groups: Vec<Group> = Vec::new();
        let mut hists: Vec<Vec<u64>> = Vec::new();
        for n in 0..inst.n_rows() {
            let member: Vec<bool> = (0..lambda)
                .map(|i| inst.pattern().get(n, desc.block(i).end - 1))
                .collect();
            let ceiling = inst.ceiling(n) as u64;
            let gi = *index.entry((member.clone(), ceiling)).or_insert_with(|| {
                groups.push(Group { member, ceiling, count_ge: vec![], sum_ge: vec![] });
                hists.push(vec![0u64; max_demand + 1]);
                groups.len() - 1
            });
            hists[gi][inst.demand()[n] as usize] += 1;
        }
        for (group, hist) in groups.iter_mut().zip(&hists) {
            let mut count_ge = vec![0u64; max_demand + 2];
            let mut sum_ge = vec![0u64; max_demand + 2];
            for d in (0..=max_demand).rev() {
                count_ge[d] = count_ge[d + 1] + hist[d];
                sum_ge[d] = sum_ge[d + 1] + hist[d] * d as u64;
            }
            group.count_ge = count_ge;
            group.sum_ge = sum_ge;
        }
        Self { dims, tails, groups, cap: inst.tensor_cap() }
    }

    pub(crate) fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of elements, or an error when it exceeds the cap.
    pub(crate) fn checked_len(&self) -> Result<usize, Error> {
        let len: u128 = self.dims.iter().map(|&d| d as u128).product();
        if len > self.cap as u128 {
            return Err(Error::TensorTooLarge { elements: len, cap: self.cap });
        }
        Ok(len as usize)
    }

    /// Replaces the supply of one block. Values are already-widened because
    /// the purchase algorithms raise supplies past `u32` mid-computation; the
    /// slice must be sorted non-increasingly.
    pub(crate) fn set_block_supply(&mut self, i: usize, supply: &[u64]) {
        debug_assert_eq!(supply.len() + 1, self.dims[i]);
        debug_assert!(supply.windows(2).all(|w| w[0] >= w[1]));
        let mut tails = vec![0u64; supply.len() + 1];
        for k in (0..supply.len()).rev() {
            tails[k] = tails[k + 1] + supply[k];
        }
        self.tails[i] = tails;
    }

    #[inline]
    pub(crate) fn supply_tail(&self, index: &[usize]) -> u64 {
        index.iter().zip(&self.tails).map(|(&k, t)| t[k]).sum()
    }

    #[inline]
    pub(crate) fn demand_tail(&self, index: &[usize]) -> u64 {
        self.groups
            .iter()
            .map(|g| {
                let s_raw: u64 = index
                    .iter()
                    .zip(&g.member)
                    .filter(|(_, &m)| m)
                    .map(|(&k, _)| k as u64)
                    .sum();
                g.demand_tail(s_raw)
            })
            .sum()
    }

    #[inline]
    pub(crate) fn element(&self, index: &[usize]) -> i64 {
        self.supply_tail(index) as i64 - self.demand_tail(index) as i64
    }

    fn check_index(&self, index: &[usize]) -> Result<(), Error> {
        if index.len() != self.dims.len() {
            return Err(Error::IndexOutOfRange(format!(
                "index has {} components, tensor has {} blocks",
                index.len(),
                self.dims.len()
            )));
        }
        for (i, (&k, &d)) in index.iter().zip(&self.dims).enumerate() {
            if k >= d {
                return Err(Error::IndexOutOfRange(format!(
                    "component {} is {}, block allows 0..={}",
                    i + 1,
                    k,
                    d - 1
                )));
            }
        }
        Ok(())
    }

    /// Minimum element and its lexicographically smallest index, by full
    /// enumeration (cap-checked).
    pub(crate) fn min(&self) -> Result<(i64, Vec<usize>), Error> {
        self.checked_len()?;
        let mut index = vec![0usize; self.dims.len()];
        let mut best = self.element(&index);
        let mut best_index = index.clone();
        while advance(&mut index, &self.dims) {
            let v = self.element(&index);
            if v < best {
                best = v;
                best_index.copy_from_slice(&index);
            }
        }
        Ok((best, best_index))
    }
}

/// Lexicographic odometer; returns false after the last index.
fn advance(index: &mut [usize], dims: &[usize]) -> bool {
    for i in (0..index.len()).rev() {
        index[i] += 1;
        if index[i] < dims[i] {
            return true;
        }
        index[i] = 0;
    }
    false
}

/// One tensor element. The index must have one component per block, each at
/// most the block width.
pub fn tensor_element(inst: &Instance, index: &[usize]) -> Result<i64, Error> {
    let eval = Evaluator::new(inst);
    eval.check_index(index)?;
    Ok(eval.element(index))
}

/// Supply and demand tails of one element, separately (their difference is
/// the element).
pub fn tails(inst: &Instance, index: &[usize]) -> Result<(u64, u64), Error> {
    let eval = Evaluator::new(inst);
    eval.check_index(index)?;
    Ok((eval.supply_tail(index), eval.demand_tail(index)))
}

/// Materializes the whole tensor. Errors with [`Error::TensorTooLarge`] when
/// the element count exceeds the instance's cap; callers can fall back to the
/// flow oracle.
pub fn build_tensor(inst: &Instance) -> Result<StructureTensor, Error> {
    let eval = Evaluator::new(inst);
    let len = eval.checked_len()?;
    let dims = eval.dims().to_vec();
    let mut values = Vec::with_capacity(len);
    let mut index = vec![0usize; dims.len()];
    let mut min_value = i64::MAX;
    let mut min_index = index.clone();
    loop {
        let v = eval.element(&index);
        if v < min_value {
            min_value = v;
            min_index.copy_from_slice(&index);
        }
        values.push(v);
        if !advance(&mut index, &dims) {
            break;
        }
    }
    Ok(StructureTensor { dims, values, min_value, min_index })
}

/// Minimum element and its lexicographically smallest index without
/// materializing the tensor (same cap rules as [`build_tensor`]).
pub fn min_element(inst: &Instance) -> Result<(i64, Vec<usize>), Error> {
    Evaluator::new(inst).min()
}
