//! Supply planning for differentiated services: how much must be bought, and
//! in which slots, so that every request can be met.
//!
//! A supply is *adequate* when some member matrix serves every demand within
//! its window (column sums at most the supply). The *adequacy gap* is the
//! absolute value of the most negative structure-tensor element — zero
//! exactly for adequate supplies, and in general the number of units any
//! purchase must add. Both purchase planners return a per-slot addition
//! vector whose total equals the gap, which is therefore minimal:
//!
//! * [`min_purchase_slot_sweep`] walks the slots once, committing to each
//!   exactly the amount that still shrinks the gap;
//! * [`min_purchase_valley_fill`] tops up the lowest-supplied slots of each
//!   pattern block to a common level, which additionally makes the purchased
//!   supply as balanced as a minimum purchase can be.
//!
//! Both planners refuse instances where a single load exceeds its own
//! window's capacity — no finite purchase serves those.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::instance::Instance;
use crate::majorization::positive_part;
use crate::pattern::ServiceSpec;
use crate::tensor::{self, Evaluator};
use crate::{flow, Error};

/// A per-slot purchase: `additions[j]` extra units in original column `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PurchaseProfile {
    pub additions: Vec<u64>,
    pub total: u64,
}

/// How the valley-fill planner splits an amount across equally-good slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    /// Push leftovers toward each block's later slots.
    Deterministic,
    /// Pick uniformly among equivalent slots with a seeded generator.
    Seeded(u64),
}

/// How many units every purchase must add: `|min W|`, also `Σ rₙ` minus the
/// max flow. Falls back to the flow form when the tensor is over its element
/// cap.
pub fn adequacy_gap(inst: &Instance) -> Result<u64, Error> {
    let (norm, _) = inst.normalized();
    match tensor::min_element(&norm) {
        Ok((value, _)) => Ok(positive_part(-value)),
        Err(Error::TensorTooLarge { .. }) => {
            let net = flow::build_network(inst);
            Ok(inst.demand_total() - flow::max_flow(&net).value)
        }
        Err(e) => Err(e),
    }
}

/// True when the supply already serves every demand (gap zero).
pub fn is_adequate(inst: &Instance) -> Result<bool, Error> {
    Ok(adequacy_gap(inst)? == 0)
}

/// No purchase helps a load that outgrows its own window.
fn check_loads_purchasable(inst: &Instance) -> Result<(), Error> {
    for n in 0..inst.n_rows() {
        if inst.demand()[n] as u64 > inst.row_capacity(n) {
            return Err(Error::InstanceUnsatisfiable { load: n + 1 });
        }
    }
    Ok(())
}

/// Shared scratch for both planners: per-block supplies (widened to u64) of
/// the normalized instance, re-sorted on every change so the evaluator always
/// sees valid block tails.
struct Planner {
    eval: Evaluator,
    /// Current supply per block, in block-column order (not kept sorted).
    blocks: Vec<Vec<u64>>,
    /// Additions per block, parallel to `blocks`.
    added: Vec<Vec<u64>>,
}

impl Planner {
    fn new(norm: &Instance) -> Result<Self, Error> {
        let eval = Evaluator::new(norm);
        eval.checked_len()?;
        let desc = norm.description();
        let blocks: Vec<Vec<u64>> = (0..desc.lambda())
            .map(|i| norm.supply()[desc.block(i)].iter().map(|&h| h as u64).collect())
            .collect();
        let added = blocks.iter().map(|b| vec![0u64; b.len()]).collect();
        Ok(Self { eval, blocks, added })
    }

    fn gap(&self) -> Result<u64, Error> {
        Ok(positive_part(-self.eval.min()?.0))
    }

    /// Pushes block `i`'s current values into the evaluator, with `override_at`
    /// optionally substituting one slot's value first.
    fn sync_block(&mut self, i: usize, override_at: Option<(usize, u64)>) -> Result<u64, Error> {
        let mut sorted = self.blocks[i].clone();
        if let Some((pos, value)) = override_at {
            sorted[pos] = value;
        }
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        self.eval.set_block_supply(i, &sorted);
        self.gap()
    }

    /// Flattens additions back to original column order.
    fn into_profile(self, inst: &Instance) -> PurchaseProfile {
        let (_, perm) = inst.normalized();
        let desc = inst.description();
        let mut additions = vec![0u64; inst.n_cols()];
        let mut j = 0;
        for i in 0..desc.lambda() {
            for pos in 0..self.added[i].len() {
                additions[perm.to_original(j)] = self.added[i][pos];
                j += 1;
            }
        }
        let total = additions.iter().sum();
        PurchaseProfile { additions, total }
    }
}

/// Minimum purchase by a single sweep over the slots: tentatively raise each
/// slot by the whole remaining gap (capped at what the slot's column can ever
/// serve), keep only the part that actually shrank the gap, and stop at zero.
/// The total committed telescopes to the initial gap, which no purchase can
/// beat.
pub fn min_purchase_slot_sweep(inst: &Instance) -> Result<PurchaseProfile, Error> {
    check_loads_purchasable(inst)?;
    let (norm, _) = inst.normalized();
    let desc = norm.description().clone();
    let mut planner = Planner::new(&norm)?;
    let mut gap = planner.gap()?;
    'sweep: for i in 0..desc.lambda() {
        for pos in 0..planner.blocks[i].len() {
            if gap == 0 {
                break 'sweep;
            }
            let current = planner.blocks[i][pos];
            let cap = norm.col_capacity(desc.block(i).start + pos);
            let tentative = current.max((current + gap).min(cap));
            if tentative == current {
                continue;
            }
            let lowered = planner.sync_block(i, Some((pos, tentative)))?;
            let commit = gap - lowered;
            planner.blocks[i][pos] += commit;
            planner.added[i][pos] += commit;
            gap = planner.sync_block(i, None)?;
            debug_assert_eq!(gap, lowered, "committed raise must land on the probed gap");
        }
    }
    if gap > 0 {
        return Err(Error::Internal("slot sweep left a positive gap on purchasable loads"));
    }
    Ok(planner.into_profile(inst))
}

/// Units needed to raise every slot of `block` to `level`.
fn fill_cost(block: &[u64], level: u64) -> u64 {
    block.iter().map(|&v| level.saturating_sub(v)).sum()
}

/// Smallest level whose fill cost reaches `target` (`target ≥ 1`).
fn level_reaching(block: &[u64], target: u64) -> u64 {
    let mut lo = 0u64;
    let mut hi = block.iter().copied().max().unwrap_or(0) + target;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if fill_cost(block, mid) >= target {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Largest level whose fill cost stays within `budget`.
fn level_within(block: &[u64], budget: u64) -> u64 {
    let mut lo = 0u64;
    let mut hi = block.iter().copied().max().unwrap_or(0) + budget;
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if fill_cost(block, mid) <= budget {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// Picks `count` distinct entries of `pool`, honoring the tie-break: the
/// deterministic rule takes the last ones (the latest slots).
fn pick_slots(pool: &[usize], count: usize, rng: &mut Option<ChaCha8Rng>) -> Vec<usize> {
    match rng {
        None => pool[pool.len() - count..].to_vec(),
        Some(rng) => rand::seq::index::sample(rng, pool.len(), count)
            .iter()
            .map(|i| pool[i])
            .collect(),
    }
}

/// Minimum purchase by valley-filling the blocks in order: raise each block's
/// lowest slots toward a common level, spending on block `i` exactly the part
/// of the gap that later blocks cannot absorb. Spends the same total as the
/// slot sweep — the gap — but keeps each block's purchased supply as balanced
/// as possible, which is the (unique) majorization-minimal way to spend it.
pub fn min_purchase_valley_fill(inst: &Instance, tie: TieBreak) -> Result<PurchaseProfile, Error> {
    check_loads_purchasable(inst)?;
    let (norm, _) = inst.normalized();
    let desc = norm.description().clone();
    let mut planner = Planner::new(&norm)?;
    let mut gap = planner.gap()?;
    let mut rng = match tie {
        TieBreak::Deterministic => None,
        TieBreak::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    for i in 0..desc.lambda() {
        if gap == 0 {
            break;
        }
        // would filling this block with the whole gap close it?
        let level = level_reaching(&planner.blocks[i], gap);
        let filled: Vec<u64> = planner.blocks[i].iter().map(|&v| v.max(level)).collect();
        let mut sorted = filled.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        planner.eval.set_block_supply(i, &sorted);
        let leftover = planner.gap()?;

        let spend = gap - leftover;
        if spend > 0 {
            if leftover == 0 {
                // exact valley fill with budget `spend`: level `level`, minus
                // one unit on `overshoot` of the raised slots
                let raised: Vec<usize> = (0..filled.len())
                    .filter(|&p| planner.blocks[i][p] < level)
                    .collect();
                let overshoot = (fill_cost(&planner.blocks[i], level) - spend) as usize;
                let spare = raised.len() - overshoot;
                for &p in &pick_slots(&raised, spare, &mut rng) {
                    planner.added[i][p] = level - planner.blocks[i][p];
                }
                for p in raised {
                    if planner.added[i][p] == 0 && level - 1 > planner.blocks[i][p] {
                        planner.added[i][p] = level - 1 - planner.blocks[i][p];
                    }
                }
            } else {
                // fill to the largest level the budget covers, then one more
                // unit on `rem` slots of that level set
                let level = level_within(&planner.blocks[i], spend);
                let rem = (spend - fill_cost(&planner.blocks[i], level)) as usize;
                for p in 0..planner.blocks[i].len() {
                    if planner.blocks[i][p] < level {
                        planner.added[i][p] = level - planner.blocks[i][p];
                    }
                }
                if rem > 0 {
                    let level_set: Vec<usize> = (0..planner.blocks[i].len())
                        .filter(|&p| planner.blocks[i][p] <= level)
                        .collect();
                    for &p in &pick_slots(&level_set, rem, &mut rng) {
                        planner.added[i][p] += 1;
                    }
                }
            }
            for p in 0..planner.blocks[i].len() {
                planner.blocks[i][p] += planner.added[i][p];
            }
        }
        gap = planner.sync_block(i, None)?;
        debug_assert_eq!(gap, leftover, "exact in-block spend must land on the probed gap");
    }
    if gap > 0 {
        return Err(Error::Internal("valley fill left a positive gap on purchasable loads"));
    }
    Ok(planner.into_profile(inst))
}

/// One unit-rate piece of a decomposed load.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubLoad {
    pub duration: u32,
    pub arrival: usize,
    pub deadline: usize,
    pub multiplicity: u32,
}

/// Splits a rate-`c` load into `c` unit-rate loads over the same window: a
/// duration `r = qc + p` becomes `p` subloads of duration `q + 1` and
/// `c − p` of duration `q` (zero-duration pieces are dropped). Serving the
/// pieces is exactly as hard as serving the original.
pub fn decompose_load(spec: &ServiceSpec) -> Result<Vec<SubLoad>, Error> {
    if spec.ceiling == 0 {
        return Err(Error::InvalidService("a load's slot ceiling must be at least 1".into()));
    }
    let (q, p) = (spec.duration / spec.ceiling, spec.duration % spec.ceiling);
    let mut out = Vec::new();
    if p > 0 {
        out.push(SubLoad {
            duration: q + 1,
            arrival: spec.arrival,
            deadline: spec.deadline,
            multiplicity: p,
        });
    }
    if q > 0 && spec.ceiling > p {
        out.push(SubLoad {
            duration: q,
            arrival: spec.arrival,
            deadline: spec.deadline,
            multiplicity: spec.ceiling - p,
        });
    }
    Ok(out)
}

/// [`decompose_load`] for a whole family, one list per load.
pub fn decompose_loads(specs: &[ServiceSpec]) -> Result<Vec<Vec<SubLoad>>, Error> {
    specs.iter().map(decompose_load).collect()
}
