//! Timing harness: the tensor check against the flow oracle on a synthetic
//! family of service instances.
//!
//! The family has three overlapping window kinds over a horizon split into
//! thirds — the whole horizon, the first two thirds, and the last two thirds —
//! so the pattern always normalizes to three column blocks no matter how many
//! loads there are. Loads cycle through the kinds with random rate ceilings
//! between 1 and 3. Supply is read off a random witness matrix, which makes
//! the base instances feasible by construction; stressed variants shuffle
//! supply units between slots (totals preserved) so the verdict is open.
//!
//! Every run cross-checks the two methods against each other: the tensor
//! deficit must equal the flow shortfall on every instance, or the run aborts.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::flow::{build_network, max_flow};
use crate::instance::Instance;
use crate::majorization::positive_part;
use crate::matrix::IntMatrix;
use crate::pattern::ServiceSpec;
use crate::tensor::min_element;

/// What to measure: sizes, horizon, seeding, repetitions.
#[derive(Debug, Clone)]
pub struct BenchConfig {
    /// Load counts to sweep.
    pub rows: Vec<usize>,
    /// Slots in the horizon (at least 3).
    pub cols: usize,
    /// Base seed; every (size, repetition) pair derives its own stream.
    pub seed: u64,
    /// Instances per size. Odd repetitions are stressed.
    pub reps: usize,
}

/// One timed measurement.
#[derive(Debug, Clone)]
pub struct BenchRecord {
    /// Loads in the instance.
    pub n: usize,
    /// Slots in the horizon.
    pub t: usize,
    /// `"tensor"` or `"flow"`.
    pub method: &'static str,
    /// Seconds per check, averaged over a few rounds.
    pub seconds: f64,
    /// The (agreed) adequacy verdict.
    pub feasible: bool,
}

/// Inner repetitions inside one timing window, to stay above clock noise.
const TIMING_ROUNDS: u32 = 5;

/// A random instance of the three-kind family, together with the witness
/// matrix its supply was read from. The witness is a member, so the instance
/// is feasible in both sum modes.
pub fn family_instance(
    n_rows: usize,
    n_cols: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(Instance, IntMatrix), Error> {
    if n_cols < 3 {
        return Err(Error::InvalidEntry(format!(
            "the bench family needs at least 3 slots, got {n_cols}"
        )));
    }
    let third = n_cols / 3;
    let times = [0, third, 2 * third, n_cols];
    // (arrival, deadline) index pairs into `times`, plus the slot range.
    let kinds =
        [(0usize, 3usize, 0usize, n_cols), (0, 2, 0, 2 * third), (1, 3, third, n_cols)];

    let mut witness = IntMatrix::zeros(n_rows, n_cols);
    let mut specs = Vec::with_capacity(n_rows);
    for row in 0..n_rows {
        let (arrival, deadline, lo, hi) = kinds[row % 3];
        let ceiling = rng.gen_range(1..=3u32);
        let mut duration = 0u32;
        for col in lo..hi {
            let v = rng.gen_range(0..=ceiling);
            witness.set(row, col, v);
            duration += v;
        }
        specs.push(ServiceSpec::with_ceiling(duration, arrival, deadline, ceiling));
    }
    let supply: Vec<u32> = (0..n_cols).map(|j| witness.col_sum(j) as u32).collect();
    let instance = Instance::from_services(&specs, &times, supply)?;
    Ok((instance, witness))
}

/// Moves `moves` supply units between random slots, keeping the total. The
/// result may or may not stay feasible — that is the point.
fn stress_supply(instance: &Instance, moves: usize, rng: &mut ChaCha8Rng) -> Instance {
    let mut supply = instance.supply().to_vec();
    for _ in 0..moves {
        let sources: Vec<usize> =
            (0..supply.len()).filter(|&j| supply[j] > 0).collect();
        let Some(&src) = sources.get(rng.gen_range(0..sources.len().max(1))) else {
            break;
        };
        let dst = rng.gen_range(0..supply.len());
        supply[src] -= 1;
        supply[dst] += 1;
    }
    instance.replace_supply(supply)
}

fn rng_for(seed: u64, n: usize, rep: usize) -> ChaCha8Rng {
    let stream = seed
        ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (rep as u64).wrapping_mul(0xD1B5_4A32_D192_ED03);
    ChaCha8Rng::seed_from_u64(stream)
}

/// Times both checks over the configured sweep. Two records per instance,
/// one per method. Fails if the methods ever disagree.
pub fn run(cfg: &BenchConfig) -> Result<Vec<BenchRecord>, Error> {
    let mut records = Vec::new();
    for &n in &cfg.rows {
        for rep in 0..cfg.reps {
            let mut rng = rng_for(cfg.seed, n, rep);
            let (instance, _) = family_instance(n, cfg.cols, &mut rng)?;
            let instance = if rep % 2 == 1 {
                stress_supply(&instance, 1 + n / 30, &mut rng)
            } else {
                instance
            };

            let start = Instant::now();
            let mut min_value = 0i64;
            for _ in 0..TIMING_ROUNDS {
                min_value = min_element(&instance)?.0;
            }
            let tensor_seconds = start.elapsed().as_secs_f64() / f64::from(TIMING_ROUNDS);

            let start = Instant::now();
            let mut flow_value = 0u64;
            for _ in 0..TIMING_ROUNDS {
                flow_value = max_flow(&build_network(&instance)).value;
            }
            let flow_seconds = start.elapsed().as_secs_f64() / f64::from(TIMING_ROUNDS);

            let demand_total: u64 = instance.demand().iter().map(|&r| u64::from(r)).sum();
            if positive_part(-min_value) != demand_total - flow_value {
                return Err(Error::Internal("tensor and flow disagree on a bench instance"));
            }
            let feasible = min_value >= 0;
            records.push(BenchRecord {
                n,
                t: cfg.cols,
                method: "tensor",
                seconds: tensor_seconds,
                feasible,
            });
            records.push(BenchRecord {
                n,
                t: cfg.cols,
                method: "flow",
                seconds: flow_seconds,
                feasible,
            });
        }
    }
    Ok(records)
}

/// Renders records as CSV with a `n,t,method,seconds,feasible` header.
pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from("n,t,method,seconds,feasible\n");
    for rec in records {
        out.push_str(&format!(
            "{},{},{},{:.9},{}\n",
            rec.n, rec.t, rec.method, rec.seconds, rec.feasible
        ));
    }
    out
}
