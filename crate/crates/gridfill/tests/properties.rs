//! Cross-module invariants, exercised through the public API only.

use gridfill::completion::{brute_force_enumerate, class_nonempty, complete, gale_ryser_check};
use gridfill::flow::{build_network, max_flow};
use gridfill::matrix::{validate_member, SumMode};
use gridfill::pattern::ServiceSpec;
use gridfill::services::{adequacy_gap, decompose_loads};
use gridfill::tensor::build_tensor;
use gridfill::{Instance, PatternMatrix};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_instance(rng: &mut ChaCha8Rng, max_ceiling: u32) -> Instance {
    let n = rng.gen_range(1..=5);
    let t = rng.gen_range(2..=6);
    let rows: Vec<Vec<u8>> = (0..n)
        .map(|_| (0..t).map(|_| rng.gen_range(0..=1)).collect())
        .collect();
    let pattern = PatternMatrix::from_rows(&rows).unwrap();
    let supply: Vec<u32> = (0..t).map(|_| rng.gen_range(0..5)).collect();
    let demand: Vec<u32> = (0..n).map(|_| rng.gen_range(0..6)).collect();
    if max_ceiling > 1 {
        let ceilings: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=max_ceiling)).collect();
        Instance::with_ceilings(supply, demand, pattern, ceilings).unwrap()
    } else {
        Instance::new(supply, demand, pattern).unwrap()
    }
}

/// An equal instance with different supply — the public way to do what the
/// crate does internally when it permutes supply into block order.
fn rebuild_with_supply(inst: &Instance, supply: Vec<u32>) -> Instance {
    let rows: Vec<Vec<u8>> =
        (0..inst.n_rows()).map(|r| inst.pattern().row(r).to_vec()).collect();
    let pattern = PatternMatrix::from_rows(&rows).unwrap();
    let ceilings = (0..inst.n_rows()).map(|r| inst.ceiling(r)).collect();
    Instance::with_ceilings(supply, inst.demand().to_vec(), pattern, ceilings).unwrap()
}

/// Moving a supply unit from a block's best slot to its worst (a pinch) can
/// only help: every tensor element grows or stays, so the gap never rises.
#[test]
fn pinching_supply_within_a_block_never_raises_the_gap() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut pinched_rounds = 0;
    while pinched_rounds < 300 {
        let inst = random_instance(&mut rng, 3);
        let (norm, _) = inst.normalized();
        let desc = norm.description().clone();
        let Some(i) = (0..desc.lambda()).find(|&i| {
            let b = desc.block(i);
            b.len() >= 2 && norm.supply()[b.start] > norm.supply()[b.end - 1]
        }) else {
            continue;
        };
        pinched_rounds += 1;
        let block = desc.block(i);
        let mut supply = norm.supply().to_vec();
        supply[block.start] -= 1;
        supply[block.end - 1] += 1;
        let pinched = rebuild_with_supply(&norm, supply);

        assert!(adequacy_gap(&pinched).unwrap() <= adequacy_gap(&norm).unwrap());

        // The stronger element-wise statement behind it.
        let before = build_tensor(&norm).unwrap();
        let (renorm, _) = pinched.normalized();
        let after = build_tensor(&renorm).unwrap();
        assert_eq!(before.dims(), after.dims());
        for (b, a) in before.values().iter().zip(after.values()) {
            assert!(a >= b, "pinch lowered an element on {norm:?}");
        }
    }
}

/// Permuting supply within a block relabels members one-to-one, so the number
/// of members is invariant.
#[test]
fn intra_block_supply_permutations_preserve_the_member_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..150 {
        // Kept small: the test enumerates every member.
        let n = rng.gen_range(1..=3);
        let t = rng.gen_range(2..=4);
        let rows: Vec<Vec<u8>> = (0..n)
            .map(|_| (0..t).map(|_| rng.gen_range(0..=1)).collect())
            .collect();
        let pattern = PatternMatrix::from_rows(&rows).unwrap();
        let supply: Vec<u32> = (0..t).map(|_| rng.gen_range(0..3)).collect();
        let demand: Vec<u32> = (0..n).map(|_| rng.gen_range(0..4)).collect();
        let ceilings: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=2)).collect();
        let inst = Instance::with_ceilings(supply, demand, pattern, ceilings).unwrap();

        let (norm, _) = inst.normalized();
        let desc = norm.description().clone();
        let mut reversed = norm.supply().to_vec();
        for i in 0..desc.lambda() {
            reversed[desc.block(i)].reverse();
        }
        let shuffled = rebuild_with_supply(&norm, reversed);

        for mode in [SumMode::Exact, SumMode::AtMost] {
            let a = brute_force_enumerate(&norm, mode, 3_000_000).unwrap().len();
            let b = brute_force_enumerate(&shuffled, mode, 3_000_000).unwrap().len();
            assert_eq!(a, b, "count changed under permutation of {norm:?}");
        }
    }
}

/// Completions of feasible instances are members, in both column modes.
#[test]
fn completions_validate() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for round in 0..400 {
        let inst = random_instance(&mut rng, if round % 2 == 0 { 1 } else { 3 });
        for mode in [SumMode::Exact, SumMode::AtMost] {
            if let Some(m) = complete(&inst, mode).unwrap().matrix() {
                validate_member(&inst, m, SumMode::Exact, mode).unwrap();
            }
        }
    }
}

/// Splitting every load into unit-rate pieces changes nothing: same gap, same
/// adequacy verdict.
#[test]
fn unit_rate_decomposition_preserves_gap_and_verdict() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for _ in 0..200 {
        let t = rng.gen_range(3..=8);
        let cut_a = rng.gen_range(1..=t - 2);
        let cut_b = rng.gen_range(cut_a + 1..=t - 1);
        let times = vec![0, cut_a, cut_b, t];
        let n = rng.gen_range(1..=4);
        let specs: Vec<ServiceSpec> = (0..n)
            .map(|_| {
                let arrival = rng.gen_range(0..3);
                let deadline = rng.gen_range(arrival + 1..=3);
                let ceiling = rng.gen_range(1..=3);
                let window = (times[deadline] - times[arrival]) as u32;
                let duration = rng.gen_range(0..=ceiling * window);
                ServiceSpec::with_ceiling(duration, arrival, deadline, ceiling)
            })
            .collect();
        let supply: Vec<u32> = (0..t).map(|_| rng.gen_range(0..4)).collect();
        let original = Instance::from_services(&specs, &times, supply.clone()).unwrap();

        let mut unit_specs = Vec::new();
        for (spec, pieces) in specs.iter().zip(decompose_loads(&specs).unwrap()) {
            for piece in pieces {
                for _ in 0..piece.multiplicity {
                    unit_specs.push(ServiceSpec::new(piece.duration, spec.arrival, spec.deadline));
                }
            }
        }
        let split = Instance::from_services(&unit_specs, &times, supply).unwrap();

        assert_eq!(adequacy_gap(&original).unwrap(), adequacy_gap(&split).unwrap());
        assert_eq!(
            class_nonempty(&original, SumMode::AtMost).unwrap().is_feasible(),
            class_nonempty(&split, SumMode::AtMost).unwrap().is_feasible()
        );
    }
}

proptest! {
    /// With an unrestricted pattern the tensor check, the classic margin
    /// criterion, and the flow oracle are the same predicate.
    #[test]
    fn full_pattern_three_way_equivalence(
        supply in prop::collection::vec(0u32..6, 1..6),
        demand in prop::collection::vec(0u32..6, 1..6),
    ) {
        let t = supply.len();
        let rows: Vec<Vec<u8>> = vec![vec![1; t]; demand.len()];
        let pattern = PatternMatrix::from_rows(&rows).unwrap();
        let inst = Instance::new(supply.clone(), demand.clone(), pattern).unwrap();

        let tensor_verdict = class_nonempty(&inst, SumMode::Exact).unwrap().is_feasible();
        let classic = gale_ryser_check(&supply, &demand);
        let flow_value = max_flow(&build_network(&inst)).value;
        let flow_verdict =
            flow_value == inst.demand_total() && inst.supply_total() == inst.demand_total();

        prop_assert_eq!(tensor_verdict, classic);
        prop_assert_eq!(tensor_verdict, flow_verdict);
    }

    /// The adequacy gap is exactly the flow shortfall, on any instance.
    #[test]
    fn gap_equals_flow_shortfall(seed in 0u64..2000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_instance(&mut rng, 3);
        let flow_value = max_flow(&build_network(&inst)).value;
        prop_assert_eq!(
            adequacy_gap(&inst).unwrap(),
            inst.demand_total() - flow_value
        );
    }
}
