//! Loads with per-slot rate ceilings: building instances from service
//! windows, completing them with entries above 1, and splitting a fast load
//! into equivalent unit-rate pieces.
//!
//! ```text
//! cargo run --example rate_constrained
//! ```

use gridfill::completion::{complete, class_nonempty};
use gridfill::matrix::{validate_member, SumMode};
use gridfill::services::{adequacy_gap, decompose_load, decompose_loads};
use gridfill::{Error, Instance, ServiceSpec};

fn main() {
    // A horizon of 6 slots with shared special times 0, 2, 4, 6. Windows are
    // given as index pairs into those times: load 1 runs the whole horizon
    // at up to 3 units a slot, load 2 the last four slots at 1, load 3 the
    // first two at up to 2.
    let times = [0, 2, 4, 6];
    let loads = [
        ServiceSpec::with_ceiling(11, 0, 3, 3),
        ServiceSpec::with_ceiling(4, 1, 3, 1),
        ServiceSpec::with_ceiling(2, 0, 1, 2),
    ];
    let supply = vec![5, 2, 3, 3, 2, 2];
    let inst = Instance::from_services(&loads, &times, supply).unwrap();
    println!("3 loads over 6 slots, demands [11, 4, 2], rates [3, 1, 2]");
    println!("supply {:?}: gap = {}", inst.supply(), adequacy_gap(&inst).unwrap());

    // Adequate: a member uses entries up to each load's rate.
    let member = complete(&inst, SumMode::AtMost).unwrap();
    let m = member.matrix().expect("adequate");
    println!("a service schedule (rows = loads, columns = slots):");
    print!("{}", m.to_csv());
    validate_member(&inst, m, SumMode::Exact, SumMode::AtMost).unwrap();
    let top = (0..inst.n_cols()).map(|j| m.get(0, j)).max().unwrap();
    assert!(top > 1, "load 1 must use some slot faster than once");
    println!("load 1 peaks at {top} units in one slot, within its rate of 3");

    // A rate-c load is exactly c unit-rate loads over the same window: a
    // demand r = qc + p splits into p pieces of q+1 and c - p of q.
    println!("\nunit-rate split of each load:");
    for (n, pieces) in decompose_loads(&loads).unwrap().iter().enumerate() {
        let parts: Vec<String> = pieces
            .iter()
            .map(|p| format!("{} piece(s) of {}", p.multiplicity, p.duration))
            .collect();
        println!("  load {}: {}", n + 1, parts.join(" + "));
    }
    let split = decompose_load(&loads[0]).unwrap();
    assert_eq!(split.len(), 2); // 11 = 2*4 + 1*3 at rate 3
    assert_eq!((split[0].multiplicity, split[0].duration), (2, 4));
    assert_eq!((split[1].multiplicity, split[1].duration), (1, 3));

    // Splitting changes nothing about feasibility: rebuild with the pieces.
    let mut unit_loads = Vec::new();
    for (spec, pieces) in loads.iter().zip(decompose_loads(&loads).unwrap()) {
        for piece in pieces {
            for _ in 0..piece.multiplicity {
                unit_loads.push(ServiceSpec::new(piece.duration, spec.arrival, spec.deadline));
            }
        }
    }
    let split_inst = Instance::from_services(&unit_loads, &times, inst.supply().to_vec()).unwrap();
    assert_eq!(adequacy_gap(&split_inst).unwrap(), adequacy_gap(&inst).unwrap());
    assert_eq!(
        class_nonempty(&split_inst, SumMode::AtMost).unwrap().is_feasible(),
        class_nonempty(&inst, SumMode::AtMost).unwrap().is_feasible(),
    );
    println!("{} unit-rate pieces, same gap, same verdict", unit_loads.len());

    // A load that cannot fit its own window is rejected up front — no
    // amount of supply would help it.
    let impossible = [ServiceSpec::with_ceiling(5, 0, 1, 2)]; // 5 units, 2 slots, rate 2
    match Instance::from_services(&impossible, &[0, 2], vec![9, 9]) {
        Err(Error::InstanceUnsatisfiable { load }) => {
            println!("\nload {load} wants 5 units from 2 slots at rate 2: rejected up front");
        }
        other => unreachable!("expected the up-front rejection, got {other:?}"),
    }
}
