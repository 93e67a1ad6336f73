//! The structure tensor on a small worked instance: three slots, three
//! loads, and the two supply vectors that separate "enough" from "not
//! enough".
//!
//! Slots are columns, loads are rows. Loads 1 and 2 can use any slot; load 3
//! only the first. One tensor element per way of discarding the best `k`
//! slots of each block; the class is nonempty exactly when no element is
//! negative.
//!
//! ```text
//! cargo run --example check_adequacy
//! ```

use gridfill::completion::{class_nonempty, Certificate, Feasibility};
use gridfill::matrix::SumMode;
use gridfill::tensor::{build_tensor, tails};
use gridfill::{Instance, PatternMatrix};

fn instance(supply: Vec<u32>) -> Instance {
    let pattern =
        PatternMatrix::from_rows(&[vec![1, 1, 1], vec![1, 1, 1], vec![1, 0, 0]]).unwrap();
    Instance::new(supply, vec![3, 1, 1], pattern).unwrap()
}

fn main() {
    for supply in [vec![2, 2, 1], vec![1, 2, 2]] {
        let inst = instance(supply.clone());
        println!("supply {supply:?}, demands [3, 1, 1], load 3 restricted to slot 1");

        // The pattern has two column blocks: {slot 1} and {slots 2, 3}.
        let desc = inst.description();
        println!("  column blocks: {}", desc.lambda());

        // The whole tensor is tiny here: 2 x 3 elements.
        let (normalized, _) = inst.normalized();
        let tensor = build_tensor(&normalized).unwrap();
        println!("  tensor dims {:?}, values {:?}", tensor.dims(), tensor.values());

        match class_nonempty(&inst, SumMode::Exact).unwrap() {
            Feasibility::Feasible => println!("  verdict: a member matrix exists\n"),
            Feasibility::Infeasible(Certificate::NegativeElement {
                index,
                value,
                supply_tail,
                demand_tail,
            }) => {
                println!("  verdict: empty class, witnessed by k = {index:?}");
                println!(
                    "    discarding the best {index:?} slots per block leaves {supply_tail} \
                     units of supply"
                );
                println!(
                    "    against {demand_tail} units of demand able to use the kept slots \
                     (element = {value})"
                );
                // The same numbers through the one-element API.
                assert_eq!(tails(&normalized, &index).unwrap(), (supply_tail, demand_tail));
                println!();
            }
            Feasibility::Infeasible(other) => println!("  verdict: empty class ({other:?})\n"),
        }
    }

    // Adequacy ignores leftover supply: serving all demands with column sums
    // *at most* the supply only requires the tensor to be non-negative, with
    // no totals condition.
    let surplus = instance(vec![3, 2, 2]);
    assert!(class_nonempty(&surplus, SumMode::AtMost).unwrap().is_feasible());
    assert!(!class_nonempty(&surplus, SumMode::Exact).unwrap().is_feasible());
    println!("supply [3, 2, 2] is more than enough: adequate, though exact sums are impossible");
}
