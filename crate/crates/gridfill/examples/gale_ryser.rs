//! Classic margin feasibility: when do a column-sum vector and a row-sum
//! vector admit a (0,1)-matrix with no support restriction at all?
//!
//! The answer is the conjugate-partition test: the column sums must be
//! majorized by the conjugate of the row sums. This example walks through
//! the conjugate, the test, and the matching tensor verdict.
//!
//! ```text
//! cargo run --example gale_ryser
//! ```

use gridfill::completion::{class_nonempty, complete, gale_ryser_check};
use gridfill::majorization::{conjugate, is_majorized};
use gridfill::matrix::SumMode;
use gridfill::{Instance, PatternMatrix};

fn full_pattern_instance(supply: &[u32], demand: &[u32]) -> Instance {
    let rows = vec![vec![1u8; supply.len()]; demand.len()];
    let pattern = PatternMatrix::from_rows(&rows).unwrap();
    Instance::new(supply.to_vec(), demand.to_vec(), pattern).unwrap()
}

fn main() {
    // The conjugate partition: entry j counts how many demands are >= j.
    let demand = [5u32, 4, 2, 1];
    let conj = conjugate(&demand, 5);
    println!("demands        {demand:?}");
    println!("conjugate      {conj:?}");
    assert_eq!(conj, vec![4, 3, 2, 2, 1]);

    // A supply that the conjugate majorizes: a matrix exists.
    let good = [3u32, 3, 3, 2, 1];
    println!("\nsupply {good:?}: majorized by the conjugate? {}", is_majorized(&good, &conj));
    assert!(gale_ryser_check(&good, &demand));

    let inst = full_pattern_instance(&good, &demand);
    assert!(class_nonempty(&inst, SumMode::Exact).unwrap().is_feasible());
    let member = complete(&inst, SumMode::Exact).unwrap();
    println!("one member with those margins:");
    print!("{}", member.matrix().unwrap().to_csv());

    // Concentrating the same total into fewer columns breaks it: no column
    // of a (0,1)-matrix can exceed the number of rows.
    let bad = [5u32, 5, 2, 0, 0];
    println!("\nsupply {bad:?}: same total, but {}", verdict(&bad, &demand));
    assert!(!gale_ryser_check(&bad, &demand));

    // The tensor check agrees on both, as it must: with an unrestricted
    // pattern it collapses to exactly this criterion.
    let inst = full_pattern_instance(&bad, &demand);
    assert!(!class_nonempty(&inst, SumMode::Exact).unwrap().is_feasible());
    println!("\nthe tensor check agrees on both vectors");
}

fn verdict(supply: &[u32], demand: &[u32]) -> &'static str {
    if gale_ryser_check(supply, demand) {
        "a matrix exists"
    } else {
        "no matrix exists"
    }
}
