//! The independent max-flow oracle: the same feasibility question asked of a
//! coverage network, with minimum cuts as refusal certificates and a DIMACS
//! dump for external solvers.
//!
//! The tensor check and this oracle answer identically on every instance —
//! the tensor is the closed form of exactly these cuts — so either can audit
//! the other.
//!
//! ```text
//! cargo run --example flow_oracle
//! ```

use gridfill::flow::{build_network, extract_matrix, max_flow, min_cut};
use gridfill::matrix::{validate_member, SumMode};
use gridfill::services::adequacy_gap;
use gridfill::{Instance, PatternMatrix};

fn main() {
    // The worked instance with the under-provisioned supply: slot 1 holds
    // one unit where loads need more.
    let pattern =
        PatternMatrix::from_rows(&[vec![1, 1, 1], vec![1, 1, 1], vec![1, 0, 0]]).unwrap();
    let inst = Instance::new(vec![1, 2, 2], vec![3, 1, 1], pattern).unwrap();

    // Source -> slot (supply), slot -> load (rate within the window),
    // load -> sink (demand).
    let net = build_network(&inst);
    println!(
        "coverage network: {} nodes, {} arcs",
        net.n_nodes(),
        net.arcs().len()
    );

    let outcome = max_flow(&net);
    println!("max flow {} against total demand {}", outcome.value, inst.demand_total());
    assert_eq!(outcome.value, 4);

    // The shortfall is the adequacy gap the tensor check reports.
    assert_eq!(adequacy_gap(&inst).unwrap(), inst.demand_total() - outcome.value);

    // The minimum cut names the bottleneck: keeping only slot 1 (cut slots
    // are the ones whose supply is written off) strands demand.
    let cut = min_cut(&net);
    println!(
        "min cut: write off slots {:?}, loads {:?} keep their residual demand, capacity {}",
        cut.supply_side.iter().map(|j| j + 1).collect::<Vec<_>>(),
        cut.demand_side.iter().map(|n| n + 1).collect::<Vec<_>>(),
        cut.capacity
    );
    assert_eq!(cut.capacity, outcome.value);
    // The closed cut formula gives the same capacity from the index sets.
    assert_eq!(cut.formula_capacity(&inst), cut.capacity);

    // Even short of the demand, the flow is a best partial schedule.
    let partial = extract_matrix(&net, &outcome);
    println!("a best partial schedule ({} of {} units):", partial.total(), inst.demand_total());
    print!("{}", partial.to_csv());
    validate_member(&inst, &partial, SumMode::AtMost, SumMode::AtMost).unwrap();

    // The raw network, for external max-flow solvers.
    println!("\nDIMACS form:");
    print!("{}", net.to_dimacs());
}
