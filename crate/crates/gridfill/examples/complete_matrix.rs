//! Building a member matrix, not just deciding that one exists — including
//! steering the construction by fixing chosen cells to 1.
//!
//! ```text
//! cargo run --example complete_matrix
//! ```

use gridfill::completion::{complete, complete_with_ones, CompletionResult};
use gridfill::matrix::{validate_member, SumMode};
use gridfill::{Instance, PatternMatrix};

fn main() {
    let pattern =
        PatternMatrix::from_rows(&[vec![1, 1, 1], vec![1, 1, 1], vec![1, 0, 0]]).unwrap();
    let inst = Instance::new(vec![2, 2, 1], vec![3, 1, 1], pattern).unwrap();

    // The greedy construction works row-demand first and proves each cell it
    // zeroes, so the member comes out deterministic.
    let member = complete(&inst, SumMode::Exact).unwrap();
    let m = member.matrix().expect("this instance is feasible");
    println!("a member with column sums [2, 2, 1] and row sums [3, 1, 1]:");
    print!("{}", m.to_csv());
    validate_member(&inst, m, SumMode::Exact, SumMode::Exact).unwrap();

    // Completions can be pinned: force cell (row 2, slot 2) to 1. Cells are
    // 0-based here in the API.
    match complete_with_ones(&inst, &[(1, 1)], SumMode::Exact).unwrap() {
        CompletionResult::Completed(pinned) => {
            println!("\nwith cell (2, 2) pinned to 1:");
            print!("{}", pinned.to_csv());
            assert_eq!(pinned.get(1, 1), 1);
            validate_member(&inst, &pinned, SumMode::Exact, SumMode::Exact).unwrap();
        }
        CompletionResult::Infeasible(cert) => unreachable!("feasible pin: {cert:?}"),
    }

    // Pinning (2, 1) instead starves load 3, which can only use slot 1 —
    // the refusal comes with a certificate for the reduced problem.
    match complete_with_ones(&inst, &[(1, 0)], SumMode::Exact).unwrap() {
        CompletionResult::Completed(_) => unreachable!("this pin is impossible"),
        CompletionResult::Infeasible(cert) => {
            println!("\npinning cell (2, 1) is impossible: {cert:?}");
        }
    }

    // Surplus supply: columns only need to stay within it.
    let pattern = PatternMatrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
    let slack = Instance::new(vec![2, 2, 2], vec![2, 1], pattern).unwrap();
    let m = complete(&slack, SumMode::AtMost).unwrap();
    let m = m.matrix().expect("adequate");
    println!("\nserving demands [2, 1] out of supply [2, 2, 2] (columns within supply):");
    print!("{}", m.to_csv());
    validate_member(&slack, m, SumMode::Exact, SumMode::AtMost).unwrap();
}
