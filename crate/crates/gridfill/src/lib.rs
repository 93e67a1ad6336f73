//! Feasibility, completion, and supply planning for (0,1)- and bounded-integer
//! matrix classes with block-structured patterns.
//!
//! Given a column-sum vector `h`, a row-sum vector `r`, and a (0,1) pattern
//! matrix `F` whose columns are identical within contiguous blocks, this crate
//! decides whether a matrix with those margins and that support exists, builds
//! one when it does, and — in the energy-services reading, where columns are
//! time slots and rows are deferrable loads — computes a minimum-total extra
//! supply profile that makes every load servable.
//!
//! The decision procedure evaluates a small tensor of block-wise
//! supply/demand margins instead of solving a flow problem; one tensor element
//! per way of discarding the `k` best-supplied slots of each block. A
//! max-flow oracle is also provided, both as an independent cross-check and as
//! the fallback for patterns whose tensor would be too large.
//!
//! Run the examples to see each capability end to end:
//!
//! ```text
//! cargo run --example gale_ryser          # classic margin feasibility, conjugates
//! cargo run --example check_adequacy      # tensor feasibility and certificates
//! cargo run --example complete_matrix     # constructing a member matrix
//! cargo run --example purchase_planning   # minimal supply purchase, two algorithms
//! cargo run --example rate_constrained    # per-load rate ceilings, decomposition
//! cargo run --example flow_oracle         # network oracle, min cuts, DIMACS dump
//! ```
//!
//! The same operations are exposed by the `gridfill` binary (`check`,
//! `complete`, `purchase`, `decompose`, `oracle`, `bench`) working on JSON
//! instance files; see the README for the file format.

pub mod bench;
pub mod cli;
pub mod completion;
mod error;
pub mod flow;
pub mod instance;
pub mod io;
pub mod majorization;
pub mod matrix;
pub mod pattern;
pub mod services;
pub mod tensor;

pub use error::Error;
pub use instance::{Instance, DEFAULT_TENSOR_CAP};
pub use matrix::{IntMatrix, SumMode};
pub use pattern::{PatternDescription, PatternMatrix, ServiceSpec};
