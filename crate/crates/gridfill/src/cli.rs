//! The `gridfill` command-line interface.
//!
//! Every subcommand reads a JSON instance file (see [`crate::io`]) and prints
//! its answer to stdout. Exit codes: `0` for a positive verdict or successful
//! output, `1` for an honest negative verdict (infeasible, inadequate, or a
//! load that cannot fit its own window), `2` for usage, file, or internal
//! errors.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::bench::{self, BenchConfig};
use crate::completion::{self, Certificate, CompletionResult, Feasibility};
use crate::error::Error;
use crate::flow;
use crate::instance::Instance;
use crate::io::{self, LoadedInstance};
use crate::matrix::SumMode;
use crate::services::{self, TieBreak};

#[derive(Debug, Parser)]
#[command(
    name = "gridfill",
    version,
    about = "feasibility, completion and supply planning for patterned integer matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide feasibility with the tensor check
    Check {
        /// Instance file (JSON)
        file: PathBuf,
        /// Require exact column sums, not just column sums within supply
        #[arg(long)]
        exact: bool,
        /// Override the dense-tensor element cap
        #[arg(long, value_name = "N")]
        tensor_cap: Option<u64>,
        /// Also write the instance's flow network in DIMACS format to PATH
        #[arg(long, value_name = "PATH")]
        dump_network: Option<PathBuf>,
    },
    /// Build a member matrix and print it as CSV
    Complete {
        /// Instance file (JSON)
        file: PathBuf,
        /// Write the matrix to PATH instead of stdout
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Override the dense-tensor element cap
        #[arg(long, value_name = "N")]
        tensor_cap: Option<u64>,
    },
    /// Plan a minimum-total supply purchase that serves every load
    Purchase {
        /// Instance file (JSON)
        file: PathBuf,
        /// Planner: 1 = slot sweep, 2 = valley fill
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        alg: u8,
        /// Break valley-fill ties with a seeded generator (only with --alg 2)
        #[arg(long)]
        seed: Option<u64>,
        /// Override the dense-tensor element cap
        #[arg(long, value_name = "N")]
        tensor_cap: Option<u64>,
    },
    /// Split rate-limited loads into equivalent unit-rate pieces
    Decompose {
        /// Instance file (JSON, service form)
        file: PathBuf,
    },
    /// Decide feasibility with the independent flow oracle
    Oracle {
        /// Instance file (JSON)
        file: PathBuf,
        /// Require exact column sums, not just column sums within supply
        #[arg(long)]
        exact: bool,
    },
    /// Time the tensor check against the flow oracle on a synthetic family
    Bench {
        /// Load counts to sweep
        #[arg(long, value_delimiter = ',', default_value = "30,300,3000")]
        rows: Vec<usize>,
        /// Slots in the horizon
        #[arg(long, default_value_t = 24)]
        cols: usize,
        /// Base seed for the instance generator
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instances per size (odd repetitions are stressed)
        #[arg(long, default_value_t = 3)]
        reps: usize,
        /// Write the CSV to PATH instead of stdout
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(Error::InstanceUnsatisfiable { load }) => {
            println!("unsatisfiable: load {load} cannot fit its own window at its rate");
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32, Error> {
    match cmd {
        Command::Check { file, exact, tensor_cap, dump_network } => {
            cmd_check(&file, exact, tensor_cap, dump_network.as_deref())
        }
        Command::Complete { file, out, tensor_cap } => {
            cmd_complete(&file, out.as_deref(), tensor_cap)
        }
        Command::Purchase { file, alg, seed, tensor_cap } => {
            cmd_purchase(&file, alg, seed, tensor_cap)
        }
        Command::Decompose { file } => cmd_decompose(&file),
        Command::Oracle { file, exact } => cmd_oracle(&file, exact),
        Command::Bench { rows, cols, seed, reps, csv } => {
            let cfg = BenchConfig { rows, cols, seed, reps };
            cmd_bench(&cfg, csv.as_deref())
        }
    }
}

/// The instance a verdict should be about: fixed ones peeled off, tensor cap
/// applied.
fn effective_instance(loaded: &LoadedInstance, cap: Option<u64>) -> Result<Instance, Error> {
    let mut inst = if loaded.fixed_ones.is_empty() {
        loaded.instance.clone()
    } else {
        eprintln!("note: verdict accounts for the file's {} fixed ones", loaded.fixed_ones.len());
        completion::reduce_for_ones(&loaded.instance, &loaded.fixed_ones)?
    };
    if let Some(cap) = cap {
        inst = inst.with_tensor_cap(cap);
    }
    Ok(inst)
}

fn reject_fixed_ones(loaded: &LoadedInstance, command: &str) -> Result<(), Error> {
    if loaded.fixed_ones.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidFixedOnes(format!("fixed ones do not apply to {command}")))
    }
}

fn write_file(path: &std::path::Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn one_based(indices: &[usize]) -> String {
    let parts: Vec<String> = indices.iter().map(|&i| (i + 1).to_string()).collect();
    parts.join(",")
}

fn print_certificate(cert: &Certificate) {
    match cert {
        Certificate::TotalsMismatch { supply_total, demand_total } => {
            println!("totals differ: supply={supply_total} demand={demand_total}");
        }
        Certificate::NegativeElement { index, value, supply_tail, demand_tail } => {
            let k: Vec<String> = index.iter().map(usize::to_string).collect();
            println!(
                "k=({}) supply_tail={supply_tail} demand_tail={demand_tail} value={value}",
                k.join(",")
            );
        }
        Certificate::FlowShortfall { value, demand_total, cut } => {
            println!("max_flow={value} demand={demand_total}");
            print_cut(cut);
        }
    }
}

fn print_cut(cut: &flow::CutCertificate) {
    println!(
        "cut: slots=[{}] loads=[{}] capacity={}",
        one_based(&cut.supply_side),
        one_based(&cut.demand_side),
        cut.capacity
    );
}

fn cmd_check(
    file: &std::path::Path,
    exact: bool,
    tensor_cap: Option<u64>,
    dump_network: Option<&std::path::Path>,
) -> Result<i32, Error> {
    let loaded = io::load_instance(file)?;
    let inst = effective_instance(&loaded, tensor_cap)?;
    if let Some(path) = dump_network {
        write_file(path, &flow::build_network(&inst).to_dimacs())?;
        eprintln!("wrote flow network to {}", path.display());
    }
    let mode = if exact { SumMode::Exact } else { SumMode::AtMost };
    match completion::class_nonempty(&inst, mode)? {
        Feasibility::Feasible => {
            println!("{}", if exact { "feasible" } else { "adequate" });
            Ok(0)
        }
        Feasibility::Infeasible(cert) => {
            println!("{}", if exact { "infeasible" } else { "inadequate" });
            print_certificate(&cert);
            Ok(1)
        }
    }
}

fn cmd_complete(
    file: &std::path::Path,
    out: Option<&std::path::Path>,
    tensor_cap: Option<u64>,
) -> Result<i32, Error> {
    let loaded = io::load_instance(file)?;
    let mut inst = loaded.instance.clone();
    if let Some(cap) = tensor_cap {
        inst = inst.with_tensor_cap(cap);
    }
    match completion::complete_with_ones(&inst, &loaded.fixed_ones, SumMode::AtMost)? {
        CompletionResult::Completed(m) => {
            let csv = m.to_csv();
            match out {
                Some(path) => {
                    write_file(path, &csv)?;
                    eprintln!(
                        "wrote a {}x{} member matrix to {}",
                        inst.n_rows(),
                        inst.n_cols(),
                        path.display()
                    );
                }
                None => print!("{csv}"),
            }
            Ok(0)
        }
        CompletionResult::Infeasible(cert) => {
            println!("infeasible");
            print_certificate(&cert);
            Ok(1)
        }
    }
}

fn cmd_purchase(
    file: &std::path::Path,
    alg: u8,
    seed: Option<u64>,
    tensor_cap: Option<u64>,
) -> Result<i32, Error> {
    let loaded = io::load_instance(file)?;
    reject_fixed_ones(&loaded, "purchase planning")?;
    let mut inst = loaded.instance.clone();
    if let Some(cap) = tensor_cap {
        inst = inst.with_tensor_cap(cap);
    }
    let gap = services::adequacy_gap(&inst)?;
    let profile = match alg {
        1 => {
            if seed.is_some() {
                eprintln!("note: --seed only affects --alg 2, ignoring it");
            }
            services::min_purchase_slot_sweep(&inst)?
        }
        2 => {
            let tie = seed.map_or(TieBreak::Deterministic, TieBreak::Seeded);
            services::min_purchase_valley_fill(&inst, tie)?
        }
        _ => unreachable!("clap restricts --alg to 1..=2"),
    };
    let additions: Vec<String> = profile.additions.iter().map(u64::to_string).collect();
    println!("gap={gap}");
    println!("additions={}", additions.join(","));
    println!("total={}", profile.total);
    Ok(0)
}

fn cmd_decompose(file: &std::path::Path) -> Result<i32, Error> {
    let loaded = io::load_instance(file)?;
    reject_fixed_ones(&loaded, "load decomposition")?;
    let (Some(specs), Some(times)) = (&loaded.specs, &loaded.times) else {
        return Err(Error::InvalidService(
            "decompose needs the service form (\"times\" and \"loads\")".into(),
        ));
    };
    let pieces = services::decompose_loads(specs)?;
    for (n, (spec, subs)) in specs.iter().zip(&pieces).enumerate() {
        let window = format!("slots {}..{}", times[spec.arrival] + 1, times[spec.deadline]);
        let parts: Vec<String> =
            subs.iter().map(|s| format!("{} x {}", s.multiplicity, s.duration)).collect();
        let split = if parts.is_empty() { "nothing".to_string() } else { parts.join(" + ") };
        println!("load {}: r={} rbar={} {} -> {}", n + 1, spec.duration, spec.ceiling, window, split);
    }
    Ok(0)
}

fn cmd_oracle(file: &std::path::Path, exact: bool) -> Result<i32, Error> {
    let loaded = io::load_instance(file)?;
    let inst = effective_instance(&loaded, None)?;
    let net = flow::build_network(&inst);
    let value = flow::max_flow(&net).value;
    let demand = inst.demand_total();
    let totals_ok = !exact || inst.supply_total() == demand;
    if value == demand && totals_ok {
        println!("{}", if exact { "feasible" } else { "adequate" });
        println!("max_flow={value} demand={demand}");
        Ok(0)
    } else {
        println!("{}", if exact { "infeasible" } else { "inadequate" });
        println!("max_flow={value} demand={demand}");
        if value < demand {
            print_cut(&flow::min_cut(&net));
        } else {
            println!("totals differ: supply={} demand={demand}", inst.supply_total());
        }
        Ok(1)
    }
}

fn cmd_bench(cfg: &BenchConfig, csv: Option<&std::path::Path>) -> Result<i32, Error> {
    let records = bench::run(cfg)?;
    let text = bench::to_csv(&records);
    match csv {
        Some(path) => {
            write_file(path, &text)?;
            eprintln!("wrote {} records to {}", records.len(), path.display());
        }
        None => print!("{text}"),
    }
    Ok(0)
}
