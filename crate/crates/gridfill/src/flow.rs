//! Max-flow oracle for the same feasibility questions the tensor answers.
//!
//! The network has one node per column and per row between a source and a
//! sink: `source → column j` with capacity `h_j`, `column j → row n` with
//! capacity `r̄ₙ` wherever `F(n,j) = 1`, and `row n → sink` with capacity
//! `rₙ`. Demands are coverable exactly when the max flow saturates every
//! sink arc, and a max flow's middle arcs read off a member matrix. The
//! min cut complements a negative verdict: its capacity equals the max flow,
//! so it certifies how much demand must go unserved.
//!
//! Arc order is canonical — all source arcs (by column), then the middle
//! arcs row-major, then all sink arcs (by row) — and is shared by
//! [`FlowOutcome::arc_flow`] and the DIMACS export.

use crate::instance::Instance;
use crate::matrix::IntMatrix;

/// One directed arc with its original capacity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub capacity: u64,
}

/// Bipartite coverage network for one instance. Node ids: source `0`,
/// columns `1..=T`, rows `T+1..=T+N`, sink `T+N+1`.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    n_rows: usize,
    n_cols: usize,
    arcs: Vec<Arc>,
    /// (row, col) of each middle arc, parallel to `arcs[n_cols..]`.
    middle_cells: Vec<(usize, usize)>,
}

impl FlowNetwork {
    pub fn source(&self) -> usize {
        0
    }

    pub fn col_node(&self, j: usize) -> usize {
        1 + j
    }

    pub fn row_node(&self, n: usize) -> usize {
        1 + self.n_cols + n
    }

    pub fn sink(&self) -> usize {
        1 + self.n_cols + self.n_rows
    }

    pub fn n_nodes(&self) -> usize {
        self.n_cols + self.n_rows + 2
    }

    /// Arcs in canonical order: source, middle (row-major), sink.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// DIMACS max-flow format with 1-based node ids.
    pub fn to_dimacs(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        writeln!(out, "c coverage network: {} slots, {} loads", self.n_cols, self.n_rows)
            .unwrap();
        writeln!(out, "p max {} {}", self.n_nodes(), self.arcs.len()).unwrap();
        writeln!(out, "n 1 s").unwrap();
        writeln!(out, "n {} t", self.n_nodes()).unwrap();
        for arc in &self.arcs {
            writeln!(out, "a {} {} {}", arc.from + 1, arc.to + 1, arc.capacity).unwrap();
        }
        out
    }
}

/// Builds the coverage network of an instance.
pub fn build_network(inst: &Instance) -> FlowNetwork {
    let (n_rows, n_cols) = (inst.n_rows(), inst.n_cols());
    let mut arcs = Vec::with_capacity(n_rows + n_cols);
    let mut middle_cells = Vec::new();
    let sink = 1 + n_cols + n_rows;
    for j in 0..n_cols {
        arcs.push(Arc { from: 0, to: 1 + j, capacity: inst.supply()[j] as u64 });
    }
    for n in 0..n_rows {
        for j in 0..n_cols {
            if inst.pattern().get(n, j) {
                arcs.push(Arc {
                    from: 1 + j,
                    to: 1 + n_cols + n,
                    capacity: inst.ceiling(n) as u64,
                });
                middle_cells.push((n, j));
            }
        }
    }
    for n in 0..n_rows {
        arcs.push(Arc { from: 1 + n_cols + n, to: sink, capacity: inst.demand()[n] as u64 });
    }
    FlowNetwork { n_rows, n_cols, arcs, middle_cells }
}

/// A max flow: total value plus per-arc flow in canonical arc order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowOutcome {
    pub value: u64,
    pub arc_flow: Vec<u64>,
}

/// A minimum cut, described by the two index sets the closed cut formula
/// takes: `supply_side` holds the columns grouped with the source (their
/// supply arcs do not cross) and `demand_side` the rows grouped with the
/// sink (their demand arcs do not cross). The capacity is
///
/// ```text
/// Σ_{j ∉ supply_side} h_j + Σ_{n ∉ demand_side} rₙ
///   + Σ_{n ∈ demand_side, j ∈ supply_side, F(n,j)=1} r̄ₙ
/// ```
///
/// and always equals the max flow value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutCertificate {
    pub supply_side: Vec<usize>,
    pub demand_side: Vec<usize>,
    pub capacity: u64,
}

impl CutCertificate {
    /// Recomputes the capacity from the closed formula over the index sets.
    pub fn formula_capacity(&self, inst: &Instance) -> u64 {
        let mut in_m = vec![false; inst.n_cols()];
        for &j in &self.supply_side {
            in_m[j] = true;
        }
        let mut in_l = vec![false; inst.n_rows()];
        for &n in &self.demand_side {
            in_l[n] = true;
        }
        let mut cap = 0u64;
        for (j, &written_off) in in_m.iter().enumerate() {
            if !written_off {
                cap += inst.supply()[j] as u64;
            }
        }
        for (n, &kept_demand) in in_l.iter().enumerate() {
            if !kept_demand {
                cap += inst.demand()[n] as u64;
            } else {
                for (j, &discarded) in in_m.iter().enumerate() {
                    if discarded && inst.pattern().get(n, j) {
                        cap += inst.ceiling(n) as u64;
                    }
                }
            }
        }
        cap
    }
}

/// Dinic solver state over paired residual arcs (`2e` forward, `2e+1` back).
struct Dinic {
    to: Vec<usize>,
    cap: Vec<u64>,
    adj: Vec<Vec<u32>>,
    level: Vec<u32>,
    iter: Vec<usize>,
    source: usize,
    sink: usize,
}

const UNREACHED: u32 = u32::MAX;

impl Dinic {
    fn new(net: &FlowNetwork) -> Self {
        let nodes = net.n_nodes();
        let mut d = Dinic {
            to: Vec::with_capacity(net.arcs.len() * 2),
            cap: Vec::with_capacity(net.arcs.len() * 2),
            adj: vec![Vec::new(); nodes],
            level: vec![UNREACHED; nodes],
            iter: vec![0; nodes],
            source: net.source(),
            sink: net.sink(),
        };
        for arc in &net.arcs {
            d.adj[arc.from].push(d.to.len() as u32);
            d.to.push(arc.to);
            d.cap.push(arc.capacity);
            d.adj[arc.to].push(d.to.len() as u32);
            d.to.push(arc.from);
            d.cap.push(0);
        }
        d
    }

    fn bfs(&mut self) -> bool {
        self.level.fill(UNREACHED);
        self.level[self.source] = 0;
        let mut queue = std::collections::VecDeque::from([self.source]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.adj[v] {
                let w = self.to[e as usize];
                if self.cap[e as usize] > 0 && self.level[w] == UNREACHED {
                    self.level[w] = self.level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        self.level[self.sink] != UNREACHED
    }

    fn dfs(&mut self, v: usize, limit: u64) -> u64 {
        if v == self.sink {
            return limit;
        }
        while self.iter[v] < self.adj[v].len() {
            let e = self.adj[v][self.iter[v]] as usize;
            let w = self.to[e];
            if self.cap[e] > 0 && self.level[w] == self.level[v] + 1 {
                let pushed = self.dfs(w, limit.min(self.cap[e]));
                if pushed > 0 {
                    self.cap[e] -= pushed;
                    self.cap[e ^ 1] += pushed;
                    return pushed;
                }
            }
            self.iter[v] += 1;
        }
        0
    }

    fn run(&mut self) -> u64 {
        let mut value = 0;
        while self.bfs() {
            self.iter.fill(0);
            loop {
                let pushed = self.dfs(self.source, u64::MAX);
                if pushed == 0 {
                    break;
                }
                value += pushed;
            }
        }
        value
    }

    /// Nodes reachable from the source in the residual graph (call after
    /// `run`; this is the source side of a minimum cut).
    fn source_side(&self) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[self.source] = true;
        let mut queue = std::collections::VecDeque::from([self.source]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.adj[v] {
                let w = self.to[e as usize];
                if self.cap[e as usize] > 0 && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }
}

/// Computes a maximum flow (Dinic's algorithm).
pub fn max_flow(net: &FlowNetwork) -> FlowOutcome {
    let mut dinic = Dinic::new(net);
    let value = dinic.run();
    let arc_flow = (0..net.arcs.len()).map(|e| dinic.cap[2 * e + 1]).collect();
    FlowOutcome { value, arc_flow }
}

/// Computes a minimum cut (max flow plus residual reachability).
pub fn min_cut(net: &FlowNetwork) -> CutCertificate {
    let mut dinic = Dinic::new(net);
    dinic.run();
    let side = dinic.source_side();
    let supply_side: Vec<usize> =
        (0..net.n_cols).filter(|&j| side[net.col_node(j)]).collect();
    let demand_side: Vec<usize> =
        (0..net.n_rows).filter(|&n| !side[net.row_node(n)]).collect();
    let capacity = net
        .arcs
        .iter()
        .filter(|a| side[a.from] && !side[a.to])
        .map(|a| a.capacity)
        .sum();
    CutCertificate { supply_side, demand_side, capacity }
}

/// Reads the member matrix out of a flow: entry `(n, j)` is the flow on the
/// middle arc `column j → row n`. Row sums equal the flow into each row, so
/// the matrix meets every demand exactly when the flow value is `Σ rₙ`.
pub fn extract_matrix(net: &FlowNetwork, outcome: &FlowOutcome) -> IntMatrix {
    let mut m = IntMatrix::zeros(net.n_rows, net.n_cols);
    for (i, &(n, j)) in net.middle_cells.iter().enumerate() {
        m.set(n, j, outcome.arc_flow[net.n_cols + i] as u32);
    }
    m
}
