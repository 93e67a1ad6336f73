//! Feasibility verdicts with certificates, and constructive completion.
//!
//! [`class_nonempty`] answers "does any member matrix exist?" from the
//! structure tensor — a negative element is returned as the certificate of
//! impossibility. [`complete`] goes further and builds a member: it places
//! ones column by column, re-checking after each tentative placement that the
//! remaining instance still has a completion, so a verdict of feasible always
//! ends in an explicit matrix.

use crate::flow;
use crate::instance::Instance;
use crate::majorization::{conjugate, is_majorized};
use crate::matrix::{validate_member, IntMatrix, SumMode};
use crate::pattern::{reduce_fixed_ones, PatternMatrix};
use crate::tensor;
use crate::Error;

/// Gale–Ryser test: a (0,1)-matrix with column sums `supply` (free support)
/// and row sums `demand` exists exactly when the supply is majorized by the
/// conjugate of the demand.
pub fn gale_ryser_check(supply: &[u32], demand: &[u32]) -> bool {
    is_majorized(supply, &conjugate(demand, supply.len()))
}

/// Why a class is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Exact column sums require `Σ h = Σ r`.
    TotalsMismatch { supply_total: u64, demand_total: u64 },
    /// A negative structure-tensor element of the block-normalized instance:
    /// discarding `index[i]` slots of block `i` keeps `supply_tail` units of
    /// supply against `demand_tail` units of demand that only those kept
    /// slots could serve.
    NegativeElement { index: Vec<usize>, value: i64, supply_tail: u64, demand_tail: u64 },
    /// Flow-oracle fallback (tensor over its element cap): the max flow falls
    /// short of the total demand, witnessed by a minimum cut.
    FlowShortfall { value: u64, demand_total: u64, cut: flow::CutCertificate },
}

/// Verdict of [`class_nonempty`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible,
    Infeasible(Certificate),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible)
    }
}

/// Decides whether any member matrix exists. `cols` picks between exact
/// column sums and column sums at most the supply; row sums are always
/// exact. Falls back to the flow oracle when the tensor would exceed the
/// instance's element cap.
pub fn class_nonempty(inst: &Instance, cols: SumMode) -> Result<Feasibility, Error> {
    if cols == SumMode::Exact && inst.supply_total() != inst.demand_total() {
        return Ok(Feasibility::Infeasible(Certificate::TotalsMismatch {
            supply_total: inst.supply_total(),
            demand_total: inst.demand_total(),
        }));
    }
    let (norm, _) = inst.normalized();
    match tensor::min_element(&norm) {
        Ok((value, _)) if value >= 0 => Ok(Feasibility::Feasible),
        Ok((value, index)) => {
            let (supply_tail, demand_tail) = tensor::tails(&norm, &index)?;
            Ok(Feasibility::Infeasible(Certificate::NegativeElement {
                index,
                value,
                supply_tail,
                demand_tail,
            }))
        }
        Err(Error::TensorTooLarge { .. }) => {
            let net = flow::build_network(inst);
            let value = flow::max_flow(&net).value;
            if value == inst.demand_total() {
                Ok(Feasibility::Feasible)
            } else {
                Ok(Feasibility::Infeasible(Certificate::FlowShortfall {
                    value,
                    demand_total: inst.demand_total(),
                    cut: flow::min_cut(&net),
                }))
            }
        }
        Err(e) => Err(e),
    }
}

/// Result of [`complete`]: a member matrix, or the certificate that none
/// exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompletionResult {
    Completed(IntMatrix),
    Infeasible(Certificate),
}

impl CompletionResult {
    pub fn matrix(&self) -> Option<&IntMatrix> {
        match self {
            CompletionResult::Completed(m) => Some(m),
            CompletionResult::Infeasible(_) => None,
        }
    }
}

/// Splits every row with ceiling `c > 1` into `c` unit-ceiling rows sharing
/// its pattern row: a demand of `r = qc + p` becomes `p` rows demanding
/// `q + 1` and `c − p` rows demanding `q`. Summing the split rows of any
/// member of the unit instance gives a member of the original and vice
/// versa. Returns the unit instance and the original row of each new row.
fn expand_units(inst: &Instance) -> (Instance, Vec<usize>) {
    if inst.has_unit_ceilings() {
        return (inst.clone(), (0..inst.n_rows()).collect());
    }
    let mut rows = Vec::new();
    let mut demand = Vec::new();
    let mut row_map = Vec::new();
    for n in 0..inst.n_rows() {
        let c = inst.ceiling(n);
        let r = inst.demand()[n];
        let (q, p) = (r / c, r % c);
        for copy in 0..c {
            rows.push(inst.pattern().row(n).to_vec());
            demand.push(if copy < p { q + 1 } else { q });
            row_map.push(n);
        }
    }
    let pattern = PatternMatrix::from_rows(&rows).expect("expanded rows copy a valid pattern");
    let unit = Instance::new(inst.supply().to_vec(), demand, pattern)
        .expect("expansion preserves dimensions")
        .with_tensor_cap(inst.tensor_cap());
    (unit, row_map)
}

/// Does the instance left after some placements in column `j` still have a
/// member? The leftover of column `j` (capacity `cap`, undecided rows only)
/// joins the untouched columns to its right.
fn remainder_feasible(
    norm: &Instance,
    j: usize,
    cap: u32,
    decided: &[bool],
    resid: &[u32],
    cols: SumMode,
) -> Result<bool, Error> {
    if cols == SumMode::Exact {
        let demand: u64 = resid.iter().map(|&r| r as u64).sum();
        let supply: u64 =
            cap as u64 + norm.supply()[j + 1..].iter().map(|&h| h as u64).sum::<u64>();
        if demand != supply {
            return Ok(false);
        }
    }
    let mut rows = Vec::with_capacity(norm.n_rows());
    for (i, &done) in decided.iter().enumerate() {
        let mut row = Vec::with_capacity(norm.n_cols() - j);
        row.push(u8::from(norm.pattern().get(i, j) && !done));
        row.extend_from_slice(&norm.pattern().row(i)[j + 1..]);
        rows.push(row);
    }
    let mut supply = Vec::with_capacity(norm.n_cols() - j);
    supply.push(cap);
    supply.extend_from_slice(&norm.supply()[j + 1..]);
    let work = Instance::new(supply, resid.to_vec(), PatternMatrix::from_rows(&rows)?)?
        .with_tensor_cap(norm.tensor_cap());
    let (work, _) = work.normalized();
    Ok(tensor::min_element(&work)?.0 >= 0)
}

/// Column-by-column fill of a feasible instance. Works on the unit-ceiling
/// expansion in block-normalized column order; every placement is checked to
/// leave a completable remainder, and a placement that does not is a proven
/// zero, so the sweep never backtracks across cells.
fn fill_member(inst: &Instance, cols: SumMode) -> Result<IntMatrix, Error> {
    let (unit, row_map) = expand_units(inst);
    let (norm, perm) = unit.normalized();
    let n = norm.n_rows();
    let mut resid = norm.demand().to_vec();
    let mut m = IntMatrix::zeros(n, norm.n_cols());
    for j in 0..norm.n_cols() {
        let mut cap = norm.supply()[j];
        let mut decided = vec![false; n];
        'column: while cap > 0 {
            let mut cands: Vec<usize> = (0..n)
                .filter(|&i| norm.pattern().get(i, j) && !decided[i] && resid[i] > 0)
                .collect();
            if cands.is_empty() {
                break;
            }
            // most demanding rows first; stable sort keeps ties by row index
            cands.sort_by_key(|&i| std::cmp::Reverse(resid[i]));
            for &i in &cands {
                resid[i] -= 1;
                cap -= 1;
                decided[i] = true;
                if remainder_feasible(&norm, j, cap, &decided, &resid, cols)? {
                    m.set(i, j, 1);
                    continue 'column;
                }
                // placing here kills the remainder, so every member has a
                // zero at (i, j); keep it decided and try the next row
                resid[i] += 1;
                cap += 1;
            }
            break;
        }
        if cols == SumMode::Exact && cap > 0 {
            return Err(Error::Internal("column fill stalled on a feasible instance"));
        }
    }
    if resid.iter().any(|&r| r > 0) {
        return Err(Error::Internal("fill left demand unmet on a feasible instance"));
    }
    let restored = perm.restore_columns(&m);
    let mut out = IntMatrix::zeros(inst.n_rows(), inst.n_cols());
    for (expanded, &orig) in row_map.iter().enumerate() {
        for j in 0..inst.n_cols() {
            out.set(orig, j, out.get(orig, j) + restored.get(expanded, j));
        }
    }
    Ok(out)
}

/// Member straight out of a saturating max flow (used when the tensor is
/// over its element cap).
fn flow_member(inst: &Instance) -> IntMatrix {
    let net = flow::build_network(inst);
    let outcome = flow::max_flow(&net);
    flow::extract_matrix(&net, &outcome)
}

/// Builds a member matrix, or returns the certificate that none exists.
pub fn complete(inst: &Instance, cols: SumMode) -> Result<CompletionResult, Error> {
    match class_nonempty(inst, cols)? {
        Feasibility::Infeasible(cert) => return Ok(CompletionResult::Infeasible(cert)),
        Feasibility::Feasible => {}
    }
    let matrix = match fill_member(inst, cols) {
        Ok(m) => m,
        Err(Error::TensorTooLarge { .. }) => flow_member(inst),
        Err(e) => return Err(e),
    };
    validate_member(inst, &matrix, SumMode::Exact, cols)
        .map_err(|_| Error::Internal("completion produced an invalid member"))?;
    Ok(CompletionResult::Completed(matrix))
}

/// [`complete`] with some cells forced to one. Only meaningful for
/// (0,1)-instances: each forced cell is peeled off the sums and re-added to
/// the completed matrix. An infeasible verdict certifies the reduced
/// instance, i.e. that no member contains all the forced ones.
pub fn complete_with_ones(
    inst: &Instance,
    ones: &[(usize, usize)],
    cols: SumMode,
) -> Result<CompletionResult, Error> {
    if ones.is_empty() {
        return complete(inst, cols);
    }
    let reduced = reduce_for_ones(inst, ones)?;
    match complete(&reduced, cols)? {
        CompletionResult::Infeasible(cert) => Ok(CompletionResult::Infeasible(cert)),
        CompletionResult::Completed(mut m) => {
            for &(n, j) in ones {
                m.set(n, j, m.get(n, j) + 1);
            }
            Ok(CompletionResult::Completed(m))
        }
    }
}

/// Peels the fixed ones off an instance's sums, validating that they are
/// in range, distinct, and that the instance is a (0,1) one. Any member of
/// the result, plus the fixed ones, is a member of the original.
pub fn reduce_for_ones(inst: &Instance, ones: &[(usize, usize)]) -> Result<Instance, Error> {
    if !inst.has_unit_ceilings() {
        return Err(Error::InvalidFixedOnes(
            "fixed ones require every entry ceiling to be 1".into(),
        ));
    }
    let mut mask = PatternMatrix::zeros(inst.n_rows(), inst.n_cols());
    for &(n, j) in ones {
        if n >= inst.n_rows() || j >= inst.n_cols() {
            return Err(Error::IndexOutOfRange(format!(
                "fixed one ({}, {}) is outside the {}x{} matrix",
                n + 1,
                j + 1,
                inst.n_rows(),
                inst.n_cols()
            )));
        }
        if mask.get(n, j) {
            return Err(Error::InvalidFixedOnes(format!(
                "cell ({}, {}) is fixed more than once",
                n + 1,
                j + 1
            )));
        }
        mask.set(n, j, 1);
    }
    Ok(reduce_fixed_ones(inst.supply(), inst.demand(), inst.pattern(), &mask)?
        .with_tensor_cap(inst.tensor_cap()))
}

struct Search<'a> {
    inst: &'a Instance,
    cols: SumMode,
    guard: u64,
    nodes: u64,
    limit: usize,
    m: IntMatrix,
    col_used: Vec<u32>,
    /// row_tail[n][j] = entry capacity of row n in columns j.. (prunes rows
    /// that can no longer reach their demand)
    row_tail: Vec<Vec<u64>>,
    members: Vec<IntMatrix>,
}

impl Search<'_> {
    fn cell(&mut self, n: usize, j: usize, left: u32) -> Result<(), Error> {
        if self.members.len() >= self.limit {
            return Ok(());
        }
        self.nodes += 1;
        if self.nodes > self.guard {
            return Err(Error::GuardExceeded(format!(
                "enumeration exceeded {} search nodes",
                self.guard
            )));
        }
        let t = self.inst.n_cols();
        if j == t {
            if left != 0 {
                return Ok(());
            }
            let next = n + 1;
            if next == self.inst.n_rows() {
                let exact_cols_ok = self.cols == SumMode::AtMost
                    || self
                        .col_used
                        .iter()
                        .zip(self.inst.supply())
                        .all(|(&u, &h)| u == h);
                if exact_cols_ok {
                    self.members.push(self.m.clone());
                }
            } else {
                self.cell(next, 0, self.inst.demand()[next])?;
            }
            return Ok(());
        }
        if (left as u64) > self.row_tail[n][j] {
            return Ok(()); // the rest of the row cannot absorb the demand
        }
        let cell_max = if self.inst.pattern().get(n, j) { self.inst.ceiling(n) } else { 0 };
        let col_free = self.inst.supply()[j] - self.col_used[j];
        for v in 0..=cell_max.min(left).min(col_free) {
            self.m.set(n, j, v);
            self.col_used[j] += v;
            self.cell(n, j + 1, left - v)?;
            self.col_used[j] -= v;
            self.m.set(n, j, 0);
        }
        Ok(())
    }

    fn run(mut self) -> Result<Vec<IntMatrix>, Error> {
        if self.inst.n_rows() == 0 {
            let ok = self.cols == SumMode::AtMost || self.inst.supply_total() == 0;
            if ok {
                self.members.push(self.m.clone());
            }
            return Ok(self.members);
        }
        self.cell(0, 0, self.inst.demand()[0])?;
        Ok(self.members)
    }
}

fn search(inst: &Instance, cols: SumMode, guard: u64, limit: usize) -> Result<Vec<IntMatrix>, Error> {
    let row_tail = (0..inst.n_rows())
        .map(|n| {
            let mut tail = vec![0u64; inst.n_cols() + 1];
            for j in (0..inst.n_cols()).rev() {
                tail[j] = tail[j + 1]
                    + if inst.pattern().get(n, j) { inst.ceiling(n) as u64 } else { 0 };
            }
            tail
        })
        .collect();
    Search {
        inst,
        cols,
        guard,
        nodes: 0,
        limit,
        m: IntMatrix::zeros(inst.n_rows(), inst.n_cols()),
        col_used: vec![0; inst.n_cols()],
        row_tail,
        members: Vec::new(),
    }
    .run()
}

/// Lists every member matrix by guarded exhaustive search — the reference
/// oracle for the analytic verdicts. `guard` bounds the number of search
/// nodes; exceeding it is an error, never a silent truncation.
pub fn brute_force_enumerate(
    inst: &Instance,
    cols: SumMode,
    guard: u64,
) -> Result<Vec<IntMatrix>, Error> {
    search(inst, cols, guard, usize::MAX)
}

/// Like [`brute_force_enumerate`] but stops at the first member.
pub fn brute_force_nonempty(inst: &Instance, cols: SumMode, guard: u64) -> Result<bool, Error> {
    Ok(!search(inst, cols, guard, 1)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fig2(supply: Vec<u32>) -> Instance {
        let f = PatternMatrix::from_rows(&[vec![1, 1, 1], vec![1, 1, 1], vec![1, 0, 0]]).unwrap();
        Instance::new(supply, vec![3, 1, 1], f).unwrap()
    }

    #[test]
    fn gale_ryser_examples() {
        assert!(gale_ryser_check(&[2, 2, 1], &[3, 1, 1]));
        assert!(gale_ryser_check(&[5, 0], &[1, 1, 1, 1, 1]));
        assert!(!gale_ryser_check(&[2, 2], &[3, 1]));
        // unequal totals always fail
        assert!(!gale_ryser_check(&[2, 2], &[3]));
        assert!(gale_ryser_check(&[], &[]));
        assert!(gale_ryser_check(&[0, 0], &[0]));
    }

    #[test]
    fn verdicts_and_certificates() {
        assert!(class_nonempty(&fig2(vec![2, 2, 1]), SumMode::Exact).unwrap().is_feasible());
        let verdict = class_nonempty(&fig2(vec![1, 2, 2]), SumMode::Exact).unwrap();
        assert_eq!(
            verdict,
            Feasibility::Infeasible(Certificate::NegativeElement {
                index: vec![0, 2],
                value: -1,
                supply_tail: 1,
                demand_tail: 2,
            })
        );
        // same certificate without the totals requirement
        let verdict = class_nonempty(&fig2(vec![1, 2, 2]), SumMode::AtMost).unwrap();
        assert!(matches!(
            verdict,
            Feasibility::Infeasible(Certificate::NegativeElement { value: -1, .. })
        ));
        // surplus supply: infeasible exactly, fine as an upper bound
        let verdict = class_nonempty(&fig2(vec![3, 2, 1]), SumMode::Exact).unwrap();
        assert_eq!(
            verdict,
            Feasibility::Infeasible(Certificate::TotalsMismatch {
                supply_total: 6,
                demand_total: 5,
            })
        );
        assert!(class_nonempty(&fig2(vec![3, 2, 1]), SumMode::AtMost).unwrap().is_feasible());
    }

    #[test]
    fn flow_fallback_agrees() {
        let feasible = fig2(vec![2, 2, 1]).with_tensor_cap(2);
        assert!(class_nonempty(&feasible, SumMode::Exact).unwrap().is_feasible());
        let infeasible = fig2(vec![1, 2, 2]).with_tensor_cap(2);
        match class_nonempty(&infeasible, SumMode::Exact).unwrap() {
            Feasibility::Infeasible(Certificate::FlowShortfall { value, demand_total, cut }) => {
                assert_eq!(value, 4);
                assert_eq!(demand_total, 5);
                assert_eq!(cut.capacity, 4);
            }
            other => panic!("expected a flow certificate, got {other:?}"),
        }
    }

    #[test]
    fn completing_the_worked_example() {
        let result = complete(&fig2(vec![2, 2, 1]), SumMode::Exact).unwrap();
        let expected =
            IntMatrix::from_rows(&[vec![1, 1, 1], vec![0, 1, 0], vec![1, 0, 0]]).unwrap();
        assert_eq!(result, CompletionResult::Completed(expected));

        match complete(&fig2(vec![1, 2, 2]), SumMode::Exact).unwrap() {
            CompletionResult::Infeasible(Certificate::NegativeElement { value: -1, .. }) => {}
            other => panic!("expected the negative-element certificate, got {other:?}"),
        }
    }

    #[test]
    fn completion_with_slack_columns() {
        let inst = fig2(vec![3, 2, 1]);
        let result = complete(&inst, SumMode::AtMost).unwrap();
        let m = result.matrix().expect("feasible");
        validate_member(&inst, m, SumMode::Exact, SumMode::AtMost).unwrap();
    }

    #[test]
    fn completion_with_ceilings() {
        let inst = Instance::with_ceilings(
            vec![2, 2],
            vec![3],
            PatternMatrix::ones(1, 2),
            vec![2],
        )
        .unwrap();
        let m = complete(&inst, SumMode::AtMost).unwrap();
        let m = m.matrix().expect("feasible");
        validate_member(&inst, m, SumMode::Exact, SumMode::AtMost).unwrap();
        assert_eq!(m.row_sum(0), 3);

        // entries above 1 are actually used
        assert!(m.row(0).contains(&2));
    }

    #[test]
    fn fixed_ones_are_respected() {
        let inst = fig2(vec![2, 2, 1]);
        let result = complete_with_ones(&inst, &[(0, 2)], SumMode::Exact).unwrap();
        let m = result.matrix().expect("feasible with that one fixed");
        assert_eq!(m.get(0, 2), 1);
        validate_member(&inst, m, SumMode::Exact, SumMode::Exact).unwrap();

        // row 1 demands a single one; forcing it into column 0 starves row 2,
        // whose window is column 0 alone
        let result = complete_with_ones(&inst, &[(1, 0)], SumMode::Exact).unwrap();
        assert!(matches!(result, CompletionResult::Infeasible(_)));

        // fixing a cell outside the pattern is an input error, not a verdict
        assert!(matches!(
            complete_with_ones(&inst, &[(2, 1)], SumMode::Exact),
            Err(Error::InvalidFixedOnes(_))
        ));
        let ceiled = Instance::with_ceilings(
            vec![2],
            vec![2],
            PatternMatrix::ones(1, 1),
            vec![2],
        )
        .unwrap();
        assert!(matches!(
            complete_with_ones(&ceiled, &[(0, 0)], SumMode::Exact),
            Err(Error::InvalidFixedOnes(_))
        ));
    }

    #[test]
    fn brute_force_oracle() {
        assert!(brute_force_nonempty(&fig2(vec![2, 2, 1]), SumMode::Exact, 1 << 20).unwrap());
        assert!(!brute_force_nonempty(&fig2(vec![1, 2, 2]), SumMode::Exact, 1 << 20).unwrap());
        let members = brute_force_enumerate(&fig2(vec![2, 2, 1]), SumMode::Exact, 1 << 20).unwrap();
        assert!(!members.is_empty());
        for m in &members {
            validate_member(&fig2(vec![2, 2, 1]), m, SumMode::Exact, SumMode::Exact).unwrap();
        }
        // every member matrix is distinct
        for (a, idx) in members.iter().zip(0..) {
            for b in &members[idx + 1..] {
                assert_ne!(a, b);
            }
        }
        assert!(matches!(
            brute_force_enumerate(&fig2(vec![2, 2, 1]), SumMode::Exact, 3),
            Err(Error::GuardExceeded(_))
        ));
    }

    #[test]
    fn empty_edge_cases() {
        let none = Instance::new(vec![], vec![], PatternMatrix::zeros(0, 0)).unwrap();
        assert!(class_nonempty(&none, SumMode::Exact).unwrap().is_feasible());
        let done = complete(&none, SumMode::Exact).unwrap();
        assert_eq!(done.matrix().unwrap().rows(), 0);
        assert_eq!(
            brute_force_enumerate(&none, SumMode::Exact, 10).unwrap().len(),
            1
        );

        let rows_only = Instance::new(vec![], vec![1], PatternMatrix::zeros(1, 0)).unwrap();
        assert!(!class_nonempty(&rows_only, SumMode::AtMost).unwrap().is_feasible());
        assert!(brute_force_enumerate(&rows_only, SumMode::AtMost, 10).unwrap().is_empty());
    }

    fn random_instance(rng: &mut ChaCha8Rng, ceiled: bool) -> Instance {
        let n = rng.gen_range(1..=4);
        let t = rng.gen_range(1..=4);
        let rows: Vec<Vec<u8>> = (0..n)
            .map(|_| (0..t).map(|_| rng.gen_range(0..=1)).collect())
            .collect();
        let supply = (0..t).map(|_| rng.gen_range(0..4)).collect();
        let demand = (0..n).map(|_| rng.gen_range(0..5)).collect();
        let pattern = PatternMatrix::from_rows(&rows).unwrap();
        if ceiled {
            let ceilings = (0..n).map(|_| rng.gen_range(1..4)).collect();
            Instance::with_ceilings(supply, demand, pattern, ceilings).unwrap()
        } else {
            Instance::new(supply, demand, pattern).unwrap()
        }
    }

    #[test]
    fn random_cross_check_against_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for round in 0..400 {
            let inst = random_instance(&mut rng, round % 2 == 1);
            for cols in [SumMode::Exact, SumMode::AtMost] {
                let verdict = class_nonempty(&inst, cols).unwrap().is_feasible();
                let oracle = brute_force_nonempty(&inst, cols, 1 << 24).unwrap();
                assert_eq!(verdict, oracle, "{inst:?} with {cols:?} columns");
                let completed = complete(&inst, cols).unwrap();
                match completed {
                    CompletionResult::Completed(m) => {
                        assert!(verdict);
                        validate_member(&inst, &m, SumMode::Exact, cols).unwrap();
                    }
                    CompletionResult::Infeasible(_) => assert!(!verdict),
                }
            }
        }
    }
}
