//! Supply planning: when the slots cannot serve every load, how little extra
//! supply makes them able to, and where should it go?
//!
//! Both planners spend exactly the adequacy gap — the amount by which the
//! worst tensor element falls below zero — but they shape it differently:
//! the slot sweep front-loads each block, the valley fill levels it.
//!
//! ```text
//! cargo run --example purchase_planning
//! ```

use gridfill::services::{
    adequacy_gap, is_adequate, min_purchase_slot_sweep, min_purchase_valley_fill, TieBreak,
};
use gridfill::{Instance, PatternMatrix};

fn main() {
    // One load of 4 units that may use either of two slots, at most 3 per
    // slot; the slots currently hold nothing.
    let pattern = PatternMatrix::from_rows(&[vec![1, 1]]).unwrap();
    let inst =
        Instance::with_ceilings(vec![0, 0], vec![4], pattern.clone(), vec![3]).unwrap();

    let gap = adequacy_gap(&inst).unwrap();
    println!("supply [0, 0], one load of 4 at rate <= 3: gap = {gap}");

    let sweep = min_purchase_slot_sweep(&inst).unwrap();
    let valley = min_purchase_valley_fill(&inst, TieBreak::Deterministic).unwrap();
    println!("  slot sweep buys  {:?} (total {})", sweep.additions, sweep.total);
    println!("  valley fill buys {:?} (total {})", valley.additions, valley.total);
    assert_eq!(sweep.total, gap);
    assert_eq!(valley.total, gap);
    // Same spend, different shapes: [3, 1] against [2, 2].
    assert_ne!(sweep.additions, valley.additions);

    // Either purchase closes the gap exactly.
    for profile in [&sweep, &valley] {
        let raised: Vec<u32> = inst
            .supply()
            .iter()
            .zip(&profile.additions)
            .map(|(&h, &a)| h + u32::try_from(a).unwrap())
            .collect();
        let raised = Instance::with_ceilings(raised, vec![4], pattern.clone(), vec![3]).unwrap();
        assert!(is_adequate(&raised).unwrap());
    }
    println!("  both purchases make the instance adequate, and no cheaper one can");

    // Ties: when several slots could take the last units, the deterministic
    // valley fill pushes them toward later slots; a seeded one draws the
    // spots at random but spends the same per block.
    let pattern = PatternMatrix::from_rows(&[vec![1, 1, 1, 1]]).unwrap();
    let flat = Instance::with_ceilings(vec![1, 1, 1, 1], vec![6], pattern, vec![2]).unwrap();
    println!("\nsupply [1, 1, 1, 1], one load of 6 at rate <= 2: gap = {}",
        adequacy_gap(&flat).unwrap());
    let fixed = min_purchase_valley_fill(&flat, TieBreak::Deterministic).unwrap();
    println!("  deterministic fill: {:?}", fixed.additions);
    for seed in [1, 2, 3] {
        let drawn = min_purchase_valley_fill(&flat, TieBreak::Seeded(seed)).unwrap();
        println!("  seed {seed} fill:       {:?} (total {})", drawn.additions, drawn.total);
        assert_eq!(drawn.total, fixed.total);
        // The multiset of per-slot purchases never depends on the draw.
        let mut a = drawn.additions.clone();
        let mut b = fixed.additions.clone();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }
}
