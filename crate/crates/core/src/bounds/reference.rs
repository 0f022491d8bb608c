//! Embedded reference data: the seven exact values and the best-known table.

use super::table::BoundsTable;

/// The known exact van der Waerden numbers `(k, r, W(k, r))`.
pub const KNOWN_EXACT: [(u32, u32, u64); 7] = [
    (3, 2, 9),
    (3, 3, 27),
    (3, 4, 76),
    (4, 2, 35),
    (4, 3, 293),
    (5, 2, 178),
    (6, 2, 1132),
];

const TABLE1_TSV: &str = include_str!("../../data/table1.tsv");

pub fn known_exact(k: u32, r: u32) -> Option<u64> {
    KNOWN_EXACT
        .iter()
        .find(|&&(kk, rr, _)| kk == k && rr == r)
        .map(|&(_, _, w)| w)
}

/// Best-known lower bounds for `k <= 25`, `r <= 7`, with construction recipes.
pub fn reference_table() -> BoundsTable {
    BoundsTable::from_tsv(TABLE1_TSV).expect("embedded reference table is well formed")
}
