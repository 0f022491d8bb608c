//! Growth of best bounds between consecutive `k`.

use num_traits::ToPrimitive;

use super::table::BoundsTable;

/// `(k, bound(k) / bound(k-1))` for every consecutive pair of rows with
/// `r` colors. Values keep full precision; round only when displaying.
pub fn growth_ratios(table: &BoundsTable, r: u32) -> Vec<(u32, f64)> {
    let column: Vec<(u32, f64)> = table
        .iter()
        .filter(|rec| rec.r == r)
        .filter_map(|rec| rec.bound.to_f64().map(|b| (rec.k, b)))
        .collect();
    column
        .windows(2)
        .filter(|w| w[1].0 == w[0].0 + 1 && w[0].1 > 0.0)
        .map(|w| (w[1].0, w[1].1 / w[0].1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{reference_table, BoundRecord, BoundStatus};

    #[test]
    fn skips_gaps() {
        let mut t = BoundsTable::new();
        for (k, b) in [(7u32, 100u64), (8, 150), (10, 600)] {
            t.insert(BoundRecord::new(k, 2, b, BoundStatus::Formula, "f"))
                .unwrap();
        }
        assert_eq!(growth_ratios(&t, 2), vec![(8, 1.5)]);
        assert!(growth_ratios(&t, 3).is_empty());
    }

    #[test]
    fn reference_tail() {
        let ratios = growth_ratios(&reference_table(), 2);
        let last = ratios.last().unwrap();
        assert_eq!(last.0, 25);
        assert!((last.1 - 2.095).abs() < 0.005);
    }
}
