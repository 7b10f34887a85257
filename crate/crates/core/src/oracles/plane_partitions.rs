use std::collections::HashMap;

use num_bigint::BigUint;

use crate::box_parity::BoxDims;
use crate::error::{Error, Result};

/// Tractability limits for [`plane_partition_count`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationGuard {
    /// Upper bound on `a·b`.
    pub max_cells: u64,
    /// Upper bound on `c`.
    pub max_height: u64,
}

impl Default for EnumerationGuard {
    fn default() -> Self {
        Self { max_cells: 36, max_height: 8 }
    }
}

impl EnumerationGuard {
    pub fn admits(&self, d: BoxDims) -> bool {
        d.a.saturating_mul(d.b) <= self.max_cells && d.c <= self.max_height
    }
}

/// Counts `a × b` arrays with entries in `[0, c]`, weakly decreasing along rows
/// and columns, by direct enumeration.
///
/// Rows are generated left to right with each cell bounded by
/// `min(cell above, cell to the left)`. The number of completions below a row
/// depends only on that row and the rows remaining, so those counts are cached.
pub fn plane_partition_count(d: BoxDims, guard: EnumerationGuard) -> Result<BigUint> {
    if !guard.admits(d) {
        return Err(Error::GuardExceeded(format!(
            "enumeration of {d} needs a*b <= {} and c <= {}",
            guard.max_cells, guard.max_height
        )));
    }
    if d.a == 0 || d.b == 0 || d.c == 0 {
        return Ok(BigUint::from(1u32));
    }
    let top = vec![d.c as u8; d.b as usize];
    let mut memo = HashMap::new();
    Ok(BigUint::from(completions(&top, d.a as usize, &mut memo)))
}

fn completions(above: &[u8], rows_left: usize, memo: &mut HashMap<(usize, Vec<u8>), u128>) -> u128 {
    if rows_left == 0 {
        return 1;
    }
    if let Some(&n) = memo.get(&(rows_left, above.to_vec())) {
        return n;
    }
    let mut total = 0u128;
    let mut row = vec![0u8; above.len()];
    each_row(above, 0, u8::MAX, &mut row, &mut |r| {
        total += completions(r, rows_left - 1, memo);
    });
    memo.insert((rows_left, above.to_vec()), total);
    total
}

fn each_row(above: &[u8], col: usize, left: u8, row: &mut [u8], visit: &mut dyn FnMut(&[u8])) {
    if col == above.len() {
        visit(row);
        return;
    }
    let bound = above[col].min(left);
    for v in 0..=bound {
        row[col] = v;
        each_row(above, col + 1, v, row, visit);
    }
}

/// Trailing-zero valuation of an exact value; same contract as
/// [`crate::digit_core::integer_valuation`].
pub fn valuation_by_trailing_zeros(x: &BigUint) -> Result<u64> {
    crate::digit_core::integer_valuation(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(a: u64, b: u64, c: u64) -> u64 {
        let n = plane_partition_count(BoxDims::new(a, b, c), EnumerationGuard::default()).unwrap();
        u64::try_from(n).unwrap()
    }

    #[test]
    fn small_boxes() {
        assert_eq!(count(1, 1, 1), 2);
        assert_eq!(count(2, 2, 2), 20);
        assert_eq!(count(3, 4, 0), 1);
        assert_eq!(count(0, 4, 5), 1);
        // single row: weakly decreasing sequences of length b in [0, c]
        assert_eq!(count(1, 3, 2), 10);
    }

    #[test]
    fn guard_is_enforced() {
        let g = EnumerationGuard::default();
        assert!(matches!(plane_partition_count(BoxDims::new(7, 6, 1), g), Err(Error::GuardExceeded(_))));
        assert!(matches!(plane_partition_count(BoxDims::new(1, 1, 9), g), Err(Error::GuardExceeded(_))));
        let wide = EnumerationGuard { max_cells: 100, max_height: 10 };
        assert!(plane_partition_count(BoxDims::new(7, 6, 1), wide).is_ok());
    }

    #[test]
    fn trailing_zero_alias() {
        assert_eq!(valuation_by_trailing_zeros(&BigUint::from(10u32)).unwrap(), 1);
        assert_eq!(valuation_by_trailing_zeros(&BigUint::from(20u32)).unwrap(), 2);
        assert_eq!(valuation_by_trailing_zeros(&BigUint::from(288u32)).unwrap(), 5);
        assert_eq!(valuation_by_trailing_zeros(&BigUint::from(0u32)), Err(Error::ValuationOfZero));
    }
}
