//! Structure of `i ↦ ν₂(θ_{q,q+2i})` between consecutive zeros.
//!
//! With `Q = 2^⌈log₂ q⌉` the zeros sit at `i = cQ` and `i = (c+1)Q − q`, which
//! splits the index line into alternating *opening* intervals
//! `[cQ, (c+1)Q − q]` and *closing* intervals `[(c+1)Q − q, (c+1)Q]`. On each
//! interval the sequence is symmetric, its central value has a closed form,
//! and on the half-interval between a zero endpoint and the nearest central
//! point it is squeezed between two slope-one lines.
//!
//! For odd `q` the closing-interval bounds are taken on
//! `[(c+1)Q − (q−1)/2, (c+1)Q]`, distances measured from the upper central
//! point; starting at the lower central point instead breaks both bounds
//! (e.g. `q = 39`, `i = 45` and `q = 3`, `i = 2`).

use serde::Serialize;

use super::theta_valuation;
use crate::digit_core::{ceil_log2, digit_sum, digit_sum_prefix};
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntervalKind {
    Opening,
    Closing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalReport {
    pub q: u64,
    pub c: u64,
    pub kind: IntervalKind,
    /// `Q = 2^⌈log₂ q⌉`.
    pub period: u64,
    pub start: u64,
    pub end: u64,
    /// Opening interval of a power-of-two `q` collapses to one point.
    pub degenerate: bool,
    pub center_indices: Vec<u64>,
    /// Closed-form central value.
    pub center_value: u64,
    pub endpoint_values: (u64, u64),
    pub symmetry_ok: bool,
    pub lower_bound_ok: bool,
    pub upper_bound_ok: bool,
    /// The sequence attains `center_value` at every center index and nowhere exceeds it.
    pub center_ok: bool,
}

impl IntervalReport {
    pub fn all_ok(&self) -> bool {
        self.symmetry_ok
            && self.lower_bound_ok
            && self.upper_bound_ok
            && self.center_ok
            && self.endpoint_values == (0, 0)
    }
}

fn nu(q: u64, i: u64) -> Result<u64> {
    let n = i.checked_mul(2).and_then(|x| x.checked_add(q)).ok_or(Error::Overflow("q + 2i"))?;
    theta_valuation(q, n)
}

/// Closed-form central value of the requested interval.
fn center_value(q: u64, c: u64, kind: IntervalKind) -> i128 {
    let big_q = 1u64 << ceil_log2(q);
    let log_q = i128::from(ceil_log2(q));
    let big_s = |x: u64| digit_sum_prefix(u128::from(x)) as i128;
    let s = |x: u64| i128::from(digit_sum(u128::from(x)));
    // s(c) − s(c+1) + 1 ≥ 0
    let carry = s(c) - s(c + 1) + 1;
    match (kind, q.is_multiple_of(2)) {
        (IntervalKind::Opening, true) => {
            let h = (big_q - q) / 2;
            i128::from(h) * (log_q - 1) - 2 * big_s(h)
        }
        (IntervalKind::Closing, true) => {
            let h = q / 2;
            i128::from(h) * log_q - 2 * big_s(h) + i128::from(h) * carry
        }
        (IntervalKind::Opening, false) => {
            let h = (big_q - q - 1) / 2;
            i128::from(h) * (log_q - 1) - 2 * big_s(h) - s(h)
        }
        (IntervalKind::Closing, false) => {
            let h = (q - 1) / 2;
            i128::from(h) * log_q - 2 * big_s(h) - s(h) + i128::from(h) * carry
        }
    }
}

/// Analyses one opening or closing interval and checks every structural claim
/// against the sequence computed by the digit-sum formula.
pub fn interval_report(q: u64, c: u64, kind: IntervalKind) -> Result<IntervalReport> {
    if q == 0 {
        return Err(domain("interval_report requires q >= 1"));
    }
    let big_q = 1u64 << ceil_log2(q);
    let (start, end) = match kind {
        IntervalKind::Opening => (c * big_q, (c + 1) * big_q - q),
        IntervalKind::Closing => ((c + 1) * big_q - q, (c + 1) * big_q),
    };

    if start == end {
        let v = nu(q, start)?;
        return Ok(IntervalReport {
            q,
            c,
            kind,
            period: big_q,
            start,
            end,
            degenerate: true,
            center_indices: vec![start],
            center_value: 0,
            endpoint_values: (v, v),
            symmetry_ok: true,
            lower_bound_ok: true,
            upper_bound_ok: true,
            center_ok: v == 0,
        });
    }

    let values: Vec<u64> = (start..=end).map(|i| nu(q, i)).collect::<Result<_>>()?;
    let at = |i: u64| values[(i - start) as usize];

    let center_indices =
        if q.is_multiple_of(2) { vec![(start + end) / 2] } else { vec![(start + end) / 2, (start + end) / 2 + 1] };
    let cv = center_value(q, c, kind);
    let center_value = u64::try_from(cv).map_err(|_| Error::Internal(format!("negative central value {cv}")))?;

    let symmetry_ok = (0..=(end - start)).all(|d| at(start + d) == at(end - d));
    let max = values.iter().copied().max().unwrap_or(0);
    let center_ok = max == center_value && center_indices.iter().all(|&i| at(i) == center_value);

    // Half-interval running from the zero endpoint to the nearest central point.
    let (lower_bound_ok, upper_bound_ok) = match kind {
        IntervalKind::Opening => {
            let mid = center_indices[0];
            let lb = (start..=mid).all(|i| at(i) >= i - start);
            let ub = (start..=mid).all(|i| i128::from(at(i)) <= cv - i128::from(mid - i));
            (lb, ub)
        }
        IntervalKind::Closing => {
            let mid = *center_indices.last().unwrap();
            let lb = (mid..=end).all(|i| at(i) >= end - i);
            let ub = (mid..=end).all(|i| i128::from(at(i)) <= cv - i128::from(i - mid));
            (lb, ub)
        }
    };

    Ok(IntervalReport {
        q,
        c,
        kind,
        period: big_q,
        start,
        end,
        degenerate: false,
        center_indices,
        center_value,
        endpoint_values: (at(start), at(end)),
        symmetry_ok,
        lower_bound_ok,
        upper_bound_ok,
        center_ok,
    })
}

fn is_power_of_two(x: u64) -> bool {
    x != 0 && x & (x - 1) == 0
}

/// Indices `i ∈ [cQ, (c+1)Q]` with `ν₂(θ_{q,q+2i}) = 1`, from closed-form
/// characterizations only.
///
/// * even `q`, opening interval: never.
/// * even `q`, closing interval: iff `q = Q` and `c` even, at
///   `(c+1)Q − q + 1` and `(c+1)Q − 1`.
/// * odd `q`, opening interval: iff `q = 2^M + 2^m − 1` with `0 < m < M`, at
///   `cQ + 1` and `(c+1)Q − q − 1`.
/// * odd `q`, closing interval: iff `q = Q − 2^j + 1` with `1 ≤ j < log₂ Q`
///   and `c` even, at `(c+1)Q − q + 1` and `(c+1)Q − 1`. Here
///   `ν₂(θ_{q,q+2i}) = log₂Q − s(q+Q−2) + 1` at `i = (c+1)Q − 1`.
pub fn valuation_one_sites(q: u64, c: u64) -> Result<Vec<u64>> {
    if q == 0 {
        return Err(domain("valuation_one_sites requires q >= 1"));
    }
    let log_q = ceil_log2(q);
    let big_q = 1u64 << log_q;
    let mut sites = Vec::new();
    let c_even = c.is_multiple_of(2);

    if q.is_multiple_of(2) {
        if q == big_q && c_even {
            sites.extend([(c + 1) * big_q - q + 1, (c + 1) * big_q - 1]);
        }
    } else {
        if log_q >= 2 {
            let half = big_q / 2;
            let r = q + 1 - half;
            if is_power_of_two(r) && r >= 2 && r < half {
                sites.extend([c * big_q + 1, (c + 1) * big_q - q - 1]);
            }
        }
        if log_q >= 2 && c_even {
            let r = big_q + 1 - q;
            if is_power_of_two(r) && r >= 2 && r < big_q {
                sites.extend([(c + 1) * big_q - q + 1, (c + 1) * big_q - 1]);
            }
        }
    }
    sites.sort_unstable();
    sites.dedup();
    Ok(sites)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q46_intervals() {
        let r = interval_report(46, 0, IntervalKind::Opening).unwrap();
        assert_eq!(r.center_indices, vec![9]);
        assert_eq!(r.center_value, 19);
        assert_eq!(r.endpoint_values, (0, 0));
        assert!(r.all_ok());

        let r = interval_report(46, 0, IntervalKind::Closing).unwrap();
        assert_eq!(r.center_indices, vec![41]);
        assert_eq!(r.center_value, 42);
        assert!(r.all_ok());
    }

    #[test]
    fn q39_intervals() {
        let r = interval_report(39, 0, IntervalKind::Opening).unwrap();
        assert_eq!(r.center_indices, vec![12, 13]);
        assert_eq!(r.center_value, 18);
        assert!(r.all_ok());

        let r = interval_report(39, 0, IntervalKind::Closing).unwrap();
        assert_eq!(r.center_indices, vec![44, 45]);
        assert_eq!(r.center_value, 37);
        assert!(r.all_ok());
    }

    #[test]
    fn power_of_two_opening_is_degenerate() {
        for q in [1u64, 2, 4, 8, 32] {
            let r = interval_report(q, 2, IntervalKind::Opening).unwrap();
            assert!(r.degenerate);
            assert_eq!(r.start, r.end);
            assert!(r.all_ok());
        }
    }

    #[test]
    fn q_one_closing() {
        for c in 0..4 {
            let r = interval_report(1, c, IntervalKind::Closing).unwrap();
            assert_eq!(r.center_indices, vec![c, c + 1]);
            assert_eq!(r.center_value, 0);
            assert!(r.all_ok());
        }
    }

    #[test]
    fn valuation_one_examples() {
        for c in 0..6 {
            assert!(valuation_one_sites(46, c).unwrap().is_empty());
        }
        assert_eq!(valuation_one_sites(4, 0).unwrap(), vec![1, 3]);
        assert_eq!(valuation_one_sites(4, 1).unwrap(), Vec::<u64>::new());
        assert_eq!(valuation_one_sites(39, 0).unwrap(), vec![1, 24]);
        assert_eq!(valuation_one_sites(2, 0).unwrap(), vec![1]);
        // odd q = Q − 2^j + 1 hits value 1 in the closing interval
        assert_eq!(valuation_one_sites(5, 0).unwrap(), vec![1, 2, 4, 7]);
        assert_eq!(valuation_one_sites(5, 1).unwrap(), vec![9, 10]);
    }

    #[test]
    fn sites_match_scan_small() {
        for q in 1..=40u64 {
            let big_q = 1u64 << ceil_log2(q);
            for c in 0..6 {
                let scan: Vec<u64> = (c * big_q..=(c + 1) * big_q).filter(|&i| nu(q, i).unwrap() == 1).collect();
                assert_eq!(valuation_one_sites(q, c).unwrap(), scan, "q={q} c={c}");
            }
        }
    }
}
