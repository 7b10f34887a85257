//! Binary digit sums and 2-adic valuation kernels.
//!
//! Everything else in the crate reduces to three primitives: the binary digit
//! sum `s(n)`, its prefix sum `S(a) = s(0) + … + s(a-1)`, and trailing-zero
//! counts of exact integers. Machine-word entry points take `u64`/`u128` and
//! compute in widths that cannot overflow for their inputs; the `_big`
//! variants accept arbitrary-precision values.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Number of 1-bits in the binary expansion of `n`.
#[inline]
pub fn digit_sum(n: u128) -> u32 {
    n.count_ones()
}

/// Digit sum of an arbitrary-precision value, one popcount per machine word.
pub fn digit_sum_big(n: &BigUint) -> u64 {
    n.iter_u64_digits().map(|w| u64::from(w.count_ones())).sum()
}

/// `S(a) = Σ_{i<a} s(i)`.
///
/// Evaluated by the halving recursions `S(2p) = 2S(p) + p` and
/// `S(2p+1) = S(p+1) + S(p) + p`. Each level only ever needs the adjacent pair
/// `(S(x), S(x+1))`, so the shared subcalls are carried up as a pair instead of
/// going through a memo table; the walk takes one step per bit of `a` and
/// holds no shared state.
///
/// Valid for `a < 2^120`, which bounds the result below `2^127`.
pub fn digit_sum_prefix(a: u128) -> u128 {
    assert!(a < 1u128 << 120, "digit_sum_prefix argument too large for u128 path");
    prefix_pair(a).0
}

/// Returns `(S(x), S(x+1))`.
fn prefix_pair(x: u128) -> (u128, u128) {
    if x == 0 {
        return (0, 0);
    }
    let p = x >> 1;
    let (sp, sp1) = prefix_pair(p);
    // S(2p) = 2S(p) + p, S(2p+1) = S(p+1) + S(p) + p, S(2p+2) = 2S(p+1) + p + 1
    let even = 2 * sp + p;
    let odd = sp1 + sp + p;
    let next_even = 2 * sp1 + p + 1;
    if x & 1 == 0 {
        (even, odd)
    } else {
        (odd, next_even)
    }
}

/// Arbitrary-precision `S(a)`, same pair recursion as [`digit_sum_prefix`].
pub fn digit_sum_prefix_big(a: &BigUint) -> BigUint {
    prefix_pair_big(a).0
}

fn prefix_pair_big(x: &BigUint) -> (BigUint, BigUint) {
    if x.is_zero() {
        return (BigUint::zero(), BigUint::zero());
    }
    let p: BigUint = x >> 1u32;
    let (sp, sp1) = prefix_pair_big(&p);
    let one = BigUint::one();
    if x.bit(0) {
        let odd = &sp1 + &sp + &p;
        let next_even = (&sp1 << 1u32) + &p + one;
        (odd, next_even)
    } else {
        let even = (&sp << 1u32) + &p;
        let odd = sp1 + sp + p;
        (even, odd)
    }
}

/// `ν₂(n!) = n − s(n)` (Legendre), without forming `n!`.
#[inline]
pub fn factorial_valuation(n: u128) -> u128 {
    n - u128::from(digit_sum(n))
}

pub fn factorial_valuation_big(n: &BigUint) -> BigUint {
    n - BigUint::from(digit_sum_big(n))
}

/// True iff `b` and `c` share no 1-bit, i.e. `s(b + c) = s(b) + s(c)`.
#[inline]
pub fn disjoint_expansion(b: u128, c: u128) -> bool {
    b & c == 0
}

pub fn disjoint_expansion_big(b: &BigUint, c: &BigUint) -> bool {
    (b & c).is_zero()
}

/// Largest `e` with `2^e | x`.
pub fn integer_valuation(x: &BigUint) -> Result<u64> {
    x.trailing_zeros().ok_or(Error::ValuationOfZero)
}

/// `⌈log₂ x⌉` for `x ≥ 1`.
#[inline]
pub fn ceil_log2(x: u64) -> u32 {
    debug_assert!(x >= 1);
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}
