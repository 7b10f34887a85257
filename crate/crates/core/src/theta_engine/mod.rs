//! The symmetric-rank degrees `θ_{q,n} = δ_{n−q,n}`.
//!
//! `θ_{q,n} = ∏_{j<q} C(n+j, q−j) / C(2j+1, j)`, with `θ_{0,n} = 1` and
//! `θ_{q,n} = 0` for `q > n`. Two independent routes are provided: the exact
//! product ([`theta_exact`]) and the digit-sum closed form for the 2-adic
//! valuation ([`theta_valuation`]). [`theta_is_odd`] decides parity from a
//! single congruence.

mod intervals;

pub use intervals::{interval_report, valuation_one_sites, IntervalKind, IntervalReport};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::digit_core::{ceil_log2, digit_sum_prefix, integer_valuation};
use crate::error::{domain, Error, Result};
use crate::exact::{binomial, exact_div, factorial_ratio, product};

/// Address of `θ_{q,n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ThetaQuery {
    pub q: u64,
    pub n: u64,
}

impl ThetaQuery {
    pub fn new(q: u64, n: u64) -> Self {
        Self { q, n }
    }

    /// The symmetric rank bound `k = n − q` when `q ≤ n`.
    pub fn rank(&self) -> Option<u64> {
        self.n.checked_sub(self.q)
    }
}

/// How a valuation was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComputationPath {
    DigitSumFormula,
    ExactProduct,
    ClosedFormParity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationReport {
    pub valuation: u64,
    pub parity_odd: bool,
    pub exact_value: Option<BigUint>,
    pub path: ComputationPath,
}

impl ValuationReport {
    /// Builds a report, checking the optional exact value against the valuation.
    pub fn new(valuation: u64, exact_value: Option<BigUint>, path: ComputationPath) -> Result<Self> {
        if let Some(x) = &exact_value {
            let tz = integer_valuation(x)?;
            if tz != valuation {
                return Err(Error::Internal(format!(
                    "exact value has 2-adic valuation {tz}, formula gave {valuation}"
                )));
            }
        }
        Ok(Self { valuation, parity_odd: valuation == 0, exact_value, path })
    }
}

/// Exact `θ_{q,n}`.
///
/// Each factor is expanded into factorials,
/// `C(n+j, q−j) / C(2j+1, j) = (n+j)!·j!·(j+1)! / ((q−j)!·(n+2j−q)!·(2j+1)!)`,
/// and the whole quotient is evaluated by [`factorial_ratio`]: numerator and
/// denominator products, then one exact division.
pub fn theta_exact(q: u64, n: u64) -> BigUint {
    if q > n {
        return BigUint::zero();
    }
    if q == 0 {
        return BigUint::one();
    }
    let mut num = Vec::with_capacity(3 * q as usize);
    let mut den = Vec::with_capacity(3 * q as usize);
    for j in 0..q {
        num.extend([n + j, j, j + 1]);
        den.extend([q - j, n + 2 * j - q, 2 * j + 1]);
    }
    factorial_ratio(&num, &den, "theta product").expect("theta_{q,n} is an integer")
}

/// `θ_{q,n}` as the literal quotient of two binomial products; slow, kept as a
/// cross-check for [`theta_exact`].
pub fn theta_exact_by_binomials(q: u64, n: u64) -> BigUint {
    if q > n {
        return BigUint::zero();
    }
    let num = product((0..q).map(|j| binomial(n + j, q - j)).collect());
    let den = product((0..q).map(|j| binomial(2 * j + 1, j)).collect());
    exact_div(&num, &den, "theta product").expect("theta_{q,n} is an integer")
}

/// `ν₂(θ_{q,n})` from digit sums alone.
///
/// For `n − q = 2p`: `ν = −p + S(n) − S(n−p) − S(p)`. For `n − q` odd the
/// valuation is `ν₂(θ_{q+1,n}) + q`.
pub fn theta_valuation(q: u64, n: u64) -> Result<u64> {
    if q > n {
        return Err(Error::ThetaZero { q, n });
    }
    let v = theta_valuation_wide(q, n);
    u64::try_from(v).map_err(|_| Error::Overflow("theta valuation"))
}

fn theta_valuation_wide(q: u64, n: u64) -> u128 {
    let d = n - q;
    if d % 2 == 1 {
        // n ≥ q + 1 here
        return theta_valuation_wide(q + 1, n) + u128::from(q);
    }
    let (n, p) = (u128::from(n), u128::from(d / 2));
    let s = digit_sum_prefix;
    let v = s(n) as i128 - s(n - p) as i128 - s(p) as i128 - p as i128;
    debug_assert!(v >= 0, "negative theta valuation");
    v as u128
}

/// Parity of `θ_{q,n}` from the congruence `n ≡ ±q (mod 2^⌈log₂ 2q⌉)`, `n ≥ q`.
///
/// `θ_{q,n} = 0` for `q > n`, which counts as not odd. `q = 0` gives `θ = 1`.
pub fn theta_is_odd(q: u64, n: u64) -> bool {
    if q > n {
        return false;
    }
    if q == 0 {
        return true;
    }
    // ⌈log₂ 2q⌉ = 1 + ⌈log₂ q⌉ for every q ≥ 1.
    let modulus = 1u128 << (1 + ceil_log2(q));
    let (q, n) = (u128::from(q), u128::from(n));
    (n - q) % modulus == 0 || (n + q) % modulus == 0
}

/// Valuation report for `θ_{q,n}`; the exact value is attached on request.
pub fn theta_report(q: u64, n: u64, with_exact: bool) -> Result<ValuationReport> {
    let valuation = theta_valuation(q, n)?;
    let exact = with_exact.then(|| theta_exact(q, n));
    ValuationReport::new(valuation, exact, ComputationPath::DigitSumFormula)
}

/// Report for `δ_{k,n} = θ_{n−k,n}`.
pub fn delta_valuation(k: u64, n: u64, with_exact: bool) -> Result<ValuationReport> {
    if k > n {
        return Err(domain(format!("delta requires k <= n (k = {k}, n = {n})")));
    }
    theta_report(n - k, n, with_exact)
}

/// `[ν₂(θ_{q,q+2i}) for i in 0..=i_max]`.
pub fn nu_sequence(q: u64, i_max: u64) -> Result<Vec<u64>> {
    if q == 0 {
        return Err(domain("nu_sequence requires q >= 1"));
    }
    (0..=i_max)
        .map(|i| {
            let n = i.checked_mul(2).and_then(|x| x.checked_add(q)).ok_or(Error::Overflow("q + 2i"))?;
            theta_valuation(q, n)
        })
        .collect()
}
