//! Degrees of the rectangular, symmetric and skew-symmetric determinantal
//! varieties and the subspace dimensions that odd degree pins down.
//!
//! * rectangular: `γ_{k,m,n} = B(n−k, m−k, k)`
//! * symmetric: `δ_{k,n} = θ_{n−k,n}`
//! * skew: `ε_{2p,n} = δ_{2p+1,n} / 2^{n−2p−1}`, with `ν₂(ε_{2p,n}) = ν₂(θ_{n−2p,n})`

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::box_parity::{box_count_exact, box_parity_trace, box_valuation, BoxDims};
use crate::digit_core::ceil_log2;
use crate::error::{domain, Error, Result};
use crate::exact::{binomial, exact_div, product};
use crate::theta_engine::{theta_exact, theta_is_odd, theta_valuation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Rectangular,
    Symmetric,
    Skew,
}

/// `k_or_p` is the rank bound `k`, or `p` for the skew family (rank `2p`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DegreeQuery {
    pub family: Family,
    pub k_or_p: u64,
    pub m: Option<u64>,
    pub n: u64,
}

impl DegreeQuery {
    pub fn rectangular(k: u64, m: u64, n: u64) -> Self {
        Self { family: Family::Rectangular, k_or_p: k, m: Some(m), n }
    }

    pub fn symmetric(k: u64, n: u64) -> Self {
        Self { family: Family::Symmetric, k_or_p: k, m: None, n }
    }

    pub fn skew(p: u64, n: u64) -> Self {
        Self { family: Family::Skew, k_or_p: p, m: None, n }
    }

    pub fn validate(&self) -> Result<()> {
        let (k, n) = (self.k_or_p, self.n);
        match self.family {
            Family::Rectangular => {
                let m = self.m.ok_or_else(|| domain("rectangular query needs m"))?;
                check_gamma_range(k, m, n)
            }
            Family::Symmetric => {
                if (1..=n).contains(&k) {
                    Ok(())
                } else {
                    Err(domain(format!("symmetric family requires 1 <= k <= n (k = {k}, n = {n})")))
                }
            }
            Family::Skew => check_skew_range(k, n),
        }
    }
}

fn check_gamma_range(k: u64, m: u64, n: u64) -> Result<()> {
    if k >= 1 && k <= m.min(n) {
        Ok(())
    } else {
        Err(domain(format!("gamma requires 1 <= k <= min(m, n) (k = {k}, m = {m}, n = {n})")))
    }
}

fn check_skew_range(p: u64, n: u64) -> Result<()> {
    if n >= 2 && p >= 1 && p <= n / 2 {
        Ok(())
    } else {
        Err(domain(format!("skew family requires n >= 2 and 1 <= p <= floor(n/2) (p = {p}, n = {n})")))
    }
}

/// `p = ⌊n/2⌋`: the rank bound covers the whole space.
pub fn skew_is_degenerate(p: u64, n: u64) -> bool {
    p == n / 2
}

/// `γ_{k,m,n} = ∏_{j<n−k} C(m+j, m−k) / C(m−k+j, m−k)`, one exact division.
pub fn gamma_product(k: u64, m: u64, n: u64) -> Result<BigUint> {
    check_gamma_range(k, m, n)?;
    let r = m - k;
    let num = product((0..n - k).map(|j| binomial(m + j, r)).collect());
    let den = product((0..n - k).map(|j| binomial(r + j, r)).collect());
    exact_div(&num, &den, "gamma product")
}

/// Exact `γ_{k,m,n}` via the box count, cross-checked against [`gamma_product`].
pub fn gamma_exact(k: u64, m: u64, n: u64) -> Result<BigUint> {
    check_gamma_range(k, m, n)?;
    let via_box = box_count_exact(BoxDims::new(n - k, m - k, k))?;
    let via_product = gamma_product(k, m, n)?;
    if via_box != via_product {
        return Err(Error::Internal(format!("gamma_{{{k},{m},{n}}}: box count and product formula disagree")));
    }
    Ok(via_box)
}

pub fn gamma_valuation(k: u64, m: u64, n: u64) -> Result<u64> {
    check_gamma_range(k, m, n)?;
    Ok(box_valuation(BoxDims::new(n - k, m - k, k)))
}

/// Exact `ε_{2p,n} = θ_{n−2p−1,n} / 2^{n−2p−1}`; `1` at the degenerate `p = ⌊n/2⌋`.
pub fn epsilon_exact(p: u64, n: u64) -> Result<BigUint> {
    check_skew_range(p, n)?;
    if skew_is_degenerate(p, n) {
        return Ok(BigUint::one());
    }
    let q = n - 2 * p - 1;
    let theta = theta_exact(q, n);
    let shifted = &theta >> q;
    if (&shifted << q) != theta {
        return Err(Error::InexactDivision("epsilon: theta by 2^(n-2p-1)"));
    }
    Ok(shifted)
}

/// `ν₂(ε_{2p,n}) = ν₂(θ_{n−2p,n})`; no division, no big integers.
pub fn epsilon_valuation(p: u64, n: u64) -> Result<u64> {
    check_skew_range(p, n)?;
    theta_valuation(n - 2 * p, n)
}

/// `ε_{2p,n}` is odd iff `2^⌈log₂(n−2p)⌉` divides `p` or `n − p`.
pub fn epsilon_is_odd(p: u64, n: u64) -> Result<bool> {
    if !(n >= 4 && p >= 1 && p < n / 2) {
        return Err(domain(format!("epsilon parity requires n >= 4 and 1 <= p < floor(n/2) (p = {p}, n = {n})")));
    }
    let modulus = 1u64 << ceil_log2(n - 2 * p);
    Ok(p.is_multiple_of(modulus) || (n - p).is_multiple_of(modulus))
}

/// Parity of the family's degree from its closed-form criterion.
pub fn degree_is_odd(query: &DegreeQuery) -> Result<bool> {
    query.validate()?;
    let (k, n) = (query.k_or_p, query.n);
    Ok(match query.family {
        Family::Symmetric => theta_is_odd(n - k, n),
        Family::Skew if skew_is_degenerate(k, n) => true,
        Family::Skew => epsilon_is_odd(k, n)?,
        Family::Rectangular => {
            let m = query.m.unwrap_or_default();
            box_parity_trace(BoxDims::new(n - k, m - k, k)).verdict
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubspaceThresholds {
    pub complex_dim: u64,
    /// Known only when the degree is odd.
    pub real_dim: Option<u64>,
    pub codim: u64,
}

/// Codimension of the rank-bounded variety, the complex subspace dimension
/// forcing an intersection, and the real one when odd degree settles it.
pub fn subspace_thresholds(query: &DegreeQuery) -> Result<SubspaceThresholds> {
    query.validate()?;
    let (k, n) = (query.k_or_p, query.n);
    let pair = |x: u64| x.checked_mul(x.saturating_sub(1)).map(|v| v / 2);
    let codim = match query.family {
        Family::Rectangular => {
            let m = query.m.unwrap_or_default();
            (m - k).checked_mul(n - k)
        }
        Family::Symmetric => pair(n - k + 1),
        Family::Skew => pair(n - 2 * k),
    }
    .ok_or(Error::Overflow("codimension"))?;
    let complex_dim = codim.checked_add(1).ok_or(Error::Overflow("codimension"))?;
    let real_dim = degree_is_odd(query)?.then_some(complex_dim);
    Ok(SubspaceThresholds { complex_dim, real_dim, codim })
}
