//! Exact big-integer helpers shared by the product-evaluation paths.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `C(n, k)` by multiplicative accumulation; each step `r·(n−k+i)/i` divides exactly.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut r = BigUint::one();
    for i in 1..=k {
        r *= n - k + i;
        r /= i;
    }
    r
}

/// Balanced product tree; keeps operand sizes matched so large products use
/// the fast multiplication paths.
pub fn product(mut factors: Vec<BigUint>) -> BigUint {
    if factors.is_empty() {
        return BigUint::one();
    }
    while factors.len() > 1 {
        let mut next = Vec::with_capacity(factors.len().div_ceil(2));
        let mut it = factors.into_iter();
        while let Some(x) = it.next() {
            match it.next() {
                Some(y) => next.push(x * y),
                None => next.push(x),
            }
        }
        factors = next;
    }
    factors.pop().unwrap()
}

/// Product of `base^exp` over the listed pairs.
pub fn power_product(terms: impl IntoIterator<Item = (u64, u64)>) -> BigUint {
    let factors = terms
        .into_iter()
        .filter(|&(base, exp)| exp > 0 && base > 1)
        .map(|(base, exp)| num_traits::pow(BigUint::from(base), exp as usize))
        .collect();
    product(factors)
}

/// `num / den`, failing if the remainder is nonzero.
pub fn exact_div(num: &BigUint, den: &BigUint, what: &'static str) -> Result<BigUint> {
    if den.is_zero() {
        return Err(Error::InexactDivision(what));
    }
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::InexactDivision(what))
    }
}

/// `∏ num! / ∏ den!`.
///
/// The net multiplicity of each `m` is the number of numerator arguments
/// `≥ m` minus the denominator ones; it is pushed onto the prime factors of
/// `m` so that cancellation happens before any multiplication. Primes with
/// positive and negative net exponent form the two products, followed by one
/// exact division.
pub fn factorial_ratio(num: &[u64], den: &[u64], what: &'static str) -> Result<BigUint> {
    let top = num.iter().chain(den).copied().max().unwrap_or(0);
    let top = usize::try_from(top).map_err(|_| Error::Overflow("factorial argument"))?;
    let mut count = vec![0i64; top + 1];
    for &x in num {
        count[x as usize] += 1;
    }
    for &x in den {
        count[x as usize] -= 1;
    }
    let spf = smallest_prime_factors(top);
    let mut prime_exp = vec![0i64; top + 1];
    let mut e = 0i64;
    for m in (2..=top).rev() {
        e += count[m];
        if e == 0 {
            continue;
        }
        let mut r = m;
        while r > 1 {
            let p = spf[r];
            prime_exp[p] += e;
            r /= p;
        }
    }
    let (mut up, mut down) = (Vec::new(), Vec::new());
    for (p, &e) in prime_exp.iter().enumerate() {
        match e.signum() {
            1 => up.push((p as u64, e as u64)),
            -1 => down.push((p as u64, e.unsigned_abs())),
            _ => {}
        }
    }
    exact_div(&power_product(up), &power_product(down), what)
}

/// `spf[m]` is the least prime dividing `m`, for `2 <= m <= top`.
fn smallest_prime_factors(top: usize) -> Vec<usize> {
    let mut spf: Vec<usize> = (0..=top).collect();
    let mut p = 2;
    while p * p <= top {
        if spf[p] == p {
            for m in (p * p..=top).step_by(p) {
                if spf[m] == m {
                    spf[m] = p;
                }
            }
        }
        p += 1;
    }
    spf
}

pub fn factorial(n: u64) -> BigUint {
    product((2..=n).map(BigUint::from).collect())
}
