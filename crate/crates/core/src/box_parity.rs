//! Plane partitions in an `a × b × c` box: exact count, 2-adic valuation and
//! parity with a checkable reduction certificate.
//!
//! `B(a,b,c) = H(a)H(b)H(c)H(a+b+c) / (H(a+b)H(b+c)H(c+a))` with the
//! hyperfactorial `H(n) = ∏_{k<n} k!`, and
//! `ν₂(B) = S(a+b) + S(b+c) + S(a+c) − S(a+b+c) − S(a) − S(b) − S(c)`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::digit_core::{digit_sum_prefix, disjoint_expansion};
use crate::error::{domain, Result};
use crate::exact::{exact_div, power_product};

/// Side lengths of the box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BoxDims {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl BoxDims {
    pub fn new(a: u64, b: u64, c: u64) -> Self {
        Self { a, b, c }
    }

    /// Coordinates in ascending order.
    pub fn sorted(self) -> Self {
        let mut v = [self.a, self.b, self.c];
        v.sort_unstable();
        Self::new(v[0], v[1], v[2])
    }

    pub fn as_array(self) -> [u64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn permutations(self) -> [BoxDims; 6] {
        let BoxDims { a, b, c } = self;
        [
            Self::new(a, b, c),
            Self::new(a, c, b),
            Self::new(b, a, c),
            Self::new(b, c, a),
            Self::new(c, a, b),
            Self::new(c, b, a),
        ]
    }

    fn has_zero(self) -> bool {
        self.a == 0 || self.b == 0 || self.c == 0
    }
}

impl fmt::Display for BoxDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// `H(n) = ∏_{k=0}^{n−1} k!`.
pub fn hyperfactorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    let mut fact = BigUint::one();
    for k in 1..n {
        fact *= k;
        acc *= &fact;
    }
    acc
}

/// Exact `B(a,b,c)` from the hyperfactorial quotient.
///
/// Writing `H(x) = ∏_{m<x} m^{x−m}`, the seven hyperfactorials collapse to one
/// exponent per base `m`; the positive part forms the numerator, the negative
/// part the denominator, and a single exact division finishes.
pub fn box_count_exact(d: BoxDims) -> Result<BigUint> {
    if d.has_zero() {
        return Ok(BigUint::one());
    }
    let BoxDims { a, b, c } = d;
    let (a, b, c) = (i128::from(a), i128::from(b), i128::from(c));
    let s = a + b + c;
    let up = |x: i128, m: i128| (x - m).max(0);
    let mut num = Vec::new();
    let mut den = Vec::new();
    for m in 2..s {
        let e = up(a, m) + up(b, m) + up(c, m) + up(s, m) - up(a + b, m) - up(b + c, m) - up(a + c, m);
        if e > 0 {
            num.push((m as u64, e as u64));
        } else if e < 0 {
            den.push((m as u64, (-e) as u64));
        }
    }
    exact_div(&power_product(num), &power_product(den), "box count")
}

/// `ν₂(B(a,b,c))` from digit-sum prefixes.
pub fn box_valuation(d: BoxDims) -> u64 {
    let [a, b, c] = d.as_array().map(u128::from);
    let s = |x: u128| digit_sum_prefix(x) as i128;
    let v = s(a + b) + s(b + c) + s(a + c) - s(a + b + c) - s(a) - s(b) - s(c);
    assert!(v >= 0, "negative box valuation for {d}");
    v as u64
}

/// Which parity rule fired at a reduction step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionRule {
    AllEven,
    OneOdd,
    TwoOdd,
    AllOddTerminal,
    BaseCase,
}

impl ReductionRule {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::AllEven => "all_even",
            Self::OneOdd => "one_odd",
            Self::TwoOdd => "two_odd",
            Self::AllOddTerminal => "all_odd_terminal",
            Self::BaseCase => "base_case",
        }
    }

    fn for_dims(d: BoxDims) -> Self {
        if d.has_zero() {
            return Self::BaseCase;
        }
        match d.as_array().iter().filter(|&&x| x % 2 == 1).count() {
            0 => Self::AllEven,
            1 => Self::OneOdd,
            2 => Self::TwoOdd,
            _ => Self::AllOddTerminal,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub dims_in: BoxDims,
    pub rule: ReductionRule,
    pub children: Vec<BoxDims>,
    /// Second child was never evaluated because the first one was even.
    pub pruned: bool,
    pub odd: bool,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.dims_in, self.rule.as_str())?;
        if let Some((first, rest)) = self.children.split_first() {
            write!(f, " -> {first}")?;
            for child in rest {
                write!(f, ", {child}")?;
            }
        }
        if self.pruned {
            write!(f, " pruned")?;
        }
        Ok(())
    }
}

/// Parity certificate for `B(a,b,c)`: one step per distinct box visited, in
/// depth-first order with the left child first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
    /// `true` iff `B` is odd.
    pub verdict: bool,
}

impl ReductionTrace {
    /// Line-oriented form: `(a,b,c) rule -> (a',b',c'), (a'',b'',c'') pruned`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for step in &self.steps {
            out.push_str(&step.to_string());
            out.push('\n');
        }
        out
    }
}

/// Children of a non-terminal box, in the orientation the halving rules use.
///
/// * all even `(2a,2b,2c)` → `(a,b,c)`
/// * two odd `(2a,2b+1,2c+1)` → `(a,b+1,c)`, `(a,b,c+1)`
/// * one odd `(2a+1,2b,2c)` → `(a,b,c)`, `(a+1,b,c)`
fn children(d: BoxDims, rule: ReductionRule) -> Vec<BoxDims> {
    let v = d.as_array();
    match rule {
        ReductionRule::AllEven => vec![BoxDims::new(v[0] / 2, v[1] / 2, v[2] / 2)],
        ReductionRule::TwoOdd => {
            let even = v.iter().position(|x| x % 2 == 0).unwrap();
            let odds: Vec<u64> = (0..3).filter(|&i| i != even).map(|i| v[i]).collect();
            let (a, b, c) = (v[even] / 2, odds[0] / 2, odds[1] / 2);
            vec![BoxDims::new(a, b + 1, c), BoxDims::new(a, b, c + 1)]
        }
        ReductionRule::OneOdd => {
            let odd = v.iter().position(|x| x % 2 == 1).unwrap();
            let evens: Vec<u64> = (0..3).filter(|&i| i != odd).map(|i| v[i]).collect();
            let (a, b, c) = (v[odd] / 2, evens[0] / 2, evens[1] / 2);
            vec![BoxDims::new(a, b, c), BoxDims::new(a + 1, b, c)]
        }
        ReductionRule::AllOddTerminal | ReductionRule::BaseCase => Vec::new(),
    }
}

struct TraceBuilder {
    steps: Vec<TraceStep>,
    seen: HashMap<BoxDims, bool>,
}

impl TraceBuilder {
    fn eval(&mut self, d: BoxDims) -> bool {
        let key = d.sorted();
        if let Some(&odd) = self.seen.get(&key) {
            return odd;
        }
        let rule = ReductionRule::for_dims(d);
        let kids = children(d, rule);
        let idx = self.steps.len();
        self.steps.push(TraceStep { dims_in: d, rule, children: kids.clone(), pruned: false, odd: false });

        let (odd, pruned) = match rule {
            ReductionRule::BaseCase => (true, false),
            ReductionRule::AllOddTerminal => (false, false),
            ReductionRule::AllEven => (self.eval(kids[0]), false),
            ReductionRule::OneOdd | ReductionRule::TwoOdd => {
                if self.eval(kids[0]) {
                    (self.eval(kids[1]), false)
                } else {
                    (false, true)
                }
            }
        };
        self.steps[idx].odd = odd;
        self.steps[idx].pruned = pruned;
        self.seen.insert(key, odd);
        odd
    }
}

/// Decides the parity of `B(a,b,c)` by the halving recursion and records every step.
pub fn box_parity_trace(d: BoxDims) -> ReductionTrace {
    let mut builder = TraceBuilder { steps: Vec::new(), seen: HashMap::new() };
    let verdict = builder.eval(d);
    ReductionTrace { steps: builder.steps, verdict }
}

/// Closed-form parity of `B(a,b,c)` where one is known; `None` otherwise.
///
/// After sorting so that `a` is the smallest side, handles `a ∈ {1, 2, 3}`
/// and `a = 2^q` with `(b, c) mod 2^q` in `{(0,0), (0,1), (1,0), (1,1)}`.
pub fn box_small_a_parity(d: BoxDims) -> Option<bool> {
    let BoxDims { a, b, c } = d.sorted();
    let dj = |x: u64, y: u64| disjoint_expansion(u128::from(x), u128::from(y));
    match a {
        0 => None,
        1 => Some(dj(b, c)),
        2 => {
            let (b, c) = if b % 2 == 1 && c % 2 == 0 { (c, b) } else { (b, c) };
            Some(match (b % 2, c % 2) {
                (0, 0) => dj(b, c),
                (0, _) => dj(b, c) && dj(b, c + 1),
                _ => dj(b, c + 1) && dj(b + 1, c),
            })
        }
        3 => {
            let (b, c) = if b % 2 == 1 && c % 2 == 0 { (c, b) } else { (b, c) };
            if b % 2 == 1 {
                // all three sides odd
                return Some(false);
            }
            if c % 2 == 0 {
                let (b, c) = if b % 4 == 2 && c % 4 == 0 { (c, b) } else { (b, c) };
                Some(match (b % 4, c % 4) {
                    (0, 0) => dj(b, c),
                    (0, _) => dj(b, c) && dj(b, c + 2),
                    _ => dj(b, c) && dj(b, c + 2) && dj(b + 2, c),
                })
            } else if b % 4 == 0 {
                Some(dj(b, c) && dj(b, c + 1))
            } else {
                Some(dj(b, c + 1) && dj(b + 2, c))
            }
        }
        _ if a.is_power_of_two() => {
            let (b, c) = if b % a == 1 && c % a == 0 { (c, b) } else { (b, c) };
            match (b % a, c % a) {
                (0, 0) => Some(dj(b, c)),
                (0, 1) => Some(dj(b, c) && dj(b, c + a - 1)),
                (1, 1) => Some(dj(b + 1, c) && dj(b, c + 1) && dj(b + a - 1, c) && dj(b, c + a - 1)),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Sufficient conditions for `γ_{k,m,n} = B(n−k, m−k, k)` to be odd, for
/// `1 ≤ k < n ≤ m`. `Some(true)` when a listed case matches; `None` carries no
/// parity information.
///
/// The case `k = n−3`, `4 | (n−1)`, `4 | m` requires all three pairs of the
/// `b ≡ c ≡ 2 (mod 4)` rule for `a = 3`; such pairs always overlap in bit 1,
/// so that case never fires.
pub fn gamma_odd_case_check(k: u64, m: u64, n: u64) -> Result<Option<bool>> {
    if !(1 <= k && k < n && n <= m) {
        return Err(domain(format!("gamma case check requires 1 <= k < n <= m (k = {k}, m = {m}, n = {n})")));
    }
    let dj = |x: u64, y: u64| disjoint_expansion(u128::from(x), u128::from(y));
    let all = |pairs: &[(u64, u64)]| pairs.iter().all(|&(x, y)| dj(x, y));

    if k == n - 1 && dj(m - n + 1, n - 1) {
        return Ok(Some(true));
    }
    if k >= 2 && k == n - 2 {
        let hit = match (n % 2, m % 2) {
            (0, 0) => dj(n - 2, m - n + 2),
            (0, 1) => all(&[(n - 2, m - n + 2), (n - 2, m - n + 3)]),
            (1, 0) => all(&[(n - 2, m - n + 3), (n - 1, m - n + 2)]),
            _ => false,
        };
        if hit {
            return Ok(Some(true));
        }
    }
    if k >= 3 && k == n - 3 {
        let b = m - n + 3;
        let cases: [(bool, &[(u64, u64)]); 8] = [
            ((n - 3).is_multiple_of(4) && m.is_multiple_of(4), &[(n - 3, b)]),
            ((n - 3).is_multiple_of(4) && (m + 2).is_multiple_of(4), &[(n - 3, b), (n - 3, b + 2)]),
            ((n - 1).is_multiple_of(4) && (m + 2).is_multiple_of(4), &[(n - 3, b), (n - 1, b)]),
            ((n - 1).is_multiple_of(4) && m.is_multiple_of(4), &[(n - 3, b), (n - 1, b), (n - 3, b + 2)]),
            ((n - 3).is_multiple_of(4) && m % 2 == 1, &[(n - 3, b), (n - 3, b + 1)]),
            ((n - 1).is_multiple_of(4) && m % 2 == 1, &[(n - 3, b + 1), (n - 1, b)]),
            (b.is_multiple_of(4) && n.is_multiple_of(2), &[(n - 3, b), (n - 2, b)]),
            ((b + 2).is_multiple_of(4) && n.is_multiple_of(2), &[(n - 2, b), (n - 3, b + 2)]),
        ];
        if cases.iter().any(|(cond, pairs)| *cond && all(pairs)) {
            return Ok(Some(true));
        }
    }
    let side = n - k;
    if side.is_power_of_two() {
        let p = side;
        let hit = (k.is_multiple_of(p) && m.is_multiple_of(p) && dj(k, m - k))
            || (k.is_multiple_of(p) && (m - 1).is_multiple_of(p) && all(&[(k, m - k), (k, m - k + p - 1)]))
            || (2 * p < n
                && (k - 1).is_multiple_of(p)
                && (m - 1).is_multiple_of(p)
                && all(&[(k, m - k), (k + p - 1, m - k)]))
            || (2 * p < n
                && (k - 1).is_multiple_of(p)
                && (m - 2).is_multiple_of(p)
                && all(&[(k + 1, m - k), (k, m - k + 1), (k + p - 1, m - k), (k, m - k + p - 1)]));
        if hit {
            return Ok(Some(true));
        }
    }
    Ok(None)
}
