use std::io::Write;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CliError, CliResult};
use crate::box_parity::{box_count_exact, box_parity_trace, box_small_a_parity, box_valuation, BoxDims};
use crate::digit_core::{
    digit_sum, digit_sum_big, digit_sum_prefix, digit_sum_prefix_big, disjoint_expansion, factorial_valuation,
    integer_valuation,
};
use crate::error::Result;
use crate::exact::{binomial, factorial};
use crate::oracles::plane_partitions::{plane_partition_count, EnumerationGuard};
use crate::oracles::skew::{is_invertible, rank, skew_congruence_reduce, RationalMatrix};
use crate::theta_engine::{
    interval_report, theta_exact, theta_is_odd, theta_valuation, valuation_one_sites, IntervalKind,
};
use crate::variety_degrees::{epsilon_exact, epsilon_is_odd, epsilon_valuation};

pub(crate) const SUITES: [&str; 6] = ["digit", "theta", "interval", "epsilon", "box", "skew"];

struct Tally {
    name: &'static str,
    checks: u64,
    failures: u64,
    first: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self { name, checks: 0, failures: 0, first: None }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn check_eq<T: PartialEq + std::fmt::Debug>(&mut self, got: T, want: T, what: impl FnOnce() -> String) {
        let ok = got == want;
        self.check(ok, || format!("{}: got {got:?}, expected {want:?}", what()));
    }
}

/// Runs the selected suites and prints one summary line each; `Ok(true)` iff all pass.
pub(crate) fn run(suite: &str, bound: Option<u64>, out: &mut dyn Write) -> CliResult<bool> {
    let selected: Vec<&str> = match suite {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        other => {
            return Err(CliError::Usage(format!(
                "unknown suite {other:?}; expected one of {} or all",
                SUITES.join(", ")
            )))
        }
    };
    let mut all_ok = true;
    for name in selected {
        let tally = run_suite(name, bound);
        let status = if tally.failures == 0 { "pass" } else { "FAIL" };
        writeln!(out, "{}: {status} checks={} failures={}", tally.name, tally.checks, tally.failures)?;
        if let Some(first) = &tally.first {
            writeln!(out, "  first counterexample: {first}")?;
        }
        all_ok &= tally.failures == 0;
    }
    Ok(all_ok)
}

fn run_suite(name: &str, bound: Option<u64>) -> Tally {
    let (label, result) = match name {
        "digit" => ("digit", digit(bound.unwrap_or(1000))),
        "theta" => ("theta", theta(bound.unwrap_or(200))),
        "interval" => ("interval", interval(bound.unwrap_or(64))),
        "epsilon" => ("epsilon", epsilon(bound.unwrap_or(200))),
        "box" => ("box", boxes(bound.unwrap_or(32))),
        "skew" => ("skew", skew(bound.unwrap_or(8))),
        _ => unreachable!("suite names are validated by the caller"),
    };
    result.unwrap_or_else(|e| {
        let mut t = Tally::new(label);
        t.check(false, || format!("aborted: {e}"));
        t
    })
}

fn digit(bound: u64) -> Result<Tally> {
    let mut t = Tally::new("digit");
    let mut running_s = 0u128;
    let mut running_fact = 0u128;
    for a in 0..=u128::from(bound) {
        t.check_eq(digit_sum_prefix(a), running_s, || format!("S({a})"));
        t.check_eq(digit_sum_prefix_big(&BigUint::from(a)), BigUint::from(running_s), || format!("S_big({a})"));
        t.check_eq(digit_sum_big(&BigUint::from(a)), u64::from(digit_sum(a)), || format!("s_big({a})"));
        t.check_eq(factorial_valuation(a), running_fact, || format!("nu2({a}!)"));
        let p = a;
        t.check_eq(digit_sum_prefix(2 * p), 2 * digit_sum_prefix(p) + p, || format!("S(2*{p})"));
        t.check_eq(digit_sum_prefix(2 * p + 1), 2 * digit_sum_prefix(p) + p + u128::from(digit_sum(p)), || {
            format!("S(2*{p}+1)")
        });
        running_s += u128::from(digit_sum(a));
        running_fact += u128::from((a + 1).trailing_zeros());
    }
    for n in 0..=bound.min(400) {
        let exact = integer_valuation(&factorial(n))?;
        t.check_eq(factorial_valuation(u128::from(n)), u128::from(exact), || format!("nu2({n}!) vs exact"));
    }
    let side = bound.min(64);
    for b in 0..=side {
        for c in 0..=side {
            let odd = binomial(b + c, b).bit(0);
            t.check_eq(disjoint_expansion(u128::from(b), u128::from(c)), odd, || format!("disjoint({b},{c})"));
        }
    }
    Ok(t)
}

fn theta(bound: u64) -> Result<Tally> {
    let mut t = Tally::new("theta");
    for n in 0..=bound {
        for q in 0..=n {
            let v = theta_valuation(q, n)?;
            t.check_eq(theta_is_odd(q, n), v == 0, || format!("parity criterion q={q} n={n}"));
            if (n - q) % 2 == 1 {
                let next = theta_valuation(q + 1, n)?;
                t.check_eq(v, next + q, || format!("odd-difference law q={q} n={n}"));
            }
        }
        t.check(!theta_is_odd(n + 1, n), || format!("q > n reported odd, n={n}"));
    }
    for n in 0..=bound.min(100) {
        for q in 0..=n {
            let exact = integer_valuation(&theta_exact(q, n))?;
            t.check_eq(theta_valuation(q, n)?, exact, || format!("formula vs exact q={q} n={n}"));
        }
    }
    Ok(t)
}

fn interval(bound: u64) -> Result<Tally> {
    let mut t = Tally::new("interval");
    for q in 1..=bound {
        let period = q.next_power_of_two();
        for c in 0..=3u64 {
            for kind in [IntervalKind::Opening, IntervalKind::Closing] {
                let r = interval_report(q, c, kind)?;
                t.check(r.all_ok(), || format!("{kind:?} interval q={q} c={c}: {r:?}"));
            }
            let mut scan = Vec::new();
            for i in c * period..=(c + 1) * period {
                if theta_valuation(q, q + 2 * i)? == 1 {
                    scan.push(i);
                }
            }
            t.check_eq(valuation_one_sites(q, c)?, scan, || format!("valuation-one sites q={q} c={c}"));
        }
    }
    Ok(t)
}

fn epsilon(bound: u64) -> Result<Tally> {
    let mut t = Tally::new("epsilon");
    for n in 4..=bound {
        for p in 1..n / 2 {
            let v = epsilon_valuation(p, n)?;
            t.check_eq(epsilon_is_odd(p, n)?, v == 0, || format!("parity criterion p={p} n={n}"));
            if n <= 80 {
                let exact = integer_valuation(&epsilon_exact(p, n)?)?;
                t.check_eq(v, exact, || format!("formula vs exact p={p} n={n}"));
            }
        }
        t.check_eq(epsilon_exact(n / 2, n)?, BigUint::from(1u32), || format!("degenerate p={} n={n}", n / 2));
    }
    Ok(t)
}

fn boxes(bound: u64) -> Result<Tally> {
    let mut t = Tally::new("box");
    let s = |x: u64| u64::from(digit_sum(u128::from(x)));
    let nu = |a, b, c| box_valuation(BoxDims::new(a, b, c));
    for a in 0..=bound {
        for b in 0..=bound {
            for c in 0..=bound {
                let d = BoxDims::new(a, b, c);
                let v = box_valuation(d);
                t.check_eq(box_parity_trace(d).verdict, v == 0, || format!("trace verdict {d}"));
                for perm in d.permutations() {
                    t.check_eq(box_valuation(perm), v, || format!("symmetry {d} vs {perm}"));
                }
                if let Some(odd) = box_small_a_parity(d) {
                    t.check_eq(odd, v == 0, || format!("closed-form parity {d}"));
                }
                // halving identities
                t.check_eq(nu(2 * a, 2 * b, 2 * c), 2 * v, || format!("all-even identity at {d}"));
                t.check_eq(nu(2 * a, 2 * b + 1, 2 * c + 1), nu(a, b + 1, c) + nu(a, b, c + 1), || {
                    format!("two-odd identity at {d}")
                });
                t.check_eq(nu(2 * a + 1, 2 * b, 2 * c), v + nu(a + 1, b, c), || format!("one-odd identity at {d}"));
                let all_odd = nu(2 * a + 1, 2 * b + 1, 2 * c + 1);
                t.check_eq(all_odd + s(b + c + 1), nu(a, b + 1, c + 1) + nu(a + 1, b, c) + s(b + c) + 2, || {
                    format!("all-odd identity at {d}")
                });
                t.check(all_odd >= 1, || format!("all-odd box {d} reported odd"));
            }
        }
    }
    let side = bound.min(10);
    for a in 0..=side {
        for b in 0..=side {
            for c in 0..=side {
                let d = BoxDims::new(a, b, c);
                let exact = integer_valuation(&box_count_exact(d)?)?;
                t.check_eq(box_valuation(d), exact, || format!("formula vs exact {d}"));
            }
        }
    }
    let side = bound.min(4);
    for a in 0..=side {
        for b in 0..=side {
            for c in 0..=side {
                let d = BoxDims::new(a, b, c);
                let count = plane_partition_count(d, EnumerationGuard::default())?;
                t.check_eq(box_count_exact(d)?, count, || format!("enumeration {d}"));
            }
        }
    }
    Ok(t)
}

/// Random matrices: half with independent entries, half `X·(⊕S₂)·Xᵀ` for a
/// random integer `X`, which reaches every even rank.
pub(crate) fn random_skew(rng: &mut ChaCha8Rng, max_order: usize) -> RationalMatrix {
    let n = rng.gen_range(1..=max_order.max(1));
    let entry = |rng: &mut ChaCha8Rng| {
        BigRational::new(BigInt::from(rng.gen_range(-6i64..=6)), BigInt::from(rng.gen_range(1i64..=5)))
    };
    if rng.gen_bool(0.5) {
        let mut a = RationalMatrix::zeros(n);
        for i in 0..n {
            for j in i + 1..n {
                let x = if rng.gen_bool(0.2) { BigRational::from_integer(0.into()) } else { entry(rng) };
                a[(j, i)] = -x.clone();
                a[(i, j)] = x;
            }
        }
        a
    } else {
        let blocks = rng.gen_range(0..=n / 2);
        let mut x = RationalMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                x[(i, j)] = BigRational::from_integer(BigInt::from(rng.gen_range(-2i64..=2)));
            }
        }
        RationalMatrix::canonical_skew(n, blocks).congruent_by(&x)
    }
}

fn skew(bound: u64) -> Result<Tally> {
    let mut t = Tally::new("skew");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_5e3d);
    let max_order = usize::try_from(bound).unwrap_or(usize::MAX).clamp(1, 16);
    for idx in 0..200 {
        let a = random_skew(&mut rng, max_order);
        let red = skew_congruence_reduce(&a)?;
        let n = a.order();
        t.check_eq(red.rank, rank(&a), || format!("matrix #{idx}: rank"));
        t.check(red.rank % 2 == 0, || format!("matrix #{idx}: odd rank {}", red.rank));
        t.check(is_invertible(&red.transform), || format!("matrix #{idx}: singular transform"));
        let canonical = RationalMatrix::canonical_skew(n, red.rank / 2);
        t.check(a.congruent_by(&red.transform) == canonical, || format!("matrix #{idx}: not canonical {a:?}"));
    }
    Ok(t)
}
