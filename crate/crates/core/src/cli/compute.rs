use std::io::Write;

use super::output::{emit, Field, Record};
use super::{CliResult, ComputeOpts, BOX_EXACT_GUARD, THETA_EXACT_GUARD};
use crate::box_parity::{box_count_exact, box_parity_trace, box_valuation, BoxDims};
use crate::error::{Error, Result};
use crate::theta_engine::{delta_valuation, theta_report};
use crate::variety_degrees::{
    epsilon_exact, epsilon_valuation, gamma_exact, gamma_valuation, skew_is_degenerate, DegreeQuery,
};

pub(crate) fn check_guard(size: u64, limit: u64, what: &str) -> Result<()> {
    if size > limit {
        return Err(Error::GuardExceeded(format!("exact {what} requires size <= {limit}, got {size}")));
    }
    Ok(())
}

fn exact_field(x: &num_bigint::BigUint) -> Field {
    Field::Text(x.to_str_radix(10))
}

pub(crate) fn theta(q: u64, n: u64, opts: &ComputeOpts, out: &mut dyn Write) -> CliResult<()> {
    if opts.exact {
        check_guard(n, opts.exact_limit.unwrap_or(THETA_EXACT_GUARD), "theta")?;
    }
    let report = theta_report(q, n, opts.exact)?;
    let mut rec =
        Record::default().uint("q", q).uint("n", n).uint("valuation", report.valuation).bool("odd", report.parity_odd);
    if let Some(x) = &report.exact_value {
        rec.push("exact", exact_field(x));
    }
    emit(opts.format, &rec, out)
}

pub(crate) fn delta(k: u64, n: u64, opts: &ComputeOpts, out: &mut dyn Write) -> CliResult<()> {
    if opts.exact {
        check_guard(n, opts.exact_limit.unwrap_or(THETA_EXACT_GUARD), "delta")?;
    }
    let report = delta_valuation(k, n, opts.exact)?;
    let mut rec =
        Record::default().uint("k", k).uint("n", n).uint("valuation", report.valuation).bool("odd", report.parity_odd);
    if let Some(x) = &report.exact_value {
        rec.push("exact", exact_field(x));
    }
    emit(opts.format, &rec, out)
}

pub(crate) fn epsilon(p: u64, n: u64, opts: &ComputeOpts, out: &mut dyn Write) -> CliResult<()> {
    DegreeQuery::skew(p, n).validate()?;
    if opts.exact {
        check_guard(n, opts.exact_limit.unwrap_or(THETA_EXACT_GUARD), "epsilon")?;
    }
    let valuation = epsilon_valuation(p, n)?;
    let mut rec = Record::default().uint("p", p).uint("n", n).uint("valuation", valuation).bool("odd", valuation == 0);
    if skew_is_degenerate(p, n) {
        rec.push("degenerate", Field::Bool(true));
    }
    if opts.exact {
        rec.push("exact", exact_field(&epsilon_exact(p, n)?));
    }
    emit(opts.format, &rec, out)
}

pub(crate) fn gamma(k: u64, m: u64, n: u64, opts: &ComputeOpts, out: &mut dyn Write) -> CliResult<()> {
    DegreeQuery::rectangular(k, m, n).validate()?;
    if opts.exact {
        check_guard(n + m - k, opts.exact_limit.unwrap_or(BOX_EXACT_GUARD), "gamma")?;
    }
    let valuation = gamma_valuation(k, m, n)?;
    let mut rec = Record::default()
        .uint("k", k)
        .uint("m", m)
        .uint("n", n)
        .uint("valuation", valuation)
        .bool("odd", valuation == 0);
    if opts.exact {
        rec.push("exact", exact_field(&gamma_exact(k, m, n)?));
    }
    emit(opts.format, &rec, out)
}

pub(crate) fn boxed(a: u64, b: u64, c: u64, trace: bool, opts: &ComputeOpts, out: &mut dyn Write) -> CliResult<()> {
    let d = BoxDims::new(a, b, c);
    let size = a.checked_add(b).and_then(|s| s.checked_add(c)).ok_or(Error::Overflow("a + b + c"))?;
    if opts.exact {
        check_guard(size, opts.exact_limit.unwrap_or(BOX_EXACT_GUARD), "box count")?;
    }
    let valuation = box_valuation(d);
    let mut rec = Record::default()
        .uint("a", a)
        .uint("b", b)
        .uint("c", c)
        .uint("valuation", valuation)
        .bool("odd", valuation == 0);
    if opts.exact {
        rec.push("exact", exact_field(&box_count_exact(d)?));
    }
    if trace {
        let t = box_parity_trace(d);
        if t.verdict != (valuation == 0) {
            return Err(Error::Internal(format!("trace verdict for {d} disagrees with the valuation")).into());
        }
        rec.push("trace", Field::Trace(t));
    }
    emit(opts.format, &rec, out)
}
