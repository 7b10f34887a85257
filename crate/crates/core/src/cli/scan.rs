use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;

use super::compute::check_guard;
use super::output::{Field, Record, Sink};
use super::{CliError, CliResult, IntRange, ScanOpts, ScanTarget, BOX_EXACT_GUARD, THETA_EXACT_GUARD};
use crate::box_parity::{box_count_exact, box_valuation, BoxDims};
use crate::error::{Error, Result};
use crate::theta_engine::{theta_exact, theta_valuation};
use crate::variety_degrees::{epsilon_exact, epsilon_valuation, gamma_exact, gamma_valuation, DegreeQuery};

/// Rows handed to the worker pool at a time; output is written between batches.
const BATCH: usize = 4096;

pub(crate) fn run(target: ScanTarget, out: &mut dyn Write) -> CliResult<()> {
    match target {
        ScanTarget::Theta { q, i, opts } => {
            let tuples = q.iter().flat_map(move |q| i.iter().map(move |i| (q, i)));
            let limit = opts.exact_limit.unwrap_or(THETA_EXACT_GUARD);
            let exact = opts.exact;
            let guard = |&(q, i): &(u64, u64)| check_guard(theta_n(q, i)?, limit, "theta");
            let row = |&(q, i): &(u64, u64)| -> Result<Record> {
                let n = theta_n(q, i)?;
                let mut rec =
                    Record::default().uint("q", q).uint("i", i).uint("n", n).uint("valuation", theta_valuation(q, n)?);
                if exact {
                    rec.push("exact", Field::Text(theta_exact(q, n).to_str_radix(10)));
                }
                Ok(rec)
            };
            drive(&["q", "i", "n", "valuation"], tuples, guard, row, &opts, out)
        }
        ScanTarget::Epsilon { n, p, q, opts } => {
            let tuples: Vec<(u64, u64)> = match (p, q) {
                (Some(p), _) => n.iter().flat_map(|n| p.iter().map(move |p| (p, n))).collect(),
                (None, Some(q)) => n
                    .iter()
                    .flat_map(|n| q.iter().filter(move |&q| q <= n && (n - q) % 2 == 0).map(move |q| ((n - q) / 2, n)))
                    .collect(),
                (None, None) => return Err(CliError::Usage("epsilon scan needs --p or --q".into())),
            };
            let tuples = tuples.into_iter().filter(|&(p, n)| DegreeQuery::skew(p, n).validate().is_ok());
            let limit = opts.exact_limit.unwrap_or(THETA_EXACT_GUARD);
            let exact = opts.exact;
            let guard = |&(_, n): &(u64, u64)| check_guard(n, limit, "epsilon");
            let row = |&(p, n): &(u64, u64)| -> Result<Record> {
                let v = epsilon_valuation(p, n)?;
                let mut rec = Record::default().uint("p", p).uint("n", n).uint("valuation", v).bool("odd", v == 0);
                if exact {
                    rec.push("exact", Field::Text(epsilon_exact(p, n)?.to_str_radix(10)));
                }
                Ok(rec)
            };
            drive(&["p", "n", "valuation", "odd"], tuples, guard, row, &opts, out)
        }
        ScanTarget::Gamma { k, m, n, opts } => {
            let tuples = k
                .iter()
                .flat_map(move |k| m.iter().flat_map(move |m| n.iter().map(move |n| (k, m, n))))
                .filter(|&(k, m, n)| DegreeQuery::rectangular(k, m, n).validate().is_ok());
            let limit = opts.exact_limit.unwrap_or(BOX_EXACT_GUARD);
            let exact = opts.exact;
            let guard = |&(k, m, n): &(u64, u64, u64)| check_guard(box_size(n - k, m - k, k)?, limit, "gamma");
            let row = |&(k, m, n): &(u64, u64, u64)| -> Result<Record> {
                let v = gamma_valuation(k, m, n)?;
                let mut rec =
                    Record::default().uint("k", k).uint("m", m).uint("n", n).uint("valuation", v).bool("odd", v == 0);
                if exact {
                    rec.push("exact", Field::Text(gamma_exact(k, m, n)?.to_str_radix(10)));
                }
                Ok(rec)
            };
            drive(&["k", "m", "n", "valuation", "odd"], tuples, guard, row, &opts, out)
        }
        ScanTarget::Box { a, b, c, opts } => {
            let tuples = a.iter().flat_map(move |a| {
                let bs = b.unwrap_or(IntRange::point(a));
                bs.iter().flat_map(move |b| c.unwrap_or(IntRange::point(b)).iter().map(move |c| BoxDims::new(a, b, c)))
            });
            let limit = opts.exact_limit.unwrap_or(BOX_EXACT_GUARD);
            let exact = opts.exact;
            let guard = |d: &BoxDims| check_guard(box_size(d.a, d.b, d.c)?, limit, "box count");
            let row = |&d: &BoxDims| -> Result<Record> {
                let v = box_valuation(d);
                let mut rec = Record::default()
                    .uint("a", d.a)
                    .uint("b", d.b)
                    .uint("c", d.c)
                    .uint("valuation", v)
                    .bool("odd", v == 0);
                if exact {
                    rec.push("exact", Field::Text(box_count_exact(d)?.to_str_radix(10)));
                }
                Ok(rec)
            };
            drive(&["a", "b", "c", "valuation", "odd"], tuples, guard, row, &opts, out)
        }
    }
}

fn theta_n(q: u64, i: u64) -> Result<u64> {
    i.checked_mul(2).and_then(|x| x.checked_add(q)).ok_or(Error::Overflow("q + 2i"))
}

fn box_size(a: u64, b: u64, c: u64) -> Result<u64> {
    a.checked_add(b).and_then(|s| s.checked_add(c)).ok_or(Error::Overflow("a + b + c"))
}

/// Checks every tuple against the exact-path guard before any output, then
/// evaluates batches on the pool and writes them in tuple order.
fn drive<T, I, G, F>(
    base_columns: &[&'static str],
    tuples: I,
    guard: G,
    row: F,
    opts: &ScanOpts,
    out: &mut dyn Write,
) -> CliResult<()>
where
    T: Send + Sync,
    I: Iterator<Item = T> + Clone,
    G: Fn(&T) -> Result<()>,
    F: Fn(&T) -> Result<Record> + Sync,
{
    if opts.exact {
        tuples.clone().try_for_each(|t| guard(&t))?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.parallelism)
        .build()
        .map_err(|e| Error::Internal(format!("worker pool: {e}")))?;

    let mut columns = base_columns.to_vec();
    if opts.exact {
        columns.push("exact");
    }
    let mut sink = Sink::new(opts.format, &columns, out)?;
    let mut tuples = tuples.peekable();
    while tuples.peek().is_some() {
        let batch: Vec<T> = tuples.by_ref().take(BATCH).collect();
        let records: Vec<Result<Record>> = pool.install(|| batch.par_iter().map(&row).collect());
        for rec in records {
            sink.write(&rec?)?;
        }
    }
    let trailer = opts.timestamps.then(|| {
        let ms = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis()).unwrap_or(0);
        format!("# finished_unix_ms={ms}")
    });
    sink.finish(trailer.as_deref())
}
