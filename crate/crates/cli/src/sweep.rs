//! `sweep-d4`: vertex counts of the four-dimensional class for `p = s/100`.

use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use bernpoly_core::polytope::{build_constraints, enumerate_vertices_oracle};
use bernpoly_core::rational::{ratio, to_canonical};
use bernpoly_core::{MarginParam, Rational};

use crate::CliError;

pub const DENOMINATOR: i64 = 100;
/// Rank of the margin constraints plus normalization for `d = 4`.
pub const MAX_SUPPORT: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRecord {
    pub s: i64,
    pub t: i64,
    pub p: Rational,
    pub vertex_count: usize,
    pub elapsed_ms: u128,
}

/// Thread count from `BP_THREADS`; `None` when unset, empty or zero, which
/// leaves the choice to rayon (all available cores).
pub fn threads_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var("BP_THREADS") {
        Err(_) => Ok(None),
        Ok(v) if v.trim().is_empty() => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(0) => Ok(None),
            Ok(n) => Ok(Some(n)),
            Err(_) => Err(CliError::Usage(format!("BP_THREADS must be a positive integer, got {v:?}"))),
        },
    }
}

fn sweep_one(s: i64) -> Result<SweepRecord, CliError> {
    let p = MarginParam::new(s, DENOMINATOR)?;
    let start = Instant::now();
    let cs = build_constraints(4, &p)?;
    let es = enumerate_vertices_oracle(&cs);
    let elapsed_ms = start.elapsed().as_millis();
    for v in &es.vertices {
        let support = v.pmf.support().len();
        if !cs.is_member(&v.pmf)? || support > MAX_SUPPORT || !cs.is_vertex(&v.pmf)? {
            return Err(CliError::Failed(format!(
                "p = {p}: {} fails re-verification (support {support})",
                v.name
            )));
        }
    }
    Ok(SweepRecord { s, t: DENOMINATOR, p: ratio(s, DENOMINATOR), vertex_count: es.len(), elapsed_ms })
}

/// Runs the oracle for every `s` in `s_from..=s_to`, returning records
/// sorted by `s`.
pub fn sweep_d4(s_from: i64, s_to: i64, threads: Option<usize>) -> Result<Vec<SweepRecord>, CliError> {
    if s_from > s_to {
        return Err(CliError::Usage(format!("s_from ({s_from}) exceeds s_to ({s_to})")));
    }
    if s_from < 1 || s_to > DENOMINATOR / 2 {
        return Err(CliError::Usage(format!("s must lie in 1..={}", DENOMINATOR / 2)));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Usage(e.to_string()))?;
    let mut records = pool.install(|| {
        (s_from..=s_to).into_par_iter().map(sweep_one).collect::<Result<Vec<_>, _>>()
    })?;
    records.sort_by_key(|r| r.s);
    Ok(records)
}

pub fn records_csv(records: &[SweepRecord]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(["s", "p", "nr", "elapsed_ms"]).map_err(io)?;
    for r in records {
        w.write_record([r.s.to_string(), to_canonical(&r.p), r.vertex_count.to_string(), r.elapsed_ms.to_string()])
            .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Writes the CSV to `out` and returns plot-ready `s nr` lines.
pub fn cmd_sweep_d4(s_from: i64, s_to: i64, out: &Path, threads: Option<usize>) -> Result<String, CliError> {
    let records = sweep_d4(s_from, s_to, threads)?;
    std::fs::write(out, records_csv(&records)?)
        .map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
    let mut text = String::from("# s nr\n");
    for r in &records {
        text.push_str(&format!("{} {}\n", r.s, r.vertex_count));
    }
    Ok(text)
}
