//! `verify`: checks the closed-form columns against the enumeration oracle
//! over a grid of `p` values.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use bernpoly_core::algebra::{apply_map, express_in_fundamentals};
use bernpoly_core::pmf::atom_label;
use bernpoly_core::polytope::{build_constraints, closed_form_columns, enumerate_vertices_oracle, Tag};
use bernpoly_core::rational::{parse_canonical, ratio, to_canonical};
use bernpoly_core::{BernoulliPmf, MarginParam, Rational};

use crate::render::Fmt;
use crate::CliError;

/// Test-mode perturbation of one table entry: `NAME:ATOM:DELTA`, e.g.
/// `r4:110:1/1000`. The atom is given by its bit label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corruption {
    pub column: String,
    pub atom: usize,
    pub delta: Rational,
}

impl Corruption {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = text.split(':').collect();
        let [column, atom, delta] = parts.as_slice() else {
            return Err(CliError::Usage(format!("corruption {text:?} is not NAME:ATOM:DELTA")));
        };
        let atom = (0..8)
            .find(|&k| atom_label(k, 3) == *atom)
            .ok_or_else(|| CliError::Usage(format!("unknown atom {atom:?}")))?;
        let delta = parse_canonical(delta).map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(Corruption { column: column.to_string(), atom, delta })
    }
}

/// Every reduced `s/t` with `2 <= t <= max_t` and `s/t <= 1/2`, ascending.
pub fn default_grid(max_t: i64) -> Vec<MarginParam> {
    let set: BTreeSet<Rational> = (2..=max_t)
        .flat_map(|t| (1..=t / 2).map(move |s| ratio(s, t)))
        .collect();
    set.into_iter()
        .map(|p| MarginParam::from_rational(p).expect("grid values lie in (0, 1/2]"))
        .collect()
}

/// Expected vertex count of the three-dimensional class.
pub fn expected_count(p: &MarginParam) -> usize {
    let q = p.p();
    if q <= &ratio(1, 3) || q == &ratio(1, 2) {
        6
    } else {
        9
    }
}

#[derive(Debug, Clone)]
pub struct PointReport {
    pub p: MarginParam,
    pub failures: Vec<String>,
    pub count: usize,
}

impl PointReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn tag_check(p: &MarginParam, name: &str, tag: Tag, f: &BernoulliPmf) -> Option<String> {
    let poly = match apply_map(p, f) {
        Ok(poly) => poly,
        Err(e) => return Some(format!("{name}: {e}")),
    };
    if tag.is_kernel() {
        return (!poly.is_zero()).then(|| format!("{name}: tagged {tag} but maps to {poly}"));
    }
    let Some(gamma) = express_in_fundamentals(&poly) else {
        return Some(format!("{name}: image {poly} is not a multiple of F+"));
    };
    let ok = match tag {
        Tag::Type0Plus => gamma.is_positive(),
        Tag::Type0Minus => gamma.is_negative(),
        _ => !gamma.is_zero(),
    };
    (!ok).then(|| format!("{name}: tagged {tag} with gamma = {}", to_canonical(&gamma)))
}

/// Runs every check at one `p`, optionally perturbing a table entry first.
pub fn verify_point(p: &MarginParam, corruption: Option<&Corruption>) -> PointReport {
    let mut failures = Vec::new();
    let mut columns = closed_form_columns(p);
    if let Some(c) = corruption {
        for (name, _, values) in columns.iter_mut() {
            if *name == c.column {
                values[c.atom] += &c.delta;
            }
        }
    }
    let cs = build_constraints(3, p).expect("three-dimensional class");
    let mut closed: BTreeSet<Vec<Rational>> = BTreeSet::new();
    let mut names: Vec<(String, &Vec<Rational>)> = Vec::new();
    for (name, tag, values) in &columns {
        match BernoulliPmf::new(3, values.clone()) {
            Err(e) => failures.push(format!("{name}: not a pmf ({e})")),
            Ok(f) => {
                if cs.apply(values).iter().any(|x| !x.is_zero()) {
                    failures.push(format!("{name}: margins differ from p"));
                } else if let Some(msg) = tag_check(p, name, *tag, &f) {
                    failures.push(msg);
                }
            }
        }
        closed.insert(values.clone());
        names.push((name.clone(), values));
    }
    let oracle = enumerate_vertices_oracle(&cs);
    let oracle_set: BTreeSet<Vec<Rational>> = oracle.pmfs().map(|f| f.values().to_vec()).collect();
    let fmt = Fmt::default();
    for (name, values) in &names {
        if !oracle_set.contains(*values) {
            failures.push(format!("{name} not found by the oracle: {}", fmt.list(values)));
        }
    }
    for v in oracle_set.difference(&closed) {
        failures.push(format!("oracle vertex missing from table: {}", fmt.list(v)));
    }
    let expected = expected_count(p);
    if closed.len() != expected || oracle_set.len() != expected {
        failures.push(format!(
            "vertex count: table {}, oracle {}, expected {expected}",
            closed.len(),
            oracle_set.len()
        ));
    }
    PointReport { p: p.clone(), failures, count: oracle_set.len() }
}

/// Reports for every grid point, in grid order. The points run in
/// parallel; the output does not depend on scheduling.
pub fn verify_grid(grid: &[MarginParam], corruption: Option<&Corruption>) -> Vec<PointReport> {
    grid.par_iter().map(|p| verify_point(p, corruption)).collect()
}

/// Text report ending in a summary line; `Err(Failed)` carries the same
/// text when any point fails.
pub fn cmd_verify(grid: &[MarginParam], corruption: Option<&Corruption>) -> Result<String, CliError> {
    let reports = verify_grid(grid, corruption);
    let mut out = String::new();
    for r in &reports {
        if r.passed() {
            out.push_str(&format!("PASS p={} count={}\n", r.p, r.count));
        } else {
            out.push_str(&format!("FAIL p={} count={}\n", r.p, r.count));
            for f in &r.failures {
                out.push_str(&format!("  {f}\n"));
            }
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    out.push_str(&format!("{} of {} grid points passed\n", reports.len() - failed, reports.len()));
    if failed > 0 {
        Err(CliError::Failed(out))
    } else {
        Ok(out)
    }
}
