//! `sigma-cm`: the Σ-countermonotone sub-polytope at a given `p`.

use num_traits::Zero;

use bernpoly_core::dependence::{exchangeable_member, mu2_plus, sigma_cm_polytope};
use bernpoly_core::games::{classify_modularity, shapley_covariance, variance_game};
use bernpoly_core::rational::ratio;
use bernpoly_core::MarginParam;

use crate::render::Fmt;
use crate::CliError;

pub fn cmd_sigma_cm(p: &MarginParam, fmt: Fmt) -> Result<String, CliError> {
    let polytope = sigma_cm_polytope(p);
    let first = &polytope.generators[0].pmf;
    let mut out = format!("p = {p}\n");
    let names: Vec<&str> = polytope.generators.iter().map(|g| g.name.as_str()).collect();
    out.push_str(&format!("generators: {}\n", names.join(", ")));
    for g in &polytope.generators {
        out.push_str(&format!("  {} = {}\n", g.name, fmt.list(g.pmf.values())));
    }
    // every member shares the sum law, so the first generator stands for all
    let variance = first.variance_of_sum();
    out.push_str(&format!("mu2+ = {}\n", fmt.q(&mu2_plus(first))));
    out.push_str(&format!("V(S) = {}\n", fmt.q(&variance)));
    out.push_str(&format!("sum law = {}\n", fmt.list(first.sum_distribution().masses())));
    if variance.is_zero() {
        out.push_str("joint mix: S is almost surely constant, every Shapley value is zero\n");
    }
    if p.p() > &ratio(1, 3) {
        let fe = exchangeable_member(p)?;
        out.push_str(&format!("exchangeable member = {}\n", fmt.list(fe.values())));
        out.push_str(&format!("equi-correlation = {}\n", fmt.q(&fe.correlation(0, 1)?)));
        let alloc = shapley_covariance(&fe)?;
        let label = classify_modularity(&variance_game(&fe)?);
        out.push_str(&format!("phi(exchangeable) = {} [{label}]\n", fmt.list(&alloc.phis)));
    }
    out.push_str("Shapley allocations:\n");
    for g in &polytope.generators {
        let alloc = shapley_covariance(&g.pmf)?;
        let label = classify_modularity(&variance_game(&g.pmf)?);
        out.push_str(&format!("  phi({}) = {} [{label}]\n", g.name, fmt.list(&alloc.phis)));
    }
    Ok(out)
}
