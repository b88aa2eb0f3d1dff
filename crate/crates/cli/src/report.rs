//! `report`: everything the library knows about one member of the class.

use std::path::Path;

use num_traits::Zero;
use serde::Serialize;

use bernpoly_core::dependence::{class_param, is_sigma_countermonotone, is_sigma_cx_smallest, CorrelationProfile};
use bernpoly_core::games::{classify_modularity, shapley_covariance, variance_game, Modularity};
use bernpoly_core::io::{ExtremalSetDocument, PmfDocument};
use bernpoly_core::polytope::{closed_form_extremals, decompose};
use bernpoly_core::rational::{serde_canonical, serde_canonical_vec};
use bernpoly_core::{BernoulliPmf, MarginParam, Rational};

use crate::render::Fmt;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

impl ReportFormat {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "json" => Ok(ReportFormat::Json),
            other => Err(CliError::Usage(format!("unknown format {other:?} (text, json)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Weight {
    pub vertex: String,
    #[serde(with = "serde_canonical")]
    pub weight: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MemberReport {
    #[serde(with = "serde_canonical")]
    pub p: Rational,
    #[serde(with = "serde_canonical_vec")]
    pub values: Vec<Rational>,
    pub member: bool,
    /// Nonzero decomposition weights over the closed-form extremal points.
    pub decomposition: Vec<Weight>,
    pub correlation: CorrelationProfile,
    pub sigma_countermonotone: bool,
    pub sigma_cx_smallest: bool,
    #[serde(with = "serde_canonical_vec")]
    pub shapley: Vec<Rational>,
    #[serde(with = "serde_canonical")]
    pub grand_coalition: Rational,
    pub modularity: Modularity,
}

impl MemberReport {
    /// Builds the report; `stated` is the `p` written in the input, which
    /// must agree with the margins.
    pub fn build(f: &BernoulliPmf, stated: Option<&Rational>) -> Result<Self, CliError> {
        if f.dim() != 3 {
            return Err(CliError::Semantic(format!("reports cover d = 3 only, got d = {}", f.dim())));
        }
        let p: MarginParam = class_param(f)?;
        if let Some(s) = stated {
            if s != p.p() {
                return Err(CliError::Semantic(format!("stated p = {s} but the margins are {p}")));
            }
        }
        let es = closed_form_extremals(&p);
        let weights = decompose(&es, f)?;
        let decomposition = es
            .vertices
            .iter()
            .zip(weights.weights())
            .filter(|(_, w)| !w.is_zero())
            .map(|(v, w)| Weight { vertex: v.name.clone(), weight: w.clone() })
            .collect();
        let game = variance_game(f)?;
        Ok(MemberReport {
            p: p.p().clone(),
            values: f.values().to_vec(),
            member: true,
            decomposition,
            correlation: CorrelationProfile::of(f)?,
            sigma_countermonotone: is_sigma_countermonotone(f)?,
            sigma_cx_smallest: is_sigma_cx_smallest(f)?,
            shapley: shapley_covariance(f)?.phis,
            grand_coalition: game.grand_coalition().clone(),
            modularity: classify_modularity(&game),
        })
    }

    pub fn text(&self, fmt: Fmt) -> String {
        let mut out = format!("p = {}\n", fmt.q(&self.p));
        out.push_str(&format!("values = {}\n", fmt.list(&self.values)));
        out.push_str(&format!("member: {}\n", self.member));
        let parts: Vec<String> =
            self.decomposition.iter().map(|w| format!("{} {}", fmt.q(&w.weight), w.vertex)).collect();
        out.push_str(&format!("decomposition: {}\n", parts.join(" + ")));
        let rho = &self.correlation;
        out.push_str(&format!(
            "correlations: rho12 = {}, rho13 = {}, rho23 = {} [{}]\n",
            fmt.q(rho.get(0, 1)),
            fmt.q(rho.get(0, 2)),
            fmt.q(rho.get(1, 2)),
            rho.classification
        ));
        out.push_str(&format!("Σ-cm: {}\n", self.sigma_countermonotone));
        out.push_str(&format!("Σcx-smallest: {}\n", self.sigma_cx_smallest));
        out.push_str(&format!("shapley = {}\n", fmt.list(&self.shapley)));
        out.push_str(&format!("nu(N) = {}\n", fmt.q(&self.grand_coalition)));
        out.push_str(&format!("modularity: {}\n", self.modularity));
        out
    }
}

/// Parsed report input: a single pmf document or an extremal-set document
/// as written by `extremals --format json`.
pub enum Input {
    Pmf(PmfDocument),
    Set(ExtremalSetDocument),
}

pub fn parse_input(text: &str) -> Result<Input, CliError> {
    match PmfDocument::from_json(text) {
        Ok(doc) => Ok(Input::Pmf(doc)),
        Err(pmf_err) => ExtremalSetDocument::from_json(text)
            .map(Input::Set)
            .map_err(|_| CliError::Usage(pmf_err.to_string())),
    }
}

pub fn reports_for(input: &Input) -> Result<Vec<MemberReport>, CliError> {
    match input {
        Input::Pmf(doc) => Ok(vec![MemberReport::build(&doc.to_pmf()?, Some(&doc.p))?]),
        Input::Set(doc) => doc
            .vertices
            .iter()
            .map(|v| {
                if v.p != doc.p {
                    return Err(CliError::Semantic("vertices state different p values".into()));
                }
                MemberReport::build(&v.to_pmf()?, Some(&doc.p))
            })
            .collect(),
    }
}

pub fn cmd_report_text(text: &str, format: ReportFormat, fmt: Fmt) -> Result<String, CliError> {
    let input = parse_input(text)?;
    let reports = reports_for(&input)?;
    Ok(match (format, &input) {
        (ReportFormat::Json, Input::Pmf(_)) => {
            serde_json::to_string_pretty(&reports[0]).expect("serializable") + "\n"
        }
        (ReportFormat::Json, Input::Set(_)) => serde_json::to_string_pretty(&reports).expect("serializable") + "\n",
        (ReportFormat::Text, _) => reports
            .iter()
            .enumerate()
            .map(|(i, r)| if reports.len() == 1 { r.text(fmt) } else { format!("[v{}]\n{}", i + 1, r.text(fmt)) })
            .collect::<Vec<_>>()
            .join("\n"),
    })
}

pub fn cmd_report(path: &Path, format: ReportFormat, fmt: Fmt) -> Result<String, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    cmd_report_text(&text, format, fmt)
}
