//! JSON documents for pmfs, extremal sets and Shapley allocations.
//!
//! Every rational is written as a canonical `"num/den"` string and parsed
//! back strictly.

use serde::{Deserialize, Serialize};

use crate::games::{Modularity, ShapleyAllocation};
use crate::polytope::{Extremal, ExtremalSet, Tag};
use crate::rational::{serde_canonical, serde_canonical_vec};
use crate::{BernoulliPmf, Error, MarginParam, Rational, Result};

pub const REVLEX: &str = "revlex";

/// `{"d": 3, "p": "2/5", "order": "revlex", "values": [...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PmfDocument {
    pub d: usize,
    #[serde(with = "serde_canonical")]
    pub p: Rational,
    pub order: String,
    #[serde(with = "serde_canonical_vec")]
    pub values: Vec<Rational>,
}

impl PmfDocument {
    pub fn new(p: &MarginParam, f: &BernoulliPmf) -> Self {
        PmfDocument { d: f.dim(), p: p.p().clone(), order: REVLEX.into(), values: f.values().to_vec() }
    }

    /// Validates the atom order and the pmf itself; the stated `p` is not
    /// checked against the margins here.
    pub fn to_pmf(&self) -> Result<BernoulliPmf> {
        if self.order != REVLEX {
            return Err(Error::Parse {
                input: self.order.clone(),
                reason: format!("atom order must be {REVLEX:?}"),
            });
        }
        BernoulliPmf::new(self.d, self.values.clone())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { input: truncate(text), reason: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// `{"p": "s/t", "d": 3, "vertices": [pmf documents], "tags": [...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtremalSetDocument {
    #[serde(with = "serde_canonical")]
    pub p: Rational,
    pub d: usize,
    pub vertices: Vec<PmfDocument>,
    pub tags: Vec<Tag>,
}

impl ExtremalSetDocument {
    pub fn new(es: &ExtremalSet) -> Self {
        ExtremalSetDocument {
            p: es.p.p().clone(),
            d: es.d,
            vertices: es.vertices.iter().map(|v| PmfDocument::new(&es.p, &v.pmf)).collect(),
            tags: es.vertices.iter().map(|v| v.tag).collect(),
        }
    }

    /// Rebuilds the set; vertices are renamed `v1, v2, ...` in document order.
    pub fn to_extremal_set(&self) -> Result<ExtremalSet> {
        if self.tags.len() != self.vertices.len() {
            return Err(Error::Parse {
                input: format!("{} tags", self.tags.len()),
                reason: format!("expected one tag per vertex ({})", self.vertices.len()),
            });
        }
        let p = MarginParam::from_rational(self.p.clone())?;
        let vertices = self
            .vertices
            .iter()
            .zip(&self.tags)
            .enumerate()
            .map(|(i, (doc, tag))| {
                Ok(Extremal { name: format!("v{}", i + 1), pmf: doc.to_pmf()?, tag: *tag })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ExtremalSet { p, d: self.d, vertices })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { input: truncate(text), reason: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Per-player Shapley values, the grand-coalition value and the modularity
/// label of a game.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AllocationReport {
    #[serde(with = "serde_canonical_vec")]
    pub phi: Vec<Rational>,
    #[serde(with = "serde_canonical")]
    pub grand_coalition: Rational,
    pub modularity: Modularity,
}

impl AllocationReport {
    pub fn new(alloc: &ShapleyAllocation, grand_coalition: Rational, modularity: Modularity) -> Self {
        AllocationReport { phi: alloc.phis.clone(), grand_coalition, modularity }
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("player,phi\n");
        for (i, phi) in self.phi.iter().enumerate() {
            out.push_str(&format!("{},{}\n", i + 1, crate::rational::to_canonical(phi)));
        }
        out.push_str(&format!("N,{}\n", crate::rational::to_canonical(&self.grand_coalition)));
        out.push_str(&format!("modularity,{}\n", self.modularity));
        out
    }
}

fn truncate(text: &str) -> String {
    text.chars().take(80).collect()
}
