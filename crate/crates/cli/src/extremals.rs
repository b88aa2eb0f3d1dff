//! `extremals`: the vertex set of the class for a given `p`.

use bernpoly_core::io::ExtremalSetDocument;
use bernpoly_core::pmf::atom_label;
use bernpoly_core::polytope::{build_constraints, closed_form_extremals, enumerate_vertices_oracle, ExtremalSet};
use bernpoly_core::rational::to_canonical;
use bernpoly_core::MarginParam;

use crate::render::{table, Fmt};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(CliError::Usage(format!("unknown format {other:?} (table, json, csv)"))),
        }
    }
}

/// Closed-form columns for `d = 3`, the enumeration oracle for `d = 4`.
pub fn extremal_set(p: &MarginParam, d: usize) -> Result<ExtremalSet, CliError> {
    match d {
        3 => Ok(closed_form_extremals(p)),
        4 => Ok(enumerate_vertices_oracle(&build_constraints(4, p)?)),
        other => Err(CliError::Usage(format!("--d must be 3 or 4, got {other}"))),
    }
}

pub fn cmd_extremals(p: &MarginParam, d: usize, format: Format, fmt: Fmt) -> Result<String, CliError> {
    let es = extremal_set(p, d)?;
    Ok(match format {
        Format::Json => {
            let mut s = ExtremalSetDocument::new(&es).to_json();
            s.push('\n');
            s
        }
        Format::Csv => csv_of(&es)?,
        Format::Table => {
            let atoms = 1usize << d;
            let mut header = vec!["vertex".to_string()];
            header.extend((0..atoms).map(|k| atom_label(k, d)));
            header.push("tag".into());
            let rows: Vec<Vec<String>> = es
                .vertices
                .iter()
                .map(|v| {
                    let mut row = vec![v.name.clone()];
                    row.extend(v.pmf.values().iter().map(|x| fmt.q(x)));
                    row.push(v.tag.to_string());
                    row
                })
                .collect();
            format!("p = {}, d = {}, {} extremal points\n{}", p, d, es.len(), table(&header, &rows))
        }
    })
}

/// Header `vertex,<atoms in reverse-lex order>,tag`, one row per vertex.
pub fn csv_of(es: &ExtremalSet) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let atoms = 1usize << es.d;
    let mut header = vec!["vertex".to_string()];
    header.extend((0..atoms).map(|k| atom_label(k, es.d)));
    header.push("tag".into());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(&header).map_err(io)?;
    for v in &es.vertices {
        let mut row = vec![v.name.clone()];
        row.extend(v.pmf.values().iter().map(to_canonical));
        row.push(v.tag.to_string());
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
