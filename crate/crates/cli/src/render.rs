//! Text rendering shared by the commands.

use bernpoly_core::rational::{to_canonical, to_decimal};
use bernpoly_core::Rational;

/// Renders rationals exactly, optionally followed by a rounded decimal.
#[derive(Debug, Clone, Copy, Default)]
pub struct Fmt {
    pub decimals: Option<usize>,
}

impl Fmt {
    pub fn q(&self, r: &Rational) -> String {
        match self.decimals {
            Some(n) => format!("{} ({})", to_canonical(r), to_decimal(r, n)),
            None => to_canonical(r),
        }
    }

    pub fn list(&self, v: &[Rational]) -> String {
        format!("({})", v.iter().map(|r| self.q(r)).collect::<Vec<_>>().join(", "))
    }
}

/// Left-aligned plain-text table.
pub fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(header);
    out.push('\n');
    out.push_str(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
    out.push('\n');
    for r in rows {
        out.push_str(&line(r));
        out.push('\n');
    }
    out
}
