use serde::Serialize;

use super::{ExponentVector, FormulaRow};
use crate::arith::Rational;
use crate::characters::DirichletChar;
use crate::error::{Error, Result};
use crate::spaces::build_basis;

/// Published coefficient tables: a `[D] l1 l2 l3 l6 <names…>` header per
/// character, then one whitespace-separated row per exponent vector.
pub const TABLES: &str = include_str!("../../data/tables.txt");

/// Coefficient column names for a character, in basis order.
pub fn column_names(chi: DirichletChar) -> Result<Vec<String>> {
    let basis = build_basis(chi)?;
    let (first, second, cusp) = match chi.discriminant() {
        -4 => ('a', 'b', 'c'),
        -3 => ('d', 'e', 'f'),
        -8 => ('g', 'h', 'k'),
        _ => ('m', 'm', 'n'),
    };
    let half = basis.eisenstein_part.len() / 2;
    let mut names: Vec<String> = if chi == DirichletChar::M24 {
        (1..=basis.eisenstein_part.len()).map(|i| format!("m{i}")).collect()
    } else {
        basis
            .eisenstein_part
            .iter()
            .enumerate()
            .map(|(i, s)| format!("{}{}", if i < half { first } else { second }, s.scale()))
            .collect()
    };
    names.extend((1..=basis.cusp_part.len()).map(|j| format!("{cusp}{j}")));
    Ok(names)
}

/// Character order of the published tables.
pub const TABLE_ORDER: [DirichletChar; 4] =
    [DirichletChar::M4, DirichletChar::M3, DirichletChar::M8, DirichletChar::M24];

/// Rows in the fixture format, one section per character in table order.
pub fn render_tables(rows: &[FormulaRow]) -> Result<String> {
    let mut out = String::new();
    for chi in TABLE_ORDER {
        let section: Vec<&FormulaRow> = rows.iter().filter(|r| r.character == chi).collect();
        if section.is_empty() {
            continue;
        }
        out.push_str(&format!("[{chi}] l1 l2 l3 l6 {}\n", column_names(chi)?.join(" ")));
        for row in section {
            let cells: Vec<String> = row
                .l
                .as_array()
                .iter()
                .map(u32::to_string)
                .chain(row.coefficients().map(Rational::to_string))
                .collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
    }
    Ok(out)
}

pub fn load_tables() -> Result<Vec<FormulaRow>> {
    parse_tables(TABLES)
}

pub fn parse_tables(text: &str) -> Result<Vec<FormulaRow>> {
    let mut rows = Vec::new();
    let mut current: Option<(DirichletChar, usize)> = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fail = |msg: String| Error::Fixture(format!("line {}: {msg}", lineno + 1));
        if let Some(rest) = line.strip_prefix('[') {
            let (disc, header) = rest.split_once(']').ok_or_else(|| fail("unclosed header".into()))?;
            let chi: DirichletChar = disc.parse().map_err(|e| fail(format!("{e}")))?;
            let names: Vec<&str> = header.split_whitespace().collect();
            let expected = column_names(chi).map_err(|e| fail(format!("{e}")))?;
            if names.len() < 4 || names[..4] != ["l1", "l2", "l3", "l6"] || names[4..] != expected {
                return Err(fail(format!("unexpected columns {names:?}")));
            }
            let eis = build_basis(chi)?.eisenstein_part.len();
            current = Some((chi, eis));
            continue;
        }
        let (chi, eis) = current.ok_or_else(|| fail("row before any header".into()))?;
        let cells: Vec<&str> = line.split_whitespace().collect();
        let width = 4 + column_names(chi)?.len();
        if cells.len() != width {
            return Err(fail(format!("expected {width} cells, got {}", cells.len())));
        }
        let l: ExponentVector = cells[..4].join(",").parse().map_err(|e| fail(format!("{e}")))?;
        let mut coeffs = cells[4..]
            .iter()
            .map(|c| c.parse::<Rational>())
            .collect::<Result<Vec<_>>>()
            .map_err(|e| fail(format!("{e}")))?;
        let cusp_coeffs = coeffs.split_off(eis);
        rows.push(FormulaRow { l, character: chi, eisenstein_coeffs: coeffs, cusp_coeffs });
    }
    Ok(rows)
}

/// A cell where the derivation and the published table differ, or a row
/// present on one side only (`fixture` or `derived` is then `None`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Discrepancy {
    pub l: ExponentVector,
    pub character: DirichletChar,
    pub column: String,
    pub fixture: Option<Rational>,
    pub derived: Option<Rational>,
}

/// Cell-by-cell comparison, matching rows by exponent vector.
pub fn compare_tables(derived: &[FormulaRow], fixture: &[FormulaRow]) -> Result<Vec<Discrepancy>> {
    let mut out = Vec::new();
    for d in derived {
        let Some(f) = fixture.iter().find(|f| f.l == d.l) else {
            out.push(Discrepancy { l: d.l, character: d.character, column: "row".into(), fixture: None, derived: None });
            continue;
        };
        if f.character != d.character {
            out.push(Discrepancy { l: d.l, character: d.character, column: "character".into(), fixture: None, derived: None });
            continue;
        }
        let names = column_names(d.character)?;
        for ((name, a), b) in names.iter().zip(d.coefficients()).zip(f.coefficients()) {
            if a != b {
                out.push(Discrepancy {
                    l: d.l,
                    character: d.character,
                    column: name.clone(),
                    fixture: Some(b.clone()),
                    derived: Some(a.clone()),
                });
            }
        }
    }
    for f in fixture {
        if !derived.iter().any(|d| d.l == f.l) {
            out.push(Discrepancy { l: f.l, character: f.character, column: "row".into(), fixture: None, derived: None });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_shape() {
        let rows = load_tables().unwrap();
        assert_eq!(rows.len(), 84);
        let mut ls: Vec<ExponentVector> = rows.iter().map(|r| r.l).collect();
        ls.sort();
        ls.dedup();
        assert_eq!(ls.len(), 84);
        for r in &rows {
            assert_eq!(r.character, super::super::classify(r.l), "{}", r.l);
        }
    }

    #[test]
    fn column_headers() {
        assert_eq!(column_names(DirichletChar::M4).unwrap()[..5], ["a1", "a2", "a3", "a6", "b1"]);
        assert_eq!(column_names(DirichletChar::M8).unwrap()[..4], ["g1", "g3", "h1", "h3"]);
        assert_eq!(column_names(DirichletChar::M24).unwrap()[4], "n1");
    }

    #[test]
    fn parser_rejects_bad_rows() {
        assert!(parse_tables("6 0 0 0 1").is_err());
        assert!(parse_tables("[-4] l1 l2 l3 l6 a1\n").is_err());
        let header = "[-8] l1 l2 l3 l6 g1 g3 h1 h3 k1 k2 k3 k4 k5 k6\n";
        assert!(parse_tables(&format!("{header}5 1 0 0 1 2 3\n")).is_err());
        assert!(parse_tables(&format!("{header}5 1 0 0 1 2 3 4 5 6 7 8 9 1/0\n")).is_err());
        assert_eq!(parse_tables(&format!("{header}5 1 0 0 1 2 3 4 5 6 7 8 9 10\n")).unwrap().len(), 1);
    }

    #[test]
    fn render_round_trips() {
        let rows = load_tables().unwrap();
        let text = render_tables(&rows).unwrap();
        assert_eq!(parse_tables(&text).unwrap(), rows);
        assert!(text.starts_with("[-4] l1 l2 l3 l6 a1"));
    }

    #[test]
    fn comparison_reports_cells() {
        let fixture = load_tables().unwrap();
        let mut derived: Vec<FormulaRow> = fixture.iter().take(2).cloned().collect();
        derived[1].cusp_coeffs[0] = Rational::from(99);
        let diffs = compare_tables(&derived, &fixture[..2]).unwrap();
        assert_eq!(diffs.len(), 1);
        assert_eq!(diffs[0].column, "c1");
        assert_eq!(diffs[0].derived, Some(Rational::from(99)));
    }
}
