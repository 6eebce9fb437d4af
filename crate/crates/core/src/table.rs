//! The printed genus-3 link table and its comparison with solver output.

use crate::takeuchi::{AlphaContraction, LinkSolution};

const EXPECTED_TABLE: &str = include_str!("../fixtures/expected_table.csv");

/// One row of the printed table, projected to the columns it shows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceRow {
    pub row: u32,
    pub z1: String,
    pub base: String,
    pub pa_gamma: i64,
    pub deg_gamma: i64,
    pub alpha: AlphaKey,
    pub max_deg_f: i64,
    /// Corrected `(deg Γ, max deg F)` for a misprinted row.
    pub erratum: Option<(i64, i64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaKey {
    E1 { pa: i64, deg: i64 },
    ConicBundle { delta_deg: i64 },
    DelPezzo { d: i64 },
}

impl AlphaKey {
    pub fn of(alpha: &AlphaContraction) -> Self {
        match *alpha {
            AlphaContraction::ConicBundle { delta_deg } => AlphaKey::ConicBundle { delta_deg },
            AlphaContraction::DelPezzoFibration { d } => AlphaKey::DelPezzo { d },
            AlphaContraction::DivisorialE1 { curve, .. } => AlphaKey::E1 { pa: curve.pa, deg: curve.deg },
        }
    }
}

impl ReferenceRow {
    fn matches(&self, s: &LinkSolution, deg_gamma: i64, max_deg_f: i64) -> bool {
        s.psi.target.label() == self.z1
            && s.alpha.base_label() == self.base
            && s.psi.curve.pa == self.pa_gamma
            && s.psi.curve.deg == deg_gamma
            && AlphaKey::of(&s.alpha) == self.alpha
            && s.max_deg_f == max_deg_f
    }

    /// Matches `s` against the row as printed.
    pub fn matches_printed(&self, s: &LinkSolution) -> bool {
        self.matches(s, self.deg_gamma, self.max_deg_f)
    }

    /// Matches `s` against the corrected row, if this row is misprinted.
    pub fn matches_corrected(&self, s: &LinkSolution) -> bool {
        self.erratum.is_some_and(|(deg, mf)| self.matches(s, deg, mf))
    }
}

fn int(field: &str) -> Option<i64> {
    field.trim().parse().ok()
}

/// Parses the embedded fixture. Panics only if the fixture itself is broken.
pub fn reference_rows() -> Vec<ReferenceRow> {
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(EXPECTED_TABLE.as_bytes());
    rdr.records()
        .map(|rec| {
            let rec = rec.expect("embedded table is valid csv");
            let get = |i: usize| rec.get(i).unwrap_or("");
            let num = |i: usize| int(get(i)).unwrap_or_else(|| panic!("bad column {i} in {rec:?}"));
            let alpha = match get(5) {
                "E1" => AlphaKey::E1 { pa: num(6), deg: num(7) },
                "CB" => AlphaKey::ConicBundle { delta_deg: num(7) },
                "DP" => AlphaKey::DelPezzo { d: num(7) },
                other => panic!("unknown alpha kind {other}"),
            };
            let erratum = match (int(get(9)), int(get(10))) {
                (Some(d), Some(m)) => Some((d, m)),
                _ => None,
            };
            ReferenceRow {
                row: num(0) as u32,
                z1: get(1).to_string(),
                base: get(2).to_string(),
                pa_gamma: num(3),
                deg_gamma: num(4),
                alpha,
                max_deg_f: num(8),
                erratum,
            }
        })
        .collect()
}

/// How a solver run lines up with the printed table.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TableComparison {
    /// Printed row number for each solution, in solution order.
    pub row_of: Vec<Option<u32>>,
    /// Rows reproduced exactly as printed.
    pub exact: Vec<u32>,
    /// Misprinted rows reproduced in corrected form.
    pub corrected: Vec<u32>,
    /// Rows with no matching solution.
    pub missing: Vec<u32>,
    /// Indices of solutions matching no row.
    pub extra: Vec<usize>,
}

impl TableComparison {
    pub fn is_complete(&self) -> bool {
        self.missing.is_empty()
    }
}

pub fn compare(solutions: &[LinkSolution]) -> TableComparison {
    compare_with(&reference_rows(), solutions)
}

pub fn compare_with(rows: &[ReferenceRow], solutions: &[LinkSolution]) -> TableComparison {
    let mut out = TableComparison { row_of: vec![None; solutions.len()], ..Default::default() };
    for r in rows {
        let hit = |corrected: bool| {
            solutions.iter().enumerate().position(|(i, s)| {
                out.row_of[i].is_none() && if corrected { r.matches_corrected(s) } else { r.matches_printed(s) }
            })
        };
        if let Some(i) = hit(false) {
            out.row_of[i] = Some(r.row);
            out.exact.push(r.row);
        } else if let Some(i) = hit(true) {
            out.row_of[i] = Some(r.row);
            out.corrected.push(r.row);
        } else {
            out.missing.push(r.row);
        }
    }
    out.extra = (0..solutions.len()).filter(|&i| out.row_of[i].is_none()).collect();
    out
}
