//! Recomputing one row of the published tables, cell by cell.

use serde::Serialize;

use super::construct::{construct, ConstructOptions, Verdict};
use super::table::{compare_with_table, TablePoint, TableMatch, TableRow};
use crate::ellcurve::is_three_cube;
use crate::lseries::{l_alg, ConductorTable};
use crate::Case;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Match,
    Differ,
    Error,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cell {
    pub computed: String,
    pub expected: String,
    pub status: Status,
}

impl Cell {
    fn compare(computed: String, expected: String, same: bool) -> Self {
        let status = if same { Status::Match } else { Status::Differ };
        Cell { computed, expected, status }
    }

    fn error(e: impl ToString, expected: String) -> Self {
        Cell { computed: e.to_string(), expected, status: Status::Error }
    }

    fn skipped(expected: String) -> Self {
        Cell { computed: String::new(), expected, status: Status::Skipped }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RowReport {
    pub p: u64,
    pub case: Case,
    pub l_alg: Cell,
    pub three_is_cube: Cell,
    pub point: Cell,
    /// How the constructed point relates to the published one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relation: Option<TableMatch>,
}

impl RowReport {
    /// The worst status over the cells (skipped cells are ignored).
    pub fn status(&self) -> Status {
        let cells = [&self.l_alg, &self.three_is_cube, &self.point];
        if cells.iter().any(|c| c.status == Status::Error) {
            Status::Error
        } else if cells.iter().any(|c| c.status == Status::Differ) {
            Status::Differ
        } else {
            Status::Match
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ReproduceOptions {
    pub construct: ConstructOptions,
    pub skip_lvalue: bool,
    pub l_digits: u32,
    pub conductors: ConductorTable,
}

impl ReproduceOptions {
    pub fn new() -> Self {
        ReproduceOptions { l_digits: 20, conductors: ConductorTable::embedded(), ..Default::default() }
    }
}

fn describe(point: &TablePoint) -> String {
    match point {
        TablePoint::Infinity => "∞".into(),
        TablePoint::Exact(x, y) => format!("({x}, {y})"),
        TablePoint::Height(h) => format!("height {h}"),
    }
}

/// Recompute the L_alg, cube and point cells of a table row.
pub fn reproduce_row(row: &TableRow, opts: &ReproduceOptions) -> RowReport {
    let l_expected = row.l_alg.to_string();
    let l_cell = if opts.skip_lvalue {
        Cell::skipped(l_expected)
    } else {
        let n = row.l_series_n();
        match opts.conductors.get(n).and_then(|c| l_alg(n, c, opts.l_digits)) {
            Ok(v) => {
                let same = !v.flagged && v.rounded == row.l_alg as i64;
                Cell::compare(format!("{:.6}", v.value), l_expected, same)
            }
            Err(e) => Cell::error(e, l_expected),
        }
    };

    let cube_expected = row.three_is_cube.to_string();
    let cube_cell = match is_three_cube(row.p) {
        Ok(c) => Cell::compare(c.to_string(), cube_expected, c == row.three_is_cube),
        Err(e) => Cell::error(e, cube_expected),
    };

    let point_expected = describe(&row.point);
    let (point_cell, relation) = match construct(row.p, row.case, &opts.construct) {
        Err(e) => (Cell::error(e, point_expected), None),
        Ok(report) => {
            let computed = match (&report.verdict, &report.point, report.height) {
                (Verdict::Torsion, _, _) => "∞".to_string(),
                (_, Some(_), Some(h)) if matches!(row.point, TablePoint::Height(_)) => {
                    format!("height {h:.4}")
                }
                (_, Some(xy), _) => format!("({}, {})", xy.x, xy.y),
                _ => "?".into(),
            };
            match compare_with_table(row.p, row.case, report.w.as_ref()) {
                Ok(m) => (Cell::compare(computed, point_expected, m.passed()), Some(m)),
                Err(e) => (Cell::error(e, point_expected), None),
            }
        }
    };
    RowReport { p: row.p, case: row.case, l_alg: l_cell, three_is_cube: cube_cell, point: point_cell, relation }
}
