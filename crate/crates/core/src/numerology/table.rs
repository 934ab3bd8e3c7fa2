use std::fmt;

use serde::Serialize;

use super::{
    ci_chern, contraction_invariants, euler_chain, euler_smoothed, porteous_nodes, CIInvariants, CISpec, Contraction,
    SurfaceChern,
};
use crate::delpezzo::SurfaceKind;
use crate::error::{Error, Result};

/// One published row: the surface, the threefold containing it, and the
/// published values the computed columns are checked against.
#[derive(Clone, Copy, Debug)]
pub struct TableEntry {
    pub row: u32,
    pub surface: SurfaceKind,
    /// Number of generic projections applied to the anticanonical model.
    pub projections: usize,
    pub degrees: &'static [u32],
    pub nodes: i64,
    /// Given for the smoothable rows only.
    pub h12: Option<i64>,
    pub euler_smoothed: Option<i64>,
    pub h3: Option<i64>,
    pub h0: Option<i64>,
}

#[allow(clippy::too_many_arguments)]
const fn entry(
    row: u32,
    surface: SurfaceKind,
    projections: usize,
    degrees: &'static [u32],
    nodes: i64,
    h12: i64,
    chi: i64,
    h3: i64,
    h0: i64,
) -> TableEntry {
    TableEntry {
        row,
        surface,
        projections,
        degrees,
        nodes,
        h12: Some(h12),
        euler_smoothed: Some(chi),
        h3: Some(h3),
        h0: Some(h0),
    }
}

use SurfaceKind::{D6, D7, D8, F1};

const ROWS: [TableEntry; 10] = [
    entry(1, D6, 1, &[2, 4], 44, 47, -92, 14, 7),
    entry(2, D6, 1, &[2, 4], 44, 48, -94, 14, 7),
    entry(3, D6, 1, &[3, 3], 36, 39, -76, 15, 7),
    entry(4, D6, 1, &[3, 3], 36, 40, -78, 15, 7),
    entry(5, D7, 2, &[3, 3], 44, 31, -60, 16, 7),
    entry(6, D8, 3, &[3, 3], 52, 23, -44, 17, 7),
    entry(7, D7, 1, &[2, 2, 3], 37, 38, -74, 19, 8),
    entry(8, D8, 2, &[2, 2, 3], 44, 31, -60, 20, 8),
    entry(9, D8, 1, &[2, 2, 2, 2], 42, 26, -50, 24, 9),
    TableEntry {
        row: 10,
        surface: F1,
        projections: 1,
        degrees: &[2, 2, 2, 2],
        nodes: 36,
        h12: None,
        euler_smoothed: None,
        h3: None,
        h0: None,
    },
];

/// The published rows.
pub fn table1_rows() -> &'static [TableEntry] {
    &ROWS
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Row {
    pub row: u32,
    pub surface: SurfaceKind,
    pub projections: usize,
    pub del_pezzo_degree: i64,
    pub ci: CISpec,
    /// Node count as published.
    pub nodes: i64,
    /// Node count from the Chern classes of the surface.
    pub porteous_nodes: i64,
    pub ci_invariants: CIInvariants,
    /// Absent for the non-smoothable row.
    pub contraction: Option<Contraction>,
    pub euler_x: i64,
    pub euler_y: i64,
    pub h12: Option<i64>,
    pub euler_smoothed: Option<i64>,
    /// `euler_smoothed - euler_y`; reported, not checked.
    pub smoothing_defect: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(transparent)]
pub struct Table1(pub Vec<Table1Row>);

fn mismatch(row: u32, column: &str, computed: i64, published: i64) -> Error {
    Error::InvalidInput(format!("row {row}, column {column}: computed {computed}, published {published}"))
}

fn assemble_row(e: &TableEntry) -> Result<Table1Row> {
    let d = e.surface.degree();
    let ci = CISpec::calabi_yau(e.degrees)?;
    let inv = ci_chern(&ci);
    let porteous = porteous_nodes(ci.ambient, e.degrees, SurfaceChern::del_pezzo(d))?;
    let (euler_x, euler_y) = euler_chain(&inv, e.nodes, d);
    let contraction = match e.h3 {
        Some(h3) => {
            let c = contraction_invariants(&inv, d)?;
            if c.g3 != h3 {
                return Err(mismatch(e.row, "H^3", c.g3, h3));
            }
            if let Some(h0) = e.h0 {
                if c.h0 != h0 {
                    return Err(mismatch(e.row, "h^0(H)", c.h0, h0));
                }
            }
            Some(c)
        }
        None => None,
    };
    let smoothed = e.h12.map(euler_smoothed);
    if let (Some(c), Some(p)) = (smoothed, e.euler_smoothed) {
        if c != p {
            return Err(mismatch(e.row, "chi(Y_t)", c, p));
        }
    }
    Ok(Table1Row {
        row: e.row,
        surface: e.surface,
        projections: e.projections,
        del_pezzo_degree: d,
        ci,
        nodes: e.nodes,
        porteous_nodes: porteous,
        ci_invariants: inv,
        contraction,
        euler_x,
        euler_y,
        h12: e.h12,
        euler_smoothed: smoothed,
        smoothing_defect: smoothed.map(|s| s - euler_y),
    })
}

/// Recomputes every row and fails on the first disagreement with a published
/// `H^3`, `h^0(H)` or `chi(Y_t)` value.
pub fn assemble_table1() -> Result<Table1> {
    ROWS.iter().map(assemble_row).collect::<Result<Vec<_>>>().map(Table1)
}

impl fmt::Display for Table1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: Option<i64>| v.map_or("--".to_string(), |x| x.to_string());
        writeln!(
            f,
            "{:>3} {:>4} {:<14} {:>6} {:>9} {:>9} {:>4} {:>6} {:>6} {:>6} {:>7}",
            "No", "deg", "X'", "nodes", "porteous", "chi(Y_t)", "H^3", "h0(H)", "chi(X)", "chi(Y)", "defect"
        )?;
        for r in &self.0 {
            writeln!(
                f,
                "{:>3} {:>4} {:<14} {:>6} {:>9} {:>9} {:>4} {:>6} {:>6} {:>6} {:>7}",
                r.row,
                r.del_pezzo_degree,
                r.ci.label(),
                r.nodes,
                r.porteous_nodes,
                opt(r.euler_smoothed),
                opt(r.contraction.map(|c| c.g3)),
                opt(r.contraction.map(|c| c.h0)),
                r.euler_x,
                r.euler_y,
                opt(r.smoothing_defect),
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_rows_assemble() {
        let t = assemble_table1().unwrap();
        assert_eq!(t.0.len(), 10);
        let h3: Vec<i64> = t.0.iter().filter_map(|r| r.contraction.map(|c| c.g3)).collect();
        assert_eq!(h3, [14, 14, 15, 15, 16, 17, 19, 20, 24]);
        assert!(t.0[9].euler_smoothed.is_none());
        let text = t.to_string();
        assert_eq!(text.lines().count(), 11);
        assert!(text.contains("X'_{2,2,2,2}"));
    }

    #[test]
    fn row_mismatch_is_reported() {
        let mut e = ROWS[2];
        e.h3 = Some(16);
        let err = assemble_row(&e).unwrap_err().to_string();
        assert!(err.contains("row 3") && err.contains("H^3"), "{err}");
    }
}
