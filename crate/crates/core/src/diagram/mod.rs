//! Grey-blue-purple-red diagrams and tunnel hooks.
//!
//! Rows are 1-based and counted bottom-up. Only the grey/blue/red counts of
//! each row are stored; every other cell of the quadrant is purple.

mod render;

use serde::{Deserialize, Serialize};

pub use render::{render, RenderFormat};

use crate::algebra::IntSeq;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

impl From<(usize, usize)> for Cell {
    fn from((row, col): (usize, usize)) -> Self {
        Cell { row, col }
    }
}

/// Grey, blue and red cell counts of one row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RowColors {
    pub grey: i64,
    pub blue: i64,
    pub red: i64,
}

impl RowColors {
    fn for_row(mu: i64, nu: i64) -> Self {
        // nu - mu equals |mu| + nu when mu <= 0
        let (blue, red) = if mu > 0 && nu <= mu { (mu - nu, 0) } else { (0, nu - mu) };
        RowColors { grey: nu, blue, red }
    }

    /// Blue count minus red count.
    pub fn spin(&self) -> i64 {
        self.blue - self.red
    }

    /// Number of colored (non-purple) cells.
    pub fn width(&self) -> i64 {
        self.grey + self.blue + self.red
    }
}

/// The partial diagram whose active rows are `offset+1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GbprDiagram {
    mu: IntSeq,
    nu: IntSeq,
    offset: usize,
    rows: Vec<RowColors>,
}

/// Builds the diagram of `mu/nu` with rows `1..=r` already consumed.
/// `r == k` gives a diagram with no active rows.
pub fn build_diagram(mu: &IntSeq, nu: &IntSeq, r: usize) -> Result<GbprDiagram> {
    let k = mu.len();
    if nu.len() != k {
        return Err(Error::LengthMismatch { mu: k, nu: nu.len() });
    }
    if r > k {
        return Err(Error::OffsetOutOfRange { offset: r, rows: k });
    }
    if let Some(&bad) = nu.iter().find(|&&v| v < 0) {
        return Err(Error::NegativeSkew(bad));
    }
    if !nu[r..].windows(2).all(|w| w[0] >= w[1]) {
        return Err(Error::TailNotPartition(nu.to_vec(), r + 1));
    }
    let rows = (r..k).map(|i| RowColors::for_row(mu[i], nu[i])).collect();
    Ok(GbprDiagram { mu: mu.clone(), nu: nu.clone(), offset: r, rows })
}

impl GbprDiagram {
    pub fn mu(&self) -> &IntSeq {
        &self.mu
    }

    pub fn nu(&self) -> &IntSeq {
        &self.nu
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn k(&self) -> usize {
        self.mu.len()
    }

    /// First active row, `offset + 1`.
    pub fn start_row(&self) -> usize {
        self.offset + 1
    }

    pub fn active_rows(&self) -> std::ops::RangeInclusive<usize> {
        self.start_row()..=self.k()
    }

    pub fn is_exhausted(&self) -> bool {
        self.offset == self.k()
    }

    /// Color counts of an active row.
    pub fn colors(&self, row: usize) -> Option<RowColors> {
        if row <= self.offset {
            return None;
        }
        self.rows.get(row - self.offset - 1).copied()
    }

    fn nu_at(&self, row: usize) -> i64 {
        self.nu[row - 1]
    }

    /// First column and length of the boundary run in an active row.
    fn boundary_span(&self, row: usize) -> (usize, usize) {
        let first = self.nu_at(row) + 1;
        let last = if row == self.start_row() {
            let c = self.rows[0];
            first.max(c.width())
        } else {
            self.nu_at(row - 1) + 1
        };
        (first as usize, (last - first + 1) as usize)
    }

    /// Boundary cells, bottom-up and left to right within a row.
    pub fn boundary_cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for row in self.active_rows() {
            let (first, len) = self.boundary_span(row);
            out.extend((first..first + len).map(|col| Cell { row, col }));
        }
        out
    }

    /// One tunnel cell `(p, nu_p + 1)` per active row, bottom-up.
    pub fn tunnel_cells(&self) -> Vec<Cell> {
        self.active_rows().map(|row| Cell { row, col: (self.nu_at(row) + 1) as usize }).collect()
    }

    fn is_tunnel_cell(&self, tau: Cell) -> bool {
        self.active_rows().contains(&tau.row) && tau.col as i64 == self.nu_at(tau.row) + 1
    }

    /// The hook from the first active row to `tau`.
    pub fn make_tunnel_hook(&self, tau: Cell) -> Result<TunnelHook> {
        if !self.is_tunnel_cell(tau) {
            return Err(Error::NotATunnelCell(tau));
        }
        let s = self.start_row();
        let spans = (s..=tau.row)
            .map(|row| {
                let (first_col, len) = self.boundary_span(row);
                RowSpan { row, first_col, len }
            })
            .collect();
        let rise = (tau.row - s) as i64;
        let taxi = (self.nu_at(s) + 1 - tau.col as i64) + rise;
        Ok(TunnelHook {
            start_row: s,
            terminal: tau,
            spans,
            sign: if rise % 2 == 0 { 1 } else { -1 },
            delta: self.rows[0].spin() + taxi,
        })
    }

    /// Absorbs the hook's cells into `nu` and advances the offset.
    pub fn apply_hook(&self, hook: &TunnelHook) -> Result<GbprDiagram> {
        if hook.start_row != self.start_row() || !self.is_tunnel_cell(hook.terminal) {
            return Err(Error::NotATunnelCell(hook.terminal));
        }
        let mut nu = self.nu.to_vec();
        for span in &hook.spans {
            nu[span.row - 1] += span.len as i64;
        }
        build_diagram(&self.mu, &IntSeq::new(nu), self.offset + 1)
    }

    /// Every hook available from this diagram, in tunnel-cell order.
    pub fn hooks(&self) -> impl Iterator<Item = TunnelHook> + '_ {
        self.tunnel_cells().into_iter().map(|tau| self.make_tunnel_hook(tau).expect("tunnel cell"))
    }
}

/// A horizontal run of covered cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RowSpan {
    pub row: usize,
    pub first_col: usize,
    pub len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TunnelHook {
    pub start_row: usize,
    pub terminal: Cell,
    /// Covered cells, one run per row from `start_row` to the terminal row.
    pub spans: Vec<RowSpan>,
    pub sign: i8,
    pub delta: i64,
}

impl TunnelHook {
    pub fn covered_cells(&self) -> Vec<Cell> {
        self.spans
            .iter()
            .flat_map(|s| (s.first_col..s.first_col + s.len).map(move |col| Cell { row: s.row, col }))
            .collect()
    }

    /// Per-row cover counts, indexed by row minus one.
    pub fn eta(&self, k: usize) -> Vec<i64> {
        let mut eta = vec![0; k];
        for s in &self.spans {
            eta[s.row - 1] = s.len as i64;
        }
        eta
    }

    pub fn rows_covered(&self) -> usize {
        self.spans.len()
    }
}
