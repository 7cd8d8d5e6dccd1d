use std::collections::BTreeMap;
use std::fmt::Write;

use super::{Cell, GbprDiagram, TunnelHook};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Paint {
    Empty,
    Grey,
    Blue,
    Red,
    Purple,
}

impl Paint {
    fn letter(self) -> char {
        match self {
            Paint::Empty => ' ',
            Paint::Grey => 'G',
            Paint::Blue => 'B',
            Paint::Red => 'R',
            Paint::Purple => 'P',
        }
    }

    fn latex_color(self) -> Option<&'static str> {
        match self {
            Paint::Empty => None,
            Paint::Grey => Some("gray!40"),
            Paint::Blue => Some("blue!25"),
            Paint::Red => Some("red!30"),
            Paint::Purple => Some("violet!20"),
        }
    }
}

/// Label for hook number `i` (0-based): `1`..`9`, then `a`..`z`.
fn hook_label(i: usize) -> char {
    std::char::from_digit((i as u32 + 1) % 36, 36).unwrap_or('*')
}

type Row = Vec<(Paint, Option<char>)>;

struct Grid {
    /// Active rows, top row first.
    rows: Vec<(usize, Row)>,
}

fn build_grid(d: &GbprDiagram, overlay: &[TunnelHook]) -> Grid {
    let mut labels: BTreeMap<Cell, char> = BTreeMap::new();
    for (i, h) in overlay.iter().enumerate() {
        for c in h.covered_cells() {
            labels.insert(c, hook_label(i));
        }
    }
    let mut width = 0usize;
    for row in d.active_rows() {
        let c = d.colors(row).expect("active row");
        width = width.max(c.width().max(c.grey + 1) as usize);
    }
    for c in labels.keys() {
        width = width.max(c.col);
    }
    let mut rows = Vec::new();
    for row in d.active_rows().rev() {
        let c = d.colors(row).expect("active row");
        let (g, b, r) = (c.grey as usize, c.blue as usize, c.red as usize);
        let mut line = Vec::with_capacity(width);
        for col in 1..=width {
            let paint = if col <= g {
                Paint::Grey
            } else if col <= g + b {
                Paint::Blue
            } else if col <= g + b + r {
                Paint::Red
            } else if b + r == 0 && col == g + 1 {
                Paint::Purple
            } else {
                Paint::Empty
            };
            line.push((paint, labels.get(&Cell { row, col }).copied()));
        }
        rows.push((row, line));
    }
    Grid { rows }
}

/// Draws the active rows of `d`, top row first. Cells are lettered
/// `G`/`B`/`R`, with a `P` marking the first free cell of a row that has no
/// blue or red cells. Cells covered by an overlay hook show the hook's label
/// instead, and a legend lists each hook's terminal cell, delta and sign.
pub fn render(d: &GbprDiagram, overlay: Option<&[TunnelHook]>, format: RenderFormat) -> String {
    let overlay = overlay.unwrap_or(&[]);
    let grid = build_grid(d, overlay);
    match format {
        RenderFormat::Ascii => ascii(&grid, overlay),
        RenderFormat::Latex => latex(&grid, overlay),
    }
}

fn ascii(grid: &Grid, overlay: &[TunnelHook]) -> String {
    let label_width = grid.rows.iter().map(|(r, _)| r.to_string().len()).max().unwrap_or(1);
    let mut out = String::new();
    for (row, line) in &grid.rows {
        let cells: Vec<String> = line.iter().map(|&(p, l)| l.unwrap_or(p.letter()).to_string()).collect();
        let body = cells.join(" ");
        let _ = writeln!(out, "{:>w$} | {}", row, body.trim_end(), w = label_width);
    }
    for (i, h) in overlay.iter().enumerate() {
        let _ = writeln!(
            out,
            "hook {}: start row {}, terminal ({},{}), delta {}, sign {}",
            hook_label(i),
            h.start_row,
            h.terminal.row,
            h.terminal.col,
            h.delta,
            if h.sign > 0 { "+" } else { "-" }
        );
    }
    out
}

fn latex(grid: &Grid, overlay: &[TunnelHook]) -> String {
    let width = grid.rows.first().map_or(0, |(_, l)| l.len()).max(1);
    let mut out = String::new();
    out.push_str("\\documentclass{standalone}\n");
    out.push_str("\\usepackage[table]{xcolor}\n");
    out.push_str("\\begin{document}\n");
    out.push_str("\\begin{tabular}{r|");
    out.push_str(&"c".repeat(width));
    out.push_str("}\n");
    for (row, line) in &grid.rows {
        let mut cells = vec![row.to_string()];
        for &(paint, label) in line {
            let mut cell = String::new();
            if let Some(color) = paint.latex_color() {
                let _ = write!(cell, "\\cellcolor{{{}}}", color);
            }
            if let Some(l) = label {
                cell.push(l);
            }
            cells.push(cell);
        }
        let _ = writeln!(out, "{} \\\\", cells.join(" & "));
    }
    out.push_str("\\end{tabular}\n");
    if !overlay.is_empty() {
        out.push_str("\\quad\n\\begin{tabular}{cccc}\n");
        out.push_str("hook & terminal & $\\Delta$ & sign \\\\\n\\hline\n");
        for (i, h) in overlay.iter().enumerate() {
            let _ = writeln!(
                out,
                "{} & $({},{})$ & ${}$ & ${}$ \\\\",
                hook_label(i),
                h.terminal.row,
                h.terminal.col,
                h.delta,
                if h.sign > 0 { "+" } else { "-" }
            );
        }
        out.push_str("\\end{tabular}\n");
    }
    out.push_str("\\end{document}\n");
    out
}
