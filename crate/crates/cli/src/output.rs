//! Tables rendered as CSV or whitespace-separated text, and gnuplot scripts.

use std::fmt::Write as _;

use crate::config::Format;

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Config comment, then the header row, then the data. Text output puts
    /// the header behind `#` so gnuplot skips it.
    pub fn render(&self, format: Format, config: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# config: {config}");
        let sep = match format {
            Format::Csv => ",",
            Format::Text => " ",
        };
        if format == Format::Text {
            out.push_str("# ");
        }
        out.push_str(&self.columns.join(sep));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(sep));
            out.push('\n');
        }
        out
    }

    /// 1-based column index for gnuplot.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name).map(|i| i + 1)
    }
}

/// A plot of `y` columns against `x` from a data file written with `format`.
#[derive(Debug, Clone)]
pub struct PlotSpec {
    pub title: String,
    pub x: &'static str,
    pub ys: Vec<&'static str>,
    pub log_x: bool,
}

pub fn gnuplot_script(spec: &PlotSpec, table: &Table, data: &str, format: Format) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# gnuplot script");
    if format == Format::Csv {
        let _ = writeln!(s, "set datafile separator ','");
    }
    let _ = writeln!(s, "set datafile commentschars '#'");
    let _ = writeln!(s, "set title '{}'", spec.title);
    let _ = writeln!(s, "set xlabel '{}'", spec.x);
    if spec.log_x {
        let _ = writeln!(s, "set logscale x");
    }
    let _ = writeln!(s, "set key outside");
    let x = table.column(spec.x).unwrap_or(1);
    let skip = if format == Format::Csv { " every ::1" } else { "" };
    let plots: Vec<String> = spec
        .ys
        .iter()
        .filter_map(|y| table.column(y).map(|c| (y, c)))
        .map(|(y, c)| format!("'{data}'{skip} using {x}:{c} with linespoints title '{y}'"))
        .collect();
    let _ = writeln!(s, "plot {}", plots.join(", \\\n     "));
    s
}
