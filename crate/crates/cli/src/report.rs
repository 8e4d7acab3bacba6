//! TSV reports: a leading `# foldkit <command> <version>` line, then named
//! tables. Rendering is deterministic and [`Report::parse`] inverts it.
//!
//! ```text
//! # foldkit kl 0.1.0
//! ## kl
//! element	polynomial
//! e	v
//! s	1
//! ```
//!
//! Cells never contain tabs or newlines; [`clean`] replaces them.

use std::fmt::Write as _;

use crate::error::{CliError, CliResult};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: ToString>(&mut self, row: &[S]) {
        assert_eq!(row.len(), self.header.len(), "row width of table `{}`", self.name);
        self.rows.push(row.iter().map(|c| clean(&c.to_string())).collect());
    }

    /// The column named `name`.
    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[i].as_str()).collect())
    }
}

/// Replaces tabs and newlines so a cell stays on one line.
pub fn clean(cell: &str) -> String {
    let mut out = String::with_capacity(cell.len());
    for line in cell.lines().filter(|l| !l.trim().is_empty()) {
        if !out.is_empty() {
            out.push_str(" | ");
        }
        out.push_str(&line.replace('\t', " "));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            tables: Vec::new(),
        }
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn render(&self) -> String {
        let mut out = format!("# foldkit {} {VERSION}\n", self.command);
        for t in &self.tables {
            let _ = writeln!(out, "## {}", t.name);
            let _ = writeln!(out, "{}", t.header.join("\t"));
            for r in &t.rows {
                let _ = writeln!(out, "{}", r.join("\t"));
            }
        }
        out
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let mut lines = text.lines();
        let first = lines.next().unwrap_or_default();
        let command = first
            .strip_prefix("# foldkit ")
            .and_then(|rest| rest.rsplit_once(' '))
            .map(|(cmd, _)| cmd.to_string())
            .ok_or_else(|| CliError::input("report does not start with `# foldkit <command> <version>`"))?;
        let mut report = Report::new(&command);
        let mut current: Option<Table> = None;
        let mut expect_header = false;
        for line in lines {
            if let Some(name) = line.strip_prefix("## ") {
                report.tables.extend(current.take());
                current = Some(Table::new(name, &[]));
                expect_header = true;
                continue;
            }
            let table = current
                .as_mut()
                .ok_or_else(|| CliError::input(format!("row before any table: `{line}`")))?;
            let cells: Vec<String> = line.split('\t').map(str::to_string).collect();
            if expect_header {
                table.header = cells;
                expect_header = false;
            } else {
                if cells.len() != table.header.len() {
                    return Err(CliError::input(format!("ragged row in `{}`: `{line}`", table.name)));
                }
                table.rows.push(cells);
            }
        }
        report.tables.extend(current);
        Ok(report)
    }
}
