use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// How a measured count must relate to its bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Upper bound: `measured <= bound`.
    AtMost,
    /// Lower bound or forcing: `measured >= bound`.
    AtLeast,
    Exactly,
}

impl Direction {
    pub fn holds(self, measured: u64, bound: u64) -> bool {
        match self {
            Direction::AtMost => measured <= bound,
            Direction::AtLeast => measured >= bound,
            Direction::Exactly => measured == bound,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Direction::AtMost => "<=",
            Direction::AtLeast => ">=",
            Direction::Exactly => "==",
        }
    }
}

/// One checked bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub n: usize,
    /// Algorithm, strategy or construction the row measures, e.g. `diameter.max_queries`.
    pub id: String,
    pub measured: u64,
    /// The bound as an expression in `n`, e.g. `2n-4`.
    pub anchor: String,
    pub bound: u64,
    pub direction: Direction,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl BoundRow {
    pub fn new(
        n: usize,
        id: impl Into<String>,
        measured: u64,
        anchor: impl Into<String>,
        bound: u64,
        direction: Direction,
    ) -> Self {
        Self {
            n,
            id: id.into(),
            measured,
            anchor: anchor.into(),
            bound,
            direction,
            pass: direction.holds(measured, bound),
            detail: String::new(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

/// Rows from sweeps, tournaments or the bounds table.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub rows: Vec<BoundRow>,
}

impl BoundsReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, row: BoundRow) {
        self.rows.push(row);
    }

    pub fn merge(&mut self, other: BoundsReport) {
        self.rows.extend(other.rows);
    }

    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &BoundRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "id", "measured", "anchor", "bound", "direction", "pass", "detail"])
            .map_err(csv_err)?;
        for r in &self.rows {
            w.write_record([
                r.n.to_string(),
                r.id.clone(),
                r.measured.to_string(),
                r.anchor.clone(),
                r.bound.to_string(),
                r.direction.symbol().to_string(),
                r.pass.to_string(),
                r.detail.clone(),
            ])
            .map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn csv_err(e: csv::Error) -> std::io::Error {
    std::io::Error::other(e.to_string())
}

impl fmt::Display for BoundsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.rows.iter().map(|r| r.id.len()).max().unwrap_or(2);
        for r in &self.rows {
            write!(
                f,
                "{} n={:<4} {:<width$} {:>8} {} {:<8} ({})",
                if r.pass { "PASS" } else { "FAIL" },
                r.n,
                r.id,
                r.measured,
                r.direction.symbol(),
                r.bound,
                r.anchor,
            )?;
            if !r.detail.is_empty() {
                write!(f, "  {}", r.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_follows_direction() {
        assert!(BoundRow::new(5, "x", 6, "2n-4", 6, Direction::AtMost).pass);
        assert!(!BoundRow::new(5, "x", 7, "2n-4", 6, Direction::AtMost).pass);
        assert!(BoundRow::new(20, "x", 31, "2n-9", 31, Direction::AtLeast).pass);
        assert!(!BoundRow::new(20, "x", 30, "2n-9", 31, Direction::AtLeast).pass);
        assert!(!BoundRow::new(5, "x", 7, "n(n-2)/2", 8, Direction::Exactly).pass);
    }

    #[test]
    fn csv_quotes_commas() {
        let mut r = BoundsReport::new();
        r.push(BoundRow::new(4, "a", 1, "C(m,2)", 1, Direction::Exactly).with_detail("x, y"));
        let text = r.to_csv().unwrap();
        assert!(text.contains("\"C(m,2)\""));
        assert_eq!(text.lines().count(), 2);
        let back: BoundsReport = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
    }
}
