use serde::Serialize;

use crate::graph::Edge;

/// Upper bound on violations kept per report; the rest are only counted.
pub const VIOLATION_CAP: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

/// A node id or an edge as a sorted pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Item {
    Node(usize),
    Edge([usize; 2]),
}

impl From<Edge> for Item {
    fn from((u, v): Edge) -> Self {
        Item::Edge([u.min(v), u.max(v)])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Provenance ids of the graphs involved.
    pub graphs: Vec<String>,
    pub items: Vec<Item>,
    pub expected: String,
    pub observed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Cell {
    Expressive,
    NotExpressive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub algorithm: String,
    pub cut_vertex: Cell,
    pub cut_edge: Cell,
    pub bcv_tree: Cell,
    pub bce_tree: Cell,
}

/// Observed expressivity per algorithm and biconnectivity problem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpressivityTable {
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub population: String,
    pub verdict: Verdict,
    pub violations: Vec<Violation>,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<ExpressivityTable>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Collects violations for one check, keeping at most [`VIOLATION_CAP`].
#[derive(Debug, Default)]
pub(crate) struct Findings {
    kept: Vec<Violation>,
    total: usize,
    notes: Vec<String>,
}

impl Findings {
    pub fn push(&mut self, v: Violation) {
        self.total += 1;
        if self.kept.len() < VIOLATION_CAP {
            self.kept.push(v);
        }
    }

    pub fn violate(
        &mut self,
        graphs: &[&str],
        items: Vec<Item>,
        expected: impl Into<String>,
        observed: impl Into<String>,
    ) {
        self.push(Violation {
            graphs: graphs.iter().map(|s| s.to_string()).collect(),
            items,
            expected: expected.into(),
            observed: observed.into(),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn extend(&mut self, other: Findings) {
        self.total += other.total - other.kept.len();
        for v in other.kept {
            self.push(v);
        }
        self.notes.extend(other.notes);
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn into_report(mut self, check_id: &str, population: &str, elapsed_ms: u64) -> CheckReport {
        if self.total > self.kept.len() {
            self.notes.push(format!(
                "{} violations in total, first {} listed",
                self.total,
                self.kept.len()
            ));
        }
        CheckReport {
            check_id: check_id.to_string(),
            population: population.to_string(),
            verdict: if self.total == 0 {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            violations: self.kept,
            elapsed_ms,
            notes: self.notes,
            table: None,
        }
    }
}
