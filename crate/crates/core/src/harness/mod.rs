//! Theorem-checking harness.
//!
//! Expressivity claims are checked as implications over finite corpora:
//! a check passes when no counterexample is observed on its population.

mod biconnectivity;
mod distance;
mod report;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::generators::{Family, NAMED_GRAPHS};
use crate::graph::Graph;

pub use biconnectivity::{
    check_generators, check_negative_expressivity, check_oracle_equivalence,
    check_positive_expressivity, check_wl_condition, expressivity_table, negative_suite, Column,
    Probe, TABLE_ROWS,
};
pub use distance::{check_distance_regular_suite, check_rd_properties, check_refinement_hierarchy};
pub use report::{
    Cell, CheckReport, ExpressivityTable, Item, TableRow, Verdict, Violation, VIOLATION_CAP,
};

/// Graphs with provenance ids; `ids[i]` regenerates `graphs[i]`.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub description: String,
    pub ids: Vec<String>,
    pub graphs: Vec<Graph>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// Builds every family; paired families contribute `…/G1` and `…/G2`.
    pub fn from_families(description: impl Into<String>, families: &[Family]) -> Result<Self> {
        let mut corpus = Corpus {
            description: description.into(),
            ..Corpus::default()
        };
        for f in families {
            let graphs = f.build()?;
            let paired = graphs.len() > 1;
            for (i, g) in graphs.into_iter().enumerate() {
                corpus.ids.push(if paired {
                    format!("{f}/G{}", i + 1)
                } else {
                    f.to_string()
                });
                corpus.graphs.push(g);
            }
        }
        Ok(corpus)
    }

    /// Seeded random graphs plus [`standard_families`].
    pub fn standard(seeds: usize) -> Result<Self> {
        let mut families: Vec<Family> = (0..seeds as u64).map(random_member).collect();
        families.extend(standard_families());
        let description = format!(
            "{seeds} gnp graphs (seed s: n drawn uniformly from 1..=12 by a rng seeded with s, p=1/5 for even s and 2/5 for odd s) plus {}",
            standard_families().iter().map(Family::to_string).collect::<Vec<_>>().join(", ")
        );
        Corpus::from_families(description, &families)
    }

    /// `seeds / 2` graphs `G(12, 3/10)` plus the named graphs and the
    /// counterexample pairs.
    pub fn hierarchy(seeds: usize) -> Result<Self> {
        let count = seeds / 2;
        let mut families: Vec<Family> = (0..count as u64)
            .map(|seed| Family::Gnp {
                n: 12,
                p: Ratio::new(3, 10),
                seed,
            })
            .collect();
        families.extend(NAMED_GRAPHS.iter().map(|n| Family::Named(n.to_string())));
        families.extend(counterexample_families());
        let description = format!("{count} gnp(n=12,p=3/10) graphs, seeds 0..{count}, plus named graphs and counterexample pairs");
        Corpus::from_families(description, &families)
    }
}

/// Random member `s` of the standard corpus.
pub fn random_member(seed: u64) -> Family {
    let n = ChaCha8Rng::seed_from_u64(seed).gen_range(1..=12);
    let p = if seed.is_multiple_of(2) {
        Ratio::new(1, 5)
    } else {
        Ratio::new(2, 5)
    };
    Family::Gnp { n, p, seed }
}

pub fn counterexample_families() -> Vec<Family> {
    let mut v: Vec<Family> = [
        (2, 2),
        (4, 1),
        (1, 4),
        (1, 3),
        (3, 1),
        (5, 1),
        (6, 1),
        (3, 2),
    ]
    .into_iter()
    .map(|(m, k)| Family::Example1 { m, k })
    .collect();
    v.extend((3..=6).map(|m| Family::Example2 { m }));
    v
}

/// Deterministic, non-random part of the standard corpus.
pub fn standard_families() -> Vec<Family> {
    let mut v = counterexample_families();
    v.extend(NAMED_GRAPHS.iter().map(|n| Family::Named(n.to_string())));
    v.extend([
        Family::Path(1),
        Family::Path(2),
        Family::Path(5),
        Family::Cycle(3),
        Family::Cycle(6),
        Family::Complete(4),
        Family::Complete(6),
        Family::Star(5),
    ]);
    v.extend((0..3).map(|seed| Family::TreeRandom { n: 10, seed }));
    v.extend((0..2).map(|seed| Family::RegularWithCuts {
        d: 3,
        blocks: 2,
        block_size: 6,
        seed,
    }));
    v.push(Family::RegularWithCuts {
        d: 3,
        blocks: 3,
        block_size: 6,
        seed: 0,
    });
    v.push(Family::RegularWithCuts {
        d: 5,
        blocks: 2,
        block_size: 8,
        seed: 0,
    });
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Generators,
    Oracle,
    Positive,
    Negative,
    Drg,
    Hierarchy,
    Rd,
    WlCondition,
    Table,
}

impl Suite {
    pub const NAMES: [&'static str; 10] = [
        "all",
        "generators",
        "oracle",
        "positive",
        "negative",
        "drg",
        "hierarchy",
        "rd",
        "wl",
        "table",
    ];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "generators" => Suite::Generators,
            "oracle" => Suite::Oracle,
            "positive" => Suite::Positive,
            "negative" => Suite::Negative,
            "drg" => Suite::Drg,
            "hierarchy" => Suite::Hierarchy,
            "rd" => Suite::Rd,
            "wl" => Suite::WlCondition,
            "table" => Suite::Table,
            _ => {
                return Err(Error::Unknown {
                    kind: "suite",
                    name: s.to_string(),
                })
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [
            Suite::All,
            Suite::Generators,
            Suite::Oracle,
            Suite::Positive,
            Suite::Negative,
            Suite::Drg,
            Suite::Hierarchy,
            Suite::Rd,
            Suite::WlCondition,
            Suite::Table,
        ]
        .iter()
        .position(|s| s == self)
        .expect("listed");
        f.write_str(Suite::NAMES[i])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    /// Random graphs in the standard corpus; half as many in the hierarchy
    /// corpus.
    pub seeds: usize,
    /// Random trees for the resistance checks.
    pub trees: usize,
    /// Record wall-clock time; off by default so reports are reproducible
    /// byte for byte.
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seeds: 200,
            trees: 50,
            timing: false,
        }
    }
}

/// Times a check and stamps the report.
pub(crate) fn timed<F>(timing: bool, f: F) -> Result<CheckReport>
where
    F: FnOnce() -> Result<CheckReport>,
{
    let start = Instant::now();
    let mut report = f()?;
    report.elapsed_ms = if timing {
        start.elapsed().as_millis() as u64
    } else {
        0
    };
    Ok(report)
}

/// Positive-suite algorithms.
pub const POSITIVE_ALGORITHMS: [&str; 5] = ["dsswl:nm", "spdwl", "rdwl", "gdwl", "2fwl"];

pub fn run_suite(suite: Suite, options: RunOptions) -> Result<Vec<CheckReport>> {
    let t = options.timing;
    let needs_standard = matches!(
        suite,
        Suite::All
            | Suite::Oracle
            | Suite::Positive
            | Suite::Rd
            | Suite::WlCondition
            | Suite::Table
    );
    let standard = if needs_standard {
        Corpus::standard(options.seeds)?
    } else {
        Corpus::default()
    };
    let mut reports = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Generators {
        reports.push(timed(t, check_generators)?);
    }
    if all || suite == Suite::Oracle {
        reports.push(timed(t, || check_oracle_equivalence(&standard))?);
    }
    if all || suite == Suite::Positive {
        for name in POSITIVE_ALGORITHMS {
            let algo = name.parse()?;
            reports.push(timed(t, || check_positive_expressivity(&algo, &standard))?);
        }
    }
    if all || suite == Suite::Negative {
        reports.extend(negative_suite(t)?);
    }
    if all || suite == Suite::Drg {
        reports.push(timed(t, check_distance_regular_suite)?);
    }
    if all || suite == Suite::Hierarchy {
        let corpus = Corpus::hierarchy(options.seeds)?;
        reports.push(timed(t, || check_refinement_hierarchy(&corpus))?);
    }
    if all || suite == Suite::Rd {
        reports.push(timed(t, || check_rd_properties(&standard, options.trees))?);
    }
    if all || suite == Suite::WlCondition {
        reports.push(timed(t, || check_wl_condition(&standard))?);
    }
    if all || suite == Suite::Table {
        reports.push(timed(t, || expressivity_table(&standard).map(|(_, r)| r))?);
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_corpus_is_reproducible() {
        let a = Corpus::standard(12).unwrap();
        let b = Corpus::standard(12).unwrap();
        assert_eq!(a.ids, b.ids);
        assert_eq!(a.graphs, b.graphs);
        assert_eq!(a.ids.len(), a.graphs.len());
        assert!(a.ids.iter().any(|id| id == "example1(m=2,k=2)/G2"));
        assert!(a.graphs.iter().all(|g| g.node_count() <= 40));
    }

    #[test]
    fn ids_regenerate_graphs() {
        let corpus = Corpus::standard(4).unwrap();
        for (id, g) in corpus.ids.iter().zip(&corpus.graphs).take(4) {
            let f = random_member(corpus.ids.iter().position(|x| x == id).unwrap() as u64);
            assert_eq!(&f.to_string(), id);
            assert_eq!(&f.build().unwrap()[0], g);
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
        assert!("everything".parse::<Suite>().is_err());
    }
}
