use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;

use super::report::{Cell, CheckReport, ExpressivityTable, Findings, Item, TableRow};
use super::{counterexample_families, standard_families, timed, Corpus};
use crate::biconnect::{
    bce_forest_forms, bcv_forest_forms, biconnectivity_report, brute_force_cut_sets,
    BiconnectivityReport, CanonicalMode, TreeCanonicalForm,
};
use crate::distances::{distance_regular_profile, spd_matrix, Distance};
use crate::error::{Error, Result};
use crate::generators::{Family, NAMED_GRAPHS};
use crate::refine::{
    distinguishable, wl_condition_violation, Algorithm, ColorId, InterningContext, Refinement,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Column {
    CutVertex,
    CutEdge,
    BcvTree,
    BceTree,
}

impl Column {
    pub const ALL: [Column; 4] = [
        Column::CutVertex,
        Column::CutEdge,
        Column::BcvTree,
        Column::BceTree,
    ];
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Column::CutVertex => "cut_vertex",
            Column::CutEdge => "cut_edge",
            Column::BcvTree => "bcv_tree",
            Column::BceTree => "bce_tree",
        })
    }
}

struct Facts {
    report: BiconnectivityReport,
    bcv: Vec<TreeCanonicalForm>,
    bce: Vec<TreeCanonicalForm>,
}

fn facts(corpus: &Corpus) -> Vec<Facts> {
    corpus
        .graphs
        .iter()
        .map(|g| Facts {
            report: biconnectivity_report(g),
            bcv: bcv_forest_forms(g, CanonicalMode::KindAndSize),
            bce: bce_forest_forms(g, CanonicalMode::KindAndSize),
        })
        .collect()
}

fn cut_vertex_text(cut: bool) -> &'static str {
    if cut {
        "cut vertex"
    } else {
        "not a cut vertex"
    }
}

fn cut_edge_text(cut: bool) -> &'static str {
    if cut {
        "cut edge"
    } else {
        "not a cut edge"
    }
}

fn forms_text(forms: &[TreeCanonicalForm]) -> String {
    forms
        .iter()
        .map(|f| f.0.as_str())
        .collect::<Vec<_>>()
        .join(" | ")
}

/// Violations of "same color ⇒ same answer" for each requested column,
/// jointly over every pair of items in the corpus.
fn observe(
    algo: &Algorithm,
    corpus: &Corpus,
    facts: &[Facts],
    columns: &[Column],
) -> Result<Vec<Findings>> {
    let mut ctx = InterningContext::new();
    let run = algo.refine(&corpus.graphs, &mut ctx)?;
    Ok(columns
        .iter()
        .map(|&column| match column {
            Column::CutVertex => node_column(&run, corpus, facts),
            Column::CutEdge => edge_column(&run, corpus, facts),
            Column::BcvTree => tree_column(&run, corpus, |gi| &facts[gi].bcv, "BCVTree"),
            Column::BceTree => tree_column(&run, corpus, |gi| &facts[gi].bce, "BCETree"),
        })
        .collect())
}

fn node_column(run: &Refinement, corpus: &Corpus, facts: &[Facts]) -> Findings {
    let mut out = Findings::default();
    let mut seen: HashMap<ColorId, (usize, usize, bool)> = HashMap::new();
    for (gi, (g, c)) in corpus.graphs.iter().zip(&run.colorings).enumerate() {
        for u in g.nodes() {
            let status = facts[gi].report.is_cut_vertex(u);
            match seen.entry(c.color(u)) {
                Entry::Occupied(w) => {
                    let &(wg, wu, ws) = w.get();
                    if ws != status {
                        out.violate(
                            &[&corpus.ids[wg], &corpus.ids[gi]],
                            vec![Item::Node(wu), Item::Node(u)],
                            cut_vertex_text(ws),
                            cut_vertex_text(status),
                        );
                    }
                }
                Entry::Vacant(slot) => {
                    slot.insert((gi, u, status));
                }
            }
        }
    }
    out
}

/// First edge seen with a color pair: graph, edge, cut status.
type EdgeWitness = (usize, (usize, usize), bool);

fn edge_column(run: &Refinement, corpus: &Corpus, facts: &[Facts]) -> Findings {
    let mut out = Findings::default();
    let mut seen: HashMap<(ColorId, ColorId), EdgeWitness> = HashMap::new();
    for (gi, (g, c)) in corpus.graphs.iter().zip(&run.colorings).enumerate() {
        for &(u, v) in g.edges() {
            let status = facts[gi].report.is_cut_edge(u, v);
            match seen.entry(c.edge_color(u, v)) {
                Entry::Occupied(w) => {
                    let &(wg, we, ws) = w.get();
                    if ws != status {
                        out.violate(
                            &[&corpus.ids[wg], &corpus.ids[gi]],
                            vec![Item::from(we), Item::from((u, v))],
                            cut_edge_text(ws),
                            cut_edge_text(status),
                        );
                    }
                }
                Entry::Vacant(slot) => {
                    slot.insert((gi, (u, v), status));
                }
            }
        }
    }
    out
}

fn tree_column<'a, F>(run: &Refinement, corpus: &Corpus, forms: F, what: &str) -> Findings
where
    F: Fn(usize) -> &'a Vec<TreeCanonicalForm>,
{
    let mut out = Findings::default();
    let mut seen: HashMap<&[ColorId], usize> = HashMap::new();
    for (gi, rep) in run.representations.iter().enumerate() {
        match seen.entry(&rep.colors) {
            Entry::Occupied(w) => {
                let wg = *w.get();
                if forms(wg) != forms(gi) {
                    out.violate(
                        &[&corpus.ids[wg], &corpus.ids[gi]],
                        Vec::new(),
                        format!("{what} {}", forms_text(forms(wg))),
                        format!("{what} {}", forms_text(forms(gi))),
                    );
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(gi);
            }
        }
    }
    out
}

/// Cut sets from the lowpoint DFS against literal deletion.
pub fn check_oracle_equivalence(corpus: &Corpus) -> Result<CheckReport> {
    let mut out = Findings::default();
    for (id, g) in corpus.ids.iter().zip(&corpus.graphs) {
        let fast = biconnectivity_report(g);
        let (cut_vertices, cut_edges) = brute_force_cut_sets(g)?;
        if fast.cut_vertices != cut_vertices || fast.cut_edges != cut_edges {
            out.violate(
                &[id],
                Vec::new(),
                format!("cut vertices {cut_vertices:?}, cut edges {cut_edges:?}"),
                format!(
                    "cut vertices {:?}, cut edges {:?}",
                    fast.cut_vertices, fast.cut_edges
                ),
            );
        }
    }
    Ok(out.into_report("oracle_equivalence", &corpus.description, 0))
}

/// Columns each positive result covers.
fn claimed_columns(algo: &Algorithm) -> Option<&'static [Column]> {
    match algo.to_string().as_str() {
        "dsswl:nm" => Some(&[Column::CutVertex, Column::CutEdge]),
        "spdwl" => Some(&[Column::CutEdge, Column::BceTree]),
        "rdwl" => Some(&[Column::CutVertex, Column::BcvTree]),
        "gdwl" | "2fwl" => Some(&Column::ALL),
        _ => None,
    }
}

/// Equal colors imply equal biconnectivity answers, for the columns the
/// algorithm is claimed to solve. Observed on the corpus only.
pub fn check_positive_expressivity(algo: &Algorithm, corpus: &Corpus) -> Result<CheckReport> {
    let columns = claimed_columns(algo)
        .ok_or_else(|| Error::InvalidParameter(format!("no positive claim for {algo}")))?;
    let facts = facts(corpus);
    let mut out = Findings::default();
    for findings in observe(algo, corpus, &facts, columns)? {
        out.extend(findings);
    }
    let names: Vec<String> = columns.iter().map(Column::to_string).collect();
    out.note(format!("columns: {}; observed on corpus", names.join(", ")));
    Ok(out.into_report(&format!("positive:{algo}"), &corpus.description, 0))
}

/// What a negative result compares between the two graphs of a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Probe {
    Representation,
    Node(usize),
}

/// Every pair must come out indistinguishable under every listed algorithm.
pub fn check_negative_expressivity(
    check_id: &str,
    algorithms: &[Algorithm],
    pairs: &[Family],
    probe: Probe,
) -> Result<CheckReport> {
    let mut out = Findings::default();
    for family in pairs {
        let graphs = family.build()?;
        if graphs.len() != 2 {
            return Err(Error::InvalidParameter(format!(
                "{family} is not a pair family"
            )));
        }
        let ids = [format!("{family}/G1"), format!("{family}/G2")];
        for algo in algorithms {
            let mut ctx = InterningContext::new();
            let run = algo.refine(&graphs, &mut ctx)?;
            let (differs, items) = match probe {
                Probe::Representation => (
                    run.representations[0].differs_from(&run.representations[1])?,
                    Vec::new(),
                ),
                Probe::Node(v) => (
                    run.colorings[0].color(v) != run.colorings[1].color(v),
                    vec![Item::Node(v), Item::Node(v)],
                ),
            };
            if differs {
                out.violate(
                    &[&ids[0], &ids[1]],
                    items,
                    format!("{algo}: indistinguishable"),
                    format!("{algo}: distinguishable"),
                );
            }
        }
    }
    let population: Vec<String> = pairs.iter().map(Family::to_string).collect();
    Ok(out.into_report(check_id, &population.join(", "), 0))
}

fn algorithms(names: &[&str]) -> Vec<Algorithm> {
    names
        .iter()
        .map(|n| n.parse().expect("built-in algorithm name"))
        .collect()
}

/// The counterexample checks plus the structural premises behind the
/// reductions to 1-WL.
pub fn negative_suite(timing: bool) -> Result<Vec<CheckReport>> {
    let e1 = |m, k| Family::Example1 { m, k };
    let e2 = |m| Family::Example2 { m };
    let mut reports = vec![
        timed(timing, || {
            check_negative_expressivity(
                "negative:1wl",
                &algorithms(&["1wl"]),
                &[e1(2, 2), e1(4, 1), e1(1, 4), e2(3), e2(4), e2(5), e2(6)],
                Probe::Representation,
            )
        })?,
        timed(timing, || {
            check_negative_expressivity(
                "negative:spdwl",
                &algorithms(&["spdwl"]),
                &[e1(1, 4)],
                Probe::Representation,
            )
        })?,
        timed(timing, || {
            check_negative_expressivity(
                "negative:dsswl:ego",
                &algorithms(&["dsswl:ego:1", "dsswl:ego:2"]),
                &[e1(1, 4)],
                Probe::Representation,
            )
        })?,
        timed(timing, || {
            check_negative_expressivity(
                "negative:dswl",
                &algorithms(&["dswl:nm", "dswl:nd"]),
                &[e1(1, 4)],
                Probe::Node(8),
            )
        })?,
        timed(timing, || {
            check_negative_expressivity(
                "negative:scwl",
                &algorithms(&["scwl:triangle,c4,c5"]),
                &[e1(6, 1)],
                Probe::Representation,
            )
        })?,
    ];
    reports.push(timed(timing, check_counterexample_premises)?);
    Ok(reports)
}

/// Triangle-freeness, the girth bound `m`, and diameter at most 2 for the
/// wheel-like pairs.
fn check_counterexample_premises() -> Result<CheckReport> {
    let mut out = Findings::default();
    for family in counterexample_families() {
        let (m, triangle_free, wheel) = match family {
            // the second graph's cycles have length km, so km = 3 gives triangles
            Family::Example1 { m, k } => (m, m > 1 && m * k > 3, m == 1 && k >= 3),
            Family::Example2 { m } => (m, m > 3, false),
            _ => unreachable!(),
        };
        for (i, g) in family.build()?.iter().enumerate() {
            let id = format!("{family}/G{}", i + 1);
            let girth = g.girth();
            if triangle_free && girth.is_some_and(|c| c < 4) {
                out.violate(
                    &[&id],
                    Vec::new(),
                    "triangle-free",
                    format!("girth {girth:?}"),
                );
            }
            if girth.is_some_and(|c| c < m) {
                out.violate(
                    &[&id],
                    Vec::new(),
                    format!("girth at least {m}"),
                    format!("girth {girth:?}"),
                );
            }
            if wheel {
                let spd = spd_matrix(g);
                let far = g
                    .nodes()
                    .flat_map(|u| g.nodes().map(move |v| (u, v)))
                    .find(|&(u, v)| !matches!(spd.get(u, v), Distance::Finite(d) if *d <= 2));
                if let Some((u, v)) = far {
                    out.violate(
                        &[&id],
                        vec![Item::Node(u), Item::Node(v)],
                        "distance at most 2",
                        "farther",
                    );
                }
            }
        }
    }
    let population: Vec<String> = counterexample_families()
        .iter()
        .map(Family::to_string)
        .collect();
    Ok(out.into_report("negative:premise", &population.join(", "), 0))
}

/// Stable colorings of the listed algorithms satisfy the WL-condition
/// jointly over the corpus.
pub fn check_wl_condition(corpus: &Corpus) -> Result<CheckReport> {
    let mut out = Findings::default();
    for algo in algorithms(&["1wl", "spdwl", "dsswl:nm", "2fwl"]) {
        let mut ctx = InterningContext::new();
        let run = algo.refine(&corpus.graphs, &mut ctx)?;
        if let Some(((ga, a), (gb, b))) = wl_condition_violation(&corpus.graphs, &run.colorings) {
            out.violate(
                &[&corpus.ids[ga], &corpus.ids[gb]],
                vec![Item::Node(a), Item::Node(b)],
                format!("{algo}: equal neighbor color counts"),
                "different neighbor color counts",
            );
        }
    }
    Ok(out.into_report("wl_condition", &corpus.description, 0))
}

/// Deterministic rebuilds and the generator self-tests.
pub fn check_generators() -> Result<CheckReport> {
    let mut out = Findings::default();
    let families = standard_families();
    for family in &families {
        let id = family.to_string();
        let graphs = family.build()?;
        if graphs != family.build()? {
            out.violate(&[&id], Vec::new(), "identical rebuild", "different rebuild");
        }
        if let [g1, g2] = graphs.as_slice() {
            if g1.degree_sequence() != g2.degree_sequence() {
                out.violate(
                    &[&id],
                    Vec::new(),
                    "equal degree sequences",
                    "different degree sequences",
                );
            }
            if distinguishable(g1, g2, &Algorithm::Wl1)? {
                out.violate(
                    &[&id],
                    Vec::new(),
                    "equal 1wl representations",
                    "different 1wl representations",
                );
            }
        }
        if let Family::RegularWithCuts { d, .. } = family {
            if graphs[0].nodes().any(|u| graphs[0].degree(u) != *d) {
                out.violate(&[&id], Vec::new(), format!("{d}-regular"), "irregular");
            }
        }
    }
    for name in NAMED_GRAPHS {
        if !distance_regular_profile(&crate::generators::named_graph(name)?).is_drg {
            out.violate(
                &[name],
                Vec::new(),
                "distance-regular",
                "not distance-regular",
            );
        }
    }
    let population: Vec<String> = families.iter().map(Family::to_string).collect();
    Ok(out.into_report("generators", &population.join(", "), 0))
}

/// Rows of the expressivity table with the expected pattern; `None` marks
/// cells left open, which are reported but not asserted.
pub const TABLE_ROWS: [(&str, [Option<bool>; 4]); 7] = [
    ("1wl", [Some(false); 4]),
    ("scwl:triangle,c4,c5", [Some(false); 4]),
    ("dsswl:nm", [Some(true); 4]),
    ("dswl:nm", [Some(false), None, None, None]),
    ("spdwl", [Some(false), Some(true), Some(false), Some(true)]),
    ("gdwl", [Some(true); 4]),
    ("2fwl", [Some(true); 4]),
];

/// Observed table: a cell is expressive when the corpus holds no
/// counterexample to the column's implication.
pub fn expressivity_table(corpus: &Corpus) -> Result<(ExpressivityTable, CheckReport)> {
    let facts = facts(corpus);
    let mut out = Findings::default();
    let mut rows = Vec::new();
    for (name, expected) in TABLE_ROWS {
        let algo: Algorithm = name.parse()?;
        let observed = observe(&algo, corpus, &facts, &Column::ALL)?;
        let cells: Vec<Cell> = observed
            .iter()
            .map(|f| {
                if f.is_empty() {
                    Cell::Expressive
                } else {
                    Cell::NotExpressive
                }
            })
            .collect();
        for ((column, cell), want) in Column::ALL.iter().zip(&cells).zip(expected) {
            let text = |c: &Cell| match c {
                Cell::Expressive => "expressive",
                Cell::NotExpressive => "not_expressive",
            };
            match want {
                Some(want) => {
                    let want_cell = if want {
                        Cell::Expressive
                    } else {
                        Cell::NotExpressive
                    };
                    if *cell != want_cell {
                        out.violate(
                            &[],
                            Vec::new(),
                            format!("{name} {column}: {}", text(&want_cell)),
                            format!("{name} {column}: {}", text(cell)),
                        );
                    }
                }
                None => out.note(format!(
                    "{name} {column}: observed {} (open, not asserted)",
                    text(cell)
                )),
            }
        }
        let mut cells = cells.into_iter();
        let mut next = || cells.next().expect("four columns");
        rows.push(TableRow {
            algorithm: name.to_string(),
            cut_vertex: next(),
            cut_edge: next(),
            bcv_tree: next(),
            bce_tree: next(),
        });
    }
    out.note("observed on corpus");
    let table = ExpressivityTable { rows };
    let mut report = out.into_report("expressivity_table", &corpus.description, 0);
    report.table = Some(table.clone());
    Ok((table, report))
}
