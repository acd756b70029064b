//! Color refinement engine.
//!
//! Every variant runs all of its input graphs in lockstep against one
//! [`InterningContext`], so a color id means the same thing in every graph of
//! the run. Refinement stops at the first round whose joint partition (over
//! all graphs) equals the previous one; that round's colors are reported.

mod fwl;
mod gdwl;
mod subgraph;
mod substructure;
mod wl;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use crate::distances::{Distance, Rational};
use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};

pub use fwl::{refine_2fwl, PairColoring, FWL_NODE_LIMIT};
pub use gdwl::{refine_gdwl, refine_gdwl_with, DistanceInput, DistanceKind};
pub use subgraph::{refine_ds_wl, refine_dss_wl, SubgraphPolicy, SUBGRAPH_NODE_LIMIT};
pub use substructure::{
    compute_orbits, refine_scwl, substructure_counts, Substructure, SubstructureSet,
};
pub use wl::refine_1wl;

/// Interned color. Only meaningful inside the context that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ColorId(pub u32);

/// Leading tags that keep structurally different signatures apart.
pub(crate) mod tag {
    pub const INIT: u32 = 0;
    pub const WL: u32 = 1;
    pub const GD: u32 = 2;
    pub const FWL_INIT: u32 = 3;
    pub const FWL: u32 = 4;
    pub const MARK0: u32 = 5;
    pub const MARK1: u32 = 6;
    pub const DSS_SUB: u32 = 7;
    pub const DSS_NODE: u32 = 8;
    pub const DS_REPR: u32 = 9;
    pub const SC: u32 = 10;
}

/// Values that enter signatures but are not colors themselves.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum ValueKey {
    Spd(Distance<u32>),
    Rd(Distance<Rational>),
    SpdRd(Distance<u32>, Distance<Rational>),
    Counts(Vec<u64>),
}

static NEXT_CONTEXT: AtomicU64 = AtomicU64::new(1);

/// Injective dictionary from canonical signatures to colors.
///
/// Ids are handed out first-come, so a run that feeds signatures in the
/// same order always produces the same ids.
#[derive(Debug)]
pub struct InterningContext {
    id: u64,
    colors: HashMap<Vec<u32>, ColorId>,
    values: HashMap<ValueKey, u32>,
}

impl Default for InterningContext {
    fn default() -> Self {
        Self::new()
    }
}

impl InterningContext {
    pub fn new() -> Self {
        InterningContext {
            id: NEXT_CONTEXT.fetch_add(1, Ordering::Relaxed),
            colors: HashMap::new(),
            values: HashMap::new(),
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    /// Number of distinct colors handed out so far.
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn intern(&mut self, signature: &[u32]) -> ColorId {
        if let Some(&id) = self.colors.get(signature) {
            return id;
        }
        let id = ColorId(u32::try_from(self.colors.len()).expect("color space exhausted"));
        self.colors.insert(signature.to_vec(), id);
        id
    }

    pub(crate) fn value(&mut self, key: ValueKey) -> u32 {
        let next = self.values.len() as u32;
        *self.values.entry(key).or_insert(next)
    }
}

/// Stable node coloring of one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coloring {
    #[serde(skip)]
    context: u64,
    pub colors: Vec<ColorId>,
    /// Round at which the joint partition stabilized.
    pub rounds: usize,
}

impl Coloring {
    pub(crate) fn new(context: u64, colors: Vec<ColorId>, rounds: usize) -> Self {
        Coloring {
            context,
            colors,
            rounds,
        }
    }

    pub fn context(&self) -> u64 {
        self.context
    }

    pub fn color(&self, u: usize) -> ColorId {
        self.colors[u]
    }

    /// Unordered color pair of an edge, smaller id first.
    pub fn edge_color(&self, u: usize, v: usize) -> (ColorId, ColorId) {
        let (a, b) = (self.colors[u], self.colors[v]);
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn partition(&self) -> Partition {
        Partition::from_labels(&self.colors)
    }

    pub fn representation(&self) -> GraphRepresentation {
        GraphRepresentation::new(self.context, self.colors.clone())
    }
}

/// Sorted multiset of colors describing a whole graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GraphRepresentation {
    #[serde(skip)]
    context: u64,
    pub colors: Vec<ColorId>,
}

impl GraphRepresentation {
    pub(crate) fn new(context: u64, mut colors: Vec<ColorId>) -> Self {
        colors.sort_unstable();
        GraphRepresentation { context, colors }
    }

    pub fn context(&self) -> u64 {
        self.context
    }

    /// Whether two representations differ; errors when their contexts differ.
    pub fn differs_from(&self, other: &GraphRepresentation) -> Result<bool> {
        if self.context != other.context {
            return Err(Error::ContextMismatch);
        }
        Ok(self.colors != other.colors)
    }
}

/// Node colors of two graphs compared in a shared context.
pub fn same_node_color(a: &Coloring, u: usize, b: &Coloring, v: usize) -> Result<bool> {
    if a.context != b.context {
        return Err(Error::ContextMismatch);
    }
    Ok(a.color(u) == b.color(v))
}

/// Edge features `{{χ(u), χ(v)}}` of two graphs compared in a shared context.
pub fn same_edge_color(
    a: &Coloring,
    e: (usize, usize),
    b: &Coloring,
    f: (usize, usize),
) -> Result<bool> {
    if a.context != b.context {
        return Err(Error::ContextMismatch);
    }
    Ok(a.edge_color(e.0, e.1) == b.edge_color(f.0, f.1))
}

/// Runs `step` until the joint partition of all items stops changing.
///
/// `state[g]` holds the colors of every item of graph `g`. Each round must
/// refine the previous one; a violation or exceeding the item-count bound on
/// rounds means the signatures are broken, so both panic.
pub(crate) fn refine_until_stable<F>(
    ctx: &mut InterningContext,
    mut state: Vec<Vec<ColorId>>,
    mut step: F,
) -> (Vec<Vec<ColorId>>, usize)
where
    F: FnMut(&mut InterningContext, &[Vec<ColorId>]) -> Vec<Vec<ColorId>>,
{
    let items: usize = state.iter().map(Vec::len).sum();
    let mut classes = distinct(&state);
    let mut rounds = 0;
    loop {
        let next = step(ctx, &state);
        let next_classes = distinct(&next);
        let pairs: HashSet<(ColorId, ColorId)> = state
            .iter()
            .flatten()
            .copied()
            .zip(next.iter().flatten().copied())
            .collect();
        assert_eq!(
            pairs.len(),
            next_classes,
            "refinement round merged color classes"
        );
        if next_classes == classes {
            return (state, rounds);
        }
        state = next;
        classes = next_classes;
        rounds += 1;
        assert!(rounds <= items, "refinement exceeded {items} rounds");
    }
}

fn distinct(state: &[Vec<ColorId>]) -> usize {
    state.iter().flatten().collect::<HashSet<_>>().len()
}

/// Sorted copy, used for multiset signatures.
pub(crate) fn sorted<I: IntoIterator<Item = u32>>(items: I) -> Vec<u32> {
    let mut v: Vec<u32> = items.into_iter().collect();
    v.sort_unstable();
    v
}

/// Whether same-colored nodes see the same number of neighbors of every
/// color, jointly across all graphs. Returns the first offending pair of
/// `(graph, node)` items.
pub fn wl_condition_violation(
    graphs: &[Graph],
    colorings: &[Coloring],
) -> Option<((usize, usize), (usize, usize))> {
    let mut seen: HashMap<ColorId, (Vec<ColorId>, (usize, usize))> = HashMap::new();
    for (gi, (g, c)) in graphs.iter().zip(colorings).enumerate() {
        for u in g.nodes() {
            let mut hist: Vec<ColorId> = g.neighbors(u).iter().map(|&w| c.color(w)).collect();
            hist.sort_unstable();
            match seen.get(&c.color(u)) {
                Some((expected, witness)) if *expected != hist => return Some((*witness, (gi, u))),
                Some(_) => {}
                None => {
                    seen.insert(c.color(u), (hist, (gi, u)));
                }
            }
        }
    }
    None
}

/// A refinement algorithm together with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Algorithm {
    Wl1,
    Gd(DistanceKind),
    Fwl2,
    Dss(SubgraphPolicy),
    Ds(SubgraphPolicy),
    Sc(SubstructureSet),
}

/// Output of [`Algorithm::refine`]: node colorings plus the multisets used
/// as graph representations (all pair colors for 2-FWL, node colors
/// otherwise).
#[derive(Debug, Clone)]
pub struct Refinement {
    pub colorings: Vec<Coloring>,
    pub representations: Vec<GraphRepresentation>,
}

impl Algorithm {
    pub fn refine(&self, graphs: &[Graph], ctx: &mut InterningContext) -> Result<Refinement> {
        if let Algorithm::Fwl2 = self {
            let pairs = refine_2fwl(graphs, ctx)?;
            return Ok(Refinement {
                colorings: pairs.iter().map(PairColoring::vertex_view).collect(),
                representations: pairs.iter().map(PairColoring::representation).collect(),
            });
        }
        let colorings = match self {
            Algorithm::Wl1 => refine_1wl(graphs, ctx),
            Algorithm::Gd(kind) => refine_gdwl(graphs, *kind, ctx)?,
            Algorithm::Dss(policy) => refine_dss_wl(graphs, *policy, ctx)?,
            Algorithm::Ds(policy) => refine_ds_wl(graphs, *policy, ctx)?,
            Algorithm::Sc(set) => refine_scwl(graphs, set, ctx),
            Algorithm::Fwl2 => unreachable!(),
        };
        let representations = colorings.iter().map(Coloring::representation).collect();
        Ok(Refinement {
            colorings,
            representations,
        })
    }
}

/// Refines `g` and `h` in a fresh context and compares representations.
pub fn distinguishable(g: &Graph, h: &Graph, algorithm: &Algorithm) -> Result<bool> {
    let mut ctx = InterningContext::new();
    let run = algorithm.refine(&[g.clone(), h.clone()], &mut ctx)?;
    run.representations[0].differs_from(&run.representations[1])
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Wl1 => f.write_str("1wl"),
            Algorithm::Gd(DistanceKind::Spd) => f.write_str("spdwl"),
            Algorithm::Gd(DistanceKind::Rd) => f.write_str("rdwl"),
            Algorithm::Gd(DistanceKind::SpdRd) => f.write_str("gdwl"),
            Algorithm::Fwl2 => f.write_str("2fwl"),
            Algorithm::Dss(p) => write!(f, "dsswl:{p}"),
            Algorithm::Ds(p) => write!(f, "dswl:{p}"),
            Algorithm::Sc(set) => write!(f, "scwl:{set}"),
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::Unknown {
            kind: "algorithm",
            name: s.to_string(),
        };
        let (head, rest) = s.split_once(':').unwrap_or((s, ""));
        match (head, rest) {
            ("1wl", "") => Ok(Algorithm::Wl1),
            ("spdwl", "") => Ok(Algorithm::Gd(DistanceKind::Spd)),
            ("rdwl", "") => Ok(Algorithm::Gd(DistanceKind::Rd)),
            ("gdwl", "") => Ok(Algorithm::Gd(DistanceKind::SpdRd)),
            ("2fwl", "") => Ok(Algorithm::Fwl2),
            ("dsswl", p) => Ok(Algorithm::Dss(p.parse()?)),
            ("dswl", p) => Ok(Algorithm::Ds(p.parse()?)),
            ("scwl", list) => Ok(Algorithm::Sc(list.parse()?)),
            _ => Err(unknown()),
        }
    }
}
