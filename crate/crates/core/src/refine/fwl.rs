use serde::Serialize;

use super::{refine_until_stable, tag, ColorId, Coloring, GraphRepresentation, InterningContext};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const FWL_NODE_LIMIT: usize = 40;

const REL_NODE: u32 = 0;
const REL_NON_EDGE: u32 = 1;
const REL_EDGE: u32 = 2;

/// Stable coloring of all ordered node pairs of one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairColoring {
    #[serde(skip)]
    context: u64,
    n: usize,
    pub colors: Vec<ColorId>,
    pub rounds: usize,
}

impl PairColoring {
    pub fn get(&self, u: usize, v: usize) -> ColorId {
        self.colors[u * self.n + v]
    }

    /// Node coloring read off the diagonal.
    pub fn vertex_view(&self) -> Coloring {
        Coloring::new(
            self.context,
            (0..self.n).map(|v| self.get(v, v)).collect(),
            self.rounds,
        )
    }

    pub fn representation(&self) -> GraphRepresentation {
        GraphRepresentation::new(self.context, self.colors.clone())
    }
}

/// Folklore 2-WL:
/// `χ^{t+1}(a,b) = hash(χ^t(a,b), {{(χ^t(u,b), χ^t(a,u)) : u ∈ V}})`,
/// starting from the isomorphism type of `(a, b)`.
pub fn refine_2fwl(graphs: &[Graph], ctx: &mut InterningContext) -> Result<Vec<PairColoring>> {
    if let Some(g) = graphs.iter().find(|g| g.node_count() > FWL_NODE_LIMIT) {
        return Err(Error::GuardExceeded {
            what: "2-FWL node count",
            limit: FWL_NODE_LIMIT,
            actual: g.node_count(),
        });
    }
    let state = graphs
        .iter()
        .map(|g| {
            let n = g.node_count();
            (0..n * n)
                .map(|i| {
                    let (a, b) = (i / n, i % n);
                    let rel = if a == b {
                        REL_NODE
                    } else if g.has_edge(a, b) {
                        REL_EDGE
                    } else {
                        REL_NON_EDGE
                    };
                    ctx.intern(&[tag::FWL_INIT, REL_NODE, rel, rel, REL_NODE])
                })
                .collect()
        })
        .collect();
    let mut key = Vec::new();
    let mut pairs = Vec::new();
    let (colors, rounds) = refine_until_stable(ctx, state, |ctx, state| {
        graphs
            .iter()
            .zip(state)
            .map(|(g, chi)| {
                let n = g.node_count();
                (0..n * n)
                    .map(|i| {
                        let (a, b) = (i / n, i % n);
                        pairs.clear();
                        pairs.extend((0..n).map(|u| (chi[u * n + b].0, chi[a * n + u].0)));
                        pairs.sort_unstable();
                        key.clear();
                        key.extend([tag::FWL, chi[i].0]);
                        key.extend(pairs.iter().flat_map(|&(x, y)| [x, y]));
                        ctx.intern(&key)
                    })
                    .collect()
            })
            .collect()
    });
    Ok(graphs
        .iter()
        .zip(colors)
        .map(|(g, colors)| PairColoring {
            context: ctx.id(),
            n: g.node_count(),
            colors,
            rounds,
        })
        .collect())
}
