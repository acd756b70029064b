use super::{refine_until_stable, tag, ColorId, Coloring, InterningContext};
use crate::graph::Graph;

/// Classic color refinement from a constant initial coloring.
pub fn refine_1wl(graphs: &[Graph], ctx: &mut InterningContext) -> Vec<Coloring> {
    let init = ctx.intern(&[tag::INIT]);
    let state = graphs.iter().map(|g| vec![init; g.node_count()]).collect();
    let mut key = Vec::new();
    let (colors, rounds) = refine_until_stable(ctx, state, |ctx, state| {
        graphs
            .iter()
            .zip(state)
            .map(|(g, chi)| {
                g.nodes()
                    .map(|v| {
                        let mut hist: Vec<u32> = g.neighbors(v).iter().map(|&u| chi[u].0).collect();
                        hist.sort_unstable();
                        key.clear();
                        key.extend([tag::WL, chi[v].0]);
                        key.extend(hist);
                        ctx.intern(&key)
                    })
                    .collect::<Vec<ColorId>>()
            })
            .collect()
    });
    colors
        .into_iter()
        .map(|c| Coloring::new(ctx.id(), c, rounds))
        .collect()
}
