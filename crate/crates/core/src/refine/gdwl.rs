use super::{refine_until_stable, tag, Coloring, InterningContext, ValueKey};
use crate::distances::{rd_matrix, spd_matrix, RdMatrix, SpdMatrix};
use crate::error::Result;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DistanceKind {
    Spd,
    Rd,
    /// The pair `(SPD, RD)` used as one distance.
    SpdRd,
}

/// Precomputed distances for one graph.
#[derive(Debug, Clone, Copy)]
pub enum DistanceInput<'a> {
    Spd(&'a SpdMatrix),
    Rd(&'a RdMatrix),
    SpdRd(&'a SpdMatrix, &'a RdMatrix),
}

impl DistanceInput<'_> {
    fn size(&self) -> usize {
        match self {
            DistanceInput::Spd(m) | DistanceInput::SpdRd(m, _) => m.size(),
            DistanceInput::Rd(m) => m.size(),
        }
    }

    fn key(&self, u: usize, v: usize) -> ValueKey {
        match self {
            DistanceInput::Spd(m) => ValueKey::Spd(m.get(u, v).clone()),
            DistanceInput::Rd(m) => ValueKey::Rd(m.get(u, v).clone()),
            DistanceInput::SpdRd(s, r) => ValueKey::SpdRd(s.get(u, v).clone(), r.get(u, v).clone()),
        }
    }
}

/// Generalized distance refinement; computes the distances itself.
pub fn refine_gdwl(
    graphs: &[Graph],
    kind: DistanceKind,
    ctx: &mut InterningContext,
) -> Result<Vec<Coloring>> {
    let spd: Vec<SpdMatrix> = match kind {
        DistanceKind::Rd => Vec::new(),
        _ => graphs.iter().map(spd_matrix).collect(),
    };
    let rd: Vec<RdMatrix> = match kind {
        DistanceKind::Spd => Vec::new(),
        _ => graphs.iter().map(rd_matrix).collect::<Result<_>>()?,
    };
    let inputs: Vec<DistanceInput> = (0..graphs.len())
        .map(|i| match kind {
            DistanceKind::Spd => DistanceInput::Spd(&spd[i]),
            DistanceKind::Rd => DistanceInput::Rd(&rd[i]),
            DistanceKind::SpdRd => DistanceInput::SpdRd(&spd[i], &rd[i]),
        })
        .collect();
    Ok(refine_gdwl_with(&inputs, ctx))
}

/// Generalized distance refinement over precomputed distance matrices:
/// `χ^{t+1}(v) = hash({{(d(v,u), χ^t(u)) : u ∈ V}})`.
pub fn refine_gdwl_with(inputs: &[DistanceInput<'_>], ctx: &mut InterningContext) -> Vec<Coloring> {
    // Distances become small integer tokens once, up front.
    let tokens: Vec<Vec<u32>> = inputs
        .iter()
        .map(|d| {
            let n = d.size();
            (0..n * n).map(|i| ctx.value(d.key(i / n, i % n))).collect()
        })
        .collect();
    let init = ctx.intern(&[tag::INIT]);
    let state = inputs.iter().map(|d| vec![init; d.size()]).collect();
    let mut key = Vec::new();
    let mut pairs = Vec::new();
    let (colors, rounds) = refine_until_stable(ctx, state, |ctx, state| {
        tokens
            .iter()
            .zip(state)
            .map(|(tok, chi)| {
                let n = chi.len();
                (0..n)
                    .map(|v| {
                        pairs.clear();
                        pairs.extend((0..n).map(|u| (tok[v * n + u], chi[u].0)));
                        pairs.sort_unstable();
                        key.clear();
                        key.push(tag::GD);
                        key.extend(pairs.iter().flat_map(|&(d, c)| [d, c]));
                        ctx.intern(&key)
                    })
                    .collect()
            })
            .collect()
    });
    colors
        .into_iter()
        .map(|c| Coloring::new(ctx.id(), c, rounds))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn spd_separates_cycle_from_two_triangles() {
        let two_triangles =
            Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        for kind in [DistanceKind::Spd, DistanceKind::Rd, DistanceKind::SpdRd] {
            let mut ctx = InterningContext::new();
            let c = refine_gdwl(&[cycle(6), two_triangles.clone()], kind, &mut ctx).unwrap();
            assert_ne!(c[0].representation(), c[1].representation(), "{kind:?}");
        }
    }

    #[test]
    fn rd_separates_path_positions() {
        let p5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let mut ctx = InterningContext::new();
        let c = &refine_gdwl(std::slice::from_ref(&p5), DistanceKind::Rd, &mut ctx).unwrap()[0];
        assert_eq!(c.partition().len(), 3);
        assert_eq!(c.color(1), c.color(3));
    }
}
