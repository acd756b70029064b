use std::fmt;
use std::str::FromStr;

use super::{refine_until_stable, sorted, tag, ColorId, Coloring, InterningContext};
use crate::distances::{spd_matrix, Distance};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const SUBGRAPH_NODE_LIMIT: usize = 64;

/// Node-based policies: one subgraph `G_v` per node `v`, all on the node
/// set of `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubgraphPolicy {
    /// `G` with `v` marked.
    NodeMarking,
    /// `G` without the edges at `v`.
    NodeDeletion,
    /// Edges inside the radius-`k` ball around `v`.
    Ego(u32),
    /// `Ego(k)` with `v` marked.
    EgoMarking(u32),
}

impl SubgraphPolicy {
    fn marks_root(self) -> bool {
        matches!(
            self,
            SubgraphPolicy::NodeMarking | SubgraphPolicy::EgoMarking(_)
        )
    }
}

impl fmt::Display for SubgraphPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgraphPolicy::NodeMarking => f.write_str("nm"),
            SubgraphPolicy::NodeDeletion => f.write_str("nd"),
            SubgraphPolicy::Ego(k) => write!(f, "ego:{k}"),
            SubgraphPolicy::EgoMarking(k) => write!(f, "egom:{k}"),
        }
    }
}

impl FromStr for SubgraphPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::Unknown {
            kind: "subgraph policy",
            name: s.to_string(),
        };
        let radius = |k: &str| k.parse::<u32>().map_err(|_| unknown());
        match s.split_once(':') {
            None if s == "nm" => Ok(SubgraphPolicy::NodeMarking),
            None if s == "nd" => Ok(SubgraphPolicy::NodeDeletion),
            Some(("ego", k)) => Ok(SubgraphPolicy::Ego(radius(k)?)),
            Some(("egom", k)) => Ok(SubgraphPolicy::EgoMarking(radius(k)?)),
            _ => Err(unknown()),
        }
    }
}

/// The bag of one graph: `adj[v]` is the adjacency of `G_v`.
struct Bag {
    n: usize,
    adj: Vec<Vec<Vec<usize>>>,
}

fn check_size(graphs: &[Graph]) -> Result<()> {
    match graphs.iter().find(|g| g.node_count() > SUBGRAPH_NODE_LIMIT) {
        Some(g) => Err(Error::GuardExceeded {
            what: "subgraph refinement node count",
            limit: SUBGRAPH_NODE_LIMIT,
            actual: g.node_count(),
        }),
        None => Ok(()),
    }
}

fn bag(g: &Graph, policy: SubgraphPolicy) -> Bag {
    let n = g.node_count();
    let full: Vec<Vec<usize>> = g.nodes().map(|u| g.neighbors(u).to_vec()).collect();
    let adj = match policy {
        SubgraphPolicy::NodeMarking => vec![full; n],
        SubgraphPolicy::NodeDeletion => g
            .nodes()
            .map(|v| {
                g.nodes()
                    .map(|u| {
                        if u == v {
                            Vec::new()
                        } else {
                            full[u].iter().copied().filter(|&w| w != v).collect()
                        }
                    })
                    .collect()
            })
            .collect(),
        SubgraphPolicy::Ego(k) | SubgraphPolicy::EgoMarking(k) => {
            let spd = spd_matrix(g);
            let inside =
                |v: usize, u: usize| matches!(spd.get(v, u), Distance::Finite(d) if *d <= k);
            g.nodes()
                .map(|v| {
                    g.nodes()
                        .map(|u| {
                            if inside(v, u) {
                                full[u].iter().copied().filter(|&w| inside(v, w)).collect()
                            } else {
                                Vec::new()
                            }
                        })
                        .collect()
                })
                .collect()
        }
    };
    Bag { n, adj }
}

fn initial_subgraph_colors(
    bags: &[Bag],
    policy: SubgraphPolicy,
    ctx: &mut InterningContext,
) -> Vec<Vec<ColorId>> {
    let c0 = ctx.intern(&[tag::MARK0]);
    let c1 = ctx.intern(&[tag::MARK1]);
    bags.iter()
        .map(|b| {
            (0..b.n * b.n)
                .map(|i| {
                    if policy.marks_root() && i / b.n == i % b.n {
                        c1
                    } else {
                        c0
                    }
                })
                .collect()
        })
        .collect()
}

/// Node color as the multiset of its colors across all subgraphs.
fn node_colors(sub: &[ColorId], n: usize, ctx: &mut InterningContext) -> Vec<ColorId> {
    (0..n)
        .map(|v| {
            let mut key = vec![tag::DSS_NODE];
            key.extend(sorted((0..n).map(|i| sub[i * n + v].0)));
            ctx.intern(&key)
        })
        .collect()
}

/// Subgraph refinement where each subgraph also sees node-level colors
/// aggregated over the whole bag:
/// `χ_{G_i}(v) ← hash(χ_{G_i}(v), {{χ_{G_i}(u) : u ∈ N_{G_i}(v)}}, χ_G(v), {{χ_G(u) : u ∈ N_G(v)}})`
/// and `χ_G(v) = hash({{χ_{G_i}(v) : i ∈ V}})`.
pub fn refine_dss_wl(
    graphs: &[Graph],
    policy: SubgraphPolicy,
    ctx: &mut InterningContext,
) -> Result<Vec<Coloring>> {
    check_size(graphs)?;
    let bags: Vec<Bag> = graphs.iter().map(|g| bag(g, policy)).collect();
    // Per graph: n·n subgraph colors followed by n node colors.
    let state = initial_subgraph_colors(&bags, policy, ctx)
        .into_iter()
        .zip(&bags)
        .map(|(mut sub, b)| {
            let node = node_colors(&sub, b.n, ctx);
            sub.extend(node);
            sub
        })
        .collect();
    let mut key = Vec::new();
    let (colors, rounds) = refine_until_stable(ctx, state, |ctx, state| {
        graphs
            .iter()
            .zip(&bags)
            .zip(state)
            .map(|((g, b), chi)| {
                let n = b.n;
                let (sub, node) = chi.split_at(n * n);
                let node_part: Vec<Vec<u32>> = g
                    .nodes()
                    .map(|v| {
                        let mut part = vec![node[v].0, g.degree(v) as u32];
                        part.extend(sorted(g.neighbors(v).iter().map(|&u| node[u].0)));
                        part
                    })
                    .collect();
                let mut next: Vec<ColorId> = (0..n * n)
                    .map(|idx| {
                        let (i, v) = (idx / n, idx % n);
                        let nbrs = &b.adj[i][v];
                        key.clear();
                        key.extend([tag::DSS_SUB, sub[idx].0, nbrs.len() as u32]);
                        key.extend(sorted(nbrs.iter().map(|&u| sub[i * n + u].0)));
                        key.extend(&node_part[v]);
                        ctx.intern(&key)
                    })
                    .collect();
                let node_next = node_colors(&next, n, ctx);
                next.extend(node_next);
                next
            })
            .collect()
    });
    Ok(bags
        .iter()
        .zip(colors)
        .map(|(b, chi)| Coloring::new(ctx.id(), chi[b.n * b.n..].to_vec(), rounds))
        .collect())
}

/// Independent 1-WL on every subgraph; node `v` receives the representation
/// of `G_v`.
pub fn refine_ds_wl(
    graphs: &[Graph],
    policy: SubgraphPolicy,
    ctx: &mut InterningContext,
) -> Result<Vec<Coloring>> {
    check_size(graphs)?;
    let bags: Vec<Bag> = graphs.iter().map(|g| bag(g, policy)).collect();
    let state = initial_subgraph_colors(&bags, policy, ctx);
    let mut key = Vec::new();
    let (colors, rounds) = refine_until_stable(ctx, state, |ctx, state| {
        bags.iter()
            .zip(state)
            .map(|(b, sub)| {
                let n = b.n;
                (0..n * n)
                    .map(|idx| {
                        let (i, v) = (idx / n, idx % n);
                        key.clear();
                        key.extend([tag::WL, sub[idx].0]);
                        key.extend(sorted(b.adj[i][v].iter().map(|&u| sub[i * n + u].0)));
                        ctx.intern(&key)
                    })
                    .collect()
            })
            .collect()
    });
    Ok(bags
        .iter()
        .zip(colors)
        .map(|(b, sub)| {
            let n = b.n;
            let nodes = (0..n)
                .map(|v| {
                    let mut key = vec![tag::DS_REPR];
                    key.extend(sorted((0..n).map(|u| sub[v * n + u].0)));
                    ctx.intern(&key)
                })
                .collect();
            Coloring::new(ctx.id(), nodes, rounds)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn policy_names() {
        assert_eq!(
            "ego:3".parse::<SubgraphPolicy>().unwrap(),
            SubgraphPolicy::Ego(3)
        );
        assert_eq!(SubgraphPolicy::EgoMarking(2).to_string(), "egom:2");
        assert!("ego:x".parse::<SubgraphPolicy>().is_err());
        assert!("nm:1".parse::<SubgraphPolicy>().is_err());
    }

    #[test]
    fn ego_ball_edges() {
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = bag(&p4, SubgraphPolicy::Ego(1));
        assert_eq!(b.adj[0][0], vec![1]);
        assert_eq!(b.adj[0][1], vec![0]);
        assert!(b.adj[0][2].is_empty());
        let d = bag(&p4, SubgraphPolicy::NodeDeletion);
        assert_eq!(d.adj[1][2], vec![3]);
        assert!(d.adj[1][1].is_empty());
    }

    #[test]
    fn separates_cycle_from_two_triangles() {
        let two_triangles =
            Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        for policy in [SubgraphPolicy::NodeMarking, SubgraphPolicy::NodeDeletion] {
            let mut ctx = InterningContext::new();
            let c = refine_dss_wl(&[cycle(6), two_triangles.clone()], policy, &mut ctx).unwrap();
            assert_ne!(c[0].representation(), c[1].representation());
            let mut ctx = InterningContext::new();
            let c = refine_ds_wl(&[cycle(6), two_triangles.clone()], policy, &mut ctx).unwrap();
            assert_ne!(c[0].representation(), c[1].representation());
        }
    }

    #[test]
    fn guard() {
        let mut ctx = InterningContext::new();
        let big = Graph::empty(SUBGRAPH_NODE_LIMIT + 1);
        assert!(refine_dss_wl(&[big], SubgraphPolicy::NodeMarking, &mut ctx).is_err());
    }
}
