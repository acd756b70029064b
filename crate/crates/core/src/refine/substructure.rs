use std::fmt;
use std::str::FromStr;

use super::{refine_until_stable, tag, Coloring, InterningContext, ValueKey};
use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};

const PATTERN_NODE_LIMIT: usize = 8;

/// A small connected pattern graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substructure {
    name: String,
    graph: Graph,
    orbits: Partition,
    automorphisms: u64,
}

impl Substructure {
    pub fn new(name: impl Into<String>, graph: Graph) -> Result<Self> {
        let n = graph.node_count();
        if n == 0 || n > PATTERN_NODE_LIMIT || !graph.is_connected() {
            return Err(Error::InvalidSubstructure);
        }
        let (orbits, automorphisms) = compute_orbits(&graph);
        Ok(Substructure {
            name: name.into(),
            graph,
            orbits,
            automorphisms,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn orbits(&self) -> &Partition {
        &self.orbits
    }

    pub fn automorphism_count(&self) -> u64 {
        self.automorphisms
    }
}

impl FromStr for Substructure {
    type Err = Error;

    /// `triangle`, `paw`, `cN` (cycle), `kN` (clique), `pN` (path on N
    /// nodes), `starN` (one center, N leaves).
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::Unknown {
            kind: "substructure",
            name: s.to_string(),
        };
        let size = |digits: &str, min: usize| match digits.parse::<usize>() {
            Ok(k) if k >= min => Ok(k),
            _ => Err(unknown()),
        };
        let graph = if s == "triangle" {
            cycle(3)
        } else if s == "paw" {
            Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])?
        } else if let Some(k) = s.strip_prefix("star") {
            let k = size(k, 1)?;
            Graph::from_edges(k + 1, (1..=k).map(|i| (0, i)))?
        } else if let Some(k) = s.strip_prefix('c') {
            cycle(size(k, 3)?)
        } else if let Some(k) = s.strip_prefix('k') {
            let k = size(k, 1)?;
            Graph::from_edges(k, (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))))?
        } else if let Some(k) = s.strip_prefix('p') {
            let k = size(k, 1)?;
            Graph::from_edges(k, (1..k).map(|i| (i - 1, i)))?
        } else {
            return Err(unknown());
        };
        Substructure::new(s, graph)
    }
}

fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
}

/// Ordered collection of patterns; counts are concatenated in this order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SubstructureSet(pub Vec<Substructure>);

impl fmt::Display for SubstructureSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.iter().map(Substructure::name).collect();
        f.write_str(&names.join(","))
    }
}

impl FromStr for SubstructureSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Ok(SubstructureSet::default());
        }
        s.split(',')
            .map(str::parse)
            .collect::<Result<_>>()
            .map(SubstructureSet)
    }
}

/// Automorphism orbits and group order by exhaustive search.
pub fn compute_orbits(h: &Graph) -> (Partition, u64) {
    let n = h.node_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let mut count = 0u64;
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut autos = Vec::new();
    search(h, 0, &mut image, &mut used, &mut |perm: &[usize]| {
        count += 1;
        autos.push(perm.to_vec());
    });
    for perm in autos {
        for (u, &v) in perm.iter().enumerate() {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a.max(b)] = a.min(b);
        }
    }
    let labels: Vec<usize> = (0..n).map(|u| find(&mut parent, u)).collect();
    (Partition::from_labels(&labels), count)
}

fn search(
    h: &Graph,
    i: usize,
    image: &mut [usize],
    used: &mut [bool],
    found: &mut dyn FnMut(&[usize]),
) {
    let n = h.node_count();
    if i == n {
        found(image);
        return;
    }
    for c in 0..n {
        if used[c]
            || h.degree(c) != h.degree(i)
            || (0..i).any(|j| h.has_edge(i, j) != h.has_edge(c, image[j]))
        {
            continue;
        }
        image[i] = c;
        used[c] = true;
        search(h, i + 1, image, used, found);
        used[c] = false;
    }
    image[i] = usize::MAX;
}

/// `x[v]`: for every pattern and every orbit of it, the number of induced
/// copies in `g` in which `v` plays a node of that orbit.
pub fn substructure_counts(g: &Graph, set: &SubstructureSet) -> Vec<Vec<u64>> {
    let mut x = vec![Vec::new(); g.node_count()];
    for s in &set.0 {
        let per_pattern = pattern_counts(g, s);
        for (row, add) in x.iter_mut().zip(per_pattern) {
            row.extend(add);
        }
    }
    x
}

fn pattern_counts(g: &Graph, s: &Substructure) -> Vec<Vec<u64>> {
    let h = &s.graph;
    let k = h.node_count();
    // BFS order of the pattern, each node after its parent.
    let mut order = vec![0usize];
    let mut parent = vec![usize::MAX; k];
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in h.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = u;
                order.push(w);
            }
        }
    }
    let mut counts = vec![vec![0u64; s.orbits.len()]; g.node_count()];
    let mut phi = vec![usize::MAX; k];
    let mut used = vec![false; g.node_count()];
    embed(g, s, &order, &parent, 0, &mut phi, &mut used, &mut counts);
    for row in &mut counts {
        for c in row.iter_mut() {
            debug_assert_eq!(*c % s.automorphisms, 0);
            *c /= s.automorphisms;
        }
    }
    counts
}

#[allow(clippy::too_many_arguments)]
fn embed(
    g: &Graph,
    s: &Substructure,
    order: &[usize],
    parent: &[usize],
    depth: usize,
    phi: &mut [usize],
    used: &mut [bool],
    counts: &mut [Vec<u64>],
) {
    let h = &s.graph;
    if depth == order.len() {
        for (w, &v) in phi.iter().enumerate() {
            counts[v][s.orbits.class_of(w)] += 1;
        }
        return;
    }
    let w = order[depth];
    let candidates: Vec<usize> = if depth == 0 {
        g.nodes().collect()
    } else {
        g.neighbors(phi[parent[w]]).to_vec()
    };
    for c in candidates {
        if used[c] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&p| h.has_edge(w, p) == g.has_edge(c, phi[p]));
        if !consistent {
            continue;
        }
        phi[w] = c;
        used[c] = true;
        embed(g, s, order, parent, depth + 1, phi, used, counts);
        used[c] = false;
    }
    phi[w] = usize::MAX;
}

/// 1-WL with substructure counts attached to every node and neighbor:
/// `χ^{t+1}(v) = hash(χ^t(v), x(v), {{(χ^t(u), x(u)) : u ∈ N(v)}})`.
pub fn refine_scwl(
    graphs: &[Graph],
    set: &SubstructureSet,
    ctx: &mut InterningContext,
) -> Vec<Coloring> {
    let xs: Vec<Vec<u32>> = graphs
        .iter()
        .map(|g| {
            substructure_counts(g, set)
                .into_iter()
                .map(|row| ctx.value(ValueKey::Counts(row)))
                .collect()
        })
        .collect();
    let init = ctx.intern(&[tag::INIT]);
    let state = graphs.iter().map(|g| vec![init; g.node_count()]).collect();
    let mut key = Vec::new();
    let (colors, rounds) = refine_until_stable(ctx, state, |ctx, state| {
        graphs
            .iter()
            .zip(&xs)
            .zip(state)
            .map(|((g, x), chi)| {
                g.nodes()
                    .map(|v| {
                        let mut nbrs: Vec<(u32, u32)> =
                            g.neighbors(v).iter().map(|&u| (chi[u].0, x[u])).collect();
                        nbrs.sort_unstable();
                        key.clear();
                        key.extend([tag::SC, chi[v].0, x[v]]);
                        key.extend(nbrs.iter().flat_map(|&(c, y)| [c, y]));
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

    #[test]
    fn orbits_of_small_patterns() {
        let paw: Substructure = "paw".parse().unwrap();
        assert_eq!(paw.automorphism_count(), 2);
        assert_eq!(paw.orbits().len(), 3);
        let c5: Substructure = "c5".parse().unwrap();
        assert_eq!(c5.automorphism_count(), 10);
        assert_eq!(c5.orbits().len(), 1);
        let star: Substructure = "star3".parse().unwrap();
        assert_eq!(star.automorphism_count(), 6);
        assert_eq!(star.orbits().len(), 2);
    }

    #[test]
    fn rejects_bad_patterns() {
        assert_eq!(
            "c9".parse::<Substructure>().unwrap_err(),
            Error::InvalidSubstructure
        );
        assert!("c2".parse::<Substructure>().is_err());
        assert!("hexagon".parse::<Substructure>().is_err());
        assert_eq!(
            Substructure::new("pair", Graph::empty(2)).unwrap_err(),
            Error::InvalidSubstructure
        );
    }

    #[test]
    fn triangle_counts_in_k4() {
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let set: SubstructureSet = "triangle,p3".parse().unwrap();
        let x = substructure_counts(&k4, &set);
        // three triangles through each node, no induced 3-paths
        assert_eq!(x[0], vec![3, 0, 0]);
    }

    #[test]
    fn induced_path_counts() {
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let set: SubstructureSet = "p3".parse().unwrap();
        let x = substructure_counts(&p4, &set);
        // orbit order follows node 0 of the pattern: {ends}, {middle}
        assert_eq!(x[0], vec![1, 0]);
        assert_eq!(x[1], vec![1, 1]);
    }

    #[test]
    fn triangles_separate_cycle_from_two_triangles() {
        let c6 = cycle(6);
        let two = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let set: SubstructureSet = "triangle".parse().unwrap();
        let mut ctx = InterningContext::new();
        let c = refine_scwl(&[c6, two], &set, &mut ctx);
        assert_ne!(c[0].representation(), c[1].representation());
    }
}
