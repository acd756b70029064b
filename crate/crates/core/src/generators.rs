//! Deterministic graph families.
//!
//! Paired counterexamples use 0-based labels: node `i` of the original
//! 1-based construction is node `i − 1` here, so the hub of [`example1`] is
//! node `n − 1`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::biconnect::biconnectivity_report;
use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph};

const RETRY_CAP: usize = 1000;

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn ring(offset: usize, len: usize) -> impl Iterator<Item = Edge> {
    (0..len).map(move |i| (offset + i, offset + (i + 1) % len))
}

/// Cycle(s) plus a hub `n − 1` joined to every `m`-th cycle node.
///
/// The first graph has one cycle of length `2km`, the second two cycles of
/// length `km`. The first graph has no cut vertex, the second always has the
/// hub as one.
pub fn example1(m: usize, k: usize) -> Result<(Graph, Graph)> {
    if m == 0 || k == 0 || m * k < 3 {
        return Err(invalid(format!(
            "example1 needs m, k ≥ 1 and mk ≥ 3, got m={m} k={k}"
        )));
    }
    let half = k * m;
    let n = 2 * half + 1;
    let hub = n - 1;
    let spokes = (1..=2 * half).filter(|i| i % m == 0).map(|i| (hub, i - 1));
    let g1 = Graph::from_edges(n, ring(0, 2 * half).chain(spokes.clone()))?;
    let g2 = Graph::from_edges(n, ring(0, half).chain(ring(half, half)).chain(spokes))?;
    Ok((g1, g2))
}

/// `C_{2m}` with a chord between nodes `m − 1` and `2m − 1`, against two
/// `C_m` joined by the same pair.
pub fn example2(m: usize) -> Result<(Graph, Graph)> {
    if m < 3 {
        return Err(invalid(format!("example2 needs m ≥ 3, got {m}")));
    }
    let bridge = (m - 1, 2 * m - 1);
    let g1 = Graph::from_edges(2 * m, ring(0, 2 * m).chain([bridge]))?;
    let g2 = Graph::from_edges(2 * m, ring(0, m).chain(ring(m, m)).chain([bridge]))?;
    Ok((g1, g2))
}

pub const NAMED_GRAPHS: [&str; 5] = [
    "dodecahedron",
    "desargues",
    "rook4x4",
    "shrikhande",
    "petersen",
];

pub fn named_graph(name: &str) -> Result<Graph> {
    match name {
        "dodecahedron" => Ok(generalized_petersen(10, 2)),
        "desargues" => Ok(generalized_petersen(10, 3)),
        "petersen" => Ok(generalized_petersen(5, 2)),
        "rook4x4" => Graph::from_edges_dedup(
            16,
            (0..16).flat_map(|a| {
                (a + 1..16)
                    .filter(move |b| a / 4 == b / 4 || a % 4 == b % 4)
                    .map(move |b| (a, b))
            }),
        ),
        "shrikhande" => {
            let id = |x: usize, y: usize| 4 * (x % 4) + y % 4;
            let steps = [(1, 0), (0, 1), (1, 1)];
            Graph::from_edges_dedup(
                16,
                (0..16).flat_map(move |a| {
                    steps
                        .into_iter()
                        .map(move |(dx, dy)| (a, id(a / 4 + dx, a % 4 + dy)))
                }),
            )
        }
        _ => Err(Error::Unknown {
            kind: "named graph",
            name: name.to_string(),
        }),
    }
}

/// `GP(n, k)`: outer cycle `0..n`, spokes `(i, n+i)`, inner star polygon.
fn generalized_petersen(n: usize, k: usize) -> Graph {
    let outer = ring(0, n);
    let spokes = (0..n).map(|i| (i, n + i));
    let inner = (0..n).map(|i| (n + i, n + (i + k) % n));
    Graph::from_edges_dedup(2 * n, outer.chain(spokes).chain(inner)).expect("valid construction")
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
}

/// `n ≤ 2` gives the path on `n` nodes.
pub fn cycle(n: usize) -> Graph {
    if n < 3 {
        return path(n);
    }
    Graph::from_edges(n, ring(0, n)).expect("valid cycle")
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
        .expect("valid clique")
}

/// Center 0 joined to `n − 1` leaves.
pub fn star(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (0, i))).expect("valid star")
}

/// Uniform labeled tree decoded from a random Prüfer sequence.
pub fn tree_random(n: usize, seed: u64) -> Graph {
    if n <= 2 {
        return path(n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&u| degree[u] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let Reverse(leaf) = leaves.pop().expect("a leaf always exists");
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.push(Reverse(c));
        }
    }
    let Reverse(a) = leaves.pop().expect("two leaves remain");
    let Reverse(b) = leaves.pop().expect("two leaves remain");
    edges.push((a, b));
    Graph::from_edges(n, edges).expect("Prüfer decoding yields a tree")
}

/// Erdős–Rényi `G(n, p)`: pairs `(i, j)`, `i < j`, are visited in
/// lexicographic order and kept with probability `p`.
pub fn random_gnp(n: usize, p: Ratio<u64>, seed: u64) -> Result<Graph> {
    if *p.denom() == 0 || p > Ratio::from_integer(1) {
        return Err(invalid(format!(
            "edge probability must lie in [0,1], got {p}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_range(0..*p.denom()) < *p.numer() {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// `blocks` random biconnected blocks chained into a path by bridges, every
/// node of degree exactly `d`.
///
/// A bridge between two `d`-regular pieces needs `d` odd. A block whose
/// internal degree sum `d·size − attachments` would be odd gets one extra
/// node. Blocks are drawn from the configuration model and rejected until
/// simple and biconnected; the finished graph is checked against the
/// biconnectivity oracle.
pub fn regular_with_cuts(d: usize, blocks: usize, block_size: usize, seed: u64) -> Result<Graph> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(invalid(format!(
            "degree must be odd and at least 3, got {d}"
        )));
    }
    if blocks < 2 {
        return Err(invalid(format!("need at least two blocks, got {blocks}")));
    }
    if block_size <= d {
        return Err(invalid(format!(
            "block size {block_size} too small for degree {d}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    // (first node, last node) of every block; bridges join last → next first.
    let mut spans = Vec::with_capacity(blocks);
    let mut offset = 0;
    for b in 0..blocks {
        let attachments = if b == 0 || b + 1 == blocks { 1 } else { 2 };
        let size = if (d * block_size - attachments) % 2 == 1 {
            block_size + 1
        } else {
            block_size
        };
        let mut degrees = vec![d; size];
        if b > 0 {
            degrees[0] -= 1;
        }
        if b + 1 < blocks {
            degrees[size - 1] -= 1;
        }
        let block = random_block(&degrees, &mut rng)?;
        edges.extend(block.edges().iter().map(|&(u, v)| (u + offset, v + offset)));
        spans.push((offset, offset + size - 1));
        offset += size;
    }
    let bridges: Vec<Edge> = spans.windows(2).map(|w| edge(w[0].1, w[1].0)).collect();
    edges.extend(&bridges);
    let g = Graph::from_edges(offset, edges)?;

    let report = biconnectivity_report(&g);
    let mut expected_cuts: Vec<usize> = bridges.iter().flat_map(|&(u, v)| [u, v]).collect();
    expected_cuts.sort_unstable();
    assert_eq!(
        report.cut_edges, bridges,
        "bridges must be the only cut edges"
    );
    assert_eq!(
        report.cut_vertices, expected_cuts,
        "bridge endpoints must be the only cut vertices"
    );
    assert!(g.nodes().all(|u| g.degree(u) == d));
    Ok(g)
}

fn random_block(degrees: &[usize], rng: &mut ChaCha8Rng) -> Result<Graph> {
    for _ in 0..RETRY_CAP {
        if let Some(g) = pair_stubs(degrees, rng) {
            if g.is_connected() && biconnectivity_report(&g).cut_vertices.is_empty() {
                return Ok(g);
            }
        }
    }
    Err(Error::Infeasible(RETRY_CAP))
}

/// One configuration-model attempt that only ever pairs stubs forming a new
/// simple edge; `None` when it gets stuck.
fn pair_stubs(degrees: &[usize], rng: &mut ChaCha8Rng) -> Option<Graph> {
    let n = degrees.len();
    let mut stubs: Vec<usize> = (0..n)
        .flat_map(|u| std::iter::repeat_n(u, degrees[u]))
        .collect();
    let mut adjacent = vec![false; n * n];
    let mut edges = Vec::with_capacity(stubs.len() / 2);
    while let Some(u) = stubs.pop() {
        let options: Vec<usize> = (0..stubs.len())
            .filter(|&i| stubs[i] != u && !adjacent[u * n + stubs[i]])
            .collect();
        let &pick = options.choose(rng)?;
        let w = stubs.swap_remove(pick);
        adjacent[u * n + w] = true;
        adjacent[w * n + u] = true;
        edges.push((u, w));
    }
    Graph::from_edges(n, edges).ok()
}

/// A parameterized generator call; its `Display` form is the provenance
/// string recorded in reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Example1 {
        m: usize,
        k: usize,
    },
    Example2 {
        m: usize,
    },
    Named(String),
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Star(usize),
    TreeRandom {
        n: usize,
        seed: u64,
    },
    Gnp {
        n: usize,
        p: Ratio<u64>,
        seed: u64,
    },
    RegularWithCuts {
        d: usize,
        blocks: usize,
        block_size: usize,
        seed: u64,
    },
}

impl Family {
    /// Parses `name` and positional parameters, e.g. `example1 2 2`,
    /// `gnp 10 1/2 7`, `named petersen`.
    pub fn parse(name: &str, params: &[String]) -> Result<Self> {
        fn num<T: std::str::FromStr>(params: &[String], i: usize, what: &str) -> Result<T> {
            let raw = params
                .get(i)
                .ok_or_else(|| invalid(format!("missing parameter {what}")))?;
            raw.parse()
                .map_err(|_| invalid(format!("bad value for {what}: {raw}")))
        }
        let arity = match name {
            "named" | "example2" | "path" | "cycle" | "complete" | "star" => 1,
            "example1" | "tree" => 2,
            "gnp" => 3,
            "regular-cuts" => 4,
            _ => {
                return Err(Error::Unknown {
                    kind: "family",
                    name: name.to_string(),
                })
            }
        };
        if params.len() != arity {
            return Err(invalid(format!(
                "{name} takes {arity} parameter(s), got {}",
                params.len()
            )));
        }
        Ok(match name {
            "named" => Family::Named(params[0].clone()),
            "example1" => Family::Example1 {
                m: num(params, 0, "m")?,
                k: num(params, 1, "k")?,
            },
            "example2" => Family::Example2 {
                m: num(params, 0, "m")?,
            },
            "path" => Family::Path(num(params, 0, "n")?),
            "cycle" => Family::Cycle(num(params, 0, "n")?),
            "complete" => Family::Complete(num(params, 0, "n")?),
            "star" => Family::Star(num(params, 0, "n")?),
            "tree" => Family::TreeRandom {
                n: num(params, 0, "n")?,
                seed: num(params, 1, "seed")?,
            },
            "gnp" => Family::Gnp {
                n: num(params, 0, "n")?,
                p: num(params, 1, "p")?,
                seed: num(params, 2, "seed")?,
            },
            _ => Family::RegularWithCuts {
                d: num(params, 0, "d")?,
                blocks: num(params, 1, "blocks")?,
                block_size: num(params, 2, "block_size")?,
                seed: num(params, 3, "seed")?,
            },
        })
    }

    /// Graphs of the family; paired families return both members.
    pub fn build(&self) -> Result<Vec<Graph>> {
        let one = |g: Graph| Ok(vec![g]);
        match self {
            Family::Example1 { m, k } => example1(*m, *k).map(|(a, b)| vec![a, b]),
            Family::Example2 { m } => example2(*m).map(|(a, b)| vec![a, b]),
            Family::Named(name) => one(named_graph(name)?),
            Family::Path(n) => one(path(*n)),
            Family::Cycle(n) => one(cycle(*n)),
            Family::Complete(n) => one(complete(*n)),
            Family::Star(n) => one(star(*n)),
            Family::TreeRandom { n, seed } => one(tree_random(*n, *seed)),
            Family::Gnp { n, p, seed } => one(random_gnp(*n, *p, *seed)?),
            Family::RegularWithCuts {
                d,
                blocks,
                block_size,
                seed,
            } => one(regular_with_cuts(*d, *blocks, *block_size, *seed)?),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Example1 { m, k } => write!(f, "example1(m={m},k={k})"),
            Family::Example2 { m } => write!(f, "example2(m={m})"),
            Family::Named(name) => f.write_str(name),
            Family::Path(n) => write!(f, "path({n})"),
            Family::Cycle(n) => write!(f, "cycle({n})"),
            Family::Complete(n) => write!(f, "complete({n})"),
            Family::Star(n) => write!(f, "star({n})"),
            Family::TreeRandom { n, seed } => write!(f, "tree_random(n={n},seed={seed})"),
            Family::Gnp { n, p, seed } => write!(f, "gnp(n={n},p={p},seed={seed})"),
            Family::RegularWithCuts {
                d,
                blocks,
                block_size,
                seed,
            } => write!(
                f,
                "regular_with_cuts(d={d},blocks={blocks},block_size={block_size},seed={seed})"
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::brute_force_isomorphic;

    #[test]
    fn example1_counts_and_hub() {
        let (g1, g2) = example1(2, 2).unwrap();
        assert_eq!((g1.node_count(), g1.edge_count()), (9, 12));
        assert_eq!((g2.node_count(), g2.edge_count()), (9, 12));
        assert!(biconnectivity_report(&g1).cut_vertices.is_empty());
        assert!(biconnectivity_report(&g2).is_cut_vertex(8));
        assert_eq!(g1.degree_sequence(), g2.degree_sequence());
    }

    #[test]
    fn example1_single_hub_edges() {
        let (_, g2) = example1(4, 1).unwrap();
        let r = biconnectivity_report(&g2);
        assert_eq!(r.cut_vertices, vec![3, 7, 8]);
        assert_eq!(r.cut_edges, vec![(3, 8), (7, 8)]);
    }

    #[test]
    fn example1_wheel_case() {
        let (g1, g2) = example1(1, 4).unwrap();
        assert_eq!(g1.degree(8), 8);
        assert_eq!(g2.degree(8), 8);
        assert!(g2.has_edge(0, 3) && !g1.has_edge(0, 3));
    }

    #[test]
    fn example2_shapes() {
        let (g1, g2) = example2(4).unwrap();
        assert!(g1.has_edge(3, 7) && g1.has_edge(7, 0));
        assert!(g2.has_edge(3, 0) && g2.has_edge(7, 4) && g2.has_edge(3, 7));
        let (_, g2) = example2(3).unwrap();
        assert_eq!(biconnectivity_report(&g2).cut_edges, vec![(2, 5)]);
        assert!(example2(2).is_err());
        assert!(example1(1, 2).is_err());
    }

    #[test]
    fn named_graph_sizes() {
        let d = named_graph("dodecahedron").unwrap();
        assert_eq!((d.node_count(), d.edge_count()), (20, 30));
        for name in ["rook4x4", "shrikhande"] {
            let g = named_graph(name).unwrap();
            assert_eq!((g.node_count(), g.edge_count()), (16, 48));
            assert!(g.nodes().all(|u| g.degree(u) == 6));
        }
        assert_eq!(named_graph("petersen").unwrap().girth(), Some(5));
        assert!(named_graph("heawood").is_err());
    }

    #[test]
    fn basic_families() {
        assert!(brute_force_isomorphic(&cycle(3), &complete(3)).unwrap());
        assert_eq!(path(2), complete(2));
        let t = tree_random(8, 11);
        assert_eq!(t.edge_count(), 7);
        assert!(t.is_connected());
        assert_eq!(star(5).degree(0), 4);
    }

    #[test]
    fn gnp_extremes_and_determinism() {
        assert_eq!(random_gnp(6, Ratio::new(0, 1), 3).unwrap().edge_count(), 0);
        assert_eq!(random_gnp(6, Ratio::new(1, 1), 3).unwrap().edge_count(), 15);
        let a = random_gnp(10, Ratio::new(1, 2), 7).unwrap();
        assert_eq!(a, random_gnp(10, Ratio::new(1, 2), 7).unwrap());
        assert!(random_gnp(3, Ratio::new(3, 2), 0).is_err());
    }

    #[test]
    fn regular_with_cuts_shape() {
        let g = regular_with_cuts(3, 2, 6, 5).unwrap();
        let r = biconnectivity_report(&g);
        assert_eq!(r.cut_edges.len(), 1);
        assert_eq!(r.cut_vertices.len(), 2);
        assert!(g.nodes().all(|u| g.degree(u) == 3));
        let g = regular_with_cuts(5, 3, 8, 1).unwrap();
        assert_eq!(biconnectivity_report(&g).cut_edges.len(), 2);
        assert!(regular_with_cuts(4, 2, 6, 0).is_err());
    }

    #[test]
    fn family_parse_and_display() {
        let f = Family::parse("gnp", &["10".into(), "1/2".into(), "7".into()]).unwrap();
        assert_eq!(f.to_string(), "gnp(n=10,p=1/2,seed=7)");
        assert_eq!(
            Family::parse("example1", &["2".into(), "2".into()])
                .unwrap()
                .build()
                .unwrap()
                .len(),
            2
        );
        assert!(Family::parse("cycle", &[]).is_err());
        assert!(Family::parse("lattice", &["3".into()]).is_err());
    }
}
