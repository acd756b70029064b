//! Simple undirected graphs, their text formats, and small utilities shared by
//! every other module.
//!
//! Nodes are dense indices `0..n`. Edges are stored as ordered pairs `(u, v)`
//! with `u < v`, sorted lexicographically, and mirrored into sorted adjacency
//! lists.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

/// An undirected edge written with the smaller endpoint first.
pub type Edge = (usize, usize);

/// Orders an endpoint pair so the smaller index comes first.
pub fn edge(u: usize, v: usize) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Immutable simple graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edges: Vec<Edge>,
}

impl Graph {
    /// Graph with `n` isolated nodes.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    /// Builds a graph, rejecting self-loops, duplicates and out-of-range nodes.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            check_edge(n, u, v)?;
            list.push(edge(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted_unique(n, list))
    }

    /// Like [`Graph::from_edges`] but silently merges duplicate pairs.
    pub fn from_edges_dedup<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            check_edge(n, u, v)?;
            list.push(edge(u, v));
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_sorted_unique(n, list))
    }

    fn from_sorted_unique(n: usize, edges: Vec<Edge>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph { adjacency, edges }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> std::ops::Range<usize> {
        0..self.adjacency.len()
    }

    /// Edges sorted lexicographically, smaller endpoint first.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.node_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Degree sequence sorted ascending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut degrees: Vec<usize> = self.nodes().map(|u| self.degree(u)).collect();
        degrees.sort_unstable();
        degrees
    }

    pub fn is_connected(&self) -> bool {
        connected_components(self).len() <= 1
    }

    /// Graph with the same nodes and one edge removed. Missing edges are ignored.
    pub fn without_edge(&self, e: Edge) -> Graph {
        let e = edge(e.0, e.1);
        let edges = self.edges.iter().copied().filter(|&f| f != e).collect();
        Self::from_sorted_unique(self.node_count(), edges)
    }

    /// Relabels node `u` as `perm[u]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.node_count();
        if perm.len() != n {
            return Err(Error::InvalidParameter(format!(
                "permutation of length {} for graph with {n} nodes",
                perm.len()
            )));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
        }
        Graph::from_edges(n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Places `other` after `self`, shifting its labels by `self.node_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.node_count();
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Self::from_sorted_unique(shift + other.node_count(), edges)
    }

    /// Length of a shortest cycle, or `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.node_count();
        let mut best: Option<usize> = None;
        for s in self.nodes() {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Serializes in the edge-list format read by [`parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.node_count(), self.edge_count());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

fn check_edge(n: usize, u: usize, v: usize) -> Result<()> {
    for node in [u, v] {
        if node >= n {
            return Err(Error::NodeOutOfRange { node, n });
        }
    }
    if u == v {
        return Err(Error::SelfLoop(u));
    }
    Ok(())
}

/// Partition of `0..n` into disjoint classes.
///
/// Classes are sorted internally and ordered by their smallest member, so two
/// partitions compare equal exactly when they group nodes the same way.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Partition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Partition {
    /// Groups nodes by equal label. Any `Eq + Hash` label works.
    pub fn from_labels<L: std::hash::Hash + Eq>(labels: &[L]) -> Self {
        let mut index: std::collections::HashMap<&L, usize> = Default::default();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = Vec::with_capacity(labels.len());
        for (u, label) in labels.iter().enumerate() {
            let next = classes.len();
            let c = *index.entry(label).or_insert(next);
            if c == next {
                classes.push(Vec::new());
            }
            classes[c].push(u);
            class_of.push(c);
        }
        Partition { class_of, classes }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, u: usize) -> usize {
        self.class_of[u]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// True when every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.classes.iter().all(|class| {
            let c = coarser.class_of(class[0]);
            class.iter().all(|&u| coarser.class_of(u) == c)
        })
    }
}

/// Maximal connected node sets, as a partition.
pub fn connected_components(g: &Graph) -> Partition {
    let n = g.node_count();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for s in g.nodes() {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = next;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if label[w] == usize::MAX {
                    label[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    Partition::from_labels(&label)
}

/// Subgraph induced by `nodes`. Node `i` of the result is `nodes[i]` of `g`;
/// the returned vector is that relabeling.
pub fn induced_subgraph(g: &Graph, nodes: &[usize]) -> Result<(Graph, Vec<usize>)> {
    let n = g.node_count();
    let mut local = vec![usize::MAX; n];
    for (i, &u) in nodes.iter().enumerate() {
        if u >= n {
            return Err(Error::NodeOutOfRange { node: u, n });
        }
        if local[u] != usize::MAX {
            return Err(Error::InvalidParameter(format!("node {u} listed twice")));
        }
        local[u] = i;
    }
    let edges = g
        .edges()
        .iter()
        .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
        .map(|&(u, v)| edge(local[u], local[v]));
    let sub = Graph::from_edges(nodes.len(), edges)?;
    Ok((sub, nodes.to_vec()))
}

/// Parses the edge-list format: a header `n m`, then `m` lines `u v`.
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header".into(),
    })?;
    let (n, m) = parse_pair(header_line, header, "header")?;

    let mut edges: Vec<Edge> = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::with_capacity(m);
    for (line, text) in lines.by_ref() {
        if edges.len() == m {
            return Err(Error::Parse {
                line,
                message: format!("more than {m} edge lines"),
            });
        }
        let (u, v) = parse_pair(line, text, "edge")?;
        let fail = |message: String| Error::Parse { line, message };
        check_edge(n, u, v).map_err(|e| fail(e.to_string()))?;
        if !seen.insert(edge(u, v)) {
            return Err(fail(format!("duplicate edge {{{u}, {v}}}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            message: format!("expected {m} edges, found {}", edges.len()),
        });
    }
    Graph::from_edges(n, edges)
}

fn parse_pair(line: usize, text: &str, what: &str) -> Result<(usize, usize)> {
    let fail = || Error::Parse {
        line,
        message: format!("malformed {what} `{text}`"),
    };
    let mut parts = text.split_whitespace();
    let a = parts.next().and_then(|s| s.parse().ok()).ok_or_else(fail)?;
    let b = parts.next().and_then(|s| s.parse().ok()).ok_or_else(fail)?;
    if parts.next().is_some() {
        return Err(fail());
    }
    Ok((a, b))
}

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Decodes one graph6 string. An optional `>>graph6<<` header is accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim();
    let bytes = text.strip_prefix(GRAPH6_HEADER).unwrap_or(text).as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("non-printable byte {b:#04x}")));
    }
    let (n, body) = match bytes {
        [] => return Err(Error::Graph6("empty input".into())),
        [126, 126, rest @ ..] => (read_size(rest, 6)?, &rest[6..]),
        [126, rest @ ..] => (read_size(rest, 3)?, &rest[3..]),
        [first, rest @ ..] => ((first - 63) as usize, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "bad length: {n} nodes need {expected} data bytes, found {}",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = body[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges)
}

fn read_size(bytes: &[u8], count: usize) -> Result<usize> {
    if bytes.len() < count {
        return Err(Error::Graph6("bad length: truncated size field".into()));
    }
    Ok(bytes[..count]
        .iter()
        .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize))
}

/// Encodes a graph in graph6 (no header, no trailing newline).
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.node_count();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        let width = if n <= 258_047 { 3 } else { 6 };
        out.extend(std::iter::repeat_n(126, if width == 3 { 1 } else { 2 }));
        for i in (0..width).rev() {
            out.push(((n >> (6 * i)) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Reads either format: graph6 when the first content line is a single
/// token, the edge-list format otherwise.
pub fn parse_any(text: &str) -> Result<Graph> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(line) if line.split_whitespace().count() == 1 => parse_graph6(line),
        _ => parse_edge_list(text),
    }
}

/// Exhaustive isomorphism test, pruned by degree. Only meant as an oracle.
pub fn brute_force_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    const LIMIT: usize = 10;
    let n = g.node_count();
    if n > LIMIT || h.node_count() > LIMIT {
        return Err(Error::GuardExceeded {
            what: "brute-force isomorphism",
            limit: LIMIT,
            actual: n.max(h.node_count()),
        });
    }
    if n != h.node_count()
        || g.edge_count() != h.edge_count()
        || g.degree_sequence() != h.degree_sequence()
    {
        return Ok(false);
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend_isomorphism(g, h, 0, &mut image, &mut used))
}

fn extend_isomorphism(
    g: &Graph,
    h: &Graph,
    u: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if u == g.node_count() {
        return true;
    }
    for cand in h.nodes() {
        if used[cand] || h.degree(cand) != g.degree(u) {
            continue;
        }
        let consistent = (0..u).all(|w| g.has_edge(u, w) == h.has_edge(cand, image[w]));
        if !consistent {
            continue;
        }
        image[u] = cand;
        used[cand] = true;
        if extend_isomorphism(g, h, u + 1, image, used) {
            return true;
        }
        used[cand] = false;
    }
    image[u] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn parses_path() {
        let g = parse_edge_list("3 2\n0 1\n1 2").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(g.degree(1), 2);
    }

    #[test]
    fn parses_k2_with_comments() {
        let g = parse_edge_list("# K2\n\n2 1\n# edge\n0 1\n").unwrap();
        assert_eq!(g, Graph::from_edges(2, [(0, 1)]).unwrap());
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        let dup = parse_edge_list("3 2\n0 1\n0 1").unwrap_err();
        assert!(matches!(dup, Error::Parse { line: 3, .. }), "{dup}");
        let range = parse_edge_list("3 1\n0 3").unwrap_err();
        assert!(matches!(range, Error::Parse { line: 2, .. }));
        let l = parse_edge_list("3 1\n1 1").unwrap_err();
        assert!(matches!(l, Error::Parse { line: 2, .. }));
        assert!(matches!(
            parse_edge_list("3\n0 1").unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
        assert!(matches!(
            parse_edge_list("3 2\n0 1").unwrap_err(),
            Error::Parse { .. }
        ));
        assert!(parse_edge_list("3 1\n0 1\n1 2").is_err());
        assert!(parse_edge_list("3 1\n0 x").is_err());
    }

    #[test]
    fn graph6_known_vector() {
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode_graph6(&g), "DQc");
        assert_eq!(parse_graph6("DQc").unwrap(), g);
        assert_eq!(parse_graph6(">>graph6<<DQc\n").unwrap(), g);
    }

    #[test]
    fn graph6_round_trips_small_graphs() {
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(parse_graph6(&encode_graph6(&k2)).unwrap(), k2);
        let c5 = cycle(5);
        assert_eq!(parse_graph6(&encode_graph6(&c5)).unwrap(), c5);
        let big = cycle(70);
        let s = encode_graph6(&big);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), big);
        assert_eq!(
            parse_graph6(&encode_graph6(&Graph::empty(0))).unwrap(),
            Graph::empty(0)
        );
    }

    #[test]
    fn graph6_rejects_bad_input() {
        assert!(matches!(parse_graph6("DQ").unwrap_err(), Error::Graph6(_)));
        assert!(matches!(
            parse_graph6("DQcc").unwrap_err(),
            Error::Graph6(_)
        ));
        assert!(matches!(parse_graph6("D Q").unwrap_err(), Error::Graph6(_)));
        assert!(matches!(parse_graph6("~").unwrap_err(), Error::Graph6(_)));
    }

    #[test]
    fn parse_any_detects_format() {
        assert_eq!(parse_any("DQc\n").unwrap().edge_count(), 4);
        assert_eq!(parse_any("2 1\n0 1\n").unwrap().edge_count(), 1);
    }

    #[test]
    fn components() {
        assert_eq!(connected_components(&cycle(6)).len(), 1);
        let two = cycle(3).disjoint_union(&cycle(3));
        let cc = connected_components(&two);
        assert_eq!(cc.classes(), &[vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(connected_components(&Graph::empty(0)).len(), 0);
    }

    #[test]
    fn induced_subgraphs() {
        let p3 = parse_edge_list("3 2\n0 1\n1 2").unwrap();
        let (k2, map) = induced_subgraph(&p3, &[0, 1]).unwrap();
        assert_eq!(k2, Graph::from_edges(2, [(0, 1)]).unwrap());
        assert_eq!(map, vec![0, 1]);
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let (k3, _) = induced_subgraph(&k4, &[3, 0, 2]).unwrap();
        assert_eq!(k3.edge_count(), 3);
        assert!(induced_subgraph(&k4, &[4]).is_err());
    }

    #[test]
    fn isomorphism_oracle() {
        let c6 = cycle(6);
        let relabeled = c6.permuted(&[3, 5, 0, 2, 4, 1]).unwrap();
        assert!(brute_force_isomorphic(&c6, &relabeled).unwrap());
        let two = cycle(3).disjoint_union(&cycle(3));
        assert!(!brute_force_isomorphic(&c6, &two).unwrap());
        assert!(brute_force_isomorphic(&cycle(11), &cycle(11)).is_err());
    }

    #[test]
    fn girth_and_degree_sum() {
        assert_eq!(cycle(7).girth(), Some(7));
        assert_eq!(parse_edge_list("3 2\n0 1\n1 2").unwrap().girth(), None);
        let g = cycle(5);
        let sum: usize = g.nodes().map(|u| g.degree(u)).sum();
        assert_eq!(sum, 2 * g.edge_count());
    }

    #[test]
    fn partition_refinement_relation() {
        let fine = Partition::from_labels(&[0, 1, 2, 2]);
        let coarse = Partition::from_labels(&['a', 'a', 'b', 'b']);
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
    }
}
