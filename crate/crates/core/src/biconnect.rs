//! Cut vertices, cut edges, biconnected components and block cut trees.
//!
//! [`biconnectivity_report`] is a single iterative lowpoint DFS. The
//! removal-based [`brute_force_cut_sets`] exists only to cross-check it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{connected_components, edge, induced_subgraph, Edge, Graph, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BiconnectivityReport {
    pub cut_vertices: Vec<usize>,
    pub cut_edges: Vec<Edge>,
    /// Vertex-biconnected components, each sorted; the list is sorted too.
    /// Isolated nodes form singleton components.
    pub vertex_bccs: Vec<Vec<usize>>,
    /// Edge-biconnected classes; they partition the node set.
    pub edge_bccs: Partition,
}

impl BiconnectivityReport {
    pub fn is_cut_vertex(&self, u: usize) -> bool {
        self.cut_vertices.binary_search(&u).is_ok()
    }

    pub fn is_cut_edge(&self, u: usize, v: usize) -> bool {
        self.cut_edges.binary_search(&edge(u, v)).is_ok()
    }
}

pub fn biconnectivity_report(g: &Graph) -> BiconnectivityReport {
    const UNSEEN: usize = usize::MAX;
    let n = g.node_count();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut parent = vec![UNSEEN; n];
    let mut is_cut = vec![false; n];
    let mut bridges = Vec::new();
    let mut vertex_bccs = Vec::new();
    let mut edge_stack: Vec<Edge> = Vec::new();
    let mut timer = 0;

    for root in g.nodes() {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        if g.degree(root) == 0 {
            vertex_bccs.push(vec![root]);
            continue;
        }
        let mut root_children = 0;
        // (node, index of the next neighbor to visit)
        let mut stack = vec![(root, 0usize)];
        while let Some(top) = stack.last_mut() {
            let u = top.0;
            if let Some(&w) = g.neighbors(u).get(top.1) {
                top.1 += 1;
                if disc[w] == UNSEEN {
                    parent[w] = u;
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    edge_stack.push((u, w));
                    if u == root {
                        root_children += 1;
                    }
                    stack.push((w, 0));
                } else if w != parent[u] && disc[w] < disc[u] {
                    low[u] = low[u].min(disc[w]);
                    edge_stack.push((u, w));
                }
                continue;
            }
            stack.pop();
            let Some(&(p, _)) = stack.last() else {
                break;
            };
            low[p] = low[p].min(low[u]);
            if low[u] > disc[p] {
                bridges.push(edge(p, u));
            }
            if low[u] >= disc[p] {
                if p != root {
                    is_cut[p] = true;
                }
                let mut component = Vec::new();
                while let Some((a, b)) = edge_stack.pop() {
                    component.push(a);
                    component.push(b);
                    if (a, b) == (p, u) {
                        break;
                    }
                }
                component.sort_unstable();
                component.dedup();
                vertex_bccs.push(component);
            }
        }
        if root_children >= 2 {
            is_cut[root] = true;
        }
    }

    bridges.sort_unstable();
    vertex_bccs.sort();
    let cut_vertices = (0..n).filter(|&u| is_cut[u]).collect();
    let edge_bccs = edge_classes(g, &bridges);
    BiconnectivityReport {
        cut_vertices,
        cut_edges: bridges,
        vertex_bccs,
        edge_bccs,
    }
}

/// Components of `g` once the given (sorted) bridges are removed.
fn edge_classes(g: &Graph, bridges: &[Edge]) -> Partition {
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
                if label[w] == usize::MAX && bridges.binary_search(&edge(u, w)).is_err() {
                    label[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    Partition::from_labels(&label)
}

/// Cut vertices and cut edges by literal deletion and component recount.
pub fn brute_force_cut_sets(g: &Graph) -> Result<(Vec<usize>, Vec<Edge>)> {
    const LIMIT: usize = 64;
    let n = g.node_count();
    if n > LIMIT {
        return Err(Error::GuardExceeded {
            what: "brute-force cut sets",
            limit: LIMIT,
            actual: n,
        });
    }
    let base = connected_components(g).len();
    let mut cut_vertices = Vec::new();
    for v in g.nodes() {
        let rest: Vec<usize> = g.nodes().filter(|&u| u != v).collect();
        let (without, _) = induced_subgraph(g, &rest)?;
        if connected_components(&without).len() > base {
            cut_vertices.push(v);
        }
    }
    let cut_edges = g
        .edges()
        .iter()
        .copied()
        .filter(|&e| connected_components(&g.without_edge(e)).len() > base)
        .collect();
    Ok((cut_vertices, cut_edges))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Component,
    CutVertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeNode {
    /// Member nodes of a biconnected component or edge-biconnected class.
    Component(Vec<usize>),
    /// An original cut vertex.
    CutVertex(usize),
}

impl TreeNode {
    pub fn kind(&self) -> NodeKind {
        match self {
            TreeNode::Component(_) => NodeKind::Component,
            TreeNode::CutVertex(_) => NodeKind::CutVertex,
        }
    }
}

/// Typed forest over components and cut vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockCutTree {
    pub nodes: Vec<TreeNode>,
    pub edges: Vec<Edge>,
}

impl BlockCutTree {
    /// Untyped view of the tree structure.
    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.nodes.len(), self.edges.iter().copied())
            .expect("block cut tree edges are simple")
    }
}

fn require_connected(g: &Graph) -> Result<()> {
    if connected_components(g).len() == 1 {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

/// Block cut-vertex tree: one node per vertex-biconnected component and per
/// cut vertex, with an edge whenever the cut vertex belongs to the component.
pub fn bcv_tree(g: &Graph) -> Result<BlockCutTree> {
    require_connected(g)?;
    Ok(bcv_tree_from_report(&biconnectivity_report(g)))
}

fn bcv_tree_from_report(report: &BiconnectivityReport) -> BlockCutTree {
    let mut nodes: Vec<TreeNode> = report
        .vertex_bccs
        .iter()
        .cloned()
        .map(TreeNode::Component)
        .collect();
    let mut edges = Vec::new();
    for &v in &report.cut_vertices {
        let id = nodes.len();
        nodes.push(TreeNode::CutVertex(v));
        for (c, members) in report.vertex_bccs.iter().enumerate() {
            if members.binary_search(&v).is_ok() {
                edges.push(edge(c, id));
            }
        }
    }
    edges.sort_unstable();
    BlockCutTree { nodes, edges }
}

/// Block cut-edge tree: one node per edge-biconnected class, one edge per
/// cut edge.
pub fn bce_tree(g: &Graph) -> Result<BlockCutTree> {
    require_connected(g)?;
    Ok(bce_tree_from_report(&biconnectivity_report(g)))
}

fn bce_tree_from_report(report: &BiconnectivityReport) -> BlockCutTree {
    let classes = &report.edge_bccs;
    let nodes = classes
        .classes()
        .iter()
        .cloned()
        .map(TreeNode::Component)
        .collect();
    let mut edges: Vec<Edge> = report
        .cut_edges
        .iter()
        .map(|&(u, v)| edge(classes.class_of(u), classes.class_of(v)))
        .collect();
    edges.sort_unstable();
    BlockCutTree { nodes, edges }
}

/// How much of a tree node's payload the canonical form keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CanonicalMode {
    /// Node kind plus component cardinality.
    #[default]
    KindAndSize,
    KindOnly,
}

/// AHU encoding of a typed tree; equal strings iff tag-respecting isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TreeCanonicalForm(pub String);

pub fn tree_canonical_form(tree: &BlockCutTree, mode: CanonicalMode) -> Result<TreeCanonicalForm> {
    let graph = tree.to_graph();
    let components = connected_components(&graph).len();
    if components != 1 {
        return Err(Error::NotATree(components));
    }
    let labels: Vec<String> = tree
        .nodes
        .iter()
        .map(|node| match (node, mode) {
            (TreeNode::Component(m), CanonicalMode::KindAndSize) => format!("c{}", m.len()),
            (TreeNode::Component(_), CanonicalMode::KindOnly) => "c".to_string(),
            (TreeNode::CutVertex(_), _) => "v".to_string(),
        })
        .collect();
    let best = tree_centers(&graph)
        .into_iter()
        .map(|c| rooted_code(&graph, &labels, c, usize::MAX))
        .min()
        .expect("a tree has at least one center");
    Ok(TreeCanonicalForm(best))
}

fn rooted_code(tree: &Graph, labels: &[String], u: usize, parent: usize) -> String {
    let mut children: Vec<String> = tree
        .neighbors(u)
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_code(tree, labels, w, u))
        .collect();
    children.sort_unstable();
    let mut out = String::with_capacity(2 + labels[u].len());
    out.push('(');
    out.push_str(&labels[u]);
    for c in children {
        out.push_str(&c);
    }
    out.push(')');
    out
}

/// One or two centers, found by repeatedly stripping leaves.
fn tree_centers(tree: &Graph) -> Vec<usize> {
    let n = tree.node_count();
    if n <= 2 {
        return tree.nodes().collect();
    }
    let mut degree: Vec<usize> = tree.nodes().map(|u| tree.degree(u)).collect();
    let mut layer: Vec<usize> = tree.nodes().filter(|&u| degree[u] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in tree.neighbors(leaf) {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// Sorted canonical forms of the per-component block cut-vertex trees.
pub fn bcv_forest_forms(g: &Graph, mode: CanonicalMode) -> Vec<TreeCanonicalForm> {
    forest_forms(g, mode, bcv_tree_from_report)
}

/// Sorted canonical forms of the per-component block cut-edge trees.
pub fn bce_forest_forms(g: &Graph, mode: CanonicalMode) -> Vec<TreeCanonicalForm> {
    forest_forms(g, mode, bce_tree_from_report)
}

fn forest_forms(
    g: &Graph,
    mode: CanonicalMode,
    build: fn(&BiconnectivityReport) -> BlockCutTree,
) -> Vec<TreeCanonicalForm> {
    let mut forms: Vec<TreeCanonicalForm> = connected_components(g)
        .classes()
        .iter()
        .map(|members| {
            let (component, _) = induced_subgraph(g, members).expect("members are in range");
            let tree = build(&biconnectivity_report(&component));
            tree_canonical_form(&tree, mode).expect("component trees are connected")
        })
        .collect();
    forms.sort();
    forms
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    #[test]
    fn cycle_is_biconnected() {
        let r = biconnectivity_report(&cycle(6));
        assert!(r.cut_vertices.is_empty());
        assert!(r.cut_edges.is_empty());
        assert_eq!(r.vertex_bccs, vec![(0..6).collect::<Vec<_>>()]);
        assert_eq!(r.edge_bccs.len(), 1);
    }

    #[test]
    fn path_cut_sets() {
        let g = path(4);
        let r = biconnectivity_report(&g);
        assert_eq!(r.cut_vertices, vec![1, 2]);
        assert_eq!(r.cut_edges, vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(
            brute_force_cut_sets(&g).unwrap(),
            (vec![1, 2], r.cut_edges.clone())
        );
    }

    #[test]
    fn complete_graph_has_no_cuts() {
        let k4 = parse_edge_list("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3").unwrap();
        assert_eq!(brute_force_cut_sets(&k4).unwrap(), (vec![], vec![]));
        assert!(biconnectivity_report(&k4).cut_vertices.is_empty());
    }

    #[test]
    fn isolated_nodes_are_singleton_blocks() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let r = biconnectivity_report(&g);
        assert_eq!(r.vertex_bccs, vec![vec![0, 1], vec![2]]);
        assert_eq!(r.edge_bccs.len(), 3);
    }

    #[test]
    fn bowtie_shares_a_cut_vertex() {
        let g = parse_edge_list("5 6\n0 1\n1 2\n0 2\n2 3\n3 4\n2 4").unwrap();
        let r = biconnectivity_report(&g);
        assert_eq!(r.cut_vertices, vec![2]);
        assert!(r.cut_edges.is_empty());
        assert_eq!(r.vertex_bccs, vec![vec![0, 1, 2], vec![2, 3, 4]]);
    }

    #[test]
    fn p3_bcv_tree() {
        let t = bcv_tree(&path(3)).unwrap();
        assert_eq!(
            t.nodes,
            vec![
                TreeNode::Component(vec![0, 1]),
                TreeNode::Component(vec![1, 2]),
                TreeNode::CutVertex(1)
            ]
        );
        assert_eq!(t.edges, vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn biconnected_graph_gives_single_node_trees() {
        let t = bcv_tree(&cycle(6)).unwrap();
        assert_eq!(t.nodes.len(), 1);
        assert!(t.edges.is_empty());
        assert_eq!(bce_tree(&cycle(6)).unwrap().nodes.len(), 1);
    }

    #[test]
    fn disconnected_input_rejected() {
        let g = cycle(3).disjoint_union(&cycle(3));
        assert_eq!(bcv_tree(&g).unwrap_err(), Error::Disconnected);
        assert_eq!(bce_tree(&g).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn bce_tree_of_a_tree_is_the_tree() {
        let tree = star(3);
        let t = bce_tree(&tree).unwrap();
        assert_eq!(t.nodes.len(), 4);
        assert!(crate::graph::brute_force_isomorphic(&t.to_graph(), &tree).unwrap());
    }

    #[test]
    fn canonical_forms_separate_star_from_path() {
        let a = tree_canonical_form(&bce_tree(&star(3)).unwrap(), CanonicalMode::KindAndSize);
        let b = tree_canonical_form(&bce_tree(&path(4)).unwrap(), CanonicalMode::KindAndSize);
        assert_ne!(a.unwrap(), b.unwrap());
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let g = parse_edge_list("6 7\n0 1\n1 2\n0 2\n2 3\n3 4\n4 5\n3 5").unwrap();
        let h = g.permuted(&[5, 3, 1, 0, 2, 4]).unwrap();
        for mode in [CanonicalMode::KindAndSize, CanonicalMode::KindOnly] {
            let a = tree_canonical_form(&bcv_tree(&g).unwrap(), mode).unwrap();
            let b = tree_canonical_form(&bcv_tree(&h).unwrap(), mode).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn size_payload_matters_only_in_size_mode() {
        // triangle with a pendant vs square with a pendant: same tree shape
        let a = parse_edge_list("4 4\n0 1\n1 2\n0 2\n2 3").unwrap();
        let b = parse_edge_list("5 5\n0 1\n1 2\n2 3\n0 3\n3 4").unwrap();
        let form = |g: &Graph, m| tree_canonical_form(&bcv_tree(g).unwrap(), m).unwrap();
        assert_ne!(
            form(&a, CanonicalMode::KindAndSize),
            form(&b, CanonicalMode::KindAndSize)
        );
        assert_eq!(
            form(&a, CanonicalMode::KindOnly),
            form(&b, CanonicalMode::KindOnly)
        );
    }

    #[test]
    fn forest_rejected_by_canonical_form() {
        let forest = BlockCutTree {
            nodes: vec![TreeNode::Component(vec![0]), TreeNode::Component(vec![1])],
            edges: vec![],
        };
        assert_eq!(
            tree_canonical_form(&forest, CanonicalMode::KindAndSize).unwrap_err(),
            Error::NotATree(2)
        );
    }

    #[test]
    fn forest_forms_are_per_component() {
        let g = cycle(3).disjoint_union(&path(2));
        let forms = bcv_forest_forms(&g, CanonicalMode::KindAndSize);
        assert_eq!(forms.len(), 2);
        assert_eq!(forms[0].0, "(c2)");
        assert_eq!(forms[1].0, "(c3)");
    }
}
