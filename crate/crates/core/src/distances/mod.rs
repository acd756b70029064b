//! Pairwise distances: shortest-path, exact resistance, hitting times, and
//! distance-regular diagnostics.

mod regular;
mod resistance;

use std::collections::VecDeque;
use std::fmt;

pub use num_rational::BigRational as Rational;
pub use regular::{
    distance_regular_profile, rd_from_intersection_array, DistanceRegularProfile, IntersectionArray,
};
pub use resistance::{hitting_time_matrix, rd_matrix, RD_COMPONENT_LIMIT};

use crate::graph::Graph;

/// A distance value, or the marker for nodes in different components.
///
/// `Unreachable` orders after every finite value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance<T> {
    Finite(T),
    Unreachable,
}

impl<T> Distance<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            Distance::Finite(v) => Some(v),
            Distance::Unreachable => None,
        }
    }
}

impl<T: fmt::Display> fmt::Display for Distance<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(v) => v.fmt(f),
            Distance::Unreachable => f.write_str("inf"),
        }
    }
}

/// Dense symmetric `n × n` matrix of distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix<T> {
    n: usize,
    entries: Vec<Distance<T>>,
}

impl<T> DistanceMatrix<T> {
    pub(crate) fn from_entries(n: usize, entries: Vec<Distance<T>>) -> Self {
        assert_eq!(entries.len(), n * n);
        DistanceMatrix { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> &Distance<T> {
        &self.entries[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[Distance<T>] {
        &self.entries[u * self.n..(u + 1) * self.n]
    }
}

pub type SpdMatrix = DistanceMatrix<u32>;
pub type RdMatrix = DistanceMatrix<Rational>;

/// All-pairs shortest-path distances by one BFS per node.
pub fn spd_matrix(g: &Graph) -> SpdMatrix {
    let n = g.node_count();
    let mut entries = Vec::with_capacity(n * n);
    let mut dist = vec![u32::MAX; n];
    let mut queue = VecDeque::new();
    for s in g.nodes() {
        dist.fill(u32::MAX);
        dist[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        entries.extend(dist.iter().map(|&d| {
            if d == u32::MAX {
                Distance::Unreachable
            } else {
                Distance::Finite(d)
            }
        }));
    }
    DistanceMatrix::from_entries(n, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_distances() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let d = spd_matrix(&p3);
        assert_eq!(d.get(0, 2), &Distance::Finite(2));
        assert_eq!(d.get(1, 1), &Distance::Finite(0));
    }

    #[test]
    fn unreachable_across_components() {
        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let d = spd_matrix(&tri.disjoint_union(&tri));
        assert_eq!(d.get(0, 4), &Distance::Unreachable);
        assert_eq!(d.get(3, 5), &Distance::Finite(1));
        assert!(Distance::Finite(u32::MAX - 1) < Distance::Unreachable);
    }
}
