use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{spd_matrix, Distance, Rational};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// `{b_0, …, b_{D−1}; c_1, …, c_D}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntersectionArray {
    pub b: Vec<u64>,
    pub c: Vec<u64>,
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceRegularProfile {
    pub is_drg: bool,
    /// Largest finite distance; 0 for graphs with at most one node.
    pub diameter: usize,
    /// `(k_1, …, k_D)`; present only for distance-regular graphs.
    pub kappa: Option<Vec<u64>>,
    pub iota: Option<IntersectionArray>,
}

/// Checks that `|N^i(u) ∩ N^j(v)|` depends only on `dis(u, v)` for all `i, j`.
///
/// Disconnected graphs are reported as not distance-regular.
pub fn distance_regular_profile(g: &Graph) -> DistanceRegularProfile {
    let n = g.node_count();
    let spd = spd_matrix(g);
    let mut diameter = 0usize;
    let mut connected = true;
    for u in g.nodes() {
        for d in spd.row(u) {
            match d {
                Distance::Finite(d) => diameter = diameter.max(*d as usize),
                Distance::Unreachable => connected = false,
            }
        }
    }
    let not_regular = DistanceRegularProfile {
        is_drg: false,
        diameter,
        kappa: None,
        iota: None,
    };
    if !connected || n == 0 {
        return not_regular;
    }

    let width = diameter + 1;
    let dist = |u: usize, v: usize| *spd.get(u, v).finite().expect("connected") as usize;
    // tables[d][i * width + j] = |N^i(u) ∩ N^j(v)| for any pair at distance d
    let mut tables: Vec<Option<Vec<u64>>> = vec![None; width];
    let mut counts = vec![0u64; width * width];
    for u in g.nodes() {
        for v in g.nodes() {
            counts.fill(0);
            for w in g.nodes() {
                counts[dist(u, w) * width + dist(v, w)] += 1;
            }
            let slot = &mut tables[dist(u, v)];
            match slot {
                Some(expected) if *expected != counts => return not_regular,
                Some(_) => {}
                None => *slot = Some(counts.clone()),
            }
        }
    }
    let table = |d: usize, i: usize, j: usize| {
        tables[d].as_ref().expect("every distance occurs")[i * width + j]
    };
    let kappa = (1..width).map(|i| table(0, i, i)).collect();
    let b = (0..diameter).map(|i| table(i, 1, i + 1)).collect();
    let c = (1..width).map(|i| table(i, 1, i - 1)).collect();
    DistanceRegularProfile {
        is_drg: true,
        diameter,
        kappa: Some(kappa),
        iota: Some(IntersectionArray { b, c }),
    }
}

/// Resistance `r_d` between two nodes at distance `d` in a distance-regular
/// graph on `n` nodes:
/// `r_0 = 0`, `r_d = r_{d−1} + 2/(n·k_{d−1}·b_{d−1}) · Σ_{i=d}^{D} k_i`,
/// with `k_0 = 1`.
pub fn rd_from_intersection_array(
    profile: &DistanceRegularProfile,
    n: usize,
) -> Result<Vec<Rational>> {
    let (Some(kappa), Some(iota)) = (&profile.kappa, &profile.iota) else {
        return Err(Error::NotDistanceRegular);
    };
    if !profile.is_drg {
        return Err(Error::NotDistanceRegular);
    }
    let k = |i: usize| if i == 0 { 1 } else { kappa[i - 1] };
    let mut r = vec![Rational::zero()];
    for d in 1..=profile.diameter {
        let tail: u64 = (d..=profile.diameter).map(k).sum();
        let step = Rational::new(
            BigInt::from(2 * tail),
            BigInt::from(n as u64 * k(d - 1) * iota.b[d - 1]),
        );
        let next = &r[d - 1] + step;
        r.push(next);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn cycle_profile() {
        let p = distance_regular_profile(&cycle(6));
        assert!(p.is_drg);
        assert_eq!(p.kappa, Some(vec![2, 2, 1]));
        assert_eq!(p.iota.unwrap().to_string(), "{2,1,1;1,1,2}");
    }

    #[test]
    fn complete_graph_recursion() {
        let k5 = complete(5);
        let p = distance_regular_profile(&k5);
        let r = rd_from_intersection_array(&p, 5).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r[0].is_zero());
        assert_eq!(r[1], Rational::new(2.into(), 5.into()));
    }

    #[test]
    fn irregular_graphs_rejected() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let p = distance_regular_profile(&p3);
        assert!(!p.is_drg);
        assert_eq!(p.diameter, 2);
        assert_eq!(
            rd_from_intersection_array(&p, 3).unwrap_err(),
            Error::NotDistanceRegular
        );
        assert!(!distance_regular_profile(&Graph::empty(2)).is_drg);
    }
}
