use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::report::{CheckReport, Findings, Item};
use super::Corpus;
use crate::biconnect::biconnectivity_report;
use crate::distances::{
    distance_regular_profile, hitting_time_matrix, rd_from_intersection_array, rd_matrix,
    spd_matrix, Distance, Rational,
};
use crate::error::Result;
use crate::generators::{complete, cycle, named_graph, tree_random, Family, NAMED_GRAPHS};
use crate::graph::{connected_components, Graph, Partition};
use crate::refine::{distinguishable, Algorithm, InterningContext};

/// Arrays quoted for the named graphs of the distance-regular suite.
const EXPECTED_KAPPA: [(&str, &[u64]); 2] = [
    ("dodecahedron", &[3, 6, 6, 3, 1]),
    ("desargues", &[3, 6, 6, 3, 1]),
];
const EXPECTED_IOTA: [(&str, &str); 4] = [
    ("dodecahedron", "{3,2,1,1,1;1,1,1,2,3}"),
    ("desargues", "{3,2,2,1,1;1,1,2,2,3}"),
    ("rook4x4", "{6,3;1,2}"),
    ("shrikhande", "{6,3;1,2}"),
];

/// Distance-regular graphs: SPD-WL tracks `κ`, RD-WL and 2-FWL track `ι`,
/// and the closed-form resistance recursion matches the exact solver.
pub fn check_distance_regular_suite() -> Result<CheckReport> {
    let mut out = Findings::default();
    let mut graphs: Vec<(String, Graph)> = NAMED_GRAPHS
        .iter()
        .map(|&n| named_graph(n).map(|g| (n.to_string(), g)))
        .collect::<Result<_>>()?;
    graphs.push((Family::Cycle(6).to_string(), cycle(6)));
    graphs.push((Family::Complete(6).to_string(), complete(6)));

    let profiles: Vec<_> = graphs
        .iter()
        .map(|(_, g)| distance_regular_profile(g))
        .collect();
    for ((id, g), p) in graphs.iter().zip(&profiles) {
        if !p.is_drg {
            out.violate(
                &[id],
                Vec::new(),
                "distance-regular",
                "not distance-regular",
            );
            continue;
        }
        let iota = p
            .iota
            .as_ref()
            .expect("present for distance-regular graphs");
        out.note(format!(
            "{id}: kappa {:?}, iota {iota}",
            p.kappa.as_ref().expect("present")
        ));
        if let Some((_, want)) = EXPECTED_KAPPA.iter().find(|(n, _)| n == id) {
            if p.kappa.as_deref() != Some(*want) {
                out.violate(
                    &[id],
                    Vec::new(),
                    format!("kappa {want:?}"),
                    format!("kappa {:?}", p.kappa),
                );
            }
        }
        if let Some((_, want)) = EXPECTED_IOTA.iter().find(|(n, _)| n == id) {
            if iota.to_string() != *want {
                out.violate(
                    &[id],
                    Vec::new(),
                    format!("iota {want}"),
                    format!("iota {iota}"),
                );
            }
        }

        let r = rd_from_intersection_array(p, g.node_count())?;
        if r.windows(2).any(|w| w[0] >= w[1]) {
            out.violate(
                &[id],
                Vec::new(),
                "strictly increasing r_d",
                format!("{r:?}"),
            );
        }
        let rd = rd_matrix(g)?;
        let spd = spd_matrix(g);
        'pairs: for u in g.nodes() {
            for v in g.nodes() {
                let d = *spd.get(u, v).finite().expect("connected") as usize;
                if rd.get(u, v) != &Distance::Finite(r[d].clone()) {
                    out.violate(
                        &[id],
                        vec![Item::Node(u), Item::Node(v)],
                        format!("r_{d} = {}", r[d]),
                        format!("{}", rd.get(u, v)),
                    );
                    break 'pairs;
                }
            }
        }
    }

    let spd_wl: Algorithm = "spdwl".parse()?;
    let rd_wl: Algorithm = "rdwl".parse()?;
    let fwl: Algorithm = "2fwl".parse()?;
    for i in 0..graphs.len() {
        for j in i + 1..graphs.len() {
            let ((a, g), (b, h)) = (&graphs[i], &graphs[j]);
            let (p, q) = (&profiles[i], &profiles[j]);
            if g.node_count() != h.node_count() || !p.is_drg || !q.is_drg {
                continue;
            }
            let kappa_differ = p.kappa != q.kappa;
            let iota_differ = p.iota != q.iota;
            for (algo, expected) in [
                (&spd_wl, kappa_differ),
                (&rd_wl, iota_differ),
                (&fwl, iota_differ),
            ] {
                let observed = distinguishable(g, h, algo)?;
                if observed != expected {
                    let say = |d: bool| {
                        if d {
                            "distinguishable"
                        } else {
                            "indistinguishable"
                        }
                    };
                    out.violate(
                        &[a, b],
                        Vec::new(),
                        format!("{algo}: {}", say(expected)),
                        format!("{algo}: {}", say(observed)),
                    );
                }
            }
        }
    }
    let population: Vec<&str> = graphs.iter().map(|(id, _)| id.as_str()).collect();
    Ok(out.into_report("distance_regular", &population.join(", "), 0))
}

/// 2-FWL refines SPD-WL and RD-WL, and SPD-WL refines 1-WL, graph by graph.
pub fn check_refinement_hierarchy(corpus: &Corpus) -> Result<CheckReport> {
    let run = |name: &str| -> Result<Vec<Partition>> {
        let algo: Algorithm = name.parse()?;
        let mut ctx = InterningContext::new();
        let r = algo.refine(&corpus.graphs, &mut ctx)?;
        Ok(r.colorings.iter().map(|c| c.partition()).collect())
    };
    let wl = run("1wl")?;
    let spd = run("spdwl")?;
    let rd = run("rdwl")?;
    let fwl = run("2fwl")?;
    let mut out = Findings::default();
    let (mut rd_finer, mut spd_finer, mut incomparable) = (0, 0, 0);
    for (gi, id) in corpus.ids.iter().enumerate() {
        for (fine, coarse, claim) in [
            (&fwl[gi], &spd[gi], "2fwl refines spdwl"),
            (&fwl[gi], &rd[gi], "2fwl refines rdwl"),
            (&spd[gi], &wl[gi], "spdwl refines 1wl"),
        ] {
            if !fine.refines(coarse) {
                out.violate(&[id], Vec::new(), claim, "not a refinement");
            }
        }
        match (rd[gi].refines(&spd[gi]), spd[gi].refines(&rd[gi])) {
            (true, false) => rd_finer += 1,
            (false, true) => spd_finer += 1,
            (false, false) => incomparable += 1,
            (true, true) => {}
        }
    }
    out.note(format!(
        "rdwl vs spdwl (informational): rdwl strictly finer on {rd_finer}, spdwl strictly finer on {spd_finer}, incomparable on {incomparable}"
    ));
    Ok(out.into_report("hierarchy", &corpus.description, 0))
}

/// Exact resistance distance properties over the corpus plus `trees` random
/// trees.
pub fn check_rd_properties(corpus: &Corpus, trees: usize) -> Result<CheckReport> {
    let mut out = Findings::default();
    for seed in 0..trees as u64 {
        let n = 2 + (seed as usize % 19);
        let id = Family::TreeRandom { n, seed }.to_string();
        let t = tree_random(n, seed);
        let (rd, spd) = (rd_matrix(&t)?, spd_matrix(&t));
        if let Some((u, v)) =
            pairs(n).find(|&(u, v)| rd_as_spd(rd.get(u, v)) != Some(spd.get(u, v).clone()))
        {
            out.violate(
                &[&id],
                vec![Item::Node(u), Item::Node(v)],
                format!("rd = spd = {}", spd.get(u, v)),
                format!("rd = {}", rd.get(u, v)),
            );
        }
    }
    for (id, g) in corpus.ids.iter().zip(&corpus.graphs) {
        rd_graph_properties(id, g, &mut out)?;
    }
    let population = format!(
        "{trees} tree_random(n=2+seed%19, seed) for seeds 0..{trees}; {}",
        corpus.description
    );
    Ok(out.into_report("rd_properties", &population, 0))
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (0..n).map(move |v| (u, v)))
}

fn rd_as_spd(d: &Distance<Rational>) -> Option<Distance<u32>> {
    match d {
        Distance::Finite(r) if r.is_integer() => {
            r.to_integer().try_into().ok().map(Distance::Finite)
        }
        Distance::Finite(_) => None,
        Distance::Unreachable => Some(Distance::Unreachable),
    }
}

fn rd_graph_properties(id: &str, g: &Graph, out: &mut Findings) -> Result<()> {
    let n = g.node_count();
    let rd = rd_matrix(g)?;
    let spd = spd_matrix(g);
    let components = connected_components(g);

    // Integers on a common denominator make the cubic checks cheap.
    let scale = rd
        .row(0)
        .iter()
        .chain((1..n).flat_map(|u| rd.row(u)))
        .filter_map(|d| d.finite())
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let scaled: Vec<Option<BigInt>> = pairs(n)
        .map(|(u, v)| {
            rd.get(u, v)
                .finite()
                .map(|r| (r * Rational::from_integer(scale.clone())).to_integer())
        })
        .collect();
    let at = |u: usize, v: usize| scaled[u * n + v].as_ref();

    for (u, v) in pairs(n) {
        let same = components.class_of(u) == components.class_of(v);
        let items = vec![Item::Node(u), Item::Node(v)];
        match at(u, v) {
            None if same => out.violate(&[id], items, "finite resistance", "unreachable"),
            Some(_) if !same => out.violate(&[id], items, "unreachable", "finite resistance"),
            Some(x) if u == v && !x.is_zero() => {
                out.violate(&[id], items, "rd(u,u) = 0", format!("{}", rd.get(u, v)))
            }
            Some(x) if u != v && !x.is_positive() => {
                out.violate(&[id], items, "rd > 0", format!("{}", rd.get(u, v)))
            }
            _ => {}
        }
        if at(u, v) != at(v, u) {
            out.violate(
                &[id],
                vec![Item::Node(u), Item::Node(v)],
                "symmetric",
                "asymmetric",
            );
        }
        if let (Some(x), Distance::Finite(s)) = (at(u, v), spd.get(u, v)) {
            if *x > &scale * BigInt::from(*s) {
                out.violate(
                    &[id],
                    vec![Item::Node(u), Item::Node(v)],
                    format!("rd <= spd = {s}"),
                    format!("rd = {}", rd.get(u, v)),
                );
            }
        }
    }

    let report = biconnectivity_report(g);
    for v in g.nodes() {
        let mut additive = false;
        for u in g.nodes() {
            let Some(uv) = at(u, v) else { continue };
            for w in g.nodes() {
                let (Some(vw), Some(uw)) = (at(v, w), at(u, w)) else {
                    continue;
                };
                let sum = uv + vw;
                if *uw > sum {
                    out.violate(
                        &[id],
                        vec![Item::Node(u), Item::Node(v), Item::Node(w)],
                        "triangle inequality",
                        format!("rd(u,w) = {} exceeds rd(u,v) + rd(v,w)", rd.get(u, w)),
                    );
                }
                if u != v && w != v && *uw == sum {
                    additive = true;
                }
            }
        }
        if additive != report.is_cut_vertex(v) {
            out.violate(
                &[id],
                vec![Item::Node(v)],
                format!(
                    "additive triple through v iff cut vertex ({})",
                    report.is_cut_vertex(v)
                ),
                format!("additive triple found: {additive}"),
            );
        }
    }

    let is_forest = g.edge_count() + components.len() == n;
    let rd_equals_spd =
        pairs(n).all(|(u, v)| rd_as_spd(rd.get(u, v)).as_ref() == Some(spd.get(u, v)));
    if is_forest != rd_equals_spd {
        out.violate(
            &[id],
            Vec::new(),
            format!("rd = spd everywhere iff forest ({is_forest})"),
            format!("rd = spd everywhere: {rd_equals_spd}"),
        );
    }

    if (2..=30).contains(&n) && components.len() == 1 {
        let h = hitting_time_matrix(g)?;
        let two_m = Rational::from_integer(BigInt::from(2 * g.edge_count()));
        for (u, v) in pairs(n) {
            let commute = &h[u][v] + &h[v][u];
            let r = rd.get(u, v).finite().expect("connected");
            if commute != &two_m * r {
                out.violate(
                    &[id],
                    vec![Item::Node(u), Item::Node(v)],
                    format!("commute time = 2m·rd = {}", &two_m * r),
                    format!("commute time = {commute}"),
                );
            }
        }
    }
    Ok(())
}
